use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use supoly::families::FamilyId;

#[derive(Parser, Debug)]
#[command(name = "supoly", version, about = "Reductions, brackets and polynomial-family checks for u^m = 1 - 2ct^2 + t^4")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact coefficients of a generating series.
    Table(TableArgs),
    /// Run verification checks; exit 1 if any fails.
    Verify(VerifyArgs),
    /// Reduce t^n u^l dt to the Kähler basis.
    Reduce(ReduceArgs),
    /// Bracket two elements x_a t^i u^l of the loop algebra.
    Bracket(BracketArgs),
    /// Compare integral and series values on a grid.
    Quadrature(QuadratureArgs),
    /// Polynomial solutions of the fourth-order ODE.
    Uniqueness(UniquenessArgs),
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub family: FamilyId,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    All,
    Ode,
    Pde,
    Expansion,
    Uniqueness,
    Favard,
    Gram,
    Ultraspherical,
    Jacobi,
    Commutators,
    Quadrature,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    /// Comma-separated values of m.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub m: Vec<usize>,
    /// Restrict to one family.
    #[arg(long)]
    pub family: Option<FamilyId>,
    /// Largest n for ODE and uniqueness checks (defaults 60 and 30).
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Series order for PDE and expansion checks (defaults 24 and 20).
    #[arg(long)]
    pub order: Option<usize>,
    /// Index range [-range, range] for bracket checks.
    #[arg(long, default_value_t = 3)]
    pub range: i64,
    /// Number of Jacobi triples.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long)]
    pub m: usize,
    /// `quartic`, or comma-separated rationals a_0,..,a_D.
    #[arg(long, default_value = "quartic")]
    pub curve: String,
    /// Fix c to a rational value (quartic only).
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long)]
    pub l: usize,
}

#[derive(Args, Debug)]
pub struct BracketArgs {
    /// Only `sl2` is built in.
    #[arg(long, default_value = "sl2")]
    pub g: String,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// `name,i,l`, e.g. `h,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Args, Debug)]
pub struct QuadratureArgs {
    #[arg(long)]
    pub family: FamilyId,
    #[arg(long)]
    pub m: usize,
    /// `default`, or `c:z;c:z;...`.
    #[arg(long, default_value = "default")]
    pub grid: String,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct UniquenessArgs {
    #[arg(long)]
    pub family: FamilyId,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    /// Degree bound; defaults to n.
    #[arg(long)]
    pub r: Option<usize>,
}

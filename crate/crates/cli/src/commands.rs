use serde::Serialize;
use supoly::exactnum::{format_rational, parse_rational, Poly};
use supoly::families::build_family;
use supoly::liealg::{bracket, ExtendedElement, FinLieAlgebra};
use supoly::odeverify::uniqueness_solve;
use supoly::quadrature::{compare_grid, default_grid};
use supoly::{CurveRing, OmegaElement};

use crate::args::{BracketArgs, Format, QuadratureArgs, ReduceArgs, TableArgs, UniquenessArgs};
use crate::CliError;

pub fn poly_coeffs(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct TableEntry {
    k: usize,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct TableJson {
    m: usize,
    family: String,
    order: usize,
    entries: Vec<TableEntry>,
}

pub fn table(args: &TableArgs, format: Format) -> Result<String, CliError> {
    let table = build_family(args.m, args.family, args.order)?;
    match format {
        Format::Csv => {
            let mut out = String::from("family,m,k,power,coeff\n");
            for (k, p) in table.polys().iter().enumerate() {
                for (power, a) in p.coeffs().iter().enumerate() {
                    out.push_str(&format!("{},{},{k},{power},{}\n", args.family, args.m, format_rational(a)));
                }
            }
            Ok(out)
        }
        _ => Ok(json(&TableJson {
            m: args.m,
            family: args.family.to_string(),
            order: args.order,
            entries: table
                .polys()
                .iter()
                .enumerate()
                .map(|(k, p)| TableEntry { k, coeffs: poly_coeffs(p) })
                .collect(),
        })),
    }
}

fn parse_ring(m: usize, curve: &str, c: Option<&str>) -> Result<CurveRing, CliError> {
    if curve == "quartic" {
        return Ok(match c {
            Some(c) => CurveRing::quartic_at(m, &parse_rational(c)?)?,
            None => CurveRing::quartic(m)?,
        });
    }
    if c.is_some() {
        return Err(CliError::config("--c only applies to the quartic curve"));
    }
    let coeffs = curve.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    Ok(CurveRing::with_rational_coeffs(m, &coeffs)?)
}

#[derive(Serialize)]
struct OmegaTerm {
    label: String,
    coeffs: Vec<String>,
    display: String,
}

fn omega_output(element: &OmegaElement, format: Format) -> String {
    match format {
        Format::Json => json(
            &element
                .terms()
                .into_iter()
                .map(|(label, p)| OmegaTerm { label: label.to_string(), coeffs: poly_coeffs(p), display: p.to_string() })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut out = String::from("label,coeff\n");
            for (label, p) in element.terms() {
                out.push_str(&format!("{label},{p}\n"));
            }
            out
        }
        Format::Text => format!("{element}\n"),
    }
}

pub fn reduce(args: &ReduceArgs, format: Format) -> Result<String, CliError> {
    let ring = parse_ring(args.m, &args.curve, args.c.as_deref())?;
    Ok(omega_output(&ring.reduce_form(args.n, args.l)?, format))
}

fn parse_loop_term(spec: &str, ring: &CurveRing, g: &FinLieAlgebra) -> Result<ExtendedElement, CliError> {
    let bad = || CliError::config(format!("expected name,i,l but got {spec:?}"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [name, i, l] = parts[..] else {
        return Err(bad());
    };
    let a = g.index_of(name).ok_or_else(|| CliError::config(format!("unknown basis element {name:?}")))?;
    let i: i64 = i.parse().map_err(|_| bad())?;
    let l: usize = l.parse().map_err(|_| bad())?;
    Ok(ExtendedElement::loop_term(ring, g, a, i, l)?)
}

#[derive(Serialize)]
struct BracketJson {
    display: String,
    loop_part: Vec<(String, i64, usize, Vec<String>)>,
    central: Vec<OmegaTerm>,
}

pub fn bracket_cmd(args: &BracketArgs, format: Format) -> Result<String, CliError> {
    if args.g != "sl2" {
        return Err(CliError::config(format!("unknown Lie algebra {:?}", args.g)));
    }
    let g = FinLieAlgebra::sl2();
    let ring = CurveRing::quartic(args.m)?;
    let x = parse_loop_term(&args.x, &ring, &g)?;
    let y = parse_loop_term(&args.y, &ring, &g)?;
    let b = bracket(&x, &y, &ring, &g)?;
    Ok(match format {
        Format::Json => json(&BracketJson {
            display: b.to_string(),
            loop_part: b
                .loop_terms()
                .map(|(a, i, l, p)| (g.names()[a].clone(), i, l, poly_coeffs(p)))
                .collect(),
            central: b
                .central_part()
                .terms()
                .into_iter()
                .map(|(label, p)| OmegaTerm { label: label.to_string(), coeffs: poly_coeffs(p), display: p.to_string() })
                .collect(),
        }),
        _ => format!("{b}\n"),
    })
}

fn parse_grid(spec: &str) -> Result<Vec<(f64, f64)>, CliError> {
    if spec == "default" {
        return Ok(default_grid());
    }
    spec.split(';')
        .map(|pt| {
            let (c, z) = pt.split_once(':').ok_or_else(|| CliError::config(format!("bad grid point {pt:?}")))?;
            let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| CliError::config(format!("bad number {s:?}")));
            Ok((parse(c)?, parse(z)?))
        })
        .collect()
}

#[derive(Serialize)]
struct GridJson {
    family: String,
    m: usize,
    max_diff: f64,
    rows: Vec<[f64; 5]>,
}

/// Returns the output and whether the largest deviation is within `tol`.
pub fn quadrature(args: &QuadratureArgs, format: Format) -> Result<(String, bool), CliError> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::config("--tol must be positive"));
    }
    let grid = parse_grid(&args.grid)?;
    // integrate well below the comparison tolerance
    let report = compare_grid(args.family, args.m, &grid, args.tol * 1e-2)?;
    let ok = report.max_diff() <= args.tol;
    let out = match format {
        Format::Json => json(&GridJson {
            family: args.family.to_string(),
            m: args.m,
            max_diff: report.max_diff(),
            rows: report.rows.iter().map(|r| [r.c, r.z, r.series, r.integral, r.abs_diff]).collect(),
        }),
        _ => report.to_csv(),
    };
    eprintln!("max_diff = {:.3e}", report.max_diff());
    Ok((out, ok))
}

#[derive(Serialize)]
struct UniquenessJson {
    family: String,
    m: usize,
    n: usize,
    r: usize,
    dimension: usize,
    basis: Vec<Vec<String>>,
}

pub fn uniqueness(args: &UniquenessArgs) -> Result<String, CliError> {
    let sol = uniqueness_solve(args.family, args.m, args.n, args.r)?;
    Ok(json(&UniquenessJson {
        family: args.family.to_string(),
        m: args.m,
        n: args.n,
        r: sol.system.r,
        dimension: sol.dimension(),
        basis: sol.basis.iter().map(|v| v.iter().map(format_rational).collect()).collect(),
    }))
}

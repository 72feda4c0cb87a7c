//! Exact scalar, polynomial and truncated power series arithmetic.
//!
//! Everything here is immutable value arithmetic over arbitrary-precision
//! rationals. Polynomials live in the single variable `c`; truncated series
//! live in `z` and carry polynomial coefficients.

mod poly;
mod rational;
mod series;

pub use poly::Poly;
pub use rational::{
    format_rational, int, is_canonical, parse_rational, rat, rational_from_f64, to_f64, Rational,
};
pub use series::Series;

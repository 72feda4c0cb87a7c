//! Regularized superelliptic integrals for the `case1` and `case2`
//! generating functions, checked against their power series.

mod adaptive;
mod grid;
mod integral;
mod series;

pub use adaptive::{adaptive_integrate, QuadratureResult, DEFAULT_BUDGET};
pub use grid::{compare_grid, default_grid, GridReport, GridRow};
pub use integral::{integral_value, regularized_bracket, Counterterms, IntegralSpec};
pub use series::{series_tail_estimate, series_value};

//! Three-term recurrences of the even subfamilies, Favard positivity,
//! Jacobi operators and the Gauss rules they define.

mod jacobi;
mod recurrence;
mod ultraspherical;

pub use jacobi::{
    family_roots, gauss_rule, gram_check, interlacing_holds, GaussRule, JacobiOperator,
};
pub use recurrence::{
    favard_check, lambda_squared, shifted_lambda_squared, recurrence_coeffs, subfamily, FavardReport,
    RecurrenceCoeffs, RecurrenceTable,
};
pub use ultraspherical::{associated_ultraspherical, ultraspherical_match};

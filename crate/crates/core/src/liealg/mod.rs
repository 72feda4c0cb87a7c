//! The universal central extension `(g (x) R) + Omega^1_R / dR` and checks of
//! its commutation relations.

mod algebra;
mod checks;
mod extended;

pub use algebra::FinLieAlgebra;
pub use checks::{
    check_jacobi, grading_violations, jacobi_sample, jacobiator, verify_commutators, BracketPart,
    BracketSector, JacobiReport, CommutatorMismatch, CommutatorRanges, CommutatorReport,
};
pub use extended::{bracket, ExtendedElement};

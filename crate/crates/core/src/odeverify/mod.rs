//! Exact checks of the fourth-order equations satisfied by the `case1` and
//! `case2` families, and of the linear systems behind their uniqueness.

mod ode;
mod pde;
mod uniqueness;

pub use ode::{ode_residual, OdeOperator};
pub use pde::{boundary_conditions_hold, pde_matches_ode, pde_residual, pde_residual_with, PdeForm};
pub use uniqueness::{uniqueness_solve, UniquenessSolution, UniquenessSystem};

use crate::error::{Error, Result};
use crate::families::FamilyId;

fn require_even_family(operation: &'static str, family: FamilyId) -> Result<()> {
    match family {
        FamilyId::Case1 | FamilyId::Case2 => Ok(()),
        _ => Err(Error::UnsupportedFamily { operation, family: family.to_string() }),
    }
}

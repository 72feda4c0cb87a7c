//! Polynomial families attached to `u^m = 1 - 2c t^2 + t^4`, Gegenbauer
//! polynomials and the expansions linking them.

mod expansion;
mod gegenbauer;
mod table;

pub use expansion::{expansion_check, generating_ode_residual, quartic_power, ExpansionCheck};
pub use gegenbauer::{gegenbauer, gegenbauer_ode_residual, gegenbauer_table, szego_identity_check};
pub use table::{build_family, FamilyId, FamilyTable};

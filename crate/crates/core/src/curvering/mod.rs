//! The ring `C[t, t^-1, u | u^m = P(t)]` and reduction of differentials to
//! the Kähler basis of `Omega^1_R / dR`.

mod omega;
mod reduce;
mod ring;
mod sweep;

pub use omega::{BasisLabel, OmegaElement};
pub use ring::{CurveRing, RingElement};

pub(crate) use omega::{coefficient_prefix, join_signed};

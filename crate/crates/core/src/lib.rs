//! Kähler-differential reductions, central extensions and the orthogonal
//! polynomial families attached to the superelliptic curve
//! `u^m = 1 - 2 c t^2 + t^4`.
//!
//! Exact identities (recursions, differential equations, Gegenbauer
//! expansions, uniqueness systems, Lie brackets) are verified over the
//! rationals; orthogonality and integral representations are checked in
//! double precision.

pub mod error;
pub mod curvering;
pub mod exactnum;
pub mod families;
pub mod liealg;
pub mod odeverify;
pub mod orthogonality;
pub mod quadrature;

pub use error::{Error, Result};
pub use curvering::{CurveRing, OmegaElement, RingElement};
pub use exactnum::{Poly, Rational, Series};

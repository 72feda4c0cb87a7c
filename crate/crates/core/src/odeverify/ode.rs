use num_bigint::BigInt;

use crate::error::Result;
use crate::exactnum::{Poly, Rational};
use crate::families::FamilyId;

use super::require_even_family;

fn big(v: i128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `sum_k coeffs[k] * P^(k)` for the family member at `z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeOperator {
    pub family: FamilyId,
    pub m: usize,
    pub n: usize,
    /// Coefficients of `P, P', P'', P''', P''''`.
    pub coeffs: [Poly; 5],
}

impl OdeOperator {
    pub fn new(family: FamilyId, m: usize, n: usize) -> Result<Self> {
        require_even_family("ode_residual", family)?;
        let (m, n) = (m as i128, n as i128);
        let c2 = |k0: i128, k2: i128| Poly::from_coeffs(vec![big(k0), big(0), big(k2)]);
        let c1 = |k: i128| Poly::monomial(big(k), 1);
        let mm = 16 * m * m;
        let p4 = Poly::from_coeffs(vec![big(mm), big(0), big(-2 * mm), big(0), big(mm)]);
        let p3 = Poly::from_coeffs(vec![big(0), big(-160 * m * m), big(0), big(160 * m * m)]);
        let (p2, p1, p0) = match family {
            FamilyId::Case1 => (
                c2(
                    8 * m * (m * ((n - 6) * n - 10) + 4 * (n - 6)),
                    -8 * (m * m * (n - 10) * (n + 4) + 4 * m * (n - 4) + 8),
                ),
                c1(-24 * (m * m * (n - 6) * n + 4 * m * (n - 4) + 8)),
                big((n - 4) * n * (m * (n - 6) + 4) * (m * (n - 2) + 4)),
            ),
            _ => (
                c2(
                    8 * m * (m * (n * n - 6 * n - 2) + 4 * (n - 8)),
                    -8 * (m * m * ((n - 6) * n - 32) + 4 * m * (n - 6) + 8),
                ),
                c1(-24 * (m * m * (n - 4) * (n - 2) + 4 * m * (n - 6) + 8)),
                big((n * n - 4) * (m * n - 8 * m + 4) * (m * n - 4 * m + 4)),
            ),
        };
        Ok(Self {
            family,
            m: m as usize,
            n: n as usize,
            coeffs: [Poly::constant(p0), p1, p2, p3, p4],
        })
    }

    pub fn leading(&self) -> &Poly {
        &self.coeffs[4]
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut d = p.clone();
        for coeff in &self.coeffs {
            if d.is_zero() {
                break;
            }
            out = &out + &(coeff * &d);
            d = d.derivative();
        }
        out
    }
}

/// The fourth-order operator for `family` at `(m, n)` applied to `p`.
pub fn ode_residual(family: FamilyId, m: usize, n: usize, p: &Poly) -> Result<Poly> {
    Ok(OdeOperator::new(family, m, n)?.apply(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::families::build_family;

    #[test]
    fn leading_coefficient() {
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            let op = OdeOperator::new(fam, 5, 10).unwrap();
            // 16 (c^2 - 1)^2 m^2
            assert_eq!(op.leading(), &Poly::from_ints(&[400, 0, -800, 0, 400]));
        }
    }

    #[test]
    fn trivial_cases() {
        assert!(ode_residual(FamilyId::Case1, 3, 0, &Poly::one()).unwrap().is_zero());
        assert!(ode_residual(FamilyId::Case2, 3, 2, &Poly::one()).unwrap().is_zero());
        assert!(!ode_residual(FamilyId::Case1, 3, 2, &Poly::one()).unwrap().is_zero());
    }

    #[test]
    fn family_members_solve_the_ode() {
        for m in 3..=6 {
            for fam in [FamilyId::Case1, FamilyId::Case2] {
                let t = build_family(m, fam, 60).unwrap();
                for n in (0..=60).step_by(2) {
                    let r = ode_residual(fam, m, n, t.coeff(n)).unwrap();
                    assert!(r.is_zero(), "{fam} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn case1_n8_m3() {
        let t = build_family(3, FamilyId::Case1, 8).unwrap();
        assert!(ode_residual(FamilyId::Case1, 3, 8, t.coeff(8)).unwrap().is_zero());
        let wrong = &t.coeff(8).scale(&int(2)) + &Poly::one();
        assert!(!ode_residual(FamilyId::Case1, 3, 8, &wrong).unwrap().is_zero());
    }

    #[test]
    fn odd_families_rejected() {
        assert!(ode_residual(FamilyId::Case3, 3, 3, &Poly::one()).is_err());
    }
}

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, Poly, Rational, Series};
use crate::families::{build_family, FamilyId, FamilyTable};

use super::ode::OdeOperator;
use super::require_even_family;

/// Which `d^2/dc^2` coefficient the `case2` operator carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PdeForm {
    /// `16m(9m - 16)`, the value consistent with the fourth-order ODE.
    Corrected,
    /// `144m^2`.
    Uncorrected,
}

struct PdeOperator {
    m: Rational,
    k: Rational,
    a: Rational,
    b: Rational,
}

impl PdeOperator {
    fn new(family: FamilyId, m: usize, form: PdeForm) -> Self {
        let mi = m as i64;
        let (k, a, b) = match family {
            FamilyId::Case1 => (int(4) - rat(8, mi), int(16 * (mi * mi - 8 * mi)), int(16 * (2 - mi) * (2 - mi))),
            _ => {
                let a = match form {
                    PdeForm::Corrected => int(16 * mi * (9 * mi - 16)),
                    PdeForm::Uncorrected => int(144 * mi * mi),
                };
                (int(-4), a, int(16 * (3 * mi - 2) * (3 * mi - 2)))
            }
        };
        Self { m: int(mi), k, a, b }
    }

    /// `4(1-c^2) p'' - 12c p' + (n^2 + 2(2/m - 3) n + K) p`.
    fn inner(&self, n: usize, p: &Poly) -> Poly {
        let nr = int(n as i64);
        let v = &nr * &nr + (int(4) / &self.m - int(6)) * &nr + &self.k;
        let d2 = &Poly::from_ints(&[4, 0, -4]) * &p.nth_derivative(2);
        let d1 = &Poly::monomial(int(-12), 1) * &p.derivative();
        &(&d2 + &d1) + &p.scale(&v)
    }

    fn euler(p: &Poly) -> Poly {
        &(&Poly::c() * &p.derivative()) + p
    }

    /// The operator restricted to the coefficient of `z^n`.
    fn apply(&self, n: usize, p: &Poly) -> Poly {
        let sq = self.inner(n, &self.inner(n, p)).scale(&(&self.m * &self.m));
        let e2 = Self::euler(&Self::euler(p)).scale(&self.b);
        &(&sq + &p.nth_derivative(2).scale(&self.a)) - &e2
    }
}

fn check_order(order: usize) -> Result<()> {
    if order < 8 {
        return Err(Error::InvalidParameter(format!("order {order} below 8")));
    }
    Ok(())
}

/// The fourth-order operator in `(c, v = ln z)` applied to the truncated
/// generating series of `family`, with `d/dv` acting on `z^n` as `n`.
pub fn pde_residual_with(family: FamilyId, m: usize, order: usize, form: PdeForm) -> Result<Series> {
    require_even_family("pde_residual", family)?;
    check_order(order)?;
    let table = build_family(m, family, order)?;
    let op = PdeOperator::new(family, m, form);
    Ok(Series::from_coeffs(
        order,
        table.polys().iter().enumerate().map(|(n, p)| op.apply(n, p)),
    ))
}

pub fn pde_residual(family: FamilyId, m: usize, order: usize) -> Result<Series> {
    pde_residual_with(family, m, order, PdeForm::Corrected)
}

/// Initial data at `z = 0`: `case1` starts `1 + O(z^4)`, `case2` starts
/// `z^2 + O(z^4)`.
pub fn boundary_conditions_hold(table: &FamilyTable) -> bool {
    let want: [i64; 4] = match table.family() {
        FamilyId::Case1 => [1, 0, 0, 0],
        FamilyId::Case2 => [0, 0, 1, 0],
        _ => return false,
    };
    want.iter()
        .enumerate()
        .all(|(k, &v)| k <= table.order() && table.coeff(k) == &Poly::constant(int(v)))
}

/// Whether the `(c, v)` operator at `z^n` agrees with the ODE at `n` on every
/// monomial `c^0 .. c^order`, for `n = 0 .. order`.
pub fn pde_matches_ode(family: FamilyId, m: usize, order: usize, form: PdeForm) -> Result<bool> {
    require_even_family("pde_matches_ode", family)?;
    let op = PdeOperator::new(family, m, form);
    for n in 0..=order {
        let ode = OdeOperator::new(family, m, n)?;
        for i in 0..=order {
            let mono = Poly::monomial(int(1), i);
            if op.apply(n, &mono) != ode.apply(&mono) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odeverify::ode_residual;

    #[test]
    fn case1_residual_vanishes() {
        assert!(pde_residual(FamilyId::Case1, 3, 24).unwrap().is_zero());
        assert!(pde_residual_with(FamilyId::Case1, 5, 24, PdeForm::Uncorrected).unwrap().is_zero());
    }

    #[test]
    fn case2_corrected_vanishes() {
        for m in 2..=6 {
            assert!(pde_residual(FamilyId::Case2, m, 24).unwrap().is_zero(), "m={m}");
        }
    }

    #[test]
    fn case2_uncorrected_leaves_second_derivative() {
        let m = 5;
        let uncorrected = pde_residual_with(FamilyId::Case2, m, 24, PdeForm::Uncorrected).unwrap();
        let table = build_family(m, FamilyId::Case2, 24).unwrap();
        let expected = table.series().c_derivative().c_derivative().scale(&int(256 * m as i64));
        assert_eq!(uncorrected, expected);
        assert!(!uncorrected.is_zero());
    }

    #[test]
    fn operator_equivalence() {
        for m in [3, 4, 5] {
            assert!(pde_matches_ode(FamilyId::Case1, m, 12, PdeForm::Corrected).unwrap());
            assert!(pde_matches_ode(FamilyId::Case2, m, 12, PdeForm::Corrected).unwrap());
            assert!(!pde_matches_ode(FamilyId::Case2, m, 12, PdeForm::Uncorrected).unwrap());
        }
    }

    #[test]
    fn residual_coefficients_match_ode_residuals() {
        let pde = pde_residual_with(FamilyId::Case2, 4, 20, PdeForm::Uncorrected).unwrap();
        let table = build_family(4, FamilyId::Case2, 20).unwrap();
        for n in 0..=20 {
            let ode = ode_residual(FamilyId::Case2, 4, n, table.coeff(n)).unwrap();
            let shift = table.coeff(n).nth_derivative(2).scale(&int(256 * 4));
            assert_eq!(pde.coeff(n), &(&ode + &shift));
        }
    }

    #[test]
    fn boundary_data() {
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            assert!(boundary_conditions_hold(&build_family(3, fam, 10).unwrap()));
        }
        assert!(!boundary_conditions_hold(&build_family(3, FamilyId::Case3, 10).unwrap()));
    }

    #[test]
    fn small_order_rejected() {
        assert!(pde_residual(FamilyId::Case1, 3, 7).is_err());
        assert!(pde_residual(FamilyId::Case4, 3, 10).is_err());
    }
}

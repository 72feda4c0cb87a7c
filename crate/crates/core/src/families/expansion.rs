use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{int, Poly, Rational, Series};

use super::gegenbauer::gegenbauer_with_lambda_derivative;
use super::table::{build_family, FamilyId, FamilyTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCheck {
    pub family: FamilyId,
    pub m: usize,
    pub order: usize,
    /// `F^(-1/m) P - (Gegenbauer sums)`, normalized to integer powers of `z`.
    pub residual: Series,
    /// Powers of `z` whose coefficient was a `0/0` quotient in `m`, replaced
    /// by its limit.
    pub limits: Vec<usize>,
    /// `k` with `F^(-1/m) P = k * S`, where `S` is the Gegenbauer side with
    /// case4 prefactor `1/2` in place of `-1`. `None` when a limit was taken
    /// or the two sides are not proportional.
    pub reference_ratio: Option<Rational>,
}

impl ExpansionCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `(1 - 2c z^2 + z^4)^alpha` truncated at `order`.
pub fn quartic_power(order: usize, alpha: &Rational) -> Result<Series> {
    let s = Series::from_coeffs(
        order,
        [Poly::zero(), Poly::zero(), Poly::c().scale(&int(-2)), Poly::zero(), Poly::one()],
    );
    s.binomial(alpha)
}

/// Quotient `num(m) / den(m)` at an integer `m`, taking the limit
/// `num'(m) / den'(m)` when both vanish.
fn quotient_or_limit(
    num: &Poly,
    den: i64,
    d_num: impl FnOnce() -> Poly,
    d_den: i64,
    power: usize,
    limits: &mut Vec<usize>,
) -> Result<Poly> {
    if den != 0 {
        return Ok(num.scale(&Rational::new(1.into(), den.into())));
    }
    if !num.is_zero() || d_den == 0 {
        return Err(Error::ZeroDivisor {
            context: format!("Gegenbauer coefficient of z^{power} has a pole"),
        });
    }
    limits.push(power);
    Ok(d_num().scale(&Rational::new(1.into(), d_den.into())))
}

/// Right-hand Gegenbauer sums, grouped by power of `z`.
///
/// Case1: `z^(2k)` has `[c(6m-4) Q_(k-1) - (3m-4) Q_k] / (m(2k-3) + 4)`.
/// Case3: `z^(2k+3)` has `4 Q_k / (2mk + 4)`.
/// Case4: `z^(2k+1)` has `[2c(m-1) Q_(k-1) - (m-2) Q_k] / (m(k-1) + 2)`.
fn gegenbauer_side(m: usize, family: FamilyId, order: usize) -> Result<(Series, Vec<usize>)> {
    let mi = m as i64;
    let minv = Rational::new(1.into(), mi.into());
    let lambda = int(1) + &minv;
    let d_lambda = -(&minv * &minv);
    let kmax = order / 2 + 1;
    let (q, dq) = gegenbauer_with_lambda_derivative(&lambda, kmax);
    let dq: Vec<Poly> = dq.iter().map(|p| p.scale(&d_lambda)).collect();
    let zero = Poly::zero();
    let prev = |v: &[Poly], k: usize| if k == 0 { zero.clone() } else { v[k - 1].clone() };
    let c = Poly::c();
    let mut coeffs = vec![Poly::zero(); order + 1];
    let mut limits = Vec::new();
    for k in 0..=kmax {
        let ki = k as i64;
        match family {
            FamilyId::Case1 => {
                let power = 2 * k;
                if power > order {
                    break;
                }
                let a = c.scale(&int(6 * mi - 4));
                let num = &(&a * &prev(&q, k)) - &q[k].scale(&int(3 * mi - 4));
                let d_num = || {
                    &(&(&c.scale(&int(6)) * &prev(&q, k)) + &(&a * &prev(&dq, k)))
                        - &(&q[k].scale(&int(3)) + &dq[k].scale(&int(3 * mi - 4)))
                };
                coeffs[power] =
                    quotient_or_limit(&num, mi * (2 * ki - 3) + 4, d_num, 2 * ki - 3, power, &mut limits)?;
            }
            FamilyId::Case3 => {
                let power = 2 * k + 3;
                if power > order {
                    break;
                }
                coeffs[power] = q[k].scale(&Rational::new(4.into(), (2 * mi * ki + 4).into()));
            }
            FamilyId::Case4 => {
                let power = 2 * k + 1;
                if power > order {
                    break;
                }
                let a = c.scale(&int(2 * (mi - 1)));
                let num = &(&a * &prev(&q, k)) - &q[k].scale(&int(mi - 2));
                let d_num = || {
                    &(&(&c.scale(&int(2)) * &prev(&q, k)) + &(&a * &prev(&dq, k)))
                        - &(&q[k] + &dq[k].scale(&int(mi - 2)))
                };
                coeffs[power] =
                    quotient_or_limit(&num, mi * (ki - 1) + 2, d_num, ki - 1, power, &mut limits)?;
            }
            FamilyId::Case2 => unreachable!(),
        }
    }
    Ok((Series::from_coeffs(order, coeffs), limits))
}

/// Compares `F^(-1/m) P(c, z)` computed from the recursion table against the
/// Gegenbauer sums, both normalized so only integer powers of `z` appear.
pub fn expansion_check(m: usize, family: FamilyId, order: usize) -> Result<ExpansionCheck> {
    if family == FamilyId::Case2 {
        return Err(Error::UnsupportedFamily {
            operation: "expansion_check",
            family: family.to_string(),
        });
    }
    if order < 8 {
        return Err(Error::InvalidParameter(format!("order {order} below 8")));
    }
    let table: FamilyTable = build_family(m, family, order)?;
    let weight = quartic_power(order, &-Rational::new(1.into(), (m as i64).into()))?;
    let lhs = weight.mul(&table.series())?;
    let (rhs, limits) = gegenbauer_side(m, family, order)?;
    let residual = lhs.sub(&rhs)?;
    let reference_factor = if family == FamilyId::Case4 { Rational::new((-1).into(), 2.into()) } else { Rational::one() };
    let reference_ratio = if limits.is_empty() {
        proportionality(&lhs, &rhs.scale(&reference_factor))
    } else {
        None
    };
    Ok(ExpansionCheck { family, m, order, residual, limits, reference_ratio })
}

/// `k` with `a = k b` coefficientwise, if it exists and `b != 0`.
fn proportionality(a: &Series, b: &Series) -> Option<Rational> {
    let pivot = (0..=b.order()).find(|&k| !b.coeff(k).is_zero())?;
    let k = a.coeff(pivot).proportionality(b.coeff(pivot))?;
    (b.scale(&k) == *a).then_some(k)
}

/// `m z F P' + (6cm z^2 - 4c z^2 - 3m(z^4 + 1) + 4) P` minus the initial-data
/// terms `4z^3 A_3 + (4-m) z^2 A_2 + 2(2c(m-1) z^2 - m + 2) z A_1 +
/// (2c(3m-2) z^2 - 3m + 4) A_0`, i.e. the first-order generating-series
/// equation with denominators cleared.
pub fn generating_ode_residual(table: &FamilyTable) -> Result<Series> {
    let n = table.order();
    let mi = table.m() as i64;
    let p = table.series();
    let z = |k: usize, coeff: Poly| Series::monomial(n, k, coeff);
    let c = Poly::c();
    let zf = z(1, Poly::one())
        .add(&z(3, c.scale(&int(-2))))?
        .add(&z(5, Poly::one()))?;
    let first = zf.mul(&p.z_derivative())?.scale(&int(mi));
    let mult = z(2, c.scale(&int(6 * mi - 4)))
        .add(&z(4, Poly::constant(int(-3 * mi))))?
        .add(&z(0, Poly::constant(int(4 - 3 * mi))))?;
    let lhs = first.add(&mult.mul(&p)?)?;
    let a = |k: usize| if k <= n { table.coeff(k).clone() } else { Poly::zero() };
    let rhs = z(3, a(3).scale(&int(4)))
        .add(&z(2, a(2).scale(&int(4 - mi))))?
        .add(&z(3, &c.scale(&int(4 * (mi - 1))) * &a(1)))?
        .add(&z(1, a(1).scale(&int(2 * (2 - mi)))))?
        .add(&z(2, &c.scale(&int(2 * (3 * mi - 2))) * &a(0)))?
        .add(&z(0, a(0).scale(&int(4 - 3 * mi))))?;
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case1_identity() {
        for m in [3, 4, 5, 7] {
            let chk = expansion_check(m, FamilyId::Case1, 20).unwrap();
            assert!(chk.holds(), "m={m}");
        }
    }

    #[test]
    fn case1_limit_at_m4() {
        let chk = expansion_check(4, FamilyId::Case1, 20).unwrap();
        assert_eq!(chk.limits, vec![2]);
        assert_eq!(chk.reference_ratio, None);
        let chk3 = expansion_check(3, FamilyId::Case1, 20).unwrap();
        assert!(chk3.limits.is_empty());
        assert_eq!(chk3.reference_ratio, Some(int(1)));
    }

    #[test]
    fn case1_constant_term() {
        // z^0: -(3m-4) Q_0 / (4 - 3m) = 1
        let (rhs, _) = gegenbauer_side(5, FamilyId::Case1, 8).unwrap();
        assert_eq!(rhs.coeff(0), &Poly::one());
    }

    #[test]
    fn case3_identity() {
        for m in [2, 3, 4, 5] {
            let chk = expansion_check(m, FamilyId::Case3, 20).unwrap();
            assert!(chk.holds(), "m={m}");
            assert_eq!(chk.reference_ratio, Some(int(1)));
        }
    }

    #[test]
    fn case4_identity_and_half_prefactor() {
        for m in [3, 4, 5] {
            let chk = expansion_check(m, FamilyId::Case4, 20).unwrap();
            assert!(chk.holds(), "m={m}");
            assert_eq!(chk.reference_ratio, Some(int(-2)));
        }
        let chk = expansion_check(2, FamilyId::Case4, 20).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.limits, vec![1]);
    }

    #[test]
    fn case2_is_unsupported() {
        assert!(matches!(
            expansion_check(3, FamilyId::Case2, 20),
            Err(Error::UnsupportedFamily { .. })
        ));
        assert!(expansion_check(3, FamilyId::Case1, 6).is_err());
    }

    #[test]
    fn generating_equation() {
        for m in [2, 3, 4, 5] {
            for fam in FamilyId::ALL {
                let t = build_family(m, fam, 30).unwrap();
                assert!(generating_ode_residual(&t).unwrap().is_zero(), "{fam} m={m}");
            }
        }
    }
}

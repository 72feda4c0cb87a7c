use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, Poly, Rational};

use super::reduce::Sector;

/// The ring `C[t, t^-1, u] / (u^m - P(t))` with `P(t) = sum a_k t^k`.
///
/// Coefficients `a_k` are polynomials in the parameter `c`, so every
/// reduction performed through this ring is an identity in `Q[c]`.
#[derive(Debug)]
pub struct CurveRing {
    m: usize,
    coeffs: Vec<Poly>,
    pub(super) memo: RwLock<HashMap<usize, Sector>>,
}

impl CurveRing {
    /// Validates `a_D = 1`, `(a_0, a_1) != (0, 0)` and that `P` has no
    /// repeated roots.
    ///
    /// The lowest nonvanishing of `a_0`, `a_1` must be a constant, because the
    /// downward reduction divides by it.
    pub fn new(m: usize, coeffs: Vec<Poly>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidCurve(format!("m = {m} must be at least 2")));
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidCurve("P(t) must have degree at least 1".into()));
        }
        if coeffs.last() != Some(&Poly::one()) {
            return Err(Error::InvalidCurve("leading coefficient a_D must be 1".into()));
        }
        let low = if !coeffs[0].is_zero() { &coeffs[0] } else { &coeffs[1] };
        if low.is_zero() {
            return Err(Error::InvalidCurve("a_0 and a_1 are both zero".into()));
        }
        if low.as_constant().is_none() {
            return Err(Error::InvalidCurve(
                "the lowest nonzero of a_0, a_1 must not depend on c".into(),
            ));
        }
        if !is_squarefree(&coeffs) {
            return Err(Error::InvalidCurve("P(t) has a repeated root".into()));
        }
        Ok(Self {
            m,
            coeffs,
            memo: RwLock::new(HashMap::new()),
        })
    }

    /// `u^m = 1 - 2 c t^2 + t^4`.
    pub fn quartic(m: usize) -> Result<Self> {
        let minus_two_c = Poly::c().scale(&int(-2));
        Self::new(
            m,
            vec![Poly::one(), Poly::zero(), minus_two_c, Poly::zero(), Poly::one()],
        )
    }

    /// The quartic with `c` fixed to a rational value.
    pub fn quartic_at(m: usize, c: &Rational) -> Result<Self> {
        let a2 = Poly::constant(c * int(-2));
        Self::new(
            m,
            vec![Poly::one(), Poly::zero(), a2, Poly::zero(), Poly::one()],
        )
    }

    /// A curve with rational (c-independent) coefficients `a_0..a_D`.
    pub fn with_rational_coeffs(m: usize, coeffs: &[Rational]) -> Result<Self> {
        Self::new(m, coeffs.iter().cloned().map(Poly::constant).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Degree `D` of `P(t)`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn a(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn a0_is_zero(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Most negative `t`-exponent kept in the basis for `l >= 1`.
    pub fn lowest_basis_exponent(&self) -> i64 {
        let d = self.degree() as i64;
        if self.a0_is_zero() {
            -d + 1
        } else {
            -d
        }
    }

    /// Number of elements of the Kähler basis of `Omega^1_R / dR`.
    pub fn basis_len(&self) -> usize {
        1 + (self.m - 1) * (-self.lowest_basis_exponent()) as usize
    }

    pub fn same_as(&self, other: &CurveRing) -> bool {
        self.m == other.m && self.coeffs == other.coeffs
    }

    /// Product of ring elements, rewriting `u^L` with `L >= m` as `P(t) u^(L-m)`.
    pub fn mul(&self, f: &RingElement, g: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (&(i, l1), p) in &f.terms {
            for (&(j, l2), q) in &g.terms {
                let coeff = p * q;
                if coeff.is_zero() {
                    continue;
                }
                let exp = l1 + l2;
                if exp < self.m {
                    out.add_term(i + j, exp, coeff);
                } else {
                    for (k, a) in self.coeffs.iter().enumerate() {
                        if !a.is_zero() {
                            out.add_term(i + j + k as i64, exp - self.m, &coeff * a);
                        }
                    }
                }
            }
        }
        out
    }
}

fn is_squarefree(coeffs: &[Poly]) -> bool {
    let squarefree_at = |values: Vec<Rational>| {
        let p = Poly::from_coeffs(values);
        p.gcd(&p.derivative()).degree() == Some(0)
    };
    if coeffs.iter().all(|a| a.as_constant().is_some()) {
        return squarefree_at(coeffs.iter().map(|a| a.coeff(0)).collect());
    }
    // Coefficients depend on c: P is squarefree over Q(c) iff it is squarefree
    // after specializing c to a value off the (finite) discriminant locus.
    [rat(1, 3), rat(2, 7), rat(-5, 11), rat(13, 17)]
        .iter()
        .any(|c| squarefree_at(coeffs.iter().map(|a| a.eval(c)).collect()))
}

/// Finitely supported element `sum coeff * t^i u^l` of the ring, `0 <= l < m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    terms: BTreeMap<(i64, usize), Poly>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    /// `t^i u^l`.
    pub fn monomial(i: i64, l: usize) -> Self {
        Self::term(i, l, Poly::one())
    }

    pub fn term(i: i64, l: usize, coeff: Poly) -> Self {
        let mut e = Self::zero();
        e.add_term(i, l, coeff);
        e
    }

    pub fn add_term(&mut self, i: i64, l: usize, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, l)).or_insert_with(Poly::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.remove(&(i, l));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, usize, &Poly)> {
        self.terms.iter().map(|(&(i, l), p)| (i, l, p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, l: usize) -> Poly {
        self.terms.get(&(i, l)).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn scale(&self, factor: &Poly) -> Self {
        let mut out = Self::zero();
        for (i, l, p) in self.terms() {
            out.add_term(i, l, p * factor);
        }
        out
    }

    pub fn add(&self, other: &RingElement) -> Self {
        let mut out = self.clone();
        for (i, l, p) in other.terms() {
            out.add_term(i, l, p.clone());
        }
        out
    }

    /// Largest u-exponent present, if any.
    pub fn max_u_exponent(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, l)| l).max()
    }
}

impl From<Rational> for RingElement {
    fn from(value: Rational) -> Self {
        if value.is_zero() {
            Self::zero()
        } else if value.is_one() {
            Self::one()
        } else {
            Self::term(0, 0, Poly::constant(value))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_substitutes_curve_equation() {
        let ring = CurveRing::quartic(3).unwrap();
        let prod = ring.mul(&RingElement::monomial(0, 2), &RingElement::monomial(0, 1));
        let mut expected = RingElement::zero();
        expected.add_term(0, 0, Poly::one());
        expected.add_term(2, 0, Poly::c().scale(&int(-2)));
        expected.add_term(4, 0, Poly::one());
        assert_eq!(prod, expected);
    }

    #[test]
    fn laurent_inverse() {
        let ring = CurveRing::quartic(3).unwrap();
        let prod = ring.mul(&RingElement::monomial(1, 0), &RingElement::monomial(-1, 0));
        assert_eq!(prod, RingElement::one());
    }

    #[test]
    fn no_reduction_below_m() {
        let ring = CurveRing::quartic(3).unwrap();
        let prod = ring.mul(&RingElement::monomial(0, 1), &RingElement::monomial(0, 1));
        assert_eq!(prod, RingElement::monomial(0, 2));
    }

    #[test]
    fn curve_validation() {
        let q = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        // (t - 1)^2
        assert!(CurveRing::with_rational_coeffs(3, &q(&[1, -2, 1])).is_err());
        // leading coefficient 2
        assert!(CurveRing::with_rational_coeffs(3, &q(&[1, 0, 2])).is_err());
        // a0 = a1 = 0
        assert!(CurveRing::with_rational_coeffs(3, &q(&[0, 0, 1])).is_err());
        assert!(CurveRing::with_rational_coeffs(1, &q(&[1, 1])).is_err());
        assert!(CurveRing::with_rational_coeffs(3, &q(&[0, 1, 0, 1])).is_ok());
        // c = 1 makes the quartic (t^2 - 1)^2
        assert!(CurveRing::quartic_at(3, &int(1)).is_err());
        assert!(CurveRing::quartic_at(3, &rat(1, 3)).is_ok());
    }

    #[test]
    fn basis_counts() {
        let q = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(CurveRing::quartic(3).unwrap().basis_len(), 1 + 2 * 4);
        let r = CurveRing::with_rational_coeffs(4, &q(&[0, 1, 0, 1])).unwrap();
        assert_eq!(r.basis_len(), 1 + 3 * 2);
    }
}

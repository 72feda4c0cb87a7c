use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, int, to_f64, Rational};

/// Dense univariate polynomial in `c` with exact rational coefficients.
///
/// `coeffs[k]` is the coefficient of `c^k`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        Self::from_coeffs(vec![value])
    }

    /// The indeterminate `c`.
    pub fn c() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(coeff: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Convenience constructor from small integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&v| int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `c^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// The constant value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
        }
    }

    /// Multiplies by `c^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }

    /// Horner evaluation after rounding each coefficient to `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + to_f64(a))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * int(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// `p(-c)`.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| if k % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let lead = divisor.leading_coeff().expect("division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * b;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading_coeff().cloned() {
            Some(lead) => a.scale(&lead.recip()),
            None => a,
        }
    }

    /// If `self = k * other` for a rational `k`, returns `k`.
    ///
    /// The zero polynomial is proportional to everything with factor 0.
    pub fn proportionality(&self, other: &Poly) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if other.is_zero() || self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let k = self.leading_coeff()? / other.leading_coeff()?;
        (other.scale(&k) == *self).then_some(k)
    }
}

impl From<Rational> for Poly {
    fn from(value: Rational) -> Self {
        Poly::constant(value)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $tr::$method(&self, rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $tr::$method(self, &rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Highest degree first, e.g. `4*c^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let body = format_rational(&mag);
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "c")?,
                (1, false) => write!(f, "{body}*c")?,
                (_, true) => write!(f, "c^{k}")?,
                (_, false) => write!(f, "{body}*c^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn derivative_of_square() {
        assert_eq!(Poly::from_ints(&[0, 0, 1]).derivative(), Poly::from_ints(&[0, 2]));
    }

    #[test]
    fn evaluation_at_half() {
        assert_eq!(Poly::from_ints(&[1, 2]).eval(&rat(1, 2)), int(2));
    }

    #[test]
    fn difference_of_squares() {
        let p = Poly::from_ints(&[-1, 1]) * Poly::from_ints(&[1, 1]);
        assert_eq!(p, Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn cancellation_normalizes_degree() {
        let p = Poly::from_ints(&[1, 2, 3]);
        let q = Poly::from_ints(&[0, 0, 3]);
        assert_eq!((&p - &q).degree(), Some(1));
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn gcd_detects_repeated_roots() {
        let sq = Poly::from_ints(&[-1, 1]) * Poly::from_ints(&[-1, 1]);
        let p = &sq * &Poly::from_ints(&[2, 1]);
        assert_eq!(p.gcd(&p.derivative()), Poly::from_ints(&[-1, 1]));
        let q = Poly::from_ints(&[1, 0, -2, 0, 1]).scale(&rat(1, 1));
        let sf = Poly::from_ints(&[1, 0, 3, 0, 1]);
        assert_eq!(sf.gcd(&sf.derivative()), Poly::one());
        assert_eq!(q.gcd(&q.derivative()).degree(), Some(2));
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(Poly::from_ints(&[-1, 0, 4]).to_string(), "4*c^2 - 1");
        assert_eq!(Poly::c().scale(&rat(-2, 7)).to_string(), "-2/7*c");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn proportionality_factor() {
        let p = Poly::from_ints(&[1, 0, 3]);
        assert_eq!(p.scale(&rat(-5, 2)).proportionality(&p), Some(rat(-5, 2)));
        assert_eq!(Poly::from_ints(&[1, 1]).proportionality(&p), None);
        assert_eq!(Poly::zero().proportionality(&p), Some(int(0)));
    }
}

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Power series in `z` truncated after `z^order`, with coefficients in `Q[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    order: usize,
    coeffs: Vec<Poly>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Poly::one())
    }

    /// `coeff * z^power`, or zero if the power lies past the truncation order.
    pub fn monomial(order: usize, power: usize, coeff: Poly) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    /// Builds a series from leading coefficients; missing slots are zero and
    /// anything past `order` is dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Poly>) -> Self {
        let mut coeffs: Vec<Poly> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, Poly::zero());
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> &Poly {
        &self.coeffs[power]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Powers whose coefficient is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.order)
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect()
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Series, f: impl Fn(&Poly, &Poly) -> Poly) -> Series {
        Series {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let mut out = Series::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Series {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Series {
        self.map(|p| p.scale(factor))
    }

    pub fn scale_poly(&self, factor: &Poly) -> Series {
        self.map(|p| p * factor)
    }

    /// `d/dz`; the top slot becomes zero.
    pub fn z_derivative(&self) -> Series {
        Series::from_coeffs(
            self.order,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.scale(&int(k as i64))),
        )
    }

    /// `z d/dz`, i.e. the derivative in `v = ln z`: multiplies the `z^k`
    /// coefficient by `k`.
    pub fn z_scale_derivative(&self) -> Series {
        Series {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a.scale(&int(k as i64)))
                .collect(),
        }
    }

    /// `d/dc` applied coefficient-wise.
    pub fn c_derivative(&self) -> Series {
        self.map(Poly::derivative)
    }

    /// Multiplies by `z^power`, dropping what falls past the order.
    pub fn shift(&self, power: usize) -> Series {
        let mut out = Series::zero(self.order);
        for k in 0..=self.order.saturating_sub(power) {
            if k + power <= self.order {
                out.coeffs[k + power] = self.coeffs[k].clone();
            }
        }
        out
    }

    /// `(1 + self)^alpha` for a series with zero constant term.
    ///
    /// Uses the recurrence obtained from `(1+s) f' = alpha s' f`, which is
    /// exact and avoids forming the powers `s^k`.
    pub fn binomial(&self, alpha: &Rational) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order;
        let mut out: Vec<Poly> = Vec::with_capacity(n + 1);
        out.push(Poly::one());
        let alpha_plus_one = alpha + Rational::one();
        for k in 1..=n {
            let mut acc = Poly::zero();
            for j in 1..=k {
                let g = &self.coeffs[j];
                if g.is_zero() || out[k - j].is_zero() {
                    continue;
                }
                let weight = &alpha_plus_one * int(j as i64) - int(k as i64);
                if weight.is_zero() {
                    continue;
                }
                acc = &acc + &(g * &out[k - j]).scale(&weight);
            }
            out.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
        }
        Ok(Series { order: n, coeffs: out })
    }
}

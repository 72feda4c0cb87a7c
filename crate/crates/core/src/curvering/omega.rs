use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Poly, Rational};

use super::ring::CurveRing;

/// A basis element of `Omega^1_R / dR`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    /// `t^-1 dt`
    Omega0,
    /// `t^n u^l dt` with `n` negative and `1 <= l < m`.
    Form { n: i64, l: usize },
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Omega0 => write!(f, "w0"),
            BasisLabel::Form { n, l } => write!(f, "w[{n},{l}]"),
        }
    }
}

/// Coefficient vector over the Kähler basis of a fixed ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    m: usize,
    /// Number of `t`-exponent slots per `u`-sector (`D`, or `D - 1` when `a_0 = 0`).
    width: usize,
    omega0: Poly,
    /// `forms[(l - 1) * width + (k - 1)]` is the coefficient of `t^-k u^l dt`.
    forms: Vec<Poly>,
}

impl OmegaElement {
    pub fn zero(ring: &CurveRing) -> Self {
        let width = (-ring.lowest_basis_exponent()) as usize;
        Self {
            m: ring.m(),
            width,
            omega0: Poly::zero(),
            forms: vec![Poly::zero(); (ring.m() - 1) * width],
        }
    }

    pub fn omega0(ring: &CurveRing) -> Self {
        let mut e = Self::zero(ring);
        e.omega0 = Poly::one();
        e
    }

    /// The basis element `t^n u^l dt`, `lowest <= n <= -1`, `1 <= l < m`.
    pub fn basis(ring: &CurveRing, n: i64, l: usize) -> Result<Self> {
        let mut e = Self::zero(ring);
        let idx = e.index(n, l)?;
        e.forms[idx] = Poly::one();
        Ok(e)
    }

    pub(crate) fn from_sector(ring: &CurveRing, l: usize, slots: &[Poly]) -> Self {
        let mut e = Self::zero(ring);
        let start = (l - 1) * e.width;
        e.forms[start..start + e.width].clone_from_slice(&slots[..e.width]);
        e
    }

    fn index(&self, n: i64, l: usize) -> Result<usize> {
        if l == 0 || l >= self.m {
            return Err(Error::ExponentOutOfRange { l, m: self.m });
        }
        if n > -1 || n < -(self.width as i64) {
            return Err(Error::InvalidParameter(format!(
                "t^{n} u^{l} dt is not a basis element"
            )));
        }
        Ok((l - 1) * self.width + (-n - 1) as usize)
    }

    pub fn coeff_omega0(&self) -> &Poly {
        &self.omega0
    }

    pub fn coeff(&self, n: i64, l: usize) -> Result<&Poly> {
        Ok(&self.forms[self.index(n, l)?])
    }

    pub fn len(&self) -> usize {
        1 + self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.omega0.is_zero() && self.forms.iter().all(Poly::is_zero)
    }

    /// Nonzero `(label, coefficient)` pairs, `w0` first, then by `l` and `n`.
    pub fn terms(&self) -> Vec<(BasisLabel, &Poly)> {
        let mut out = Vec::new();
        if !self.omega0.is_zero() {
            out.push((BasisLabel::Omega0, &self.omega0));
        }
        for l in 1..self.m {
            for k in (1..=self.width).rev() {
                let p = &self.forms[(l - 1) * self.width + k - 1];
                if !p.is_zero() {
                    out.push((BasisLabel::Form { n: -(k as i64), l }, p));
                }
            }
        }
        out
    }

    /// `u`-sectors carrying a nonzero coefficient (`0` stands for `w0`).
    pub fn sectors(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms().iter().map(|(b, _)| match b {
            BasisLabel::Omega0 => 0,
            BasisLabel::Form { l, .. } => *l,
        }).collect();
        out.dedup();
        out
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.m == other.m && self.width == other.width,
            "OmegaElement shape mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        Self {
            m: self.m,
            width: self.width,
            omega0: &self.omega0 + &other.omega0,
            forms: self.forms.iter().zip(&other.forms).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Poly::constant(-Rational::one()))
    }

    pub fn scale(&self, factor: &Poly) -> Self {
        Self {
            m: self.m,
            width: self.width,
            omega0: &self.omega0 * factor,
            forms: self.forms.iter().map(|p| p * factor).collect(),
        }
    }
}

/// Formats a coefficient in front of a basis symbol, returning the sign
/// separately so terms can be joined with ` + ` / ` - `.
pub(crate) fn coefficient_prefix(p: &Poly) -> (bool, String) {
    if p.coeffs().len() == 1 {
        let a = &p.coeffs()[0];
        let body = if a.abs().is_one() {
            String::new()
        } else {
            format!("{}*", format_rational(&a.abs()))
        };
        return (a.is_negative(), body);
    }
    let nonzero: Vec<_> = p.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()).collect();
    if nonzero.len() == 1 {
        let (k, a) = nonzero[0];
        let mono = Poly::monomial(a.abs(), k);
        return (a.is_negative(), format!("{mono}*"));
    }
    (false, format!("({p})*"))
}

/// Joins `(negative, body)` pieces into `a - b + c` form.
pub(crate) fn join_signed(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in pieces.iter().enumerate() {
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for OmegaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<(bool, String)> = self
            .terms()
            .into_iter()
            .map(|(label, p)| {
                let (neg, prefix) = coefficient_prefix(p);
                (neg, format!("{prefix}{label}"))
            })
            .collect();
        write!(f, "{}", join_signed(&pieces))
    }
}

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Poly, Rational};
use crate::families::{build_family, FamilyId};

/// `c q_n = a_next q_(n+1) + b q_n + c_prev q_(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCoeffs {
    pub a_next: Rational,
    pub b: Rational,
    pub c_prev: Rational,
}

fn offset(family: FamilyId) -> Result<usize> {
    match family {
        FamilyId::Case1 => Ok(4),
        FamilyId::Case2 => Ok(2),
        _ => Err(Error::UnsupportedFamily { operation: "orthogonality", family: family.to_string() }),
    }
}

/// Case1: `q_n` is the coefficient of `z^(2n+4)`; case2: `z^(2n+2)`.
pub fn recurrence_coeffs(family: FamilyId, m: usize, n: usize) -> Result<RecurrenceCoeffs> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m = {m} must be at least 2")));
    }
    let (m, k) = (m as i64, (2 * n + offset(family)? + 2) as i64);
    let den = 2 * ((k - 5) * m + 2);
    if den == 0 {
        return Err(Error::ZeroDivisor { context: format!("{family} recurrence at n = {n}") });
    }
    Ok(RecurrenceCoeffs {
        a_next: rat((k - 3) * m + 4, den),
        b: Rational::zero(),
        c_prev: rat((k - 7) * m, den),
    })
}

impl RecurrenceCoeffs {
    /// The case2 coefficients in the form
    /// `2(2mn+3m+2) c q_n = (2mn+m) q_(n-1) + (2mn+5m+4) q_(n+1)`.
    pub fn shifted_case2(m: usize, n: usize) -> Self {
        let (m, n) = (m as i64, n as i64);
        let den = 2 * (2 * m * n + 3 * m + 2);
        Self {
            a_next: rat(2 * m * n + 5 * m + 4, den),
            b: Rational::zero(),
            c_prev: rat(2 * m * n + m, den),
        }
    }
}

/// `q_0 .. q_n` as exact polynomials.
pub fn subfamily(family: FamilyId, m: usize, n: usize) -> Result<Vec<Poly>> {
    let o = offset(family)?;
    let table = build_family(m, family, 2 * n + o)?;
    Ok((0..=n).map(|k| table.coeff(2 * k + o).clone()).collect())
}

/// `||q_n||^2 / ||q_0||^2 = prod_(k=1..n) c_prev(k) / a_next(k-1)`.
pub fn lambda_squared(family: FamilyId, m: usize, n: usize) -> Result<Rational> {
    let mut acc = Rational::one();
    for k in 1..=n {
        acc *= recurrence_coeffs(family, m, k)?.c_prev / recurrence_coeffs(family, m, k - 1)?.a_next;
    }
    Ok(acc)
}

/// `lambda_n^2 = (2mn+m+2)(2mn+m) / ((2mn+3m+4)(2mn+3m+2)) lambda_(n-1)^2`,
/// `lambda_0 = 1`.
pub fn shifted_lambda_squared(m: usize, n: usize) -> Rational {
    let m = m as i64;
    (1..=n as i64).fold(Rational::one(), |acc, n| {
        acc * rat(
            (2 * m * n + m + 2) * (2 * m * n + m),
            (2 * m * n + 3 * m + 4) * (2 * m * n + 3 * m + 2),
        )
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FavardReport {
    pub family: FamilyId,
    pub m: usize,
    pub size: usize,
    /// Every `b_n` is real (always true for rational data).
    pub b_real: bool,
    /// First `n >= 1` with `a_next(n-1) c_prev(n) <= 0`.
    pub first_failure: Option<usize>,
    /// `lambda_0^2 .. lambda_(size-1)^2`.
    pub lambda_squared: Vec<Rational>,
}

impl FavardReport {
    pub fn passes(&self) -> bool {
        self.b_real && self.first_failure.is_none() && self.lambda_squared.iter().all(Signed::is_positive)
    }
}

pub fn favard_check(family: FamilyId, m: usize, size: usize) -> Result<FavardReport> {
    if size == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    let coeffs: Vec<RecurrenceCoeffs> =
        (0..size).map(|n| recurrence_coeffs(family, m, n)).collect::<Result<_>>()?;
    let first_failure =
        (1..size).find(|&n| !(&coeffs[n - 1].a_next * &coeffs[n].c_prev).is_positive());
    let mut lambda = vec![Rational::one()];
    for n in 1..size {
        let next = &lambda[n - 1] * &coeffs[n].c_prev / &coeffs[n - 1].a_next;
        lambda.push(next);
    }
    Ok(FavardReport { family, m, size, b_real: true, first_failure, lambda_squared: lambda })
}

/// Recurrence data `c q_n = up[n] q_(n+1) + down[n] q_(n-1)` for `n < len`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceTable {
    pub up: Vec<Rational>,
    pub down: Vec<Rational>,
}

impl RecurrenceTable {
    pub fn for_family(family: FamilyId, m: usize, len: usize) -> Result<Self> {
        let mut up = Vec::with_capacity(len);
        let mut down = Vec::with_capacity(len);
        for n in 0..len {
            let r = recurrence_coeffs(family, m, n)?;
            up.push(r.a_next);
            down.push(r.c_prev);
        }
        Ok(Self { up, down })
    }

    /// Recurrence of the equivalent family `s_n q_n`.
    pub fn rescaled(&self, s: &[Rational]) -> Self {
        let len = self.up.len();
        assert!(s.len() > len, "need one scale past the table");
        let up = (0..len).map(|n| &self.up[n] * &s[n] / &s[n + 1]).collect();
        let down = (0..len)
            .map(|n| if n == 0 { self.down[0].clone() } else { &self.down[n] * &s[n] / &s[n - 1] })
            .collect();
        Self { up, down }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }
}

//! Fraction-free evaluation of the reduction recursions.
//!
//! A window of consecutive reductions is kept as integer numerators over one
//! common denominator. The denominator is a product of small step factors and
//! is stored factored, so lowest terms are recovered by trial division
//! instead of big gcds.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{Poly, Rational};

/// Slot-major integer numerators: `entry[slot][k]` is the `c^k` coefficient.
pub(crate) type IntEntry = Vec<Vec<BigInt>>;

/// Integer polynomial in `c`, lowest degree first.
pub(crate) type IntPoly = Vec<BigInt>;

#[derive(Clone, Debug, Default)]
pub(crate) struct Denominator {
    primes: BTreeMap<u64, u32>,
    rest: BigInt,
}

impl Denominator {
    fn one() -> Self {
        Self {
            primes: BTreeMap::new(),
            rest: BigInt::one(),
        }
    }

    fn mul(&mut self, factor: &BigInt) {
        match factor.abs().to_u64() {
            Some(v) => {
                let leftover = trial_factor(v, &mut self.primes);
                if leftover > 1 {
                    self.rest *= leftover;
                }
            }
            None => self.rest *= factor.abs(),
        }
    }

    /// `numer / self` in lowest terms.
    fn divide(&self, numer: &BigInt) -> Rational {
        if numer.is_zero() {
            return Rational::zero();
        }
        let mut num = numer.clone();
        let mut den = BigInt::one();
        for (&p, &e) in &self.primes {
            let pb = BigInt::from(p);
            let mut left = e;
            while left > 0 {
                let (q, r) = num.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                num = q;
                left -= 1;
            }
            if left > 0 {
                den *= num_traits::pow(pb, left as usize);
            }
        }
        if self.rest.is_one() {
            Rational::new_raw(num, den)
        } else {
            Rational::new(num, den * &self.rest)
        }
    }
}

/// Splits off prime factors below `2^20`; returns the unfactored remainder.
fn trial_factor(mut v: u64, primes: &mut BTreeMap<u64, u32>) -> u64 {
    let mut p = 2u64;
    while p * p <= v && p < (1 << 20) {
        while v.is_multiple_of(p) {
            *primes.entry(p).or_insert(0) += 1;
            v /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if v > 1 && p * p > v {
        *primes.entry(v).or_insert(0) += 1;
        return 1;
    }
    v
}

/// Consecutive reductions `t^lo .. t^(lo + len - 1)` over a shared denominator.
#[derive(Clone, Debug)]
pub(crate) struct Window {
    pub lo: i64,
    pub entries: VecDeque<IntEntry>,
    pub den: Denominator,
}

impl Window {
    /// Window holding the basis elements `t^lo .. t^(lo+len-1)`, all of which
    /// are basis slots or (when outside the basis) zero.
    pub fn initial(lo: i64, len: usize, width: usize) -> Self {
        let entries = (0..len as i64)
            .map(|k| {
                let idx = lo + k;
                let mut e = vec![Vec::new(); width];
                if idx <= -1 && idx >= -(width as i64) {
                    e[(-idx - 1) as usize] = vec![BigInt::one()];
                }
                e
            })
            .collect();
        Self {
            lo,
            entries,
            den: Denominator::one(),
        }
    }

    pub fn get(&self, idx: i64) -> &IntEntry {
        &self.entries[(idx - self.lo) as usize]
    }

    /// Appends (`upward`) or prepends a new entry
    /// `-sum_i terms_i * entry(idx_i) / step`, evicting from the far end.
    pub fn push(&mut self, terms: &[(i64, IntPoly)], step: &BigInt, upward: bool) {
        let width = self.entries[0].len();
        let mut fresh: IntEntry = vec![Vec::new(); width];
        for (idx, poly) in terms {
            let src = self.get(*idx);
            for (dst, s) in fresh.iter_mut().zip(src) {
                add_product(dst, poly, s);
            }
        }
        let neg_step_sign = if step.is_negative() { BigInt::one() } else { -BigInt::one() };
        let scale = step.abs();
        for slot in fresh.iter_mut() {
            for a in slot.iter_mut() {
                *a *= &neg_step_sign;
            }
        }
        for e in self.entries.iter_mut() {
            for slot in e.iter_mut() {
                for a in slot.iter_mut() {
                    *a *= &scale;
                }
            }
        }
        self.den.mul(&scale);
        if upward {
            self.entries.pop_front();
            self.entries.push_back(fresh);
            self.lo += 1;
        } else {
            self.entries.pop_back();
            self.entries.push_front(fresh);
            self.lo -= 1;
        }
    }

    pub fn to_rational(&self, idx: i64) -> Vec<Poly> {
        self.get(idx)
            .iter()
            .map(|slot| Poly::from_coeffs(slot.iter().map(|a| self.den.divide(a)).collect()))
            .collect()
    }
}

fn add_product(dst: &mut Vec<BigInt>, a: &[BigInt], b: &[BigInt]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let need = a.len() + b.len() - 1;
    if dst.len() < need {
        dst.resize(need, BigInt::zero());
    }
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.sign() != Sign::NoSign {
                dst[i + j] += x * y;
            }
        }
    }
    while dst.last().is_some_and(Zero::is_zero) {
        dst.pop();
    }
}

/// Clears denominators of `a_k` with one common multiplier `L`.
pub(crate) fn integral_coeffs(coeffs: &[Poly]) -> (Vec<IntPoly>, BigInt) {
    let mut l = BigInt::one();
    for p in coeffs {
        for a in p.coeffs() {
            l = l.lcm(a.denom());
        }
    }
    let ints = coeffs
        .iter()
        .map(|p| {
            p.coeffs()
                .iter()
                .map(|a| (a * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    (ints, l)
}

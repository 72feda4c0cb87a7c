use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{int, Poly, Rational};

use super::omega::OmegaElement;
use super::ring::{CurveRing, RingElement};
use super::sweep::{integral_coeffs, IntPoly, Window};

const CHECKPOINT_EVERY: i64 = 256;

/// Reduction state for one `u`-sector `l >= 1`.
#[derive(Debug, Default)]
pub(crate) struct Sector {
    cache: HashMap<i64, Vec<Poly>>,
    up: Option<Sweep>,
    down: Option<Sweep>,
}

/// A running window plus snapshots taken every `CHECKPOINT_EVERY` steps.
#[derive(Debug)]
struct Sweep {
    current: Window,
    checkpoints: Vec<Window>,
}

fn scaled(p: &Poly, factor: i64) -> Poly {
    p.scale(&int(factor))
}

fn int_scaled(p: &IntPoly, factor: &BigInt) -> IntPoly {
    p.iter().map(|a| a * factor).collect()
}

/// One recursion step: source indices with integer polynomial weights, and
/// the integer the weighted sum is divided by (after negation).
struct Step {
    terms: Vec<(i64, IntPoly)>,
    divisor: BigInt,
}

struct Recursion<'a> {
    ring: &'a CurveRing,
    l: usize,
    ints: Vec<IntPoly>,
    lcm: BigInt,
}

impl Recursion<'_> {
    /// `(Dl + (1+n)m) t^n = -sum_{k<D} a_k (kl + (n-D+1+k)m) t^(n-D+k)`.
    fn up(&self, n: i64) -> Result<Step> {
        let (m, d, li) = (self.ring.m() as i64, self.ring.degree() as i64, self.l as i64);
        let divisor = d * li + (1 + n) * m;
        if divisor == 0 {
            return Err(Error::ZeroDivisor { context: format!("upward step at n = {n}, l = {}", self.l) });
        }
        let terms = (0..d)
            .filter(|&k| !self.ints[k as usize].is_empty())
            .map(|k| {
                let w = BigInt::from(k * li + (n - d + 1 + k) * m);
                (n - d + k, int_scaled(&self.ints[k as usize], &w))
            })
            .collect();
        Ok(Step { terms, divisor: &self.lcm * divisor })
    }

    /// `a_0 != 0`: `a_0 (n+1) m t^n = -sum_{k>=1} a_k (kl + (n+1+k)m) t^(n+k)`.
    /// `a_0 == 0`: `a_1 (l + (n+1)m) t^n = -sum_{k>=2} a_k (kl + (n+k)m) t^(n+k-1)`.
    fn down(&self, n: i64) -> Result<Step> {
        let (m, d, li) = (self.ring.m() as i64, self.ring.degree() as i64, self.l as i64);
        let a0_zero = self.ring.a0_is_zero();
        let (lead, divisor) = if a0_zero {
            (self.ring.a(1), li + (n + 1) * m)
        } else {
            (self.ring.a(0), (n + 1) * m)
        };
        let lead = lead.as_constant().expect("validated at construction");
        if divisor == 0 || lead.is_zero() {
            return Err(Error::ZeroDivisor { context: format!("downward step at n = {n}, l = {}", self.l) });
        }
        let first = if a0_zero { 2 } else { 1 };
        let terms = (first..=d)
            .filter(|&k| !self.ints[k as usize].is_empty())
            .map(|k| {
                let (w, idx) = if a0_zero {
                    (k * li + (n + k) * m, n + k - 1)
                } else {
                    (k * li + (n + 1 + k) * m, n + k)
                };
                let w = BigInt::from(w) * lead.denom();
                (idx, int_scaled(&self.ints[k as usize], &w))
            })
            .collect();
        Ok(Step { terms, divisor: &self.lcm * divisor * lead.numer() })
    }
}

impl CurveRing {
    /// Class of `t^n u^l dt` in `Omega^1_R / dR` over the Kähler basis.
    pub fn reduce_form(&self, n: i64, l: usize) -> Result<OmegaElement> {
        let m = self.m();
        if l >= m {
            return Err(Error::ExponentOutOfRange { l, m });
        }
        if l == 0 {
            // t^n dt = d(t^(n+1) / (n+1)) unless n = -1
            return Ok(if n == -1 {
                OmegaElement::omega0(self)
            } else {
                OmegaElement::zero(self)
            });
        }
        let lowest = self.lowest_basis_exponent();
        if (lowest..=-1).contains(&n) {
            return OmegaElement::basis(self, n, l);
        }
        {
            let memo = self.memo.read().unwrap_or_else(|e| e.into_inner());
            if let Some(slots) = memo.get(&l).and_then(|s| s.cache.get(&n)) {
                return Ok(OmegaElement::from_sector(self, l, slots));
            }
        }
        let mut memo = self.memo.write().unwrap_or_else(|e| e.into_inner());
        let sector = memo.entry(l).or_default();
        let slots = self.sweep_to(sector, n, l, lowest)?;
        sector.cache.insert(n, slots.clone());
        Ok(OmegaElement::from_sector(self, l, &slots))
    }

    fn sweep_to(&self, sector: &mut Sector, n: i64, l: usize, lowest: i64) -> Result<Vec<Poly>> {
        let (ints, lcm) = integral_coeffs(self.coeffs());
        let rec = Recursion { ring: self, l, ints, lcm };
        let d = self.degree() as i64;
        let width = (-lowest) as usize;
        let upward = n >= 0;
        // `next` is the index the window would produce on its next step.
        let next_of = |w: &Window| if upward { w.lo + w.entries.len() as i64 } else { w.lo - 1 };
        let slot = if upward { &mut sector.up } else { &mut sector.down };
        let sweep = slot.get_or_insert_with(|| {
            let start = if upward {
                Window::initial(-d, d as usize, width)
            } else {
                Window::initial(lowest, width, width)
            };
            Sweep { current: start.clone(), checkpoints: vec![start] }
        });
        let cur = &sweep.current;
        if n >= cur.lo && n < cur.lo + cur.entries.len() as i64 {
            return Ok(cur.to_rational(n));
        }
        let behind = if upward { n < next_of(&sweep.current) } else { n > next_of(&sweep.current) };
        let mut window = if behind {
            sweep
                .checkpoints
                .iter()
                .rev()
                .find(|w| if upward { next_of(w) <= n } else { next_of(w) >= n })
                .expect("initial checkpoint precedes every index")
                .clone()
        } else {
            sweep.current.clone()
        };
        loop {
            let k = next_of(&window);
            let step = if upward { rec.up(k)? } else { rec.down(k)? };
            window.push(&step.terms, &step.divisor, upward);
            if !behind && (k - next_of(&sweep.checkpoints[0])).rem_euclid(CHECKPOINT_EVERY) == 0 {
                let covered = sweep.checkpoints.last().map(next_of);
                if covered.is_none_or(|c| if upward { next_of(&window) > c } else { next_of(&window) < c }) {
                    sweep.checkpoints.push(window.clone());
                }
            }
            if k == n {
                break;
            }
        }
        let out = window.to_rational(n);
        if !behind {
            sweep.current = window;
        }
        Ok(out)
    }

    /// Class of `f dt` for a ring element `f`.
    pub fn reduce_ring_form(&self, f: &RingElement) -> Result<OmegaElement> {
        let mut out = OmegaElement::zero(self);
        for (i, l, p) in f.terms() {
            out = out.add(&self.reduce_form(i, l)?.scale(p));
        }
        Ok(out)
    }

    /// Class of `f dg` in `Omega^1_R / dR`.
    pub fn reduce_diff(&self, f: &RingElement, g: &RingElement) -> Result<OmegaElement> {
        let mut out = OmegaElement::zero(self);
        for (i, l1, p) in f.terms() {
            for (j, l2, q) in g.terms() {
                let coeff = p * q;
                let total = l1 + l2;
                let term = if total == 0 {
                    self.reduce_form(i + j - 1, 0)?.scale(&coeff.scale(&int(j)))
                } else {
                    let weight = Rational::new(
                        (j * l1 as i64 - i * l2 as i64).into(),
                        (total as i64).into(),
                    );
                    if weight.is_zero() {
                        continue;
                    }
                    let form = self.mul(
                        &RingElement::monomial(i + j - 1, l1),
                        &RingElement::monomial(0, l2),
                    );
                    self.reduce_ring_form(&form)?.scale(&coeff.scale(&weight))
                };
                out = out.add(&term);
            }
        }
        Ok(out)
    }

    /// `t^i u^l d(t^j) = j psi_{i,j}`, returned as `j * [t^(i+j-1) u^l dt]`.
    pub fn psi(&self, i: i64, j: i64, l: usize) -> Result<OmegaElement> {
        if j == 0 {
            if l >= self.m() {
                return Err(Error::ExponentOutOfRange { l, m: self.m() });
            }
            return Ok(OmegaElement::zero(self));
        }
        Ok(self.reduce_form(i + j - 1, l)?.scale(&Poly::constant(int(j))))
    }

    /// Residual of the master relation
    /// `sum_k a_k (sm + (l+m)k) t^(s-1+k) u^l dt = 0`, i.e. `d(t^s u^(l+m))`.
    pub fn master_relation_residual(&self, s: i64, l: usize) -> Result<OmegaElement> {
        let (m, li) = (self.m() as i64, l as i64);
        let mut out = OmegaElement::zero(self);
        for (k, a) in self.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let w = s * m + (li + m) * k as i64;
            out = out.add(&self.reduce_form(s - 1 + k as i64, l)?.scale(&scaled(a, w)));
        }
        Ok(out)
    }

    /// The `l = 1` relation between `t^(D+i-1) u dt` and lower powers.
    ///
    /// Returns `(lhs, rhs)` with `lhs = ((m+1)D + im) [t^(D+i-1) u dt]` and
    /// `rhs = sum_{j<D} ((m+1)j + mi) a_j [t^(i+j-1) u dt]`. The relation holds
    /// as `lhs + rhs = 0`.
    pub fn l1_relation(&self, i: i64) -> Result<(OmegaElement, OmegaElement)> {
        let (m, d) = (self.m() as i64, self.degree() as i64);
        let lhs = self
            .reduce_form(d + i - 1, 1)?
            .scale(&Poly::constant(int((m + 1) * d + i * m)));
        let mut rhs = OmegaElement::zero(self);
        for j in 0..d {
            let a = self.a(j as usize);
            if a.is_zero() {
                continue;
            }
            let w = (m + 1) * j + m * i;
            rhs = rhs.add(&self.reduce_form(i + j - 1, 1)?.scale(&scaled(a, w)));
        }
        Ok((lhs, rhs))
    }
}

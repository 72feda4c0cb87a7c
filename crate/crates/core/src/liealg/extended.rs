use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::curvering::{coefficient_prefix, join_signed, CurveRing, OmegaElement, RingElement};
use crate::error::{Error, Result};
use crate::exactnum::{Poly, Rational};

use super::algebra::FinLieAlgebra;

/// Element of `(g (x) R) + Omega^1_R / dR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedElement {
    /// `(a, i, l) -> coefficient` of `x_a (x) t^i u^l`.
    loop_part: BTreeMap<(usize, i64, usize), Poly>,
    central: OmegaElement,
    names: Vec<String>,
}

impl ExtendedElement {
    pub fn zero(ring: &CurveRing, g: &FinLieAlgebra) -> Self {
        Self {
            loop_part: BTreeMap::new(),
            central: OmegaElement::zero(ring),
            names: g.names().to_vec(),
        }
    }

    /// `x_a (x) t^i u^l`.
    pub fn loop_term(ring: &CurveRing, g: &FinLieAlgebra, a: usize, i: i64, l: usize) -> Result<Self> {
        let mut e = Self::zero(ring, g);
        e.add_loop(ring, g, a, i, l, Poly::one())?;
        Ok(e)
    }

    pub fn central(ring: &CurveRing, g: &FinLieAlgebra, omega: OmegaElement) -> Self {
        let mut e = Self::zero(ring, g);
        e.central = omega;
        e
    }

    pub fn add_loop(
        &mut self,
        ring: &CurveRing,
        g: &FinLieAlgebra,
        a: usize,
        i: i64,
        l: usize,
        coeff: Poly,
    ) -> Result<()> {
        if a >= g.dim() {
            return Err(Error::Mismatch(format!("basis index {a} outside dimension {}", g.dim())));
        }
        if l >= ring.m() {
            return Err(Error::ExponentOutOfRange { l, m: ring.m() });
        }
        self.push_loop(a, i, l, coeff);
        Ok(())
    }

    fn push_loop(&mut self, a: usize, i: i64, l: usize, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.loop_part.entry((a, i, l)).or_insert_with(Poly::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.loop_part.remove(&(a, i, l));
        }
    }

    pub fn loop_terms(&self) -> impl Iterator<Item = (usize, i64, usize, &Poly)> {
        self.loop_part.iter().map(|(&(a, i, l), p)| (a, i, l, p))
    }

    pub fn central_part(&self) -> &OmegaElement {
        &self.central
    }

    /// Copy with the central part dropped.
    pub fn loop_only(&self) -> Self {
        let mut out = self.clone();
        out.central = self.central.scale(&Poly::zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_empty() && self.central.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, i, l, p) in other.loop_terms() {
            out.push_loop(a, i, l, p.clone());
        }
        out.central = out.central.add(&other.central);
        out
    }

    pub fn scale(&self, factor: &Poly) -> Self {
        let mut out = Self {
            loop_part: BTreeMap::new(),
            central: self.central.scale(factor),
            names: self.names.clone(),
        };
        for (a, i, l, p) in self.loop_terms() {
            out.push_loop(a, i, l, p * factor);
        }
        out
    }

    /// Largest absolute rational coefficient anywhere in the element.
    pub fn max_abs_coeff(&self) -> Rational {
        let central = self.central.terms().into_iter().map(|(_, p)| p);
        self.loop_part
            .values()
            .chain(central)
            .flat_map(|p| p.coeffs().iter().map(|a| a.abs()))
            .fold(Rational::zero(), |m, a| if a > m { a } else { m })
    }

    /// `u`-exponents occurring in the loop part and central sectors
    /// (`0` for `w0`).
    pub fn sectors(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.loop_part.keys().map(|&(_, _, l)| l).collect();
        out.extend(self.central.sectors());
        out.sort_unstable();
        out.dedup();
        out
    }

    fn check_compatible(&self, ring: &CurveRing, g: &FinLieAlgebra) -> Result<()> {
        if self.names != g.names() {
            return Err(Error::Mismatch("element built over a different Lie algebra".into()));
        }
        if self.central.len() != ring.basis_len() {
            return Err(Error::Mismatch("central part built over a different ring".into()));
        }
        if let Some(&(a, _, l)) = self.loop_part.keys().find(|&&(a, _, l)| a >= g.dim() || l >= ring.m()) {
            return Err(Error::Mismatch(format!("loop term (x{a}, u^{l}) out of range")));
        }
        Ok(())
    }
}

/// `[x, y]` in the universal central extension: loop part `[x,y] (x) fg`,
/// central part `(x, y) [f dg]`.
pub fn bracket(
    x: &ExtendedElement,
    y: &ExtendedElement,
    ring: &CurveRing,
    g: &FinLieAlgebra,
) -> Result<ExtendedElement> {
    x.check_compatible(ring, g)?;
    y.check_compatible(ring, g)?;
    let mut out = ExtendedElement::zero(ring, g);
    for (a, i, l1, p) in x.loop_terms() {
        for (b, j, l2, q) in y.loop_terms() {
            let coeff = p * q;
            let f = RingElement::monomial(i, l1);
            let h = RingElement::monomial(j, l2);
            let structure = g.bracket_basis(a, b);
            if structure.iter().any(|k| !k.is_zero()) {
                let fg = ring.mul(&f, &h);
                for (e, k) in structure.iter().enumerate() {
                    if k.is_zero() {
                        continue;
                    }
                    for (ti, tl, r) in fg.terms() {
                        out.push_loop(e, ti, tl, (r * &coeff).scale(k));
                    }
                }
            }
            let kappa = g.form(a, b);
            if !kappa.is_zero() {
                let omega = ring.reduce_diff(&f, &h)?;
                out.central = out.central.add(&omega.scale(&coeff.scale(kappa)));
            }
        }
    }
    Ok(out)
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces = Vec::new();
        for (a, i, l, p) in self.loop_terms() {
            let (neg, prefix) = coefficient_prefix(p);
            let mut body = format!("{prefix}{}", self.names[a]);
            match i {
                0 => {}
                1 => body.push_str("*t"),
                _ => body.push_str(&format!("*t^{i}")),
            }
            match l {
                0 => {}
                1 => body.push_str("*u"),
                _ => body.push_str(&format!("*u^{l}")),
            }
            pieces.push((neg, body));
        }
        for (label, p) in self.central.terms() {
            let (neg, prefix) = coefficient_prefix(p);
            pieces.push((neg, format!("{prefix}{label}")));
        }
        write!(f, "{}", join_signed(&pieces))
    }
}

use std::fmt;
use std::str::FromStr;



use crate::error::{Error, Result};
use crate::exactnum::{int, Poly, Rational, Series};

/// The four quartic-curve families, named by the `u`-power index of the
/// reduction they come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    /// `P_{-4}`: initial data `z^0 = 1`.
    Case1,
    /// `P_{-2}`: initial data `z^2 = 1`.
    Case2,
    /// `P_{-1}`: initial data `z^3 = 1`.
    Case3,
    /// `P_{-3}`: initial data `z^1 = 1`.
    Case4,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [Self::Case1, Self::Case2, Self::Case3, Self::Case4];

    /// The power of `z` carrying the single nonzero initial value.
    pub fn initial_power(self) -> usize {
        match self {
            Self::Case1 => 0,
            Self::Case2 => 2,
            Self::Case3 => 3,
            Self::Case4 => 1,
        }
    }

    /// Smallest power `k` from which `deg(coefficient of z^(k + 2j)) = j`.
    pub fn degree_base(self) -> usize {
        match self {
            Self::Case1 => 4,
            Self::Case2 => 2,
            Self::Case3 => 3,
            Self::Case4 => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Case1 => "case1",
            Self::Case2 => "case2",
            Self::Case3 => "case3",
            Self::Case4 => "case4",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "case1" | "1" | "p-4" => Ok(Self::Case1),
            "case2" | "2" | "p-2" => Ok(Self::Case2),
            "case3" | "3" | "p-1" => Ok(Self::Case3),
            "case4" | "4" | "p-3" => Ok(Self::Case4),
            _ => Err(Error::Parse {
                what: "family",
                input: s.to_string(),
            }),
        }
    }
}

/// Coefficients of the generating series `sum_k polys[k] z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTable {
    m: usize,
    family: FamilyId,
    polys: Vec<Poly>,
}

/// Builds `z^0..z^order` from the recursion
/// `((k-3)m + 4) A_k = 2c((k-5)m + 2) A_(k-2) - (k-7)m A_(k-4)`, `k >= 4`.
pub fn build_family(m: usize, family: FamilyId, order: usize) -> Result<FamilyTable> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m = {m} must be at least 2")));
    }
    let mi = m as i64;
    let mut polys = vec![Poly::zero(); order + 1];
    let k0 = family.initial_power();
    if k0 <= order {
        polys[k0] = Poly::one();
    }
    for k in 4..=order {
        let ki = k as i64;
        let divisor = (ki - 3) * mi + 4;
        assert!(divisor != 0, "recursion divisor vanished at k = {k}");
        let two_back = Poly::c().scale(&int(2 * ((ki - 5) * mi + 2)));
        let next = &(&two_back * &polys[k - 2]) - &polys[k - 4].scale(&int((ki - 7) * mi));
        polys[k] = next.scale(&Rational::new(1.into(), divisor.into()));
    }
    Ok(FamilyTable { m, family, polys })
}

impl FamilyTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    /// Coefficient of `z^k`.
    pub fn coeff(&self, k: usize) -> &Poly {
        &self.polys[k]
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn series(&self) -> Series {
        Series::from_coeffs(self.order(), self.polys.iter().cloned())
    }

    /// Powers `k` whose coefficient violates `p(-c) = (-1)^((k - k0)/2) p(c)`
    /// or that should vanish by parity of `k - k0`.
    pub fn parity_violations(&self) -> Vec<usize> {
        let k0 = self.family.initial_power();
        (0..self.polys.len())
            .filter(|&k| {
                let p = &self.polys[k];
                if k.abs_diff(k0) % 2 == 1 {
                    return !p.is_zero();
                }
                let odd = (k.abs_diff(k0) / 2) % 2 == 1;
                let expected = if odd { -p } else { p.clone() };
                p.reflect() != expected
            })
            .collect()
    }

    /// Powers `k = base + 2j`, `j >= 0`, whose degree in `c` differs from `j`.
    /// Meaningful for `m >= 3`; at `m = 2` leading terms can cancel.
    pub fn degree_violations(&self) -> Vec<usize> {
        let base = self.family.degree_base();
        (base..self.polys.len())
            .step_by(2)
            .filter(|&k| self.polys[k].degree() != Some((k - base) / 2))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn case1_low_coefficients() {
        let t = build_family(3, FamilyId::Case1, 8).unwrap();
        assert_eq!(t.coeff(4), &Poly::constant(rat(9, 7)));
        assert_eq!(t.coeff(6), &Poly::c().scale(&rat(90, 91)));
        for m in 2..8i64 {
            let t = build_family(m as usize, FamilyId::Case1, 6).unwrap();
            assert_eq!(t.coeff(4), &Poly::constant(rat(3 * m, m + 4)));
            let want = rat(6 * m * (m + 2), (m + 4) * (3 * m + 4));
            assert_eq!(t.coeff(6), &Poly::c().scale(&want));
        }
    }

    #[test]
    fn case2_low_coefficients() {
        for m in 2..8i64 {
            let t = build_family(m as usize, FamilyId::Case2, 4).unwrap();
            assert_eq!(t.coeff(2), &Poly::one());
            assert_eq!(t.coeff(4), &Poly::c().scale(&rat(-2 * (m - 2), m + 4)));
        }
    }

    #[test]
    fn odd_entries_vanish_for_even_families() {
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            let t = build_family(5, fam, 30).unwrap();
            assert!((1..=30).step_by(2).all(|k| t.coeff(k).is_zero()));
        }
    }

    #[test]
    fn parity_and_degree() {
        for m in 3..7 {
            for fam in FamilyId::ALL {
                let t = build_family(m, fam, 40).unwrap();
                assert!(t.parity_violations().is_empty(), "{fam} m={m}");
                assert!(t.degree_violations().is_empty(), "{fam} m={m}");
            }
        }
        let t = build_family(2, FamilyId::Case1, 30).unwrap();
        assert!(t.parity_violations().is_empty());
    }

    #[test]
    fn rejects_m_below_two() {
        assert!(build_family(1, FamilyId::Case1, 4).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for fam in FamilyId::ALL {
            assert_eq!(fam.name().parse::<FamilyId>().unwrap(), fam);
        }
        assert!("case5".parse::<FamilyId>().is_err());
    }
}

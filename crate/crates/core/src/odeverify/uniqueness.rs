use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactnum::{int, Poly, Rational};
use crate::families::FamilyId;

use super::ode::OdeOperator;

/// Coefficient equations for a polynomial solution `sum_i alpha_i c^i` of
/// the fourth-order ODE. Row `i` reads
/// `bands[i][0] alpha_i + bands[i][1] alpha_(i+2) + bands[i][2] alpha_(i+4) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessSystem {
    pub family: FamilyId,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub bands: Vec<[Rational; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessSolution {
    pub system: UniquenessSystem,
    /// Null-space basis, each vector `alpha_0 .. alpha_r` normalized to a
    /// leading coefficient of one.
    pub basis: Vec<Vec<Rational>>,
}

impl UniquenessSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn representative(&self) -> Option<Poly> {
        self.basis.first().map(|v| Poly::from_coeffs(v.clone()))
    }
}

impl UniquenessSystem {
    pub fn new(family: FamilyId, m: usize, n: usize, r: usize) -> Result<Self> {
        let op = OdeOperator::new(family, m, n)?;
        // image of c^i is d(i) c^i + e(i) c^(i-2) + g(i) c^(i-4)
        let image: Vec<Poly> = (0..=r + 4).map(|i| op.apply(&Poly::monomial(int(1), i))).collect();
        let bands = (0..=r)
            .map(|i| {
                let up = |s: usize| if i + s <= r { image[i + s].coeff(i) } else { Rational::zero() };
                [image[i].coeff(i), up(2), up(4)]
            })
            .collect();
        Ok(Self { family, m, n, r, bands })
    }

    pub fn diagonal(&self, i: usize) -> &Rational {
        &self.bands[i][0]
    }

    /// Diagonal entry from its closed form.
    pub fn diagonal_formula(family: FamilyId, m: usize, n: usize, i: usize) -> Rational {
        let (m, n, i) = (m as i64, n as i64, i as i64);
        let v = match family {
            FamilyId::Case1 => {
                (2 * i - n + 4) * (2 * i + n) * (m * (2 * i - n + 6) - 4) * (m * (2 * i + n - 2) + 4)
            }
            _ => {
                (4 * (i + 1) * (i + 1) - n * n) * (m * (2 * i - n + 8) - 4) * (m * (2 * i + n - 4) + 4)
            }
        };
        int(v)
    }

    /// The system applied to `alpha_0 .. alpha_r`.
    pub fn apply(&self, alpha: &[Rational]) -> Vec<Rational> {
        let at = |k: usize| alpha.get(k).cloned().unwrap_or_else(Rational::zero);
        self.bands
            .iter()
            .enumerate()
            .map(|(i, [d, e, g])| d * at(i) + e * at(i + 2) + g * at(i + 4))
            .collect()
    }

    /// Back-substitution from the top row, with zero-diagonal rows turned
    /// into free variables plus a constraint on the higher coefficients.
    pub fn solve(&self) -> Vec<Vec<Rational>> {
        let len = self.r + 1;
        let mut alpha: Vec<Vec<Rational>> = vec![Vec::new(); len];
        let mut constraints: Vec<Vec<Rational>> = Vec::new();
        let mut params = 0;
        for i in (0..len).rev() {
            let [d, e, g] = &self.bands[i];
            let mut rest = vec![Rational::zero(); params];
            for (coef, k) in [(e, i + 2), (g, i + 4)] {
                if k < len && !coef.is_zero() {
                    for (slot, a) in rest.iter_mut().zip(&alpha[k]) {
                        *slot += coef * a;
                    }
                }
            }
            if d.is_zero() {
                constraints.push(rest);
                let mut unit = vec![Rational::zero(); params + 1];
                unit[params] = Rational::one();
                params += 1;
                alpha[i] = unit;
            } else {
                alpha[i] = rest.iter().map(|v| -v / d).collect();
            }
        }
        null_space(&constraints, params)
            .into_iter()
            .map(|w| {
                let mut v: Vec<Rational> = alpha
                    .iter()
                    .map(|a| a.iter().zip(&w).map(|(x, y)| x * y).sum())
                    .collect();
                if let Some(lead) = v.iter().rev().find(|x| !x.is_zero()).cloned() {
                    v.iter_mut().for_each(|x| *x /= &lead);
                }
                v
            })
            .collect()
    }
}

/// Basis of `{w : rows . w = 0}` via reduced row echelon form.
fn null_space(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(ncols, Rational::zero());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&k| !a[k][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        a[row].iter_mut().for_each(|x| *x *= &inv);
        for k in 0..a.len() {
            if k != row && !a[k][col].is_zero() {
                let f = a[k][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[k].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut w = vec![Rational::zero(); ncols];
            w[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                w[pc] = -a[r][free].clone();
            }
            w
        })
        .collect()
}

/// Polynomial solutions of degree at most `r` (default `n`) of the
/// fourth-order ODE for `family` at `(m, n)`.
pub fn uniqueness_solve(family: FamilyId, m: usize, n: usize, r: Option<usize>) -> Result<UniquenessSolution> {
    let system = UniquenessSystem::new(family, m, n, r.unwrap_or(n))?;
    let basis = system.solve();
    Ok(UniquenessSolution { system, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_family;

    #[test]
    fn diagonal_matches_closed_form() {
        assert_eq!(UniquenessSystem::diagonal_formula(FamilyId::Case1, 5, 8, 0), int(15232));
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            for m in 3..=6 {
                for n in 0..=20 {
                    let s = UniquenessSystem::new(fam, m, n, n).unwrap();
                    for i in 0..=n {
                        assert_eq!(s.diagonal(i), &UniquenessSystem::diagonal_formula(fam, m, n, i));
                    }
                }
            }
        }
    }

    #[test]
    fn case1_band_two_closed_form() {
        // -8 (i+1)(i+2) m (m (4i(i+4) - (n-6)n + 10) - 4(n-6))
        let (m, n) = (5i64, 12i64);
        let s = UniquenessSystem::new(FamilyId::Case1, 5, 12, 12).unwrap();
        for i in 0..=8i64 {
            let want = -8 * (i + 1) * (i + 2) * m * (m * (4 * i * (i + 4) - (n - 6) * n + 10) - 4 * (n - 6));
            assert_eq!(s.bands[i as usize][1], int(want));
            let top = 16 * (i + 1) * (i + 2) * (i + 3) * (i + 4) * m * m;
            assert_eq!(s.bands[i as usize][2], int(top));
        }
    }

    #[test]
    fn case1_m5_n8() {
        let sol = uniqueness_solve(FamilyId::Case1, 5, 8, Some(10)).unwrap();
        assert_eq!(sol.dimension(), 1);
        let rep = sol.representative().unwrap();
        let member = build_family(5, FamilyId::Case1, 8).unwrap();
        assert!(rep.proportionality(member.coeff(8)).is_some());
        assert!(sol.system.apply(&sol.basis[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn odd_n_has_no_solution() {
        assert_eq!(uniqueness_solve(FamilyId::Case1, 5, 5, None).unwrap().dimension(), 0);
    }

    #[test]
    fn at_most_one_solution_for_m_at_least_four() {
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            for m in 4..=7 {
                let table = build_family(m, fam, 30).unwrap();
                for n in 0..=30 {
                    let sol = uniqueness_solve(fam, m, n, None).unwrap();
                    assert!(sol.dimension() <= 1, "{fam} m={m} n={n}");
                    for v in &sol.basis {
                        assert!(sol.system.apply(v).iter().all(Zero::is_zero));
                    }
                    let member = table.coeff(n);
                    if !member.is_zero() {
                        let rep = sol.representative().expect("member solves the ODE");
                        assert!(rep.proportionality(member).is_some(), "{fam} m={m} n={n}");
                    }
                }
            }
        }
    }
}

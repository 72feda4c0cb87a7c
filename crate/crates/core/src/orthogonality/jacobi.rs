use crate::error::{Error, Result};
use crate::exactnum::to_f64;
use crate::families::FamilyId;

use super::recurrence::{lambda_squared, RecurrenceTable};

const TOLERANCE: f64 = 1e-14;

/// Symmetric tridiagonal operator with diagonal `alpha` and off-diagonal
/// `beta[k]` between rows `k` and `k + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiOperator {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl JacobiOperator {
    /// `beta[k] = sqrt(up[k] down[k+1])`; needs `table.len() >= size`.
    pub fn from_table(table: &RecurrenceTable, size: usize) -> Result<Self> {
        if size == 0 || table.len() < size {
            return Err(Error::InvalidParameter(format!("size {size} with {} recurrence rows", table.len())));
        }
        let beta = (0..size - 1)
            .map(|k| {
                let prod = to_f64(&(&table.up[k] * &table.down[k + 1]));
                if prod > 0.0 {
                    Ok(prod.sqrt())
                } else {
                    Err(Error::Domain(format!("off-diagonal product {prod} at row {k} is not positive")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { alpha: vec![0.0; size], beta })
    }

    pub fn for_family(family: FamilyId, m: usize, size: usize) -> Result<Self> {
        Self::from_table(&RecurrenceTable::for_family(family, m, size)?, size)
    }

    pub fn size(&self) -> usize {
        self.alpha.len()
    }

    /// Eigenvalues in increasing order with the squared first components of
    /// their unit eigenvectors, by implicit-shift QL.
    pub fn spectrum(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = self.size();
        let mut d = self.alpha.clone();
        let mut e = self.beta.clone();
        e.push(0.0);
        let mut z = vec![0.0; n];
        z[0] = 1.0;
        let cap = 100 * n;
        let mut iterations = 0;
        for l in 0..n {
            loop {
                let mut mm = l;
                while mm + 1 < n {
                    let dd = d[mm].abs() + d[mm + 1].abs();
                    if e[mm].abs() <= TOLERANCE * dd.max(f64::MIN_POSITIVE) {
                        break;
                    }
                    mm += 1;
                }
                if mm == l {
                    break;
                }
                iterations += 1;
                if iterations > cap {
                    return Err(Error::NoConvergence { iterations: cap });
                }
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[mm] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
                let mut deflated = false;
                for i in (l..mm).rev() {
                    let f = s * e[i];
                    let b = c * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[mm] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    let zi1 = z[i + 1];
                    z[i + 1] = s * z[i] + c * zi1;
                    z[i] = c * z[i] - s * zi1;
                }
                if deflated {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[mm] = 0.0;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
        Ok((order.iter().map(|&k| d[k]).collect(), order.iter().map(|&k| z[k] * z[k]).collect()))
    }

    pub fn gauss_rule(&self, mass: f64) -> Result<GaussRule> {
        let (nodes, first) = self.spectrum()?;
        Ok(GaussRule { nodes, weights: first.into_iter().map(|w| mass * w).collect() })
    }
}

impl GaussRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn nodes_in_open_interval(&self) -> bool {
        self.nodes.iter().all(|&x| x > -1.0 && x < 1.0)
    }

    /// `max_k |x_k + x_(N-1-k)|`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.nodes.len();
        (0..n).map(|k| (self.nodes[k] + self.nodes[n - 1 - k]).abs()).fold(0.0, f64::max)
    }
}

pub fn gauss_rule(family: FamilyId, m: usize, size: usize, mass: f64) -> Result<GaussRule> {
    JacobiOperator::for_family(family, m, size)?.gauss_rule(mass)
}

/// Zeros of `q_n`, the eigenvalues of the `n x n` section.
pub fn family_roots(family: FamilyId, m: usize, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(JacobiOperator::for_family(family, m, n)?.spectrum()?.0)
}

/// Roots of `q_n` strictly interlace those of `q_(n+1)` for `1 <= n < n_max`.
pub fn interlacing_holds(family: FamilyId, m: usize, n_max: usize) -> Result<bool> {
    let mut prev = family_roots(family, m, 1)?;
    for n in 2..=n_max {
        let next = family_roots(family, m, n)?;
        let ok = prev.iter().enumerate().all(|(k, &x)| next[k] < x && x < next[k + 1]);
        if !ok {
            return Ok(false);
        }
        prev = next;
    }
    Ok(true)
}

/// `max |sum_k w_k f_i(x_k) f_j(x_k) - delta_ij|` over `i, j < size`, with
/// `f_n = q_n / (q_0 lambda_n)` and unit mass.
pub fn gram_check(family: FamilyId, m: usize, size: usize) -> Result<f64> {
    if size < 2 {
        return Err(Error::InvalidParameter(format!("size {size} below 2")));
    }
    let table = RecurrenceTable::for_family(family, m, size)?;
    let rule = JacobiOperator::from_table(&table, size)?.gauss_rule(1.0)?;
    let up: Vec<f64> = table.up.iter().map(to_f64).collect();
    let down: Vec<f64> = table.down.iter().map(to_f64).collect();
    let norms: Vec<f64> = (0..size)
        .map(|n| lambda_squared(family, m, n).map(|l| to_f64(&l).sqrt()))
        .collect::<Result<_>>()?;
    let values: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .map(|&x| {
            let mut q = vec![1.0];
            for n in 0..size - 1 {
                let before = if n == 0 { 0.0 } else { q[n - 1] };
                q.push((x * q[n] - down[n] * before) / up[n]);
            }
            q.iter().zip(&norms).map(|(v, h)| v / h).collect()
        })
        .collect();
    let mut worst: f64 = 0.0;
    for i in 0..size {
        for j in 0..size {
            let s: f64 = values.iter().zip(&rule.weights).map(|(f, w)| w * f[i] * f[j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Rational};

    #[test]
    fn single_node() {
        let rule = gauss_rule(FamilyId::Case1, 3, 1, 1.0).unwrap();
        assert_eq!(rule.nodes, vec![0.0]);
        assert_eq!(rule.weights, vec![1.0]);
    }

    #[test]
    fn legendre_like_operator() {
        // beta_k = k / sqrt(4k^2 - 1) gives Gauss-Legendre nodes (weights sum to 2)
        let beta = (1..5).map(|k| k as f64 / ((4 * k * k - 1) as f64).sqrt()).collect();
        let op = JacobiOperator { alpha: vec![0.0; 5], beta };
        let rule = op.gauss_rule(2.0).unwrap();
        let x4 = rule.integrate(|x| x.powi(8));
        assert!((x4 - 2.0 / 9.0).abs() < 1e-14);
        assert!((rule.nodes[4] - 0.906_179_845_938_664).abs() < 1e-14);
    }

    #[test]
    fn rules_are_symmetric_with_positive_weights() {
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            for m in 3..=6 {
                let rule = gauss_rule(fam, m, 20, 1.0).unwrap();
                assert!(rule.weights.iter().all(|&w| w > 0.0));
                assert!((rule.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
                assert!(rule.symmetry_defect() < 1e-12, "{fam} m={m}");
                assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn gram_deviation() {
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            for m in 3..=6 {
                let dev = gram_check(fam, m, 20).unwrap();
                assert!(dev <= 1e-10, "{fam} m={m}: {dev}");
            }
        }
    }

    #[test]
    fn interlacing() {
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            for m in 3..=5 {
                assert!(interlacing_holds(fam, m, 20).unwrap(), "{fam} m={m}");
            }
        }
    }

    #[test]
    fn case1_nodes_inside_interval() {
        for m in 3..=6 {
            assert!(gauss_rule(FamilyId::Case1, m, 20, 1.0).unwrap().nodes_in_open_interval());
        }
    }

    #[test]
    fn case2_m3_has_nodes_outside_interval() {
        // P_(-2,6) vanishes at c^2 = m(m+4)/(4(m^2-4)) = 21/20
        let roots = family_roots(FamilyId::Case2, 3, 2).unwrap();
        assert!((roots[1] - 1.05f64.sqrt()).abs() < 1e-14);
        assert!(!gauss_rule(FamilyId::Case2, 3, 20, 1.0).unwrap().nodes_in_open_interval());
    }

    #[test]
    fn rescaling_leaves_nodes_unchanged() {
        let table = RecurrenceTable::for_family(FamilyId::Case1, 5, 12).unwrap();
        let scales: Vec<Rational> = (0..13).map(|k| rat(if k % 3 == 0 { -7 } else { 5 } + k, 3 + k)).collect();
        let a = JacobiOperator::from_table(&table, 12).unwrap().spectrum().unwrap().0;
        let b = JacobiOperator::from_table(&table.rescaled(&scales), 12).unwrap().spectrum().unwrap().0;
        assert_eq!(a, b);
    }
}

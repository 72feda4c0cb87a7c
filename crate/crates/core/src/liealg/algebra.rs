use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};

/// Finite-dimensional Lie algebra given by structure constants and an
/// invariant symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLieAlgebra {
    names: Vec<String>,
    /// `structure[a][b][e]`: coefficient of `x_e` in `[x_a, x_b]`.
    structure: Vec<Vec<Vec<Rational>>>,
    form: Vec<Vec<Rational>>,
}

impl FinLieAlgebra {
    /// Checks antisymmetry, the Jacobi identity, symmetry and invariance of
    /// the form.
    pub fn new(
        names: Vec<String>,
        structure: Vec<Vec<Vec<Rational>>>,
        form: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let d = names.len();
        let bad = |msg: String| Err(Error::InvalidAlgebra(msg));
        if d == 0 {
            return bad("dimension must be positive".into());
        }
        let square = |v: &Vec<Vec<Rational>>| v.len() == d && v.iter().all(|r| r.len() == d);
        if structure.len() != d || !structure.iter().all(&square) || !square(&form) {
            return bad(format!("structure constants and form must have dimension {d}"));
        }
        let g = Self { names, structure, form };
        for a in 0..d {
            for b in 0..d {
                for e in 0..d {
                    if g.structure[a][b][e] != -&g.structure[b][a][e] {
                        return bad(format!("[x{a}, x{b}] is not antisymmetric"));
                    }
                }
                if g.form[a][b] != g.form[b][a] {
                    return bad(format!("form is not symmetric at ({a}, {b})"));
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let jac = g.jacobi_basis(a, b, c);
                    if jac.iter().any(|v| !v.is_zero()) {
                        return bad(format!("Jacobi identity fails on (x{a}, x{b}, x{c})"));
                    }
                    // (x_a, [x_b, x_c]) = ([x_a, x_b], x_c)
                    let left: Rational = (0..d).map(|e| &g.structure[b][c][e] * &g.form[a][e]).sum();
                    let right: Rational = (0..d).map(|e| &g.structure[a][b][e] * &g.form[e][c]).sum();
                    if left != right {
                        return bad(format!("form is not invariant on (x{a}, x{b}, x{c})"));
                    }
                }
            }
        }
        Ok(g)
    }

    /// `sl_2` with basis `(e, h, f)` and its Killing form.
    pub fn sl2() -> Self {
        let z = || int(0);
        let mut s = vec![vec![vec![z(), z(), z()]; 3]; 3];
        // [h, e] = 2e, [h, f] = -2f, [e, f] = h
        s[1][0][0] = int(2);
        s[0][1][0] = int(-2);
        s[1][2][2] = int(-2);
        s[2][1][2] = int(2);
        s[0][2][1] = int(1);
        s[2][0][1] = int(-1);
        let form = vec![
            vec![z(), z(), int(4)],
            vec![z(), int(8), z()],
            vec![int(4), z(), z()],
        ];
        Self::new(vec!["e".into(), "h".into(), "f".into()], s, form).expect("sl2 is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coordinates of `[x_a, x_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[Rational] {
        &self.structure[a][b]
    }

    pub fn form(&self, a: usize, b: usize) -> &Rational {
        &self.form[a][b]
    }

    fn jacobi_basis(&self, a: usize, b: usize, c: usize) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            for e in 0..d {
                let k = &self.structure[x][y][e];
                if k.is_zero() {
                    continue;
                }
                for (f, v) in out.iter_mut().enumerate() {
                    *v += k * &self.structure[e][z][f];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_killing_form() {
        let g = FinLieAlgebra::sl2();
        assert_eq!(g.form(1, 1), &int(8));
        assert_eq!(g.form(0, 2), &int(4));
        assert_eq!(g.bracket_basis(0, 2), &[int(0), int(1), int(0)]);
    }

    #[test]
    fn rejects_non_invariant_form() {
        let g = FinLieAlgebra::sl2();
        let mut form = g.form.clone();
        form[1][1] = int(7);
        assert!(FinLieAlgebra::new(g.names.clone(), g.structure.clone(), form).is_err());
    }

    #[test]
    fn rejects_broken_antisymmetry() {
        let g = FinLieAlgebra::sl2();
        let mut s = g.structure.clone();
        s[0][2][1] = int(2);
        assert!(FinLieAlgebra::new(g.names.clone(), s, g.form.clone()).is_err());
    }

    #[test]
    fn abelian_algebra_with_any_symmetric_form() {
        let z = || int(0);
        let s = vec![vec![vec![z(), z()]; 2]; 2];
        let form = vec![vec![int(1), int(3)], vec![int(3), int(-2)]];
        assert!(FinLieAlgebra::new(vec!["a".into(), "b".into()], s, form).is_ok());
    }
}

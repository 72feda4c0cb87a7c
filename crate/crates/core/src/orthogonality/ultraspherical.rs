use crate::error::Result;
use crate::exactnum::{int, rat, Poly, Rational};
use crate::families::FamilyId;

use super::recurrence::subfamily;

/// `C_0 .. C_n` from
/// `2x(n + nu + kappa) C_n = (n + kappa + 1) C_(n+1) + (2 nu + n + kappa - 1) C_(n-1)`,
/// `C_(-1) = 0`, `C_0 = 1`.
pub fn associated_ultraspherical(nu: &Rational, kappa: &Rational, n: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    let mut before = Poly::zero();
    for k in 0..n {
        let kr = int(k as i64);
        let lead = Poly::c().scale(&((&kr + nu + kappa) * int(2)));
        let back = nu * int(2) + &kr + kappa - int(1);
        let next = (&(&lead * &out[k]) - &before.scale(&back)).scale(&(&kr + kappa + int(1)).recip());
        before = out[k].clone();
        out.push(next);
    }
    out
}

/// `q_k - (3m / (m + 4)) C_k` for `k <= n`, with `nu = -1/m`,
/// `kappa = 1/2 + 2/m`.
pub fn ultraspherical_match(m: usize, n: usize) -> Result<Vec<Poly>> {
    let mi = m as i64;
    let q = subfamily(FamilyId::Case1, m, n)?;
    let c = associated_ultraspherical(&rat(-1, mi), &(rat(1, 2) + rat(2, mi)), n);
    let scale = rat(3 * mi, mi + 4);
    Ok(q.iter().zip(&c).map(|(q, c)| q - &c.scale(&scale)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        let c = associated_ultraspherical(&rat(-1, 3), &(rat(1, 2) + rat(2, 3)), 1);
        assert_eq!(c[1], Poly::c().scale(&rat(10, 13)));
    }

    #[test]
    fn matches_case1() {
        for m in 3..=5 {
            assert!(ultraspherical_match(m, 30).unwrap().iter().all(Poly::is_zero));
        }
    }

    #[test]
    fn recurrence_factors_scale_to_case1() {
        for m in 2..=9i64 {
            let (nu, kappa) = (rat(-1, m), rat(1, 2) + rat(2, m));
            for n in 0..10i64 {
                let two_m = int(2 * m);
                let nr = int(n);
                assert_eq!(&two_m * (&nr + &nu + &kappa), int(2 * m * n + m + 2));
                assert_eq!(&two_m * (&nr + &kappa + int(1)), int(2 * m * n + 3 * m + 4));
                assert_eq!(&two_m * (&nu * int(2) + &nr + &kappa - int(1)), int(m * (2 * n - 1)));
            }
        }
    }
}

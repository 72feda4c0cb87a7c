use crate::exactnum::{int, Poly, Rational};

/// `Q_0 .. Q_n` for parameter `lambda`, via
/// `k Q_k = 2c(k + lambda - 1) Q_(k-1) - (k + 2 lambda - 2) Q_(k-2)`.
pub fn gegenbauer_table(lambda: &Rational, n: usize) -> Vec<Poly> {
    let mut q = vec![Poly::one()];
    if n >= 1 {
        q.push(Poly::c().scale(&(lambda * int(2))));
    }
    for k in 2..=n {
        let kr = int(k as i64);
        let a = Poly::c().scale(&((&kr + lambda - int(1)) * int(2)));
        let b = &kr + lambda * int(2) - int(2);
        let next = &(&a * &q[k - 1]) - &q[k - 2].scale(&b);
        q.push(next.scale(&kr.recip()));
    }
    q
}

pub fn gegenbauer(lambda: &Rational, n: usize) -> Poly {
    gegenbauer_table(lambda, n).pop().expect("table is nonempty")
}

/// `Q_k` together with `dQ_k/dlambda` for `k = 0..n`.
pub(crate) fn gegenbauer_with_lambda_derivative(lambda: &Rational, n: usize) -> (Vec<Poly>, Vec<Poly>) {
    let q = gegenbauer_table(lambda, n);
    let mut dq = vec![Poly::zero()];
    if n >= 1 {
        dq.push(Poly::c().scale(&int(2)));
    }
    for k in 2..=n {
        let kr = int(k as i64);
        let a = Poly::c().scale(&((&kr + lambda - int(1)) * int(2)));
        let b = &kr + lambda * int(2) - int(2);
        let two_c = Poly::c().scale(&int(2));
        // differentiate the recurrence in lambda
        let next = &(&(&two_c * &q[k - 1]) + &(&a * &dq[k - 1]))
            - &(&q[k - 2].scale(&int(2)) + &dq[k - 2].scale(&b));
        dq.push(next.scale(&kr.recip()));
    }
    (q, dq)
}

/// `(1 - c^2) y'' - (2 lambda + 1) c y' + n (n + 2 lambda) y` at `y = Q_n`.
pub fn gegenbauer_ode_residual(lambda: &Rational, n: usize) -> Poly {
    let y = gegenbauer(lambda, n);
    let one_minus_c2 = Poly::from_ints(&[1, 0, -1]);
    let nr = int(n as i64);
    let lam2 = lambda * int(2);
    &(&(&one_minus_c2 * &y.nth_derivative(2))
        - &(&Poly::c() * &y.derivative()).scale(&(&lam2 + int(1))))
        + &y.scale(&(&nr * (&nr + &lam2)))
}

/// `(1 - c^2) Q_n' - c (2 lambda + n) Q_n + (n + 1) Q_(n+1)` with
/// `lambda = 1 + 1/m`.
pub fn szego_identity_check(m: usize, n: usize) -> Poly {
    let lambda = int(1) + Rational::new(1.into(), (m as i64).into());
    let q = gegenbauer_table(&lambda, n + 1);
    let one_minus_c2 = Poly::from_ints(&[1, 0, -1]);
    let nr = int(n as i64);
    &(&(&one_minus_c2 * &q[n].derivative()) - &(&Poly::c() * &q[n]).scale(&(&lambda * int(2) + &nr)))
        + &q[n + 1].scale(&(&nr + int(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn low_orders() {
        assert_eq!(gegenbauer(&rat(4, 3), 0), Poly::one());
        assert_eq!(gegenbauer(&rat(4, 3), 1), Poly::c().scale(&rat(8, 3)));
        // lambda = 1 gives Chebyshev U: U_2 = 4c^2 - 1
        assert_eq!(gegenbauer(&int(1), 2), Poly::from_ints(&[-1, 0, 4]));
    }

    #[test]
    fn differential_equation() {
        for m in [3i64, 4, 5] {
            let lambda = int(1) + rat(1, m);
            for n in 0..=20 {
                assert!(gegenbauer_ode_residual(&lambda, n).is_zero());
            }
        }
    }

    #[test]
    fn szego_identity() {
        for m in [3, 5] {
            for n in 0..=20 {
                assert!(szego_identity_check(m, n).is_zero());
            }
        }
    }

    #[test]
    fn parity_and_degree() {
        let q = gegenbauer_table(&rat(6, 5), 12);
        for (n, p) in q.iter().enumerate() {
            assert_eq!(p.degree(), Some(n));
            let sign = if n % 2 == 0 { p.clone() } else { -p };
            assert_eq!(p.reflect(), sign);
        }
    }

    #[test]
    fn lambda_derivative_matches_difference_quotient() {
        // Q_n is polynomial in lambda; compare with exact finite differences
        // of a quadratic-in-lambda fit at n = 2.
        let lam = rat(5, 4);
        let (_, dq) = gegenbauer_with_lambda_derivative(&lam, 2);
        // Q_2 = 2 lambda (lambda + 1) c^2 - lambda
        let expected = Poly::from_coeffs(vec![int(-1), int(0), lam.clone() * int(4) + int(2)]);
        assert_eq!(dq[2], expected);
    }
}

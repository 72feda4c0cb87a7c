use crate::error::{Error, Result};
use crate::families::FamilyId;

use super::adaptive::{adaptive_integrate, DEFAULT_BUDGET};
use super::series::check_point;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralSpec {
    pub family: FamilyId,
    pub m: usize,
    pub c: f64,
    pub z: f64,
    pub tolerance: f64,
}

/// Correction terms added to `int_eps^z` before letting `eps -> 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Counterterms {
    /// case1: `eps^(4/m-3) + (2c/m) eps^(4/m-1)`; case2: `eps^(4/m-1)`.
    Derived,
    /// case1: `eps^(4/m-3) + 2c(3 - 2/m) phi_m(eps)` with
    /// `phi_m(eps) = eps^(4/m-1) / (4/m-1)`, or `log eps` at `m = 4`;
    /// case2 as derived.
    Phi,
}

impl IntegralSpec {
    pub fn new(family: FamilyId, m: usize, c: f64, z: f64, tolerance: f64) -> Result<Self> {
        let spec = Self { family, m, c, z, tolerance };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if !matches!(self.family, FamilyId::Case1 | FamilyId::Case2) {
            return Err(Error::UnsupportedFamily { operation: "integral_value", family: self.family.to_string() });
        }
        if self.m < 2 {
            return Err(Error::InvalidParameter(format!("m = {} must be at least 2", self.m)));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance {} must be positive", self.tolerance)));
        }
        check_point(self.c, self.z)?;
        if self.z <= 0.0 {
            return Err(Error::Domain(format!("z = {} must be positive", self.z)));
        }
        Ok(())
    }

    fn mf(&self) -> f64 {
        self.m as f64
    }

    fn prefactor(&self) -> f64 {
        let (m, z) = (self.mf(), self.z);
        z.powf(3.0 - 4.0 / m) * (1.0 - 2.0 * self.c * z * z + z.powi(4)).powf(1.0 / m)
    }

    /// `(1 + x)^beta - 1 - beta x` without cancellation for small `x`.
    fn binomial_tail(beta: f64, x: f64) -> f64 {
        if x.abs() >= 0.5 {
            return (1.0 + x).powf(beta) - 1.0 - beta * x;
        }
        let mut term = beta * x;
        let mut sum = 0.0;
        for k in 2..400 {
            term *= (beta - (k - 1) as f64) / k as f64 * x;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    }

    /// Integrand minus its non-integrable terms at `w = 0`, after `w = s^m`
    /// and including the Jacobian `m s^(m-1)`.
    fn remainder(&self, s: f64) -> f64 {
        let (m, c) = (self.mf(), self.c);
        let w = s.powi(self.m as i32);
        let w2 = w * w;
        let x = w2 * (w2 - 2.0 * c);
        let beta = -1.0 - 1.0 / m;
        let tail = Self::binomial_tail(beta, x);
        let value = match self.family {
            FamilyId::Case1 => {
                let (a0, a2) = (4.0 - 3.0 * m, 2.0 * c * (3.0 * m - 2.0));
                let h = a0 * (beta * w2 * w2 + tail) + a2 * w2 * (beta * x + tail);
                s.powi(3 - 3 * self.m as i32) * h
            }
            _ => (4.0 - m) * s.powi(3 - self.m as i32) * (beta * x + tail),
        };
        if value.is_finite() {
            value
        } else {
            0.0
        }
    }

    /// Closed-form antiderivative of the subtracted terms at `z`, with the
    /// derived counterterms absorbing the lower limit.
    fn main_part(&self) -> f64 {
        let (m, z) = (self.mf(), self.z);
        let p = 4.0 / m - 1.0;
        match self.family {
            FamilyId::Case1 => z.powf(4.0 / m - 3.0) + 2.0 * self.c / m * z.powf(p),
            _ => z.powf(p),
        }
    }

    /// Chosen counterterms minus derived ones at `eps`.
    fn counterterm_excess(&self, eps: f64, counterterms: Counterterms) -> f64 {
        match (self.family, counterterms) {
            (FamilyId::Case1, Counterterms::Phi) => {
                let m = self.mf();
                let p = 4.0 / m - 1.0;
                let phi = if self.m == 4 { eps.ln() } else { eps.powf(p) / p };
                2.0 * self.c * (3.0 - 2.0 / m) * phi - 2.0 * self.c / m * eps.powf(p)
            }
            _ => 0.0,
        }
    }

    fn remainder_integral(&self, eps: f64) -> Result<f64> {
        let m = self.mf();
        let lo = if eps == 0.0 { 0.0 } else { eps.powf(1.0 / m) };
        let r = adaptive_integrate(|s| self.remainder(s), lo, self.z.powf(1.0 / m), 0.1 * self.tolerance, DEFAULT_BUDGET)?;
        Ok(r.value)
    }
}

/// `int_eps^z (integrand) dw + counterterms(eps)`.
pub fn regularized_bracket(spec: &IntegralSpec, eps: f64, counterterms: Counterterms) -> Result<f64> {
    spec.validate()?;
    if !(eps > 0.0 && eps < spec.z) {
        return Err(Error::Domain(format!("eps = {eps} outside (0, z)")));
    }
    Ok(spec.remainder_integral(eps)? + spec.main_part() + spec.counterterm_excess(eps, counterterms))
}

/// `z^(3-4/m) (1 - 2cz^2 + z^4)^(1/m)` times the `eps -> 0` limit of the
/// regularized bracket.
pub fn integral_value(spec: &IntegralSpec) -> Result<f64> {
    spec.validate()?;
    Ok(spec.prefactor() * (spec.remainder_integral(0.0)? + spec.main_part()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::series_value;

    fn spec(family: FamilyId, m: usize, c: f64, z: f64) -> IntegralSpec {
        IntegralSpec::new(family, m, c, z, 1e-10).unwrap()
    }

    #[test]
    fn boundary_value_at_small_z() {
        for m in [3, 4, 5] {
            let v = integral_value(&spec(FamilyId::Case1, m, 0.3, 1e-6)).unwrap();
            assert!((v - 1.0).abs() < 1e-9, "m={m}: {v}");
        }
    }

    #[test]
    fn agrees_with_series() {
        let cases = [(FamilyId::Case1, 3, 0.3, 0.4), (FamilyId::Case2, 4, 0.5, 0.3), (FamilyId::Case1, 4, -0.7, 0.5)];
        for (fam, m, c, z) in cases {
            let a = integral_value(&spec(fam, m, c, z)).unwrap();
            let b = series_value(fam, m, c, z, 120, 1e-13).unwrap();
            assert!((a - b).abs() < 1e-9, "{fam} m={m}: {a} vs {b}");
        }
    }

    #[test]
    fn case1_at_m2() {
        let a = integral_value(&spec(FamilyId::Case1, 2, 0.2, 0.4)).unwrap();
        let b = series_value(FamilyId::Case1, 2, 0.2, 0.4, 120, 1e-13).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn derived_counterterms_settle() {
        // the bracket differs from its limit by the remainder integral over
        // (0, eps), of order eps^(1 + 4/m)
        for m in [3, 4, 5, 7] {
            let s = spec(FamilyId::Case1, m, 0.6, 0.4);
            let limit = integral_value(&s).unwrap() / s.prefactor();
            for eps in [1e-4, 1e-6] {
                let b = regularized_bracket(&s, eps, Counterterms::Derived).unwrap();
                let scale = eps.powf(1.0 + 4.0 / m as f64);
                assert!((b - limit).abs() < 10.0 * scale + 1e-9, "m={m} eps={eps}");
            }
        }
    }

    #[test]
    fn phi_counterterms_drift_for_m_at_least_four() {
        for m in [4, 5] {
            let s = spec(FamilyId::Case1, m, 0.6, 0.4);
            let b1 = regularized_bracket(&s, 1e-4, Counterterms::Phi).unwrap();
            let b2 = regularized_bracket(&s, 1e-8, Counterterms::Phi).unwrap();
            assert!((b1 - b2).abs() > 1e-2, "m={m}");
        }
        // at m = 3 the phi excess is O(eps^(1/3)) and dies out slowly
        let s = spec(FamilyId::Case1, 3, 0.6, 0.4);
        let excess = |eps: f64| {
            regularized_bracket(&s, eps, Counterterms::Phi).unwrap()
                - regularized_bracket(&s, eps, Counterterms::Derived).unwrap()
        };
        assert!(excess(1e-15).abs() < 1e-4);
        assert!(excess(1e-15).abs() < excess(1e-9).abs());
    }

    #[test]
    fn case2_counterterms_coincide() {
        let s = spec(FamilyId::Case2, 5, -0.4, 0.3);
        let a = regularized_bracket(&s, 1e-5, Counterterms::Phi).unwrap();
        let b = regularized_bracket(&s, 1e-5, Counterterms::Derived).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(IntegralSpec::new(FamilyId::Case3, 3, 0.1, 0.2, 1e-8).is_err());
        assert!(matches!(IntegralSpec::new(FamilyId::Case1, 3, 0.1, 0.0, 1e-8), Err(Error::Domain(_))));
        assert!(IntegralSpec::new(FamilyId::Case1, 3, 0.1, 0.2, 0.0).is_err());
    }
}

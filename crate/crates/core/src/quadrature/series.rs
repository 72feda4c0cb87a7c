use crate::error::{Error, Result};
use crate::families::{build_family, FamilyId, FamilyTable};

pub(super) fn check_point(c: f64, z: f64) -> Result<()> {
    if c.is_nan() || c.abs() >= 1.0 {
        return Err(Error::Domain(format!("c = {c} outside (-1, 1)")));
    }
    if z.is_nan() || z.abs() >= 1.0 {
        return Err(Error::Domain(format!("z = {z} outside (-1, 1)")));
    }
    Ok(())
}

/// `(partial sum through z^order, tail estimate)`. The tail is estimated as
/// `K |z|^(order+1) / (1 - |z|)` with `K` the largest `|A_k(c)|` over the
/// upper half of the table.
pub(super) fn eval_table(table: &FamilyTable, c: f64, z: f64) -> (f64, f64) {
    let order = table.order();
    let mut sum = 0.0;
    let mut power = 1.0;
    let mut k_max: f64 = 0.0;
    for k in 0..=order {
        let a = table.coeff(k).eval_f64(c);
        sum += a * power;
        power *= z;
        if 2 * k >= order {
            k_max = k_max.max(a.abs());
        }
    }
    (sum, k_max * power.abs() / (1.0 - z.abs()))
}

pub fn series_tail_estimate(family: FamilyId, m: usize, c: f64, z: f64, order: usize) -> Result<f64> {
    check_point(c, z)?;
    Ok(eval_table(&build_family(m, family, order)?, c, z).1)
}

/// `sum_(k <= order) A_k(c) z^k` in double precision; fails when the tail
/// estimate exceeds `tolerance`.
pub fn series_value(family: FamilyId, m: usize, c: f64, z: f64, order: usize, tolerance: f64) -> Result<f64> {
    check_point(c, z)?;
    let (value, tail) = eval_table(&build_family(m, family, order)?, c, z);
    if tail > tolerance {
        return Err(Error::TailBound { bound: tail, tolerance, order });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_terms() {
        assert_eq!(series_value(FamilyId::Case1, 3, 0.4, 0.0, 20, 1e-12).unwrap(), 1.0);
        assert_eq!(series_value(FamilyId::Case2, 3, 0.4, 0.0, 20, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn truncation_stability() {
        let a = series_value(FamilyId::Case1, 3, 0.3, 0.4, 80, 1e-12).unwrap();
        let b = series_value(FamilyId::Case1, 3, 0.3, 0.4, 120, 1e-12).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn only_multiples_of_four_at_c_zero() {
        let table = build_family(3, FamilyId::Case1, 40).unwrap();
        for k in 0..=40 {
            if k % 4 != 0 {
                assert_eq!(table.coeff(k).eval_f64(0.0), 0.0, "k={k}");
            }
        }
    }

    #[test]
    fn reflection_in_c() {
        // P(-c, z) = sum (-1)^(k/2) A_k(c) z^k for the even families
        let (c, z) = (0.35f64, 0.45f64);
        for fam in [FamilyId::Case1, FamilyId::Case2] {
            let table = build_family(4, fam, 100).unwrap();
            let k0 = fam.initial_power();
            let signed: f64 = (0..=100)
                .step_by(2)
                .map(|k: usize| {
                    let sign = if (k.abs_diff(k0) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * table.coeff(k).eval_f64(c) * z.powi(k as i32)
                })
                .sum();
            let direct = series_value(fam, 4, -c, z, 100, 1e-12).unwrap();
            assert!((signed - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_points() {
        assert!(matches!(series_value(FamilyId::Case1, 3, 1.0, 0.2, 20, 1e-8), Err(Error::Domain(_))));
        assert!(matches!(series_value(FamilyId::Case1, 3, 0.2, 0.9, 10, 1e-8), Err(Error::TailBound { .. })));
    }
}

use proptest::prelude::*;

use supoly::exactnum::{format_rational, is_canonical, parse_rational, rat, rational_from_f64, to_f64};
use supoly::families::{build_family, FamilyId};
use supoly::liealg::{bracket, ExtendedElement, FinLieAlgebra};
use supoly::{CurveRing, Poly, Rational, RingElement, Series};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..5).prop_map(Poly::from_coeffs)
}

fn monomial_element(m: usize) -> impl Strategy<Value = RingElement> {
    prop::collection::vec((-4i64..=4, 0..m, poly()), 1..4).prop_map(|terms| {
        let mut e = RingElement::zero();
        for (i, l, p) in terms {
            e.add_term(i, l, p);
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn rationals_stay_canonical(a in rational(), b in rational()) {
        for v in [&a + &b, &a - &b, &a * &b] {
            prop_assert!(is_canonical(&v));
            prop_assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }
        if b != rat(0, 1) {
            prop_assert!(is_canonical(&(&a / &b)));
        }
    }

    #[test]
    fn floats_convert_exactly(x in -1e6f64..1e6) {
        let r = rational_from_f64(x).unwrap();
        prop_assert_eq!(to_f64(&r), x);
    }

    #[test]
    fn binomial_exponents_add(
        coeffs in prop::collection::vec(poly(), 1..5),
        a in rational(),
        b in rational(),
    ) {
        let order = 8;
        let s = Series::from_coeffs(order, std::iter::once(Poly::zero()).chain(coeffs));
        let lhs = s.binomial(&(&a + &b)).unwrap();
        let rhs = s.binomial(&a).unwrap().mul(&s.binomial(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn curve_ring_is_commutative_and_associative(
        (m, f, g, h) in (2usize..5).prop_flat_map(|m| {
            (Just(m), monomial_element(m), monomial_element(m), monomial_element(m))
        }),
    ) {
        let ring = CurveRing::quartic(m).unwrap();
        prop_assert_eq!(ring.mul(&f, &g), ring.mul(&g, &f));
        prop_assert_eq!(ring.mul(&ring.mul(&f, &g), &h), ring.mul(&f, &ring.mul(&g, &h)));
        prop_assert_eq!(ring.mul(&f, &RingElement::one()), f.clone());
    }

    #[test]
    fn cocycle_is_antisymmetric(
        m in 2usize..6,
        (i, j) in (-6i64..=6, -6i64..=6),
        (l1, l2) in (0usize..6, 0usize..6),
    ) {
        let ring = CurveRing::quartic(m).unwrap();
        let f = RingElement::monomial(i, l1 % m);
        let g = RingElement::monomial(j, l2 % m);
        let sum = ring.reduce_diff(&f, &g).unwrap().add(&ring.reduce_diff(&g, &f).unwrap());
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric(
        m in 2usize..5,
        (a, b) in (0usize..3, 0usize..3),
        (i, j) in (-4i64..=4, -4i64..=4),
        (l1, l2) in (0usize..4, 0usize..4),
    ) {
        let ring = CurveRing::quartic(m).unwrap();
        let g = FinLieAlgebra::sl2();
        let x = ExtendedElement::loop_term(&ring, &g, a, i, l1 % m).unwrap();
        let y = ExtendedElement::loop_term(&ring, &g, b, j, l2 % m).unwrap();
        let sum = bracket(&x, &y, &ring, &g).unwrap().add(&bracket(&y, &x, &ring, &g).unwrap());
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn family_tables_respect_parity(m in 2usize..9, fam in 0usize..4, order in 0usize..40) {
        let t = build_family(m, FamilyId::ALL[fam], order).unwrap();
        prop_assert!(t.parity_violations().is_empty());
    }
}

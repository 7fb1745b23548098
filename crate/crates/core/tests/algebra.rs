use bellinv_core::rational::{binomial, factorial, falling_factorial};
use bellinv_core::{Monomial, MultiPoly, Rational, UniPoly};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=10).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), rational()), 0..5).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(exps, c)| {
            let m = Monomial::from_pairs(exps.into_iter().enumerate().map(|(i, e)| (i as u32 + 1, e)));
            (m, c)
        }))
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(inv) = a.recip() {
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn pascal_rule(t in rational(), k in 1usize..8) {
        let lhs = binomial(&t, k);
        let t1 = &t - &Rational::one();
        prop_assert_eq!(lhs, binomial(&t1, k) + binomial(&t1, k - 1));
    }

    #[test]
    fn binomial_absorption(t in rational(), k in 1usize..8) {
        // C(t, k) = C(t-1, k-1) t / k
        let t1 = &t - &Rational::one();
        prop_assert_eq!(binomial(&t, k), binomial(&t1, k - 1) * &t / Rational::from(k));
    }

    #[test]
    fn binomial_is_falling_over_factorial(t in rational(), k in 0usize..8) {
        let via_falling = falling_factorial(&t, k) / Rational::from_bigint(factorial(k));
        prop_assert_eq!(binomial(&t, k), via_falling);
    }

    #[test]
    fn multipoly_ring_laws(p in multipoly(), q in multipoly(), r in multipoly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &MultiPoly::one(), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in multipoly(), q in multipoly(), x in point()) {
        let (pv, qv) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), &pv + &qv);
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), &pv * &qv);
        prop_assert_eq!(p.pow(3).eval(&x).unwrap(), pv.pow(3));
    }

    #[test]
    fn total_degree_is_additive(p in multipoly(), q in multipoly()) {
        if let (Some(a), Some(b)) = (p.total_degree(), q.total_degree()) {
            prop_assert_eq!((&p * &q).total_degree(), Some(a + b));
        }
    }

    #[test]
    fn unipoly_rescale_matches_evaluation(
        coeffs in prop::collection::vec(rational(), 0..6),
        factor in nonzero_rational(),
        at in rational(),
    ) {
        let p = UniPoly::from_coeffs(coeffs);
        prop_assert_eq!(p.rescale_var(&factor).eval(&at), p.eval(&(&factor * &at)));
    }

    #[test]
    fn product_of_linear_vanishes_at_roots(shifts in prop::collection::vec(rational(), 0..6)) {
        let p = UniPoly::product_of_linear(&shifts);
        prop_assert_eq!(p.degree(), Some(shifts.len()));
        for s in &shifts {
            prop_assert!(p.eval(&-s).is_zero());
        }
    }
}

#[test]
fn generalized_binomials() {
    assert_eq!(binomial(&Rational::from(5), 2), Rational::from(10));
    assert_eq!(binomial(&Rational::from(-1), 2), Rational::from(1));
    assert_eq!(binomial(&Rational::new(-3, 2), 2), Rational::new(15, 8));
    assert_eq!(binomial(&Rational::new(1, 2), 2), Rational::new(-1, 8));
    assert_eq!(falling_factorial(&Rational::from(4), 4), Rational::from(24));
}

#[test]
fn malformed_rationals_are_rejected() {
    for bad in ["", "1/0", "1.5", "1 /2", "a", "1/-2", "/3"] {
        assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
    }
    assert_eq!("-6/4".parse::<Rational>().unwrap(), Rational::new(-3, 2));
}

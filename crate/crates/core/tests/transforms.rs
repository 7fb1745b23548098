use bellinv_core::report::failures;
use bellinv_core::transforms::{
    affine_backward, affine_forward, general_backward, general_forward, general_forward_series, pipeline_invariants,
    scaled_backward, scaled_forward, three_term_backward, two_term_backward, two_term_coeff_checks, two_term_forward,
    FSource,
};
use bellinv_core::{sample, Error, ProblemSpec, Rational, SequencePrefix};
use proptest::prelude::*;

const N: usize = 8;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=10).prop_map(|(n, d)| Rational::new(n, d))
}

fn sequence(len: usize) -> impl Strategy<Value = SequencePrefix> {
    prop::collection::vec(rational(), len).prop_map(SequencePrefix::new)
}

fn pole_free_spec(m: usize) -> impl Strategy<Value = ProblemSpec> {
    any::<u64>().prop_map(move |seed| sample::pole_free_spec(&mut sample::rng(seed), m, N))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn affine_round_trips(a in -6i64..=6, b in -6i64..=6, x in sequence(N), z in sequence(N)) {
        let (a, b) = (Rational::from(a), Rational::from(b));
        prop_assume!((1..=N).all(|m| !(&a * Rational::from(m) + &b).is_zero()));
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let fwd = affine_forward(&a, &b, &x).unwrap();
        prop_assert_eq!(&affine_backward(&a, &b, &fwd).unwrap(), &x);
        let back = affine_backward(&a, &b, &z).unwrap();
        prop_assert_eq!(&affine_forward(&a, &b, &back).unwrap(), &z);
    }

    #[test]
    fn affine_round_trips_for_rational_parameters(a in rational(), b in rational(), x in sequence(N)) {
        prop_assume!((1..=N).all(|m| !(&a * Rational::from(m) + &b).is_zero()));
        let fwd = affine_forward(&a, &b, &x).unwrap();
        prop_assert_eq!(&affine_backward(&a, &b, &fwd).unwrap(), &x);
    }

    #[test]
    fn scaled_round_trips(a in rational(), b in rational(), x in sequence(N), y in sequence(N)) {
        prop_assume!(!b.is_zero());
        prop_assume!((1..=N).all(|m| {
            let am = &a * Rational::from(m);
            !(&am + &b).is_zero() && !(&am + Rational::one()).is_zero()
        }));
        let fwd = scaled_forward(&a, &b, &x).unwrap();
        prop_assert_eq!(&scaled_backward(&a, &b, &fwd).unwrap(), &x);
        let back = scaled_backward(&a, &b, &y).unwrap();
        prop_assert_eq!(&scaled_forward(&a, &b, &back).unwrap(), &y);
    }

    #[test]
    fn two_term_round_trips(p in rational(), q in rational(), r in rational(), y in sequence(N), x in sequence(N)) {
        prop_assume!(q != r && !p.is_zero() && !q.is_zero() && !r.is_zero());
        prop_assume!((1..=N).all(|n| {
            let np = &p * Rational::from(n);
            !(&np + &q).is_zero() && !(&np + &r).is_zero()
        }));
        let fwd = two_term_forward(&p, &q, &r, &y).unwrap();
        prop_assert_eq!(&two_term_backward(&p, &q, &r, &fwd).unwrap(), &y);
        let back = two_term_backward(&p, &q, &r, &x).unwrap();
        prop_assert_eq!(&two_term_forward(&p, &q, &r, &back).unwrap(), &x);
        let checks = two_term_coeff_checks(&p, &q, &r, N).unwrap();
        prop_assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn general_round_trips(s in (2usize..=4).prop_flat_map(pole_free_spec), y in sequence(N), x in sequence(N)) {
        let fwd = general_forward(&s, &y).unwrap();
        prop_assert_eq!(&general_backward(&s, &fwd).unwrap(), &y);
        let back = general_backward(&s, &x).unwrap();
        prop_assert_eq!(&general_forward(&s, &back).unwrap(), &x);
    }

    #[test]
    fn formula_matches_lagrange_series(s in (2usize..=4).prop_flat_map(pole_free_spec), y in sequence(N)) {
        prop_assert_eq!(general_forward_series(&s, &y).unwrap(), general_forward(&s, &y).unwrap());
    }

    #[test]
    fn three_term_agrees_with_general(s in pole_free_spec(3), x in sequence(N)) {
        let general = general_backward(&s, &x).unwrap();
        prop_assert_eq!(&three_term_backward(&s, &x, FSource::Recurrence).unwrap(), &general);
        prop_assert_eq!(&three_term_backward(&s, &x, FSource::Mina).unwrap(), &general);
        prop_assert_eq!(&general_forward(&s, &general).unwrap(), &x);
    }

    #[test]
    fn two_term_is_the_general_case_at_m2(q in rational(), r in rational(), y in sequence(N)) {
        prop_assume!(q != r && !q.is_zero() && !r.is_zero());
        let p = Rational::new(3, 7);
        prop_assume!((1..=N).all(|n| {
            let np = &p * Rational::from(n);
            !(&np + &q).is_zero() && !(&np + &r).is_zero()
        }));
        let s = ProblemSpec::two_term(p.clone(), q.clone(), r.clone()).unwrap();
        let x = general_forward(&s, &y).unwrap();
        prop_assert_eq!(&x, &two_term_forward(&p, &q, &r, &y).unwrap());
        prop_assert_eq!(general_backward(&s, &x).unwrap(), two_term_backward(&p, &q, &r, &x).unwrap());
    }

    #[test]
    fn pipeline_identities(s in (2usize..=4).prop_flat_map(|m| any::<u64>().prop_map(move |seed| sample::spec(&mut sample::rng(seed), m))), y in sequence(N)) {
        let checks = pipeline_invariants(&s, &y, N).unwrap();
        prop_assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }
}

#[test]
fn scaled_pair_needs_nonzero_b() {
    let x = SequencePrefix::new(vec![Rational::one(); 3]);
    assert!(matches!(
        scaled_forward(&Rational::one(), &Rational::zero(), &x),
        Err(Error::InvalidParameters(_))
    ));
}

#[test]
fn three_term_needs_three_terms() {
    let s = ProblemSpec::two_term(Rational::one(), Rational::one(), Rational::from(2)).unwrap();
    let x = SequencePrefix::new(vec![Rational::one(); 3]);
    assert_eq!(
        three_term_backward(&s, &x, FSource::Mina),
        Err(Error::WrongArity { expected: 3, got: 2 })
    );
}

#[test]
fn first_terms() {
    let s = sample::pole_free_spec(&mut sample::rng(8), 3, 3);
    let x = SequencePrefix::new(vec![Rational::new(5, 3), Rational::one(), Rational::one()]);
    let y = general_backward(&s, &x).unwrap();
    assert_eq!(y.get(1), &(x.get(1) / &s.c(1)));
    let back = general_forward(&s, &y).unwrap();
    assert_eq!(back.get(1), &(&s.c(1) * y.get(1)));
}

//! Deterministic seeded sampling of small rationals and problem specs.
//!
//! Numerators stay within `|n| <= 20` and denominators within `1..=10`, which
//! keeps bignum growth tame at order ten while still exercising fractions.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problem::{ProblemSpec, Term};
use crate::rational::Rational;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a named sub-case.
pub fn sub_rng(seed: u64, case: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(case);
    r
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    rational_in(rng, 20, 10)
}

pub fn rational_in<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    Rational::new(n, d)
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn sequence<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| rational(rng)).collect()
}

/// `count` pairwise distinct rationals avoiding every value in `avoid`.
pub fn distinct_points<R: Rng>(rng: &mut R, count: usize, avoid: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    while out.len() < count {
        let r = rational(rng);
        if !avoid.contains(&r) && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// A random admissible spec with `m` terms, every `a_i` nonzero.
pub fn spec<R: Rng>(rng: &mut R, m: usize) -> ProblemSpec {
    assert!(m >= 2, "an admissible spec needs at least two terms");
    loop {
        let p = rational_in(rng, 4, 3);
        if p.is_zero() {
            continue;
        }
        let qs: Vec<Rational> = (0..m).map(|_| rational_in(rng, 6, 3)).collect();
        let mut a: Vec<Rational> = (0..m - 1).map(|_| rational_in(rng, 5, 4)).collect();
        let last = -a.iter().cloned().sum::<Rational>();
        a.push(last);
        if a.iter().any(Rational::is_zero) {
            continue;
        }
        let terms = a.into_iter().zip(qs).map(|(a, q)| Term { a, q }).collect();
        if let Ok(s) = ProblemSpec::new(p, terms) {
            return s;
        }
    }
}

/// Like [`spec`], additionally avoiding `np + q_i = 0` and `pn = 1` for
/// `1 <= n <= order`, so both general transforms are defined.
pub fn pole_free_spec<R: Rng>(rng: &mut R, m: usize, order: usize) -> ProblemSpec {
    loop {
        let s = spec(rng, m);
        if is_pole_free(&s, order) {
            return s;
        }
    }
}

pub fn is_pole_free(s: &ProblemSpec, order: usize) -> bool {
    (1..=order).all(|n| {
        let np = s.p() * Rational::from(n);
        !np.is_one() && s.terms().iter().all(|t| !(&np + &t.q).is_zero())
    })
}

/// Like [`spec`] with `q_1 = q_2` and `m = 3`.
pub fn degenerate_m3_spec<R: Rng>(rng: &mut R) -> ProblemSpec {
    loop {
        let s = spec(rng, 3);
        let t = s.terms();
        let terms = alloc::vec![
            t[0].clone(),
            Term {
                a: t[1].a.clone(),
                q: t[0].q.clone(),
            },
            t[2].clone(),
        ];
        if let Ok(d) = ProblemSpec::new(s.p().clone(), terms) {
            return d;
        }
    }
}

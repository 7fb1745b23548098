//! Acceptance suite: every criterion is an exact identity check. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bellinv_core::bell::{bell_gf, bell_partition_triangle, BellTable};
use bellinv_core::lambda::{
    f_recurrence, f_recurrence_symbolic, lambda_from_instance, lambda_recurrence, verify_lambda_laws,
};
use bellinv_core::mina::{
    chi_recursion, mina_row, mina_via_matrices, verify_convolutions, verify_mina, ConvolutionMode, C42_NOTE,
};
use bellinv_core::report::{count, failures};
use bellinv_core::sample::{self, SeededRng};
use bellinv_core::transforms::{self, pipeline_invariants, FSource};
use bellinv_core::{Check, LaurentEntry, MultiPoly, ProblemSpec, Rational, SequencePrefix, Series, Status, UniPoly};

const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;

type Criterion = (&'static str, u64, fn() -> Outcome);

fn rng(criterion: u64) -> SeededRng {
    sample::sub_rng(SEED, criterion)
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(checks: &[Check], what: &str) -> Result<(), String> {
    if checks.is_empty() {
        return Err(format!("{what}: no checks ran"));
    }
    if let Some(c) = failures(checks).first() {
        return Err(format!(
            "{what}: {} {} n={} m={:?}: {:?}",
            c.identity, c.params, c.n, c.m, c.witness
        ));
    }
    let skipped = count(checks, Status::SkippedPole);
    ensure(skipped == 0, || format!("{what}: {skipped} cases skipped at poles"))
}

fn seq(v: Vec<Rational>) -> SequencePrefix {
    SequencePrefix::new(v)
}

/// Forward then backward returns `x`; backward then forward returns `y`.
fn round_trip(
    label: &str,
    x: &SequencePrefix,
    y: &SequencePrefix,
    forward: impl Fn(&SequencePrefix) -> bellinv_core::Result<SequencePrefix>,
    backward: impl Fn(&SequencePrefix) -> bellinv_core::Result<SequencePrefix>,
) -> Result<(), String> {
    let err = |e: bellinv_core::Error| format!("{label}: {e}");
    let there = forward(x).map_err(err)?;
    ensure(&backward(&there).map_err(err)? == x, || {
        format!("{label}: backward(forward(x)) != x")
    })?;
    let back = backward(y).map_err(err)?;
    ensure(&forward(&back).map_err(err)? == y, || {
        format!("{label}: forward(backward(y)) != y")
    })
}

fn bell_cross_method() -> Outcome {
    let mut rng = rng(1);
    let triangle = bell_partition_triangle(12);
    for draw in 0..5 {
        let x = sample::sequence(&mut rng, 12);
        for n in 1..=12 {
            for k in 1..=n {
                let by_partitions = triangle[n - 1][k - 1].eval(&x).map_err(|e| e.to_string())?;
                let by_gf = bell_gf(n, k, &x).map_err(|e| e.to_string())?;
                ensure(by_partitions == by_gf, || {
                    format!("draw {draw}, n={n}, k={k}: {by_partitions} != {by_gf}")
                })?;
            }
        }
    }
    Ok("5 assignments, 78 (n, k) pairs each".into())
}

fn scaled_pair() -> Outcome {
    let mut rng = rng(2);
    let mut cases = 0;
    while cases < 20 {
        let (a, b) = (sample::rational(&mut rng), sample::rational(&mut rng));
        let pole = b.is_zero() || (1..=10).any(|m| (&a * int(m) + &b).is_zero() || (&a * int(m) + int(1)).is_zero());
        if pole {
            continue;
        }
        let x = seq(sample::sequence(&mut rng, 10));
        let y = seq(sample::sequence(&mut rng, 10));
        round_trip(
            &format!("a={a}, b={b}"),
            &x,
            &y,
            |s| transforms::scaled_forward(&a, &b, s),
            |s| transforms::scaled_backward(&a, &b, s),
        )?;
        cases += 1;
    }
    Ok("20 cases at N=10, both orders".into())
}

fn affine_pair() -> Outcome {
    let mut rng = rng(3);
    let mut cases = 0;
    while cases < 20 {
        let a = sample::rational_in(&mut rng, 6, 1);
        let b = sample::rational_in(&mut rng, 6, 1);
        if (a.is_zero() && b.is_zero()) || (1..=10).any(|m| (&a * int(m) + &b).is_zero()) {
            continue;
        }
        let x = seq(sample::sequence(&mut rng, 10));
        let z = seq(sample::sequence(&mut rng, 10));
        round_trip(
            &format!("a={a}, b={b}"),
            &x,
            &z,
            |s| transforms::affine_forward(&a, &b, s),
            |s| transforms::affine_backward(&a, &b, s),
        )?;
        cases += 1;
    }
    Ok("20 integer (a, b) cases at N=10, both orders".into())
}

/// `(u/n!) prod_{k=1}^{n-1} (u + k q + (n-k) r)`, multiplied out factor by factor.
fn two_term_product(q: &Rational, r: &Rational, n: usize) -> UniPoly {
    if n == 0 {
        return UniPoly::one();
    }
    let mut acc = UniPoly::x();
    let mut fact = int(1);
    for k in 1..n {
        let shift = q * int(k as i64) + r * int((n - k) as i64);
        acc = &acc * &UniPoly::from_coeffs(vec![shift, int(1)]);
    }
    for i in 1..=n {
        fact = fact * int(i as i64);
    }
    acc.scale(&fact.recip().unwrap())
}

fn two_term_pair() -> Outcome {
    let mut rng = rng(4);
    let mut cases = 0;
    while cases < 10 {
        let (p, q, r) = (
            sample::nonzero_rational(&mut rng),
            sample::nonzero_rational(&mut rng),
            sample::nonzero_rational(&mut rng),
        );
        if q == r || (1..=10).any(|n| (&q + &p * int(n)).is_zero() || (&r + &p * int(n)).is_zero()) {
            continue;
        }
        let y = seq(sample::sequence(&mut rng, 10));
        let x = seq(sample::sequence(&mut rng, 10));
        round_trip(
            &format!("p={p}, q={q}, r={r}"),
            &y,
            &x,
            |s| transforms::two_term_forward(&p, &q, &r, s),
            |s| transforms::two_term_backward(&p, &q, &r, s),
        )?;

        let spec = ProblemSpec::two_term(p.clone(), q.clone(), r.clone()).map_err(|e| e.to_string())?;
        let table = lambda_recurrence(&spec, 12);
        for n in 0..=12 {
            let expected = two_term_product(&q, &r, n);
            ensure(table.get(n) == &expected, || {
                format!(
                    "p={p}, q={q}, r={r}, n={n}: recurrence {} != product {expected}",
                    table.get(n)
                )
            })?;
        }
        cases += 1;
    }
    Ok("10 (p, q, r) round trips at N=10; closed product for n <= 12".into())
}

fn three_term_coherence() -> Outcome {
    let mut rng = rng(5);
    for case in 0..10 {
        let spec = sample::pole_free_spec(&mut rng, 3, 8);
        let x = seq(sample::sequence(&mut rng, 8));
        let err = |e: bellinv_core::Error| format!("case {case} ({spec}): {e}");
        let general = transforms::general_backward(&spec, &x).map_err(err)?;
        for source in [FSource::Recurrence, FSource::Mina] {
            let three = transforms::three_term_backward(&spec, &x, source).map_err(err)?;
            ensure(three == general, || {
                format!("case {case} ({spec}): {source:?} three-term backward differs from general")
            })?;
        }
        let again = transforms::general_forward(&spec, &general).map_err(err)?;
        ensure(again == x, || {
            format!("case {case} ({spec}): forward(backward(x)) != x")
        })?;
    }
    Ok("10 pole-free m=3 specs at N=8".into())
}

fn c(k: u32) -> MultiPoly {
    MultiPoly::var(k)
}

/// Coefficients of `f_1..f_4` in powers of `u`, written out by hand.
fn golden_f() -> Vec<Vec<LaurentEntry>> {
    let k = |n: i64| int(n);
    let entry = |num: MultiPoly, den: u32| LaurentEntry::new(num, den);
    vec![
        vec![LaurentEntry::one()],
        vec![entry(c(2), 1), LaurentEntry::one()],
        vec![
            entry(c(2).pow(2).scale(&k(3)) - c(1) * c(3), 2),
            entry(c(2).scale(&k(3)), 1),
            LaurentEntry::one(),
        ],
        vec![
            entry(
                c(2).pow(3).scale(&k(15)) - (c(1) * c(2) * c(3)).scale(&k(10)) + c(1).pow(2) * c(4),
                3,
            ),
            entry(c(2).pow(2).scale(&k(15)) - (c(1) * c(3)).scale(&k(4)), 2),
            entry(c(2).scale(&k(6)), 1),
            LaurentEntry::one(),
        ],
    ]
}

fn f_golden() -> Outcome {
    let golden = golden_f();
    let symbolic = f_recurrence_symbolic(4);
    for n in 1..=4 {
        ensure(symbolic[n - 1] == golden[n - 1], || {
            format!("recurrence f_{n} = {:?}", symbolic[n - 1])
        })?;
        let row = mina_row(n).map_err(|e| e.to_string())?;
        let via_mina: Vec<LaurentEntry> = row
            .into_iter()
            .enumerate()
            .map(|(k, p)| LaurentEntry::new(p, (n - 1 - k) as u32))
            .collect();
        ensure(via_mina == golden[n - 1], || format!("Mina f_{n} = {via_mina:?}"))?;
    }

    // The numeric routes on concrete specs agree with the symbolic values.
    let mut rng = rng(6);
    for _ in 0..3 {
        let spec = sample::spec(&mut rng, 3);
        let cv = spec.c_values(4);
        let rec = f_recurrence(&spec, 4).map_err(|e| e.to_string())?;
        for n in 1..=4 {
            let expected = UniPoly::from_coeffs(golden[n - 1].iter().map(|e| e.eval(&cv).unwrap()).collect());
            let via_mina = bellinv_core::mina::f_via_mina(&spec, n).map_err(|e| e.to_string())?;
            ensure(rec.get(n) == &expected && via_mina == expected, || {
                format!("{spec}: f_{n} differs")
            })?;
        }
    }
    Ok("f_2, f_3, f_4 symbolic in c_1..c_4 by both routes".into())
}

fn mina_golden() -> Outcome {
    let x = |i: u32| MultiPoly::var(i);
    let k = |n: i64| int(n);
    let table = [
        (1, 0, MultiPoly::one()),
        (2, 1, MultiPoly::one()),
        (2, 0, x(2)),
        (3, 2, MultiPoly::one()),
        (3, 1, x(2).scale(&k(3))),
        (3, 0, x(2).pow(2).scale(&k(3)) - x(1) * x(3)),
        (4, 3, MultiPoly::one()),
        (4, 2, x(2).pow(2).scale(&k(6))),
        (4, 1, x(2).pow(2).scale(&k(15)) - (x(1) * x(3)).scale(&k(4))),
        (
            4,
            0,
            x(2).pow(3).scale(&k(15)) - (x(1) * x(2) * x(3)).scale(&k(10)) + x(1).pow(2) * x(4),
        ),
    ];
    for (n, kk, tabulated) in table {
        let got = mina_via_matrices(n, kk).map_err(|e| e.to_string())?;
        if (n, kk) == (4, 2) {
            ensure(got == x(2).scale(&k(6)) && got != tabulated, || {
                format!("C_{{4,2}} = {got}")
            })?;
            let chi = chi_recursion(4).map_err(|e| e.to_string())?;
            ensure(chi[2] == LaurentEntry::new(x(2).scale(&k(6)), 1), || {
                format!("chi_4(2) = {}", chi[2])
            })?;
        } else {
            ensure(got == tabulated, || {
                format!("C_{{{n},{kk}}} = {got}, expected {tabulated}")
            })?;
        }
    }
    let checks = verify_mina(4);
    all_pass(&checks, "verify_mina")?;
    let noted = checks
        .iter()
        .find(|c| c.identity == "mina.reference_value" && c.n == 4 && c.m == Some(2))
        .and_then(|c| c.note.clone());
    ensure(
        noted.as_deref() == Some(C42_NOTE) && C42_NOTE.contains("chi_4(2) = 6c2/c1"),
        || format!("C_{{4,2}} note missing: {noted:?}"),
    )?;
    Ok(format!("10 entries; C_{{4,2}} = 6x2 with note: {C42_NOTE}"))
}

fn convolutions() -> Outcome {
    let checks = verify_convolutions(8, ConvolutionMode::Symbolic, &mut rng(8)).map_err(|e| e.to_string())?;
    all_pass(&checks, "convolutions")?;
    // Both identities for every 2 <= n <= 8, 1 <= m <= n-1.
    ensure(checks.len() == 2 * 28, || {
        format!("expected 56 checks, ran {}", checks.len())
    })?;
    Ok("56 MultiPoly identities in c_1..c_8".into())
}

/// `x_n` for `F = sum_i a_i (1+t)^{-q_i}`, computed as a series.
fn binomial_x(spec: &ProblemSpec, order: usize) -> Vec<Rational> {
    let one_plus_t = Series::from_coeffs(order, vec![int(1), int(1)]);
    let mut f = Series::zero(order);
    for term in spec.terms() {
        f = f
            .try_add(&one_plus_t.pow_rat(&-term.q.clone()).unwrap().scale(&term.a))
            .unwrap();
    }
    (1..=order).map(|n| f.coeff(n).clone()).collect()
}

fn pipeline() -> Outcome {
    let mut rng = rng(9);
    for case in 0..10 {
        let m = 2 + case % 3;
        let spec = sample::spec(&mut rng, m);
        let y = seq(sample::sequence(&mut rng, 8));
        let checks = pipeline_invariants(&spec, &y, 8).map_err(|e| format!("{spec}: {e}"))?;
        all_pass(&checks, &format!("pipeline {spec}"))?;
        ensure(checks.len() == 3, || {
            format!("{spec}: expected 3 invariants, ran {}", checks.len())
        })?;
    }

    for case in 0..5 {
        let spec = sample::spec(&mut rng, 2 + case % 3);
        let lam = lambda_recurrence(&spec, 10);
        let x = binomial_x(&spec, 10);
        let bell = BellTable::new(10, &x).map_err(|e| e.to_string())?;
        for n in 1..=10 {
            let falling: Vec<Rational> = (0..n).map(|j| -int(j as i64)).collect();
            let mut fact = int(1);
            for i in 1..=n {
                fact = fact * int(i as i64);
            }
            let binom = UniPoly::product_of_linear(&falling).scale(&fact.recip().unwrap());
            let mut sum = UniPoly::zero();
            for k in 1..=n {
                sum = &sum + &lam.get(k).scale(bell.get(n, k));
            }
            ensure(sum == binom, || format!("{spec}: binomial expansion fails at n={n}"))?;
            if n >= 2 {
                let at = int(n as i64 - 1);
                let zero: Rational = (1..=n).map(|k| lam.get(k).eval(&at) * bell.get(n, k)).sum();
                ensure(zero.is_zero(), || format!("{spec}: zero sum at n={n} is {zero}"))?;
            }
        }
        all_pass(
            &bellinv_core::lambda::binomial_expansion_checks(&spec, 10),
            "binomial checks",
        )?;
    }
    Ok("10 instances at order 8; binomial expansion for n <= 10 on 5 specs".into())
}

fn instance_independence() -> Outcome {
    let mut rng = rng(10);
    for m in [2, 3, 3, 4, 5] {
        let spec = sample::spec(&mut rng, m);
        let rec = lambda_recurrence(&spec, 8);
        for draw in 0..2 {
            let mut y = vec![sample::nonzero_rational(&mut rng)];
            y.extend(sample::sequence(&mut rng, 7));
            let inst = lambda_from_instance(&spec, &y, 8).map_err(|e| format!("{spec}: {e}"))?;
            ensure(inst.polys() == rec.polys(), || {
                format!("{spec}, draw {draw}: instance table differs")
            })?;
        }
    }
    Ok("5 specs x 2 sequences, n <= 8".into())
}

fn as_multipoly(p: &UniPoly, var: &MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * var.clone() + MultiPoly::constant(c.clone());
    }
    acc
}

fn structural() -> Outcome {
    let mut rng = rng(11);
    let (u, v) = (MultiPoly::var(1), MultiPoly::var(2));
    let sum = u.clone() + v.clone();
    for m in [2, 3, 3, 4] {
        let spec = sample::spec(&mut rng, m);
        let lam = lambda_recurrence(&spec, 10);
        let in_u: Vec<MultiPoly> = lam.polys().iter().map(|p| as_multipoly(p, &u)).collect();
        let in_v: Vec<MultiPoly> = lam.polys().iter().map(|p| as_multipoly(p, &v)).collect();
        for n in 0..=10 {
            let p = lam.get(n);
            ensure(p.degree() == Some(n), || {
                format!("{spec}: deg lambda_{n} = {:?}", p.degree())
            })?;
            if n >= 1 {
                ensure(p.eval(&int(0)).is_zero(), || format!("{spec}: lambda_{n}(0) != 0"))?;
            }
            // As polynomials in two variables, not just on a grid.
            let lhs = as_multipoly(p, &sum);
            let rhs = (0..=n).fold(MultiPoly::zero(), |acc, k| acc + in_u[k].clone() * in_v[n - k].clone());
            ensure(lhs == rhs, || format!("{spec}: addition law fails at n={n}"))?;
            let weighted_lhs = (u.clone() * lhs).scale(&int(n as i64));
            let weighted = (0..=n).fold(MultiPoly::zero(), |acc, k| {
                acc + (in_u[k].clone() * in_v[n - k].clone()).scale(&int(k as i64))
            });
            ensure(weighted_lhs == sum.clone() * weighted, || {
                format!("{spec}: weighted addition fails at n={n}")
            })?;
        }
        let laws: Vec<Check> = verify_lambda_laws(&spec, 10, &mut rng)
            .into_iter()
            .filter(|c| {
                matches!(
                    c.identity.as_str(),
                    "lambda.degree" | "lambda.vanishes_at_zero" | "lambda.addition" | "lambda.weighted_addition"
                )
            })
            .collect();
        ensure(failures(&laws).is_empty() && !laws.is_empty(), || {
            format!("{spec}: grid law check failed")
        })?;
    }
    Ok("4 specs, n <= 10; laws as bivariate identities and on the grid".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "Bell polynomials: partition sum = generating function",
            5,
            bell_cross_method,
        ),
        ("scaled inverse pair round trip", 10, scaled_pair),
        ("affine inverse pair round trip", 10, affine_pair),
        ("two-term inverse pair and closed lambda product", 10, two_term_pair),
        (
            "general backward = three-term backward, and round trip",
            30,
            three_term_coherence,
        ),
        ("f_2..f_4 golden values", 5, f_golden),
        ("Mina golden table", 5, mina_golden),
        ("Mina convolution identities", 30, convolutions),
        ("series pipeline invariants and binomial expansion", 20, pipeline),
        ("lambda instance independence", 30, instance_independence),
        ("lambda degree, zero and addition laws", 10, structural),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let timing = format!("{:.2}s, budget {}s", elapsed.as_secs_f64(), budget);
        let over = if elapsed > Duration::from_secs(*budget) {
            " [over budget]"
        } else {
            ""
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({timing}){over}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({timing})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

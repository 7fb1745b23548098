//! Verification suites behind `bellinv verify`.
//!
//! Every suite draws its random inputs from streams derived from one seed,
//! so a (suite, order, seed) triple always produces the same report.

use std::fmt;
use std::str::FromStr;

use bellinv_core::bell::{bell_gf, bell_partition_triangle, BellTable};
use bellinv_core::lambda::{
    binomial_expansion_checks, lambda_closed, lambda_f_bridge, lambda_from_instance, lambda_recurrence,
    verify_lambda_laws,
};
use bellinv_core::mina::{f_via_mina_table, mina_table, verify_convolutions, verify_mina, ConvolutionMode};
use bellinv_core::rational::binomial;
use bellinv_core::sample::{self, SeededRng};
use bellinv_core::series::{basis_expand, lagrange_coeffs, lagrange_resum, resum};
use bellinv_core::transforms::{
    affine_backward, affine_forward, general_backward, general_forward, general_forward_series, pipeline_invariants,
    scaled_backward, scaled_forward, three_term_backward, two_term_backward, two_term_coeff_checks, two_term_forward,
    FSource,
};
use bellinv_core::{Check, Error, MultiPoly, ProblemSpec, Rational, SequencePrefix, Series};

use crate::format::{multipoly_from_json, multipoly_json, to_text};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Arithmetic kernel, power series and Bell polynomials.
    Bell,
    Lambda,
    Mina,
    Transforms,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["bell", "lambda", "mina", "transforms", "all"];
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bell" => Ok(Suite::Bell),
            "lambda" => Ok(Suite::Lambda),
            "mina" => Ok(Suite::Mina),
            "transforms" => Ok(Suite::Transforms),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Bell => "bell",
            Suite::Lambda => "lambda",
            Suite::Mina => "mina",
            Suite::Transforms => "transforms",
            Suite::All => "all",
        })
    }
}

/// Runs a suite and returns its cases sorted by identity, then `n`, `m` and
/// parameters.
pub fn run(suite: Suite, order: usize, seed: u64) -> Vec<Check> {
    let mut out = match suite {
        Suite::Bell => kernel(order, seed),
        Suite::Lambda => lambda(order, seed),
        Suite::Mina => mina(order, seed),
        Suite::Transforms => transforms(order, seed),
        Suite::All => {
            let mut v = kernel(order, seed);
            v.extend(lambda(order, seed));
            v.extend(mina(order, seed));
            v.extend(transforms(order, seed));
            v
        }
    };
    out.sort_by(|a, b| (&a.identity, a.n, a.m, &a.params).cmp(&(&b.identity, b.n, b.m, &b.params)));
    out
}

// Stream ids, one per group of random draws.
const BELL_VALUES: u64 = 1;
const ALGEBRA: u64 = 2;
const SERIES: u64 = 3;
const LAMBDA_SPECS: u64 = 10;
const MINA_RANDOM: u64 = 20;
const TRANSFORM_BASE: u64 = 30;

fn seq_label(values: &[Rational]) -> String {
    SequencePrefix::new(values.to_vec()).to_string()
}

fn kernel(order: usize, seed: u64) -> Vec<Check> {
    let n_max = order.max(1);
    let mut out = Vec::new();
    let triangle = bell_partition_triangle(n_max);

    let mut rng = sample::sub_rng(seed, BELL_VALUES);
    for _ in 0..5 {
        let x = sample::sequence(&mut rng, n_max);
        let alpha = sample::nonzero_rational(&mut rng);
        let label = format!("x={}; alpha={alpha}", seq_label(&x));
        let plain = BellTable::new(n_max, &x).expect("sized");
        let deg: Vec<Rational> = x.iter().map(|v| v * &alpha).collect();
        let wt: Vec<Rational> = x
            .iter()
            .enumerate()
            .map(|(j, v)| v * &alpha.pow(j as i32 + 1))
            .collect();
        let (deg, wt) = (
            BellTable::new(n_max, &deg).expect("sized"),
            BellTable::new(n_max, &wt).expect("sized"),
        );
        for n in 1..=n_max {
            for k in 1..=n {
                let p = triangle[n - 1][k - 1].eval(&x).expect("enough values");
                let g = bell_gf(n, k, &x).expect("in range");
                out.push(
                    Check::new("bell.partition_vs_gf", label.clone(), n)
                        .with_m(k)
                        .expect(p == g, || format!("partitions {p} vs gf {g}")),
                );
                let b = plain.get(n, k);
                let lhs = deg.get(n, k);
                let rhs = b * &alpha.pow(k as i32);
                out.push(
                    Check::new("bell.homogeneity_degree", label.clone(), n)
                        .with_m(k)
                        .expect(lhs == &rhs, || format!("{lhs} vs {rhs}")),
                );
                let lhs = wt.get(n, k);
                let rhs = b * &alpha.pow(n as i32);
                out.push(
                    Check::new("bell.homogeneity_weight", label.clone(), n)
                        .with_m(k)
                        .expect(lhs == &rhs, || format!("{lhs} vs {rhs}")),
                );
            }
        }
    }

    let mut rng = sample::sub_rng(seed, ALGEBRA);
    for k in 1..=n_max {
        let t = sample::rational(&mut rng);
        let lhs = binomial(&t, k);
        let rhs = binomial(&(&t - &Rational::one()), k - 1) * &t / Rational::from(k);
        out.push(
            Check::new("algebra.binomial_recurrence", format!("t={t}"), k)
                .expect(lhs == rhs, || format!("{lhs} vs {rhs}")),
        );
    }
    for n in 2..=n_max {
        let x = sample::sequence(&mut rng, n_max);
        let (a, b) = (&triangle[n - 1][0], &triangle[n - 1][n - 2]);
        let lhs = (a * b).eval(&x).expect("enough values");
        let rhs = a.eval(&x).expect("enough values") * b.eval(&x).expect("enough values");
        out.push(
            Check::new("algebra.eval_homomorphism", format!("x={}", seq_label(&x)), n)
                .expect(lhs == rhs, || format!("{lhs} vs {rhs}")),
        );
    }
    for (n, row) in triangle.iter().enumerate() {
        for (k, p) in row.iter().enumerate() {
            out.push(json_fixed_point(p, n + 1, k + 1));
        }
    }

    let mut rng = sample::sub_rng(seed, SERIES);
    for case in 0..5 {
        out.extend(series_checks(&mut rng, n_max, case));
    }
    out
}

fn json_fixed_point(p: &MultiPoly, n: usize, k: usize) -> Check {
    let first = multipoly_json(p);
    let back = multipoly_from_json(&first);
    let ok = back
        .as_ref()
        .map(|q| q == p && to_text(&multipoly_json(q)) == to_text(&first))
        .unwrap_or(false);
    Check::new("algebra.multipoly_json_fixed_point", format!("B_{{{n},{k}}}"), n)
        .with_m(k)
        .expect(ok, || format!("{p} -> {back:?}"))
}

fn unit_series(rng: &mut SeededRng, order: usize) -> Series<Rational> {
    let mut c = vec![Rational::one()];
    c.extend(sample::sequence(rng, order));
    Series::from_coeffs(order, c)
}

fn l1_series(rng: &mut SeededRng, order: usize) -> Series<Rational> {
    let mut c = vec![Rational::zero(), sample::nonzero_rational(rng)];
    c.extend(sample::sequence(rng, order.saturating_sub(1)));
    Series::from_coeffs(order, c)
}

fn series_checks(rng: &mut SeededRng, order: usize, case: usize) -> Vec<Check> {
    let label = format!("case {case}");
    let mut out = Vec::new();

    let f = l1_series(rng, order);
    let check = Check::new("series.compose_inverse", label.clone(), order);
    out.push(match f.comp_inverse() {
        Ok(g) => {
            let t = Series::t(order);
            let ok = f.compose(&g).as_ref() == Ok(&t) && g.compose(&f).as_ref() == Ok(&t);
            check.expect(ok, || format!("f={:?}", f.coeffs()))
        }
        Err(e) => check.expect(false, || e.to_string()),
    });

    let phi = unit_series(rng, order);
    let (a, b) = (sample::rational(rng), sample::rational(rng));
    let lhs = phi.pow_rat(&a).and_then(|x| x.try_mul(&phi.pow_rat(&b)?));
    let rhs = phi.pow_rat(&(&a + &b));
    out.push(
        Check::new("series.power_additivity", format!("{label}; a={a}; b={b}"), order)
            .expect(lhs.is_ok() && lhs == rhs, || format!("{lhs:?} vs {rhs:?}")),
    );

    let g = {
        let mut c = vec![sample::rational(rng)];
        c.extend(sample::sequence(rng, order));
        Series::from_coeffs(order, c)
    };
    let resummed = lagrange_coeffs(&g, &phi, order).and_then(|a| lagrange_resum(&a, &phi));
    out.push(
        Check::new("series.lagrange_resum", label.clone(), order).expect(resummed.as_ref() == Ok(&g), || {
            format!("{resummed:?} vs {:?}", g.coeffs())
        }),
    );

    let big_f = l1_series(rng, order);
    let back = basis_expand(&g, &big_f).map(|mu| resum(&mu, &big_f));
    out.push(
        Check::new("series.basis_expand_resum", label, order)
            .expect(back.as_ref() == Ok(&g), || format!("{back:?} vs {:?}", g.coeffs())),
    );
    out
}

fn lambda(order: usize, seed: u64) -> Vec<Check> {
    let mut rng = sample::sub_rng(seed, LAMBDA_SPECS);
    let mut out = Vec::new();
    let mut specs: Vec<ProblemSpec> = [2, 3, 3, 4, 5].iter().map(|&m| sample::spec(&mut rng, m)).collect();
    specs.push(sample::degenerate_m3_spec(&mut rng));

    for spec in &specs {
        let label = spec.to_string();
        let rec = lambda_recurrence(spec, order);
        out.push(
            Check::new("lambda.structure", label.clone(), order).expect(rec.structural_violation().is_none(), || {
                rec.structural_violation().unwrap_or_default()
            }),
        );

        for draw in 0..2 {
            let mut y = vec![sample::nonzero_rational(&mut rng)];
            y.extend(sample::sequence(&mut rng, order.saturating_sub(1)));
            let check = Check::new(
                "lambda.instance_independence",
                format!("{label}; y={}", seq_label(&y)),
                order,
            )
            .with_m(draw);
            out.push(match lambda_from_instance(spec, &y, order) {
                Ok(t) => check.expect(t == rec, || "instance table differs from recurrence".into()),
                Err(e) => check.expect(false, || e.to_string()),
            });
        }

        if let Ok(closed) = (0..=order)
            .map(|n| lambda_closed(spec, n))
            .collect::<Result<Vec<_>, _>>()
        {
            for (n, c) in closed.iter().enumerate() {
                out.push(
                    Check::new("lambda.closed_form", label.clone(), n)
                        .expect(c == rec.get(n), || format!("closed {c} vs recurrence {}", rec.get(n))),
                );
            }
        }

        out.extend(verify_lambda_laws(spec, order, &mut rng));
        out.extend(binomial_expansion_checks(spec, order));
        if spec.m() == 3 {
            out.extend(lambda_f_bridge(spec, order).expect("m = 3"));
        }
    }
    out
}

fn mina(order: usize, seed: u64) -> Vec<Check> {
    let n_max = order.max(1);
    let mut out = verify_mina(n_max);
    let mut rng = sample::sub_rng(seed, MINA_RANDOM);
    out.extend(verify_convolutions(n_max, ConvolutionMode::Symbolic, &mut rng).expect("table builds"));
    out.extend(verify_convolutions(n_max, ConvolutionMode::RandomRationalC, &mut rng).expect("table builds"));
    for row in mina_table(n_max).expect("table builds").iter() {
        let n = row.len();
        for (k, p) in row.iter().enumerate() {
            let mut c = json_fixed_point(p, n, k);
            c.params = format!("C_{{{n},{k}}}");
            out.push(c);
        }
    }
    for _ in 0..3 {
        let spec = sample::spec(&mut rng, 3);
        let rec = bellinv_core::lambda::f_recurrence(&spec, n_max).expect("m = 3");
        let via = f_via_mina_table(&spec, n_max).expect("m = 3");
        for n in 1..=n_max {
            out.push(
                Check::new("mina.f_coefficients", spec.to_string(), n).expect(rec.get(n) == via.get(n), || {
                    format!("recurrence {} vs mina {}", rec.get(n), via.get(n))
                }),
            );
        }
    }
    out
}

fn round_trip_check(
    identity: &str,
    label: String,
    n: usize,
    input: &SequencePrefix,
    result: Result<SequencePrefix, Error>,
) -> Check {
    let check = Check::new(identity, label, n);
    match result {
        Ok(back) => check.expect(&back == input, || format!("input {input} came back as {back}")),
        Err(Error::SingularParameter { reason, .. }) => check.skipped(reason),
        Err(e) => check.expect(false, || e.to_string()),
    }
}

fn transforms(order: usize, seed: u64) -> Vec<Check> {
    let n = order.max(1);
    let mut out = Vec::new();
    let mut rng = sample::sub_rng(seed, TRANSFORM_BASE);
    let seq = |rng: &mut SeededRng| SequencePrefix::new(sample::sequence(rng, n));

    for _ in 0..20 {
        let (a, b) = (sample::rational_in(&mut rng, 6, 1), sample::rational_in(&mut rng, 6, 1));
        let (x, z) = (seq(&mut rng), seq(&mut rng));
        let label = format!("a={a}; b={b}");
        if a.is_zero() && b.is_zero() {
            out.push(Check::new("transform.affine.round_trip", label, n).skipped("a^2 + b^2 = 0"));
            continue;
        }
        let there = affine_forward(&a, &b, &x).and_then(|z| affine_backward(&a, &b, &z));
        out.push(round_trip_check(
            "transform.affine.round_trip",
            format!("{label}; x={x}"),
            n,
            &x,
            there,
        ));
        let back = affine_backward(&a, &b, &z).and_then(|x| affine_forward(&a, &b, &x));
        out.push(round_trip_check(
            "transform.affine.reverse_round_trip",
            format!("{label}; z={z}"),
            n,
            &z,
            back,
        ));
    }

    for _ in 0..20 {
        let (a, b) = (sample::rational(&mut rng), sample::nonzero_rational(&mut rng));
        let (x, y) = (seq(&mut rng), seq(&mut rng));
        let label = format!("a={a}; b={b}");
        let there = scaled_forward(&a, &b, &x).and_then(|y| scaled_backward(&a, &b, &y));
        out.push(round_trip_check(
            "transform.scaled.round_trip",
            format!("{label}; x={x}"),
            n,
            &x,
            there,
        ));
        let back = scaled_backward(&a, &b, &y).and_then(|x| scaled_forward(&a, &b, &x));
        out.push(round_trip_check(
            "transform.scaled.reverse_round_trip",
            format!("{label}; y={y}"),
            n,
            &y,
            back,
        ));
    }

    for _ in 0..10 {
        let p = sample::nonzero_rational(&mut rng);
        let (q, r) = (sample::nonzero_rational(&mut rng), sample::nonzero_rational(&mut rng));
        let (x, y) = (seq(&mut rng), seq(&mut rng));
        let label = format!("p={p}; q={q}; r={r}");
        if q == r {
            out.push(Check::new("transform.two_term.round_trip", label, n).skipped("q = r"));
            continue;
        }
        let there = two_term_forward(&p, &q, &r, &y).and_then(|x| two_term_backward(&p, &q, &r, &x));
        out.push(round_trip_check(
            "transform.two_term.round_trip",
            format!("{label}; y={y}"),
            n,
            &y,
            there,
        ));
        let back = two_term_backward(&p, &q, &r, &x).and_then(|y| two_term_forward(&p, &q, &r, &y));
        out.push(round_trip_check(
            "transform.two_term.reverse_round_trip",
            format!("{label}; x={x}"),
            n,
            &x,
            back,
        ));
        out.extend(two_term_coeff_checks(&p, &q, &r, n).expect("q != r"));

        let spec = ProblemSpec::two_term(p.clone(), q.clone(), r.clone()).expect("q != r");
        let check = Check::new("transform.two_term.is_general_m2", format!("{label}; y={y}"), n);
        out.push(match (general_forward(&spec, &y), two_term_forward(&p, &q, &r, &y)) {
            (Ok(g), Ok(t)) => check.expect(g == t, || format!("general {g} vs two-term {t}")),
            (Err(Error::SingularParameter { reason, .. }), _) | (_, Err(Error::SingularParameter { reason, .. })) => {
                check.skipped(reason)
            }
            (Err(e), _) | (_, Err(e)) => check.expect(false, || e.to_string()),
        });
    }

    for m in [2, 3, 3, 4] {
        let spec = sample::spec(&mut rng, m);
        let (x, y) = (seq(&mut rng), seq(&mut rng));
        let label = spec.to_string();
        let there = general_forward(&spec, &y).and_then(|x| general_backward(&spec, &x));
        out.push(round_trip_check(
            "transform.general.round_trip",
            format!("{label}; y={y}"),
            n,
            &y,
            there,
        ));
        let back = general_backward(&spec, &x).and_then(|y| general_forward(&spec, &y));
        out.push(round_trip_check(
            "transform.general.reverse_round_trip",
            format!("{label}; x={x}"),
            n,
            &x,
            back,
        ));

        let check = Check::new("transform.general.series_oracle", format!("{label}; y={y}"), n);
        out.push(match (general_forward(&spec, &y), general_forward_series(&spec, &y)) {
            (Ok(a), Ok(b)) => check.expect(a == b, || format!("formula {a} vs series {b}")),
            (Err(Error::SingularParameter { reason, .. }), _) => check.skipped(reason),
            (Err(e), _) | (_, Err(e)) => check.expect(false, || e.to_string()),
        });

        out.extend(pipeline_invariants(&spec, &y, n).expect("valid spec"));
    }

    for _ in 0..5 {
        let spec = sample::spec(&mut rng, 3);
        let x = seq(&mut rng);
        let label = format!("{spec}; x={x}");
        let rec = three_term_backward(&spec, &x, FSource::Recurrence).expect("m = 3");
        let via_mina = three_term_backward(&spec, &x, FSource::Mina).expect("m = 3");
        out.push(
            Check::new("transform.three_term.f_sources_agree", label.clone(), n)
                .expect(rec == via_mina, || format!("recurrence {rec} vs mina {via_mina}")),
        );
        let check = Check::new("transform.three_term.matches_general", label.clone(), n);
        out.push(match general_backward(&spec, &x) {
            Ok(g) => check.expect(g == via_mina, || format!("general {g} vs three-term {via_mina}")),
            Err(Error::SingularParameter { reason, .. }) => check.skipped(reason),
            Err(e) => check.expect(false, || e.to_string()),
        });
        let there = general_forward_series(&spec, &via_mina);
        out.push(round_trip_check("transform.three_term.round_trip", label, n, &x, there));
    }
    out
}

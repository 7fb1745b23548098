//! The coefficients `lambda_n(s)` of `w^s(t) = sum_n lambda_n(s) F^n(t)` and
//! their rescaling `f_n(s)`.
//!
//! Every polynomial here is in `u = p*s`. In that variable the recurrence
//! for `lambda_n` only involves the `(a_i, q_i)`, so `p` drops out entirely
//! and the evaluation points `s = -q_k/p` become `u = -q_k`.
//!
//! Three independent routes produce the same table:
//! * [`lambda_recurrence`]: the linear recurrence in `n`,
//! * [`lambda_from_instance`]: expanding `w^s` in powers of `F` for one
//!   concrete series instance, with `s` kept symbolic,
//! * closed products for the two-term family and the `m = 3, q_1 = q_2`
//!   family ([`lambda_closed_m2`], [`lambda_closed_m3_degenerate`]).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::bell::BellTable;
use crate::error::{Error, Result};
use crate::laurent::LaurentEntry;
use crate::multipoly::MultiPoly;
use crate::problem::ProblemSpec;
use crate::rational::{binomial, factorial, int_binomial, Rational};
use crate::report::Check;
use crate::sample;
use crate::series::{basis_expand, Series};
use crate::unipoly::UniPoly;

/// `lambda_0 ..= lambda_N` as polynomials in `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTable {
    spec: ProblemSpec,
    polys: Vec<UniPoly>,
}

impl LambdaTable {
    pub fn new(spec: ProblemSpec, polys: Vec<UniPoly>) -> Self {
        LambdaTable { spec, polys }
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> &UniPoly {
        &self.polys[n]
    }

    /// `lambda_0 = 1`, `deg lambda_n = n` and `lambda_n(0) = 0` for `n >= 1`.
    pub fn structural_violation(&self) -> Option<String> {
        if self.polys.first() != Some(&UniPoly::one()) {
            return Some("lambda_0 != 1".into());
        }
        for (n, l) in self.polys.iter().enumerate() {
            if l.degree() != Some(n) {
                return Some(format!("deg lambda_{n} = {:?}", l.degree()));
            }
            if n >= 1 && !l.coeff(0).is_zero() {
                return Some(format!("lambda_{n}(0) = {}", l.coeff(0)));
            }
        }
        None
    }
}

/// `f_1 ..= f_N` as polynomials in `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTable {
    spec: ProblemSpec,
    polys: Vec<UniPoly>,
}

impl FTable {
    pub fn new(spec: ProblemSpec, polys: Vec<UniPoly>) -> Self {
        FTable { spec, polys }
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    /// `polys()[i]` is `f_{i+1}`.
    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn order(&self) -> usize {
        self.polys.len()
    }

    /// `f_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> &UniPoly {
        &self.polys[n - 1]
    }
}

/// `lambda_{n+1}(u) = -(u lambda_n(u) + sum_k a_k q_k sum_{j=1}^{n}
/// lambda_{n+1-j}(-q_k) j lambda_j(u)) / ((n+1) c_1)`, from `lambda_0 = 1`.
pub fn lambda_recurrence(spec: &ProblemSpec, order: usize) -> LambdaTable {
    let c1_inv = spec.c(1).recip().expect("admissible spec has c1 != 0");
    let points: Vec<Rational> = spec.terms().iter().map(|t| -&t.q).collect();
    let weights: Vec<Rational> = spec.terms().iter().map(|t| &t.a * &t.q).collect();
    let mut polys = vec![UniPoly::one()];
    // evals[k][i] = lambda_i(-q_k)
    let mut evals: Vec<Vec<Rational>> = vec![vec![Rational::one()]; spec.m()];
    for n in 0..order {
        let mut acc = -polys[n].mul_x();
        for (k, w) in weights.iter().enumerate() {
            let mut inner = UniPoly::zero();
            for j in 1..=n {
                let c = &evals[k][n + 1 - j] * Rational::from(j);
                inner = inner + polys[j].scale(&c);
            }
            acc = acc - inner.scale(w);
        }
        let next = acc.scale(&(&c1_inv * Rational::new(1, (n + 1) as i64)));
        for (k, pt) in points.iter().enumerate() {
            evals[k].push(next.eval(pt));
        }
        polys.push(next);
    }
    LambdaTable::new(spec.clone(), polys)
}

/// `(u/n!) prod_{k=1}^{n-1} (u + k q + (n-k) r)`: `lambda_n` for the
/// two-term spec `a_1 = -a_2 = 1/(r-q)`, `q_1 = q`, `q_2 = r`.
pub fn lambda_closed_m2(q: &Rational, r: &Rational, n: usize) -> Result<UniPoly> {
    if q == r {
        return Err(Error::InvalidParameters("closed form needs r != q".into()));
    }
    Ok(closed_product(q, r, n))
}

fn closed_product(q: &Rational, r: &Rational, n: usize) -> UniPoly {
    if n == 0 {
        return UniPoly::one();
    }
    let shifts: Vec<Rational> = (1..n)
        .map(|k| q * Rational::from(k) + r * Rational::from(n - k))
        .collect();
    UniPoly::product_of_linear(&shifts)
        .mul_x()
        .scale(&Rational::from_bigint(factorial(n)).recip().expect("n! > 0"))
}

/// `u / (n! (a_3 (q_1 - q_3))^n) prod_{k=1}^{n-1} (u + k q_1 + (n-k) q_3)` for
/// `m = 3` specs with `q_1 = q_2`.
pub fn lambda_closed_m3_degenerate(spec: &ProblemSpec, n: usize) -> Result<UniPoly> {
    spec.require_m(3)?;
    let t = spec.terms();
    if t[0].q != t[1].q {
        return Err(Error::InvalidParameters("closed form needs q1 == q2".into()));
    }
    let base = &t[2].a * (&t[0].q - &t[2].q);
    let inv = base
        .recip()
        .ok_or_else(|| Error::InvalidParameters("a3 (q1 - q3) == 0".into()))?;
    Ok(closed_product(&t[0].q, &t[2].q, n).scale(&inv.pow(n as i32)))
}

/// Closed form for whichever special family `spec` belongs to: any two-term
/// spec (the product above divided by `(-c_1)^n`), or `m = 3` with
/// `q_1 = q_2`.
pub fn lambda_closed(spec: &ProblemSpec, n: usize) -> Result<UniPoly> {
    let t = spec.terms();
    match spec.m() {
        2 => {
            let scale = (-spec.c(1)).pow(-(n as i32));
            Ok(lambda_closed_m2(&t[0].q, &t[1].q, n)?.scale(&scale))
        }
        3 if t[0].q == t[1].q => lambda_closed_m3_degenerate(spec, n),
        _ => Err(Error::InvalidParameters(
            "no closed form: need m = 2, or m = 3 with q1 == q2".into(),
        )),
    }
}

pub fn lambda_closed_table(spec: &ProblemSpec, order: usize) -> Result<LambdaTable> {
    let polys = (0..=order)
        .map(|n| lambda_closed(spec, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(LambdaTable::new(spec.clone(), polys))
}

/// The concrete series attached to a spec and a sequence `y`:
/// `phi = 1 + sum y_n t^n`, `f = t/phi^p`, `g = f^{<-1>}`, `w = t/g` and
/// `F = sum_k a_k w^{-q_k/p}`, all to the requested order.
#[derive(Clone, Debug)]
pub struct Instance {
    pub phi: Series<Rational>,
    pub f: Series<Rational>,
    pub g: Series<Rational>,
    pub w: Series<Rational>,
    pub big_f: Series<Rational>,
}

impl Instance {
    pub fn build(spec: &ProblemSpec, y: &[Rational], order: usize) -> Result<Self> {
        if y.len() < order {
            return Err(Error::TooFewValues {
                needed: order,
                got: y.len(),
            });
        }
        let mut phi_coeffs = vec![Rational::one()];
        phi_coeffs.extend(y[..order].iter().cloned());
        let phi = Series::from_coeffs(order, phi_coeffs);
        // f and g are carried one order higher so that w = t/g reaches t^order.
        let f = phi.pow_rat(spec.p())?.reciprocal()?.mul_t();
        let g = f.comp_inverse()?;
        let w = g.div_t()?.reciprocal()?;
        let mut big_f = Series::zero(order);
        for t in spec.terms() {
            let e = -(&t.q / spec.p());
            big_f = big_f.try_add(&w.pow_rat(&e)?.scale(&t.a))?;
        }
        Ok(Instance {
            phi,
            f: f.truncate(order),
            g: g.truncate(order),
            w,
            big_f,
        })
    }
}

/// `lambda_n` read off from one instance: `w^s = exp((u/p) log w)` with `u`
/// symbolic, expanded in powers of `F`. Needs `y_1 != 0`, otherwise `F` has
/// no linear term.
pub fn lambda_from_instance(spec: &ProblemSpec, y: &[Rational], order: usize) -> Result<LambdaTable> {
    let inst = Instance::build(spec, y, order)?;
    let log_w = inst.w.log()?.scale(&spec.p().recip().expect("p != 0"));
    let u = UniPoly::x();
    let w_pow_s = log_w.map(|c| u.scale(c)).exp()?;
    let big_f = inst.big_f.map(|c| UniPoly::constant(c.clone()));
    let polys = basis_expand(&w_pow_s, &big_f)?;
    Ok(LambdaTable::new(spec.clone(), polys))
}

/// `f_1 = 1`, `f_{n+1}(u) = u f_n(u) + (1/c_1) sum_k a_k q_k^2
/// sum_{i=1}^{n} C(n,i) f_i(-q_k) f_{n+1-i}(u)` for `m = 3` specs.
pub fn f_recurrence(spec: &ProblemSpec, order: usize) -> Result<FTable> {
    spec.require_m(3)?;
    let c1_inv = spec.c(1).recip().expect("admissible spec has c1 != 0");
    let points: Vec<Rational> = spec.terms().iter().map(|t| -&t.q).collect();
    let weights: Vec<Rational> = spec.terms().iter().map(|t| &t.a * t.q.pow(2) * &c1_inv).collect();
    // polys[i] = f_{i+1}; evals[k][i] = f_{i+1}(-q_k)
    let mut polys: Vec<UniPoly> = Vec::with_capacity(order);
    let mut evals: Vec<Vec<Rational>> = vec![Vec::new(); spec.m()];
    for n in 0..order {
        let next = if n == 0 {
            UniPoly::one()
        } else {
            let mut acc = polys[n - 1].mul_x();
            for (k, w) in weights.iter().enumerate() {
                for i in 1..=n {
                    let c = w * Rational::from_bigint(int_binomial(n, i)) * &evals[k][i - 1];
                    acc = acc + polys[n - i].scale(&c);
                }
            }
            acc
        };
        for (k, pt) in points.iter().enumerate() {
            evals[k].push(next.eval(pt));
        }
        polys.push(next);
    }
    Ok(FTable {
        spec: spec.clone(),
        polys,
    })
}

/// The `f` recurrence with the `c_k` kept symbolic (variable `k` of the
/// polynomial pool stands for `c_k`). Uses
/// `sum_k a_k q_k^2 f_i(-q_k) = sum_j chi_i(j) (-1)^j c_{j+2}`, which makes
/// the recurrence depend on the problem parameters only through the `c_k`.
///
/// Returns the coefficient lists of `f_1 ..= f_N` (index = power of `u`).
pub fn f_recurrence_symbolic(order: usize) -> Vec<Vec<LaurentEntry>> {
    let c = |k: usize| LaurentEntry::from_poly(MultiPoly::var(k as u32));
    let mut fs: Vec<Vec<LaurentEntry>> = Vec::with_capacity(order);
    // moments[i] = sum_k a_k q_k^2 f_{i+1}(-q_k)
    let mut moments: Vec<LaurentEntry> = Vec::with_capacity(order);
    for n in 0..order {
        let next = if n == 0 {
            vec![LaurentEntry::one()]
        } else {
            // u * f_n
            let mut acc: Vec<LaurentEntry> = core::iter::once(LaurentEntry::zero())
                .chain(fs[n - 1].iter().cloned())
                .collect();
            for i in 1..=n {
                let coef = moments[i - 1]
                    .scale(&Rational::from_bigint(int_binomial(n, i)))
                    .div_pivot();
                for (d, fc) in fs[n - i].iter().enumerate() {
                    acc[d] = &acc[d] + &(&coef * fc);
                }
            }
            acc
        };
        let moment = next.iter().enumerate().fold(LaurentEntry::zero(), |acc, (j, chi)| {
            let term = chi * &c(j + 2);
            if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        });
        moments.push(moment);
        fs.push(next);
    }
    fs
}

/// `lambda_n = u / (n! (-c_1)^n) * f_n` for `1 <= n <= N`, comparing the
/// recurrence table against the `f` recurrence; for `q_1 = q_2` specs the
/// closed product joins as a third route.
pub fn lambda_f_bridge(spec: &ProblemSpec, order: usize) -> Result<Vec<Check>> {
    let lam = lambda_recurrence(spec, order);
    let fs = f_recurrence(spec, order)?;
    let neg_c1 = -spec.c(1);
    let label = format!("{spec}");
    let degenerate = spec.terms()[0].q == spec.terms()[1].q;
    let mut out = Vec::new();
    for n in 1..=order {
        let denom = Rational::from_bigint(factorial(n)) * neg_c1.pow(n as i32);
        let via_f = fs.get(n).mul_x().scale(&denom.recip().expect("nonzero"));
        out.push(
            Check::new("lambda.f_bridge", label.clone(), n).expect(&via_f == lam.get(n), || {
                format!("lambda={} f-route={}", lam.get(n), via_f)
            }),
        );
        if degenerate {
            let closed = lambda_closed_m3_degenerate(spec, n)?;
            out.push(
                Check::new("lambda.f_bridge_closed", label.clone(), n)
                    .expect(closed == via_f, || format!("closed={closed} f-route={via_f}")),
            );
        }
    }
    Ok(out)
}

fn aggregate(identity: &str, label: &str, n: usize, results: &[(bool, Option<String>)], skipped: usize) -> Check {
    let check = Check::new(identity, label, n);
    if let Some((_, w)) = results.iter().find(|(ok, _)| !ok) {
        return check.expect(false, || w.clone().unwrap_or_default());
    }
    match (results.len(), skipped) {
        (0, s) if s > 0 => check.skipped(format!("all {s} points at poles")),
        (_, 0) => check,
        (_, s) => check.with_note(format!("{s} points skipped at poles")),
    }
}

/// Identity checks for one spec over `n <= order`:
///
/// * structure: `deg lambda_n = n`, `lambda_n(0) = 0`;
/// * addition law `lambda_n(a+b) = sum_k lambda_k(a) lambda_{n-k}(b)` on a
///   `(2N+1) x (2N+1)` grid, which settles it as a bivariate polynomial
///   identity;
/// * the weighted law `n lambda_n(a+b) = ((a+b)/a) sum_k k lambda_k(a)
///   lambda_{n-k}(b)` on the same grid (`a = 0` skipped);
/// * the shift law `lambda_n(u) = (n+1) sum_k a_k q_k/(q_k - u)
///   lambda_{n+1}(u - q_k)` at `n + m + 3` points avoiding its poles;
/// * for `m = 3`, the two three-term shift laws.
pub fn verify_lambda_laws<R: Rng>(spec: &ProblemSpec, order: usize, rng: &mut R) -> Vec<Check> {
    let table = lambda_recurrence(spec, order + 1);
    let lam = table.polys();
    let label = format!("{spec}");
    let mut out = Vec::new();

    for n in 0..=order {
        let l = &lam[n];
        out.push(
            Check::new("lambda.degree", label.clone(), n)
                .expect(l.degree() == Some(n), || format!("degree {:?}", l.degree())),
        );
        if n >= 1 {
            out.push(
                Check::new("lambda.vanishes_at_zero", label.clone(), n)
                    .expect(l.coeff(0).is_zero(), || format!("lambda_{n}(0) = {}", l.coeff(0))),
            );
        }
    }

    let grid = sample::distinct_points(rng, 2 * order + 1, &[]);
    let at_grid: Vec<Vec<Rational>> = lam[..=order]
        .iter()
        .map(|l| grid.iter().map(|x| l.eval(x)).collect())
        .collect();
    for n in 0..=order {
        let mut plain = Vec::new();
        let mut weighted = Vec::new();
        let mut skipped = 0;
        for (i, a) in grid.iter().enumerate() {
            for (j, b) in grid.iter().enumerate() {
                let lhs = lam[n].eval(&(a + b));
                let rhs: Rational = (0..=n).map(|k| &at_grid[k][i] * &at_grid[n - k][j]).sum();
                let ok = lhs == rhs;
                plain.push((ok, (!ok).then(|| format!("a={a}, b={b}: {lhs} != {rhs}"))));

                if a.is_zero() {
                    skipped += 1;
                    continue;
                }
                let lhs = Rational::from(n) * &lhs;
                let sum: Rational = (0..=n)
                    .map(|k| Rational::from(k) * &at_grid[k][i] * &at_grid[n - k][j])
                    .sum();
                let rhs = (a + b) / a * sum;
                let ok = lhs == rhs;
                weighted.push((ok, (!ok).then(|| format!("a={a}, b={b}: {lhs} != {rhs}"))));
            }
        }
        out.push(aggregate("lambda.addition", &label, n, &plain, 0));
        out.push(aggregate("lambda.weighted_addition", &label, n, &weighted, skipped));
    }

    let qs: Vec<Rational> = spec.terms().iter().map(|t| t.q.clone()).collect();
    let mut poles = qs.clone();
    poles.push(Rational::zero());
    for n in 0..=order {
        let count = n + spec.m() + 3;
        // Draw from a wider pool so poles are occasionally hit and logged.
        let pts = sample::distinct_points(rng, count, &[]);
        let mut shift = Vec::new();
        let mut skipped = 0;
        for u in &pts {
            if qs.contains(u) {
                skipped += 1;
                continue;
            }
            let rhs: Rational = spec
                .terms()
                .iter()
                .map(|t| &t.a * &t.q / (&t.q - u) * lam[n + 1].eval(&(u - &t.q)))
                .sum::<Rational>()
                * Rational::from(n + 1);
            let lhs = lam[n].eval(u);
            let ok = lhs == rhs;
            shift.push((ok, (!ok).then(|| format!("u={u}: {lhs} != {rhs}"))));
        }
        out.push(aggregate("lambda.shift", &label, n, &shift, skipped));

        if spec.m() == 3 {
            let t = spec.terms();
            let mut law_a = Vec::new();
            let mut law_b = Vec::new();
            let mut skipped = 0;
            for u in &pts {
                if poles.contains(u) {
                    skipped += 1;
                    continue;
                }
                let n1 = Rational::from(n + 1);
                let lam_n = lam[n].eval(u);
                let shifted: Vec<Rational> = t.iter().map(|tk| lam[n + 1].eval(&(u - &tk.q)) / (u - &tk.q)).collect();

                let lhs = (u + Rational::from(n) * &t[2].q) / (&n1 * u) * &lam_n;
                let rhs: Rational = (0..2).map(|k| &t[k].a * (&t[2].q - &t[k].q) * &shifted[k]).sum();
                let ok = lhs == rhs;
                law_a.push((ok, (!ok).then(|| format!("u={u}: {lhs} != {rhs}"))));

                let lhs = Rational::from(n) / (&n1 * u) * &lam_n;
                let rhs: Rational = (0..3).map(|k| &t[k].a * &shifted[k]).sum();
                let ok = lhs == rhs;
                law_b.push((ok, (!ok).then(|| format!("u={u}: {lhs} != {rhs}"))));
            }
            out.push(aggregate("lambda.m3_shift_pair", &label, n, &law_a, skipped));
            out.push(aggregate("lambda.m3_shift_triple", &label, n, &law_b, skipped));
        }
    }
    out
}

/// `x_n = (-1)^n sum_i a_i C(n-1+q_i, n)`: the coefficients of
/// `F = sum_i a_i (1+t)^{-q_i}`, i.e. the instance `phi = 1 - t`, `p = 1`.
pub fn binomial_instance_x(spec: &ProblemSpec, order: usize) -> Vec<Rational> {
    (1..=order)
        .map(|n| {
            let s: Rational = spec
                .terms()
                .iter()
                .map(|t| &t.a * binomial(&(Rational::from(n - 1) + &t.q), n))
                .sum();
            if n % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect()
}

/// For the instance `phi = 1 - t`, `p = 1` (so `w = 1 + t` and `u = s`):
/// `C(s, n) = sum_k lambda_k(s) B_{n,k}(x)` as polynomials in `s`, and the
/// vanishing sums `sum_k lambda_k(n-1) B_{n,k}(x) = 0` for `n >= 2`. The
/// spec's own `p` is ignored, since `lambda` in `u` does not depend on it.
pub fn binomial_expansion_checks(spec: &ProblemSpec, order: usize) -> Vec<Check> {
    let lam = lambda_recurrence(spec, order);
    let x = binomial_instance_x(spec, order);
    let bell = BellTable::new(order, &x).expect("x has order entries");
    let label = format!("{spec}");
    let mut out = Vec::new();
    for n in 1..=order {
        let sum = (1..=n).fold(UniPoly::zero(), |acc, k| acc + lam.get(k).scale(bell.get(n, k)));
        let shifts: Vec<Rational> = (0..n).map(|i| -Rational::from(i)).collect();
        let binom =
            UniPoly::product_of_linear(&shifts).scale(&Rational::from_bigint(factorial(n)).recip().expect("n! > 0"));
        out.push(
            Check::new("lambda.binomial_expansion", label.clone(), n)
                .expect(sum == binom, || format!("sum={sum} binom={binom}")),
        );
        if n >= 2 {
            let at = Rational::from(n - 1);
            let v: Rational = (1..=n).map(|k| lam.get(k).eval(&at) * bell.get(n, k)).sum();
            out.push(
                Check::new("lambda.binomial_zero_sum", label.clone(), n).expect(v.is_zero(), || format!("sum = {v}")),
            );
        }
    }
    out
}

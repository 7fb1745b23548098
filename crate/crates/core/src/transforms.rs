//! Nonlinear inverse pairs: each direction writes one sequence through Bell
//! polynomials of the other, and running both directions is the identity.
//!
//! * affine pair: `z_m = sum_k (am+bk)/(k(am+b)) C(-am-b, k-1) B_{m,k}(x)`
//!   and `x_m = sum_k (1/k) C(am+bk, k-1) B_{m,k}(z)`;
//! * scaled pair: `y_m = 1/(am+b) sum_k C(-am-b, k) B_{m,k}(x)` and
//!   `x_m = 1/(am+1) sum_k C(-(am+1)/b, k) b^k B_{m,k}(y)`;
//! * two-term pair in `(p, q, r)` and its generalization to any spec
//!   `(p, a_i, q_i)`, whose backward side runs through `lambda_k`;
//! * the three-term backward side written with `f_k` instead of `lambda_k`.
//!
//! Every transform scans its whole index range for singular parameters
//! before computing anything and reports the first offending index.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bell::BellTable;
use crate::error::{Error, Result};
use crate::lambda::{lambda_closed_m2, lambda_recurrence, FTable, Instance};
use crate::mina::f_via_mina_table;
use crate::problem::ProblemSpec;
use crate::rational::{binomial, factorial, Rational};
use crate::report::Check;
use crate::series::{lagrange_coeffs, Series};

/// `x_1 ..= x_N`, indexed from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SequencePrefix {
    values: Vec<Rational>,
}

impl SequencePrefix {
    pub fn new(values: Vec<Rational>) -> Self {
        SequencePrefix { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `x_m` for `1 <= m <= N`.
    pub fn get(&self, m: usize) -> &Rational {
        &self.values[m - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rational> {
        self.values.iter()
    }
}

impl From<Vec<Rational>> for SequencePrefix {
    fn from(values: Vec<Rational>) -> Self {
        SequencePrefix::new(values)
    }
}

impl fmt::Display for SequencePrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

fn singular(index: usize, reason: String) -> Error {
    Error::SingularParameter { index, reason }
}

/// `out_m = sum_k coeff(m, k) B_{m,k}(seq)` for every `m`.
fn bell_transform(seq: &SequencePrefix, mut coeff: impl FnMut(usize, usize) -> Rational) -> SequencePrefix {
    let n = seq.len();
    let table = BellTable::new(n, seq.values()).expect("table sized to the sequence");
    let values = (1..=n)
        .map(|m| (1..=m).map(|k| coeff(m, k) * table.get(m, k)).sum())
        .collect();
    SequencePrefix::new(values)
}

fn affine_check(a: &Rational, b: &Rational, n: usize, forward: bool) -> Result<()> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidParameters("a^2 + b^2 == 0".into()));
    }
    if forward {
        for m in 1..=n {
            if (a * Rational::from(m) + b).is_zero() {
                return Err(singular(m, format!("am + b = 0 at m = {m}")));
            }
        }
    }
    Ok(())
}

/// `z_m = sum_k (am+bk)/(k(am+b)) C(-am-b, k-1) B_{m,k}(x)`.
pub fn affine_forward(a: &Rational, b: &Rational, x: &SequencePrefix) -> Result<SequencePrefix> {
    affine_check(a, b, x.len(), true)?;
    Ok(bell_transform(x, |m, k| {
        let am_b = a * Rational::from(m) + b;
        let (mr, kr) = (Rational::from(m), Rational::from(k));
        (a * &mr + b * &kr) / (&kr * &am_b) * binomial(&-am_b, k - 1)
    }))
}

/// `x_m = sum_k (1/k) C(am+bk, k-1) B_{m,k}(z)`.
pub fn affine_backward(a: &Rational, b: &Rational, z: &SequencePrefix) -> Result<SequencePrefix> {
    affine_check(a, b, z.len(), false)?;
    Ok(bell_transform(z, |m, k| {
        let top = a * Rational::from(m) + b * Rational::from(k);
        binomial(&top, k - 1) * Rational::new(1, k as i64)
    }))
}

fn scaled_check(a: &Rational, b: &Rational, n: usize) -> Result<()> {
    if b.is_zero() {
        return Err(Error::InvalidParameters("b == 0".into()));
    }
    for m in 1..=n {
        let am = a * Rational::from(m);
        if (&am + b).is_zero() {
            return Err(singular(m, format!("am + b = 0 at m = {m}")));
        }
        if (&am + Rational::one()).is_zero() {
            return Err(singular(m, format!("am + 1 = 0 at m = {m}")));
        }
    }
    Ok(())
}

/// `y_m = 1/(am+b) sum_k C(-am-b, k) B_{m,k}(x)`.
pub fn scaled_forward(a: &Rational, b: &Rational, x: &SequencePrefix) -> Result<SequencePrefix> {
    scaled_check(a, b, x.len())?;
    Ok(bell_transform(x, |m, k| {
        let am_b = a * Rational::from(m) + b;
        binomial(&-&am_b, k) / am_b
    }))
}

/// `x_m = 1/(am+1) sum_k C(-(am+1)/b, k) b^k B_{m,k}(y)`.
pub fn scaled_backward(a: &Rational, b: &Rational, y: &SequencePrefix) -> Result<SequencePrefix> {
    scaled_check(a, b, y.len())?;
    Ok(bell_transform(y, |m, k| {
        let am_1 = a * Rational::from(m) + Rational::one();
        binomial(&-(&am_1 / b), k) * b.pow(k as i32) / am_1
    }))
}

fn two_term_check(p: &Rational, q: &Rational, r: &Rational, n: usize) -> Result<()> {
    if q == r {
        return Err(Error::InvalidParameters("c = r - q == 0".into()));
    }
    if p.is_zero() || q.is_zero() || r.is_zero() {
        return Err(Error::InvalidParameters("pqr == 0".into()));
    }
    for i in 1..=n {
        let np = p * Rational::from(i);
        if (q + &np).is_zero() {
            return Err(singular(i, format!("q + np = 0 at n = {i}")));
        }
        if (r + &np).is_zero() {
            return Err(singular(i, format!("r + np = 0 at n = {i}")));
        }
    }
    Ok(())
}

/// `x_n = (1/c) sum_k (q/(q+np) C(q+np, k) - r/(r+np) C(r+np, k)) B_{n,k}(y)`
/// with `c = r - q`.
pub fn two_term_forward(p: &Rational, q: &Rational, r: &Rational, y: &SequencePrefix) -> Result<SequencePrefix> {
    two_term_check(p, q, r, y.len())?;
    let c_inv = (r - q).recip().expect("checked");
    Ok(bell_transform(y, |n, k| {
        let np = p * Rational::from(n);
        let (qn, rn) = (q + &np, r + &np);
        (q / &qn * binomial(&qn, k) - r / &rn * binomial(&rn, k)) * &c_inv
    }))
}

/// Coefficient of `B_{n,k}(x)` in the backward two-term relation:
/// `-(1/k!) prod_{j=1}^{k-1} (np + kq + cj - 1)`.
pub fn two_term_backward_coeff(p: &Rational, q: &Rational, r: &Rational, n: usize, k: usize) -> Rational {
    let c = r - q;
    let base = p * Rational::from(n) + q * Rational::from(k) - Rational::one();
    let prod: Rational = (1..k).map(|j| &base + &c * Rational::from(j)).product();
    -(prod / Rational::from_bigint(factorial(k)))
}

/// `y_n = -sum_k (1/k!) prod_{j=1}^{k-1} (np + kq + cj - 1) B_{n,k}(x)`.
pub fn two_term_backward(p: &Rational, q: &Rational, r: &Rational, x: &SequencePrefix) -> Result<SequencePrefix> {
    two_term_check(p, q, r, x.len())?;
    Ok(bell_transform(x, |n, k| two_term_backward_coeff(p, q, r, n, k)))
}

/// Compares the backward two-term coefficients with `lambda_k(pn-1)/(1-pn)`
/// taken from the closed product, for `1 <= k <= n <= order` with `pn != 1`.
pub fn two_term_coeff_checks(p: &Rational, q: &Rational, r: &Rational, order: usize) -> Result<Vec<Check>> {
    let label = format!("p={p}; q={q}; r={r}");
    let mut out = Vec::new();
    for n in 1..=order {
        let u = p * Rational::from(n) - Rational::one();
        let check = Check::new("transform.two_term_coefficients", label.clone(), n);
        if u.is_zero() {
            out.push(check.skipped(format!("pn = 1 at n = {n}")));
            continue;
        }
        let denom = -&u;
        let mut bad = None;
        for k in 1..=n {
            let via_lambda = lambda_closed_m2(q, r, k)?.eval(&u) / &denom;
            let direct = two_term_backward_coeff(p, q, r, n, k);
            if via_lambda != direct {
                bad = Some(format!("k={k}: {direct} vs {via_lambda}"));
                break;
            }
        }
        out.push(check.expect(bad.is_none(), || bad.clone().unwrap_or_default()));
    }
    Ok(out)
}

fn general_forward_check(spec: &ProblemSpec, n: usize) -> Result<()> {
    for i in 1..=n {
        let np = spec.p() * Rational::from(i);
        for (j, t) in spec.terms().iter().enumerate() {
            if (&np + &t.q).is_zero() {
                return Err(singular(i, format!("np + q_{} = 0 at n = {i}", j + 1)));
            }
        }
    }
    Ok(())
}

/// `x_n = sum_k (sum_i a_i q_i/(np+q_i) C(np+q_i, k)) B_{n,k}(y)`.
pub fn general_forward(spec: &ProblemSpec, y: &SequencePrefix) -> Result<SequencePrefix> {
    general_forward_check(spec, y.len())?;
    Ok(bell_transform(y, |n, k| {
        let np = spec.p() * Rational::from(n);
        spec.terms()
            .iter()
            .map(|t| {
                let top = &np + &t.q;
                &t.a * &t.q / &top * binomial(&top, k)
            })
            .sum()
    }))
}

/// The forward map computed from series alone: with `phi = 1 + sum y_n t^n`,
/// the `x_n` are the Lagrange coefficients of `sum_i a_i phi^{q_i}` in
/// powers of `t/phi^p`. Has no poles.
pub fn general_forward_series(spec: &ProblemSpec, y: &SequencePrefix) -> Result<SequencePrefix> {
    let n = y.len();
    let mut coeffs = vec![Rational::one()];
    coeffs.extend(y.iter().cloned());
    let phi = Series::from_coeffs(n, coeffs);
    let mut g = Series::zero(n);
    for t in spec.terms() {
        g = g.try_add(&phi.pow_rat(&t.q)?.scale(&t.a))?;
    }
    let a = lagrange_coeffs(&g, &phi.pow_rat(spec.p())?, n)?;
    Ok(SequencePrefix::new(a[1..].to_vec()))
}

/// `y_n = sum_k lambda_k(pn-1)/(1-pn) B_{n,k}(x)`, with `lambda_k` from the
/// recurrence.
pub fn general_backward(spec: &ProblemSpec, x: &SequencePrefix) -> Result<SequencePrefix> {
    let n = x.len();
    for i in 1..=n {
        if (spec.p() * Rational::from(i)).is_one() {
            return Err(singular(i, format!("pn = 1 at n = {i}")));
        }
    }
    let lam = lambda_recurrence(spec, n);
    Ok(bell_transform(x, |i, k| {
        let u = spec.p() * Rational::from(i) - Rational::one();
        lam.get(k).eval(&u) / -&u
    }))
}

/// Where the `f_k` of the three-term backward map come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FSource {
    Recurrence,
    Mina,
}

pub fn f_table(spec: &ProblemSpec, order: usize, source: FSource) -> Result<FTable> {
    match source {
        FSource::Recurrence => crate::lambda::f_recurrence(spec, order),
        FSource::Mina => f_via_mina_table(spec, order),
    }
}

/// `y_n = -sum_k f_k(pn-1)/(k! (-c_1)^k) B_{n,k}(x)` for `m = 3`. Unlike
/// [`general_backward`] this has no pole at `pn = 1`.
pub fn three_term_backward(spec: &ProblemSpec, x: &SequencePrefix, source: FSource) -> Result<SequencePrefix> {
    spec.require_m(3)?;
    let n = x.len();
    let fs = f_table(spec, n, source)?;
    let neg_c1 = -spec.c(1);
    Ok(bell_transform(x, |i, k| {
        let u = spec.p() * Rational::from(i) - Rational::one();
        let denom = Rational::from_bigint(factorial(k)) * neg_c1.pow(k as i32);
        -(fs.get(k).eval(&u) / denom)
    }))
}

/// For `phi = 1 + sum y_n t^n` and the series built from it: checks
/// `phi(t/w) = w^{-1/p}`, that the Lagrange coefficients of
/// `sum_i a_i phi^{q_i}` give `F = sum_i a_i w^{-q_i/p}`, and that
/// `F(t/phi^p) = sum_i a_i phi^{q_i}`, all to the given order.
pub fn pipeline_invariants(spec: &ProblemSpec, y: &SequencePrefix, order: usize) -> Result<Vec<Check>> {
    let inst = Instance::build(spec, y.values(), order)?;
    let label = format!("{spec}; y={y}");
    let mut out = Vec::new();

    let lhs = inst.phi.compose(&inst.g)?;
    let rhs = inst.w.pow_rat(&-(spec.p().recip().expect("p != 0")))?;
    out.push(
        Check::new("pipeline.phi_at_t_over_w", label.clone(), order)
            .expect(lhs == rhs, || format!("{:?} vs {:?}", lhs.coeffs(), rhs.coeffs())),
    );

    let x = general_forward_series(spec, &SequencePrefix::new(y.values()[..order].to_vec()))?;
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(x.into_values());
    let from_lagrange = Series::from_coeffs(order, coeffs);
    out.push(
        Check::new("pipeline.f_from_w", label.clone(), order).expect(from_lagrange == inst.big_f, || {
            format!("{:?} vs {:?}", from_lagrange.coeffs(), inst.big_f.coeffs())
        }),
    );

    let composed = inst.big_f.compose(&inst.f)?;
    let mut target = Series::zero(order);
    for t in spec.terms() {
        target = target.try_add(&inst.phi.pow_rat(&t.q)?.scale(&t.a))?;
    }
    out.push(
        Check::new("pipeline.functional_equation", label, order).expect(composed == target, || {
            format!("{:?} vs {:?}", composed.coeffs(), target.coeffs())
        }),
    );
    Ok(out)
}

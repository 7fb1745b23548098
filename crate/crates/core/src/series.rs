//! Truncated formal power series over a generic coefficient ring.
//!
//! A [`Series`] of order `N` knows the coefficients of `t^0 ..= t^N` and
//! nothing beyond. Binary operations insist on equal orders; anything that
//! loses precision (differentiation, dividing out `t`) returns a series of
//! lower order instead of inventing coefficients.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::Coeff;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series<C> {
    order: usize,
    coeffs: Vec<C>,
}

fn check_order(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::OrderMismatch { left: a, right: b })
    }
}

impl<C: Coeff> Series<C> {
    /// Takes the given coefficients as a polynomial, padding with zeros or
    /// dropping everything above `t^order`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, C::zero());
        Series { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn constant(order: usize, c: C) -> Self {
        Self::from_coeffs(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one())
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::from_coeffs(order, vec![C::zero(), C::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// `[t^n]`; panics above the truncation order.
    pub fn coeff(&self, n: usize) -> &C {
        assert!(
            n <= self.order,
            "coefficient t^{n} is beyond truncation order {}",
            self.order
        );
        &self.coeffs[n]
    }

    /// Nonzero constant term.
    pub fn in_l0(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Zero constant term and nonzero linear term.
    pub fn in_l1(&self) -> bool {
        self.coeffs[0].is_zero() && self.order >= 1 && !self.coeffs[1].is_zero()
    }

    pub fn map<D: Coeff, F: FnMut(&C) -> D>(&self, f: F) -> Series<D> {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot raise truncation order");
        Self::from_coeffs(order, self.coeffs[..=order].to_vec())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_order(self.order, other.order)?;
        Ok(Series {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_order(self.order, other.order)?;
        Ok(Series {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_order(self.order, other.order)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order;
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b;
                }
            }
        }
        Series { order: n, coeffs: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    /// Formal derivative; the result has order `N - 1`.
    pub fn derivative(&self) -> Self {
        let order = self.order.saturating_sub(1);
        let coeffs = (1..=self.order)
            .map(|n| self.coeffs[n].scale(&Rational::from(n)))
            .collect();
        Self::from_coeffs(order, coeffs)
    }

    /// `f(t)/t` for a series with zero constant term; the result has order `N - 1`.
    pub fn div_t(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm("division by t needs a zero constant term"));
        }
        let order = self.order.saturating_sub(1);
        Ok(Self::from_coeffs(order, self.coeffs[1..].to_vec()))
    }

    /// `t * f(t)`; the result has order `N + 1` with the same information.
    pub fn mul_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order + 2);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(self.order + 1, coeffs)
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible(format!("{:?}", self.coeffs[0])))?;
        let mut out: Vec<C> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * &out[n - k];
            }
            out.push(-(acc * &inv0));
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// `log(phi)` for `phi_0 = 1`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm("log needs constant term 1"));
        }
        let mut out: Vec<C> = vec![C::zero(); self.order + 1];
        for n in 1..=self.order {
            // n L_n = n phi_n - sum_{k=1}^{n-1} k L_k phi_{n-k}
            let mut acc = self.coeffs[n].scale(&Rational::from(n));
            for k in 1..n {
                acc = acc - out[k].scale(&Rational::from(k)) * &self.coeffs[n - k];
            }
            out[n] = acc.scale(&Rational::new(1, n as i64));
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// `exp(h)` for `h_0 = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm("exp needs constant term 0"));
        }
        let mut out: Vec<C> = Vec::with_capacity(self.order + 1);
        out.push(C::one());
        for n in 1..=self.order {
            // n E_n = sum_{k=1}^{n} k h_k E_{n-k}
            let mut acc = C::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc + self.coeffs[k].scale(&Rational::from(k)) * &out[n - k];
                }
            }
            out.push(acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// `phi^alpha` for `phi_0 = 1` and rational `alpha`, via the power-rule
    /// recurrence `n h_n = sum_{k=1}^{n} ((alpha+1)k - n) phi_k h_{n-k}`.
    pub fn pow_rat(&self, alpha: &Rational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm("rational power needs constant term 1"));
        }
        let alpha1 = alpha + Rational::one();
        let mut out: Vec<C> = Vec::with_capacity(self.order + 1);
        out.push(C::one());
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let w = &alpha1 * Rational::from(k) - Rational::from(n);
                if !w.is_zero() {
                    acc = acc + self.coeffs[k].scale(&w) * &out[n - k];
                }
            }
            out.push(acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// `outer(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        check_order(self.order, inner.order)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm(
                "inner series of a composition needs constant term 0",
            ));
        }
        let mut acc = Self::constant(self.order, self.coeffs[self.order].clone());
        for k in (0..self.order).rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// The composite inverse `g` with `f(g(t)) = g(f(t)) = t`, computed by
    /// Lagrange inversion `g_n = (1/n) [t^{n-1}] (t/f)^n`.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.in_l1() {
            return Err(Error::NoCompositeInverse);
        }
        let t_over_f = self.div_t()?.reciprocal()?;
        let mut coeffs = lagrange_inner(None, &t_over_f, self.order)?;
        coeffs[0] = C::zero();
        Ok(Self::from_coeffs(self.order, coeffs))
    }
}

/// `a_n = (1/n) [t^{n-1}] G'(t) phi^n(t)` for `1 <= n <= order`; `G = None`
/// stands for `G(t) = t`. Only `phi` up to `t^{order-1}` is read.
fn lagrange_inner<C: Coeff>(g: Option<&Series<C>>, phi: &Series<C>, order: usize) -> Result<Vec<C>> {
    let mut out = vec![C::zero(); order + 1];
    if order == 0 {
        return Ok(out);
    }
    let m = order - 1;
    if phi.order < m {
        return Err(Error::OrderMismatch {
            left: phi.order,
            right: m,
        });
    }
    let phi = phi.truncate(m);
    let g_prime = match g {
        Some(g) => g.derivative().truncate(m),
        None => Series::one(m),
    };
    let mut phi_pow = Series::one(m);
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        phi_pow = phi_pow.mul_unchecked(&phi);
        let prod = g_prime.mul_unchecked(&phi_pow);
        *slot = prod.coeffs[n - 1].scale(&Rational::new(1, n as i64));
    }
    Ok(out)
}

/// Lagrange inversion: coefficients `a_0 ..= a_order` with
/// `G(t) = sum_n a_n (t/phi(t))^n`, where `a_0 = G(0)`.
pub fn lagrange_coeffs<C: Coeff>(g: &Series<C>, phi: &Series<C>, order: usize) -> Result<Vec<C>> {
    if !phi.in_l0() {
        return Err(Error::NotInL0);
    }
    if g.order < order {
        return Err(Error::OrderMismatch {
            left: g.order,
            right: order,
        });
    }
    let mut out = lagrange_inner(Some(g), phi, order)?;
    out[0] = g.coeffs[0].clone();
    Ok(out)
}

/// `sum_n a_n (t/phi)^n` to the order of `phi`; the re-substitution side of
/// [`lagrange_coeffs`].
pub fn lagrange_resum<C: Coeff>(a: &[C], phi: &Series<C>) -> Result<Series<C>> {
    let basis = Series::t(phi.order).try_mul(&phi.reciprocal()?)?;
    Ok(resum(a, &basis))
}

/// `sum_n mu_n F^n`, truncated to the order of `F`.
pub fn resum<C: Coeff>(mu: &[C], f: &Series<C>) -> Series<C> {
    let mut acc = Series::zero(f.order);
    let mut power = Series::one(f.order);
    for m in mu {
        if !m.is_zero() {
            acc = acc.try_add(&power.mul_coeff(m)).expect("orders agree by construction");
        }
        power = power.mul_unchecked(f);
    }
    acc
}

/// Expands `S` in the power basis of `F in L1`: returns `mu_0 ..= mu_N` with
/// `S = sum_n mu_n F^n` to order `N`.
///
/// Lower-triangular solve of `S_n = sum_k mu_k [t^n]F^k`; the pivot
/// `[t^n]F^n = F_1^n` must be invertible.
pub fn basis_expand<C: Coeff>(s: &Series<C>, f: &Series<C>) -> Result<Vec<C>> {
    check_order(s.order, f.order)?;
    if !f.in_l1() {
        return Err(Error::NotInL1);
    }
    let f1_inv = f.coeffs[1]
        .try_inverse()
        .ok_or_else(|| Error::NotInvertible(format!("{:?}", f.coeffs[1])))?;
    let n_max = s.order;
    let mut powers: Vec<Series<C>> = Vec::with_capacity(n_max + 1);
    powers.push(Series::one(n_max));
    for k in 1..=n_max {
        let next = powers[k - 1].mul_unchecked(f);
        powers.push(next);
    }
    let mut mu: Vec<C> = Vec::with_capacity(n_max + 1);
    let mut pivot_inv = C::one();
    for n in 0..=n_max {
        let mut rhs = s.coeffs[n].clone();
        for (k, m) in mu.iter().enumerate() {
            rhs = rhs - m.clone() * powers[k].coeff(n);
        }
        mu.push(rhs * &pivot_inv);
        pivot_inv = pivot_inv * &f1_inv;
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn rs(order: usize, c: &[i64]) -> Series<Rational> {
        Series::from_coeffs(order, c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn ring_examples() {
        let a = rs(3, &[1, 1]);
        let b = rs(3, &[1, -1]);
        assert_eq!(a.try_mul(&b).unwrap(), rs(3, &[1, 0, -1]));
        assert_eq!(rs(2, &[1, 1]).pow(2), rs(2, &[1, 2, 1]));
        let t = Series::<Rational>::t(1);
        assert_eq!(t.try_mul(&t).unwrap(), rs(1, &[0, 0]));
    }

    #[test]
    fn order_mismatch_rejected() {
        let err = rs(3, &[1]).try_add(&rs(2, &[1])).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 3, right: 2 });
        assert!(rs(3, &[1]).compose(&rs(4, &[0, 1])).is_err());
    }

    #[test]
    fn log_of_geometric_series() {
        let geo = rs(6, &[1, 1, 1, 1, 1, 1, 1]);
        let l = geo.log().unwrap();
        let expected: Vec<Rational> = core::iter::once(q(0))
            .chain((1..=6).map(|n| Rational::new(1, n)))
            .collect();
        assert_eq!(l.coeffs(), &expected[..]);
        assert_eq!(l.exp().unwrap(), geo);
    }

    #[test]
    fn exp_log_edge_cases() {
        assert_eq!(Series::<Rational>::zero(4).exp().unwrap(), Series::one(4));
        let one_plus_t = rs(5, &[1, 1]);
        assert_eq!(one_plus_t.log().unwrap().exp().unwrap(), one_plus_t);
        assert!(rs(3, &[2, 1]).log().is_err());
        assert!(rs(3, &[1, 1]).exp().is_err());
    }

    #[test]
    fn rational_powers() {
        let geo = rs(5, &[1, 1, 1, 1, 1, 1]);
        let inv = rs(5, &[1, -1]);
        assert_eq!(inv.pow_rat(&q(-1)).unwrap(), geo);
        let sqrt = rs(6, &[1, 1]).pow_rat(&Rational::new(1, 2)).unwrap();
        for n in 0..=6 {
            assert_eq!(sqrt.coeff(n), &binomial(&Rational::new(1, 2), n));
        }
        assert_eq!(sqrt.coeff(2), &Rational::new(-1, 8));
        assert_eq!(geo.pow_rat(&q(0)).unwrap(), Series::one(5));
        assert_eq!(geo.pow_rat(&q(3)).unwrap(), geo.pow(3));
        assert!(rs(3, &[2, 1]).pow_rat(&q(2)).is_err());
    }

    #[test]
    fn composition_examples() {
        // (t + t^2)^2 = t^2 + 2t^3 + t^4
        let outer = rs(4, &[0, 0, 1]);
        let inner = rs(4, &[0, 1, 1]);
        assert_eq!(outer.compose(&inner).unwrap(), rs(4, &[0, 0, 1, 2, 1]));
        assert!(outer.compose(&rs(4, &[1, 1])).is_err());
    }

    #[test]
    fn inverse_of_t_over_one_minus_t() {
        let f = rs(6, &[0, 1, 1, 1, 1, 1, 1]);
        let g = f.comp_inverse().unwrap();
        assert_eq!(g, rs(6, &[0, 1, -1, 1, -1, 1, -1]));
        assert_eq!(f.compose(&g).unwrap(), Series::t(6));
        assert_eq!(g.compose(&f).unwrap(), Series::t(6));
        assert_eq!(Series::<Rational>::t(5).comp_inverse().unwrap(), Series::t(5));
        assert_eq!(rs(3, &[1, 1]).comp_inverse(), Err(Error::NoCompositeInverse));
        assert_eq!(rs(3, &[0, 0, 1]).comp_inverse(), Err(Error::NoCompositeInverse));
    }

    #[test]
    fn lagrange_examples() {
        // G = t, phi = 1 - t: a_n = (-1)^(n-1)
        let n = 7;
        let phi = rs(n, &[1, -1]);
        let a = lagrange_coeffs(&Series::t(n), &phi, n).unwrap();
        assert_eq!(a[0], q(0));
        for (k, ak) in a.iter().enumerate().skip(1) {
            assert_eq!(*ak, q(if k % 2 == 1 { 1 } else { -1 }));
        }
        assert_eq!(lagrange_resum(&a, &phi).unwrap(), Series::t(n));

        // G = t/phi for a generic phi in L0: a_1 = 1, the rest vanish.
        let phi = rs(n, &[3, -2, 5, 1]);
        let g = Series::t(n).try_mul(&phi.reciprocal().unwrap()).unwrap();
        let a = lagrange_coeffs(&g, &phi, n).unwrap();
        for (k, ak) in a.iter().enumerate() {
            assert_eq!(*ak, q(i64::from(k == 1)));
        }
        assert_eq!(lagrange_coeffs(&g, &rs(n, &[0, 1]), n), Err(Error::NotInL0));
    }

    #[test]
    fn basis_expand_examples() {
        let s = rs(5, &[4, -1, 2, 0, 7, 3]);
        assert_eq!(basis_expand(&s, &Series::t(5)).unwrap(), s.coeffs().to_vec());
        let f = rs(5, &[0, 2, -1, 3]);
        let mu = basis_expand(&s, &f).unwrap();
        assert_eq!(resum(&mu, &f), s);
        assert_eq!(basis_expand(&s, &rs(5, &[1, 1])), Err(Error::NotInL1));
    }
}

//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are `x1, x2, ...` (index starts at 1). Terms are kept in a
//! `BTreeMap` keyed by [`Monomial`], whose ordering is the canonical
//! graded-lexicographic order (higher total degree first, ties broken by the
//! larger exponent of the lowest-indexed variable). Iteration order is
//! therefore the serialization order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::Coeff;

/// Exponent vector stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, with every exponent positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: u32) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: u32, exp: u32) -> Self {
        assert!(index >= 1, "variables are 1-based");
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(index, exp)])
        }
    }

    /// Builds a monomial from arbitrary pairs; zero exponents are dropped and
    /// repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            assert!(v >= 1, "variables are 1-based");
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exps(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp_of(&self, var: u32) -> u32 {
        self.0.iter().find(|&&(v, _)| v == var).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `var` by `e`; `None` if it is smaller than `e`.
    fn div_var_pow(&self, var: u32, e: u32) -> Option<Monomial> {
        if e == 0 {
            return Some(self.clone());
        }
        let have = self.exp_of(var);
        if have < e {
            return None;
        }
        let pairs = self
            .0
            .iter()
            .filter_map(|&(v, x)| {
                let rest = if v == var { x - e } else { x };
                (rest > 0).then_some((v, rest))
            })
            .collect();
        Some(Monomial(pairs))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Canonical order: "greater" monomials sort first.
        match other.total_degree().cmp(&self.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // `a` has a positive exponent on a lower variable.
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => match eb.cmp(&ea) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(v, e) in &self.0 {
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

/// A polynomial in `x1, x2, ...` with rational coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(index: u32) -> Self {
        Self::monomial(Monomial::var(index), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Sums the given terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Largest variable index occurring, 0 for constants.
    pub fn max_var(&self) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.exps().last().map(|&(v, _)| v))
            .max()
            .unwrap_or(0)
    }

    /// Smallest exponent of `var` over all terms (0 for the zero polynomial).
    pub fn min_exp_of(&self, var: u32) -> u32 {
        self.terms.keys().map(|m| m.exp_of(var)).min().unwrap_or(0)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by `x_var^e`; `None` when some term is not divisible.
    pub fn div_var_pow(&self, var: u32, e: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div_var_pow(var, e)?, c.clone());
        }
        Some(MultiPoly { terms })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `values[i]` for `x_{i+1}` in any coefficient ring.
    pub fn eval_in<C: Coeff>(&self, values: &[C]) -> Result<C> {
        let needed = self.max_var() as usize;
        if values.len() < needed {
            return Err(Error::MissingVariable(values.len() as u32 + 1));
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = C::from_rational(c);
            for &(v, e) in m.exps() {
                for _ in 0..e {
                    term = term * &values[v as usize - 1];
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Evaluates with `values[i]` standing for `x_{i+1}`.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        self.eval_in(values)
    }

    /// Evaluates against a sparse assignment `variable -> value`.
    pub fn eval_map(&self, assignment: &BTreeMap<u32, Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.exps() {
                let x = assignment.get(&v).ok_or(Error::MissingVariable(v))?;
                term *= &x.pow(e as i32);
            }
            acc += &term;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{m}")?;
            } else {
                write!(f, "({mag}){m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! owned_ops {
    ($T:ty: $($Trait:ident $method:ident),*) => {$(
        impl $Trait<$T> for $T {
            type Output = $T;
            fn $method(self, rhs: $T) -> $T {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $Trait<&'a $T> for $T {
            type Output = $T;
            fn $method(self, rhs: &'a $T) -> $T {
                (&self).$method(rhs)
            }
        }
        impl<'a> $Trait<$T> for &'a $T {
            type Output = $T;
            fn $method(self, rhs: $T) -> $T {
                self.$method(&rhs)
            }
        }
    )*};
}
pub(crate) use owned_ops;

owned_ops!(MultiPoly: Add add, Sub sub, Mul mul);

impl Coeff for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        MultiPoly::scale(self, r)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.constant_value()?.recip().map(MultiPoly::constant)
    }
}

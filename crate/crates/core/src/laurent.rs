//! Polynomials divided by a power of the first variable: `num / x1^e`.
//!
//! Entries of inverses of upper-triangular matrices with diagonal `x1` live
//! here, as do the coefficients of `f_n` written in the `c_k`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::multipoly::{owned_ops, Monomial, MultiPoly};
use crate::rational::Rational;

/// The distinguished variable whose powers may appear in denominators.
pub const PIVOT_VAR: u32 = 1;

/// `num / x1^den_exp`, normalized so that `x1` does not divide `num` unless
/// `den_exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentEntry {
    num: MultiPoly,
    den_exp: u32,
}

impl LaurentEntry {
    pub fn new(num: MultiPoly, den_exp: u32) -> Self {
        let mut e = LaurentEntry { num, den_exp };
        e.normalize();
        e
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        LaurentEntry { num: p, den_exp: 0 }
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den_exp = 0;
            return;
        }
        let common = self.num.min_exp_of(PIVOT_VAR).min(self.den_exp);
        if common > 0 {
            self.num = self.num.div_var_pow(PIVOT_VAR, common).expect("min exponent divides");
            self.den_exp -= common;
        }
    }

    pub fn is_one(&self) -> bool {
        self.den_exp == 0 && self.num.constant_value().is_some_and(|c| c.is_one())
    }

    /// Numerator rewritten over `x1^e`; `e` must be at least `den_exp`.
    fn num_over(&self, e: u32) -> MultiPoly {
        debug_assert!(e >= self.den_exp);
        self.num.mul_monomial(&Monomial::var_pow(PIVOT_VAR, e - self.den_exp))
    }

    pub fn div_pivot(&self) -> Self {
        Self::new(self.num.clone(), self.den_exp + 1)
    }

    /// Multiplies by `x1^e`.
    pub fn mul_pivot_pow(&self, e: u32) -> Self {
        if e >= self.den_exp {
            let num = self.num.mul_monomial(&Monomial::var_pow(PIVOT_VAR, e - self.den_exp));
            LaurentEntry { num, den_exp: 0 }
        } else {
            LaurentEntry {
                num: self.num.clone(),
                den_exp: self.den_exp - e,
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.num.scale(r), self.den_exp)
    }

    /// The polynomial value, if there is no denominator left.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        (self.den_exp == 0).then_some(&self.num)
    }

    /// Evaluates at `values[i] = x_{i+1}`; `None` if `x1` evaluates to zero
    /// under a nontrivial denominator or a variable is missing.
    pub fn eval(&self, values: &[Rational]) -> Option<Rational> {
        let num = self.num.eval(values).ok()?;
        if self.den_exp == 0 {
            return Some(num);
        }
        let x1 = values.first()?;
        Some(num * x1.pow(self.den_exp as i32).recip()?)
    }
}

impl<'a> Add<&'a LaurentEntry> for &LaurentEntry {
    type Output = LaurentEntry;
    fn add(self, rhs: &'a LaurentEntry) -> LaurentEntry {
        let e = self.den_exp.max(rhs.den_exp);
        LaurentEntry::new(self.num_over(e) + rhs.num_over(e), e)
    }
}

impl<'a> Sub<&'a LaurentEntry> for &LaurentEntry {
    type Output = LaurentEntry;
    fn sub(self, rhs: &'a LaurentEntry) -> LaurentEntry {
        let e = self.den_exp.max(rhs.den_exp);
        LaurentEntry::new(self.num_over(e) - rhs.num_over(e), e)
    }
}

impl<'a> Mul<&'a LaurentEntry> for &LaurentEntry {
    type Output = LaurentEntry;
    fn mul(self, rhs: &'a LaurentEntry) -> LaurentEntry {
        LaurentEntry::new(&self.num * &rhs.num, self.den_exp + rhs.den_exp)
    }
}

impl Neg for &LaurentEntry {
    type Output = LaurentEntry;
    fn neg(self) -> LaurentEntry {
        LaurentEntry {
            num: -&self.num,
            den_exp: self.den_exp,
        }
    }
}

impl Neg for LaurentEntry {
    type Output = LaurentEntry;
    fn neg(self) -> LaurentEntry {
        -&self
    }
}

owned_ops!(LaurentEntry: Add add, Sub sub, Mul mul);

impl From<MultiPoly> for LaurentEntry {
    fn from(p: MultiPoly) -> Self {
        LaurentEntry::from_poly(p)
    }
}

impl fmt::Display for LaurentEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den_exp {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "({})/x{PIVOT_VAR}", self.num),
            e => write!(f, "({})/x{PIVOT_VAR}^{e}", self.num),
        }
    }
}

impl fmt::Debug for LaurentEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

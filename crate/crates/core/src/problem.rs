//! Parameters `(p, (a_i, q_i))` of the functional equation
//! `F(t/phi^p(t)) = sum_i a_i phi^{q_i}(t)`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub a: Rational,
    pub q: Rational,
}

/// A validated parameter tuple: `p != 0`, `c_0 = sum a_i = 0` and
/// `c_1 = sum a_i q_i != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    p: Rational,
    terms: Vec<Term>,
}

impl ProblemSpec {
    pub fn new(p: Rational, terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidSpec("at least one term is required"));
        }
        if p.is_zero() {
            return Err(Error::InvalidSpec("p == 0"));
        }
        let spec = ProblemSpec { p, terms };
        if !spec.c(0).is_zero() {
            return Err(Error::InvalidSpec("c0 != 0"));
        }
        if spec.c(1).is_zero() {
            return Err(Error::InvalidSpec("c1 == 0"));
        }
        Ok(spec)
    }

    /// Convenience constructor from `(a_i, q_i)` pairs.
    pub fn from_pairs<I: IntoIterator<Item = (Rational, Rational)>>(p: Rational, pairs: I) -> Result<Self> {
        Self::new(p, pairs.into_iter().map(|(a, q)| Term { a, q }).collect())
    }

    /// The two-term family with `a_1 = -a_2 = 1/(r - q)`, `q_1 = q`, `q_2 = r`.
    pub fn two_term(p: Rational, q: Rational, r: Rational) -> Result<Self> {
        let c = &r - &q;
        let a = c.recip().ok_or_else(|| Error::InvalidParameters("r == q".into()))?;
        Self::from_pairs(p, [(a.clone(), q), (-a, r)])
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn m(&self) -> usize {
        self.terms.len()
    }

    /// `c_k = sum_i a_i q_i^k`.
    pub fn c(&self, k: u32) -> Rational {
        self.terms.iter().map(|t| &t.a * t.q.pow(k as i32)).sum()
    }

    /// `[c_1, ..., c_n]`
    pub fn c_values(&self, n: usize) -> Vec<Rational> {
        (1..=n as u32).map(|k| self.c(k)).collect()
    }

    pub fn require_m(&self, m: usize) -> Result<()> {
        if self.m() == m {
            Ok(())
        } else {
            Err(Error::WrongArity {
                expected: m,
                got: self.m(),
            })
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}; a=(", self.p)?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", t.a)?;
        }
        f.write_str("); q=(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", t.q)?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn admissibility() {
        assert_eq!(
            ProblemSpec::from_pairs(q(1), [(q(1), q(2)), (q(1), q(3))]),
            Err(Error::InvalidSpec("c0 != 0"))
        );
        assert_eq!(
            ProblemSpec::from_pairs(q(1), [(q(1), q(2)), (q(-1), q(2))]),
            Err(Error::InvalidSpec("c1 == 0"))
        );
        assert_eq!(
            ProblemSpec::from_pairs(q(0), [(q(1), q(2)), (q(-1), q(3))]),
            Err(Error::InvalidSpec("p == 0"))
        );
        let s = ProblemSpec::from_pairs(Rational::new(1, 2), [(q(1), q(2)), (q(-1), q(3))]).unwrap();
        assert_eq!(s.c(1), q(-1));
        assert_eq!(s.c(2), q(-5));
    }

    #[test]
    fn two_term_family_has_c1_minus_one() {
        let s = ProblemSpec::two_term(q(3), Rational::new(1, 2), q(-4)).unwrap();
        assert_eq!(s.c(0), q(0));
        assert_eq!(s.c(1), q(-1));
        assert!(ProblemSpec::two_term(q(1), q(2), q(2)).is_err());
    }
}

//! Ordinary Bell polynomials `B_{n,k}`.
//!
//! Two independent routes: enumeration of the partitions of `n` into `k`
//! parts with multinomial weights ([`bell_partition`]), and coefficient
//! extraction from the `k`-th power of `sum_j x_j t^j` ([`bell_gf`]).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::multipoly::{Monomial, MultiPoly};
use crate::rational::Rational;
use crate::ring::Coeff;
use crate::series::Series;

/// One element of the set of partitions of `n` into `k` parts, stored as
/// multiplicities: `multiplicities[j-1]` copies of part `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTerm {
    pub multiplicities: Vec<u32>,
}

impl PartitionTerm {
    pub fn parts(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn weight(&self) -> u32 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(j, &i)| (j as u32 + 1) * i)
            .sum()
    }
}

/// `0! ..= n!`
#[derive(Clone, Debug)]
pub struct Factorials(Vec<BigInt>);

impl Factorials {
    pub fn up_to(n: usize) -> Self {
        let mut v = Vec::with_capacity(n + 1);
        v.push(BigInt::from(1));
        for i in 1..=n {
            let next = &v[i - 1] * BigInt::from(i);
            v.push(next);
        }
        Factorials(v)
    }

    pub fn get(&self, n: usize) -> &BigInt {
        &self.0[n]
    }
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k >= 1 && k <= n {
        Ok(())
    } else {
        Err(Error::BellIndex { n, k })
    }
}

/// All multiplicity vectors `(i_1, ..., i_{n-k+1})` with `sum i_j = k` and
/// `sum j*i_j = n`.
pub fn partitions(n: usize, k: usize) -> Result<Vec<PartitionTerm>> {
    check_range(n, k)?;
    let width = n - k + 1;
    let mut out = Vec::new();
    let mut mult = vec![0u32; width];
    descend(width, k, n, &mut mult, &mut out);
    Ok(out)
}

// Chooses the multiplicity of part size `largest`, then recurses on smaller
// parts. `parts` parts with total `weight` remain; each is at most `largest`.
fn descend(largest: usize, parts: usize, weight: usize, mult: &mut [u32], out: &mut Vec<PartitionTerm>) {
    if parts == 0 {
        if weight == 0 {
            out.push(PartitionTerm {
                multiplicities: mult.to_vec(),
            });
        }
        return;
    }
    if largest == 0 || weight < parts || weight > parts * largest {
        return;
    }
    if largest == 1 {
        // Only ones left: feasible exactly when weight == parts.
        mult[0] = parts as u32;
        descend(0, 0, weight - parts, mult, out);
        mult[0] = 0;
        return;
    }
    let max_here = (weight / largest).min(parts);
    for i in (0..=max_here).rev() {
        mult[largest - 1] = i as u32;
        descend(largest - 1, parts - i, weight - i * largest, mult, out);
    }
    mult[largest - 1] = 0;
}

/// Symbolic `B_{n,k}(x_1, ..., x_{n-k+1})` by partition enumeration.
pub fn bell_partition(n: usize, k: usize) -> Result<MultiPoly> {
    let fact = Factorials::up_to(k);
    bell_partition_with(n, k, &fact)
}

fn bell_partition_with(n: usize, k: usize, fact: &Factorials) -> Result<MultiPoly> {
    let mut poly = MultiPoly::zero();
    for term in partitions(n, k)? {
        let denom: BigInt = term
            .multiplicities
            .iter()
            .map(|&i| fact.get(i as usize).clone())
            .product();
        let coef = Rational::from_big(fact.get(k).clone(), denom).expect("factorials are positive");
        let mono = Monomial::from_pairs(term.multiplicities.iter().enumerate().map(|(j, &i)| (j as u32 + 1, i)));
        poly.add_term(mono, &coef);
    }
    Ok(poly)
}

/// Symbolic Bell triangle: `rows[n-1][k-1] = B_{n,k}` for `1 <= k <= n <= max_n`.
pub fn bell_partition_triangle(max_n: usize) -> Vec<Vec<MultiPoly>> {
    let fact = Factorials::up_to(max_n);
    (1..=max_n)
        .map(|n| {
            (1..=n)
                .map(|k| bell_partition_with(n, k, &fact).expect("k in range"))
                .collect()
        })
        .collect()
}

/// `[t^n] (sum_j f_j t^j)^k`, by `k - 1` truncated multiplications.
/// `f[j-1]` is `f_j`; only `f_1 ..= f_{n-k+1}` are read.
pub fn bell_gf<C: Coeff>(n: usize, k: usize, f: &[C]) -> Result<C> {
    check_range(n, k)?;
    let width = n - k + 1;
    if f.len() < width {
        return Err(Error::TooFewValues {
            needed: width,
            got: f.len(),
        });
    }
    let mut coeffs = Vec::with_capacity(width + 1);
    coeffs.push(C::zero());
    coeffs.extend(f[..width].iter().cloned());
    let base = Series::from_coeffs(n, coeffs);
    let mut acc = base.clone();
    for _ in 1..k {
        acc = acc.try_mul(&base).expect("same order");
    }
    Ok(acc.coeff(n).clone())
}

/// `[B_{n,1}, ..., B_{n,n}]` evaluated at `x_1 ..= x_n`.
pub fn bell_row<C: Coeff>(n: usize, x: &[C]) -> Result<Vec<C>> {
    if n == 0 {
        return Err(Error::BellIndex { n, k: 0 });
    }
    let table = BellTable::new(n, x)?;
    Ok((1..=n).map(|k| table.get(n, k).clone()).collect())
}

/// All `B_{n,k}(x)` for `0 <= k <= n <= max_n`, with `B_{0,0} = 1` and
/// `B_{n,0} = 0` for `n >= 1`.
#[derive(Clone, Debug)]
pub struct BellTable<C> {
    max_n: usize,
    // powers[k] = [t^0..t^max_n] of (sum x_j t^j)^k
    powers: Vec<Series<C>>,
}

impl<C: Coeff> BellTable<C> {
    pub fn new(max_n: usize, x: &[C]) -> Result<Self> {
        if x.len() < max_n {
            return Err(Error::TooFewValues {
                needed: max_n,
                got: x.len(),
            });
        }
        let mut coeffs = Vec::with_capacity(max_n + 1);
        coeffs.push(C::zero());
        coeffs.extend(x[..max_n].iter().cloned());
        let base = Series::from_coeffs(max_n, coeffs);
        let mut powers = Vec::with_capacity(max_n + 1);
        powers.push(Series::one(max_n));
        for k in 1..=max_n {
            let next = powers[k - 1].try_mul(&base).expect("same order");
            powers.push(next);
        }
        Ok(BellTable { max_n, powers })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, n: usize, k: usize) -> &C {
        assert!(k <= n && n <= self.max_n, "B_{n},{k} outside table");
        self.powers[k].coeff(n)
    }
}

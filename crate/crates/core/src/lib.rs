//! Exact arithmetic for nonlinear inverse relations of ordinary Bell
//! polynomials.
//!
//! Everything here is `no_std` with `alloc`: arbitrary-precision rationals,
//! sparse multivariate polynomials, truncated power series with the Lagrange
//! inversion operator, Bell polynomials (two independent routes), the
//! `lambda_n(s)` machinery, Mina polynomials and the inverse-pair transforms.
//! Nothing in this crate uses floating point.
//!
//! Polynomials in `lambda_n(s)` and `f_n(s)` are stored in the indeterminate
//! `u = p*s`, so every evaluation point of the form `s = -q/p` or
//! `s = n - 1/p` becomes the rational point `u = -q` or `u = p*n - 1`.

#![no_std]
#![allow(clippy::needless_range_loop)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bell;
pub mod error;
pub mod lambda;
pub mod laurent;
pub mod mina;
pub mod multipoly;
pub mod problem;
pub mod rational;
pub mod report;
pub mod ring;
pub mod sample;
pub mod series;
pub mod transforms;
pub mod unipoly;

pub use error::{Error, Result};
pub use laurent::LaurentEntry;
pub use multipoly::{Monomial, MultiPoly};
pub use problem::ProblemSpec;
pub use rational::Rational;
pub use report::{Check, Status};
pub use ring::Coeff;
pub use series::Series;
pub use transforms::SequencePrefix;
pub use unipoly::UniPoly;

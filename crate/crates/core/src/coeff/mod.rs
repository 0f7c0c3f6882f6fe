//! Coefficient arithmetic: `F_q`, the rational function field `F_q(θ)` and
//! its perfection, with the Frobenius twist and its inverse.

mod elem;
mod fq;
pub(crate) mod upoly;

pub(crate) use fq::join_signed;

pub use elem::FieldElem;
pub use fq::{Field, FqElem, GaloisField, MAX_TABLE_ORDER};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("unsupported field F_{p}^{n} (prime powers are limited to 4096 elements)")]
    UnsupportedField { p: u32, n: u32 },
    #[error("bad modulus: {0}")]
    BadModulus(String),
}


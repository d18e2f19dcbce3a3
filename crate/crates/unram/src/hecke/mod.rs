//! The unramified Hecke algebra of GL(n, Q_p): double-coset basis,
//! degrees, convolution, the Satake isomorphism with a brute-force p-adic
//! oracle, central sums, and the non-tempered detector polynomials.

mod element;
mod oracle;
mod uring;

pub use element::{
    convolve, degree, ramanujan_detector, ramanujan_polynomials, satake, satake_basis,
    satake_inverse, to_schur_basis_u, trivial_rep_evaluation, HeckeElement,
};
pub use oracle::{convolve_oracle, degree_enumerated, divisor_type, satake_oracle};
pub use uring::USqrt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeckeError {
    #[error("incompatible Hecke elements: primes {p1},{p2}, ranks {n1},{n2}")]
    Incompatible { p1: u64, p2: u64, n1: usize, n2: usize },
    #[error("support is not integral; central sum would be ill-defined")]
    UnboundedSupport,
    #[error("weight has negative entries")]
    NegativeSupport,
    #[error("Satake inversion exceeded its budget")]
    InversionBudget,
    #[error("enumeration budget exceeded: {0}")]
    OracleBudget(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

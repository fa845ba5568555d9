//! Exact polynomial arithmetic over ℚ and prime fields.

mod coeff;
mod grading;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use coeff::{is_prime_u32, Coeff};
pub use grading::{homogeneous_degree, project_degree, Grading, Homogeneity};
pub use monomial::{cmp_monomials, Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use polynomial::Polynomial;
pub use ring::{PolyRing, Ring};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("denominator at position {position} vanishes in characteristic {characteristic}")]
    BadCharacteristic {
        position: usize,
        characteristic: u32,
    },

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("invalid ring: {0}")]
    InvalidRing(String),
}

use thiserror::Error;

use crate::poly::PolyError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("operation needs a nonzero element")]
    ZeroElement,

    #[error("Gröbner basis was computed without cofactors")]
    MissingCofactors,

    #[error("ring map is not well defined: relation {relation} maps to {image}, which is not in the target relations")]
    NotWellDefined { relation: String, image: String },

    #[error("ring map needs {expected} images, got {found}")]
    ImageCount { expected: usize, found: usize },

    #[error("chains have different lengths: {source_len} vs {target_len}")]
    LengthMismatch {
        source_len: usize,
        target_len: usize,
    },

    #[error("witness {witness} lies in level {level} ideal {ideal}")]
    WitnessNotOutside {
        level: usize,
        witness: String,
        ideal: String,
    },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid ladder: {0}")]
    InvalidLadder(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

//! Exact commutative-algebra toolkit for studying how chains of prime ideals
//! lift along ring homomorphisms.
//!
//! The crate is layered bottom-up:
//!
//! - [`poly`]: exact coefficients, monomials and monomial orders, polynomial
//!   arithmetic, the expression parser and integer gradings.
//! - [`groebner`]: multivariate division, Buchberger's algorithm and
//!   cofactor tracking.
//! - [`ideal`]: ideal membership, equality, intersection, quotients,
//!   saturation, elimination, radical membership and structured minimal primes.
//! - [`ringmap`]: presented algebras, ring maps, extension and contraction of
//!   ideals, kernels and the contracted-ideal check.
//! - [`chain`]: ladders of ideals and multiplicative sets, obstruction search
//!   and certificates, prime-chain verification and lifting.
//! - [`session`]: the line-oriented session format driving the CLI.

pub mod chain;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod poly;
pub mod ringmap;
pub mod session;

pub use chain::{
    LadderSpec, MultiplicativeSetFG, ObstructionCertificate, ObstructionOutcome, PrimeChain,
};
pub use error::{Error, Result};
pub use groebner::{buchberger, divide, extended_reduce, DivisionResult, GroebnerBasis};
pub use ideal::{Ideal, MinimalPrimes, PrimalityStatus, PrimalityWitness, PrimeReason};
pub use ringmap::{check_well_defined, ContractionCheck, PresentedRing, RingMap, WellDefinedness};
pub use session::{
    parse_session, run_script, Report, RunOptions, SessionError, SessionScript, Verdict,
};

pub use poly::{Coeff, Grading, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial, Ring};

/// Version string reported by the CLI and embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

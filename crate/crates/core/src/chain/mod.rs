//! Ladders of ideals and multiplicative sets, the obstruction search with
//! its certificates, prime-chain verification and chain lifting.
//!
//! A ladder is `a₀, …, a_r` with multiplicative sets `F₀, …, F_r`. Set
//! `S_{r+1} = {1}` and `Sᵢ = {s : (s) + aᵢ meets Fᵢ·Sᵢ₊₁}`. Then `0 ∈ S₀`
//! exactly when some picks `fᵢ ∈ Fᵢ` satisfy
//!
//! ```text
//! f_r⋯f₀ ∈ a₀ + f₀·a₁ + f₁f₀·a₂ + … + f_{r−1}⋯f₀·a_r
//! ```
//!
//! [`unroll`] turns level-by-level witnesses into such an identity and
//! [`retelescope`] goes back. When `0 ∈ S₀` there is no chain of primes
//! `q₀ ⊆ … ⊆ q_r` with `aᵢ ⊆ qᵢ` and `qᵢ ∩ Fᵢ = ∅`.

mod cert_io;
mod ladder;
mod lift;
mod obstruction;
mod prime_chain;

pub use cert_io::{
    certificate_from_json, certificate_to_json, verify_certificate_json, CertificateFileCheck,
};
pub use ladder::{telescoped_ideal, LadderSpec, MultiplicativeSetFG};
pub use lift::{
    candidate_pool, chain_length_report, default_witnesses, extendability_ladder,
    extendability_test, lift_chain, Candidate, CandidateVerdict, ChainLengthReport, LevelPool,
    LiftOutcome, LiftReport, LiftResult,
};
pub use obstruction::{
    check_recursion, obstruction_search, obstruction_search_with, retelescope, unroll,
    verify_certificate, CertificateCheck, ObstructionCertificate, ObstructionOutcome,
    RecursionWitness, SearchOptions,
};
pub use prime_chain::{
    verify_chain, verify_chain_ideals, ChainFailure, ChainReport, ContractionTranscript, PrimeChain,
};

#[cfg(test)]
mod tests;

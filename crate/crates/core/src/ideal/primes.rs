//! Pattern-based primality and minimal primes by recursive splitting.

use std::collections::BTreeSet;
use std::fmt;

use super::factor::{factor_list, irreducibility, Irreducibility, IrreducibleBy};
use super::{display_cmp, Ideal};
use crate::poly::{MonomialOrder, Polynomial};

/// Why an ideal was certified prime.
#[derive(Clone, Debug, PartialEq)]
pub enum PrimeReason {
    ZeroIdeal,
    /// Reduced basis consists of polynomials of degree one (an affine
    /// subspace; includes ideals generated by variables).
    Linear,
    /// Reduced basis is linear forms plus one generator that is irreducible
    /// in the variables the linear forms leave free.
    LinearPlusIrreducible {
        generator: Polynomial,
        by: IrreducibleBy,
    },
}

impl fmt::Display for PrimeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeReason::ZeroIdeal => f.write_str("zero ideal of a polynomial ring"),
            PrimeReason::Linear => f.write_str("generated by linear forms"),
            PrimeReason::LinearPlusIrreducible { generator, by } => {
                write!(f, "linear forms plus irreducible {generator} ({by})")
            }
        }
    }
}

/// A checkable reason an ideal is not prime.
#[derive(Clone, Debug, PartialEq)]
pub enum PrimalityWitness {
    UnitIdeal,
    /// `f·g ∈ I` with `f ∉ I` and `g ∉ I`.
    Product {
        f: Polynomial,
        g: Polynomial,
    },
}

impl fmt::Display for PrimalityWitness {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimalityWitness::UnitIdeal => fm.write_str("unit ideal"),
            PrimalityWitness::Product { f, g } => write!(fm, "({f})*({g}) in I, factors not in I"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PrimalityStatus {
    VerifiedPrime(PrimeReason),
    Disproved(PrimalityWitness),
    /// Asserted by the caller, not checked.
    Assumed,
    Unknown,
}

impl PrimalityStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, PrimalityStatus::VerifiedPrime(_))
    }

    pub fn is_disproved(&self) -> bool {
        matches!(self, PrimalityStatus::Disproved(_))
    }

    /// Short machine-friendly label.
    pub fn label(&self) -> &'static str {
        match self {
            PrimalityStatus::VerifiedPrime(_) => "verified-prime",
            PrimalityStatus::Disproved(_) => "disproved",
            PrimalityStatus::Assumed => "assumed",
            PrimalityStatus::Unknown => "unknown",
        }
    }
}

impl fmt::Display for PrimalityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimalityStatus::VerifiedPrime(r) => write!(f, "verified-prime: {r}"),
            PrimalityStatus::Disproved(w) => write!(f, "disproved: {w}"),
            PrimalityStatus::Assumed => f.write_str("assumed"),
            PrimalityStatus::Unknown => f.write_str("unknown"),
        }
    }
}

/// Output of the structured minimal-primes computation.
#[derive(Clone, Debug)]
pub struct MinimalPrimes {
    /// Verified primes containing the ideal, pairwise incomparable, sorted.
    pub primes: Vec<Ideal>,
    /// True when every branch ended in a verified prime (or the unit
    /// ideal); the list is then exactly the set of minimal primes.
    pub complete: bool,
    /// Branches the splitter could not resolve.
    pub unsplit: Vec<Ideal>,
}

fn is_linear(g: &Polynomial) -> bool {
    g.total_degree().unwrap_or(0) <= 1
}

pub(crate) fn primality_status(ideal: &Ideal) -> PrimalityStatus {
    let gb = ideal.canonical_basis();
    if gb.is_unit_ideal() {
        return PrimalityStatus::Disproved(PrimalityWitness::UnitIdeal);
    }
    if gb.is_zero_ideal() {
        return PrimalityStatus::VerifiedPrime(PrimeReason::ZeroIdeal);
    }
    let nonlinear: Vec<&Polynomial> = gb.elements().iter().filter(|g| !is_linear(g)).collect();
    match nonlinear.as_slice() {
        [] => return PrimalityStatus::VerifiedPrime(PrimeReason::Linear),
        // Reducedness keeps g free of the linear forms' leading variables, so
        // the quotient is K[free variables]/(g).
        [g] => {
            if let Irreducibility::Irreducible(by) = irreducibility(g) {
                return PrimalityStatus::VerifiedPrime(PrimeReason::LinearPlusIrreducible {
                    generator: (*g).clone(),
                    by,
                });
            }
        }
        _ => {}
    }
    match product_witness(ideal) {
        Some((f, g)) => PrimalityStatus::Disproved(PrimalityWitness::Product { f, g }),
        None => PrimalityStatus::Unknown,
    }
}

/// Tries every split `factor × cofactor` of every generator.
fn product_witness(ideal: &Ideal) -> Option<(Polynomial, Polynomial)> {
    let gb = ideal.canonical_basis();
    let candidates = gb.elements().iter().chain(ideal.generators());
    for gen in candidates {
        let factors = factor_list(gen);
        if factors.len() < 2 {
            continue;
        }
        for i in 0..factors.len() {
            let f = &factors[i];
            let rest = factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Polynomial::one(ideal.ring()), |acc, (_, h)| &acc * h);
            if !gb.contains(f) && !gb.contains(&rest) {
                let f = f.clone();
                return Some(if display_cmp(&rest, &f).is_lt() {
                    (rest, f)
                } else {
                    (f, rest)
                });
            }
        }
    }
    None
}

const MAX_DEPTH: usize = 32;

pub(crate) fn minimal_primes_structured(ideal: &Ideal) -> MinimalPrimes {
    let mut leaves = Vec::new();
    let mut unsplit = Vec::new();
    descend(ideal.canonical(), 0, &mut leaves, &mut unsplit);

    let mut primes: Vec<Ideal> = Vec::new();
    for p in &leaves {
        if primes.iter().any(|q| q.equals(p).expect("same ring")) {
            continue;
        }
        let dominated = leaves.iter().any(|q| {
            q.is_subset_of(p).expect("same ring") && !p.is_subset_of(q).expect("same ring")
        });
        if !dominated {
            primes.push(p.clone());
        }
    }
    primes.sort_by_cached_key(|p| (p.generators().len(), p.to_string()));
    MinimalPrimes {
        primes,
        complete: unsplit.is_empty(),
        unsplit,
    }
}

fn descend(ideal: Ideal, depth: usize, leaves: &mut Vec<Ideal>, unsplit: &mut Vec<Ideal>) {
    let gb = ideal.canonical_basis();
    if gb.is_unit_ideal() {
        return;
    }
    if gb.elements().iter().all(|g| g.is_monomial()) {
        for cover in minimal_vertex_covers(gb.elements()) {
            let gens = cover
                .into_iter()
                .map(|v| Polynomial::var(ideal.ring(), v))
                .collect();
            leaves.push(Ideal::new(ideal.ring(), gens).expect("same ring"));
        }
        return;
    }
    if primality_status(&ideal).is_verified() {
        leaves.push(ideal);
        return;
    }
    if depth < MAX_DEPTH {
        if let Some(f) = splitting_factor(&ideal) {
            // V(I) = V(I : f^∞) ∪ V(I + (f))
            let away = ideal.saturate(&f).expect("nonzero factor").canonical();
            let on = ideal.with_generators(&[f]).expect("same ring").canonical();
            descend(away, depth + 1, leaves, unsplit);
            descend(on, depth + 1, leaves, unsplit);
            return;
        }
    }
    unsplit.push(ideal);
}

/// A factor `f` of some generator with `I ⊊ I + (f)` and `I ⊊ I : f^∞`, so
/// both branches make progress.
fn splitting_factor(ideal: &Ideal) -> Option<Polynomial> {
    let gb = ideal.canonical_basis();
    for gen in gb.elements().iter().chain(ideal.generators()) {
        let factors = factor_list(gen);
        if factors.len() < 2 {
            continue;
        }
        let mut seen: Vec<Polynomial> = Vec::new();
        for f in factors {
            let f = f.monic(MonomialOrder::GrevLex);
            if seen.contains(&f) || gb.contains(&f) {
                continue;
            }
            seen.push(f.clone());
            let sat = ideal.saturate(&f).expect("nonzero factor");
            if !sat.equals(ideal).expect("same ring") {
                return Some(f);
            }
        }
    }
    None
}

/// Minimal sets of variables meeting the support of every monomial.
fn minimal_vertex_covers(monomials: &[Polynomial]) -> Vec<BTreeSet<usize>> {
    let supports: Vec<Vec<usize>> = monomials.iter().map(|m| m.variables()).collect();
    let mut found: Vec<BTreeSet<usize>> = Vec::new();
    fn go(supports: &[Vec<usize>], chosen: &mut BTreeSet<usize>, found: &mut Vec<BTreeSet<usize>>) {
        if found.iter().any(|c| c.is_subset(chosen)) {
            return;
        }
        match supports
            .iter()
            .find(|s| !s.iter().any(|v| chosen.contains(v)))
        {
            None => {
                found.retain(|c| !chosen.is_subset(c));
                found.push(chosen.clone());
            }
            Some(s) => {
                for &v in s {
                    chosen.insert(v);
                    go(supports, chosen, found);
                    chosen.remove(&v);
                }
            }
        }
    }
    go(&supports, &mut BTreeSet::new(), &mut found);
    found
}

use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, PrimalityStatus};
use crate::poly::{Polynomial, Ring};
use crate::ringmap::RingMap;

/// A strictly ascending chain of ideals believed to be prime.
#[derive(Clone, Debug)]
pub struct PrimeChain {
    ring: Ring,
    levels: Vec<Ideal>,
    statuses: Vec<PrimalityStatus>,
}

impl PrimeChain {
    /// Checks strict containment and primality patterns. Levels the
    /// patterns cannot decide are recorded as `Assumed`; a disproved level
    /// is an error.
    pub fn new(ring: &Ring, levels: Vec<Ideal>) -> Result<PrimeChain> {
        if levels.is_empty() {
            return Err(Error::InvalidChain(
                "a chain needs at least one ideal".into(),
            ));
        }
        if levels.iter().any(|i| i.ring() != ring) {
            return Err(crate::poly::PolyError::RingMismatch.into());
        }
        for (i, w) in levels.windows(2).enumerate() {
            if let Some(g) = first_outside(&w[0], &w[1])? {
                return Err(Error::InvalidChain(format!(
                    "level {} generator {g} is not in level {}",
                    i,
                    i + 1
                )));
            }
            if w[0].equals(&w[1])? {
                return Err(Error::InvalidChain(format!(
                    "levels {} and {} are equal",
                    i,
                    i + 1
                )));
            }
        }
        let mut statuses = Vec::with_capacity(levels.len());
        for (i, p) in levels.iter().enumerate() {
            let st = match p.primality() {
                PrimalityStatus::Unknown => PrimalityStatus::Assumed,
                PrimalityStatus::Disproved(w) => {
                    return Err(Error::InvalidChain(format!(
                        "level {i} {p} is not prime: {w}"
                    )));
                }
                st => st,
            };
            statuses.push(st);
        }
        Ok(PrimeChain {
            ring: ring.clone(),
            levels,
            statuses,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn levels(&self) -> &[Ideal] {
        &self.levels
    }

    pub fn statuses(&self) -> &[PrimalityStatus] {
        &self.statuses
    }

    /// Number of strict steps, `r`.
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }
}

impl fmt::Display for PrimeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.levels.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn first_outside(a: &Ideal, b: &Ideal) -> Result<Option<Polynomial>> {
    let gb = b.canonical_basis();
    for g in a.generators() {
        if g.ring() != b.ring() {
            return Err(crate::poly::PolyError::RingMismatch.into());
        }
        if !gb.contains(g) {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// A failed per-level check, with the data that shows it.
#[derive(Clone, Debug, PartialEq)]
pub enum ChainFailure {
    UnitIdeal {
        level: usize,
    },
    /// A generator of `q_{level−1}` outside `q_level`.
    ContainmentFailure {
        level: usize,
        generator: Polynomial,
    },
    NotStrict {
        level: usize,
    },
    /// A generator of `p_level·B` outside `q_level`.
    ExtensionNotContained {
        level: usize,
        generator: Polynomial,
    },
    ContractionMismatch {
        level: usize,
        expected: String,
        found: String,
    },
}

impl fmt::Display for ChainFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainFailure::UnitIdeal { level } => write!(f, "level {level}: unit ideal"),
            ChainFailure::ContainmentFailure { level, generator } => {
                write!(
                    f,
                    "level {level}: previous generator {generator} not contained"
                )
            }
            ChainFailure::NotStrict { level } => {
                write!(f, "level {level}: equal to previous level")
            }
            ChainFailure::ExtensionNotContained { level, generator } => {
                write!(
                    f,
                    "level {level}: extension generator {generator} not contained"
                )
            }
            ChainFailure::ContractionMismatch {
                level,
                expected,
                found,
            } => {
                write!(
                    f,
                    "level {level}: contraction {found} differs from {expected}"
                )
            }
        }
    }
}

/// Evidence that `φ⁻¹(q) = p` at one level: both reduced bases.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionTranscript {
    pub level: usize,
    pub expected: Vec<Polynomial>,
    pub contraction: Vec<Polynomial>,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub failures: Vec<ChainFailure>,
    pub contractions: Vec<ContractionTranscript>,
    pub statuses: Vec<PrimalityStatus>,
}

impl ChainReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Per level: containment and strictness over the previous level, `p·B ⊆ q`,
/// `φ⁻¹(q) = p`, properness; primality statuses are reported.
pub fn verify_chain(
    map: &RingMap,
    source: &PrimeChain,
    target: &PrimeChain,
) -> Result<ChainReport> {
    verify_chain_ideals(map, source.levels(), target.levels())
}

/// [`verify_chain`] on bare ideal lists, for chains that would not pass
/// [`PrimeChain`] construction.
pub fn verify_chain_ideals(
    map: &RingMap,
    source: &[Ideal],
    target: &[Ideal],
) -> Result<ChainReport> {
    if source.len() != target.len() {
        return Err(Error::LengthMismatch {
            source_len: source.len(),
            target_len: target.len(),
        });
    }
    let mut failures = Vec::new();
    let mut contractions = Vec::new();
    let mut statuses = Vec::new();
    for (level, (p, q)) in source.iter().zip(target).enumerate() {
        if q.ring() != map.target().ambient() || p.ring() != map.source().ambient() {
            return Err(crate::poly::PolyError::RingMismatch.into());
        }
        let q = map.target().lift_ideal(q)?;
        if q.is_unit() {
            failures.push(ChainFailure::UnitIdeal { level });
        }
        if level > 0 {
            let prev = &target[level - 1];
            match first_outside(prev, &q)? {
                Some(generator) => {
                    failures.push(ChainFailure::ContainmentFailure { level, generator })
                }
                None => {
                    if map.target().lift_ideal(prev)?.equals(&q)? {
                        failures.push(ChainFailure::NotStrict { level });
                    }
                }
            }
        }
        let ext = map.extend(p)?;
        if let Some(generator) = first_outside(&ext, &q)? {
            failures.push(ChainFailure::ExtensionNotContained { level, generator });
        }
        let c = map.contract(&q)?;
        let expected = map.source().lift_ideal(p)?;
        let equal = c.equals(&expected)?;
        if !equal {
            failures.push(ChainFailure::ContractionMismatch {
                level,
                expected: expected.canonical().to_string(),
                found: c.canonical().to_string(),
            });
        }
        contractions.push(ContractionTranscript {
            level,
            expected: expected.canonical().generators().to_vec(),
            contraction: c.canonical().generators().to_vec(),
            equal,
        });
        statuses.push(match q.primality() {
            PrimalityStatus::Unknown => PrimalityStatus::Assumed,
            st => st,
        });
    }
    Ok(ChainReport {
        failures,
        contractions,
        statuses,
    })
}

use std::fmt;

use super::ladder::{LadderSpec, MultiplicativeSetFG};
use super::obstruction::{obstruction_search, ObstructionOutcome};
use super::prime_chain::{verify_chain, ContractionTranscript, PrimeChain};
use crate::error::{Error, Result};
use crate::ideal::{Ideal, PrimalityStatus};
use crate::poly::Polynomial;
use crate::ringmap::RingMap;

/// Source variables outside `p`; `[1]` when every variable lies in `p`.
pub fn default_witnesses(map: &RingMap, p: &Ideal) -> Result<Vec<Polynomial>> {
    let ring = map.source().ambient();
    let p = map.source().lift_ideal(p)?;
    let mut out = Vec::new();
    for v in 0..ring.nvars() {
        let x = Polynomial::var(ring, v);
        if !p.contains(&x)? {
            out.push(x);
        }
    }
    if out.is_empty() {
        out.push(Polynomial::one(ring));
    }
    Ok(out)
}

/// The ladder `a₀ = q₀`, `aᵢ = q₀ + pᵢ·B`, `Fᵢ = ⟨φ(g) : g ∈ witnesses[i]⟩`.
pub fn extendability_ladder(
    map: &RingMap,
    q0: &Ideal,
    source: &PrimeChain,
    witnesses: Option<&[Vec<Polynomial>]>,
) -> Result<LadderSpec> {
    let levels = source.levels();
    let defaults;
    let witnesses = match witnesses {
        Some(w) => w,
        None => {
            defaults = levels
                .iter()
                .map(|p| default_witnesses(map, p))
                .collect::<Result<Vec<_>>>()?;
            &defaults[..]
        }
    };
    if witnesses.len() != levels.len() {
        return Err(Error::LengthMismatch {
            source_len: levels.len(),
            target_len: witnesses.len(),
        });
    }
    let b = map.target();
    let q0 = b.lift_ideal(q0)?;
    let mut ideals = Vec::with_capacity(levels.len());
    let mut msets = Vec::with_capacity(levels.len());
    for (i, (p, ws)) in levels.iter().zip(witnesses).enumerate() {
        let p_full = map.source().lift_ideal(p)?;
        let mut images = Vec::with_capacity(ws.len());
        for g in ws {
            if p_full.contains(g)? {
                return Err(Error::WitnessNotOutside {
                    level: i,
                    witness: g.to_string(),
                    ideal: p.to_string(),
                });
            }
            images.push(map.apply(g)?);
        }
        msets.push(MultiplicativeSetFG::new(b.ambient(), images)?);
        ideals.push(if i == 0 {
            q0.clone()
        } else {
            q0.sum(&map.extend(p)?)?
        });
    }
    LadderSpec::new(b.ambient(), ideals, msets)
}

/// Can `q₀` start a chain over `source`? Runs the obstruction search on
/// [`extendability_ladder`].
pub fn extendability_test(
    map: &RingMap,
    q0: &Ideal,
    source: &PrimeChain,
    witnesses: Option<&[Vec<Polynomial>]>,
    bound: u32,
) -> Result<ObstructionOutcome> {
    Ok(obstruction_search(
        &extendability_ladder(map, q0, source, witnesses)?,
        bound,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateVerdict {
    Accepted,
    ContractionMismatch,
    /// Does not strictly contain the previous level.
    NotAbovePrevious,
    NotPrime,
}

impl fmt::Display for CandidateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CandidateVerdict::Accepted => "accepted",
            CandidateVerdict::ContractionMismatch => "contraction mismatch",
            CandidateVerdict::NotAbovePrevious => "not above previous level",
            CandidateVerdict::NotPrime => "not prime",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub ideal: Ideal,
    pub status: PrimalityStatus,
    pub contraction: Ideal,
    pub verdict: CandidateVerdict,
}

fn push_unique(pool: &mut Vec<Ideal>, i: Ideal) -> Result<()> {
    for q in pool.iter() {
        if q.equals(&i)? {
            return Ok(());
        }
    }
    pool.push(i);
    Ok(())
}

/// Candidates for the level over `p`: minimal primes of `base = previous + p·B`
/// and of `base : φ(w)^∞` for each witness `w`, plus `hints`; sorted by
/// generator count, then printed form, each with its verdict.
pub fn candidate_pool(
    map: &RingMap,
    p: &Ideal,
    previous: Option<&Ideal>,
    witnesses: &[Polynomial],
    hints: &[Ideal],
) -> Result<Vec<Candidate>> {
    let b = map.target();
    let base = match previous {
        Some(q) => b.lift_ideal(q)?.sum(&map.extend(p)?)?,
        None => map.extend(p)?,
    };
    let mut parts = vec![base.clone()];
    for w in witnesses {
        let image = map.apply(w)?;
        if image.is_zero() || image.is_constant() {
            continue;
        }
        parts.push(base.saturate(&image)?);
    }
    let mut pool: Vec<Ideal> = Vec::new();
    for part in &parts {
        for prime in part.minimal_primes().primes {
            push_unique(&mut pool, prime)?;
        }
    }
    for h in hints {
        push_unique(&mut pool, b.lift_ideal(h)?.canonical())?;
    }
    pool.sort_by_cached_key(|q| (q.generators().len(), q.to_string()));

    let expected = map.source().lift_ideal(p)?;
    let mut out = Vec::with_capacity(pool.len());
    for q in pool {
        let status = match q.primality() {
            PrimalityStatus::Unknown => PrimalityStatus::Assumed,
            st => st,
        };
        let contraction = map.contract(&q)?.canonical();
        let verdict = if status.is_disproved() {
            CandidateVerdict::NotPrime
        } else if match previous {
            Some(prev) => {
                let prev = b.lift_ideal(prev)?;
                !prev.is_subset_of(&q)? || prev.equals(&q)?
            }
            None => false,
        } {
            CandidateVerdict::NotAbovePrevious
        } else if !contraction.equals(&expected)? {
            CandidateVerdict::ContractionMismatch
        } else {
            CandidateVerdict::Accepted
        };
        out.push(Candidate {
            ideal: q,
            status,
            contraction,
            verdict,
        });
    }
    Ok(out)
}

/// One explored pool.
#[derive(Clone, Debug)]
pub struct LevelPool {
    pub level: usize,
    pub previous: Option<Ideal>,
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub map: RingMap,
    pub source: PrimeChain,
    pub target: PrimeChain,
    pub transcripts: Vec<ContractionTranscript>,
    pub pools: Vec<LevelPool>,
    /// The obstruction search from `q₀` over the source chain with default
    /// witnesses; a found lift must not be obstructed.
    pub consistency: ObstructionOutcome,
}

/// Every explored pool, for a search that found nothing. Not a proof that
/// no lift exists.
#[derive(Clone, Debug)]
pub struct LiftReport {
    pub pools: Vec<LevelPool>,
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Lifted(Box<LiftResult>),
    NotFound(LiftReport),
}

impl LiftOutcome {
    pub fn lifted(&self) -> Option<&LiftResult> {
        match self {
            LiftOutcome::Lifted(l) => Some(l),
            LiftOutcome::NotFound(_) => None,
        }
    }
}

const MAX_POOLS: usize = 256;

/// Depth-first search for `q₀ ⊂ … ⊂ q_r` with `φ⁻¹(qᵢ) = pᵢ`, trying
/// candidates in pool order. `bound` is used for the closing consistency
/// check with [`extendability_test`].
pub fn lift_chain(
    map: &RingMap,
    source: &PrimeChain,
    hints: &[Ideal],
    bound: u32,
) -> Result<LiftOutcome> {
    if source.ring() != map.source().ambient() {
        return Err(crate::poly::PolyError::RingMismatch.into());
    }
    let witnesses = source
        .levels()
        .iter()
        .map(|p| default_witnesses(map, p))
        .collect::<Result<Vec<_>>>()?;
    let mut pools = Vec::new();
    let mut chosen: Vec<Ideal> = Vec::new();
    if !descend(map, source, &witnesses, hints, &mut chosen, &mut pools)? {
        return Ok(LiftOutcome::NotFound(LiftReport { pools }));
    }
    let target = PrimeChain::new(map.target().ambient(), chosen)?;
    let report = verify_chain(map, source, &target)?;
    assert!(
        report.is_ok(),
        "lifted chain failed verification: {:?}",
        report.failures
    );
    let consistency =
        extendability_test(map, &target.levels()[0], source, Some(&witnesses), bound)?;
    Ok(LiftOutcome::Lifted(Box::new(LiftResult {
        map: map.clone(),
        source: source.clone(),
        target,
        transcripts: report.contractions,
        pools,
        consistency,
    })))
}

fn descend(
    map: &RingMap,
    source: &PrimeChain,
    witnesses: &[Vec<Polynomial>],
    hints: &[Ideal],
    chosen: &mut Vec<Ideal>,
    pools: &mut Vec<LevelPool>,
) -> Result<bool> {
    let level = chosen.len();
    if level == source.levels().len() {
        return Ok(true);
    }
    if pools.len() >= MAX_POOLS {
        return Ok(false);
    }
    let previous = chosen.last().cloned();
    let candidates = candidate_pool(
        map,
        &source.levels()[level],
        previous.as_ref(),
        &witnesses[level],
        hints,
    )?;
    let accepted: Vec<Ideal> = candidates
        .iter()
        .filter(|c| c.verdict == CandidateVerdict::Accepted)
        .map(|c| c.ideal.clone())
        .collect();
    pools.push(LevelPool {
        level,
        previous,
        candidates,
    });
    for q in accepted {
        chosen.push(q);
        if descend(map, source, witnesses, hints, chosen, pools)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Lengths of the source chain and its lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLengthReport {
    pub source_length: usize,
    pub target_length: usize,
}

impl fmt::Display for ChainLengthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "source chain length {}, lifted chain length {} (target dimension is at least {})",
            self.source_length, self.target_length, self.source_length
        )
    }
}

pub fn chain_length_report(lift: &LiftResult) -> ChainLengthReport {
    ChainLengthReport {
        source_length: lift.source.length(),
        target_length: lift.target.length(),
    }
}

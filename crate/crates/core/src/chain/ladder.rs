use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{PolyError, Polynomial, Ring};

/// The monoid generated by finitely many nonzero elements (always holds 1).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativeSetFG {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl MultiplicativeSetFG {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<MultiplicativeSetFG> {
        if gens.is_empty() {
            return Err(Error::InvalidLadder(
                "a multiplicative set needs at least one generator".into(),
            ));
        }
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(PolyError::RingMismatch.into());
        }
        if gens.iter().any(Polynomial::is_zero) {
            return Err(Error::ZeroElement);
        }
        Ok(MultiplicativeSetFG {
            ring: ring.clone(),
            gens,
        })
    }

    /// `{1}`.
    pub fn trivial(ring: &Ring) -> MultiplicativeSetFG {
        MultiplicativeSetFG {
            ring: ring.clone(),
            gens: vec![Polynomial::one(ring)],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// `∏ gᵢ^{eᵢ}`.
    pub fn element(&self, exponents: &[u32]) -> Result<Polynomial> {
        if exponents.len() != self.gens.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.gens.len(),
                found: exponents.len(),
            }
            .into());
        }
        Ok(self
            .gens
            .iter()
            .zip(exponents)
            .filter(|(_, &e)| e > 0)
            .fold(Polynomial::one(&self.ring), |acc, (g, &e)| &acc * &g.pow(e)))
    }
}

impl fmt::Display for MultiplicativeSetFG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Ideals `a₀, …, a_r` and multiplicative sets `F₀, …, F_r` of one ring.
/// The set after the last level is `{1}`.
#[derive(Clone, Debug)]
pub struct LadderSpec {
    ring: Ring,
    ideals: Vec<Ideal>,
    msets: Vec<MultiplicativeSetFG>,
}

impl LadderSpec {
    pub fn new(
        ring: &Ring,
        ideals: Vec<Ideal>,
        msets: Vec<MultiplicativeSetFG>,
    ) -> Result<LadderSpec> {
        if ideals.is_empty() {
            return Err(Error::InvalidLadder(
                "a ladder needs at least one level".into(),
            ));
        }
        if ideals.len() != msets.len() {
            return Err(Error::InvalidLadder(format!(
                "{} ideals but {} multiplicative sets",
                ideals.len(),
                msets.len()
            )));
        }
        if ideals.iter().any(|i| i.ring() != ring) || msets.iter().any(|m| m.ring() != ring) {
            return Err(PolyError::RingMismatch.into());
        }
        Ok(LadderSpec {
            ring: ring.clone(),
            ideals,
            msets,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Index of the last level.
    pub fn r(&self) -> usize {
        self.ideals.len() - 1
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn msets(&self) -> &[MultiplicativeSetFG] {
        &self.msets
    }

    pub(crate) fn check_picks(&self, picks: &[Vec<u32>]) -> Result<()> {
        if picks.len() != self.ideals.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.ideals.len(),
                found: picks.len(),
            }
            .into());
        }
        for (m, p) in self.msets.iter().zip(picks) {
            if p.len() != m.gens.len() {
                return Err(PolyError::ArityMismatch {
                    expected: m.gens.len(),
                    found: p.len(),
                }
                .into());
            }
        }
        Ok(())
    }

    /// `f₀, …, f_r` for the given exponent vectors.
    pub fn pick_elements(&self, picks: &[Vec<u32>]) -> Result<Vec<Polynomial>> {
        self.check_picks(picks)?;
        self.msets
            .iter()
            .zip(picks)
            .map(|(m, p)| m.element(p))
            .collect()
    }

    /// `1, f₀, f₁f₀, …, f_{r−1}⋯f₀`.
    pub(crate) fn prefix_products(&self, elements: &[Polynomial]) -> Vec<Polynomial> {
        let mut out = Vec::with_capacity(self.ideals.len());
        let mut acc = Polynomial::one(&self.ring);
        for f in elements.iter().take(self.ideals.len()) {
            out.push(acc.clone());
            acc = &acc * f;
        }
        out
    }

    /// Generators of the telescoped ideal, level-major, one per
    /// `(level, generator of aᵢ)`.
    pub(crate) fn telescoped_generators(&self, prefixes: &[Polynomial]) -> Vec<Polynomial> {
        self.ideals
            .iter()
            .zip(prefixes)
            .flat_map(|(a, pre)| a.generators().iter().map(move |g| pre * g))
            .collect()
    }
}

/// `a₀ + f₀·a₁ + f₁f₀·a₂ + … + f_{r−1}⋯f₀·a_r`.
pub fn telescoped_ideal(ladder: &LadderSpec, picks: &[Vec<u32>]) -> Result<Ideal> {
    let elements = ladder.pick_elements(picks)?;
    let prefixes = ladder.prefix_products(&elements);
    Ideal::new(ladder.ring(), ladder.telescoped_generators(&prefixes))
}

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use super::ladder::LadderSpec;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, extended_reduce, GroebnerBasis};
use crate::poly::{MonomialOrder, Polynomial};

/// Picks `f₀, …, f_r` with the combination coefficients proving
/// `f_r⋯f₀ ∈ a₀ + f₀·a₁ + … + f_{r−1}⋯f₀·a_r`.
///
/// `coefficients[i][k]` multiplies `f_{i−1}⋯f₀ · (generator k of aᵢ)`.
#[derive(Clone, Debug)]
pub struct ObstructionCertificate {
    ladder: LadderSpec,
    picks: Vec<Vec<u32>>,
    coefficients: Vec<Vec<Polynomial>>,
}

impl ObstructionCertificate {
    /// Checks shapes only; use [`verify_certificate`] for the identity.
    pub fn new(
        ladder: LadderSpec,
        picks: Vec<Vec<u32>>,
        coefficients: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        ladder
            .check_picks(&picks)
            .map_err(|e| Error::InvalidCertificate(e.to_string()))?;
        if coefficients.len() != ladder.ideals().len() {
            return Err(Error::InvalidCertificate(format!(
                "{} coefficient rows for {} levels",
                coefficients.len(),
                ladder.ideals().len()
            )));
        }
        for (i, (row, a)) in coefficients.iter().zip(ladder.ideals()).enumerate() {
            if row.len() != a.generators().len() {
                return Err(Error::InvalidCertificate(format!(
                    "level {i}: {} coefficients for {} generators",
                    row.len(),
                    a.generators().len()
                )));
            }
            if row.iter().any(|c| c.ring() != ladder.ring()) {
                return Err(Error::InvalidCertificate(format!(
                    "level {i}: coefficient in another ring"
                )));
            }
        }
        Ok(ObstructionCertificate {
            ladder,
            picks,
            coefficients,
        })
    }

    pub fn ladder(&self) -> &LadderSpec {
        &self.ladder
    }

    pub fn picks(&self) -> &[Vec<u32>] {
        &self.picks
    }

    pub fn coefficients(&self) -> &[Vec<Polynomial>] {
        &self.coefficients
    }

    /// `f₀, …, f_r`.
    pub fn elements(&self) -> Vec<Polynomial> {
        self.ladder
            .pick_elements(&self.picks)
            .expect("shape checked at construction")
    }

    /// `f_r⋯f₀`.
    pub fn lhs(&self) -> Polynomial {
        self.elements()
            .iter()
            .fold(Polynomial::one(self.ladder.ring()), |acc, f| &acc * f)
    }

    /// `αᵢ = Σₖ cᵢₖ·gᵢₖ ∈ aᵢ`.
    pub fn alphas(&self) -> Vec<Polynomial> {
        let ring = self.ladder.ring();
        self.ladder
            .ideals()
            .iter()
            .zip(&self.coefficients)
            .map(|(a, row)| {
                a.generators()
                    .iter()
                    .zip(row)
                    .fold(Polynomial::zero(ring), |acc, (g, c)| &acc + &(c * g))
            })
            .collect()
    }

    /// `Σᵢ f_{i−1}⋯f₀ · αᵢ`.
    pub fn rhs(&self) -> Polynomial {
        let prefixes = self.ladder.prefix_products(&self.elements());
        self.alphas()
            .iter()
            .zip(&prefixes)
            .fold(Polynomial::zero(self.ladder.ring()), |acc, (a, p)| {
                &acc + &(a * p)
            })
    }

    /// SHA-256 over the canonical text of everything the replay reads.
    pub fn identity_hash(&self) -> String {
        let ring = self.ladder.ring();
        let mut h = Sha256::new();
        h.update(format!(
            "ring:{};char:{}\n",
            ring.vars().join(","),
            ring.characteristic()
        ));
        h.update(format!("lhs:{}\n", self.lhs().to_canonical_string()));
        let prefixes = self.ladder.prefix_products(&self.elements());
        for (i, (a, row)) in self
            .ladder
            .ideals()
            .iter()
            .zip(&self.coefficients)
            .enumerate()
        {
            for (k, (g, c)) in a.generators().iter().zip(row).enumerate() {
                h.update(format!(
                    "term:{i}:{k}:{}|{}|{}\n",
                    c.to_canonical_string(),
                    prefixes[i].to_canonical_string(),
                    g.to_canonical_string()
                ));
            }
        }
        hex::encode(h.finalize())
    }

    /// A copy with one coefficient replaced.
    pub fn with_coefficient(&self, level: usize, index: usize, c: Polynomial) -> Result<Self> {
        let mut coefficients = self.coefficients.clone();
        let slot = coefficients
            .get_mut(level)
            .and_then(|row| row.get_mut(index))
            .ok_or_else(|| {
                Error::InvalidCertificate(format!("no coefficient ({level}, {index})"))
            })?;
        *slot = c;
        ObstructionCertificate::new(self.ladder.clone(), self.picks.clone(), coefficients)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateCheck {
    Valid,
    /// `LHS − RHS`, nonzero.
    IdentityFails(Polynomial),
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateCheck::Valid)
    }
}

impl fmt::Display for CertificateCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateCheck::Valid => f.write_str("identity holds"),
            CertificateCheck::IdentityFails(d) => write!(f, "identity fails, lhs - rhs = {d}"),
        }
    }
}

/// Replays the identity with exact arithmetic; no Gröbner bases involved.
pub fn verify_certificate(cert: &ObstructionCertificate) -> CertificateCheck {
    let diff = &cert.lhs() - &cert.rhs();
    if diff.is_zero() {
        CertificateCheck::Valid
    } else {
        CertificateCheck::IdentityFails(diff)
    }
}

#[derive(Clone, Debug)]
pub enum ObstructionOutcome {
    Obstructed(ObstructionCertificate),
    /// No pick with every exponent ≤ the bound works. Says nothing about
    /// larger exponents.
    NoObstructionUpToBound(u32),
}

impl ObstructionOutcome {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, ObstructionOutcome::Obstructed(_))
    }

    pub fn certificate(&self) -> Option<&ObstructionCertificate> {
        match self {
            ObstructionOutcome::Obstructed(c) => Some(c),
            ObstructionOutcome::NoObstructionUpToBound(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads per degree layer; 1 runs inline.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 1 }
    }
}

/// All vectors of length `n` with entries in `0..=max` summing to `total`,
/// in ascending lexicographic order.
pub(crate) fn exponent_layer(n: usize, max: u32, total: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, max: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots_after = (n - cur.len() - 1) as u32;
        let lo = left.saturating_sub(slots_after * max);
        for e in lo..=max.min(left) {
            cur.push(e);
            go(n, max, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, total, &mut Vec::with_capacity(n), &mut out);
    out
}

fn split_levels(ladder: &LadderSpec, flat: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(ladder.msets().len());
    let mut at = 0;
    for m in ladder.msets() {
        let n = m.generators().len();
        out.push(flat[at..at + n].to_vec());
        at += n;
    }
    out
}

struct Searcher<'a> {
    ladder: &'a LadderSpec,
    prefix_len: usize,
    cache: Mutex<HashMap<Vec<u32>, Arc<GroebnerBasis>>>,
}

impl Searcher<'_> {
    fn basis_for(&self, flat: &[u32], prefixes: &[Polynomial]) -> Arc<GroebnerBasis> {
        let key = flat[..self.prefix_len].to_vec();
        if let Some(gb) = self.cache.lock().expect("search cache poisoned").get(&key) {
            return gb.clone();
        }
        let gens = self.ladder.telescoped_generators(prefixes);
        let gb = Arc::new(
            buchberger(self.ladder.ring(), &gens, MonomialOrder::GrevLex, false).expect("one ring"),
        );
        self.cache
            .lock()
            .expect("search cache poisoned")
            .entry(key)
            .or_insert(gb)
            .clone()
    }

    fn hits(&self, flat: &[u32]) -> bool {
        let picks = split_levels(self.ladder, flat);
        let elements = self
            .ladder
            .pick_elements(&picks)
            .expect("well-formed picks");
        let prefixes = self.ladder.prefix_products(&elements);
        let lhs = elements
            .iter()
            .fold(Polynomial::one(self.ladder.ring()), |acc, f| &acc * f);
        self.basis_for(flat, &prefixes).contains(&lhs)
    }

    fn certificate(&self, flat: &[u32]) -> ObstructionCertificate {
        let picks = split_levels(self.ladder, flat);
        let elements = self
            .ladder
            .pick_elements(&picks)
            .expect("well-formed picks");
        let prefixes = self.ladder.prefix_products(&elements);
        let lhs = elements
            .iter()
            .fold(Polynomial::one(self.ladder.ring()), |acc, f| &acc * f);
        let gens = self.ladder.telescoped_generators(&prefixes);
        let gb =
            buchberger(self.ladder.ring(), &gens, MonomialOrder::GrevLex, true).expect("one ring");
        let (rem, flat_coeffs) = extended_reduce(&lhs, &gb).expect("cofactors tracked");
        assert!(rem.is_zero(), "membership and extended reduction disagree");
        let mut rows = Vec::with_capacity(self.ladder.ideals().len());
        let mut it = flat_coeffs.into_iter();
        for a in self.ladder.ideals() {
            rows.push(it.by_ref().take(a.generators().len()).collect());
        }
        let cert =
            ObstructionCertificate::new(self.ladder.clone(), picks, rows).expect("shapes match");
        assert!(
            verify_certificate(&cert).is_valid(),
            "search produced a certificate that does not replay"
        );
        cert
    }
}

/// Looks for picks `fᵢ ∈ Fᵢ` (exponents ≤ `bound`) with `f_r⋯f₀` in the
/// telescoped ideal. Picks are tried by increasing exponent sum, then in
/// lexicographic order of the concatenated exponent vectors; the first hit
/// is returned.
pub fn obstruction_search(ladder: &LadderSpec, bound: u32) -> ObstructionOutcome {
    obstruction_search_with(ladder, bound, &SearchOptions::default())
}

/// [`obstruction_search`] with a worker pool per layer. The result is the
/// same certificate the sequential order would find.
pub fn obstruction_search_with(
    ladder: &LadderSpec,
    bound: u32,
    options: &SearchOptions,
) -> ObstructionOutcome {
    let n: usize = ladder.msets().iter().map(|m| m.generators().len()).sum();
    let last = ladder.msets().last().map_or(0, |m| m.generators().len());
    let searcher = Searcher {
        ladder,
        prefix_len: n - last,
        cache: Mutex::new(HashMap::new()),
    };
    let threads = options.threads.max(1);
    for total in 0..=(bound as usize * n) as u32 {
        let layer = exponent_layer(n, bound, total);
        let best = AtomicUsize::new(usize::MAX);
        if threads == 1 || layer.len() < 2 {
            if let Some(i) = layer.iter().position(|v| searcher.hits(v)) {
                best.store(i, Ordering::SeqCst);
            }
        } else {
            std::thread::scope(|s| {
                for w in 0..threads.min(layer.len()) {
                    let (layer, best, searcher) = (&layer, &best, &searcher);
                    s.spawn(move || {
                        for i in (w..layer.len()).step_by(threads) {
                            if i >= best.load(Ordering::SeqCst) {
                                break;
                            }
                            if searcher.hits(&layer[i]) {
                                best.fetch_min(i, Ordering::SeqCst);
                                break;
                            }
                        }
                    });
                }
            });
        }
        let i = best.load(Ordering::SeqCst);
        if i != usize::MAX {
            return ObstructionOutcome::Obstructed(searcher.certificate(&layer[i]));
        }
    }
    ObstructionOutcome::NoObstructionUpToBound(bound)
}

/// Elements witnessing `0 ∈ S₀` level by level:
/// `a₀ = f₀·s₁` and `bⱼ·sⱼ + aⱼ = fⱼ·sⱼ₊₁` for `j ≥ 1`, with `s_{r+1} = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionWitness {
    /// `s₁, …, s_r`.
    pub s: Vec<Polynomial>,
    /// `b₁, …, b_r`.
    pub b: Vec<Polynomial>,
    /// `a₀ ∈ a₀, …, a_r ∈ a_r`.
    pub a: Vec<Polynomial>,
}

/// Rebuilds the level-by-level witness from a certificate, with every
/// `bⱼ = 1`: `s_{r+1} = 1`, `sⱼ = fⱼ·sⱼ₊₁ − αⱼ`.
pub fn retelescope(cert: &ObstructionCertificate) -> RecursionWitness {
    let ring = cert.ladder.ring();
    let f = cert.elements();
    let alphas = cert.alphas();
    let r = cert.ladder.r();
    let mut s = vec![Polynomial::one(ring); r + 2];
    for j in (1..=r).rev() {
        s[j] = &(&f[j] * &s[j + 1]) - &alphas[j];
    }
    RecursionWitness {
        s: s[1..=r].to_vec(),
        b: vec![Polynomial::one(ring); r],
        a: alphas,
    }
}

/// Checks every step of a level-by-level witness.
#[allow(clippy::needless_range_loop)]
pub fn check_recursion(
    ladder: &LadderSpec,
    picks: &[Vec<u32>],
    w: &RecursionWitness,
) -> Result<()> {
    let r = ladder.r();
    if w.s.len() != r || w.b.len() != r || w.a.len() != r + 1 {
        return Err(Error::InvalidCertificate(
            "witness lengths do not match the ladder".into(),
        ));
    }
    let f = ladder.pick_elements(picks)?;
    let one = Polynomial::one(ladder.ring());
    let s_at = |j: usize| if j == r + 1 { &one } else { &w.s[j - 1] };
    for (i, (a, ideal)) in w.a.iter().zip(ladder.ideals()).enumerate() {
        if !ideal.contains(a)? {
            return Err(Error::InvalidCertificate(format!(
                "a_{i} = {a} is not in level {i}"
            )));
        }
    }
    if w.a[0] != &f[0] * s_at(1) {
        return Err(Error::InvalidCertificate("a_0 != f_0 * s_1".into()));
    }
    for j in 1..=r {
        if &(&w.b[j - 1] * s_at(j)) + &w.a[j] != &f[j] * s_at(j + 1) {
            return Err(Error::InvalidCertificate(format!("step {j} does not hold")));
        }
    }
    Ok(())
}

/// Multiplies the level equations together:
/// `f_r⋯f₀ = Σᵢ f_{i−1}⋯f₀ · (b_r⋯b_{i+1}·aᵢ)`, giving a certificate.
pub fn unroll(
    ladder: &LadderSpec,
    picks: &[Vec<u32>],
    w: &RecursionWitness,
) -> Result<ObstructionCertificate> {
    check_recursion(ladder, picks, w)?;
    let ring = ladder.ring();
    let r = ladder.r();
    let mut rows = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let tail = w.b[i..]
            .iter()
            .fold(Polynomial::one(ring), |acc, b| &acc * b);
        let alpha = &tail * &w.a[i];
        let row = ladder.ideals()[i]
            .contains_with_combination(&alpha)?
            .ok_or_else(|| Error::InvalidCertificate(format!("alpha_{i} outside level {i}")))?;
        rows.push(row);
    }
    let cert = ObstructionCertificate::new(ladder.clone(), picks.to_vec(), rows)?;
    debug_assert!(verify_certificate(&cert).is_valid());
    Ok(cert)
}

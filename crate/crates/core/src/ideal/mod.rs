//! Ideals of polynomial rings and the operations built on Gröbner bases.

mod factor;
mod primes;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, extended_reduce, GroebnerBasis};
use crate::poly::{MonomialOrder, PolyError, Polynomial, Ring};

pub use factor::IrreducibleBy;
pub use primes::{MinimalPrimes, PrimalityStatus, PrimalityWitness, PrimeReason};

type BasisCache = RwLock<HashMap<(MonomialOrder, bool), Arc<GroebnerBasis>>>;

/// An ideal given by generators, with a memo of Gröbner bases per order.
///
/// The memo is write-once per key; concurrent readers are fine and a basis
/// computed twice by racing threads is identical either way.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: BasisCache,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("basis cache poisoned").clone();
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(cache),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// Display order for canonical generator lists: lower degree first, then
/// larger grevlex leading monomial first.
pub(crate) fn display_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    let order = MonomialOrder::GrevLex;
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        match (a.leading_monomial(order), b.leading_monomial(order)) {
            (Some(x), Some(y)) => order.compare(y, x),
            _ => Ordering::Equal,
        }
    })
}

impl Ideal {
    /// The ideal generated by `gens`; zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(PolyError::RingMismatch.into());
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Parses each string as a generator.
    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|s| crate::poly::parse_poly(s.as_ref(), ring))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn check_ring(&self, f: &Polynomial) -> Result<()> {
        if f.ring() != &self.ring {
            return Err(PolyError::RingMismatch.into());
        }
        Ok(())
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if other.ring != self.ring {
            return Err(PolyError::RingMismatch.into());
        }
        Ok(())
    }

    fn basis_with(&self, order: MonomialOrder, cofactors: bool) -> Arc<GroebnerBasis> {
        if let Some(gb) = self
            .cache
            .read()
            .expect("basis cache poisoned")
            .get(&(order, cofactors))
        {
            return gb.clone();
        }
        let gb = Arc::new(
            buchberger(&self.ring, &self.gens, order, cofactors)
                .expect("generators share the ring"),
        );
        #[cfg(debug_assertions)]
        for g in &self.gens {
            debug_assert!(gb.contains(g), "cached basis must contain every generator");
        }
        let mut cache = self.cache.write().expect("basis cache poisoned");
        cache.entry((order, cofactors)).or_insert(gb).clone()
    }

    /// Reduced Gröbner basis under `order` (memoized).
    pub fn groebner(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self
            .cache
            .read()
            .expect("basis cache poisoned")
            .get(&(order, true))
        {
            return gb.clone();
        }
        self.basis_with(order, false)
    }

    /// Reduced Gröbner basis under `order` carrying cofactors (memoized).
    pub fn groebner_with_cofactors(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        self.basis_with(order, true)
    }

    /// The canonical basis used for equality and printing: reduced grevlex.
    pub fn canonical_basis(&self) -> Arc<GroebnerBasis> {
        self.groebner(MonomialOrder::GrevLex)
    }

    /// The same ideal generated by its canonical basis in display order.
    pub fn canonical(&self) -> Ideal {
        let gb = self.canonical_basis();
        let mut gens = gb.elements().to_vec();
        gens.sort_by(display_cmp);
        let ideal = Ideal::new(&self.ring, gens).expect("same ring");
        ideal
            .cache
            .write()
            .expect("basis cache poisoned")
            .insert((MonomialOrder::GrevLex, false), gb);
        ideal
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.canonical_basis().is_unit_ideal()
    }

    /// `f ∈ I`.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_ring(f)?;
        Ok(self.canonical_basis().contains(f))
    }

    /// `Some(c)` with `f = Σ cⱼ·gⱼ` over this ideal's generators when `f ∈ I`.
    pub fn contains_with_combination(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        self.check_ring(f)?;
        if !self.contains(f)? {
            return Ok(None);
        }
        let gb = self.groebner_with_cofactors(MonomialOrder::GrevLex);
        let (rem, coeffs) = extended_reduce(f, &gb)?;
        debug_assert!(rem.is_zero());
        Ok(Some(coeffs))
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        let gb = other.canonical_basis();
        Ok(self.gens.iter().all(|g| gb.contains(g)))
    }

    /// Equality of ideals via reduced grevlex bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.canonical_basis().elements() == other.canonical_basis().elements())
    }

    /// `I + J`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `I + (f₁, …)`.
    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `I·J`.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a * b))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// Embeds into a ring with `extra` fresh leading variables.
    fn aux_ring(&self, extra: &[&str]) -> (Ring, Vec<usize>) {
        let big = self.ring.prepend_fresh(extra);
        let map = (extra.len()..big.nvars()).collect();
        (big, map)
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let (big, map) = self.aux_ring(&["t"]);
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| &t * &g.map_vars(&big, &map))
            .collect();
        gens.extend(
            other
                .gens
                .iter()
                .map(|g| &one_minus_t * &g.map_vars(&big, &map)),
        );
        Ok(eliminate_into(&big, &gens, 1, &self.ring))
    }

    /// `I : f = {g : g·f ∈ I}`.
    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f)?;
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.exact_div(f).expect("elements of (f) are multiples of f"))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `I : f^∞` by eliminating `t` from `I + (1 − t·f)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f)?;
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let (big, map) = self.aux_ring(&["t"]);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.map_vars(&big, &map)).collect();
        gens.push(&Polynomial::one(&big) - &(&Polynomial::var(&big, 0) * &f.map_vars(&big, &map)));
        Ok(eliminate_into(&big, &gens, 1, &self.ring))
    }

    /// `I ∩ K[x_k, …]` as an ideal of the ring on the remaining variables.
    pub fn eliminate(&self, k: usize) -> Ideal {
        assert!(
            k <= self.ring.nvars(),
            "cannot eliminate more variables than the ring has"
        );
        let small = self.ring.drop_front(k);
        eliminate_into(&self.ring, &self.gens, k, &small)
    }

    /// `f ∈ √I`, via `1 ∈ I + (1 − t·f)`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_ring(f)?;
        let (big, map) = self.aux_ring(&["t"]);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.map_vars(&big, &map)).collect();
        gens.push(&Polynomial::one(&big) - &(&Polynomial::var(&big, 0) * &f.map_vars(&big, &map)));
        let gb = buchberger(&big, &gens, MonomialOrder::GrevLex, false)?;
        Ok(gb.is_unit_ideal())
    }

    /// Pattern-based primality.
    pub fn primality(&self) -> PrimalityStatus {
        primes::primality_status(self)
    }

    /// Minimal primes by recursive splitting; see [`MinimalPrimes`].
    pub fn minimal_primes(&self) -> MinimalPrimes {
        primes::minimal_primes_structured(self)
    }
}

/// Elements of the `Block(k)` basis of `gens` free of the first `k`
/// variables, moved into `target` (the ring on the remaining variables).
pub(crate) fn eliminate_into(big: &Ring, gens: &[Polynomial], k: usize, target: &Ring) -> Ideal {
    debug_assert_eq!(big.nvars() - k, target.nvars());
    let gb =
        buchberger(big, gens, MonomialOrder::Block(k), false).expect("generators share the ring");
    let map: Vec<usize> = (k..big.nvars()).collect();
    let kept = gb
        .elements()
        .iter()
        .filter_map(|g| g.pull_vars(target, &map))
        .collect();
    Ideal::new(target, kept).expect("target ring")
}

//! Oracles shared by the integration tests. They use plain linear algebra
//! over exact coefficients and never call Gröbner-basis code.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use chainlift::chain::{LadderSpec, MultiplicativeSetFG};
use chainlift::poly::parse_poly;
use chainlift::{Coeff, Ideal, Monomial, PolyRing, Polynomial, Ring};
use rand::Rng;

pub fn ring(vars: &[&str], characteristic: u32) -> Ring {
    PolyRing::new(vars, characteristic).unwrap()
}

pub fn poly(r: &Ring, s: &str) -> Polynomial {
    parse_poly(s, r).unwrap()
}

pub fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

pub fn mset(r: &Ring, gens: &[&str]) -> MultiplicativeSetFG {
    MultiplicativeSetFG::new(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
}

/// All exponent vectors in `n` variables of total degree ≤ `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

type Row = (usize, Vec<u32>);

/// Sparse vectors indexed by `(block, exponent)` with an echelon basis.
struct Echelon {
    characteristic: u32,
    rows: HashMap<Row, usize>,
    basis: BTreeMap<usize, BTreeMap<usize, Coeff>>,
}

impl Echelon {
    fn new(characteristic: u32) -> Self {
        Echelon {
            characteristic,
            rows: HashMap::new(),
            basis: BTreeMap::new(),
        }
    }

    fn vector(
        &mut self,
        entries: impl IntoIterator<Item = (Row, Coeff)>,
    ) -> BTreeMap<usize, Coeff> {
        let mut v: BTreeMap<usize, Coeff> = BTreeMap::new();
        for (row, c) in entries {
            let n = self.rows.len();
            let idx = *self.rows.entry(row).or_insert(n);
            let slot = v
                .entry(idx)
                .or_insert_with(|| Coeff::zero(self.characteristic));
            *slot = slot.add(&c);
        }
        v.retain(|_, c| !c.is_zero());
        v
    }

    fn reduce(&self, mut v: BTreeMap<usize, Coeff>) -> BTreeMap<usize, Coeff> {
        loop {
            let hit = v
                .iter()
                .find(|(k, _)| self.basis.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { return v };
            for (j, b) in &self.basis[&k] {
                let slot = v
                    .entry(*j)
                    .or_insert_with(|| Coeff::zero(self.characteristic));
                *slot = slot.sub(&c.mul(b));
            }
            v.retain(|_, c| !c.is_zero());
        }
    }

    fn insert(&mut self, v: BTreeMap<usize, Coeff>) {
        let v = self.reduce(v);
        if let Some((&k, c)) = v.iter().next() {
            let inv = c.inv().unwrap();
            let v: BTreeMap<usize, Coeff> = v.iter().map(|(j, x)| (*j, x.mul(&inv))).collect();
            self.basis.insert(k, v);
        }
    }

    fn spans(&self, v: BTreeMap<usize, Coeff>) -> bool {
        self.reduce(v).is_empty()
    }
}

fn entries(block: usize, p: &Polynomial, sign: &Coeff) -> Vec<(Row, Coeff)> {
    p.terms()
        .map(|(m, c)| ((block, m.exponents().to_vec()), c.mul(sign)))
        .collect()
}

fn shifted(p: &Polynomial, exps: &[u32]) -> Polynomial {
    p.mul_term(
        &Monomial::new(exps.to_vec()),
        &Coeff::one(p.ring().characteristic()),
    )
}

/// Whether `f = Σ cᵢ·gᵢ` with every `deg(cᵢ·gᵢ) ≤ d`.
pub fn bounded_member(gens: &[Polynomial], f: &Polynomial, d: u32) -> bool {
    let ring = f.ring().clone();
    let p = ring.characteristic();
    let one = Coeff::one(p);
    let mut e = Echelon::new(p);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().unwrap();
        if dg > d {
            continue;
        }
        for m in monomials_up_to(ring.nvars(), d - dg) {
            let v = e.vector(entries(0, &shifted(g, &m), &one));
            e.insert(v);
        }
    }
    let target = e.vector(entries(0, f, &one));
    e.spans(target)
}

/// Whether the recursion `f₀·s₁ ∈ a₀`, `f_j·s_{j+1} − s_j ∈ a_j`,
/// `s_{r+1} = 1` has a solution with `deg s_j ≤ d` and every ideal term of
/// degree ≤ d.
pub fn recursion_feasible(ideals: &[Ideal], picks: &[Polynomial], d: u32) -> bool {
    let ring = picks[0].ring().clone();
    let p = ring.characteristic();
    let one = Coeff::one(p);
    let minus = one.neg();
    let r = ideals.len() - 1;
    let mut e = Echelon::new(p);
    let mons = monomials_up_to(ring.nvars(), d);
    for j in 1..=r {
        for m in &mons {
            let s = Polynomial::term(&ring, Monomial::new(m.clone()), one.clone());
            let mut v = entries(j - 1, &(&picks[j - 1] * &s), &one);
            v.extend(entries(j, &s, &minus));
            let v = e.vector(v);
            e.insert(v);
        }
    }
    for (j, a) in ideals.iter().enumerate() {
        for g in a.generators().iter().filter(|g| !g.is_zero()) {
            let dg = g.total_degree().unwrap();
            if dg > d {
                continue;
            }
            for m in monomials_up_to(ring.nvars(), d - dg) {
                let v = e.vector(entries(j, &shifted(g, &m), &minus));
                e.insert(v);
            }
        }
    }
    let target = e.vector(entries(r, &picks[r], &minus));
    e.spans(target)
}

/// Elements `f_i` for flattened exponents, one slice per level.
pub fn pick_elements(ladder: &LadderSpec, exps: &[u32]) -> Vec<Polynomial> {
    let ring = ladder.ring();
    let mut at = 0;
    ladder
        .msets()
        .iter()
        .map(|m| {
            let mut f = Polynomial::one(ring);
            for g in m.generators() {
                f = &f * &g.pow(exps[at]);
                at += 1;
            }
            f
        })
        .collect()
}

/// Every flattened exponent vector with entries in `0..=bound`.
pub fn all_picks(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Oracle verdict for a ladder: some pick satisfies the recursion.
pub fn oracle_obstructed(ladder: &LadderSpec, bound: u32, d: u32) -> Option<Vec<u32>> {
    let n: usize = ladder.msets().iter().map(|m| m.generators().len()).sum();
    all_picks(n, bound)
        .into_iter()
        .find(|exps| recursion_feasible(ladder.ideals(), &pick_elements(ladder, exps), d))
}

pub fn random_poly(
    rng: &mut impl Rng,
    r: &Ring,
    max_deg: u32,
    max_terms: usize,
    homogeneous: bool,
) -> Polynomial {
    let p = r.characteristic();
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let mons = if homogeneous {
            monomials_up_to(r.nvars(), deg)
                .into_iter()
                .filter(|m| m.iter().sum::<u32>() == deg)
                .collect()
        } else {
            monomials_up_to(r.nvars(), deg)
        };
        let n = rng.gen_range(1..=max_terms);
        let terms = (0..n).map(|_| {
            let m = mons[rng.gen_range(0..mons.len())].clone();
            (Monomial::new(m), Coeff::from_i64(rng.gen_range(-3..=3), p))
        });
        let f = Polynomial::from_terms(r, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

fn nonconstant(
    rng: &mut impl Rng,
    r: &Ring,
    d: u32,
    terms: usize,
    homogeneous: bool,
) -> Polynomial {
    loop {
        let f = random_poly(rng, r, d, terms, homogeneous);
        if !f.is_constant() {
            return f;
        }
    }
}

/// A ladder with `r ≤ 2` in two variables: ideal generators of degree
/// ≤ 2, one nonconstant generator of degree ≤ 1 per multiplicative set.
/// Returns the ladder with an exponent bound in `0..=2`.
pub fn random_ladder(rng: &mut impl Rng, characteristic: u32) -> (LadderSpec, u32) {
    let r = ring(&["X", "Y"], characteristic);
    let levels = rng.gen_range(1..=3);
    let hom = rng.gen_bool(0.5);
    let ideals: Vec<Ideal> = (0..levels)
        .map(|_| {
            let n = rng.gen_range(1..=2);
            let gens = (0..n)
                .map(|_| {
                    let h = hom || rng.gen_bool(0.5);
                    nonconstant(rng, &r, 2, 3, h)
                })
                .collect();
            Ideal::new(&r, gens).unwrap()
        })
        .collect();
    let msets: Vec<MultiplicativeSetFG> = (0..levels)
        .map(|_| MultiplicativeSetFG::new(&r, vec![nonconstant(rng, &r, 1, 2, hom)]).unwrap())
        .collect();
    let bound = rng.gen_range(0..=2);
    (LadderSpec::new(&r, ideals, msets).unwrap(), bound)
}

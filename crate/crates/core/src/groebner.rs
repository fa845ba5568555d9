//! Multivariate division, Buchberger's algorithm and cofactor tracking.
//!
//! Everything here is deterministic: the division step always uses the first
//! divisor (in list order) whose leading monomial divides the current leading
//! term, and critical pairs are processed by ascending degree of their lcm,
//! ties broken by pair index.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MonomialOrder, PolyError, Polynomial, Ring};

/// Terms sorted ascending under a fixed order, so the leading term is last.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Row {
    terms: Vec<(Monomial, Coeff)>,
}

impl Row {
    pub(crate) fn zero() -> Row {
        Row { terms: Vec::new() }
    }

    pub(crate) fn from_poly(p: &Polynomial, order: MonomialOrder) -> Row {
        let mut terms: Vec<(Monomial, Coeff)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.compare(&a.0, &b.0));
        Row { terms }
    }

    fn monomial(m: Monomial, c: Coeff) -> Row {
        Row {
            terms: vec![(m, c)],
        }
    }

    pub(crate) fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub(crate) fn lead(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.last()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scale(&mut self, c: &Coeff) {
        for (_, d) in &mut self.terms {
            *d = d.mul(c);
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Coeff) -> Row {
        Row {
            terms: self
                .terms
                .iter()
                .map(|(n, d)| (n.mul(m), d.mul(c)))
                .collect(),
        }
    }

    /// `self -= c · m · other`.
    fn sub_scaled(&mut self, c: &Coeff, m: &Monomial, other: &Row, order: MonomialOrder) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let neg = c.neg();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(n, d)| (n.mul(m), d.mul(&neg)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                    std::cmp::Ordering::Less => out.push(a.next().unwrap()),
                    std::cmp::Ordering::Greater => out.push(b.next().unwrap()),
                    std::cmp::Ordering::Equal => {
                        let (mx, cx) = a.next().unwrap();
                        let (_, cy) = b.next().unwrap();
                        let s = cx.add(&cy);
                        if !s.is_zero() {
                            out.push((mx, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        self.terms = out;
    }
}

/// Cofactor bookkeeping attached to a row during reduction.
struct Tracking<'a> {
    own: &'a mut Vec<Row>,
    basis: &'a [Vec<Row>],
}

/// Reduces `p` by `basis` (full reduction), returning the remainder.
///
/// When `quotients` is given, `coef · t` is accumulated for the divisor used
/// at each step; when `tracking` is given, the cofactor vector of `p` is
/// updated alongside.
fn reduce_row(
    mut p: Row,
    basis: &[Row],
    order: MonomialOrder,
    mut quotients: Option<&mut Vec<Vec<(Monomial, Coeff)>>>,
    mut tracking: Option<Tracking<'_>>,
) -> Row {
    let mut rem_desc: Vec<(Monomial, Coeff)> = Vec::new();
    while let Some((m, c)) = p.terms.last().cloned() {
        let hit = basis
            .iter()
            .position(|g| g.lead().is_some_and(|(lm, _)| lm.divides(&m)));
        match hit {
            Some(i) => {
                let (lm, lc) = basis[i].lead().expect("nonzero divisor");
                let t = m.div(lm).expect("divisible");
                let coef = c.div(lc);
                p.sub_scaled(&coef, &t, &basis[i], order);
                debug_assert!(p
                    .terms
                    .last()
                    .is_none_or(|(n, _)| order.compare(n, &m).is_lt()));
                if let Some(q) = quotients.as_deref_mut() {
                    q[i].push((t.clone(), coef.clone()));
                }
                if let Some(tr) = tracking.as_mut() {
                    for (own, other) in tr.own.iter_mut().zip(&tr.basis[i]) {
                        own.sub_scaled(&coef, &t, other, order);
                    }
                }
            }
            None => rem_desc.push(p.terms.pop().expect("nonempty")),
        }
    }
    rem_desc.reverse();
    Row { terms: rem_desc }
}

/// Quotients and remainder of a multivariate division.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionResult {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Divides `f` by `divisors`: `f = Σ qᵢ·gᵢ + r` with no term of `r`
/// divisible by any leading monomial.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<DivisionResult> {
    let ring = f.ring();
    for g in divisors {
        if g.ring() != ring {
            return Err(PolyError::RingMismatch.into());
        }
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
    }
    let rows: Vec<Row> = divisors.iter().map(|g| Row::from_poly(g, order)).collect();
    let mut q: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); divisors.len()];
    let rem = reduce_row(Row::from_poly(f, order), &rows, order, Some(&mut q), None);
    Ok(DivisionResult {
        quotients: q
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect(),
        remainder: rem.to_poly(ring),
    })
}

/// A reduced Gröbner basis, optionally with the matrix expressing each
/// element through the original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    generators: Vec<Polynomial>,
    cofactors: Option<Vec<Vec<Polynomial>>>,
    rows: Vec<Row>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Monic elements sorted by ascending leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// The generator list the basis was computed from.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `cofactors()[i][j]` is the coefficient of generator `j` in element `i`.
    pub fn cofactors(&self) -> Option<&[Vec<Polynomial>]> {
        self.cofactors.as_deref()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.rows
            .iter()
            .map(|r| r.lead().expect("nonzero").0.clone())
            .collect()
    }

    /// Normal form of `f`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        assert!(f.ring() == &self.ring, "ring mismatch in reduce");
        reduce_row(
            Row::from_poly(f, self.order),
            &self.rows,
            self.order,
            None,
            None,
        )
        .to_poly(&self.ring)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }
}

fn lead_of(r: &Row) -> &Monomial {
    &r.lead().expect("basis rows are nonzero").0
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Zero generators are ignored (they still count as positions in the
/// cofactor matrix). An ideal generated by zeros has the empty basis.
pub fn buchberger(
    ring: &Ring,
    gens: &[Polynomial],
    order: MonomialOrder,
    track_cofactors: bool,
) -> Result<GroebnerBasis> {
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(PolyError::RingMismatch.into());
    }
    let ngens = gens.len();
    let mut basis: Vec<Row> = Vec::new();
    let mut cofs: Vec<Vec<Row>> = Vec::new();

    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut row = Row::from_poly(g, order);
        let inv = row.lead().unwrap().1.inv().expect("nonzero");
        row.scale(&inv);
        basis.push(row);
        if track_cofactors {
            let mut v = vec![Row::zero(); ngens];
            v[j] = Row::monomial(Monomial::one(ring.nvars()), inv);
            cofs.push(v);
        }
    }

    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |basis: &[Row],
                      k: usize,
                      queue: &mut BTreeSet<(u32, usize, usize)>,
                      pending: &mut HashSet<(usize, usize)>| {
        for i in 0..k {
            let d = lead_of(&basis[i]).lcm(lead_of(&basis[k])).degree();
            queue.insert((d, i, k));
            pending.insert((i, k));
        }
    };
    for k in 0..basis.len() {
        push_pairs(&basis, k, &mut queue, &mut pending);
    }

    let one = Coeff::one(ring.characteristic());
    while let Some((_, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        let (li, lj) = (lead_of(&basis[i]).clone(), lead_of(&basis[j]).clone());
        if li.is_coprime(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lead_of(&basis[k]).divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let ti = lcm.div(&li).unwrap();
        let tj = lcm.div(&lj).unwrap();
        let mut s = basis[i].mul_term(&ti, &one);
        s.sub_scaled(&one, &tj, &basis[j], order);
        let mut s_cof: Vec<Row> = Vec::new();
        if track_cofactors {
            s_cof = cofs[i].iter().map(|c| c.mul_term(&ti, &one)).collect();
            for (own, other) in s_cof.iter_mut().zip(&cofs[j]) {
                own.sub_scaled(&one, &tj, other, order);
            }
        }
        let tracking = track_cofactors.then(|| Tracking {
            own: &mut s_cof,
            basis: &cofs,
        });
        let mut r = reduce_row(s, &basis, order, None, tracking);
        if r.is_zero() {
            continue;
        }
        let inv = r.lead().unwrap().1.inv().expect("nonzero");
        r.scale(&inv);
        for c in &mut s_cof {
            c.scale(&inv);
        }
        basis.push(r);
        if track_cofactors {
            cofs.push(s_cof);
        }
        push_pairs(&basis, basis.len() - 1, &mut queue, &mut pending);
    }

    // minimal basis: drop elements whose leading monomial is a multiple of another's
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            let li = lead_of(&basis[i]);
            !(0..basis.len()).any(|k| {
                k != i && {
                    let lk = lead_of(&basis[k]);
                    lk.divides(li) && (lk != li || k < i)
                }
            })
        })
        .collect();
    let kept_rows: Vec<Row> = keep.iter().map(|&i| basis[i].clone()).collect();
    let kept_cofs: Vec<Vec<Row>> = if track_cofactors {
        keep.iter().map(|&i| cofs[i].clone()).collect()
    } else {
        Vec::new()
    };

    // interreduce tails
    let mut reduced: Vec<(Row, Vec<Row>)> = Vec::with_capacity(kept_rows.len());
    for idx in 0..kept_rows.len() {
        let others: Vec<Row> = kept_rows
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, r)| r.clone())
            .collect();
        let other_cofs: Vec<Vec<Row>> = if track_cofactors {
            kept_cofs
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, c)| c.clone())
                .collect()
        } else {
            Vec::new()
        };
        let mut own_cof = if track_cofactors {
            kept_cofs[idx].clone()
        } else {
            Vec::new()
        };
        let tracking = track_cofactors.then(|| Tracking {
            own: &mut own_cof,
            basis: &other_cofs,
        });
        let r = reduce_row(kept_rows[idx].clone(), &others, order, None, tracking);
        debug_assert_eq!(r.lead().map(|t| &t.0), kept_rows[idx].lead().map(|t| &t.0));
        reduced.push((r, own_cof));
    }
    reduced.sort_by(|a, b| order.compare(lead_of(&a.0), lead_of(&b.0)));

    let rows: Vec<Row> = reduced.iter().map(|(r, _)| r.clone()).collect();
    let elements: Vec<Polynomial> = rows.iter().map(|r| r.to_poly(ring)).collect();
    let cofactors = track_cofactors.then(|| {
        reduced
            .iter()
            .map(|(_, c)| c.iter().map(|r| r.to_poly(ring)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });

    let gb = GroebnerBasis {
        ring: ring.clone(),
        order,
        elements,
        generators: gens.to_vec(),
        cofactors,
        rows,
    };
    if cfg!(debug_assertions) {
        if let Some(cofs) = &gb.cofactors {
            for (e, row) in gb.elements.iter().zip(cofs) {
                let mut sum = Polynomial::zero(ring);
                for (c, g) in row.iter().zip(gens) {
                    sum = &sum + &(c * g);
                }
                debug_assert_eq!(&sum, e, "cofactor identity broken");
            }
        }
    }
    Ok(gb)
}

/// Remainder of `f` modulo `gb` and a combination over the original
/// generators with `f = Σ cⱼ·generatorⱼ + remainder`.
pub fn extended_reduce(
    f: &Polynomial,
    gb: &GroebnerBasis,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    let cofs = gb.cofactors.as_ref().ok_or(Error::MissingCofactors)?;
    if f.ring() != &gb.ring {
        return Err(PolyError::RingMismatch.into());
    }
    let ring = &gb.ring;
    let mut q: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); gb.rows.len()];
    let rem = reduce_row(
        Row::from_poly(f, gb.order),
        &gb.rows,
        gb.order,
        Some(&mut q),
        None,
    )
    .to_poly(ring);
    let mut combo = vec![Polynomial::zero(ring); gb.generators.len()];
    for (qi, row) in q.into_iter().zip(cofs) {
        if qi.is_empty() {
            continue;
        }
        let qi = Polynomial::from_terms(ring, qi);
        for (c, cof) in combo.iter_mut().zip(row) {
            if !cof.is_zero() {
                *c = &*c + &(&qi * cof);
            }
        }
    }
    if cfg!(debug_assertions) {
        let mut sum = rem.clone();
        for (c, g) in combo.iter().zip(&gb.generators) {
            sum = &sum + &(c * g);
        }
        debug_assert_eq!(&sum, f, "extended_reduce identity broken");
    }
    Ok((rem, combo))
}

/// Shared handle used by the ideal cache.
pub type SharedBasis = Arc<GroebnerBasis>;

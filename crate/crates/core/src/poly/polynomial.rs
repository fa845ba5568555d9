use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::same_ring;
use super::{Coeff, Monomial, MonomialOrder, PolyError, Ring};

/// A polynomial with exact coefficients in a declared ring.
///
/// Terms are stored with nonzero coefficients only, so equality is
/// structural: two polynomials are equal iff their term maps agree.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, Coeff::one(ring.characteristic()))
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Polynomial {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Polynomial {
        Polynomial::constant(ring, ring.coeff(v))
    }

    pub fn var(ring: &Ring, index: usize) -> Polynomial {
        Polynomial::term(
            ring,
            Monomial::var(ring.nvars(), index),
            Coeff::one(ring.characteristic()),
        )
    }

    pub fn term(ring: &Ring, m: Monomial, c: Coeff) -> Polynomial {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(
        ring: &Ring,
        terms: I,
    ) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.ring.nvars());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in the canonical storage order (not a monomial order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> + '_ {
        self.terms.iter()
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff_of(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms.get(m)
    }

    pub fn constant_coeff(&self) -> Coeff {
        self.terms
            .get(&Monomial::one(self.ring.nvars()))
            .cloned()
            .unwrap_or_else(|| Coeff::zero(self.ring.characteristic()))
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    /// Indices of the variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.mul(c)))
                .collect(),
        }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, d)| (n.mul(m), d.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Reinterprets `self` in `ring`, sending variable `i` to `var_map[i]`.
    pub fn map_vars(&self, ring: &Ring, var_map: &[usize]) -> Polynomial {
        debug_assert_eq!(var_map.len(), self.ring.nvars());
        let n = ring.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[var_map[i]] += x;
            }
            (Monomial::new(e), c.clone())
        });
        Polynomial::from_terms(ring, terms)
    }

    /// Inverse of [`map_vars`](Self::map_vars) for polynomials that only use
    /// variables in the image of `var_map`; `None` otherwise.
    pub fn pull_vars(&self, ring: &Ring, var_map: &[usize]) -> Option<Polynomial> {
        let mut out = Polynomial::zero(ring);
        for (m, c) in &self.terms {
            let e = m.exponents();
            let used: u32 = var_map.iter().map(|&j| e[j]).sum();
            if used != m.degree() {
                return None;
            }
            out.add_term(Monomial::new(var_map.iter().map(|&j| e[j]).collect()), c);
        }
        Some(out)
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// images' ring.
    pub fn substitute(
        &self,
        target: &Ring,
        images: &[Polynomial],
    ) -> Result<Polynomial, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        if images.iter().any(|g| !same_ring(g.ring(), target)) {
            return Err(PolyError::RingMismatch);
        }
        if target.characteristic() != self.ring.characteristic() {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|g| vec![Polynomial::one(target), g.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() || self.check(d).is_err() {
            return None;
        }
        let order = MonomialOrder::GrevLex;
        let (lm, lc) = d.leading_term(order).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rest = self.clone();
        let mut q = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rest
            .leading_term(order)
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            let t = m.div(&lm)?;
            let coef = c.div(&lc);
            rest = &rest - &d.mul_term(&t, &coef);
            q.add_term(t, &coef);
        }
        Some(q)
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let ch = self.ring.characteristic();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                let k = e[var];
                e[var] -= 1;
                (Monomial::new(e), c.mul(&Coeff::from_i64(k as i64, ch)))
            });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Canonical printed form; terms descending in grevlex.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self
            .sorted_terms(MonomialOrder::GrevLex)
            .into_iter()
            .enumerate()
        {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, self.ring.vars(), m)?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("ring mismatch in multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Coeff::from_i64(-1, self.ring.characteristic()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};

    #[test]
    fn arithmetic_examples() {
        let r = PolyRing::new(&["X", "Y"], 0).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        assert!((&p("X") + &p("-X")).is_zero());
        assert_eq!(&p("X + Y") * &p("X - Y"), p("X^2 - Y^2"));
        let f2 = PolyRing::new(&["X", "Y"], 2).unwrap();
        let q = |s: &str| parse_poly(s, &f2).unwrap();
        assert_eq!(q("X + Y").pow(2), q("X^2 + Y^2"));
        assert_eq!(p("X").scale(&r.coeff(0)), p("0"));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = PolyRing::new(&["X", "Y"], 0).unwrap();
        let s = PolyRing::new(&["X", "Z"], 0).unwrap();
        let a = parse_poly("X", &r).unwrap();
        let b = parse_poly("X", &s).unwrap();
        assert_eq!(a.checked_add(&b), Err(PolyError::RingMismatch));
        assert_eq!(a.checked_mul(&b), Err(PolyError::RingMismatch));
    }

    #[test]
    fn printing_is_grevlex_descending() {
        let r = PolyRing::new(&["X", "Y", "Z"], 0).unwrap();
        let f = parse_poly("-1 + Z*Y^2 + 1/2*X - 3*X^2", &r).unwrap();
        assert_eq!(f.to_string(), "Y^2*Z - 3*X^2 + 1/2*X - 1");
        assert_eq!(parse_poly("-X", &r).unwrap().to_string(), "-X");
    }

    #[test]
    fn substitution_and_division() {
        let a = PolyRing::new(&["U", "V"], 0).unwrap();
        let b = PolyRing::new(&["X", "Y", "Z"], 0).unwrap();
        let images = vec![
            parse_poly("X*Z", &b).unwrap(),
            parse_poly("Y*Z", &b).unwrap(),
        ];
        let uv = parse_poly("U*V + 1", &a).unwrap();
        assert_eq!(
            uv.substitute(&b, &images).unwrap(),
            parse_poly("X*Y*Z^2 + 1", &b).unwrap()
        );
        let f = parse_poly("X^3 - Y^3", &b).unwrap();
        let d = parse_poly("X - Y", &b).unwrap();
        assert_eq!(
            f.exact_div(&d).unwrap(),
            parse_poly("X^2 + X*Y + Y^2", &b).unwrap()
        );
        assert!(f.exact_div(&parse_poly("X + Y", &b).unwrap()).is_none());
    }
}

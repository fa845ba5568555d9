//! A deliberately limited factorizer.
//!
//! It recognises a fixed list of shapes (monomial content, univariate
//! polynomials of degree ≤ 4, binomials that are differences of powers,
//! bivariate quadrics, and a few irreducible patterns) and answers
//! `Undecided` for everything else. Callers must treat `Undecided` as "no
//! information", never as irreducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{Coeff, Monomial, Polynomial, Ring};

/// Why a polynomial was recognised as irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibleBy {
    /// Total degree one.
    Linear,
    /// Degree one in some variable `W`, written `A·W + B` with `A` or `B` a
    /// nonzero constant (covers `Yᵃ·W − c`).
    LinearInVariable,
    /// `α·m₁ + β·m₂` with coprime monomials whose exponent difference is a
    /// primitive lattice vector.
    PrimitiveBinomial,
    /// Univariate of degree ≤ 4 without factors.
    Univariate,
    /// Bivariate of total degree 2 that does not split into linear factors.
    BivariateQuadric,
}

impl fmt::Display for IrreducibleBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibleBy::Linear => "linear",
            IrreducibleBy::LinearInVariable => "linear in one variable with coprime coefficients",
            IrreducibleBy::PrimitiveBinomial => "primitive binomial",
            IrreducibleBy::Univariate => "univariate without factors",
            IrreducibleBy::BivariateQuadric => "bivariate quadric without linear factors",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Irreducibility {
    Irreducible(IrreducibleBy),
    Reducible,
    Undecided,
}

fn monomial_content(g: &Polynomial) -> Monomial {
    let mut it = g.terms().map(|(m, _)| m.clone());
    let first = it.next().unwrap_or_else(|| Monomial::one(g.ring().nvars()));
    it.fold(first, |acc, m| acc.gcd(&m))
}

/// Splits `g = A·W + B` along a variable of degree one.
fn split_linear_var(g: &Polynomial, var: usize) -> (Polynomial, Polynomial) {
    let ring = g.ring();
    let mut a = Polynomial::zero(ring);
    let mut b = Polynomial::zero(ring);
    for (m, c) in g.terms() {
        if m.exponents()[var] == 1 {
            let mut e = m.exponents().to_vec();
            e[var] = 0;
            a = &a + &Polynomial::term(ring, Monomial::new(e), c.clone());
        } else {
            b = &b + &Polynomial::term(ring, m.clone(), c.clone());
        }
    }
    (a, b)
}

fn vec_gcd(v: &[i64]) -> u64 {
    v.iter().fold(0u64, |acc, &x| acc.gcd(&x.unsigned_abs()))
}

pub(crate) fn irreducibility(g: &Polynomial) -> Irreducibility {
    if g.is_constant() {
        return Irreducibility::Undecided;
    }
    let deg = g.total_degree().unwrap_or(0);
    if deg == 1 {
        return Irreducibility::Irreducible(IrreducibleBy::Linear);
    }
    if !monomial_content(g).is_one() {
        return Irreducibility::Reducible;
    }
    let vars = g.variables();
    for &w in &vars {
        if g.degree_in(w) == 1 {
            let (a, b) = split_linear_var(g, w);
            if a.is_unit() || b.is_unit() {
                return Irreducibility::Irreducible(IrreducibleBy::LinearInVariable);
            }
        }
    }
    if g.num_terms() == 2 {
        let ms: Vec<&Monomial> = g.terms().map(|(m, _)| m).collect();
        if ms[0].is_coprime(ms[1]) {
            let diff: Vec<i64> = ms[0]
                .exponents()
                .iter()
                .zip(ms[1].exponents())
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect();
            if vec_gcd(&diff) == 1 {
                return Irreducibility::Irreducible(IrreducibleBy::PrimitiveBinomial);
            }
        }
    }
    if vars.len() == 1 && deg <= 4 {
        let u = Univariate::from_poly(g, vars[0]);
        return match u.irreducibility() {
            Some(true) => Irreducibility::Irreducible(IrreducibleBy::Univariate),
            Some(false) => Irreducibility::Reducible,
            None => Irreducibility::Undecided,
        };
    }
    if vars.len() == 2 && deg == 2 {
        if let Some(q) = Quadric::from_poly(g, vars[0], vars[1]) {
            return match q.factor() {
                Some(QuadricSplit::Irreducible) => {
                    Irreducibility::Irreducible(IrreducibleBy::BivariateQuadric)
                }
                Some(QuadricSplit::Factors(..)) => Irreducibility::Reducible,
                None => Irreducibility::Undecided,
            };
        }
    }
    Irreducibility::Undecided
}

/// A nontrivial factorisation `g = a·b` with both factors non-constant, if
/// one of the recognised shapes applies.
pub(crate) fn split(g: &Polynomial) -> Option<(Polynomial, Polynomial)> {
    if g.is_constant() {
        return None;
    }
    let ring = g.ring();
    let content = monomial_content(g);
    if !content.is_one() && (g.num_terms() > 1 || content.degree() > 1) {
        let v = content
            .exponents()
            .iter()
            .position(|&e| e > 0)
            .expect("nonconstant content");
        let x = Polynomial::var(ring, v);
        let rest = g.exact_div(&x).expect("content divides");
        return Some((x, rest));
    }
    let vars = g.variables();
    let deg = g.total_degree().unwrap_or(0);
    if vars.len() == 1 && (2..=4).contains(&deg) {
        let u = Univariate::from_poly(g, vars[0]);
        if let Some(f) = u.find_factor() {
            let f = f.to_poly(ring, vars[0]);
            let rest = g.exact_div(&f)?;
            return Some((f, rest));
        }
    }
    if let Some(f) = difference_of_powers_factor(g) {
        let rest = g.exact_div(&f)?;
        if !rest.is_constant() {
            return Some((f, rest));
        }
    }
    if vars.len() == 2 && deg == 2 {
        if let Some(QuadricSplit::Factors(a, b)) =
            Quadric::from_poly(g, vars[0], vars[1]).and_then(|q| q.factor())
        {
            return Some((a, b));
        }
    }
    None
}

/// Splits `g` into non-constant factors as far as [`split`] allows.
pub(crate) fn factor_list(g: &Polynomial) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut stack = vec![g.clone()];
    while let Some(p) = stack.pop() {
        match split(&p) {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => {
                if !p.is_constant() {
                    out.push(p);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// field helpers

fn rational_root(c: &BigRational, k: u32) -> Option<BigRational> {
    if c.is_zero() {
        return Some(BigRational::zero());
    }
    if c.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(k);
        (r.pow(k) == n.abs()).then(|| if n.is_negative() { -r } else { r })
    };
    Some(BigRational::new(root_int(c.numer())?, root_int(c.denom())?))
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

const BRUTE_FORCE_LIMIT: u64 = 100_000;

/// A `k`-th root of `c` in the coefficient field, if one is found.
fn field_root(c: &Coeff, k: u32) -> Option<Coeff> {
    match c {
        Coeff::Rational(r) => rational_root(r, k).map(Coeff::Rational),
        Coeff::Modular { value, modulus } => {
            let p = *modulus as u64;
            if *value == 0 {
                return Some(c.clone());
            }
            if k == 2 {
                return sqrt_mod(*value as u64, p).map(|r| Coeff::Modular {
                    value: r as u32,
                    modulus: *modulus,
                });
            }
            if p <= BRUTE_FORCE_LIMIT {
                (0..p)
                    .find(|&r| mod_pow(r, k as u64, p) == *value as u64)
                    .map(|r| Coeff::Modular {
                        value: r as u32,
                        modulus: *modulus,
                    })
            } else {
                None
            }
        }
    }
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    // Tonelli–Shanks
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)?;
    let mulm = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

/// Factor `u^{n/k} − r·v^{n/k}` of a binomial `α·uⁿ + β·vⁿ`.
fn difference_of_powers_factor(g: &Polynomial) -> Option<Polynomial> {
    if g.num_terms() != 2 {
        return None;
    }
    let ring = g.ring();
    let terms: Vec<(&Monomial, &Coeff)> = g.terms().collect();
    let (m1, a) = terms[0];
    let (m2, b) = terms[1];
    if !m1.is_coprime(m2) {
        return None;
    }
    let n = m1
        .exponents()
        .iter()
        .chain(m2.exponents())
        .fold(0u32, |acc, &e| acc.gcd(&e));
    if n < 2 {
        return None;
    }
    // g = a·(uⁿ − c·vⁿ) with c = −b/a
    let c = b.neg().div(a);
    let (u, v) = (
        Monomial::new(m1.exponents().iter().map(|e| e / n).collect()),
        Monomial::new(m2.exponents().iter().map(|e| e / n).collect()),
    );
    for k in (2..=n).rev().filter(|k| n % k == 0) {
        if let Some(r) = field_root(&c, k) {
            let e = n / k;
            let f = &Polynomial::term(ring, u.pow(e), Coeff::one(ring.characteristic()))
                - &Polynomial::term(ring, v.pow(e), r);
            return Some(f);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// univariate polynomials

/// Dense univariate polynomial over the coefficient field, low degree first.
#[derive(Clone, Debug)]
struct Univariate {
    coeffs: Vec<Coeff>,
    characteristic: u32,
}

impl Univariate {
    fn from_poly(g: &Polynomial, var: usize) -> Univariate {
        let ch = g.ring().characteristic();
        let d = g.degree_in(var) as usize;
        let mut coeffs = vec![Coeff::zero(ch); d + 1];
        for (m, c) in g.terms() {
            coeffs[m.exponents()[var] as usize] = c.clone();
        }
        Univariate {
            coeffs,
            characteristic: ch,
        }
    }

    fn to_poly(&self, ring: &Ring, var: usize) -> Polynomial {
        let n = ring.nvars();
        Polynomial::from_terms(
            ring,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0u32; n];
                e[var] = i as u32;
                (Monomial::new(e), c.clone())
            }),
        )
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Some(true)` irreducible, `Some(false)` reducible, `None` unknown.
    fn irreducibility(&self) -> Option<bool> {
        let n = self.degree();
        if n <= 1 {
            return Some(n == 1);
        }
        if self.characteristic != 0 {
            let f = ModPoly::from_coeffs(&self.coeffs, self.characteristic as u64);
            return Some(f.is_irreducible());
        }
        let ints = self.primitive_integer()?;
        if rational_root_of(&ints)?.is_some() {
            return Some(false);
        }
        if n <= 3 {
            return Some(true);
        }
        // quartic without rational roots: rule out a 2+2 split modulo small primes
        for p in [
            3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
            89, 97,
        ] {
            let lead = ints[n].mod_floor(&BigInt::from(p));
            if lead.is_zero() {
                continue;
            }
            let residues: Vec<u64> = ints
                .iter()
                .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                .collect();
            let f = ModPoly { c: residues, p }.monic();
            if !f.is_squarefree() {
                continue;
            }
            let mut degs = f.distinct_degree_pattern();
            degs.sort_unstable();
            if degs == [4] || degs == [1, 3] {
                return Some(true);
            }
        }
        None
    }

    /// Clears denominators and content: integer coefficients with gcd 1.
    fn primitive_integer(&self) -> Option<Vec<BigInt>> {
        let rats: Vec<&BigRational> = self
            .coeffs
            .iter()
            .map(|c| c.as_rational())
            .collect::<Option<_>>()?;
        let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (*r * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        Some(ints.into_iter().map(|x| x / &g).collect())
    }

    /// A monic factor of degree 1 or 2, if one is found.
    fn find_factor(&self) -> Option<Univariate> {
        let n = self.degree();
        let ch = self.characteristic;
        if ch != 0 {
            let f = ModPoly::from_coeffs(&self.coeffs, ch as u64).monic();
            let factor = f.small_factor()?;
            return Some(Univariate {
                coeffs: factor
                    .c
                    .iter()
                    .map(|&v| Coeff::from_i64(v as i64, ch))
                    .collect(),
                characteristic: ch,
            });
        }
        let ints = self.primitive_integer()?;
        if let Some(root) = rational_root_of(&ints)? {
            let neg = Coeff::Rational(-root);
            return Some(Univariate {
                coeffs: vec![neg, Coeff::one(0)],
                characteristic: 0,
            });
        }
        if n == 4 && ints[1].is_zero() && ints[3].is_zero() {
            // a·x⁴ + b·x² + c: look for a rational root y of a·y² + b·y + c
            let quad = vec![ints[0].clone(), ints[2].clone(), ints[4].clone()];
            if let Some(y) = rational_root_of(&quad)? {
                return Some(Univariate {
                    coeffs: vec![Coeff::Rational(-y), Coeff::zero(0), Coeff::one(0)],
                    characteristic: 0,
                });
            }
        }
        None
    }
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational root test on integer coefficients (low degree first).
/// `None` when the constant or leading coefficient is too large to factor.
fn rational_root_of(ints: &[BigInt]) -> Option<Option<BigRational>> {
    if ints[0].is_zero() {
        return Some(Some(BigRational::zero()));
    }
    let lead = ints.last().expect("nonempty");
    let ps = divisors(&ints[0])?;
    let qs = divisors(lead)?;
    let eval = |x: &BigRational| {
        ints.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    };
    for q in &qs {
        for p in &ps {
            for cand in [
                BigRational::new(p.clone(), q.clone()),
                BigRational::new(-p.clone(), q.clone()),
            ] {
                if eval(&cand).is_zero() {
                    return Some(Some(cand));
                }
            }
        }
    }
    Some(None)
}

/// Dense polynomial over `𝔽_p`, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct ModPoly {
    c: Vec<u64>,
    p: u64,
}

impl ModPoly {
    fn from_coeffs(coeffs: &[Coeff], p: u64) -> ModPoly {
        ModPoly {
            c: coeffs
                .iter()
                .map(|c| c.as_residue().expect("residue") as u64)
                .collect(),
            p,
        }
        .trim()
    }

    fn trim(mut self) -> ModPoly {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_pow(*self.c.last().unwrap(), self.p - 2, self.p);
        ModPoly {
            c: self.c.iter().map(|&x| self.mulm(x, inv)).collect(),
            p: self.p,
        }
    }

    fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        ModPoly { c, p: self.p }.trim()
    }

    fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly {
                c: vec![],
                p: self.p,
            };
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulm(a, b)) % self.p;
            }
        }
        ModPoly { c, p: self.p }.trim()
    }

    fn divrem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let mut r = self.c.clone();
        let dl = d.deg();
        let inv = mod_pow(*d.c.last().unwrap(), self.p - 2, self.p);
        let mut q = vec![0u64; self.c.len().saturating_sub(dl).max(1)];
        while r.len() > dl && !r.is_empty() {
            let k = r.len() - 1 - dl;
            let coef = self.mulm(*r.last().unwrap(), inv);
            q[k] = coef;
            for (i, &dc) in d.c.iter().enumerate() {
                r[k + i] = (r[k + i] + self.p - self.mulm(coef, dc)) % self.p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (
            ModPoly { c: q, p: self.p }.trim(),
            ModPoly { c: r, p: self.p }.trim(),
        )
    }

    fn rem(&self, d: &ModPoly) -> ModPoly {
        self.divrem(d).1
    }

    fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn powmod(&self, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly {
            c: vec![1],
            p: self.p,
        }
        .rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    fn derivative(&self) -> ModPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| self.mulm(i as u64 % self.p, x))
            .collect();
        ModPoly { c, p: self.p }.trim()
    }

    fn x(&self) -> ModPoly {
        ModPoly {
            c: vec![0, 1],
            p: self.p,
        }
    }

    fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).deg() == 0
    }

    /// Degrees of the irreducible factors of a monic squarefree polynomial.
    fn distinct_degree_pattern(&self) -> Vec<usize> {
        self.distinct_degree_parts()
            .into_iter()
            .flat_map(|(d, part)| std::iter::repeat_n(d, part.deg() / d))
            .collect()
    }

    /// `(d, product of all degree-d irreducible factors)`.
    fn distinct_degree_parts(&self) -> Vec<(usize, ModPoly)> {
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = self.x();
        let mut h = x.rem(&f);
        let mut d = 1;
        while 2 * d <= f.deg() {
            h = h.powmod(self.p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                f = f.divrem(&g).0.monic();
                h = h.rem(&f);
                out.push((d, g));
            }
            d += 1;
        }
        if f.deg() > 0 {
            out.push((f.deg(), f));
        }
        out
    }

    fn is_irreducible(&self) -> bool {
        let f = self.monic();
        if f.deg() <= 1 {
            return f.deg() == 1;
        }
        if !f.is_squarefree() {
            return false;
        }
        f.distinct_degree_pattern().len() == 1
    }

    /// A monic factor of degree 1 or 2 of a monic polynomial of degree 2..=4.
    fn small_factor(&self) -> Option<ModPoly> {
        let d = self.derivative();
        if d.is_zero() {
            return None;
        }
        let g = self.gcd(&d);
        if g.deg() > 0 && g.deg() < self.deg() {
            return Some(g);
        }
        for (deg, part) in self.distinct_degree_parts() {
            if deg > 2 || part.deg() == self.deg() && deg == self.deg() {
                continue;
            }
            if part.deg() == deg {
                return Some(part);
            }
            return self.equal_degree_split(&part, deg);
        }
        None
    }

    /// Splits a product of distinct degree-`d` factors (`d ≤ 2`).
    fn equal_degree_split(&self, part: &ModPoly, d: usize) -> Option<ModPoly> {
        let p = self.p;
        if p == 2 {
            return None;
        }
        let exp = (p.pow(d as u32) - 1) / 2;
        for a in 0..p.min(BRUTE_FORCE_LIMIT) {
            let base = ModPoly { c: vec![a, 1], p }.trim();
            let t = base.powmod(exp, part).sub(&ModPoly { c: vec![1], p });
            let g = part.gcd(&t);
            if g.deg() > 0 && g.deg() < part.deg() {
                return if g.deg() == d {
                    Some(g)
                } else {
                    self.equal_degree_split(&g, d)
                };
            }
        }
        None
    }
}

// ---------------------------------------------------------------------------
// bivariate quadrics

/// `a·x² + b·x·y + c·y² + d·x + e·y + f` in two chosen variables.
struct Quadric {
    ring: Ring,
    x: usize,
    y: usize,
    k: [Coeff; 6],
}

enum QuadricSplit {
    Irreducible,
    Factors(Polynomial, Polynomial),
}

impl Quadric {
    fn from_poly(g: &Polynomial, x: usize, y: usize) -> Option<Quadric> {
        let ch = g.ring().characteristic();
        if ch == 2 {
            return None;
        }
        let mut k: [Coeff; 6] = std::array::from_fn(|_| Coeff::zero(ch));
        for (m, c) in g.terms() {
            let e = m.exponents();
            let slot = match (e[x], e[y]) {
                (2, 0) => 0,
                (1, 1) => 1,
                (0, 2) => 2,
                (1, 0) => 3,
                (0, 1) => 4,
                (0, 0) => 5,
                _ => return None,
            };
            k[slot] = c.clone();
        }
        Some(Quadric {
            ring: g.ring().clone(),
            x,
            y,
            k,
        })
    }

    fn lin(&self, cx: Coeff, cy: Coeff, c0: Coeff) -> Polynomial {
        let n = self.ring.nvars();
        Polynomial::from_terms(
            &self.ring,
            [
                (Monomial::var(n, self.x), cx),
                (Monomial::var(n, self.y), cy),
                (Monomial::one(n), c0),
            ],
        )
    }

    fn factor(&self) -> Option<QuadricSplit> {
        let ch = self.ring.characteristic();
        let [a, b, c, d, e, f] = self.k.clone();
        if a.is_zero() && !c.is_zero() {
            let swapped = Quadric {
                ring: self.ring.clone(),
                x: self.y,
                y: self.x,
                k: [c, b, a, e, d, f],
            };
            return swapped.factor();
        }
        let two = Coeff::from_i64(2, ch);
        let four = Coeff::from_i64(4, ch);
        if a.is_zero() {
            // b·x·y + d·x + e·y + f
            if b.is_zero() {
                return Some(QuadricSplit::Irreducible);
            }
            if b.mul(&f).sub(&d.mul(&e)).is_zero() {
                // b(x + e/b)(y + d/b)
                let one = Coeff::one(ch);
                let l1 = self.lin(b.clone(), Coeff::zero(ch), e.clone());
                let l2 = self.lin(Coeff::zero(ch), one, d.div(&b));
                return Some(QuadricSplit::Factors(l1, l2));
            }
            return Some(QuadricSplit::Irreducible);
        }
        // discriminant in y: (b·y + d)² − 4a(c·y² + e·y + f) = δ2·y² + δ1·y + δ0
        let d2 = b.mul(&b).sub(&four.mul(&a).mul(&c));
        let d1 = two.mul(&b).mul(&d).sub(&four.mul(&a).mul(&e));
        let d0 = d.mul(&d).sub(&four.mul(&a).mul(&f));
        // √Δ = s·y + t
        let (s, t) = if !d2.is_zero() {
            if !d1.mul(&d1).sub(&four.mul(&d2).mul(&d0)).is_zero() {
                return Some(QuadricSplit::Irreducible);
            }
            let Some(s) = field_root(&d2, 2) else {
                return Some(QuadricSplit::Irreducible);
            };
            let t = d1.div(&two.mul(&s));
            (s, t)
        } else if !d1.is_zero() {
            return Some(QuadricSplit::Irreducible);
        } else {
            match field_root(&d0, 2) {
                Some(t) => (Coeff::zero(ch), t),
                None => return Some(QuadricSplit::Irreducible),
            }
        };
        // roots x = (−(b·y + d) ± (s·y + t)) / 2a; factors 2a·x + (b ∓ s)·y + (d ∓ t)
        let l1 = self.lin(two.mul(&a), b.sub(&s), d.sub(&t));
        let l2 = self.lin(two.mul(&a), b.add(&s), d.add(&t));
        let scale = four.mul(&a).inv()?;
        Some(QuadricSplit::Factors(l1.scale(&scale), l2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};

    fn check(ring: &Ring, text: &str) -> Irreducibility {
        irreducibility(&parse_poly(text, ring).unwrap())
    }

    #[test]
    fn irreducible_patterns() {
        let r = PolyRing::new(&["X", "Y", "Z"], 0).unwrap();
        use Irreducibility::*;
        assert_eq!(
            check(&r, "Y^2*Z - 1"),
            Irreducible(IrreducibleBy::LinearInVariable)
        );
        assert_eq!(check(&r, "X + Y + Z"), Irreducible(IrreducibleBy::Linear));
        assert_eq!(
            check(&r, "X^3 - Y^2"),
            Irreducible(IrreducibleBy::PrimitiveBinomial)
        );
        assert_eq!(check(&r, "X^2 - Y^2"), Reducible);
        assert_eq!(
            check(&r, "X^2 + Y^2"),
            Irreducible(IrreducibleBy::BivariateQuadric)
        );
        assert_eq!(check(&r, "X*Y + X + Y + 1"), Reducible);
        assert_eq!(check(&r, "X^2 - 2"), Irreducible(IrreducibleBy::Univariate));
        assert_eq!(check(&r, "X^3 - 2*X + 1"), Reducible);
        assert_eq!(
            check(&r, "X^4 + X + 1"),
            Irreducible(IrreducibleBy::Univariate)
        );
        assert_eq!(check(&r, "X*Z"), Reducible);
        assert_eq!(check(&r, "X^2*Y^2 + Z^3 + X*Y*Z + 1"), Undecided);
    }

    #[test]
    fn prime_field_univariates() {
        let r = PolyRing::new(&["X"], 7).unwrap();
        assert_eq!(
            check(&r, "X^2 + 1"),
            Irreducibility::Irreducible(IrreducibleBy::Univariate)
        );
        assert_eq!(check(&r, "X^2 + 3"), Irreducibility::Reducible); // -3 = 4 = 2^2
        assert_eq!(check(&r, "X^4 + 1"), Irreducibility::Reducible);
        let r2 = PolyRing::new(&["X"], 2).unwrap();
        assert_eq!(
            check(&r2, "X^2 + X + 1"),
            Irreducibility::Irreducible(IrreducibleBy::Univariate)
        );
        assert_eq!(check(&r2, "X^2 + 1"), Irreducibility::Reducible);
    }

    #[test]
    fn splits_multiply_back() {
        let r = PolyRing::new(&["X", "Y", "Z"], 0).unwrap();
        for text in [
            "X*Y",
            "X^2*Z - X",
            "X^2 - Y^2",
            "X^3 - 8*Y^3",
            "X*Y + X + Y + 1",
            "X^2 - 3*X + 2",
            "X^4 - 5*X^2 + 6",
            "2*X^2 + 3*X*Y - 2*Y^2",
        ] {
            let g = parse_poly(text, &r).unwrap();
            let (a, b) = split(&g).unwrap_or_else(|| panic!("{text} should split"));
            assert!(!a.is_constant() && !b.is_constant(), "{text}");
            assert_eq!(&a * &b, g, "{text}");
        }
        assert!(split(&parse_poly("Y^2*Z - 1", &r).unwrap()).is_none());
        let f = factor_list(&parse_poly("X^2*Y - Y", &r).unwrap());
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn prime_field_splits() {
        let r = PolyRing::new(&["X"], 7).unwrap();
        for text in ["X^2 + 3", "X^4 + 1", "X^3 + 6", "X^4 + 3*X^2 + 2"] {
            let g = parse_poly(text, &r).unwrap();
            let (a, b) = split(&g).unwrap_or_else(|| panic!("{text} should split"));
            assert_eq!(&a * &b, g);
        }
        let big = PolyRing::new(&["X"], 1_000_003).unwrap();
        let g = parse_poly("(X - 5)*(X^2 + 1)", &big).unwrap();
        let (a, b) = split(&g).unwrap();
        assert_eq!(&a * &b, g);
    }

    #[test]
    fn square_roots_mod_p() {
        for p in [3u64, 5, 13, 17, 1_000_003, 2_147_483_647] {
            for a in 1..40u64 {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(r * r % p, a % p);
                }
            }
        }
    }
}

use std::collections::BTreeSet;

use super::{PolyError, Polynomial};

/// Integer weight per variable; weights may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading(Vec<i64>);

impl Grading {
    pub fn new(weights: Vec<i64>) -> Grading {
        Grading(weights)
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    fn check(&self, f: &Polynomial) -> Result<(), PolyError> {
        if self.0.len() != f.ring().nvars() {
            return Err(PolyError::ArityMismatch {
                expected: f.ring().nvars(),
                found: self.0.len(),
            });
        }
        Ok(())
    }

    /// The weighted degrees occurring in `f`, ascending.
    pub fn degrees(&self, f: &Polynomial) -> Result<Vec<i64>, PolyError> {
        self.check(f)?;
        let set: BTreeSet<i64> = f.terms().map(|(m, _)| m.weighted_degree(&self.0)).collect();
        Ok(set.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(i64),
    NotHomogeneous,
}

pub fn homogeneous_degree(f: &Polynomial, w: &Grading) -> Result<Homogeneity, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let degrees = w.degrees(f)?;
    Ok(match degrees.as_slice() {
        [d] => Homogeneity::Homogeneous(*d),
        _ => Homogeneity::NotHomogeneous,
    })
}

/// The degree-`d` component of `f`.
pub fn project_degree(f: &Polynomial, d: i64, w: &Grading) -> Result<Polynomial, PolyError> {
    w.check(f)?;
    Ok(Polynomial::from_terms(
        f.ring(),
        f.terms()
            .filter(|(m, _)| m.weighted_degree(w.weights()) == d)
            .map(|(m, c)| (m.clone(), c.clone())),
    ))
}

use std::sync::Arc;

use super::{is_prime_u32, Coeff, Grading, PolyError};

/// Shared handle to a polynomial ring.
pub type Ring = Arc<PolyRing>;

/// `K[x_1, …, x_n]` with `K = ℚ` (characteristic 0) or `𝔽_p`.
///
/// Two rings are compatible when their variable lists and characteristics
/// agree; the optional grading is metadata and does not take part in the
/// comparison.
#[derive(Clone, Debug)]
pub struct PolyRing {
    vars: Vec<String>,
    characteristic: u32,
    grading: Option<Grading>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic && self.vars == other.vars
    }
}

impl Eq for PolyRing {}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], characteristic: u32) -> Result<Ring, PolyError> {
        Self::build(
            vars.iter().map(|s| s.as_ref().to_string()).collect(),
            characteristic,
            None,
        )
    }

    pub fn with_grading<S: AsRef<str>>(
        vars: &[S],
        characteristic: u32,
        weights: Vec<i64>,
    ) -> Result<Ring, PolyError> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        if weights.len() != vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: vars.len(),
                found: weights.len(),
            });
        }
        Self::build(vars, characteristic, Some(Grading::new(weights)))
    }

    pub(crate) fn build(
        vars: Vec<String>,
        characteristic: u32,
        grading: Option<Grading>,
    ) -> Result<Ring, PolyError> {
        if characteristic != 0 && !is_prime_u32(characteristic) {
            return Err(PolyError::InvalidRing(format!(
                "characteristic {characteristic} is not prime"
            )));
        }
        if characteristic >= 1 << 31 {
            return Err(PolyError::InvalidRing(
                "characteristic must be below 2^31".into(),
            ));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(PolyError::InvalidRing(format!(
                    "`{v}` is not a valid variable name"
                )));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!(
                    "variable `{v}` declared twice"
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            vars,
            characteristic,
            grading,
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn coeff(&self, v: i64) -> Coeff {
        Coeff::from_i64(v, self.characteristic)
    }

    /// A ring with `extra` fresh variables placed in front of the existing
    /// ones. Names are made unique by appending `_` as needed.
    pub(crate) fn prepend_fresh(&self, extra: &[&str]) -> Ring {
        let mut vars: Vec<String> = Vec::with_capacity(extra.len() + self.vars.len());
        for base in extra {
            let mut name = base.to_string();
            while self.vars.contains(&name) || vars.contains(&name) {
                name.push('_');
            }
            vars.push(name);
        }
        vars.extend(self.vars.iter().cloned());
        Arc::new(PolyRing {
            vars,
            characteristic: self.characteristic,
            grading: None,
        })
    }

    /// The ring on variables `first..`, keeping the grading restricted to them.
    pub(crate) fn drop_front(&self, first: usize) -> Ring {
        let grading = self
            .grading
            .as_ref()
            .map(|g| Grading::new(g.weights()[first..].to_vec()));
        Arc::new(PolyRing {
            vars: self.vars[first..].to_vec(),
            characteristic: self.characteristic,
            grading,
        })
    }

    /// Concatenation `[self vars][other vars]`, renaming clashes in `other`.
    pub(crate) fn concat(&self, other: &PolyRing) -> Ring {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            let mut name = v.clone();
            while vars.contains(&name) || (name != *v && other.vars.contains(&name)) {
                name.push('\'');
            }
            vars.push(name);
        }
        Arc::new(PolyRing {
            vars,
            characteristic: self.characteristic,
            grading: None,
        })
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_declarations() {
        assert!(PolyRing::new(&["X", "X"], 0).is_err());
        assert!(PolyRing::new(&["X"], 4).is_err());
        assert!(PolyRing::new(&["2X"], 0).is_err());
        assert!(PolyRing::with_grading(&["X", "Y"], 0, vec![1]).is_err());
        assert!(PolyRing::new(&["X", "Y2", "z_1"], 32003).is_ok());
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let r = PolyRing::new(&["t", "X"], 0).unwrap();
        let big = r.prepend_fresh(&["t"]);
        assert_eq!(big.vars(), &["t_", "t", "X"]);
        let both = r.concat(&r);
        assert_eq!(both.nvars(), 4);
        let mut names = both.vars().to_vec();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 4);
    }
}

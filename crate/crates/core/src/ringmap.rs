//! Finitely presented algebras, ring maps, extension and contraction.

use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{eliminate_into, Ideal};
use crate::poly::{MonomialOrder, PolyError, Polynomial, Ring};

/// `K[x₁, …, xₙ] / relations`.
#[derive(Clone, Debug)]
pub struct PresentedRing {
    ambient: Ring,
    relations: Ideal,
}

impl PresentedRing {
    /// The polynomial ring itself (no relations).
    pub fn polynomial(ring: &Ring) -> PresentedRing {
        PresentedRing {
            ambient: ring.clone(),
            relations: Ideal::zero(ring),
        }
    }

    pub fn new(ring: &Ring, relations: Vec<Polynomial>) -> Result<PresentedRing> {
        Ok(PresentedRing {
            ambient: ring.clone(),
            relations: Ideal::new(ring, relations)?,
        })
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_zero()
    }

    /// Normal form modulo the relations.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.ambient {
            return Err(PolyError::RingMismatch.into());
        }
        if self.is_polynomial_ring() {
            return Ok(f.clone());
        }
        Ok(self.relations.canonical_basis().reduce(f))
    }

    /// The ideal of the ambient ring generated by `gens` and the relations.
    pub fn ideal(&self, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ideal::new(&self.ambient, gens)?.sum(&self.relations)
    }

    /// Adds the relations to an ideal of the ambient ring.
    pub fn lift_ideal(&self, i: &Ideal) -> Result<Ideal> {
        i.sum(&self.relations)
    }
}

impl fmt::Display for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ambient.characteristic() {
            0 => f.write_str("QQ")?,
            p => write!(f, "GF({p})")?,
        }
        write!(f, "[{}]", self.ambient.vars().join(", "))?;
        if !self.is_polynomial_ring() {
            write!(f, "/{}", self.relations)?;
        }
        Ok(())
    }
}

/// Outcome of the well-definedness check.
#[derive(Clone, Debug, PartialEq)]
pub enum WellDefinedness {
    Ok,
    /// A source relation whose image is not zero in the target.
    Violation {
        relation: Polynomial,
        image: Polynomial,
    },
}

fn check_images(
    source: &PresentedRing,
    target: &PresentedRing,
    images: &[Polynomial],
) -> Result<()> {
    if images.len() != source.ambient.nvars() {
        return Err(Error::ImageCount {
            expected: source.ambient.nvars(),
            found: images.len(),
        });
    }
    if source.ambient.characteristic() != target.ambient.characteristic()
        || images.iter().any(|g| g.ring() != &target.ambient)
    {
        return Err(PolyError::RingMismatch.into());
    }
    Ok(())
}

/// Substitutes the images into every source relation and tests membership
/// in the target relations.
pub fn check_well_defined(
    source: &PresentedRing,
    target: &PresentedRing,
    images: &[Polynomial],
) -> Result<WellDefinedness> {
    check_images(source, target, images)?;
    for rel in source.relations.generators() {
        let image = rel.substitute(&target.ambient, images)?;
        if !target.relations.contains(&image)? {
            return Ok(WellDefinedness::Violation {
                relation: rel.clone(),
                image,
            });
        }
    }
    Ok(WellDefinedness::Ok)
}

/// Result of comparing `I` with `φ⁻¹(I·B)` for one ideal.
#[derive(Clone, Debug, PartialEq)]
pub enum ContractionCheck {
    Holds,
    /// An element of `φ⁻¹(I·B)` outside `I`.
    Fails {
        witness: Polynomial,
    },
}

impl ContractionCheck {
    pub fn holds(&self) -> bool {
        matches!(self, ContractionCheck::Holds)
    }
}

/// A homomorphism `A → B` given by the image of each variable of `A`.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: PresentedRing,
    target: PresentedRing,
    images: Vec<Polynomial>,
}

impl RingMap {
    /// Builds the map, rejecting it if some source relation does not map
    /// into the target relations.
    pub fn new(
        source: PresentedRing,
        target: PresentedRing,
        images: Vec<Polynomial>,
    ) -> Result<RingMap> {
        match check_well_defined(&source, &target, &images)? {
            WellDefinedness::Ok => Ok(RingMap {
                source,
                target,
                images,
            }),
            WellDefinedness::Violation { relation, image } => Err(Error::NotWellDefined {
                relation: relation.to_string(),
                image: image.to_string(),
            }),
        }
    }

    pub fn source(&self) -> &PresentedRing {
        &self.source
    }

    pub fn target(&self) -> &PresentedRing {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `φ(f)` in normal form modulo the target relations.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.source.ambient {
            return Err(PolyError::RingMismatch.into());
        }
        let image = f.substitute(&self.target.ambient, &self.images)?;
        self.target.normal_form(&image)
    }

    /// `I·B`, as an ideal of the target ambient ring containing its relations.
    pub fn extend(&self, i: &Ideal) -> Result<Ideal> {
        let gens = i
            .generators()
            .iter()
            .map(|g| g.substitute(&self.target.ambient, &self.images))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        self.target.ideal(gens)
    }

    /// `φ⁻¹(J)` for an ideal `J` of the target ambient ring.
    ///
    /// Works in `K[target vars, source vars]` with the graph relations
    /// `s − φ(s)` and eliminates the target block.
    pub fn contract(&self, j: &Ideal) -> Result<Ideal> {
        if j.ring() != &self.target.ambient {
            return Err(PolyError::RingMismatch.into());
        }
        let t = &self.target.ambient;
        let s = &self.source.ambient;
        let graph = t.concat(s);
        let nt = t.nvars();
        let tmap: Vec<usize> = (0..nt).collect();
        let mut gens: Vec<Polynomial> = j
            .generators()
            .iter()
            .map(|g| g.map_vars(&graph, &tmap))
            .collect();
        gens.extend(
            self.target
                .relations
                .generators()
                .iter()
                .map(|g| g.map_vars(&graph, &tmap)),
        );
        for (k, image) in self.images.iter().enumerate() {
            gens.push(&Polynomial::var(&graph, nt + k) - &image.map_vars(&graph, &tmap));
        }
        Ok(eliminate_into(&graph, &gens, nt, s))
    }

    /// `ker φ = φ⁻¹(0)`.
    pub fn kernel(&self) -> Ideal {
        self.contract(&Ideal::zero(&self.target.ambient))
            .expect("target ring")
    }

    /// Compares `I` (plus the source relations) with `φ⁻¹(I·B)`.
    pub fn contraction_property_check(&self, i: &Ideal) -> Result<ContractionCheck> {
        let i = self.source.lift_ideal(i)?;
        let back = self.contract(&self.extend(&i)?)?;
        assert!(
            i.is_subset_of(&back)?,
            "an ideal is always inside the contraction of its extension"
        );
        let gb = i.canonical_basis();
        let mut outside: Vec<Polynomial> = back
            .canonical_basis()
            .elements()
            .iter()
            .filter(|g| !gb.contains(g))
            .cloned()
            .collect();
        if outside.is_empty() {
            return Ok(ContractionCheck::Holds);
        }
        outside.sort_by(crate::ideal::display_cmp);
        Ok(ContractionCheck::Fails {
            witness: outside.swap_remove(0).monic(MonomialOrder::GrevLex),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};

    fn example_map() -> RingMap {
        let a = PolyRing::new(&["U", "V"], 0).unwrap();
        let b = PolyRing::new(&["X", "Y", "Z"], 0).unwrap();
        let images = vec![
            parse_poly("X*Z", &b).unwrap(),
            parse_poly("Y*Z", &b).unwrap(),
        ];
        RingMap::new(
            PresentedRing::polynomial(&a),
            PresentedRing::polynomial(&b),
            images,
        )
        .unwrap()
    }

    #[test]
    fn well_definedness() {
        let a = PolyRing::new(&["U"], 0).unwrap();
        let b = PolyRing::new(&["X"], 0).unwrap();
        let src = PresentedRing::new(&a, vec![parse_poly("U^2", &a).unwrap()]).unwrap();
        let x = vec![parse_poly("X", &b).unwrap()];
        let free = PresentedRing::polynomial(&b);
        match check_well_defined(&src, &free, &x).unwrap() {
            WellDefinedness::Violation { image, .. } => assert_eq!(image.to_string(), "X^2"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            RingMap::new(src.clone(), free, x.clone()),
            Err(Error::NotWellDefined { .. })
        ));
        let dual = PresentedRing::new(&b, vec![parse_poly("X^2", &b).unwrap()]).unwrap();
        assert_eq!(
            check_well_defined(&src, &dual, &x).unwrap(),
            WellDefinedness::Ok
        );
        let _ = example_map();
        assert!(matches!(
            check_well_defined(&src, &dual, &[]),
            Err(Error::ImageCount {
                expected: 1,
                found: 0
            })
        ));
    }

    #[test]
    fn apply_and_extend() {
        let m = example_map();
        let (a, b) = (m.source().ambient().clone(), m.target().ambient().clone());
        assert_eq!(
            m.apply(&parse_poly("U", &a).unwrap()).unwrap().to_string(),
            "X*Z"
        );
        assert!(m.apply(&Polynomial::one(&a)).unwrap().is_one());
        assert_eq!(
            m.apply(&parse_poly("U*V", &a).unwrap())
                .unwrap()
                .to_string(),
            "X*Y*Z^2"
        );
        let ext = m.extend(&Ideal::parse(&a, &["U", "V"]).unwrap()).unwrap();
        assert!(ext
            .equals(&Ideal::parse(&b, &["X*Z", "Y*Z"]).unwrap())
            .unwrap());
        assert!(m.extend(&Ideal::zero(&a)).unwrap().is_zero());
        let ext = m.extend(&Ideal::parse(&a, &["U + V"]).unwrap()).unwrap();
        assert!(ext
            .equals(&Ideal::parse(&b, &["X*Z + Y*Z"]).unwrap())
            .unwrap());
    }

    #[test]
    fn contraction_examples() {
        let m = example_map();
        let (a, b) = (m.source().ambient().clone(), m.target().ambient().clone());
        let c = m.contract(&Ideal::parse(&b, &["Z"]).unwrap()).unwrap();
        assert!(c.equals(&Ideal::parse(&a, &["U", "V"]).unwrap()).unwrap());
        let c = m
            .contract(&Ideal::parse(&b, &["X", "Y^2*Z - 1"]).unwrap())
            .unwrap();
        assert!(c.equals(&Ideal::parse(&a, &["U"]).unwrap()).unwrap());
        assert!(m.kernel().is_zero());
    }

    #[test]
    fn kernels() {
        let a = PolyRing::new(&["U", "V"], 0).unwrap();
        let t = PolyRing::new(&["T"], 0).unwrap();
        let m = RingMap::new(
            PresentedRing::polynomial(&a),
            PresentedRing::polynomial(&t),
            vec![
                parse_poly("T^2", &t).unwrap(),
                parse_poly("T^3", &t).unwrap(),
            ],
        )
        .unwrap();
        let k = m.kernel();
        assert!(k
            .equals(&Ideal::parse(&a, &["U^3 - V^2"]).unwrap())
            .unwrap());
        assert!(k.primality().is_verified());
        let id = RingMap::new(
            PresentedRing::polynomial(&a),
            PresentedRing::polynomial(&a),
            vec![parse_poly("U", &a).unwrap(), parse_poly("V", &a).unwrap()],
        )
        .unwrap();
        assert!(id.kernel().is_zero());
    }

    #[test]
    fn contraction_property() {
        let m = example_map();
        let a = m.source().ambient().clone();
        assert!(m
            .contraction_property_check(&Ideal::parse(&a, &["U"]).unwrap())
            .unwrap()
            .holds());
        assert!(m
            .contraction_property_check(&Ideal::zero(&a))
            .unwrap()
            .holds());

        let u = PolyRing::new(&["U"], 0).unwrap();
        let ux = PolyRing::new(&["U", "X"], 0).unwrap();
        let loc = PresentedRing::new(&ux, vec![parse_poly("U*X - 1", &ux).unwrap()]).unwrap();
        let m = RingMap::new(
            PresentedRing::polynomial(&u),
            loc,
            vec![parse_poly("U", &ux).unwrap()],
        )
        .unwrap();
        match m
            .contraction_property_check(&Ideal::parse(&u, &["U"]).unwrap())
            .unwrap()
        {
            ContractionCheck::Fails { witness } => assert!(witness.is_one()),
            other => panic!("{other:?}"),
        }
    }
}

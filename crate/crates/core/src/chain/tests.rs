use super::*;
use crate::ideal::Ideal;
use crate::poly::{parse_poly, PolyRing, Polynomial, Ring};
use crate::ringmap::{PresentedRing, RingMap};

fn example() -> (RingMap, Ring, Ring) {
    let a = PolyRing::new(&["U", "V"], 0).unwrap();
    let b = PolyRing::with_grading(&["X", "Y", "Z"], 0, vec![1, 1, -1]).unwrap();
    let images = vec![
        parse_poly("X*Z", &b).unwrap(),
        parse_poly("Y*Z", &b).unwrap(),
    ];
    let map = RingMap::new(
        PresentedRing::polynomial(&a),
        PresentedRing::polynomial(&b),
        images,
    )
    .unwrap();
    (map, a, b)
}

fn chain(r: &Ring, levels: &[&[&str]]) -> PrimeChain {
    PrimeChain::new(
        r,
        levels.iter().map(|g| Ideal::parse(r, g).unwrap()).collect(),
    )
    .unwrap()
}

fn ideals(r: &Ring, levels: &[&[&str]]) -> Vec<Ideal> {
    levels.iter().map(|g| Ideal::parse(r, g).unwrap()).collect()
}

#[test]
fn verify_chain_examples() {
    let (map, a, b) = example();
    let report = verify_chain(
        &map,
        &chain(&a, &[&["U"], &["U", "V"]]),
        &chain(&b, &[&["X"], &["X", "Y"]]),
    )
    .unwrap();
    assert!(report.is_ok(), "{:?}", report.failures);
    assert!(report.statuses.iter().all(|s| s.is_verified()));

    let report = verify_chain(&map, &chain(&a, &[&["U"]]), &chain(&b, &[&["Z"]])).unwrap();
    match report.failures.as_slice() {
        [ChainFailure::ContractionMismatch {
            level: 0, found, ..
        }] => assert_eq!(found, "(U, V)"),
        other => panic!("{other:?}"),
    }

    let src = ideals(&a, &[&["U"], &["U", "V"]]);
    let report = verify_chain_ideals(
        &map,
        &src,
        &ideals(&b, &[&["X", "Y^2*Z - 1"], &["X", "Y", "Z"]]),
    )
    .unwrap();
    assert!(matches!(
        report.failures[0],
        ChainFailure::ContainmentFailure { level: 1, .. }
    ));
    let report = verify_chain_ideals(
        &map,
        &src,
        &ideals(&b, &[&["X", "Y^2*Z - 1"], &["X", "Y^2*Z - 1", "Z"]]),
    )
    .unwrap();
    assert!(report
        .failures
        .contains(&ChainFailure::UnitIdeal { level: 1 }));

    assert!(matches!(
        verify_chain(
            &map,
            &chain(&a, &[&["U"]]),
            &chain(&b, &[&["X"], &["X", "Y"]])
        ),
        Err(crate::Error::LengthMismatch {
            source_len: 1,
            target_len: 2
        })
    ));
}

#[test]
fn prime_chain_construction() {
    let (_, a, b) = example();
    assert!(PrimeChain::new(&a, ideals(&a, &[&["U"], &["U"]])).is_err());
    assert!(PrimeChain::new(&a, ideals(&a, &[&["U", "V"], &["U"]])).is_err());
    assert!(PrimeChain::new(&b, ideals(&b, &[&["X*Y"]])).is_err());
    let c = chain(&a, &[&["0"], &["U"], &["U", "V"]]);
    assert_eq!(c.length(), 2);
}

#[test]
fn extendability_examples() {
    let (map, a, b) = example();
    let src = chain(&a, &[&["U"], &["U", "V"]]);
    let yz = vec![
        vec![parse_poly("V", &a).unwrap()],
        vec![Polynomial::one(&a)],
    ];
    let q0 = Ideal::parse(&b, &["X"]).unwrap();
    assert!(!extendability_test(&map, &q0, &src, Some(&yz), 2)
        .unwrap()
        .is_obstructed());

    let q0 = Ideal::parse(&b, &["X", "Y^2*Z - 1"]).unwrap();
    let out = extendability_test(&map, &q0, &src, Some(&yz), 2).unwrap();
    let cert = out.certificate().expect("going up fails from this prime");
    assert!(verify_certificate(cert).is_valid());
    let out = extendability_test(&map, &q0, &src, None, 2).unwrap();
    assert!(out.is_obstructed());

    let short = chain(&a, &[&["U"]]);
    let q0 = Ideal::parse(&b, &["X"]).unwrap();
    assert!(!extendability_test(&map, &q0, &short, Some(&yz[..1]), 2)
        .unwrap()
        .is_obstructed());

    let bad = vec![vec![parse_poly("U", &a).unwrap()]];
    assert!(matches!(
        extendability_test(&map, &q0, &short, Some(&bad), 2),
        Err(crate::Error::WitnessNotOutside { level: 0, .. })
    ));
}

fn lifted(map: &RingMap, src: &PrimeChain) -> Vec<String> {
    let out = lift_chain(map, src, &[], 2).unwrap();
    let l = out.lifted().expect("lift exists");
    assert!(!l.consistency.is_obstructed());
    l.target.levels().iter().map(|q| q.to_string()).collect()
}

#[test]
fn lift_examples() {
    let (map, a, _) = example();
    assert_eq!(
        lifted(&map, &chain(&a, &[&["U"], &["U", "V"]])),
        ["(X)", "(X, Y)"]
    );
    assert_eq!(lifted(&map, &chain(&a, &[&["U", "V"]])), ["(Z)"]);
    assert_eq!(lifted(&map, &chain(&a, &[&["0"]])), ["(0)"]);
    assert_eq!(
        lifted(&map, &chain(&a, &[&["0"], &["U"], &["U", "V"]])),
        ["(0)", "(X)", "(X, Y)"]
    );
    let out = lift_chain(&map, &chain(&a, &[&["U"], &["U", "V"]]), &[], 2).unwrap();
    let report = chain_length_report(out.lifted().unwrap());
    assert_eq!((report.source_length, report.target_length), (1, 1));
}

#[test]
fn pool_rejects_below_z() {
    let (map, a, b) = example();
    let p0 = Ideal::parse(&a, &["U"]).unwrap();
    let hints = ideals(&b, &[&["0"], &["Z"]]);
    let pool = candidate_pool(&map, &p0, None, &[parse_poly("V", &a).unwrap()], &hints).unwrap();
    let z = Ideal::parse(&b, &["Z"]).unwrap();
    let below: Vec<&Candidate> = pool
        .iter()
        .filter(|c| c.ideal.is_subset_of(&z).unwrap())
        .collect();
    assert_eq!(below.len(), 2);
    assert!(below
        .iter()
        .all(|c| c.verdict == CandidateVerdict::ContractionMismatch));
    assert!(pool
        .iter()
        .any(|c| c.verdict == CandidateVerdict::Accepted && c.ideal.to_string() == "(X)"));
}

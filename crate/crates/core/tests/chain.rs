mod common;

use chainlift::chain::*;
use chainlift::{Ideal, PolyRing, Polynomial, PresentedRing, Ring, RingMap};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn example() -> RingMap {
    let a = PresentedRing::polynomial(&ring(&["U", "V"], 0));
    let b = PolyRing::with_grading(&["X", "Y", "Z"], 0, vec![1, 1, -1]).unwrap();
    let images = vec![poly(&b, "X*Z"), poly(&b, "Y*Z")];
    RingMap::new(a, PresentedRing::polynomial(&b), images).unwrap()
}

fn a_chain(map: &RingMap, levels: &[&[&str]]) -> PrimeChain {
    let a = map.source().ambient();
    PrimeChain::new(a, levels.iter().map(|g| ideal(a, g)).collect()).unwrap()
}

fn b_chain(map: &RingMap, levels: &[&[&str]]) -> PrimeChain {
    let b = map.target().ambient();
    PrimeChain::new(b, levels.iter().map(|g| ideal(b, g)).collect()).unwrap()
}

fn ladder(r: &Ring, ideals: &[&[&str]], msets: &[&[&str]]) -> LadderSpec {
    LadderSpec::new(
        r,
        ideals.iter().map(|g| ideal(r, g)).collect(),
        msets.iter().map(|g| mset(r, g)).collect(),
    )
    .unwrap()
}

fn printed(levels: &[Ideal]) -> Vec<String> {
    levels.iter().map(|i| i.to_string()).collect()
}

#[test]
fn telescoped_examples() {
    let r = ring(&["X", "Y", "Z"], 0);
    let l = ladder(&r, &[&["X"]], &[&["Y", "Z"]]);
    assert_eq!(
        telescoped_ideal(&l, &[vec![2, 1]])
            .unwrap()
            .canonical()
            .to_string(),
        "(X)"
    );
    let l = ladder(&r, &[&["X"], &["Y"]], &[&["Y"], &["1"]]);
    assert_eq!(
        telescoped_ideal(&l, &[vec![1], vec![0]])
            .unwrap()
            .canonical()
            .to_string(),
        "(X, Y^2)"
    );
    let l = ladder(&r, &[&["X*Z"], &["Z"]], &[&["Y*Z"], &["1"]]);
    assert_eq!(
        telescoped_ideal(&l, &[vec![1], vec![0]])
            .unwrap()
            .canonical()
            .to_string(),
        "(X*Z, Y*Z^2)"
    );
    assert!(telescoped_ideal(&l, &[vec![1, 1], vec![0]]).is_err());
    assert!(telescoped_ideal(&l, &[vec![1]]).is_err());
}

#[test]
fn search_examples() {
    let x = ring(&["X"], 0);
    let out = obstruction_search(&ladder(&x, &[&["X"]], &[&["X"]]), 1);
    let cert = out.certificate().expect("X is in (X)");
    assert_eq!(cert.picks(), &[vec![1]]);
    assert_eq!(cert.coefficients(), &[vec![poly(&x, "1")]]);

    let out = obstruction_search(&ladder(&x, &[&["X"]], &[&["1 + X"]]), 5);
    assert!(matches!(out, ObstructionOutcome::NoObstructionUpToBound(5)));

    let xy = ring(&["X", "Y"], 0);
    let l = ladder(&xy, &[&["X"], &["Y"]], &[&["Y"], &["X"]]);
    let cert = obstruction_search(&l, 1)
        .certificate()
        .cloned()
        .expect("obstructed");
    // Total degree comes first, so f0 = 1, f1 = X precedes f0 = Y, f1 = X.
    assert_eq!(cert.picks(), &[vec![0], vec![1]]);
    assert_eq!(cert.lhs().to_string(), "X");
    assert!(verify_certificate(&cert).is_valid());

    let by_hand = ObstructionCertificate::new(
        l.clone(),
        vec![vec![1], vec![1]],
        vec![vec![poly(&xy, "Y")], vec![poly(&xy, "0")]],
    )
    .unwrap();
    assert_eq!(by_hand.lhs().to_string(), "X*Y");
    assert_eq!(verify_certificate(&by_hand), CertificateCheck::Valid);
    let flipped = by_hand.with_coefficient(0, 0, poly(&xy, "-Y")).unwrap();
    assert_eq!(
        verify_certificate(&flipped),
        CertificateCheck::IdentityFails(poly(&xy, "2*X*Y"))
    );
}

#[test]
fn certificate_shape_errors() {
    let xy = ring(&["X", "Y"], 0);
    let l = ladder(&xy, &[&["X"], &["Y"]], &[&["Y"], &["X"]]);
    assert!(ObstructionCertificate::new(
        l.clone(),
        vec![vec![1]],
        vec![vec![poly(&xy, "Y")], vec![poly(&xy, "0")]]
    )
    .is_err());
    assert!(ObstructionCertificate::new(
        l.clone(),
        vec![vec![1], vec![1]],
        vec![vec![poly(&xy, "Y")]]
    )
    .is_err());
    let other = ring(&["X", "Y", "Z"], 0);
    assert!(ObstructionCertificate::new(
        l,
        vec![vec![1], vec![1]],
        vec![vec![poly(&other, "Y")], vec![poly(&xy, "0")]]
    )
    .is_err());
}

#[test]
fn chain_verification_examples() {
    let m = example();
    let report = verify_chain(
        &m,
        &a_chain(&m, &[&["U"], &["U", "V"]]),
        &b_chain(&m, &[&["X"], &["X", "Y"]]),
    )
    .unwrap();
    assert!(report.is_ok());
    assert!(report.statuses.iter().all(|s| s.is_verified()));

    let report = verify_chain(&m, &a_chain(&m, &[&["U"]]), &b_chain(&m, &[&["Z"]])).unwrap();
    match report.failures.as_slice() {
        [ChainFailure::ContractionMismatch {
            level: 0,
            expected,
            found,
        }] => {
            assert_eq!((expected.as_str(), found.as_str()), ("(U)", "(U, V)"));
        }
        other => panic!("{other:?}"),
    }

    let b = m.target().ambient().clone();
    let src = [
        ideal(m.source().ambient(), &["U"]),
        ideal(m.source().ambient(), &["U", "V"]),
    ];
    let q0 = ideal(&b, &["X", "Y^2*Z - 1"]);
    let report = verify_chain_ideals(&m, &src, &[q0.clone(), ideal(&b, &["X", "Z"])]).unwrap();
    assert!(report
        .failures
        .iter()
        .any(|f| matches!(f, ChainFailure::ContainmentFailure { level: 1, .. })));
    let report =
        verify_chain_ideals(&m, &src, &[q0.clone(), ideal(&b, &["X", "Y^2*Z - 1", "Z"])]).unwrap();
    assert!(report
        .failures
        .iter()
        .any(|f| matches!(f, ChainFailure::UnitIdeal { .. })));
    assert!(verify_chain_ideals(&m, &src, &[q0]).is_err());
}

#[test]
fn prime_chain_construction() {
    let r = ring(&["X", "Y"], 0);
    assert!(PrimeChain::new(&r, vec![ideal(&r, &["X"]), ideal(&r, &["X"])]).is_err());
    assert!(PrimeChain::new(&r, vec![ideal(&r, &["X", "Y"]), ideal(&r, &["X"])]).is_err());
    assert!(PrimeChain::new(&r, vec![ideal(&r, &["X*Y"])]).is_err());
    let c = PrimeChain::new(&r, vec![ideal(&r, &["X^3 + Y^3 + X*Y*7 + 1"])]).unwrap();
    assert_eq!(c.statuses()[0].label(), "assumed");
    assert_eq!(c.length(), 0);
}

#[test]
fn extendability_examples() {
    let m = example();
    let b = m.target().ambient().clone();
    let a = m.source().ambient().clone();
    let chain = a_chain(&m, &[&["U"], &["U", "V"]]);
    let witnesses = vec![vec![poly(&a, "V")], vec![poly(&a, "1")]];
    let out = extendability_test(&m, &ideal(&b, &["X"]), &chain, Some(&witnesses), 2).unwrap();
    assert!(!out.is_obstructed());

    let q0 = ideal(&b, &["X", "Y^2*Z - 1"]);
    let out = extendability_test(&m, &q0, &chain, Some(&witnesses), 2).unwrap();
    let cert = out.certificate().expect("going up fails");
    assert!(verify_certificate(cert).is_valid());
    assert!(telescoped_ideal(cert.ladder(), cert.picks())
        .unwrap()
        .contains(&cert.lhs())
        .unwrap());
    assert!(extendability_test(&m, &q0, &chain, None, 2)
        .unwrap()
        .is_obstructed());

    let single = a_chain(&m, &[&["U"]]);
    let out = extendability_test(
        &m,
        &ideal(&b, &["X"]),
        &single,
        Some(&[vec![poly(&a, "V")]]),
        2,
    )
    .unwrap();
    assert!(!out.is_obstructed());

    let bad = vec![vec![poly(&a, "U")], vec![poly(&a, "1")]];
    assert!(matches!(
        extendability_test(&m, &q0, &chain, Some(&bad), 2),
        Err(chainlift::Error::WitnessNotOutside { level: 0, .. })
    ));
    assert_eq!(
        default_witnesses(&m, &ideal(&a, &["U"])).unwrap(),
        vec![poly(&a, "V")]
    );
    assert_eq!(
        default_witnesses(&m, &ideal(&a, &["U", "V"])).unwrap(),
        vec![poly(&a, "1")]
    );
}

#[test]
fn lift_examples() {
    let m = example();
    let cases: [(&[&[&str]], &[&str]); 4] = [
        (&[&["U"], &["U", "V"]], &["(X)", "(X, Y)"]),
        (&[&["U", "V"]], &["(Z)"]),
        (&[&["0"]], &["(0)"]),
        (&[&["0"], &["U"], &["U", "V"]], &["(0)", "(X)", "(X, Y)"]),
    ];
    for (levels, expected) in cases {
        let source = a_chain(&m, levels);
        let out = lift_chain(&m, &source, &[], 2).unwrap();
        let lift = out.lifted().expect("lifts");
        assert_eq!(printed(lift.target.levels()), expected);
        assert!(lift.target.statuses().iter().all(|s| s.is_verified()));
        assert!(verify_chain(&m, &lift.source, &lift.target)
            .unwrap()
            .is_ok());
        assert!(!lift.consistency.is_obstructed());
        assert!(lift.transcripts.iter().all(|t| t.equal));
        let lengths = chain_length_report(lift);
        assert_eq!(
            (lengths.source_length, lengths.target_length),
            (levels.len() - 1, levels.len() - 1)
        );
    }
}

#[test]
fn lift_pool_filters_by_contraction() {
    let m = example();
    let b = m.target().ambient().clone();
    let a = m.source().ambient().clone();
    let pool = candidate_pool(
        &m,
        &ideal(&a, &["U"]),
        None,
        &[poly(&a, "V")],
        &[Ideal::zero(&b), ideal(&b, &["Z"])],
    )
    .unwrap();
    let verdict = |s: &str| {
        pool.iter()
            .find(|c| c.ideal.to_string() == s)
            .map(|c| c.verdict)
    };
    assert_eq!(verdict("(X)"), Some(CandidateVerdict::Accepted));
    assert_eq!(verdict("(Z)"), Some(CandidateVerdict::ContractionMismatch));
    assert_eq!(verdict("(0)"), Some(CandidateVerdict::ContractionMismatch));
    for c in &pool {
        if c.ideal.is_subset_of(&ideal(&b, &["Z"])).unwrap() {
            assert_ne!(c.verdict, CandidateVerdict::Accepted, "{}", c.ideal);
        }
    }
}

#[test]
fn certificate_json_round_trip() {
    let xy = ring(&["X", "Y"], 0);
    let l = ladder(&xy, &[&["X - 1/2*Y^2"], &["Y"]], &[&["Y"], &["X"]]);
    let cert = obstruction_search(&l, 2).certificate().cloned().unwrap();
    assert_eq!(
        cert.coefficients(),
        &[vec![poly(&xy, "1")], vec![poly(&xy, "1/2*Y")]]
    );
    let text = certificate_to_json(&cert);
    assert_eq!(text, certificate_to_json(&cert));
    let (back, hash) = certificate_from_json(&text).unwrap();
    assert_eq!(hash, cert.identity_hash());
    assert_eq!(certificate_to_json(&back), text);
    assert!(verify_certificate_json(&text).unwrap().is_valid());

    let at = |k: &str| {
        text.find(&format!("\n  \"{k}\""))
            .unwrap_or_else(|| panic!("no top-level {k}"))
    };
    assert!(
        at("ladder") < at("picks")
            && at("picks") < at("coefficients")
            && at("coefficients") < at("identity_hash")
    );
    assert!(certificate_from_json("{\"ladder\": 1}").is_err());
}

fn chain_consistent_ladder(rng: &mut ChaCha8Rng) -> (LadderSpec, Vec<Ideal>) {
    let r = ring(&["X", "Y", "Z"], if rng.gen_bool(0.5) { 0 } else { 32003 });
    let chains: [&[&[&str]]; 4] = [
        &[&["X"], &["X", "Y"]],
        &[&["X - Y"], &["X - Y", "Z^2 + Z + 1"]],
        &[&["0"], &["X*Y - 1"], &["X*Y - 1", "Z"]],
        &[&["Y^2 - X^3"], &["X", "Y"], &["X", "Y", "Z - 1"]],
    ];
    let chain: Vec<Ideal> = chains[rng.gen_range(0..chains.len())]
        .iter()
        .map(|g| ideal(&r, g))
        .collect();
    let mut ideals = Vec::new();
    let mut msets = Vec::new();
    for q in &chain {
        let mut gens = Vec::new();
        for g in q.generators() {
            if rng.gen_bool(0.7) {
                gens.push(g * &random_poly(rng, &r, 1, 2, false));
            }
        }
        ideals.push(Ideal::new(&r, gens).unwrap());
        let outside: Vec<Polynomial> = (0..rng.gen_range(1..=2))
            .map(|_| loop {
                let f = random_poly(rng, &r, 1, 2, false);
                if !q.contains(&f).unwrap() {
                    break f;
                }
            })
            .collect();
        msets.push(MultiplicativeSetFG::new(&r, outside).unwrap());
    }
    (LadderSpec::new(&r, ideals, msets).unwrap(), chain)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_agrees_with_recursion_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (l, bound) = random_ladder(&mut rng, if seed % 3 == 0 { 0 } else { 32003 });
        let out = obstruction_search(&l, bound);
        prop_assert_eq!(out.is_obstructed(), oracle_obstructed(&l, bound, 6).is_some());
        if let Some(cert) = out.certificate() {
            prop_assert!(verify_certificate(cert).is_valid());
            let w = retelescope(cert);
            prop_assert!(check_recursion(&l, cert.picks(), &w).is_ok());
            let again = unroll(&l, cert.picks(), &w).unwrap();
            prop_assert!(verify_certificate(&again).is_valid());
            prop_assert!(recursion_feasible(l.ideals(), &cert.elements(), 6));
        }
    }

    #[test]
    fn prime_chains_block_obstructions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (l, chain) = chain_consistent_ladder(&mut rng);
        for (a, q) in l.ideals().iter().zip(&chain) {
            prop_assert!(a.is_subset_of(q).unwrap());
        }
        for bound in 0..=2 {
            prop_assert!(!obstruction_search(&l, bound).is_obstructed());
        }
    }

    #[test]
    fn example_chains_extend_with_sampled_witnesses(seed in any::<u64>()) {
        let m = example();
        let a = m.source().ambient().clone();
        let b = m.target().ambient().clone();
        let cases: [(&[&[&str]], &[&str]); 4] = [
            (&[&["U"], &["U", "V"]], &["X"]),
            (&[&["V"], &["U", "V"]], &["Y"]),
            (&[&["U", "V"]], &["Z"]),
            (&[&["U - V"], &["U", "V"]], &["X - Y"]),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (levels, q0) = cases[rng.gen_range(0..cases.len())];
        let chain = a_chain(&m, levels);
        let witnesses: Vec<Vec<Polynomial>> = chain
            .levels()
            .iter()
            .map(|p| {
                (0..rng.gen_range(1..=2))
                    .map(|_| loop {
                        let g = random_poly(&mut rng, &a, 2, 2, false);
                        if !p.contains(&g).unwrap() {
                            break g;
                        }
                    })
                    .collect()
            })
            .collect();
        let bound = rng.gen_range(0..=3);
        let out = extendability_test(&m, &ideal(&b, q0), &chain, Some(&witnesses), bound).unwrap();
        prop_assert!(!out.is_obstructed());
    }

    #[test]
    fn search_is_deterministic_under_permutation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (l, bound) = random_ladder(&mut rng, 32003);
        let first = obstruction_search(&l, bound);
        let ideals: Vec<Ideal> = l.ideals().iter().map(|i| {
            let mut g = i.generators().to_vec();
            g.shuffle(&mut rng);
            Ideal::new(l.ring(), g).unwrap()
        }).collect();
        let permuted = LadderSpec::new(l.ring(), ideals, l.msets().to_vec()).unwrap();
        let second = obstruction_search(&permuted, bound);
        let parallel = obstruction_search_with(&l, bound, &SearchOptions { threads: 4 });
        prop_assert_eq!(first.is_obstructed(), second.is_obstructed());
        if let (Some(a), Some(b), Some(c)) = (first.certificate(), second.certificate(), parallel.certificate()) {
            prop_assert_eq!(a.picks(), b.picks());
            prop_assert_eq!(certificate_to_json(a), certificate_to_json(c));
        }
        prop_assert_eq!(first.is_obstructed(), parallel.is_obstructed());
    }
}

#[test]
fn lift_is_deterministic_under_permutation() {
    let m = example();
    let a = m.source().ambient().clone();
    let forward = PrimeChain::new(
        &a,
        vec![ideal(&a, &["0"]), ideal(&a, &["U"]), ideal(&a, &["U", "V"])],
    )
    .unwrap();
    let shuffled = PrimeChain::new(
        &a,
        vec![
            ideal(&a, &["0"]),
            ideal(&a, &["U"]),
            ideal(&a, &["V + U", "U"]),
        ],
    )
    .unwrap();
    let x = lift_chain(&m, &forward, &[], 2).unwrap();
    let y = lift_chain(&m, &shuffled, &[], 2).unwrap();
    assert_eq!(
        printed(x.lifted().unwrap().target.levels()),
        printed(y.lifted().unwrap().target.levels())
    );
}

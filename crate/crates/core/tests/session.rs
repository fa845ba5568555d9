use chainlift::session::{
    parse_session, run_script, Object, RunOptions, SessionError, TaskKind, Verdict,
};

const MONOMIAL_MAP: &str = include_str!("../fixtures/monomial_map.session");

#[test]
fn example_fixture_parses() {
    let s = parse_session(MONOMIAL_MAP).unwrap();
    assert!(s.ring("A").is_some() && s.ring("B").is_some());
    assert_eq!(s.ring("B").unwrap().ambient().vars(), &["X", "Y", "Z"]);
    assert_eq!(
        s.ring("B").unwrap().ambient().grading().unwrap().weights(),
        &[1, 1, -1]
    );
    assert!(s.map("phi").is_some());
    let (ring, levels) = s.chain("C").unwrap();
    assert_eq!(ring, "A");
    assert_eq!(
        levels.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        ["(U)", "(U, V)"]
    );
    assert!(matches!(s.object("phi"), Some(Object::Map { .. })));
    assert!(s
        .tasks()
        .iter()
        .any(|t| t.name == "contract_Z" && matches!(t.kind, TaskKind::Contract { .. })));
    let order: Vec<&str> = s.declarations().map(|(n, _)| n).take(3).collect();
    assert_eq!(order, ["A", "B", "phi"]);
}

#[test]
fn empty_and_comment_only() {
    for text in ["", "\n\n", "# nothing here\n   # indented\n"] {
        let s = parse_session(text).unwrap();
        assert_eq!(s.declarations().count(), 0);
        assert!(s.tasks().is_empty());
        assert!(run_script(&s, &RunOptions::default()).unwrap().is_empty());
    }
}

#[test]
fn resolution_and_syntax_errors_carry_lines() {
    let err = parse_session("ring A vars U char 0\n\nideal q in B gens U\n").unwrap_err();
    match err {
        SessionError::Resolution { line, name, .. } => assert_eq!((line, name.as_str()), (3, "B")),
        other => panic!("{other:?}"),
    }
    let err = parse_session("ring A vars U char 0\nring A vars V char 0\n").unwrap_err();
    assert!(matches!(err, SessionError::Duplicate { line: 2, .. }));
    let err = parse_session("ring A vars U char 0\nideal q in A gens U +\n").unwrap_err();
    assert!(
        matches!(
            err,
            SessionError::Build { line: 2, .. } | SessionError::Syntax { line: 2, .. }
        ),
        "{err:?}"
    );
    let err = parse_session("frobnicate x\n").unwrap_err();
    assert!(matches!(err, SessionError::Syntax { line: 1, .. }));
    let err = parse_session("ring A vars U char 0\ntask t kernel nope\n").unwrap_err();
    assert!(err.to_string().starts_with("line 2:"), "{err}");
    let err = parse_session("ring A vars U char 0\nmap f A -> A images U, U\n").unwrap_err();
    assert!(err.to_string().starts_with("line 2:"), "{err}");
    let err = parse_session("ring A vars U char 0\ntask t obstruct L bound 2 expect maybe\n")
        .unwrap_err();
    assert!(err.to_string().starts_with("line 2:"), "{err}");
}

#[test]
fn contraction_task_reports() {
    let s = parse_session(MONOMIAL_MAP).unwrap();
    let opts = RunOptions {
        task: Some("contract_Z".into()),
        ..RunOptions::default()
    };
    let reports = run_script(&s, &opts).unwrap();
    assert_eq!(reports.len(), 1);
    let r = &reports[0];
    assert_eq!(r.verdict, Verdict::Ok);
    assert_eq!(r.summary, "contraction = (U, V)");
    assert_eq!(r.witness["contraction"], serde_json::json!(["U", "V"]));
    assert_eq!(r.version, chainlift::VERSION);
    assert!(matches!(
        run_script(
            &s,
            &RunOptions {
                task: Some("nope".into()),
                ..RunOptions::default()
            }
        ),
        Err(SessionError::UnknownTask(_))
    ));
}

#[test]
fn lift_task_carries_transcripts() {
    let s = parse_session(MONOMIAL_MAP).unwrap();
    let r = &run_script(
        &s,
        &RunOptions {
            task: Some("lift_C".into()),
            ..RunOptions::default()
        },
    )
    .unwrap()[0];
    assert_eq!(r.verdict, Verdict::Lifted);
    assert_eq!(r.witness["target"], serde_json::json!([["X"], ["X", "Y"]]));
    let t = r.witness["transcripts"].as_array().unwrap();
    assert_eq!(t.len(), 2);
    assert!(t.iter().all(|t| t["equal"] == serde_json::json!(true)));
    assert_eq!(t[1]["contraction"], serde_json::json!(["U", "V"]));
}

#[test]
fn bound_override() {
    let text = "\
ring R vars X, Y char 0
ideal a0 in R gens X
ideal a1 in R gens Y
mset F0 in R gens Y
mset F1 in R gens X
ladder L in R ideals a0, a1 msets F0, F1
task t obstruct L bound 2
";
    let s = parse_session(text).unwrap();
    let at = |bound| {
        let r = run_script(
            &s,
            &RunOptions {
                bound,
                ..RunOptions::default()
            },
        )
        .unwrap()
        .remove(0);
        (r.verdict, r.witness.clone())
    };
    let (v, w) = at(Some(0));
    assert_eq!(v, Verdict::NoObstruction);
    assert_eq!(w["bound"], 0);
    assert_eq!(at(Some(1)).0, Verdict::Obstructed);
    assert_eq!(at(None).0, Verdict::Obstructed);

    // The empty pick already certifies when a0 is the unit ideal.
    let unit = text.replace("ideal a0 in R gens X", "ideal a0 in R gens X, X - 1");
    let s = parse_session(&unit).unwrap();
    let r = run_script(
        &s,
        &RunOptions {
            bound: Some(0),
            ..RunOptions::default()
        },
    )
    .unwrap()
    .remove(0);
    assert_eq!(r.verdict, Verdict::Obstructed);
}

#[test]
fn library_errors_become_reports() {
    let text = "\
ring A vars U, V char 0
ring B vars X, Y, Z char 0
map phi A -> B images X*Z, Y*Z
ideal wrong in A gens U
task t contract phi wrong
";
    let s = parse_session(text).unwrap();
    let r = run_script(&s, &RunOptions::default()).unwrap().remove(0);
    assert_eq!(r.verdict, Verdict::Error);
    assert!(!r.passed);
}

#[test]
fn verdict_strings_round_trip() {
    for v in [
        Verdict::Ok,
        Verdict::Holds,
        Verdict::Fails,
        Verdict::Obstructed,
        Verdict::NoObstruction,
        Verdict::Lifted,
        Verdict::NotFound,
        Verdict::Mismatch,
        Verdict::Unknown,
        Verdict::Error,
    ] {
        assert_eq!(v.to_string().parse::<Verdict>(), Ok(v));
        assert_eq!(
            serde_json::to_value(v).unwrap(),
            serde_json::json!(v.to_string())
        );
    }
}

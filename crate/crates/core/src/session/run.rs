use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::script::{Object, SessionScript, Task, TaskKind};
use super::SessionError;
use crate::chain::{
    certificate_to_json, chain_length_report, extendability_test, lift_chain,
    obstruction_search_with, verify_certificate, verify_chain_ideals, LevelPool, LiftOutcome,
    ObstructionCertificate, ObstructionOutcome, PrimeChain, SearchOptions,
};
use crate::error::Result;
use crate::ideal::{Ideal, PrimalityStatus};
use crate::poly::{parse_poly, Polynomial};
use crate::ringmap::ContractionCheck;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Ok,
    Holds,
    Fails,
    Obstructed,
    NoObstruction,
    Lifted,
    NotFound,
    Mismatch,
    Unknown,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Obstructed => "obstructed",
            Verdict::NoObstruction => "no-obstruction",
            Verdict::Lifted => "lifted",
            Verdict::NotFound => "not-found",
            Verdict::Mismatch => "mismatch",
            Verdict::Unknown => "unknown",
            Verdict::Error => "error",
        }
    }

    /// Verdicts that count as success when no expectation is given.
    pub fn is_success(self) -> bool {
        matches!(
            self,
            Verdict::Ok | Verdict::Holds | Verdict::NoObstruction | Verdict::Lifted
        )
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        Ok(match s {
            "ok" => Verdict::Ok,
            "holds" => Verdict::Holds,
            "fails" => Verdict::Fails,
            "obstructed" => Verdict::Obstructed,
            "no-obstruction" => Verdict::NoObstruction,
            "lifted" => Verdict::Lifted,
            "not-found" => Verdict::NotFound,
            "mismatch" => Verdict::Mismatch,
            "unknown" => Verdict::Unknown,
            "error" => Verdict::Error,
            _ => return Err(()),
        })
    }
}

/// Outcome of one task.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: String,
    pub kind: String,
    pub verdict: Verdict,
    pub expected: Option<Verdict>,
    /// The verdict matches the expectation, or is a success verdict when
    /// there is none.
    pub passed: bool,
    pub summary: String,
    pub details: Vec<String>,
    pub witness: Value,
    pub elapsed_ms: u64,
    pub version: String,
    #[serde(skip)]
    pub certificate: Option<ObstructionCertificate>,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Run only this task.
    pub task: Option<String>,
    /// Overrides every task's exponent bound.
    pub bound: Option<u32>,
    /// Run tasks concurrently; reports stay in file order.
    pub parallel: bool,
    /// Write certificates of obstructed tasks to `<dir>/<task>.cert.json`.
    pub emit_certs: Option<PathBuf>,
}

fn strs(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn paren(ps: &[Polynomial]) -> String {
    if ps.is_empty() {
        "(0)".into()
    } else {
        format!("({})", strs(ps).join(", "))
    }
}

fn ideal_json(i: &Ideal) -> Value {
    json!(strs(i.canonical().generators()))
}

struct Outcome {
    verdict: Verdict,
    summary: String,
    details: Vec<String>,
    witness: Value,
    certificate: Option<ObstructionCertificate>,
}

impl Outcome {
    fn new(verdict: Verdict, summary: String, witness: Value) -> Outcome {
        Outcome {
            verdict,
            summary,
            details: Vec::new(),
            witness,
            certificate: None,
        }
    }
}

fn certificate_json(cert: &ObstructionCertificate) -> Value {
    json!({
        "picks": cert.picks(),
        "elements": strs(&cert.elements()),
        "coefficients": cert.coefficients().iter().map(|r| strs(r)).collect::<Vec<_>>(),
        "identity_hash": cert.identity_hash(),
        "replay": verify_certificate(cert).is_valid(),
    })
}

fn obstruction_outcome(out: ObstructionOutcome) -> Outcome {
    match out {
        ObstructionOutcome::Obstructed(cert) => {
            let elements = strs(&cert.elements());
            let mut o = Outcome::new(
                Verdict::Obstructed,
                format!("obstructed: picks f = [{}]", elements.join(", ")),
                certificate_json(&cert),
            );
            o.details
                .push(format!("identity {} = sum of telescoped terms", cert.lhs()));
            o.certificate = Some(cert);
            o
        }
        ObstructionOutcome::NoObstructionUpToBound(e) => Outcome::new(
            Verdict::NoObstruction,
            format!("no obstruction with exponents up to {e}"),
            json!({ "bound": e }),
        ),
    }
}

fn chain_ideals<'a>(script: &'a SessionScript, name: &str) -> (&'a str, Vec<Ideal>) {
    let (ring, levels) = script.chain(name).expect("resolved at parse time");
    (ring, levels.into_iter().cloned().collect())
}

fn run_task(script: &SessionScript, task: &Task, opts: &RunOptions) -> Result<Outcome> {
    let threads = if opts.parallel {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        1
    };
    let search = SearchOptions { threads };
    let map_of = |n: &str| script.map(n).expect("resolved");
    let ideal_of = |n: &str| script.ideal(n).expect("resolved");
    Ok(match &task.kind {
        TaskKind::Contract { map, ideal } => {
            let c = map_of(map).contract(ideal_of(ideal))?.canonical();
            Outcome::new(
                Verdict::Ok,
                format!("contraction = {c}"),
                json!({ "contraction": ideal_json(&c) }),
            )
        }
        TaskKind::Extend { map, ideal } => {
            let e = map_of(map).extend(ideal_of(ideal))?.canonical();
            Outcome::new(
                Verdict::Ok,
                format!("extension = {e}"),
                json!({ "extension": ideal_json(&e) }),
            )
        }
        TaskKind::Kernel { map } => {
            let k = map_of(map).kernel().canonical();
            Outcome::new(
                Verdict::Ok,
                format!("kernel = {k}"),
                json!({ "kernel": ideal_json(&k) }),
            )
        }
        TaskKind::CheckContraction { map, ideal } => match map_of(map)
            .contraction_property_check(ideal_of(ideal))?
        {
            ContractionCheck::Holds => Outcome::new(
                Verdict::Holds,
                "contraction of the extension equals the ideal".into(),
                json!({}),
            ),
            ContractionCheck::Fails { witness } => Outcome::new(
                Verdict::Fails,
                format!("{witness} lies in the contraction of the extension but not in the ideal"),
                json!({ "witness": witness.to_string() }),
            ),
        },
        TaskKind::MinPrimes { ideal } => {
            let m = ideal_of(ideal).minimal_primes();
            let primes: Vec<String> = m.primes.iter().map(|p| p.to_string()).collect();
            let mut o = Outcome::new(
                Verdict::Ok,
                format!(
                    "minimal primes {{{}}}{}",
                    primes.join(", "),
                    if m.complete { "" } else { " (incomplete)" }
                ),
                json!({
                    "primes": m.primes.iter().map(ideal_json).collect::<Vec<_>>(),
                    "complete": m.complete,
                    "unsplit": m.unsplit.iter().map(ideal_json).collect::<Vec<_>>(),
                }),
            );
            for p in &m.primes {
                o.details.push(format!("{p}: {}", p.primality()));
            }
            o
        }
        TaskKind::Primality { ideal } => {
            let st = ideal_of(ideal).primality();
            let verdict = match st {
                PrimalityStatus::VerifiedPrime(_) => Verdict::Holds,
                PrimalityStatus::Disproved(_) => Verdict::Fails,
                _ => Verdict::Unknown,
            };
            Outcome::new(
                verdict,
                st.to_string(),
                json!({ "status": st.label(), "reason": st.to_string() }),
            )
        }
        TaskKind::Member { ideal, poly } => {
            let i = ideal_of(ideal);
            let f = parse_poly(poly, i.ring())?;
            match i.contains_with_combination(&f)? {
                Some(c) => {
                    let mut o = Outcome::new(
                        Verdict::Holds,
                        format!("{f} is in {i}"),
                        json!({ "combination": strs(&c), "generators": strs(i.generators()) }),
                    );
                    o.details
                        .push(format!("{f} = {}", combination_text(&c, i.generators())));
                    o
                }
                None => Outcome::new(
                    Verdict::Fails,
                    format!("{f} is not in {i}"),
                    json!({ "normal_form": i.canonical_basis().reduce(&f).to_string() }),
                ),
            }
        }
        TaskKind::Obstruct { ladder, bound } => {
            let l = script.ladder(ladder).expect("resolved");
            obstruction_outcome(obstruction_search_with(
                l,
                opts.bound.unwrap_or(*bound),
                &search,
            ))
        }
        TaskKind::Extendable {
            map,
            ideal,
            chain,
            bound,
        } => {
            let (ring, levels) = chain_ideals(script, chain);
            let src = PrimeChain::new(script.ring(ring).expect("resolved").ambient(), levels)?;
            let out = extendability_test(
                map_of(map),
                ideal_of(ideal),
                &src,
                None,
                opts.bound.unwrap_or(*bound),
            )?;
            obstruction_outcome(out)
        }
        TaskKind::VerifyChain {
            map,
            source,
            target,
        } => {
            let (_, src) = chain_ideals(script, source);
            let (_, dst) = chain_ideals(script, target);
            let report = verify_chain_ideals(map_of(map), &src, &dst)?;
            let verdict = if report.is_ok() {
                Verdict::Ok
            } else {
                Verdict::Mismatch
            };
            let failures: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
            let mut o = Outcome::new(
                verdict,
                if report.is_ok() {
                    "chain verified".into()
                } else {
                    failures.join("; ")
                },
                json!({
                    "failures": failures,
                    "contractions": report.contractions.iter().map(|t| json!({
                        "level": t.level,
                        "expected": strs(&t.expected),
                        "contraction": strs(&t.contraction),
                        "equal": t.equal,
                    })).collect::<Vec<_>>(),
                    "statuses": report.statuses.iter().map(|s| s.label()).collect::<Vec<_>>(),
                }),
            );
            for (i, s) in report.statuses.iter().enumerate() {
                o.details.push(format!("level {i}: {s}"));
            }
            o
        }
        TaskKind::Lift {
            map,
            chain,
            bound,
            hints,
        } => {
            let (ring, levels) = chain_ideals(script, chain);
            let src = PrimeChain::new(script.ring(ring).expect("resolved").ambient(), levels)?;
            let hints: Vec<Ideal> = hints.iter().map(|h| ideal_of(h).clone()).collect();
            match lift_chain(map_of(map), &src, &hints, opts.bound.unwrap_or(*bound))? {
                LiftOutcome::Lifted(l) => {
                    let lengths = chain_length_report(&l);
                    let mut o = Outcome::new(
                        Verdict::Lifted,
                        format!("lifted {} to {}", l.source, l.target),
                        json!({
                            "target": l.target.levels().iter().map(ideal_json).collect::<Vec<_>>(),
                            "statuses": l.target.statuses().iter().map(|s| s.label()).collect::<Vec<_>>(),
                            "transcripts": l.transcripts.iter().map(|t| json!({
                                "level": t.level,
                                "expected": strs(&t.expected),
                                "contraction": strs(&t.contraction),
                                "equal": t.equal,
                            })).collect::<Vec<_>>(),
                            "lengths": { "source": lengths.source_length, "target": lengths.target_length },
                            "pools": pools_json(&l.pools),
                            "consistency": if l.consistency.is_obstructed() { "obstructed" } else { "no-obstruction" },
                        }),
                    );
                    for t in &l.transcripts {
                        o.details.push(format!(
                            "level {}: contraction {} = {}",
                            t.level,
                            paren(&t.contraction),
                            paren(&t.expected)
                        ));
                    }
                    o.details.push(lengths.to_string());
                    o
                }
                LiftOutcome::NotFound(report) => Outcome::new(
                    Verdict::NotFound,
                    "no lift among the candidates tried (not a proof that none exists)".into(),
                    json!({ "pools": pools_json(&report.pools) }),
                ),
            }
        }
    })
}

fn pools_json(pools: &[LevelPool]) -> Value {
    pools
        .iter()
        .map(|p| {
            json!({
                "level": p.level,
                "candidates": p.candidates.iter().map(|c| json!({
                    "ideal": c.ideal.to_string(),
                    "verdict": c.verdict.to_string(),
                    "contraction": c.contraction.to_string(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn combination_text(c: &[Polynomial], gens: &[Polynomial]) -> String {
    let terms: Vec<String> = c
        .iter()
        .zip(gens)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, g)| format!("({c})*({g})"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn describe(task: &Task) -> String {
    match &task.kind {
        TaskKind::Contract { map, ideal }
        | TaskKind::Extend { map, ideal }
        | TaskKind::CheckContraction { map, ideal } => {
            format!("{} {map} {ideal}", task.kind.keyword())
        }
        TaskKind::Kernel { map } => format!("kernel {map}"),
        TaskKind::MinPrimes { ideal } | TaskKind::Primality { ideal } => {
            format!("{} {ideal}", task.kind.keyword())
        }
        TaskKind::Member { ideal, poly } => format!("member {ideal} {poly}"),
        TaskKind::Obstruct { ladder, .. } => format!("obstruct {ladder}"),
        TaskKind::Extendable {
            map, ideal, chain, ..
        } => format!("extendable {map} {ideal} {chain}"),
        TaskKind::VerifyChain {
            map,
            source,
            target,
        } => format!("verify-chain {map} {source} {target}"),
        TaskKind::Lift { map, chain, .. } => format!("lift {map} {chain}"),
    }
}

fn execute(script: &SessionScript, task: &Task, opts: &RunOptions) -> Report {
    let start = Instant::now();
    let outcome = run_task(script, task, opts).unwrap_or_else(|e| {
        Outcome::new(
            Verdict::Error,
            e.to_string(),
            json!({ "error": e.to_string() }),
        )
    });
    let mut outcome = outcome;
    if let (Some(dir), Some(cert)) = (&opts.emit_certs, &outcome.certificate) {
        let path = dir.join(format!("{}.cert.json", task.name));
        match std::fs::create_dir_all(dir)
            .and_then(|_| std::fs::write(&path, certificate_to_json(cert)))
        {
            Ok(()) => outcome
                .details
                .push(format!("certificate written to {}", path.display())),
            Err(e) => {
                outcome.verdict = Verdict::Error;
                outcome.summary = format!("could not write {}: {e}", path.display());
            }
        }
    }
    let passed = match task.expect {
        Some(e) => e == outcome.verdict,
        None => outcome.verdict.is_success(),
    };
    Report {
        task: task.name.clone(),
        kind: describe(task),
        verdict: outcome.verdict,
        expected: task.expect,
        passed,
        summary: outcome.summary,
        details: outcome.details,
        witness: outcome.witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
        version: crate::VERSION.to_string(),
        certificate: outcome.certificate,
    }
}

/// Runs the selected tasks in file order.
pub fn run_script(
    script: &SessionScript,
    opts: &RunOptions,
) -> std::result::Result<Vec<Report>, SessionError> {
    let tasks: Vec<&Task> = match &opts.task {
        Some(name) => {
            let t = script.tasks().iter().find(|t| &t.name == name);
            vec![t.ok_or_else(|| SessionError::UnknownTask(name.clone()))?]
        }
        None => script.tasks().iter().collect(),
    };
    if !opts.parallel || tasks.len() < 2 {
        return Ok(tasks
            .into_iter()
            .map(|t| execute(script, t, opts))
            .collect());
    }
    Ok(std::thread::scope(|s| {
        let handles: Vec<_> = tasks
            .iter()
            .map(|t| s.spawn(move || execute(script, t, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("task thread panicked"))
            .collect()
    }))
}

/// Human-readable table of reports.
pub fn render_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        let expect = r
            .expected
            .map(|e| format!(" (expected {e})"))
            .unwrap_or_default();
        out.push_str(&format!(
            "[{mark}] {:<18} {:<14}{expect}  {}\n",
            r.task,
            r.verdict.as_str(),
            r.kind
        ));
        out.push_str(&format!("       {}\n", r.summary));
        for d in &r.details {
            out.push_str(&format!("       {d}\n"));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} task(s), {} failed\n", reports.len(), failed));
    out
}

/// JSON document `{ "version", "reports" }`.
pub fn render_json(reports: &[Report]) -> String {
    let doc = json!({ "version": crate::VERSION, "reports": reports });
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

/// The exit-code contract: all reports passed.
pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.passed)
}

impl Report {
    /// The report without its timing field, for comparisons.
    pub fn without_timing(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("elapsed_ms");
        }
        v
    }
}

impl Object {
    /// The declared ring name, for objects that live in a ring.
    pub fn ring_name(&self) -> Option<&str> {
        match self {
            Object::Ring(_) | Object::Map { .. } => None,
            Object::Ideal { ring, .. }
            | Object::Mset { ring, .. }
            | Object::Chain { ring, .. }
            | Object::Ladder { ring, .. } => Some(ring),
        }
    }
}

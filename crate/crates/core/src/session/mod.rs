//! Line-oriented session files.
//!
//! ```text
//! ring A vars U, V char 0
//! ring B vars X, Y, Z char 0 grading 1, 1, -1
//! ring L vars U, X char 0 relations U*X - 1
//! ideal q in B gens X, Y^2*Z - 1
//! mset F0 in B gens Y*Z
//! map phi A -> B images X*Z, Y*Z
//! chain C in A levels p0, p1
//! ladder L0 in B ideals a0, a1 msets F0, F1
//! task t1 contract phi q
//! task t2 lift phi C bound 3 hints q
//! task t3 obstruct L0 bound 2 expect obstructed
//! ```
//!
//! Other task kinds: `extend MAP IDEAL`, `kernel MAP`,
//! `check-contraction MAP IDEAL`, `minprimes IDEAL`, `primality IDEAL`,
//! `member IDEAL POLY`, `extendable MAP IDEAL CHAIN [bound E]`,
//! `verify-chain MAP CHAIN CHAIN`. A trailing `expect VERDICT` makes that
//! verdict the passing one. Ideals declared in a ring with relations
//! include those relations.

mod run;
mod script;

use thiserror::Error;

pub use run::{all_passed, render_json, render_text, run_script, Report, RunOptions, Verdict};
pub use script::{parse_session, Object, SessionScript, Task, TaskKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SessionError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: undeclared {kind} `{name}`")]
    Resolution {
        line: usize,
        name: String,
        kind: &'static str,
    },

    #[error("line {line}: `{name}` is already declared")]
    Duplicate { line: usize, name: String },

    #[error("line {line}: {message}")]
    Build { line: usize, message: String },

    #[error("no task named `{0}`")]
    UnknownTask(String),
}

use std::collections::HashMap;

use super::SessionError;
use crate::chain::{LadderSpec, MultiplicativeSetFG};
use crate::ideal::Ideal;
use crate::poly::{parse_poly, PolyRing, Polynomial};
use crate::ringmap::{PresentedRing, RingMap};

/// A declared object, resolved at parse time.
#[derive(Clone, Debug)]
pub enum Object {
    Ring(PresentedRing),
    /// Generators include the ring's relations.
    Ideal {
        ring: String,
        ideal: Ideal,
    },
    Mset {
        ring: String,
        set: MultiplicativeSetFG,
    },
    Map {
        source: String,
        target: String,
        map: RingMap,
    },
    /// Level ideals by name; chain validity is checked when a task uses it.
    Chain {
        ring: String,
        levels: Vec<String>,
    },
    Ladder {
        ring: String,
        ladder: LadderSpec,
    },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Ring(_) => "ring",
            Object::Ideal { .. } => "ideal",
            Object::Mset { .. } => "mset",
            Object::Map { .. } => "map",
            Object::Chain { .. } => "chain",
            Object::Ladder { .. } => "ladder",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Contract {
        map: String,
        ideal: String,
    },
    Extend {
        map: String,
        ideal: String,
    },
    Kernel {
        map: String,
    },
    CheckContraction {
        map: String,
        ideal: String,
    },
    MinPrimes {
        ideal: String,
    },
    Primality {
        ideal: String,
    },
    Member {
        ideal: String,
        poly: String,
    },
    Obstruct {
        ladder: String,
        bound: u32,
    },
    Extendable {
        map: String,
        ideal: String,
        chain: String,
        bound: u32,
    },
    VerifyChain {
        map: String,
        source: String,
        target: String,
    },
    Lift {
        map: String,
        chain: String,
        bound: u32,
        hints: Vec<String>,
    },
}

impl TaskKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            TaskKind::Contract { .. } => "contract",
            TaskKind::Extend { .. } => "extend",
            TaskKind::Kernel { .. } => "kernel",
            TaskKind::CheckContraction { .. } => "check-contraction",
            TaskKind::MinPrimes { .. } => "minprimes",
            TaskKind::Primality { .. } => "primality",
            TaskKind::Member { .. } => "member",
            TaskKind::Obstruct { .. } => "obstruct",
            TaskKind::Extendable { .. } => "extendable",
            TaskKind::VerifyChain { .. } => "verify-chain",
            TaskKind::Lift { .. } => "lift",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Task {
    pub name: String,
    pub line: usize,
    pub kind: TaskKind,
    pub expect: Option<super::Verdict>,
}

/// Declarations in file order plus the tasks that refer to them.
#[derive(Clone, Debug, Default)]
pub struct SessionScript {
    order: Vec<String>,
    objects: HashMap<String, (usize, Object)>,
    tasks: Vec<Task>,
}

const DEFAULT_BOUND: u32 = 2;

impl SessionScript {
    pub fn declarations(&self) -> impl Iterator<Item = (&str, &Object)> + '_ {
        self.order.iter().map(|n| (n.as_str(), &self.objects[n].1))
    }

    pub fn object(&self, name: &str) -> Option<&Object> {
        self.objects.get(name).map(|(_, o)| o)
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn ring(&self, name: &str) -> Option<&PresentedRing> {
        match self.object(name) {
            Some(Object::Ring(r)) => Some(r),
            _ => None,
        }
    }

    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        match self.object(name) {
            Some(Object::Ideal { ideal, .. }) => Some(ideal),
            _ => None,
        }
    }

    pub fn map(&self, name: &str) -> Option<&RingMap> {
        match self.object(name) {
            Some(Object::Map { map, .. }) => Some(map),
            _ => None,
        }
    }

    pub fn ladder(&self, name: &str) -> Option<&LadderSpec> {
        match self.object(name) {
            Some(Object::Ladder { ladder, .. }) => Some(ladder),
            _ => None,
        }
    }

    /// Ring name and level ideals of a chain.
    pub fn chain(&self, name: &str) -> Option<(&str, Vec<&Ideal>)> {
        match self.object(name) {
            Some(Object::Chain { ring, levels }) => Some((
                ring.as_str(),
                levels
                    .iter()
                    .map(|l| self.ideal(l).expect("resolved at parse time"))
                    .collect(),
            )),
            _ => None,
        }
    }

    fn declare(&mut self, line: usize, name: &str, obj: Object) -> Result<(), SessionError> {
        if self.objects.contains_key(name) || self.tasks.iter().any(|t| t.name == name) {
            return Err(SessionError::Duplicate {
                line,
                name: name.to_string(),
            });
        }
        self.order.push(name.to_string());
        self.objects.insert(name.to_string(), (line, obj));
        Ok(())
    }

    fn lookup(&self, line: usize, name: &str, kind: &'static str) -> Result<&Object, SessionError> {
        match self.object(name) {
            Some(o) if o.kind() == kind => Ok(o),
            Some(o) => Err(SessionError::Syntax {
                line,
                message: format!("`{name}` is a {}, expected a {kind}", o.kind()),
            }),
            None => Err(SessionError::Resolution {
                line,
                name: name.to_string(),
                kind,
            }),
        }
    }

    fn ring_of(&self, line: usize, name: &str) -> Result<&PresentedRing, SessionError> {
        match self.lookup(line, name, "ring")? {
            Object::Ring(r) => Ok(r),
            _ => unreachable!(),
        }
    }

    fn ideal_ring(&self, line: usize, name: &str) -> Result<&str, SessionError> {
        match self.lookup(line, name, "ideal")? {
            Object::Ideal { ring, .. } => Ok(ring),
            _ => unreachable!(),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> SessionError {
    SessionError::Syntax {
        line,
        message: message.into(),
    }
}

/// Splits `text` at whole-word occurrences of `keywords`, which must appear
/// in the given order (each optional unless listed in `required`).
fn segments<'a>(
    line: usize,
    text: &'a str,
    keywords: &[&'static str],
    required: &[&'static str],
) -> Result<HashMap<&'static str, &'a str>, SessionError> {
    let words: Vec<(usize, &str)> = word_spans(text);
    let mut marks: Vec<(usize, usize, &'static str)> = Vec::new();
    let mut next = 0;
    for (start, w) in &words {
        if let Some(k) = keywords[next..].iter().position(|k| k == w) {
            next += k + 1;
            marks.push((*start, start + w.len(), keywords[next - 1]));
        } else if keywords.contains(w) {
            return Err(syntax(line, format!("keyword `{w}` out of place")));
        }
    }
    if let Some((first, _, _)) = marks.first() {
        if !text[..*first].trim().is_empty() {
            return Err(syntax(
                line,
                format!("unexpected `{}`", text[..*first].trim()),
            ));
        }
    } else if !text.trim().is_empty() {
        return Err(syntax(line, format!("unexpected `{}`", text.trim())));
    }
    let mut out = HashMap::new();
    for (i, &(_, end, k)) in marks.iter().enumerate() {
        let stop = marks.get(i + 1).map_or(text.len(), |m| m.0);
        out.insert(k, text[end..stop].trim());
    }
    for k in required {
        if !out.contains_key(k) {
            return Err(syntax(line, format!("missing `{k}`")));
        }
    }
    Ok(out)
}

fn word_spans(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn name_ok(line: usize, name: &str) -> Result<(), SessionError> {
    if name.is_empty()
        || !name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '-')
    {
        return Err(syntax(line, format!("invalid name `{name}`")));
    }
    Ok(())
}

fn parse_bound(line: usize, text: Option<&&str>) -> Result<u32, SessionError> {
    match text {
        None => Ok(DEFAULT_BOUND),
        Some(t) => t.parse().map_err(|_| {
            syntax(
                line,
                format!("bound must be a nonnegative integer, got `{t}`"),
            )
        }),
    }
}

/// Parses the line-oriented session format. `#` starts a comment.
pub fn parse_session(text: &str) -> Result<SessionScript, SessionError> {
    let mut script = SessionScript::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        match head {
            "ring" => parse_ring(&mut script, line, rest)?,
            "ideal" => parse_ideal(&mut script, line, rest)?,
            "mset" => parse_mset(&mut script, line, rest)?,
            "map" => parse_map(&mut script, line, rest)?,
            "chain" => parse_chain(&mut script, line, rest)?,
            "ladder" => parse_ladder(&mut script, line, rest)?,
            "task" => parse_task(&mut script, line, rest)?,
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(script)
}

fn split_name(line: usize, rest: &str) -> Result<(String, String), SessionError> {
    let (name, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    name_ok(line, name)?;
    Ok((name.to_string(), tail.trim().to_string()))
}

fn build_err(line: usize, e: impl std::fmt::Display) -> SessionError {
    SessionError::Build {
        line,
        message: e.to_string(),
    }
}

fn parse_ring(script: &mut SessionScript, line: usize, rest: &str) -> Result<(), SessionError> {
    let (name, tail) = split_name(line, rest)?;
    let seg = segments(
        line,
        &tail,
        &["vars", "char", "grading", "relations"],
        &["vars"],
    )?;
    let vars = list(seg["vars"]);
    let ch: u32 = match seg.get("char") {
        Some(t) => t
            .parse()
            .map_err(|_| syntax(line, format!("bad characteristic `{t}`")))?,
        None => 0,
    };
    let ring = match seg.get("grading") {
        Some(g) => {
            let w = list(g)
                .iter()
                .map(|x| x.parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| syntax(line, "grading weights must be integers"))?;
            if w.len() != vars.len() {
                return Err(syntax(
                    line,
                    format!("{} weights for {} variables", w.len(), vars.len()),
                ));
            }
            PolyRing::with_grading(&vars, ch, w)
        }
        None => PolyRing::new(&vars, ch),
    }
    .map_err(|e| build_err(line, e))?;
    let relations = match seg.get("relations") {
        Some(t) => list(t)
            .iter()
            .map(|s| parse_poly(s, &ring))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| build_err(line, e))?,
        None => Vec::new(),
    };
    let presented = PresentedRing::new(&ring, relations).map_err(|e| build_err(line, e))?;
    script.declare(line, &name, Object::Ring(presented))
}

fn polys(line: usize, ring: &PresentedRing, text: &str) -> Result<Vec<Polynomial>, SessionError> {
    list(text)
        .iter()
        .map(|s| parse_poly(s, ring.ambient()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| build_err(line, e))
}

fn parse_ideal(script: &mut SessionScript, line: usize, rest: &str) -> Result<(), SessionError> {
    let (name, tail) = split_name(line, rest)?;
    let seg = segments(line, &tail, &["in", "gens"], &["in", "gens"])?;
    let ring_name = seg["in"].to_string();
    let ring = script.ring_of(line, &ring_name)?;
    let gens = polys(line, ring, seg["gens"])?;
    let ideal = ring.ideal(gens).map_err(|e| build_err(line, e))?;
    script.declare(
        line,
        &name,
        Object::Ideal {
            ring: ring_name,
            ideal,
        },
    )
}

fn parse_mset(script: &mut SessionScript, line: usize, rest: &str) -> Result<(), SessionError> {
    let (name, tail) = split_name(line, rest)?;
    let seg = segments(line, &tail, &["in", "gens"], &["in", "gens"])?;
    let ring_name = seg["in"].to_string();
    let ring = script.ring_of(line, &ring_name)?;
    let gens = polys(line, ring, seg["gens"])?;
    let set = MultiplicativeSetFG::new(ring.ambient(), gens).map_err(|e| build_err(line, e))?;
    script.declare(
        line,
        &name,
        Object::Mset {
            ring: ring_name,
            set,
        },
    )
}

fn parse_map(script: &mut SessionScript, line: usize, rest: &str) -> Result<(), SessionError> {
    let (name, tail) = split_name(line, rest)?;
    let (arrow, images) = tail
        .split_once("images")
        .ok_or_else(|| syntax(line, "missing `images`"))?;
    let (src, dst) = arrow
        .split_once("->")
        .ok_or_else(|| syntax(line, "expected `SOURCE -> TARGET`"))?;
    let (src, dst) = (src.trim().to_string(), dst.trim().to_string());
    let source = script.ring_of(line, &src)?.clone();
    let target = script.ring_of(line, &dst)?.clone();
    let images = polys(line, &target, images)?;
    let map = RingMap::new(source, target, images).map_err(|e| build_err(line, e))?;
    script.declare(
        line,
        &name,
        Object::Map {
            source: src,
            target: dst,
            map,
        },
    )
}

fn parse_chain(script: &mut SessionScript, line: usize, rest: &str) -> Result<(), SessionError> {
    let (name, tail) = split_name(line, rest)?;
    let seg = segments(line, &tail, &["in", "levels"], &["in", "levels"])?;
    let ring = seg["in"].to_string();
    script.ring_of(line, &ring)?;
    let levels = list(seg["levels"]);
    if levels.is_empty() {
        return Err(syntax(line, "a chain needs at least one level"));
    }
    for l in &levels {
        if script.ideal_ring(line, l)? != ring {
            return Err(syntax(line, format!("ideal `{l}` is not in ring `{ring}`")));
        }
    }
    script.declare(line, &name, Object::Chain { ring, levels })
}

fn parse_ladder(script: &mut SessionScript, line: usize, rest: &str) -> Result<(), SessionError> {
    let (name, tail) = split_name(line, rest)?;
    let seg = segments(
        line,
        &tail,
        &["in", "ideals", "msets"],
        &["in", "ideals", "msets"],
    )?;
    let ring_name = seg["in"].to_string();
    let ring = script.ring_of(line, &ring_name)?.ambient().clone();
    let mut ideals = Vec::new();
    for n in list(seg["ideals"]) {
        if script.ideal_ring(line, &n)? != ring_name {
            return Err(syntax(
                line,
                format!("ideal `{n}` is not in ring `{ring_name}`"),
            ));
        }
        ideals.push(script.ideal(&n).expect("checked").clone());
    }
    let mut msets = Vec::new();
    for n in list(seg["msets"]) {
        match script.lookup(line, &n, "mset")? {
            Object::Mset { ring: r, set } if *r == ring_name => msets.push(set.clone()),
            _ => {
                return Err(syntax(
                    line,
                    format!("mset `{n}` is not in ring `{ring_name}`"),
                ))
            }
        }
    }
    let ladder = LadderSpec::new(&ring, ideals, msets).map_err(|e| build_err(line, e))?;
    script.declare(
        line,
        &name,
        Object::Ladder {
            ring: ring_name,
            ladder,
        },
    )
}

fn parse_task(script: &mut SessionScript, line: usize, rest: &str) -> Result<(), SessionError> {
    let (name, tail) = split_name(line, rest)?;
    if script.objects.contains_key(&name) || script.tasks.iter().any(|t| t.name == name) {
        return Err(SessionError::Duplicate { line, name });
    }
    let mut words: Vec<&str> = tail.split_whitespace().collect();
    let mut expect = None;
    if words.len() >= 2 && words[words.len() - 2] == "expect" {
        let v = words[words.len() - 1];
        expect = Some(
            v.parse()
                .map_err(|_| syntax(line, format!("unknown verdict `{v}`")))?,
        );
        words.truncate(words.len() - 2);
    }
    let (&kw, args) = words
        .split_first()
        .ok_or_else(|| syntax(line, "missing task kind"))?;
    let arity = |n: usize| -> Result<(), SessionError> {
        if args.len() < n {
            Err(syntax(line, format!("`{kw}` needs {n} arguments")))
        } else {
            Ok(())
        }
    };
    let kind = match kw {
        "contract" | "extend" | "check-contraction" => {
            arity(2)?;
            expect_exact(line, kw, args, 2)?;
            script.lookup(line, args[0], "map")?;
            script.lookup(line, args[1], "ideal")?;
            let (map, ideal) = (args[0].to_string(), args[1].to_string());
            match kw {
                "contract" => TaskKind::Contract { map, ideal },
                "extend" => TaskKind::Extend { map, ideal },
                _ => TaskKind::CheckContraction { map, ideal },
            }
        }
        "kernel" => {
            expect_exact(line, kw, args, 1)?;
            script.lookup(line, args[0], "map")?;
            TaskKind::Kernel {
                map: args[0].to_string(),
            }
        }
        "minprimes" | "primality" => {
            expect_exact(line, kw, args, 1)?;
            script.lookup(line, args[0], "ideal")?;
            let ideal = args[0].to_string();
            if kw == "minprimes" {
                TaskKind::MinPrimes { ideal }
            } else {
                TaskKind::Primality { ideal }
            }
        }
        "member" => {
            arity(2)?;
            let ring = script.ideal_ring(line, args[0])?.to_string();
            let poly = args[1..].join(" ");
            parse_poly(&poly, script.ring_of(line, &ring)?.ambient())
                .map_err(|e| build_err(line, e))?;
            TaskKind::Member {
                ideal: args[0].to_string(),
                poly,
            }
        }
        "obstruct" => {
            arity(1)?;
            script.lookup(line, args[0], "ladder")?;
            let rest = args[1..].join(" ");
            let seg = segments(line, &rest, &["bound"], &[])?;
            TaskKind::Obstruct {
                ladder: args[0].to_string(),
                bound: parse_bound(line, seg.get("bound"))?,
            }
        }
        "extendable" => {
            arity(3)?;
            script.lookup(line, args[0], "map")?;
            script.lookup(line, args[1], "ideal")?;
            script.lookup(line, args[2], "chain")?;
            let rest = args[3..].join(" ");
            let seg = segments(line, &rest, &["bound"], &[])?;
            TaskKind::Extendable {
                map: args[0].to_string(),
                ideal: args[1].to_string(),
                chain: args[2].to_string(),
                bound: parse_bound(line, seg.get("bound"))?,
            }
        }
        "verify-chain" => {
            expect_exact(line, kw, args, 3)?;
            script.lookup(line, args[0], "map")?;
            script.lookup(line, args[1], "chain")?;
            script.lookup(line, args[2], "chain")?;
            TaskKind::VerifyChain {
                map: args[0].to_string(),
                source: args[1].to_string(),
                target: args[2].to_string(),
            }
        }
        "lift" => {
            arity(2)?;
            script.lookup(line, args[0], "map")?;
            script.lookup(line, args[1], "chain")?;
            let rest = args[2..].join(" ");
            let seg = segments(line, &rest, &["bound", "hints"], &[])?;
            let hints = seg.get("hints").map(|h| list(h)).unwrap_or_default();
            for h in &hints {
                script.lookup(line, h, "ideal")?;
            }
            TaskKind::Lift {
                map: args[0].to_string(),
                chain: args[1].to_string(),
                bound: parse_bound(line, seg.get("bound"))?,
                hints,
            }
        }
        other => return Err(syntax(line, format!("unknown task kind `{other}`"))),
    };
    script.tasks.push(Task {
        name,
        line,
        kind,
        expect,
    });
    Ok(())
}

fn expect_exact(line: usize, kw: &str, args: &[&str], n: usize) -> Result<(), SessionError> {
    if args.len() != n {
        return Err(syntax(
            line,
            format!("`{kw}` takes {n} arguments, got {}", args.len()),
        ));
    }
    Ok(())
}

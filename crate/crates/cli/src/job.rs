//! The job file format, version 1.
//!
//! A job is a sequence of `[section]` headers followed by `key = value`
//! lines. Blank lines and lines starting with `#` are ignored.
//!
//! ```text
//! [job]
//! version = 1
//! name = plane
//!
//! [ring]
//! d = 2
//! p = 1
//!
//! [modules]
//! A = [2,0]
//! F = maximal
//! E1 = [2,0]@1 [0,3]@1
//!
//! [task]
//! kind = mixed
//! index = (0,1,[1])
//!
//! [output]
//! format = csv
//! ```
//!
//! Terms are x-exponent vectors followed by a one-based free-module slot,
//! `[2,0]@1` being `x^2 e_1`. `A` lists plain exponent vectors. `F` and the
//! `E<i>` accept `maximal` for `𝔪R^p` and `free` for `R^p`. Candidates name
//! their source first: `E1:[1,0]@1`, `J:[0,1]@1`, `G1:[1,0]@1`. Indices are
//! `(j,k0,[k1,..,kq])`. Grids list one inclusive range per axis, `1..4, 0, 0..2`.

use std::fmt::Write as _;

use mixmult_core::corpus::{CaseSpec, Term};
use mixmult_core::harness::Theorem;
use mixmult_core::multiplicity::MultiIndex;
use mixmult_core::sequences::SequenceMode;
use mixmult_core::{FunctionKind, Source};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const JOB_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: arity mismatch: {reason}")]
    Arity { line: usize, reason: String },
    #[error("line {line}: unknown reference {name}")]
    UnknownReference { line: usize, name: String },
}

impl JobError {
    pub fn line(&self) -> usize {
        match self {
            JobError::Parse { line, .. }
            | JobError::Arity { line, .. }
            | JobError::UnknownReference { line, .. } => *line,
        }
    }
}

fn parse_err(line: usize, reason: impl Into<String>) -> JobError {
    JobError::Parse {
        line,
        reason: reason.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Human,
    Structured,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Human => "human",
            Format::Structured => "structured",
            Format::Csv => "csv",
        }
    }

    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "human" => Some(Format::Human),
            "structured" | "json" => Some(Format::Structured),
            "csv" | "csv-tables" => Some(Format::Csv),
            _ => None,
        }
    }
}

/// Ring and modules: `M = G / (A G + F-relations)` with `J` from `F` and `I_i` from `E<i>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupSpec {
    pub d: usize,
    pub p: usize,
    pub a: Vec<Vec<u32>>,
    /// `None` stands for `𝔪 R^p`.
    pub f: Option<Vec<Term>>,
    pub e: Vec<Vec<Term>>,
}

impl SetupSpec {
    pub fn to_case(&self, name: &str) -> CaseSpec {
        CaseSpec {
            name: name.into(),
            d: self.d,
            p: self.p,
            a: self.a.clone(),
            f: self.f.clone(),
            e: self.e.clone(),
            tags: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSpec {
    pub source: Source,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TaskKind {
    Lengths {
        function: FunctionKind,
        grid: Vec<(u64, u64)>,
    },
    /// Empty `indices` asks for every index of the detected degree.
    Mixed { indices: Vec<MultiIndex> },
    Br { j: Option<u32> },
    CheckFc {
        mode: SequenceMode,
        sequence: Vec<CandidateSpec>,
    },
    CheckSuperficial { sequence: Vec<CandidateSpec> },
    /// `None` assembles a maximal family by search first.
    CheckJr { reductions: Option<Vec<CandidateSpec>> },
    Verify {
        theorem: Theorem,
        index: MultiIndex,
        sequence: Option<Vec<CandidateSpec>>,
        /// The `y` elements of the generalized forms; `sequence` holds the `x`.
        ys: Option<Vec<CandidateSpec>>,
    },
    OracleRegen {
        out: String,
        seed: Option<u64>,
        random: Option<usize>,
    },
}

impl TaskKind {
    pub fn label(&self) -> String {
        match self {
            TaskKind::Lengths { .. } => "lengths".into(),
            TaskKind::Mixed { .. } => "mixed".into(),
            TaskKind::Br { .. } => "br".into(),
            TaskKind::CheckFc { .. } => "check-fc".into(),
            TaskKind::CheckSuperficial { .. } => "check-superficial".into(),
            TaskKind::CheckJr { .. } => "check-jr".into(),
            TaskKind::Verify { theorem, .. } => format!("verify-{}", theorem_name(*theorem)),
            TaskKind::OracleRegen { .. } => "oracle-regen".into(),
        }
    }

    pub fn needs_setup(&self) -> bool {
        !matches!(self, TaskKind::OracleRegen { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub name: Option<String>,
    pub kind: TaskKind,
    pub window: Option<u64>,
    pub base: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub format: Option<Format>,
    pub path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub version: u32,
    pub name: Option<String>,
    pub setup: Option<SetupSpec>,
    pub tasks: Vec<TaskSpec>,
    pub output: OutputSpec,
}

const THEOREMS: [(Theorem, &str); 8] = [
    (Theorem::Teo1, "teo1"),
    (Theorem::Teo4, "teo4"),
    (Theorem::Generalized, "generalized"),
    (Theorem::CorGeneralized, "cor-generalized"),
    (Theorem::TrungVerma, "trung-verma"),
    (Theorem::Mod3, "mod3"),
    (Theorem::Mod1, "mod1"),
    (Theorem::Mod2, "mod2"),
];

pub fn theorem_name(t: Theorem) -> &'static str {
    THEOREMS.iter().find(|(th, _)| *th == t).map(|(_, n)| *n).unwrap()
}

fn function_name(k: FunctionKind) -> &'static str {
    k.name()
}

fn parse_function(s: &str) -> Option<FunctionKind> {
    match s {
        "mixed" => Some(FunctionKind::Mixed),
        "br" => Some(FunctionKind::BuchsbaumRim),
        "kr" => Some(FunctionKind::KirbyRees),
        _ => None,
    }
}

/// Splits on commas and whitespace outside brackets and parentheses.
fn split_top(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' | '(' => {
                depth += 1;
                cur.push(ch);
            }
            ']' | ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' | ' ' | '\t' if depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_uint<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T, JobError> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("{what}: expected a non-negative integer, got {s:?}")))
}

fn parse_vec(s: &str, line: usize) -> Result<Vec<u32>, JobError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, format!("expected an exponent list like [1,0], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|v| parse_uint(v, line, "exponent")).collect()
}

struct Ctx {
    d: usize,
    p: usize,
    q: usize,
}

fn check_x(x: &[u32], ctx: &Ctx, line: usize) -> Result<(), JobError> {
    if x.len() != ctx.d {
        return Err(JobError::Arity {
            line,
            reason: format!("exponent list {x:?} has {} entries, ring has d = {}", x.len(), ctx.d),
        });
    }
    Ok(())
}

fn parse_term(s: &str, ctx: &Ctx, line: usize) -> Result<Term, JobError> {
    let (x, slot) = s
        .split_once('@')
        .ok_or_else(|| parse_err(line, format!("expected a term like [1,0]@1, got {s:?}")))?;
    let x = parse_vec(x, line)?;
    check_x(&x, ctx, line)?;
    let slot: usize = parse_uint(slot, line, "slot")?;
    if slot == 0 || slot > ctx.p {
        return Err(JobError::Arity {
            line,
            reason: format!("slot {slot} outside 1..={}", ctx.p),
        });
    }
    Ok(Term { x, slot: slot - 1 })
}

fn standard_terms(ctx: &Ctx, maximal: bool) -> Vec<Term> {
    let mut out = Vec::new();
    for slot in 0..ctx.p {
        if maximal {
            for i in 0..ctx.d {
                let mut x = vec![0; ctx.d];
                x[i] = 1;
                out.push(Term { x, slot });
            }
        } else {
            out.push(Term {
                x: vec![0; ctx.d],
                slot,
            });
        }
    }
    out
}

fn parse_terms(s: &str, ctx: &Ctx, line: usize) -> Result<Vec<Term>, JobError> {
    match s.trim() {
        "maximal" => Ok(standard_terms(ctx, true)),
        "free" => Ok(standard_terms(ctx, false)),
        other => {
            let terms = split_top(other)
                .iter()
                .map(|t| parse_term(t, ctx, line))
                .collect::<Result<Vec<_>, _>>()?;
            if terms.is_empty() {
                return Err(parse_err(line, "empty term list"));
            }
            Ok(terms)
        }
    }
}

fn parse_source(s: &str, ctx: &Ctx, line: usize) -> Result<Source, JobError> {
    match s {
        "G1" => return Ok(Source::G1),
        "J" | "F" => return Ok(Source::J),
        _ => {}
    }
    let unknown = || JobError::UnknownReference {
        line,
        name: s.to_string(),
    };
    let digits = s
        .strip_prefix('E')
        .or_else(|| s.strip_prefix('I'))
        .ok_or_else(unknown)?;
    let i: usize = digits.parse().map_err(|_| unknown())?;
    if i == 0 || i > ctx.q {
        return Err(unknown());
    }
    Ok(Source::I(i - 1))
}

fn parse_candidates(s: &str, ctx: &Ctx, line: usize) -> Result<Vec<CandidateSpec>, JobError> {
    split_top(s)
        .iter()
        .map(|tok| {
            let (src, term) = tok
                .split_once(':')
                .ok_or_else(|| parse_err(line, format!("expected SOURCE:[..]@slot, got {tok:?}")))?;
            Ok(CandidateSpec {
                source: parse_source(src, ctx, line)?,
                term: parse_term(term, ctx, line)?,
            })
        })
        .collect()
}

fn parse_index(s: &str, ctx: &Ctx, line: usize) -> Result<MultiIndex, JobError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, format!("expected an index like (0,1,[1]), got {s:?}")))?;
    let parts = split_top(inner);
    if parts.len() != 3 {
        return Err(parse_err(line, format!("index {s:?} needs (j,k0,[k..])")));
    }
    let k = parse_vec(&parts[2], line)?;
    if k.len() != ctx.q {
        return Err(JobError::Arity {
            line,
            reason: format!("index {s} has {} r-orders, job declares q = {}", k.len(), ctx.q),
        });
    }
    Ok(MultiIndex::new(
        parse_uint(&parts[0], line, "j")?,
        parse_uint(&parts[1], line, "k0")?,
        k,
    ))
}

fn parse_grid(s: &str, line: usize) -> Result<Vec<(u64, u64)>, JobError> {
    split_top(s)
        .iter()
        .map(|tok| match tok.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse_uint(lo, line, "grid")?, parse_uint(hi, line, "grid")?);
                if lo > hi {
                    return Err(parse_err(line, format!("empty range {tok}")));
                }
                Ok((lo, hi))
            }
            None => {
                let v = parse_uint(tok, line, "grid")?;
                Ok((v, v))
            }
        })
        .collect()
}

type Entries = Vec<(usize, String, String)>;

struct Section {
    line: usize,
    name: String,
    entries: Entries,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        let pos = self.entries.iter().position(|(_, k, _)| k == key)?;
        let (line, _, v) = self.entries.remove(pos);
        Some((line, v))
    }

    fn require(&mut self, key: &str) -> Result<(usize, String), JobError> {
        self.take(key)
            .ok_or_else(|| parse_err(self.line, format!("[{}] needs `{key}`", self.name)))
    }

    fn finish(self) -> Result<(), JobError> {
        match self.entries.first() {
            Some((line, key, _)) => Err(parse_err(*line, format!("unknown key `{key}` in [{}]", self.name))),
            None => Ok(()),
        }
    }
}

fn sections(text: &str) -> Result<Vec<Section>, JobError> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            out.push(Section {
                line,
                name: name.trim().to_string(),
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected `key = value` or a [section] header"))?;
        let section = out
            .last_mut()
            .ok_or_else(|| parse_err(line, "entry before any [section] header"))?;
        let key = key.trim().to_string();
        if section.entries.iter().any(|(_, k, _)| *k == key) {
            return Err(parse_err(line, format!("duplicate key `{key}`")));
        }
        section.entries.push((line, key, value.trim().to_string()));
    }
    Ok(out)
}

fn parse_task(mut s: Section, ctx: Option<&Ctx>) -> Result<TaskSpec, JobError> {
    let (kline, kind_name) = s.require("kind")?;
    let name = s.take("name").map(|(_, v)| v);
    let window = s.take("window").map(|(l, v)| parse_uint(&v, l, "window")).transpose()?;
    let base = s.take("base").map(|(l, v)| parse_uint(&v, l, "base")).transpose()?;
    if window == Some(0) {
        return Err(parse_err(s.line, "window must be positive"));
    }
    let ctx = match (kind_name.as_str(), ctx) {
        ("oracle-regen", _) => None,
        (_, Some(c)) => Some(c),
        (_, None) => return Err(parse_err(kline, format!("task {kind_name} needs a [ring] section"))),
    };
    let kind = match kind_name.as_str() {
        "lengths" => {
            let ctx = ctx.unwrap();
            let function = match s.take("function") {
                Some((l, v)) => parse_function(&v)
                    .ok_or_else(|| parse_err(l, format!("unknown function {v:?}")))?,
                None => FunctionKind::Mixed,
            };
            let (gl, g) = s.require("grid")?;
            let grid = parse_grid(&g, gl)?;
            if grid.len() != function.arity(ctx.q) {
                return Err(JobError::Arity {
                    line: gl,
                    reason: format!(
                        "{} grid needs {} ranges, got {}",
                        function.name(),
                        function.arity(ctx.q),
                        grid.len()
                    ),
                });
            }
            TaskKind::Lengths { function, grid }
        }
        "mixed" => {
            let indices = match s.take("index") {
                Some((l, v)) => split_top(&v)
                    .iter()
                    .map(|t| parse_index(t, ctx.unwrap(), l))
                    .collect::<Result<Vec<_>, _>>()?,
                None => Vec::new(),
            };
            TaskKind::Mixed { indices }
        }
        "br" => TaskKind::Br {
            j: s.take("j").map(|(l, v)| parse_uint(&v, l, "j")).transpose()?,
        },
        "check-fc" => {
            let mode = match s.take("mode") {
                None => SequenceMode::Fc,
                Some((_, m)) if m == "fc" => SequenceMode::Fc,
                Some((_, m)) if m == "weak-fc" => SequenceMode::WeakFc,
                Some((l, m)) => return Err(parse_err(l, format!("unknown mode {m:?}"))),
            };
            let (l, v) = s.require("sequence")?;
            TaskKind::CheckFc {
                mode,
                sequence: parse_candidates(&v, ctx.unwrap(), l)?,
            }
        }
        "check-superficial" => {
            let (l, v) = s.require("sequence")?;
            TaskKind::CheckSuperficial {
                sequence: parse_candidates(&v, ctx.unwrap(), l)?,
            }
        }
        "check-jr" => TaskKind::CheckJr {
            reductions: s
                .take("reductions")
                .map(|(l, v)| parse_candidates(&v, ctx.unwrap(), l))
                .transpose()?,
        },
        "oracle-regen" => {
            let (_, out) = s.require("out")?;
            TaskKind::OracleRegen {
                out,
                seed: s.take("seed").map(|(l, v)| parse_uint(&v, l, "seed")).transpose()?,
                random: s.take("random").map(|(l, v)| parse_uint(&v, l, "random")).transpose()?,
            }
        }
        other => {
            let theorem = other
                .strip_prefix("verify-")
                .and_then(|t| THEOREMS.iter().find(|(_, n)| *n == t))
                .map(|(th, _)| *th)
                .ok_or_else(|| parse_err(kline, format!("unknown task kind {other:?}")))?;
            let ctx = ctx.unwrap();
            let (il, iv) = s.require("index")?;
            let index = parse_index(&iv, ctx, il)?;
            let sequence = s
                .take("sequence")
                .map(|(l, v)| parse_candidates(&v, ctx, l))
                .transpose()?;
            let ys = s
                .take("ys")
                .map(|(l, v)| parse_candidates(&v, ctx, l))
                .transpose()?;
            TaskKind::Verify {
                theorem,
                index,
                sequence,
                ys,
            }
        }
    };
    s.finish()?;
    Ok(TaskSpec {
        name,
        kind,
        window,
        base,
    })
}

pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    let mut version = JOB_VERSION;
    let mut name = None;
    let mut ring: Option<(usize, usize, usize)> = None;
    let mut modules: Option<Section> = None;
    let mut task_sections = Vec::new();
    let mut output = OutputSpec::default();
    for mut s in sections(text)? {
        match s.name.as_str() {
            "job" => {
                if let Some((l, v)) = s.take("version") {
                    version = parse_uint(&v, l, "version")?;
                    if version != JOB_VERSION {
                        return Err(parse_err(l, format!("unsupported job version {version}")));
                    }
                }
                name = s.take("name").map(|(_, v)| v);
                s.finish()?;
            }
            "ring" => {
                if ring.is_some() {
                    return Err(parse_err(s.line, "duplicate [ring]"));
                }
                let (dl, d) = s.require("d")?;
                let (pl, p) = s.require("p")?;
                let d: usize = parse_uint(&d, dl, "d")?;
                let p: usize = parse_uint(&p, pl, "p")?;
                if d == 0 || p == 0 {
                    return Err(parse_err(s.line, "d and p must be positive"));
                }
                ring = Some((d, p, s.line));
                s.finish()?;
            }
            "modules" => {
                if modules.is_some() {
                    return Err(parse_err(s.line, "duplicate [modules]"));
                }
                modules = Some(s);
            }
            "task" => task_sections.push(s),
            "output" => {
                if let Some((l, v)) = s.take("format") {
                    output.format =
                        Some(Format::parse(&v).ok_or_else(|| parse_err(l, format!("unknown format {v:?}")))?);
                }
                output.path = s.take("path").map(|(_, v)| v);
                s.finish()?;
            }
            other => return Err(parse_err(s.line, format!("unknown section [{other}]"))),
        }
    }

    let setup = match (ring, modules) {
        (None, None) => None,
        (None, Some(m)) => return Err(parse_err(m.line, "[modules] without [ring]")),
        (Some((_, _, line)), None) => return Err(parse_err(line, "[ring] without [modules]")),
        (Some((d, p, _)), Some(mut m)) => {
            let ctx = Ctx { d, p, q: 0 };
            let a = match m.take("A") {
                Some((l, v)) => split_top(&v)
                    .iter()
                    .map(|g| {
                        let x = parse_vec(g, l)?;
                        check_x(&x, &ctx, l)?;
                        Ok(x)
                    })
                    .collect::<Result<Vec<_>, JobError>>()?,
                None => Vec::new(),
            };
            let f = match m.take("F") {
                Some((_, v)) if v == "maximal" => None,
                Some((l, v)) => Some(parse_terms(&v, &ctx, l)?),
                None => None,
            };
            let mut e = Vec::new();
            while let Some((l, v)) = m.take(&format!("E{}", e.len() + 1)) {
                e.push(parse_terms(&v, &ctx, l)?);
            }
            if let Some((line, key, _)) = m.entries.first() {
                return Err(match key.strip_prefix('E') {
                    Some(_) => JobError::Parse {
                        line: *line,
                        reason: format!("{key} declared but E{} is missing", e.len() + 1),
                    },
                    None => parse_err(*line, format!("unknown module `{key}`")),
                });
            }
            Some(SetupSpec { d, p, a, f, e })
        }
    };
    let ctx = setup.as_ref().map(|s| Ctx {
        d: s.d,
        p: s.p,
        q: s.e.len(),
    });
    let tasks = task_sections
        .into_iter()
        .map(|s| parse_task(s, ctx.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(JobSpec {
        version,
        name,
        setup,
        tasks,
        output,
    })
}

fn fmt_vec(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn fmt_term(t: &Term) -> String {
    format!("{}@{}", fmt_vec(&t.x), t.slot + 1)
}

fn fmt_terms(ts: &[Term]) -> String {
    ts.iter().map(fmt_term).collect::<Vec<_>>().join(" ")
}

fn fmt_source(s: Source) -> String {
    match s {
        Source::G1 => "G1".into(),
        Source::J => "J".into(),
        Source::I(i) => format!("E{}", i + 1),
    }
}

fn fmt_candidates(cs: &[CandidateSpec]) -> String {
    cs.iter()
        .map(|c| format!("{}:{}", fmt_source(c.source), fmt_term(&c.term)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_index(i: &MultiIndex) -> String {
    format!("({},{},{})", i.j, i.k0, fmt_vec(&i.k))
}

impl JobSpec {
    /// Canonical text; parsing it gives back an equal spec.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[job]\nversion = {}", self.version);
        if let Some(n) = &self.name {
            let _ = writeln!(out, "name = {n}");
        }
        if let Some(s) = &self.setup {
            let _ = writeln!(out, "\n[ring]\nd = {}\np = {}\n\n[modules]", s.d, s.p);
            if !s.a.is_empty() {
                let gens: Vec<String> = s.a.iter().map(|g| fmt_vec(g)).collect();
                let _ = writeln!(out, "A = {}", gens.join(" "));
            }
            match &s.f {
                None => {
                    let _ = writeln!(out, "F = maximal");
                }
                Some(f) => {
                    let _ = writeln!(out, "F = {}", fmt_terms(f));
                }
            }
            for (i, e) in s.e.iter().enumerate() {
                let _ = writeln!(out, "E{} = {}", i + 1, fmt_terms(e));
            }
        }
        for t in &self.tasks {
            let _ = writeln!(out, "\n[task]\nkind = {}", t.kind.label());
            if let Some(n) = &t.name {
                let _ = writeln!(out, "name = {n}");
            }
            match &t.kind {
                TaskKind::Lengths { function, grid } => {
                    let g: Vec<String> = grid.iter().map(|(lo, hi)| format!("{lo}..{hi}")).collect();
                    let _ = writeln!(out, "function = {}\ngrid = {}", function_name(*function), g.join(", "));
                }
                TaskKind::Mixed { indices } => {
                    if !indices.is_empty() {
                        let v: Vec<String> = indices.iter().map(fmt_index).collect();
                        let _ = writeln!(out, "index = {}", v.join(" "));
                    }
                }
                TaskKind::Br { j } => {
                    if let Some(j) = j {
                        let _ = writeln!(out, "j = {j}");
                    }
                }
                TaskKind::CheckFc { mode, sequence } => {
                    let m = match mode {
                        SequenceMode::Fc => "fc",
                        SequenceMode::WeakFc => "weak-fc",
                    };
                    let _ = writeln!(out, "mode = {m}\nsequence = {}", fmt_candidates(sequence));
                }
                TaskKind::CheckSuperficial { sequence } => {
                    let _ = writeln!(out, "sequence = {}", fmt_candidates(sequence));
                }
                TaskKind::CheckJr { reductions } => {
                    if let Some(r) = reductions {
                        let _ = writeln!(out, "reductions = {}", fmt_candidates(r));
                    }
                }
                TaskKind::Verify {
                    index, sequence, ys, ..
                } => {
                    let _ = writeln!(out, "index = {}", fmt_index(index));
                    if let Some(s) = sequence {
                        let _ = writeln!(out, "sequence = {}", fmt_candidates(s));
                    }
                    if let Some(y) = ys {
                        let _ = writeln!(out, "ys = {}", fmt_candidates(y));
                    }
                }
                TaskKind::OracleRegen { out: path, seed, random } => {
                    let _ = writeln!(out, "out = {path}");
                    if let Some(s) = seed {
                        let _ = writeln!(out, "seed = {s}");
                    }
                    if let Some(r) = random {
                        let _ = writeln!(out, "random = {r}");
                    }
                }
            }
            if let Some(w) = t.window {
                let _ = writeln!(out, "window = {w}");
            }
            if let Some(b) = t.base {
                let _ = writeln!(out, "base = {b}");
            }
        }
        if self.output != OutputSpec::default() {
            let _ = writeln!(out, "\n[output]");
            if let Some(f) = self.output.format {
                let _ = writeln!(out, "format = {}", f.name());
            }
            if let Some(p) = &self.output.path {
                let _ = writeln!(out, "path = {p}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[ring]\nd = 2\np = 1\n\n[modules]\nF = maximal\nE1 = maximal\n\n[task]\nkind = mixed\nindex = (0,1,[1])\n";

    #[test]
    fn minimal_job() {
        let job = parse_job(MINIMAL).unwrap();
        let setup = job.setup.as_ref().unwrap();
        assert_eq!((setup.d, setup.p, setup.e.len()), (2, 1, 1));
        assert_eq!(
            job.tasks[0].kind,
            TaskKind::Mixed {
                indices: vec![MultiIndex::new(0, 1, vec![1])]
            }
        );
        assert_eq!(parse_job(&job.to_text()).unwrap(), job);
    }

    #[test]
    fn arity_and_references() {
        let bad = MINIMAL.replace("E1 = maximal", "E1 = [1,0,0]@1");
        assert!(matches!(parse_job(&bad), Err(JobError::Arity { line: 7, .. })));
        let bad = format!("{MINIMAL}\n[task]\nkind = check-fc\nsequence = E2:[1,0]@1\n");
        assert!(matches!(
            parse_job(&bad),
            Err(JobError::UnknownReference { name, .. }) if name == "E2"
        ));
        let bad = MINIMAL.replace("index = (0,1,[1])", "index = (0,1,[1,1])");
        assert!(matches!(parse_job(&bad), Err(JobError::Arity { .. })));
    }

    #[test]
    fn error_locations() {
        let err = parse_job("[ring]\nd = 2\np = x\n").unwrap_err();
        assert_eq!(err.line(), 3);
        let err = parse_job("d = 2\n").unwrap_err();
        assert_eq!(err.line(), 1);
        let err = parse_job(&format!("{MINIMAL}colour = red\n")).unwrap_err();
        assert!(err.to_string().contains("unknown key"), "{err}");
    }
}

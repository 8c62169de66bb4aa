//! Report schema `mixmult-report/1` and its three renderings.
//!
//! Everything except the `runtime` block is a function of the job and the
//! tool version. `runtime` holds timings, cache counters and audit results
//! and is excluded from that guarantee.

use std::fmt::Write as _;

use mixmult_core::graded::{CacheStats, LengthTable};
use mixmult_core::harness::{CaseVerdict, VerificationCase};
use mixmult_core::multiplicity::{BrEntry, MultiplicityReport};
use mixmult_core::sequences::{CheckReport, MaximalFamily, SequenceReport, Verdict};
use mixmult_core::{BiMonomial, Source};
use serde::{Deserialize, Serialize};

use crate::cache::StoreSummary;
use crate::job::Format;

pub const REPORT_SCHEMA: &str = "mixmult-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum TaskResult {
    Table(LengthTable),
    Multiplicity(MultiplicityReport),
    BuchsbaumRim {
        entries: Vec<BrEntry>,
        warnings: Vec<String>,
    },
    Sequence(SequenceReport),
    Superficial { checks: Vec<CheckReport> },
    JointReduction {
        /// The searched family when none was given.
        family: Option<MaximalFamily>,
        reductions: Vec<(Source, Vec<BiMonomial>)>,
        report: CheckReport,
    },
    Verification(VerificationCase),
    Corpus {
        path: String,
        cases: usize,
        sha256: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Ok { result: Box<TaskResult> },
    Error { error: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskReport {
    pub name: String,
    pub kind: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub hits: u64,
    pub checked: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Runtime {
    pub total_ms: u64,
    pub task_ms: Vec<u64>,
    pub cells: CacheStats,
    pub store: Option<StoreSummary>,
    pub audit: Audit,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    /// Canonical text of the job; parses back to the job that produced this report.
    pub job: String,
    pub fingerprint: Option<String>,
    pub tasks: Vec<TaskReport>,
    pub warnings: Vec<String>,
    pub runtime: Option<Runtime>,
}

impl Report {
    pub fn new(job: String) -> Report {
        Report {
            schema: REPORT_SCHEMA.into(),
            tool_version: TOOL_VERSION.into(),
            job,
            fingerprint: None,
            tasks: Vec::new(),
            warnings: Vec::new(),
            runtime: None,
        }
    }

    /// True when a task errored or a verification was refuted: exit code 1.
    pub fn failed(&self) -> bool {
        self.tasks.iter().any(|t| match &t.outcome {
            Outcome::Error { .. } => true,
            Outcome::Ok { result } => matches!(
                result.as_ref(),
                TaskResult::Verification(c) if c.verdict == CaseVerdict::Refuted
            ),
        })
    }

    /// The report without its runtime block: the part that must be reproducible.
    pub fn stable(&self) -> Report {
        Report {
            runtime: None,
            ..self.clone()
        }
    }

    pub fn tables(&self) -> impl Iterator<Item = &LengthTable> {
        self.tasks.iter().filter_map(|t| match &t.outcome {
            Outcome::Ok { result } => match result.as_ref() {
                TaskResult::Table(table) => Some(table),
                _ => None,
            },
            Outcome::Error { .. } => None,
        })
    }
}

pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => emit_csv(report).into_bytes(),
        Format::Human => emit_human(report).into_bytes(),
    }
}

fn emit_csv(report: &Report) -> String {
    let mut out = String::new();
    for (i, table) in report.tables().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let mut header = table.axes.clone();
        header.push("value".into());
        let _ = writeln!(out, "{}", header.join(","));
        for cell in &table.cells {
            let row: Vec<String> = cell.coords.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{},{}", row.join(","), cell.value);
        }
    }
    out
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn case_word(v: CaseVerdict) -> &'static str {
    match v {
        CaseVerdict::Confirmed => "confirmed",
        CaseVerdict::Conditional => "conditional",
        CaseVerdict::Refuted => "refuted",
        CaseVerdict::Rejected => "rejected",
    }
}

fn side(v: Option<i64>) -> String {
    v.map_or("-".into(), |v| v.to_string())
}

fn check_line(out: &mut String, c: &CheckReport) {
    let _ = writeln!(
        out,
        "  {:<16} {:<12} {}",
        format!("{:?}", c.condition),
        verdict_word(c.verdict),
        c.detail
    );
}

fn emit_human(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (mixmult {})", report.schema, report.tool_version);
    if let Some(fp) = &report.fingerprint {
        let _ = writeln!(out, "setup {fp}");
    }
    for (i, task) in report.tasks.iter().enumerate() {
        let _ = writeln!(out, "\n[{}] {} ({})", i + 1, task.name, task.kind);
        let result = match &task.outcome {
            Outcome::Error { error } => {
                let _ = writeln!(out, "  error: {error}");
                continue;
            }
            Outcome::Ok { result } => result,
        };
        match result.as_ref() {
            TaskResult::Table(t) => {
                let head: Vec<String> = t.axes.iter().map(|a| format!("{a:<5}")).collect();
                let _ = writeln!(out, "  {} value", head.join(" "));
                for c in &t.cells {
                    let coords: Vec<String> = c.coords.iter().map(|v| format!("{v:<5}")).collect();
                    let _ = writeln!(out, "  {} {}", coords.join(" "), c.value);
                }
            }
            TaskResult::Multiplicity(m) => {
                let _ = writeln!(out, "  degree {} (formula {})", m.d_detected, m.d_formula);
                for e in &m.entries {
                    let _ = writeln!(
                        out,
                        "  e^{}(J^[{}], I^{:?}) = {:<6} base {:?} window {} round {}",
                        e.index.j, e.index.k0, e.index.k, e.value, e.evidence.base, e.evidence.window, e.evidence.round
                    );
                }
            }
            TaskResult::BuchsbaumRim { entries, .. } => {
                for e in entries {
                    let _ = writeln!(out, "  e^{} = {:<6} degree {}", e.j, e.value, e.degree);
                }
            }
            TaskResult::Sequence(s) => {
                let _ = writeln!(out, "  {:?} sequence: {}  dims {:?}", s.mode, verdict_word(s.verdict), s.dims);
                for step in &s.steps {
                    let _ = writeln!(out, "  element {:?} from {}", step.element, step.source);
                    for c in &step.checks {
                        check_line(&mut out, c);
                    }
                }
            }
            TaskResult::Superficial { checks } => {
                for c in checks {
                    check_line(&mut out, c);
                }
            }
            TaskResult::JointReduction {
                family, report: r, ..
            } => {
                if let Some(f) = family {
                    let _ = writeln!(out, "  searched family of {} elements, maximal: {}", f.sequence.len(), f.maximal);
                }
                check_line(&mut out, r);
            }
            TaskResult::Verification(c) => {
                let _ = writeln!(
                    out,
                    "  {:?}: lhs {} rhs {} -> {}",
                    c.theorem,
                    side(c.lhs),
                    side(c.rhs),
                    case_word(c.verdict)
                );
                for (k, v) in &c.facts {
                    let _ = writeln!(out, "  {k:<22} {v}");
                }
                for n in &c.notes {
                    let _ = writeln!(out, "  note: {n}");
                }
            }
            TaskResult::Corpus { path, cases, sha256 } => {
                let _ = writeln!(out, "  wrote {cases} cases to {path} (sha256 {sha256})");
            }
        }
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(rt) = &report.runtime {
        let _ = writeln!(
            out,
            "\nruntime {} ms, cells computed {} cached {}, audit {}/{} mismatches {}",
            rt.total_ms,
            rt.cells.computed,
            rt.cells.memory_hits + rt.cells.store_hits,
            rt.audit.checked,
            rt.audit.hits,
            rt.audit.mismatches
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_header_only() {
        let r = Report::new(String::new());
        assert_eq!(emit(&r, Format::Csv), b"");
        let human = String::from_utf8(emit(&r, Format::Human)).unwrap();
        assert_eq!(human.lines().count(), 1);
        let json: serde_json::Value = serde_json::from_slice(&emit(&r, Format::Structured)).unwrap();
        assert_eq!(json["schema"], REPORT_SCHEMA);
        assert_eq!(json["tasks"].as_array().unwrap().len(), 0);
        assert!(!r.failed());
    }
}

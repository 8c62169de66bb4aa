use std::sync::Arc;

use mixmult_cli::job::TaskKind;
use mixmult_cli::report::{Outcome, TaskResult};
use mixmult_cli::{emit, parse_job, run_job, DiskCache, Format, JobError, RunOptions};
use mixmult_core::harness::CaseVerdict;
use proptest::prelude::*;

const PLANE: &str = include_str!("../../../jobs/plane.job");
const STAIRCASE: &str = include_str!("../../../jobs/staircase.job");

fn result(report: &mixmult_cli::Report, i: usize) -> &TaskResult {
    match &report.tasks[i].outcome {
        Outcome::Ok { result } => result,
        Outcome::Error { error } => panic!("task {i}: {error}"),
    }
}

#[test]
fn triangle_table_and_confirmed_teo1() {
    let job = parse_job(PLANE).unwrap();
    let report = run_job(&job, None, &RunOptions::default());
    let TaskResult::Table(t) = result(&report, 0) else { panic!() };
    let values: Vec<u64> = t.cells.iter().map(|c| c.value).collect();
    assert_eq!(values, vec![1, 3, 6, 10]);
    let TaskResult::Verification(c) = result(&report, 5) else { panic!() };
    assert_eq!(c.verdict, CaseVerdict::Confirmed);
    assert!(!report.failed());
}

#[test]
fn csv_has_one_row_per_cell() {
    let job = parse_job(STAIRCASE).unwrap();
    let report = run_job(&job, None, &RunOptions::default());
    let csv = String::from_utf8(emit(&report, Format::Csv)).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,p,r1,value");
    assert_eq!(lines.len(), 1 + 4 * 2 * 3);
}

#[test]
fn structured_report_echoes_the_job() {
    let job = parse_job(STAIRCASE).unwrap();
    let report = run_job(&job, None, &RunOptions::default());
    let json = emit(&report, Format::Structured);
    let back: mixmult_cli::Report = serde_json::from_slice(&json).unwrap();
    // Cell provenance is not part of the schema, so compare the rendering.
    assert_eq!(emit(&back, Format::Structured), json);
    assert_eq!(parse_job(&back.job).unwrap(), job);
    let mixed = &back.tasks[0];
    assert_eq!(mixed.kind, "mixed");
}

#[test]
fn cold_and_warm_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cells");
    let job = parse_job(STAIRCASE).unwrap();
    let opts = RunOptions {
        audit_rate: 1.0,
        ..RunOptions::default()
    };
    let cold = run_job(&job, Some(Arc::new(DiskCache::open(&path).unwrap())), &opts);
    let warm = run_job(&job, Some(Arc::new(DiskCache::open(&path).unwrap())), &opts);
    assert_eq!(emit(&cold.stable(), Format::Structured), emit(&warm.stable(), Format::Structured));
    let rt = warm.runtime.unwrap();
    assert!(rt.audit.hits > 0);
    assert_eq!((rt.audit.checked, rt.audit.mismatches), (rt.audit.hits, 0));
    assert_eq!(rt.cells.computed, 0);
}

#[test]
fn task_errors_are_embedded() {
    let text = PLANE.replace("index = (0,1,[1])\n\n[task]\nkind = verify-mod2", "index = (0,1,[1])\n\n[task]\nkind = verify-teo4\nindex = (0,0,[2])\n\n[task]\nkind = verify-mod2");
    let job = parse_job(&text).unwrap();
    let report = run_job(&job, None, &RunOptions::default());
    assert!(report.failed());
    assert!(matches!(&report.tasks[6].outcome, Outcome::Error { error } if error.contains("J-order")));
}

#[test]
fn oracle_regen_writes_a_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus.json");
    let text = format!("[task]\nkind = oracle-regen\nout = {}\nrandom = 1\nseed = 3\n", out.display());
    let job = parse_job(&text).unwrap();
    assert!(matches!(job.tasks[0].kind, TaskKind::OracleRegen { .. }));
    let report = run_job(&job, None, &RunOptions::default());
    let TaskResult::Corpus { cases, .. } = result(&report, 0) else { panic!() };
    let corpus = mixmult_core::corpus::Corpus::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(corpus.cases.len(), *cases);
}

#[test]
fn setup_tasks_need_a_ring() {
    let err = parse_job("[task]\nkind = mixed\n").unwrap_err();
    assert!(matches!(err, JobError::Parse { line: 2, .. }), "{err}");
}

fn term(d: usize, p: usize) -> impl Strategy<Value = String> {
    (proptest::collection::vec(0u32..4, d), 1..=p).prop_map(|(x, s)| {
        let x: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        format!("[{}]@{s}", x.join(","))
    })
}

fn job_text() -> impl Strategy<Value = String> {
    (1usize..4, 1usize..3).prop_flat_map(|(d, p)| {
        (
            Just((d, p)),
            proptest::collection::vec(proptest::collection::vec(term(d, p), 1..3), 1..3),
            proptest::collection::vec(0u32..3, 3),
            0u64..5,
        )
            .prop_map(|((d, p), es, idx, w)| {
                let q = es.len();
                let mut s = format!("[ring]\nd = {d}\np = {p}\n\n[modules]\nF = maximal\n");
                for (i, e) in es.iter().enumerate() {
                    s += &format!("E{} = {}\n", i + 1, e.join(" "));
                }
                let k: Vec<String> = (0..q).map(|i| idx[i % 3].to_string()).collect();
                s += &format!("\n[task]\nkind = verify-teo1\nindex = ({},{},[{}])\nsequence = E1:{}\n", idx[0], idx[1], k.join(","), es[0][0]);
                s += &format!("\n[task]\nkind = lengths\nfunction = br\ngrid = 0..{w}, 1\n");
                if w > 0 {
                    s += &format!("window = {w}\n");
                }
                s
            })
    })
}

proptest! {
    #[test]
    fn canonical_text_round_trips(text in job_text()) {
        let job = parse_job(&text).unwrap();
        let canon = job.to_text();
        prop_assert_eq!(parse_job(&canon).unwrap(), job);
        prop_assert_eq!(parse_job(&canon).unwrap().to_text(), canon);
    }
}

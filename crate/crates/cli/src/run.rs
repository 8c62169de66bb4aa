use std::sync::Arc;
use std::time::Instant;

use mixmult_core::corpus::{default_specs, regenerate, DEFAULT_RANDOM, DEFAULT_SEED};
use mixmult_core::graded::{fill_table, CellStore};
use mixmult_core::harness::{
    j_family, verify_alias, verify_generalized, verify_mod3, verify_teo1, verify_teo4,
    verify_trung_verma, HarnessOptions, Theorem,
};
use mixmult_core::multiplicity::{buchsbaum_rim, buchsbaum_rim_all, multiplicity_report, Policy};
use mixmult_core::sequences::{
    check_joint_reduction, check_sequence, check_superficial_sequence, maximal_weak_fc_family,
    Candidate, Window,
};
use mixmult_core::{BiMonomial, CoreError, Engine, Source};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::cache::DiskCache;
use crate::job::{CandidateSpec, JobSpec, TaskKind, TaskSpec};
use crate::report::{Audit, Outcome, Report, Runtime, TaskReport, TaskResult};

/// Command-line overrides applied to every task; per-task settings win.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub window: Option<u64>,
    pub base: Option<u64>,
    pub kmax: Option<u32>,
    pub seed: u64,
    /// Fraction of store hits recomputed after the run.
    pub audit_rate: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            window: None,
            base: None,
            kmax: None,
            seed: DEFAULT_SEED,
            audit_rate: 0.01,
        }
    }
}

fn harness_options(engine: &Engine, task: &TaskSpec, run: &RunOptions) -> HarnessOptions {
    let window = task.window.or(run.window);
    let base = task.base.or(run.base);
    let mut policy = Policy::default();
    if let Some(w) = window {
        policy.window = w;
    }
    policy.base = base;
    let mut w = Window::for_setup(engine.setup());
    if let Some(len) = window {
        w.r_len = len;
        w.p_len = len;
    }
    if let Some(b) = base {
        w.r_start = b;
    }
    HarnessOptions {
        policy,
        window: Some(w),
    }
}

fn candidates(engine: &Engine, specs: &[CandidateSpec]) -> Result<Vec<Candidate>, CoreError> {
    let p = engine.setup().ctx().t_vars;
    specs
        .iter()
        .map(|c| Candidate::new(engine.setup(), c.term.to_bimonomial(p), c.source))
        .collect()
}

fn group(cs: &[Candidate]) -> Vec<(Source, Vec<BiMonomial>)> {
    let mut out: Vec<(Source, Vec<BiMonomial>)> = Vec::new();
    for c in cs {
        match out.iter_mut().find(|(s, _)| *s == c.source) {
            Some((_, v)) => v.push(c.element.clone()),
            None => out.push((c.source, vec![c.element.clone()])),
        }
    }
    out
}

fn run_verify(
    engine: &Engine,
    theorem: Theorem,
    index: &mixmult_core::multiplicity::MultiIndex,
    sequence: Option<&Vec<CandidateSpec>>,
    ys: Option<&Vec<CandidateSpec>>,
    opts: &HarnessOptions,
) -> Result<TaskResult, CoreError> {
    let seq = sequence.map(|s| candidates(engine, s)).transpose()?;
    let case = match theorem {
        Theorem::Teo1 => verify_teo1(engine, seq, index, opts)?,
        Theorem::Teo4 => verify_teo4(engine, seq, index, opts)?,
        Theorem::Mod1 | Theorem::Mod2 => verify_alias(theorem, engine, seq, index, opts)?,
        Theorem::Generalized | Theorem::CorGeneralized => {
            let ys = ys.map(|s| candidates(engine, s)).transpose()?;
            let pair = match (ys, seq) {
                (Some(ys), Some(xs)) => Some((ys, xs)),
                (None, None) => None,
                _ => {
                    return Err(CoreError::InvalidCandidate(
                        "give both `ys` and `sequence`, or neither".into(),
                    ))
                }
            };
            verify_generalized(engine, pair, index, opts)?
        }
        Theorem::TrungVerma => verify_trung_verma(engine, seq, index, opts)?,
        Theorem::Mod3 => {
            if index.k0 != 0 {
                return Err(CoreError::InvalidSetup(
                    "the Kirby-Rees form takes indices (j,0,[k..])".into(),
                ));
            }
            verify_mod3(engine, seq, index.j, index.k.clone(), opts)?
        }
    };
    Ok(TaskResult::Verification(case))
}

fn run_task(engine: Option<&Engine>, task: &TaskSpec, run: &RunOptions) -> Result<TaskResult, String> {
    if let TaskKind::OracleRegen { out, seed, random } = &task.kind {
        let seed = seed.unwrap_or(run.seed);
        let corpus = regenerate(&default_specs(seed, random.unwrap_or(DEFAULT_RANDOM)), seed)
            .map_err(|e| e.to_string())?;
        let json = corpus.to_json();
        std::fs::write(out, &json).map_err(|e| format!("writing {out}: {e}"))?;
        return Ok(TaskResult::Corpus {
            path: out.clone(),
            cases: corpus.cases.len(),
            sha256: format!("{:x}", Sha256::digest(json.as_bytes())),
        });
    }
    let engine = engine.ok_or("task needs a setup")?;
    let opts = harness_options(engine, task, run);
    let window = opts.window.expect("always set");
    let family = j_family(engine.setup().q());
    let result = match &task.kind {
        TaskKind::Lengths { function, grid } => fill_table(engine, *function, grid).map(TaskResult::Table),
        TaskKind::Mixed { indices } => {
            let indices = (!indices.is_empty()).then(|| indices.clone());
            multiplicity_report(engine, indices, &opts.policy).map(TaskResult::Multiplicity)
        }
        TaskKind::Br { j } => match j {
            Some(j) => buchsbaum_rim(engine, *j, &opts.policy).map(|e| TaskResult::BuchsbaumRim {
                entries: vec![e],
                warnings: Vec::new(),
            }),
            None => buchsbaum_rim_all(engine, &opts.policy)
                .map(|(entries, warnings)| TaskResult::BuchsbaumRim { entries, warnings }),
        },
        TaskKind::CheckFc { mode, sequence } => candidates(engine, sequence)
            .and_then(|cs| check_sequence(engine, &cs, *mode, &family, &window))
            .map(TaskResult::Sequence),
        TaskKind::CheckSuperficial { sequence } => candidates(engine, sequence).map(|cs| TaskResult::Superficial {
            checks: check_superficial_sequence(engine, &cs, &family, &window),
        }),
        TaskKind::CheckJr { reductions } => {
            let (family, reductions) = match reductions {
                Some(r) => match candidates(engine, r) {
                    Ok(cs) => (None, group(&cs)),
                    Err(e) => return Err(e.to_string()),
                },
                None => {
                    let fam = maximal_weak_fc_family(engine, &window);
                    let r = fam.reductions.clone();
                    (Some(fam), r)
                }
            };
            check_joint_reduction(engine, &reductions, &window).map(|report| TaskResult::JointReduction {
                family,
                reductions,
                report,
            })
        }
        TaskKind::Verify {
            theorem,
            index,
            sequence,
            ys,
        } => run_verify(engine, *theorem, index, sequence.as_ref(), ys.as_ref(), &opts),
        TaskKind::OracleRegen { .. } => unreachable!("handled above"),
    };
    result.map_err(|e| e.to_string())
}

/// Runs every task of the job, in parallel across tasks, and assembles the report.
pub fn run_job(job: &JobSpec, cache: Option<Arc<DiskCache>>, run: &RunOptions) -> Report {
    let start = Instant::now();
    let mut report = Report::new(job.to_text());
    let mut runtime = Runtime::default();

    let engine = match &job.setup {
        None => None,
        Some(spec) => match spec.to_case(job.name.as_deref().unwrap_or("job")).setup() {
            Ok(setup) => {
                let mut e = Engine::new(setup).with_parallel(true);
                if let Some(k) = run.kmax {
                    e = e.with_kmax(k);
                }
                if let Some(c) = &cache {
                    e = e.with_store(c.clone() as Arc<dyn CellStore>);
                }
                report.fingerprint = Some(e.fingerprint().to_string());
                Some(e)
            }
            Err(err) => {
                report.warnings.push(format!("invalid setup: {err}"));
                None
            }
        },
    };

    let outcomes: Vec<(Result<TaskResult, String>, u64)> = job
        .tasks
        .par_iter()
        .map(|task| {
            let t = Instant::now();
            let r = run_task(engine.as_ref(), task, run);
            (r, t.elapsed().as_millis() as u64)
        })
        .collect();
    for (i, (task, (result, ms))) in job.tasks.iter().zip(outcomes).enumerate() {
        runtime.task_ms.push(ms);
        report.tasks.push(TaskReport {
            name: task.name.clone().unwrap_or_else(|| format!("task-{}", i + 1)),
            kind: task.kind.label(),
            outcome: match result {
                Ok(r) => Outcome::Ok { result: Box::new(r) },
                Err(error) => Outcome::Error { error },
            },
        });
    }

    if let Some(e) = &engine {
        runtime.cells = e.stats();
        runtime.audit = audit(e, run.seed, run.audit_rate);
        if runtime.audit.mismatches > 0 {
            runtime.warnings.push(format!(
                "cache audit found {} mismatching cells",
                runtime.audit.mismatches
            ));
        }
    }
    if let Some(c) = &cache {
        let s = c.summary();
        if s.corrupt > 0 {
            runtime
                .warnings
                .push(format!("skipped {} corrupt cache records in {}", s.corrupt, s.path));
        }
        runtime.store = Some(s);
    }
    runtime.total_ms = start.elapsed().as_millis() as u64;
    report.runtime = Some(runtime);
    report
}

/// Recomputes a seeded random sample of the cells served from the store.
pub fn audit(engine: &Engine, seed: u64, rate: f64) -> Audit {
    let mut hits = engine.store_hits();
    hits.sort_by(|a, b| (a.0.name(), &a.1).cmp(&(b.0.name(), &b.1)));
    let n = hits.len();
    if n == 0 {
        return Audit::default();
    }
    let take = ((n as f64 * rate).ceil() as usize).clamp(1, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<_> = hits.choose_multiple(&mut rng, take).collect();
    let mismatches = sample
        .par_iter()
        .filter(|(kind, coords, v)| engine.recompute(*kind, coords).ok() != Some(*v))
        .count();
    Audit {
        hits: n as u64,
        checked: take as u64,
        mismatches: mismatches as u64,
    }
}

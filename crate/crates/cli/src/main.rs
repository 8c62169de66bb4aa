use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::Parser;
use mixmult_cli::{emit, parse_job, run_job, DiskCache, Format, RunOptions};

/// Exact mixed and Buchsbaum-Rim multiplicities of monomial module data.
///
/// Every flag can also be set through the environment variable shown.
/// Exit codes: 0 when every task succeeded and nothing was refuted, 1 when a
/// task errored or a verification was refuted, 2 on usage or input errors.
#[derive(Parser, Debug)]
#[command(name = "mixmult", version)]
struct Args {
    /// Job file to run, `-` for standard input.
    #[arg(long, env = "MIXMULT_JOB")]
    job: String,
    /// Write the report here instead of standard output.
    #[arg(long, env = "MIXMULT_OUT")]
    out: Option<PathBuf>,
    /// human, structured or csv; defaults to the job's [output] format, then human.
    #[arg(long, env = "MIXMULT_FORMAT")]
    format: Option<String>,
    /// Samples per axis for stabilization and condition checks.
    #[arg(long, env = "MIXMULT_WINDOW")]
    window: Option<u64>,
    /// Base coordinate for stabilization and condition checks.
    #[arg(long, env = "MIXMULT_BASE")]
    base: Option<u64>,
    /// Largest x-degree searched for a finiteness certificate.
    #[arg(long, env = "MIXMULT_KMAX")]
    kmax: Option<u32>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, env = "MIXMULT_THREADS")]
    threads: Option<usize>,
    /// Do not read or write the cell cache.
    #[arg(long, env = "MIXMULT_NO_CACHE")]
    no_cache: bool,
    /// Cell cache file.
    #[arg(long, env = "MIXMULT_CACHE_PATH", default_value = ".mixmult-cache")]
    cache_path: PathBuf,
    /// Seed for corpus randomization and cache audits.
    #[arg(long, env = "MIXMULT_SEED")]
    seed: Option<u64>,
}

fn run(args: Args) -> anyhow::Result<bool> {
    if let Some(t) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let text = if args.job == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&args.job).with_context(|| format!("reading {}", args.job))?
    };
    let job = parse_job(&text).with_context(|| format!("in job {}", args.job))?;
    let format = match args.format.as_deref() {
        Some(f) => match Format::parse(f) {
            Some(f) => f,
            None => bail!("unknown format {f:?}; expected human, structured or csv"),
        },
        None => job.output.format.unwrap_or(Format::Human),
    };
    let cache = if args.no_cache {
        None
    } else {
        Some(Arc::new(DiskCache::open(&args.cache_path)?))
    };
    let mut opts = RunOptions {
        window: args.window,
        base: args.base,
        kmax: args.kmax,
        ..RunOptions::default()
    };
    if let Some(s) = args.seed {
        opts.seed = s;
    }
    let report = run_job(&job, cache, &opts);
    if let Some(rt) = &report.runtime {
        for w in &rt.warnings {
            eprintln!("warning: {w}");
        }
    }
    let bytes = emit(&report, format);
    match args.out.or_else(|| job.output.path.as_ref().map(PathBuf::from)) {
        Some(path) => std::fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
        }
    }
    Ok(!report.failed())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

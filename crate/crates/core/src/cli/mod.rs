//! Command implementations behind the `microinject` binary.
//!
//! Exit codes: 0 on success, 1 when a verification property fails or a run
//! becomes non-finite, 2 on usage, configuration or I/O errors.

pub mod config;
pub mod csv;
pub mod svg;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::control::ControllerVariant;
use crate::dynamics::{free_response, integrate, ForcePair, InitialConditions, MassParams, Torque};
use crate::error::ModelError;
use crate::sim::{compare_variants, PairwiseDivergence, RunMetrics};
use crate::verify::{run_suite, Suite};

pub use config::{parse_config, ConfigError, ScenarioConfig};

pub const EXIT_SUCCESS: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest RK4-vs-closed-form error accepted by `free-response`.
pub const FREE_RESPONSE_MAX_ERROR: f64 = 1e-5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

/// `Ok(true)` → 0, `Ok(false)` → 1, `Err` → 2.
pub fn exit_code(result: &Result<bool, CliError>) -> u8 {
    match result {
        Ok(true) => EXIT_SUCCESS,
        Ok(false) => EXIT_FAILURE,
        Err(_) => EXIT_USAGE,
    }
}

/// Runs a property suite and prints one line per property.
pub fn cmd_verify<W: Write>(
    out: &mut W,
    suite: Suite,
    seed: u64,
    trials: Option<usize>,
) -> Result<bool, CliError> {
    if trials == Some(0) {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let report = run_suite(suite, seed, trials);
    let stdout_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    for o in &report.outcomes {
        writeln!(out, "{o}").map_err(stdout_err)?;
    }
    let failed = report.outcomes.iter().filter(|o| !o.passed()).count();
    writeln!(
        out,
        "suite {} seed {}: {} passed, {} failed",
        suite.name(),
        seed,
        report.outcomes.len() - failed,
        failed
    )
    .map_err(stdout_err)?;
    Ok(report.passed())
}

#[derive(Debug, Clone)]
pub struct SimulateOptions {
    pub config: PathBuf,
    pub out_dir: PathBuf,
    pub svg: bool,
}

#[derive(Serialize)]
struct VariantSummary {
    variant: ControllerVariant,
    trace: String,
    metrics: RunMetrics,
    error: Option<String>,
    /// Divergence against the oracle run, absent for the oracle itself.
    vs_base: Option<PairwiseDivergence>,
}

#[derive(Serialize)]
struct MetricsFile {
    base: ControllerVariant,
    seed: u64,
    variants: Vec<VariantSummary>,
}

pub fn trace_file_name(v: ControllerVariant) -> String {
    format!("trace_{}.csv", v.name())
}

pub fn plot_file_name(v: ControllerVariant) -> String {
    format!("plot_{}.svg", v.name())
}

/// Simulates every configured variant and writes traces plus `metrics.json`.
///
/// `StageConsistent` is always run as the comparison base; its trace is only
/// written when it is listed in the configuration.
pub fn cmd_simulate<W: Write>(out: &mut W, opts: &SimulateOptions) -> Result<bool, CliError> {
    let text = fs::read_to_string(&opts.config).map_err(io_err(&opts.config))?;
    let cfg = parse_config(&text)?;
    if cfg.variants.is_empty() {
        return Err(CliError::Usage("no variants selected".into()));
    }
    fs::create_dir_all(&opts.out_dir).map_err(io_err(&opts.out_dir))?;

    let base = ControllerVariant::StageConsistent;
    let report = compare_variants(base, &cfg.variants, &cfg.scenario)?;

    let mut listed: Vec<ControllerVariant> = Vec::new();
    for &v in &cfg.variants {
        if !listed.contains(&v) {
            listed.push(v);
        }
    }

    let mut summaries = Vec::new();
    let mut all_finite = true;
    for &v in &listed {
        let run = report.run(v).expect("every listed variant was run");
        let path = opts.out_dir.join(trace_file_name(v));
        let file = File::create(&path).map_err(io_err(&path))?;
        let mut w = BufWriter::new(file);
        csv::write_trace(&mut w, &run.trace).map_err(io_err(&path))?;
        w.flush().map_err(io_err(&path))?;
        writeln!(out, "{}", path.display()).map_err(io_err(&path))?;

        if opts.svg {
            let path = opts.out_dir.join(plot_file_name(v));
            fs::write(&path, svg::render_trace(v.name(), &run.trace)).map_err(io_err(&path))?;
            writeln!(out, "{}", path.display()).map_err(io_err(&path))?;
        }

        if let Some(err) = &run.divergence {
            log::error!("{v}: {err}");
            all_finite = false;
        }
        summaries.push(VariantSummary {
            variant: v,
            trace: trace_file_name(v),
            metrics: run.metrics,
            error: run.divergence.as_ref().map(ToString::to_string),
            vs_base: report.pair(v).copied(),
        });
    }

    let metrics = MetricsFile {
        base,
        seed: cfg.seed,
        variants: summaries,
    };
    let path = opts.out_dir.join("metrics.json");
    let json = serde_json::to_string_pretty(&metrics).expect("metrics serialize");
    fs::write(&path, json + "\n").map_err(io_err(&path))?;
    writeln!(out, "{}", path.display()).map_err(io_err(&path))?;
    Ok(all_finite)
}

#[derive(Debug, Clone)]
pub struct FreeResponseOptions {
    pub mx: f64,
    pub my: f64,
    pub mp: f64,
    pub initial: InitialConditions,
    pub t_end: f64,
    pub dt: f64,
    pub out: PathBuf,
}

/// Writes the closed-form and RK4 torque-free trajectories side by side.
/// Succeeds when the largest error is within [`FREE_RESPONSE_MAX_ERROR`].
pub fn cmd_free_response<W: Write>(
    out: &mut W,
    opts: &FreeResponseOptions,
) -> Result<bool, CliError> {
    let mp = MassParams::new(opts.mx, opts.my, opts.mp)?;
    let ic = opts.initial;
    for (name, v) in [
        ("x0", ic.x0),
        ("y0", ic.y0),
        ("xd0", ic.xd0),
        ("yd0", ic.yd0),
    ] {
        if !v.is_finite() {
            return Err(CliError::Usage(format!("{name} must be finite")));
        }
    }
    let traj = integrate(
        &mp,
        ic.state(),
        |_| Torque::ZERO,
        |_| ForcePair::ZERO,
        opts.t_end,
        opts.dt,
    )?;

    let file = File::create(&opts.out).map_err(io_err(&opts.out))?;
    let mut w = BufWriter::new(file);
    let write_err = io_err(&opts.out);
    let mut max_err = 0.0f64;
    let mut body = || -> io::Result<()> {
        writeln!(w, "{}", csv::FREE_RESPONSE_HEADER)?;
        for (t, s) in &traj {
            let closed = free_response(&mp, &ic, *t).q;
            let err = s.q - closed;
            max_err = max_err.max(err.norm_inf());
            csv::write_row(
                &mut w,
                &[*t, closed.a0, closed.a1, s.q.a0, s.q.a1, err.a0, err.a1],
            )?;
        }
        w.flush()
    };
    body().map_err(write_err)?;

    let ok = max_err <= FREE_RESPONSE_MAX_ERROR;
    writeln!(out, "{}", opts.out.display()).map_err(io_err(&opts.out))?;
    writeln!(
        out,
        "max error {max_err:.3e} ({})",
        if ok { "ok" } else { "exceeds 1e-5" }
    )
    .map_err(io_err(&opts.out))?;
    Ok(ok)
}

//! `triwave` command line: `solve`, `sweep`, `verify`, `oracle`.
//!
//! Exit codes: 0 success, 1 configuration or input error, 2 non-convergence,
//! 3 verification failure.

pub mod config;
pub mod suites;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{oracle_harmonic, run_oracle};
use crate::error::{Error, Result};
use crate::grid::io;
use crate::model::{sample_potential, GnConstants, ModelParams};
use crate::solver::{
    continuation_in_beta, initial_state, minimize, minimize_observed, verify_theorem, Checkpointer, SolveResult,
};

pub use config::{RawConfig, RunConfig};
pub use suites::{run_suite, Suite, SuiteOptions, SuiteOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "triwave", version, about = "Normalized ground states of three-wave coupled Schrodinger systems")]
pub struct Cli {
    /// Run configuration (overrides the defaults file).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides output.dir).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed (overrides solver.seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimize, verify, and write result.json, report.json, history.csv and fields.
    Solve,
    /// One solve per beta (continuation) or per mass point; writes sweep.csv.
    Sweep {
        /// Comma-separated ascending beta values.
        #[arg(long, conflicts_with = "masses")]
        betas: Option<String>,
        /// Mass points `a,b,c; a,b,c; ...`.
        #[arg(long)]
        masses: Option<String>,
    },
    /// Run diagnostic suites: all, gn, coercivity, symmetrize, decomposition, oracles.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Alternative constant table.
        #[arg(long)]
        constants: Option<PathBuf>,
        /// Override the number of random trials per sweep.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Compare a linear (mu = beta = 0) harmonic config with its closed form.
    Oracle,
}

/// Parse `args` and run; diagnostics go to `out` / `err`.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    match pool.install(|| dispatch(&cli, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut raw = RawConfig::defaults()?;
    if let Some(p) = &cli.config {
        raw.overlay(RawConfig::load(p)?)?;
    }
    if let Some(s) = cli.seed {
        raw.set("solver.seed", s.to_string());
    }
    if let Some(o) = &cli.out {
        raw.set("output.dir", o.to_string_lossy());
    }
    RunConfig::from_raw(&raw)
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    match &cli.command {
        Command::Solve => cmd_solve(&load_config(cli)?, out),
        Command::Sweep { betas, masses } => {
            let mut cfg = load_config(cli)?;
            if let Some(b) = betas {
                cfg.sweep.betas = config::parse_beta_list(b).map_err(Error::Config)?;
                cfg.sweep.masses.clear();
            }
            if let Some(m) = masses {
                cfg.sweep.masses = config::parse_mass_grid(m).map_err(Error::Config)?;
                cfg.sweep.betas.clear();
            }
            cmd_sweep(&cfg, out)
        }
        Command::Verify {
            suite,
            constants,
            trials,
        } => {
            let suite: Suite = suite.parse()?;
            let constants = match constants {
                Some(p) => GnConstants::load(p)?,
                None => GnConstants::bundled(),
            };
            let opts = SuiteOptions {
                trials: *trials,
                seed: cli.seed.unwrap_or(0),
                out_dir: cli.out.clone(),
            };
            cmd_verify(suite, &constants, &opts, out)
        }
        Command::Oracle => cmd_oracle(&load_config(cli)?, out),
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Summary and report written next to each other.
#[derive(Serialize)]
struct SolveOutput<'a> {
    config: ConfigEcho<'a>,
    result: crate::solver::ResultSummary,
}

#[derive(Serialize)]
struct ConfigEcho<'a> {
    grid: &'a crate::grid::GridSpec,
    potential: &'a crate::model::PotentialKind,
    model: &'a ModelParams,
    solver: &'a crate::solver::SolverOptions,
}

fn echo(cfg: &RunConfig) -> ConfigEcho<'_> {
    ConfigEcho {
        grid: &cfg.grid,
        potential: &cfg.potential,
        model: &cfg.model,
        solver: &cfg.solver,
    }
}

pub fn cmd_solve(cfg: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32> {
    let grid = cfg.grid.build()?;
    let pot = sample_potential(&cfg.potential, &grid)?;
    let init = initial_state(&cfg.solver.init, &grid, cfg.solver.seed)?;
    let dir = &cfg.output.dir;
    fs::create_dir_all(dir)?;
    let every = if cfg.output.fields { cfg.output.checkpoint_every } else { 0 };
    let mut ckpt = Checkpointer::new(dir, every, cfg.output.history)?;
    let result = minimize_observed(&init, &pot, &cfg.model, &cfg.solver, &mut ckpt)?;
    ckpt.finish()?;
    if cfg.output.fields {
        ckpt.write_fields(&result.minimizer)?;
    }
    let report = verify_theorem(&result, &pot, &cfg.model, &cfg.verify)?;
    write_json(
        &dir.join("result.json"),
        &SolveOutput {
            config: echo(cfg),
            result: result.summary(),
        },
    )?;
    if cfg.output.report {
        write_json(&dir.join("report.json"), &report)?;
    }
    let l = result.multipliers.lambda;
    writeln!(
        out,
        "energy {:.12e}  lambda {:.9e} {:.9e} {:.9e}  iterations {}  max residual {:.3e}  {:?}",
        result.energy,
        l[0],
        l[1],
        l[2],
        result.iterations,
        result.max_relative_residual(),
        result.stop_reason
    )?;
    for c in &report.checks {
        writeln!(out, "  {:<20} {}  {}", c.name, if c.passed { "ok  " } else { "FAIL" }, c.detail)?;
    }
    Ok(if !result.converged {
        EXIT_NOT_CONVERGED
    } else if !report.passed {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    })
}

pub const SWEEP_HEADER: &str = "a,b,c,beta,p,m,lambda1,lambda2,lambda3,iterations,converged";

fn sweep_row(prm: &ModelParams, r: &SolveResult) -> String {
    let [a, b, c] = prm.masses;
    let l = r.multipliers.lambda;
    format!(
        "{a},{b},{c},{},{},{:e},{:e},{:e},{:e},{},{}",
        prm.beta, prm.p, r.energy, l[0], l[1], l[2], r.iterations, r.converged
    )
}

pub fn cmd_sweep(cfg: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32> {
    let grid = cfg.grid.build()?;
    let pot = sample_potential(&cfg.potential, &grid)?;
    let points: Vec<(ModelParams, SolveResult)> = if !cfg.sweep.betas.is_empty() {
        let results = continuation_in_beta(&pot, &cfg.model, &cfg.sweep.betas, &cfg.solver)?;
        cfg.sweep
            .betas
            .iter()
            .zip(results)
            .map(|(&b, r)| (cfg.model.with_beta(b), r))
            .collect()
    } else if !cfg.sweep.masses.is_empty() {
        let params: Vec<ModelParams> = cfg.sweep.masses.iter().map(|&m| cfg.model.with_masses(m)).collect();
        for p in &params {
            p.validate()?;
        }
        let init = initial_state(&cfg.solver.init, &grid, cfg.solver.seed)?;
        // par_iter + collect keeps input order
        let results: Vec<SolveResult> = params
            .par_iter()
            .map(|p| minimize(&init, &pot, p, &cfg.solver))
            .collect::<Result<_>>()?;
        params.into_iter().zip(results).collect()
    } else {
        return Err(Error::Config(
            "sweep needs a nonempty beta list or mass grid (--betas, --masses, sweep.betas or sweep.masses)".into(),
        ));
    };

    let dir = &cfg.output.dir;
    fs::create_dir_all(dir)?;
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for (k, (prm, r)) in points.iter().enumerate() {
        csv.push_str(&sweep_row(prm, r));
        csv.push('\n');
        if cfg.output.fields {
            let sub = dir.join(format!("point_{k:03}"));
            fs::create_dir_all(&sub)?;
            for (name, f) in ["u", "v", "w"].iter().zip(r.minimizer.components()) {
                io::write_field(sub.join(format!("{name}.bin")), f)?;
            }
        }
    }
    fs::write(dir.join("sweep.csv"), &csv)?;
    write!(out, "{csv}")?;
    Ok(if points.iter().all(|(_, r)| r.converged) {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

pub fn cmd_verify(suite: Suite, constants: &GnConstants, opts: &SuiteOptions, out: &mut (dyn Write + Send)) -> Result<i32> {
    if let Some(d) = &opts.out_dir {
        fs::create_dir_all(d)?;
    }
    let mut all = true;
    for s in suite.expand() {
        let outcome = run_suite(s, constants, opts)?;
        writeln!(out, "{}", outcome.verdict())?;
        if let Some(d) = &opts.out_dir {
            write_json(&d.join(format!("{}.json", s.name())), &outcome)?;
        }
        all &= outcome.passed();
    }
    Ok(if all { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

pub fn cmd_oracle(cfg: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32> {
    let case = oracle_harmonic(&cfg.model, &cfg.grid)?;
    if cfg.potential != crate::model::PotentialKind::Harmonic {
        return Err(Error::Misuse("the harmonic oracle needs potential.kind = harmonic".into()));
    }
    let (outcome, _) = run_oracle(&case, &cfg.solver)?;
    fs::create_dir_all(&cfg.output.dir)?;
    write_json(&cfg.output.dir.join("oracle.json"), &outcome)?;
    writeln!(
        out,
        "{}: energy {:.12e} (expected {}, error {:.3e}, tolerance {:.1e}); lambda error {:.3e}  {}",
        case.name,
        outcome.energy,
        case.expected_energy,
        outcome.energy_error,
        case.tolerance,
        outcome.multiplier_error,
        if outcome.passed { "PASS" } else { "FAIL" }
    )?;
    Ok(if !outcome.converged {
        EXIT_NOT_CONVERGED
    } else if outcome.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

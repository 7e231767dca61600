//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triwave::analysis::{decoupling_check, oracle_harmonic, run_oracle};
use triwave::cli::config::RunConfig;
use triwave::cli::suites::{oracle_cases, oracle_options, run_suite, Suite, SuiteOptions};
use triwave::grid::{Discretization, Field, Grid, GridSpec, TriField};
use triwave::model::*;
use triwave::solver::*;

struct Line {
    passed: bool,
    detail: String,
}

fn line(passed: bool, detail: impl Into<String>) -> Line {
    Line {
        passed,
        detail: detail.into(),
    }
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn shipped_configs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(configs_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "conf"))
        .collect();
    v.sort();
    v
}

fn solve_config(path: &Path) -> triwave::Result<(RunConfig, SolveResult, Duration)> {
    let cfg = if path.file_name().is_some_and(|n| n == "defaults.conf") {
        RunConfig::load(None)?
    } else {
        RunConfig::load(Some(path))?
    };
    let grid = cfg.grid.build()?;
    let pot = sample_potential(&cfg.potential, &grid)?;
    let init = initial_state(&cfg.solver.init, &grid, cfg.solver.seed)?;
    let start = Instant::now();
    let r = minimize(&init, &pot, &cfg.model, &cfg.solver)?;
    Ok((cfg, r, start.elapsed()))
}

fn max_increase(history: &[f64]) -> f64 {
    history
        .windows(2)
        .map(|w| (w[1] - w[0]) / w[0].abs().max(1.0))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn criterion_1(solved: &BTreeMap<String, (RunConfig, SolveResult, Duration)>) -> Line {
    let Some((cfg, r, time)) = solved.get("harmonic_oracle") else {
        return line(false, "harmonic_oracle.conf did not solve");
    };
    let setup_ok = cfg.grid == GridSpec::new(3, 8.0, 48, Discretization::SpectralPeriodic)
        && cfg.potential == PotentialKind::Harmonic
        && cfg.model.mu == [0.0; 3]
        && cfg.model.beta == 0.0
        && cfg.model.masses == [1.0; 3];
    let e_rel = (r.energy - 4.5).abs() / 4.5;
    let l_err = r.multipliers.lambda.iter().map(|l| (l + 3.0).abs()).fold(0.0, f64::max);
    line(
        setup_ok && r.converged && e_rel < 1e-3 && l_err < 1e-3 && time.as_secs_f64() < 300.0,
        format!(
            "N=3 n=48: J={:.10} rel err {e_rel:.2e}, max |lambda+3| {l_err:.2e}, {} iterations, {:.1}s",
            r.energy,
            r.iterations,
            time.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Line {
    let prm = ModelParams::linear([1.0; 3], 1);
    let spec = GridSpec::new(1, 8.0, 256, Discretization::SpectralPeriodic);
    let start = Instant::now();
    let res = oracle_harmonic(&prm, &spec).and_then(|case| run_oracle(&case, &oracle_options()));
    let time = start.elapsed().as_secs_f64();
    match res {
        Ok((o, _)) => {
            let ok = o.converged && o.energy_error < 1e-8 && o.multiplier_error < 1e-6 && time < 10.0;
            line(
                ok,
                format!(
                    "N=1 n=256: |J-1.5| {:.2e}, max |lambda+1| {:.2e}, {:.2}s",
                    o.energy_error, o.multiplier_error, time
                ),
            )
        }
        Err(e) => line(false, format!("error: {e}")),
    }
}

fn criterion_3() -> Line {
    let run = || -> triwave::Result<Line> {
        let grid = GridSpec::new(1, 8.0, 256, Discretization::SpectralPeriodic).build()?;
        let pot = sample_potential(&PotentialKind::Harmonic, &grid)?;
        let prm = ModelParams::new([1.0; 3], 0.0, 3.0, [1.0; 3], 1);
        let rep = decoupling_check(&pot, &prm, &SolverOptions::default())?;
        let prof = rep.profile_gaps.iter().copied().fold(0.0, f64::max);
        Ok(line(
            rep.converged && rep.energy_gap < 1e-8 && prof < 1e-6,
            format!("energy gap {:.2e}, max profile gap {prof:.2e}", rep.energy_gap),
        ))
    };
    run().unwrap_or_else(|e| line(false, format!("error: {e}")))
}

fn theorem_setup() -> triwave::Result<(Arc<Grid>, PotentialSet)> {
    let grid = GridSpec::new(3, 8.0, 32, Discretization::FdDirichlet).build()?;
    let pot = sample_potential(
        &PotentialKind::ShiftedHarmonic {
            offsets: [0.0, -1.0, -2.0],
        },
        &grid,
    )?;
    Ok((grid, pot))
}

fn criterion_4() -> Line {
    let run = || -> triwave::Result<Line> {
        let (grid, pot) = theorem_setup()?;
        let opts = SolverOptions::default();
        let init = initial_state(&opts.init, &grid, opts.seed)?;
        let mut ok = true;
        let mut parts = Vec::new();
        for beta in [0.5, 1.0, 2.0] {
            let prm = ModelParams::new([1.0; 3], beta, 2.5, [1.0; 3], 3);
            let r = minimize(&init, &pot, &prm, &opts)?;
            let rep = verify_theorem(&r, &pot, &prm, &VerifyTolerances::default())?;
            ok &= rep.passed;
            parts.push(format!(
                "beta={beta}: J={:.9} res {:.1e} {}",
                r.energy,
                r.max_relative_residual(),
                if rep.passed { "verified".to_string() } else { format!("failed {:?}", rep.failures()) }
            ));
        }
        Ok(line(ok, parts.join("; ")))
    };
    run().unwrap_or_else(|e| line(false, format!("error: {e}")))
}

fn sweep_line(suite: Suite, extra: impl FnOnce(&triwave::analysis::InequalityReport) -> (bool, String)) -> Line {
    match run_suite(suite, &GnConstants::bundled(), &SuiteOptions::default()) {
        Ok(out) => {
            let r = &out.sweeps[0];
            let (ok, more) = extra(r);
            line(
                out.passed() && ok,
                format!(
                    "{} trials, {} violations, worst margin {:.2e}{more}",
                    r.trials, r.violations, r.worst_margin
                ),
            )
        }
        Err(e) => line(false, format!("error: {e}")),
    }
}

fn criterion_5() -> Line {
    sweep_line(Suite::Decomposition, |r| (r.trials == 100, String::new()))
}

fn criterion_6() -> Line {
    let g4 = gn_exponent(3, 4.0);
    sweep_line(Suite::Gn, |r| {
        (
            r.trials == 1000 && r.grid.dimension == 3 && g4 == 0.75,
            format!(", gamma_4 = {g4}"),
        )
    })
}

fn criterion_7() -> Line {
    sweep_line(Suite::Coercivity, |r| match r.min_energy {
        Some(e) if e.is_finite() => (r.trials == 1000, format!(", min energy {e:.6e}")),
        other => (false, format!(", min energy {other:?}")),
    })
}

fn criterion_8() -> Line {
    sweep_line(Suite::Symmetrize, |r| {
        (
            r.trials == 1000 && r.grid.discretization == Discretization::FdDirichlet && r.params.beta == 1.0,
            String::new(),
        )
    })
}

fn criterion_9() -> Line {
    let run = || -> triwave::Result<Line> {
        let (_, pot) = theorem_setup()?;
        let prm = ModelParams::new([1.0; 3], 0.0, 2.5, [1.0; 3], 3);
        let betas = [0.0, 0.5, 1.0, 2.0];
        let rs = continuation_in_beta(&pot, &prm, &betas, &SolverOptions::default())?;
        let m: Vec<f64> = rs.iter().map(|r| r.energy).collect();
        let worst = m.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
        let converged = rs.iter().all(|r| r.converged);
        let positive = rs.iter().all(|r| r.minimizer.components().iter().all(|f| f.min_value() >= 0.0));
        Ok(line(
            converged && positive && worst <= 1e-10,
            format!("m = {m:.9?}, largest step {worst:.3e}"),
        ))
    };
    run().unwrap_or_else(|e| line(false, format!("error: {e}")))
}

fn directional_error(t: &TriField, dir: &TriField, pot: &PotentialSet, prm: &ModelParams, eps: f64) -> f64 {
    let g = el_gradient(t, pot, prm);
    let exact: f64 = (0..3).map(|i| g.component(i).inner(dir.component(i))).sum();
    let mut plus = t.clone();
    plus.axpy(eps, dir);
    let mut minus = t.clone();
    minus.axpy(-eps, dir);
    ((energy(&plus, pot, prm) - energy(&minus, pot, prm)) / (2.0 * eps) - exact).abs()
}

/// Worst `e(ε)/e(ε/2)` ratio distance from 4 over 20 directions, per grid.
fn gradient_orders() -> triwave::Result<Vec<(Discretization, f64, f64)>> {
    let mut out = Vec::new();
    for disc in [Discretization::SpectralPeriodic, Discretization::FdDirichlet] {
        let g = GridSpec::new(3, 6.0, 16, disc).build()?;
        let pot = sample_potential(&PotentialKind::ShiftedHarmonic { offsets: [0.0, -1.0, -2.0] }, &g)?;
        let prm = ModelParams::new([1.0; 3], 1.0, 2.5, [1.0; 3], 3);
        let base = Field::from_fn(g.clone(), |x| (-x.iter().map(|c| c * c).sum::<f64>() / 2.0).exp() + 0.5);
        let t = TriField::new(base.clone(), base.scaled(0.7), base.map(|v| v * v))?;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..20 {
            let mut comp = || Field::new(g.clone(), g.band_limited_noise(&mut rng));
            let dir = TriField::new(comp()?, comp()?, comp()?)?;
            let dir = dir.map_components(|_, f| f.scaled(1.0 / f.l2_norm()));
            let ratio = directional_error(&t, &dir, &pot, &prm, 4e-2) / directional_error(&t, &dir, &pot, &prm, 2e-2);
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        out.push((disc, lo, hi));
    }
    Ok(out)
}

/// Oracle energies at half-width 8 and 12 with the spacing held fixed.
fn doubling() -> triwave::Result<Vec<(String, f64)>> {
    let mut out = Vec::new();
    for (prm, spec) in oracle_cases() {
        let wide = GridSpec::new(spec.dimension, 12.0, spec.points_per_axis * 3 / 2, spec.discretization);
        let e8 = run_oracle(&oracle_harmonic(&prm, &spec)?, &oracle_options())?.0.energy;
        let e12 = run_oracle(&oracle_harmonic(&prm, &wide)?, &oracle_options())?.0.energy;
        out.push((
            format!("N{} n{} {}", spec.dimension, spec.points_per_axis, spec.discretization),
            (e12 - e8).abs(),
        ));
    }
    Ok(out)
}

fn criterion_10(solved: &BTreeMap<String, (RunConfig, SolveResult, Duration)>, failed: &[String]) -> Line {
    let mut ok = failed.is_empty();
    let mut parts = Vec::new();
    if !failed.is_empty() {
        parts.push(format!("unsolved configs {failed:?}"));
    }
    let worst = solved
        .iter()
        .map(|(name, (_, r, _))| (name.clone(), max_increase(&r.energy_history)))
        .fold((String::new(), f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    ok &= worst.1 <= 1e-13;
    parts.push(format!(
        "{} configs, largest relative energy increase {:.1e} ({})",
        solved.len(),
        worst.1.max(0.0),
        worst.0
    ));
    match gradient_orders() {
        Ok(orders) => {
            for (disc, lo, hi) in orders {
                ok &= (3.5..=4.5).contains(&lo) && (3.5..=4.5).contains(&hi);
                parts.push(format!("gradient {disc} ratio [{lo:.3}, {hi:.3}]"));
            }
        }
        Err(e) => {
            ok = false;
            parts.push(format!("gradient error: {e}"));
        }
    }
    match doubling() {
        Ok(d) => {
            for (name, diff) in d {
                ok &= diff < 1e-6;
                parts.push(format!("L 8->12 {name}: {diff:.1e}"));
            }
        }
        Err(e) => {
            ok = false;
            parts.push(format!("doubling error: {e}"));
        }
    }
    line(ok, parts.join("; "))
}

fn main() {
    let mut solved = BTreeMap::new();
    let mut failed = Vec::new();
    for path in shipped_configs() {
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        match solve_config(&path) {
            Ok(x) => {
                solved.insert(name, x);
            }
            Err(e) => failed.push(format!("{name}: {e}")),
        }
    }

    let criteria: Vec<(usize, Box<dyn Fn() -> Line + '_>)> = vec![
        (1, Box::new(|| criterion_1(&solved))),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
        (10, Box::new(|| criterion_10(&solved, &failed))),
    ];
    let mut failures = 0;
    for (k, check) in criteria {
        let l = check();
        if !l.passed {
            failures += 1;
        }
        println!("criterion {k}: {} {}", if l.passed { "PASS" } else { "FAIL" }, l.detail);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

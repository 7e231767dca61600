//! Oracles and diagnostic suites built on the solver.

mod oracle;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::TriField;
use crate::model::{potential_integral, ModelParams, PotentialSet};
use crate::solver::scalar::{minimize_scalar, ScalarProblem};
use crate::solver::{initial_state, minimize, SolveResult, SolverOptions};

pub use oracle::{oracle_harmonic, run_oracle, OracleCase, OracleOutcome, Provenance};
pub use sweep::{inequality_sweep, random_triple, InequalityReport, SweepKind, SweepRequest};

/// `m − [m_∞ + ½ ∫ Σ Vᵢ fᵢ²]`, with `fᵢ` the trapped minimizer.
///
/// Both results must come from the same grid and masses; the free solve is
/// the one with every `Vᵢ ≡ 0`.
pub fn free_vs_trapped(
    trapped: &SolveResult,
    free: &SolveResult,
    pot: &PotentialSet,
    prm: &ModelParams,
) -> Result<f64> {
    let t = &trapped.minimizer;
    if !t.u().same_grid(free.minimizer.u()) || !t.u().same_grid(pot.field(0)) {
        return Err(Error::Comparison("trapped and free solves use different grids".into()));
    }
    for (label, state) in [("trapped", t), ("free", &free.minimizer)] {
        let m = state.masses();
        if (0..3).any(|i| (m[i] - prm.masses[i]).abs() > 1e-10 * prm.masses[i]) {
            return Err(Error::Comparison(format!(
                "{label} minimizer masses {m:?} differ from {:?}",
                prm.masses
            )));
        }
    }
    let trap: f64 = (0..3)
        .map(|i| potential_integral(pot.field(i), t.component(i)))
        .sum();
    Ok(trapped.energy - (free.energy + 0.5 * trap))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecouplingReport {
    pub coupled_energy: f64,
    pub scalar_energy: f64,
    pub energy_gap: f64,
    /// `‖fᵢ − φᵢ‖₂` per component.
    pub profile_gaps: [f64; 3],
    pub converged: bool,
}

/// With `β = 0` the system splits; compare one coupled solve with three
/// scalar solves started from the same fields.
pub fn decoupling_check(
    pot: &PotentialSet,
    prm: &ModelParams,
    opts: &SolverOptions,
) -> Result<DecouplingReport> {
    if prm.beta != 0.0 {
        return Err(Error::Misuse("decoupling needs beta = 0".into()));
    }
    let init = initial_state(&opts.init, pot.grid(), opts.seed)?;
    let coupled = minimize(&init, pot, prm, opts)?;
    let mut scalar_energy = 0.0;
    let mut profile_gaps = [0.0; 3];
    let mut converged = coupled.converged;
    for i in 0..3 {
        let prob = ScalarProblem {
            mu: prm.mu[i],
            p: prm.p,
            mass: prm.masses[i],
        };
        let r = minimize_scalar(init.component(i), pot.field(i), &prob, opts)?;
        converged &= r.converged;
        scalar_energy += r.energy;
        let mut d = r.profile.clone();
        d.axpy(-1.0, coupled.minimizer.component(i));
        profile_gaps[i] = d.l2_norm();
    }
    Ok(DecouplingReport {
        coupled_energy: coupled.energy,
        scalar_energy,
        energy_gap: (coupled.energy - scalar_energy).abs(),
        profile_gaps,
        converged,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiStartReport {
    pub seeds: Vec<u64>,
    pub energies: Vec<f64>,
    /// `max − min` of the converged energies.
    pub energy_spread: f64,
    /// Largest distance between any minimizer and the lowest-energy one.
    pub profile_spread: f64,
    pub all_converged: bool,
}

/// Solve from several random starts and report how far the results spread.
/// Uniqueness of the positive minimizer is not asserted anywhere.
pub fn multi_start(
    pot: &PotentialSet,
    prm: &ModelParams,
    opts: &SolverOptions,
    seeds: &[u64],
) -> Result<MultiStartReport> {
    if seeds.is_empty() {
        return Err(Error::Config("multi-start needs at least one seed".into()));
    }
    let mut results: Vec<SolveResult> = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let init = initial_state(&crate::solver::InitKind::Random, pot.grid(), seed)?;
        // random starts change sign; positive representatives are compared
        let init = init.map_components(|_, f| f.abs());
        results.push(minimize(&init, pot, prm, opts)?);
    }
    let energies: Vec<f64> = results.iter().map(|r| r.energy).collect();
    let lo = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let best: &TriField = &results[energies.iter().position(|&e| e == lo).unwrap_or(0)].minimizer;
    let profile_spread = results
        .iter()
        .map(|r| r.minimizer.distance(best))
        .fold(0.0, f64::max);
    Ok(MultiStartReport {
        seeds: seeds.to_vec(),
        energies,
        energy_spread: hi - lo,
        profile_spread,
        all_converged: results.iter().all(|r| r.converged),
    })
}

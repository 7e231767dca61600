use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Discretization, GridSpec};
use crate::model::{sample_potential, ModelParams, Multipliers, PotentialKind};
use crate::solver::{initial_state, minimize, SolveResult, SolverOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Closed-form value.
    Analytic,
    /// Independent scalar solves.
    ScalarOracle,
    /// Ordering between two solver runs.
    Comparison,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCase {
    pub name: String,
    pub params: ModelParams,
    pub grid: GridSpec,
    pub potential_kind: PotentialKind,
    pub expected_energy: f64,
    pub expected_multipliers: Multipliers,
    /// Absolute energy tolerance.
    pub tolerance: f64,
    /// Absolute tolerance on each `λᵢ`.
    pub multiplier_tolerance: f64,
    pub provenance: Provenance,
}

/// Harmonic oscillator `−Δ + |x|²` with `μ = β = 0`: ground state
/// `e^{−|x|²/2}`, eigenvalue `N`, so `m = (N/2)(a + b + c)` and `λᵢ = −N`.
///
/// Tolerances: spectral grids are limited by truncation, `(a+b+c) e^{−L²/2}`;
/// second-order differences shift each eigenvalue by about `−N h²/16`.
pub fn oracle_harmonic(prm: &ModelParams, grid: &GridSpec) -> Result<OracleCase> {
    if prm.mu.iter().any(|&m| m != 0.0) || prm.beta != 0.0 {
        return Err(Error::Misuse(
            "the harmonic oracle needs mu = beta = 0".into(),
        ));
    }
    if prm.dimension != grid.dimension {
        return Err(Error::Misuse(format!(
            "parameter dimension {} does not match grid dimension {}",
            prm.dimension, grid.dimension
        )));
    }
    prm.validate()?;
    grid.validate()?;
    let n = prm.dimension as f64;
    let total: f64 = prm.masses.iter().sum();
    let h = grid.spacing();
    let l = grid.half_width;
    let (tolerance, multiplier_tolerance) = match grid.discretization {
        Discretization::SpectralPeriodic => {
            let trunc = (-l * l / 2.0).exp();
            ((total * trunc).max(1e-8), (n * trunc).max(1e-6))
        }
        Discretization::FdDirichlet => ((n * h * h / 16.0 * total).max(1e-8), (n * h * h / 8.0).max(1e-6)),
    };
    Ok(OracleCase {
        name: format!(
            "harmonic_n{}_{}_{}",
            prm.dimension, grid.points_per_axis, grid.discretization
        ),
        params: *prm,
        grid: *grid,
        potential_kind: PotentialKind::Harmonic,
        expected_energy: n / 2.0 * total,
        expected_multipliers: Multipliers::new([-n; 3]),
        tolerance,
        multiplier_tolerance,
        provenance: Provenance::Analytic,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub case: OracleCase,
    pub energy: f64,
    pub multipliers: [f64; 3],
    pub iterations: usize,
    pub converged: bool,
    pub energy_error: f64,
    pub multiplier_error: f64,
    pub passed: bool,
}

pub fn run_oracle(case: &OracleCase, opts: &SolverOptions) -> Result<(OracleOutcome, SolveResult)> {
    let grid = case.grid.build()?;
    let pot = sample_potential(&case.potential_kind, &grid)?;
    let init = initial_state(&opts.init, &grid, opts.seed)?;
    let result = minimize(&init, &pot, &case.params, opts)?;
    let energy_error = (result.energy - case.expected_energy).abs();
    let multiplier_error = (0..3)
        .map(|i| (result.multipliers.lambda[i] - case.expected_multipliers.lambda[i]).abs())
        .fold(0.0, f64::max);
    let passed = result.converged
        && energy_error <= case.tolerance
        && multiplier_error <= case.multiplier_tolerance;
    Ok((
        OracleOutcome {
            case: case.clone(),
            energy: result.energy,
            multipliers: result.multipliers.lambda,
            iterations: result.iterations,
            converged: result.converged,
            energy_error,
            multiplier_error,
            passed,
        },
        result,
    ))
}

//! Post-solve checks: attained minimizer, exact masses, positivity, finite
//! multipliers, small residuals, energy below a Gaussian trial state.

use serde::{Deserialize, Serialize};

use super::{renormalize, SolveResult};
use crate::error::Result;
use crate::grid::{Discretization, Field, TriField};
use crate::model::{energy, ModelParams, PotentialSet};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyTolerances {
    /// Relative mass error.
    pub mass: f64,
    /// Bound on `max rᵢ / ‖fᵢ‖₂`.
    pub residual: f64,
    /// Spectral grids only: nodes with `|f| < noise·max|f|` are below the
    /// accuracy of a converged iterate and exempt from the strict-sign test
    /// (but may not be more negative). Dirichlet grids are checked strictly.
    pub noise: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            mass: 1e-12,
            residual: 1e-6,
            noise: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    /// 1-based components whose positivity check failed.
    pub nonpositive_components: Vec<usize>,
    pub energy: f64,
    pub trial_energy: f64,
    pub multipliers: [f64; 3],
    pub relative_residuals: [f64; 3],
    pub masses: [f64; 3],
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

/// Pass flag and the smallest value over the checked nodes.
fn positivity(f: &Field, noise: f64) -> (bool, f64) {
    let grid = f.grid();
    let vals = f.values();
    match grid.discretization() {
        Discretization::FdDirichlet => {
            let min = (0..vals.len())
                .filter(|&i| grid.is_interior(i))
                .map(|i| vals[i])
                .fold(f64::INFINITY, f64::min);
            (min > 0.0, min)
        }
        Discretization::SpectralPeriodic => {
            let floor = noise * f.max_abs();
            let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let strict = vals.iter().filter(|v| v.abs() >= floor).all(|&v| v > 0.0);
            (strict && min > -floor, min)
        }
    }
}

fn gaussian_trial(t: &TriField, masses: [f64; 3]) -> Result<TriField> {
    let g = Field::from_fn(t.grid().clone(), |x| (-x.iter().map(|c| c * c).sum::<f64>() / 2.0).exp());
    renormalize(&TriField::new(g.clone(), g.clone(), g)?, masses)
}

pub fn verify_theorem(
    result: &SolveResult,
    pot: &PotentialSet,
    prm: &ModelParams,
    tol: &VerifyTolerances,
) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    push(
        "converged",
        result.converged,
        format!("{:?} after {} iterations", result.stop_reason, result.iterations),
    );

    let masses = result.minimizer.masses();
    let mass_err = (0..3)
        .map(|i| (masses[i] - prm.masses[i]).abs() / prm.masses[i])
        .fold(0.0, f64::max);
    push("masses", mass_err <= tol.mass, format!("max relative error {mass_err:.3e}"));

    let mut nonpositive = Vec::new();
    let mut mins = [0.0; 3];
    for i in 0..3 {
        let (ok, min) = positivity(result.minimizer.component(i), tol.noise);
        mins[i] = min;
        if !ok {
            nonpositive.push(i + 1);
        }
    }
    push(
        "positivity",
        nonpositive.is_empty(),
        format!("minima {:.3e} {:.3e} {:.3e}; failing {:?}", mins[0], mins[1], mins[2], nonpositive),
    );

    let lambda = result.multipliers.lambda;
    push(
        "multipliers_finite",
        result.multipliers.is_finite(),
        format!("{:?}", lambda),
    );

    let rel = result.relative_residuals();
    let worst = rel.iter().copied().fold(0.0, f64::max);
    push(
        "residual",
        worst < tol.residual,
        format!("max relative residual {worst:.3e} (bound {:.1e})", tol.residual),
    );

    let trial = gaussian_trial(&result.minimizer, prm.masses)?;
    let trial_energy = energy(&trial, pot, prm);
    let slack = 1e-10 * trial_energy.abs().max(1.0);
    push(
        "below_trial",
        result.energy <= trial_energy + slack,
        format!("J = {:.12e}, Gaussian trial {:.12e}", result.energy, trial_energy),
    );

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        passed,
        checks,
        nonpositive_components: nonpositive,
        energy: result.energy,
        trial_energy,
        multipliers: lambda,
        relative_residuals: rel,
        masses,
    })
}

//! Normalized gradient flow on the constraint set `S(a, b, c)`.
//!
//! Each iteration takes a descent step along the unconstrained L² gradient of
//! `J`, rescales every component back onto its mass, and (on Dirichlet grids)
//! replaces the iterate by its modulus. A backtracking line search halves the
//! step until the energy does not increase.

mod checkpoint;
mod options;
pub mod scalar;
mod verify;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{io, Discretization, Field, Grid, TriField};
use crate::model::{
    el_gradient, el_residual, multipliers, residual_from_gradient, EnergyTerms, ModelParams,
    Multipliers, PotentialSet,
};

pub use checkpoint::{Checkpointer, HISTORY_HEADER};
pub use options::{InitKind, Scheme, SolverOptions};
pub use verify::{verify_theorem, Check, VerificationReport, VerifyTolerances};

/// Energies are compared with this slack, relative to the summed magnitude of
/// the terms of `J`; below it the comparison is rounding noise.
pub const ENERGY_ROUNDING: f64 = 1e-14;

/// Scale every component onto its target mass.
pub fn renormalize(t: &TriField, masses: [f64; 3]) -> Result<TriField> {
    let current = t.masses();
    for (i, &m) in current.iter().enumerate() {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::DegenerateInit { component: i + 1 });
        }
    }
    Ok(t.map_components(|i, f| f.scaled((masses[i] / current[i]).sqrt())))
}

/// Unnormalized starting triple of the requested kind.
pub fn initial_state(kind: &InitKind, grid: &Arc<Grid>, seed: u64) -> Result<TriField> {
    let comps = match kind {
        InitKind::Gaussian => {
            let g = Field::from_fn(grid.clone(), |x| {
                (-x.iter().map(|c| c * c).sum::<f64>() / 2.0).exp()
            });
            [g.clone(), g.clone(), g]
        }
        InitKind::Constant => {
            let c = Field::constant(grid.clone(), 1.0);
            [c.clone(), c.clone(), c]
        }
        InitKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            [0, 1, 2].map(|_| Field::new(grid.clone(), grid.band_limited_noise(&mut rng)).unwrap())
        }
        InitKind::FromFile { paths } => [
            io::read_field_on(&paths[0], grid)?,
            io::read_field_on(&paths[1], grid)?,
            io::read_field_on(&paths[2], grid)?,
        ],
    };
    TriField::from_array(comps)
}

/// The semi-implicit scheme preconditions the tangential part `G + λf`;
/// preconditioning `G` itself would move the fixed point off the EL system.
fn apply_step(
    t: &TriField,
    gradient: &TriField,
    lambda: &Multipliers,
    tau: f64,
    scheme: Scheme,
    masses: [f64; 3],
    modulus: bool,
) -> Result<TriField> {
    let mut next = t.clone();
    for i in 0..3 {
        let g = gradient.component(i);
        let dir = match scheme {
            Scheme::Explicit => g.clone(),
            Scheme::SemiImplicit => {
                let mut r = g.clone();
                r.axpy(lambda.lambda[i], t.component(i));
                let grid = g.grid();
                Field::new(grid.clone(), grid.apply_symbol(r.values(), |s| 1.0 / (1.0 + tau * s)))?
            }
        };
        next.component_mut(i).axpy(-tau, &dir);
    }
    let mut next = renormalize(&next, masses)?;
    if modulus {
        next = next.map_components(|_, f| f.abs());
    }
    Ok(next)
}

/// One explicit flow step: `renormalize(t − τ G(t))`.
pub fn descent_step(t: &TriField, pot: &PotentialSet, prm: &ModelParams, tau: f64) -> Result<TriField> {
    descent_step_with(t, pot, prm, tau, Scheme::Explicit)
}

pub fn descent_step_with(
    t: &TriField,
    pot: &PotentialSet,
    prm: &ModelParams,
    tau: f64,
    scheme: Scheme,
) -> Result<TriField> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Config(format!("step must be positive (got {tau})")));
    }
    let g = el_gradient(t, pot, prm);
    let lambda = multipliers(t, pot, prm)?;
    apply_step(t, &g, &lambda, tau, scheme, prm.masses, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    MaxIters,
    LineSearchExhausted,
    Diverged,
}

/// Per-iteration diagnostics handed to an [`Observer`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub energy: f64,
    pub residuals: [f64; 3],
    pub multipliers: [f64; 3],
    pub step: f64,
}

pub trait Observer {
    fn observe(&mut self, record: &IterationRecord, state: &TriField) -> Result<()>;
}

impl Observer for () {
    fn observe(&mut self, _: &IterationRecord, _: &TriField) -> Result<()> {
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub minimizer: TriField,
    /// Estimate of `m(a, b, c)`.
    pub energy: f64,
    pub multipliers: Multipliers,
    /// Absolute residual norms `rᵢ = ‖Gᵢ + λᵢ fᵢ‖₂`.
    pub residuals: [f64; 3],
    pub iterations: usize,
    pub energy_history: Vec<f64>,
    pub converged: bool,
    pub stop_reason: StopReason,
    pub final_step: f64,
}

/// Scalar summary, serialized as `result.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultSummary {
    pub energy: f64,
    pub multipliers: [f64; 3],
    pub residuals: [f64; 3],
    pub relative_residuals: [f64; 3],
    pub masses: [f64; 3],
    pub iterations: usize,
    pub converged: bool,
    pub stop_reason: StopReason,
    pub final_step: f64,
}

impl SolveResult {
    /// Evaluate a state as if a solve had stopped there.
    pub fn from_state(
        state: TriField,
        pot: &PotentialSet,
        prm: &ModelParams,
        iterations: usize,
        converged: bool,
    ) -> Result<Self> {
        let terms = EnergyTerms::compute(&state, Some(pot), prm.p);
        let m = multipliers(&state, pot, prm)?;
        let residuals = el_residual(&state, pot, prm, &m);
        let energy = terms.energy(prm);
        Ok(Self {
            minimizer: state,
            energy,
            multipliers: m,
            residuals,
            iterations,
            energy_history: vec![energy],
            converged,
            stop_reason: if converged {
                StopReason::Converged
            } else {
                StopReason::MaxIters
            },
            final_step: 0.0,
        })
    }

    pub fn relative_residuals(&self) -> [f64; 3] {
        let m = self.minimizer.masses();
        [0, 1, 2].map(|i| self.residuals[i] / m[i].sqrt())
    }

    pub fn max_relative_residual(&self) -> f64 {
        self.relative_residuals().into_iter().fold(0.0, f64::max)
    }

    pub fn summary(&self) -> ResultSummary {
        ResultSummary {
            energy: self.energy,
            multipliers: self.multipliers.lambda,
            residuals: self.residuals,
            relative_residuals: self.relative_residuals(),
            masses: self.minimizer.masses(),
            iterations: self.iterations,
            converged: self.converged,
            stop_reason: self.stop_reason,
            final_step: self.final_step,
        }
    }
}

pub fn minimize(
    init: &TriField,
    pot: &PotentialSet,
    prm: &ModelParams,
    opts: &SolverOptions,
) -> Result<SolveResult> {
    minimize_observed(init, pot, prm, opts, &mut ())
}

pub fn minimize_observed(
    init: &TriField,
    pot: &PotentialSet,
    prm: &ModelParams,
    opts: &SolverOptions,
    observer: &mut dyn Observer,
) -> Result<SolveResult> {
    prm.validate()?;
    opts.validate()?;
    if !init.u().same_grid(pot.field(0)) {
        return Err(Error::GridMismatch);
    }
    let grid = init.grid().clone();
    let modulus = opts.symmetrize && grid.discretization() == Discretization::FdDirichlet;

    let mut state = renormalize(init, prm.masses)?;
    if modulus {
        state = state.map_components(|_, f| f.abs());
    }
    let mut terms = EnergyTerms::compute(&state, Some(pot), prm.p);
    let mut energy = terms.energy(prm);
    let mut history = vec![energy];
    let mut best = (energy, state.clone());
    let mut tau = opts.resolved_step(&grid);
    let mut last_decrease = 0.0f64;
    let mut iterations = 0;
    let stop_reason;

    loop {
        let gradient = el_gradient(&state, pot, prm);
        let lambda = terms.multipliers(prm)?;
        let residuals = residual_from_gradient(&state, &gradient, &lambda);
        let relative = (0..3)
            .map(|i| residuals[i] / terms.masses[i].sqrt())
            .fold(0.0, f64::max);
        observer.observe(
            &IterationRecord {
                iteration: iterations,
                energy,
                residuals,
                multipliers: lambda.lambda,
                step: tau,
            },
            &state,
        )?;
        if relative < opts.tol_residual && last_decrease <= opts.tol_energy {
            stop_reason = StopReason::Converged;
            break;
        }
        if iterations >= opts.max_iters {
            stop_reason = StopReason::MaxIters;
            break;
        }

        let slack = ENERGY_ROUNDING * terms.magnitude(prm);
        let mut accepted = None;
        let mut diverged = false;
        for _ in 0..=opts.max_halvings {
            if let Ok(trial) = apply_step(&state, &gradient, &lambda, tau, opts.scheme, prm.masses, modulus) {
                let trial_terms = EnergyTerms::compute(&trial, Some(pot), prm.p);
                let trial_energy = trial_terms.energy(prm);
                if !opts.line_search {
                    diverged = !trial_energy.is_finite();
                    accepted = Some((trial, trial_terms, trial_energy));
                    break;
                }
                if trial_energy.is_finite() && trial_energy <= energy + slack {
                    accepted = Some((trial, trial_terms, trial_energy));
                    break;
                }
            }
            tau *= 0.5;
        }
        let Some((trial, trial_terms, trial_energy)) = accepted else {
            stop_reason = StopReason::LineSearchExhausted;
            break;
        };
        if diverged {
            stop_reason = StopReason::Diverged;
            break;
        }
        last_decrease = (energy - trial_energy) / energy.abs().max(f64::MIN_POSITIVE);
        state = trial;
        terms = trial_terms;
        energy = trial_energy;
        history.push(energy);
        iterations += 1;
        if energy < best.0 {
            best = (energy, state.clone());
        }
    }

    let converged = stop_reason == StopReason::Converged;
    let minimizer = if converged { state } else { best.1 };
    let mut result = SolveResult::from_state(minimizer, pot, prm, iterations, converged)?;
    result.energy_history = history;
    result.stop_reason = stop_reason;
    result.final_step = tau;
    Ok(result)
}

/// Solve for each `β` in ascending order, warm-starting from the previous
/// minimizer. The first solve starts from `opts.init`.
pub fn continuation_in_beta(
    pot: &PotentialSet,
    prm: &ModelParams,
    betas: &[f64],
    opts: &SolverOptions,
) -> Result<Vec<SolveResult>> {
    if betas.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
        return Err(Error::Config("beta values must be finite and >= 0".into()));
    }
    if betas.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Config("beta list must be sorted ascending".into()));
    }
    let mut out: Vec<SolveResult> = Vec::with_capacity(betas.len());
    for &beta in betas {
        let start = match out.last() {
            Some(prev) => prev.minimizer.clone(),
            None => initial_state(&opts.init, pot.grid(), opts.seed)?,
        };
        out.push(minimize(&start, pot, &prm.with_beta(beta), opts)?);
    }
    Ok(out)
}

//! Single-component normalized gradient flow for
//! `E(f) = ½∫(|∇f|² + V f²) − (μ/p)∫|f|^p` on `∫f² = m`.
//!
//! Written against `Field` directly so that it shares no energy code with the
//! coupled solver; with `β = 0` the two must agree.

use super::{Scheme, SolverOptions, StopReason, ENERGY_ROUNDING};
use crate::error::{Error, Result};
use crate::grid::{Discretization, Field};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarProblem {
    pub mu: f64,
    pub p: f64,
    pub mass: f64,
}

#[derive(Clone, Debug)]
pub struct ScalarResult {
    pub profile: Field,
    pub energy: f64,
    pub lambda: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub stop_reason: StopReason,
}

struct Eval {
    energy: f64,
    scale: f64,
    lambda: f64,
}

fn evaluate(f: &Field, v: &Field, prob: &ScalarProblem) -> Eval {
    let k = f.grad_sq_integral();
    let pv = f.map(|x| x * x).inner(v);
    let nl = f.lq_power(prob.p);
    let m = f.mass();
    Eval {
        energy: 0.5 * (k + pv) - prob.mu / prob.p * nl,
        scale: 0.5 * (k + pv.abs()) + prob.mu / prob.p * nl,
        lambda: (prob.mu * nl - k - pv) / m,
    }
}

fn gradient(f: &Field, v: &Field, prob: &ScalarProblem) -> Field {
    let mut g = f.laplacian().scaled(-1.0);
    let vals: Vec<f64> = f
        .values()
        .iter()
        .zip(v.values())
        .map(|(&x, &vx)| {
            let nl = if x == 0.0 { 0.0 } else { x.abs().powf(prob.p - 2.0) * x };
            vx * x - prob.mu * nl
        })
        .collect();
    g.axpy(1.0, &Field::new(f.grid().clone(), vals).expect("finite"));
    g
}

fn project(f: &Field, mass: f64, modulus: bool) -> Result<Field> {
    let m = f.mass();
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::DegenerateInit { component: 1 });
    }
    let out = f.scaled((mass / m).sqrt());
    Ok(if modulus { out.abs() } else { out })
}

pub fn minimize_scalar(
    init: &Field,
    potential: &Field,
    prob: &ScalarProblem,
    opts: &SolverOptions,
) -> Result<ScalarResult> {
    opts.validate()?;
    let grid = init.grid().clone();
    let modulus = opts.symmetrize && grid.discretization() == Discretization::FdDirichlet;
    let mut f = project(init, prob.mass, modulus)?;
    let mut ev = evaluate(&f, potential, prob);
    let mut tau = opts.resolved_step(&grid);
    let mut last_decrease = 0.0f64;
    let mut iterations = 0;
    let (stop_reason, residual) = loop {
        let g = gradient(&f, potential, prob);
        let mut r = g.clone();
        r.axpy(ev.lambda, &f);
        let residual = r.l2_norm();
        if residual / prob.mass.sqrt() < opts.tol_residual && last_decrease <= opts.tol_energy {
            break (StopReason::Converged, residual);
        }
        if iterations >= opts.max_iters {
            break (StopReason::MaxIters, residual);
        }
        let dir_for = |tau: f64| match opts.scheme {
            Scheme::Explicit => g.clone(),
            Scheme::SemiImplicit => Field::new(
                grid.clone(),
                grid.apply_symbol(r.values(), |s| 1.0 / (1.0 + tau * s)),
            )
            .expect("finite"),
        };
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let mut trial = f.clone();
            trial.axpy(-tau, &dir_for(tau));
            if let Ok(trial) = project(&trial, prob.mass, modulus) {
                let tev = evaluate(&trial, potential, prob);
                if !opts.line_search || tev.energy <= ev.energy + ENERGY_ROUNDING * ev.scale {
                    accepted = Some((trial, tev));
                    break;
                }
            }
            tau *= 0.5;
        }
        let Some((trial, tev)) = accepted else {
            break (StopReason::LineSearchExhausted, residual);
        };
        if !tev.energy.is_finite() {
            break (StopReason::Diverged, residual);
        }
        last_decrease = (ev.energy - tev.energy) / ev.energy.abs().max(f64::MIN_POSITIVE);
        f = trial;
        ev = tev;
        iterations += 1;
    };
    Ok(ScalarResult {
        profile: f,
        energy: ev.energy,
        lambda: ev.lambda,
        residual,
        iterations,
        converged: stop_reason == StopReason::Converged,
        stop_reason,
    })
}

//! The energy functionals, their L² gradient, and the Lagrange multipliers.
//!
//! With `Kᵢ = ∫|∇fᵢ|²`, `Pᵢ = ∫Vᵢfᵢ²`, `Nᵢ = ∫|fᵢ|^p` and `C = ∫uvw`:
//!
//! ```text
//! J   = ½ Σ (Kᵢ + Pᵢ) − (1/p) Σ μᵢ Nᵢ − β C
//! J_∞ = ½ Σ Kᵢ        − (1/p) Σ μᵢ Nᵢ − β C
//! λᵢ  = (μᵢ Nᵢ + β C − Kᵢ − Pᵢ) / ‖fᵢ‖²
//! ```

use serde::{Deserialize, Serialize};

use super::{ModelParams, PotentialSet};
use crate::error::{Error, Result};
use crate::grid::{pairwise_sum_by, Field, TriField};

/// `∫ V f²`.
pub fn potential_integral(v: &Field, f: &Field) -> f64 {
    let (a, b) = (v.values(), f.values());
    f.grid().weight() * pairwise_sum_by(b.len(), &|i| a[i] * b[i] * b[i])
}

/// `∫ u v w`.
pub fn triple_product_integral(t: &TriField) -> f64 {
    let (u, v, w) = (t.u().values(), t.v().values(), t.w().values());
    t.grid().weight() * pairwise_sum_by(u.len(), &|i| u[i] * v[i] * w[i])
}

/// Lagrange multipliers `λ₁, λ₂, λ₃`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Multipliers {
    pub lambda: [f64; 3],
}

impl Multipliers {
    pub fn new(lambda: [f64; 3]) -> Self {
        Self { lambda }
    }

    pub fn is_finite(&self) -> bool {
        self.lambda.iter().all(|l| l.is_finite())
    }
}

/// Every integral entering `J`, evaluated once.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyTerms {
    pub kinetic: [f64; 3],
    pub potential: [f64; 3],
    pub nonlinear: [f64; 3],
    pub coupling: f64,
    pub masses: [f64; 3],
}

impl EnergyTerms {
    /// Panics if `pot` lives on a different grid than `t`.
    pub fn compute(t: &TriField, pot: Option<&PotentialSet>, p: f64) -> Self {
        if let Some(pot) = pot {
            assert!(
                t.u().same_grid(pot.field(0)),
                "potential and fields are on different grids"
            );
        }
        let c = t.components();
        Self {
            kinetic: [0, 1, 2].map(|i| c[i].grad_sq_integral()),
            potential: [0, 1, 2].map(|i| pot.map_or(0.0, |pot| potential_integral(pot.field(i), &c[i]))),
            nonlinear: [0, 1, 2].map(|i| c[i].lq_power(p)),
            coupling: triple_product_integral(t),
            masses: t.masses(),
        }
    }

    fn interaction(&self, prm: &ModelParams) -> f64 {
        let nl: f64 = (0..3).map(|i| prm.mu[i] * self.nonlinear[i]).sum();
        nl / prm.p + prm.beta * self.coupling
    }

    pub fn energy(&self, prm: &ModelParams) -> f64 {
        self.energy_free(prm) + 0.5 * self.potential.iter().sum::<f64>()
    }

    pub fn energy_free(&self, prm: &ModelParams) -> f64 {
        0.5 * self.kinetic.iter().sum::<f64>() - self.interaction(prm)
    }

    /// Sum of the magnitudes of every term; sets the rounding scale of `J`.
    pub fn magnitude(&self, prm: &ModelParams) -> f64 {
        let k: f64 = self.kinetic.iter().sum();
        let v: f64 = self.potential.iter().map(|x| x.abs()).sum();
        let nl: f64 = (0..3).map(|i| prm.mu[i] * self.nonlinear[i]).sum();
        0.5 * (k + v) + nl / prm.p + prm.beta * self.coupling.abs()
    }

    pub fn multipliers(&self, prm: &ModelParams) -> Result<Multipliers> {
        let mut lambda = [0.0; 3];
        for i in 0..3 {
            if self.masses[i] == 0.0 {
                return Err(Error::UndefinedMultiplier { component: i + 1 });
            }
            lambda[i] = (prm.mu[i] * self.nonlinear[i] + prm.beta * self.coupling
                - self.kinetic[i]
                - self.potential[i])
                / self.masses[i];
        }
        Ok(Multipliers { lambda })
    }
}

/// `J(u, v, w)`.
pub fn energy(t: &TriField, pot: &PotentialSet, prm: &ModelParams) -> f64 {
    EnergyTerms::compute(t, Some(pot), prm.p).energy(prm)
}

/// `J_∞(u, v, w)`: the same functional with every `Vᵢ ≡ 0`.
pub fn energy_free(t: &TriField, prm: &ModelParams) -> f64 {
    EnergyTerms::compute(t, None, prm.p).energy_free(prm)
}

/// `|f|^{p−2} f`, with the value 0 at `f = 0`.
fn power_term(f: f64, p: f64) -> f64 {
    if f == 0.0 {
        0.0
    } else {
        f.abs().powf(p - 2.0) * f
    }
}

/// Unconstrained L² gradient of `J`:
/// `Gu = −Δu + V₁u − μ₁|u|^{p−2}u − βvw`, cyclically for `v` and `w`.
pub fn el_gradient(t: &TriField, pot: &PotentialSet, prm: &ModelParams) -> TriField {
    let c = t.components();
    t.map_components(|i, f| {
        let lap = f.laplacian();
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        let (pa, pb) = (c[a].values(), c[b].values());
        let v = pot.field(i).values();
        let mut out = lap.scaled(-1.0);
        for (k, g) in out.values_mut().iter_mut().enumerate() {
            let x = f.values()[k];
            *g += v[k] * x - prm.mu[i] * power_term(x, prm.p) - prm.beta * pa[k] * pb[k];
        }
        out
    })
}

pub fn multipliers(t: &TriField, pot: &PotentialSet, prm: &ModelParams) -> Result<Multipliers> {
    EnergyTerms::compute(t, Some(pot), prm.p).multipliers(prm)
}

/// `rᵢ = ‖Gᵢ + λᵢ fᵢ‖₂` for a precomputed gradient.
pub fn residual_from_gradient(t: &TriField, gradient: &TriField, m: &Multipliers) -> [f64; 3] {
    [0, 1, 2].map(|i| {
        let mut r = gradient.component(i).clone();
        r.axpy(m.lambda[i], t.component(i));
        r.l2_norm()
    })
}

/// Euler–Lagrange residual norms with multipliers `m`.
pub fn el_residual(t: &TriField, pot: &PotentialSet, prm: &ModelParams, m: &Multipliers) -> [f64; 3] {
    residual_from_gradient(t, &el_gradient(t, pot, prm), m)
}

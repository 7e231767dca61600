//! Inequality diagnostics: the Gagliardo–Nirenberg quotient, the coercivity
//! lower bound on the constraint set, and symmetrization `t ↦ (|u|,|v|,|w|)`.

use serde::{Deserialize, Serialize};

use super::{EnergyTerms, GnConstants, ModelParams, PotentialSet};
use crate::error::{Error, Result};
use crate::grid::{Discretization, Field, TriField};

/// `γ_q = N(q − 2) / (2q)`.
pub fn gn_exponent(dimension: usize, q: f64) -> f64 {
    dimension as f64 * (q - 2.0) / (2.0 * q)
}

/// Largest admissible `q` (exclusive) for the GN inequality in dimension `N`.
pub fn gn_upper_exponent(dimension: usize) -> f64 {
    if dimension <= 2 {
        f64::INFINITY
    } else {
        2.0 * dimension as f64 / (dimension as f64 - 2.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnReport {
    pub q: f64,
    pub gamma_q: f64,
    /// `|f|_q / (|∇f|₂^{γ_q} |f|₂^{1−γ_q})`
    pub quotient: f64,
}

pub fn gn_quotient(f: &Field, q: f64) -> Result<GnReport> {
    let dim = f.grid().dimension();
    if !(q >= 2.0 && q < gn_upper_exponent(dim)) {
        return Err(Error::Config(format!(
            "q = {q} outside [2, {}) for N = {dim}",
            gn_upper_exponent(dim)
        )));
    }
    let gamma_q = gn_exponent(dim, q);
    let l2 = f.l2_norm();
    if l2 == 0.0 {
        return Err(Error::UndefinedQuotient("zero field".into()));
    }
    let grad = f.grad_sq_integral().sqrt();
    if grad == 0.0 && gamma_q > 0.0 {
        return Err(Error::UndefinedQuotient("zero gradient".into()));
    }
    let lq = f.lq_power(q).powf(1.0 / q);
    let quotient = lq / (grad.powf(gamma_q) * l2.powf(1.0 - gamma_q));
    Ok(GnReport {
        q,
        gamma_q,
        quotient,
    })
}

/// Lower bound for `J` on the constraint set, built from GN constants.
///
/// With `gᵢ = |∇fᵢ|₂`, `mᵢ = |fᵢ|₂²`, `γ = γ_p`, `γ₃ = γ_3`:
///
/// ```text
/// J ≥ ½ Σ gᵢ² − Σ (μᵢ/p) C_p^p mᵢ^{p(1−γ)/2} gᵢ^{pγ}
///            − Σ (β/3) C_3³ mᵢ^{3(1−γ₃)/2} gᵢ^{3γ₃}
///            + ½ Σ cᵢ mᵢ
/// ```
///
/// The cubic terms come from `∫uvw ≤ ⅓(∫|u|³ + ∫|v|³ + ∫|w|³)` and the last
/// sum from `∫Vᵢfᵢ² ≥ cᵢ mᵢ`. For `N = 3` the exponents reduce to
/// `3(p − 2)/2` and `3/2`.
pub fn coercivity_bound(
    t: &TriField,
    pot: &PotentialSet,
    prm: &ModelParams,
    constants: &GnConstants,
) -> Result<f64> {
    let dim = t.grid().dimension();
    let terms = EnergyTerms::compute(t, None, prm.p);
    let c_p = if prm.mu.iter().any(|&m| m != 0.0) {
        constants.get(dim, prm.p)?
    } else {
        0.0
    };
    let c_3 = if prm.beta != 0.0 { constants.get(dim, 3.0)? } else { 0.0 };
    let gamma_p = gn_exponent(dim, prm.p);
    let gamma_3 = gn_exponent(dim, 3.0);
    let floors = pot.minima();
    let mut bound = 0.0;
    for i in 0..3 {
        let g = terms.kinetic[i].sqrt();
        let m = terms.masses[i];
        let nl = prm.mu[i] / prm.p
            * c_p.powf(prm.p)
            * m.powf(prm.p * (1.0 - gamma_p) / 2.0)
            * g.powf(prm.p * gamma_p);
        let cubic = prm.beta / 3.0
            * c_3.powi(3)
            * m.powf(3.0 * (1.0 - gamma_3) / 2.0)
            * g.powf(3.0 * gamma_3);
        bound += 0.5 * terms.kinetic[i] - nl - cubic + 0.5 * floors[i] * m;
    }
    Ok(bound)
}

/// `(|u|, |v|, |w|)`. Only defined on Dirichlet difference grids, where
/// `||a| − |b|| ≤ |a − b|` makes the kinetic term non-increasing.
pub fn symmetrize(t: &TriField) -> Result<TriField> {
    if t.grid().discretization() != Discretization::FdDirichlet {
        return Err(Error::UnsupportedDiscretization {
            required: "fd_dirichlet",
        });
    }
    Ok(t.map_components(|_, f| f.abs()))
}

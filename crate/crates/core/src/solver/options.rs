use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Time discretization of the gradient flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// `t − τ G(t)`.
    Explicit,
    /// `t − τ (I − τΔ)⁻¹ G(t)`: the Laplacian is treated implicitly.
    SemiImplicit,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" => Ok(Scheme::Explicit),
            "semi_implicit" => Ok(Scheme::SemiImplicit),
            other => Err(Error::Config(format!(
                "unknown scheme `{other}` (expected explicit or semi_implicit)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    /// `e^{−|x|²/2}` in every component.
    Gaussian,
    Constant,
    /// Band-limited noise drawn from `seed`.
    Random,
    FromFile { paths: [PathBuf; 3] },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Initial step `τ`; `None` picks the scheme default (see [`SolverOptions::resolved_step`]).
    pub step_size: Option<f64>,
    pub max_iters: usize,
    /// Stop once `max rᵢ/‖fᵢ‖₂` falls below this...
    pub tol_residual: f64,
    /// ...and the last relative energy decrease is below this.
    pub tol_energy: f64,
    pub line_search: bool,
    pub max_halvings: usize,
    pub seed: u64,
    pub init: InitKind,
    pub scheme: Scheme,
    /// Replace iterates by their modulus after each step (Dirichlet grids only).
    pub symmetrize: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            step_size: None,
            max_iters: 200_000,
            tol_residual: 1e-8,
            tol_energy: 1e-12,
            line_search: true,
            max_halvings: 40,
            seed: 0,
            init: InitKind::Gaussian,
            scheme: Scheme::Explicit,
            symmetrize: true,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if let Some(tau) = self.step_size {
            if !(tau.is_finite() && tau > 0.0) {
                return Err(Error::Config(format!("step_size must be positive (got {tau})")));
            }
        }
        if self.max_iters < 1 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        for (name, tol) in [("tol_residual", self.tol_residual), ("tol_energy", self.tol_energy)] {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::Config(format!("{name} must be positive (got {tol})")));
            }
        }
        Ok(())
    }

    /// `min(0.1, h²/2)` for the explicit scheme, `0.1` for the semi-implicit one.
    pub fn resolved_step(&self, grid: &Grid) -> f64 {
        self.step_size.unwrap_or_else(|| match self.scheme {
            Scheme::Explicit => 0.1f64.min(0.5 * grid.spacing().powi(2)),
            Scheme::SemiImplicit => 0.1,
        })
    }
}

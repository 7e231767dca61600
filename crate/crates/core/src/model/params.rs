use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of the three-component system.
///
/// `mu = 0` is admitted as the linear test mode used by the oscillator
/// oracles; `beta = 0` decouples the components.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mu: [f64; 3],
    pub beta: f64,
    pub p: f64,
    pub masses: [f64; 3],
    pub dimension: usize,
}

/// Upper end `2 + 4/N` of the mass-subcritical range, as a reduced fraction.
pub fn critical_exponent_label(dimension: usize) -> String {
    let (num, den) = (2 * dimension + 4, dimension);
    let g = gcd(num, den);
    if den / g == 1 {
        format!("{}", num / g)
    } else {
        format!("{}/{}", num / g, den / g)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ModelParams {
    pub fn new(mu: [f64; 3], beta: f64, p: f64, masses: [f64; 3], dimension: usize) -> Self {
        Self {
            mu,
            beta,
            p,
            masses,
            dimension,
        }
    }

    /// Linear oscillator test mode: `mu = beta = 0`.
    pub fn linear(masses: [f64; 3], dimension: usize) -> Self {
        Self::new([0.0; 3], 0.0, 2.5, masses, dimension)
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_masses(mut self, masses: [f64; 3]) -> Self {
        self.masses = masses;
        self
    }

    pub fn critical_exponent(&self) -> f64 {
        2.0 + 4.0 / self.dimension as f64
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dimension) {
            return Err(Error::Config(format!(
                "dimension must be 1, 2 or 3 (got {})",
                self.dimension
            )));
        }
        for (i, &mu) in self.mu.iter().enumerate() {
            if !(mu.is_finite() && mu >= 0.0) {
                return Err(Error::Config(format!(
                    "mu{} must be finite and nonnegative (got {mu})",
                    i + 1
                )));
            }
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(Error::Config(format!(
                "beta must be finite and >= 0 (got {}); the existence result needs beta > 0",
                self.beta
            )));
        }
        let pc = self.critical_exponent();
        if !(self.p > 2.0 && self.p < pc) {
            return Err(Error::Config(format!(
                "p = {} is outside the admissible range 2 < p < {} for N = {}",
                self.p,
                critical_exponent_label(self.dimension),
                self.dimension
            )));
        }
        for (name, &m) in ["a", "b", "c"].iter().zip(&self.masses) {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::Config(format!(
                    "mass {name} must be positive and finite (got {m})"
                )));
            }
        }
        Ok(())
    }
}

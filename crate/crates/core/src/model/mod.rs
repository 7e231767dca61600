//! Physical parameters, trapping potentials, the energy functionals and the
//! inequality diagnostics built on them.

mod constants;
mod diagnostics;
mod energy;
mod params;
mod potential;

pub use constants::{GnConstants, BUNDLED_TABLE};
pub use diagnostics::{
    coercivity_bound, gn_exponent, gn_quotient, gn_upper_exponent, symmetrize, GnReport,
};
pub use energy::{
    el_gradient, el_residual, energy, energy_free, multipliers, potential_integral,
    residual_from_gradient, triple_product_integral, EnergyTerms, Multipliers,
};
pub use params::{critical_exponent_label, ModelParams};
pub use potential::{sample_potential, PotentialKind, PotentialSet};

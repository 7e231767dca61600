//! Compares the trapped minimum with the trap-free one: the difference
//! `m − [m_∞ + ½∫ΣVᵢfᵢ²]` is reported for a nonnegative trap.
//!
//! ```bash
//! cargo run --release -p triwave --example free_vs_trapped
//! ```

use triwave::analysis::free_vs_trapped;
use triwave::grid::{Discretization, GridSpec};
use triwave::model::{sample_potential, ModelParams, PotentialKind, PotentialSet};
use triwave::solver::{initial_state, minimize, SolverOptions};

fn main() -> triwave::Result<()> {
    let grid = GridSpec::new(1, 16.0, 512, Discretization::SpectralPeriodic).build()?;
    let prm = ModelParams::new([1.0; 3], 1.0, 3.0, [1.0; 3], 1);
    let opts = SolverOptions::default();
    let init = initial_state(&opts.init, &grid, opts.seed)?;

    let free_pot = PotentialSet::zero(grid.clone());
    let free = minimize(&init, &free_pot, &prm, &opts)?;
    println!("free:    m_inf = {:.12}  ({:?})", free.energy, free.stop_reason);

    for scale in [0.01, 0.1, 1.0] {
        let pot = sample_potential(&PotentialKind::Anisotropic { weights: [scale, 0.0, 0.0] }, &grid)?;
        let trapped = minimize(&init, &pot, &prm, &opts)?;
        let gap = free_vs_trapped(&trapped, &free, &pot, &prm)?;
        println!(
            "V = {scale}x^2: m = {:.12}, m - (m_inf + trap term) = {gap:.3e}",
            trapped.energy
        );
    }
    Ok(())
}

//! Coupled ground state with trap minima below zero, followed by the full
//! post-solve verification (masses, positivity, residuals, multipliers).
//!
//! ```bash
//! cargo run --release -p triwave --example ground_state
//! ```

use triwave::grid::{Discretization, GridSpec};
use triwave::model::{sample_potential, ModelParams, PotentialKind};
use triwave::solver::{initial_state, minimize, verify_theorem, SolverOptions, VerifyTolerances};

fn main() -> triwave::Result<()> {
    let grid = GridSpec::new(2, 8.0, 64, Discretization::FdDirichlet).build()?;
    let pot = sample_potential(
        &PotentialKind::ShiftedHarmonic {
            offsets: [0.0, -1.0, -2.0],
        },
        &grid,
    )?;
    let prm = ModelParams::new([1.0; 3], 1.0, 2.5, [1.0, 2.0, 1.5], 2);
    let opts = SolverOptions::default();
    let init = initial_state(&opts.init, &grid, opts.seed)?;
    let r = minimize(&init, &pot, &prm, &opts)?;
    println!("J = {:.12}  ({:?}, {} iterations)", r.energy, r.stop_reason, r.iterations);
    println!("lambda = {:?}", r.multipliers.lambda);

    let report = verify_theorem(&r, &pot, &prm, &VerifyTolerances::default())?;
    for c in &report.checks {
        println!("  {:<20} {}  {}", c.name, if c.passed { "ok  " } else { "FAIL" }, c.detail);
    }
    println!("verified: {}", report.passed);
    Ok(())
}

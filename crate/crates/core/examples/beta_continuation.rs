//! `m(β)` along increasing coupling, each solve warm-started from the last.
//!
//! ```bash
//! cargo run --release -p triwave --example beta_continuation
//! ```

use triwave::grid::{Discretization, GridSpec};
use triwave::model::{sample_potential, ModelParams, PotentialKind};
use triwave::solver::{continuation_in_beta, SolverOptions};

fn main() -> triwave::Result<()> {
    let grid = GridSpec::new(2, 8.0, 48, Discretization::FdDirichlet).build()?;
    let pot = sample_potential(&PotentialKind::Harmonic, &grid)?;
    let prm = ModelParams::new([1.0; 3], 0.0, 2.5, [1.0; 3], 2);
    let betas = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0];
    let results = continuation_in_beta(&pot, &prm, &betas, &SolverOptions::default())?;
    println!("{:>6} {:>16} {:>12} {:>12} {:>12} {:>6}", "beta", "m", "lambda1", "lambda2", "lambda3", "iters");
    for (beta, r) in betas.iter().zip(&results) {
        let l = r.multipliers.lambda;
        println!(
            "{beta:>6} {:>16.12} {:>12.6} {:>12.6} {:>12.6} {:>6}",
            r.energy, l[0], l[1], l[2], r.iterations
        );
    }
    Ok(())
}

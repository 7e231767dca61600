//! Several random positive starts; the spread of the resulting energies and
//! profiles is reported rather than assuming a unique minimizer.
//!
//! ```bash
//! cargo run --release -p triwave --example multi_start
//! ```

use triwave::analysis::multi_start;
use triwave::grid::{Discretization, GridSpec};
use triwave::model::{sample_potential, ModelParams, PotentialKind};
use triwave::solver::SolverOptions;

fn main() -> triwave::Result<()> {
    let grid = GridSpec::new(2, 8.0, 48, Discretization::FdDirichlet).build()?;
    let pot = sample_potential(&PotentialKind::ShiftedHarmonic { offsets: [0.0, -1.0, -2.0] }, &grid)?;
    let prm = ModelParams::new([1.0; 3], 2.0, 2.5, [1.0; 3], 2);
    let rep = multi_start(&pot, &prm, &SolverOptions::default(), &[1, 2, 3, 4, 5])?;
    for (s, e) in rep.seeds.iter().zip(&rep.energies) {
        println!("seed {s}: J = {e:.12}");
    }
    println!(
        "energy spread {:.3e}, profile spread {:.3e}, all converged: {}",
        rep.energy_spread, rep.profile_spread, rep.all_converged
    );
    Ok(())
}

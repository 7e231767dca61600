//! With `β = 0` the system splits into three scalar problems; the coupled
//! solver and the single-field solver should agree.
//!
//! ```bash
//! cargo run --release -p triwave --example decoupled_scalar
//! ```

use triwave::analysis::decoupling_check;
use triwave::grid::{Discretization, Field, GridSpec};
use triwave::model::{sample_potential, ModelParams, PotentialKind};
use triwave::solver::scalar::{minimize_scalar, ScalarProblem};
use triwave::solver::SolverOptions;

fn main() -> triwave::Result<()> {
    let grid = GridSpec::new(1, 8.0, 256, Discretization::SpectralPeriodic).build()?;
    let pot = sample_potential(&PotentialKind::Harmonic, &grid)?;
    let opts = SolverOptions::default();

    let prm = ModelParams::new([1.0, 2.0, 0.5], 0.0, 3.0, [1.0, 0.5, 2.0], 1);
    let rep = decoupling_check(&pot, &prm, &opts)?;
    println!("coupled J = {:.12}, sum of scalar J = {:.12}", rep.coupled_energy, rep.scalar_energy);
    println!("profile gaps {:?}", rep.profile_gaps);

    // the scalar solver on its own: ground-state energy versus mass
    let init = Field::from_fn(grid.clone(), |x| (-x[0] * x[0] / 2.0).exp());
    for mass in [0.5, 1.0, 2.0, 4.0] {
        let r = minimize_scalar(&init, pot.field(0), &ScalarProblem { mu: 1.0, p: 3.0, mass }, &opts)?;
        println!("mass {mass:>4}: E = {:>14.10}, lambda = {:>12.8}, {} iterations", r.energy, r.lambda, r.iterations);
    }
    Ok(())
}

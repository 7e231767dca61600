//! Observing a solve: a custom observer prints progress while a
//! [`Checkpointer`] writes `history.csv` and periodic field snapshots.
//!
//! ```bash
//! cargo run --release -p triwave --example checkpointing -- /tmp/triwave-ckpt
//! ```

use triwave::grid::{Discretization, GridSpec, TriField};
use triwave::model::{sample_potential, ModelParams, PotentialKind};
use triwave::solver::{initial_state, minimize_observed, Checkpointer, IterationRecord, Observer, SolverOptions};

struct Progress<'a> {
    every: usize,
    inner: &'a mut Checkpointer,
}

impl Observer for Progress<'_> {
    fn observe(&mut self, rec: &IterationRecord, state: &TriField) -> triwave::Result<()> {
        if rec.iteration.is_multiple_of(self.every) {
            println!(
                "iter {:>6}  J = {:.12}  max r = {:.3e}  tau = {:.3e}",
                rec.iteration,
                rec.energy,
                rec.residuals.iter().copied().fold(0.0, f64::max),
                rec.step
            );
        }
        self.inner.observe(rec, state)
    }
}

fn main() -> triwave::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "triwave-ckpt".into());
    let grid = GridSpec::new(2, 8.0, 48, Discretization::FdDirichlet).build()?;
    let pot = sample_potential(&PotentialKind::Harmonic, &grid)?;
    let prm = ModelParams::new([1.0; 3], 1.0, 2.5, [1.0; 3], 2);
    let opts = SolverOptions::default();
    let init = initial_state(&opts.init, &grid, opts.seed)?;

    let mut ckpt = Checkpointer::new(&dir, 500, true)?;
    let r = minimize_observed(&init, &pot, &prm, &opts, &mut Progress { every: 250, inner: &mut ckpt })?;
    ckpt.write_fields(&r.minimizer)?;
    ckpt.finish()?;
    println!("final J = {:.12} after {} iterations; output in {dir}", r.energy, r.iterations);
    Ok(())
}

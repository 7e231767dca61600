//! Randomized checks of the functional inequalities on one nonlinear setup:
//! energy decomposition, Gagliardo–Nirenberg, coercivity lower bound and
//! symmetrization.
//!
//! ```bash
//! cargo run --release -p triwave --example inequality_sweeps -- 200
//! ```

use triwave::analysis::{inequality_sweep, SweepKind, SweepRequest};
use triwave::grid::{Discretization, GridSpec};
use triwave::model::{sample_potential, GnConstants, ModelParams, PotentialKind};

fn main() -> triwave::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let constants = GnConstants::bundled();
    let prm = ModelParams::new([1.0; 3], 1.0, 2.5, [1.0; 3], 3);
    for kind in SweepKind::ALL {
        // the discrete |∇|u|| ≤ |∇u| bound needs the difference stencil
        let disc = match kind {
            SweepKind::Gn => Discretization::SpectralPeriodic,
            _ => Discretization::FdDirichlet,
        };
        let grid = GridSpec::new(3, 6.0, 16, disc).build()?;
        let pot = sample_potential(&PotentialKind::ShiftedHarmonic { offsets: [0.0, -1.0, -2.0] }, &grid)?;
        let rep = inequality_sweep(&SweepRequest::new(kind, trials, 0), &pot, &prm, &constants)?;
        print!(
            "{:<22} trials={} violations={} worst_margin={:.3e}",
            kind.name(),
            rep.trials,
            rep.violations,
            rep.worst_margin
        );
        if let Some(e) = rep.min_energy {
            print!(" min_energy={e:.6}");
        }
        println!();
    }
    Ok(())
}

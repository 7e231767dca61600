//! Linear oscillator benchmark: with `μ = β = 0` and `V = |x|²` the minimizer
//! is Gaussian, `m = (N/2)(a + b + c)` and every `λᵢ = −N`.
//!
//! ```bash
//! cargo run --release -p triwave --example harmonic_oracle
//! ```

use triwave::analysis::{oracle_harmonic, run_oracle};
use triwave::grid::{Discretization, GridSpec};
use triwave::model::ModelParams;
use triwave::solver::{InitKind, Scheme, SolverOptions};

fn main() -> triwave::Result<()> {
    let opts = SolverOptions {
        init: InitKind::Constant,
        scheme: Scheme::SemiImplicit,
        ..SolverOptions::default()
    };
    let cases = [
        (ModelParams::linear([1.0; 3], 1), GridSpec::new(1, 8.0, 256, Discretization::SpectralPeriodic)),
        (ModelParams::linear([2.0, 1.0, 0.5], 1), GridSpec::new(1, 8.0, 256, Discretization::FdDirichlet)),
        (ModelParams::linear([1.0; 3], 2), GridSpec::new(2, 8.0, 64, Discretization::SpectralPeriodic)),
        (ModelParams::linear([1.0; 3], 3), GridSpec::new(3, 8.0, 32, Discretization::SpectralPeriodic)),
    ];
    println!("{:<34} {:>14} {:>14} {:>10} {:>10} {:>6}", "case", "expected", "computed", "error", "tol", "iters");
    for (prm, spec) in cases {
        let case = oracle_harmonic(&prm, &spec)?;
        let (out, _) = run_oracle(&case, &opts)?;
        println!(
            "{:<34} {:>14.10} {:>14.10} {:>10.2e} {:>10.1e} {:>6} {}",
            case.name,
            case.expected_energy,
            out.energy,
            out.energy_error,
            case.tolerance,
            out.iterations,
            if out.passed { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}

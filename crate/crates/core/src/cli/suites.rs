//! Built-in diagnostic suites run by `triwave verify`.

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{
    inequality_sweep, oracle_harmonic, run_oracle, InequalityReport, OracleOutcome, SweepKind, SweepRequest,
};
use crate::error::{Error, Result};
use crate::grid::{Discretization, GridSpec};
use crate::model::{sample_potential, GnConstants, ModelParams, PotentialKind};
use crate::solver::{InitKind, Scheme, SolverOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Gn,
    Coercivity,
    Symmetrize,
    Decomposition,
    Oracles,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Gn => "gn",
            Suite::Coercivity => "coercivity",
            Suite::Symmetrize => "symmetrize",
            Suite::Decomposition => "decomposition",
            Suite::Oracles => "oracles",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Decomposition,
                Suite::Gn,
                Suite::Coercivity,
                Suite::Symmetrize,
                Suite::Oracles,
            ],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Suite::All,
            Suite::Gn,
            Suite::Coercivity,
            Suite::Symmetrize,
            Suite::Decomposition,
            Suite::Oracles,
        ]
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| {
            Error::Config(format!(
                "unknown suite `{s}` (expected all, gn, coercivity, symmetrize, decomposition or oracles)"
            ))
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Overrides the per-suite trial count.
    pub trials: Option<usize>,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub sweeps: Vec<InequalityReport>,
    pub oracles: Vec<OracleOutcome>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.sweeps.iter().all(InequalityReport::passed) && self.oracles.iter().all(|o| o.passed)
    }

    pub fn verdict(&self) -> String {
        let mut parts = Vec::new();
        for r in &self.sweeps {
            let mut s = format!(
                "trials={} violations={} worst_margin={:.3e}",
                r.trials, r.violations, r.worst_margin
            );
            if let Some(e) = r.min_energy {
                s.push_str(&format!(" min_energy={e:.6e}"));
            }
            parts.push(s);
        }
        for o in &self.oracles {
            parts.push(format!(
                "{} error={:.3e} tol={:.1e}{}",
                o.case.name,
                o.energy_error,
                o.case.tolerance,
                if o.passed { "" } else { " FAILED" }
            ));
        }
        format!(
            "{}: {}  {}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            parts.join("; ")
        )
    }
}

/// The randomized sweeps share one nonlinear setup on a 3-D grid with
/// offsets `(0, −1, −2)`, so `cᵢ < 0` is exercised.
fn sweep_setup(kind: SweepKind) -> (GridSpec, PotentialKind, ModelParams, usize) {
    let disc = match kind {
        SweepKind::Gn => Discretization::SpectralPeriodic,
        _ => Discretization::FdDirichlet,
    };
    let trials = match kind {
        SweepKind::EnergyDecomposition => 100,
        _ => 1000,
    };
    (
        GridSpec::new(3, 6.0, 16, disc),
        PotentialKind::ShiftedHarmonic {
            offsets: [0.0, -1.0, -2.0],
        },
        ModelParams::new([1.0; 3], 1.0, 2.5, [1.0; 3], 3),
        trials,
    )
}

pub fn oracle_cases() -> Vec<(ModelParams, GridSpec)> {
    vec![
        (
            ModelParams::linear([1.0; 3], 1),
            GridSpec::new(1, 8.0, 256, Discretization::SpectralPeriodic),
        ),
        (
            ModelParams::linear([2.0, 1.0, 1.0], 1),
            GridSpec::new(1, 8.0, 256, Discretization::FdDirichlet),
        ),
        (
            ModelParams::linear([1.0; 3], 3),
            GridSpec::new(3, 8.0, 32, Discretization::SpectralPeriodic),
        ),
    ]
}

pub fn oracle_options() -> SolverOptions {
    SolverOptions {
        init: InitKind::Constant,
        scheme: Scheme::SemiImplicit,
        ..SolverOptions::default()
    }
}

pub fn run_suite(suite: Suite, constants: &GnConstants, opts: &SuiteOptions) -> Result<SuiteOutcome> {
    let kind = match suite {
        Suite::All => return Err(Error::Misuse("expand `all` before running".into())),
        Suite::Oracles => {
            let oracles = oracle_cases()
                .iter()
                .map(|(prm, spec)| Ok(run_oracle(&oracle_harmonic(prm, spec)?, &oracle_options())?.0))
                .collect::<Result<_>>()?;
            return Ok(SuiteOutcome {
                suite: suite.name().into(),
                sweeps: Vec::new(),
                oracles,
            });
        }
        Suite::Gn => SweepKind::Gn,
        Suite::Coercivity => SweepKind::Coercivity,
        Suite::Symmetrize => SweepKind::Symmetrize,
        Suite::Decomposition => SweepKind::EnergyDecomposition,
    };
    let (spec, pkind, prm, trials) = sweep_setup(kind);
    let grid = spec.build()?;
    let pot = sample_potential(&pkind, &grid)?;
    let req = SweepRequest::new(kind, opts.trials.unwrap_or(trials), opts.seed);
    let report = inequality_sweep(&req, &pot, &prm, constants)?;
    Ok(SuiteOutcome {
        suite: suite.name().into(),
        sweeps: vec![report],
        oracles: Vec::new(),
    })
}

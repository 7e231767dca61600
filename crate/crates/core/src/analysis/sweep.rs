//! Randomized checks of the structural inequalities over band-limited fields.

use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Field, Grid, GridSpec, TriField};
use crate::model::{
    coercivity_bound, energy, energy_free, gn_quotient, gn_upper_exponent, symmetrize,
    EnergyTerms, GnConstants, ModelParams, PotentialSet,
};
use crate::solver::renormalize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Gn,
    Coercivity,
    Symmetrize,
    EnergyDecomposition,
}

impl SweepKind {
    pub const ALL: [SweepKind; 4] = [
        SweepKind::Gn,
        SweepKind::Coercivity,
        SweepKind::Symmetrize,
        SweepKind::EnergyDecomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Gn => "gn",
            SweepKind::Coercivity => "coercivity",
            SweepKind::Symmetrize => "symmetrize",
            SweepKind::EnergyDecomposition => "energy_decomposition",
        }
    }

    /// Allowed excess before a trial counts as a violation.
    pub fn tolerance(self) -> f64 {
        match self {
            SweepKind::EnergyDecomposition => 1e-12,
            _ => 0.0,
        }
    }
}

impl FromStr for SweepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepKind::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "decomposition" && *k == SweepKind::EnergyDecomposition))
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown inequality `{s}` (expected gn, coercivity, symmetrize or energy_decomposition)"
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRequest {
    pub kind: SweepKind,
    pub trials: usize,
    pub seed: u64,
    /// Exponents tried by the GN sweep; those outside the admissible range
    /// for the grid dimension are skipped.
    pub gn_exponents: Vec<f64>,
}

impl SweepRequest {
    pub fn new(kind: SweepKind, trials: usize, seed: u64) -> Self {
        Self {
            kind,
            trials,
            seed,
            gn_exponents: vec![2.5, 3.0, 4.0],
        }
    }
}

/// One document per sweep.
///
/// `worst_margin` is the largest excess observed: for inequalities
/// `lhs − rhs` relative to the scale of the terms (nonpositive when every
/// trial satisfies it), for the decomposition identity the relative defect.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub trials: usize,
    pub violations: usize,
    pub worst_margin: f64,
    /// Smallest `J` seen across the corpus (coercivity sweep only).
    pub min_energy: Option<f64>,
    pub seed: u64,
    pub grid: GridSpec,
    pub params: ModelParams,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Band-limited noise in each component, scaled to the target masses.
pub fn random_triple(grid: &Arc<Grid>, masses: [f64; 3], seed: u64) -> Result<TriField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = [0, 1, 2].map(|_| Field::new(grid.clone(), grid.band_limited_noise(&mut rng)));
    let [u, v, w] = comps;
    renormalize(&TriField::new(u?, v?, w?)?, masses)
}

struct Trial {
    excess: f64,
    energy: Option<f64>,
}

fn run_trial(
    req: &SweepRequest,
    pot: &PotentialSet,
    prm: &ModelParams,
    constants: &GnConstants,
    index: usize,
) -> Result<Trial> {
    let grid = pot.grid();
    let t = random_triple(grid, prm.masses, req.seed.wrapping_add(index as u64))?;
    match req.kind {
        SweepKind::Gn => {
            let dim = grid.dimension();
            let mut excess = f64::NEG_INFINITY;
            for &q in req.gn_exponents.iter().filter(|&&q| q < gn_upper_exponent(dim)) {
                let c = constants.get(dim, q)?;
                for f in t.components() {
                    excess = excess.max(gn_quotient(f, q)?.quotient / c - 1.0);
                }
            }
            Ok(Trial { excess, energy: None })
        }
        SweepKind::Coercivity => {
            let terms = EnergyTerms::compute(&t, Some(pot), prm.p);
            let j = terms.energy(prm);
            let bound = coercivity_bound(&t, pot, prm, constants)?;
            Ok(Trial {
                excess: (bound - j) / terms.magnitude(prm).max(f64::MIN_POSITIVE),
                energy: Some(j),
            })
        }
        SweepKind::Symmetrize => {
            let terms = EnergyTerms::compute(&t, Some(pot), prm.p);
            let before = terms.energy(prm);
            let after = energy(&symmetrize(&t)?, pot, prm);
            Ok(Trial {
                excess: (after - before) / terms.magnitude(prm).max(f64::MIN_POSITIVE),
                energy: None,
            })
        }
        SweepKind::EnergyDecomposition => {
            let lhs = energy(&t, pot, prm) - energy_free(&t, prm);
            let terms = EnergyTerms::compute(&t, Some(pot), prm.p);
            let rhs = 0.5 * terms.potential.iter().sum::<f64>();
            let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
            Ok(Trial {
                excess: (lhs - rhs).abs() / scale,
                energy: None,
            })
        }
    }
}

/// Trial `i` draws its fields from seed `seed + i`, so reports do not depend
/// on the thread count.
pub fn inequality_sweep(
    req: &SweepRequest,
    pot: &PotentialSet,
    prm: &ModelParams,
    constants: &GnConstants,
) -> Result<InequalityReport> {
    if req.trials == 0 {
        return Err(Error::Config("a sweep needs at least one trial".into()));
    }
    prm.validate()?;
    if prm.dimension != pot.grid().dimension() {
        return Err(Error::Config("parameter and grid dimensions differ".into()));
    }
    let trials: Vec<Trial> = (0..req.trials)
        .into_par_iter()
        .map(|i| run_trial(req, pot, prm, constants, i))
        .collect::<Result<_>>()?;
    let tol = req.kind.tolerance();
    let violations = trials.iter().filter(|t| !(t.excess <= tol)).count();
    let worst_margin = trials.iter().map(|t| t.excess).fold(f64::NEG_INFINITY, f64::max);
    let min_energy = trials
        .iter()
        .filter_map(|t| t.energy)
        .reduce(f64::min);
    Ok(InequalityReport {
        name: req.kind.name().to_string(),
        trials: req.trials,
        violations,
        worst_margin,
        min_energy,
        seed: req.seed,
        grid: *pot.grid().spec(),
        params: *prm,
    })
}

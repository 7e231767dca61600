use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{io, Field, Grid};

/// How to generate the three trapping potentials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    /// `V ≡ 0` (the free problem).
    Zero,
    /// `V(x) = |x|²` for every component.
    Harmonic,
    /// `Vᵢ(x) = |x|² + offsetᵢ`; offsets may be negative.
    ShiftedHarmonic { offsets: [f64; 3] },
    /// `V(x) = Σ_d weight_d x_d²` for every component.
    Anisotropic { weights: [f64; 3] },
    /// One binary field file per component.
    FromFile { paths: [PathBuf; 3] },
}

/// Sampled `V₁, V₂, V₃` with their minima and coercivity flags.
#[derive(Clone, Debug)]
pub struct PotentialSet {
    fields: [Field; 3],
    minima: [f64; 3],
    coercive: [bool; 3],
}

impl PotentialSet {
    /// Wrap caller-supplied potentials. `coercive` is the caller's claim about
    /// the continuum formula; it cannot be inferred from samples.
    pub fn from_fields(fields: [Field; 3], coercive: [bool; 3]) -> Result<Self> {
        if !(fields[0].same_grid(&fields[1]) && fields[0].same_grid(&fields[2])) {
            return Err(Error::GridMismatch);
        }
        if !fields.iter().all(Field::is_finite) {
            return Err(Error::Input("potential has non-finite samples".into()));
        }
        let minima = [0, 1, 2].map(|i| fields[i].min_value());
        Ok(Self {
            fields,
            minima,
            coercive,
        })
    }

    pub fn zero(grid: Arc<Grid>) -> Self {
        let z = Field::zeros(grid);
        Self {
            fields: [z.clone(), z.clone(), z],
            minima: [0.0; 3],
            coercive: [false; 3],
        }
    }

    pub fn fields(&self) -> &[Field; 3] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &Field {
        &self.fields[i]
    }

    /// Sampled minima `c₁, c₂, c₃`.
    pub fn minima(&self) -> [f64; 3] {
        self.minima
    }

    pub fn coercive(&self) -> [bool; 3] {
        self.coercive
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.fields[0].grid()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.minima.iter().all(|&c| c >= 0.0)
    }
}

fn check_finite(label: &str, values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Input(format!("{label} must be finite")))
    }
}

pub fn sample_potential(kind: &PotentialKind, grid: &Arc<Grid>) -> Result<PotentialSet> {
    let harmonic = |offset: f64| {
        Field::from_fn(grid.clone(), move |x| {
            x.iter().map(|c| c * c).sum::<f64>() + offset
        })
    };
    match kind {
        PotentialKind::Zero => Ok(PotentialSet::zero(grid.clone())),
        PotentialKind::Harmonic => PotentialSet::from_fields([0.0; 3].map(harmonic), [true; 3]),
        PotentialKind::ShiftedHarmonic { offsets } => {
            check_finite("harmonic offsets", offsets)?;
            PotentialSet::from_fields(offsets.map(harmonic), [true; 3])
        }
        PotentialKind::Anisotropic { weights } => {
            check_finite("anisotropic weights", weights)?;
            let dim = grid.dimension();
            let w = *weights;
            let v = Field::from_fn(grid.clone(), move |x| {
                x.iter().zip(&w).map(|(c, wd)| wd * c * c).sum()
            });
            let coercive = w[..dim].iter().all(|&wd| wd > 0.0);
            PotentialSet::from_fields([v.clone(), v.clone(), v], [coercive; 3])
        }
        PotentialKind::FromFile { paths } => {
            let mut fields = Vec::with_capacity(3);
            for path in paths {
                fields.push(io::read_field_on(path, grid)?);
            }
            let fields: [Field; 3] = fields.try_into().expect("three paths");
            PotentialSet::from_fields(fields, [false; 3])
        }
    }
}

#![allow(dead_code)]

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triwave::grid::{Discretization, Field, Grid, GridSpec, TriField};

pub const DISCS: [Discretization; 2] = [Discretization::SpectralPeriodic, Discretization::FdDirichlet];

pub fn grid(dim: usize, l: f64, n: usize, d: Discretization) -> Arc<Grid> {
    GridSpec::new(dim, l, n, d).build().unwrap()
}

pub fn noise(g: &Arc<Grid>, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Field::new(g.clone(), g.band_limited_noise(&mut rng)).unwrap()
}

pub fn noise_triple(g: &Arc<Grid>, seed: u64) -> TriField {
    TriField::new(noise(g, seed), noise(g, seed + 1000), noise(g, seed + 2000)).unwrap()
}

pub fn gaussian(g: &Arc<Grid>) -> Field {
    Field::from_fn(g.clone(), |x| (-x.iter().map(|c| c * c).sum::<f64>() / 2.0).exp())
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

//! Uniform lattices on the truncated box `[-L, L]^N`.
//!
//! Two discretizations share one node layout (`x_j = -L + j h`, `h = 2L/n`,
//! row-major over axes):
//!
//! * [`Discretization::SpectralPeriodic`]: Fourier pseudo-spectral derivatives
//!   on the periodic box.
//! * [`Discretization::FdDirichlet`]: second-order central differences with
//!   zero ghost values just outside the index range.
//!
//! The origin is always a node (index `n/2` on every axis), so potentials with
//! their minimum at `0` have that minimum sampled exactly.

mod field;
pub mod io;
mod sum;
mod transform;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use field::{Field, TriField};
pub use sum::{pairwise_sum, pairwise_sum_by};
use transform::{PeriodicTransform, SineTransform};

/// Largest supported node count; keeps accidental `n^N` blowups out.
const MAX_NODES: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Discretization {
    SpectralPeriodic,
    FdDirichlet,
}

impl Discretization {
    pub fn tag(self) -> u32 {
        match self {
            Discretization::SpectralPeriodic => 0,
            Discretization::FdDirichlet => 1,
        }
    }

    pub fn from_tag(tag: u32) -> Option<Self> {
        match tag {
            0 => Some(Discretization::SpectralPeriodic),
            1 => Some(Discretization::FdDirichlet),
            _ => None,
        }
    }
}

impl fmt::Display for Discretization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Discretization::SpectralPeriodic => "spectral_periodic",
            Discretization::FdDirichlet => "fd_dirichlet",
        })
    }
}

impl std::str::FromStr for Discretization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral_periodic" | "spectral" => Ok(Discretization::SpectralPeriodic),
            "fd_dirichlet" | "fd" => Ok(Discretization::FdDirichlet),
            other => Err(Error::Config(format!(
                "unknown discretization `{other}` (expected spectral_periodic or fd_dirichlet)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dimension: usize,
    pub half_width: f64,
    pub points_per_axis: usize,
    pub discretization: Discretization,
}

impl GridSpec {
    pub fn new(
        dimension: usize,
        half_width: f64,
        points_per_axis: usize,
        discretization: Discretization,
    ) -> Self {
        Self {
            dimension,
            half_width,
            points_per_axis,
            discretization,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dimension) {
            return Err(Error::Config(format!(
                "dimension must be 1, 2 or 3 (got {})",
                self.dimension
            )));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::Config(format!(
                "half_width must be positive and finite (got {})",
                self.half_width
            )));
        }
        let n = self.points_per_axis;
        if n < 8 {
            return Err(Error::Config(format!(
                "points_per_axis must be at least 8 (got {n})"
            )));
        }
        if self.discretization == Discretization::SpectralPeriodic && !n.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "spectral_periodic grids need an even points_per_axis (got {n})"
            )));
        }
        match n.checked_pow(self.dimension as u32) {
            Some(total) if total <= MAX_NODES => Ok(()),
            _ => Err(Error::Config(format!(
                "{n}^{} nodes exceeds the supported maximum of {MAX_NODES}",
                self.dimension
            ))),
        }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points_per_axis as f64
    }

    pub fn node_count(&self) -> usize {
        self.points_per_axis.pow(self.dimension as u32)
    }

    pub fn build(&self) -> Result<Arc<Grid>> {
        Grid::build(*self).map(Arc::new)
    }
}

#[derive(Clone)]
enum Transform {
    Periodic(PeriodicTransform),
    Sine(SineTransform),
}

/// A built lattice: coordinates, quadrature weight, the symbol of `-Δ` in the
/// diagonalizing basis, and the transform plans.
#[derive(Clone)]
pub struct Grid {
    spec: GridSpec,
    spacing: f64,
    weight: f64,
    axis: Vec<f64>,
    // symbol of -Δ per mode, row-major like the nodes
    neg_lap_symbol: Vec<f64>,
    transform: Transform,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("spec", &self.spec).finish()
    }
}

impl Grid {
    pub fn build(spec: GridSpec) -> Result<Self> {
        spec.validate()?;
        let n = spec.points_per_axis;
        let dim = spec.dimension;
        let h = spec.spacing();
        let axis: Vec<f64> = (0..n).map(|j| -spec.half_width + j as f64 * h).collect();

        let axis_symbol: Vec<f64> = match spec.discretization {
            Discretization::SpectralPeriodic => {
                let k0 = std::f64::consts::PI / spec.half_width;
                (0..n)
                    .map(|j| {
                        let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
                        (k0 * m).powi(2)
                    })
                    .collect()
            }
            Discretization::FdDirichlet => (0..n)
                .map(|k| {
                    let s = (std::f64::consts::PI * (k + 1) as f64 / (2.0 * (n + 1) as f64)).sin();
                    4.0 * s * s / (h * h)
                })
                .collect(),
        };
        let total = spec.node_count();
        let neg_lap_symbol = (0..total)
            .map(|idx| {
                let mut rem = idx;
                let mut acc = 0.0;
                for _ in 0..dim {
                    acc += axis_symbol[rem % n];
                    rem /= n;
                }
                acc
            })
            .collect();
        let transform = match spec.discretization {
            Discretization::SpectralPeriodic => Transform::Periodic(PeriodicTransform::new(n, dim)),
            Discretization::FdDirichlet => Transform::Sine(SineTransform::new(n, dim)),
        };
        Ok(Self {
            spec,
            spacing: h,
            weight: h.powi(dim as i32),
            axis,
            neg_lap_symbol,
            transform,
        })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.spec.dimension
    }

    pub fn points_per_axis(&self) -> usize {
        self.spec.points_per_axis
    }

    pub fn discretization(&self) -> Discretization {
        self.spec.discretization
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Quadrature weight `h^N` carried by every node.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.neg_lap_symbol.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neg_lap_symbol.is_empty()
    }

    /// 1-D node coordinates shared by all axes.
    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    /// Symbol of `-Δ` per mode (`|k|²` or the FD sine eigenvalues).
    pub fn neg_laplacian_symbol(&self) -> &[f64] {
        &self.neg_lap_symbol
    }

    /// Multi-index of a flat node index; unused trailing axes are zero.
    pub fn multi_index(&self, idx: usize) -> [usize; 3] {
        let n = self.spec.points_per_axis;
        let mut out = [0usize; 3];
        let mut rem = idx;
        for d in (0..self.spec.dimension).rev() {
            out[d] = rem % n;
            rem /= n;
        }
        out
    }

    pub fn flat_index(&self, multi: [usize; 3]) -> usize {
        let n = self.spec.points_per_axis;
        (0..self.spec.dimension).fold(0, |acc, d| acc * n + multi[d])
    }

    /// Coordinates of a node; unused trailing axes are zero.
    pub fn position(&self, idx: usize) -> [f64; 3] {
        let m = self.multi_index(idx);
        let mut x = [0.0; 3];
        for d in 0..self.spec.dimension {
            x[d] = self.axis[m[d]];
        }
        x
    }

    /// True when the node does not sit on the first or last index of any axis.
    pub fn is_interior(&self, idx: usize) -> bool {
        let last = self.spec.points_per_axis - 1;
        let m = self.multi_index(idx);
        (0..self.spec.dimension).all(|d| m[d] != 0 && m[d] != last)
    }

    pub fn sample<F: Fn(&[f64]) -> f64>(&self, f: F) -> Vec<f64> {
        let dim = self.spec.dimension;
        (0..self.len())
            .map(|i| {
                let x = self.position(i);
                f(&x[..dim])
            })
            .collect()
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.weight * pairwise_sum(values)
    }

    /// `∫ f g`.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        self.weight * pairwise_sum_by(f.len(), &|i| f[i] * g[i])
    }

    /// `∫ |∇f|²`: mode sum of `|k|² |f̂|²` (spectral) or squared forward
    /// differences over every edge, including the two ghost edges per line
    /// (Dirichlet).
    pub fn grad_sq_integral(&self, values: &[f64]) -> f64 {
        match &self.transform {
            Transform::Periodic(t) => {
                let modes = t.forward(values);
                let sym = &self.neg_lap_symbol;
                let s = pairwise_sum_by(modes.len(), &|i| sym[i] * modes[i].norm_sqr());
                self.weight * s / self.len() as f64
            }
            Transform::Sine(_) => {
                let n = self.spec.points_per_axis;
                let dim = self.spec.dimension;
                let inv_h2 = 1.0 / (self.spacing * self.spacing);
                let mut total = 0.0;
                for axis in 0..dim {
                    let stride = n.pow((dim - 1 - axis) as u32);
                    let axis_sum = pairwise_sum_by(values.len(), &|i| {
                        let j = (i / stride) % n;
                        let here = values[i];
                        let next = if j + 1 < n { values[i + stride] } else { 0.0 };
                        let mut e = (next - here) * (next - here);
                        if j == 0 {
                            e += here * here;
                        }
                        e
                    });
                    total += axis_sum;
                }
                self.weight * inv_h2 * total
            }
        }
    }

    /// `Δf` under the grid's discretization.
    pub fn laplacian(&self, values: &[f64]) -> Vec<f64> {
        match &self.transform {
            Transform::Periodic(_) => self.apply_symbol(values, |s| -s),
            Transform::Sine(_) => {
                let n = self.spec.points_per_axis;
                let dim = self.spec.dimension;
                let inv_h2 = 1.0 / (self.spacing * self.spacing);
                let mut out = vec![0.0; values.len()];
                for axis in 0..dim {
                    let stride = n.pow((dim - 1 - axis) as u32);
                    for (i, o) in out.iter_mut().enumerate() {
                        let j = (i / stride) % n;
                        let prev = if j > 0 { values[i - stride] } else { 0.0 };
                        let next = if j + 1 < n { values[i + stride] } else { 0.0 };
                        *o += (prev - 2.0 * values[i] + next) * inv_h2;
                    }
                }
                out
            }
        }
    }

    /// Apply a function of the `-Δ` symbol: `g(-Δ) f`. For Dirichlet grids
    /// this acts in the sine basis, so `g(-Δ_h)` matches the stencil exactly.
    pub fn apply_symbol<G: Fn(f64) -> f64>(&self, values: &[f64], g: G) -> Vec<f64> {
        match &self.transform {
            Transform::Periodic(t) => {
                let mut modes = t.forward(values);
                for (m, &s) in modes.iter_mut().zip(&self.neg_lap_symbol) {
                    *m *= g(s);
                }
                t.inverse(&mut modes);
                modes.into_iter().map(|c| c.re).collect()
            }
            Transform::Sine(t) => {
                let mut buf = values.to_vec();
                t.apply(&mut buf);
                let scale = t.inverse_scale();
                for (b, &s) in buf.iter_mut().zip(&self.neg_lap_symbol) {
                    *b *= g(s) * scale;
                }
                t.apply(&mut buf);
                buf
            }
        }
    }

    /// Coefficients in the diagonalizing basis: unnormalized DFT (periodic) or
    /// DST-I coefficients stored in the real part (Dirichlet).
    pub fn forward_transform(&self, values: &[f64]) -> Vec<Complex64> {
        match &self.transform {
            Transform::Periodic(t) => t.forward(values),
            Transform::Sine(t) => {
                let mut buf = values.to_vec();
                t.apply(&mut buf);
                buf.into_iter().map(|v| Complex64::new(v, 0.0)).collect()
            }
        }
    }

    /// Inverse of [`Grid::forward_transform`]; returns the real part.
    pub fn inverse_transform(&self, modes: &[Complex64]) -> Vec<f64> {
        match &self.transform {
            Transform::Periodic(t) => {
                let mut buf = modes.to_vec();
                t.inverse(&mut buf);
                buf.into_iter().map(|c| c.re).collect()
            }
            Transform::Sine(t) => {
                let mut buf: Vec<f64> = modes.iter().map(|c| c.re).collect();
                t.apply(&mut buf);
                let s = t.inverse_scale();
                buf.iter_mut().for_each(|b| *b *= s);
                buf
            }
        }
    }

    /// Smooth random field: independent standard normal coefficients on the
    /// lowest quarter of the modes along every axis, zero elsewhere.
    pub fn band_limited_noise<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let n = self.spec.points_per_axis;
        let dim = self.spec.dimension;
        let cutoff = (n / 4).max(1);
        let mut modes = vec![Complex64::default(); self.len()];
        for (idx, m) in modes.iter_mut().enumerate() {
            let multi = self.multi_index(idx);
            let low = (0..dim).all(|d| match self.spec.discretization {
                // centred band of `cutoff` signed frequencies
                Discretization::SpectralPeriodic => {
                    let j = multi[d];
                    let signed = if j <= n / 2 { j as i64 } else { j as i64 - n as i64 };
                    2 * signed.unsigned_abs() as usize <= cutoff
                }
                Discretization::FdDirichlet => multi[d] < cutoff,
            });
            if low {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                *m = Complex64::new(re, im);
            }
        }
        self.inverse_transform(&modes)
    }
}

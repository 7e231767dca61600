//! Axis-by-axis transforms on row-major lattices.
//!
//! Periodic grids use the complex DFT. Dirichlet grids use the type-I
//! discrete sine transform, which diagonalizes the three-point Laplacian with
//! zero ghost values; it is computed through a complex FFT of the odd
//! extension of length `2(n + 1)`.

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Apply `op` to every 1-D line of a row-major `n^dim` array along `axis`.
fn for_each_line<T: Copy + Default>(
    data: &mut [T],
    n: usize,
    dim: usize,
    axis: usize,
    mut op: impl FnMut(&mut [T]),
) {
    let stride = n.pow((dim - 1 - axis) as u32);
    if stride == 1 {
        for line in data.chunks_exact_mut(n) {
            op(line);
        }
        return;
    }
    let block = stride * n;
    let mut line = vec![T::default(); n];
    for outer in (0..data.len()).step_by(block) {
        for inner in 0..stride {
            let base = outer + inner;
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = data[base + j * stride];
            }
            op(&mut line);
            for (j, &val) in line.iter().enumerate() {
                data[base + j * stride] = val;
            }
        }
    }
}

/// Unnormalized N-dimensional DFT along every axis.
#[derive(Clone)]
pub(crate) struct PeriodicTransform {
    n: usize,
    dim: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl PeriodicTransform {
    pub(crate) fn new(n: usize, dim: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            dim,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub(crate) fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.run(&mut buf, &self.forward);
        buf
    }

    /// Inverse including the `1/n^dim` normalization.
    pub(crate) fn inverse(&self, modes: &mut [Complex64]) {
        self.run(modes, &self.inverse);
        let scale = 1.0 / modes.len() as f64;
        for m in modes.iter_mut() {
            *m *= scale;
        }
    }

    fn run(&self, buf: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let mut scratch = vec![Complex64::default(); plan.get_inplace_scratch_len()];
        for axis in 0..self.dim {
            for_each_line(buf, self.n, self.dim, axis, |line| {
                plan.process_with_scratch(line, &mut scratch)
            });
        }
    }
}

/// N-dimensional DST-I, applied axis by axis. Self-inverse up to
/// `(2 / (n + 1))^dim`.
#[derive(Clone)]
pub(crate) struct SineTransform {
    n: usize,
    dim: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl SineTransform {
    pub(crate) fn new(n: usize, dim: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            dim,
            fft: planner.plan_fft_forward(2 * (n + 1)),
        }
    }

    pub(crate) fn apply(&self, data: &mut [f64]) {
        let n = self.n;
        let m = 2 * (n + 1);
        let mut ext = vec![Complex64::default(); m];
        let mut scratch = vec![Complex64::default(); self.fft.get_inplace_scratch_len()];
        for axis in 0..self.dim {
            for_each_line(data, n, self.dim, axis, |line| {
                ext[0] = Complex64::default();
                ext[n + 1] = Complex64::default();
                for (j, &x) in line.iter().enumerate() {
                    ext[j + 1] = Complex64::new(x, 0.0);
                    ext[m - 1 - j] = Complex64::new(-x, 0.0);
                }
                self.fft.process_with_scratch(&mut ext, &mut scratch);
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = -0.5 * ext[k + 1].im;
                }
            });
        }
    }

    pub(crate) fn inverse_scale(&self) -> f64 {
        (2.0 / (self.n as f64 + 1.0)).powi(self.dim as i32)
    }
}

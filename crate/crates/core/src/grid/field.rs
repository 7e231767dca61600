use std::sync::Arc;

use super::{Discretization, Grid};
use crate::error::{Error, Result};

/// A real lattice function bound to its grid.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Input(format!(
                "field has {} values but the grid has {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Input(format!("non-finite value at node {i}")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let values = vec![0.0; grid.len()];
        Self { grid, values }
    }

    pub fn constant(grid: Arc<Grid>, c: f64) -> Self {
        let values = vec![c; grid.len()];
        Self { grid, values }
    }

    pub fn from_fn<F: Fn(&[f64]) -> f64>(grid: Arc<Grid>, f: F) -> Self {
        let values = grid.sample(f);
        Self { grid, values }
    }

    /// Wrap values produced by grid operators on an existing field's grid.
    pub(crate) fn from_parts(grid: Arc<Grid>, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn same_grid(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || self.grid.spec() == other.grid.spec()
    }

    pub fn integrate(&self) -> f64 {
        self.grid.integrate(&self.values)
    }

    pub fn inner(&self, other: &Field) -> f64 {
        self.grid.inner(&self.values, &other.values)
    }

    /// `∫ f²`.
    pub fn mass(&self) -> f64 {
        self.inner(self)
    }

    pub fn l2_norm(&self) -> f64 {
        self.mass().sqrt()
    }

    /// `∫ |f|^q`.
    pub fn lq_power(&self, q: f64) -> f64 {
        let v = &self.values;
        self.grid.weight() * super::pairwise_sum_by(v.len(), &|i| v[i].abs().powf(q))
    }

    pub fn grad_sq_integral(&self) -> f64 {
        self.grid.grad_sq_integral(&self.values)
    }

    pub fn laplacian(&self) -> Field {
        Field::from_parts(self.grid.clone(), self.grid.laplacian(&self.values))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Field {
        Field::from_parts(self.grid.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn scaled(&self, s: f64) -> Field {
        self.map(|v| s * v)
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: f64, other: &Field) {
        for (x, y) in self.values.iter_mut().zip(&other.values) {
            *x += a * y;
        }
    }

    pub fn abs(&self) -> Field {
        self.map(f64::abs)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Cyclic shift by whole lattice steps along each axis (periodic wrap).
    pub fn shifted(&self, steps: [isize; 3]) -> Field {
        let g = &self.grid;
        let n = g.points_per_axis() as isize;
        let mut out = vec![0.0; self.values.len()];
        for (idx, &v) in self.values.iter().enumerate() {
            let mut m = g.multi_index(idx);
            for d in 0..g.dimension() {
                m[d] = (m[d] as isize + steps[d]).rem_euclid(n) as usize;
            }
            out[g.flat_index(m)] = v;
        }
        Field::from_parts(g.clone(), out)
    }

    pub fn discretization(&self) -> Discretization {
        self.grid.discretization()
    }
}

/// Ordered triple `(u, v, w)` on one shared grid.
#[derive(Clone, Debug)]
pub struct TriField {
    components: [Field; 3],
}

impl TriField {
    pub fn new(u: Field, v: Field, w: Field) -> Result<Self> {
        if !(u.same_grid(&v) && u.same_grid(&w)) {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            components: [u, v, w],
        })
    }

    pub fn from_array(components: [Field; 3]) -> Result<Self> {
        let [u, v, w] = components;
        Self::new(u, v, w)
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let z = Field::zeros(grid);
        Self {
            components: [z.clone(), z.clone(), z],
        }
    }

    pub fn u(&self) -> &Field {
        &self.components[0]
    }

    pub fn v(&self) -> &Field {
        &self.components[1]
    }

    pub fn w(&self) -> &Field {
        &self.components[2]
    }

    pub fn component(&self, i: usize) -> &Field {
        &self.components[i]
    }

    pub fn component_mut(&mut self, i: usize) -> &mut Field {
        &mut self.components[i]
    }

    pub fn components(&self) -> &[Field; 3] {
        &self.components
    }

    pub fn into_components(self) -> [Field; 3] {
        self.components
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.components[0].grid()
    }

    pub fn masses(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| self.components[i].mass())
    }

    pub fn map_components(&self, f: impl Fn(usize, &Field) -> Field) -> TriField {
        TriField {
            components: [0, 1, 2].map(|i| f(i, &self.components[i])),
        }
    }

    /// `self += a * other`, componentwise.
    pub fn axpy(&mut self, a: f64, other: &TriField) {
        for (x, y) in self.components.iter_mut().zip(&other.components) {
            x.axpy(a, y);
        }
    }

    /// Combined L² norm `(Σᵢ ‖fᵢ‖²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        self.masses().iter().sum::<f64>().sqrt()
    }

    /// `‖self − other‖₂` over all three components.
    pub fn distance(&self, other: &TriField) -> f64 {
        let mut d = self.clone();
        d.axpy(-1.0, other);
        d.l2_norm()
    }

    pub fn shifted(&self, steps: [isize; 3]) -> TriField {
        self.map_components(|_, f| f.shifted(steps))
    }
}

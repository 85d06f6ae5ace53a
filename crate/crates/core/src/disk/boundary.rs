use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// N equally spaced nodes θ_k = 2πk/N with weights 2π/N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryGrid {
    n: usize,
}

impl BoundaryGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("grid needs at least one node".into()));
        }
        Ok(BoundaryGrid { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn angle(&self, k: usize) -> f64 {
        TAU * k as f64 / self.n as f64
    }

    pub fn node(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.angle(k))
    }

    pub fn weight(&self) -> f64 {
        TAU / self.n as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.n).map(|k| self.node(k))
    }
}

/// Samples of a function on the circle at the grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction {
    grid: BoundaryGrid,
    values: Vec<Complex64>,
}

impl BoundaryFunction {
    pub fn new(grid: BoundaryGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!("{} values for a grid of {} nodes", values.len(), grid.len())));
        }
        Ok(BoundaryFunction { grid, values })
    }

    pub fn from_fn(grid: BoundaryGrid, f: impl Fn(Complex64) -> Complex64) -> Self {
        BoundaryFunction { grid, values: grid.nodes().map(f).collect() }
    }

    /// The vacuum vector f₀ ≡ 1.
    pub fn vacuum(grid: BoundaryGrid) -> Self {
        Self::from_fn(grid, |_| Complex64::new(1.0, 0.0))
    }

    pub fn monomial(grid: BoundaryGrid, m: u32) -> Self {
        Self::from_fn(grid, |z| z.powu(m))
    }

    /// Boundary values of Σ c_m z^m.
    pub fn polynomial(grid: BoundaryGrid, coeffs: &[Complex64]) -> Self {
        Self::from_fn(grid, |z| super::transform::polynomial_eval(coeffs, z))
    }

    pub fn grid(&self) -> BoundaryGrid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// ⟨f, g⟩ = (1/2π) Σ w_k f_k ḡ_k.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::InvalidArgument("functions live on different grids".into()));
        }
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(f, g)| f * g.conj()).sum();
        Ok(s / self.grid.len() as f64)
    }

    /// Σ w_k |f_k|².
    pub fn weighted_norm_sq(&self) -> f64 {
        self.grid.weight() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }
}

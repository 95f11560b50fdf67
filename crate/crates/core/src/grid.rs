use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Uniform sampling lattice `x_k = x_min + k * step`, `k = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    step: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, step: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() {
            return Err(invalid(format!("grid origin must be finite, got {x_min}")));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(invalid(format!("grid step must be positive, got {step}")));
        }
        if n_points < 2 {
            return Err(invalid(format!("grid needs at least 2 points, got {n_points}")));
        }
        Ok(Self { x_min, step, n_points })
    }

    /// Grid of `n_points` spanning `[center - half_width, center + half_width]`.
    pub fn centered(center: f64, half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(invalid(format!("half-width must be positive, got {half_width}")));
        }
        if n_points < 2 {
            return Err(invalid(format!("grid needs at least 2 points, got {n_points}")));
        }
        let step = 2.0 * half_width / (n_points - 1) as f64;
        Self::new(center - half_width, step, n_points)
    }

    /// Grid with `n_points` and the given step, symmetric about `center`.
    pub fn with_step(center: f64, step: f64, n_points: usize) -> Result<Self> {
        let half = 0.5 * step * (n_points.max(1) - 1) as f64;
        Self::new(center - half, step, n_points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.point(self.n_points - 1)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn point(&self, k: usize) -> f64 {
        self.x_min + k as f64 * self.step
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |k| self.point(k))
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.x_min + self.x_max())
    }

    /// Every other point, starting at the first one.
    pub fn coarsened(&self) -> Option<Self> {
        let n = self.n_points.div_ceil(2);
        Self::new(self.x_min, 2.0 * self.step, n).ok()
    }

    /// Halves the step while keeping the window fixed.
    pub fn refined(&self) -> Self {
        Self {
            x_min: self.x_min,
            step: 0.5 * self.step,
            n_points: 2 * self.n_points - 1,
        }
    }

    /// Conjugate lattice for a discrete Fourier transform of length `n`:
    /// step `2π / (n * step)`, centered on zero with `p_0 = -floor(n/2) * dp`.
    pub fn conjugate(&self, n: usize) -> Self {
        let dp = 2.0 * std::f64::consts::PI / (n as f64 * self.step);
        Self {
            x_min: -((n / 2) as f64) * dp,
            step: dp,
            n_points: n,
        }
    }

    /// Sum of `values * step`.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        values.iter().sum::<f64>() * self.step
    }
}

//! Normalized tomographic densities: symplectic `w(X, μ, ν)`, optical
//! `w(X, t)` and Fresnel `w_F(X, ν)`, for every supported state.

mod method;

pub use method::{
    gaussian_density, gaussian_entropy, waist_entropy, waist_tomogram, ChirpFft, ClosedFormGaussian,
    Component, MethodRegistry, TomogramMethod, MAX_LATTICE,
};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::frft::{ChirpKernelParams, ANGLE_GUARD};
use crate::grid::Grid;
use crate::states::{ProductState, State};

/// Densities in `[-CLAMP, 0)` are rounded to zero; anything lower is an error.
pub const NEGATIVE_CLAMP: f64 = 1e-14;

/// Mass outside the window above which a grid is considered too narrow.
pub const COVERAGE_TOL: f64 = 1e-4;

/// Default number of points for automatically sized grids.
pub const DEFAULT_POINTS: usize = 1024;

/// Which tomogram a density represents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TomogramParams {
    Symplectic { mu: f64, nu: f64 },
    Optical { t: f64 },
    Fresnel { nu: f64 },
}

impl TomogramParams {
    /// Equivalent symplectic parameters.
    pub fn mu_nu(&self) -> (f64, f64) {
        match *self {
            TomogramParams::Symplectic { mu, nu } => (mu, nu),
            TomogramParams::Optical { t } => (t.cos(), t.sin()),
            TomogramParams::Fresnel { nu } => (1.0, nu),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tomogram {
    pub grid: Grid,
    pub density: Vec<f64>,
    pub params: TomogramParams,
    /// `|Σ density·step − 1|`.
    pub normalization_defect: f64,
    /// Number of round-off negatives that were set to zero.
    pub clamped: usize,
    /// Name of the method that produced the density (`"mixed"` when several did).
    pub method: &'static str,
}

impl Tomogram {
    /// Builds a tomogram from raw values, applying the round-off clamp.
    pub fn from_density(grid: Grid, mut density: Vec<f64>, params: TomogramParams, method: &'static str) -> Result<Self> {
        if density.len() != grid.n_points() {
            return Err(Error::Dimension {
                expected: grid.n_points(),
                got: density.len(),
            });
        }
        let mut clamped = 0;
        for v in density.iter_mut() {
            if v.is_nan() {
                return Err(Error::InvariantViolation("density contains NaN".into()));
            }
            if *v < 0.0 {
                if *v < -NEGATIVE_CLAMP {
                    return Err(Error::NegativeDensity { value: *v });
                }
                *v = 0.0;
                clamped += 1;
            }
        }
        let normalization_defect = (grid.integrate(&density) - 1.0).abs();
        Ok(Self {
            grid,
            density,
            params,
            normalization_defect,
            clamped,
            method,
        })
    }

    pub fn mass(&self) -> f64 {
        self.grid.integrate(&self.density)
    }

    /// Multiplies the density by `factor` (used to build negative controls).
    pub fn scaled(&self, factor: f64) -> Self {
        let density: Vec<f64> = self.density.iter().map(|v| v * factor).collect();
        let normalization_defect = (self.grid.integrate(&density) - 1.0).abs();
        Self {
            density,
            normalization_defect,
            ..self.clone()
        }
    }

    /// `Σ |a − b|·step` against another density on the same grid.
    pub fn l1_distance(&self, other: &Tomogram) -> Result<f64> {
        if self.grid.n_points() != other.grid.n_points() {
            return Err(Error::Dimension {
                expected: self.grid.n_points(),
                got: other.grid.n_points(),
            });
        }
        Ok(self
            .density
            .iter()
            .zip(&other.density)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * self.grid.step())
    }
}

/// Tomogram at `(λμ, λν)` from the one at `(μ, ν)` by rescaling
/// `w(λX, λμ, λν) = w(X, μ, ν)/|λ|`. No recomputation takes place.
pub fn homogeneity_rescale(tom: &Tomogram, lambda: f64) -> Result<Tomogram> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(invalid(format!("scale factor must be finite and nonzero, got {lambda}")));
    }
    let (mu, nu) = tom.params.mu_nu();
    let a = lambda.abs();
    let (grid, mut density) = if lambda > 0.0 {
        (
            Grid::new(lambda * tom.grid.x_min(), a * tom.grid.step(), tom.grid.n_points())?,
            tom.density.clone(),
        )
    } else {
        let mut d = tom.density.clone();
        d.reverse();
        (
            Grid::new(lambda * tom.grid.x_max(), a * tom.grid.step(), tom.grid.n_points())?,
            d,
        )
    };
    density.iter_mut().for_each(|v| *v /= a);
    let params = if lambda == 1.0 {
        tom.params
    } else {
        TomogramParams::Symplectic {
            mu: lambda * mu,
            nu: lambda * nu,
        }
    };
    // Σ w'·h' = Σ (w/|λ|)(|λ|h) is unchanged
    Ok(Tomogram {
        grid,
        density,
        params,
        normalization_defect: tom.normalization_defect,
        clamped: tom.clamped,
        method: tom.method,
    })
}

/// Configuration and method registry shared by tomogram, entropy and
/// uncertainty computations.
#[derive(Clone)]
pub struct Engine {
    methods: MethodRegistry,
    preference: Vec<String>,
    grid_points: usize,
    min_half_width: f64,
    half_width_override: Option<f64>,
    strict: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self {
            methods: MethodRegistry::with_builtin(),
            preference: vec!["closed-form".into(), "chirp-fft".into()],
            grid_points: DEFAULT_POINTS,
            min_half_width: 0.0,
            half_width_override: None,
            strict: false,
        }
    }

    /// Prefers the chirp-FFT quadrature even where closed forms exist.
    pub fn force_fft(mut self, on: bool) -> Self {
        self.preference = if on {
            vec!["chirp-fft".into(), "closed-form".into()]
        } else {
            vec!["closed-form".into(), "chirp-fft".into()]
        };
        self
    }

    /// Sets the method preference order by name.
    pub fn with_preference<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if let Some(bad) = names.iter().find(|n| self.methods.get(n).is_none()) {
            return Err(invalid(format!("unknown tomogram method `{bad}`")));
        }
        self.preference = names;
        Ok(self)
    }

    pub fn with_methods(mut self, methods: MethodRegistry) -> Self {
        self.methods = methods;
        self
    }

    pub fn with_grid_points(mut self, n: usize) -> Self {
        self.grid_points = n.max(16);
        self
    }

    /// Lower bound on automatically chosen window half-widths.
    pub fn with_min_half_width(mut self, w: f64) -> Self {
        self.min_half_width = w.max(0.0);
        self
    }

    /// Fixes the automatic window half-width (centered on the quadrature mean).
    pub fn with_half_width(mut self, w: Option<f64>) -> Self {
        self.half_width_override = w.filter(|w| *w > 0.0);
        self
    }

    /// Strict mode halves the grid step and escalates coverage warnings.
    pub fn strict(mut self, on: bool) -> Self {
        self.strict = on;
        self
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
    }

    pub fn preference(&self) -> &[String] {
        &self.preference
    }

    /// Grid covering the essential support of `w(·, μ, ν)`.
    pub fn auto_grid(&self, state: &State, mu: f64, nu: f64) -> Result<Grid> {
        let (center, half) = state.support(mu, nu);
        let half = self.half_width_override.unwrap_or(half.max(self.min_half_width));
        let n = if self.strict {
            2 * self.grid_points - 1
        } else {
            self.grid_points
        };
        Grid::centered(center, half, n)
    }

    pub(crate) fn select(&self, component: Component<'_>) -> Result<&dyn TomogramMethod> {
        self.preference
            .iter()
            .filter_map(|n| self.methods.get(n))
            .find(|m| m.supports(component))
            .ok_or_else(|| Error::NoMethod(component.describe().to_string()))
    }

    pub(crate) fn components(state: &State) -> Vec<(f64, Component<'_>)> {
        match state {
            State::Pure(p) => vec![(1.0, Component::Pure(p))],
            State::Gaussian(g) => vec![(1.0, Component::Covariance(g))],
            State::Mixed(m) => m
                .components()
                .iter()
                .map(|(w, p)| (*w, Component::Pure(p)))
                .collect(),
        }
    }

    fn density(&self, state: &State, k: ChirpKernelParams, grid: &Grid) -> Result<(Vec<f64>, &'static str)> {
        let mut total = vec![0.0; grid.n_points()];
        let mut used: Option<&'static str> = None;
        for (w, c) in Self::components(state) {
            if w == 0.0 {
                continue;
            }
            let m = self.select(c)?;
            used = match used {
                None => Some(m.name()),
                Some(u) if u == m.name() => Some(u),
                Some(_) => Some("mixed"),
            };
            for (acc, v) in total.iter_mut().zip(m.density(c, k, grid)?) {
                *acc += w * v;
            }
        }
        Ok((total, used.unwrap_or("none")))
    }

    fn finish(&self, tom: Tomogram) -> Result<Tomogram> {
        if tom.normalization_defect > COVERAGE_TOL {
            if self.strict {
                return Err(Error::Coverage {
                    tail_mass: tom.normalization_defect,
                });
            }
            log::warn!(
                "tomogram at {:?} has normalization defect {:e}; the grid may not cover the support",
                tom.params,
                tom.normalization_defect
            );
        }
        Ok(tom)
    }

    /// `w(X, μ, ν)` on `grid`.
    pub fn symplectic_tomogram(&self, state: &State, mu: f64, nu: f64, grid: &Grid) -> Result<Tomogram> {
        let k = ChirpKernelParams::new(mu, nu)?;
        let (density, method) = self.density(state, k, grid)?;
        self.finish(Tomogram::from_density(*grid, density, TomogramParams::Symplectic { mu, nu }, method)?)
    }

    /// `w(X, t) = w(X, cos t, sin t)`; within the angle guard of the axes the
    /// exact marginal is used.
    pub fn optical_tomogram(&self, state: &State, t: f64, grid: &Grid) -> Result<Tomogram> {
        let (mu, nu) = optical_params(t);
        let (density, method) = self.density(state, ChirpKernelParams::new(mu, nu)?, grid)?;
        self.finish(Tomogram::from_density(*grid, density, TomogramParams::Optical { t }, method)?)
    }

    /// `w_F(X, ν) = w(X, 1, ν)`.
    pub fn fresnel_tomogram(&self, state: &State, nu: f64, grid: &Grid) -> Result<Tomogram> {
        let (density, method) = self.density(state, ChirpKernelParams::new(1.0, nu)?, grid)?;
        self.finish(Tomogram::from_density(*grid, density, TomogramParams::Fresnel { nu }, method)?)
    }

    /// Per-mode tomograms of a product state; the joint density is their product.
    pub fn product_tomogram(
        &self,
        state: &ProductState,
        mu: &[f64],
        nu: &[f64],
        grids: &[Grid],
    ) -> Result<Vec<Tomogram>> {
        let n = state.len();
        for len in [mu.len(), nu.len(), grids.len()] {
            if len != n {
                return Err(Error::Dimension { expected: n, got: len });
            }
        }
        state
            .modes()
            .iter()
            .zip(mu.iter().zip(nu))
            .zip(grids)
            .map(|((s, (&m, &v)), g)| self.symplectic_tomogram(s, m, v, g))
            .collect()
    }
}

/// `(cos t, sin t)` with the components inside the angle guard snapped to zero.
pub fn optical_params(t: f64) -> (f64, f64) {
    let (s, c) = t.sin_cos();
    if s.abs() < ANGLE_GUARD {
        (c.signum(), 0.0)
    } else if c.abs() < ANGLE_GUARD {
        (0.0, s.signum())
    } else {
        (c, s)
    }
}

/// Multimode ground-state tomogram `Π_k [π(μ_k²+ν_k²)]^{-1/2} exp(−X_k²/(μ_k²+ν_k²))`.
pub fn ground_product_density(x: &[f64], mu: &[f64], nu: &[f64]) -> f64 {
    x.iter()
        .zip(mu.iter().zip(nu))
        .map(|(x, (m, n))| {
            let r2 = m * m + n * n;
            (-(x * x) / r2).exp() / (PI * r2).sqrt()
        })
        .product()
}

pub fn symplectic_tomogram(state: &State, mu: f64, nu: f64, grid: &Grid) -> Result<Tomogram> {
    Engine::new().symplectic_tomogram(state, mu, nu, grid)
}

pub fn optical_tomogram(state: &State, t: f64, grid: &Grid) -> Result<Tomogram> {
    Engine::new().optical_tomogram(state, t, grid)
}

pub fn fresnel_tomogram(state: &State, nu: f64, grid: &Grid) -> Result<Tomogram> {
    Engine::new().fresnel_tomogram(state, nu, grid)
}

pub fn product_tomogram(state: &ProductState, mu: &[f64], nu: &[f64], grids: &[Grid]) -> Result<Vec<Tomogram>> {
    Engine::new().product_tomogram(state, mu, nu, grids)
}

#[cfg(test)]
mod tests;

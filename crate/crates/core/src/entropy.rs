//! Shannon entropies of tomograms, in nats.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::frft::ChirpKernelParams;
use crate::grid::Grid;
use crate::tomogram::{optical_params, Engine, Tomogram};
use crate::states::State;

/// Largest normalization defect for which an entropy is computed.
pub const MAX_NORMALIZATION_DEFECT: f64 = 1e-4;

/// Densities below this are treated as exact zeros.
const UNDERFLOW: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyValue {
    pub value: f64,
    pub quadrature_error_estimate: f64,
    pub method: EntropyMethod,
}

impl EntropyValue {
    pub fn closed_form(value: f64) -> Self {
        Self {
            value,
            quadrature_error_estimate: 0.0,
            method: EntropyMethod::ClosedForm,
        }
    }
}

fn entropy_sum(density: &[f64], step: f64, stride: usize) -> f64 {
    -density
        .iter()
        .step_by(stride)
        .filter(|&&w| w > UNDERFLOW)
        .map(|&w| w * w.ln())
        .sum::<f64>()
        * step
        * stride as f64
}

/// `−Σ w ln w · step` with `0·ln 0 = 0`. The error estimate is the change
/// against the same sum on every other lattice point.
pub fn shannon_entropy(tom: &Tomogram) -> Result<EntropyValue> {
    if !(tom.normalization_defect <= MAX_NORMALIZATION_DEFECT) {
        return Err(Error::Normalization {
            defect: tom.normalization_defect,
            tol: MAX_NORMALIZATION_DEFECT,
        });
    }
    let h = tom.grid.step();
    let value = entropy_sum(&tom.density, h, 1);
    let coarse = if tom.density.len() >= 4 {
        entropy_sum(&tom.density, h, 2)
    } else {
        value
    };
    Ok(EntropyValue {
        value,
        quadrature_error_estimate: (value - coarse).abs(),
        method: EntropyMethod::Quadrature,
    })
}

/// Entropy of a discrete distribution, `−Σ P ln P`.
pub fn discrete_entropy(probabilities: &[f64]) -> f64 {
    -probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// Entropy of the `N`-mode ground-state tomogram,
/// `(N/2) ln π + N/2 + (1/2) Σ ln(μ_k² + ν_k²)`.
pub fn ground_product_entropy(mu: &[f64], nu: &[f64]) -> f64 {
    let n = mu.len() as f64;
    0.5 * n * std::f64::consts::PI.ln()
        + 0.5 * n
        + 0.5 * mu.iter().zip(nu).map(|(m, v)| (m * m + v * v).ln()).sum::<f64>()
}

/// What a scan sweeps over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "values", rename_all = "lowercase")]
pub enum ScanAxis {
    Optical(Vec<f64>),
    Fresnel(Vec<f64>),
    Symplectic(Vec<(f64, f64)>),
}

impl ScanAxis {
    pub fn len(&self) -> usize {
        match self {
            ScanAxis::Optical(v) | ScanAxis::Fresnel(v) => v.len(),
            ScanAxis::Symplectic(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Symplectic parameters of the i-th point.
    pub fn mu_nu(&self, i: usize) -> (f64, f64) {
        match self {
            ScanAxis::Optical(v) => optical_params(v[i]),
            ScanAxis::Fresnel(v) => (1.0, v[i]),
            ScanAxis::Symplectic(v) => v[i],
        }
    }

    /// Scalar label for tabular output (the angle, `ν`, or `atan2(ν, μ)`).
    pub fn label(&self, i: usize) -> f64 {
        match self {
            ScanAxis::Optical(v) | ScanAxis::Fresnel(v) => v[i],
            ScanAxis::Symplectic(v) => v[i].1.atan2(v[i].0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyScan {
    pub axis: ScanAxis,
    pub entropies: Vec<EntropyValue>,
}

impl Engine {
    /// `S(μ, ν) = −∫ w ln w dX`, closed form where the selected method has one.
    pub fn symplectic_entropy(&self, state: &State, mu: f64, nu: f64) -> Result<EntropyValue> {
        let k = ChirpKernelParams::new(mu, nu)?;
        if let [(_, c)] = Self::components(state).as_slice() {
            if let Some(s) = self.select(*c)?.entropy(*c, k) {
                return Ok(EntropyValue::closed_form(s));
            }
        }
        let grid = self.auto_grid(state, mu, nu)?;
        shannon_entropy(&self.symplectic_tomogram(state, mu, nu, &grid)?)
    }

    /// `S(t) = S(cos t, sin t)`.
    pub fn optical_entropy(&self, state: &State, t: f64) -> Result<EntropyValue> {
        let (mu, nu) = optical_params(t);
        self.symplectic_entropy(state, mu, nu)
    }

    /// `S_F(ν) = S(1, ν)`.
    pub fn fresnel_entropy(&self, state: &State, nu: f64) -> Result<EntropyValue> {
        self.symplectic_entropy(state, 1.0, nu)
    }

    /// Position entropy `S_x = S(1, 0)`.
    pub fn position_entropy(&self, state: &State) -> Result<EntropyValue> {
        self.symplectic_entropy(state, 1.0, 0.0)
    }

    /// Momentum entropy `S_p = S(0, 1)`.
    pub fn momentum_entropy(&self, state: &State) -> Result<EntropyValue> {
        self.symplectic_entropy(state, 0.0, 1.0)
    }

    /// Residual `|S(λμ, λν) − S(μ, ν) − ln|λ||`.
    pub fn additivity_check(&self, state: &State, mu: f64, nu: f64, lambda: f64) -> Result<f64> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(invalid(format!("scale factor must be finite and nonzero, got {lambda}")));
        }
        ChirpKernelParams::new(mu, nu)?;
        if lambda == 1.0 {
            return Ok(0.0);
        }
        let a = self.symplectic_entropy(state, mu, nu)?.value;
        let b = self.symplectic_entropy(state, lambda * mu, lambda * nu)?.value;
        Ok((b - a - lambda.abs().ln()).abs())
    }

    /// Entropies along an axis, evaluated in parallel and returned in axis order.
    pub fn entropy_scan(&self, state: &State, axis: ScanAxis) -> Result<EntropyScan> {
        let entropies = (0..axis.len())
            .into_par_iter()
            .map(|i| {
                let (mu, nu) = axis.mu_nu(i);
                self.symplectic_entropy(state, mu, nu)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EntropyScan { axis, entropies })
    }

    /// Entropy of an explicit tomogram on a caller-chosen grid.
    pub fn entropy_on_grid(&self, state: &State, mu: f64, nu: f64, grid: &Grid) -> Result<EntropyValue> {
        shannon_entropy(&self.symplectic_tomogram(state, mu, nu, grid)?)
    }
}

pub fn symplectic_entropy(state: &State, mu: f64, nu: f64) -> Result<EntropyValue> {
    Engine::new().symplectic_entropy(state, mu, nu)
}

pub fn optical_entropy(state: &State, t: f64) -> Result<EntropyValue> {
    Engine::new().optical_entropy(state, t)
}

pub fn fresnel_entropy(state: &State, nu: f64) -> Result<EntropyValue> {
    Engine::new().fresnel_entropy(state, nu)
}

pub fn additivity_check(state: &State, mu: f64, nu: f64, lambda: f64) -> Result<f64> {
    Engine::new().additivity_check(state, mu, nu, lambda)
}

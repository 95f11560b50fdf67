//! Fourier, fractional Fourier and chirp-kernel transforms of sampled
//! wavefunctions.
//!
//! Every transform here is a quadratic-phase integral evaluated by the
//! rectangle rule on the input lattice. The resulting exponential sums are
//! computed with the chirp-z engine in [`czt`], so the output lattice is free
//! to differ from the FFT-reciprocal one. Units are `ħ = m = ω = 1`.

pub mod czt;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::Grid;
use czt::{exp_sum, Direction, FrequencyAxis};

/// Below this `|sin t|` the fractional kernel is not resolvable on a fixed lattice.
pub const ANGLE_GUARD: f64 = 1e-3;

/// Below this `|ν|` the symplectic chirp kernel is not resolvable.
pub const NU_GUARD: f64 = 1e-6;

/// Symplectic tomography parameters `(μ, ν)` of the quadrature `X = μq + νp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChirpKernelParams {
    mu: f64,
    nu: f64,
}

impl ChirpKernelParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !mu.is_finite() || !nu.is_finite() {
            return Err(invalid(format!("non-finite (mu, nu) = ({mu}, {nu})")));
        }
        if mu == 0.0 && nu == 0.0 {
            return Err(invalid("(mu, nu) = (0, 0) does not define a quadrature"));
        }
        Ok(Self { mu, nu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Radius `sqrt(μ² + ν²)`.
    pub fn radius(&self) -> f64 {
        self.mu.hypot(self.nu)
    }
}

/// Sampled output of a transform.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    pub grid: Grid,
    pub values: Vec<Complex64>,
    /// `|Σ|values|²·step − 1|`.
    pub normalization_defect: f64,
}

impl TransformResult {
    fn new(grid: Grid, values: Vec<Complex64>) -> Self {
        let defect = (l2_norm_sqr(&values, &grid) - 1.0).abs();
        Self {
            grid,
            values,
            normalization_defect: defect,
        }
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }
}

/// `Σ|v|²·step`.
pub fn l2_norm_sqr(values: &[Complex64], grid: &Grid) -> f64 {
    values.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.step()
}

fn check_len(values: &[Complex64], grid: &Grid) -> Result<()> {
    if values.len() != grid.n_points() {
        return Err(Error::Dimension {
            expected: grid.n_points(),
            got: values.len(),
        });
    }
    Ok(())
}

fn axis_of(grid: &Grid, scale: f64) -> FrequencyAxis {
    FrequencyAxis {
        start: grid.x_min() * scale,
        step: grid.step() * scale,
        len: grid.n_points(),
    }
}

/// Momentum wavefunction `ψ̃(p) = (2π)^{-1/2} ∫ ψ(x) e^{-ipx} dx` on the
/// conjugate lattice of the input (same number of points). Exactly unitary.
pub fn fourier_transform(psi: &[Complex64], grid: &Grid) -> Result<TransformResult> {
    fourier_transform_padded(psi, grid, grid.n_points())
}

/// As [`fourier_transform`], with the input zero-padded to `n_fft` samples,
/// which refines the momentum step to `2π / (n_fft · step)`.
pub fn fourier_transform_padded(
    psi: &[Complex64],
    grid: &Grid,
    n_fft: usize,
) -> Result<TransformResult> {
    check_len(psi, grid)?;
    if n_fft < grid.n_points() {
        return Err(invalid(format!(
            "padded length {n_fft} is shorter than the input ({})",
            grid.n_points()
        )));
    }
    let p_grid = grid.conjugate(n_fft);
    let scale = grid.step() / (2.0 * PI).sqrt();
    let values = exp_sum(psi, grid.x_min(), grid.step(), axis_of(&p_grid, 1.0), Direction::Forward)
        .into_iter()
        .map(|v| v * scale)
        .collect();
    Ok(TransformResult::new(p_grid, values))
}

/// `ψ(x) = (2π)^{-1/2} ∫ ψ̃(p) e^{ipx} dp` evaluated on `out`.
pub fn inverse_fourier_transform(
    phi: &[Complex64],
    p_grid: &Grid,
    out: &Grid,
) -> Result<TransformResult> {
    check_len(phi, p_grid)?;
    let scale = p_grid.step() / (2.0 * PI).sqrt();
    let values = exp_sum(phi, p_grid.x_min(), p_grid.step(), axis_of(out, 1.0), Direction::Backward)
        .into_iter()
        .map(|v| v * scale)
        .collect();
    Ok(TransformResult::new(*out, values))
}

/// Principal branch of `sqrt(2πi·s)`; continuous through `s → 0⁺`.
fn fresnel_norm(s: f64) -> Complex64 {
    Complex64::new(0.0, 2.0 * PI * s).sqrt()
}

/// Direct rectangle-rule evaluation of the fractional kernel at an angle with
/// `|sin t| >= |cos t|` (or any angle away from the guard, if caller insists).
fn fractional_direct(psi: &[Complex64], grid: &Grid, t: f64, out: &Grid) -> Vec<Complex64> {
    let (s, c) = t.sin_cos();
    let cot = c / s;
    let chirped: Vec<Complex64> = psi
        .iter()
        .zip(grid.points())
        .map(|(&v, y)| v * Complex64::from_polar(1.0, 0.5 * cot * y * y))
        .collect();
    let sums = exp_sum(&chirped, grid.x_min(), grid.step(), axis_of(out, 1.0 / s), Direction::Forward);
    let pref = grid.step() / fresnel_norm(s);
    sums.into_iter()
        .zip(out.points())
        .map(|(v, x)| v * pref * Complex64::from_polar(1.0, 0.5 * cot * x * x))
        .collect()
}

/// Wraps an angle into `(-π, π]`.
fn wrap_angle(t: f64) -> f64 {
    let mut r = t.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// Fractional Fourier transform of order `t`, i.e. the harmonic-oscillator
/// propagator over time `t`, sampled on the input lattice.
///
/// Angles with `|cos t| > |sin t|` are routed through an exact quarter-turn
/// (`±π/2`, a plain Fourier transform) first so that the residual chirp rate
/// `|cot|` never exceeds one.
pub fn fractional_fourier(psi: &[Complex64], grid: &Grid, t: f64) -> Result<TransformResult> {
    check_len(psi, grid)?;
    if !t.is_finite() {
        return Err(invalid("non-finite angle"));
    }
    let t = wrap_angle(t);
    let (s, c) = t.sin_cos();
    if s.abs() < ANGLE_GUARD {
        return Err(Error::NearSingular {
            what: "|sin t|",
            value: s.abs(),
            guard: ANGLE_GUARD,
        });
    }
    if s.abs() >= c.abs() {
        let values = fractional_direct(psi, grid, t, grid);
        return Ok(TransformResult::new(*grid, values));
    }
    // quarter turn: FrFT_{±π/2} = e^{∓iπ/4} F^{±1}
    let n_fft = (2 * grid.n_points()).next_power_of_two();
    let p_grid = grid.conjugate(n_fft);
    let (quarter, residual, direction) = if t >= 0.0 {
        (Complex64::from_polar(1.0, -FRAC_PI_4), t - FRAC_PI_2, Direction::Forward)
    } else {
        (Complex64::from_polar(1.0, FRAC_PI_4), t + FRAC_PI_2, Direction::Backward)
    };
    let scale = grid.step() / (2.0 * PI).sqrt();
    let phi: Vec<Complex64> = exp_sum(psi, grid.x_min(), grid.step(), axis_of(&p_grid, 1.0), direction)
        .into_iter()
        .map(|v| v * scale * quarter)
        .collect();
    let values = fractional_direct(&phi, &p_grid, residual, grid);
    Ok(TransformResult::new(*grid, values))
}

/// Symplectic tomogram amplitude
/// `A(X) = (2π|ν|)^{-1/2} ∫ ψ(y) exp(iμy²/2ν − iXy/ν) dy` on the lattice `out`,
/// so that `w(X, μ, ν) = |A(X)|²`.
///
/// The input is multiplied by the chirp `exp(iμy²/2ν)` and the remaining
/// linear-phase sum is evaluated at the frequencies `X/ν` by chirp-z
/// convolution. Accurate when the chirp is resolved on the input lattice,
/// which callers ensure by keeping `|μ/ν| <= 1` (see the tomogram module).
pub fn chirp_tomogram_amplitude(
    psi: &[Complex64],
    grid: &Grid,
    k: ChirpKernelParams,
    out: &Grid,
) -> Result<TransformResult> {
    check_len(psi, grid)?;
    let (mu, nu) = (k.mu(), k.nu());
    if nu.abs() < NU_GUARD {
        return Err(Error::NearSingular {
            what: "|nu|",
            value: nu.abs(),
            guard: NU_GUARD,
        });
    }
    let rate = 0.5 * mu / nu;
    let chirped: Vec<Complex64> = psi
        .iter()
        .zip(grid.points())
        .map(|(&v, y)| v * Complex64::from_polar(1.0, rate * y * y))
        .collect();
    let pref = grid.step() / (2.0 * PI * nu.abs()).sqrt();
    let values = exp_sum(&chirped, grid.x_min(), grid.step(), axis_of(out, 1.0 / nu), Direction::Forward)
        .into_iter()
        .map(|v| v * pref)
        .collect();
    Ok(TransformResult::new(*out, values))
}

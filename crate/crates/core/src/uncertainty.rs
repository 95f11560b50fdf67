//! Entropic uncertainty function and the inequalities built from it.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::frft::ChirpKernelParams;
use crate::states::{GaussianCovarianceState, ProductState, PureState, State};
use crate::tomogram::{optical_params, Component, Engine};
use crate::LN_PI_E;

/// Default tolerance on `F ≥ 0`.
pub const TOL_F: f64 = 1e-4;

/// Tolerance used in strict mode.
pub const STRICT_TOL_F: f64 = 1e-5;

/// Default number of angles on `[0, π)`.
pub const DEFAULT_T_POINTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    /// `F(r, t) ≥ 0`.
    UncertaintyFunction,
    /// `S(t) + S(t + π/2) ≥ ln(πe)`.
    Pairwise,
    /// Pairwise relation at radius `sqrt(μ² + ν²)`.
    RDressed,
    /// Sum over the modes of a product state.
    Multimode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub r: f64,
    pub t_axis: Vec<f64>,
    pub f_values: Vec<f64>,
    pub min_f: f64,
    pub inequality: Inequality,
    pub passed: bool,
    pub margin: f64,
    pub tol: f64,
    pub method: String,
}

impl UncertaintyReport {
    /// Index of the smallest `F`.
    pub fn argmin(&self) -> usize {
        self.f_values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |(i, m), (j, &v)| if v < m { (j, v) } else { (i, m) })
            .0
    }

    pub fn max_f(&self) -> f64 {
        self.f_values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairwiseCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// `n` equally spaced angles `kπ/n` on `[0, π)`.
pub fn default_t_axis(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 * PI / n as f64).collect()
}

/// `F_G(t) = (1/2) ln(1 + ((1 − σ⁴)/(2σ²))² sin²2t)` for a waist-`σ` Gaussian.
pub fn gaussian_uncertainty_closed_form(sigma: f64, t: f64) -> f64 {
    let a = (1.0 - sigma.powi(4)) / (2.0 * sigma * sigma);
    let s = (2.0 * t).sin();
    0.5 * (a * a * s * s).ln_1p()
}

/// `F(t) = ln 2 + (1/2) ln(σ_XX(t) σ_XX(t + π/2))` for a covariance state.
pub fn covariance_uncertainty_closed_form(state: &GaussianCovarianceState, t: f64) -> f64 {
    let (c, s) = (t.cos(), t.sin());
    let a = state.quadrature_variance(c, s);
    let b = state.quadrature_variance(-s, c);
    2f64.ln() + 0.5 * (a * b).ln()
}

/// Angle shifted by `π/2` and reduced to `[0, π)`.
fn conjugate_angle(t: f64) -> f64 {
    let u = (t + FRAC_PI_2).rem_euclid(PI);
    if u >= PI {
        0.0
    } else {
        u
    }
}

type CurveFn<'a> = Box<dyn Fn(f64) -> f64 + 'a>;

fn radius_params(r: f64, t: f64) -> (f64, f64) {
    let (c, s) = optical_params(t);
    (r * c, r * s)
}

impl Engine {
    pub fn tol_f(&self) -> f64 {
        if self.is_strict() {
            STRICT_TOL_F
        } else {
            TOL_F
        }
    }

    fn closed_form_uncertainty<'s>(&self, state: &'s State) -> Result<Option<CurveFn<'s>>> {
        let comps = Self::components(state);
        let [(_, c)] = comps.as_slice() else {
            return Ok(None);
        };
        if self.select(*c)?.entropy(*c, ChirpKernelParams::new(1.0, 0.0)?).is_none() {
            return Ok(None);
        }
        Ok(match *c {
            Component::Pure(PureState::GroundGaussian) => Some(Box::new(|_| 0.0)),
            Component::Pure(PureState::WaistGaussian { sigma }) => {
                let sigma = *sigma;
                Some(Box::new(move |t| gaussian_uncertainty_closed_form(sigma, t)))
            }
            Component::Covariance(g) => Some(Box::new(move |t| covariance_uncertainty_closed_form(g, t))),
            _ => None,
        })
    }

    /// `F(r, t) = S(r, t) + S(r, t + π/2) − ln r² − ln(πe)` over `t_axis`.
    pub fn uncertainty_function(&self, state: &State, r: f64, t_axis: &[f64]) -> Result<UncertaintyReport> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(invalid(format!("radius must be positive and finite, got {r}")));
        }
        if t_axis.is_empty() {
            return Err(invalid("angle axis is empty"));
        }
        if let Some(t) = t_axis.iter().find(|t| !t.is_finite()) {
            return Err(invalid(format!("angle must be finite, got {t}")));
        }
        let (f_values, method) = match self.closed_form_uncertainty(state)? {
            Some(f) => (t_axis.iter().map(|&t| f(t)).collect(), "closed-form"),
            None => (self.numeric_uncertainty(state, r, t_axis)?, "quadrature"),
        };
        let min_f = f_values.iter().copied().fold(f64::INFINITY, f64::min);
        if min_f.is_nan() {
            return Err(Error::InvariantViolation("uncertainty function is NaN".into()));
        }
        let tol = self.tol_f();
        Ok(UncertaintyReport {
            r,
            t_axis: t_axis.to_vec(),
            f_values,
            min_f,
            inequality: Inequality::UncertaintyFunction,
            passed: min_f >= -tol,
            margin: min_f,
            tol,
            method: method.into(),
        })
    }

    fn numeric_uncertainty(&self, state: &State, r: f64, t_axis: &[f64]) -> Result<Vec<f64>> {
        // Angles are reduced mod π; the tomogram is even under (μ, ν) → (−μ, −ν).
        let mut angles: Vec<f64> = t_axis
            .iter()
            .flat_map(|&t| [t.rem_euclid(PI), conjugate_angle(t)])
            .collect();
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        let entropies = angles
            .par_iter()
            .map(|&t| {
                let (mu, nu) = radius_params(r, t);
                self.symplectic_entropy(state, mu, nu).map(|s| s.value)
            })
            .collect::<Result<Vec<_>>>()?;
        let lookup = |t: f64| {
            let i = angles.partition_point(|&a| a < t - 1e-13);
            entropies[i.min(angles.len() - 1)]
        };
        let shift = 2.0 * r.ln() + LN_PI_E;
        Ok(t_axis
            .iter()
            .map(|&t| lookup(t.rem_euclid(PI)) + lookup(conjugate_angle(t)) - shift)
            .collect())
    }

    /// `S(cos t, sin t) + S(−sin t, cos t)` against `ln(πe)`.
    pub fn check_pairwise(&self, state: &State, t: f64) -> Result<PairwiseCheck> {
        let (c, s) = optical_params(t);
        let lhs = self.symplectic_entropy(state, c, s)?.value + self.symplectic_entropy(state, -s, c)?.value;
        Ok(PairwiseCheck {
            lhs,
            rhs: LN_PI_E,
            margin: lhs - LN_PI_E,
        })
    }

    /// Pairwise margin at radius `ρ = sqrt(μ² + ν²)`:
    /// `S(ρ cos t, ρ sin t) + S(−ρ sin t, ρ cos t) − ln ρ² − ln(πe)`.
    pub fn check_r_dressed(&self, state: &State, mu: f64, nu: f64, t: f64) -> Result<f64> {
        let rho = ChirpKernelParams::new(mu, nu)?.radius();
        let (c, s) = optical_params(t);
        let a = self.symplectic_entropy(state, rho * c, rho * s)?.value;
        let b = self.symplectic_entropy(state, -rho * s, rho * c)?.value;
        Ok(a + b - 2.0 * rho.ln() - LN_PI_E)
    }

    /// Sum of the dressed pairwise margins over the modes; `modes[k] = (μ_k, ν_k, t_k)`.
    pub fn check_multimode(&self, state: &ProductState, modes: &[(f64, f64, f64)]) -> Result<f64> {
        if modes.len() != state.len() {
            return Err(Error::Dimension {
                expected: state.len(),
                got: modes.len(),
            });
        }
        state
            .modes()
            .iter()
            .zip(modes)
            .map(|(s, &(mu, nu, t))| self.check_r_dressed(s, mu, nu, t))
            .sum()
    }
}

pub fn uncertainty_function(state: &State, r: f64, t_axis: &[f64]) -> Result<UncertaintyReport> {
    Engine::new().uncertainty_function(state, r, t_axis)
}

pub fn check_pairwise(state: &State, t: f64) -> Result<PairwiseCheck> {
    Engine::new().check_pairwise(state, t)
}

pub fn check_r_dressed(state: &State, mu: f64, nu: f64, t: f64) -> Result<f64> {
    Engine::new().check_r_dressed(state, mu, nu, t)
}

pub fn check_multimode(state: &ProductState, modes: &[(f64, f64, f64)]) -> Result<f64> {
    Engine::new().check_multimode(state, modes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn waist(sigma: f64) -> State {
        PureState::waist(sigma).unwrap().into()
    }

    fn soliton(l: f64) -> State {
        PureState::soliton(l).unwrap().into()
    }

    #[test]
    fn gaussian_closed_form_values() {
        assert!((gaussian_uncertainty_closed_form(2.0, PI / 4.0) - (17f64 / 8.0).ln()).abs() < 1e-15);
        for k in 0..64 {
            let t = k as f64 * 0.1;
            assert_eq!(gaussian_uncertainty_closed_form(1.0, t), 0.0);
        }
        assert!(gaussian_uncertainty_closed_form(4.0, 0.0).abs() < 1e-16);
        assert!(gaussian_uncertainty_closed_form(4.0, FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn gaussian_numeric_matches_closed_form() {
        let fft = Engine::new().force_fft(true);
        let axis = default_t_axis(32);
        for sigma in [2.0, 4.0] {
            let rep = fft.uncertainty_function(&waist(sigma), 1.0, &axis).unwrap();
            assert_eq!(rep.method, "quadrature");
            for (t, f) in axis.iter().zip(&rep.f_values) {
                let exact = gaussian_uncertainty_closed_form(sigma, *t);
                assert!((f - exact).abs() < 1e-5, "σ={sigma} t={t}: {f} vs {exact}");
            }
        }
    }

    #[test]
    fn covariance_closed_form_is_entropy_sum() {
        let g = GaussianCovarianceState::new(0.8, 1.3, 0.2).unwrap();
        let st: State = g.into();
        let e = Engine::new();
        for t in [0.0, 0.4, 1.1, 2.9] {
            let p = e.check_pairwise(&st, t).unwrap();
            assert!((p.margin - covariance_uncertainty_closed_form(&g, t)).abs() < 1e-13);
        }
    }

    #[test]
    fn thermal_margin_is_log_coth() {
        for beta in [0.5, 1.0, 2.0] {
            let st: State = GaussianCovarianceState::thermal(beta).unwrap().into();
            let m = check_pairwise(&st, 0.3).unwrap().margin;
            assert!((m - (1.0 / (beta / 2.0).tanh()).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn uncorrelated_covariance_minimum() {
        let g = GaussianCovarianceState::new(2.0, 0.5, 0.0).unwrap();
        let rep = uncertainty_function(&g.into(), 1.0, &default_t_axis(256)).unwrap();
        assert!((rep.min_f - (2.0 * (2.0f64 * 0.5).sqrt()).ln()).abs() < 1e-12);
        let g = GaussianCovarianceState::new(3.0, 1.0 / 12.0, 0.0).unwrap();
        let rep = uncertainty_function(&g.into(), 1.0, &default_t_axis(256)).unwrap();
        assert!(rep.min_f.abs() < 1e-12);
    }

    #[test]
    fn ground_pairwise_and_dressed() {
        let g = State::ground();
        assert!(check_pairwise(&g, 0.0).unwrap().margin.abs() < 1e-14);
        assert!(check_r_dressed(&g, 2f64.sqrt(), 2f64.sqrt(), 0.7).unwrap().abs() < 1e-8);
    }

    #[test]
    fn soliton_curve_properties() {
        let axis = default_t_axis(64);
        let rep = uncertainty_function(&soliton(2.0), 1.0, &axis).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.method, "quadrature");
        assert!(rep.min_f > 0.0);
        for i in 0..32 {
            assert!((rep.f_values[i] - rep.f_values[i + 32]).abs() < 1e-12);
        }
        let i = rep.argmin();
        assert!(i == 0 || i == 32, "minimum at index {i}");
        let f0 = 4.0 - (2.0 * PI).ln() - LN_PI_E;
        assert!((rep.f_values[0] - f0).abs() < 1e-6, "{} vs {f0}", rep.f_values[0]);
    }

    #[test]
    fn radius_independence() {
        let axis = default_t_axis(16);
        let base = uncertainty_function(&soliton(3.0), 1.0, &axis).unwrap();
        for r in [0.5, 2.0, 5.0] {
            let rep = uncertainty_function(&soliton(3.0), r, &axis).unwrap();
            for (a, b) in rep.f_values.iter().zip(&base.f_values) {
                assert!((a - b).abs() < 1e-5, "r={r}");
            }
        }
    }

    #[test]
    fn dressed_matches_pairwise() {
        let e = Engine::new();
        let st = soliton(2.0);
        for k in 0..4 {
            let t = k as f64 * PI / 4.0 + 0.1;
            let p = e.check_pairwise(&st, t).unwrap().margin;
            let d = e.check_r_dressed(&st, 1.0, 1.0, t).unwrap();
            assert!((p - d).abs() < 1e-6, "t={t}: {p} vs {d}");
        }
    }

    #[test]
    fn multimode_ground_equality_and_additivity() {
        let p = ProductState::ground(3).unwrap();
        let modes = [(0.3, 1.2, 0.1), (1.0, 0.0, 2.0), (-2.0, 0.5, 0.77)];
        assert!(check_multimode(&p, &modes).unwrap().abs() < 3e-8);
        assert!(check_multimode(&p, &modes[..2]).is_err());

        let prod = ProductState::new(vec![waist(2.0), soliton(3.0)]).unwrap();
        let m = [(1.0, 0.5, 0.3), (0.4, 0.9, 1.2)];
        let whole = check_multimode(&prod, &m).unwrap();
        let parts = check_r_dressed(&waist(2.0), 1.0, 0.5, 0.3).unwrap() + check_r_dressed(&soliton(3.0), 0.4, 0.9, 1.2).unwrap();
        assert!((whole - parts).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(uncertainty_function(&State::ground(), 0.0, &[0.0]).is_err());
        assert!(uncertainty_function(&State::ground(), 1.0, &[]).is_err());
        assert!(uncertainty_function(&State::ground(), 1.0, &[f64::NAN]).is_err());
    }

    #[test]
    fn conjugate_angle_wraps() {
        assert_eq!(conjugate_angle(0.0), FRAC_PI_2);
        assert!((conjugate_angle(3.0 * PI / 4.0) - PI / 4.0).abs() < 1e-15);
    }
}

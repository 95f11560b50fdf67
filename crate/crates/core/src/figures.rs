//! Uncertainty-function curves for Gaussian waists and solitons.

use crate::error::Result;
use crate::states::{PureState, State};
use crate::tomogram::Engine;
use crate::uncertainty::{default_t_axis, gaussian_uncertainty_closed_form};

pub const GAUSSIAN_WAISTS: [f64; 2] = [2.0, 4.0];
pub const SOLITON_WIDTHS: [f64; 3] = [2.0, 3.0, 4.0];

#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Curve {
    pub sigma: f64,
    pub closed: Vec<f64>,
    pub numeric: Vec<f64>,
    pub max_discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig1 {
    pub t_axis: Vec<f64>,
    pub curves: Vec<Fig1Curve>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Curve {
    pub l_z: f64,
    pub f_values: Vec<f64>,
    pub min_f: f64,
    pub max_f: f64,
    pub argmin_t: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2 {
    pub t_axis: Vec<f64>,
    pub curves: Vec<Fig2Curve>,
}

/// Closed-form and FFT-evaluated `F(t)` for each waist.
pub fn fig1(engine: &Engine, sigmas: &[f64], t_points: usize) -> Result<Fig1> {
    let t_axis = default_t_axis(t_points);
    let numeric_engine = engine.clone().force_fft(true);
    let curves = sigmas
        .iter()
        .map(|&sigma| {
            let state: State = PureState::waist(sigma)?.into();
            let numeric = numeric_engine.uncertainty_function(&state, 1.0, &t_axis)?.f_values;
            let closed: Vec<f64> = t_axis.iter().map(|&t| gaussian_uncertainty_closed_form(sigma, t)).collect();
            let max_discrepancy = closed
                .iter()
                .zip(&numeric)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Ok(Fig1Curve {
                sigma,
                closed,
                numeric,
                max_discrepancy,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Fig1 { t_axis, curves })
}

/// Numeric `F(t)` for each soliton width.
pub fn fig2(engine: &Engine, widths: &[f64], t_points: usize) -> Result<Fig2> {
    let t_axis = default_t_axis(t_points);
    let curves = widths
        .iter()
        .map(|&l_z| {
            let state: State = PureState::soliton(l_z)?.into();
            let rep = engine.uncertainty_function(&state, 1.0, &t_axis)?;
            Ok(Fig2Curve {
                l_z,
                min_f: rep.min_f,
                max_f: rep.max_f(),
                argmin_t: t_axis[rep.argmin()],
                f_values: rep.f_values,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Fig2 { t_axis, curves })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_small() {
        let f = fig1(&Engine::new(), &GAUSSIAN_WAISTS, 16).unwrap();
        assert_eq!(f.curves.len(), 2);
        for c in &f.curves {
            assert!(c.max_discrepancy < 1e-5);
            assert_eq!(c.closed[0], 0.0);
        }
    }

    #[test]
    fn fig2_small() {
        let f = fig2(&Engine::new(), &SOLITON_WIDTHS, 8).unwrap();
        for c in &f.curves {
            assert!(c.min_f >= -1e-4);
            assert!(c.max_f >= c.min_f);
        }
    }
}

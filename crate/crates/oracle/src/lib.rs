//! Dense O(n²) reference transforms for test suites.
//!
//! Everything here is a direct discretization of an integral, with no FFTs
//! and no shared code with the production crate.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

/// Uniform lattice `y_k = start + k * step`.
#[derive(Debug, Clone, Copy)]
pub struct Lattice {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl Lattice {
    /// `len` points spanning `[-half, half]`.
    pub fn symmetric(half: f64, len: usize) -> Self {
        Self {
            start: -half,
            step: 2.0 * half / (len - 1) as f64,
            len,
        }
    }

    pub fn point(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|k| self.point(k)).collect()
    }
}

/// Reference wavefunctions written out independently.
pub mod wavefunctions {
    use super::*;

    pub fn ground(x: f64) -> C64 {
        C64::new(PI.powf(-0.25) * (-x * x / 2.0).exp(), 0.0)
    }

    pub fn waist(sigma: f64) -> impl Fn(f64) -> C64 {
        move |x| C64::new((-x * x / (2.0 * sigma * sigma)).exp() / (PI.powf(0.25) * sigma.sqrt()), 0.0)
    }

    pub fn soliton(l_z: f64) -> impl Fn(f64) -> C64 {
        move |x| C64::new(1.0 / ((2.0 * l_z).sqrt() * (x / l_z).cosh()), 0.0)
    }

    /// `N exp(−(a1 + i a2) x²)`, `N = (2 a1 / π)^{1/4}`.
    pub fn squeezed(a1: f64, a2: f64) -> impl Fn(f64) -> C64 {
        let n = (2.0 * a1 / PI).powf(0.25);
        move |x| n * (-C64::new(a1, a2) * x * x).exp()
    }
}

/// `(2π|ν|)^{-1/2} Σ_k ψ(y_k) exp(iμy_k²/2ν − iX y_k/ν) h` for each `X`.
pub fn tomogram_amplitude(psi: &dyn Fn(f64) -> C64, y: Lattice, mu: f64, nu: f64, xs: &[f64]) -> Vec<C64> {
    assert!(nu != 0.0, "the dense oracle needs ν ≠ 0");
    let chirped: Vec<(f64, C64)> = (0..y.len)
        .map(|k| {
            let yk = y.point(k);
            (yk, psi(yk) * C64::from_polar(1.0, mu * yk * yk / (2.0 * nu)))
        })
        .collect();
    let pref = y.step / (2.0 * PI * nu.abs()).sqrt();
    xs.iter()
        .map(|&x| {
            chirped
                .iter()
                .map(|&(yk, f)| f * C64::from_polar(1.0, -x * yk / nu))
                .sum::<C64>()
                * pref
        })
        .collect()
}

/// `|amplitude|²` of [`tomogram_amplitude`].
pub fn tomogram_density(psi: &dyn Fn(f64) -> C64, y: Lattice, mu: f64, nu: f64, xs: &[f64]) -> Vec<f64> {
    tomogram_amplitude(psi, y, mu, nu, xs)
        .into_iter()
        .map(|a| a.norm_sqr())
        .collect()
}

/// `(2π)^{-1/2} Σ_k ψ_k exp(−i p x_k) h` for each `p`.
pub fn fourier(psi: &[C64], x: Lattice, ps: &[f64]) -> Vec<C64> {
    let pref = x.step / (2.0 * PI).sqrt();
    ps.iter()
        .map(|&p| {
            psi.iter()
                .enumerate()
                .map(|(k, &f)| f * C64::from_polar(1.0, -p * x.point(k)))
                .sum::<C64>()
                * pref
        })
        .collect()
}

/// Fractional Fourier kernel
/// `exp[(i/2)(cot t (y² + X²) − 2Xy/sin t)] / sqrt(2πi sin t)` times the step,
/// as a matrix from the lattice `from` to the points `to`.
pub fn frft_matrix(from: Lattice, to: &[f64], t: f64) -> Vec<Vec<C64>> {
    let (s, c) = t.sin_cos();
    let cot = c / s;
    let pref = (C64::new(0.0, 2.0 * PI * s)).sqrt().inv() * from.step;
    let ys = from.points();
    to.iter()
        .map(|&xo| {
            ys.iter()
                .map(|&yi| pref * C64::from_polar(1.0, 0.5 * (cot * (yi * yi + xo * xo) - 2.0 * xo * yi / s)))
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<C64>], v: &[C64]) -> Vec<C64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `Σ |a_k − b_k| h`.
pub fn l1(a: &[f64], b: &[f64], h: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() * h
}

/// `sqrt(Σ |a_k − b_k|² h)`.
pub fn l2(a: &[C64], b: &[C64], h: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    (a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>() * h).sqrt()
}

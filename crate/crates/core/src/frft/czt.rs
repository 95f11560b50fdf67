//! Chirp-z evaluation of linear exponential sums.
//!
//! Evaluates `G_j = Σ_k f_k exp(s·i·ω_j·y_k)` with `y_k = y0 + k·h` and
//! `ω_j = ω0 + j·dω` on arbitrary (non-reciprocal) lattices. The product
//! `jk` is split as `(j² + k² − (j−k)²)/2`, turning the sum into a linear
//! convolution with a quadratic-phase chirp which is evaluated by FFT.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Uniform output frequency lattice `ω_j = start + j * step`.
#[derive(Debug, Clone, Copy)]
pub struct FrequencyAxis {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

/// Sign of the exponent: `Forward` is `exp(-iωy)`, `Backward` is `exp(+iωy)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Backward => 1.0,
        }
    }
}

#[inline]
fn cis(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

/// Computes `Σ_k f[k] exp(s·i·ω_j·(y0 + k·h))` for every `ω_j` on `axis`.
pub fn exp_sum(
    f: &[Complex64],
    y0: f64,
    h: f64,
    axis: FrequencyAxis,
    direction: Direction,
) -> Vec<Complex64> {
    let n = f.len();
    let m = axis.len;
    if n == 0 || m == 0 {
        return vec![Complex64::new(0.0, 0.0); m];
    }
    let s = direction.sign();
    let alpha = s * axis.step * h;
    let len = (n + m - 1).next_power_of_two();

    let mut a = vec![Complex64::new(0.0, 0.0); len];
    for (k, (slot, &fk)) in a.iter_mut().zip(f).enumerate() {
        let kf = k as f64;
        *slot = fk * cis(s * axis.start * kf * h + 0.5 * alpha * kf * kf);
    }

    // chirp b_d = exp(-iα d²/2) for d in [-(n-1), m-1], wrapped modulo len
    let mut b = vec![Complex64::new(0.0, 0.0); len];
    for (d, slot) in b.iter_mut().enumerate().take(m) {
        let df = d as f64;
        *slot = cis(-0.5 * alpha * df * df);
    }
    for d in 1..n {
        let df = d as f64;
        b[len - d] = cis(-0.5 * alpha * df * df);
    }

    PLANNER.with(|planner| {
        let mut planner = planner.borrow_mut();
        let fwd = planner.plan_fft_forward(len);
        let inv = planner.plan_fft_inverse(len);
        fwd.process(&mut a);
        fwd.process(&mut b);
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= *y;
        }
        inv.process(&mut a);
    });

    let scale = 1.0 / len as f64;
    (0..m)
        .map(|j| {
            let jf = j as f64;
            let omega = axis.start + jf * axis.step;
            a[j] * scale * cis(s * omega * y0 + 0.5 * alpha * jf * jf)
        })
        .collect()
}

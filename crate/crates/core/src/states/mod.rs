//! Catalog of one-mode states: analytic pure families, sampled wavefunctions,
//! convex mixtures and Gaussian covariance states, plus their exact moments.

mod family;

pub use family::{FamilyRegistry, StateFamily};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::frft::{self, TransformResult};
use crate::grid::Grid;

/// Default tolerance on `|Σ|ψ|²·h − 1|` for sampled wavefunctions.
pub const SAMPLED_NORM_TOL: f64 = 1e-6;

/// Tolerance on `Σλ_k − 1` for mixtures.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Window half-widths in units of the standard deviation.
const GAUSSIAN_TAIL: f64 = 9.0;
const SECH_TAIL: f64 = 16.0;
const SAMPLED_TAIL: f64 = 14.0;
const GAUSSIAN_AMPLITUDE_TAIL: f64 = 11.0;
const SECH_AMPLITUDE_TAIL: f64 = 33.0;

/// First and second moments of the quadratures `q` and `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean_q: f64,
    pub mean_p: f64,
    pub qq: f64,
    pub pp: f64,
    /// Symmetrized covariance `½⟨qp + pq⟩ − ⟨q⟩⟨p⟩`.
    pub qp: f64,
}

impl Moments {
    /// Variance of `X = μq + νp`.
    pub fn quadrature_variance(&self, mu: f64, nu: f64) -> f64 {
        mu * mu * self.qq + nu * nu * self.pp + 2.0 * mu * nu * self.qp
    }

    pub fn quadrature_mean(&self, mu: f64, nu: f64) -> f64 {
        mu * self.mean_q + nu * self.mean_p
    }

    pub fn correlation(&self) -> f64 {
        self.qp / (self.qq * self.pp).sqrt()
    }
}

/// `ψ(x) = N exp(−a x² + b x)` with `a = a1 + i·a2`, `a1 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedCorrelated {
    a: Complex64,
    b: Complex64,
    norm: f64,
}

impl SqueezedCorrelated {
    pub fn new(a1: f64, a2: f64, b: Complex64) -> Result<Self> {
        if !(a1 > 0.0) || !a1.is_finite() {
            return Err(invalid(format!("squeezed state needs a1 > 0, got {a1}")));
        }
        if !a2.is_finite() || !b.re.is_finite() || !b.im.is_finite() {
            return Err(invalid("squeezed state parameters must be finite"));
        }
        // ∫|ψ|² = |N|² sqrt(π/2a1) exp(Re(b)²/2a1)
        let norm = (2.0 * a1 / PI).powf(0.25) * (-b.re * b.re / (4.0 * a1)).exp();
        Ok(Self {
            a: Complex64::new(a1, a2),
            b,
            norm,
        })
    }

    /// Centred state with `σ_x² = 1/(4·a1)` and correlation coefficient `r`.
    pub fn with_correlation(a1: f64, r: f64) -> Result<Self> {
        if !(r.abs() < 1.0) {
            return Err(Error::InvariantViolation(format!(
                "correlation coefficient must satisfy |R| < 1, got {r}"
            )));
        }
        let a2 = -r * a1 / (1.0 - r * r).sqrt();
        Self::new(a1, a2, Complex64::new(0.0, 0.0))
    }

    pub fn a1(&self) -> f64 {
        self.a.re
    }

    pub fn a2(&self) -> f64 {
        self.a.im
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    fn psi(&self, x: f64) -> Complex64 {
        (-self.a * x * x + self.b * x).exp() * self.norm
    }

    fn psi_momentum(&self, p: f64) -> Complex64 {
        // N (2a)^{-1/2} exp((b − ip)² / 4a)
        let bp = self.b - Complex64::new(0.0, p);
        (bp * bp / (4.0 * self.a)).exp() * self.norm / (2.0 * self.a).sqrt()
    }

    fn moments(&self) -> Moments {
        let (a1, a2) = (self.a.re, self.a.im);
        let qq = 1.0 / (4.0 * a1);
        let mean_q = self.b.re / (2.0 * a1);
        // phase φ = −a2 x² + Im(b) x, local momentum φ' = −2a2 x + Im(b)
        Moments {
            mean_q,
            mean_p: -2.0 * a2 * mean_q + self.b.im,
            qq,
            pp: 4.0 * a2 * a2 * qq + a1,
            qp: -2.0 * a2 * qq,
        }
    }
}

/// Wavefunction supplied as samples on its own lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledState {
    grid: Grid,
    amplitudes: Vec<Complex64>,
    momentum: TransformResult,
    moments: Moments,
    norm_defect: f64,
}

impl SampledState {
    pub fn new(grid: Grid, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(grid, amplitudes, SAMPLED_NORM_TOL)
    }

    pub fn with_tolerance(grid: Grid, amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        if amplitudes.len() != grid.n_points() {
            return Err(Error::Dimension {
                expected: grid.n_points(),
                got: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(invalid("sampled amplitudes must be finite"));
        }
        let norm = frft::l2_norm_sqr(&amplitudes, &grid);
        let norm_defect = (norm - 1.0).abs();
        if norm_defect > tol {
            return Err(Error::Normalization {
                defect: norm_defect,
                tol,
            });
        }
        let n_fft = (2 * grid.n_points()).next_power_of_two();
        let momentum = frft::fourier_transform_padded(&amplitudes, &grid, n_fft)?;
        let moments = sampled_moments(&grid, &amplitudes, &momentum, norm)?;
        Ok(Self {
            grid,
            amplitudes,
            momentum,
            moments,
            norm_defect,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Zero-padded momentum wavefunction on its conjugate lattice.
    pub fn momentum(&self) -> &TransformResult {
        &self.momentum
    }

    pub fn norm_defect(&self) -> f64 {
        self.norm_defect
    }
}

fn sampled_moments(
    grid: &Grid,
    psi: &[Complex64],
    momentum: &TransformResult,
    norm: f64,
) -> Result<Moments> {
    let h = grid.step();
    let dens: Vec<f64> = psi.iter().map(|v| v.norm_sqr()).collect();
    let mean_q = grid.points().zip(&dens).map(|(x, d)| x * d).sum::<f64>() * h / norm;
    let qq = grid
        .points()
        .zip(&dens)
        .map(|(x, d)| (x - mean_q).powi(2) * d)
        .sum::<f64>()
        * h
        / norm;

    let pg = &momentum.grid;
    let pd = momentum.density();
    let pnorm = pg.integrate(&pd);
    let mean_p = pg.points().zip(&pd).map(|(p, d)| p * d).sum::<f64>() * pg.step() / pnorm;
    let pp = pg
        .points()
        .zip(&pd)
        .map(|(p, d)| (p - mean_p).powi(2) * d)
        .sum::<f64>()
        * pg.step()
        / pnorm;

    // spectral derivative ψ' = F⁻¹[ip ψ̃]; ½⟨qp+pq⟩ = ∫ x Im(ψ* ψ') dx
    let ip_phi: Vec<Complex64> = momentum
        .values
        .iter()
        .zip(pg.points())
        .map(|(v, p)| v * Complex64::new(0.0, p))
        .collect();
    let dpsi = frft::inverse_fourier_transform(&ip_phi, pg, grid)?.values;
    let sym = grid
        .points()
        .zip(psi.iter().zip(&dpsi))
        .map(|(x, (v, dv))| x * (v.conj() * dv).im)
        .sum::<f64>()
        * h
        / norm;
    Ok(Moments {
        mean_q,
        mean_p,
        qq,
        pp,
        qp: sym - mean_q * mean_p,
    })
}

/// One-mode pure state.
#[derive(Debug, Clone, PartialEq)]
pub enum PureState {
    /// Oscillator ground state `π^{-1/4} e^{−x²/2}`.
    GroundGaussian,
    /// `exp(−x²/2σ²) / (π^{1/4} σ^{1/2})`.
    WaistGaussian { sigma: f64 },
    SqueezedCorrelated(SqueezedCorrelated),
    /// Bright soliton `(2 l_z)^{-1/2} sech(x / l_z)`.
    Soliton { l_z: f64 },
    Sampled(SampledState),
}

impl PureState {
    pub fn waist(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(invalid(format!("Gaussian waist must be positive, got {sigma}")));
        }
        Ok(PureState::WaistGaussian { sigma })
    }

    pub fn soliton(l_z: f64) -> Result<Self> {
        if !(l_z > 0.0) || !l_z.is_finite() {
            return Err(invalid(format!("soliton width must be positive, got {l_z}")));
        }
        Ok(PureState::Soliton { l_z })
    }

    pub fn squeezed(a1: f64, a2: f64, b: Complex64) -> Result<Self> {
        SqueezedCorrelated::new(a1, a2, b).map(PureState::SqueezedCorrelated)
    }

    pub fn sampled(grid: Grid, amplitudes: Vec<Complex64>) -> Result<Self> {
        SampledState::new(grid, amplitudes).map(PureState::Sampled)
    }

    pub fn family(&self) -> &'static str {
        match self {
            PureState::GroundGaussian => "ground",
            PureState::WaistGaussian { .. } => "gaussian",
            PureState::SqueezedCorrelated(_) => "squeezed",
            PureState::Soliton { .. } => "soliton",
            PureState::Sampled(_) => "sampled",
        }
    }

    /// Analytic position wavefunction; `None` for sampled states.
    pub fn psi(&self, x: f64) -> Option<Complex64> {
        let re = |v: f64| Some(Complex64::new(v, 0.0));
        match self {
            PureState::GroundGaussian => re(PI.powf(-0.25) * (-0.5 * x * x).exp()),
            PureState::WaistGaussian { sigma } => {
                re((-x * x / (2.0 * sigma * sigma)).exp() / (PI.powf(0.25) * sigma.sqrt()))
            }
            PureState::SqueezedCorrelated(s) => Some(s.psi(x)),
            PureState::Soliton { l_z } => re(1.0 / ((2.0 * l_z).sqrt() * (x / l_z).cosh())),
            PureState::Sampled(_) => None,
        }
    }

    /// Analytic momentum wavefunction; `None` for sampled states.
    pub fn psi_momentum(&self, p: f64) -> Option<Complex64> {
        let re = |v: f64| Some(Complex64::new(v, 0.0));
        match self {
            PureState::GroundGaussian => re(PI.powf(-0.25) * (-0.5 * p * p).exp()),
            PureState::WaistGaussian { sigma } => {
                re((sigma * sigma / PI).powf(0.25) * (-0.5 * sigma * sigma * p * p).exp())
            }
            PureState::SqueezedCorrelated(s) => Some(s.psi_momentum(p)),
            PureState::Soliton { l_z } => {
                re(0.5 * (PI * l_z).sqrt() / (0.5 * PI * l_z * p).cosh())
            }
            PureState::Sampled(_) => None,
        }
    }

    pub fn moments(&self) -> Moments {
        let centred = |qq: f64, pp: f64| Moments {
            mean_q: 0.0,
            mean_p: 0.0,
            qq,
            pp,
            qp: 0.0,
        };
        match self {
            PureState::GroundGaussian => centred(0.5, 0.5),
            PureState::WaistGaussian { sigma } => {
                let s2 = sigma * sigma;
                centred(0.5 * s2, 0.5 / s2)
            }
            PureState::SqueezedCorrelated(s) => s.moments(),
            // |ψ|² = sech²(x/l)/2l has variance π² l²/12; |ψ̃|² likewise with l → 2/(π l)
            PureState::Soliton { l_z } => centred(PI * PI * l_z * l_z / 12.0, 1.0 / (3.0 * l_z * l_z)),
            PureState::Sampled(s) => s.moments,
        }
    }

    /// True if every tomogram of this state is Gaussian.
    pub fn is_gaussian(&self) -> bool {
        matches!(
            self,
            PureState::GroundGaussian
                | PureState::WaistGaussian { .. }
                | PureState::SqueezedCorrelated(_)
        )
    }

    /// Window half-width, in standard deviations, that captures the tails.
    pub fn tail_factor(&self) -> f64 {
        match self {
            PureState::Soliton { .. } => SECH_TAIL,
            PureState::Sampled(_) => SAMPLED_TAIL,
            _ => GAUSSIAN_TAIL,
        }
    }

    /// Half-width, in standard deviations, beyond which the amplitude itself
    /// (not its square) is below about `1e-13` of its peak.
    pub fn amplitude_tail_factor(&self) -> f64 {
        match self {
            PureState::Soliton { .. } => SECH_AMPLITUDE_TAIL,
            PureState::Sampled(_) => SAMPLED_TAIL,
            _ => GAUSSIAN_AMPLITUDE_TAIL,
        }
    }
}

/// Samples `ψ` on `grid` and reports `|Σ|ψ|²·h − 1|` alongside.
pub fn evaluate_wavefunction(state: &PureState, grid: &Grid) -> Result<(Vec<Complex64>, f64)> {
    let values = match state {
        PureState::Sampled(s) => {
            if s.grid.n_points() != grid.n_points() {
                return Err(Error::Dimension {
                    expected: s.grid.n_points(),
                    got: grid.n_points(),
                });
            }
            if s.grid != *grid {
                return Err(invalid("sampled state must be evaluated on its own grid"));
            }
            s.amplitudes.clone()
        }
        _ => grid
            .points()
            .map(|x| state.psi(x).expect("analytic state"))
            .collect(),
    };
    let defect = (frft::l2_norm_sqr(&values, grid) - 1.0).abs();
    Ok((values, defect))
}

/// Convex combination `Σ λ_k |ψ_k⟩⟨ψ_k|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    components: Vec<(f64, PureState)>,
}

impl MixedState {
    pub fn new(components: Vec<(f64, PureState)>) -> Result<Self> {
        if components.is_empty() {
            return Err(invalid("mixture needs at least one component"));
        }
        if let Some((w, _)) = components.iter().find(|(w, _)| !(*w >= 0.0) || !w.is_finite()) {
            return Err(invalid(format!("mixture weights must be nonnegative, got {w}")));
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(invalid(format!("mixture weights sum to {total}, expected 1")));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(f64, PureState)] {
        &self.components
    }

    pub fn moments(&self) -> Moments {
        let parts: Vec<(f64, Moments)> = self.components.iter().map(|(w, s)| (*w, s.moments())).collect();
        let mean_q: f64 = parts.iter().map(|(w, m)| w * m.mean_q).sum();
        let mean_p: f64 = parts.iter().map(|(w, m)| w * m.mean_p).sum();
        let mut out = Moments {
            mean_q,
            mean_p,
            qq: 0.0,
            pp: 0.0,
            qp: 0.0,
        };
        for (w, m) in parts {
            let (dq, dp) = (m.mean_q - mean_q, m.mean_p - mean_p);
            out.qq += w * (m.qq + dq * dq);
            out.pp += w * (m.pp + dp * dp);
            out.qp += w * (m.qp + dq * dp);
        }
        out
    }
}

/// Zero-mean Gaussian state given by its covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianCovarianceState {
    sigma_qq: f64,
    sigma_pp: f64,
    sigma_qp: f64,
}

impl GaussianCovarianceState {
    pub fn new(sigma_qq: f64, sigma_pp: f64, sigma_qp: f64) -> Result<Self> {
        if !(sigma_qq > 0.0) || !(sigma_pp > 0.0) || !sigma_qp.is_finite() {
            return Err(invalid(format!(
                "covariance needs σ_qq, σ_pp > 0 (got {sigma_qq}, {sigma_pp}, {sigma_qp})"
            )));
        }
        if !sigma_qq.is_finite() || !sigma_pp.is_finite() {
            return Err(invalid("covariance entries must be finite"));
        }
        let det = sigma_qq * sigma_pp - sigma_qp * sigma_qp;
        if det < 0.25 * (1.0 - 1e-12) {
            return Err(Error::InvariantViolation(format!(
                "σ_qq σ_pp − σ_qp² = {det} violates the bound 1/4"
            )));
        }
        Ok(Self {
            sigma_qq,
            sigma_pp,
            sigma_qp,
        })
    }

    /// Oscillator thermal state at inverse temperature `beta`.
    pub fn thermal(beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(invalid(format!("inverse temperature must be positive, got {beta}")));
        }
        let s = 0.5 / (0.5 * beta).tanh();
        Self::new(s, s, 0.0)
    }

    /// Squeezed thermal state: `σ_qq = (λ/2) coth(1/2β)`, `σ_pp = (1/2λ) coth(1/2β)`.
    pub fn squeezed_thermal(lambda: f64, beta: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(invalid(format!("squeezing parameter must be positive, got {lambda}")));
        }
        if !(beta > 0.0) {
            return Err(invalid(format!("beta must be positive, got {beta}")));
        }
        let coth = 1.0 / (0.5 / beta).tanh();
        Self::new(0.5 * lambda * coth, 0.5 * coth / lambda, 0.0)
    }

    pub fn sigma_qq(&self) -> f64 {
        self.sigma_qq
    }

    pub fn sigma_pp(&self) -> f64 {
        self.sigma_pp
    }

    pub fn sigma_qp(&self) -> f64 {
        self.sigma_qp
    }

    /// `σ_XX(μ, ν) = μ²σ_qq + ν²σ_pp + 2μνσ_qp`.
    pub fn quadrature_variance(&self, mu: f64, nu: f64) -> f64 {
        mu * mu * self.sigma_qq + nu * nu * self.sigma_pp + 2.0 * mu * nu * self.sigma_qp
    }

    pub fn moments(&self) -> Moments {
        Moments {
            mean_q: 0.0,
            mean_p: 0.0,
            qq: self.sigma_qq,
            pp: self.sigma_pp,
            qp: self.sigma_qp,
        }
    }
}

/// Any one-mode state accepted by the tomogram pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Mixed(MixedState),
    Gaussian(GaussianCovarianceState),
}

impl From<PureState> for State {
    fn from(s: PureState) -> Self {
        State::Pure(s)
    }
}

impl From<MixedState> for State {
    fn from(s: MixedState) -> Self {
        State::Mixed(s)
    }
}

impl From<GaussianCovarianceState> for State {
    fn from(s: GaussianCovarianceState) -> Self {
        State::Gaussian(s)
    }
}

impl State {
    pub fn ground() -> Self {
        State::Pure(PureState::GroundGaussian)
    }

    pub fn moments(&self) -> Moments {
        match self {
            State::Pure(s) => s.moments(),
            State::Mixed(m) => m.moments(),
            State::Gaussian(g) => g.moments(),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            State::Pure(s) => s.family(),
            State::Mixed(_) => "mixed",
            State::Gaussian(_) => "gaussian-cov",
        }
    }

    /// Interval `(center, half_width)` holding the tomogram at `(μ, ν)` down
    /// to negligible tail mass.
    pub fn support(&self, mu: f64, nu: f64) -> (f64, f64) {
        let one = |m: &Moments, tail: f64| {
            let c = m.quadrature_mean(mu, nu);
            let s = m.quadrature_variance(mu, nu).max(0.0).sqrt();
            (c - tail * s, c + tail * s)
        };
        let (lo, hi) = match self {
            State::Pure(s) => one(&s.moments(), s.tail_factor()),
            State::Gaussian(g) => one(&g.moments(), GAUSSIAN_TAIL),
            State::Mixed(m) => m
                .components
                .iter()
                .map(|(_, s)| one(&s.moments(), s.tail_factor()))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (c, d)| (a.min(c), b.max(d))),
        };
        (0.5 * (lo + hi), 0.5 * (hi - lo))
    }
}

/// Tensor product of one-mode states.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    modes: Vec<State>,
}

impl ProductState {
    pub fn new(modes: Vec<State>) -> Result<Self> {
        if modes.is_empty() {
            return Err(invalid("product state needs at least one mode"));
        }
        Ok(Self { modes })
    }

    /// `n` copies of the oscillator ground state.
    pub fn ground(n: usize) -> Result<Self> {
        Self::new(vec![State::ground(); n])
    }

    pub fn modes(&self) -> &[State] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }
}

pub fn position_variance(state: &State) -> f64 {
    state.moments().qq
}

pub fn momentum_variance(state: &State) -> f64 {
    state.moments().pp
}

/// Position-momentum correlation coefficient; errors if `|R| >= 1`.
pub fn correlation_coefficient(state: &State) -> Result<f64> {
    let r = state.moments().correlation();
    if !(r.abs() < 1.0) {
        return Err(Error::InvariantViolation(format!(
            "correlation coefficient |R| = {} is not below 1",
            r.abs()
        )));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::centered(0.0, 30.0, 6001).unwrap()
    }

    #[test]
    fn analytic_values_at_reference_points() {
        let g = PureState::GroundGaussian.psi(0.0).unwrap();
        assert!((g.re - 0.751_125_544_464_942_5).abs() < 1e-15);
        let s = PureState::soliton(2.0).unwrap().psi(0.0).unwrap();
        assert_eq!(s.re, 0.5);
        let w = PureState::waist(2.0).unwrap().psi(2.0).unwrap();
        let expect = (-0.5f64).exp() / (PI.powf(0.25) * 2f64.sqrt());
        assert!((w.re - expect).abs() < 1e-15);
        assert!((w.re - 0.322_145).abs() < 1e-6);
    }

    #[test]
    fn analytic_states_are_normalized() {
        let g = grid();
        let states = [
            PureState::GroundGaussian,
            PureState::waist(0.5).unwrap(),
            PureState::waist(3.0).unwrap(),
            PureState::squeezed(0.7, -0.4, Complex64::new(0.3, -0.8)).unwrap(),
            PureState::soliton(1.5).unwrap(),
        ];
        for s in &states {
            let (_, defect) = evaluate_wavefunction(s, &g).unwrap();
            assert!(defect < 1e-10, "{} {defect}", s.family());
        }
    }

    #[test]
    fn momentum_wavefunctions_are_fourier_pairs() {
        let g = Grid::centered(0.0, 80.0, 8001).unwrap();
        let states = [
            PureState::waist(2.0).unwrap(),
            PureState::squeezed(0.7, -0.4, Complex64::new(0.3, -0.8)).unwrap(),
            PureState::soliton(2.0).unwrap(),
        ];
        for s in &states {
            let (psi, _) = evaluate_wavefunction(s, &g).unwrap();
            let ft = frft::fourier_transform_padded(&psi, &g, 16384).unwrap();
            for (p, v) in ft.grid.points().zip(&ft.values).filter(|(p, _)| p.abs() < 3.0) {
                let expect = s.psi_momentum(p).unwrap();
                assert!((v - expect).norm() < 1e-9, "{} p={p}: {v} vs {expect}", s.family());
            }
        }
    }

    #[test]
    fn minimum_uncertainty_for_waist_gaussians() {
        for sigma in [0.3, 1.0, 2.0, 4.0, 7.5] {
            let m = PureState::waist(sigma).unwrap().moments();
            assert!((m.qq - 0.5 * sigma * sigma).abs() < 1e-14);
            assert!((m.qq * m.pp - 0.25).abs() < 1e-10);
            assert_eq!(m.qp, 0.0);
        }
        let m = PureState::GroundGaussian.moments();
        assert_eq!((m.qq, m.pp, m.qp), (0.5, 0.5, 0.0));
    }

    #[test]
    fn squeezed_correlated_product_rule() {
        for r in [-0.8, -0.3, 0.0, 0.3, 0.6, 0.9] {
            let s = SqueezedCorrelated::with_correlation(0.8, r).unwrap();
            let m = s.moments();
            assert!((m.correlation() - r).abs() < 1e-12);
            let expect = 0.25 / (1.0 - r * r);
            assert!((m.qq * m.pp - expect).abs() < 1e-12);
        }
        assert!(PureState::squeezed(0.0, 1.0, Complex64::new(0.0, 0.0)).is_err());
        assert!(PureState::squeezed(-1.0, 0.0, Complex64::new(0.0, 0.0)).is_err());
        assert!(SqueezedCorrelated::with_correlation(1.0, 1.0).is_err());
    }

    #[test]
    fn sampled_moments_match_analytic() {
        let g = Grid::centered(0.5, 20.0, 1024).unwrap();
        let analytic = PureState::squeezed(0.6, 0.35, Complex64::new(0.4, 1.1)).unwrap();
        let (psi, _) = evaluate_wavefunction(&analytic, &g).unwrap();
        let sampled = PureState::sampled(g, psi).unwrap();
        let (a, b) = (analytic.moments(), sampled.moments());
        for (x, y) in [
            (a.mean_q, b.mean_q),
            (a.mean_p, b.mean_p),
            (a.qq, b.qq),
            (a.pp, b.pp),
            (a.qp, b.qp),
        ] {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn sampled_validation() {
        let g = Grid::centered(0.0, 10.0, 256).unwrap();
        let (psi, _) = evaluate_wavefunction(&PureState::GroundGaussian, &g).unwrap();
        assert!(matches!(
            PureState::sampled(g, psi[..100].to_vec()),
            Err(Error::Dimension { .. })
        ));
        let scaled: Vec<Complex64> = psi.iter().map(|v| v * 0.9).collect();
        assert!(matches!(
            PureState::sampled(g, scaled),
            Err(Error::Normalization { .. })
        ));
        let s = PureState::sampled(g, psi).unwrap();
        let other = Grid::centered(0.0, 10.0, 128).unwrap();
        assert!(matches!(
            evaluate_wavefunction(&s, &other),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn mixture_validation_and_moments() {
        let bad = MixedState::new(vec![(0.5, PureState::GroundGaussian), (0.4, PureState::GroundGaussian)]);
        assert!(bad.is_err());
        assert!(MixedState::new(vec![(-0.1, PureState::GroundGaussian), (1.1, PureState::GroundGaussian)]).is_err());
        let m = MixedState::new(vec![
            (0.25, PureState::squeezed(0.5, 0.0, Complex64::new(1.0, 0.0)).unwrap()),
            (0.75, PureState::squeezed(0.5, 0.0, Complex64::new(-1.0, 0.0)).unwrap()),
        ])
        .unwrap();
        let mo = m.moments();
        // components centred at ±1 with σ² = 1/2
        assert!((mo.mean_q + 0.5).abs() < 1e-14);
        assert!((mo.qq - (0.5 + 0.75)).abs() < 1e-14);
    }

    #[test]
    fn covariance_bound_is_enforced() {
        assert!(GaussianCovarianceState::new(0.5, 0.5, 0.0).is_ok());
        assert!(GaussianCovarianceState::new(0.5, 0.4, 0.0).is_err());
        assert!(GaussianCovarianceState::new(1.0, 1.0, 0.9).is_err());
        assert!(GaussianCovarianceState::new(0.0, 1.0, 0.0).is_err());
        let t = GaussianCovarianceState::thermal(1.0).unwrap();
        assert!((t.sigma_qq() - 0.5 / (0.5f64).tanh()).abs() < 1e-15);
        let st = GaussianCovarianceState::squeezed_thermal(3.0, 0.5).unwrap();
        assert!((st.sigma_qq() * st.sigma_pp() - 0.25 / (1.0f64).tanh().powi(2)).abs() < 1e-12);
        assert!(GaussianCovarianceState::thermal(0.0).is_err());
    }

    #[test]
    fn correlation_coefficient_for_covariance_state() {
        let s: State = GaussianCovarianceState::new(2.0, 1.0, 0.5).unwrap().into();
        let r = correlation_coefficient(&s).unwrap();
        assert!((r - 0.5 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(position_variance(&s), 2.0);
        assert_eq!(momentum_variance(&s), 1.0);
    }
}

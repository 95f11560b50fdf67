//! Interchangeable tomogram evaluation methods.
//!
//! A [`TomogramMethod`] turns one mixture component into a density on an
//! output lattice. Methods are registered by name in a [`MethodRegistry`]
//! and the engine tries them in its configured preference order.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frft::{self, ChirpKernelParams, NU_GUARD};
use crate::grid::Grid;
use crate::states::{GaussianCovarianceState, Moments, PureState};

/// Largest internal quadrature lattice the chirp path will allocate.
pub const MAX_LATTICE: usize = 1 << 22;

const MIN_LATTICE: usize = 256;

/// Period headroom of the rectangle-rule alias images.
const ALIAS_MARGIN: f64 = 1.5;

/// One component of a (possibly mixed) one-mode state.
#[derive(Debug, Clone, Copy)]
pub enum Component<'a> {
    Pure(&'a PureState),
    Covariance(&'a GaussianCovarianceState),
}

impl Component<'_> {
    pub fn moments(&self) -> Moments {
        match self {
            Component::Pure(p) => p.moments(),
            Component::Covariance(c) => c.moments(),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Component::Pure(p) => p.family(),
            Component::Covariance(_) => "gaussian-cov",
        }
    }
}

pub trait TomogramMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn supports(&self, component: Component<'_>) -> bool;

    /// `w(X, μ, ν)` at every point of `grid`.
    fn density(&self, component: Component<'_>, k: ChirpKernelParams, grid: &Grid) -> Result<Vec<f64>>;

    /// Closed-form entropy, if this method has one for the component.
    fn entropy(&self, _component: Component<'_>, _k: ChirpKernelParams) -> Option<f64> {
        None
    }
}

/// Normal density with the given mean and variance.
pub fn gaussian_density(x: f64, mean: f64, variance: f64) -> f64 {
    (-(x - mean).powi(2) / (2.0 * variance)).exp() / (2.0 * PI * variance).sqrt()
}

/// Shannon entropy of a normal density: `1/2 + ln(2πσ²)/2`.
pub fn gaussian_entropy(variance: f64) -> f64 {
    0.5 + 0.5 * (2.0 * PI * variance).ln()
}

/// Closed-form tomogram of a waist-`σ` Gaussian at `μ = r cos t`, `ν = r sin t`.
pub fn waist_tomogram(sigma: f64, r: f64, t: f64, x: f64) -> f64 {
    let (s, c) = t.sin_cos();
    let d = s * s + sigma.powi(4) * c * c;
    sigma / (r * (PI * d).sqrt()) * (-(sigma * sigma * x * x) / (r * r * d)).exp()
}

/// Entropy of [`waist_tomogram`], written as `1/2 − ln[σ / (r sqrt(π(sin²t + σ⁴cos²t)))]`.
pub fn waist_entropy(sigma: f64, r: f64, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    let d = s * s + sigma.powi(4) * c * c;
    0.5 - (sigma / (r * (PI * d).sqrt())).ln()
}

/// Closed forms for every Gaussian component.
pub struct ClosedFormGaussian;

impl TomogramMethod for ClosedFormGaussian {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn supports(&self, component: Component<'_>) -> bool {
        match component {
            Component::Pure(p) => p.is_gaussian(),
            Component::Covariance(_) => true,
        }
    }

    fn density(&self, component: Component<'_>, k: ChirpKernelParams, grid: &Grid) -> Result<Vec<f64>> {
        let (mu, nu) = (k.mu(), k.nu());
        if let Component::Pure(PureState::WaistGaussian { sigma }) = component {
            let r = k.radius();
            let t = nu.atan2(mu);
            return Ok(grid.points().map(|x| waist_tomogram(*sigma, r, t, x)).collect());
        }
        let m = component.moments();
        let mean = m.quadrature_mean(mu, nu);
        let var = m.quadrature_variance(mu, nu);
        Ok(grid.points().map(|x| gaussian_density(x, mean, var)).collect())
    }

    fn entropy(&self, component: Component<'_>, k: ChirpKernelParams) -> Option<f64> {
        if !self.supports(component) {
            return None;
        }
        if let Component::Pure(PureState::WaistGaussian { sigma }) = component {
            return Some(waist_entropy(*sigma, k.radius(), k.nu().atan2(k.mu())));
        }
        let var = component.moments().quadrature_variance(k.mu(), k.nu());
        Some(gaussian_entropy(var))
    }
}

/// Chirp-convolution quadrature of the tomogram integral for pure states.
///
/// With `|ν| >= |μ|` the position wavefunction is chirped by `exp(iμy²/2ν)`
/// and summed at frequencies `X/ν`. Otherwise the same integral is taken over
/// the momentum wavefunction with parameters `(ν, −μ)`, which keeps the chirp
/// rate at most one. Analytic states are sampled on internal lattices sized
/// so that the alias images of the rectangle rule fall outside the support.
pub struct ChirpFft;

impl ChirpFft {
    fn analytic_lattice(
        center: f64,
        half_width: f64,
        scale: f64,
        out: &Grid,
        tomo_center: f64,
        tomo_half: f64,
    ) -> Result<Grid> {
        let reach = (out.x_min() - tomo_center)
            .abs()
            .max((out.x_max() - tomo_center).abs());
        let period = ALIAS_MARGIN * (reach + tomo_half);
        let h_alias = 2.0 * PI * scale / period;
        let h = h_alias.min(2.0 * half_width / (MIN_LATTICE - 1) as f64);
        let n = (2.0 * half_width / h).ceil() as usize + 1;
        if n > MAX_LATTICE {
            return Err(Error::LatticeTooLarge {
                points: n,
                limit: MAX_LATTICE,
            });
        }
        Grid::centered(center, half_width, n)
    }

    fn pure_density(state: &PureState, k: ChirpKernelParams, out: &Grid) -> Result<Vec<f64>> {
        let (mu, nu) = (k.mu(), k.nu());
        if !matches!(state, PureState::Sampled(_)) {
            // exact marginal limits
            if nu.abs() < NU_GUARD {
                return Ok(out
                    .points()
                    .map(|x| state.psi(x / mu).unwrap().norm_sqr() / mu.abs())
                    .collect());
            }
            if mu.abs() < NU_GUARD {
                return Ok(out
                    .points()
                    .map(|x| state.psi_momentum(x / nu).unwrap().norm_sqr() / nu.abs())
                    .collect());
            }
        }
        let m = state.moments();
        let tail = state.tail_factor();
        let tomo_center = m.quadrature_mean(mu, nu);
        let tomo_half = tail * m.quadrature_variance(mu, nu).max(0.0).sqrt();
        let position_route = nu.abs() >= mu.abs();
        let amp_tail = state.amplitude_tail_factor();

        let amp = match (state, position_route) {
            (PureState::Sampled(s), true) => frft::chirp_tomogram_amplitude(s.amplitudes(), s.grid(), k, out)?,
            (PureState::Sampled(s), false) => {
                let mom = s.momentum();
                frft::chirp_tomogram_amplitude(&mom.values, &mom.grid, ChirpKernelParams::new(nu, -mu)?, out)?
            }
            (_, true) => {
                let lat = Self::analytic_lattice(m.mean_q, amp_tail * m.qq.sqrt(), nu.abs(), out, tomo_center, tomo_half)?;
                let psi: Vec<Complex64> = lat.points().map(|y| state.psi(y).unwrap()).collect();
                frft::chirp_tomogram_amplitude(&psi, &lat, k, out)?
            }
            (_, false) => {
                let lat = Self::analytic_lattice(m.mean_p, amp_tail * m.pp.sqrt(), mu.abs(), out, tomo_center, tomo_half)?;
                let phi: Vec<Complex64> = lat.points().map(|p| state.psi_momentum(p).unwrap()).collect();
                frft::chirp_tomogram_amplitude(&phi, &lat, ChirpKernelParams::new(nu, -mu)?, out)?
            }
        };
        Ok(amp.density())
    }
}

impl TomogramMethod for ChirpFft {
    fn name(&self) -> &'static str {
        "chirp-fft"
    }

    fn supports(&self, component: Component<'_>) -> bool {
        matches!(component, Component::Pure(_))
    }

    fn density(&self, component: Component<'_>, k: ChirpKernelParams, grid: &Grid) -> Result<Vec<f64>> {
        match component {
            Component::Pure(p) => Self::pure_density(p, k, grid),
            Component::Covariance(_) => Err(Error::NoMethod(format!(
                "{} cannot evaluate a covariance-only state",
                self.name()
            ))),
        }
    }
}

/// Named collection of tomogram methods.
#[derive(Clone)]
pub struct MethodRegistry {
    methods: Vec<Arc<dyn TomogramMethod>>,
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}

impl MethodRegistry {
    pub fn empty() -> Self {
        Self { methods: Vec::new() }
    }

    pub fn with_builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(ClosedFormGaussian));
        r.register(Box::new(ChirpFft));
        r
    }

    /// Adds a method, replacing any previous one with the same name.
    pub fn register(&mut self, method: Box<dyn TomogramMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(Arc::from(method));
    }

    pub fn get(&self, name: &str) -> Option<&dyn TomogramMethod> {
        self.methods.iter().find(|m| m.name() == name).map(|m| m.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn waist_forms_match_general_gaussian() {
        for sigma in [0.5, 1.0, 2.0, 4.0] {
            let m = PureState::waist(sigma).unwrap().moments();
            for &(r, t) in &[(1.0, 0.0), (1.0, 0.7), (2.5, 1.9), (0.3, -0.4)] {
                let (mu, nu) = (r * f64::cos(t), r * f64::sin(t));
                let var = m.quadrature_variance(mu, nu);
                for x in [-3.0, -0.2, 0.0, 1.7] {
                    let a = waist_tomogram(sigma, r, t, x);
                    let b = gaussian_density(x, 0.0, var);
                    assert!((a - b).abs() < 1e-13 * b.max(1.0));
                }
                assert!((waist_entropy(sigma, r, t) - gaussian_entropy(var)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn registry_lookup_and_replacement() {
        let mut r = MethodRegistry::with_builtin();
        assert_eq!(r.names(), vec!["closed-form", "chirp-fft"]);
        r.register(Box::new(ChirpFft));
        assert_eq!(r.names().len(), 2);
        assert!(r.get("chirp-fft").is_some());
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn support_matrix() {
        let soliton = PureState::soliton(2.0).unwrap();
        let thermal = GaussianCovarianceState::thermal(1.0).unwrap();
        assert!(!ClosedFormGaussian.supports(Component::Pure(&soliton)));
        assert!(ClosedFormGaussian.supports(Component::Covariance(&thermal)));
        assert!(ChirpFft.supports(Component::Pure(&soliton)));
        assert!(!ChirpFft.supports(Component::Covariance(&thermal)));
    }
}

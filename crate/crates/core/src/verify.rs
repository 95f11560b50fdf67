//! Invariant suite over a fixed catalog of states.
//!
//! Each check reports a `margin`. For inequalities it is `lhs − rhs` and the
//! check passes when `margin ≥ −tolerance`; for identities it is the largest
//! residual and the check passes when `|margin| ≤ tolerance`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::Grid;
use crate::states::{self, GaussianCovarianceState, MixedState, ProductState, PureState, SqueezedCorrelated, State};
use crate::tomogram::{homogeneity_rescale, optical_params, Engine};
use crate::LN_PI_E;

pub const NORMALIZATION_TOL: f64 = 1e-6;
pub const HOMOGENEITY_TOL: f64 = 1e-6;
pub const ADDITIVITY_TOL: f64 = 1e-5;
pub const IDENTITY_TOL: f64 = 1e-6;
pub const GROUND_EQUALITY_TOL: f64 = 1e-8;
pub const VARIANCE_TOL: f64 = 1e-10;
pub const CORRELATED_TOL: f64 = 1e-5;

/// Factor applied to densities by the negative-control mode.
pub const TAMPER_FACTOR: f64 = 0.9;

/// Scale factors used by the homogeneity and additivity checks.
pub const LAMBDAS: [f64; 3] = [-2.0, 0.5, 3.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Inequality,
    Identity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub state: String,
    pub kind: CheckKind,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(check: &str, state: &str, kind: CheckKind, margin: f64, tolerance: f64) -> Self {
        let pass = match kind {
            CheckKind::Inequality => margin >= -tolerance,
            CheckKind::Identity => margin.abs() <= tolerance,
        };
        Self {
            check: check.into(),
            state: state.into(),
            kind,
            margin,
            tolerance,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub passed: bool,
    pub strict: bool,
    pub tampered: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Symplectic parameter points probed by the per-state checks.
pub fn parameter_points() -> [(f64, f64); 8] {
    let (c, s) = (0.3f64.cos(), 0.3f64.sin());
    [
        (1.0, 0.0),
        (0.0, 1.0),
        (c, s),
        (0.6, 1.7),
        (-1.2, 0.4),
        (2.0, 0.7),
        (0.5, -0.5),
        (1.5, 2.5),
    ]
}

fn angles() -> Vec<f64> {
    (0..8).map(|k| k as f64 * PI / 8.0 + 0.05).collect()
}

/// Labelled states the suite runs over.
pub fn catalog() -> Result<Vec<(String, State)>> {
    Ok(vec![
        ("ground".into(), State::ground()),
        ("gaussian:sigma=2".into(), PureState::waist(2.0)?.into()),
        (
            "squeezed:a1=0.5,R=0.6".into(),
            PureState::SqueezedCorrelated(SqueezedCorrelated::with_correlation(0.5, 0.6)?).into(),
        ),
        ("soliton:lz=2".into(), PureState::soliton(2.0)?.into()),
        ("thermal:beta=1".into(), GaussianCovarianceState::thermal(1.0)?.into()),
        (
            "mixed:0.3*ground+0.7*soliton(lz=3)".into(),
            MixedState::new(vec![(0.3, PureState::GroundGaussian), (0.7, PureState::soliton(3.0)?)])?.into(),
        ),
    ])
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |a: f64, b| if b.abs() > a.abs() || b.is_nan() { b } else { a })
}

fn lowest(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, |a, b| if b < a || b.is_nan() { b } else { a })
}

struct Suite<'a> {
    engine: &'a Engine,
    tamper: bool,
    tol_f: f64,
    out: Vec<CheckResult>,
}

impl Suite<'_> {
    fn push(&mut self, check: &str, state: &str, kind: CheckKind, margin: f64, tol: f64) {
        log::debug!("{check} [{state}]: margin {margin:e}");
        self.out.push(CheckResult::new(check, state, kind, margin, tol));
    }

    fn s(&self, state: &State, mu: f64, nu: f64) -> Result<f64> {
        Ok(self.engine.symplectic_entropy(state, mu, nu)?.value)
    }

    fn per_state(&mut self, label: &str, state: &State) -> Result<()> {
        let e = self.engine;
        let points = parameter_points();

        let mut defects = Vec::new();
        let mut homogeneity = Vec::new();
        let mut additivity = Vec::new();
        for &(mu, nu) in &points {
            let grid = e.auto_grid(state, mu, nu)?;
            let mut tom = e.symplectic_tomogram(state, mu, nu, &grid)?;
            if self.tamper {
                tom = tom.scaled(TAMPER_FACTOR);
            }
            defects.push(tom.mass() - 1.0);
            for &lambda in &LAMBDAS {
                let rescaled = homogeneity_rescale(&tom, lambda)?;
                let direct = e.symplectic_tomogram(state, lambda * mu, lambda * nu, &rescaled.grid)?;
                let direct = if self.tamper { direct.scaled(TAMPER_FACTOR) } else { direct };
                homogeneity.push(rescaled.l1_distance(&direct)?);
                additivity.push(e.additivity_check(state, mu, nu, lambda)?);
            }
        }
        self.push("normalization", label, CheckKind::Identity, worst(defects), NORMALIZATION_TOL);
        self.push("homogeneity", label, CheckKind::Identity, worst(homogeneity), HOMOGENEITY_TOL);
        self.push("additivity", label, CheckKind::Identity, worst(additivity), ADDITIVITY_TOL);

        // w_F(X/μ, ν/μ) = |μ| w(X, μ, ν)
        let (mu, nu) = (2.0, 0.7);
        let grid = e.auto_grid(state, mu, nu)?;
        let w = e.symplectic_tomogram(state, mu, nu, &grid)?;
        let fgrid = Grid::new(grid.x_min() / mu, grid.step() / mu, grid.n_points())?;
        let wf = e.fresnel_tomogram(state, nu / mu, &fgrid)?;
        let l1: f64 = wf
            .density
            .iter()
            .zip(&w.density)
            .map(|(a, b)| (a - mu.abs() * b).abs())
            .sum::<f64>()
            * fgrid.step();
        self.push("fresnel-scaling", label, CheckKind::Identity, l1, IDENTITY_TOL);

        let sx = self.s(state, 1.0, 0.0)?;
        let sp = self.s(state, 0.0, 1.0)?;
        self.push("position-momentum", label, CheckKind::Inequality, sx + sp - LN_PI_E, self.tol_f);

        let ts = angles();
        let mut optical = Vec::new();
        let mut symplectic = Vec::new();
        let mut reduction = Vec::new();
        let mut dressed = Vec::new();
        let rho = 2f64.sqrt();
        for &t in &ts {
            let a = e.optical_entropy(state, t)?.value;
            let b = e.optical_entropy(state, t + PI / 2.0)?.value;
            optical.push(a + b - LN_PI_E);
            let p = e.check_pairwise(state, t)?.margin;
            symplectic.push(p);
            let (c, s) = optical_params(t);
            reduction.push(a - (self.s(state, rho * c, rho * s)? - rho.ln()));
            let d = e.check_r_dressed(state, 1.0, 1.0, t)?;
            dressed.push((d, d - p));
        }
        self.push("pairwise-optical", label, CheckKind::Inequality, lowest(optical), self.tol_f);
        self.push("pairwise-symplectic", label, CheckKind::Inequality, lowest(symplectic), self.tol_f);
        self.push("radius-reduction", label, CheckKind::Identity, worst(reduction), IDENTITY_TOL);
        self.push(
            "r-dressed",
            label,
            CheckKind::Inequality,
            lowest(dressed.iter().map(|d| d.0)),
            self.tol_f,
        );
        self.push(
            "r-dressed-consistency",
            label,
            CheckKind::Identity,
            worst(dressed.iter().map(|d| d.1)),
            IDENTITY_TOL,
        );
        Ok(())
    }

    fn global(&mut self, catalog: &[(String, State)]) -> Result<()> {
        let e = self.engine;

        let g = State::ground();
        let m = self.s(&g, 1.0, 0.0)? + self.s(&g, 0.0, 1.0)? - LN_PI_E;
        self.push("ground-equality", "ground", CheckKind::Identity, m, GROUND_EQUALITY_TOL);

        let modes = [(0.3, 1.2, 0.1), (1.0, 0.0, 2.0), (-2.0, 0.5, 0.77)];
        let m = e.check_multimode(&ProductState::ground(3)?, &modes)?;
        self.push("multimode-ground-equality", "ground^3", CheckKind::Identity, m, 3.0 * GROUND_EQUALITY_TOL);

        let product = ProductState::new(catalog.iter().map(|(_, s)| s.clone()).collect())?;
        let modes: Vec<(f64, f64, f64)> = (0..product.len())
            .map(|k| {
                let (mu, nu) = parameter_points()[k + 2];
                (mu, nu, 0.2 + 0.4 * k as f64)
            })
            .collect();
        let m = e.check_multimode(&product, &modes)?;
        self.push(
            "multimode",
            "catalog product",
            CheckKind::Inequality,
            m,
            product.len() as f64 * self.tol_f,
        );

        for (label, st) in [("ground", State::ground()), ("gaussian:sigma=2", PureState::waist(2.0)?.into())] {
            let v = states::position_variance(&st) * states::momentum_variance(&st) - 0.25;
            self.push("minimum-variance-product", label, CheckKind::Identity, v, VARIANCE_TOL);
        }

        for r in [0.3f64, 0.6, 0.9] {
            let st: State = PureState::SqueezedCorrelated(SqueezedCorrelated::new(
                0.5,
                -r * 0.5 / (1.0 - r * r).sqrt(),
                Complex64::new(0.0, 0.0),
            )?)
            .into();
            let expect = LN_PI_E - 0.5 * (1.0 - r * r).ln();
            let got = self.s(&st, 1.0, 0.0)? + self.s(&st, 0.0, 1.0)?;
            self.push("correlated-sum", &format!("squeezed:R={r}"), CheckKind::Identity, got - expect, CORRELATED_TOL);
        }
        Ok(())
    }
}

/// Runs every check. With `tamper` the normalization and homogeneity checks
/// see densities scaled by [`TAMPER_FACTOR`].
pub fn run(engine: &Engine, tamper: bool) -> Result<VerifySummary> {
    let catalog = catalog()?;
    let mut suite = Suite {
        engine,
        tamper,
        tol_f: engine.tol_f(),
        out: Vec::new(),
    };
    for (label, state) in &catalog {
        suite.per_state(label, state)?;
    }
    suite.global(&catalog)?;
    let checks = suite.out;
    Ok(VerifySummary {
        passed: checks.iter().all(|c| c.pass),
        strict: engine.is_strict(),
        tampered: tamper,
        checks,
    })
}

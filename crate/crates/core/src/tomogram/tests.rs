use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::*;
use crate::states::{evaluate_wavefunction, GaussianCovarianceState, MixedState, PureState, SqueezedCorrelated};

fn ground() -> State {
    State::ground()
}

fn soliton(l: f64) -> State {
    PureState::soliton(l).unwrap().into()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn ground_state_position_marginal() {
    let g = Grid::centered(0.0, 8.0, 257).unwrap();
    let tom = symplectic_tomogram(&ground(), 1.0, 0.0, &g).unwrap();
    for (x, w) in g.points().zip(&tom.density) {
        assert!((w - (-x * x).exp() / PI.sqrt()).abs() < 1e-14);
    }
    assert_eq!(tom.method, "closed-form");
}

#[test]
fn waist_closed_form_matches_reference_expression() {
    let sigma: f64 = 2.0;
    let (r, t) = (1.5f64, 0.8f64);
    let g = Grid::centered(0.0, 12.0, 101).unwrap();
    let tom = symplectic_tomogram(&PureState::waist(sigma).unwrap().into(), r * t.cos(), r * t.sin(), &g).unwrap();
    let d = t.sin().powi(2) + sigma.powi(4) * t.cos().powi(2);
    for (x, w) in g.points().zip(&tom.density) {
        let expect = sigma / (r * (PI * d).sqrt()) * (-(sigma * sigma * x * x) / (r * r * d)).exp();
        assert!((w - expect).abs() < 1e-14);
    }
}

#[test]
fn thermal_variance_is_angle_independent() {
    let beta = 1.3f64;
    let th = GaussianCovarianceState::thermal(beta).unwrap();
    let expect = 0.5 / (0.5 * beta).tanh();
    for k in 0..32 {
        let t = k as f64 * PI / 32.0;
        let v = th.quadrature_variance(t.cos(), t.sin());
        assert!((v - expect).abs() < 1e-14);
    }
    let g = Grid::centered(0.0, 10.0, 401).unwrap();
    let a = optical_tomogram(&th.into(), 0.3, &g).unwrap();
    let b = optical_tomogram(&th.into(), 2.1, &g).unwrap();
    assert!(max_abs_diff(&a.density, &b.density) < 1e-14);
}

#[test]
fn forced_fft_matches_closed_forms() {
    let fft = Engine::new().force_fft(true);
    let states: Vec<State> = vec![
        ground(),
        PureState::waist(0.5).unwrap().into(),
        PureState::waist(2.0).unwrap().into(),
        PureState::squeezed(0.7, -0.45, Complex64::new(0.6, -1.2)).unwrap().into(),
    ];
    for s in &states {
        for &(mu, nu) in &[(1.0, 0.0), (0.0, 1.0), (1.0, 0.3), (0.3, 1.0), (-0.8, 0.6), (2.0, -1.5), (0.1, -0.05)] {
            let g = Engine::new().auto_grid(s, mu, nu).unwrap();
            let exact = symplectic_tomogram(s, mu, nu, &g).unwrap();
            let num = fft.symplectic_tomogram(s, mu, nu, &g).unwrap();
            assert_eq!(num.method, "chirp-fft");
            let peak = exact.density.iter().cloned().fold(0.0, f64::max);
            let err = max_abs_diff(&exact.density, &num.density);
            assert!(err < 1e-9 * peak.max(1.0), "{} ({mu},{nu}): {err:e}", s.family());
        }
    }
}

#[test]
fn soliton_tomograms_are_normalized() {
    let e = Engine::new();
    for l in [0.5, 2.0, 4.0] {
        let s = soliton(l);
        for k in 0..24 {
            let t = k as f64 * PI / 24.0 + 0.01;
            let g = e.auto_grid(&s, t.cos(), t.sin()).unwrap();
            let tom = e.optical_tomogram(&s, t, &g).unwrap();
            assert!(tom.normalization_defect < 1e-6, "l={l} t={t}: {:e}", tom.normalization_defect);
            assert!(tom.density.iter().all(|v| *v >= 0.0));
        }
    }
}

#[test]
fn optical_axes_give_marginals() {
    let s = PureState::soliton(1.5).unwrap();
    let st: State = s.clone().into();
    let g = Grid::centered(0.0, 20.0, 401).unwrap();
    let t0 = optical_tomogram(&st, 0.0, &g).unwrap();
    let tq = optical_tomogram(&st, FRAC_PI_2, &g).unwrap();
    for (i, x) in g.points().enumerate() {
        assert!((t0.density[i] - s.psi(x).unwrap().norm_sqr()).abs() < 1e-12);
        assert!((tq.density[i] - s.psi_momentum(x).unwrap().norm_sqr()).abs() < 1e-12);
    }
}

#[test]
fn momentum_marginal_from_the_quadrature_path() {
    // just outside the guard the quadrature is used; it must agree with the limit
    let s = PureState::soliton(1.5).unwrap();
    let st: State = s.clone().into();
    let g = Grid::centered(0.0, 6.0, 241).unwrap();
    let tom = symplectic_tomogram(&st, 1e-5, 1.0, &g).unwrap();
    for (x, w) in g.points().zip(&tom.density) {
        assert!((w - s.psi_momentum(x).unwrap().norm_sqr()).abs() < 1e-8, "{x}: {w} vs {}", s.psi_momentum(x).unwrap().norm_sqr());
    }
}

#[test]
fn optical_equals_symplectic_bitwise() {
    let s = soliton(3.0);
    let g = Grid::centered(0.0, 30.0, 300).unwrap();
    for t in [0.4, 1.2, 2.7] {
        let a = optical_tomogram(&s, t, &g).unwrap();
        let b = symplectic_tomogram(&s, t.cos(), t.sin(), &g).unwrap();
        assert_eq!(a.density, b.density);
    }
}

#[test]
fn fresnel_cases() {
    let s = soliton(2.0);
    let g = Grid::centered(0.0, 30.0, 301).unwrap();
    let f0 = fresnel_tomogram(&s, 0.0, &g).unwrap();
    let p0 = symplectic_tomogram(&s, 1.0, 0.0, &g).unwrap();
    assert_eq!(f0.density, p0.density);

    // w_F(X/μ, ν/μ) = |μ| w(X, μ, ν) for μ = 2, ν = 0.7
    let (mu, nu) = (2.0, 0.7);
    let gx = Grid::centered(0.0, 40.0, 401).unwrap();
    let gf = Grid::new(gx.x_min() / mu, gx.step() / mu, gx.n_points()).unwrap();
    let wf = fresnel_tomogram(&s, nu / mu, &gf).unwrap();
    let w = symplectic_tomogram(&s, mu, nu, &gx).unwrap();
    for (a, b) in wf.density.iter().zip(&w.density) {
        assert!((a - mu * b).abs() < 1e-12);
    }

    let gg = Grid::centered(0.0, 8.0, 161).unwrap();
    let fg = fresnel_tomogram(&ground(), 1.0, &gg).unwrap();
    for (x, w) in gg.points().zip(&fg.density) {
        assert!((w - (2.0 * PI).powf(-0.5) * (-x * x / 2.0).exp()).abs() < 1e-14);
    }
}

#[test]
fn homogeneity_rescale_cases() {
    let g = Grid::centered(0.0, 8.0, 161).unwrap();
    let tom = symplectic_tomogram(&soliton(1.0), 0.6, 0.8, &g).unwrap();
    assert_eq!(homogeneity_rescale(&tom, 1.0).unwrap(), tom);

    let m = homogeneity_rescale(&tom, -1.0).unwrap();
    let mut rev = tom.density.clone();
    rev.reverse();
    assert_eq!(m.density, rev);
    assert_eq!(m.params, TomogramParams::Symplectic { mu: -0.6, nu: -0.8 });

    let base = symplectic_tomogram(&ground(), 1.0, 0.0, &g).unwrap();
    let scaled = homogeneity_rescale(&base, 2.0).unwrap();
    let direct = symplectic_tomogram(&ground(), 2.0, 0.0, &scaled.grid).unwrap();
    assert!(scaled.l1_distance(&direct).unwrap() < 1e-8);

    assert!(homogeneity_rescale(&tom, 0.0).is_err());
}

#[test]
fn homogeneity_for_numeric_states() {
    let e = Engine::new();
    let fft = Engine::new().force_fft(true);
    let states = [soliton(2.0), PureState::squeezed(0.4, 0.3, Complex64::new(0.2, 0.5)).unwrap().into()];
    for s in &states {
        for lambda in [-2.0, 0.5, 3.0] {
            for &(mu, nu) in &[(0.3, 1.0), (1.0, -0.4), (-0.7, 0.7)] {
                let g = e.auto_grid(s, mu, nu).unwrap();
                let tom = fft.symplectic_tomogram(s, mu, nu, &g).unwrap();
                let r = homogeneity_rescale(&tom, lambda).unwrap();
                let d = fft.symplectic_tomogram(s, lambda * mu, lambda * nu, &r.grid).unwrap();
                assert!(r.l1_distance(&d).unwrap() < 1e-6, "{} λ={lambda}", s.family());
            }
        }
    }
}

#[test]
fn mixed_states_are_convex_sums_with_marginals() {
    let a = PureState::soliton(1.0).unwrap();
    let b = PureState::squeezed(0.5, 0.2, Complex64::new(1.0, -0.5)).unwrap();
    let mix: State = MixedState::new(vec![(0.3, a.clone()), (0.7, b.clone())]).unwrap().into();
    let g = Grid::centered(0.0, 15.0, 301).unwrap();
    let w = symplectic_tomogram(&mix, 1.0, 0.0, &g).unwrap();
    let wp = symplectic_tomogram(&mix, 0.0, 1.0, &g).unwrap();
    for (i, x) in g.points().enumerate() {
        let pos = 0.3 * a.psi(x).unwrap().norm_sqr() + 0.7 * b.psi(x).unwrap().norm_sqr();
        let mom = 0.3 * a.psi_momentum(x).unwrap().norm_sqr() + 0.7 * b.psi_momentum(x).unwrap().norm_sqr();
        assert!((w.density[i] - pos).abs() < 1e-12);
        assert!((wp.density[i] - mom).abs() < 1e-12);
    }
    let wa = symplectic_tomogram(&a.clone().into(), 0.4, 0.9, &g).unwrap();
    let wb = symplectic_tomogram(&b.clone().into(), 0.4, 0.9, &g).unwrap();
    let wm = symplectic_tomogram(&mix, 0.4, 0.9, &g).unwrap();
    assert_eq!(wm.method, "mixed");
    for i in 0..g.n_points() {
        assert!((wm.density[i] - (0.3 * wa.density[i] + 0.7 * wb.density[i])).abs() < 1e-15);
    }
}

#[test]
fn radial_scaling_consistency() {
    // w(X, μ, ν) = r^{-1} w(X/r, t)
    let s = soliton(2.0);
    let (r, t) = (2.5f64, 1.1f64);
    let g = Grid::centered(0.0, 60.0, 801).unwrap();
    let gs = Grid::new(g.x_min() / r, g.step() / r, g.n_points()).unwrap();
    let w = symplectic_tomogram(&s, r * t.cos(), r * t.sin(), &g).unwrap();
    let wt = optical_tomogram(&s, t, &gs).unwrap();
    for (a, b) in w.density.iter().zip(&wt.density) {
        assert!((a - b / r).abs() < 1e-6);
    }
}

#[test]
fn sampled_state_follows_analytic_tomogram() {
    let an = PureState::soliton(2.0).unwrap();
    let g = Grid::centered(0.0, 60.0, 2048).unwrap();
    let (psi, _) = evaluate_wavefunction(&an, &g).unwrap();
    let sampled: State = PureState::sampled(g, psi).unwrap().into();
    let an: State = an.into();
    for &(mu, nu) in &[(1.0, 0.0), (0.0, 1.0), (0.8, 0.6), (0.95, -0.3), (-0.2, 1.0), (1.0, 1e-8)] {
        let out = Engine::new().auto_grid(&an, mu, nu).unwrap();
        let a = symplectic_tomogram(&an, mu, nu, &out).unwrap();
        let b = symplectic_tomogram(&sampled, mu, nu, &out).unwrap();
        assert!(a.l1_distance(&b).unwrap() < 1e-8, "({mu},{nu}) {:e}", a.l1_distance(&b).unwrap());
    }
}

#[test]
fn product_tomograms() {
    let e = Engine::new();
    let g = Grid::centered(0.0, 10.0, 201).unwrap();
    let two = ProductState::ground(2).unwrap();
    let (mu, nu) = ([0.6, -1.0], [0.8, 0.0]);
    let toms = e.product_tomogram(&two, &mu, &nu, &[g, g]).unwrap();
    for t in &toms {
        for (x, w) in g.points().zip(&t.density) {
            assert!((w - (-x * x).exp() / PI.sqrt()).abs() < 1e-14);
        }
    }
    let joint = toms[0].density[103] * toms[1].density[76];
    let expect = ground_product_density(&[g.point(103), g.point(76)], &mu, &nu);
    assert!((joint - expect).abs() < 1e-15);

    let one = ProductState::new(vec![soliton(2.0)]).unwrap();
    let gg = Grid::centered(0.0, 30.0, 301).unwrap();
    let a = e.product_tomogram(&one, &[0.5], &[0.5], &[gg]).unwrap();
    let b = e.symplectic_tomogram(&soliton(2.0), 0.5, 0.5, &gg).unwrap();
    assert_eq!(a[0], b);

    let three = ProductState::new(vec![
        PureState::waist(2.0).unwrap().into(),
        soliton(3.0),
        GaussianCovarianceState::thermal(0.7).unwrap().into(),
    ])
    .unwrap();
    let (mu, nu) = ([0.3, 1.0, -0.5], [1.2, 0.4, 0.5]);
    let grids: Vec<Grid> = three
        .modes()
        .iter()
        .zip(mu.iter().zip(&nu))
        .map(|(s, (m, n))| e.auto_grid(s, *m, *n).unwrap())
        .collect();
    for t in e.product_tomogram(&three, &mu, &nu, &grids).unwrap() {
        assert!(t.normalization_defect < 1e-6);
    }
    assert!(matches!(
        e.product_tomogram(&three, &mu[..2], &nu, &grids),
        Err(Error::Dimension { .. })
    ));
}

#[test]
fn invalid_parameters_and_coverage() {
    let g = Grid::centered(0.0, 5.0, 11).unwrap();
    assert!(matches!(
        symplectic_tomogram(&ground(), 0.0, 0.0, &g),
        Err(Error::InvalidParameter(_))
    ));
    let narrow = Grid::centered(0.0, 1.0, 101).unwrap();
    assert!(symplectic_tomogram(&ground(), 1.0, 0.0, &narrow).is_ok());
    assert!(matches!(
        Engine::new().strict(true).symplectic_tomogram(&ground(), 1.0, 0.0, &narrow),
        Err(Error::Coverage { .. })
    ));
}

#[test]
fn clamp_behaviour() {
    let g = Grid::new(0.0, 1.0, 3).unwrap();
    let t = Tomogram::from_density(g, vec![0.5, -1e-16, 0.5], TomogramParams::Optical { t: 0.0 }, "test").unwrap();
    assert_eq!(t.clamped, 1);
    assert_eq!(t.density[1], 0.0);
    assert!(matches!(
        Tomogram::from_density(g, vec![0.5, -1e-6, 0.5], TomogramParams::Optical { t: 0.0 }, "test"),
        Err(Error::NegativeDensity { .. })
    ));
}

#[test]
fn squeezed_correlated_uses_fft_when_forced() {
    let s: State = PureState::SqueezedCorrelated(SqueezedCorrelated::with_correlation(0.5, 0.6).unwrap()).into();
    let g = Engine::new().auto_grid(&s, 0.0, 1.0).unwrap();
    assert_eq!(Engine::new().force_fft(true).symplectic_tomogram(&s, 0.0, 1.0, &g).unwrap().method, "chirp-fft");
    assert_eq!(Engine::new().symplectic_tomogram(&s, 0.0, 1.0, &g).unwrap().method, "closed-form");
}

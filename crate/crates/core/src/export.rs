//! CSV and JSON serialization of tomograms, scans and reports.
//!
//! Floats are written with 17 significant digits, CSV uses LF line endings
//! with a header row, and JSON objects have sorted keys, so identical inputs
//! give identical bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::entropy::{EntropyMethod, EntropyScan, ScanAxis};
use crate::figures::{Fig1, Fig2};
use crate::grid::Grid;
use crate::tomogram::{Tomogram, TomogramParams};
use crate::uncertainty::UncertaintyReport;
use crate::verify::VerifySummary;

/// Fixed 17-significant-digit rendering.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// JSON number with the same rendering as [`fmt_f64`]; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt_f64(x)).expect("finite float renders as a JSON number"))
    } else {
        Value::Null
    }
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn obj<const N: usize>(entries: [(&str, Value); N]) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

/// Renders a JSON value with a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.into_iter().map(fmt_f64).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn params_json(p: &TomogramParams) -> Value {
    match *p {
        TomogramParams::Symplectic { mu, nu } => obj([("kind", "symplectic".into()), ("mu", num(mu)), ("nu", num(nu))]),
        TomogramParams::Optical { t } => obj([("kind", "optical".into()), ("t", num(t))]),
        TomogramParams::Fresnel { nu } => obj([("kind", "fresnel".into()), ("nu", num(nu))]),
    }
}

pub fn grid_json(g: &Grid) -> Value {
    obj([
        ("x_min", num(g.x_min())),
        ("step", num(g.step())),
        ("n_points", g.n_points().into()),
    ])
}

/// Columns `X,w`.
pub fn tomogram_csv(tom: &Tomogram) -> String {
    csv("X,w", tom.grid.points().zip(&tom.density).map(|(x, &w)| vec![x, w]))
}

/// `{"params", "grid", "density", "normalization_defect", "clamped", "method"}`.
pub fn tomogram_json(tom: &Tomogram) -> Value {
    obj([
        ("params", params_json(&tom.params)),
        ("grid", grid_json(&tom.grid)),
        ("density", nums(&tom.density)),
        ("normalization_defect", num(tom.normalization_defect)),
        ("clamped", tom.clamped.into()),
        ("method", tom.method.into()),
    ])
}

/// Columns `param,S,err_est`; symplectic axes add `mu,nu`.
pub fn entropy_scan_csv(scan: &EntropyScan) -> String {
    let rows = scan.entropies.iter().enumerate().map(|(i, e)| {
        let mut row = vec![scan.axis.label(i), e.value, e.quadrature_error_estimate];
        if let ScanAxis::Symplectic(v) = &scan.axis {
            row.extend([v[i].0, v[i].1]);
        }
        row
    });
    let header = match scan.axis {
        ScanAxis::Symplectic(_) => "param,S,err_est,mu,nu",
        _ => "param,S,err_est",
    };
    csv(header, rows)
}

pub fn entropy_scan_json(scan: &EntropyScan) -> Value {
    let (kind, params) = match &scan.axis {
        ScanAxis::Optical(v) => ("optical", nums(v)),
        ScanAxis::Fresnel(v) => ("fresnel", nums(v)),
        ScanAxis::Symplectic(v) => (
            "symplectic",
            Value::Array(v.iter().map(|&(m, n)| Value::Array(vec![num(m), num(n)])).collect()),
        ),
    };
    let method = |m: EntropyMethod| match m {
        EntropyMethod::ClosedForm => "closed_form",
        EntropyMethod::Quadrature => "quadrature",
    };
    obj([
        ("axis", obj([("kind", kind.into()), ("values", params)])),
        (
            "entropies",
            Value::Array(
                scan.entropies
                    .iter()
                    .map(|e| {
                        obj([
                            ("value", num(e.value)),
                            ("quadrature_error_estimate", num(e.quadrature_error_estimate)),
                            ("method", method(e.method).into()),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

/// Columns `t,F`.
pub fn report_csv(rep: &UncertaintyReport) -> String {
    csv("t,F", rep.t_axis.iter().zip(&rep.f_values).map(|(&t, &f)| vec![t, f]))
}

pub fn report_json(rep: &UncertaintyReport) -> Value {
    obj([
        ("r", num(rep.r)),
        ("t_axis", nums(&rep.t_axis)),
        ("F_values", nums(&rep.f_values)),
        ("min_F", num(rep.min_f)),
        ("inequality", serde_json::to_value(rep.inequality).expect("enum serializes")),
        ("passed", rep.passed.into()),
        ("margin", num(rep.margin)),
        ("tol", num(rep.tol)),
        ("method", rep.method.clone().into()),
    ])
}

/// Columns `t,F_closed_sigma=…,F_numeric_sigma=…` per waist.
pub fn fig1_csv(fig: &Fig1) -> String {
    let mut header = String::from("t");
    for c in &fig.curves {
        let _ = write!(header, ",F_closed_sigma={0},F_numeric_sigma={0}", c.sigma);
    }
    csv(
        &header,
        fig.t_axis.iter().enumerate().map(|(i, &t)| {
            let mut row = vec![t];
            for c in &fig.curves {
                row.extend([c.closed[i], c.numeric[i]]);
            }
            row
        }),
    )
}

pub fn fig1_json(fig: &Fig1) -> Value {
    obj([
        ("t_axis", nums(&fig.t_axis)),
        (
            "curves",
            Value::Array(
                fig.curves
                    .iter()
                    .map(|c| {
                        obj([
                            ("sigma", num(c.sigma)),
                            ("closed", nums(&c.closed)),
                            ("numeric", nums(&c.numeric)),
                            ("max_discrepancy", num(c.max_discrepancy)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

/// Columns `t,F_lz=…` per soliton width.
pub fn fig2_csv(fig: &Fig2) -> String {
    let mut header = String::from("t");
    for c in &fig.curves {
        let _ = write!(header, ",F_lz={}", c.l_z);
    }
    csv(
        &header,
        fig.t_axis.iter().enumerate().map(|(i, &t)| {
            let mut row = vec![t];
            row.extend(fig.curves.iter().map(|c| c.f_values[i]));
            row
        }),
    )
}

pub fn fig2_json(fig: &Fig2) -> Value {
    obj([
        ("t_axis", nums(&fig.t_axis)),
        (
            "curves",
            Value::Array(
                fig.curves
                    .iter()
                    .map(|c| {
                        obj([
                            ("l_z", num(c.l_z)),
                            ("F", nums(&c.f_values)),
                            ("min_F", num(c.min_f)),
                            ("max_F", num(c.max_f)),
                            ("argmin_t", num(c.argmin_t)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

pub fn verify_json(summary: &VerifySummary) -> Value {
    obj([
        ("passed", summary.passed.into()),
        ("strict", summary.strict.into()),
        ("tampered", summary.tampered.into()),
        (
            "checks",
            Value::Array(
                summary
                    .checks
                    .iter()
                    .map(|c| {
                        obj([
                            ("check", c.check.clone().into()),
                            ("state", c.state.clone().into()),
                            ("margin", num(c.margin)),
                            ("tolerance", num(c.tolerance)),
                            ("pass", c.pass.into()),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Columns `check,state,margin,tolerance,pass`.
pub fn verify_csv(summary: &VerifySummary) -> String {
    let mut out = String::from("check,state,margin,tolerance,pass\n");
    for c in &summary.checks {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            csv_field(&c.check),
            csv_field(&c.state),
            fmt_f64(c.margin),
            fmt_f64(c.tolerance),
            c.pass
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::State;
    use crate::tomogram::symplectic_tomogram;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(-2.0), "-2.0000000000000000e0");
        assert_eq!(f64::from_str(&fmt_f64(std::f64::consts::PI)).unwrap(), std::f64::consts::PI);
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn tomogram_round_trip() {
        let g = Grid::centered(0.0, 6.0, 33).unwrap();
        let tom = symplectic_tomogram(&State::ground(), 1.0, 0.0, &g).unwrap();
        let text = tomogram_csv(&tom);
        assert!(text.starts_with("X,w\n"));
        assert!(!text.contains('\r'));
        let values: Vec<f64> = text
            .lines()
            .skip(1)
            .map(|l| f64::from_str(l.split(',').nth(1).unwrap()).unwrap())
            .collect();
        assert_eq!(values, tom.density);

        let js = to_json_string(&tomogram_json(&tom));
        let v: Value = serde_json::from_str(&js).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(v["grid"]["n_points"], 33);
        assert_eq!(js, to_json_string(&tomogram_json(&tom)));
    }
}

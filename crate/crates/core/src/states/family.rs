//! Named state families, parsed from JSON documents or `name:key=value`
//! shorthands.
//!
//! ```text
//! {"family": "soliton", "params": {"lz": 2}}
//! {"family": "sampled", "grid": {"x_min": -8, "step": 0.05, "n_points": 321},
//!  "re": [...], "im": [...]}
//! {"family": "mixed", "components": [{"weight": 0.5, "state": {...}}, ...]}
//! soliton:lz=2
//! ```

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{Map, Value};

use super::{
    GaussianCovarianceState, MixedState, PureState, SampledState, SqueezedCorrelated, State,
    SAMPLED_NORM_TOL,
};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// A constructor for one named family of states.
pub trait StateFamily: Send + Sync {
    fn name(&self) -> &'static str;

    /// Parameter names accepted under `params`.
    fn params(&self) -> &'static [&'static str];

    fn build(&self, doc: &Value, registry: &FamilyRegistry) -> Result<State>;
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn params_of(doc: &Value) -> Map<String, Value> {
    doc.get("params")
        .and_then(Value::as_object)
        .cloned()
        .unwrap_or_default()
}

fn number(params: &Map<String, Value>, key: &str) -> Result<Option<f64>> {
    match params.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_f64()
            .map(Some)
            .ok_or_else(|| parse_err(format!("parameter `{key}` must be a number"))),
    }
}

fn required(params: &Map<String, Value>, family: &str, key: &str) -> Result<f64> {
    number(params, key)?.ok_or_else(|| parse_err(format!("family `{family}` needs parameter `{key}`")))
}

fn reject_unknown(params: &Map<String, Value>, family: &dyn StateFamily) -> Result<()> {
    for key in params.keys() {
        if !family.params().contains(&key.as_str()) {
            return Err(parse_err(format!(
                "unknown parameter `{key}` for family `{}` (expected one of {:?})",
                family.name(),
                family.params()
            )));
        }
    }
    Ok(())
}

struct Ground;

impl StateFamily for Ground {
    fn name(&self) -> &'static str {
        "ground"
    }
    fn params(&self) -> &'static [&'static str] {
        &[]
    }
    fn build(&self, doc: &Value, _: &FamilyRegistry) -> Result<State> {
        reject_unknown(&params_of(doc), self)?;
        Ok(State::ground())
    }
}

struct Waist;

impl StateFamily for Waist {
    fn name(&self) -> &'static str {
        "gaussian"
    }
    fn params(&self) -> &'static [&'static str] {
        &["sigma"]
    }
    fn build(&self, doc: &Value, _: &FamilyRegistry) -> Result<State> {
        let p = params_of(doc);
        reject_unknown(&p, self)?;
        Ok(PureState::waist(required(&p, self.name(), "sigma")?)?.into())
    }
}

struct Squeezed;

impl StateFamily for Squeezed {
    fn name(&self) -> &'static str {
        "squeezed"
    }
    fn params(&self) -> &'static [&'static str] {
        &["a1", "a2", "b_re", "b_im", "R"]
    }
    fn build(&self, doc: &Value, _: &FamilyRegistry) -> Result<State> {
        let p = params_of(doc);
        reject_unknown(&p, self)?;
        let a1 = required(&p, self.name(), "a1")?;
        let b = Complex64::new(number(&p, "b_re")?.unwrap_or(0.0), number(&p, "b_im")?.unwrap_or(0.0));
        let state = match (number(&p, "R")?, number(&p, "a2")?) {
            (Some(_), Some(_)) => return Err(parse_err("give either `a2` or `R`, not both")),
            (Some(r), None) => {
                let c = SqueezedCorrelated::with_correlation(a1, r)?;
                SqueezedCorrelated::new(a1, c.a2(), b)?
            }
            (None, a2) => SqueezedCorrelated::new(a1, a2.unwrap_or(0.0), b)?,
        };
        Ok(PureState::SqueezedCorrelated(state).into())
    }
}

struct Soliton;

impl StateFamily for Soliton {
    fn name(&self) -> &'static str {
        "soliton"
    }
    fn params(&self) -> &'static [&'static str] {
        &["lz"]
    }
    fn build(&self, doc: &Value, _: &FamilyRegistry) -> Result<State> {
        let p = params_of(doc);
        reject_unknown(&p, self)?;
        Ok(PureState::soliton(required(&p, self.name(), "lz")?)?.into())
    }
}

struct Thermal;

impl StateFamily for Thermal {
    fn name(&self) -> &'static str {
        "thermal"
    }
    fn params(&self) -> &'static [&'static str] {
        &["beta"]
    }
    fn build(&self, doc: &Value, _: &FamilyRegistry) -> Result<State> {
        let p = params_of(doc);
        reject_unknown(&p, self)?;
        Ok(GaussianCovarianceState::thermal(required(&p, self.name(), "beta")?)?.into())
    }
}

struct SqueezedThermal;

impl StateFamily for SqueezedThermal {
    fn name(&self) -> &'static str {
        "squeezed-thermal"
    }
    fn params(&self) -> &'static [&'static str] {
        &["lambda", "beta"]
    }
    fn build(&self, doc: &Value, _: &FamilyRegistry) -> Result<State> {
        let p = params_of(doc);
        reject_unknown(&p, self)?;
        let lambda = required(&p, self.name(), "lambda")?;
        let beta = required(&p, self.name(), "beta")?;
        Ok(GaussianCovarianceState::squeezed_thermal(lambda, beta)?.into())
    }
}

struct Covariance;

impl StateFamily for Covariance {
    fn name(&self) -> &'static str {
        "gaussian-cov"
    }
    fn params(&self) -> &'static [&'static str] {
        &["qq", "pp", "qp"]
    }
    fn build(&self, doc: &Value, _: &FamilyRegistry) -> Result<State> {
        let p = params_of(doc);
        reject_unknown(&p, self)?;
        let qq = required(&p, self.name(), "qq")?;
        let pp = required(&p, self.name(), "pp")?;
        let qp = number(&p, "qp")?.unwrap_or(0.0);
        Ok(GaussianCovarianceState::new(qq, pp, qp)?.into())
    }
}

struct Sampled;

fn float_array(doc: &Value, key: &str) -> Result<Vec<f64>> {
    let arr = doc
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(format!("sampled state needs array `{key}`")))?;
    arr.iter()
        .map(|v| v.as_f64().ok_or_else(|| parse_err(format!("`{key}` must hold numbers"))))
        .collect()
}

impl StateFamily for Sampled {
    fn name(&self) -> &'static str {
        "sampled"
    }
    fn params(&self) -> &'static [&'static str] {
        &["tol"]
    }
    fn build(&self, doc: &Value, _: &FamilyRegistry) -> Result<State> {
        let p = params_of(doc);
        reject_unknown(&p, self)?;
        let g = doc
            .get("grid")
            .ok_or_else(|| parse_err("sampled state needs a `grid` object"))?;
        let x_min = g.get("x_min").and_then(Value::as_f64);
        let step = g.get("step").and_then(Value::as_f64);
        let n = g.get("n_points").and_then(Value::as_u64);
        let (Some(x_min), Some(step), Some(n)) = (x_min, step, n) else {
            return Err(parse_err("grid needs numeric `x_min`, `step` and integer `n_points`"));
        };
        let grid = Grid::new(x_min, step, n as usize)?;
        let re = float_array(doc, "re")?;
        let im = match doc.get("im") {
            Some(_) => float_array(doc, "im")?,
            None => vec![0.0; re.len()],
        };
        if re.len() != im.len() {
            return Err(Error::Dimension {
                expected: re.len(),
                got: im.len(),
            });
        }
        let amps = re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect();
        let tol = number(&p, "tol")?.unwrap_or(SAMPLED_NORM_TOL);
        Ok(PureState::Sampled(SampledState::with_tolerance(grid, amps, tol)?).into())
    }
}

struct Mixed;

impl StateFamily for Mixed {
    fn name(&self) -> &'static str {
        "mixed"
    }
    fn params(&self) -> &'static [&'static str] {
        &[]
    }
    fn build(&self, doc: &Value, registry: &FamilyRegistry) -> Result<State> {
        let comps = doc
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("mixed state needs a `components` array"))?;
        let mut out = Vec::with_capacity(comps.len());
        for c in comps {
            let w = c
                .get("weight")
                .and_then(Value::as_f64)
                .ok_or_else(|| parse_err("mixture component needs a numeric `weight`"))?;
            let inner = c
                .get("state")
                .ok_or_else(|| parse_err("mixture component needs a `state`"))?;
            match registry.build(inner)? {
                State::Pure(p) => out.push((w, p)),
                other => {
                    return Err(parse_err(format!(
                        "mixture components must be pure states, got `{}`",
                        other.family()
                    )))
                }
            }
        }
        Ok(MixedState::new(out)?.into())
    }
}

/// Registry of state families keyed by name.
pub struct FamilyRegistry {
    families: BTreeMap<&'static str, Box<dyn StateFamily>>,
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        Self {
            families: BTreeMap::new(),
        }
    }

    pub fn with_builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Ground));
        r.register(Box::new(Waist));
        r.register(Box::new(Squeezed));
        r.register(Box::new(Soliton));
        r.register(Box::new(Thermal));
        r.register(Box::new(SqueezedThermal));
        r.register(Box::new(Covariance));
        r.register(Box::new(Sampled));
        r.register(Box::new(Mixed));
        r
    }

    /// Adds a family, replacing any previous one with the same name.
    pub fn register(&mut self, family: Box<dyn StateFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn StateFamily> {
        self.families.get(name).map(|f| f.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }

    /// Builds a state from a parsed JSON document.
    pub fn build(&self, doc: &Value) -> Result<State> {
        let name = doc
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("state doc needs a string `family`"))?;
        let family = self
            .get(name)
            .ok_or_else(|| parse_err(format!("unknown state family `{name}`")))?;
        family.build(doc, self)
    }

    /// Parses either a JSON document (leading `{`) or a shorthand such as
    /// `soliton:lz=2` or `squeezed:a1=0.5,R=0.6`.
    pub fn parse(&self, text: &str) -> Result<State> {
        let text = text.trim();
        if text.starts_with('{') {
            let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
            return self.build(&v);
        }
        self.build(&shorthand_to_json(text)?)
    }
}

fn shorthand_to_json(text: &str) -> Result<Value> {
    let (name, rest) = match text.split_once(':') {
        Some((n, r)) => (n.trim(), r.trim()),
        None => (text, ""),
    };
    if name.is_empty() {
        return Err(parse_err("empty state name"));
    }
    let mut params = Map::new();
    for pair in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected key=value, got `{pair}`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("`{}` is not a number", v.trim())))?;
        let num = serde_json::Number::from_f64(v).ok_or_else(|| parse_err("non-finite parameter"))?;
        params.insert(k.trim().to_string(), Value::Number(num));
    }
    let mut obj = Map::new();
    obj.insert("family".into(), Value::String(name.to_string()));
    obj.insert("params".into(), Value::Object(params));
    Ok(Value::Object(obj))
}

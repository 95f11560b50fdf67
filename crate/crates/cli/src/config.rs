//! Run configuration: command-line flags layered over an optional JSON file.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every option a subcommand may read. Unset fields fall through to the
/// config file and then to built-in defaults.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    /// State as JSON or shorthand, e.g. `soliton:lz=2`.
    #[arg(long)]
    #[serde(default, deserialize_with = "state_text")]
    pub state: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    /// Optical angle; selects the optical tomogram.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub t_points: Option<usize>,
    #[arg(long)]
    pub grid_n: Option<usize>,
    #[arg(long)]
    pub grid_halfwidth: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    #[serde(default)]
    pub strict: bool,
    /// Use the FFT path even where closed forms exist.
    #[arg(long)]
    #[serde(default)]
    pub force_fft: bool,
    /// Scale densities by 0.9 inside `verify` (negative control).
    #[arg(long)]
    #[serde(default)]
    pub tamper: bool,
    /// Fresnel tomogram, or a Fresnel `ν` axis for `entropy-scan`.
    #[arg(long)]
    #[serde(default)]
    pub fresnel: bool,
    /// JSON config file; flags given on the command line take precedence.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

fn state_text<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    Ok(match Option::<Value>::deserialize(d)? {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s),
        Some(v) => Some(v.to_string()),
    })
}

impl RunConfig {
    /// `self` wins wherever it is set.
    pub fn over(self, base: RunConfig) -> RunConfig {
        RunConfig {
            state: self.state.or(base.state),
            mu: self.mu.or(base.mu),
            nu: self.nu.or(base.nu),
            t: self.t.or(base.t),
            r: self.r.or(base.r),
            t_points: self.t_points.or(base.t_points),
            grid_n: self.grid_n.or(base.grid_n),
            grid_halfwidth: self.grid_halfwidth.or(base.grid_halfwidth),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            strict: self.strict || base.strict,
            force_fft: self.force_fft || base.force_fft,
            tamper: self.tamper || base.tamper,
            fresnel: self.fresnel || base.fresnel,
            config: self.config,
        }
    }

    pub fn from_json(text: &str) -> Result<RunConfig, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = RunConfig::from_json(r#"{"state": {"family": "ground"}, "mu": 2.0, "grid-n": 64, "strict": true}"#).unwrap();
        let flags = RunConfig {
            mu: Some(0.5),
            ..Default::default()
        };
        let c = flags.over(file);
        assert_eq!(c.mu, Some(0.5));
        assert_eq!(c.grid_n, Some(64));
        assert!(c.strict);
        assert_eq!(c.state.as_deref(), Some(r#"{"family":"ground"}"#));
        assert_eq!(c.format(), Format::Csv);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_json(r#"{"stat": "ground"}"#).is_err());
    }
}

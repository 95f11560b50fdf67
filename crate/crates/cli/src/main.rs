mod config;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use tomentropy::entropy::ScanAxis;
use tomentropy::export;
use tomentropy::figures::{self, GAUSSIAN_WAISTS, SOLITON_WIDTHS};
use tomentropy::states::FamilyRegistry;
use tomentropy::uncertainty::{default_t_axis, DEFAULT_T_POINTS};
use tomentropy::{verify, Engine, State};

use config::{Format, RunConfig};

#[derive(Parser)]
#[command(name = "tomentropy", version, about = "Tomograms, tomographic entropies and entropic uncertainty checks")]
struct Cli {
    /// Increase log verbosity (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tomogram on a grid: symplectic (--mu/--nu), optical (--t) or Fresnel (--fresnel --nu).
    Tomogram(RunConfig),
    /// Entropy over an angle axis, or over ν in [0, --nu] with --fresnel.
    EntropyScan(RunConfig),
    /// Entropic uncertainty function F(r, t) on [0, π).
    Uncertainty(RunConfig),
    /// F(t) for Gaussian waists 2 and 4, closed form against FFT.
    Fig1(RunConfig),
    /// F(t) for soliton widths 2, 3 and 4.
    Fig2(RunConfig),
    /// Runs the invariant suite over the built-in state catalog.
    Verify(RunConfig),
}

enum Failure {
    Lib(tomentropy::Error),
    Input { kind: &'static str, message: String },
    Internal { kind: &'static str, message: String },
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input { .. } => 2,
            Failure::Lib(e) if e.is_input_error() => 2,
            Failure::Lib(_) | Failure::Internal { .. } => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Lib(e) => e.kind(),
            Failure::Input { kind, .. } | Failure::Internal { kind, .. } => kind,
            Failure::Verification(_) => "verification",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Input { message, .. } | Failure::Internal { message, .. } | Failure::Verification(message) => {
                f.write_str(message)
            }
        }
    }
}

impl From<tomentropy::Error> for Failure {
    fn from(e: tomentropy::Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn input(kind: &'static str, message: impl Into<String>) -> Failure {
    Failure::Input {
        kind,
        message: message.into(),
    }
}

fn load(flags: RunConfig) -> Result<RunConfig, Failure> {
    let Some(path) = flags.config.clone() else {
        return Ok(flags);
    };
    let text = fs::read_to_string(&path).map_err(|e| input("config", format!("{}: {e}", path.display())))?;
    let file = RunConfig::from_json(&text).map_err(|e| input("parse", format!("{}: {e}", path.display())))?;
    Ok(flags.over(file))
}

fn engine(cfg: &RunConfig) -> Engine {
    let mut e = Engine::new()
        .strict(cfg.strict)
        .force_fft(cfg.force_fft)
        .with_half_width(cfg.grid_halfwidth);
    if let Some(n) = cfg.grid_n {
        e = e.with_grid_points(n);
    }
    e
}

fn state(cfg: &RunConfig) -> Result<State, Failure> {
    let text = cfg.state.as_deref().ok_or_else(|| input("missing_state", "--state is required"))?;
    Ok(FamilyRegistry::with_builtin().parse(text)?)
}

fn t_points(cfg: &RunConfig) -> Result<usize, Failure> {
    match cfg.t_points.unwrap_or(DEFAULT_T_POINTS) {
        0 => Err(input("invalid_parameter", "--t-points must be positive")),
        n => Ok(n),
    }
}

/// Writes the artifact to `--out` (and a one-line summary to stdout), or the
/// artifact to stdout and the summary to stderr.
fn emit(cfg: &RunConfig, body: &str, summary: serde_json::Value) -> Outcome {
    let summary = summary.to_string();
    match &cfg.out {
        Some(path) => {
            write_file(path, body)?;
            println!("{summary}");
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(io_failure)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn write_file(path: &Path, body: &str) -> Outcome {
    fs::write(path, body).map_err(|e| Failure::Internal {
        kind: "io",
        message: format!("{}: {e}", path.display()),
    })
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Internal {
        kind: "io",
        message: e.to_string(),
    }
}

fn render(cfg: &RunConfig, csv: impl FnOnce() -> String, json: impl FnOnce() -> serde_json::Value) -> String {
    match cfg.format() {
        Format::Csv => csv(),
        Format::Json => export::to_json_string(&json()),
    }
}

fn cmd_tomogram(cfg: RunConfig) -> Outcome {
    let e = engine(&cfg);
    let st = state(&cfg)?;
    let tom = if cfg.fresnel {
        let nu = cfg.nu.unwrap_or(0.0);
        e.fresnel_tomogram(&st, nu, &e.auto_grid(&st, 1.0, nu)?)?
    } else if let Some(t) = cfg.t {
        let (mu, nu) = tomentropy::tomogram::optical_params(t);
        e.optical_tomogram(&st, t, &e.auto_grid(&st, mu, nu)?)?
    } else {
        let (mu, nu) = (cfg.mu.unwrap_or(1.0), cfg.nu.unwrap_or(0.0));
        e.symplectic_tomogram(&st, mu, nu, &e.auto_grid(&st, mu, nu)?)?
    };
    let body = render(&cfg, || export::tomogram_csv(&tom), || export::tomogram_json(&tom));
    emit(
        &cfg,
        &body,
        json!({
            "normalization_defect": export::num(tom.normalization_defect),
            "clamped": tom.clamped,
            "method": tom.method,
        }),
    )
}

fn cmd_entropy_scan(cfg: RunConfig) -> Outcome {
    let e = engine(&cfg);
    let st = state(&cfg)?;
    let n = t_points(&cfg)?;
    let axis = if cfg.fresnel {
        let nu_max = cfg.nu.unwrap_or(4.0);
        let values = if n == 1 {
            vec![0.0]
        } else {
            (0..n).map(|k| nu_max * k as f64 / (n - 1) as f64).collect()
        };
        ScanAxis::Fresnel(values)
    } else if let Some(t) = cfg.t {
        ScanAxis::Optical(vec![t])
    } else {
        ScanAxis::Optical(default_t_axis(n))
    };
    let scan = e.entropy_scan(&st, axis)?;
    let body = render(&cfg, || export::entropy_scan_csv(&scan), || export::entropy_scan_json(&scan));
    let worst = scan
        .entropies
        .iter()
        .map(|v| v.quadrature_error_estimate)
        .fold(0.0, f64::max);
    emit(
        &cfg,
        &body,
        json!({"points": scan.entropies.len(), "max_err_est": export::num(worst)}),
    )
}

fn cmd_uncertainty(cfg: RunConfig) -> Outcome {
    let e = engine(&cfg);
    let st = state(&cfg)?;
    let r = cfg.r.unwrap_or(1.0);
    let axis = match cfg.t {
        Some(t) => vec![t],
        None => default_t_axis(t_points(&cfg)?),
    };
    let rep = e.uncertainty_function(&st, r, &axis)?;
    let body = render(&cfg, || export::report_csv(&rep), || export::report_json(&rep));
    emit(
        &cfg,
        &body,
        json!({
            "min_F": export::num(rep.min_f),
            "passed": rep.passed,
            "tol": export::num(rep.tol),
            "method": rep.method,
        }),
    )?;
    if rep.passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!("min F = {:e} is below −{:e}", rep.min_f, rep.tol)))
    }
}

fn cmd_fig1(cfg: RunConfig) -> Outcome {
    let fig = figures::fig1(&engine(&cfg), &GAUSSIAN_WAISTS, t_points(&cfg)?)?;
    let body = render(&cfg, || export::fig1_csv(&fig), || export::fig1_json(&fig));
    let discrepancies: Vec<_> = fig
        .curves
        .iter()
        .map(|c| json!({"sigma": export::num(c.sigma), "max_discrepancy": export::num(c.max_discrepancy)}))
        .collect();
    emit(&cfg, &body, json!({ "curves": discrepancies }))
}

fn cmd_fig2(cfg: RunConfig) -> Outcome {
    let fig = figures::fig2(&engine(&cfg), &SOLITON_WIDTHS, t_points(&cfg)?)?;
    let body = render(&cfg, || export::fig2_csv(&fig), || export::fig2_json(&fig));
    let curves: Vec<_> = fig
        .curves
        .iter()
        .map(|c| {
            json!({
                "l_z": export::num(c.l_z),
                "min_F": export::num(c.min_f),
                "max_F": export::num(c.max_f),
            })
        })
        .collect();
    emit(&cfg, &body, json!({ "curves": curves }))
}

fn cmd_verify(cfg: RunConfig) -> Outcome {
    let summary = verify::run(&engine(&cfg), cfg.tamper)?;
    let body = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => export::to_json_string(&export::verify_json(&summary)),
        Format::Csv => export::verify_csv(&summary),
    };
    match &cfg.out {
        Some(path) => write_file(path, &body)?,
        None => print!("{body}"),
    }
    let failed: Vec<String> = summary.failures().map(|c| format!("{} [{}]", c.check, c.state)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("failed checks: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Tomogram(c) => cmd_tomogram(load(c)?),
        Command::EntropyScan(c) => cmd_entropy_scan(load(c)?),
        Command::Uncertainty(c) => cmd_uncertainty(load(c)?),
        Command::Fig1(c) => cmd_fig1(load(c)?),
        Command::Fig2(c) => cmd_fig2(load(c)?),
        Command::Verify(c) => cmd_verify(load(c)?),
    }
}

fn report(f: &Failure) -> ExitCode {
    let err = json!({"error": {"kind": f.kind(), "message": f.to_string(), "exit_code": f.code()}});
    eprintln!("{err}");
    ExitCode::from(f.code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(&input("usage", e.to_string().trim_end())),
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(&f),
    }
}

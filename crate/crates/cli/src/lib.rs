//! `qdiscord` command-line interface.
//!
//! Subcommands: `rates` (η and Λ as JSON), `evolve` (discord time series as
//! CSV), `detect` (detection time as JSON), `scan` (CSL exclusion bound as
//! CSV). Output is deterministic byte for byte; run metadata is added only
//! under `--meta`.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qdiscord_core::{
    csl_bound_scan, decay_rate, detection_time, discord_trace, load_config, table1_preset,
    ConditionalConvention, DecayRate, Error as CoreError, EvalMode, ExperimentParams, ModelKind,
    NoiseModel, PhysicalConstants, Preset, DEFAULT_THRESHOLD_FRAC,
};

const SCHEMA_VERSION: u32 = 1;

/// Errors mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: configuration or parameter problem.
    Config(String),
    /// Exit 3: filesystem problem.
    Io(String),
    /// Exit 4: a numerical procedure did not converge.
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::NonConvergence(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Io(m) | CliError::NonConvergence(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::NoConvergence(msg) => CliError::NonConvergence(msg),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qdiscord",
    version,
    about = "Quantum discord dynamics of the two-diamond phonon system \
             under collapse and decoherence models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decay rate constants (eta, Lambda) for the configured model, as JSON
    Rates(RatesArgs),
    /// Discord time evolution on a uniform grid, as CSV
    Evolve(EvolveArgs),
    /// Time at which discord drops to a fraction of ln 2, as JSON
    Detect(DetectArgs),
    /// Upper bound on lambda_CSL over a log grid of r_C, as CSV
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    Grw,
    Adler,
    Diosi,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Preset {
        match p {
            PresetArg::Grw => Preset::Grw,
            PresetArg::Adler => Preset::Adler,
            PresetArg::Diosi => Preset::Diosi,
        }
    }
}

/// Where the experiment parameters come from: a config file or a built-in
/// preset (exactly one).
#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Flat key=value config file (SI units, `#` comments)
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Built-in parameter column: grw, adler or diosi
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,
}

impl SourceArgs {
    fn load(&self) -> Result<(ExperimentParams, NoiseModel), CliError> {
        match (&self.config, self.preset) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
                Ok(load_config(&text)?)
            }
            (None, Some(preset)) => Ok(table1_preset(preset.into())),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }

    fn echo(&self) -> String {
        match (&self.config, self.preset) {
            (Some(path), None) => format!("--config {}", path.display()),
            (None, Some(preset)) => {
                format!("--preset {}", format!("{preset:?}").to_lowercase())
            }
            _ => unreachable!(),
        }
    }
}

#[derive(Args)]
pub struct RatesArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Write to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Include run metadata (timestamps) in the output
    #[arg(long)]
    pub meta: bool,
}

#[derive(Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// End of the time grid (s)
    #[arg(long = "t-max", value_name = "S")]
    pub t_max: f64,
    /// Number of grid points (including t = 0)
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Keep the O(Lambda/omega) oscillatory terms regardless of scale
    #[arg(long)]
    pub exact: bool,
    /// Emit the published conditional-entropy coefficients instead of the
    /// normalized ones (comparison plots only)
    #[arg(long = "paper-compat")]
    pub paper_compat: bool,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub meta: bool,
}

#[derive(Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Detection threshold as a fraction of ln 2
    #[arg(long = "threshold-frac", default_value_t = DEFAULT_THRESHOLD_FRAC)]
    pub threshold_frac: f64,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub meta: bool,
}

#[derive(Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Smallest localization length (m)
    #[arg(long = "rc-min", default_value_t = 1e-9, value_name = "M")]
    pub rc_min: f64,
    /// Largest localization length (m)
    #[arg(long = "rc-max", default_value_t = 1e-4, value_name = "M")]
    pub rc_max: f64,
    /// Number of log-spaced grid points
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Decay rate above which the discord dies within the observed
    /// entanglement lifetime (s^-1)
    #[arg(long = "lambda-cap", default_value_t = 1e12, value_name = "S^-1")]
    pub lambda_cap: f64,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub meta: bool,
}

#[derive(Serialize)]
struct Meta {
    generated_at_unix: u64,
    version: &'static str,
}

impl Meta {
    fn now() -> Self {
        Meta {
            generated_at_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Serialize)]
struct RatesOutput {
    schema_version: u32,
    command: String,
    model: &'static str,
    eta: f64,
    lambda_big: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<RateComponents>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

#[derive(Serialize)]
struct RateComponents {
    gamma_sc: f64,
    gamma_em: f64,
    gamma_abs: f64,
    gamma_coll: f64,
    gamma_total: f64,
}

#[derive(Serialize)]
struct DetectOutput {
    schema_version: u32,
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_detect: Option<f64>,
    threshold: f64,
    lambda_big: f64,
    converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

fn model_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::Csl => "csl",
        ModelKind::Diosi => "diosi",
        ModelKind::Environmental => "environmental",
        ModelKind::NoNoise => "none",
    }
}

/// 17 significant digits: full f64 round-trip precision.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn csv_header(command: &str, meta: bool) -> String {
    let mut out = format!("# schema_version {SCHEMA_VERSION}\n# command {command}\n");
    if meta {
        let m = Meta::now();
        out.push_str(&format!(
            "# generated_at_unix {}\n# version {}\n",
            m.generated_at_unix, m.version
        ));
    }
    out
}

fn rate_for(
    params: &ExperimentParams,
    model: &NoiseModel,
    consts: &PhysicalConstants,
) -> Result<DecayRate, CliError> {
    Ok(decay_rate(model, params, consts)?)
}

fn cmd_rates(args: &RatesArgs) -> Result<(), CliError> {
    let consts = PhysicalConstants::codata2018();
    let (params, model) = args.source.load()?;
    let rate = rate_for(&params, &model, &consts)?;
    let components = match &model {
        NoiseModel::Environmental(env) => {
            let g = qdiscord_core::gamma_environment(&params, env, &consts);
            Some(RateComponents {
                gamma_sc: g.scattering,
                gamma_em: g.emission,
                gamma_abs: g.absorption,
                gamma_coll: g.collision,
                gamma_total: g.total(),
            })
        }
        _ => None,
    };
    let record = RatesOutput {
        schema_version: SCHEMA_VERSION,
        command: format!("rates {}", args.source.echo()),
        model: model_name(rate.model),
        eta: rate.eta,
        lambda_big: rate.lambda_big,
        components,
        meta: args.meta.then(Meta::now),
    };
    let json = serde_json::to_string_pretty(&record)
        .map_err(|e| CliError::Io(format!("json serialization: {e}")))?;
    write_output(args.output.as_deref(), &format!("{json}\n"))
}

fn cmd_evolve(args: &EvolveArgs) -> Result<(), CliError> {
    if !(args.t_max.is_finite() && args.t_max > 0.0) {
        return Err(CliError::Config(format!(
            "invalid parameter `t-max`: must be finite and > 0, got {}",
            args.t_max
        )));
    }
    if args.points < 2 {
        return Err(CliError::Config(format!(
            "invalid parameter `points`: must be >= 2, got {}",
            args.points
        )));
    }
    let consts = PhysicalConstants::codata2018();
    let (params, model) = args.source.load()?;
    let rate = rate_for(&params, &model, &consts)?;

    let grid: Vec<f64> = (0..args.points)
        .map(|i| args.t_max * i as f64 / (args.points - 1) as f64)
        .collect();
    let mode = if args.exact {
        EvalMode::Exact
    } else {
        EvalMode::Auto
    };
    let convention = if args.paper_compat {
        ConditionalConvention::PaperPrinted
    } else {
        ConditionalConvention::FirstPrinciples
    };
    let trace = discord_trace(rate.lambda_big, params.omega, &grid, mode, convention)?;

    let mut command = format!(
        "evolve {} --t-max {} --points {}",
        args.source.echo(),
        args.t_max,
        args.points
    );
    if args.exact {
        command.push_str(" --exact");
    }
    if args.paper_compat {
        command.push_str(" --paper-compat");
    }

    let mut out = csv_header(&command, args.meta);
    out.push_str(
        "t,discord_nats,sigma1,sigma2,sigma3,sigma4,rho11,rho22,re_rho23,re_rho14,im_rho14,envelope_mode\n",
    );
    for p in &trace {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt(p.t),
            fmt(p.delta),
            fmt(p.sigma[0]),
            fmt(p.sigma[1]),
            fmt(p.sigma[2]),
            fmt(p.sigma[3]),
            fmt(p.rho11),
            fmt(p.rho22),
            fmt(p.re_rho23),
            fmt(p.re_rho14),
            fmt(p.im_rho14),
            u8::from(p.envelope),
        ));
    }
    write_output(args.output.as_deref(), &out)
}

fn cmd_detect(args: &DetectArgs) -> Result<(), CliError> {
    let consts = PhysicalConstants::codata2018();
    let (params, model) = args.source.load()?;
    let rate = rate_for(&params, &model, &consts)?;
    let result = detection_time(rate.lambda_big, params.omega, args.threshold_frac)?;

    let record = DetectOutput {
        schema_version: SCHEMA_VERSION,
        command: format!(
            "detect {} --threshold-frac {}",
            args.source.echo(),
            args.threshold_frac
        ),
        t_detect: result.converged.then_some(result.t_detect),
        threshold: result.threshold,
        lambda_big: result.lambda_big,
        converged: result.converged,
        note: (!result.converged)
            .then(|| "discord stays at ln 2 (Lambda = 0); no detection time exists".to_string()),
        meta: args.meta.then(Meta::now),
    };
    let json = serde_json::to_string_pretty(&record)
        .map_err(|e| CliError::Io(format!("json serialization: {e}")))?;
    write_output(args.output.as_deref(), &format!("{json}\n"))?;
    if result.converged {
        Ok(())
    } else {
        Err(CliError::NonConvergence(
            "no detection time for Lambda = 0".to_string(),
        ))
    }
}

fn cmd_scan(args: &ScanArgs) -> Result<(), CliError> {
    let consts = PhysicalConstants::codata2018();
    let (params, _) = args.source.load()?;
    let scan = csl_bound_scan(
        &params,
        &consts,
        args.lambda_cap,
        (args.rc_min, args.rc_max),
        args.points,
    )?;

    let command = format!(
        "scan {} --rc-min {} --rc-max {} --points {} --lambda-cap {}",
        args.source.echo(),
        args.rc_min,
        args.rc_max,
        args.points,
        args.lambda_cap
    );
    let mut out = csv_header(&command, args.meta);
    out.push_str("r_c,lambda_bound\n");
    for point in &scan {
        out.push_str(&format!("{},{}\n", fmt(point.r_c), fmt(point.lambda_bound)));
    }
    write_output(args.output.as_deref(), &out)
}

/// Dispatches a parsed invocation. The caller maps the error to an exit
/// code via [`CliError::exit_code`].
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Rates(args) => cmd_rates(args),
        Command::Evolve(args) => cmd_evolve(args),
        Command::Detect(args) => cmd_detect(args),
        Command::Scan(args) => cmd_scan(args),
    }
}

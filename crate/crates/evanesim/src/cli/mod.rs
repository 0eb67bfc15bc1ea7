//! Batch front end: scenario configuration, parallel parameter sweeps, and
//! serialization of every report.
//!
//! The command grammar is
//!
//! ```text
//! evanesim <scenario> [--param value ...] [--sweep param:start:stop:steps]
//!          [--outputs list] [--format csv|json] [--out path] [--workers N]
//! evanesim config <file.json>
//! ```
//!
//! Exit codes: 0 success, 2 config error, 3 numeric-domain error, 4 I/O
//! error. `EVANESIM_WORKERS` sets the worker count; the `--workers` flag
//! wins.

pub mod config;
pub mod emit;
pub mod run;
pub mod units;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{
    AcousticConfig, ConfigError, FtirConfig, LatticeConfig, OutputFormat, OutputKind, PulseConfig,
    QuantumConfig, RunConfig, ScenarioConfig, SweepAxis, WaveguideConfig,
};
use config::{AngleQ, BareQ, FrequencyQ, LengthQ, TimeQ};
use units::{parse_quantity, Dimension};

#[derive(Debug, Parser)]
#[command(
    name = "evanesim",
    version,
    about = "Evanescent-mode tunneling simulator: scattering, phase times, Hartman scans, \
             Goos-Hänchen shifts, pulse timing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frustrated total internal reflection at double prisms
    Ftir(FtirArgs),
    /// Waveguide with an undersized (below-cutoff) section
    Waveguide(WaveguideArgs),
    /// Periodic two-index photonic lattice
    Lattice(LatticeArgs),
    /// Quarter-wave acoustic band-gap array
    Acoustic(AcousticArgs),
    /// Rectangular quantum barrier (natural units, hbar = m = 1)
    Quantum(QuantumArgs),
    /// Run from a JSON config document
    Config {
        /// Path to the config file
        path: PathBuf,
        /// Output directory override
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker-thread override
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Sweep axis, e.g. gap:0mm:98.4mm:64
    #[arg(long)]
    sweep: Option<String>,
    /// Comma-separated outputs: scatter,timing,hartman,gh,pulse,virtuality
    #[arg(long, default_value = "timing")]
    outputs: String,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads for sweeps (beats EVANESIM_WORKERS)
    #[arg(long)]
    workers: Option<usize>,
    /// Pulse envelope: gaussian or raised_cosine
    #[arg(long)]
    pulse_envelope: Option<String>,
    /// Pulse envelope FWHM, e.g. 10ns
    #[arg(long)]
    pulse_fwhm: Option<String>,
    /// Pulse record length, e.g. 160ns
    #[arg(long)]
    pulse_record: Option<String>,
}

#[derive(Debug, Args)]
struct FtirArgs {
    /// Prism refractive index
    #[arg(long)]
    n: Option<String>,
    /// Incidence angle, e.g. 45deg
    #[arg(long)]
    angle: Option<String>,
    /// Polarization: TE or TM
    #[arg(long)]
    pol: Option<String>,
    /// Center frequency, e.g. 9.15GHz
    #[arg(long)]
    f0: Option<String>,
    /// Air-gap width, e.g. 32.8mm
    #[arg(long)]
    gap: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct WaveguideArgs {
    /// Feed-guide width, e.g. 30mm
    #[arg(long)]
    wide: Option<String>,
    /// Undersized-section width, e.g. 10mm
    #[arg(long)]
    narrow: Option<String>,
    /// Undersized-section length, e.g. 20mm
    #[arg(long)]
    length: Option<String>,
    /// Operating frequency
    #[arg(long)]
    f0: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct LatticeArgs {
    /// High refractive index
    #[arg(long)]
    n_high: Option<String>,
    /// Low refractive index
    #[arg(long)]
    n_low: Option<String>,
    /// High-index layer thickness (default: quarter wave)
    #[arg(long)]
    d_high: Option<String>,
    /// Low-index layer thickness (default: quarter wave)
    #[arg(long)]
    d_low: Option<String>,
    /// Number of periods
    #[arg(long)]
    periods: Option<usize>,
    /// Gap-center frequency
    #[arg(long)]
    f0: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct AcousticArgs {
    /// Base-medium impedance, Pa*s/m
    #[arg(long)]
    impedance: Option<String>,
    /// Base-medium sound speed, m/s
    #[arg(long)]
    sound_speed: Option<String>,
    /// Impedance ratio of the high-impedance segments
    #[arg(long)]
    contrast: Option<String>,
    /// Number of periods
    #[arg(long)]
    periods: Option<usize>,
    /// Band-gap center frequency, e.g. 1kHz
    #[arg(long)]
    f0: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct QuantumArgs {
    /// Particle energy (natural units)
    #[arg(long)]
    energy: Option<String>,
    /// Barrier height (natural units)
    #[arg(long)]
    height: Option<String>,
    /// Barrier length (natural units)
    #[arg(long)]
    length: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

fn quantity(text: &Option<String>, dimension: Dimension) -> Result<Option<f64>, ConfigError> {
    text.as_deref()
        .map(|t| parse_quantity(t, dimension).map_err(ConfigError::from))
        .transpose()
}

fn pulse_config(common: &CommonArgs) -> Result<Option<PulseConfig>, ConfigError> {
    if common.pulse_envelope.is_none()
        && common.pulse_fwhm.is_none()
        && common.pulse_record.is_none()
    {
        return Ok(None);
    }
    let envelope = match common.pulse_envelope.as_deref() {
        None => None,
        Some("gaussian") => Some(crate::pulse::Envelope::Gaussian),
        Some("raised_cosine") => Some(crate::pulse::Envelope::RaisedCosine),
        Some(other) => {
            return Err(ConfigError::OutOfRange {
                key: "pulse-envelope".into(),
                reason: format!("expected gaussian or raised_cosine, got {other}"),
            })
        }
    };
    Ok(Some(PulseConfig {
        envelope,
        fwhm: quantity(&common.pulse_fwhm, Dimension::Time)?.map(TimeQ),
        sample_rate: None,
        record: quantity(&common.pulse_record, Dimension::Time)?.map(TimeQ),
    }))
}

fn assemble(scenario: ScenarioConfig, common: &CommonArgs) -> Result<RunConfig, ConfigError> {
    let sweep = common
        .sweep
        .as_deref()
        .map(SweepAxis::parse_cli)
        .transpose()?;
    let config = RunConfig {
        scenario,
        sweep,
        pulse: pulse_config(common)?,
        outputs: OutputKind::parse_list(&common.outputs)?,
        format: OutputFormat::parse(&common.format)?,
        out: Some(common.out.clone()),
        workers: common.workers,
    };
    config::validate(&config)?;
    Ok(config)
}

fn build_config(command: &Command) -> Result<RunConfig, ConfigError> {
    match command {
        Command::Ftir(args) => {
            let mut c = FtirConfig::default();
            if let Some(n) = quantity(&args.n, Dimension::Dimensionless)? {
                c.n = BareQ(n);
            }
            if let Some(angle) = quantity(&args.angle, Dimension::Angle)? {
                c.angle = AngleQ(angle);
            }
            if let Some(pol) = args.pol.as_deref() {
                c.pol = match pol {
                    "TE" | "te" => crate::wavecore::Polarization::Te,
                    "TM" | "tm" => crate::wavecore::Polarization::Tm,
                    other => {
                        return Err(ConfigError::OutOfRange {
                            key: "pol".into(),
                            reason: format!("expected TE or TM, got {other}"),
                        })
                    }
                };
            }
            if let Some(f0) = quantity(&args.f0, Dimension::Frequency)? {
                c.f0 = FrequencyQ(f0);
            }
            if let Some(gap) = quantity(&args.gap, Dimension::Length)? {
                c.gap = Some(LengthQ(gap));
            }
            assemble(ScenarioConfig::Ftir(c), &args.common)
        }
        Command::Waveguide(args) => {
            let mut c = WaveguideConfig::default();
            if let Some(v) = quantity(&args.wide, Dimension::Length)? {
                c.wide = LengthQ(v);
            }
            if let Some(v) = quantity(&args.narrow, Dimension::Length)? {
                c.narrow = LengthQ(v);
            }
            if let Some(v) = quantity(&args.length, Dimension::Length)? {
                c.length = LengthQ(v);
            }
            if let Some(v) = quantity(&args.f0, Dimension::Frequency)? {
                c.f0 = FrequencyQ(v);
            }
            assemble(ScenarioConfig::Waveguide(c), &args.common)
        }
        Command::Lattice(args) => {
            let mut c = LatticeConfig::default();
            if let Some(v) = quantity(&args.n_high, Dimension::Dimensionless)? {
                c.n_high = BareQ(v);
            }
            if let Some(v) = quantity(&args.n_low, Dimension::Dimensionless)? {
                c.n_low = BareQ(v);
            }
            if let Some(v) = quantity(&args.d_high, Dimension::Length)? {
                c.d_high = Some(LengthQ(v));
            }
            if let Some(v) = quantity(&args.d_low, Dimension::Length)? {
                c.d_low = Some(LengthQ(v));
            }
            if let Some(v) = args.periods {
                c.periods = v;
            }
            if let Some(v) = quantity(&args.f0, Dimension::Frequency)? {
                c.f0 = FrequencyQ(v);
            }
            assemble(ScenarioConfig::Lattice(c), &args.common)
        }
        Command::Acoustic(args) => {
            let mut c = AcousticConfig::default();
            if let Some(v) = quantity(&args.impedance, Dimension::Dimensionless)? {
                c.impedance = BareQ(v);
            }
            if let Some(v) = quantity(&args.sound_speed, Dimension::Dimensionless)? {
                c.sound_speed = BareQ(v);
            }
            if let Some(v) = quantity(&args.contrast, Dimension::Dimensionless)? {
                c.contrast = BareQ(v);
            }
            if let Some(v) = args.periods {
                c.periods = v;
            }
            if let Some(v) = quantity(&args.f0, Dimension::Frequency)? {
                c.f0 = FrequencyQ(v);
            }
            assemble(ScenarioConfig::Acoustic(c), &args.common)
        }
        Command::Quantum(args) => {
            let mut c = QuantumConfig::default();
            if let Some(v) = quantity(&args.energy, Dimension::Dimensionless)? {
                c.energy = BareQ(v);
            }
            if let Some(v) = quantity(&args.height, Dimension::Dimensionless)? {
                c.height = BareQ(v);
            }
            if let Some(v) = quantity(&args.length, Dimension::Dimensionless)? {
                c.length = BareQ(v);
            }
            assemble(ScenarioConfig::Quantum(c), &args.common)
        }
        Command::Config { path, out, workers } => {
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError::OutOfRange {
                key: "config".into(),
                reason: format!("cannot read {}: {e}", path.display()),
            })?;
            let mut config = config::parse_config(&text)?;
            if let Some(out) = out {
                config.out = Some(out.clone());
            }
            if let Some(workers) = workers {
                config.workers = Some(*workers);
            }
            Ok(config)
        }
    }
}

/// Parse arguments, run, and emit. Returns the process exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // clap handles --help/--version as "errors" with success status
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let config = match build_config(&cli.command) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("config error: {err}");
            return 2;
        }
    };
    let bundle = match run::run(&config) {
        Ok(bundle) => bundle,
        Err(err) => {
            eprintln!("error: {err}");
            return err.exit_code();
        }
    };
    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("."));
    match emit::emit(&bundle, &dir) {
        Ok(paths) => {
            for path in paths {
                println!("{}", path.display());
            }
            0
        }
        Err(err) => {
            eprintln!("i/o error: {err}");
            err.exit_code()
        }
    }
}

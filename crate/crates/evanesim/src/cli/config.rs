//! Run configuration: the JSON config document, its strict parser, and the
//! sweep-axis machinery. All quantities accept unit suffixes and are stored
//! in base SI units plus radians.

use std::path::PathBuf;

use serde::{de, Deserialize, Deserializer, Serialize};
use thiserror::Error;

use super::units::{parse_quantity, Dimension, UnitError};
use crate::convention::SPEED_OF_LIGHT;
use crate::wavecore::Polarization;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown key `{key}`")]
    UnknownKey { key: String },
    #[error("out of range: {key}: {reason}")]
    OutOfRange { key: String, reason: String },
    #[error("unknown sweep parameter `{parameter}` for {scenario}; sweepable: {valid}")]
    UnknownParameter {
        parameter: String,
        scenario: &'static str,
        valid: &'static str,
    },
    #[error("bad sweep axis `{text}`: expected parameter:start:stop:steps")]
    BadSweep { text: String },
    #[error(transparent)]
    BadQuantity(#[from] UnitError),
    #[error("unknown output `{output}`; expected scatter, timing, hartman, gh, pulse, virtuality")]
    UnknownOutput { output: String },
    #[error("unknown format `{format}`; expected csv or json")]
    UnknownFormat { format: String },
}

macro_rules! quantity_newtype {
    ($name:ident, $dim:expr) => {
        /// Quantity stored in base SI; deserializes from a number or a
        /// unit-suffixed string.
        #[derive(Debug, Clone, Copy, PartialEq, Serialize)]
        #[serde(transparent)]
        pub struct $name(pub f64);

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                struct V;
                impl<'de> de::Visitor<'de> for V {
                    type Value = f64;
                    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                        write!(f, "a number or a unit-suffixed string ({})", $dim.name())
                    }
                    fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
                        Ok(v)
                    }
                    fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
                        Ok(v as f64)
                    }
                    fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
                        Ok(v as f64)
                    }
                    fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
                        parse_quantity(v, $dim).map_err(E::custom)
                    }
                }
                deserializer.deserialize_any(V).map($name)
            }
        }
    };
}

quantity_newtype!(LengthQ, Dimension::Length);
quantity_newtype!(FrequencyQ, Dimension::Frequency);
quantity_newtype!(TimeQ, Dimension::Time);
quantity_newtype!(AngleQ, Dimension::Angle);
quantity_newtype!(BareQ, Dimension::Dimensionless);

/// Frustrated-total-internal-reflection scenario parameters; defaults
/// reproduce the reference setup (n = 1.6, 45°, TM, 9.15 GHz, wavelength gap).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FtirConfig {
    /// Prism refractive index.
    pub n: BareQ,
    /// Incidence angle.
    pub angle: AngleQ,
    /// Polarization, TE or TM.
    pub pol: Polarization,
    /// Center frequency.
    pub f0: FrequencyQ,
    /// Air-gap width; defaults to one vacuum wavelength.
    pub gap: Option<LengthQ>,
}

impl Default for FtirConfig {
    fn default() -> Self {
        FtirConfig {
            n: BareQ(1.6),
            angle: AngleQ(45f64.to_radians()),
            pol: Polarization::Tm,
            f0: FrequencyQ(9.15e9),
            gap: None,
        }
    }
}

impl FtirConfig {
    pub fn gap_or_default(&self) -> f64 {
        self.gap
            .map(|g| g.0)
            .unwrap_or(SPEED_OF_LIGHT / self.f0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WaveguideConfig {
    /// Feed-guide width.
    pub wide: LengthQ,
    /// Undersized-section width.
    pub narrow: LengthQ,
    /// Undersized-section length.
    pub length: LengthQ,
    pub f0: FrequencyQ,
}

impl Default for WaveguideConfig {
    fn default() -> Self {
        WaveguideConfig {
            wide: LengthQ(0.030),
            narrow: LengthQ(0.010),
            length: LengthQ(0.020),
            f0: FrequencyQ(9.15e9),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LatticeConfig {
    pub n_high: BareQ,
    pub n_low: BareQ,
    /// High-index layer thickness; defaults to a quarter wave at f0.
    pub d_high: Option<LengthQ>,
    /// Low-index layer thickness; defaults to a quarter wave at f0.
    pub d_low: Option<LengthQ>,
    pub periods: usize,
    pub f0: FrequencyQ,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig {
            n_high: BareQ(3.0),
            n_low: BareQ(1.5),
            d_high: None,
            d_low: None,
            periods: 8,
            f0: FrequencyQ(9.15e9),
        }
    }
}

impl LatticeConfig {
    pub fn d_high_or_default(&self) -> f64 {
        self.d_high
            .map(|d| d.0)
            .unwrap_or(SPEED_OF_LIGHT / (4.0 * self.f0.0 * self.n_high.0))
    }

    pub fn d_low_or_default(&self) -> f64 {
        self.d_low
            .map(|d| d.0)
            .unwrap_or(SPEED_OF_LIGHT / (4.0 * self.f0.0 * self.n_low.0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AcousticConfig {
    /// Base-medium impedance, Pa·s/m.
    pub impedance: BareQ,
    /// Base-medium sound speed, m/s.
    pub sound_speed: BareQ,
    /// Impedance ratio of the high-impedance segments.
    pub contrast: BareQ,
    pub periods: usize,
    /// Band-gap center frequency.
    pub f0: FrequencyQ,
}

impl Default for AcousticConfig {
    fn default() -> Self {
        AcousticConfig {
            impedance: BareQ(413.0),
            sound_speed: BareQ(343.0),
            contrast: BareQ(3.0),
            periods: 8,
            f0: FrequencyQ(1000.0),
        }
    }
}

/// Quantum barrier in natural units (ħ = m = 1); see the README for the SI
/// mapping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuantumConfig {
    pub energy: BareQ,
    pub height: BareQ,
    pub length: BareQ,
}

impl Default for QuantumConfig {
    fn default() -> Self {
        QuantumConfig {
            energy: BareQ(0.5),
            height: BareQ(1.0),
            length: BareQ(6.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioConfig {
    Ftir(FtirConfig),
    Waveguide(WaveguideConfig),
    Lattice(LatticeConfig),
    Acoustic(AcousticConfig),
    Quantum(QuantumConfig),
}

impl ScenarioConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioConfig::Ftir(_) => "ftir",
            ScenarioConfig::Waveguide(_) => "waveguide",
            ScenarioConfig::Lattice(_) => "lattice",
            ScenarioConfig::Acoustic(_) => "acoustic",
            ScenarioConfig::Quantum(_) => "quantum",
        }
    }

    /// Sweepable parameter names and their dimensions.
    pub fn sweep_schema(&self) -> &'static [(&'static str, Dimension)] {
        match self {
            ScenarioConfig::Ftir(_) => &[
                ("gap", Dimension::Length),
                ("angle", Dimension::Angle),
                ("n", Dimension::Dimensionless),
                ("f0", Dimension::Frequency),
            ],
            ScenarioConfig::Waveguide(_) => &[
                ("length", Dimension::Length),
                ("narrow", Dimension::Length),
                ("wide", Dimension::Length),
                ("f0", Dimension::Frequency),
            ],
            ScenarioConfig::Lattice(_) => &[
                ("periods", Dimension::Dimensionless),
                ("n_high", Dimension::Dimensionless),
                ("n_low", Dimension::Dimensionless),
                ("f0", Dimension::Frequency),
            ],
            ScenarioConfig::Acoustic(_) => &[
                ("periods", Dimension::Dimensionless),
                ("contrast", Dimension::Dimensionless),
                ("f0", Dimension::Frequency),
            ],
            ScenarioConfig::Quantum(_) => &[
                ("length", Dimension::Dimensionless),
                ("energy", Dimension::Dimensionless),
                ("height", Dimension::Dimensionless),
            ],
        }
    }

    fn sweep_names(&self) -> &'static str {
        match self {
            ScenarioConfig::Ftir(_) => "gap, angle, n, f0",
            ScenarioConfig::Waveguide(_) => "length, narrow, wide, f0",
            ScenarioConfig::Lattice(_) => "periods, n_high, n_low, f0",
            ScenarioConfig::Acoustic(_) => "periods, contrast, f0",
            ScenarioConfig::Quantum(_) => "length, energy, height",
        }
    }

    /// Dimension of a sweepable parameter, if it exists.
    pub fn parameter_dimension(&self, parameter: &str) -> Option<Dimension> {
        self.sweep_schema()
            .iter()
            .find(|(name, _)| *name == parameter)
            .map(|(_, d)| *d)
    }

    /// A copy with one named parameter replaced by `value` (base SI).
    pub fn with_parameter(&self, parameter: &str, value: f64) -> Result<Self, ConfigError> {
        let mut out = self.clone();
        let found = match (&mut out, parameter) {
            (ScenarioConfig::Ftir(c), "gap") => {
                c.gap = Some(LengthQ(value));
                true
            }
            (ScenarioConfig::Ftir(c), "angle") => {
                c.angle = AngleQ(value);
                true
            }
            (ScenarioConfig::Ftir(c), "n") => {
                c.n = BareQ(value);
                true
            }
            (ScenarioConfig::Ftir(c), "f0") => {
                c.f0 = FrequencyQ(value);
                true
            }
            (ScenarioConfig::Waveguide(c), "length") => {
                c.length = LengthQ(value);
                true
            }
            (ScenarioConfig::Waveguide(c), "narrow") => {
                c.narrow = LengthQ(value);
                true
            }
            (ScenarioConfig::Waveguide(c), "wide") => {
                c.wide = LengthQ(value);
                true
            }
            (ScenarioConfig::Waveguide(c), "f0") => {
                c.f0 = FrequencyQ(value);
                true
            }
            (ScenarioConfig::Lattice(c), "periods") => {
                c.periods = value.round().max(1.0) as usize;
                true
            }
            (ScenarioConfig::Lattice(c), "n_high") => {
                c.n_high = BareQ(value);
                true
            }
            (ScenarioConfig::Lattice(c), "n_low") => {
                c.n_low = BareQ(value);
                true
            }
            (ScenarioConfig::Lattice(c), "f0") => {
                c.f0 = FrequencyQ(value);
                true
            }
            (ScenarioConfig::Acoustic(c), "periods") => {
                c.periods = value.round().max(1.0) as usize;
                true
            }
            (ScenarioConfig::Acoustic(c), "contrast") => {
                c.contrast = BareQ(value);
                true
            }
            (ScenarioConfig::Acoustic(c), "f0") => {
                c.f0 = FrequencyQ(value);
                true
            }
            (ScenarioConfig::Quantum(c), "length") => {
                c.length = BareQ(value);
                true
            }
            (ScenarioConfig::Quantum(c), "energy") => {
                c.energy = BareQ(value);
                true
            }
            (ScenarioConfig::Quantum(c), "height") => {
                c.height = BareQ(value);
                true
            }
            _ => false,
        };
        if found {
            Ok(out)
        } else {
            Err(ConfigError::UnknownParameter {
                parameter: parameter.to_string(),
                scenario: self.name(),
                valid: self.sweep_names(),
            })
        }
    }
}

/// One sweep axis. Endpoint values keep their textual form so configs
/// round-trip exactly; they are resolved against the scenario schema at run
/// time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub parameter: String,
    pub start: String,
    pub stop: String,
    pub steps: usize,
}

impl SweepAxis {
    /// Parse the CLI form `parameter:start:stop:steps`.
    pub fn parse_cli(text: &str) -> Result<Self, ConfigError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 4 {
            return Err(ConfigError::BadSweep {
                text: text.to_string(),
            });
        }
        let steps = parts[3].parse().map_err(|_| ConfigError::BadSweep {
            text: text.to_string(),
        })?;
        Ok(SweepAxis {
            parameter: parts[0].to_string(),
            start: parts[1].to_string(),
            stop: parts[2].to_string(),
            steps,
        })
    }

    /// Resolve the endpoint strings into base-SI values for `scenario`.
    pub fn resolve(&self, scenario: &ScenarioConfig) -> Result<Vec<f64>, ConfigError> {
        let dimension = scenario.parameter_dimension(&self.parameter).ok_or_else(|| {
            ConfigError::UnknownParameter {
                parameter: self.parameter.clone(),
                scenario: scenario.name(),
                valid: scenario.sweep_names(),
            }
        })?;
        if self.steps < 2 {
            return Err(ConfigError::OutOfRange {
                key: "sweep.steps".into(),
                reason: format!("need at least 2 steps, got {}", self.steps),
            });
        }
        let start = parse_quantity(&self.start, dimension)?;
        let stop = parse_quantity(&self.stop, dimension)?;
        let n = self.steps;
        Ok((0..n)
            .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Scatter,
    Timing,
    Hartman,
    Gh,
    Pulse,
    Virtuality,
}

impl OutputKind {
    pub fn name(self) -> &'static str {
        match self {
            OutputKind::Scatter => "scatter",
            OutputKind::Timing => "timing",
            OutputKind::Hartman => "hartman",
            OutputKind::Gh => "gh",
            OutputKind::Pulse => "pulse",
            OutputKind::Virtuality => "virtuality",
        }
    }

    pub fn parse_list(text: &str) -> Result<Vec<OutputKind>, ConfigError> {
        text.split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| match s {
                "scatter" => Ok(OutputKind::Scatter),
                "timing" => Ok(OutputKind::Timing),
                "hartman" => Ok(OutputKind::Hartman),
                "gh" => Ok(OutputKind::Gh),
                "pulse" => Ok(OutputKind::Pulse),
                "virtuality" => Ok(OutputKind::Virtuality),
                other => Err(ConfigError::UnknownOutput {
                    output: other.to_string(),
                }),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        match text {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::UnknownFormat {
                format: other.to_string(),
            }),
        }
    }
}

/// Pulse settings; anything left unset derives from the scenario's center
/// frequency (gaussian, 100 carrier cycles FWHM, 10 samples per cycle,
/// 16 FWHM record).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PulseConfig {
    pub envelope: Option<crate::pulse::Envelope>,
    pub fwhm: Option<TimeQ>,
    pub sample_rate: Option<FrequencyQ>,
    pub record: Option<TimeQ>,
}

impl PulseConfig {
    /// Concrete pulse spec for a given carrier.
    pub fn to_spec(&self, carrier: f64) -> crate::pulse::PulseSpec {
        let mut spec = crate::pulse::PulseSpec::scaled_to(carrier);
        if let Some(envelope) = self.envelope {
            spec.envelope = envelope;
        }
        if let Some(fwhm) = self.fwhm {
            spec.envelope_duration = fwhm.0;
            spec.record_length = 16.0 * fwhm.0;
        }
        if let Some(rate) = self.sample_rate {
            spec.sample_rate = rate.0;
        }
        if let Some(record) = self.record {
            spec.record_length = record.0;
        }
        spec
    }
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Timing]
}

/// A fully specified batch run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepAxis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pulse: Option<PulseConfig>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

impl RunConfig {
    pub fn new(scenario: ScenarioConfig) -> Self {
        RunConfig {
            scenario,
            sweep: None,
            pulse: None,
            outputs: default_outputs(),
            format: OutputFormat::Csv,
            out: None,
            workers: None,
        }
    }
}

/// Parse and validate a JSON config document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = serde_json::from_str(text).map_err(|err| {
        let message = err.to_string();
        if let Some(rest) = message.strip_prefix("unknown field `") {
            if let Some(end) = rest.find('`') {
                return ConfigError::UnknownKey {
                    key: rest[..end].to_string(),
                };
            }
        }
        if let Some(start) = message.find("unknown field `") {
            let rest = &message[start + "unknown field `".len()..];
            if let Some(end) = rest.find('`') {
                return ConfigError::UnknownKey {
                    key: rest[..end].to_string(),
                };
            }
        }
        ConfigError::Syntax {
            line: err.line(),
            column: err.column(),
            message,
        }
    })?;
    validate(&config)?;
    Ok(config)
}

/// Range and consistency checks beyond what the type structure enforces.
pub fn validate(config: &RunConfig) -> Result<(), ConfigError> {
    let positive = |key: &str, value: f64| -> Result<(), ConfigError> {
        if value > 0.0 && value.is_finite() {
            Ok(())
        } else {
            Err(ConfigError::OutOfRange {
                key: key.into(),
                reason: format!("must be positive and finite, got {value}"),
            })
        }
    };
    match &config.scenario {
        ScenarioConfig::Ftir(c) => {
            positive("ftir.n", c.n.0)?;
            positive("ftir.f0", c.f0.0)?;
            if let Some(gap) = c.gap {
                if gap.0 < 0.0 {
                    return Err(ConfigError::OutOfRange {
                        key: "ftir.gap".into(),
                        reason: format!("must be nonnegative, got {}", gap.0),
                    });
                }
            }
            if !(0.0..std::f64::consts::FRAC_PI_2).contains(&c.angle.0) {
                return Err(ConfigError::OutOfRange {
                    key: "ftir.angle".into(),
                    reason: format!("must lie in [0, 90) degrees, got {} rad", c.angle.0),
                });
            }
        }
        ScenarioConfig::Waveguide(c) => {
            positive("waveguide.wide", c.wide.0)?;
            positive("waveguide.narrow", c.narrow.0)?;
            positive("waveguide.f0", c.f0.0)?;
            if c.length.0 < 0.0 {
                return Err(ConfigError::OutOfRange {
                    key: "waveguide.length".into(),
                    reason: "must be nonnegative".into(),
                });
            }
            if c.narrow.0 >= c.wide.0 {
                return Err(ConfigError::OutOfRange {
                    key: "waveguide.narrow".into(),
                    reason: format!("must be narrower than wide = {}", c.wide.0),
                });
            }
        }
        ScenarioConfig::Lattice(c) => {
            positive("lattice.n_high", c.n_high.0)?;
            positive("lattice.n_low", c.n_low.0)?;
            positive("lattice.f0", c.f0.0)?;
            positive("lattice.d_high", c.d_high_or_default())?;
            positive("lattice.d_low", c.d_low_or_default())?;
            if c.periods < 1 {
                return Err(ConfigError::OutOfRange {
                    key: "lattice.periods".into(),
                    reason: "need at least one period".into(),
                });
            }
        }
        ScenarioConfig::Acoustic(c) => {
            positive("acoustic.impedance", c.impedance.0)?;
            positive("acoustic.sound_speed", c.sound_speed.0)?;
            positive("acoustic.contrast", c.contrast.0)?;
            positive("acoustic.f0", c.f0.0)?;
            if c.periods < 1 {
                return Err(ConfigError::OutOfRange {
                    key: "acoustic.periods".into(),
                    reason: "need at least one period".into(),
                });
            }
        }
        ScenarioConfig::Quantum(c) => {
            positive("quantum.energy", c.energy.0)?;
            positive("quantum.length", c.length.0)?;
            if c.height.0 < 0.0 {
                return Err(ConfigError::OutOfRange {
                    key: "quantum.height".into(),
                    reason: "barrier height must be nonnegative".into(),
                });
            }
        }
    }
    if let Some(sweep) = &config.sweep {
        sweep.resolve(&config.scenario)?;
    }
    if config.outputs.is_empty() {
        return Err(ConfigError::OutOfRange {
            key: "outputs".into(),
            reason: "need at least one output".into(),
        });
    }
    if let Some(workers) = config.workers {
        if workers == 0 {
            return Err(ConfigError::OutOfRange {
                key: "workers".into(),
                reason: "worker count must be at least 1".into(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_ftir_config_takes_reference_defaults() {
        let config = parse_config(r#"{"scenario": {"ftir": {}}, "outputs": ["timing"]}"#).unwrap();
        match &config.scenario {
            ScenarioConfig::Ftir(c) => {
                assert_eq!(c.n.0, 1.6);
                assert_eq!(c.pol, Polarization::Tm);
                assert_eq!(c.f0.0, 9.15e9);
                assert!((c.angle.0.to_degrees() - 45.0).abs() < 1e-12);
                assert!((c.gap_or_default() - SPEED_OF_LIGHT / 9.15e9).abs() < 1e-15);
            }
            other => panic!("expected ftir, got {other:?}"),
        }
    }

    #[test]
    fn unit_suffixes_in_json() {
        let config = parse_config(
            r#"{"scenario": {"ftir": {"gap": "32.8mm", "angle": "45deg", "f0": "9.15GHz"}},
                "outputs": ["timing", "gh"]}"#,
        )
        .unwrap();
        match &config.scenario {
            ScenarioConfig::Ftir(c) => {
                assert!((c.gap.unwrap().0 - 0.0328).abs() < 1e-12 * 0.0328);
                assert!((c.f0.0 - 9.15e9).abs() < 1e-3);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_config(
            r#"{"scenario": {"ftir": {"polarisation_mode": "TM"}}, "outputs": ["timing"]}"#,
        )
        .unwrap_err();
        match err {
            ConfigError::UnknownKey { key } => assert_eq!(key, "polarisation_mode"),
            other => panic!("expected UnknownKey, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_config("{\n  \"scenario\": }").unwrap_err();
        match err {
            ConfigError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected Syntax, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        let err = parse_config(r#"{"scenario": {"ftir": {"n": -1.0}}, "outputs": ["timing"]}"#)
            .unwrap_err();
        assert!(matches!(err, ConfigError::OutOfRange { .. }), "{err:?}");
        let err = parse_config(
            r#"{"scenario": {"waveguide": {"narrow": "40mm"}}, "outputs": ["timing"]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::OutOfRange { .. }), "{err:?}");
    }

    #[test]
    fn sweep_axis_resolves_against_schema() {
        let axis = SweepAxis::parse_cli("gap:0mm:98.4mm:64").unwrap();
        let scenario = ScenarioConfig::Ftir(FtirConfig::default());
        let values = axis.resolve(&scenario).unwrap();
        assert_eq!(values.len(), 64);
        assert_eq!(values[0], 0.0);
        assert!((values[63] - 0.0984).abs() < 1e-15);
        assert!(values.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn sweep_rejects_unknown_parameter_and_bad_steps() {
        let scenario = ScenarioConfig::Ftir(FtirConfig::default());
        let axis = SweepAxis::parse_cli("bogus:0:1:4").unwrap();
        assert!(matches!(
            axis.resolve(&scenario),
            Err(ConfigError::UnknownParameter { .. })
        ));
        let axis = SweepAxis::parse_cli("gap:0:1:1").unwrap();
        assert!(matches!(
            axis.resolve(&scenario),
            Err(ConfigError::OutOfRange { .. })
        ));
        assert!(SweepAxis::parse_cli("gap:0:1").is_err());
    }

    #[test]
    fn config_round_trip_is_identity() {
        let text = r#"{
            "scenario": {"ftir": {"gap": "32.8mm", "pol": "TE"}},
            "sweep": {"parameter": "gap", "start": "0mm", "stop": "98.4mm", "steps": 64},
            "outputs": ["timing", "hartman"],
            "format": "json",
            "workers": 4
        }"#;
        let config = parse_config(text).unwrap();
        let emitted = serde_json::to_string(&config).unwrap();
        let reparsed = parse_config(&emitted).unwrap();
        assert_eq!(config, reparsed);
    }

    #[test]
    fn output_list_parsing() {
        let outputs = OutputKind::parse_list("timing,gh").unwrap();
        assert_eq!(outputs, vec![OutputKind::Timing, OutputKind::Gh]);
        assert!(matches!(
            OutputKind::parse_list("timing,bogus"),
            Err(ConfigError::UnknownOutput { .. })
        ));
    }

    #[test]
    fn scenario_parameter_substitution() {
        let scenario = ScenarioConfig::Ftir(FtirConfig::default());
        let with_gap = scenario.with_parameter("gap", 0.05).unwrap();
        match with_gap {
            ScenarioConfig::Ftir(c) => assert_eq!(c.gap.unwrap().0, 0.05),
            _ => unreachable!(),
        }
        assert!(scenario.with_parameter("length", 0.05).is_err());
    }

    #[test]
    fn pulse_config_derives_from_carrier() {
        let spec = PulseConfig::default().to_spec(9.15e9);
        assert_eq!(spec.carrier, 9.15e9);
        assert!(spec.validate().is_ok());
        let custom = PulseConfig {
            fwhm: Some(TimeQ(10e-9)),
            ..PulseConfig::default()
        }
        .to_spec(9.15e9);
        assert_eq!(custom.envelope_duration, 10e-9);
        assert_eq!(custom.record_length, 160e-9);
    }
}

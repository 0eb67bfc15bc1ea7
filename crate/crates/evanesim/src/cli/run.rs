//! Batch execution: instantiate scenarios, evaluate requested outputs over an
//! optional sweep axis on a worker pool, and merge results in sweep order so
//! output bytes never depend on the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::config::{
    ConfigError, OutputKind, PulseConfig, RunConfig, ScenarioConfig,
};
use crate::convention::ledger_hash;
use crate::pulse::{self, PulseError};
use crate::scenarios::{
    self, acoustic_band_gap_array, goos_haenchen_shift, photonic_lattice, quantum_barrier,
    undersized_waveguide, DoublePrismSpec, QuantumBarrierSpec, ScenarioError,
};
use crate::timing::{self, Channel, TimingError};
use crate::virtuality::{self, EnergySquaredSign, VirtualityError};
use crate::wavecore::{AcousticMedium, FrequencyGrid, WavecoreError};
use crate::xfermat::{Stack, XfermatError};

/// Fractional span and point count of the default scattering grid.
const SCATTER_SPAN: f64 = 0.10;
const SCATTER_POINTS: usize = 201;
/// κd values scanned by the hartman output.
const HARTMAN_KD_MAX: f64 = 10.0;
const HARTMAN_POINTS: usize = 40;

#[derive(Debug, Error)]
pub enum DomainError {
    #[error(transparent)]
    Timing(#[from] TimingError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Pulse(#[from] PulseError),
    #[error(transparent)]
    Scattering(#[from] XfermatError),
    #[error(transparent)]
    Virtuality(#[from] VirtualityError),
    #[error(transparent)]
    Grid(#[from] WavecoreError),
    #[error("output `{output}` is not defined for the {scenario} scenario")]
    Unsupported {
        output: &'static str,
        scenario: &'static str,
    },
    #[error("array is too transparent to saturate within {max_periods} periods")]
    TooTransparent { max_periods: usize },
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("at sweep point {index} ({parameter} = {value:.6e}): {source}")]
    Domain {
        index: usize,
        parameter: String,
        value: f64,
        source: DomainError,
    },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Domain { .. } => 3,
        }
    }
}

/// A cell of an output table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    fn new(name: &str, unit: &str) -> Self {
        Column {
            name: name.into(),
            unit: unit.into(),
        }
    }

    pub fn header(&self) -> String {
        format!("{}[{}]", self.name, self.unit)
    }
}

/// One named output table: columns with units, rows, and scalar notes that
/// become comment lines in CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
    pub notes: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub convention_hash: String,
    pub scatter_grid_span: f64,
    pub scatter_grid_points: usize,
}

/// Everything one run produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub config: RunConfig,
    pub provenance: Provenance,
    pub tables: Vec<Table>,
}

/// Resolve the worker count: explicit flag beats the EVANESIM_WORKERS
/// environment variable beats available parallelism.
pub fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("EVANESIM_WORKERS")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
    .max(1)
}

type LengthBuilder<'a> = Box<dyn Fn(f64) -> Stack + Send + Sync + 'a>;
type PeriodBuilder<'a> = Box<dyn Fn(usize) -> Stack + Send + Sync + 'a>;

/// The concrete physics of one (sweep-point) scenario instance.
struct Instance {
    scenario: ScenarioConfig,
}

impl Instance {
    fn name(&self) -> &'static str {
        self.scenario.name()
    }

    /// Center angular frequency; for quantum scenarios this is the particle
    /// energy in natural units.
    fn omega0(&self) -> f64 {
        match &self.scenario {
            ScenarioConfig::Ftir(c) => 2.0 * std::f64::consts::PI * c.f0.0,
            ScenarioConfig::Waveguide(c) => 2.0 * std::f64::consts::PI * c.f0.0,
            ScenarioConfig::Lattice(c) => 2.0 * std::f64::consts::PI * c.f0.0,
            ScenarioConfig::Acoustic(c) => 2.0 * std::f64::consts::PI * c.f0.0,
            ScenarioConfig::Quantum(c) => c.energy.0,
        }
    }

    /// Equivalent cyclic frequency used in universal-time ratios.
    fn f0(&self) -> f64 {
        self.omega0() / (2.0 * std::f64::consts::PI)
    }

    fn is_quantum(&self) -> bool {
        matches!(self.scenario, ScenarioConfig::Quantum(_))
    }

    /// Unit labels: SI scenarios report seconds and meters; quantum scenarios
    /// report natural units.
    fn time_unit(&self) -> &'static str {
        if self.is_quantum() {
            "nat"
        } else {
            "s"
        }
    }

    fn length_unit(&self) -> &'static str {
        if self.is_quantum() {
            "nat"
        } else {
            "m"
        }
    }

    fn frequency_unit(&self) -> &'static str {
        if self.is_quantum() {
            "nat"
        } else {
            "Hz"
        }
    }

    fn stack(&self) -> Result<Stack, DomainError> {
        Ok(match &self.scenario {
            ScenarioConfig::Ftir(c) => self.ftir_spec(c.gap_or_default()).stack(),
            ScenarioConfig::Waveguide(c) => {
                undersized_waveguide(c.wide.0, c.narrow.0, c.length.0)?
            }
            ScenarioConfig::Lattice(c) => photonic_lattice(
                c.n_high.0,
                c.n_low.0,
                c.d_high_or_default(),
                c.d_low_or_default(),
                c.periods,
            ),
            ScenarioConfig::Acoustic(c) => acoustic_band_gap_array(
                AcousticMedium::new(c.sound_speed.0, c.impedance.0),
                c.contrast.0,
                c.f0.0,
                c.periods,
            )?,
            ScenarioConfig::Quantum(c) => quantum_barrier(&QuantumBarrierSpec {
                barrier_height: c.height.0,
                barrier_length: c.length.0,
                particle_energy: c.energy.0,
            }),
        })
    }

    fn ftir_spec(&self, gap: f64) -> DoublePrismSpec {
        match &self.scenario {
            ScenarioConfig::Ftir(c) => DoublePrismSpec {
                prism_index: c.n.0,
                gap,
                incidence_angle: c.angle.0,
                polarization: c.pol,
                center_frequency: c.f0.0,
            },
            _ => unreachable!("ftir_spec outside ftir scenario"),
        }
    }

    /// Physical barrier extent: gap width, undersized length, barrier length,
    /// or total array thickness.
    fn barrier_length(&self) -> f64 {
        match &self.scenario {
            ScenarioConfig::Ftir(c) => c.gap_or_default(),
            ScenarioConfig::Waveguide(c) => c.length.0,
            ScenarioConfig::Lattice(c) => {
                (c.d_high_or_default() + c.d_low_or_default()) * c.periods as f64
            }
            ScenarioConfig::Acoustic(c) => {
                2.0 * c.sound_speed.0 / (4.0 * c.f0.0) * c.periods as f64
            }
            ScenarioConfig::Quantum(c) => c.length.0,
        }
    }

    /// Builder over a continuous barrier length, for hartman scans. Periodic
    /// scenarios saturate in period count instead and return None.
    fn length_builder(&self) -> Option<LengthBuilder<'_>> {
        match &self.scenario {
            ScenarioConfig::Ftir(_) => {
                let spec = self.ftir_spec(0.0);
                Some(Box::new(move |d| spec.clone().with_gap(d).stack()))
            }
            ScenarioConfig::Waveguide(c) => {
                let (wide, narrow) = (c.wide.0, c.narrow.0);
                Some(Box::new(move |d| {
                    undersized_waveguide(wide, narrow, d).expect("validated dimensions")
                }))
            }
            ScenarioConfig::Quantum(c) => {
                let (height, energy) = (c.height.0, c.energy.0);
                Some(Box::new(move |d| {
                    quantum_barrier(&QuantumBarrierSpec {
                        barrier_height: height,
                        barrier_length: d,
                        particle_energy: energy,
                    })
                }))
            }
            ScenarioConfig::Lattice(_) | ScenarioConfig::Acoustic(_) => None,
        }
    }

    /// Builder over integer periods plus the period length, for the periodic
    /// scenarios.
    fn period_builder(&self) -> Option<(PeriodBuilder<'_>, f64)> {
        match &self.scenario {
            ScenarioConfig::Lattice(c) => {
                let (nh, nl) = (c.n_high.0, c.n_low.0);
                let (dh, dl) = (c.d_high_or_default(), c.d_low_or_default());
                Some((
                    Box::new(move |n| photonic_lattice(nh, nl, dh, dl, n.max(1))),
                    dh + dl,
                ))
            }
            ScenarioConfig::Acoustic(c) => {
                let base = AcousticMedium::new(c.sound_speed.0, c.impedance.0);
                let (contrast, f_gap) = (c.contrast.0, c.f0.0);
                let period = 2.0 * c.sound_speed.0 / (4.0 * c.f0.0);
                Some((
                    Box::new(move |n| {
                        acoustic_band_gap_array(base, contrast, f_gap, n.max(1))
                            .expect("validated parameters")
                    }),
                    period,
                ))
            }
            _ => None,
        }
    }
}

fn f(v: f64) -> Value {
    Value::Float(v)
}

/// A narrow grid for single-frequency phase times.
fn timing_grid(omega0: f64) -> FrequencyGrid {
    FrequencyGrid::centered_omega(omega0, 1e-3, 9).expect("valid scan grid")
}

fn compute_timing(inst: &Instance) -> Result<Table, DomainError> {
    let grid = timing_grid(inst.omega0());
    let spectrum = inst.stack()?.spectrum(&grid)?;
    let tau_t = timing::phase_time_at_center(&spectrum, Channel::Transmission)?;
    let tau_r = timing::phase_time_at_center(&spectrum, Channel::Reflection)?;

    // supplementary saturation figures; omitted when the barrier does not
    // tunnel (propagating gap, transparent array)
    let mut notes = Vec::new();
    let saturated = match inst.length_builder() {
        Some(builder) => {
            // the scan curve abscissa is irrelevant here; only the internal
            // kappa*d in [5, 10] average is kept
            timing::hartman_scan(&*builder, inst.omega0(), &[1e-9])
                .map(|scan| scan.tau_asymptotic)
        }
        None => {
            let (builder, _) = inst.period_builder().expect("periodic scenario");
            match periodic_saturation(&*builder, inst.omega0()) {
                Ok(sat) => Ok(sat.tau_asymptotic),
                Err(DomainError::Timing(e)) => Err(e),
                Err(_) => Err(TimingError::NonEvanescentBarrier {
                    omega: inst.omega0(),
                }),
            }
        }
    };
    if let Ok(tau_asymptotic) = saturated {
        notes.push((
            format!("tau_asymptotic[{}]", inst.time_unit()),
            format_float(tau_asymptotic),
        ));
        notes.push((
            "universal_ratio[-]".into(),
            format_float(timing::universal_ratio(tau_asymptotic, inst.f0())),
        ));
    }

    Ok(Table {
        name: "timing".into(),
        columns: vec![
            Column::new("d", inst.length_unit()),
            Column::new("tau_t", inst.time_unit()),
            Column::new("tau_r", inst.time_unit()),
            Column::new("ratio", "-"),
        ],
        rows: vec![vec![
            f(inst.barrier_length()),
            f(tau_t),
            f(tau_r),
            f(tau_t * inst.f0()),
        ]],
        notes,
    })
}

fn compute_hartman(inst: &Instance) -> Result<Table, DomainError> {
    let omega0 = inst.omega0();
    let f0 = inst.f0();
    let columns = vec![
        Column::new("d", inst.length_unit()),
        Column::new("tau_t", inst.time_unit()),
        Column::new("tau_r", inst.time_unit()),
        Column::new("ratio", "-"),
    ];
    if let Some(builder) = inst.length_builder() {
        let probe = builder(1.0);
        let kx = probe.transverse_wavenumber(omega0);
        let kappa = probe
            .layers
            .iter()
            .filter_map(|layer| {
                let k = layer.region.wavenumber(omega0, kx);
                k.is_evanescent().then(|| k.kappa())
            })
            .next()
            .ok_or(TimingError::NonEvanescentBarrier { omega: omega0 })?;
        let ds: Vec<f64> = (1..=HARTMAN_POINTS)
            .map(|i| HARTMAN_KD_MAX * i as f64 / HARTMAN_POINTS as f64 / kappa)
            .collect();
        let scan = timing::hartman_scan(&*builder, omega0, &ds)?;
        let rows = scan
            .curve
            .iter()
            .zip(&scan.curve_reflection)
            .map(|(&(d, tt), &(_, tr))| vec![f(d), f(tt), f(tr), f(tt * f0)])
            .collect();
        Ok(Table {
            name: "hartman".into(),
            columns,
            rows,
            notes: vec![
                (
                    format!("kappa[1/{}]", inst.length_unit()),
                    format_float(scan.kappa),
                ),
                (
                    format!("tau_asymptotic[{}]", inst.time_unit()),
                    format_float(scan.tau_asymptotic),
                ),
                (
                    "universal_ratio[-]".into(),
                    format_float(timing::universal_ratio(scan.tau_asymptotic, f0)),
                ),
            ],
        })
    } else {
        let (builder, period) = inst.period_builder().expect("periodic scenario");
        let saturation = periodic_saturation(&*builder, omega0)?;
        let rows = saturation
            .curve
            .iter()
            .map(|&(n, tt, tr)| vec![f(n as f64 * period), f(tt), f(tr), f(tt * f0)])
            .collect();
        Ok(Table {
            name: "hartman".into(),
            columns,
            rows,
            notes: vec![
                (
                    "attenuation_per_period[-]".into(),
                    format_float(saturation.attenuation_per_period),
                ),
                (
                    format!("tau_asymptotic[{}]", inst.time_unit()),
                    format_float(saturation.tau_asymptotic),
                ),
                (
                    "universal_ratio[-]".into(),
                    format_float(timing::universal_ratio(saturation.tau_asymptotic, f0)),
                ),
            ],
        })
    }
}

/// τ(N) saturation data for periodic barriers.
pub struct PeriodicSaturation {
    /// (periods, τ_t, τ_r) rows.
    pub curve: Vec<(usize, f64, f64)>,
    pub attenuation_per_period: f64,
    /// Mean τ_t over total attenuations in [5, 10].
    pub tau_asymptotic: f64,
}

/// Scan phase times of a periodic barrier over period count and average over
/// the opaque range (total attenuation between 5 and 10), the period-count
/// analog of the κd ∈ [5, 10] rule.
pub fn periodic_saturation(
    builder: &(dyn Fn(usize) -> Stack + Send + Sync),
    omega0: f64,
) -> Result<PeriodicSaturation, DomainError> {
    const MAX_PERIODS: usize = 64;
    // per-period amplitude decay from two opaque-ish points
    let t_mag = |n: usize| -> Result<f64, DomainError> {
        let (_, t) = builder(n).scattering(omega0)?;
        Ok(t.norm())
    };
    let alpha = (t_mag(6)? / t_mag(7)?).ln();
    if alpha.is_nan() || alpha <= 5.0 / MAX_PERIODS as f64 {
        return Err(DomainError::TooTransparent {
            max_periods: MAX_PERIODS,
        });
    }
    let n_lo = (5.0 / alpha).ceil() as usize;
    let n_hi = ((10.0 / alpha).floor() as usize).max(n_lo);

    let grid = timing_grid(omega0);
    let tau_of = |n: usize| -> Result<(f64, f64), DomainError> {
        let spectrum = builder(n).spectrum(&grid)?;
        Ok((
            timing::phase_time_at_center(&spectrum, Channel::Transmission)?,
            timing::phase_time_at_center(&spectrum, Channel::Reflection)?,
        ))
    };

    let mut curve = Vec::new();
    for n in 1..=n_hi.max(16) {
        let (tt, tr) = tau_of(n)?;
        curve.push((n, tt, tr));
    }
    let in_range: Vec<f64> = curve
        .iter()
        .filter(|(n, _, _)| *n >= n_lo && *n <= n_hi)
        .map(|(_, tt, _)| *tt)
        .collect();
    let tau_asymptotic = in_range.iter().sum::<f64>() / in_range.len() as f64;
    Ok(PeriodicSaturation {
        curve,
        attenuation_per_period: alpha,
        tau_asymptotic,
    })
}

fn compute_scatter(inst: &Instance) -> Result<Table, DomainError> {
    let grid = FrequencyGrid::centered_omega(inst.omega0(), SCATTER_SPAN, SCATTER_POINTS)?;
    let stack = inst.stack()?;
    let spectrum = stack.spectrum(&grid)?;
    let mut rows = Vec::with_capacity(grid.len());
    for (i, &omega) in grid.omegas().iter().enumerate() {
        let r = spectrum.r[i];
        let t = spectrum.t[i];
        let flux = stack.flux_factor(omega);
        rows.push(vec![
            f(if inst.is_quantum() {
                omega
            } else {
                omega / (2.0 * std::f64::consts::PI)
            }),
            f(r.re),
            f(r.im),
            f(t.re),
            f(t.im),
            f(spectrum.phase_r[i]),
            f(spectrum.phase_t[i]),
            f(r.norm_sqr()),
            f(flux * t.norm_sqr()),
        ]);
    }
    Ok(Table {
        name: "scatter".into(),
        columns: vec![
            Column::new(if inst.is_quantum() { "E" } else { "f" }, inst.frequency_unit()),
            Column::new("re_r", "-"),
            Column::new("im_r", "-"),
            Column::new("re_t", "-"),
            Column::new("im_t", "-"),
            Column::new("phase_r", "rad"),
            Column::new("phase_t", "rad"),
            Column::new("R", "-"),
            Column::new("T", "-"),
        ],
        rows,
        notes: vec![],
    })
}

fn compute_gh(inst: &Instance) -> Result<Table, DomainError> {
    let spec = match &inst.scenario {
        ScenarioConfig::Ftir(c) => inst.ftir_spec(c.gap_or_default()),
        _ => {
            return Err(DomainError::Unsupported {
                output: "gh",
                scenario: inst.name(),
            })
        }
    };
    let omega0 = inst.omega0();
    let shift = goos_haenchen_shift(&spec, omega0)?;
    let finite = scenarios::goos_haenchen_shift_finite_gap(&spec, omega0)?;
    let lambda0 = spec.vacuum_wavelength();
    Ok(Table {
        name: "gh".into(),
        columns: vec![
            Column::new("angle", "rad"),
            Column::new("D", "m"),
            Column::new("D_over_lambda0", "-"),
            Column::new("D_finite_gap", "m"),
        ],
        rows: vec![vec![
            f(spec.incidence_angle),
            f(shift),
            f(shift / lambda0),
            f(finite),
        ]],
        notes: vec![("lambda0[m]".into(), format_float(lambda0))],
    })
}

fn compute_virtuality(inst: &Instance) -> Result<Table, DomainError> {
    let spec = match &inst.scenario {
        ScenarioConfig::Ftir(c) => inst.ftir_spec(c.gap_or_default()),
        _ => {
            return Err(DomainError::Unsupported {
                output: "virtuality",
                scenario: inst.name(),
            })
        }
    };
    let report = virtuality::uncertainty_report(&spec, inst.omega0())?;
    let sign = match report.energy_squared_sign {
        EnergySquaredSign::Positive => "positive",
        EnergySquaredSign::Zero => "zero",
        EnergySquaredSign::Negative => "negative",
    };
    Ok(Table {
        name: "virtuality".into(),
        columns: vec![
            Column::new("kappa", "1/m"),
            Column::new("delta_x", "m"),
            Column::new("delta_p", "kg*m/s"),
            Column::new("delta_n", "-"),
            Column::new("e2_sign", "-"),
            Column::new("raised", "-"),
        ],
        rows: vec![vec![
            f(report.wavenumber.im),
            f(report.delta_x),
            f(report.delta_p_bound),
            f(report.delta_n),
            Value::Text(sign.into()),
            Value::Text(format!("{:?}", report.raised_classification)),
        ]],
        notes: vec![("note".into(), report.note.into())],
    })
}

fn compute_pulse(inst: &Instance, pulse_config: &PulseConfig) -> Result<Table, DomainError> {
    if inst.is_quantum() {
        return Err(DomainError::Unsupported {
            output: "pulse",
            scenario: inst.name(),
        });
    }
    let spec = pulse_config.to_spec(inst.f0());
    let trace = pulse::synthesize(&spec)?;
    let spectrum = inst.stack()?.spectrum(trace.grid())?;
    let trace = pulse::apply_channel(&trace, &spectrum, Channel::Reflection)?;
    let trace = pulse::apply_channel(&trace, &spectrum, Channel::Transmission)?;
    let reflected = trace.reflected.as_ref().expect("just applied");
    let transmitted = trace.transmitted.as_ref().expect("just applied");

    let mut notes = Vec::new();
    for (label, signal) in [
        ("incident", &trace.incident),
        ("reflected", reflected),
        ("transmitted", transmitted),
    ] {
        notes.push((
            format!("arrival_peak_{label}[s]"),
            format_float(signal.arrival.peak),
        ));
        notes.push((
            format!("arrival_centroid_{label}[s]"),
            format_float(signal.arrival.centroid),
        ));
        notes.push((
            format!("arrival_half_max_front_{label}[s]"),
            format_float(signal.arrival.half_max_front),
        ));
    }

    let time_axis = trace.time_axis();
    let mut rows = Vec::with_capacity(time_axis.len());
    for (i, &t) in time_axis.iter().enumerate() {
        rows.push(vec![
            f(t),
            f(trace.incident.samples[i]),
            f(reflected.samples[i]),
            f(transmitted.samples[i]),
            f(trace.incident.envelope[i]),
            f(reflected.envelope[i]),
            f(transmitted.envelope[i]),
        ]);
    }
    Ok(Table {
        name: "pulse".into(),
        columns: vec![
            Column::new("t", "s"),
            Column::new("incident", "-"),
            Column::new("reflected", "-"),
            Column::new("transmitted", "-"),
            Column::new("env_incident", "-"),
            Column::new("env_reflected", "-"),
            Column::new("env_transmitted", "-"),
        ],
        rows,
        notes,
    })
}

fn compute_point(
    scenario: &ScenarioConfig,
    outputs: &[OutputKind],
    pulse_config: &PulseConfig,
) -> Result<Vec<Table>, DomainError> {
    let inst = Instance {
        scenario: scenario.clone(),
    };
    outputs
        .iter()
        .map(|kind| match kind {
            OutputKind::Scatter => compute_scatter(&inst),
            OutputKind::Timing => compute_timing(&inst),
            OutputKind::Hartman => compute_hartman(&inst),
            OutputKind::Gh => compute_gh(&inst),
            OutputKind::Pulse => compute_pulse(&inst, pulse_config),
            OutputKind::Virtuality => compute_virtuality(&inst),
        })
        .collect()
}

/// Execute a run: evaluate every requested output at every sweep point.
/// Sweep points are independent tasks on a worker pool; tables are merged in
/// sweep-index order, so identical configs produce identical bundles at any
/// worker count.
pub fn run(config: &RunConfig) -> Result<ResultBundle, RunError> {
    super::config::validate(config)?;
    let pulse_config = config.pulse.clone().unwrap_or_default();

    let points: Vec<(f64, ScenarioConfig)> = match &config.sweep {
        Some(sweep) => {
            let values = sweep.resolve(&config.scenario)?;
            values
                .into_iter()
                .map(|v| Ok((v, config.scenario.with_parameter(&sweep.parameter, v)?)))
                .collect::<Result<_, ConfigError>>()?
        }
        None => vec![(0.0, config.scenario.clone())],
    };

    type Slot = Mutex<Option<Result<Vec<Table>, DomainError>>>;
    let workers = resolve_workers(config.workers).min(points.len()).max(1);
    let next = AtomicUsize::new(0);
    let slots: Vec<Slot> = points.iter().map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= points.len() {
                    break;
                }
                let result = compute_point(&points[index].1, &config.outputs, &pulse_config);
                *slots[index].lock().expect("worker poisoned a result slot") = Some(result);
            });
        }
    });

    let mut per_point = Vec::with_capacity(points.len());
    for (index, slot) in slots.into_iter().enumerate() {
        let result = slot.into_inner().expect("result slot poisoned").expect("worker filled every slot");
        match result {
            Ok(tables) => per_point.push(tables),
            Err(source) => {
                return Err(RunError::Domain {
                    index,
                    parameter: config
                        .sweep
                        .as_ref()
                        .map(|s| s.parameter.clone())
                        .unwrap_or_else(|| "-".into()),
                    value: points[index].0,
                    source,
                })
            }
        }
    }

    // merge: one table per output kind, sweep column prepended when sweeping
    let mut tables = Vec::new();
    for (k, kind) in config.outputs.iter().enumerate() {
        let mut merged: Option<Table> = None;
        for (p, tables_at_point) in per_point.iter().enumerate() {
            let table = &tables_at_point[k];
            let target = merged.get_or_insert_with(|| Table {
                name: kind.name().into(),
                columns: match &config.sweep {
                    Some(sweep) => {
                        let dim = config
                            .scenario
                            .parameter_dimension(&sweep.parameter)
                            .expect("validated sweep parameter");
                        let unit = match dim {
                            super::units::Dimension::Length => "m",
                            super::units::Dimension::Frequency => "Hz",
                            super::units::Dimension::Time => "s",
                            super::units::Dimension::Angle => "rad",
                            super::units::Dimension::Dimensionless => "-",
                        };
                        let mut columns = vec![Column::new(&sweep.parameter, unit)];
                        columns.extend(table.columns.clone());
                        columns
                    }
                    None => table.columns.clone(),
                },
                rows: Vec::new(),
                notes: if config.sweep.is_some() {
                    Vec::new()
                } else {
                    table.notes.clone()
                },
            });
            for row in &table.rows {
                let mut out_row = Vec::with_capacity(row.len() + 1);
                if config.sweep.is_some() {
                    out_row.push(f(points[p].0));
                }
                out_row.extend(row.iter().cloned());
                target.rows.push(out_row);
            }
        }
        tables.push(merged.expect("at least one sweep point"));
    }

    // the echoed config describes the physics of the run; the worker count
    // is execution detail and must not distinguish otherwise-identical output
    let mut config_echo = config.clone();
    config_echo.workers = None;

    Ok(ResultBundle {
        config: config_echo,
        provenance: Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            convention_hash: ledger_hash(),
            scatter_grid_span: SCATTER_SPAN,
            scatter_grid_points: SCATTER_POINTS,
        },
        tables,
    })
}

/// 17-significant-digit float formatting used by both CSV cells and notes;
/// locale-independent by construction.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

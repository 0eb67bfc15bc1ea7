//! Builders that translate each physical setup into a [`Stack`], plus the
//! Goos-Hänchen shift of frustrated total internal reflection.
//!
//! All five wave families run through the same transfer-matrix engine; the
//! builders differ only in how each region reduces to a wavenumber and a
//! matching weight.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convention::SPEED_OF_LIGHT;
use crate::wavecore::{
    critical_angle, AcousticMedium, Medium, ObliqueContext, Polarization, Region,
};
use crate::xfermat::{Layer, Stack};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("dimension must be positive: {name} = {value}")]
    NonPositiveDimension { name: &'static str, value: f64 },
    #[error("narrow section ({narrow} m) must be narrower than the feed guide ({wide} m)")]
    NotUndersized { narrow: f64, wide: f64 },
    #[error("acoustic array needs at least one segment")]
    EmptyArray,
    #[error(
        "incidence angle {angle_deg:.3}° is below the critical angle {critical_deg:.3}°; \
         the reflection-phase shift formula needs total reflection"
    )]
    BelowCriticalAngle { angle_deg: f64, critical_deg: f64 },
}

/// Frustrated-total-internal-reflection geometry: two prisms separated by an
/// air gap. The defaults reproduce the reference microwave setup: Perspex
/// prisms of index 1.6, 45° incidence, TM polarization, 9.15 GHz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoublePrismSpec {
    pub prism_index: f64,
    /// Air-gap width, m.
    pub gap: f64,
    /// Incidence angle at the prism-air boundary, radians.
    pub incidence_angle: f64,
    pub polarization: Polarization,
    /// Center frequency f₀, Hz.
    pub center_frequency: f64,
}

impl Default for DoublePrismSpec {
    fn default() -> Self {
        let f0 = 9.15e9;
        DoublePrismSpec {
            prism_index: 1.6,
            // one vacuum wavelength; the scan operations vary it anyway
            gap: SPEED_OF_LIGHT / f0,
            incidence_angle: 45f64.to_radians(),
            polarization: Polarization::Tm,
            center_frequency: f0,
        }
    }
}

impl DoublePrismSpec {
    pub fn omega0(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.center_frequency
    }

    /// Vacuum wavelength at the center frequency (32.8 mm at the defaults).
    pub fn vacuum_wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.center_frequency
    }

    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = gap;
        self
    }

    pub fn context(&self) -> ObliqueContext {
        ObliqueContext::new(
            self.incidence_angle,
            self.polarization,
            Medium::new("prism", self.prism_index),
        )
    }

    pub fn stack(&self) -> Stack {
        double_prism(self)
    }
}

/// Build the prism | air-gap | prism stack. The transverse wavenumber is
/// pinned at the center frequency, so spectra taken over a band follow one
/// conserved transverse mode (the quantity whose phase derivative is the
/// delay seen by a detector that tracks the beam).
///
/// Below-critical angles are allowed and simply produce a propagating gap.
pub fn double_prism(spec: &DoublePrismSpec) -> Stack {
    assert!(spec.gap >= 0.0, "gap must be nonnegative");
    assert!(spec.center_frequency > 0.0);
    let prism = Medium::new("prism", spec.prism_index);
    Stack::new(
        Region::Dielectric(prism.clone()),
        vec![Layer::new(spec.gap, Region::vacuum())],
        Region::Dielectric(prism),
        spec.context(),
    )
    .with_pinned_transverse(spec.omega0())
}

/// Waveguide with an undersized (below-cutoff) section:
/// feed guide | narrow segment | feed guide, all in TE₁₀ dispersion.
pub fn undersized_waveguide(
    wide_width: f64,
    narrow_width: f64,
    narrow_length: f64,
) -> Result<Stack, ScenarioError> {
    for (name, value) in [
        ("wide_width", wide_width),
        ("narrow_width", narrow_width),
        ("narrow_length", narrow_length),
    ] {
        let zero_ok = name == "narrow_length" && value == 0.0;
        let positive = value.is_finite() && value > 0.0;
        if !positive && !zero_ok {
            return Err(ScenarioError::NonPositiveDimension { name, value });
        }
    }
    if narrow_width >= wide_width {
        return Err(ScenarioError::NotUndersized {
            narrow: narrow_width,
            wide: wide_width,
        });
    }
    Ok(Stack::new(
        Region::WaveguideTe10 { width: wide_width },
        vec![Layer::new(narrow_length, Region::WaveguideTe10 { width: narrow_width })],
        Region::WaveguideTe10 { width: wide_width },
        ObliqueContext::normal(),
    ))
}

/// Periodic two-index lattice at normal incidence: `periods` repetitions of
/// (high-index layer, low-index layer) embedded in the low-index medium, so a
/// contrast-free lattice is mismatch-free.
pub fn photonic_lattice(
    n_high: f64,
    n_low: f64,
    d_high: f64,
    d_low: f64,
    periods: usize,
) -> Stack {
    assert!(periods >= 1, "need at least one period");
    assert!(n_high > 0.0 && n_low > 0.0 && d_high > 0.0 && d_low > 0.0);
    let high = Region::Dielectric(Medium::new("high", n_high));
    let low = Region::Dielectric(Medium::new("low", n_low));
    let mut layers = Vec::with_capacity(2 * periods);
    for _ in 0..periods {
        layers.push(Layer::new(d_high, high.clone()));
        layers.push(Layer::new(d_low, low.clone()));
    }
    Stack::new(low.clone(), layers, low, ObliqueContext::normal())
}

/// Quarter-wave lattice centered at `f_center`: each layer is λ/(4n) thick,
/// which centers a band gap there by construction.
pub fn quarter_wave_lattice(n_high: f64, n_low: f64, f_center: f64, periods: usize) -> Stack {
    let d_high = SPEED_OF_LIGHT / (4.0 * f_center * n_high);
    let d_low = SPEED_OF_LIGHT / (4.0 * f_center * n_low);
    photonic_lattice(n_high, n_low, d_high, d_low, periods)
}

/// Half-trace of the lattice unit-cell transfer matrix at `omega`; its real
/// part is the Bloch-phase cosine, so `|Re| > 1` marks a forbidden band.
pub fn bloch_half_trace(
    n_high: f64,
    n_low: f64,
    d_high: f64,
    d_low: f64,
    omega: f64,
) -> Complex64 {
    let cell = photonic_lattice(n_high, n_low, d_high, d_low, 1);
    // strip the vacuum boundaries: unit cell = P_L I_HL P_H, periodic in (H, L)
    let kx = 0.0;
    let kh = cell.layers[0].region.wavenumber(omega, kx);
    let kl = cell.layers[1].region.wavenumber(omega, kx);
    let wh = cell.layers[0].region.matching_weight(omega, kx, Polarization::Te);
    let wl = cell.layers[1].region.matching_weight(omega, kx, Polarization::Te);
    let i_hl = crate::xfermat::interface_from_weights(wh, wl).expect("nonzero weights");
    let i_lh = crate::xfermat::interface_from_weights(wl, wh).expect("nonzero weights");
    let m = i_lh
        * (crate::xfermat::propagation_matrix(kl, d_low)
            * (i_hl * crate::xfermat::propagation_matrix(kh, d_high)));
    0.5 * (m.m11 + m.m22)
}

/// Layered acoustic array at normal incidence. The entry half-space takes the
/// first segment's medium and the exit half-space the last segment's, so a
/// uniform chain is mismatch-free.
pub fn acoustic_array(segments: &[(AcousticMedium, f64)]) -> Result<Stack, ScenarioError> {
    if segments.is_empty() {
        return Err(ScenarioError::EmptyArray);
    }
    for (medium, length) in segments {
        if medium.sound_speed <= 0.0 || medium.sound_speed.is_nan() {
            return Err(ScenarioError::NonPositiveDimension {
                name: "sound_speed",
                value: medium.sound_speed,
            });
        }
        if medium.impedance <= 0.0 || medium.impedance.is_nan() {
            return Err(ScenarioError::NonPositiveDimension {
                name: "impedance",
                value: medium.impedance,
            });
        }
        if *length < 0.0 {
            return Err(ScenarioError::NonPositiveDimension {
                name: "segment_length",
                value: *length,
            });
        }
    }
    let layers = segments
        .iter()
        .map(|(m, d)| Layer::new(*d, Region::Acoustic(*m)))
        .collect();
    Ok(Stack::new(
        Region::Acoustic(segments[0].0),
        layers,
        Region::Acoustic(segments[segments.len() - 1].0),
        ObliqueContext::normal(),
    ))
}

/// Quarter-wave acoustic band-gap array: `periods` repetitions of a
/// high-impedance quarter-wave segment followed by a base-medium quarter-wave
/// segment, embedded in the base medium. The gap is centered at `f_gap`.
pub fn acoustic_band_gap_array(
    base: AcousticMedium,
    impedance_contrast: f64,
    f_gap: f64,
    periods: usize,
) -> Result<Stack, ScenarioError> {
    if impedance_contrast <= 0.0 || impedance_contrast.is_nan() {
        return Err(ScenarioError::NonPositiveDimension {
            name: "impedance_contrast",
            value: impedance_contrast,
        });
    }
    if f_gap <= 0.0 || f_gap.is_nan() {
        return Err(ScenarioError::NonPositiveDimension {
            name: "f_gap",
            value: f_gap,
        });
    }
    let high = AcousticMedium::new(base.sound_speed, base.impedance * impedance_contrast);
    let quarter = base.sound_speed / (4.0 * f_gap);
    let mut segments = Vec::with_capacity(2 * periods + 1);
    // zero-length lead-in fixes the entry half-space to the base medium
    segments.push((base, 0.0));
    for _ in 0..periods {
        segments.push((high, quarter));
        segments.push((base, quarter));
    }
    acoustic_array(&segments)
}

/// Rectangular quantum barrier in natural units (ħ = m = 1): free regions of
/// energy `particle_energy` around a barrier of height `barrier_height` and
/// length `barrier_length`. For `E < V₀` the interior wavenumber is
/// `iκ` with `κ = sqrt(2(V₀ - E))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumBarrierSpec {
    pub barrier_height: f64,
    pub barrier_length: f64,
    pub particle_energy: f64,
}

impl Default for QuantumBarrierSpec {
    fn default() -> Self {
        // k = kappa = 1 tunneling point, comfortably opaque
        QuantumBarrierSpec {
            barrier_height: 1.0,
            barrier_length: 6.0,
            particle_energy: 0.5,
        }
    }
}

impl QuantumBarrierSpec {
    /// Interior decay constant for E < V₀.
    pub fn kappa(&self) -> f64 {
        (2.0 * (self.barrier_height - self.particle_energy)).max(0.0).sqrt()
    }

    /// Free-space wavenumber k = sqrt(2E).
    pub fn wavenumber(&self) -> f64 {
        (2.0 * self.particle_energy).sqrt()
    }

    pub fn stack(&self) -> Stack {
        quantum_barrier(self)
    }
}

pub fn quantum_barrier(spec: &QuantumBarrierSpec) -> Stack {
    assert!(spec.barrier_height >= 0.0, "barrier height must be nonnegative");
    assert!(spec.barrier_length > 0.0, "barrier length must be positive");
    assert!(spec.particle_energy > 0.0, "particle energy must be positive");
    Stack::new(
        Region::Quantum { potential: 0.0 },
        vec![Layer::new(spec.barrier_length, Region::Quantum { potential: spec.barrier_height })],
        Region::Quantum { potential: 0.0 },
        ObliqueContext::normal(),
    )
}

/// Goos-Hänchen shift `D = -dφ_r/dk_x` of total internal reflection at the
/// single prism-air interface (semi-infinite gap), by central differences
/// over the transverse wavenumber at fixed frequency.
///
/// Rejects angles at or below critical, where total reflection does not occur
/// and this formula does not define a shift.
pub fn goos_haenchen_shift(spec: &DoublePrismSpec, omega: f64) -> Result<f64, ScenarioError> {
    let critical = critical_angle(spec.prism_index, 1.0).expect("prism denser than air");
    if spec.incidence_angle <= critical {
        return Err(ScenarioError::BelowCriticalAngle {
            angle_deg: spec.incidence_angle.to_degrees(),
            critical_deg: critical.to_degrees(),
        });
    }
    let prism = Region::Dielectric(Medium::new("prism", spec.prism_index));
    let gap = Region::vacuum();
    let pol = spec.polarization;
    let phase_r = |kx: f64| -> f64 {
        let wp = prism.matching_weight(omega, kx, pol);
        let wg = gap.matching_weight(omega, kx, pol);
        ((wp - wg) / (wp + wg)).arg()
    };
    let kx = spec.context().transverse_wavenumber(omega);
    let h = kx * 1e-6;
    Ok(-(phase_r(kx + h) - phase_r(kx - h)) / (2.0 * h))
}

/// Finite-gap variant: the same derivative taken on the reflection phase of
/// the full double-prism stack at the given gap width.
pub fn goos_haenchen_shift_finite_gap(
    spec: &DoublePrismSpec,
    omega: f64,
) -> Result<f64, ScenarioError> {
    let critical = critical_angle(spec.prism_index, 1.0).expect("prism denser than air");
    if spec.incidence_angle <= critical {
        return Err(ScenarioError::BelowCriticalAngle {
            angle_deg: spec.incidence_angle.to_degrees(),
            critical_deg: critical.to_degrees(),
        });
    }
    let prism = Region::Dielectric(Medium::new("prism", spec.prism_index));
    let gap = Region::vacuum();
    let pol = spec.polarization;
    let phase_at = |kx_probe: f64| -> f64 {
        let wp = prism.matching_weight(omega, kx_probe, pol);
        let wg = gap.matching_weight(omega, kx_probe, pol);
        let i1 = crate::xfermat::interface_from_weights(wp, wg).expect("nondegenerate");
        let p = crate::xfermat::propagation_matrix(gap.wavenumber(omega, kx_probe), spec.gap);
        let i2 = crate::xfermat::interface_from_weights(wg, wp).expect("nondegenerate");
        let m = i2 * (p * i1);
        let (r, _) = crate::xfermat::scattering_from_matrix(&m).expect("invertible");
        r.arg()
    };
    let kx = spec.context().transverse_wavenumber(omega);
    let h = kx * 1e-6;
    Ok(-(phase_at(kx + h) - phase_at(kx - h)) / (2.0 * h))
}

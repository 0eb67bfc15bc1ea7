//! Media, dispersion relations, and complex longitudinal wavenumbers.
//!
//! Everything a stratified-media solver needs to know about a region of space
//! reduces to two frequency-dependent quantities: the longitudinal wavenumber
//! `k_z(ω)` and the interface matching weight (see [`Region::matching_weight`]).
//! This module provides both for the four wave families handled by the crate:
//! oblique dielectric optics, TE₁₀ rectangular waveguides, normal-incidence
//! acoustics, and 1D quantum barriers in natural units.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convention::SPEED_OF_LIGHT;

/// Relative threshold below which a squared wavenumber counts as exactly at
/// cutoff. Scaled by the magnitude of the dispersion terms so the decision is
/// resolution-independent.
const CUTOFF_REL_EPS: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum WavecoreError {
    #[error("no total-reflection regime: n_dense ({dense}) must exceed n_rare ({rare}) > 0")]
    NoTotalReflection { dense: f64, rare: f64 },
    #[error("frequency grid needs at least {min} points, got {got}")]
    GridTooSmall { min: usize, got: usize },
    #[error("frequency grid spacing must be positive and start above zero")]
    BadGridRange,
}

/// Linear polarization state. TM means the electric field lies in the plane
/// of incidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Polarization {
    Te,
    Tm,
}

#[derive(Clone, Copy)]
enum Dispersion {
    Constant(f64),
    /// Hook for dispersive media: refractive index as a pure function of ω.
    Custom(fn(f64) -> f64),
}

impl std::fmt::Debug for Dispersion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dispersion::Constant(n) => write!(f, "Constant({n})"),
            Dispersion::Custom(_) => write!(f, "Custom(fn)"),
        }
    }
}

/// An isotropic lossless dielectric, described by its refractive index.
#[derive(Debug, Clone)]
pub struct Medium {
    label: String,
    dispersion: Dispersion,
}

impl Medium {
    /// A non-dispersive medium with constant index `n > 0`.
    ///
    /// Panics if `n` is not strictly positive.
    pub fn new(label: impl Into<String>, refractive_index: f64) -> Self {
        assert!(
            refractive_index > 0.0 && refractive_index.is_finite(),
            "refractive index must be positive and finite, got {refractive_index}"
        );
        Medium {
            label: label.into(),
            dispersion: Dispersion::Constant(refractive_index),
        }
    }

    /// A medium whose index is an arbitrary pure function of angular frequency.
    pub fn with_dispersion(label: impl Into<String>, index: fn(f64) -> f64) -> Self {
        Medium {
            label: label.into(),
            dispersion: Dispersion::Custom(index),
        }
    }

    pub fn vacuum() -> Self {
        Medium::new("vacuum", 1.0)
    }

    /// Refractive index at angular frequency `omega`.
    pub fn index_at(&self, omega: f64) -> f64 {
        match self.dispersion {
            Dispersion::Constant(n) => n,
            Dispersion::Custom(f) => f(omega),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// A lossless fluid in which only normal-incidence plane waves propagate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcousticMedium {
    /// Sound speed, m/s.
    pub sound_speed: f64,
    /// Characteristic impedance ρc, Pa·s/m.
    pub impedance: f64,
}

impl AcousticMedium {
    pub fn new(sound_speed: f64, impedance: f64) -> Self {
        assert!(
            sound_speed > 0.0 && impedance > 0.0,
            "acoustic medium needs positive sound speed and impedance"
        );
        AcousticMedium {
            sound_speed,
            impedance,
        }
    }
}

/// Incidence geometry shared by every layer of a stack: the angle fixes the
/// conserved transverse wavenumber `k_x = (ω/c)·n_incident·sin(θ)`, which is
/// linear in frequency for a fixed geometric angle.
#[derive(Debug, Clone)]
pub struct ObliqueContext {
    /// Incidence angle in radians, in `[0, π/2)`.
    pub incidence_angle: f64,
    pub polarization: Polarization,
    pub incident_medium: Medium,
}

impl ObliqueContext {
    pub fn new(incidence_angle: f64, polarization: Polarization, incident_medium: Medium) -> Self {
        assert!(
            (0.0..std::f64::consts::FRAC_PI_2).contains(&incidence_angle),
            "incidence angle must lie in [0, pi/2), got {incidence_angle}"
        );
        ObliqueContext {
            incidence_angle,
            polarization,
            incident_medium,
        }
    }

    /// Normal incidence in vacuum; the geometry used by the waveguide,
    /// acoustic, and quantum scenarios where obliquity has no meaning.
    pub fn normal() -> Self {
        ObliqueContext::new(0.0, Polarization::Te, Medium::vacuum())
    }

    /// Conserved transverse wavenumber at angular frequency `omega`; exactly
    /// linear in `omega` for fixed angle.
    pub fn transverse_wavenumber(&self, omega: f64) -> f64 {
        omega / SPEED_OF_LIGHT * self.incident_medium.index_at(omega) * self.incidence_angle.sin()
    }
}

/// Propagating, evanescent, or exactly-at-cutoff classification of a
/// longitudinal wavenumber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Propagating,
    Evanescent,
    Cutoff,
}

/// A longitudinal wavenumber on the fixed branch: purely real (propagating)
/// or purely imaginary with positive imaginary part (evanescent, decaying).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumber {
    pub value: Complex64,
    pub classification: Classification,
}

impl WaveNumber {
    /// Build from the real squared wavenumber `k_z² = k₀²n² - k_x²` (or its
    /// analog). `scale` is the magnitude of the competing dispersion terms,
    /// used only to decide when the discriminant counts as exactly zero.
    pub fn from_squared(k_squared: f64, scale: f64) -> Self {
        if k_squared.abs() <= CUTOFF_REL_EPS * scale {
            WaveNumber {
                value: Complex64::new(0.0, 0.0),
                classification: Classification::Cutoff,
            }
        } else if k_squared > 0.0 {
            WaveNumber {
                value: Complex64::new(k_squared.sqrt(), 0.0),
                classification: Classification::Propagating,
            }
        } else {
            WaveNumber {
                value: Complex64::new(0.0, (-k_squared).sqrt()),
                classification: Classification::Evanescent,
            }
        }
    }

    /// Decay constant κ = Im(k_z); zero for propagating waves.
    pub fn kappa(&self) -> f64 {
        self.value.im
    }

    pub fn is_evanescent(&self) -> bool {
        self.classification == Classification::Evanescent
    }

    pub fn is_propagating(&self) -> bool {
        self.classification == Classification::Propagating
    }
}

/// One homogeneous region of a stratified problem, in any of the four wave
/// families. A region plus `(ω, k_x)` determines the longitudinal wavenumber;
/// a region plus polarization determines the interface matching weight.
#[derive(Debug, Clone)]
pub enum Region {
    Dielectric(Medium),
    /// Rectangular waveguide carrying only the TE₁₀ mode:
    /// `k_z² = (ω/c)² - (π/a)²`, cutoff at `f_c = c/(2a)`.
    WaveguideTe10 { width: f64 },
    Acoustic(AcousticMedium),
    /// Constant potential in natural units (ħ = m = 1): `k² = 2(E - V)`,
    /// with the grid's "angular frequency" standing in for the energy E.
    Quantum { potential: f64 },
}

impl Region {
    pub fn vacuum() -> Self {
        Region::Dielectric(Medium::vacuum())
    }

    /// Longitudinal wavenumber at `(omega, k_x)` on the fixed branch.
    pub fn wavenumber(&self, omega: f64, kx: f64) -> WaveNumber {
        match self {
            Region::Dielectric(medium) => {
                let kn = omega / SPEED_OF_LIGHT * medium.index_at(omega);
                WaveNumber::from_squared(kn * kn - kx * kx, kn * kn + kx * kx)
            }
            Region::WaveguideTe10 { width } => {
                let k0 = omega / SPEED_OF_LIGHT;
                let kc = std::f64::consts::PI / width;
                WaveNumber::from_squared(k0 * k0 - kc * kc, k0 * k0 + kc * kc)
            }
            Region::Acoustic(medium) => {
                let k = omega / medium.sound_speed;
                WaveNumber::from_squared(k * k, k * k)
            }
            Region::Quantum { potential } => {
                let two_e = 2.0 * omega;
                let two_v = 2.0 * potential;
                WaveNumber::from_squared(two_e - two_v, two_e.abs() + two_v.abs())
            }
        }
    }

    /// The quantity whose continuity (together with the field itself) fixes
    /// the interface conditions: `k_z` for TE, `k_z/n²` for TM, `1/Z` for
    /// acoustic pressure waves, `k` for quantum amplitudes.
    pub fn matching_weight(&self, omega: f64, kx: f64, pol: Polarization) -> Complex64 {
        match self {
            Region::Dielectric(medium) => {
                let kz = self.wavenumber(omega, kx).value;
                match pol {
                    Polarization::Te => kz,
                    Polarization::Tm => {
                        let n = medium.index_at(omega);
                        kz / (n * n)
                    }
                }
            }
            Region::WaveguideTe10 { .. } | Region::Quantum { .. } => {
                self.wavenumber(omega, kx).value
            }
            Region::Acoustic(medium) => Complex64::new(1.0 / medium.impedance, 0.0),
        }
    }
}

/// Longitudinal wavenumber of a dielectric medium under an oblique context:
/// `k_z = sqrt(k₀²n² - k_x²)` on the fixed branch, with `k_x` taken from the
/// context at the same frequency.
pub fn longitudinal_wavenumber(medium: &Medium, ctx: &ObliqueContext, omega: f64) -> WaveNumber {
    debug_assert!(omega > 0.0);
    Region::Dielectric(medium.clone()).wavenumber(omega, ctx.transverse_wavenumber(omega))
}

/// Critical angle `arcsin(n_rare / n_dense)` for total internal reflection.
pub fn critical_angle(n_dense: f64, n_rare: f64) -> Result<f64, WavecoreError> {
    if !(n_dense > n_rare && n_rare > 0.0) {
        return Err(WavecoreError::NoTotalReflection {
            dense: n_dense,
            rare: n_rare,
        });
    }
    Ok((n_rare / n_dense).asin())
}

/// TE₁₀ longitudinal wavenumber of a rectangular waveguide of width `width`:
/// purely imaginary below the cutoff `f_c = c/(2·width)`.
pub fn waveguide_wavenumber(width: f64, omega: f64) -> WaveNumber {
    debug_assert!(width > 0.0 && omega > 0.0);
    Region::WaveguideTe10 { width }.wavenumber(omega, 0.0)
}

/// A strictly increasing, uniformly spaced angular-frequency grid with a
/// designated center. For quantum scenarios the same structure carries an
/// energy grid in natural units.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    omegas: Vec<f64>,
    omega_center: f64,
}

impl FrequencyGrid {
    /// Minimum number of points for derivative work: a 3-point stencil with
    /// eight samples of headroom.
    pub const MIN_POINTS: usize = 3;

    pub fn new(omega_start: f64, spacing: f64, len: usize, omega_center: f64) -> Result<Self, WavecoreError> {
        if len < Self::MIN_POINTS {
            return Err(WavecoreError::GridTooSmall {
                min: Self::MIN_POINTS,
                got: len,
            });
        }
        if !(omega_start > 0.0 && spacing > 0.0) {
            return Err(WavecoreError::BadGridRange);
        }
        let omegas = (0..len).map(|i| omega_start + spacing * i as f64).collect();
        Ok(FrequencyGrid {
            omegas,
            omega_center,
        })
    }

    /// Symmetric grid around `omega_center` spanning the given fractional
    /// width. Odd lengths put the center exactly on a grid point.
    pub fn centered_omega(omega_center: f64, fractional_span: f64, len: usize) -> Result<Self, WavecoreError> {
        if !(omega_center > 0.0 && fractional_span > 0.0 && fractional_span < 2.0) {
            return Err(WavecoreError::BadGridRange);
        }
        let half = 0.5 * fractional_span * omega_center;
        let spacing = 2.0 * half / (len.max(2) - 1) as f64;
        FrequencyGrid::new(omega_center - half, spacing, len, omega_center)
    }

    /// Symmetric grid around a center given in Hz.
    pub fn centered(f_center_hz: f64, fractional_span: f64, len: usize) -> Result<Self, WavecoreError> {
        FrequencyGrid::centered_omega(2.0 * std::f64::consts::PI * f_center_hz, fractional_span, len)
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.omegas[1] - self.omegas[0]
    }

    pub fn center_omega(&self) -> f64 {
        self.omega_center
    }

    /// Center frequency f₀ in Hz.
    pub fn center_frequency(&self) -> f64 {
        self.omega_center / (2.0 * std::f64::consts::PI)
    }

    /// Index of the grid point closest to the center.
    pub fn center_index(&self) -> usize {
        let i = (self.omega_center - self.omegas[0]) / self.spacing();
        (i.round().max(0.0) as usize).min(self.omegas.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F0: f64 = 9.15e9;

    fn omega0() -> f64 {
        2.0 * std::f64::consts::PI * F0
    }

    #[test]
    fn vacuum_normal_incidence_wavenumber() {
        // k0 = 2*pi*f/c at 9.15 GHz
        let ctx = ObliqueContext::normal();
        let k = longitudinal_wavenumber(&Medium::vacuum(), &ctx, omega0());
        assert!(k.is_propagating());
        assert!((k.value.re - 191.7698195).abs() < 1e-6, "kz = {}", k.value);
        assert_eq!(k.value.im, 0.0);
    }

    #[test]
    fn reference_gap_mode_is_evanescent() {
        // air gap behind an n = 1.6 prism at 45 degrees: kappa = k0*sqrt(0.28)
        let ctx = ObliqueContext::new(
            45f64.to_radians(),
            Polarization::Tm,
            Medium::new("perspex", 1.6),
        );
        let k = longitudinal_wavenumber(&Medium::vacuum(), &ctx, omega0());
        assert!(k.is_evanescent());
        assert!((k.kappa() - 101.475).abs() < 0.05, "kappa = {}", k.kappa());
        assert_eq!(k.value.re, 0.0);
    }

    #[test]
    fn normal_incidence_has_no_transverse_part() {
        let ctx = ObliqueContext::new(0.0, Polarization::Te, Medium::new("dense", 2.2));
        let m = Medium::new("sample", 1.7);
        let k = longitudinal_wavenumber(&m, &ctx, omega0());
        let expected = omega0() / SPEED_OF_LIGHT * 1.7;
        assert!(k.is_propagating());
        assert!((k.value.re - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn critical_angle_matches_known_values() {
        let deg = critical_angle(1.6, 1.0).unwrap().to_degrees();
        assert!((deg - 38.68).abs() < 0.01, "got {deg}");
        let grazing = critical_angle(1.5, 1.5 * (std::f64::consts::FRAC_PI_2).sin());
        assert!(grazing.is_err(), "equal indices have no TIR regime");
        let thirty = critical_angle(2.0, 1.0).unwrap().to_degrees();
        assert!((thirty - 30.0).abs() < 1e-12);
    }

    #[test]
    fn critical_angle_rejects_inverted_indices() {
        assert!(critical_angle(1.0, 1.6).is_err());
        assert!(critical_angle(1.6, 0.0).is_err());
        assert!(critical_angle(1.6, -1.0).is_err());
    }

    #[test]
    fn undersized_waveguide_is_evanescent() {
        // a = 10 mm: fc ~ 15 GHz, so 9.15 GHz is below cutoff
        let k = waveguide_wavenumber(0.010, omega0());
        assert!(k.is_evanescent());
        assert!((k.kappa() - 248.838).abs() < 0.05, "kappa = {}", k.kappa());
    }

    #[test]
    fn waveguide_at_exact_cutoff() {
        let width = 0.010;
        let fc = SPEED_OF_LIGHT / (2.0 * width);
        let k = waveguide_wavenumber(width, 2.0 * std::f64::consts::PI * fc);
        assert_eq!(k.classification, Classification::Cutoff);
        assert_eq!(k.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn oversized_waveguide_propagates() {
        // a = 30 mm: fc ~ 5 GHz < 9.15 GHz
        let k = waveguide_wavenumber(0.030, omega0());
        assert!(k.is_propagating());
        let expected = ((omega0() / SPEED_OF_LIGHT).powi(2)
            - (std::f64::consts::PI / 0.030).powi(2))
        .sqrt();
        assert!((k.value.re - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn snell_consistency_at_critical_angle() {
        // transmitted kz in the rare medium vanishes at the critical angle
        let theta_c = critical_angle(1.6, 1.0).unwrap();
        let ctx = ObliqueContext::new(theta_c, Polarization::Te, Medium::new("dense", 1.6));
        let k = longitudinal_wavenumber(&Medium::vacuum(), &ctx, omega0());
        assert_eq!(k.classification, Classification::Cutoff, "kz = {:?}", k);
    }

    #[test]
    fn continuity_across_critical_angle() {
        // |kz| as a function of angle has no jump at the critical angle
        let theta_c = critical_angle(1.6, 1.0).unwrap();
        let mut last: Option<f64> = None;
        let mut max_step: f64 = 0.0;
        for i in 0..=2000 {
            let theta = theta_c - 0.01 + 0.02 * i as f64 / 2000.0;
            let ctx = ObliqueContext::new(theta, Polarization::Te, Medium::new("dense", 1.6));
            let k = longitudinal_wavenumber(&Medium::vacuum(), &ctx, omega0());
            let mag = k.value.norm();
            if let Some(prev) = last {
                max_step = max_step.max((mag - prev).abs());
            }
            last = Some(mag);
        }
        // grid-resolution scale: |kz| ~ sqrt near the transition, so steps
        // shrink with the scan resolution but stay far below k0
        assert!(max_step < 0.02 * omega0() / SPEED_OF_LIGHT, "step {max_step}");
    }

    #[test]
    fn dispersion_hook_feeds_the_wavenumber() {
        fn index(omega: f64) -> f64 {
            1.0 + 1e10 / omega
        }
        let medium = Medium::with_dispersion("model", index);
        let w = omega0();
        assert_eq!(medium.index_at(w), 1.0 + 1e10 / w);
        let ctx = ObliqueContext::normal();
        let k = longitudinal_wavenumber(&medium, &ctx, w);
        let expected = w / SPEED_OF_LIGHT * index(w);
        assert!((k.value.re - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn grid_rejects_too_few_points() {
        assert!(FrequencyGrid::new(1.0, 1.0, 2, 1.5).is_err());
        assert!(FrequencyGrid::centered(F0, 0.01, 2).is_err());
    }

    #[test]
    fn centered_grid_puts_center_on_odd_grids() {
        let g = FrequencyGrid::centered(F0, 0.02, 33).unwrap();
        assert_eq!(g.len(), 33);
        assert_eq!(g.center_index(), 16);
        assert!((g.omegas()[16] - g.center_omega()).abs() < 1e-6 * g.center_omega());
        assert!((g.center_frequency() - F0).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn branch_consistency(n in 0.1f64..4.0, angle in 0.0f64..1.55, f in 1e6f64..1e12) {
            // for every lossless input, Re(kz)*Im(kz) = 0 exactly
            let ctx = ObliqueContext::new(angle, Polarization::Te, Medium::new("inc", 1.6));
            let k = longitudinal_wavenumber(&Medium::new("m", n), &ctx, 2.0 * std::f64::consts::PI * f);
            prop_assert_eq!(k.value.re * k.value.im, 0.0);
            match k.classification {
                Classification::Propagating => prop_assert!(k.value.re > 0.0 && k.value.im == 0.0),
                Classification::Evanescent => prop_assert!(k.value.im > 0.0 && k.value.re == 0.0),
                Classification::Cutoff => prop_assert_eq!(k.value.norm(), 0.0),
            }
        }

        #[test]
        fn transverse_wavenumber_is_frequency_linear(
            n in 0.5f64..3.0, angle in 0.0f64..1.55, f in 1e6f64..1e12
        ) {
            let ctx = ObliqueContext::new(angle, Polarization::Tm, Medium::new("inc", n));
            let w = 2.0 * std::f64::consts::PI * f;
            let kx1 = ctx.transverse_wavenumber(w);
            let kx2 = ctx.transverse_wavenumber(2.0 * w);
            if kx1 > 0.0 {
                prop_assert!((kx2 / kx1 - 2.0).abs() < 1e-14);
            } else {
                prop_assert_eq!(kx2, 0.0);
            }
        }
    }
}

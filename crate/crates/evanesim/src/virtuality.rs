//! Non-classicality diagnostics of evanescent modes: the sign of the squared
//! relativistic energy assigned to a complex wavenumber, and the
//! uncertainty-relation bookkeeping of the frustrated-total-reflection gap.

use num_complex::Complex64;
use thiserror::Error;

use crate::convention::HBAR;
use crate::scenarios::DoublePrismSpec;
use crate::wavecore::{Classification, Medium, Region, WaveNumber};

#[derive(Debug, Error)]
pub enum VirtualityError {
    #[error("gap mode is not evanescent at omega = {omega} (classification {classification:?})")]
    NotEvanescent {
        omega: f64,
        classification: Classification,
    },
}

/// Sign of `E² = (ħkc)²` evaluated on a complex wavenumber: a purely
/// imaginary `k` drives the squared energy negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySquaredSign {
    Positive,
    Zero,
    Negative,
}

/// Report the sign of `(ħ|Re k|c)² - (ħ|Im k|c)²`.
pub fn einstein_check(k: &WaveNumber) -> EnergySquaredSign {
    let s = k.value.re * k.value.re - k.value.im * k.value.im;
    if s > 0.0 {
        EnergySquaredSign::Positive
    } else if s < 0.0 {
        EnergySquaredSign::Negative
    } else {
        EnergySquaredSign::Zero
    }
}

/// Localization and observability bookkeeping of an evanescent gap mode.
#[derive(Debug, Clone)]
pub struct VirtualityReport {
    /// Gap-mode longitudinal wavenumber, 1/m.
    pub wavenumber: Complex64,
    pub energy_squared_sign: EnergySquaredSign,
    /// Localization length 1/κ of the decaying mode, m.
    pub delta_x: f64,
    /// Momentum-uncertainty lower bound ħκ, kg·m/s.
    pub delta_p_bound: f64,
    /// Dimensionless index increment √(n₂²sin²θ - n₁²) that lifts the gap
    /// mode into the propagating regime.
    pub delta_n: f64,
    /// Classification of the gap wavenumber recomputed with index n₁ + Δn.
    pub raised_classification: Classification,
    /// Residual |Im k_z| of the raised mode, 1/m (zero when truly lifted).
    pub raised_imag_residual: f64,
    /// The unnormalized form of the bound for reference: the right-hand side
    /// with wavenumber dimensions equals κ itself; Δn is its k₀-normalized,
    /// dimensionless reading.
    pub note: &'static str,
}

const DELTA_N_NOTE: &str = "delta_n = sqrt(n2^2 sin^2(theta) - n1^2) is the k0-normalized \
reading of the wavenumber-valued bound hbar*kappa = hbar*k0*sqrt(n2^2 sin^2(theta) - n1^2); \
the unnormalized right-hand side has units 1/m and equals kappa. delta_x is taken as the \
localization length 1/kappa of the exponential tail.";

/// Uncertainty report for the double-prism gap at `omega`.
///
/// Requires the gap mode to be evanescent; at or below the critical angle the
/// construction has nothing to report and the call fails.
pub fn uncertainty_report(
    spec: &DoublePrismSpec,
    omega: f64,
) -> Result<VirtualityReport, VirtualityError> {
    let kx = spec.context().transverse_wavenumber(omega);
    let gap = Region::vacuum();
    let k_gap = gap.wavenumber(omega, kx);
    if !k_gap.is_evanescent() {
        return Err(VirtualityError::NotEvanescent {
            omega,
            classification: k_gap.classification,
        });
    }
    let kappa = k_gap.kappa();
    let sin_theta = spec.incidence_angle.sin();
    let delta_n = (spec.prism_index * spec.prism_index * sin_theta * sin_theta - 1.0)
        .max(0.0)
        .sqrt();

    let raised = Region::Dielectric(Medium::new("raised gap", 1.0 + delta_n)).wavenumber(omega, kx);

    Ok(VirtualityReport {
        wavenumber: k_gap.value,
        energy_squared_sign: einstein_check(&k_gap),
        delta_x: 1.0 / kappa,
        delta_p_bound: HBAR * kappa,
        delta_n,
        raised_classification: raised.classification,
        raised_imag_residual: raised.value.im.abs(),
        note: DELTA_N_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convention::SPEED_OF_LIGHT;
    use crate::wavecore::{critical_angle, ObliqueContext, Polarization};

    const F0: f64 = 9.15e9;

    fn omega0() -> f64 {
        2.0 * std::f64::consts::PI * F0
    }

    #[test]
    fn einstein_sign_tracks_classification() {
        let real = WaveNumber::from_squared(191.77f64.powi(2), 1e5);
        assert_eq!(einstein_check(&real), EnergySquaredSign::Positive);
        let imaginary = WaveNumber::from_squared(-(101.5f64.powi(2)), 1e5);
        assert_eq!(einstein_check(&imaginary), EnergySquaredSign::Negative);
        let zero = WaveNumber::from_squared(0.0, 1.0);
        assert_eq!(einstein_check(&zero), EnergySquaredSign::Zero);
    }

    #[test]
    fn einstein_sign_agrees_with_classification_on_random_configs() {
        // negative squared energy exactly when the mode is evanescent
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let n_inc = 1.0 + 2.0 * next();
            let n_med = 0.3 + 2.5 * next();
            let angle = 1.5 * next();
            let ctx = ObliqueContext::new(angle, Polarization::Te, Medium::new("inc", n_inc));
            let k = crate::wavecore::longitudinal_wavenumber(
                &Medium::new("m", n_med),
                &ctx,
                omega0() * (0.5 + next()),
            );
            let sign = einstein_check(&k);
            match k.classification {
                Classification::Propagating => assert_eq!(sign, EnergySquaredSign::Positive),
                Classification::Evanescent => assert_eq!(sign, EnergySquaredSign::Negative),
                Classification::Cutoff => assert_eq!(sign, EnergySquaredSign::Zero),
            }
        }
    }

    #[test]
    fn reference_geometry_report_values() {
        let spec = DoublePrismSpec::default();
        let report = uncertainty_report(&spec, omega0()).unwrap();
        assert!(
            (report.wavenumber.im - 101.475).abs() < 0.05,
            "kappa = {}",
            report.wavenumber.im
        );
        assert!((report.delta_x - 9.8546e-3).abs() < 1e-6, "dx = {}", report.delta_x);
        assert!((report.delta_n - 0.52915).abs() < 5e-5, "dn = {}", report.delta_n);
        assert_eq!(report.energy_squared_sign, EnergySquaredSign::Negative);
    }

    #[test]
    fn critical_angle_boundary_is_rejected() {
        let spec = DoublePrismSpec {
            incidence_angle: critical_angle(1.6, 1.0).unwrap(),
            ..DoublePrismSpec::default()
        };
        assert!(matches!(
            uncertainty_report(&spec, omega0()),
            Err(VirtualityError::NotEvanescent { .. })
        ));
    }

    #[test]
    fn raising_the_index_lifts_the_mode() {
        let spec = DoublePrismSpec::default();
        let report = uncertainty_report(&spec, omega0()).unwrap();
        assert!(matches!(
            report.raised_classification,
            Classification::Propagating | Classification::Cutoff
        ));
        let k0 = omega0() / SPEED_OF_LIGHT;
        assert!(report.raised_imag_residual < 1e-9 * k0);
    }

    #[test]
    fn raise_to_allowed_holds_across_the_evanescent_regime() {
        let k0 = omega0() / SPEED_OF_LIGHT;
        for i in 0..40 {
            for j in 0..10 {
                let angle = 0.70 + 0.02 * i as f64;
                let n = 1.3 + 0.1 * j as f64;
                if angle >= std::f64::consts::FRAC_PI_2 {
                    continue;
                }
                let spec = DoublePrismSpec {
                    prism_index: n,
                    incidence_angle: angle,
                    ..DoublePrismSpec::default()
                };
                if let Ok(report) = uncertainty_report(&spec, omega0()) {
                    assert!(
                        report.raised_imag_residual < 1e-9 * k0,
                        "residual {} at angle {angle}, n {n}",
                        report.raised_imag_residual
                    );
                }
            }
        }
    }

    #[test]
    fn uncertainty_product_is_hbar_by_construction() {
        let spec = DoublePrismSpec::default();
        let report = uncertainty_report(&spec, omega0()).unwrap();
        let product = report.delta_p_bound * report.delta_x;
        assert!(
            ((product - HBAR) / HBAR).abs() < 1e-14,
            "dp*dx = {product}, hbar = {HBAR}"
        );
    }
}

//! 2×2 complex transfer-matrix engine for 1D stratified Helmholtz problems.
//!
//! A [`Stack`] is an entry region, a sequence of layers, and an exit region
//! sharing one oblique context. Its transfer matrix is the ordered product of
//! interface and propagation matrices in the conventions of
//! [`crate::convention`]; scattering amplitudes fall out of the total matrix.
//!
//! [`airy_series`] computes the same single-gap amplitudes by summing the
//! multiple-reflection (Airy) series over Fresnel coefficients directly. It
//! never touches the matrix path and serves as an independent oracle.

use num_complex::Complex64;
use thiserror::Error;

use crate::wavecore::{Classification, FrequencyGrid, ObliqueContext, Polarization, Region, WaveNumber};

#[derive(Debug, Error)]
pub enum XfermatError {
    #[error("degenerate interface: both matching weights vanish (double cutoff)")]
    DegenerateInterface,
    #[error("non-invertible transfer matrix at omega = {omega}: |m22| = {m22_norm}")]
    SingularMatrix { omega: f64, m22_norm: f64 },
    #[error("airy series needs exactly one interior layer, got {got}")]
    NotSingleGap { got: usize },
}

/// One homogeneous slab of a stack. Zero thickness is allowed and acts as an
/// identity layer.
#[derive(Debug, Clone)]
pub struct Layer {
    pub thickness: f64,
    pub region: Region,
}

impl Layer {
    pub fn new(thickness: f64, region: Region) -> Self {
        assert!(
            thickness >= 0.0 && thickness.is_finite(),
            "layer thickness must be nonnegative, got {thickness}"
        );
        Layer { thickness, region }
    }
}

/// 2×2 complex matrix relating forward/backward amplitudes on the entry side
/// to those on the exit side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn identity() -> Self {
        TransferMatrix {
            m11: Complex64::new(1.0, 0.0),
            m12: Complex64::new(0.0, 0.0),
            m21: Complex64::new(0.0, 0.0),
            m22: Complex64::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Largest entry magnitude; the scale against which singularity of `m22`
    /// is judged.
    pub fn norm_max(&self) -> f64 {
        self.m11
            .norm()
            .max(self.m12.norm())
            .max(self.m21.norm())
            .max(self.m22.norm())
    }
}

impl std::ops::Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, rhs: TransferMatrix) -> TransferMatrix {
        TransferMatrix {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }
}

/// Interface matrix from the interface matching weights on each side:
/// continuity of the field and of weight·(forward − backward).
///
/// With `η = w_left / w_right` the matrix is `½ [[1+η, 1-η], [1-η, 1+η]]`.
/// The map needs a nonzero right-side weight; an exactly-at-cutoff right
/// medium is the degenerate case.
pub fn interface_from_weights(
    w_left: Complex64,
    w_right: Complex64,
) -> Result<TransferMatrix, XfermatError> {
    if w_right.norm() == 0.0 {
        return Err(XfermatError::DegenerateInterface);
    }
    let eta = w_left / w_right;
    let half = Complex64::new(0.5, 0.0);
    let p = half * (Complex64::new(1.0, 0.0) + eta);
    let m = half * (Complex64::new(1.0, 0.0) - eta);
    Ok(TransferMatrix {
        m11: p,
        m12: m,
        m21: m,
        m22: p,
    })
}

/// Fresnel interface matrix between two dielectric half-spaces with the given
/// longitudinal wavenumbers: TE matches `k_z`, TM matches `k_z/n²`.
pub fn interface_matrix(
    kz_left: WaveNumber,
    kz_right: WaveNumber,
    pol: Polarization,
    n_left: f64,
    n_right: f64,
) -> Result<TransferMatrix, XfermatError> {
    let (wl, wr) = match pol {
        Polarization::Te => (kz_left.value, kz_right.value),
        Polarization::Tm => (
            kz_left.value / (n_left * n_left),
            kz_right.value / (n_right * n_right),
        ),
    };
    interface_from_weights(wl, wr)
}

/// Propagation over a thickness `d`: `diag(e^{+i k_z d}, e^{-i k_z d})`.
///
/// For purely imaginary `k_z = iκ` the entries are computed as real
/// exponentials `e^{∓κd}`, so their phase is exactly zero.
pub fn propagation_matrix(kz: WaveNumber, d: f64) -> TransferMatrix {
    debug_assert!(d >= 0.0);
    let (fwd, bwd) = match kz.classification {
        Classification::Cutoff => (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
        Classification::Evanescent => {
            let kappa = kz.value.im;
            (
                Complex64::new((-kappa * d).exp(), 0.0),
                Complex64::new((kappa * d).exp(), 0.0),
            )
        }
        Classification::Propagating => {
            let phase = kz.value.re * d;
            (
                Complex64::new(phase.cos(), phase.sin()),
                Complex64::new(phase.cos(), -phase.sin()),
            )
        }
    };
    TransferMatrix {
        m11: fwd,
        m12: Complex64::new(0.0, 0.0),
        m21: Complex64::new(0.0, 0.0),
        m22: bwd,
    }
}

/// Scattering amplitudes from a total transfer matrix: `r = -m21/m22`,
/// `t = det(M)/m22`. Fails when `m22` vanishes (a resonance exactly on grid).
pub fn scattering_from_matrix(m: &TransferMatrix) -> Result<(Complex64, Complex64), XfermatError> {
    scattering_from_matrix_at(m, f64::NAN)
}

fn scattering_from_matrix_at(
    m: &TransferMatrix,
    omega: f64,
) -> Result<(Complex64, Complex64), XfermatError> {
    let scale = m.norm_max();
    if m.m22.norm() <= 1e-14 * scale {
        return Err(XfermatError::SingularMatrix {
            omega,
            m22_norm: m.m22.norm(),
        });
    }
    let r = -m.m21 / m.m22;
    let t = m.det() / m.m22;
    Ok((r, t))
}

/// A stratified scattering problem: entry half-space, interior layers, exit
/// half-space, and the shared incidence context.
#[derive(Debug, Clone)]
pub struct Stack {
    pub entry: Region,
    pub layers: Vec<Layer>,
    pub exit: Region,
    pub ctx: ObliqueContext,
    /// When set, every evaluation uses this transverse wavenumber instead of
    /// the frequency-linear `ctx` value. This is the conserved-mode picture:
    /// the scattering problem is diagonal in `k_x`, and a detector that
    /// follows one transverse channel across a frequency band sees the
    /// spectrum at fixed `k_x`. Scenario builders with a center frequency pin
    /// `k_x` there.
    kx_pin: Option<f64>,
}

impl Stack {
    pub fn new(entry: Region, layers: Vec<Layer>, exit: Region, ctx: ObliqueContext) -> Self {
        Stack {
            entry,
            layers,
            exit,
            ctx,
            kx_pin: None,
        }
    }

    /// Pin the transverse wavenumber at its value for `omega_ref`.
    pub fn with_pinned_transverse(mut self, omega_ref: f64) -> Self {
        self.kx_pin = Some(self.ctx.transverse_wavenumber(omega_ref));
        self
    }

    /// Transverse wavenumber used at `omega`: the pinned value if present,
    /// otherwise the frequency-linear context value.
    pub fn transverse_wavenumber(&self, omega: f64) -> f64 {
        self.kx_pin
            .unwrap_or_else(|| self.ctx.transverse_wavenumber(omega))
    }

    pub fn entry_wavenumber(&self, omega: f64) -> WaveNumber {
        self.entry.wavenumber(omega, self.transverse_wavenumber(omega))
    }

    pub fn exit_wavenumber(&self, omega: f64) -> WaveNumber {
        self.exit.wavenumber(omega, self.transverse_wavenumber(omega))
    }

    /// Ordered product of interface and propagation matrices at `omega`.
    pub fn transfer_matrix(&self, omega: f64) -> Result<TransferMatrix, XfermatError> {
        let kx = self.transverse_wavenumber(omega);
        let pol = self.ctx.polarization;
        let mut m = TransferMatrix::identity();
        let mut prev_weight = self.entry.matching_weight(omega, kx, pol);
        for layer in &self.layers {
            let w = layer.region.matching_weight(omega, kx, pol);
            m = interface_from_weights(prev_weight, w)? * m;
            let kz = layer.region.wavenumber(omega, kx);
            m = propagation_matrix(kz, layer.thickness) * m;
            prev_weight = w;
        }
        let w_exit = self.exit.matching_weight(omega, kx, pol);
        m = interface_from_weights(prev_weight, w_exit)? * m;
        Ok(m)
    }

    /// Complex reflection and transmission amplitudes at `omega`.
    ///
    /// Uses the extraction rules of [`scattering_from_matrix`] with the
    /// determinant substituted in its exact telescoped form
    /// `det(M) = w_entry / w_exit`; the composed determinant loses
    /// `e^{2κd}·ε` of absolute accuracy on opaque barriers, the telescoped
    /// one does not.
    pub fn scattering(&self, omega: f64) -> Result<(Complex64, Complex64), XfermatError> {
        let m = self.transfer_matrix(omega)?;
        let scale = m.norm_max();
        if m.m22.norm() <= 1e-14 * scale {
            return Err(XfermatError::SingularMatrix {
                omega,
                m22_norm: m.m22.norm(),
            });
        }
        let kx = self.transverse_wavenumber(omega);
        let pol = self.ctx.polarization;
        let w_entry = self.entry.matching_weight(omega, kx, pol);
        let w_exit = self.exit.matching_weight(omega, kx, pol);
        let r = -m.m21 / m.m22;
        let t = (w_entry / w_exit) / m.m22;
        Ok((r, t))
    }

    /// Flux normalization for `|t|²`: `Re(w_exit)/Re(w_entry)` with the
    /// polarization-appropriate weights, so that for propagating entry and
    /// exit `|r|² + flux·|t|² = 1`.
    pub fn flux_factor(&self, omega: f64) -> f64 {
        let kx = self.transverse_wavenumber(omega);
        let pol = self.ctx.polarization;
        let we = self.entry.matching_weight(omega, kx, pol).re;
        let wx = self.exit.matching_weight(omega, kx, pol).re;
        wx / we
    }

    /// `| |r|² + flux·|t|² - 1 |` for a propagating exit, `| |r| - 1 |` when
    /// the exit channel is closed.
    pub fn unitarity_defect(&self, omega: f64) -> Result<f64, XfermatError> {
        let (r, t) = self.scattering(omega)?;
        if self.exit_wavenumber(omega).is_propagating() && self.entry_wavenumber(omega).is_propagating() {
            Ok((r.norm_sqr() + self.flux_factor(omega) * t.norm_sqr() - 1.0).abs())
        } else {
            Ok((r.norm() - 1.0).abs())
        }
    }

    /// Sample r(ω) and t(ω) over a grid and unwrap the phases.
    pub fn spectrum(&self, grid: &FrequencyGrid) -> Result<ScatterSpectrum, XfermatError> {
        ScatterSpectrum::from_fn(grid.clone(), |omega| self.scattering(omega))
    }
}

/// Per-frequency complex scattering amplitudes with unwrapped phases.
#[derive(Debug, Clone)]
pub struct ScatterSpectrum {
    pub grid: FrequencyGrid,
    pub r: Vec<Complex64>,
    pub t: Vec<Complex64>,
    pub phase_r: Vec<f64>,
    pub phase_t: Vec<f64>,
}

/// Amplitudes below this are rounding residue of exact zeros (a closed-gap
/// reflection, say); their arguments carry no information and are frozen to
/// the previous sample's phase during unwrapping.
pub const PHASE_AMPLITUDE_FLOOR: f64 = 1e-14;

impl ScatterSpectrum {
    /// Build from any per-frequency amplitude function. Used by the stack
    /// evaluator and by synthetic channels in tests (identity, pure delay).
    pub fn from_fn<E>(
        grid: FrequencyGrid,
        mut amplitudes: impl FnMut(f64) -> Result<(Complex64, Complex64), E>,
    ) -> Result<Self, E> {
        let n = grid.len();
        let mut r = Vec::with_capacity(n);
        let mut t = Vec::with_capacity(n);
        for &omega in grid.omegas() {
            let (ri, ti) = amplitudes(omega)?;
            r.push(ri);
            t.push(ti);
        }
        let floored = |values: &[Complex64]| {
            let mut phases = Vec::with_capacity(values.len());
            let mut last = 0.0;
            for c in values {
                if c.norm() > PHASE_AMPLITUDE_FLOOR {
                    last = c.arg();
                }
                phases.push(last);
            }
            phases
        };
        let phase_r = unwrap_phases(floored(&r).into_iter());
        let phase_t = unwrap_phases(floored(&t).into_iter());
        Ok(ScatterSpectrum {
            grid,
            r,
            t,
            phase_r,
            phase_t,
        })
    }

    /// Largest unwrapped phase step between adjacent grid points, for both
    /// channels. Continuity demands this stays well below π.
    pub fn max_phase_step(&self) -> f64 {
        let step = |p: &[f64]| {
            p.windows(2)
                .map(|w| (w[1] - w[0]).abs())
                .fold(0.0f64, f64::max)
        };
        step(&self.phase_r).max(step(&self.phase_t))
    }
}

/// Standard 1D phase unwrapping: fold adjacent steps into (-π, π].
fn unwrap_phases(raw: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out = Vec::new();
    let mut offset = 0.0;
    let mut prev = None;
    for p in raw {
        if let Some(prev) = prev {
            let mut step = p + offset - prev;
            while step > std::f64::consts::PI {
                offset -= 2.0 * std::f64::consts::PI;
                step -= 2.0 * std::f64::consts::PI;
            }
            while step <= -std::f64::consts::PI {
                offset += 2.0 * std::f64::consts::PI;
                step += 2.0 * std::f64::consts::PI;
            }
        }
        let unwrapped = p + offset;
        out.push(unwrapped);
        prev = Some(unwrapped);
    }
    out
}

/// Multiple-reflection (Airy) summation for a single-gap stack, as a partial
/// geometric series with `terms` terms:
///
/// `t = t₁₂ t₂₃ e^{iδ} Σ (r₂₁ r₂₃ e^{2iδ})^m`,
/// `r = r₁₂ + t₁₂ t₂₁ r₂₃ e^{2iδ} Σ (r₂₁ r₂₃ e^{2iδ})^m`,
///
/// with Fresnel coefficients built directly from the matching weights. This
/// path shares no code with the transfer-matrix composition.
///
/// The series converges when the round-trip factor `r₂₁ r₂₃ e^{2iδ}` has
/// modulus below one: any positive-width evanescent gap, and propagating gaps
/// away from unit interface reflectivity. A zero-width gap between
/// total-reflection interfaces sits exactly on the convergence radius.
pub fn airy_series(
    stack: &Stack,
    omega: f64,
    terms: usize,
) -> Result<(Complex64, Complex64), XfermatError> {
    if stack.layers.len() != 1 {
        return Err(XfermatError::NotSingleGap {
            got: stack.layers.len(),
        });
    }
    let kx = stack.transverse_wavenumber(omega);
    let pol = stack.ctx.polarization;
    let w1 = stack.entry.matching_weight(omega, kx, pol);
    let w2 = stack.layers[0].region.matching_weight(omega, kx, pol);
    let w3 = stack.exit.matching_weight(omega, kx, pol);

    let fresnel_r = |wa: Complex64, wb: Complex64| (wa - wb) / (wa + wb);
    let fresnel_t = |wa: Complex64, wb: Complex64| 2.0 * wa / (wa + wb);

    let r12 = fresnel_r(w1, w2);
    let t12 = fresnel_t(w1, w2);
    let t21 = fresnel_t(w2, w1);
    let r21 = fresnel_r(w2, w1);
    let r23 = fresnel_r(w2, w3);
    let t23 = fresnel_t(w2, w3);

    let kz2 = stack.layers[0].region.wavenumber(omega, kx).value;
    let phase = (Complex64::i() * kz2 * stack.layers[0].thickness).exp();
    let round_trip = r21 * r23 * phase * phase;

    let mut series = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 0..terms {
        series += power;
        power *= round_trip;
    }

    let t = t12 * t23 * phase * series;
    let r = r12 + t12 * t21 * r23 * phase * phase * series;
    Ok((r, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavecore::Medium;
    use proptest::prelude::*;

    const F0: f64 = 9.15e9;

    fn omega0() -> f64 {
        2.0 * std::f64::consts::PI * F0
    }

    fn reference_ftir(d: f64) -> Stack {
        let prism = Medium::new("perspex", 1.6);
        let ctx = ObliqueContext::new(45f64.to_radians(), Polarization::Tm, prism.clone());
        Stack::new(
            Region::Dielectric(prism.clone()),
            vec![Layer::new(d, Region::vacuum())],
            Region::Dielectric(prism),
            ctx,
        )
    }

    #[test]
    fn identical_media_give_identity_interface() {
        let ctx = ObliqueContext::normal();
        let k = Region::vacuum().wavenumber(omega0(), ctx.transverse_wavenumber(omega0()));
        let m = interface_matrix(k, k, Polarization::Te, 1.0, 1.0).unwrap();
        assert_eq!(m, TransferMatrix::identity());
    }

    #[test]
    fn total_internal_reflection_has_unit_reflectance() {
        // n = 1.6 -> air at 45 degrees, TM: semi-infinite gap reflects fully
        let prism = Medium::new("perspex", 1.6);
        let ctx = ObliqueContext::new(45f64.to_radians(), Polarization::Tm, prism.clone());
        let kx = ctx.transverse_wavenumber(omega0());
        let kp = Region::Dielectric(prism).wavenumber(omega0(), kx);
        let kg = Region::vacuum().wavenumber(omega0(), kx);
        let m = interface_matrix(kp, kg, Polarization::Tm, 1.6, 1.0).unwrap();
        let (r, _) = scattering_from_matrix(&m).unwrap();
        assert!((r.norm() - 1.0).abs() < 1e-12, "|r| = {}", r.norm());
    }

    #[test]
    fn fresnel_normal_incidence_values() {
        // n = 1.0 -> 1.5: r = -0.2, t = 0.8
        let ctx = ObliqueContext::normal();
        let kx = ctx.transverse_wavenumber(omega0());
        let k1 = Region::vacuum().wavenumber(omega0(), kx);
        let k2 = Region::Dielectric(Medium::new("glass", 1.5)).wavenumber(omega0(), kx);
        let m = interface_matrix(k1, k2, Polarization::Te, 1.0, 1.5).unwrap();
        let (r, t) = scattering_from_matrix(&m).unwrap();
        assert!((r - Complex64::new(-0.2, 0.0)).norm() < 1e-14, "r = {r}");
        assert!((t - Complex64::new(0.8, 0.0)).norm() < 1e-14, "t = {t}");
    }

    #[test]
    fn interface_rejects_double_cutoff() {
        let zero = WaveNumber::from_squared(0.0, 1.0);
        assert!(matches!(
            interface_matrix(zero, zero, Polarization::Te, 1.0, 1.0),
            Err(XfermatError::DegenerateInterface)
        ));
    }

    #[test]
    fn propagation_of_zero_thickness_is_identity() {
        let k = WaveNumber::from_squared(1e4, 1e4);
        assert_eq!(propagation_matrix(k, 0.0), TransferMatrix::identity());
    }

    #[test]
    fn evanescent_propagation_entries_are_real_positive() {
        // kappa = 101.475 /m over a wavelength-sized gap
        let k = WaveNumber::from_squared(-101.47505027748855f64.powi(2), 1e5);
        let d = 0.0328;
        let m = propagation_matrix(k, d);
        let kd = 101.47505027748855 * d;
        assert!((m.m11.re - (-kd).exp()).abs() < 1e-15 * (-kd).exp());
        assert!((m.m22.re - kd.exp()).abs() < 1e-12 * kd.exp());
        assert_eq!(m.m11.im, 0.0, "zero phase in traversal");
        assert_eq!(m.m22.im, 0.0);
        assert_eq!(m.m11.arg(), 0.0);
    }

    #[test]
    fn propagating_entries_are_unit_modulus_with_linear_phase() {
        let kz = 200.0;
        let d = 0.01;
        let m = propagation_matrix(WaveNumber::from_squared(kz * kz, kz * kz), d);
        assert!((m.m11.norm() - 1.0).abs() < 1e-15);
        assert!((m.m11.arg() - kz * d).abs() < 1e-12);
        assert!((m.m22.arg() + kz * d).abs() < 1e-12);
    }

    #[test]
    fn empty_stack_with_equal_media_is_identity() {
        let stack = Stack::new(
            Region::vacuum(),
            vec![],
            Region::vacuum(),
            ObliqueContext::normal(),
        );
        let m = stack.transfer_matrix(omega0()).unwrap();
        assert!((m.m11 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(m.m12.norm() < 1e-15 && m.m21.norm() < 1e-15);
        let (r, t) = stack.scattering(omega0()).unwrap();
        assert!(r.norm() < 1e-15);
        assert!((t - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn single_gap_equals_explicit_composition() {
        let stack = reference_ftir(0.02);
        let kx = stack.transverse_wavenumber(omega0());
        let pol = Polarization::Tm;
        let wp = stack.entry.matching_weight(omega0(), kx, pol);
        let wg = stack.layers[0].region.matching_weight(omega0(), kx, pol);
        let i1 = interface_from_weights(wp, wg).unwrap();
        let p = propagation_matrix(stack.layers[0].region.wavenumber(omega0(), kx), 0.02);
        let i2 = interface_from_weights(wg, wp).unwrap();
        let expected = i2 * (p * i1);
        let m = stack.transfer_matrix(omega0()).unwrap();
        assert!((m.m11 - expected.m11).norm() < 1e-14 * expected.norm_max());
        assert!((m.m22 - expected.m22).norm() < 1e-14 * expected.norm_max());
    }

    #[test]
    fn reciprocity_of_transmission_magnitude() {
        // forward and reversed stacks transmit with equal |t| (up to the
        // amplitude-vs-flux normalization, equal here: same entry/exit medium)
        let glass = Medium::new("glass", 1.5);
        let dense = Medium::new("dense", 2.1);
        let ctx = ObliqueContext::new(0.3, Polarization::Te, Medium::vacuum());
        let fwd = Stack::new(
            Region::vacuum(),
            vec![
                Layer::new(0.004, Region::Dielectric(glass.clone())),
                Layer::new(0.002, Region::Dielectric(dense.clone())),
            ],
            Region::vacuum(),
            ctx.clone(),
        );
        let rev = Stack::new(
            Region::vacuum(),
            vec![
                Layer::new(0.002, Region::Dielectric(dense)),
                Layer::new(0.004, Region::Dielectric(glass)),
            ],
            Region::vacuum(),
            ctx,
        );
        let (_, tf) = fwd.scattering(omega0()).unwrap();
        let (_, tr) = rev.scattering(omega0()).unwrap();
        assert!((tf.norm() - tr.norm()).abs() < 1e-12, "{} vs {}", tf.norm(), tr.norm());
    }

    #[test]
    fn opaque_barrier_limit() {
        let stack = reference_ftir(0.12); // kd ~ 12
        let (r, t) = stack.scattering(omega0()).unwrap();
        assert!(t.norm() < 1e-4, "|t| = {}", t.norm());
        assert!((r.norm() - 1.0).abs() < 1e-7, "|r| = {}", r.norm());
    }

    #[test]
    fn gap_closure_identity() {
        // d = 0 reproduces the closed prisms: t = 1, r = 0
        let stack = reference_ftir(0.0);
        let (r, t) = stack.scattering(omega0()).unwrap();
        assert!((t - Complex64::new(1.0, 0.0)).norm() < 1e-12, "t = {t}");
        assert!(r.norm() < 1e-12, "r = {r}");
        // airy series form of the same identity, on a propagating closed gap
        // where the round trip converges: t12 t21 / (1 - r21^2) = 1
        let prism = Medium::new("perspex", 1.6);
        let ctx = ObliqueContext::new(0.3, Polarization::Tm, prism.clone());
        let closed = Stack::new(
            Region::Dielectric(prism.clone()),
            vec![Layer::new(0.0, Region::vacuum())],
            Region::Dielectric(prism),
            ctx,
        );
        let (ra, ta) = airy_series(&closed, omega0(), 2000).unwrap();
        assert!((ta - Complex64::new(1.0, 0.0)).norm() < 1e-10, "t = {ta}");
        assert!(ra.norm() < 1e-10, "r = {ra}");
    }

    #[test]
    fn airy_matches_matrix_at_wavelength_gap() {
        let stack = reference_ftir(0.0328);
        let (rm, tm) = stack.scattering(omega0()).unwrap();
        let (ra, ta) = airy_series(&stack, omega0(), 60).unwrap();
        assert!((tm - ta).norm() < 1e-12, "t: {tm} vs {ta}");
        assert!((rm - ra).norm() < 1e-12, "r: {rm} vs {ra}");
    }

    #[test]
    fn airy_single_term_is_single_pass() {
        let stack = reference_ftir(0.01);
        let kx = stack.transverse_wavenumber(omega0());
        let pol = Polarization::Tm;
        let w1 = stack.entry.matching_weight(omega0(), kx, pol);
        let w2 = stack.layers[0].region.matching_weight(omega0(), kx, pol);
        let t12 = 2.0 * w1 / (w1 + w2);
        let t21 = 2.0 * w2 / (w2 + w1);
        let kz = stack.layers[0].region.wavenumber(omega0(), kx).value;
        let expected = t12 * t21 * (Complex64::i() * kz * 0.01).exp();
        let (_, t1) = airy_series(&stack, omega0(), 1).unwrap();
        assert!((t1 - expected).norm() < 1e-14 * expected.norm());
    }

    #[test]
    fn airy_rejects_multi_layer_stacks() {
        let stack = Stack::new(
            Region::vacuum(),
            vec![
                Layer::new(0.01, Region::Dielectric(Medium::new("a", 1.5))),
                Layer::new(0.01, Region::Dielectric(Medium::new("b", 2.0))),
            ],
            Region::vacuum(),
            ObliqueContext::normal(),
        );
        assert!(matches!(
            airy_series(&stack, omega0(), 10),
            Err(XfermatError::NotSingleGap { got: 2 })
        ));
    }

    #[test]
    fn spectrum_phases_are_continuous() {
        let stack = reference_ftir(0.0328);
        let grid = FrequencyGrid::centered(F0, 0.05, 201).unwrap();
        let spec = stack.spectrum(&grid).unwrap();
        assert!(spec.max_phase_step() < std::f64::consts::PI / 8.0);
        assert_eq!(spec.r.len(), 201);
    }

    #[test]
    fn unwrap_handles_winding() {
        let phases = (0..100).map(|i| {
            let p = 0.5 * i as f64;
            (p + std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI)
                - std::f64::consts::PI
        });
        let unwrapped = unwrap_phases(phases);
        for (i, p) in unwrapped.iter().enumerate() {
            assert!((p - 0.5 * i as f64).abs() < 1e-9, "i={i} p={p}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn determinant_is_one_for_symmetric_stacks(
            n_gap in 0.2f64..3.0,
            d in 0.0f64..0.1,
            angle in 0.0f64..1.2,
            tm in proptest::bool::ANY,
        ) {
            let prism = Medium::new("p", 1.6);
            let pol = if tm { Polarization::Tm } else { Polarization::Te };
            let ctx = ObliqueContext::new(angle, pol, prism.clone());
            let stack = Stack::new(
                Region::Dielectric(prism.clone()),
                vec![Layer::new(d, Region::Dielectric(Medium::new("g", n_gap)))],
                Region::Dielectric(prism),
                ctx,
            );
            let m = stack.transfer_matrix(omega0()).unwrap();
            // the composed determinant's rounding scales with the square of
            // the dominant entry; formula errors would break it at O(1)
            let conditioning = (m.norm_max() * m.norm_max()).max(1.0);
            prop_assert!((m.det() - Complex64::new(1.0, 0.0)).norm() < 1e-12 * conditioning);
        }

        #[test]
        fn unitarity_for_random_single_gaps(
            n_gap in 0.3f64..3.0,
            d in 0.0f64..0.08,
            angle in 0.0f64..1.3,
            tm in proptest::bool::ANY,
        ) {
            let prism = Medium::new("p", 1.6);
            let pol = if tm { Polarization::Tm } else { Polarization::Te };
            let ctx = ObliqueContext::new(angle, pol, prism.clone());
            let stack = Stack::new(
                Region::Dielectric(prism.clone()),
                vec![Layer::new(d, Region::Dielectric(Medium::new("g", n_gap)))],
                Region::Dielectric(prism),
                ctx,
            );
            prop_assert!(stack.unitarity_defect(omega0()).unwrap() < 1e-10);
        }

        #[test]
        fn airy_equals_matrix_on_random_gaps(
            n_gap in 0.3f64..3.0,
            d_rel in 0.05f64..2.0,
            angle in 0.0f64..1.2,
        ) {
            let lam0 = crate::convention::SPEED_OF_LIGHT / F0;
            let prism = Medium::new("p", 1.6);
            let ctx = ObliqueContext::new(angle, Polarization::Te, prism.clone());
            let stack = Stack::new(
                Region::Dielectric(prism.clone()),
                vec![Layer::new(d_rel * lam0, Region::Dielectric(Medium::new("g", n_gap)))],
                Region::Dielectric(prism),
                ctx,
            );
            // skip pathologically slow geometric series (round trip ~ 1)
            let kx = stack.transverse_wavenumber(omega0());
            let kz = stack.layers[0].region.wavenumber(omega0(), kx);
            let w1 = stack.entry.matching_weight(omega0(), kx, Polarization::Te);
            let w2 = stack.layers[0].region.matching_weight(omega0(), kx, Polarization::Te);
            let r21 = (w2 - w1) / (w2 + w1);
            let round_trip =
                (r21 * r21 * (Complex64::i() * kz.value * d_rel * lam0 * 2.0).exp()).norm();
            prop_assume!(round_trip < 0.95);
            let (rm, tm) = stack.scattering(omega0()).unwrap();
            let (ra, ta) = airy_series(&stack, omega0(), 6000).unwrap();
            prop_assert!((tm - ta).norm() < 1e-12, "t {} vs {}", tm, ta);
            prop_assert!((rm - ra).norm() < 1e-12, "r {} vs {}", rm, ra);
        }
    }
}

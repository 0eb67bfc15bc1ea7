//! Non-classicality bookkeeping of the evanescent gap mode: the sign of the
//! squared relativistic energy assigned to a purely imaginary wavenumber, the
//! localization/uncertainty bound, and the index increment that would lift
//! the mode into the propagating regime.
//!
//! ```bash
//! cargo run --example virtuality_report
//! ```

use evanesim::virtuality::{einstein_check, uncertainty_report};
use evanesim::wavecore::longitudinal_wavenumber;
use evanesim::{DoublePrismSpec, Medium};

fn main() {
    let spec = DoublePrismSpec::default();
    let omega0 = spec.omega0();

    let gap_mode = longitudinal_wavenumber(&Medium::vacuum(), &spec.context(), omega0);
    println!(
        "gap mode k_z = {:.3} + {:.3}i /m ({:?})",
        gap_mode.value.re,
        gap_mode.value.im,
        gap_mode.classification
    );
    println!("E^2 sign under E = hbar*k*c: {:?}\n", einstein_check(&gap_mode));

    let report = uncertainty_report(&spec, omega0).unwrap();
    println!("localization length  delta_x = 1/kappa = {:.3} mm", report.delta_x * 1e3);
    println!("momentum bound       delta_p = hbar*kappa = {:.3e} kg m/s", report.delta_p_bound);
    println!("product              delta_p * delta_x / hbar = {:.15}", report.delta_p_bound * report.delta_x / evanesim::HBAR);
    println!("index increment      delta_n = {:.5}", report.delta_n);
    println!(
        "raised gap (n = 1 + delta_n): {:?}, residual Im k_z = {:.2e} /m",
        report.raised_classification, report.raised_imag_residual
    );
    println!("\n{}", report.note);
}

//! Hartman saturation: the transmission phase time of the double-prism gap
//! stops growing with gap width once the barrier is opaque, and the saturated
//! delay is of order one over the carrier frequency.
//!
//! ```bash
//! cargo run --example hartman_scan
//! ```

use evanesim::timing::{hartman_scan, universal_ratio};
use evanesim::DoublePrismSpec;

fn main() {
    let spec = DoublePrismSpec::default();
    let omega0 = spec.omega0();
    let f0 = spec.center_frequency;

    let probe = spec.stack();
    let kappa = probe.layers[0]
        .region
        .wavenumber(omega0, probe.transverse_wavenumber(omega0))
        .kappa();

    let builder = |d: f64| spec.clone().with_gap(d).stack();
    let ds: Vec<f64> = (1..=24).map(|i| 0.5 * i as f64 / kappa).collect();
    let scan = hartman_scan(builder, omega0, &ds).unwrap();

    println!("gap scan at f0 = {:.2} GHz, kappa = {kappa:.2} /m\n", f0 / 1e9);
    println!("{:>9} {:>8} {:>12} {:>12}", "d [mm]", "kappa*d", "tau_t [ps]", "tau_r [ps]");
    for ((d, tau_t), (_, tau_r)) in scan.curve.iter().zip(&scan.curve_reflection) {
        println!(
            "{:9.2} {:8.2} {:12.3} {:12.3}",
            d * 1e3,
            kappa * d,
            tau_t * 1e12,
            tau_r * 1e12
        );
    }

    let ratio = universal_ratio(scan.tau_asymptotic, f0);
    println!(
        "\nsaturated tau = {:.2} ps (mean over kappa*d in [5, 10])",
        scan.tau_asymptotic * 1e12
    );
    println!("1/f0          = {:.2} ps", 1e12 / f0);
    println!("tau * f0      = {ratio:.4}");
}

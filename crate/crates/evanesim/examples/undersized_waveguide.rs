//! Tunneling through an undersized waveguide section: the narrow segment is
//! below TE₁₀ cutoff at the operating frequency, attenuates exponentially,
//! and shows the same delay saturation as the optical barrier.
//!
//! ```bash
//! cargo run --example undersized_waveguide
//! ```

use evanesim::scenarios::undersized_waveguide;
use evanesim::timing::{hartman_scan, universal_ratio};
use evanesim::wavecore::waveguide_wavenumber;
use evanesim::SPEED_OF_LIGHT;

fn main() {
    let (wide, narrow) = (0.030, 0.010);
    let f0 = 9.15e9;
    let omega0 = 2.0 * std::f64::consts::PI * f0;

    println!(
        "feed guide {:.0} mm (cutoff {:.2} GHz), narrow section {:.0} mm (cutoff {:.2} GHz)",
        wide * 1e3,
        SPEED_OF_LIGHT / (2.0 * wide) / 1e9,
        narrow * 1e3,
        SPEED_OF_LIGHT / (2.0 * narrow) / 1e9
    );
    let k = waveguide_wavenumber(narrow, omega0);
    println!(
        "at {:.2} GHz the narrow section is {:?} with kappa = {:.1} /m\n",
        f0 / 1e9,
        k.classification,
        k.kappa()
    );

    println!("{:>12} {:>10} {:>12}", "length [mm]", "|t|", "tau_t [ps]");
    let builder = |length: f64| undersized_waveguide(wide, narrow, length).unwrap();
    let kappa = k.kappa();
    let lengths: Vec<f64> = (1..=10).map(|i| i as f64 / kappa).collect();
    let scan = hartman_scan(builder, omega0, &lengths).unwrap();
    for &(length, tau) in &scan.curve {
        let (_, t) = undersized_waveguide(wide, narrow, length)
            .unwrap()
            .scattering(omega0)
            .unwrap();
        println!("{:12.2} {:10.2e} {:12.3}", length * 1e3, t.norm(), tau * 1e12);
    }

    println!(
        "\nsaturated tau = {:.2} ps, tau*f0 = {:.3}",
        scan.tau_asymptotic * 1e12,
        universal_ratio(scan.tau_asymptotic, f0)
    );
}

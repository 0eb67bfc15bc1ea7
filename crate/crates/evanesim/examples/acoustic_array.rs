//! Sound tunneling through a 1D acoustic band-gap array: quarter-wave
//! impedance contrast blocks the gap-center frequency, and the saturated
//! transit delay is again of order one over the center frequency.
//!
//! ```bash
//! cargo run --example acoustic_array
//! ```

use evanesim::cli::run::periodic_saturation;
use evanesim::scenarios::acoustic_band_gap_array;
use evanesim::timing::universal_ratio;
use evanesim::AcousticMedium;

fn main() {
    let base = AcousticMedium::new(343.0, 413.0);
    let contrast = 3.0;
    let f_gap = 1000.0;
    let omega = 2.0 * std::f64::consts::PI * f_gap;
    println!(
        "air-backed array, impedance contrast {contrast}, quarter waves at {f_gap} Hz \
         ({:.1} mm segments)\n",
        343.0 / (4.0 * f_gap) * 1e3
    );

    println!("{:>8} {:>12}", "periods", "|t|");
    for periods in [2, 4, 6, 8, 10, 12] {
        let stack = acoustic_band_gap_array(base, contrast, f_gap, periods).unwrap();
        let (_, t) = stack.scattering(omega).unwrap();
        println!("{periods:>8} {:12.3e}", t.norm());
    }

    let builder = move |n: usize| acoustic_band_gap_array(base, contrast, f_gap, n).unwrap();
    let saturation = periodic_saturation(&builder, omega).unwrap();
    println!(
        "\nattenuation per period: {:.3} (amplitude factor {:.2})",
        saturation.attenuation_per_period,
        saturation.attenuation_per_period.exp()
    );
    println!("{:>8} {:>12}", "periods", "tau_t [ms]");
    for &(n, tau, _) in saturation.curve.iter().take(12) {
        println!("{n:>8} {:12.4}", tau * 1e3);
    }
    println!(
        "\nsaturated tau = {:.3} ms, tau*f = {:.4}",
        saturation.tau_asymptotic * 1e3,
        universal_ratio(saturation.tau_asymptotic, f_gap)
    );
}

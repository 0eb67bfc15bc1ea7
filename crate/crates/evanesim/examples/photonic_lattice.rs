//! Band-gap transmission of a quarter-wave photonic lattice: Bloch
//! classification of the forbidden band, exponential in-gap decay with period
//! count, and the saturated in-gap delay.
//!
//! ```bash
//! cargo run --example photonic_lattice
//! ```

use evanesim::scenarios::{bloch_half_trace, quarter_wave_lattice};
use evanesim::timing::{phase_time_at_center, Channel};
use evanesim::{FrequencyGrid, SPEED_OF_LIGHT};

fn main() {
    let (n_high, n_low) = (3.0, 1.5);
    let f0 = 9.15e9;
    let d_high = SPEED_OF_LIGHT / (4.0 * f0 * n_high);
    let d_low = SPEED_OF_LIGHT / (4.0 * f0 * n_low);
    println!(
        "quarter-wave lattice: n = {n_high}/{n_low}, layers {:.2}/{:.2} mm, gap centered at {:.2} GHz\n",
        d_high * 1e3,
        d_low * 1e3,
        f0 / 1e9
    );

    println!("{:>9} {:>12} {:>8}", "f [GHz]", "|trace/2|", "band?");
    for i in 0..9 {
        let f = f0 * (0.55 + 0.1125 * i as f64);
        let ht = bloch_half_trace(n_high, n_low, d_high, d_low, 2.0 * std::f64::consts::PI * f);
        println!(
            "{:9.3} {:12.4} {:>8}",
            f / 1e9,
            ht.re.abs(),
            if ht.re.abs() > 1.0 { "gap" } else { "band" }
        );
    }

    println!("\nin-gap transmission vs period count (midgap):");
    println!("{:>8} {:>12}", "periods", "|t|");
    for periods in [2, 4, 8, 12, 16] {
        let stack = quarter_wave_lattice(n_high, n_low, f0, periods);
        let (_, t) = stack.scattering(2.0 * std::f64::consts::PI * f0).unwrap();
        println!("{periods:>8} {:12.3e}", t.norm());
    }

    let grid = FrequencyGrid::centered(f0, 1e-3, 9).unwrap();
    let spectrum = quarter_wave_lattice(n_high, n_low, f0, 8).spectrum(&grid).unwrap();
    let tau = phase_time_at_center(&spectrum, Channel::Transmission).unwrap();
    println!(
        "\nmidgap phase time at 8 periods: {:.2} ps  (tau*f0 = {:.3})",
        tau * 1e12,
        tau * f0
    );
}

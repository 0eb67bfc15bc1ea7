//! Scattering off the double-prism air gap: reflection and transmission
//! amplitudes across a frequency band, with the unitarity bookkeeping.
//!
//! ```bash
//! cargo run --example double_prism_scattering
//! ```

use evanesim::{DoublePrismSpec, FrequencyGrid};

fn main() {
    let spec = DoublePrismSpec::default();
    let stack = spec.stack();
    let omega0 = spec.omega0();

    let gap_mode = stack.layers[0]
        .region
        .wavenumber(omega0, stack.transverse_wavenumber(omega0));
    println!(
        "double prisms: n = {}, angle = {:.1} deg, {:?}, f0 = {:.2} GHz, gap = {:.1} mm",
        spec.prism_index,
        spec.incidence_angle.to_degrees(),
        spec.polarization,
        spec.center_frequency / 1e9,
        spec.gap * 1e3,
    );
    println!(
        "gap mode: {:?}, kappa = {:.2} /m, kappa*d = {:.2}\n",
        gap_mode.classification,
        gap_mode.kappa(),
        gap_mode.kappa() * spec.gap
    );

    let grid = FrequencyGrid::centered(spec.center_frequency, 0.10, 11).unwrap();
    let spectrum = stack.spectrum(&grid).unwrap();
    println!("{:>9} {:>10} {:>10} {:>12} {:>12} {:>11}", "f [GHz]", "R", "T", "arg r [rad]", "arg t [rad]", "1-R-T");
    for (i, &omega) in grid.omegas().iter().enumerate() {
        let r = spectrum.r[i].norm_sqr();
        let t = stack.flux_factor(omega) * spectrum.t[i].norm_sqr();
        println!(
            "{:9.3} {:10.6} {:10.6} {:12.6} {:12.6} {:11.2e}",
            omega / (2.0 * std::f64::consts::PI) / 1e9,
            r,
            t,
            spectrum.phase_r[i],
            spectrum.phase_t[i],
            1.0 - r - t,
        );
    }
}

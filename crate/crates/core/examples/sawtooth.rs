//! `B₀` of the bounded sawtooth `f(φ) = i(π - φ)` on the unit circle, by
//! the Fourier multiplier and by singularity subtraction. The result is
//! `-ln(2 - 2cos φ)`, unbounded near the jump at `φ = 0` although `f` is
//! bounded by π.

use std::f64::consts::PI;

use plemelj::spectral::{b0_growth, example1_b0_closed_form, GROWTH_RADII};
use plemelj::example1_report;

fn main() -> plemelj::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "N", "max err FFT", "mean err", "max err sub", "mean err");
    for n in [256, 512, 1024, 2048] {
        let r = example1_report(n, 0.1)?;
        println!(
            "{n:>6} {:>12.2e} {:>12.2e} {:>12.2e} {:>12.2e}",
            r.max_err_spectral, r.mean_err_spectral, r.max_err_subtraction, r.mean_err_subtraction
        );
    }

    let r = example1_report(1024, 0.1)?;
    println!();
    println!("at φ = π: spectral {:.10}, subtraction {:.10}, exact {:.10}",
        r.at_pi_spectral, r.at_pi_subtraction, example1_b0_closed_form(PI));
    println!("sup |f| = {:.6} (π = {PI:.6})", r.sup_f);

    println!();
    println!("growth near φ = 0 (N = 4096):");
    for g in b0_growth(4096, &GROWTH_RADII)? {
        println!(
            "  |φ| > {:<5} max |B₀f| spectral {:>8.4}  subtraction {:>8.4}  exact {:>8.4}",
            g.radius,
            g.max_abs_spectral,
            g.max_abs_subtraction,
            example1_b0_closed_form(g.radius).abs()
        );
    }
    Ok(())
}

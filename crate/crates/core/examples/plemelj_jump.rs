//! One-sided limits on the kite for `f = 1/(s - 3) + 1/(s - 0.2)`.
//! The first pole sits outside (its term is an interior trace), the second
//! inside (an exterior trace), so both `Φ⁺` and `Φ⁻` are non-trivial.

use plemelj::{jump_report, make_curve, sample_density, Complex64, CurveParam, DensitySpec, JumpOptions};

fn main() -> plemelj::Result<()> {
    let grid = make_curve(CurveParam::Kite, 512)?;
    let a = sample_density(&DensitySpec::pole(3.0), &grid)?;
    let b = sample_density(&DensitySpec::pole(0.2), &grid)?;
    let one = Complex64::new(1.0, 0.0);
    let f = a.combine(one, &b, one)?;

    let report = jump_report(&grid, &f, &JumpOptions::default())?;
    println!("{:>5} {:>8} {:>26} {:>26} {:>10}", "j", "tau", "Φ⁺", "Φ⁻", "r_jump");
    for node in report.nodes.iter().step_by(64) {
        println!(
            "{:>5} {:>8.4} {:>12.8}{:+.8}i {:>12.8}{:+.8}i {:>10.2e}",
            node.j,
            node.tau,
            node.phi_plus.re,
            node.phi_plus.im,
            node.phi_minus.re,
            node.phi_minus.im,
            node.r_jump
        );
    }
    let agg = report.aggregates;
    println!();
    println!("max |Φ⁺ - Φ⁻ - f|         = {:.2e}", agg.r_jump.max);
    println!("max |Φ⁺ - (Φ(t) + f/2)|   = {:.2e}", agg.r_plus.max);
    println!("max |Φ⁻ - (Φ(t) - f/2)|   = {:.2e}", agg.r_minus.max);
    println!("max |Φ(t) - (Φ⁺ + Φ⁻)/2|  = {:.2e}", agg.r_avg.max);
    Ok(())
}

//! `ψ(z) = Φ(z) - f(t)·ν(z)` extends continuously to the curve, so its
//! interior and exterior limits agree with the on-curve value. This is what
//! makes the subtraction formula for `Φ(t)` work.

use std::f64::consts::TAU;

use plemelj::{eq9c_check, lemma1_defect, make_curve, sample_density, CurveParam, DensitySpec, LimitSchedule};

fn main() -> plemelj::Result<()> {
    let sched = LimitSchedule::default();
    let cases = [
        ("circle, s^2", CurveParam::UnitCircle, DensitySpec::power(2)),
        ("circle, 1/(s-2)", CurveParam::UnitCircle, DensitySpec::pole(2.0)),
        ("ellipse, 1/(s-3)", CurveParam::Ellipse { a: 2.0, b: 1.0 }, DensitySpec::pole(3.0)),
        ("kite, s^3", CurveParam::Kite, DensitySpec::power(3)),
    ];
    for n in [512, 1024, 2048] {
        println!("N = {n}");
        for (name, param, spec) in &cases {
            let grid = make_curve(*param, n)?;
            let f = sample_density(spec, &grid)?;
            let mut worst = 0.0_f64;
            let mut worst_exterior = 0.0_f64;
            for k in 0..16 {
                let j = k * n / 16;
                worst = worst.max(lemma1_defect(&grid, &f, j, &sched)?);
                worst_exterior = worst_exterior.max(eq9c_check(&grid, &f, j, &sched)? / TAU);
            }
            println!("  {name:<18} continuity defect {worst:.2e}   exterior limit vs PV {worst_exterior:.2e}");
        }
    }
    Ok(())
}

//! The Cauchy transform of `f ≡ 1` is the winding indicator: 1 inside the
//! curve, 0 outside. Near the curve the trapezoidal rule degrades, which the
//! `below_floor` flag reports.

use plemelj::{make_curve, winding_indicator, Complex64, CurveParam};

fn main() -> plemelj::Result<()> {
    let curves = [
        ("circle", CurveParam::UnitCircle),
        ("ellipse 2x1", CurveParam::Ellipse { a: 2.0, b: 1.0 }),
        ("kite", CurveParam::Kite),
        ("star 5 arms", CurveParam::Star { arms: 5, amplitude: 0.3 }),
    ];
    let points = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.3, -0.2),
        Complex64::new(1.5, 0.0),
        Complex64::new(0.0, 3.0),
        Complex64::new(-4.0, 1.0),
    ];

    for (name, param) in curves {
        let grid = make_curve(param, 256)?;
        println!("{name}");
        for z in points {
            let nu = winding_indicator(&grid, z)?;
            let expected = if param.contains(z) { 1.0 } else { 0.0 };
            println!(
                "  z = {:>5.2}{:+.2}i  nu = {:+.3e}{:+.3e}i  |nu - {expected}| = {:.1e}{}",
                z.re,
                z.im,
                nu.value.re,
                nu.value.im,
                (nu.value - expected).norm(),
                if nu.below_floor { "  (near curve)" } else { "" }
            );
        }
    }
    Ok(())
}

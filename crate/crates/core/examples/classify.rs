//! Interior or exterior boundary value? The verdict comes from how the
//! residuals of `f = Bf` and `f = -Bf` behave as the grid is refined.

use plemelj::analysis::DEFAULT_THRESHOLD;
use plemelj::{classify_boundary, Complex64, CurveParam, DensitySpec};

fn main() -> plemelj::Result<()> {
    let ellipse = CurveParam::Ellipse { a: 2.0, b: 1.0 };
    let cases = [
        ("circle", CurveParam::UnitCircle, "s^2", DensitySpec::power(2)),
        ("circle", CurveParam::UnitCircle, "1/s", DensitySpec::power(-1)),
        ("circle", CurveParam::UnitCircle, "s + 1/s", DensitySpec::trig_poly([
            (1, Complex64::new(1.0, 0.0)),
            (-1, Complex64::new(1.0, 0.0)),
        ])),
        ("circle", CurveParam::UnitCircle, "sawtooth", DensitySpec::Example1),
        ("ellipse", ellipse, "1/(s - 3)", DensitySpec::pole(3.0)),
        ("ellipse", ellipse, "1/(s - 0.5)", DensitySpec::pole(0.5)),
        ("kite", CurveParam::Kite, "s^3", DensitySpec::power(3)),
        ("kite", CurveParam::Kite, "1", DensitySpec::constant(1.0)),
    ];
    let grids = [64, 128, 256];
    for (curve, param, name, spec) in cases {
        let v = classify_boundary(param, &spec, &grids, DEFAULT_THRESHOLD)?;
        let fmt = |r: &[f64]| r.iter().map(|x| format!("{x:.1e}")).collect::<Vec<_>>().join(" ");
        println!(
            "{curve:<8} {name:<12} {:<12} f=Bf: [{}]  f=-Bf: [{}]",
            format!("{:?}", v.decision),
            fmt(&v.residual_interior),
            fmt(&v.residual_exterior)
        );
    }
    Ok(())
}

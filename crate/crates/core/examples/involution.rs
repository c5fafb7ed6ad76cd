//! `B` is an involution on smooth densities: `B(Bf) = f`.

use plemelj::{apply_B, density_norm_l1, make_curve, sample_density, Complex64, CurveParam, DensitySpec};

fn main() -> plemelj::Result<()> {
    let densities = [
        ("1/(s - 3) + s^2", None),
        ("e^{2iτ} + 0.5 e^{-3iτ}", Some(DensitySpec::trig_poly([
            (2, Complex64::new(1.0, 0.0)),
            (-3, Complex64::new(0.5, 0.0)),
        ]))),
        ("1/(s - 0.1)", Some(DensitySpec::pole(0.1))),
    ];
    for param in [CurveParam::Ellipse { a: 2.0, b: 1.0 }, CurveParam::Kite] {
        println!("{param:?}");
        for n in [64, 128, 256] {
            let grid = make_curve(param, n)?;
            for (name, spec) in &densities {
                let f = match spec {
                    Some(s) => sample_density(s, &grid)?,
                    None => {
                        let a = sample_density(&DensitySpec::pole(3.0), &grid)?;
                        let b = sample_density(&DensitySpec::power(2), &grid)?;
                        let one = Complex64::new(1.0, 0.0);
                        a.combine(one, &b, one)?
                    }
                };
                let bbf = apply_B(&grid, &apply_B(&grid, &f)?)?;
                let diff = bbf.combine(Complex64::new(1.0, 0.0), &f, Complex64::new(-1.0, 0.0))?;
                let rel = density_norm_l1(&diff, &grid)? / density_norm_l1(&f, &grid)?;
                println!("  N={n:<4} {name:<24} |B(Bf) - f| / |f| = {rel:.2e}");
            }
        }
    }
    Ok(())
}

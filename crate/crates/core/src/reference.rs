//! Closed-form Cauchy transforms of the built-in densities.
//!
//! Whenever `f = F⁺ − F⁻` on `S` with `F⁺` analytic in `D` and `F⁻`
//! analytic in `D′`, `F⁻(∞) = 0`, the transform is `Φ = F⁺` in `D` and
//! `Φ = F⁻` in `D′`; on the curve `Φ(t) = (F⁺ + F⁻)/2` and `Bf = F⁺ + F⁻`.
//! The split is known exactly for every built-in density except
//! `sqrt_singular` and raw samples.

use num_complex::Complex64;

use crate::density::DensitySpec;
use crate::geometry::CurveParam;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The pair `(F⁺, F⁻)` evaluated at `z`, when known in closed form.
pub fn analytic_split(param: &CurveParam, spec: &DensitySpec, z: Complex64) -> Option<(Complex64, Complex64)> {
    match spec {
        DensitySpec::Constant { c } => Some((*c, ZERO)),
        DensitySpec::Power { n } if *n >= 0 => Some((z.powi(*n), ZERO)),
        // Every built-in curve encloses the origin.
        DensitySpec::Power { n } => Some((ZERO, -z.powi(*n))),
        DensitySpec::Pole { z0 } => {
            let p = (z - z0).inv();
            if param.contains(*z0) {
                Some((ZERO, -p))
            } else {
                Some((p, ZERO))
            }
        }
        DensitySpec::TrigPoly { coeffs } if param.is_unit_circle() => {
            let mut plus = ZERO;
            let mut minus = ZERO;
            for (&n, &c) in coeffs {
                if n >= 0 {
                    plus += c * z.powi(n as i32);
                } else {
                    minus -= c * z.powi(n as i32);
                }
            }
            Some((plus, minus))
        }
        // Σ z^n/n = −ln(1 − z) inside, Σ z^{−n}/n = −ln(1 − 1/z) outside.
        DensitySpec::Example1 => Some((-(ONE - z).ln(), -(ONE - z.inv()).ln())),
        _ => None,
    }
}

/// `Φ(z)` off the curve.
pub fn cauchy_closed_form(param: &CurveParam, spec: &DensitySpec, z: Complex64) -> Option<Complex64> {
    let (plus, minus) = analytic_split(param, spec, z)?;
    Some(if param.contains(z) { plus } else { minus })
}

/// `Φ(t)` at `t = s(τ)`.
pub fn trace_closed_form(param: &CurveParam, spec: &DensitySpec, tau: f64) -> Option<Complex64> {
    b_closed_form(param, spec, tau).map(|b| 0.5 * b)
}

/// `(Bf)(t)` at `t = s(τ)`.
pub fn b_closed_form(param: &CurveParam, spec: &DensitySpec, tau: f64) -> Option<Complex64> {
    let t = param.position(tau);
    let (plus, minus) = analytic_split(param, spec, t)?;
    let v = plus + minus;
    (v.re.is_finite() && v.im.is_finite()).then_some(v)
}

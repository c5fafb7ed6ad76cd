//! Smooth closed curves and their uniform periodic quadrature grids.
//!
//! Every built-in curve is analytic and parametrized counterclockwise by
//! τ ∈ [0, 2π). The outward normal is `-i s'(τ) / |s'(τ)|`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Smallest grid accepted by [`make_curve`].
pub const MIN_NODES: usize = 8;

/// Closed-form parametrization of a built-in curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveParam {
    /// `s(τ) = e^{iτ}`
    #[serde(alias = "circle")]
    UnitCircle,
    /// `s(τ) = a cos τ + i b sin τ`
    Ellipse { a: f64, b: f64 },
    /// `s(τ) = cos τ + 0.65 cos 2τ − 0.65 + 1.5 i sin τ`
    Kite,
    /// `s(τ) = (1 + amplitude·cos(arms·τ)) e^{iτ}`
    Star { arms: u32, amplitude: f64 },
}

impl CurveParam {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CurveParam::UnitCircle | CurveParam::Kite => Ok(()),
            CurveParam::Ellipse { a, b } => {
                if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
                    return Err(Error::DegenerateCurve(format!(
                        "ellipse semi-axes must be positive and finite (a={a}, b={b})"
                    )));
                }
                Ok(())
            }
            CurveParam::Star { arms, amplitude } => {
                if arms < 3 {
                    return Err(Error::DegenerateCurve(format!(
                        "star needs at least 3 arms (got {arms})"
                    )));
                }
                if !(amplitude.is_finite() && (0.0..0.5).contains(&amplitude)) {
                    return Err(Error::DegenerateCurve(format!(
                        "star amplitude must lie in [0, 0.5) (got {amplitude})"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Position `s(τ)`.
    pub fn position(&self, tau: f64) -> Complex64 {
        match *self {
            CurveParam::UnitCircle => Complex64::from_polar(1.0, tau),
            CurveParam::Ellipse { a, b } => Complex64::new(a * tau.cos(), b * tau.sin()),
            CurveParam::Kite => Complex64::new(
                tau.cos() + 0.65 * (2.0 * tau).cos() - 0.65,
                1.5 * tau.sin(),
            ),
            CurveParam::Star { arms, amplitude } => {
                let r = 1.0 + amplitude * (f64::from(arms) * tau).cos();
                Complex64::from_polar(r, tau)
            }
        }
    }

    /// Parameter derivative `s'(τ)`.
    pub fn derivative(&self, tau: f64) -> Complex64 {
        match *self {
            CurveParam::UnitCircle => I * Complex64::from_polar(1.0, tau),
            CurveParam::Ellipse { a, b } => Complex64::new(-a * tau.sin(), b * tau.cos()),
            CurveParam::Kite => Complex64::new(
                -tau.sin() - 1.3 * (2.0 * tau).sin(),
                1.5 * tau.cos(),
            ),
            CurveParam::Star { arms, amplitude } => {
                let m = f64::from(arms);
                let r = 1.0 + amplitude * (m * tau).cos();
                let dr = -amplitude * m * (m * tau).sin();
                Complex64::new(dr, r) * Complex64::from_polar(1.0, tau)
            }
        }
    }

    pub fn is_unit_circle(&self) -> bool {
        matches!(self, CurveParam::UnitCircle)
    }

    /// Point-in-curve test by crossing number against a fine inscribed
    /// polygon. Independent of the Cauchy-integral indicator.
    pub fn contains(&self, z: Complex64) -> bool {
        const POLY: usize = 4096;
        let mut inside = false;
        let mut prev = self.position(TAU * (POLY - 1) as f64 / POLY as f64);
        for k in 0..POLY {
            let cur = self.position(TAU * k as f64 / POLY as f64);
            if (cur.im > z.im) != (prev.im > z.im) {
                let x = prev.re + (z.im - prev.im) * (cur.re - prev.re) / (cur.im - prev.im);
                if z.re < x {
                    inside = !inside;
                }
            }
            prev = cur;
        }
        inside
    }
}

/// Discretized closed curve with uniform trapezoidal weights.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct CurveGrid {
    param: CurveParam,
    tau: Vec<f64>,
    pos: Vec<Complex64>,
    deriv: Vec<Complex64>,
    normal: Vec<Complex64>,
    weight: f64,
}

/// Builds the N-node grid `τ_j = 2πj/N` on a validated curve.
pub fn make_curve(param: CurveParam, n: usize) -> Result<CurveGrid> {
    if n < MIN_NODES || !n.is_multiple_of(2) {
        return Err(Error::InvalidGridSize(n));
    }
    param.validate()?;

    let tau: Vec<f64> = (0..n).map(|j| node_tau(j, n)).collect();
    let pos: Vec<Complex64> = tau.iter().map(|&t| param.position(t)).collect();
    let deriv: Vec<Complex64> = tau.iter().map(|&t| param.derivative(t)).collect();
    if let Some(j) = deriv.iter().position(|d| !(d.norm() > 0.0)) {
        return Err(Error::DegenerateCurve(format!(
            "parametrization is singular at node {j}"
        )));
    }
    let normal = deriv.iter().map(|d| -I * d / d.norm()).collect();
    let weight = TAU / n as f64;

    // Twice the signed area; negative means clockwise.
    let area2: f64 = pos
        .iter()
        .zip(&deriv)
        .map(|(s, ds)| (s.conj() * ds).im)
        .sum::<f64>()
        * weight;
    if area2 <= 0.0 {
        return Err(Error::Clockwise);
    }

    Ok(CurveGrid {
        param,
        tau,
        pos,
        deriv,
        normal,
        weight,
    })
}

/// `τ_j = 2πj/N`. Doubling `N` reproduces the coarse nodes bit-for-bit at
/// even indices since the scaling by two is exact.
pub fn node_tau(j: usize, n: usize) -> f64 {
    TAU * j as f64 / n as f64
}

/// Distance between two parameter values on the circle `[0, 2π)`.
pub fn periodic_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Unit outward normal at node `j`.
pub fn outward_normal(grid: &CurveGrid, j: usize) -> Result<Complex64> {
    grid.check_index(j)?;
    Ok(grid.normal[j])
}

impl CurveGrid {
    pub fn param(&self) -> CurveParam {
        self.param
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn pos(&self) -> &[Complex64] {
        &self.pos
    }

    pub fn deriv(&self) -> &[Complex64] {
        &self.deriv
    }

    pub fn normal(&self) -> &[Complex64] {
        &self.normal
    }

    /// Trapezoidal weight `h = 2π/N`.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Arc-length spacing around node `j`, `h·|s'(τ_j)|`.
    pub fn node_spacing(&self, j: usize) -> f64 {
        self.weight * self.deriv[j].norm()
    }

    pub fn is_unit_circle(&self) -> bool {
        self.param.is_unit_circle()
    }

    pub(crate) fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Index of the node closest to `z` together with its distance.
    pub fn nearest_node(&self, z: Complex64) -> (usize, f64) {
        self.pos
            .iter()
            .enumerate()
            .map(|(j, s)| (j, (s - z).norm()))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
    }
}

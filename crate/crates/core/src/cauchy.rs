//! Off-curve Cauchy transform `Φ(z) = (1/2πi) ∫_S f(s)/(s − z) ds`, the
//! indicator `ν(z)` and one-sided limits along the normal.
//!
//! One-sided limits are extrapolated: `Φ` is evaluated at
//! `t ∓ ε_k N_t` for a geometric set of offsets that never go below
//! `min_eps_over_h` local node spacings, then a least-squares polynomial in
//! `ε` is evaluated at `ε = 0`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::error::{Error, Result};
use crate::geometry::CurveGrid;

/// Offsets below this many local node spacings are flagged.
pub const DEFAULT_FLOOR: f64 = 5.0;

/// Which side of the curve a one-sided limit is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// From `D`, `z = t − εN_t` (gives `Φ⁺`).
    Interior,
    /// From `D′`, `z = t + εN_t` (gives `Φ⁻`).
    Exterior,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Interior => -1.0,
            Side::Exterior => 1.0,
        }
    }
}

/// Offsets used to approach a boundary node.
///
/// `eps0` and the floor are measured in units of the local node spacing
/// `h·|s'(τ_j)|`, so one schedule serves every curve and grid size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitSchedule {
    pub eps0: f64,
    pub ratio: f64,
    pub count: usize,
    pub min_eps_over_h: f64,
    pub extrapolation_degree: usize,
}

impl Default for LimitSchedule {
    fn default() -> Self {
        let ratio: f64 = 0.9;
        let count = 12;
        LimitSchedule {
            eps0: DEFAULT_FLOOR / ratio.powi(count as i32 - 1),
            ratio,
            count,
            min_eps_over_h: DEFAULT_FLOOR,
            extrapolation_degree: 8,
        }
    }
}

impl LimitSchedule {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSchedule(msg));
        if !(self.eps0.is_finite() && self.eps0 > 0.0) {
            return bad(format!("eps0 must be positive (got {})", self.eps0));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return bad(format!("ratio must lie in (0, 1) (got {})", self.ratio));
        }
        if self.count < 3 {
            return bad(format!("count must be at least 3 (got {})", self.count));
        }
        if !(self.min_eps_over_h >= 1.0) {
            return bad(format!(
                "min_eps_over_h must be at least 1 (got {})",
                self.min_eps_over_h
            ));
        }
        if self.count <= self.extrapolation_degree {
            return bad(format!(
                "count ({}) must exceed extrapolation_degree ({})",
                self.count, self.extrapolation_degree
            ));
        }
        let smallest = self.eps0 * self.ratio.powi(self.count as i32 - 1);
        if smallest < self.min_eps_over_h * (1.0 - 1e-12) {
            return bad(format!(
                "smallest offset {smallest:.3} spacings is below the floor of {} spacings",
                self.min_eps_over_h
            ));
        }
        Ok(())
    }

    /// Offsets in units of the local node spacing, largest first.
    pub fn relative_offsets(&self) -> Vec<f64> {
        (0..self.count)
            .map(|k| self.eps0 * self.ratio.powi(k as i32))
            .collect()
    }

    /// Absolute offsets at node `j`.
    pub fn offsets(&self, grid: &CurveGrid, j: usize) -> Vec<f64> {
        let spacing = grid.node_spacing(j);
        self.relative_offsets().iter().map(|e| e * spacing).collect()
    }
}

/// Value of an off-curve evaluation with a flag for points closer to `S`
/// than the accuracy floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffCurveValue {
    pub value: Complex64,
    pub below_floor: bool,
}

fn check_off_curve(grid: &CurveGrid, z: Complex64) -> Result<bool> {
    let (j, dist) = grid.nearest_node(z);
    if dist <= 1e-14 * (1.0 + grid.pos()[j].norm()) {
        return Err(Error::PointOnCurve(j));
    }
    Ok(dist < DEFAULT_FLOOR * grid.node_spacing(j))
}

/// `(h/2πi) Σ_j g_j s'_j / (s_j − z)`, summed in index order.
pub(crate) fn cauchy_sum(grid: &CurveGrid, values: &[Complex64], z: Complex64) -> Complex64 {
    let acc: Complex64 = values
        .iter()
        .zip(grid.pos())
        .zip(grid.deriv())
        .map(|((g, s), ds)| g * ds / (s - z))
        .sum();
    acc * grid.weight() / Complex64::new(0.0, 2.0 * PI)
}

/// Trapezoidal `Φ(z)`.
pub fn eval_offcurve(grid: &CurveGrid, f: &Density, z: Complex64) -> Result<OffCurveValue> {
    f.check_len(grid)?;
    let below_floor = check_off_curve(grid, z)?;
    Ok(OffCurveValue {
        value: cauchy_sum(grid, f.values(), z),
        below_floor,
    })
}

fn indicator_sum(grid: &CurveGrid, z: Complex64) -> Complex64 {
    let acc: Complex64 = grid
        .pos()
        .iter()
        .zip(grid.deriv())
        .map(|(s, ds)| ds / (s - z))
        .sum();
    acc * grid.weight() / Complex64::new(0.0, 2.0 * PI)
}

/// `ν(z)`: 1 inside, 0 outside.
pub fn winding_indicator(grid: &CurveGrid, z: Complex64) -> Result<OffCurveValue> {
    let below_floor = check_off_curve(grid, z)?;
    Ok(OffCurveValue {
        value: indicator_sum(grid, z),
        below_floor,
    })
}

/// Least-squares polynomial fit of `values` against `eps`, evaluated at 0.
pub fn extrapolate_to_zero(eps: &[f64], values: &[Complex64], degree: usize) -> Result<Complex64> {
    if eps.len() != values.len() {
        return Err(Error::LengthMismatch {
            expected: eps.len(),
            found: values.len(),
        });
    }
    if eps.len() <= degree {
        return Err(Error::InvalidSchedule(format!(
            "{} offsets cannot determine a degree-{degree} fit",
            eps.len()
        )));
    }
    let scale = eps.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
    let mut sorted: Vec<f64> = eps.iter().map(|e| e / scale).collect();
    sorted.sort_by(f64::total_cmp);
    let min_gap = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if !(min_gap > 1e-6) {
        return Err(Error::IllConditioned(format!(
            "offsets nearly coincide (relative gap {min_gap:.1e})"
        )));
    }

    let m = eps.len();
    let a = DMatrix::from_fn(m, degree + 1, |r, c| (eps[r] / scale).powi(c as i32));
    let b = DMatrix::from_fn(m, 2, |r, c| if c == 0 { values[r].re } else { values[r].im });
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > smax * 1e-13) {
        return Err(Error::IllConditioned(format!(
            "fit matrix condition number {:.1e}",
            smax / smin
        )));
    }
    let coef = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::IllConditioned(e.to_string()))?;
    Ok(Complex64::new(coef[(0, 0)], coef[(0, 1)]))
}

/// Extrapolated limit of `eval(z)` as `z → s_j` along the normal.
pub(crate) fn one_sided_limit<F>(
    grid: &CurveGrid,
    j: usize,
    side: Side,
    sched: &LimitSchedule,
    eval: F,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    grid.check_index(j)?;
    sched.validate()?;
    let t = grid.pos()[j];
    let n = grid.normal()[j];
    // Keep probes where the trapezoid sum is still accurate (clear of every
    // node by the floor) and that have not crossed the curve.
    let expected_nu = match side {
        Side::Interior => 1.0,
        Side::Exterior => 0.0,
    };
    let (eps, probes): (Vec<f64>, Vec<Complex64>) = sched
        .offsets(grid, j)
        .into_iter()
        .map(|e| (e, t + side.sign() * e * n))
        .filter(|&(_, z)| {
            let (k, dist) = grid.nearest_node(z);
            dist >= sched.min_eps_over_h * grid.node_spacing(k) * (1.0 - 1e-9)
                && (indicator_sum(grid, z).re - expected_nu).abs() < 0.5
        })
        .unzip();
    if eps.len() <= sched.extrapolation_degree {
        return Err(Error::IllConditioned(format!(
            "only {} of {} normal probes at node {j} stay clear of the curve; \
             refine the grid or shrink the schedule",
            eps.len(),
            sched.count
        )));
    }
    let vals: Vec<Complex64> = probes.into_iter().map(eval).collect();
    extrapolate_to_zero(&eps, &vals, sched.extrapolation_degree)
}

/// `Φ⁺(t_j)` (interior) or `Φ⁻(t_j)` (exterior).
pub fn nontangential_limit(
    grid: &CurveGrid,
    f: &Density,
    j: usize,
    side: Side,
    sched: &LimitSchedule,
) -> Result<Complex64> {
    f.check_len(grid)?;
    grid.check_index(j)?;
    if f.is_singular(j) {
        return Err(Error::SingularNode(j));
    }
    one_sided_limit(grid, j, side, sched, |z| cauchy_sum(grid, f.values(), z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{sample_density, DensitySpec};
    use crate::geometry::{make_curve, CurveParam};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn indicator_inside_and_outside() {
        let g = make_curve(CurveParam::UnitCircle, 256).unwrap();
        assert!((winding_indicator(&g, c(0.0, 0.0)).unwrap().value - 1.0).norm() < 1e-12);
        assert!(winding_indicator(&g, c(3.0, 0.0)).unwrap().value.norm() < 1e-12);
        let e = make_curve(CurveParam::Ellipse { a: 2.0, b: 1.0 }, 256).unwrap();
        assert!((winding_indicator(&e, c(1.5, 0.0)).unwrap().value - 1.0).norm() < 1e-10);
    }

    #[test]
    fn offcurve_examples() {
        let g = make_curve(CurveParam::UnitCircle, 256).unwrap();
        let one = sample_density(&DensitySpec::constant(1.0), &g).unwrap();
        assert!((eval_offcurve(&g, &one, c(0.3, 0.2)).unwrap().value - 1.0).norm() < 1e-12);
        assert!(eval_offcurve(&g, &one, c(2.0, 0.0)).unwrap().value.norm() < 1e-12);

        let cube = sample_density(&DensitySpec::power(3), &g).unwrap();
        assert!((eval_offcurve(&g, &cube, c(0.5, 0.0)).unwrap().value - 0.125).norm() < 1e-12);

        // Residues of s⁻¹/(s − z) at 0 and z cancel.
        let inv = sample_density(&DensitySpec::power(-1), &g).unwrap();
        assert!(eval_offcurve(&g, &inv, c(0.3, 0.0)).unwrap().value.norm() < 1e-12);
    }

    #[test]
    fn node_points_are_rejected_and_near_points_flagged() {
        let g = make_curve(CurveParam::UnitCircle, 64).unwrap();
        let one = sample_density(&DensitySpec::constant(1.0), &g).unwrap();
        let node = g.pos()[5];
        assert!(matches!(eval_offcurve(&g, &one, node), Err(Error::PointOnCurve(5))));
        let near = node * 1.01;
        assert!(eval_offcurve(&g, &one, near).unwrap().below_floor);
        assert!(!eval_offcurve(&g, &one, c(0.2, 0.0)).unwrap().below_floor);
    }

    #[test]
    fn limits_of_monomials() {
        let g = make_curve(CurveParam::UnitCircle, 256).unwrap();
        let sched = LimitSchedule::default();
        let sq = sample_density(&DensitySpec::power(2), &g).unwrap();
        let plus = nontangential_limit(&g, &sq, 0, Side::Interior, &sched).unwrap();
        let minus = nontangential_limit(&g, &sq, 0, Side::Exterior, &sched).unwrap();
        assert!((plus - 1.0).norm() < 1e-8);
        assert!(minus.norm() < 1e-8);

        // Φ(z) = −1/z outside.
        let inv = sample_density(&DensitySpec::power(-1), &g).unwrap();
        let minus = nontangential_limit(&g, &inv, 0, Side::Exterior, &sched).unwrap();
        assert!((minus + 1.0).norm() < 1e-6);
    }

    #[test]
    fn extrapolation_recovers_polynomials() {
        let eps = [0.4, 0.3, 0.2, 0.1];
        let vals: Vec<Complex64> = eps
            .iter()
            .map(|&e| c(2.0 - e + 3.0 * e * e, 1.0 + 0.5 * e * e))
            .collect();
        let v = extrapolate_to_zero(&eps, &vals, 2).unwrap();
        assert!((v - c(2.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn schedule_checks() {
        assert!(LimitSchedule::default().validate().is_ok());
        let below = LimitSchedule {
            eps0: 6.0,
            ratio: 0.5,
            count: 4,
            min_eps_over_h: 5.0,
            extrapolation_degree: 2,
        };
        assert!(matches!(below.validate(), Err(Error::InvalidSchedule(_))));
        let degree = LimitSchedule {
            count: 3,
            extrapolation_degree: 3,
            ..LimitSchedule::default()
        };
        assert!(degree.validate().is_err());
        let dup = [0.1, 0.1 + 1e-9, 0.2];
        assert!(matches!(
            extrapolate_to_zero(&dup, &[c(1.0, 0.0); 3], 1),
            Err(Error::IllConditioned(_))
        ));
    }

    #[test]
    fn singular_node_limit_is_refused() {
        let g = make_curve(CurveParam::UnitCircle, 64).unwrap();
        let f = sample_density(&DensitySpec::Example1, &g).unwrap();
        assert!(matches!(
            nontangential_limit(&g, &f, 0, Side::Interior, &LimitSchedule::default()),
            Err(Error::SingularNode(0))
        ));
    }

    #[test]
    fn probes_that_reach_the_far_side_are_refused() {
        // At the top of the kite the interior is thin; at N=64 the default
        // probes run into the opposite branch.
        let sched = LimitSchedule::default();
        let coarse = make_curve(CurveParam::Kite, 64).unwrap();
        let f = sample_density(&DensitySpec::constant(1.0), &coarse).unwrap();
        assert!(matches!(
            nontangential_limit(&coarse, &f, 16, Side::Interior, &sched),
            Err(Error::IllConditioned(_))
        ));
        let fine = make_curve(CurveParam::Kite, 512).unwrap();
        let f = sample_density(&DensitySpec::constant(1.0), &fine).unwrap();
        let v = nontangential_limit(&fine, &f, 128, Side::Interior, &sched).unwrap();
        assert!((v - 1.0).norm() < 1e-9);
    }

    #[test]
    fn transform_vanishes_at_infinity() {
        let g = make_curve(CurveParam::Kite, 256).unwrap();
        let spec = DensitySpec::trig_poly([(-2, c(1.0, 0.5)), (1, c(0.3, 0.0)), (4, c(0.0, -1.0))]);
        let f = sample_density(&spec, &g).unwrap();
        let at = |r: f64| eval_offcurve(&g, &f, c(r, 0.3 * r)).unwrap().value.norm();
        let (a, b, d) = (at(10.0), at(100.0), at(1000.0));
        assert!(b / a <= 0.11 && d / b <= 0.11, "{a:e} {b:e} {d:e}");
        assert!(d * 1000.0 <= 10.0 * a);
    }

    #[test]
    fn doubling_the_grid_is_a_no_op_away_from_the_curve() {
        let spec = DensitySpec::trig_poly([(3, c(1.0, 0.0)), (-5, c(0.2, 0.7))]);
        for param in [CurveParam::UnitCircle, CurveParam::Ellipse { a: 2.0, b: 1.0 }, CurveParam::Kite] {
            let coarse = make_curve(param, 128).unwrap();
            let fine = make_curve(param, 256).unwrap();
            let fc = sample_density(&spec, &coarse).unwrap();
            let ff = sample_density(&spec, &fine).unwrap();
            for z in [c(0.1, 0.1), c(4.0, -3.0)] {
                let d = eval_offcurve(&coarse, &fc, z).unwrap().value - eval_offcurve(&fine, &ff, z).unwrap().value;
                assert!(d.norm() < 1e-12, "{param:?} {z}: {}", d.norm());
            }
        }
    }
}

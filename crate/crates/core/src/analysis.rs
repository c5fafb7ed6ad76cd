//! Boundary relations checked by independent routes, and the boundary-value
//! classifier.
//!
//! One-sided limits come from off-curve quadrature plus extrapolation
//! ([`crate::cauchy`]); the on-curve value comes from singularity
//! subtraction ([`crate::singular`]). The two never share a code path beyond
//! the grid and the samples.
//!
//! Relations that only hold almost everywhere are checked away from the
//! density's singular nodes: each singular node removes every node within
//! `exclusion_radius` (parameter distance) from the statistics.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::{cauchy_sum, nontangential_limit, one_sided_limit, LimitSchedule, Side};
use crate::density::{density_norm_l1, restrict_samples, sample_density, Density, DensitySpec};
use crate::error::{Error, Result};
use crate::geometry::{make_curve, periodic_distance, CurveGrid, CurveParam};
use crate::singular::{apply_B, phi_on_curve, psi_at};

/// Default exclusion around singular nodes, in grid steps `h`.
pub const DEFAULT_EXCLUSION_STEPS: f64 = 3.0;

/// Default classifier threshold for analytic densities.
pub const DEFAULT_THRESHOLD: f64 = 1e-5;

/// Residuals at or below this level count as converged regardless of the
/// trend between grids.
pub const ROUNDOFF_FLOOR: f64 = 1e-10;

/// Relative drop between consecutive grids that still counts as a plateau.
pub const PLATEAU_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct JumpOptions {
    pub schedule: LimitSchedule,
    /// Parameter-distance exclusion around singular nodes; `None` means
    /// three grid steps.
    pub exclusion_radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpNode {
    pub j: usize,
    pub tau: f64,
    pub f: Complex64,
    pub phi_plus: Complex64,
    pub phi_minus: Complex64,
    pub phi_t: Complex64,
    pub r_jump: f64,
    pub r_plus: f64,
    pub r_minus: f64,
    pub r_avg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ResidualStats {
    pub max: f64,
    pub mean: f64,
}

impl ResidualStats {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        let (mut max, mut sum, mut n) = (0.0_f64, 0.0, 0usize);
        for v in values {
            max = max.max(v);
            sum += v;
            n += 1;
        }
        ResidualStats {
            max,
            mean: if n == 0 { 0.0 } else { sum / n as f64 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct JumpAggregates {
    pub r_jump: ResidualStats,
    pub r_plus: ResidualStats,
    pub r_minus: ResidualStats,
    pub r_avg: ResidualStats,
    pub retained: usize,
}

/// Per-node one-sided limits, on-curve values and their residuals.
#[derive(Debug, Clone, Serialize)]
pub struct JumpReport {
    pub nodes: Vec<JumpNode>,
    pub aggregates: JumpAggregates,
    pub schedule: LimitSchedule,
    pub exclusion_radius: f64,
    /// Nodes left out: singular ones and their neighbours.
    pub skipped: Vec<usize>,
    /// Nodes where too few normal probes stayed clear of the curve for a
    /// reliable limit (grid too coarse for the schedule there).
    pub unresolved: Vec<usize>,
}

impl JumpReport {
    pub fn node(&self, j: usize) -> Option<&JumpNode> {
        self.nodes.iter().find(|n| n.j == j)
    }
}

/// Splits nodes into those farther than `radius` (parameter distance) from
/// every singular node and the rest.
pub fn retained_nodes(grid: &CurveGrid, f: &Density, radius: f64) -> (Vec<usize>, Vec<usize>) {
    let tau = grid.tau();
    (0..grid.len()).partition(|&j| {
        !f.is_singular(j)
            && f.singular_nodes()
                .iter()
                .all(|&k| periodic_distance(tau[j], tau[k]) > radius * (1.0 + 1e-12))
    })
}

/// `Φ⁺`, `Φ⁻` by extrapolation and `Φ(t)` by subtraction at every retained
/// node, with `r_jump = |Φ⁺ − Φ⁻ − f|`, `r_± = |Φ^± − (Φ(t) ± f/2)|` and
/// `r_avg = |Φ(t) − (Φ⁺ + Φ⁻)/2|`.
pub fn jump_report(grid: &CurveGrid, f: &Density, opts: &JumpOptions) -> Result<JumpReport> {
    f.check_len(grid)?;
    opts.schedule.validate()?;
    let radius = opts
        .exclusion_radius
        .unwrap_or(DEFAULT_EXCLUSION_STEPS * grid.weight());
    if !(radius >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "exclusion radius must be non-negative (got {radius})"
        )));
    }
    let trace = phi_on_curve(grid, f)?;
    let (kept, skipped) = retained_nodes(grid, f, radius);

    let limits: Vec<Option<JumpNode>> = kept
        .par_iter()
        .map(|&j| {
            let fj = f.values()[j];
            let limit = |side| match nontangential_limit(grid, f, j, side, &opts.schedule) {
                Ok(v) => Ok(Some(v)),
                Err(Error::IllConditioned(_)) => Ok(None),
                Err(e) => Err(e),
            };
            let (Some(phi_plus), Some(phi_minus)) = (limit(Side::Interior)?, limit(Side::Exterior)?)
            else {
                return Ok(None);
            };
            let phi_t = trace.phi_t[j].ok_or(Error::SingularNode(j))?;
            Ok(Some(JumpNode {
                j,
                tau: grid.tau()[j],
                f: fj,
                phi_plus,
                phi_minus,
                phi_t,
                r_jump: ((phi_plus - phi_minus) - fj).norm(),
                r_plus: (phi_plus - (phi_t + 0.5 * fj)).norm(),
                r_minus: (phi_minus - (phi_t - 0.5 * fj)).norm(),
                r_avg: (phi_t - 0.5 * (phi_plus + phi_minus)).norm(),
            }))
        })
        .collect::<Result<_>>()?;
    let unresolved: Vec<usize> = kept
        .iter()
        .zip(&limits)
        .filter(|(_, l)| l.is_none())
        .map(|(&j, _)| j)
        .collect();
    let nodes: Vec<JumpNode> = limits.into_iter().flatten().collect();

    let aggregates = JumpAggregates {
        r_jump: ResidualStats::of(nodes.iter().map(|n| n.r_jump)),
        r_plus: ResidualStats::of(nodes.iter().map(|n| n.r_plus)),
        r_minus: ResidualStats::of(nodes.iter().map(|n| n.r_minus)),
        r_avg: ResidualStats::of(nodes.iter().map(|n| n.r_avg)),
        retained: nodes.len(),
    };
    Ok(JumpReport {
        nodes,
        aggregates,
        schedule: opts.schedule,
        exclusion_radius: radius,
        skipped,
        unresolved,
    })
}

/// `max(|ψ⁺ − ψ(t)|, |ψ⁻ − ψ(t)|)` at node `j`, where the one-sided values
/// are extrapolated from `ψ(z) = (1/2πi) ∫ (f(s) − f(t))/(s − z) ds`.
pub fn lemma1_defect(grid: &CurveGrid, f: &Density, j: usize, sched: &LimitSchedule) -> Result<f64> {
    let psi_t = psi_at(grid, f, j)?;
    let fj = f.values()[j];
    let shifted: Vec<Complex64> = f.values().iter().map(|v| v - fj).collect();
    let psi = |z| cauchy_sum(grid, &shifted, z);
    let plus = one_sided_limit(grid, j, Side::Interior, sched, psi)?;
    let minus = one_sided_limit(grid, j, Side::Exterior, sched, psi)?;
    Ok((plus - psi_t).norm().max((minus - psi_t).norm()))
}

/// `|2πi(Φ⁻ − Φ(t)) + iπ f(t)|`: the exterior limit (approach along `+N_t`)
/// against the principal value plus `iπ f`.
pub fn eq9c_check(grid: &CurveGrid, f: &Density, j: usize, sched: &LimitSchedule) -> Result<f64> {
    let fj = f.values()[j];
    let phi_t = 0.5 * fj + psi_at(grid, f, j)?;
    let phi_minus = nontangential_limit(grid, f, j, Side::Exterior, sched)?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let i_pi = Complex64::new(0.0, PI);
    Ok((two_pi_i * (phi_minus - phi_t) + i_pi * fj).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Interior,
    Exterior,
    Neither,
    Inconclusive,
}

/// Relative residuals of `f = Bf` and `f = −Bf` over a grid sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub decision: Decision,
    pub residual_interior: Vec<f64>,
    pub residual_exterior: Vec<f64>,
    pub grids: Vec<usize>,
    pub threshold: f64,
}

fn converging(r: &[f64]) -> bool {
    r.windows(2).all(|w| w[1] < w[0] || w[1] <= ROUNDOFF_FLOOR)
}

fn plateau(r: &[f64]) -> bool {
    r.windows(2).all(|w| w[1] >= (1.0 - PLATEAU_TOLERANCE) * w[0])
}

/// Decision rule applied to residual sequences on increasing grids.
pub fn decide(interior: &[f64], exterior: &[f64], threshold: f64) -> Decision {
    let (Some(&ri), Some(&re)) = (interior.last(), exterior.last()) else {
        return Decision::Inconclusive;
    };
    if converging(interior) && ri <= threshold {
        Decision::Interior
    } else if converging(exterior) && re <= threshold {
        Decision::Exterior
    } else if ri >= 10.0 * threshold && re >= 10.0 * threshold && plateau(interior) && plateau(exterior)
    {
        Decision::Neither
    } else {
        Decision::Inconclusive
    }
}

fn density_on(spec: &DensitySpec, grid: &CurveGrid) -> Result<Density> {
    match spec {
        DensitySpec::Samples { values } => {
            let restricted = DensitySpec::Samples {
                values: restrict_samples(values, grid.len())?,
            };
            sample_density(&restricted, grid)
        }
        _ => sample_density(spec, grid),
    }
}

/// `‖f − Bf‖₁/‖f‖₁` and `‖f + Bf‖₁/‖f‖₁` on one grid.
pub fn membership_residuals(grid: &CurveGrid, f: &Density) -> Result<(f64, f64)> {
    let norm = density_norm_l1(f, grid)?;
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument(
            "density has zero L1 norm; nothing to classify".into(),
        ));
    }
    let bf = apply_B(grid, f)?;
    let one = Complex64::new(1.0, 0.0);
    let interior = density_norm_l1(&f.combine(one, &bf, -one)?, grid)? / norm;
    let exterior = density_norm_l1(&f.combine(one, &bf, one)?, grid)? / norm;
    Ok((interior, exterior))
}

/// Decides whether `spec` is the trace of a function analytic inside the
/// curve (`f = Bf`), outside with `Φ(∞) = 0` (`f = −Bf`), or neither.
pub fn classify_boundary(
    param: CurveParam,
    spec: &DensitySpec,
    grids: &[usize],
    threshold: f64,
) -> Result<MembershipVerdict> {
    if grids.len() < 2 || grids.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "grids must be strictly increasing with at least two entries (got {grids:?})"
        )));
    }
    if !(threshold > 0.0 && threshold < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "threshold must lie in (0, 0.5) (got {threshold})"
        )));
    }
    spec.check_compatible(&param)?;

    let mut residual_interior = Vec::with_capacity(grids.len());
    let mut residual_exterior = Vec::with_capacity(grids.len());
    for &n in grids {
        let grid = make_curve(param, n)?;
        let f = density_on(spec, &grid)?;
        let (ri, re) = membership_residuals(&grid, &f)?;
        residual_interior.push(ri);
        residual_exterior.push(re);
    }
    Ok(MembershipVerdict {
        decision: decide(&residual_interior, &residual_exterior, threshold),
        residual_interior,
        residual_exterior,
        grids: grids.to_vec(),
        threshold,
    })
}

//! Error tables under grid refinement.

use num_complex::Complex64;
use serde::Serialize;

use super::config::{Quantity, RunConfig};
use crate::cauchy::{eval_offcurve, nontangential_limit, Side};
use crate::density::{restrict_samples, sample_density, Density, DensitySpec};
use crate::error::{Error, Result};
use crate::geometry::{make_curve, node_tau, CurveGrid};
use crate::reference::{cauchy_closed_form, trace_closed_form};
use crate::singular::phi_on_curve;

#[derive(Debug, Clone, Serialize)]
pub struct ConvergeRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub value: Complex64,
    pub error: f64,
    /// `log(e_k / e_{k+1}) / log(N_{k+1} / N_k)` against the next grid.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    ClosedForm,
    FinestGrid,
    ExactZero,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    pub quantity: Quantity,
    pub reference: ReferenceKind,
    pub reference_value: Complex64,
    pub rows: Vec<ConvergeRow>,
}

fn density_on(spec: &DensitySpec, grid: &CurveGrid) -> Result<Density> {
    match spec {
        DensitySpec::Samples { values } => sample_density(
            &DensitySpec::Samples {
                values: restrict_samples(values, grid.len())?,
            },
            grid,
        ),
        _ => sample_density(spec, grid),
    }
}

fn node_index(fraction: f64, n: usize) -> Result<usize> {
    let x = fraction.rem_euclid(1.0) * n as f64;
    let j = x.round();
    if (x - j).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "node fraction {fraction} does not fall on a node of the N={n} grid"
        )));
    }
    Ok(j as usize % n)
}

/// Runs the refinement study described by `config`.
pub fn converge(config: &RunConfig) -> Result<ConvergenceTable> {
    let grids = &config.grids;
    if grids.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "converge needs at least three grids (got {grids:?})"
        )));
    }
    if grids.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "grids must be strictly increasing (got {grids:?})"
        )));
    }
    let param = config.curve.param;
    let spec = &config.density;
    spec.check_compatible(&param)?;

    let mut values = Vec::with_capacity(grids.len());
    for &n in grids {
        let grid = make_curve(param, n)?;
        let f = density_on(spec, &grid)?;
        let v = match config.quantity {
            Quantity::Offcurve => {
                let z = *config.z.first().ok_or_else(|| {
                    Error::InvalidArgument("offcurve convergence needs a --z point".into())
                })?;
                eval_offcurve(&grid, &f, z)?.value
            }
            Quantity::Trace => {
                let j = node_index(config.node_fraction, n)?;
                phi_on_curve(&grid, &f)?.phi_t[j].ok_or(Error::SingularNode(j))?
            }
            Quantity::Jump => {
                let j = node_index(config.node_fraction, n)?;
                let plus = nontangential_limit(&grid, &f, j, Side::Interior, &config.schedule)?;
                let minus = nontangential_limit(&grid, &f, j, Side::Exterior, &config.schedule)?;
                Complex64::new((plus - minus - f.values()[j]).norm(), 0.0)
            }
        };
        values.push(v);
    }

    let closed = match config.quantity {
        Quantity::Offcurve => cauchy_closed_form(&param, spec, config.z[0]),
        Quantity::Trace => trace_closed_form(
            &param,
            spec,
            node_tau(node_index(config.node_fraction, grids[0])?, grids[0]),
        ),
        Quantity::Jump => Some(Complex64::new(0.0, 0.0)),
    };
    let (reference, reference_value) = match (config.quantity, closed) {
        (Quantity::Jump, _) => (ReferenceKind::ExactZero, Complex64::new(0.0, 0.0)),
        (_, Some(v)) => (ReferenceKind::ClosedForm, v),
        (_, None) if matches!(spec, DensitySpec::Samples { .. }) => {
            return Err(Error::InvalidArgument(
                "no reference value for a samples-only density".into(),
            ))
        }
        (_, None) => (ReferenceKind::FinestGrid, *values.last().expect("grids")),
    };

    let errors: Vec<f64> = values.iter().map(|v| (v - reference_value).norm()).collect();
    let rows = grids
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let order = (k + 1 < grids.len()).then(|| {
                let (e0, e1) = (errors[k], errors[k + 1]);
                (e0 / e1).ln() / (grids[k + 1] as f64 / n as f64).ln()
            });
            ConvergeRow {
                n,
                value: values[k],
                error: errors[k],
                order: order.filter(|o| o.is_finite()),
            }
        })
        .collect();
    Ok(ConvergenceTable {
        quantity: config.quantity,
        reference,
        reference_value,
        rows,
    })
}

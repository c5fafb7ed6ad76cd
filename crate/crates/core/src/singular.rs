//! On-curve principal values by singularity subtraction.
//!
//! `ψ(t) = (1/2πi) ∫_S (f(s) − f(t))/(s − t) ds` has a removable singularity
//! at `s = t`; in the parameter the integrand tends to `(f∘s)'(τ)`, so the
//! trapezoidal rule applies with that value on the diagonal. Then
//! `Φ(t) = f(t)/2 + ψ(t)` and `Bf = 2Φ(t)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::dft;
use crate::error::{Error, Result};
use crate::geometry::CurveGrid;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Smallest grid on which a samples-only density is differentiated.
pub const MIN_DFT_DERIVATIVE_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Subtraction,
    CircleMultiplier,
}

/// On-curve values `Φ(t_j)` and `ψ(t_j)`; `None` at singular nodes.
#[derive(Debug, Clone)]
pub struct PVTrace {
    pub phi_t: Vec<Option<Complex64>>,
    pub psi_t: Vec<Option<Complex64>>,
    pub scheme: Scheme,
    pub grid_n: usize,
}

impl PVTrace {
    /// `(Bf)_j = 2Φ(t_j)`.
    pub fn b_values(&self) -> Vec<Option<Complex64>> {
        self.phi_t.iter().map(|p| p.map(|v| 2.0 * v)).collect()
    }
}

/// `(f∘s)'(τ_j)` at every node: exact from the closed form when there is
/// one, otherwise by DFT differentiation of the samples.
pub fn parameter_derivative(grid: &CurveGrid, f: &Density) -> Result<Vec<Complex64>> {
    f.check_len(grid)?;
    if let Some(spec) = f.closed_form() {
        let param = grid.param();
        return Ok(grid
            .tau()
            .iter()
            .map(|&t| spec.dtau(&param, t).expect("closed form"))
            .collect());
    }
    if grid.len() < MIN_DFT_DERIVATIVE_NODES {
        return Err(Error::DerivativeUnavailable(grid.len()));
    }
    Ok(dft::differentiate(f.values()))
}

fn psi_with(grid: &CurveGrid, values: &[Complex64], deriv: &[Complex64], j: usize) -> Complex64 {
    let t = grid.pos()[j];
    let fj = values[j];
    let mut acc = ZERO;
    for (k, ((fk, s), ds)) in values.iter().zip(grid.pos()).zip(grid.deriv()).enumerate() {
        acc += if k == j {
            deriv[j]
        } else {
            (fk - fj) * ds / (s - t)
        };
    }
    acc * grid.weight() / Complex64::new(0.0, 2.0 * PI)
}

/// `ψ(t_j)`.
pub fn psi_at(grid: &CurveGrid, f: &Density, j: usize) -> Result<Complex64> {
    f.check_len(grid)?;
    grid.check_index(j)?;
    if f.is_singular(j) {
        return Err(Error::SingularNode(j));
    }
    let deriv = parameter_derivative(grid, f)?;
    Ok(psi_with(grid, f.values(), &deriv, j))
}

/// `Φ(t)` at every non-singular node.
pub fn phi_on_curve(grid: &CurveGrid, f: &Density) -> Result<PVTrace> {
    let deriv = parameter_derivative(grid, f)?;
    let values = f.values();
    let psi_t: Vec<Option<Complex64>> = (0..grid.len())
        .into_par_iter()
        .map(|j| (!f.is_singular(j)).then(|| psi_with(grid, values, &deriv, j)))
        .collect();
    let phi_t = psi_t
        .iter()
        .zip(values)
        .map(|(p, fj)| p.map(|p| 0.5 * fj + p))
        .collect();
    Ok(PVTrace {
        phi_t,
        psi_t,
        scheme: Scheme::Subtraction,
        grid_n: grid.len(),
    })
}

/// `Bf = (1/iπ) PV∫_S f(s)/(s − t) ds` as a samples-only density. Singular
/// nodes of `f` stay singular (value zero).
#[allow(non_snake_case)]
pub fn apply_B(grid: &CurveGrid, f: &Density) -> Result<Density> {
    let trace = phi_on_curve(grid, f)?;
    let values = trace
        .b_values()
        .into_iter()
        .map(|v| v.unwrap_or(ZERO))
        .collect();
    Ok(Density::with_singular(values, f.singular_nodes().to_vec()))
}

/// Bilinear pairing `⟨u, v⟩ = h Σ_j u_j v_j s'(τ_j)` over the nodes kept by
/// `keep`.
pub fn pairing(
    grid: &CurveGrid,
    u: &[Complex64],
    v: &[Complex64],
    keep: impl Fn(usize) -> bool,
) -> Complex64 {
    let acc: Complex64 = u
        .iter()
        .zip(v)
        .zip(grid.deriv())
        .enumerate()
        .filter(|(j, _)| keep(*j))
        .map(|(_, ((a, b), ds))| a * b * ds)
        .sum();
    acc * grid.weight()
}

/// Result of [`duality_defect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityDefect {
    pub value: f64,
    /// Singular nodes of `f` left out of both pairings.
    pub skipped: usize,
}

/// `|⟨φ, Bf⟩ + ⟨Bφ, f⟩|`, zero when the order of integration in the double
/// integral can be exchanged.
pub fn duality_defect(grid: &CurveGrid, f: &Density, phi: &Density) -> Result<DualityDefect> {
    f.check_len(grid)?;
    phi.check_len(grid)?;
    if !phi.singular_nodes().is_empty() {
        return Err(Error::InvalidArgument(
            "the test density must be smooth (no singular nodes)".into(),
        ));
    }
    let bf = apply_B(grid, f)?;
    let bphi = apply_B(grid, phi)?;
    let keep = |j: usize| !f.is_singular(j);
    let lhs = pairing(grid, phi.values(), bf.values(), keep);
    let rhs = pairing(grid, bphi.values(), f.values(), keep);
    Ok(DualityDefect {
        value: (lhs + rhs).norm(),
        skipped: f.singular_nodes().len(),
    })
}

/// Dense `N×N` matrix of the discrete `B` acting on raw samples (diagonal
/// derivative by spectral differentiation). Row-major.
pub fn operator_matrix(grid: &CurveGrid) -> Vec<Vec<Complex64>> {
    let n = grid.len();
    let h = grid.weight();
    let pre = Complex64::new(0.0, -h / PI); // h/(iπ)
    let pos = grid.pos();
    let ds = grid.deriv();
    (0..n)
        .into_par_iter()
        .map(|j| {
            let mut row = vec![ZERO; n];
            let mut kernel_sum = ZERO;
            for k in 0..n {
                if k == j {
                    continue;
                }
                let kern = ds[k] / (pos[k] - pos[j]);
                kernel_sum += kern;
                // Periodic spectral differentiation, Nyquist mode dropped.
                let diff = j as i64 - k as i64;
                let sign = if diff.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let d = 0.5 * sign / (diff as f64 * h / 2.0).tan();
                row[k] = pre * (kern + d);
            }
            row[j] = Complex64::new(1.0, 0.0) - pre * kernel_sum;
            row
        })
        .collect()
}

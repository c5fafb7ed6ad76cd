//! `B₀` on the unit circle as a Fourier multiplier, and the sawtooth
//! density whose image under `B₀` is logarithmically unbounded.
//!
//! `B₀ e^{inφ} = σ(n) e^{inφ}` with `σ(n) = +1` for `n ≥ 0` and `−1` for
//! `n < 0`. The constant mode takes `+1` because the principal value of
//! `∮ ds/(s − t)` over the circle is `iπ`. The Nyquist slot of an even grid
//! is treated as `n = −N/2`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::density::{sample_density, Density, DensitySpec};
use crate::dft;
use crate::error::{Error, Result};
use crate::geometry::{make_curve, periodic_distance, CurveGrid, CurveParam};
use crate::singular::apply_B;

/// Fourier coefficients `c_n`, `n ∈ [−N/2, N/2)`, of samples on the
/// `N`-node grid, stored in DFT order.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierDensity {
    coeffs: Vec<Complex64>,
}

impl FourierDensity {
    pub fn from_samples(samples: &[Complex64]) -> Self {
        FourierDensity {
            coeffs: dft::forward(samples),
        }
    }

    /// Coefficients from a sparse map; modes outside `[−N/2, N/2)` are
    /// rejected.
    pub fn from_map(n: usize, map: &BTreeMap<i64, Complex64>) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGridSize(n));
        }
        let half = (n / 2) as i64;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (&m, &c) in map {
            if m < -half || m >= half {
                return Err(Error::InvalidArgument(format!(
                    "mode {m} is outside [-{half}, {half}) for N={n}"
                )));
            }
            coeffs[m.rem_euclid(n as i64) as usize] = c;
        }
        Ok(FourierDensity { coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c_n`; zero outside the stored band.
    pub fn coeff(&self, n: i64) -> Complex64 {
        let len = self.coeffs.len() as i64;
        if len == 0 || n < -len / 2 || n >= len - len / 2 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[n.rem_euclid(len) as usize]
    }

    /// `(n, c_n)` pairs in DFT order.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.coeffs.len();
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, c)| (dft::wavenumber(k, n), *c))
    }

    pub fn to_samples(&self) -> Vec<Complex64> {
        dft::inverse(&self.coeffs)
    }

    pub fn to_map(&self) -> BTreeMap<i64, Complex64> {
        self.modes().filter(|(_, c)| c.norm() != 0.0).collect()
    }
}

/// `σ(n)`.
pub fn b0_sign(n: i64) -> f64 {
    if n >= 0 {
        1.0
    } else {
        -1.0
    }
}

/// Multiplies every coefficient by `σ(n)`.
pub fn b0_multiplier(fd: &FourierDensity) -> FourierDensity {
    FourierDensity {
        coeffs: fd.modes().map(|(n, c)| b0_sign(n) * c).collect(),
    }
}

/// `B₀f` by DFT, multiplier, inverse DFT.
pub fn b0_apply(f: &Density, grid: &CurveGrid) -> Result<Density> {
    if !grid.is_unit_circle() {
        return Err(Error::NotUnitCircle);
    }
    if f.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            found: f.len(),
        });
    }
    let fd = FourierDensity::from_samples(f.values());
    let out = b0_multiplier(&fd).to_samples();
    Ok(Density::from_values(out))
}

/// `B₀` of the sawtooth in closed form: `2 Σ_{n≥1} cos(nφ)/n = −ln(2 − 2cos φ)`.
pub fn example1_b0_closed_form(phi: f64) -> f64 {
    -(2.0 - 2.0 * phi.cos()).ln()
}

/// One row of the sawtooth comparison.
#[derive(Debug, Clone, Serialize)]
pub struct Example1Row {
    pub phi: f64,
    pub f: Complex64,
    pub b0_spectral: Complex64,
    pub b0_subtraction: Complex64,
    pub closed_form: f64,
    pub retained: bool,
}

impl Example1Row {
    pub fn abs_err_spectral(&self) -> f64 {
        (self.b0_spectral - self.closed_form).norm()
    }

    pub fn abs_err_subtraction(&self) -> f64 {
        (self.b0_subtraction - self.closed_form).norm()
    }
}

/// Largest `|B₀f|` over nodes farther than `radius` from `φ = 0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrowthPoint {
    pub radius: f64,
    pub max_abs_spectral: f64,
    pub max_abs_subtraction: f64,
}

/// Error statistics of both `B₀` paths for the sawtooth.
#[derive(Debug, Clone, Serialize)]
pub struct Example1Report {
    pub n: usize,
    pub exclusion_radius: f64,
    pub retained_nodes: usize,
    pub max_err_spectral: f64,
    pub mean_err_spectral: f64,
    pub max_err_subtraction: f64,
    pub mean_err_subtraction: f64,
    /// Node values at `φ = π`.
    pub at_pi_spectral: f64,
    pub at_pi_subtraction: f64,
    /// `sup |f|` over the non-singular nodes.
    pub sup_f: f64,
    pub growth: Vec<GrowthPoint>,
    #[serde(skip)]
    pub rows: Vec<Example1Row>,
}

/// Radii at which the growth of `|B₀f|` near `φ = 0` is tabulated.
pub const GROWTH_RADII: [f64; 4] = [0.5, 0.25, 0.1, 0.05];

/// Both `B₀` paths for the sawtooth at `N` nodes, compared with the closed
/// form away from the jump.
pub fn example1_report(n: usize, exclusion_radius: f64) -> Result<Example1Report> {
    if n < 64 {
        return Err(Error::InvalidArgument(format!(
            "the sawtooth comparison needs N >= 64 (got {n})"
        )));
    }
    let grid = make_curve(CurveParam::UnitCircle, n)?;
    if !(exclusion_radius > grid.weight()) {
        return Err(Error::InvalidArgument(format!(
            "exclusion radius {exclusion_radius} must exceed the grid step {}",
            grid.weight()
        )));
    }
    let f = sample_density(&DensitySpec::Example1, &grid)?;
    let spectral = b0_apply(&f, &grid)?;
    let subtraction = apply_B(&grid, &f)?;

    let rows: Vec<Example1Row> = grid
        .tau()
        .iter()
        .enumerate()
        .map(|(j, &phi)| Example1Row {
            phi,
            f: f.values()[j],
            b0_spectral: spectral.values()[j],
            b0_subtraction: subtraction.values()[j],
            closed_form: example1_b0_closed_form(phi),
            retained: !f.is_singular(j) && periodic_distance(phi, 0.0) > exclusion_radius,
        })
        .collect();

    let kept: Vec<&Example1Row> = rows.iter().filter(|r| r.retained).collect();
    let count = kept.len().max(1) as f64;
    let stats = |err: fn(&Example1Row) -> f64| {
        kept.iter()
            .map(|r| err(r))
            .fold((0.0_f64, 0.0_f64), |(m, s), e| (m.max(e), s + e))
    };
    let (max_s, sum_s) = stats(Example1Row::abs_err_spectral);
    let (max_b, sum_b) = stats(Example1Row::abs_err_subtraction);

    let half = n / 2;
    let sup_f = rows
        .iter()
        .enumerate()
        .filter(|(j, _)| !f.is_singular(*j))
        .map(|(_, r)| r.f.norm())
        .fold(0.0, f64::max);

    let growth = GROWTH_RADII
        .iter()
        .filter(|&&r| r > grid.weight())
        .map(|&radius| growth_point(&rows, radius))
        .collect();

    Ok(Example1Report {
        n,
        exclusion_radius,
        retained_nodes: kept.len(),
        max_err_spectral: max_s,
        mean_err_spectral: sum_s / count,
        max_err_subtraction: max_b,
        mean_err_subtraction: sum_b / count,
        at_pi_spectral: rows[half].b0_spectral.re,
        at_pi_subtraction: rows[half].b0_subtraction.re,
        sup_f,
        growth,
        rows,
    })
}

fn growth_point(rows: &[Example1Row], radius: f64) -> GrowthPoint {
    let (mut ms, mut mb) = (0.0_f64, 0.0_f64);
    for r in rows.iter().filter(|r| periodic_distance(r.phi, 0.0) > radius) {
        ms = ms.max(r.b0_spectral.norm());
        mb = mb.max(r.b0_subtraction.norm());
    }
    GrowthPoint {
        radius,
        max_abs_spectral: ms,
        max_abs_subtraction: mb,
    }
}

/// `max |B₀f|` of the sawtooth at `N` nodes for each radius.
pub fn b0_growth(n: usize, radii: &[f64]) -> Result<Vec<GrowthPoint>> {
    let smallest = radii.iter().copied().fold(TAU, f64::min);
    let report = example1_report(n, smallest)?;
    Ok(radii.iter().map(|&r| growth_point(&report.rows, r)).collect())
}

//! Boundary densities `f` sampled on a [`CurveGrid`].
//!
//! A density keeps its grid samples and, when it came from a built-in closed
//! form, the [`DensitySpec`] that produced them. Nodes where the closed form
//! blows up or jumps are recorded in `singular_nodes`; quadratures use the
//! stored (finite) sample there, pointwise error metrics skip them.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::io::Read;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{node_tau, periodic_distance, CurveGrid, CurveParam};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// JSON object keys are strings; modes are written as `"-2"`, `"3"`.
mod mode_keys {
    use std::collections::BTreeMap;

    use num_complex::Complex64;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<i64, Complex64>, s: S) -> Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, Complex64> = m.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        keyed.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i64, Complex64>, D::Error> {
        BTreeMap::<String, Complex64>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<i64>()
                    .map(|n| (n, v))
                    .map_err(|_| D::Error::custom(format!("mode '{k}' is not an integer")))
            })
            .collect()
    }
}

/// Built-in boundary densities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensitySpec {
    /// `f ≡ c`
    Constant { c: Complex64 },
    /// `f(s) = sⁿ`, `n` may be negative.
    Power { n: i32 },
    /// `f(s) = 1/(s − z0)`
    Pole { z0: Complex64 },
    /// Sawtooth `f(φ) = i(π − φ)` on `0 < φ < 2π`, which is the sum of
    /// `Σ_{n≥1} (e^{inφ} − e^{−inφ})/n`. At the jump `φ = 0` the series
    /// value `0` is stored. Unit circle only.
    Example1,
    /// `f(φ) = |φ − φ0|^{−1/2}` with the periodic distance. Unit circle only.
    SqrtSingular { phi0: f64 },
    /// `f(τ) = Σ c_n e^{inτ}` in the curve parameter.
    TrigPoly {
        #[serde(with = "mode_keys")]
        coeffs: BTreeMap<i64, Complex64>,
    },
    /// Raw samples at `τ_j = 2πj/M`.
    Samples { values: Vec<Complex64> },
}

impl DensitySpec {
    pub fn constant(c: impl Into<Complex64>) -> Self {
        DensitySpec::Constant { c: c.into() }
    }

    pub fn power(n: i32) -> Self {
        DensitySpec::Power { n }
    }

    pub fn pole(z0: impl Into<Complex64>) -> Self {
        DensitySpec::Pole { z0: z0.into() }
    }

    pub fn trig_poly<I2: IntoIterator<Item = (i64, Complex64)>>(coeffs: I2) -> Self {
        DensitySpec::TrigPoly {
            coeffs: coeffs.into_iter().collect(),
        }
    }

    pub fn has_closed_form(&self) -> bool {
        !matches!(self, DensitySpec::Samples { .. })
    }

    /// Rejects densities that are not defined on the given curve.
    pub fn check_compatible(&self, param: &CurveParam) -> Result<()> {
        match self {
            DensitySpec::Example1 | DensitySpec::SqrtSingular { .. } if !param.is_unit_circle() => {
                Err(Error::IncompatibleDensity(format!(
                    "{} is defined on the unit circle only",
                    self.name()
                )))
            }
            DensitySpec::SqrtSingular { phi0 } if !phi0.is_finite() => Err(
                Error::IncompatibleDensity("sqrt_singular needs a finite phi0".into()),
            ),
            DensitySpec::Pole { z0 } if !(z0.re.is_finite() && z0.im.is_finite()) => {
                Err(Error::IncompatibleDensity("pole location must be finite".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DensitySpec::Constant { .. } => "constant",
            DensitySpec::Power { .. } => "power",
            DensitySpec::Pole { .. } => "pole",
            DensitySpec::Example1 => "example1",
            DensitySpec::SqrtSingular { .. } => "sqrt_singular",
            DensitySpec::TrigPoly { .. } => "trig_poly",
            DensitySpec::Samples { .. } => "samples",
        }
    }

    /// Closed-form value at parameter `tau`; `None` for raw samples. May be
    /// non-finite at a singularity.
    pub fn value(&self, param: &CurveParam, tau: f64) -> Option<Complex64> {
        let s = || param.position(tau);
        Some(match self {
            DensitySpec::Constant { c } => *c,
            DensitySpec::Power { n } => s().powi(*n),
            DensitySpec::Pole { z0 } => {
                let d = s() - z0;
                if d == ZERO {
                    Complex64::new(f64::INFINITY, 0.0)
                } else {
                    d.inv()
                }
            }
            DensitySpec::Example1 => {
                let phi = tau.rem_euclid(TAU);
                if phi == 0.0 {
                    ZERO
                } else {
                    I * (PI - phi)
                }
            }
            DensitySpec::SqrtSingular { phi0 } => {
                Complex64::new(periodic_distance(tau, *phi0).powf(-0.5), 0.0)
            }
            DensitySpec::TrigPoly { coeffs } => coeffs
                .iter()
                .map(|(&n, &c)| c * Complex64::from_polar(1.0, n as f64 * tau))
                .sum(),
            DensitySpec::Samples { .. } => return None,
        })
    }

    /// Exact `d/dτ (f∘s)(τ)`; `None` for raw samples.
    pub fn dtau(&self, param: &CurveParam, tau: f64) -> Option<Complex64> {
        let s = param.position(tau);
        let ds = param.derivative(tau);
        Some(match self {
            DensitySpec::Constant { .. } => ZERO,
            DensitySpec::Power { n } => f64::from(*n) * s.powi(n - 1) * ds,
            DensitySpec::Pole { z0 } => -ds / ((s - z0) * (s - z0)),
            DensitySpec::Example1 => -I,
            DensitySpec::SqrtSingular { phi0 } => {
                let d = periodic_distance(tau, *phi0);
                let wrapped = (tau - phi0).rem_euclid(TAU);
                let sign = if wrapped == 0.0 || wrapped == PI {
                    0.0
                } else if wrapped < PI {
                    1.0
                } else {
                    -1.0
                };
                Complex64::new(-0.5 * sign * d.powf(-1.5), 0.0)
            }
            DensitySpec::TrigPoly { coeffs } => coeffs
                .iter()
                .map(|(&n, &c)| I * (n as f64) * c * Complex64::from_polar(1.0, n as f64 * tau))
                .sum(),
            DensitySpec::Samples { .. } => return None,
        })
    }

    /// True where the closed form is unbounded, undefined or jumps.
    fn singular_at(&self, tau: f64, value: Complex64) -> bool {
        match self {
            DensitySpec::Example1 => tau.rem_euclid(TAU) == 0.0,
            _ => !(value.re.is_finite() && value.im.is_finite()),
        }
    }
}

/// Grid samples of a boundary density.
#[derive(Debug, Clone)]
pub struct Density {
    values: Vec<Complex64>,
    spec: Option<DensitySpec>,
    singular_nodes: Vec<usize>,
}

impl Density {
    /// Samples-only density. Non-finite entries become singular nodes with a
    /// stored value of zero.
    pub fn from_values(values: Vec<Complex64>) -> Self {
        let mut values = values;
        let mut singular_nodes = Vec::new();
        for (j, v) in values.iter_mut().enumerate() {
            if !(v.re.is_finite() && v.im.is_finite()) {
                *v = ZERO;
                singular_nodes.push(j);
            }
        }
        Density {
            values,
            spec: None,
            singular_nodes,
        }
    }

    pub(crate) fn with_singular(values: Vec<Complex64>, singular_nodes: Vec<usize>) -> Self {
        Density {
            values,
            spec: None,
            singular_nodes,
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn spec(&self) -> Option<&DensitySpec> {
        self.spec.as_ref()
    }

    /// Closed-form spec, if the density carries an exact evaluator.
    pub fn closed_form(&self) -> Option<&DensitySpec> {
        self.spec.as_ref().filter(|s| s.has_closed_form())
    }

    pub fn singular_nodes(&self) -> &[usize] {
        &self.singular_nodes
    }

    pub fn is_singular(&self, j: usize) -> bool {
        self.singular_nodes.binary_search(&j).is_ok()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn check_len(&self, grid: &CurveGrid) -> Result<()> {
        if self.values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: self.values.len(),
            });
        }
        Ok(())
    }

    /// `α·self + β·other` as a samples-only density; singular node sets are
    /// merged.
    pub fn combine(&self, alpha: Complex64, other: &Density, beta: Complex64) -> Result<Density> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let mut singular: Vec<usize> = self
            .singular_nodes
            .iter()
            .chain(&other.singular_nodes)
            .copied()
            .collect();
        singular.sort_unstable();
        singular.dedup();
        Ok(Density::with_singular(values, singular))
    }
}

/// Samples `spec` at the grid nodes.
pub fn sample_density(spec: &DensitySpec, grid: &CurveGrid) -> Result<Density> {
    let param = grid.param();
    spec.check_compatible(&param)?;
    if let DensitySpec::Samples { values } = spec {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        let mut d = Density::from_values(values.clone());
        d.spec = Some(spec.clone());
        return Ok(d);
    }

    let mut values = Vec::with_capacity(grid.len());
    let mut singular_nodes = Vec::new();
    for (j, &t) in grid.tau().iter().enumerate() {
        let v = spec.value(&param, t).expect("closed form");
        if spec.singular_at(t, v) {
            singular_nodes.push(j);
        }
        values.push(if v.re.is_finite() && v.im.is_finite() { v } else { ZERO });
    }
    Ok(Density {
        values,
        spec: Some(spec.clone()),
        singular_nodes,
    })
}

/// Discrete L¹(S) norm `h Σ_j |f_j| |s'(τ_j)|` over non-singular nodes.
pub fn density_norm_l1(f: &Density, grid: &CurveGrid) -> Result<f64> {
    f.check_len(grid)?;
    let h = grid.weight();
    Ok(f.values
        .iter()
        .zip(grid.deriv())
        .enumerate()
        .filter(|(j, _)| !f.is_singular(*j))
        .map(|(_, (v, ds))| v.norm() * ds.norm())
        .sum::<f64>()
        * h)
}

/// Restricts raw samples on `M` nodes to the nested grid of `n` nodes
/// (`M/n` must be a power of two).
pub fn restrict_samples(values: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    let m = values.len();
    if n == 0 || !m.is_multiple_of(n) || !(m / n).is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "cannot restrict {m} samples to a nested grid of {n} nodes"
        )));
    }
    let step = m / n;
    Ok(values.iter().step_by(step).copied().collect())
}

#[derive(Debug, Deserialize)]
struct SampleRow {
    tau: f64,
    re_f: f64,
    im_f: f64,
}

/// Reads `tau,re_f,im_f` rows (with header) into a `Samples` spec. The `tau`
/// column must match `2πj/M`.
pub fn samples_from_csv<R: Read>(reader: R) -> Result<DensitySpec> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let rows: Vec<SampleRow> = rdr.deserialize().collect::<Result<_, _>>()?;
    let m = rows.len();
    for (j, row) in rows.iter().enumerate() {
        let expected = node_tau(j, m);
        if (row.tau - expected).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "sample row {j}: tau={} does not match the uniform node 2πj/M = {expected}",
                row.tau
            )));
        }
    }
    Ok(DensitySpec::Samples {
        values: rows.iter().map(|r| Complex64::new(r.re_f, r.im_f)).collect(),
    })
}

//! Resolved run configuration and the textual forms accepted on the command
//! line.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::JumpOptions;
use crate::cauchy::LimitSchedule;
use crate::density::DensitySpec;
use crate::error::{Error, Result};
use crate::geometry::CurveParam;

/// Curve plus grid size, e.g. `{"kind": "ellipse", "a": 2.0, "b": 1.0, "N": 256}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveConfig {
    #[serde(flatten)]
    pub param: CurveParam,
    #[serde(rename = "N")]
    pub n: usize,
}

/// Quantity tracked by `converge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Φ(z) at the first `--z` point.
    Offcurve,
    /// Φ(t) at the node `τ = 2π·node_fraction`.
    Trace,
    /// |Φ⁺ − Φ⁻ − f| at that node.
    Jump,
}

/// Everything a run depends on. Emitted next to every result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub curve: CurveConfig,
    pub density: DensitySpec,
    pub schedule: LimitSchedule,
    pub exclude: Option<f64>,
    pub grids: Vec<usize>,
    pub threshold: Option<f64>,
    pub z: Vec<Complex64>,
    pub quantity: Quantity,
    pub node_fraction: f64,
    pub export_operator: bool,
    pub strict: bool,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            curve: CurveConfig {
                param: CurveParam::UnitCircle,
                n: 256,
            },
            density: DensitySpec::constant(1.0),
            schedule: LimitSchedule::default(),
            exclude: None,
            grids: vec![64, 128, 256],
            threshold: None,
            z: Vec::new(),
            quantity: Quantity::Offcurve,
            node_fraction: 0.0,
            export_operator: false,
            strict: false,
            seed: 0,
        }
    }

    pub fn jump_options(&self) -> JumpOptions {
        JumpOptions {
            schedule: self.schedule,
            exclusion_radius: self.exclude,
        }
    }

    /// Overlays the JSON object in `path` on top of this configuration.
    pub fn overlay_file(self, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidArgument(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let patch: Value = serde_json::from_str(&text)?;
        self.overlay(patch)
    }

    pub fn overlay(self, patch: Value) -> Result<Self> {
        if !patch.is_object() {
            return Err(Error::InvalidArgument(
                "config file must hold a JSON object".into(),
            ));
        }
        let mut base = serde_json::to_value(&self)?;
        merge(&mut base, patch);
        Ok(serde_json::from_value(base)?)
    }
}

/// Recursive merge; objects combine key by key, anything else replaces.
/// Tagged objects (`curve`, `density`) are replaced whole when the tag
/// changes so stale fields of the old variant do not linger.
fn merge(base: &mut Value, patch: Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            let kind_changed = matches!(
                (b.get("kind"), p.get("kind")),
                (Some(old), Some(new)) if old != new
            );
            if kind_changed {
                let keep_n = b.get("N").cloned();
                b.clear();
                if let Some(n) = keep_n {
                    b.insert("N".into(), n);
                }
            }
            for (k, v) in p {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("cannot parse {what} from '{s}'")))
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let mut it = s.split(',');
    let (Some(a), b, None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::InvalidArgument(format!(
            "{what} expects 're,im', got '{s}'"
        )));
    };
    Ok((parse_f64(a, what)?, b.map_or(Ok(0.0), |b| parse_f64(b, what))?))
}

/// `re,im` (imaginary part optional).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let (re, im) = parse_pair(s, "complex number")?;
    Ok(Complex64::new(re, im))
}

/// `circle`, `ellipse:a,b`, `kite`, `star:arms,amplitude`.
pub fn parse_curve(s: &str) -> Result<CurveParam> {
    let (name, args) = s.split_once(':').unwrap_or((s, ""));
    let param = match name.trim() {
        "circle" | "unit_circle" => CurveParam::UnitCircle,
        "kite" => CurveParam::Kite,
        "ellipse" => {
            let (a, b) = parse_pair(args, "ellipse axes")?;
            CurveParam::Ellipse { a, b }
        }
        "star" => {
            let (arms, amplitude) = parse_pair(args, "star arms,amplitude")?;
            if arms.fract() != 0.0 || arms < 0.0 {
                return Err(Error::InvalidArgument(format!("star arms must be an integer (got {arms})")));
            }
            CurveParam::Star {
                arms: arms as u32,
                amplitude,
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown curve '{other}' (expected circle, ellipse:a,b, kite or star:arms,amplitude)"
            )))
        }
    };
    param.validate()?;
    Ok(param)
}

/// `constant:re[,im]`, `power:n`, `pole:re,im`, `example1`, `sqrt:phi0`,
/// `trig:n=re,im;m=re,im`.
pub fn parse_density(s: &str) -> Result<DensitySpec> {
    let (name, args) = s.split_once(':').unwrap_or((s, ""));
    Ok(match name.trim() {
        "constant" => DensitySpec::constant(parse_complex(args)?),
        "power" => DensitySpec::power(args.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("power expects an integer exponent, got '{args}'"))
        })?),
        "pole" => DensitySpec::pole(parse_complex(args)?),
        "example1" | "sawtooth" => DensitySpec::Example1,
        "sqrt" | "sqrt_singular" => DensitySpec::SqrtSingular {
            phi0: parse_f64(args, "phi0")?,
        },
        "trig" | "trig_poly" => {
            let mut coeffs = Vec::new();
            for term in args.split(';').filter(|t| !t.trim().is_empty()) {
                let (n, c) = term.split_once('=').ok_or_else(|| {
                    Error::InvalidArgument(format!("trig term '{term}' must look like n=re,im"))
                })?;
                let n: i64 = n.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!("trig mode '{n}' is not an integer"))
                })?;
                coeffs.push((n, parse_complex(c)?));
            }
            if coeffs.is_empty() {
                return Err(Error::InvalidArgument("trig density needs at least one term".into()));
            }
            DensitySpec::trig_poly(coeffs)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown density '{other}' (expected constant, power, pole, example1, sqrt or trig)"
            )))
        }
    })
}

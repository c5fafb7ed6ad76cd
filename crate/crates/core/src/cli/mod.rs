//! The `plemelj` command-line front end.
//!
//! Exit codes: 0 success, 2 configuration or input error, 3 inconclusive
//! classification, 4 numerical-quality warnings under `--strict`.

pub mod config;
pub mod converge;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;

use crate::analysis::{classify_boundary, jump_report, Decision, DEFAULT_THRESHOLD};
use crate::cauchy::eval_offcurve;
use crate::density::{sample_density, samples_from_csv, DensitySpec};
use crate::error::{Error, Result};
use crate::geometry::{make_curve, CurveParam};
use crate::singular::{operator_matrix, phi_on_curve};
use crate::spectral::example1_report;

use config::{parse_complex, parse_curve, parse_density, Quantity, RunConfig};
use output::{document, num, write_json, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_STRICT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "plemelj",
    version,
    about = "Cauchy transforms, Sokhotsky-Plemelj checks and boundary-value classification on closed curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Φ(z) at points off the curve.
    Eval(EvalArgs),
    /// On-curve values Φ(t) and Bf at every node.
    Trace(TraceArgs),
    /// One-sided limits and jump residuals at every node.
    Jump(JumpArgs),
    /// Decide whether the density is an interior or exterior trace.
    Classify(ClassifyArgs),
    /// B₀ of the sawtooth density on the unit circle.
    CircleDemo(CircleDemoArgs),
    /// Error table under grid refinement.
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON config; its fields override the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// circle | ellipse:a,b | kite | star:arms,amplitude
    #[arg(long)]
    pub curve: Option<String>,
    /// Number of grid nodes (even, >= 8).
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// constant:re,im | power:n | pole:re,im | example1 | sqrt:phi0 | trig:n=re,im;...
    #[arg(long)]
    pub density: Option<String>,
    /// Density samples as CSV (tau,re_f,im_f).
    #[arg(long, conflicts_with = "density")]
    pub samples: Option<PathBuf>,
    /// Output directory; without it the main artifact goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed recorded in the emitted config (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Exit with code 4 when numerical-quality warnings were raised.
    #[arg(long)]
    pub strict: bool,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    /// Largest offset, in local node spacings.
    #[arg(long)]
    pub eps0: Option<f64>,
    /// Geometric ratio between successive offsets, in (0, 1).
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Number of offsets.
    #[arg(long)]
    pub count: Option<usize>,
    /// Smallest allowed offset, in local node spacings.
    #[arg(long)]
    pub min_eps_over_h: Option<f64>,
    /// Degree of the least-squares fit extrapolated to the curve.
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
    /// Evaluation point re,im (repeatable).
    #[arg(long = "z", allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// CSV of points (re_z,im_z).
    #[arg(long)]
    pub points: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub common: Common,
    /// Also write the dense N×N discrete B.
    #[arg(long)]
    pub export_operator: bool,
}

#[derive(Debug, Args)]
pub struct JumpArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Parameter-distance exclusion around singular nodes.
    #[arg(long)]
    pub exclude: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated increasing grid sizes.
    #[arg(long, value_delimiter = ',')]
    pub grids: Option<Vec<usize>>,
    /// Residual below which a verdict is accepted (default 1e-5; required
    /// for --samples).
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CircleDemoArgs {
    #[command(flatten)]
    pub common: Common,
    /// Exclusion radius around φ = 0.
    #[arg(long)]
    pub exclude: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Comma-separated increasing grid sizes (at least three).
    #[arg(long, value_delimiter = ',')]
    pub grids: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    pub quantity: Option<Quantity>,
    /// Evaluation point re,im for the offcurve quantity.
    #[arg(long = "z", allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// Node position as a fraction of the period (trace and jump).
    #[arg(long)]
    pub node_fraction: Option<f64>,
}

/// Outcome of a command before the exit code is chosen.
struct Outcome {
    summary: String,
    warnings: Vec<String>,
    inconclusive: bool,
}

impl Outcome {
    fn new(summary: String) -> Self {
        Outcome {
            summary,
            warnings: Vec::new(),
            inconclusive: false,
        }
    }
}

/// Parses `argv` and runs the command. Diagnostics and the one-line summary
/// go to `stderr`; the main artifact goes to `--out` or `stdout`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };

    // The artifact is buffered so the worker pool never touches `stdout`.
    let mut buffer = Vec::new();
    let threads = common_of(&cli.command).threads;
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &mut buffer)),
            Err(e) => Err(Error::InvalidArgument(format!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli.command, &mut buffer),
    };
    if let Err(e) = stdout.write_all(&buffer).and_then(|_| stdout.flush()) {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_CONFIG;
    }

    match result {
        Ok((config, outcome)) => {
            for w in &outcome.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let _ = writeln!(stderr, "{}", outcome.summary);
            if outcome.inconclusive {
                EXIT_INCONCLUSIVE
            } else if config.strict && !outcome.warnings.is_empty() {
                EXIT_STRICT
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_CONFIG
        }
    }
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::Eval(a) => &a.common,
        Command::Trace(a) => &a.common,
        Command::Jump(a) => &a.common,
        Command::Classify(a) => &a.common,
        Command::CircleDemo(a) => &a.common,
        Command::Converge(a) => &a.common,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Eval(_) => "eval",
        Command::Trace(_) => "trace",
        Command::Jump(_) => "jump",
        Command::Classify(_) => "classify",
        Command::CircleDemo(_) => "circle-demo",
        Command::Converge(_) => "converge",
    }
}

fn apply_common(cfg: &mut RunConfig, common: &Common) -> Result<()> {
    if let Some(curve) = &common.curve {
        cfg.curve.param = parse_curve(curve)?;
    }
    if let Some(n) = common.n {
        cfg.curve.n = n;
    }
    if let Some(d) = &common.density {
        cfg.density = parse_density(d)?;
    }
    if let Some(path) = &common.samples {
        let file = File::open(path).map_err(|e| {
            Error::InvalidArgument(format!("cannot open samples {}: {e}", path.display()))
        })?;
        cfg.density = samples_from_csv(file)?;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    cfg.strict = common.strict;
    Ok(())
}

fn apply_schedule(cfg: &mut RunConfig, s: &ScheduleArgs) {
    let sched = &mut cfg.schedule;
    if let Some(v) = s.ratio {
        sched.ratio = v;
    }
    if let Some(v) = s.count {
        sched.count = v;
    }
    if let Some(v) = s.min_eps_over_h {
        sched.min_eps_over_h = v;
    }
    if let Some(v) = s.degree {
        sched.extrapolation_degree = v;
    }
    // Keep the smallest offset on the floor unless eps0 is given.
    sched.eps0 = s
        .eps0
        .unwrap_or(sched.min_eps_over_h / sched.ratio.powi(sched.count as i32 - 1));
}

#[derive(Deserialize)]
struct PointRow {
    re_z: f64,
    im_z: f64,
}

fn read_points(path: &Path) -> Result<Vec<Complex64>> {
    let file = File::open(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot open points {}: {e}", path.display())))?;
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(file);
    rdr.deserialize::<PointRow>()
        .map(|r| r.map(|p| Complex64::new(p.re_z, p.im_z)).map_err(Error::from))
        .collect()
}

/// Builds the resolved configuration: flags first, then the config file.
fn resolve(cmd: &Command) -> Result<RunConfig> {
    let mut cfg = RunConfig::new(command_name(cmd));
    let common = common_of(cmd);
    apply_common(&mut cfg, common)?;
    match cmd {
        Command::Eval(a) => {
            for z in &a.z {
                cfg.z.push(parse_complex(z)?);
            }
            if let Some(p) = &a.points {
                cfg.z.extend(read_points(p)?);
            }
        }
        Command::Trace(a) => cfg.export_operator = a.export_operator,
        Command::Jump(a) => {
            apply_schedule(&mut cfg, &a.schedule);
            cfg.exclude = a.exclude;
        }
        Command::Classify(a) => {
            if let Some(g) = &a.grids {
                cfg.grids = g.clone();
            }
            cfg.threshold = a.threshold;
        }
        Command::CircleDemo(a) => {
            cfg.curve.param = CurveParam::UnitCircle;
            if common.n.is_none() {
                cfg.curve.n = 1024;
            }
            cfg.density = DensitySpec::Example1;
            cfg.exclude = Some(a.exclude.unwrap_or(0.1));
        }
        Command::Converge(a) => {
            apply_schedule(&mut cfg, &a.schedule);
            if let Some(g) = &a.grids {
                cfg.grids = g.clone();
            }
            if let Some(q) = a.quantity {
                cfg.quantity = q;
            }
            for z in &a.z {
                cfg.z.push(parse_complex(z)?);
            }
            if let Some(u) = a.node_fraction {
                cfg.node_fraction = u;
            }
        }
    }
    if let Some(path) = &common.config {
        let command = cfg.command.clone();
        cfg = cfg.overlay_file(path)?;
        cfg.command = command;
    }
    Ok(cfg)
}

/// Destination for one artifact: a file under `--out`, or stdout.
fn emit(
    out_dir: Option<&Path>,
    name: &str,
    stdout: &mut dyn Write,
    write: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| {
                Error::InvalidArgument(format!("cannot create output directory {}: {e}", dir.display()))
            })?;
            let path = dir.join(name);
            let file = File::create(&path).map_err(|e| {
                Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
            })?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => write(stdout),
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn dispatch(cmd: &Command, stdout: &mut Vec<u8>) -> Result<(RunConfig, Outcome)> {
    let cfg = resolve(cmd)?;
    let out = common_of(cmd).out.as_deref();
    let outcome = match cmd {
        Command::Eval(_) => run_eval(&cfg, out, stdout)?,
        Command::Trace(_) => run_trace(&cfg, out, stdout)?,
        Command::Jump(_) => run_jump(&cfg, out, stdout)?,
        Command::Classify(_) => run_classify(&cfg, out, stdout)?,
        Command::CircleDemo(_) => run_circle_demo(&cfg, out, stdout)?,
        Command::Converge(_) => run_converge(&cfg, out, stdout)?,
    };
    Ok((cfg, outcome))
}

fn run_eval(cfg: &RunConfig, out: Option<&Path>, stdout: &mut dyn Write) -> Result<Outcome> {
    if cfg.z.is_empty() {
        return Err(Error::InvalidArgument(
            "eval needs at least one point (--z re,im or --points file.csv)".into(),
        ));
    }
    let grid = make_curve(cfg.curve.param, cfg.curve.n)?;
    let f = sample_density(&cfg.density, &grid)?;
    let mut table = Table::new(&["re_z", "im_z", "re_phi", "im_phi", "warn_flag"]);
    let mut outcome = Outcome::new(String::new());
    let mut first = None;
    for &z in &cfg.z {
        let v = eval_offcurve(&grid, &f, z)?;
        if v.below_floor {
            outcome
                .warnings
                .push(format!("z={} is closer to the curve than the accuracy floor", fmt_c(z)));
        }
        first.get_or_insert(v.value);
        table.push(&[
            num(z.re),
            num(z.im),
            num(v.value.re),
            num(v.value.im),
            u8::from(v.below_floor).to_string(),
        ]);
    }
    emit(out, "eval.csv", stdout, |w| table.write_to(cfg, w))?;
    outcome.summary = format!(
        "eval: {} point(s); Φ({}) = {}",
        cfg.z.len(),
        fmt_c(cfg.z[0]),
        fmt_c(first.expect("at least one point"))
    );
    Ok(outcome)
}

fn run_trace(cfg: &RunConfig, out: Option<&Path>, stdout: &mut dyn Write) -> Result<Outcome> {
    let grid = make_curve(cfg.curve.param, cfg.curve.n)?;
    let f = sample_density(&cfg.density, &grid)?;
    let trace = phi_on_curve(&grid, &f)?;
    let mut table = Table::new(&["tau", "re_f", "im_f", "re_phi_t", "im_phi_t", "re_Bf", "im_Bf"]);
    let nan = Complex64::new(f64::NAN, f64::NAN);
    for j in 0..grid.len() {
        let phi = trace.phi_t[j].unwrap_or(nan);
        let b = 2.0 * phi;
        let fj = f.values()[j];
        table.push(&[
            num(grid.tau()[j]),
            num(fj.re),
            num(fj.im),
            num(phi.re),
            num(phi.im),
            num(b.re),
            num(b.im),
        ]);
    }
    emit(out, "trace.csv", stdout, |w| table.write_to(cfg, w))?;

    if cfg.export_operator {
        let Some(dir) = out else {
            return Err(Error::InvalidArgument(
                "--export-operator needs --out to place operator.csv".into(),
            ));
        };
        let m = operator_matrix(&grid);
        emit(Some(dir), "operator.csv", stdout, |w| {
            writeln!(w, "# {}", crate::VERSION)?;
            writeln!(w, "# config: {}", serde_json::to_string(cfg)?)?;
            let header: Vec<String> = (0..grid.len())
                .flat_map(|k| [format!("re_{k}"), format!("im_{k}")])
                .collect();
            writeln!(w, "{}", header.join(","))?;
            for row in &m {
                let cells: Vec<String> = row.iter().flat_map(|c| [num(c.re), num(c.im)]).collect();
                writeln!(w, "{}", cells.join(","))?;
            }
            Ok(())
        })?;
    }

    let mut outcome = Outcome::new(format!(
        "trace: N={} nodes, {} singular",
        grid.len(),
        f.singular_nodes().len()
    ));
    if !f.singular_nodes().is_empty() {
        outcome.warnings.push(format!(
            "Φ(t) left unset at singular nodes {:?}",
            f.singular_nodes()
        ));
    }
    Ok(outcome)
}

fn run_jump(cfg: &RunConfig, out: Option<&Path>, stdout: &mut dyn Write) -> Result<Outcome> {
    let grid = make_curve(cfg.curve.param, cfg.curve.n)?;
    let f = sample_density(&cfg.density, &grid)?;
    let report = jump_report(&grid, &f, &cfg.jump_options())?;

    let mut table = Table::new(&[
        "j", "tau", "re_f", "im_f", "re_phi_plus", "im_phi_plus", "re_phi_minus", "im_phi_minus",
        "re_phi_t", "im_phi_t", "r_jump", "r_plus", "r_minus", "r_avg",
    ]);
    for n in &report.nodes {
        table.push(&[
            n.j.to_string(),
            num(n.tau),
            num(n.f.re),
            num(n.f.im),
            num(n.phi_plus.re),
            num(n.phi_plus.im),
            num(n.phi_minus.re),
            num(n.phi_minus.im),
            num(n.phi_t.re),
            num(n.phi_t.im),
            num(n.r_jump),
            num(n.r_plus),
            num(n.r_minus),
            num(n.r_avg),
        ]);
    }
    let doc = document(
        cfg,
        &json!({
            "aggregates": report.aggregates,
            "schedule": report.schedule,
            "exclusion_radius": report.exclusion_radius,
            "skipped": report.skipped,
            "unresolved": report.unresolved,
        }),
    )?;
    match out {
        Some(_) => {
            emit(out, "jump.csv", stdout, |w| table.write_to(cfg, w))?;
            emit(out, "jump.json", stdout, |w| write_json(&doc, w))?;
        }
        None => write_json(&doc, stdout)?,
    }
    let a = report.aggregates;
    let mut outcome = Outcome::new(format!(
        "jump: {} nodes retained, {} skipped; max r_jump={:.3e} r_plus={:.3e} r_minus={:.3e}",
        a.retained,
        report.skipped.len(),
        a.r_jump.max,
        a.r_plus.max,
        a.r_minus.max
    ));
    if !report.unresolved.is_empty() {
        outcome.warnings.push(format!(
            "{} node(s) too close to other parts of the curve for the schedule: {:?}",
            report.unresolved.len(),
            report.unresolved
        ));
    }
    Ok(outcome)
}

fn run_classify(cfg: &RunConfig, out: Option<&Path>, stdout: &mut dyn Write) -> Result<Outcome> {
    let threshold = match (cfg.threshold, &cfg.density) {
        (Some(t), _) => t,
        (None, DensitySpec::Samples { .. }) => {
            return Err(Error::InvalidArgument(
                "samples-only densities need an explicit --threshold".into(),
            ))
        }
        (None, _) => DEFAULT_THRESHOLD,
    };
    let verdict = classify_boundary(cfg.curve.param, &cfg.density, &cfg.grids, threshold)?;
    let doc = document(cfg, &verdict)?;
    emit(out, "classify.json", stdout, |w| write_json(&doc, w))?;
    let decision = serde_json::to_value(verdict.decision)?;
    let mut outcome = Outcome::new(format!(
        "classify: {} (interior residual {:.3e}, exterior residual {:.3e})",
        decision.as_str().unwrap_or("?"),
        verdict.residual_interior.last().copied().unwrap_or(f64::NAN),
        verdict.residual_exterior.last().copied().unwrap_or(f64::NAN),
    ));
    outcome.inconclusive = verdict.decision == Decision::Inconclusive;
    Ok(outcome)
}

fn run_circle_demo(cfg: &RunConfig, out: Option<&Path>, stdout: &mut dyn Write) -> Result<Outcome> {
    let radius = cfg.exclude.unwrap_or(0.1);
    let report = example1_report(cfg.curve.n, radius)?;
    let mut table = Table::new(&[
        "phi",
        "re_f",
        "im_f",
        "re_B0f_spectral",
        "re_B0f_subtraction",
        "closed_form",
        "abs_err_spectral",
        "abs_err_subtraction",
        "retained",
    ]);
    for r in &report.rows {
        table.push(&[
            num(r.phi),
            num(r.f.re),
            num(r.f.im),
            num(r.b0_spectral.re),
            num(r.b0_subtraction.re),
            num(r.closed_form),
            num(r.abs_err_spectral()),
            num(r.abs_err_subtraction()),
            u8::from(r.retained).to_string(),
        ]);
    }
    let doc = document(cfg, &report)?;
    match out {
        Some(_) => {
            emit(out, "circle_demo.csv", stdout, |w| table.write_to(cfg, w))?;
            emit(out, "circle_demo.json", stdout, |w| write_json(&doc, w))?;
        }
        None => write_json(&doc, stdout)?,
    }
    Ok(Outcome::new(format!(
        "circle-demo: N={} exclusion={}; max error spectral={:.3e} subtraction={:.3e}",
        report.n, radius, report.max_err_spectral, report.max_err_subtraction
    )))
}

fn run_converge(cfg: &RunConfig, out: Option<&Path>, stdout: &mut dyn Write) -> Result<Outcome> {
    let table_data = converge::converge(cfg)?;
    let mut table = Table::new(&["N", "re_value", "im_value", "error", "order"]);
    for r in &table_data.rows {
        table.push(&[
            r.n.to_string(),
            num(r.value.re),
            num(r.value.im),
            num(r.error),
            r.order.map_or_else(|| "nan".into(), num),
        ]);
    }
    let doc = document(cfg, &table_data)?;
    match out {
        Some(_) => {
            emit(out, "converge.csv", stdout, |w| table.write_to(cfg, w))?;
            emit(out, "converge.json", stdout, |w| write_json(&doc, w))?;
        }
        None => write_json(&doc, stdout)?,
    }
    let last = table_data.rows.last().expect("at least three grids");
    Ok(Outcome::new(format!(
        "converge: {:?} error {:.3e} at N={}",
        table_data.quantity, last.error, last.n
    )))
}

//! Error tables under grid refinement: exponential convergence off the
//! curve and on it for smooth data, algebraic for the sawtooth.

use plemelj::cli::config::{Quantity, RunConfig};
use plemelj::cli::converge::converge;
use plemelj::{Complex64, CurveParam, DensitySpec};

fn show(title: &str, cfg: &RunConfig) -> plemelj::Result<()> {
    let t = converge(cfg)?;
    println!("{title}  (reference: {:?})", t.reference);
    for r in &t.rows {
        let order = r.order.map_or_else(|| "-".to_string(), |o| format!("{o:.2}"));
        println!("  N={:<5} error {:.3e}  order {order}", r.n, r.error);
    }
    Ok(())
}

fn main() -> plemelj::Result<()> {
    let mut cfg = RunConfig::new("converge");
    cfg.density = DensitySpec::power(3);
    cfg.z = vec![Complex64::new(0.5, 0.0)];
    cfg.grids = vec![8, 16, 32, 64];
    show("Φ(0.5) for s^3 on the circle", &cfg)?;

    cfg.curve.param = CurveParam::Kite;
    cfg.density = DensitySpec::pole(3.0);
    cfg.quantity = Quantity::Trace;
    cfg.node_fraction = 0.25;
    cfg.grids = vec![32, 64, 128, 256];
    show("Φ(t) at τ = π/2 for 1/(s - 3) on the kite", &cfg)?;

    cfg.quantity = Quantity::Jump;
    cfg.grids = vec![512, 1024, 2048];
    show("jump residual at τ = π/2 on the kite", &cfg)?;

    cfg.curve.param = CurveParam::UnitCircle;
    cfg.density = DensitySpec::Example1;
    cfg.quantity = Quantity::Trace;
    cfg.node_fraction = 0.5;
    cfg.grids = vec![128, 256, 512, 1024];
    show("Φ(t) at φ = π for the sawtooth", &cfg)?;
    Ok(())
}

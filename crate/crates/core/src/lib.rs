//! Cauchy transforms of boundary densities on smooth closed curves.
//!
//! For a density `f` on a closed curve `S = ∂D` the crate evaluates
//! `Φ(z) = (1/2πi) ∫_S f(s)/(s − z) ds` off the curve, its one-sided
//! boundary values `Φ⁺`, `Φ⁻`, and the on-curve principal value `Φ(t)`,
//! and checks the Sokhotsky-Plemelj relations between them. The operator
//! `Bf = (1/iπ) PV∫_S f(s)/(s − t) ds` decides whether `f` is the trace of a
//! function analytic in `D` (`f = Bf`) or in the exterior with `Φ(∞) = 0`
//! (`f = −Bf`).
//!
//! ## Modules
//!
//! - [`geometry`]: built-in curves and their periodic grids
//! - [`density`]: closed-form and sampled boundary densities
//! - [`cauchy`]: off-curve evaluation, indicator, one-sided limits
//! - [`singular`]: principal values by singularity subtraction, `B`, duality
//! - [`spectral`]: `B₀` as a Fourier multiplier on the unit circle
//! - [`analysis`]: jump reports, limit defects, boundary-value classifier
//! - [`reference`]: closed-form boundary values for built-in densities
//! - [`cli`]: the `plemelj` command-line front end
//!
//! ## Examples
//!
//! ```text
//! examples/
//! ├── winding_indicator.rs   # ν(z) inside/outside several curves
//! ├── plemelj_jump.rs        # Φ⁺, Φ⁻ and Φ(t) on the kite
//! ├── lemma_defect.rs        # continuity of ψ across the curve
//! ├── involution.rs          # B(Bf) = f on ellipse and kite
//! ├── sawtooth.rs            # B₀ of the sawtooth, log growth near φ = 0
//! ├── classify.rs            # interior / exterior / neither verdicts
//! ├── duality.rs             # exchange of integration order
//! └── convergence.rs         # error tables under grid refinement
//! ```
//!
//! Run any of them with `cargo run --release --example <name>`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cauchy;
pub mod cli;
pub mod density;
mod dft;
pub mod error;
pub mod geometry;
pub mod reference;
pub mod singular;
pub mod spectral;

pub use analysis::{
    classify_boundary, eq9c_check, jump_report, lemma1_defect, Decision, JumpOptions, JumpReport,
    MembershipVerdict,
};
pub use cauchy::{
    eval_offcurve, nontangential_limit, winding_indicator, LimitSchedule, OffCurveValue, Side,
};
pub use density::{density_norm_l1, sample_density, Density, DensitySpec};
pub use error::{Error, Result};
pub use geometry::{make_curve, outward_normal, CurveGrid, CurveParam};
pub use singular::{apply_B, duality_defect, phi_on_curve, psi_at, PVTrace};
pub use spectral::{b0_apply, b0_multiplier, example1_report, FourierDensity};

pub use num_complex::Complex64;

/// Version string embedded in every emitted artifact.
pub const VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

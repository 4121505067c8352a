//! Exact stationary scattering for the one-dimensional Dirac equation
//! `H = σ_x p + σ_z m + V(z)` with piecewise-constant `V`, in units `c = ħ = 1`.
//!
//! - [`modes`]: local plane-wave solutions, spinor ratios and band classification.
//! - [`step`]: closed-form amplitudes for a single step, with a matching oracle.
//! - [`transfer`]: transfer matrices for arbitrary segment profiles and barriers.
//! - [`overlap`]: sudden-approximation overlaps and their finite-box checks.
//! - [`massless`]: the `m = 0` limit and the graphene band contrast.
//! - [`sweep`]: parameter sweeps and CSV records used by the command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod massless;
pub mod modes;
pub mod overlap;
pub mod profile;
pub mod quad;
pub mod step;
pub mod sweep;
pub mod transfer;

pub use error::{Error, Result, Side};
pub use modes::{
    classify_band, classify_mode, current_of_u, make_spinor, u_of_k, w_of_kappa, BandCase,
    Direction, EvanescentSign, ModeKind, PhysParams, SegmentMode, Spinor2,
};
pub use num_complex::Complex64;
pub use profile::{parse_profile, write_profile, ParseError};
pub use step::{step_scatter, ScatteringResult};
pub use transfer::{
    barrier_scatter, compose_profile, disc_matrix, prop_matrix, scatter_profile, BarrierSpec,
    PotentialProfile, Segment, TransferMatrix,
};

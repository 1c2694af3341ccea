//! k-generalized gamma, digamma, Nielsen beta and Hadamard gamma functions,
//! moment integrals of the k-digamma function, and a registry that checks
//! identities among them over parameter grids.

// Quadrature tables keep their published digits, `!(x > 0.0)` guards also
// reject NaN, and the kernels index several arrays in lockstep.
#![allow(
    clippy::excessive_precision,
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop
)]

pub mod error;
pub mod oracles;
pub mod scalar;

pub mod beta;
pub mod furdui;
pub mod hadamard;
pub mod kfun;
pub mod registry;

pub use error::{Error, Result};
pub use kfun::KScale;
pub use oracles::{DiscrepancyFit, FitMode, QuadratureResult};
pub use registry::{GridSpec, IdentityReport, RunSummary, Verdict};
pub use scalar::SeriesValue;

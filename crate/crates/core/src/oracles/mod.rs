//! Independent numerical machinery used to cross-check the evaluators.

pub mod diff;
pub mod fit;
pub mod probe;
pub mod quadrature;
pub mod series;

pub use diff::finite_diff;
pub use fit::{fit_discrepancy, DiscrepancyFit, FitMode};
pub use probe::{cm_probe, CmVerdict, CmViolation};
pub use quadrature::{adaptive_quad, QuadratureResult};
pub use series::{alt_series_cvz, alt_series_sum, euler_maclaurin_tail, TERM_CAP};

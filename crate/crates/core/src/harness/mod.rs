//! Sampled variational problems: quadrature of actions, first variations, Euler–Lagrange
//! residuals and the correspondence and gauge-shift drivers.

pub mod drivers;
pub mod grid;
pub mod parallel;
pub mod quadrature;
pub mod report;
pub mod variation;

pub use drivers::{
    correspondence_test, gauge_shift_residual, gauge_shift_test, wz_closedness, CorrespondenceReport,
    CorrespondenceTolerances, GaugeShiftReport, GaugeShiftTolerances, MatchedVariation,
};
pub use grid::{GridSection, Perturbation, PerturbationTarget, Prepared, SectionFields};
pub use quadrature::{gauss_legendre, QuadratureKind, QuadratureRule};
pub use report::{ActionReport, ConstraintEntry, ReportMeta, Verdict};
pub use variation::{
    action_eval, all_variations, el_residual, first_variation, first_variation_combo, ActionEvaluation, ElResidual,
    Variation, EPSILONS,
};

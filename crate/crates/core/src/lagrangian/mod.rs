//! Lagrangian forms of the Chern–Simons and Palatini problems and their constraint systems.

pub mod constraints;
pub mod density;
pub mod section;

pub use constraints::{constraint_residuals, Constraint, ConstraintLabel, ConstraintSet, ProblemKind};
pub use density::{
    chern_form, cs_exact_term, cs_lagrangian, cs_local, cs_reduced, lagrangian, palatini_lagrangian, transgression,
    wise_local_action_integrand, wz_term, GaugeGroup, LagrangianForm, LagrangianKind,
};
pub use section::{AmSection, LmSection};

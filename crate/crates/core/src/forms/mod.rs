//! Exterior calculus of Lie-algebra-valued forms on coordinate boxes.

pub mod algebra;
pub mod chart;
pub mod coeff;
pub mod field;
pub mod form;
pub mod group_map;
pub mod jet;
pub mod ops;
pub mod polynomial;
pub mod random;
pub mod sparkling;

pub use chart::ChartBox;
pub use coeff::Coeff;
pub use field::{Evaluator, Field, Func};
pub use form::{multi_indices, JetForm, Pairing, SymbolicForm, ValueSpace, ValuedForm};
pub use group_map::{gauge_transform_generic, gauge_transform_local, maurer_cartan, GroupKind, GroupMap};
pub use jet::Jet;
pub use ops::{adjoint_form, adjoint_inverse_form, curvature};
pub use polynomial::{Polynomial, Term};
pub use sparkling::sparkling_form;

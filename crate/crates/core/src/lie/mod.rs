//! Matrix Lie groups GL(m), the Lorentz group K and A(m), with their algebras.

pub mod group;
pub mod levi_civita;
pub mod signature;
pub mod structure;

pub use group::{adjoint_aff, adjoint_gl, aff_inverse, AffAlgElement, AffElement, GlElement};
pub use levi_civita::{levi_civita, permutation_sign, LeviCivita};
pub use signature::Signature;
pub use structure::{
    aff_pairing, boost, gl_pairing, is_lorentz, is_lorentz_with, k_defect, lorentz_basis,
    p_defect, project_k_r3, project_p, so21_vector_iso, split_gl,
};

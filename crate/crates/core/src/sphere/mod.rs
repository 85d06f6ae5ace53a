//! Möbius maps preserving the positive unit sphere S = {x : B(x,x) = 1}.

mod conditions;
mod convention;
mod proposition;

pub use conditions::{
    conjugate_adjugate, hermitian_adjoint, normal_form, preserves_quadric, preserves_quadric_within,
    preserves_unit_sphere, sphere_preservation_empirical, sphere_preservation_witness, EmpiricalOutcome, NormalForm,
    Quadric,
};
pub use convention::{make_phi, resolve_phi_convention, ConventionReport, PatternOutcome, PhiPattern};
pub use proposition::{verify_proposition, PROPOSITION_CLAIMS};

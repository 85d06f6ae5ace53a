//! Clifford algebras Cl(p,q), Vahlen matrices and the Möbius group of the
//! compactified pseudo-Euclidean space, with exact rational and f64 scalars.

pub mod disk;
pub mod error;
pub mod json;
pub mod laws;
pub mod multivector;
pub mod point;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod signature;
pub mod sphere;
pub mod vahlen;
pub mod versor;

pub use error::{Error, Result};
pub use laws::{verify_laws, LawsConfig};
pub use multivector::{Blade, Involution, Multivector};
pub use point::ProjectivePoint;
pub use report::{Claim, Status, VerificationReport};
pub use scalar::{Rational, Scalar, DEFAULT_TOLERANCE};
pub use signature::{Signature, MAX_DIMENSION};
pub use sphere::{
    make_phi, normal_form, preserves_unit_sphere, resolve_phi_convention, sphere_preservation_empirical,
    verify_proposition, PhiPattern,
};
pub use vahlen::{pin_check, pin_check_within, VahlenMatrix};
pub use versor::VectorProduct;

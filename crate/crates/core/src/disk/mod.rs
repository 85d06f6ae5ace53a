//! Function theory on the unit disk of R^{0,2}, identified with C through
//! x₁e₁ + x₂e₂ = z e₁ and i = e₁e₂. Boundary data live on a uniform grid of
//! the circle; the disk automorphisms act through a cocycle m(g, z)^κ.

mod automorphism;
mod bergman;
mod boundary;
mod transform;

pub use automorphism::{complex_to_vector, vector_to_complex, CocycleConfig, DiskAutomorphism};
pub use bergman::{
    bergman_closed_form, bergman_gram, bergman_kernel, bergman_kernel_grid, gram_min_eigenvalue, BergmanEstimate,
    BergmanOptions, GridOptions,
};
pub use boundary::{BoundaryFunction, BoundaryGrid};
pub use transform::{
    negative_frequency_fraction, polynomial_eval, rep_apply, taylor_coefficients, wavelet_transform,
    wavelet_transform_with,
};

pub use num_complex::Complex64;

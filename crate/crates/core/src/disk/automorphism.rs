use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::scalar::DEFAULT_TOLERANCE;
use crate::signature::Signature;
use crate::sphere::{make_phi, PhiPattern};
use crate::vahlen::VahlenMatrix;
use crate::versor::VectorProduct;

/// g·z = (ωz + a)/(1 + ā ω z) with |a| < 1, |ω| = 1; g(0) = a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskAutomorphism {
    a: Complex64,
    omega: Complex64,
}

impl DiskAutomorphism {
    pub fn new(a: Complex64, omega: Complex64) -> Result<Self> {
        if !in_open_disk(a) {
            return Err(Error::InvalidAutomorphism("|a| must be below 1"));
        }
        let drift = (omega.norm() - 1.0).abs();
        if drift.is_nan() || drift > DEFAULT_TOLERANCE {
            return Err(Error::InvalidAutomorphism("|omega| must be 1"));
        }
        Ok(DiskAutomorphism { a, omega })
    }

    pub fn identity() -> Self {
        DiskAutomorphism { a: Complex64::new(0.0, 0.0), omega: Complex64::new(1.0, 0.0) }
    }

    /// Element of the rotation subgroup H.
    pub fn rotation(omega: Complex64) -> Result<Self> {
        Self::new(Complex64::new(0.0, 0.0), omega)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.omega * z + self.a) / (1.0 + self.a.conj() * self.omega * z)
    }

    pub fn inverse(&self) -> Self {
        let w = self.omega.conj();
        DiskAutomorphism { a: -w * self.a, omega: w }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        // Matrices (ω, a; ā ω, 1), normalised back to a unit lower-right entry.
        let m = |g: &Self| [g.omega, g.a, g.a.conj() * g.omega, Complex64::new(1.0, 0.0)];
        let (x, y) = (m(self), m(other));
        let p = [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ];
        DiskAutomorphism { a: p[1] / p[3], omega: (p[0] / p[3]) / (p[0] / p[3]).norm() }
    }

    /// Cocycle m(g, z) = (1 − |a|²)^½ / (1 + ā ω z), with |m|² = |g'(z)|.
    pub fn m(&self, z: Complex64) -> Complex64 {
        (1.0 - self.a.norm_sqr()).sqrt() / (1.0 + self.a.conj() * self.omega * z)
    }

    /// Vahlen matrix of g over Cl(0,2): φ_(a e₁, b) with b = e^{e₁e₂ θ/2},
    /// e^{iθ} = −ω, written as the vector product (−e₁)(cos(θ/2) e₁ − sin(θ/2) e₂).
    pub fn to_vahlen(&self) -> VahlenMatrix<f64> {
        let sig = Signature::new(0, 2).expect("valid signature");
        let theta = (-self.omega).arg();
        let (s, c) = (theta / 2.0).sin_cos();
        let u = Multivector::vector(sig, &[-1.0, 0.0]).expect("dimension");
        let v = Multivector::vector(sig, &[c, -s]).expect("dimension");
        let b = VectorProduct::new(sig, vec![u, v]).expect("vectors");
        let a = Multivector::vector(sig, &[self.a.re, self.a.im]).expect("dimension");
        make_phi(&a, &b, PhiPattern::CANONICAL).expect("|a| < 1 keeps the matrix nondegenerate")
    }
}

/// Exponent κ ≥ 1 of the cocycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CocycleConfig {
    kappa: u32,
}

impl CocycleConfig {
    pub fn new(kappa: u32) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::InvalidArgument("kappa must be at least 1".into()));
        }
        Ok(CocycleConfig { kappa })
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn factor(&self, g: &DiskAutomorphism, z: Complex64) -> Complex64 {
        g.m(z).powu(self.kappa)
    }
}

/// z for the vector x₁e₁ + x₂e₂ of Cl(0,2).
pub fn vector_to_complex(x: &Multivector<f64>) -> Result<Complex64> {
    if x.signature() != Signature::new(0, 2)? {
        return Err(Error::InvalidArgument("expected a vector of Cl(0,2)".into()));
    }
    let c = x.vector_components()?;
    Ok(Complex64::new(c[0], c[1]))
}

/// |z| < 1; false for NaN.
pub(crate) fn in_open_disk(z: Complex64) -> bool {
    z.norm() < 1.0
}

pub fn complex_to_vector(z: Complex64) -> Multivector<f64> {
    let sig = Signature::new(0, 2).expect("valid signature");
    Multivector::vector(sig, &[z.re, z.im]).expect("dimension")
}

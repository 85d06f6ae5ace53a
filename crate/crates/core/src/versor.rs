//! Products of vectors: the set T(p,q), and the Clifford group Γ(p,q) when
//! every factor is invertible.
//!
//! Membership is tracked by construction. An element remembers its vector
//! factors, so inverses and involutions are computed factorwise.

use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::scalar::{Scalar, DEFAULT_TOLERANCE};
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq)]
pub struct VectorProduct<S> {
    sig: Signature,
    factors: Vec<Multivector<S>>,
    expanded: Multivector<S>,
}

impl<S: Scalar> VectorProduct<S> {
    /// The empty product, 1.
    pub fn identity(sig: Signature) -> Self {
        VectorProduct { sig, factors: Vec::new(), expanded: Multivector::one(sig) }
    }

    pub fn new(sig: Signature, factors: Vec<Multivector<S>>) -> Result<Self> {
        let mut expanded = Multivector::one(sig);
        for f in &factors {
            sig.check_same(f.signature())?;
            if !f.is_vector() {
                return Err(Error::NotAVector);
            }
            expanded = expanded.geometric_product(f)?;
        }
        Ok(VectorProduct { sig, factors, expanded })
    }

    pub fn from_vector(v: Multivector<S>) -> Result<Self> {
        let sig = v.signature();
        Self::new(sig, vec![v])
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn factors(&self) -> &[Multivector<S>] {
        &self.factors
    }

    pub fn expanded(&self) -> &Multivector<S> {
        &self.expanded
    }

    pub fn is_invertible(&self) -> bool {
        self.factors.iter().all(|f| f.bilinear_form(f).map(|b| !b.is_negligible(DEFAULT_TOLERANCE)).unwrap_or(false))
    }

    /// Reversed product of Kelvin inverses.
    pub fn inverse(&self) -> Result<Self> {
        let factors = self.factors.iter().rev().map(|f| f.kelvin_inverse()).collect::<Result<Vec<_>>>()?;
        Self::new(self.sig, factors)
    }

    /// a* = v_k ⋯ v_1.
    pub fn reversion(&self) -> Self {
        let factors: Vec<_> = self.factors.iter().rev().cloned().collect();
        Self::new(self.sig, factors).expect("factors are vectors")
    }

    /// a' = (−v_1) ⋯ (−v_k).
    pub fn grade_involution(&self) -> Self {
        let factors: Vec<_> = self.factors.iter().map(|f| -f).collect();
        Self::new(self.sig, factors).expect("factors are vectors")
    }

    /// ā = (−v_k) ⋯ (−v_1).
    pub fn conjugation(&self) -> Self {
        self.reversion().grade_involution()
    }

    /// Product of two vector products, concatenating factors.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(other.sig)?;
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::new(self.sig, factors)
    }

    /// a ā, a real scalar Π B(v_i, v_i).
    pub fn norm(&self) -> S {
        self.factors.iter().map(|f| f.bilinear_form(f).expect("factors are vectors")).fold(S::one(), |acc, b| acc * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn factorwise_inverse_matches_expanded_product() {
        let s = Signature::new(1, 2).unwrap();
        let v = Multivector::vector(s, &[q(1, 1), q(2, 1), q(0, 1)]).unwrap();
        let w = Multivector::vector(s, &[q(1, 2), q(0, 1), q(3, 1)]).unwrap();
        let a = VectorProduct::new(s, vec![v, w]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.expanded() * inv.expanded(), Multivector::one(s));
        assert_eq!(a.conjugation().expanded(), &a.expanded().conjugation());
        assert_eq!(a.reversion().expanded(), &a.expanded().reversion());
        assert_eq!(a.grade_involution().expanded(), &a.expanded().grade_involution());
        let n = a.expanded() * a.conjugation().expanded();
        assert_eq!(n, Multivector::scalar(s, a.norm()));
    }

    #[test]
    fn null_factor_is_not_invertible() {
        let s = Signature::new(1, 1).unwrap();
        let null = Multivector::vector(s, &[q(1, 1), q(1, 1)]).unwrap();
        let a = VectorProduct::from_vector(null).unwrap();
        assert!(!a.is_invertible());
        assert_eq!(a.inverse(), Err(Error::NullVector));
    }

    #[test]
    fn rejects_non_vector_factors() {
        let s = Signature::new(0, 2).unwrap();
        let e12 = Multivector::<Rational>::basis_vector(s, 1).unwrap() * Multivector::basis_vector(s, 2).unwrap();
        assert_eq!(VectorProduct::new(s, vec![e12]), Err(Error::NotAVector));
    }
}

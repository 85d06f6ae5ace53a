//! Vahlen matrices over Cl(p,q) and their Möbius action
//! x ↦ (ax + b)(cx + d)⁻¹ on the compactified space.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::point::ProjectivePoint;
use crate::scalar::{Scalar, DEFAULT_TOLERANCE};
use crate::signature::Signature;
use crate::versor::VectorProduct;

/// 2×2 matrix (a, b; c, d) with Clifford entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", try_from = "WireMatrix<S>")]
pub struct VahlenMatrix<S> {
    a: Multivector<S>,
    b: Multivector<S>,
    c: Multivector<S>,
    d: Multivector<S>,
}

#[derive(Deserialize)]
#[serde(bound = "S: Scalar")]
struct WireMatrix<S> {
    a: Multivector<S>,
    b: Multivector<S>,
    c: Multivector<S>,
    d: Multivector<S>,
}

impl<S: Scalar> TryFrom<WireMatrix<S>> for VahlenMatrix<S> {
    type Error = Error;

    fn try_from(w: WireMatrix<S>) -> Result<Self> {
        VahlenMatrix::new(w.a, w.b, w.c, w.d)
    }
}

impl<S: Scalar> VahlenMatrix<S> {
    pub fn new(a: Multivector<S>, b: Multivector<S>, c: Multivector<S>, d: Multivector<S>) -> Result<Self> {
        let sig = a.signature();
        for m in [&b, &c, &d] {
            sig.check_same(m.signature())?;
        }
        Ok(VahlenMatrix { a, b, c, d })
    }

    pub fn identity(sig: Signature) -> Self {
        let one = Multivector::one(sig);
        let zero = Multivector::zero(sig);
        VahlenMatrix { a: one.clone(), b: zero.clone(), c: zero, d: one }
    }

    /// (1, y; 0, 1): x ↦ x + y.
    pub fn shift(y: &Multivector<S>) -> Result<Self> {
        if !y.is_vector() {
            return Err(Error::NotAVector);
        }
        let sig = y.signature();
        Ok(VahlenMatrix { a: Multivector::one(sig), b: y.clone(), c: Multivector::zero(sig), d: Multivector::one(sig) })
    }

    /// (a, 0; 0, a*⁻¹): x ↦ a x a*.
    pub fn rotation(a: &VectorProduct<S>) -> Result<Self> {
        let sig = a.signature();
        let star_inv = a.reversion().inverse()?;
        Ok(VahlenMatrix {
            a: a.expanded().clone(),
            b: Multivector::zero(sig),
            c: Multivector::zero(sig),
            d: star_inv.expanded().clone(),
        })
    }

    /// (λ^½, 0; 0, λ^-½): x ↦ λx. Exact mode needs λ to be a rational square.
    pub fn dilation(sig: Signature, lambda: &S) -> Result<Self> {
        if lambda.sign(DEFAULT_TOLERANCE) <= 0 {
            return Err(Error::NonPositiveDilation);
        }
        let root = lambda.sqrt().ok_or(Error::ScalarNotSquare)?;
        let inv_root = S::one().checked_div(&root).ok_or(Error::NonPositiveDilation)?;
        Ok(VahlenMatrix {
            a: Multivector::scalar(sig, root),
            b: Multivector::zero(sig),
            c: Multivector::zero(sig),
            d: Multivector::scalar(sig, inv_root),
        })
    }

    /// (0, −1; 1, 0): x ↦ −x⁻¹.
    pub fn inversion(sig: Signature) -> Self {
        VahlenMatrix {
            a: Multivector::zero(sig),
            b: -Multivector::one(sig),
            c: Multivector::one(sig),
            d: Multivector::zero(sig),
        }
    }

    pub fn signature(&self) -> Signature {
        self.a.signature()
    }

    pub fn a(&self) -> &Multivector<S> {
        &self.a
    }

    pub fn b(&self) -> &Multivector<S> {
        &self.b
    }

    pub fn c(&self) -> &Multivector<S> {
        &self.c
    }

    pub fn d(&self) -> &Multivector<S> {
        &self.d
    }

    pub fn entries(&self) -> [&Multivector<S>; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Δ = a d* − b c*.
    pub fn pseudodeterminant(&self) -> Multivector<S> {
        &(&self.a * &self.d.reversion()) - &(&self.b * &self.c.reversion())
    }

    /// Δ is a nonzero real scalar and a*b, c*d, ac*, bd* are vectors (or zero).
    pub fn vahlen_check(&self) -> bool {
        self.vahlen_check_within(DEFAULT_TOLERANCE)
    }

    pub fn vahlen_check_within(&self, tol: f64) -> bool {
        let delta = self.pseudodeterminant();
        if !delta.is_real_scalar_within(tol) || delta.scalar_part().is_negligible(tol) {
            return false;
        }
        let products = [
            &self.a.reversion() * &self.b,
            &self.c.reversion() * &self.d,
            &self.a * &self.c.reversion(),
            &self.b * &self.d.reversion(),
        ];
        products.iter().all(|m| m.is_vector_within(tol))
    }

    /// Real pseudodeterminant, or `DegenerateMatrix`.
    pub fn real_pseudodeterminant(&self) -> Result<S> {
        let delta = self.pseudodeterminant();
        if !delta.is_real_scalar() || delta.scalar_part().is_negligible(DEFAULT_TOLERANCE) {
            return Err(Error::DegenerateMatrix);
        }
        Ok(delta.scalar_part())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.signature().check_same(other.signature())?;
        Ok(VahlenMatrix {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
        })
    }

    /// Δ⁻¹ (d*, −b*; −c*, a*).
    pub fn mat_inverse(&self) -> Result<Self> {
        let delta = self.real_pseudodeterminant()?;
        let k = S::one().checked_div(&delta).ok_or(Error::DegenerateMatrix)?;
        Ok(VahlenMatrix {
            a: self.d.reversion().scale(&k),
            b: (-self.b.reversion()).scale(&k),
            c: (-self.c.reversion()).scale(&k),
            d: self.a.reversion().scale(&k),
        })
    }

    pub fn scale(&self, s: &S) -> Self {
        VahlenMatrix { a: self.a.scale(s), b: self.b.scale(s), c: self.c.scale(s), d: self.d.scale(s) }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> VahlenMatrix<T> {
        VahlenMatrix { a: self.a.map(&f), b: self.b.map(&f), c: self.c.map(&f), d: self.d.map(&f) }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.entries().iter().zip(other.entries()).all(|(x, y)| x.approx_eq(y, tol))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.signature())
    }

    /// x ↦ (ax + b)(cx + d)⁻¹. A non-invertible denominator gives a point
    /// at infinity.
    pub fn moebius_apply(&self, x: &Multivector<S>) -> Result<ProjectivePoint<S>> {
        self.moebius_apply_within(x, DEFAULT_TOLERANCE)
    }

    pub fn moebius_apply_within(&self, x: &Multivector<S>, tol: f64) -> Result<ProjectivePoint<S>> {
        self.signature().check_same(x.signature())?;
        if !x.is_vector_within(tol) {
            return Err(Error::NotAVector);
        }
        let num = &(&self.a * x) + &self.b;
        let den = &(&self.c * x) + &self.d;
        Ok(ProjectivePoint::new(num, den, tol))
    }

    /// Applies the matrix to a projective point, passing points at infinity
    /// through their (numerator, denominator) pair.
    pub fn moebius_apply_point(&self, x: &ProjectivePoint<S>) -> Result<ProjectivePoint<S>> {
        match x.value() {
            Some(v) => self.moebius_apply(v),
            None => {
                let (n, d) = (x.numerator(), x.denominator());
                let num = &(&self.a * n) + &(&self.b * d);
                let den = &(&self.c * n) + &(&self.d * d);
                Ok(ProjectivePoint::new(num, den, DEFAULT_TOLERANCE))
            }
        }
    }
}

impl<S: Scalar> Mul for &VahlenMatrix<S> {
    type Output = VahlenMatrix<S>;

    fn mul(self, rhs: &VahlenMatrix<S>) -> VahlenMatrix<S> {
        self.mat_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// a ā = ±1.
pub fn pin_check<S: Scalar>(a: &VectorProduct<S>) -> bool {
    pin_check_within(a, DEFAULT_TOLERANCE)
}

pub fn pin_check_within<S: Scalar>(a: &VectorProduct<S>, tol: f64) -> bool {
    let n = a.expanded() * &a.expanded().conjugation();
    if !n.is_real_scalar_within(tol) {
        return false;
    }
    let s = n.scalar_part();
    s.approx_eq(&S::one(), tol) || s.approx_eq(&-S::one(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn vec(s: Signature, c: &[(i64, i64)]) -> Multivector<Rational> {
        let c: Vec<_> = c.iter().map(|&(n, d)| q(n, d)).collect();
        Multivector::vector(s, &c).unwrap()
    }

    fn e(s: Signature, i: usize) -> Multivector<Rational> {
        Multivector::basis_vector(s, i).unwrap()
    }

    #[test]
    fn generators_pass_vahlen_check() {
        let s = sig(1, 2);
        let y = vec(s, &[(1, 2), (-3, 1), (2, 7)]);
        assert!(VahlenMatrix::<Rational>::identity(s).vahlen_check());
        assert!(VahlenMatrix::shift(&y).unwrap().vahlen_check());
        assert!(VahlenMatrix::<Rational>::inversion(s).vahlen_check());
        assert!(VahlenMatrix::dilation(s, &q(9, 4)).unwrap().vahlen_check());
        let a = VectorProduct::new(s, vec![y.clone(), vec(s, &[(0, 1), (1, 1), (1, 1)])]).unwrap();
        assert!(VahlenMatrix::rotation(&a).unwrap().vahlen_check());
    }

    #[test]
    fn bivector_translation_is_not_vahlen() {
        let s = sig(0, 2);
        let m = VahlenMatrix::new(Multivector::one(s), &e(s, 1) * &e(s, 2), Multivector::zero(s), Multivector::one(s))
            .unwrap();
        assert!(!m.vahlen_check());
    }

    #[test]
    fn shifts_compose_and_invert() {
        let s = sig(0, 3);
        let y1 = vec(s, &[(1, 1), (2, 1), (3, 1)]);
        let y2 = vec(s, &[(-1, 2), (0, 1), (5, 3)]);
        let m1 = VahlenMatrix::shift(&y1).unwrap();
        let m2 = VahlenMatrix::shift(&y2).unwrap();
        assert_eq!(&m1 * &m2, VahlenMatrix::shift(&(&y1 + &y2)).unwrap());
        assert_eq!(m1.mat_inverse().unwrap(), VahlenMatrix::shift(&-&y1).unwrap());
        assert!(VahlenMatrix::shift(&Multivector::<Rational>::zero(s)).unwrap().is_identity());
    }

    #[test]
    fn shift_and_dilation_actions() {
        let s = sig(1, 1);
        let x = vec(s, &[(2, 3), (-1, 1)]);
        let y = vec(s, &[(1, 1), (1, 4)]);
        let p = VahlenMatrix::shift(&y).unwrap().moebius_apply(&x).unwrap();
        assert_eq!(p.value(), Some(&(&x + &y)));
        let s2 = sig(0, 2);
        let p = VahlenMatrix::dilation(s2, &q(4, 1)).unwrap().moebius_apply(&e(s2, 2)).unwrap();
        assert_eq!(p.value(), Some(&e(s2, 2).scale(&q(4, 1))));
    }

    #[test]
    fn dilation_rejects_bad_factors() {
        let s = sig(0, 2);
        assert_eq!(VahlenMatrix::dilation(s, &q(-4, 1)), Err(Error::NonPositiveDilation));
        assert_eq!(VahlenMatrix::dilation(s, &q(0, 1)), Err(Error::NonPositiveDilation));
        assert_eq!(VahlenMatrix::dilation(s, &q(2, 1)), Err(Error::ScalarNotSquare));
        let m = VahlenMatrix::<f64>::dilation(s, &2.0).unwrap();
        assert!((m.a().scalar_part() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn inversion_fixes_e1_in_euclidean_plane() {
        let s = sig(0, 2);
        let p = VahlenMatrix::inversion(s).moebius_apply(&e(s, 1)).unwrap();
        assert_eq!(p.value(), Some(&e(s, 1)));
    }

    #[test]
    fn inversion_sends_null_vector_to_infinity() {
        let s = sig(1, 1);
        let null = &e(s, 1) + &e(s, 2);
        let p = VahlenMatrix::inversion(s).moebius_apply(&null).unwrap();
        assert!(!p.is_finite());
        let origin = VahlenMatrix::<Rational>::inversion(s).moebius_apply(&Multivector::zero(s)).unwrap();
        assert!(!origin.is_finite());
    }

    #[test]
    fn rotation_by_vector_is_sandwich() {
        let s = sig(0, 2);
        let a = VectorProduct::from_vector(e(s, 1)).unwrap();
        let m = VahlenMatrix::rotation(&a).unwrap();
        assert_eq!(m.moebius_apply(&e(s, 1)).unwrap().value(), Some(&-e(s, 1)));
        let x = vec(s, &[(3, 5), (-7, 2)]);
        let expect = &(&e(s, 1) * &x) * &e(s, 1);
        assert_eq!(m.moebius_apply(&x).unwrap().value(), Some(&expect));
    }

    #[test]
    fn rotation_rejects_null_factors() {
        let s = sig(1, 1);
        let a = VectorProduct::from_vector(&e(s, 1) + &e(s, 2)).unwrap();
        assert_eq!(VahlenMatrix::rotation(&a), Err(Error::NullVector));
    }

    #[test]
    fn degenerate_matrix_has_no_inverse() {
        let s = sig(0, 2);
        let z = Multivector::<Rational>::zero(s);
        let m = VahlenMatrix::new(Multivector::one(s), z.clone(), z.clone(), z).unwrap();
        assert_eq!(m.mat_inverse(), Err(Error::DegenerateMatrix));
    }

    #[test]
    fn pin_examples() {
        let s = sig(0, 2);
        assert!(pin_check(&VectorProduct::from_vector(e(s, 1)).unwrap()));
        assert!(!pin_check(&VectorProduct::from_vector(e(s, 1).scale(&q(2, 1))).unwrap()));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = Multivector::<f64>::vector(s, &[h, h]).unwrap();
        assert!(pin_check(&VectorProduct::from_vector(v).unwrap()));
    }

    #[test]
    fn matrix_json_round_trip() {
        let s = sig(1, 1);
        let m = VahlenMatrix::shift(&vec(s, &[(1, 2), (3, 1)])).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with(r#"{"a":{"sig":[1,1]"#));
        let back: VahlenMatrix<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let mixed = r#"{"a":{"sig":[0,2],"terms":[]},"b":{"sig":[1,1],"terms":[]},
                        "c":{"sig":[0,2],"terms":[]},"d":{"sig":[0,2],"terms":[]}}"#;
        assert!(serde_json::from_str::<VahlenMatrix<Rational>>(mixed).is_err());
    }
}

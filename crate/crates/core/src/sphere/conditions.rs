use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::sampling::Sampler;
use crate::scalar::{Rational, Scalar, DEFAULT_TOLERANCE};
use crate::vahlen::VahlenMatrix;

/// (d̄, b̄; c̄, ā).
pub fn conjugate_adjugate<S: Scalar>(m: &VahlenMatrix<S>) -> VahlenMatrix<S> {
    VahlenMatrix::new(m.d().conjugation(), m.b().conjugation(), m.c().conjugation(), m.a().conjugation())
        .expect("entries share a signature")
}

/// (ā, c̄; b̄, d̄): conjugate transpose.
pub fn hermitian_adjoint<S: Scalar>(m: &VahlenMatrix<S>) -> VahlenMatrix<S> {
    VahlenMatrix::new(m.a().conjugation(), m.c().conjugation(), m.b().conjugation(), m.d().conjugation())
        .expect("entries share a signature")
}

/// The quadrics B(x,x) = ρ with ρ = ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadric {
    /// B(x,x) = 1, the positive unit sphere.
    PositiveUnit,
    /// B(x,x) = −1.
    NegativeUnit,
}

impl Quadric {
    pub fn rho(self) -> i64 {
        match self {
            Quadric::PositiveUnit => 1,
            Quadric::NegativeUnit => -1,
        }
    }
}

/// M maps B(x,x) = ρ onto itself iff M Q M^† = r Q for Q = diag(1, −ρ) and
/// a real r ≠ 0, M^† the conjugate transpose. Entrywise:
/// a c̄ = ρ b d̄, a ā − ρ b b̄ = r, c c̄ − ρ d d̄ = −ρ r.
/// For ρ = −1 these read b d̄ + a c̄ = 0 and d d̄ + c c̄ = b b̄ + a ā.
pub fn preserves_quadric<S: Scalar>(m: &VahlenMatrix<S>, quadric: Quadric) -> bool {
    preserves_quadric_within(m, quadric, DEFAULT_TOLERANCE)
}

pub fn preserves_quadric_within<S: Scalar>(m: &VahlenMatrix<S>, quadric: Quadric, tol: f64) -> bool {
    quadric_relation(m, quadric, tol).is_some_and(|r| !r.is_negligible(tol))
}

/// The r of `preserves_quadric` when the relations hold, possibly zero.
fn quadric_relation<S: Scalar>(m: &VahlenMatrix<S>, quadric: Quadric, tol: f64) -> Option<S> {
    let rho = S::from_i64(quadric.rho());
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let (ab, bb, cb, db) = (a.conjugation(), b.conjugation(), c.conjugation(), d.conjugation());
    let off = &(a * &cb) - &(b * &db).scale(&rho);
    if !off.is_negligible(tol) {
        return None;
    }
    let top = &(a * &ab) - &(b * &bb).scale(&rho);
    let bottom = &(c * &cb) - &(d * &db).scale(&rho);
    if !top.is_real_scalar_within(tol) {
        return None;
    }
    let r = top.scalar_part();
    let expect = Multivector::scalar(m.signature(), -(rho * r.clone()));
    bottom.approx_eq(&expect, tol).then_some(r)
}

/// Maps the positive unit sphere to itself (up to points at infinity).
pub fn preserves_unit_sphere<S: Scalar>(m: &VahlenMatrix<S>) -> bool {
    preserves_quadric(m, Quadric::PositiveUnit)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalOutcome {
    pub preserved: bool,
    /// Sphere points whose image was finite and checked.
    pub checked: usize,
    /// Sphere points sent to infinity.
    pub infinite: usize,
    /// First sphere point with an image off the sphere, and that image.
    pub witness: Option<(Multivector<Rational>, Multivector<Rational>)>,
}

/// Applies M to `samples` random rational points of the unit sphere.
pub fn sphere_preservation_witness(m: &VahlenMatrix<Rational>, samples: usize, seed: u64) -> Result<EmpiricalOutcome> {
    let sig = m.signature();
    let mut s = Sampler::new(seed);
    let one = Rational::from_i64(1);
    let mut out = EmpiricalOutcome { preserved: true, checked: 0, infinite: 0, witness: None };
    for found in 0..samples {
        let x = s.unit_sphere_point(sig).map_err(|_| Error::InsufficientSamples { wanted: samples, found })?;
        match m.moebius_apply(&x)?.into_value() {
            None => out.infinite += 1,
            Some(y) => {
                out.checked += 1;
                if y.bilinear_form(&y)? != one && out.witness.is_none() {
                    out.preserved = false;
                    out.witness = Some((x, y));
                }
            }
        }
    }
    Ok(out)
}

pub fn sphere_preservation_empirical(m: &VahlenMatrix<Rational>, samples: usize, seed: u64) -> Result<bool> {
    Ok(sphere_preservation_witness(m, samples, seed)?.preserved)
}

/// λM with bottom row σ(β', α') and α ᾱ − β β̄ = ±1, λ > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm<S> {
    pub matrix: VahlenMatrix<S>,
    pub lambda: S,
    /// Bottom row is σ(β', α').
    pub sigma: i8,
    /// Sign of α ᾱ − β β̄.
    pub norm_sign: i8,
}

impl<S: Scalar> NormalForm<S> {
    pub fn alpha(&self) -> &Multivector<S> {
        self.matrix.a()
    }

    pub fn beta(&self) -> &Multivector<S> {
        self.matrix.b()
    }

    /// Whether the matrix also has the form (α, β; β', −α') with
    /// α ᾱ + β β̄ = 1.
    pub fn has_alternative_form(&self, tol: f64) -> bool {
        let m = &self.matrix;
        let (a, b) = (m.a(), m.b());
        let rows = m.c().approx_eq(&b.grade_involution(), tol) && m.d().approx_eq(&-a.grade_involution(), tol);
        let n = &(a * &a.conjugation()) + &(b * &b.conjugation());
        rows && n.approx_eq(&Multivector::one(m.signature()), tol)
    }
}

pub fn normal_form<S: Scalar>(m: &VahlenMatrix<S>) -> Result<NormalForm<S>> {
    normal_form_within(m, DEFAULT_TOLERANCE)
}

pub fn normal_form_within<S: Scalar>(m: &VahlenMatrix<S>, tol: f64) -> Result<NormalForm<S>> {
    let r = quadric_relation(m, Quadric::PositiveUnit, tol).ok_or(Error::NotSpherePreserving)?;
    if r.is_negligible(tol) {
        return Err(Error::Unnormalizable);
    }
    let inv = S::one().checked_div(&r.abs()).ok_or(Error::Unnormalizable)?;
    let lambda = inv.sqrt().ok_or(Error::ScalarNotSquare)?;
    let matrix = m.scale(&lambda);
    let (a, b) = (matrix.a(), matrix.b());
    let (ap, bp) = (a.grade_involution(), b.grade_involution());
    let sigma = if matrix.c().approx_eq(&bp, tol) && matrix.d().approx_eq(&ap, tol) {
        1
    } else if matrix.c().approx_eq(&-&bp, tol) && matrix.d().approx_eq(&-&ap, tol) {
        -1
    } else {
        return Err(Error::NoStructuralPattern);
    };
    Ok(NormalForm { matrix, lambda, sigma, norm_sign: r.sign(tol) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;
    use crate::versor::VectorProduct;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn e(s: Signature, i: usize) -> Multivector<Rational> {
        Multivector::basis_vector(s, i).unwrap()
    }

    fn half(x: Multivector<Rational>) -> Multivector<Rational> {
        x.scale(&Rational::from_ratio(1, 2))
    }

    fn m(
        a: Multivector<Rational>,
        b: Multivector<Rational>,
        c: Multivector<Rational>,
        d: Multivector<Rational>,
    ) -> VahlenMatrix<Rational> {
        VahlenMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn adjugate_examples() {
        let s = sig(0, 2);
        let id = VahlenMatrix::<Rational>::identity(s);
        assert_eq!(conjugate_adjugate(&id), id);
        let y = &e(s, 1) + &e(s, 2);
        let shift = VahlenMatrix::shift(&y).unwrap();
        assert_eq!(conjugate_adjugate(&shift), VahlenMatrix::shift(&-&y).unwrap());
        let inv = VahlenMatrix::<Rational>::inversion(s);
        assert_eq!(conjugate_adjugate(&inv), inv);
    }

    #[test]
    fn unit_sphere_condition_examples() {
        let s = sig(0, 2);
        assert!(preserves_unit_sphere(&VahlenMatrix::<Rational>::identity(s)));
        assert!(!preserves_unit_sphere(&VahlenMatrix::shift(&e(s, 1)).unwrap()));
        let a = half(e(s, 1));
        let one = Multivector::one(s);
        // (−1, a; a, 1) preserves B = 1; (−1, a; −a, 1) preserves B = −1.
        let good = m(-&one, a.clone(), a.clone(), one.clone());
        let other = m(-&one, a.clone(), -&a, one.clone());
        assert!(preserves_unit_sphere(&good));
        assert!(!preserves_quadric(&good, Quadric::NegativeUnit));
        assert!(!preserves_unit_sphere(&other));
        assert!(preserves_quadric(&other, Quadric::NegativeUnit));
    }

    #[test]
    fn negative_quadric_matrix_moves_sphere_points_off_the_sphere() {
        let s = sig(0, 2);
        let a = half(e(s, 1));
        let one = Multivector::one(s);
        let other = m(-&one, a.clone(), -&a, one);
        let y = other.moebius_apply(&e(s, 1)).unwrap().into_value().unwrap();
        assert_eq!(y, e(s, 1).scale(&Rational::from_ratio(-1, 3)));
        let out = sphere_preservation_witness(&other, 20, 1).unwrap();
        assert!(!out.preserved);
    }

    #[test]
    fn empirical_examples() {
        let s = sig(0, 2);
        let rot = VahlenMatrix::rotation(&VectorProduct::from_vector(e(s, 1)).unwrap()).unwrap();
        assert!(sphere_preservation_empirical(&rot, 30, 2).unwrap());
        let out = sphere_preservation_witness(&VahlenMatrix::shift(&e(s, 1)).unwrap(), 30, 2).unwrap();
        assert!(!out.preserved);
        let four = Rational::from_i64(4);
        let dil = VahlenMatrix::dilation(s, &four).unwrap();
        let out = sphere_preservation_witness(&dil, 5, 2).unwrap();
        let (_, y) = out.witness.unwrap();
        assert_eq!(y.bilinear_form(&y).unwrap(), Rational::from_i64(16));
        assert!(matches!(
            sphere_preservation_empirical(&VahlenMatrix::identity(sig(2, 0)), 3, 1),
            Err(Error::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn normal_form_examples() {
        let s = sig(0, 2);
        let id = VahlenMatrix::<Rational>::identity(s);
        let nf = normal_form(&id).unwrap();
        assert_eq!(nf.matrix, id);
        assert_eq!((nf.sigma, nf.norm_sign), (1, 1));
        let three = id.scale(&Rational::from_i64(3));
        assert_eq!(normal_form(&three).unwrap().matrix, id);

        let a = half(e(s, 1));
        let one = Multivector::one(s);
        let phi = m(-&one, a.clone(), a.clone(), one.clone());
        assert_eq!(normal_form(&phi), Err(Error::ScalarNotSquare));
        let nf = normal_form(&phi.map(|x| x.to_f64())).unwrap();
        assert!((nf.lambda - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!((nf.sigma, nf.norm_sign), (-1, 1));
        assert!(!nf.has_alternative_form(1e-9));

        assert_eq!(normal_form(&VahlenMatrix::shift(&e(s, 1)).unwrap()), Err(Error::NotSpherePreserving));
    }
}

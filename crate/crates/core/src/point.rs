use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// A point of the compactified space: the pair (ax+b, cx+d) produced by a
/// Möbius action. It is finite when the denominator is invertible, and then
/// `value` = numerator · denominator⁻¹ is a vector. Otherwise it is one of
/// the light-cone points at infinity, kept as the raw pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint<S> {
    numerator: Multivector<S>,
    denominator: Multivector<S>,
    value: Option<Multivector<S>>,
}

impl<S: Scalar> ProjectivePoint<S> {
    pub fn new(numerator: Multivector<S>, denominator: Multivector<S>, tol: f64) -> Self {
        let value = denominator.versor_inverse_within(tol).ok().map(|inv| {
            let v = &numerator * &inv;
            debug_assert!(v.is_vector_within(tol.max(1e-7)), "finite Möbius image is not a vector: {v}");
            v.grade_project(1)
        });
        ProjectivePoint { numerator, denominator, value }
    }

    pub fn finite(x: Multivector<S>) -> Self {
        let sig = x.signature();
        ProjectivePoint { numerator: x.clone(), denominator: Multivector::one(sig), value: Some(x) }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_some()
    }

    pub fn value(&self) -> Option<&Multivector<S>> {
        self.value.as_ref()
    }

    pub fn into_value(self) -> Option<Multivector<S>> {
        self.value
    }

    pub fn numerator(&self) -> &Multivector<S> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Multivector<S> {
        &self.denominator
    }

    /// Equality in the compactification. Finite points compare by value.
    /// Two points at infinity are equal iff (n₁, d₁) = (n₂ λ, d₂ λ) for an
    /// invertible λ; `None` when neither numerator is invertible and the
    /// question cannot be settled from the pairs.
    pub fn projectively_equal(&self, other: &Self, tol: f64) -> Option<bool> {
        match (&self.value, &other.value) {
            (Some(x), Some(y)) => Some(x.approx_eq(y, tol)),
            (Some(_), None) | (None, Some(_)) => Some(false),
            (None, None) => {
                let try_right_multiple =
                    |(n1, d1): (&Multivector<S>, &Multivector<S>), (n2, d2): (&Multivector<S>, &Multivector<S>)| {
                        let inv = n2.versor_inverse_within(tol).ok()?;
                        let lambda = &inv * n1;
                        if lambda.versor_inverse_within(tol).is_err() {
                            return Some(false);
                        }
                        Some((d2 * &lambda).approx_eq(d1, tol))
                    };
                let a = (&self.numerator, &self.denominator);
                let b = (&other.numerator, &other.denominator);
                try_right_multiple(a, b).or_else(|| try_right_multiple(b, a))
            }
        }
    }
}

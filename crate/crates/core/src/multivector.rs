//! Elements of the real Clifford algebra Cl(p,q).
//!
//! A multivector is a sparse map from basis blades to coefficients. A blade
//! A_ν = e_{j1} e_{j2} ⋯ e_{jr} with j1 < ⋯ < jr is stored as the bitmask with
//! bit j−1 set for every factor e_j, so its grade is the popcount. Zero
//! coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, DEFAULT_TOLERANCE};
use crate::signature::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_bits(bits: u16) -> Self {
        Blade(bits)
    }

    /// Blade e_i for a one-based generator index.
    pub fn generator(index: usize) -> Self {
        debug_assert!((1..=16).contains(&index));
        Blade(1 << (index - 1))
    }

    /// Blade from strictly increasing one-based indices.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u16;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::BladeOutOfRange { index: i, n });
            }
            if i <= last {
                return Err(Error::Encoding(format!("blade indices must be strictly increasing, got {indices:?}")));
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(Blade(bits))
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// One-based generator indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }

    /// Sign and result blade of the product of two basis blades.
    fn product(self, other: Blade, sig: Signature) -> (bool, Blade) {
        // Count transpositions needed to merge the factor lists.
        let mut a = self.0 >> 1;
        let mut swaps = 0u32;
        while a != 0 {
            swaps += (a & other.0).count_ones();
            a >>= 1;
        }
        let mut negative = swaps % 2 == 1;
        let mut common = self.0 & other.0;
        while common != 0 {
            let i = common.trailing_zeros() as usize;
            if sig.generator_square(i) < 0 {
                negative = !negative;
            }
            common &= common - 1;
        }
        (negative, Blade(self.0 ^ other.0))
    }

    fn display_order(&self) -> (usize, Vec<usize>) {
        (self.grade(), self.indices())
    }
}

/// The three grade-sign involutions of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Involution {
    /// a ↦ a*, sign (−1)^{r(r−1)/2}; an anti-automorphism.
    Reversion,
    /// a ↦ ā, sign (−1)^{r(r+1)/2}; an anti-automorphism.
    Conjugation,
    /// a ↦ a', sign (−1)^r; an automorphism.
    Grade,
}

impl Involution {
    pub fn negates(self, grade: usize) -> bool {
        match self {
            Involution::Reversion => grade % 4 >= 2,
            Involution::Conjugation => matches!(grade % 4, 1 | 2),
            Involution::Grade => grade % 2 == 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    sig: Signature,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, value: S) -> Self {
        Self::from_terms(sig, [(Blade::SCALAR, value)])
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, S::one())
    }

    /// Generator e_i, one-based.
    pub fn basis_vector(sig: Signature, index: usize) -> Result<Self> {
        if index == 0 || index > sig.dim() {
            return Err(Error::BladeOutOfRange { index, n: sig.dim() });
        }
        Ok(Self::from_terms(sig, [(Blade::generator(index), S::one())]))
    }

    /// Vector Σ x_i e_i from its n components.
    pub fn vector(sig: Signature, components: &[S]) -> Result<Self> {
        if components.len() != sig.dim() {
            return Err(Error::InvalidArgument(format!(
                "expected {} vector components, got {}",
                sig.dim(),
                components.len()
            )));
        }
        Ok(Self::from_terms(sig, components.iter().enumerate().map(|(i, c)| (Blade::generator(i + 1), c.clone()))))
    }

    /// Builds a multivector, summing repeated blades and dropping zeros.
    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, S)>) -> Self {
        let mut map: BTreeMap<Blade, S> = BTreeMap::new();
        for (blade, c) in terms {
            debug_assert!((blade.bits() as usize) < sig.blade_count());
            accumulate(&mut map, blade, c);
        }
        Self::canonical(sig, map)
    }

    fn canonical(sig: Signature, mut terms: BTreeMap<Blade, S>) -> Self {
        terms.retain(|_, c| !c.is_exact_zero());
        Multivector { sig, terms }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: Blade) -> S {
        self.terms.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    pub fn scalar_part(&self) -> S {
        self.coefficient(Blade::SCALAR)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn grade_project(&self, r: usize) -> Self {
        Multivector {
            sig: self.sig,
            terms: self.terms.iter().filter(|(b, _)| b.grade() == r).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    /// True when every blade of grade ≠ r has a negligible coefficient.
    pub fn is_homogeneous_within(&self, r: usize, tol: f64) -> bool {
        self.terms.iter().all(|(b, c)| b.grade() == r || c.is_negligible(tol))
    }

    /// Grade-1 or zero.
    pub fn is_vector(&self) -> bool {
        self.is_vector_within(DEFAULT_TOLERANCE)
    }

    pub fn is_vector_within(&self, tol: f64) -> bool {
        self.is_homogeneous_within(1, tol)
    }

    pub fn is_real_scalar(&self) -> bool {
        self.is_real_scalar_within(DEFAULT_TOLERANCE)
    }

    pub fn is_real_scalar_within(&self, tol: f64) -> bool {
        self.is_homogeneous_within(0, tol)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.is_negligible(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sig == other.sig && (self - other).is_negligible(tol)
    }

    /// Components x_1..x_n of a vector.
    pub fn vector_components(&self) -> Result<Vec<S>> {
        if !self.is_vector() {
            return Err(Error::NotAVector);
        }
        Ok((1..=self.sig.dim()).map(|i| self.coefficient(Blade::generator(i))).collect())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::canonical(self.sig, self.terms.iter().map(|(b, c)| (*b, c.clone() * s.clone())).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Multivector<T> {
        Multivector::from_terms(self.sig, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(other.sig)?;
        let mut terms = self.terms.clone();
        for (b, c) in &other.terms {
            accumulate(&mut terms, *b, c.clone());
        }
        Ok(Self::canonical(self.sig, terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// The Clifford product, bilinear and associative, with e_i² = −ε_i and
    /// anticommuting distinct generators.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.sig.check_same(other.sig)?;
        let mut terms: BTreeMap<Blade, S> = BTreeMap::new();
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                let (negative, blade) = ba.product(*bb, self.sig);
                let c = ca.clone() * cb.clone();
                accumulate(&mut terms, blade, if negative { -c } else { c });
            }
        }
        Ok(Self::canonical(self.sig, terms))
    }

    pub fn involution(&self, kind: Involution) -> Self {
        Multivector {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| {
                    let c = if kind.negates(b.grade()) { -c.clone() } else { c.clone() };
                    (*b, c)
                })
                .collect(),
        }
    }

    /// a*
    pub fn reversion(&self) -> Self {
        self.involution(Involution::Reversion)
    }

    /// ā
    pub fn conjugation(&self) -> Self {
        self.involution(Involution::Conjugation)
    }

    /// a'
    pub fn grade_involution(&self) -> Self {
        self.involution(Involution::Grade)
    }

    /// B(x, y) = Σ ε_i x_i y_i for vectors x, y.
    pub fn bilinear_form(&self, other: &Self) -> Result<S> {
        self.sig.check_same(other.sig)?;
        if !self.is_vector() || !other.is_vector() {
            return Err(Error::NotAVector);
        }
        let mut acc = S::zero();
        for i in 0..self.sig.dim() {
            let blade = Blade::generator(i + 1);
            let (Some(x), Some(y)) = (self.terms.get(&blade), other.terms.get(&blade)) else {
                continue;
            };
            let term = x.clone() * y.clone();
            acc = if self.sig.epsilon(i) < 0 { acc - term } else { acc + term };
        }
        Ok(acc)
    }

    /// Kelvin inverse x̄ / B(x,x), so that x y = y x = 1.
    pub fn kelvin_inverse(&self) -> Result<Self> {
        self.kelvin_inverse_within(DEFAULT_TOLERANCE)
    }

    pub fn kelvin_inverse_within(&self, tol: f64) -> Result<Self> {
        let norm = self.bilinear_form(self)?;
        if norm.is_negligible(tol) {
            return Err(Error::NullVector);
        }
        let inv = S::one().checked_div(&norm).ok_or(Error::NullVector)?;
        Ok(self.conjugation().scale(&inv))
    }

    /// z z̄ when it is a real scalar. For a product of vectors v_1⋯v_k this is
    /// Π B(v_i, v_i).
    pub fn clifford_norm_within(&self, tol: f64) -> Option<S> {
        let n = self.geometric_product(&self.conjugation()).ok()?;
        n.is_real_scalar_within(tol).then(|| n.scalar_part())
    }

    /// z̄ / (z z̄) for elements whose norm is a nonzero real scalar; this
    /// inverts every invertible element of T(p,q).
    pub fn versor_inverse_within(&self, tol: f64) -> Result<Self> {
        let norm = self.clifford_norm_within(tol).ok_or(Error::NotInvertible)?;
        if norm.is_negligible(tol) {
            return Err(Error::NotInvertible);
        }
        let inv = S::one().checked_div(&norm).ok_or(Error::NotInvertible)?;
        Ok(self.conjugation().scale(&inv))
    }

    pub fn versor_inverse(&self) -> Result<Self> {
        self.versor_inverse_within(DEFAULT_TOLERANCE)
    }
}

fn accumulate<S: Scalar>(map: &mut BTreeMap<Blade, S>, blade: Blade, c: S) {
    match map.get_mut(&blade) {
        Some(v) => *v = v.clone() + c,
        None => {
            map.insert(blade, c);
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<S: Scalar> $tr<&Multivector<S>> for &Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, rhs: &Multivector<S>) -> Multivector<S> {
                self.$call(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<S: Scalar> $tr<Multivector<S>> for Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, rhs: Multivector<S>) -> Multivector<S> {
                (&self).$method(&rhs)
            }
        }
        impl<S: Scalar> $tr<&Multivector<S>> for Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, rhs: &Multivector<S>) -> Multivector<S> {
                (&self).$method(rhs)
            }
        }
        impl<S: Scalar> $tr<Multivector<S>> for &Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, rhs: Multivector<S>) -> Multivector<S> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, geometric_product);

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        Multivector { sig: self.sig, terms: self.terms.iter().map(|(b, c)| (*b, -c.clone())).collect() }
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        -&self
    }
}

/// Prints terms by grade, blades as generator products: `1 - 1/3*e1 + e1*e2`.
/// The output is accepted by the CLI expression parser.
impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(b, _)| b.display_order());
        for (k, (blade, c)) in terms.into_iter().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let name = blade.indices().iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("*");
            if blade.grade() == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude == "1" {
                write!(f, "{name}")?;
            } else {
                write!(f, "{magnitude}*{name}")?;
            }
        }
        Ok(())
    }
}

//! Seeded exact-rational sampling for the verification harnesses.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multivector::{Blade, Multivector};
use crate::scalar::{Rational, Scalar};
use crate::signature::Signature;
use crate::vahlen::VahlenMatrix;
use crate::versor::VectorProduct;

/// Components of the complement of the positive unit sphere, by the sign
/// and size of B(x,x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// B(x,x) < 0
    Negative,
    /// B(x,x) = 0
    Null,
    /// 0 < B(x,x) < 1
    Inner,
    /// B(x,x) > 1
    Outer,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::Negative, Region::Null, Region::Inner, Region::Outer];

    /// `None` on the unit sphere itself.
    pub fn of(x: &Multivector<Rational>) -> Option<Region> {
        let b = x.bilinear_form(x).ok()?;
        let one = Rational::from_i64(1);
        if b < Rational::from_i64(0) {
            Some(Region::Negative)
        } else if b.is_exact_zero() {
            Some(Region::Null)
        } else if b < one {
            Some(Region::Inner)
        } else if b > one {
            Some(Region::Outer)
        } else {
            None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::Negative => "negative",
            Region::Null => "null",
            Region::Inner => "inner",
            Region::Outer => "outer",
        }
    }

    /// Regions with a nonzero representative in the given signature.
    pub fn available(sig: Signature) -> Vec<Region> {
        let mut v = Vec::new();
        if sig.p() > 0 {
            v.push(Region::Negative);
        }
        v.push(Region::Null);
        if sig.q() > 0 {
            v.push(Region::Inner);
            v.push(Region::Outer);
        }
        v
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Shift,
    Rotation,
    Dilation,
    Inversion,
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream for the same seed; used to decouple claims.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }

    pub fn rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        let n = self.rng.random_range(-max_num..=max_num);
        let d = self.rng.random_range(1..=max_den);
        Rational::from_ratio(n, d)
    }

    pub fn positive_rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        let n = self.rng.random_range(1..=max_num);
        let d = self.rng.random_range(1..=max_den);
        Rational::from_ratio(n, d)
    }

    pub fn vector(&mut self, sig: Signature) -> Multivector<Rational> {
        let c: Vec<Rational> = (0..sig.dim()).map(|_| self.rational(9, 5)).collect();
        Multivector::vector(sig, &c).expect("component count matches dimension")
    }

    pub fn nonnull_vector(&mut self, sig: Signature) -> Result<Multivector<Rational>> {
        self.vector_where(sig, |b| !b.is_exact_zero())
    }

    /// Random vector whose square B(x,x) satisfies `accept`.
    pub fn vector_where(
        &mut self,
        sig: Signature,
        accept: impl Fn(&Rational) -> bool,
    ) -> Result<Multivector<Rational>> {
        if sig.dim() == 0 {
            return Err(Error::InvalidArgument("signature has no vectors".into()));
        }
        const ATTEMPTS: usize = 10_000;
        for _ in 0..ATTEMPTS {
            let v = self.vector(sig);
            let b = v.bilinear_form(&v)?;
            if accept(&b) {
                return Ok(v);
            }
        }
        Err(Error::InsufficientSamples { wanted: 1, found: 0 })
    }

    /// Dense random element with about half of the blades populated.
    pub fn multivector(&mut self, sig: Signature) -> Multivector<Rational> {
        let mut terms = Vec::new();
        for bits in 0..sig.blade_count() {
            if self.rng.random_bool(0.5) {
                terms.push((Blade::from_bits(bits as u16), self.rational(5, 3)));
            }
        }
        Multivector::from_terms(sig, terms)
    }

    /// Rational point on the quadric B(x,x) = B(base,base) obtained by
    /// intersecting a random line through `base` with the quadric.
    pub fn quadric_point(&mut self, base: &Multivector<Rational>) -> Result<Multivector<Rational>> {
        let sig = base.signature();
        let v = self.nonnull_vector(sig)?;
        let qv = v.bilinear_form(&v)?;
        let t = -(Rational::from_i64(2) * base.bilinear_form(&v)?) / qv;
        Ok(base + &v.scale(&t))
    }

    /// Rational point with B(x,x) = +1 (`positive`) or −1.
    pub fn unit_quadric_point(&mut self, sig: Signature, positive: bool) -> Result<Multivector<Rational>> {
        let range = if positive { sig.p() + 1..=sig.dim() } else { 1..=sig.p() };
        if range.is_empty() {
            return Err(Error::InsufficientSamples { wanted: 1, found: 0 });
        }
        let k = self.rng.random_range(range);
        let mut pole = Multivector::basis_vector(sig, k)?;
        if self.rng.random_bool(0.5) {
            pole = -pole;
        }
        self.quadric_point(&pole)
    }

    pub fn unit_sphere_point(&mut self, sig: Signature) -> Result<Multivector<Rational>> {
        self.unit_quadric_point(sig, true)
    }

    /// Light-cone vector, nonzero when both p and q are positive.
    pub fn null_vector(&mut self, sig: Signature) -> Multivector<Rational> {
        if sig.p() == 0 || sig.q() == 0 {
            return Multivector::zero(sig);
        }
        let neg = Signature::new(0, sig.p()).expect("subsignature");
        let pos = Signature::new(0, sig.q()).expect("subsignature");
        let u = self.unit_quadric_point(neg, true).expect("q > 0");
        let w = self.unit_quadric_point(pos, true).expect("q > 0");
        let r = self.positive_rational(5, 3);
        let mut c = u.vector_components().expect("vector");
        c.extend(w.vector_components().expect("vector"));
        let x = Multivector::vector(sig, &c).expect("dimension");
        x.scale(&r)
    }

    /// Product of 1..=max_factors vectors with B = ±1, so a ā = ±1.
    pub fn pin_element(&mut self, sig: Signature, max_factors: usize) -> Result<VectorProduct<Rational>> {
        let count = self.rng.random_range(1..=max_factors.max(1));
        let mut factors = Vec::with_capacity(count);
        for _ in 0..count {
            let positive = match (sig.p() > 0, sig.q() > 0) {
                (true, true) => self.rng.random_bool(0.5),
                (false, true) => true,
                (true, false) => false,
                (false, false) => return Err(Error::InvalidArgument("signature has no vectors".into())),
            };
            factors.push(self.unit_quadric_point(sig, positive)?);
        }
        VectorProduct::new(sig, factors)
    }

    /// Point of R^{p,q} off the unit sphere. Alternates between plain random
    /// vectors and constructions aimed at each available region so that every
    /// component is exercised.
    pub fn complement_point(&mut self, sig: Signature) -> Result<(Multivector<Rational>, Region)> {
        if self.rng.random_bool(0.5) {
            let regions = Region::available(sig);
            let target = regions[self.index(regions.len())];
            let x = match target {
                Region::Null => self.null_vector(sig),
                Region::Negative => {
                    let r = self.positive_rational(9, 4);
                    self.unit_quadric_point(sig, false)?.scale(&r)
                }
                Region::Inner => {
                    let d = self.rng.random_range(2..=7);
                    let n = self.rng.random_range(1..d);
                    self.unit_sphere_point(sig)?.scale(&Rational::from_ratio(n, d))
                }
                Region::Outer => {
                    let n = self.rng.random_range(2..=9);
                    let d = self.rng.random_range(1..n);
                    self.unit_sphere_point(sig)?.scale(&Rational::from_ratio(n, d))
                }
            };
            let region = Region::of(&x).expect("constructed off the sphere");
            return Ok((x, region));
        }
        loop {
            let x = self.vector(sig);
            if let Some(region) = Region::of(&x) {
                return Ok((x, region));
            }
        }
    }

    pub fn generator(&mut self, sig: Signature) -> Result<(GeneratorKind, VahlenMatrix<Rational>)> {
        Ok(match self.rng.random_range(0..4) {
            0 => (GeneratorKind::Shift, VahlenMatrix::shift(&self.vector(sig))?),
            1 => {
                let count = self.rng.random_range(1..=2);
                let factors = (0..count).map(|_| self.nonnull_vector(sig)).collect::<Result<Vec<_>>>()?;
                let a = VectorProduct::new(sig, factors)?;
                (GeneratorKind::Rotation, VahlenMatrix::rotation(&a)?)
            }
            2 => {
                let r = self.positive_rational(4, 3);
                (GeneratorKind::Dilation, VahlenMatrix::dilation(sig, &(&r * &r))?)
            }
            _ => (GeneratorKind::Inversion, VahlenMatrix::inversion(sig)),
        })
    }

    /// Word of 1..=max_len generators, in application order left to right
    /// as matrices (the rightmost acts first).
    pub fn word(&mut self, sig: Signature, max_len: usize) -> Result<Vec<(GeneratorKind, VahlenMatrix<Rational>)>> {
        let len = self.rng.random_range(1..=max_len.max(1));
        (0..len).map(|_| self.generator(sig)).collect()
    }
}

/// Product of a generator word.
pub fn word_product(word: &[(GeneratorKind, VahlenMatrix<Rational>)], sig: Signature) -> VahlenMatrix<Rational> {
    word.iter().fold(VahlenMatrix::identity(sig), |acc, (_, g)| &acc * g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn quadric_points_lie_on_their_quadric() {
        let mut s = Sampler::new(3);
        for (p, q) in [(0, 2), (1, 1), (1, 2), (2, 2), (2, 1)] {
            let g = sig(p, q);
            for _ in 0..50 {
                let x = s.unit_sphere_point(g).unwrap();
                assert_eq!(x.bilinear_form(&x).unwrap(), Rational::from_i64(1));
                if p > 0 {
                    let y = s.unit_quadric_point(g, false).unwrap();
                    assert_eq!(y.bilinear_form(&y).unwrap(), Rational::from_i64(-1));
                }
            }
        }
    }

    #[test]
    fn empty_sphere_is_reported() {
        let mut s = Sampler::new(1);
        assert!(matches!(s.unit_sphere_point(sig(2, 0)), Err(Error::InsufficientSamples { .. })));
    }

    #[test]
    fn null_vectors_are_null_and_nonzero_in_mixed_signature() {
        let mut s = Sampler::new(9);
        for _ in 0..30 {
            let x = s.null_vector(sig(2, 2));
            assert!(!x.is_zero());
            assert!(x.bilinear_form(&x).unwrap().is_exact_zero());
        }
    }

    #[test]
    fn complement_points_cover_every_region() {
        let mut s = Sampler::new(5);
        let g = sig(1, 2);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            let (x, r) = s.complement_point(g).unwrap();
            assert_eq!(Region::of(&x), Some(r));
            seen.insert(r);
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn pin_elements_pass_pin_check() {
        let mut s = Sampler::new(11);
        for _ in 0..20 {
            let b = s.pin_element(sig(1, 2), 3).unwrap();
            assert!(crate::vahlen::pin_check(&b));
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let draw = |seed| {
            let mut s = Sampler::with_stream(seed, 4);
            (0..5).map(|_| s.vector(sig(1, 2))).collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }
}

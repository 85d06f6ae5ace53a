use std::fmt;

use serde::Serialize;

use super::conditions::{preserves_quadric, Quadric};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::point::ProjectivePoint;
use crate::sampling::Sampler;
use crate::scalar::{Rational, Scalar, DEFAULT_TOLERANCE};
use crate::signature::Signature;
use crate::vahlen::VahlenMatrix;
use crate::versor::VectorProduct;

/// Signs (s1, s2, s3, s4) of the matrix (s1·1, s2·a; s3·a', s4·1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PhiPattern(pub [i8; 4]);

impl PhiPattern {
    /// (−1, a; a, 1): x ↦ (a − x)(1 + a x)⁻¹.
    pub const CANONICAL: PhiPattern = PhiPattern([-1, 1, -1, 1]);
    /// (1, a; a', 1) taken at face value.
    pub const LITERAL: PhiPattern = PhiPattern([1, 1, 1, 1]);

    /// All sixteen patterns in lexicographic order with −1 before +1.
    pub fn all() -> Vec<PhiPattern> {
        (0..16u8)
            .map(|k| {
                let sign = |bit: u8| if k & (8 >> bit) == 0 { -1 } else { 1 };
                PhiPattern([sign(0), sign(1), sign(2), sign(3)])
            })
            .collect()
    }

    pub fn signs(self) -> [i8; 4] {
        self.0
    }

    pub fn matrix<S: Scalar>(self, a: &Multivector<S>) -> VahlenMatrix<S> {
        let sig = a.signature();
        let s = |i: usize| S::from_i64(self.0[i] as i64);
        VahlenMatrix::new(
            Multivector::scalar(sig, s(0)),
            a.scale(&s(1)),
            a.grade_involution().scale(&s(2)),
            Multivector::scalar(sig, s(3)),
        )
        .expect("entries share a signature")
    }
}

impl fmt::Display for PhiPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.0.iter().map(|&x| if x < 0 { "-1" } else { "+1" }).collect();
        write!(f, "({})", s.join(","))
    }
}

/// φ_(a,b) = pattern(a) · (b, 0; 0, b').
pub fn make_phi<S: Scalar>(a: &Multivector<S>, b: &VectorProduct<S>, pattern: PhiPattern) -> Result<VahlenMatrix<S>> {
    let sig = a.signature();
    sig.check_same(b.signature())?;
    if !a.is_vector() {
        return Err(Error::NotAVector);
    }
    b.inverse()?;
    let rot = VahlenMatrix::new(
        b.expanded().clone(),
        Multivector::zero(sig),
        Multivector::zero(sig),
        b.expanded().grade_involution(),
    )?;
    let m = pattern.matrix(a).mat_mul(&rot)?;
    m.real_pseudodeterminant()?;
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternOutcome {
    pub pattern: PhiPattern,
    pub vahlen: bool,
    pub unit_sphere: bool,
    /// Preserves B(x,x) = −1 instead (recorded, not required).
    pub negative_quadric: bool,
    pub phi_zero_is_a: bool,
    pub phi_a_is_zero: bool,
    pub involution: bool,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionReport {
    pub p: usize,
    pub q: usize,
    pub trials: usize,
    pub seed: u64,
    pub patterns: Vec<PatternOutcome>,
    pub passing: Vec<PhiPattern>,
    pub canonical: Option<PhiPattern>,
}

impl ConventionReport {
    pub fn canonical(&self) -> Result<PhiPattern> {
        self.canonical.ok_or(Error::NoneFound)
    }

    pub fn passes(&self, pattern: PhiPattern) -> bool {
        self.passing.contains(&pattern)
    }

    pub fn outcome(&self, pattern: PhiPattern) -> &PatternOutcome {
        self.patterns.iter().find(|o| o.pattern == pattern).expect("every pattern is tested")
    }

    /// 0 when a pattern passes, 2 when none does.
    pub fn exit_code(&self) -> i32 {
        if self.canonical.is_some() {
            0
        } else {
            2
        }
    }

    pub fn to_text(&self) -> String {
        let flag = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::from("pattern        vahlen sphere neg_quadric phi(0)=a phi(a)=0 involution passes\n");
        for o in &self.patterns {
            out.push_str(&format!(
                "{:<14} {:<6} {:<6} {:<11} {:<8} {:<8} {:<10} {}\n",
                o.pattern.to_string(),
                flag(o.vahlen),
                flag(o.unit_sphere),
                flag(o.negative_quadric),
                flag(o.phi_zero_is_a),
                flag(o.phi_a_is_zero),
                flag(o.involution),
                flag(o.passes)
            ));
        }
        match self.canonical {
            Some(c) => out.push_str(&format!("canonical {c}\n")),
            None => out.push_str("canonical none\n"),
        }
        out
    }
}

/// Tests every sign pattern on `trials` random vectors a with
/// B(a,a) ∉ {0, 1, −1}.
pub fn resolve_phi_convention(p: usize, q: usize, trials: usize, seed: u64) -> Result<ConventionReport> {
    let sig = Signature::new(p, q)?;
    if sig.dim() == 0 || trials == 0 {
        return Err(Error::InvalidArgument("need p + q >= 1 and trials >= 1".into()));
    }
    let mut s = Sampler::new(seed);
    let zero = Multivector::<Rational>::zero(sig);
    let excluded = [0, 1, -1].map(Rational::from_i64);
    let mut samples = Vec::with_capacity(trials);
    for _ in 0..trials {
        let a = s.vector_where(sig, |b| !excluded.contains(b))?;
        let points: Vec<_> = (0..3).map(|_| s.vector(sig)).collect();
        samples.push((a, points));
    }

    let patterns: Vec<PatternOutcome> = PhiPattern::all()
        .into_iter()
        .map(|pattern| {
            let mut o = PatternOutcome {
                pattern,
                vahlen: true,
                unit_sphere: true,
                negative_quadric: true,
                phi_zero_is_a: true,
                phi_a_is_zero: true,
                involution: true,
                passes: false,
            };
            for (a, points) in &samples {
                let m = pattern.matrix(a);
                o.vahlen &= m.vahlen_check();
                o.unit_sphere &= preserves_quadric(&m, Quadric::PositiveUnit);
                o.negative_quadric &= preserves_quadric(&m, Quadric::NegativeUnit);
                o.phi_zero_is_a &= image(&m, &zero).as_ref() == Some(a);
                o.phi_a_is_zero &= image(&m, a).as_ref() == Some(&zero);
                o.involution &= points.iter().all(|x| involutive_at(&m, x));
            }
            o.passes = o.vahlen && o.unit_sphere && o.phi_zero_is_a && o.phi_a_is_zero && o.involution;
            o
        })
        .collect();
    let passing: Vec<PhiPattern> = patterns.iter().filter(|o| o.passes).map(|o| o.pattern).collect();
    Ok(ConventionReport { p, q, trials, seed, canonical: passing.first().copied(), passing, patterns })
}

fn image(m: &VahlenMatrix<Rational>, x: &Multivector<Rational>) -> Option<Multivector<Rational>> {
    m.moebius_apply(x).ok()?.into_value()
}

/// φ(φ(x)) = x in the compactification; undecidable comparisons count as
/// agreement.
pub(super) fn involutive_at(m: &VahlenMatrix<Rational>, x: &Multivector<Rational>) -> bool {
    let Ok(y) = m.moebius_apply(x) else { return false };
    let Ok(z) = m.moebius_apply_point(&y) else { return false };
    z.projectively_equal(&ProjectivePoint::finite(x.clone()), DEFAULT_TOLERANCE) != Some(false)
}

//! Seeded exact checks of the algebra and Vahlen-group laws.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::report::{ClaimBuilder, Status, VerificationReport};
use crate::sampling::{word_product, Sampler};
use crate::scalar::{Rational, Scalar};
use crate::signature::Signature;
use crate::vahlen::VahlenMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawsConfig {
    /// Random multivector triples for the ring and involution laws.
    pub triples: usize,
    /// Random vectors for the Kelvin inverse and the bilinear form.
    pub vectors: usize,
    /// Random generator words for the Vahlen group laws.
    pub words: usize,
    pub max_word_len: usize,
    pub points_per_word: usize,
}

impl LawsConfig {
    pub fn uniform(samples: usize) -> Self {
        LawsConfig { triples: samples, vectors: samples, words: samples, max_word_len: 6, points_per_word: 10 }
    }
}

fn mv(x: &Multivector<Rational>) -> Value {
    serde_json::to_value(x).expect("multivector serializes")
}

fn mat(m: &VahlenMatrix<Rational>) -> Value {
    serde_json::to_value(m).expect("matrix serializes")
}

fn has_no_zero_terms(x: &Multivector<Rational>) -> bool {
    x.terms().all(|(_, c)| !c.is_exact_zero())
}

pub fn verify_laws(p: usize, q: usize, config: LawsConfig, seed: u64) -> Result<VerificationReport> {
    let sig = Signature::new(p, q)?;
    if sig.dim() == 0 {
        return Err(Error::InvalidArgument("p + q must be at least 1".into()));
    }
    let mut claims = Vec::new();
    claims.extend(ring_laws(sig, config.triples, seed));
    claims.push(anticommutation(sig, seed));
    claims.extend(vector_laws(sig, config.vectors, seed)?);
    claims.extend(group_laws(sig, config, seed)?);
    Ok(VerificationReport { p, q, seed, samples: config.triples, claims })
}

fn ring_laws(sig: Signature, n: usize, seed: u64) -> Vec<crate::report::Claim> {
    let mut s = Sampler::with_stream(seed, 1);
    let mut assoc = ClaimBuilder::new("laws.associativity", seed);
    let mut distrib = ClaimBuilder::new("laws.distributivity", seed);
    let mut rev = ClaimBuilder::new("laws.reversion_antiautomorphism", seed);
    let mut conj = ClaimBuilder::new("laws.conjugation_antiautomorphism", seed);
    let mut grade = ClaimBuilder::new("laws.grade_automorphism", seed);
    let mut selfinv = ClaimBuilder::new("laws.involutions_self_inverse", seed);
    let mut compose = ClaimBuilder::new("laws.conjugation_is_reversion_of_grade", seed);
    let mut canon = ClaimBuilder::new("laws.canonical_form", seed);
    for _ in 0..n {
        let (a, b, c) = (s.multivector(sig), s.multivector(sig), s.multivector(sig));
        let triple = || json!({"a": mv(&a), "b": mv(&b), "c": mv(&c)});
        let ab = &a * &b;
        let bc = &b * &c;
        assoc.check(&ab * &c == &a * &bc, triple);
        let left = &a * &(&b + &c) == &ab + &(&a * &c);
        let right = &(&a + &b) * &c == &(&a * &c) + &bc;
        distrib.check(left && right, triple);
        rev.check(ab.reversion() == &b.reversion() * &a.reversion(), triple);
        conj.check(ab.conjugation() == &b.conjugation() * &a.conjugation(), triple);
        grade.check(ab.grade_involution() == &a.grade_involution() * &b.grade_involution(), triple);
        selfinv.check(
            a.reversion().reversion() == a
                && a.conjugation().conjugation() == a
                && a.grade_involution().grade_involution() == a,
            triple,
        );
        compose.check(
            a.conjugation() == a.grade_involution().reversion() && a.conjugation() == a.reversion().grade_involution(),
            triple,
        );
        // a - a must cancel to the empty term list.
        #[allow(clippy::eq_op)]
        let results = [&ab, &bc, &(&a + &b), &(&a - &a), &ab.conjugation()];
        canon.check(results.iter().all(|x| has_no_zero_terms(x)), triple);
    }
    [assoc, distrib, rev, conj, grade, selfinv, compose, canon].into_iter().map(ClaimBuilder::finish).collect()
}

/// e_i e_j + e_j e_i = −2B(e_i, e_j) on every ordered generator pair.
fn anticommutation(sig: Signature, seed: u64) -> crate::report::Claim {
    let mut claim = ClaimBuilder::new("laws.generator_relations", seed);
    let n = sig.dim();
    for i in 1..=n {
        for j in 1..=n {
            let ei = Multivector::<Rational>::basis_vector(sig, i).expect("index in range");
            let ej = Multivector::<Rational>::basis_vector(sig, j).expect("index in range");
            let lhs = &(&ei * &ej) + &(&ej * &ei);
            let b = ei.bilinear_form(&ej).expect("vectors");
            let rhs = Multivector::scalar(sig, Rational::from_i64(-2) * b);
            claim.check(lhs == rhs, || json!({"i": i, "j": j, "sum": mv(&lhs)}));
        }
    }
    claim.finish()
}

fn vector_laws(sig: Signature, n: usize, seed: u64) -> Result<Vec<crate::report::Claim>> {
    let mut s = Sampler::with_stream(seed, 2);
    let mut polar = ClaimBuilder::new("laws.bilinear_form_polarization", seed);
    let mut kelvin = ClaimBuilder::new("laws.kelvin_inverse", seed);
    let mut null = ClaimBuilder::new("laws.kelvin_null_rejected", seed);
    let one = Multivector::one(sig);
    for _ in 0..n {
        let (x, y) = (s.vector(sig), s.vector(sig));
        let sym = &(&x * &y) + &(&y * &x);
        let b = x.bilinear_form(&y)?;
        polar.check(
            sym.is_real_scalar() && -(sym.scalar_part() / Rational::from_i64(2)) == b,
            || json!({"x": mv(&x), "y": mv(&y)}),
        );

        let v = s.nonnull_vector(sig)?;
        match v.kelvin_inverse() {
            Ok(w) => kelvin.check(&v * &w == one && &w * &v == one, || json!({"x": mv(&v), "inverse": mv(&w)})),
            Err(e) => kelvin.check(false, || json!({"x": mv(&v), "error": e.to_string()})),
        }

        let z = s.null_vector(sig);
        null.check(z.kelvin_inverse() == Err(Error::NullVector), || json!({"x": mv(&z)}));
    }
    Ok([polar, kelvin, null].into_iter().map(ClaimBuilder::finish).collect())
}

fn group_laws(sig: Signature, config: LawsConfig, seed: u64) -> Result<Vec<crate::report::Claim>> {
    let mut s = Sampler::with_stream(seed, 3);
    let mut closure = ClaimBuilder::new("laws.vahlen_closure", seed);
    let mut delta = ClaimBuilder::new("laws.pseudodeterminant_real", seed);
    let mut homo = ClaimBuilder::new("laws.action_homomorphism", seed);
    let mut inverse = ClaimBuilder::new("laws.matrix_inverse", seed);
    let mut projective = ClaimBuilder::new("laws.projective_invariance", seed);
    let mut images = ClaimBuilder::new("laws.finite_images_are_vectors", seed);
    let id = VahlenMatrix::identity(sig);
    for _ in 0..config.words {
        let word = s.word(sig, config.max_word_len)?;
        let m = word_product(&word, sig);
        let kinds: Vec<_> = word.iter().map(|(k, _)| *k).collect();
        let ce = || json!({"word": kinds, "matrix": mat(&m)});

        closure.check(m.vahlen_check(), ce);
        let d = m.pseudodeterminant();
        delta.check(d.is_real_scalar() && !d.scalar_part().is_exact_zero(), ce);
        match m.mat_inverse() {
            Ok(inv) => inverse.check(&inv * &m == id && &m * &inv == id, ce),
            Err(e) => inverse.check(false, || json!({"word": kinds, "error": e.to_string()})),
        }

        // Homomorphism on finite chains; words whose chains keep hitting
        // infinity are indeterminate.
        let mut found = 0;
        let mut ok = true;
        let mut witness = None;
        let mut all_vectors = true;
        for _ in 0..config.points_per_word * 5 {
            if found == config.points_per_word {
                break;
            }
            let x = s.vector(sig);
            let Some(chain) = apply_chain(&word, &x)? else { continue };
            let direct = m.moebius_apply(&x)?;
            let Some(direct) = direct.value() else { continue };
            found += 1;
            all_vectors &= direct.is_vector();
            if *direct != chain && ok {
                ok = false;
                witness = Some(json!({"x": mv(&x), "chain": mv(&chain), "product": mv(direct)}));
            }
        }
        if found == 0 {
            homo.record(Status::Indeterminate, || Value::Null);
            images.record(Status::Indeterminate, || Value::Null);
        } else {
            homo.check(ok, || json!({"word": kinds, "witness": witness}));
            images.check(all_vectors, ce);
        }

        let lambda = loop {
            let r = s.rational(7, 4);
            if !r.is_exact_zero() {
                break r;
            }
        };
        let x = s.vector(sig);
        let (p1, p2) = (m.moebius_apply(&x)?, m.scale(&lambda).moebius_apply(&x)?);
        match (p1.value(), p2.value()) {
            (Some(a), Some(b)) => projective.check(a == b, || json!({"x": mv(&x), "lambda": lambda.to_coeff_string()})),
            (None, None) => projective.record(Status::Pass, || Value::Null),
            _ => projective.check(false, || json!({"x": mv(&x), "lambda": lambda.to_coeff_string()})),
        }
    }
    Ok([closure, delta, homo, inverse, projective, images].into_iter().map(ClaimBuilder::finish).collect())
}

/// Applies the word one generator at a time, rightmost first; `None` if an
/// intermediate point is at infinity.
fn apply_chain(
    word: &[(crate::sampling::GeneratorKind, VahlenMatrix<Rational>)],
    x: &Multivector<Rational>,
) -> Result<Option<Multivector<Rational>>> {
    let mut y = x.clone();
    for (_, g) in word.iter().rev() {
        match g.moebius_apply(&y)?.into_value() {
            Some(v) => y = v,
            None => return Ok(None),
        }
    }
    Ok(Some(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_everywhere() {
        for (p, q) in [(0, 2), (1, 1), (0, 3), (2, 1)] {
            let r = verify_laws(p, q, LawsConfig::uniform(15), 5).unwrap();
            for c in &r.claims {
                assert_eq!(c.status, Status::Pass, "{} in ({p},{q}): {:?}", c.id, c.counterexample);
            }
            assert_eq!(r.exit_code(), 0);
        }
    }

    #[test]
    fn reproducible() {
        let a = verify_laws(1, 2, LawsConfig::uniform(8), 77).unwrap();
        let b = verify_laws(1, 2, LawsConfig::uniform(8), 77).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
    }
}

use serde_json::{json, Value};

use super::conditions::{normal_form, preserves_unit_sphere, sphere_preservation_witness};
use super::convention::{involutive_at, make_phi, resolve_phi_convention, PhiPattern};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::report::{Claim, ClaimBuilder, Status, VerificationReport};
use crate::sampling::{Region, Sampler};
use crate::scalar::{Rational, Scalar, DEFAULT_TOLERANCE};
use crate::signature::Signature;
use crate::vahlen::{pin_check, VahlenMatrix};
use crate::versor::VectorProduct;

/// Claim ids of `verify_proposition`, in report order.
pub const PROPOSITION_CLAIMS: [&str; 14] = [
    "prop.convention",
    "prop.item1.involution",
    "prop.item1.square",
    "prop.item1.square_scalar",
    "prop.item2.phi0",
    "prop.item2.phia",
    "prop.item3.composition",
    "prop.item3.observed_law",
    "prop.transitivity",
    "prop.stabilizer",
    "prop.sphere_preserved",
    "prop.complement_preserved",
    "prop.alpha_beta_star_vector",
    "prop.normal_form",
];

/// Points used to compare two actions.
const ACTION_POINTS: usize = 4;

fn mv(x: &Multivector<Rational>) -> Value {
    serde_json::to_value(x).expect("multivector serializes")
}

fn q(x: &Rational) -> Value {
    Value::String(x.to_coeff_string())
}

/// Random a off the unit sphere with B(a,a) ≠ 0.
fn nonnull_complement(s: &mut Sampler, sig: Signature) -> Result<(Multivector<Rational>, Region)> {
    loop {
        let (a, r) = s.complement_point(sig)?;
        if r != Region::Null {
            return Ok((a, r));
        }
    }
}

/// Agreement of two Möbius actions on sample points.
fn same_action(
    m1: &VahlenMatrix<Rational>,
    m2: &VahlenMatrix<Rational>,
    points: &[Multivector<Rational>],
) -> Result<Status> {
    let mut decided = false;
    for x in points {
        let (y1, y2) = (m1.moebius_apply(x)?, m2.moebius_apply(x)?);
        match y1.projectively_equal(&y2, DEFAULT_TOLERANCE) {
            Some(false) => return Ok(Status::Fail),
            Some(true) => decided = true,
            None => {}
        }
    }
    Ok(if decided { Status::Pass } else { Status::Indeterminate })
}

fn image(m: &VahlenMatrix<Rational>, x: &Multivector<Rational>) -> Result<Option<Multivector<Rational>>> {
    Ok(m.moebius_apply(x)?.into_value())
}

struct Ctx {
    sig: Signature,
    seed: u64,
    samples: usize,
    pattern: PhiPattern,
}

impl Ctx {
    fn sampler(&self, claim: usize) -> Sampler {
        Sampler::with_stream(self.seed, 100 + claim as u64)
    }

    fn phi(&self, a: &Multivector<Rational>) -> Result<VahlenMatrix<Rational>> {
        make_phi(a, &VectorProduct::identity(self.sig), self.pattern)
    }

    fn points(&self, s: &mut Sampler) -> Vec<Multivector<Rational>> {
        (0..ACTION_POINTS).map(|_| s.vector(self.sig)).collect()
    }
}

/// Seeded check of the statements about φ_(a,b) acting on the complement
/// of the unit sphere. Failures are recorded, never raised.
pub fn verify_proposition(p: usize, q: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let sig = Signature::new(p, q)?;
    if sig.dim() == 0 || samples == 0 {
        return Err(Error::InvalidArgument("need p + q >= 1 and samples >= 1".into()));
    }
    let convention = resolve_phi_convention(p, q, samples.min(25), seed)?;
    let mut conv = ClaimBuilder::new(PROPOSITION_CLAIMS[0], seed);
    let Some(pattern) = convention.canonical else {
        conv.record(Status::Indeterminate, || Value::Null);
        conv.detail("no sign pattern passed; remaining claims not evaluated");
        let mut claims = vec![conv.finish()];
        claims.extend(PROPOSITION_CLAIMS[1..].iter().map(|id| ClaimBuilder::new(*id, seed).finish()));
        return Ok(VerificationReport { p, q, seed, samples, claims });
    };
    conv.check(true, || Value::Null);
    let passing: Vec<String> = convention.passing.iter().map(|p| p.to_string()).collect();
    conv.detail(format!("canonical {pattern}; passing {}", passing.join(" ")));

    let ctx = Ctx { sig, seed, samples, pattern };
    let mut claims = vec![conv.finish()];
    claims.push(item1_involution(&ctx)?);
    claims.extend(item1_square(&ctx)?);
    claims.extend(item2(&ctx)?);
    claims.extend(item3(&ctx)?);
    claims.push(transitivity(&ctx)?);
    claims.push(stabilizer(&ctx)?);
    claims.push(sphere_preserved(&ctx)?);
    claims.push(complement_preserved(&ctx)?);
    claims.extend(normal_form_claims(&ctx)?);
    debug_assert_eq!(claims.iter().map(|c| c.id.as_str()).collect::<Vec<_>>(), PROPOSITION_CLAIMS);
    Ok(VerificationReport { p, q, seed, samples, claims })
}

fn item1_involution(ctx: &Ctx) -> Result<Claim> {
    let mut s = ctx.sampler(1);
    let mut c = ClaimBuilder::new("prop.item1.involution", ctx.seed);
    for _ in 0..ctx.samples {
        let (a, _) = nonnull_complement(&mut s, ctx.sig)?;
        let (x, region) = s.complement_point(ctx.sig)?;
        let m = ctx.phi(&a)?;
        let status = if involutive_at(&m, &x) { Status::Pass } else { Status::Fail };
        c.record_in(region, status, || json!({"a": mv(&a), "x": mv(&x)}));
    }
    Ok(c.finish())
}

/// Matrix-level square: a real multiple of the identity, and whether that
/// multiple is 1 + B(a,a).
fn item1_square(ctx: &Ctx) -> Result<Vec<Claim>> {
    let mut s = ctx.sampler(2);
    let mut square = ClaimBuilder::new("prop.item1.square", ctx.seed);
    let mut scalar = ClaimBuilder::new("prop.item1.square_scalar", ctx.seed);
    let one = Rational::from_i64(1);
    let (mut plus, mut minus) = (0, 0);
    for _ in 0..ctx.samples {
        let (a, region) = nonnull_complement(&mut s, ctx.sig)?;
        let m = ctx.phi(&a)?;
        let sq = &m * &m;
        let k = sq.a().scalar_part();
        let is_multiple =
            sq.b().is_zero() && sq.c().is_zero() && sq.a().is_real_scalar() && sq.a() == sq.d() && !k.is_exact_zero();
        square.record_in(
            region,
            if is_multiple { Status::Pass } else { Status::Fail },
            || json!({"a": mv(&a), "square": serde_json::to_value(&sq).expect("serializes")}),
        );
        let b = a.bilinear_form(&a)?;
        let expected = &one + &b;
        plus += usize::from(is_multiple && k == expected);
        minus += usize::from(is_multiple && k == &one - &b);
        let status = if is_multiple && k == expected { Status::Pass } else { Status::Fail };
        scalar.record_in(
            region,
            status,
            || json!({"a": mv(&a), "B(a,a)": q(&b), "scalar": q(&k), "1 + B(a,a)": q(&expected)}),
        );
    }
    square.detail("phi^2 = k*I with k real and nonzero");
    scalar.detail(format!("k = 1 + B(a,a) on {plus}/{n}; k = 1 - B(a,a) on {minus}/{n}", n = ctx.samples));
    Ok(vec![square.finish(), scalar.finish()])
}

fn item2(ctx: &Ctx) -> Result<Vec<Claim>> {
    let mut s = ctx.sampler(3);
    let mut phi0 = ClaimBuilder::new("prop.item2.phi0", ctx.seed);
    let mut phia = ClaimBuilder::new("prop.item2.phia", ctx.seed);
    let zero = Multivector::zero(ctx.sig);
    let mut literal_ok = 0;
    for _ in 0..ctx.samples {
        let (a, region) = nonnull_complement(&mut s, ctx.sig)?;
        let m = ctx.phi(&a)?;
        let y0 = image(&m, &zero)?;
        phi0.record_in(region, status(y0.as_ref() == Some(&a)), || json!({"a": mv(&a), "image": y0.as_ref().map(mv)}));
        let ya = image(&m, &a)?;
        phia.record_in(
            region,
            status(ya.as_ref() == Some(&zero)),
            || json!({"a": mv(&a), "image": ya.as_ref().map(mv)}),
        );
        let lit = PhiPattern::LITERAL.matrix(&a);
        literal_ok += usize::from(image(&lit, &a)?.as_ref() == Some(&zero));
    }
    phia.detail(format!(
        "with the unsigned matrix {}: phi(a) = 0 on {literal_ok}/{}",
        PhiPattern::LITERAL,
        ctx.samples
    ));
    Ok(vec![phi0.finish(), phia.finish()])
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// φ_(a,1) φ_(c,1) against φ_(d, a − c), and against φ_(d,1) φ_(0, 1 + ac),
/// where d = φ_(a,1)(c).
fn item3(ctx: &Ctx) -> Result<Vec<Claim>> {
    let mut s = ctx.sampler(4);
    let mut stated = ClaimBuilder::new("prop.item3.composition", ctx.seed);
    let mut observed = ClaimBuilder::new("prop.item3.observed_law", ctx.seed);
    for i in 0..ctx.samples {
        let (a, region) = nonnull_complement(&mut s, ctx.sig)?;
        // Every tenth trial uses c = a, where a − c = 0.
        let c = if i % 10 == 9 { a.clone() } else { nonnull_complement(&mut s, ctx.sig)?.0 };
        let points = ctx.points(&mut s);
        let (pa, pc) = (ctx.phi(&a)?, ctx.phi(&c)?);
        let prod = &pa * &pc;
        let Some(d) = image(&pa, &c)? else {
            stated.record_in(region, Status::Indeterminate, || Value::Null);
            observed.record_in(region, Status::Indeterminate, || Value::Null);
            continue;
        };
        let ce = |f: &str| json!({"a": mv(&a), "c": mv(&c), "d": mv(&d), "f": f});

        let f = &a - &c;
        let st = match VectorProduct::from_vector(f.clone()).and_then(|fv| {
            fv.inverse()?;
            make_phi(&d, &fv, ctx.pattern)
        }) {
            Ok(m) => same_action(&prod, &m, &points)?,
            Err(_) => Status::Indeterminate,
        };
        stated.record_in(region, st, || ce("a - c"));

        // Exact matrix identity φ_(a,1) φ_(c,1) = φ_(d,1) φ_(0, 1 + ac).
        let f = &Multivector::one(ctx.sig) + &(&a * &c);
        let zero = Multivector::zero(ctx.sig);
        let rot = VahlenMatrix::new(f.clone(), zero.clone(), zero.clone(), f.grade_involution())?;
        let rhs = ctx.pattern.matrix(&d).mat_mul(&ctx.pattern.matrix(&zero))?.mat_mul(&rot)?;
        let ob = status(prod == rhs);
        observed.record_in(region, ob, || ce("1 + ac"));
    }
    stated.detail("phi_(a,1) phi_(c,1) ~ phi_(d, a - c), d = phi_(a,1)(c); indeterminate when a - c is null");
    observed.detail("phi_(a,1) phi_(c,1) = phi_(d,1) phi_(0, 1 + ac) as matrices, d = phi_(a,1)(c)");
    Ok(vec![stated.finish(), observed.finish()])
}

fn transitivity(ctx: &Ctx) -> Result<Claim> {
    let mut s = ctx.sampler(5);
    let mut c = ClaimBuilder::new("prop.transitivity", ctx.seed);
    let zero = Multivector::zero(ctx.sig);
    for _ in 0..ctx.samples {
        let (t, region) = s.complement_point(ctx.sig)?;
        let m = ctx.phi(&t)?;
        let y = image(&m, &zero)?;
        let ok = y.as_ref() == Some(&t) && preserves_unit_sphere(&m);
        c.record_in(region, status(ok), || json!({"t": mv(&t), "image": y.as_ref().map(mv)}));
    }
    c.detail("phi_(t,1) is sphere-preserving and sends 0 to t");
    Ok(c.finish())
}

/// φ_(0,b) ≃ (b, 0; 0, −b') and (b, 0; 0, b') for b with b b̄ = ±1: both fix
/// 0, preserve B and the unit sphere.
fn stabilizer(ctx: &Ctx) -> Result<Claim> {
    let mut s = ctx.sampler(6);
    let mut c = ClaimBuilder::new("prop.stabilizer", ctx.seed);
    let zero = Multivector::zero(ctx.sig);
    for _ in 0..ctx.samples {
        let b = s.pin_element(ctx.sig, 3)?;
        let x = s.vector(ctx.sig);
        let m = make_phi(&zero, &b, ctx.pattern)?;
        let alt = VahlenMatrix::new(b.expanded().clone(), zero.clone(), zero.clone(), b.expanded().grade_involution())?;
        let bx = x.bilinear_form(&x)?;
        let mut ok = pin_check(&b);
        for g in [&m, &alt] {
            ok &= g.vahlen_check() && preserves_unit_sphere(g);
            ok &= image(g, &zero)?.as_ref() == Some(&zero);
            ok &= match image(g, &x)? {
                Some(y) => y.bilinear_form(&y)? == bx,
                None => false,
            };
        }
        c.check(ok, || {
            let f: Vec<Value> = b.factors().iter().map(mv).collect();
            json!({"b_factors": f, "x": mv(&x)})
        });
    }
    c.detail("phi_(0,b) ~ (b,0;0,-b'); (b,0;0,b') also checked");
    Ok(c.finish())
}

fn sphere_preserved(ctx: &Ctx) -> Result<Claim> {
    let mut s = ctx.sampler(7);
    let mut c = ClaimBuilder::new("prop.sphere_preserved", ctx.seed);
    for i in 0..ctx.samples {
        let (a, region) = nonnull_complement(&mut s, ctx.sig)?;
        let b = s.pin_element(ctx.sig, 2)?;
        let m = make_phi(&a, &b, ctx.pattern)?;
        let algebraic = preserves_unit_sphere(&m);
        let empirical = if ctx.sig.q() > 0 {
            let out = sphere_preservation_witness(&m, 10, ctx.seed.wrapping_add(i as u64))?;
            out.preserved
        } else {
            true
        };
        c.record_in(
            region,
            status(algebraic && empirical),
            || json!({"a": mv(&a), "algebraic": algebraic, "empirical": empirical}),
        );
    }
    if ctx.sig.q() == 0 {
        c.detail("unit sphere is empty; algebraic condition only");
    }
    Ok(c.finish())
}

fn complement_preserved(ctx: &Ctx) -> Result<Claim> {
    let mut s = ctx.sampler(8);
    let mut c = ClaimBuilder::new("prop.complement_preserved", ctx.seed);
    for _ in 0..ctx.samples {
        let (a, _) = nonnull_complement(&mut s, ctx.sig)?;
        let (x, region) = s.complement_point(ctx.sig)?;
        let m = ctx.phi(&a)?;
        match image(&m, &x)? {
            None => c.record_in(region, Status::Indeterminate, || Value::Null),
            Some(y) => c.record_in(
                region,
                status(Region::of(&y).is_some()),
                || json!({"a": mv(&a), "x": mv(&x), "image": mv(&y)}),
            ),
        }
    }
    Ok(c.finish())
}

/// Structure of φ_(a,b): α β* is a vector, and the float normal form has
/// bottom row σ(β', α') with α ᾱ − β β̄ = ±1.
fn normal_form_claims(ctx: &Ctx) -> Result<Vec<Claim>> {
    let mut s = ctx.sampler(9);
    let mut star = ClaimBuilder::new("prop.alpha_beta_star_vector", ctx.seed);
    let mut nf = ClaimBuilder::new("prop.normal_form", ctx.seed);
    let (mut pos, mut neg, mut alt) = (0, 0, 0);
    for _ in 0..ctx.samples {
        let (a, region) = nonnull_complement(&mut s, ctx.sig)?;
        let b = s.pin_element(ctx.sig, 2)?;
        let m = make_phi(&a, &b, ctx.pattern)?;
        let ab = m.a() * &m.b().reversion();
        star.record_in(region, status(ab.is_vector()), || json!({"a": mv(&a), "alpha beta*": mv(&ab)}));

        let mf = m.map(|x| x.to_f64());
        match normal_form(&mf) {
            Ok(n) => {
                let (al, be) = (n.alpha(), n.beta());
                let norm = &(al * &al.conjugation()) - &(be * &be.conjugation());
                let unit = norm.is_real_scalar_within(1e-9) && (norm.scalar_part().abs() - 1.0).abs() < 1e-9;
                if n.sigma > 0 {
                    pos += 1;
                } else {
                    neg += 1;
                }
                alt += usize::from(n.has_alternative_form(1e-9));
                nf.record_in(region, status(unit), || json!({"a": mv(&a), "norm": norm.scalar_part()}));
            }
            Err(e) => nf.record_in(region, Status::Fail, || json!({"a": mv(&a), "error": e.to_string()})),
        }
    }
    nf.detail(format!(
        "sigma=+1 on {pos}, sigma=-1 on {neg}; form (alpha,beta;beta',-alpha') with alpha alpha~ + beta beta~ = 1 on {alt}/{}",
        ctx.samples
    ));
    Ok(vec![star.finish(), nf.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_plane_report() {
        let r = verify_proposition(0, 2, 20, 1).unwrap();
        let ids: Vec<_> = r.claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, PROPOSITION_CLAIMS);
        for id in [
            "prop.convention",
            "prop.item1.involution",
            "prop.item1.square",
            "prop.item2.phi0",
            "prop.item2.phia",
            "prop.item3.observed_law",
            "prop.transitivity",
            "prop.stabilizer",
            "prop.sphere_preserved",
            "prop.complement_preserved",
            "prop.alpha_beta_star_vector",
            "prop.normal_form",
        ] {
            let c = r.claim(id).unwrap();
            assert_eq!(c.status, Status::Pass, "{id}: {:?}", c.counterexample);
        }
        assert_eq!(r.claim("prop.item3.composition").unwrap().status, Status::Fail);
        let sq = r.claim("prop.item1.square_scalar").unwrap();
        assert_eq!(sq.status, Status::Fail);
        assert!(sq.detail.as_deref().unwrap().contains("1 - B(a,a) on 20/20"));
    }

    #[test]
    fn indefinite_signatures() {
        for (p, q) in [(1, 1), (1, 2), (2, 1)] {
            let r = verify_proposition(p, q, 12, 3).unwrap();
            for id in
                ["prop.item1.involution", "prop.item2.phi0", "prop.item2.phia", "prop.stabilizer", "prop.transitivity"]
            {
                assert_eq!(r.claim(id).unwrap().status, Status::Pass, "({p},{q}) {id}");
            }
        }
    }

    #[test]
    fn reproducible() {
        let a = verify_proposition(1, 1, 6, 9).unwrap();
        let b = verify_proposition(1, 1, 6, 9).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
    }
}

use cliffmoeb_core::sampling::{word_product, Sampler};
use cliffmoeb_core::sphere::{normal_form, preserves_unit_sphere, sphere_preservation_witness};
use cliffmoeb_core::{make_phi, pin_check, PhiPattern, Rational, Scalar, Signature, VahlenMatrix, VectorProduct};
use proptest::prelude::*;

fn signature() -> impl Strategy<Value = Signature> {
    (1usize..=4).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

/// Signatures with a nonempty unit sphere.
fn sphere_signature() -> impl Strategy<Value = Signature> {
    (1usize..=4).prop_flat_map(|n| (0..n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

fn phi(s: &mut Sampler, sig: Signature) -> VahlenMatrix<Rational> {
    let (a, _) = loop {
        let (a, r) = s.complement_point(sig).unwrap();
        if r != cliffmoeb_core::sampling::Region::Null {
            break (a, r);
        }
    };
    let b = s.pin_element(sig, 2).unwrap();
    make_phi(&a, &b, PhiPattern::CANONICAL).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn words_stay_in_the_group(sig in signature(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m1, m2) = (word_product(&s.word(sig, 4).unwrap(), sig), word_product(&s.word(sig, 4).unwrap(), sig));
        let m = &m1 * &m2;
        prop_assert!(m.vahlen_check());
        let id = VahlenMatrix::identity(sig);
        let inv = m.mat_inverse().unwrap();
        prop_assert_eq!(&inv * &m, id.clone());
        prop_assert_eq!(&m * &inv, id);

        let x = s.vector(sig);
        let direct = m.moebius_apply(&x).unwrap();
        let inner = m2.moebius_apply(&x).unwrap();
        if let (Some(y), Some(z)) = (direct.value(), inner.value()) {
            prop_assert!(y.is_vector());
            if let Some(w) = m1.moebius_apply(z).unwrap().value() {
                prop_assert_eq!(w, y);
            }
        }
        let lambda = s.positive_rational(9, 4);
        let scaled = m.scale(&-lambda).moebius_apply(&x).unwrap();
        prop_assert_eq!(scaled.value(), direct.value());
    }

    #[test]
    fn pin_rotations_are_isometries(sig in signature(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let b = s.pin_element(sig, 3).unwrap();
        prop_assert!(pin_check(&b));
        let r = VahlenMatrix::rotation(&b).unwrap();
        let x = s.vector(sig);
        let y = r.moebius_apply(&x).unwrap().into_value().unwrap();
        prop_assert_eq!(y.bilinear_form(&y).unwrap(), x.bilinear_form(&x).unwrap());
    }

    #[test]
    fn algebraic_sphere_test_implies_empirical(sig in sphere_signature(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = if seed % 2 == 0 { phi(&mut s, sig) } else { word_product(&s.word(sig, 3).unwrap(), sig) };
        let out = sphere_preservation_witness(&m, 10, seed).unwrap();
        prop_assert_eq!(preserves_unit_sphere(&m), out.preserved);
    }

    #[test]
    fn sphere_maps_form_a_group(sig in signature(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m1, m2) = (phi(&mut s, sig), phi(&mut s, sig));
        prop_assert!(preserves_unit_sphere(&(&m1 * &m2)));
        prop_assert!(preserves_unit_sphere(&m1.mat_inverse().unwrap()));
    }

    #[test]
    fn complement_is_preserved(sig in signature(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.complement_point(sig).unwrap().0;
        let Ok(m) = make_phi(&a, &VectorProduct::identity(sig), PhiPattern::CANONICAL) else {
            return Ok(());
        };
        let (x, _) = s.complement_point(sig).unwrap();
        if let Some(y) = m.moebius_apply(&x).unwrap().value() {
            prop_assert_ne!(y.bilinear_form(y).unwrap(), Rational::from_i64(1));
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_projective(sig in signature(), seed in any::<u64>(), lambda in 0.1f64..10.0) {
        let mut s = Sampler::new(seed);
        let m = phi(&mut s, sig).map(|x| x.to_f64());
        let nf = normal_form(&m).unwrap();
        let again = normal_form(&nf.matrix).unwrap();
        prop_assert!(again.matrix.approx_eq(&nf.matrix, 1e-9));
        let scaled = normal_form(&m.scale(&lambda)).unwrap();
        prop_assert!(scaled.matrix.approx_eq(&nf.matrix, 1e-9));
    }
}

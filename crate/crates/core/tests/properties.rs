use minembed::algebra::{AlgebraElement, Convention, FieldTag, HVector};
use minembed::embedding::{
    fiber_and_horizontal, iota_with, product_frame, radius4, random_projective_point, rng_from_seed, EmbeddingSpec,
    FramePoint, ProductSphereSpec, ProjectiveSpec,
};
use minembed::extrinsic::{measure, ExtrinsicReport};
use minembed::jet::{curve_jet, great_circle, Jet2};
use proptest::prelude::*;
use rand::Rng;

fn field() -> impl Strategy<Value = FieldTag> {
    prop_oneof![Just(FieldTag::R), Just(FieldTag::C), Just(FieldTag::H)]
}

fn element(tag: FieldTag) -> impl Strategy<Value = AlgebraElement> {
    prop::array::uniform4(-3.0f64..3.0).prop_map(move |mut c| {
        c[tag.dim_r()..].iter_mut().for_each(|x| *x = 0.0);
        AlgebraElement::new(tag, c).unwrap()
    })
}

fn projective_spec() -> impl Strategy<Value = ProjectiveSpec> {
    field().prop_flat_map(|f| {
        let cap = match f {
            FieldTag::R => 5usize,
            FieldTag::C => 4,
            FieldTag::H => 3,
        };
        (1..=cap).prop_map(move |n| ProjectiveSpec::new(f, n).unwrap())
    })
}

fn hvector(spec: ProjectiveSpec) -> impl Strategy<Value = HVector> {
    prop::collection::vec(-2.0f64..2.0, (spec.n + 1) * spec.field.dim_r())
        .prop_filter("nonzero", |c| c.iter().any(|x| x.abs() > 1e-3))
        .prop_map(move |c| HVector::from_real_coords(spec.field, &c).unwrap())
}

fn unit(tag: FieldTag) -> impl Strategy<Value = AlgebraElement> {
    element(tag)
        .prop_filter("nonzero", |x| x.norm() > 1e-3)
        .prop_map(|x| x.scale(1.0 / x.norm()))
}

fn close(a: &AlgebraElement, b: &AlgebraElement, tol: f64) -> bool {
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).abs() <= tol)
}

/// Replaces the frame by `Q·frame` for a random orthogonal `Q`.
fn rotate_frame(point: &FramePoint, seed: u64) -> FramePoint {
    let mut rng = rng_from_seed(seed);
    let m = point.horizontal_frame.len();
    let len = point.base.len();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(m);
    while out.len() < m {
        let mut v = vec![0.0; len];
        for e in &point.horizontal_frame {
            let c: f64 = rng.random_range(-1.0..1.0);
            v.iter_mut().zip(e).for_each(|(a, b)| *a += c * b);
        }
        for e in &out {
            let d: f64 = v.iter().zip(e).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(e).for_each(|(a, b)| *a -= d * b);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            out.push(v.iter().map(|x| x / n).collect());
        }
    }
    FramePoint { base: point.base.clone(), horizontal_frame: out, fiber_frame: point.fiber_frame.clone() }
}

fn assert_invariants_match(a: &ExtrinsicReport, b: &ExtrinsicReport) -> Result<(), TestCaseError> {
    prop_assert!((a.alpha_norm2 - b.alpha_norm2).abs() < 1e-8 * (1.0 + a.alpha_norm2));
    prop_assert!((a.scalar_sum - b.scalar_sum).abs() < 1e-8 * (1.0 + a.scalar_sum.abs()));
    prop_assert!((a.mean_curvature_norm2 - b.mean_curvature_norm2).abs() < 1e-8 * (1.0 + a.mean_curvature_norm2));
    prop_assert!((a.conformal_factor - b.conformal_factor).abs() < 1e-8 * a.conformal_factor);
    Ok(())
}

proptest! {
    #[test]
    fn norm_is_multiplicative((x, y) in field().prop_flat_map(|f| (element(f), element(f)))) {
        let p = x.mul(&y);
        prop_assert!((p.norm() - x.norm() * y.norm()).abs() <= 1e-12 * (1.0 + x.norm() * y.norm()));
        let q = x.mul_with(&y, Convention::LeftHanded);
        prop_assert!((q.norm() - p.norm()).abs() <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn conjugation_reverses_products((x, y) in field().prop_flat_map(|f| (element(f), element(f)))) {
        let lhs = x.mul(&y).conj();
        let rhs = y.conj().mul(&x.conj());
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn multiplication_is_associative((x, y, z) in field().prop_flat_map(|f| (element(f), element(f), element(f)))) {
        prop_assert!(close(&x.mul(&y).mul(&z), &x.mul(&y.mul(&z)), 1e-11));
    }

    #[test]
    fn jet_product_is_truncated_cauchy_product(a in prop::array::uniform3(-5.0f64..5.0), b in prop::array::uniform3(-5.0f64..5.0)) {
        let x = Jet2::new(a[0], a[1], a[2]);
        let y = Jet2::new(b[0], b[1], b[2]);
        let p = x * y;
        prop_assert!((p.a0 - a[0] * b[0]).abs() < 1e-12);
        prop_assert!((p.a1 - (a[0] * b[1] + a[1] * b[0])).abs() < 1e-12);
        prop_assert!((p.a2 - (a[0] * b[2] + a[1] * b[1] + a[2] * b[0])).abs() < 1e-12);
        // Leibniz rule for the second derivative
        prop_assert!((p.d2() - (x.d2() * y.a0 + 2.0 * x.d1() * y.d1() + x.a0 * y.d2())).abs() < 1e-11);
    }

    #[test]
    fn jet_sine_matches_chain_rule(a in prop::array::uniform3(-3.0f64..3.0)) {
        let x = Jet2::new(a[0], a[1], a[2]);
        let s = x.sin();
        prop_assert!((s.a0 - a[0].sin()).abs() < 1e-14);
        prop_assert!((s.d1() - a[0].cos() * x.d1()).abs() < 1e-12);
        let want = -a[0].sin() * x.d1() * x.d1() + a[0].cos() * x.d2();
        prop_assert!((s.d2() - want).abs() < 1e-11);
    }

    #[test]
    fn norm_identity_holds((spec, v) in projective_spec().prop_flat_map(|s| (Just(s), hvector(s)))) {
        let lhs = iota_with(&spec, &v).unwrap().norm().powi(2) * radius4(spec.n);
        let rhs = v.norm2().powi(2);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs);
    }

    #[test]
    fn unit_scalars_act_trivially(
        (spec, v, lambda) in projective_spec().prop_flat_map(|s| (Just(s), hvector(s), unit(s.field))),
        left in any::<bool>(),
    ) {
        let convention = if left { Convention::LeftHanded } else { Convention::RightHanded };
        let spec = spec.with_convention(convention);
        let a = iota_with(&spec, &v).unwrap().coords;
        let b = iota_with(&spec, &v.act(&lambda, convention)).unwrap().coords;
        let scale = v.norm2();
        prop_assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-12 * (1.0 + scale)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jets_agree_with_finite_differences(spec in projective_spec(), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let v = random_projective_point(&spec, &mut rng);
        let frame = fiber_and_horizontal(&spec, &v, &mut rng).unwrap();
        let emb = EmbeddingSpec::Projective(spec);
        let r = spec.radius();
        let w = &frame.horizontal_frame[0];
        let d = curve_jet(&emb, &great_circle(&frame.base, w, r)).unwrap();
        let at = |t: f64| -> Vec<f64> {
            let x: Vec<f64> = frame.base.iter().zip(w).map(|(p, u)| (t / r).cos() * p + r * (t / r).sin() * u).collect();
            emb.eval(&x)
        };
        let h = 1e-4;
        let (p, m, z) = (at(h), at(-h), at(0.0));
        for i in 0..z.len() {
            let d1 = (p[i] - m[i]) / (2.0 * h);
            let d2 = (p[i] - 2.0 * z[i] + m[i]) / (h * h);
            prop_assert!((d.value[i] - z[i]).abs() < 1e-12);
            prop_assert!((d.d1[i] - d1).abs() < 1e-6, "d1[{i}] {} vs {d1}", d.d1[i]);
            prop_assert!((d.d2[i] - d2).abs() < 1e-5, "d2[{i}] {} vs {d2}", d.d2[i]);
        }
    }

    #[test]
    fn gauss_identity_for_any_product(n in 3usize..=8, kk in 0usize..7, r1 in 0.05f64..0.95, seed in any::<u64>()) {
        let k = 1 + kk % (n - 1);
        let spec = ProductSphereSpec::new(n, k, r1).unwrap();
        let r = measure(&EmbeddingSpec::Product(spec), &product_frame(&spec, seed)).unwrap();
        prop_assert!(r.gauss_residual() < 1e-7 * (1.0 + r.alpha_norm2));
    }

    #[test]
    fn projective_invariants_ignore_the_frame(spec in projective_spec(), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let v = random_projective_point(&spec, &mut rng);
        let first = fiber_and_horizontal(&spec, &v, &mut rng).unwrap();
        let second = rotate_frame(&first, seed ^ 0x5eed);
        let emb = EmbeddingSpec::Projective(spec);
        assert_invariants_match(&measure(&emb, &first).unwrap(), &measure(&emb, &second).unwrap())?;
    }

    #[test]
    fn product_invariants_ignore_the_frame(n in 3usize..=7, kk in 0usize..6, r1 in 0.1f64..0.9, seed in any::<u64>()) {
        let k = 1 + kk % (n - 1);
        let spec = ProductSphereSpec::new(n, k, r1).unwrap();
        let first = product_frame(&spec, seed);
        let second = rotate_frame(&first, seed.wrapping_add(1));
        let emb = EmbeddingSpec::Product(spec);
        assert_invariants_match(&measure(&emb, &first).unwrap(), &measure(&emb, &second).unwrap())?;
    }

    #[test]
    fn projective_invariants_are_homogeneous(spec in projective_spec(), a in any::<u64>(), b in any::<u64>()) {
        let emb = EmbeddingSpec::Projective(spec);
        let (_, fa) = minembed::embedding::projective_frame(&spec, a).unwrap();
        let (_, fb) = minembed::embedding::projective_frame(&spec, b).unwrap();
        assert_invariants_match(&measure(&emb, &fa).unwrap(), &measure(&emb, &fb).unwrap())?;
    }
}

use num_bigint::BigInt;
use proptest::prelude::*;

use semitri::closure::GeneratorSet;
use semitri::linalg::{Matrix, MatrixRing, Spectral};
use semitri::scalars::{
    parse_rational, PrimeField, PrimeFieldElem, Quaternion, QuaternionRing, Rational, RationalField, Ring, ScalarRing,
};
use semitri::testkit::{
    flag_enumeration_oracle, gen_conjugated_flag_family, random_conjugator, spectrum_oracle, InstanceRecipe, RecipeKind,
};
use semitri::triangularize::{triangularize, triangularize_general, verify_chain, EngineConfig, Mode, Verdict};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| Quaternion::new(a, b, c, d))
}

fn gf2_matrix(n: usize) -> impl Strategy<Value = Matrix<PrimeFieldElem>> {
    proptest::collection::vec(0u64..2, n * n)
        .prop_map(move |v| Matrix::from_vec(n, n, v.into_iter().map(PrimeFieldElem).collect()))
}

fn gf3_matrix(n: usize) -> impl Strategy<Value = Matrix<PrimeFieldElem>> {
    proptest::collection::vec(0u64..3, n * n)
        .prop_map(move |v| Matrix::from_vec(n, n, v.into_iter().map(PrimeFieldElem).collect()))
}

proptest! {
    #[test]
    fn quaternion_norm_is_multiplicative(a in quaternion(), b in quaternion()) {
        let h = QuaternionRing;
        prop_assert_eq!(h.mul(&a, &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn quaternion_multiplication_associates(a in quaternion(), b in quaternion(), c in quaternion()) {
        let h = QuaternionRing;
        prop_assert_eq!(h.mul(&h.mul(&a, &b), &c), h.mul(&a, &h.mul(&b, &c)));
    }

    #[test]
    fn quaternion_inverse_both_sides(a in quaternion()) {
        let h = QuaternionRing;
        prop_assume!(!a.is_zero());
        let inv = h.inv(&a).unwrap();
        prop_assert!(h.is_one(&h.mul(&a, &inv)));
        prop_assert!(h.is_one(&h.mul(&inv, &a)));
    }

    #[test]
    fn quaternion_text_round_trips(a in quaternion()) {
        let h = QuaternionRing;
        prop_assert_eq!(h.parse(&h.format(&a)).unwrap(), a);
    }

    #[test]
    fn rationals_print_reduced(n in -1000i64..1000, d in 1i64..1000, k in 1i64..30) {
        let q = RationalField;
        let a = parse_rational(&format!("{}/{}", n * k, d * k)).unwrap();
        prop_assert_eq!(q.format(&a), q.format(&Rational::new(BigInt::from(n), BigInt::from(d))));
        prop_assert_eq!(q.parse(&q.format(&a)).unwrap(), a);
    }

    #[test]
    fn prime_field_inverses(p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 65_537]), v in 1u64..1_000_000) {
        let f = PrimeField::new(p).unwrap();
        let a = f.elem(v);
        prop_assume!(!f.is_zero(&a));
        prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
    }

    #[test]
    fn general_agrees_with_flag_enumeration(a in gf2_matrix(3), b in gf2_matrix(3)) {
        let f = PrimeField::new(2).unwrap();
        let gens = GeneratorSet::new(3, vec![a, b]).unwrap();
        let out = triangularize_general(&f, &gens, &EngineConfig::default()).unwrap();
        prop_assert_eq!(out.verdict.is_triangularizable(), flag_enumeration_oracle(&f, &gens));
    }

    #[test]
    fn singleton_spectrum_agrees_with_oracle(a in gf3_matrix(3)) {
        let f = PrimeField::new(3).unwrap();
        prop_assert_eq!(f.central_spectrum(&a), spectrum_oracle(&f, &a));
    }

    #[test]
    fn emitted_chains_verify_and_transport(seed in any::<u64>(), n in 2usize..5, kind in 0usize..4) {
        let q = RationalField;
        let kinds = [RecipeKind::Nilpotent, RecipeKind::Unipotent, RecipeKind::KaplanskyField, RecipeKind::General];
        let recipe = InstanceRecipe::new(kinds[kind], n, ScalarRing::Rational, seed, 2);
        let inst = gen_conjugated_flag_family(&q, &recipe).unwrap();
        let out = triangularize(&q, &inst.generators, Mode::Auto, &EngineConfig::default()).unwrap();
        let chain = match &out.verdict {
            Verdict::Triangularizable(c) => c.clone(),
            Verdict::NotTriangularizable(w) => return Err(TestCaseError::fail(format!("refuted: {}", w.kind))),
        };
        prop_assert!(verify_chain(&q, &inst.generators, &chain).is_ok());

        let (p, p_inv) = random_conjugator(&q, &mut recipe.rng(), n);
        let moved = inst.generators.map(|g| q.mat_mul(&q.mat_mul(&p, g), &p_inv));
        prop_assert!(verify_chain(&q, &moved, &chain.transport(&q, &p)).is_ok());
    }
}

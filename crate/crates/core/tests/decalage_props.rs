use aomega::complexes::{homology_snf, koszul, IntComplex, Integers, Matrix};
use aomega::decalage::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn complex_from_seed(seed: u64) -> IntComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_complex(&mut rng, RandomComplexParams::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_formula_holds(seed in any::<u64>(), f in prop::sample::select(vec![2i64, 3, 4, 6, -2])) {
        let k = complex_from_seed(seed);
        let r = check_homology_formula(&k, &b(f)).unwrap();
        prop_assert!(r.passed, "{:?}", r.first_mismatch());
    }

    #[test]
    fn bockstein_comparison_holds(seed in any::<u64>(), f in prop::sample::select(vec![2i64, 3, 4, 9])) {
        let k = complex_from_seed(seed);
        let r = check_leta_mod_f_is_bockstein(&k, &b(f)).unwrap();
        prop_assert!(r.passed, "{:?} {:?}", r.first_mismatch(), r.notes);
    }

    #[test]
    fn composition_holds(seed in any::<u64>(), f in 1i64..5, g in 1i64..5) {
        let k = complex_from_seed(seed);
        let r = check_composition(&k, &b(f), &b(g)).unwrap();
        prop_assert!(r.passed, "{:?}", r.first_mismatch());
    }

    #[test]
    fn mod_g_commutation_holds(seed in any::<u64>(), (f, g) in prop::sample::select(vec![(2i64, 3i64), (3, 2), (4, 9), (9, 2)])) {
        let k = complex_from_seed(seed);
        let r = check_mod_g_commutation(&k, &b(f), &b(g)).unwrap();
        prop_assert!(r.applicable && r.passed, "{:?}", r.first_mismatch());
    }

    #[test]
    fn truncation_holds(seed in any::<u64>(), j in -1i32..4) {
        let k = complex_from_seed(seed);
        let r = check_truncation(&k, &b(2), j).unwrap();
        prop_assert!(r.passed, "{:?}", r.first_mismatch());
    }

    #[test]
    fn exactness_certificate_for_coprime_multiplication(seed in any::<u64>()) {
        let k = complex_from_seed(seed);
        let t = TrianglePair::multiplication(k, &b(3)).unwrap();
        let r = check_exactness_criterion(&t, &b(2)).unwrap();
        prop_assert!(r.hypothesis_holds && r.passed, "{r:?}");
    }

    #[test]
    fn inverse_maps_compose_to_power(seed in any::<u64>(), f in 2i64..5) {
        let k = complex_from_seed(seed);
        // shift into degrees [0, len)
        let k = k.shift(k.lo());
        let d = k.hi() - 1;
        let inv = leta_inverse_maps(&k, &b(f), d.max(0)).unwrap();
        prop_assert!(inv.check.passed);
    }

    #[test]
    fn koszul_rule_matches_lattices(g in prop::collection::vec(-12i64..=12, 1..4), f in 1i64..7) {
        let g: Vec<BigInt> = g.into_iter().map(b).collect();
        let r = check_koszul_agreement(&g, &b(f)).unwrap();
        prop_assert!(r.passed, "{:?}", r.first_mismatch());
    }
}

#[test]
fn restriction_of_scalars_gaussian_integers() {
    // Z[i]-complex Z[i] --(1+i)^3--> Z[i] viewed over Z, with i acting blockwise
    let mul = |a: i64, c: i64| Matrix::from_i64(2, 2, &[a, -c, c, a]);
    let d = mul(-2, 2); // (1+i)^3 = -2 + 2i
    let k = IntComplex::new(Integers, 0, vec![2, 2], vec![d]).unwrap();
    let i_act = vec![mul(0, 1), mul(0, 1)];
    for f in [2, 3, 4] {
        let r = check_restriction_of_scalars(&k, &i_act, &b(f)).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn split_and_failing_triangles() {
    let k = koszul(&Integers, &[b(2), b(4)]);
    let n = IntComplex::from_i64(0, vec![1, 1], &[&[6]]).unwrap();
    let r = check_exactness_criterion(&TrianglePair::split(k.clone(), n).unwrap(), &b(2)).unwrap();
    assert!(r.hypothesis_holds && r.passed);
    let z = IntComplex::from_i64(0, vec![1], &[]).unwrap();
    let r =
        check_exactness_criterion(&TrianglePair::multiplication(z, &b(5)).unwrap(), &b(5)).unwrap();
    assert!(!r.hypothesis_holds && r.triangle_exact.is_none());
    assert!(homology_snf(&k).get(2).torsion_order() == b(2));
}

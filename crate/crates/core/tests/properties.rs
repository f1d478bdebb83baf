//! Property tests across the algebra stack: field axioms, group index
//! arithmetic, ring laws, involution laws, and the closed-form/convolution
//! cross-check on random inputs.

use proptest::prelude::*;

use vstar_core::algebra::GroupAlgebra;
use vstar_core::field::FieldSpec;
use vstar_core::group::GroupSpec;
use vstar_core::involution::{enumerate_involutive_automorphisms, named_involution};
use vstar_core::unitary::{is_unitary, sigma4_product_closed_form};

fn any_field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![2u64, 4, 8, 16, 32, 64, 128, 256])
        .prop_map(|q| FieldSpec::from_order(q).unwrap())
}

fn small_group() -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(vec![
        vec![1u32],
        vec![2],
        vec![3],
        vec![4],
        vec![1, 1],
        vec![2, 1],
        vec![3, 1],
        vec![2, 2],
    ])
    .prop_map(|exps| GroupSpec::new(exps).unwrap())
}

fn small_algebra() -> impl Strategy<Value = GroupAlgebra> {
    (prop::sample::select(vec![2u64, 4]), small_group())
        .prop_map(|(q, g)| GroupAlgebra::new(FieldSpec::from_order(q).unwrap(), g).unwrap())
}

fn element_of(alg: &GroupAlgebra) -> impl Strategy<Value = Vec<u8>> {
    let q = alg.field_spec().order() as u8;
    prop::collection::vec(0..q, alg.dimension())
}

proptest! {
    #[test]
    fn field_axioms_on_random_triples(field in any_field(), raw in prop::array::uniform3(0u16..256)) {
        let q = field.order() as u16;
        let a = field.element(raw[0] % q).unwrap();
        let b = field.element(raw[1] % q).unwrap();
        let c = field.element(raw[2] % q).unwrap();
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&a).unwrap(), field.zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), field.one());
        }
    }

    #[test]
    fn sqrt_is_the_inverse_of_squaring(field in any_field(), raw in 0u16..256) {
        let a = field.element(raw % field.order() as u16).unwrap();
        prop_assert_eq!(a.square().sqrt(), a);
        prop_assert_eq!(a.sqrt().square(), a);
    }

    #[test]
    fn group_index_is_a_bijection(spec in small_group(), raw in prop::collection::vec(0u64..4096, 0..4)) {
        let mut exps = raw;
        exps.resize(spec.rank(), 0);
        let g = spec.element(&exps).unwrap();
        let idx = spec.element_index(&g).unwrap();
        prop_assert_eq!(spec.element_at(idx).unwrap(), g.clone());
        let inv = spec.inv(&g).unwrap();
        prop_assert!(spec.mul(&g, &inv).unwrap().is_identity());
        let ord = spec.order_of(&g).unwrap();
        prop_assert_eq!(spec.order() % ord, 0);
        prop_assert!(spec.pow(&g, ord as i64).unwrap().is_identity());
    }

    #[test]
    fn torsion_power_kernel_image(spec in small_group(), i in 0u32..6) {
        let torsion = spec.torsion_subgroup(i);
        let power = spec.power_subgroup(i);
        prop_assert_eq!(torsion.len() as u64 * power.len() as u64, spec.order());
    }

    #[test]
    fn augmentation_is_a_ring_homomorphism(
        (alg, xs, ys) in small_algebra().prop_flat_map(|alg| {
            let x = element_of(&alg);
            let y = element_of(&alg);
            (Just(alg), x, y)
        })
    ) {
        let x = alg.from_coeff_bits(xs).unwrap();
        let y = alg.from_coeff_bits(ys).unwrap();
        let lhs = alg.augmentation(&alg.mul(&x, &y).unwrap()).unwrap();
        let rhs = alg
            .augmentation(&x)
            .unwrap()
            .mul(&alg.augmentation(&y).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = alg.augmentation(&alg.add(&x, &y).unwrap()).unwrap();
        prop_assert_eq!(
            sum,
            alg.augmentation(&x).unwrap().add(&alg.augmentation(&y).unwrap()).unwrap()
        );
    }

    #[test]
    fn format_parse_round_trips(
        (alg, xs) in small_algebra().prop_flat_map(|alg| {
            let x = element_of(&alg);
            (Just(alg), x)
        })
    ) {
        let x = alg.from_coeff_bits(xs).unwrap();
        let text = alg.format_element(&x);
        prop_assert_eq!(alg.parse_element(&text).unwrap(), x);
    }

    #[test]
    fn units_invert_exactly(
        (alg, xs) in small_algebra().prop_flat_map(|alg| {
            let x = element_of(&alg);
            (Just(alg), x)
        })
    ) {
        let x = alg.from_coeff_bits(xs).unwrap();
        let aug = alg.augmentation(&x).unwrap();
        prop_assert_eq!(alg.is_unit(&x).unwrap(), !aug.is_zero());
        if !aug.is_zero() {
            let inv = alg.inverse(&x).unwrap();
            prop_assert_eq!(alg.mul(&x, &inv).unwrap(), alg.one());
        }
    }

    #[test]
    fn involutions_square_to_identity_on_fg(
        (alg, xs, pick) in small_algebra().prop_flat_map(|alg| {
            let x = element_of(&alg);
            (Just(alg), x, any::<prop::sample::Index>())
        })
    ) {
        let sigmas = enumerate_involutive_automorphisms(alg.group_spec()).unwrap();
        let sigma = &sigmas[pick.index(sigmas.len())];
        let x = alg.from_coeff_bits(xs).unwrap();
        let twice = alg
            .apply_involution(sigma, &alg.apply_involution(sigma, &x).unwrap())
            .unwrap();
        prop_assert_eq!(twice, x);
    }

    #[test]
    fn unitary_test_agrees_with_inverse_route(
        (alg, idx, pick) in small_algebra().prop_flat_map(|alg| {
            let count = alg.unit_count().unwrap();
            (Just(alg), 0..count, any::<prop::sample::Index>())
        })
    ) {
        // u u^sigma = 1 is the inversion-free form of u^sigma = u^-1
        let sigmas = enumerate_involutive_automorphisms(alg.group_spec()).unwrap();
        let sigma = &sigmas[pick.index(sigmas.len())];
        let u = alg.unit_at(idx).unwrap();
        let fast = is_unitary(&alg, &u, sigma).unwrap();
        let via_inverse =
            alg.apply_involution(sigma, &u).unwrap() == alg.inverse(&u).unwrap();
        prop_assert_eq!(fast, via_inverse);
    }

    #[test]
    fn closed_form_matches_convolution_random(
        (alg, xs) in (prop::sample::select(vec![2u64, 4]), prop::sample::select(vec![3u32, 4]))
            .prop_map(|(q, n)| {
                GroupAlgebra::new(FieldSpec::from_order(q).unwrap(), GroupSpec::cyclic(n).unwrap())
                    .unwrap()
            })
            .prop_flat_map(|alg| {
                let x = element_of(&alg);
                (Just(alg), x)
            })
    ) {
        let x = alg.from_coeff_bits(xs).unwrap();
        let sigma4 = named_involution(alg.group_spec(), "sigma4").unwrap();
        let direct = alg.mul(&x, &alg.apply_involution(&sigma4, &x).unwrap()).unwrap();
        prop_assert_eq!(sigma4_product_closed_form(&alg, &x).unwrap(), direct);
    }
}

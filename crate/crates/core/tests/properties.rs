//! Property tests over randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use quantizer_core::group::{FiniteGroup, GroupAlgebraElement, GroupKind};
use quantizer_core::quantizer::{BlockQuantizer, GaugeElement, QuantizerSpace};
use quantizer_core::repr::Dual;
use std::sync::Arc;

fn arb_group() -> impl Strategy<Value = Arc<FiniteGroup>> {
    prop_oneof![
        (1usize..=8).prop_map(|n| FiniteGroup::cyclic(n).unwrap()),
        (1usize..=4).prop_map(|n| FiniteGroup::symmetric(n).unwrap()),
        (2usize..=4).prop_map(|n| FiniteGroup::alternating(n).unwrap()),
        Just(GroupKind::parse("C2xC3").unwrap().build().unwrap()),
        Just(GroupKind::parse("C2xC2").unwrap().build().unwrap()),
    ]
}

fn arb_coeff() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_tables_are_sound(g in arb_group()) {
        prop_assert!(g.check_latin_square());
        prop_assert!(g.check_associativity());
        for x in 0..g.order() {
            prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
            prop_assert_eq!(g.mul(g.identity(), x), x);
            prop_assert_eq!(g.mul(x, g.identity()), x);
        }
        // classes partition the group and are closed under conjugation
        let total: usize = g.conjugacy_classes().iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, g.order());
        for class in g.conjugacy_classes() {
            for &x in class {
                for h in 0..g.order() {
                    let conj = g.mul(g.mul(h, x), g.inv(h));
                    prop_assert!(class.contains(&conj));
                }
            }
        }
    }

    #[test]
    fn convolution_is_associative_and_unital(
        seed in proptest::collection::vec(arb_coeff(), 6),
        seed2 in proptest::collection::vec(arb_coeff(), 6),
        seed3 in proptest::collection::vec(arb_coeff(), 6),
    ) {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a = GroupAlgebraElement::from_coeffs(&s3, seed).unwrap();
        let b = GroupAlgebraElement::from_coeffs(&s3, seed2).unwrap();
        let c = GroupAlgebraElement::from_coeffs(&s3, seed3).unwrap();
        let lhs = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let rhs = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(lhs.diff_norm(&rhs) < 1e-12);
        let one = GroupAlgebraElement::one(&s3);
        prop_assert!(one.multiply(&a).unwrap().approx_eq(&a, 1e-12));
        prop_assert!(a.multiply(&one).unwrap().approx_eq(&a, 1e-12));
    }

    #[test]
    fn fourier_roundtrip_on_supported_groups(
        coeffs in proptest::collection::vec(arb_coeff(), 12),
    ) {
        let a4 = FiniteGroup::alternating(4).unwrap();
        let dual = Dual::new(&a4, 0).unwrap();
        let f = GroupAlgebraElement::from_coeffs(&a4, coeffs).unwrap();
        let image = quantizer_core::fourier::forward(&dual, &f).unwrap();
        let back = quantizer_core::fourier::inverse(&dual, &image).unwrap();
        prop_assert!(back.approx_eq(&f, 1e-10));
    }

    #[test]
    fn gauge_orbits_preserve_the_coherence_verdict(
        l1 in arb_coeff(), l2 in arb_coeff(),
    ) {
        prop_assume!(l1.norm() > 0.1 && l2.norm() > 0.1);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let space = QuantizerSpace::new(&s3, 0).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let mut row_d = BlockQuantizer::identity(space.dual());
        for (a, b, g) in [(1, 1, 0), (1, 2, 2), (2, 1, 2), (2, 2, 0), (2, 2, 2)] {
            row_d.set_scalar(a, b, g, Complex64::new(0.0, 0.0));
        }
        row_d.set_scalar(2, 2, 1, one);
        let gauge = GaugeElement::new(vec![one, l1, l2]).unwrap();
        let moved = space.gauge_apply(&gauge, &row_d).unwrap();
        prop_assert!(moved.max_coherence_residual(&space).unwrap() < 1e-9);
        // and in the algebra picture the gauged element stays a quantizer
        let q = space.algebra_from_blocks(&moved).unwrap();
        prop_assert!(space.check_conditions(&q).unwrap().max() < 1e-9);
    }

    #[test]
    fn twisted_algebras_are_associative_for_valid_cocycles(
        t1 in 0usize..2, t2 in 0usize..2,
    ) {
        use quantizer_core::abelian::*;
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::product(&c2, &c2).unwrap();
        let dual = DualGroup::for_group(&v4).unwrap();
        // random member of the coboundary orbit of the chosen class
        let base = if t1 == 0 { Cocycle::trivial(&dual) } else { sign_bicharacter(&dual).unwrap() };
        let mut l: Vec<Complex64> = (0..4)
            .map(|i| Complex64::new(1.3 + i as f64 * 0.7 + t2 as f64, 0.4 * i as f64 - 0.3))
            .collect();
        l[0] = Complex64::new(1.0, 0.0);
        let mut values = base.values.clone();
        for a in 0..4 {
            for b in 0..4 {
                let f = l[dual.mul(a, b)] / (l[a] * l[b]);
                values[(a, b)] *= f;
            }
        }
        let z = Cocycle { values };
        prop_assert!(cocycle_check(&dual, &z.values) < 1e-9);
        let mult = twisted_group_algebra(&dual, &z);
        prop_assert!(associativity_residual(&mult) < 1e-9);
    }
}

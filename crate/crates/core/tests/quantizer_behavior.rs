//! End-to-end behavior of the quantizer layer: both pictures, the gauge
//! action in both pictures, canonical forms, and the golden block values
//! of the one-parameter family over S3.

use num_complex::Complex64;
use quantizer_core::group::{pair_index, FiniteGroup, GroupAlgebraElement};
use quantizer_core::linalg::CMatrix;
use quantizer_core::quantizer::{canonicalize, BlockQuantizer, GaugeElement, Quantizer, QuantizerSpace};
use quantizer_core::repr::isotypic_projector;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn s3_space() -> QuantizerSpace {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    QuantizerSpace::new(&s3, 0).unwrap()
}

fn s3_blocks(space: &QuantizerSpace, vals: [Complex64; 6]) -> BlockQuantizer {
    let mut b = BlockQuantizer::identity(space.dual());
    let keys = [(1, 1, 0), (1, 2, 2), (2, 1, 2), (2, 2, 0), (2, 2, 1), (2, 2, 2)];
    for (k, v) in keys.iter().zip(vals.iter()) {
        b.set_scalar(k.0, k.1, k.2, *v);
    }
    b
}

#[test]
fn trivial_quantizer_passes_everything() {
    let space = s3_space();
    let one = space.trivial();
    let rep = space.check_conditions(&one).unwrap();
    assert!(rep.max() < 1e-12, "{rep:?}");
    let blocks = space.blocks_from_algebra(&one).unwrap();
    for ((_, _, _), m) in blocks.iter() {
        assert!(m.is_identity(1e-10));
    }
    assert!(blocks.max_coherence_residual(&space).unwrap() < 1e-12);
    // A4 too: the matrix block of the unit is the 2x2 identity
    let a4 = FiniteGroup::alternating(4).unwrap();
    let sp4 = QuantizerSpace::new(&a4, 0).unwrap();
    let blocks4 = sp4.blocks_from_algebra(&sp4.trivial()).unwrap();
    assert!(blocks4.get(3, 3, 3).unwrap().is_identity(1e-10));
}

#[test]
fn noncentral_diagonal_delta_is_not_natural() {
    let space = s3_space();
    let q = Quantizer::new(GroupAlgebraElement::delta(
        space.square(),
        pair_index(6, 1, 1),
    ));
    assert!(space.naturality_residual(&q) > 0.1);
    // and block extraction refuses it
    assert!(space.blocks_from_algebra(&q).is_err());
}

#[test]
fn printed_one_parameter_family_has_blocks_lambda_eq_one_plus_nine_p() {
    // q = 1 + p * sum of the trace kernels of the first two isotypic
    // components of the standard tensor square; its blocks must be
    // (1, 1, 1, 1+9p, 1+9p, 1)
    let space = s3_space();
    let dual = space.dual();
    let d2 = &dual.irreps()[2];
    let pair_diag: Vec<CMatrix> = (0..6).map(|g| d2.matrices[g].kron(&d2.matrices[g])).collect();
    let p0 = isotypic_projector(space.group(), &pair_diag, &dual.irreps()[0]);
    let p1 = isotypic_projector(space.group(), &pair_diag, &dual.irreps()[1]);
    let p = c(0.37, 0.21);
    let mut elem = GroupAlgebraElement::one(space.square());
    for g in 0..6 {
        for h in 0..6 {
            let kron = d2.matrices[g].kron(&d2.matrices[h]);
            let kernel = p0.mul(&kron.adjoint()).trace() + p1.mul(&kron.adjoint()).trace();
            let idx = pair_index(6, g, h);
            let v = elem.coeff(idx) + p * kernel;
            elem.set_coeff(idx, v);
        }
    }
    let blocks = space.blocks_from_algebra(&Quantizer::new(elem)).unwrap();
    let lambda = c(1.0, 0.0) + p * c(9.0, 0.0);
    assert!((blocks.scalar(1, 1, 0) - c(1.0, 0.0)).norm() < 1e-9);
    assert!((blocks.scalar(1, 2, 2) - c(1.0, 0.0)).norm() < 1e-9);
    assert!((blocks.scalar(2, 1, 2) - c(1.0, 0.0)).norm() < 1e-9);
    assert!((blocks.scalar(2, 2, 0) - lambda).norm() < 1e-9);
    assert!((blocks.scalar(2, 2, 1) - lambda).norm() < 1e-9);
    assert!((blocks.scalar(2, 2, 2) - c(1.0, 0.0)).norm() < 1e-9);
}

#[test]
fn picture_roundtrip_on_random_natural_elements() {
    let space = s3_space();
    // random natural element: random blocks assembled
    let mut b = BlockQuantizer::identity(space.dual());
    let vals = [c(0.3, 0.8), c(-1.2, 0.1), c(0.7, -0.4), c(2.0, 0.0), c(0.0, 1.0), c(-0.5, -0.5)];
    b = s3_blocks(&space, vals);
    let q = space.algebra_from_blocks(&b).unwrap();
    let b2 = space.blocks_from_algebra(&q).unwrap();
    for ((a, bb, g), m) in b.iter() {
        assert!(m.diff_norm(b2.get(*a, *bb, *g).unwrap()) < 1e-10);
    }
    let q2 = space.algebra_from_blocks(&b2).unwrap();
    assert!(q.element().diff_norm(q2.element()) < 1e-10);
}

#[test]
fn all_identity_blocks_assemble_to_unit() {
    let space = s3_space();
    let q = space
        .algebra_from_blocks(&BlockQuantizer::identity(space.dual()))
        .unwrap();
    assert!(q.element().diff_norm(&GroupAlgebraElement::one(space.square())) < 1e-12);
}

#[test]
fn block_coherence_localizes_violations() {
    // blocks (q11, q12) = (2, 1), rest 1: the square relation fails at the
    // triple (1, 1, 2)
    let space = s3_space();
    let b = s3_blocks(
        &space,
        [c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
    );
    let per_triple = space.check_coherence_blocks(&b).unwrap();
    let at = |t: (usize, usize, usize)| {
        per_triple
            .iter()
            .find(|(k, _)| *k == t)
            .map(|(_, r)| *r)
            .unwrap()
    };
    assert!(at((1, 1, 2)) > 0.5);
    assert!(at((0, 1, 2)) < 1e-12);
}

#[test]
fn picture_equivalence_of_coherence() {
    let space = s3_space();
    for (vals, coherent) in [
        ([c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], true),
        ([c(1.0, 0.0); 6], true),
        ([c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)], false),
    ] {
        let b = s3_blocks(&space, vals);
        let q = space.algebra_from_blocks(&b).unwrap();
        let conv = space.coherence_residual(&q).unwrap();
        let blk = b.max_coherence_residual(&space).unwrap();
        assert_eq!(conv < 1e-9, coherent, "convolution picture {vals:?}");
        assert_eq!(blk < 1e-9, coherent, "block picture {vals:?}");
    }
}

#[test]
fn gauge_action_in_both_pictures_agrees() {
    let space = s3_space();
    let b = s3_blocks(
        &space,
        [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)],
    );
    let q = space.algebra_from_blocks(&b).unwrap();
    // central unit with Fourier scalars (1, l1, l2)
    let (l1, l2) = (c(0.8, 0.6), c(2.0, -1.0));
    let img = quantizer_core::fourier::FourierImage {
        blocks: vec![
            CMatrix::identity(1),
            CMatrix::identity(1).scale(l1),
            CMatrix::identity(2).scale(l2),
        ],
    };
    let l = quantizer_core::fourier::inverse(space.dual(), &img).unwrap();
    assert!(l.is_central(1e-9));
    let gauged_algebra = space.gauge_apply_algebra(&l, &q).unwrap();
    let gauge = space.gauge_from_unit(&l).unwrap();
    assert!((gauge.scalars[1] - l1).norm() < 1e-9);
    assert!((gauge.scalars[2] - l2).norm() < 1e-9);
    let gauged_blocks = space.gauge_apply(&gauge, &b).unwrap();
    let direct = space.blocks_from_algebra(&gauged_algebra).unwrap();
    for ((a, bb, g), m) in gauged_blocks.iter() {
        assert!(
            m.diff_norm(direct.get(*a, *bb, *g).unwrap()) < 1e-9,
            "block ({a},{bb},{g})"
        );
    }
}

#[test]
fn constant_unit_scales_blocks_by_inverse() {
    let space = s3_space();
    let q = space.trivial();
    let l = GroupAlgebraElement::one(space.group()).scale(c(2.0, 0.0));
    let gauged = space.gauge_apply_algebra(&l, &q).unwrap();
    let blocks = space.blocks_from_algebra(&gauged).unwrap();
    for ((a, b, _), m) in blocks.iter() {
        if *a != 0 && *b != 0 {
            assert!(m.diff_norm(&CMatrix::identity(m.rows()).scale(c(0.5, 0.0))) < 1e-10);
        }
    }
}

#[test]
fn identity_gauge_is_neutral_and_composition_works() {
    let space = s3_space();
    let b = s3_blocks(
        &space,
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    );
    let ones = GaugeElement::ones(3);
    let same = space.gauge_apply(&ones, &b).unwrap();
    assert_eq!(&b, &same);
    let g1 = GaugeElement::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
    let g2 = GaugeElement::new(vec![c(1.0, 0.0), c(-1.0, 0.5), c(3.0, 0.0)]).unwrap();
    let seq = space
        .gauge_apply(&g2, &space.gauge_apply(&g1, &b).unwrap())
        .unwrap();
    let composed = space.gauge_apply(&g1.compose(&g2).unwrap(), &b).unwrap();
    for ((a, bb, g), m) in seq.iter() {
        assert!(m.diff_norm(composed.get(*a, *bb, *g).unwrap()) < 1e-12);
    }
}

#[test]
fn gauge_preserves_coherence_verdict() {
    let space = s3_space();
    let coherent = s3_blocks(
        &space,
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    );
    let incoherent = s3_blocks(
        &space,
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    );
    for (b, verdict) in [(coherent, true), (incoherent, false)] {
        for seed in 0..5u64 {
            let s = seed as f64;
            let g = GaugeElement::new(vec![
                c(1.0, 0.0),
                c(1.0 + 0.3 * s, 0.2 * s - 0.5),
                c(0.4 * s - 1.5, 1.0 + 0.1 * s),
            ])
            .unwrap();
            let gauged = space.gauge_apply(&g, &b).unwrap();
            let resid = gauged.max_coherence_residual(&space).unwrap();
            assert_eq!(resid < 1e-9, verdict, "seed {seed}");
        }
    }
}

#[test]
fn canonicalize_is_idempotent_on_canonical_rows() {
    let space = s3_space();
    // the trivial row and row d are coherent; canonicalize fixes them
    for vals in [
        [c(1.0, 0.0); 6],
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    ] {
        let b = s3_blocks(&space, vals);
        let (canon, _) = canonicalize(&space, &b, 1e-9).unwrap();
        for ((a, bb, g), m) in b.iter() {
            assert!(m.diff_norm(canon.get(*a, *bb, *g).unwrap()) < 1e-9);
        }
    }
}

#[test]
fn canonicalize_recovers_rows_from_gauge_orbits() {
    let space = s3_space();
    let row_d = s3_blocks(
        &space,
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    );
    for seed in 0..10u64 {
        let s = seed as f64 + 1.0;
        let g = GaugeElement::new(vec![
            c(1.0, 0.0),
            c(0.7 * s, 0.3 - 0.2 * s),
            c(1.0 / s, 0.5 * s),
        ])
        .unwrap();
        let moved = space.gauge_apply(&g, &row_d).unwrap();
        let (canon, _) = canonicalize(&space, &moved, 1e-9).unwrap();
        for ((a, bb, gg), m) in row_d.iter() {
            assert!(
                m.diff_norm(canon.get(*a, *bb, *gg).unwrap()) < 1e-8,
                "seed {seed} block ({a},{bb},{gg})"
            );
        }
    }
}

#[test]
fn canonicalize_rejects_incoherent_input() {
    let space = s3_space();
    let b = s3_blocks(
        &space,
        [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)],
    );
    assert!(canonicalize(&space, &b, 1e-9).is_err());
}

#[test]
fn a4_canonicalize_negative_identity_matrix_block() {
    // all scalars one with matrix block -I is coherent and gauge
    // equivalent to the unit; its canonical form is the identity
    let a4 = FiniteGroup::alternating(4).unwrap();
    let space = QuantizerSpace::new(&a4, 0).unwrap();
    let mut b = BlockQuantizer::identity(space.dual());
    b.set(3, 3, 3, CMatrix::identity(2).scale(c(-1.0, 0.0)));
    let q = space.algebra_from_blocks(&b).unwrap();
    assert!(space.check_conditions(&q).unwrap().max() < 1e-9);
    let (canon, _) = canonicalize(&space, &b, 1e-9).unwrap();
    assert!(canon.get(3, 3, 3).unwrap().is_identity(1e-9));
}

#[test]
fn regularity_flag() {
    let space = s3_space();
    let regular = s3_blocks(&space, [c(1.0, 0.0); 6]);
    assert!(space.is_regular(&regular).unwrap());
    let singular = s3_blocks(
        &space,
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    );
    assert!(!space.is_regular(&singular).unwrap());
}

#[test]
fn classified_rows_match_their_trace_kernel_closed_forms() {
    // Each discrete row assembles to (normalization part) +
    // (d_{2,2}/|G|^2) * sum of the isotypic trace kernels it switches on.
    let space = s3_space();
    let dual = space.dual();
    let d2 = &dual.irreps()[2];
    let pair_diag: Vec<CMatrix> = (0..6).map(|g| d2.matrices[g].kron(&d2.matrices[g])).collect();
    let projectors: Vec<CMatrix> = (0..3)
        .map(|i| isotypic_projector(space.group(), &pair_diag, &dual.irreps()[i]))
        .collect();
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let base = space
        .algebra_from_blocks(&s3_blocks(&space, [zero; 6]))
        .unwrap();
    let rows: [(&str, [Complex64; 6], &[usize]); 4] = [
        ("b", [zero, zero, zero, zero, one, one], &[1, 2]),
        ("c", [zero, zero, zero, zero, zero, one], &[2]),
        ("d", [zero, zero, zero, zero, one, zero], &[1]),
        ("e", [one, one, one, one, one, zero], &[0, 1]),
    ];
    for (name, vals, kernels) in rows {
        let assembled = space
            .algebra_from_blocks(&s3_blocks(&space, vals))
            .unwrap();
        // row e also switches on the lower blocks; compare against its own
        // normalization part
        let base_vals = match name {
            "e" => [one, one, one, zero, zero, zero],
            _ => [zero; 6],
        };
        let base_elem = if name == "e" {
            space
                .algebra_from_blocks(&s3_blocks(&space, base_vals))
                .unwrap()
        } else {
            base.clone()
        };
        for g in 0..6 {
            for h in 0..6 {
                let kron = d2.matrices[g].kron(&d2.matrices[h]);
                let mut kernel = c(0.0, 0.0);
                for &i in kernels {
                    kernel += projectors[i].mul(&kron.adjoint()).trace();
                }
                let idx = pair_index(6, g, h);
                let expected = base_elem.element().coeff(idx) + kernel * c(4.0 / 36.0, 0.0);
                let got = assembled.element().coeff(idx);
                assert!(
                    (got - expected).norm() < 1e-9,
                    "row {name} coefficient ({g},{h}): {got} vs {expected}"
                );
            }
        }
    }
}

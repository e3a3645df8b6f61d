//! Ground truth for the classification rows, established by plain
//! convolution in `C[G^3]` and confirmed independently by the per-triple
//! operator equations. The two verification routes must agree on every row.
//!
//! The pathwise scalar system solved by the classification tables is
//! necessary but not sufficient: rows whose maximal-multiplicity sector
//! carries different weights along the two path bases fail the operator
//! equation at exactly that sector. These tests freeze which rows are
//! honest quantizers.

use num_complex::Complex64;
use quantizer_core::group::FiniteGroup;
use quantizer_core::linalg::CMatrix;
use quantizer_core::quantizer::{BlockQuantizer, QuantizerSpace};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn s3_row(space: &QuantizerSpace, vals: [f64; 6]) -> BlockQuantizer {
    let mut b = BlockQuantizer::identity(space.dual());
    let keys = [(1, 1, 0), (1, 2, 2), (2, 1, 2), (2, 2, 0), (2, 2, 1), (2, 2, 2)];
    for (k, v) in keys.iter().zip(vals.iter()) {
        b.set_scalar(k.0, k.1, k.2, c(*v));
    }
    b
}

fn verdicts_agree(space: &QuantizerSpace, b: &BlockQuantizer, expect_coherent: bool, name: &str) {
    let q = space.algebra_from_blocks(b).unwrap();
    let rep = space.check_conditions(&q).unwrap();
    let blk = b.max_coherence_residual(space).unwrap();
    assert!(rep.naturality < 1e-9, "{name}: assembled element must be natural");
    assert!(rep.normalization < 1e-9, "{name}: normalization");
    assert_eq!(rep.coherence < 1e-9, expect_coherent, "{name}: convolution {:.3e}", rep.coherence);
    assert_eq!(blk < 1e-9, expect_coherent, "{name}: blocks {blk:.3e}");
}

#[test]
fn s3_row_truth_table() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let space = QuantizerSpace::new(&s3, 0).unwrap();
    let rows: [(&str, [f64; 6], bool); 9] = [
        ("trivial", [1.0; 6], true),
        ("a(2)", [1.0, 1.0, 1.0, 2.0, 2.0, 1.0], false),
        ("b", [0.0, 0.0, 0.0, 0.0, 1.0, 1.0], false),
        ("c", [0.0, 0.0, 0.0, 0.0, 0.0, 1.0], false),
        ("d", [0.0, 0.0, 0.0, 0.0, 1.0, 0.0], true),
        ("e", [1.0, 1.0, 1.0, 1.0, 1.0, 0.0], false),
        ("f", [0.0; 6], true),
        ("g", [1.0, 1.0, 1.0, 0.0, 0.0, 0.0], true),
        ("pathwise-only (1,1,1,0,0,1)", [1.0, 1.0, 1.0, 0.0, 0.0, 1.0], false),
    ];
    for (name, vals, coherent) in rows {
        verdicts_agree(&space, &s3_row(&space, vals), coherent, name);
    }
    // the sign-twisted row outside the table is a genuine quantizer
    let mut sign = s3_row(&space, [1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    sign.set_scalar(2, 1, 2, c(-1.0));
    verdicts_agree(&space, &sign, true, "sign-twisted");
    // the defect of the failing rows sits in the maximal multiplicity triple
    let b = s3_row(&space, [1.0, 1.0, 1.0, 2.0, 2.0, 1.0]);
    for ((t, r)) in space.check_coherence_blocks(&b).unwrap() {
        if r > 1e-9 {
            assert_eq!(t, (2, 2, 2));
        }
    }
}

fn a4_row(space: &QuantizerSpace, scalars: [f64; 11], matrix: &CMatrix) -> BlockQuantizer {
    let mut b = BlockQuantizer::identity(space.dual());
    let keys = [
        (1, 1, 2),
        (2, 2, 1),
        (1, 2, 0),
        (2, 1, 0),
        (1, 3, 3),
        (3, 1, 3),
        (2, 3, 3),
        (3, 2, 3),
        (3, 3, 0),
        (3, 3, 1),
        (3, 3, 2),
    ];
    for (k, v) in keys.iter().zip(scalars.iter()) {
        b.set_scalar(k.0, k.1, k.2, c(*v));
    }
    b.set(3, 3, 3, matrix.clone());
    b
}

#[test]
fn a4_row_truth_table() {
    let a4 = FiniteGroup::alternating(4).unwrap();
    let space = QuantizerSpace::new(&a4, 0).unwrap();
    let zero2 = CMatrix::zeros(2, 2);
    let id2 = CMatrix::identity(2);
    let neg2 = id2.scale(c(-1.0));
    let mut nilp = CMatrix::zeros(2, 2);
    nilp[(0, 1)] = c(1.0);
    let mut diag12 = CMatrix::zeros(2, 2);
    diag12[(0, 0)] = c(1.0);
    diag12[(1, 1)] = c(2.0);
    let ones = [1.0; 11];
    let mut sc_b = ones;
    sc_b[8] = 0.0;
    sc_b[9] = 0.0;
    sc_b[10] = 0.0;
    let mut sc_c = [0.0; 11];
    sc_c[9] = 1.0;
    let mut sc_d = [0.0; 11];
    sc_d[10] = 1.0;
    let mut sc_e = [0.0; 11];
    sc_e[9] = 1.0;
    sc_e[10] = 1.0;
    let rows: Vec<(&str, [f64; 11], &CMatrix, bool)> = vec![
        ("trivial", ones, &id2, true),
        ("a M=-I", ones, &neg2, true),
        ("a M=diag(1,2)", ones, &diag12, false),
        ("a M=nilpotent", ones, &nilp, false),
        ("b P=0", sc_b, &zero2, true),
        ("b P=nilp", sc_b, &nilp, false),
        ("b P=diag(1,2)", sc_b, &diag12, false),
        ("c P=0", sc_c, &zero2, true),
        ("c P=nilp", sc_c, &nilp, false),
        ("d P=0", sc_d, &zero2, true),
        ("e P=0", sc_e, &zero2, true),
        ("e P=diag(1,2)", sc_e, &diag12, false),
        ("all-zero", [0.0; 11], &zero2, true),
    ];
    for (name, scalars, matrix, coherent) in rows {
        verdicts_agree(&space, &a4_row(&space, scalars, matrix), coherent, name);
    }
    // failing rows fail exactly at the maximal multiplicity triple
    let b = a4_row(&space, ones, &diag12);
    for (t, r) in space.check_coherence_blocks(&b).unwrap() {
        if r > 1e-9 {
            assert_eq!(t, (3, 3, 3));
        }
    }
}

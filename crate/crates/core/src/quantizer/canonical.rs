//! Canonical representatives of block quantizers under the gauge action.
//!
//! The recipe follows the classification proofs: pick gauge scalars that
//! normalize a maximal set of nonzero scalar blocks to 1, then reduce the
//! remaining 2x2 matrix block to a similarity/scale normal form. Square
//! roots take the principal branch, and the leftover sign of a square-root
//! gauge is itself a gauge (scaling the matrix block by -1), so the matrix
//! form is normalized to the half-plane whose first nonzero entry has
//! argument in `[0, pi)`.

use alloc::vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C_ONE};
use crate::ZERO_CUTOFF;

use super::{BlockQuantizer, GaugeElement, QuantizerSpace};

/// Shape of a 2x2 matrix block after similarity reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Canon2x2 {
    Zero,
    /// Diagonalizable, eigenvalues in canonical order.
    Diagonal(Complex64, Complex64),
    /// Nonzero nilpotent.
    Nilpotent,
    /// Defective with a nonzero eigenvalue.
    Jordan(Complex64),
}

/// Similarity normal form with a deterministic eigenvalue order
/// (descending magnitude, then ascending argument).
pub fn canonical_2x2(m: &CMatrix) -> Canon2x2 {
    assert_eq!((m.rows(), m.cols()), (2, 2));
    if m.max_abs() < ZERO_CUTOFF {
        return Canon2x2::Zero;
    }
    let tr = m.trace();
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * Complex64::new(4.0, 0.0)).sqrt();
    let l0 = (tr + disc) * Complex64::new(0.5, 0.0);
    let l1 = (tr - disc) * Complex64::new(0.5, 0.0);
    if (l0 - l1).norm() < ZERO_CUTOFF {
        let lambda = tr * Complex64::new(0.5, 0.0);
        let scalar = CMatrix::identity(2).scale(lambda);
        if m.diff_norm(&scalar) < ZERO_CUTOFF {
            return Canon2x2::Diagonal(lambda, lambda);
        }
        if lambda.norm() < ZERO_CUTOFF {
            return Canon2x2::Nilpotent;
        }
        return Canon2x2::Jordan(lambda);
    }
    let (a, b) = order_eigenvalues(l0, l1);
    Canon2x2::Diagonal(a, b)
}

fn order_eigenvalues(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let key = |z: Complex64| (Float::round(z.norm() * 1e9) as i64, arg_key(z));
    if key(a) >= key(b) {
        (a, b)
    } else {
        (b, a)
    }
}

fn arg_key(z: Complex64) -> i64 {
    if z.norm() < 1e-12 {
        return 0;
    }
    let mut a = Float::atan2(z.im, z.re);
    if a < -1e-12 {
        a += 2.0 * core::f64::consts::PI;
    }
    -(Float::round(a * 1e9) as i64)
}

fn realize(form: Canon2x2) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    match form {
        Canon2x2::Zero => {}
        Canon2x2::Diagonal(a, b) => {
            m[(0, 0)] = a;
            m[(1, 1)] = b;
        }
        Canon2x2::Nilpotent => {
            m[(0, 1)] = C_ONE;
        }
        Canon2x2::Jordan(l) => {
            m[(0, 0)] = l;
            m[(0, 1)] = C_ONE;
            m[(1, 1)] = l;
        }
    }
    m
}

/// Flip the sign of a canonical matrix if needed so the first nonzero
/// entry's argument lies in `[0, pi)`; the sign is a gauge.
fn half_plane(m: CMatrix) -> CMatrix {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m[(i, j)];
            if v.norm() > ZERO_CUTOFF {
                let a = Float::atan2(v.im, v.re);
                if a < -1e-12 || a >= core::f64::consts::PI - 1e-12 {
                    return m.scale(-C_ONE);
                }
                return m;
            }
        }
    }
    m
}

fn principal_sqrt(z: Complex64) -> Complex64 {
    z.sqrt()
}

/// Canonical representative of a coherent block quantizer together with the
/// gauge that reaches it. Supported for the classified groups.
pub fn canonicalize(
    space: &QuantizerSpace,
    b: &BlockQuantizer,
    tol: f64,
) -> Result<(BlockQuantizer, GaugeElement)> {
    let resid = b.max_coherence_residual(space)?;
    if resid > tol {
        return Err(Error::Rejected { context: "canonicalize (coherence gate)".into(), residual: resid });
    }
    let norm = b.normalization_residual();
    if norm > tol {
        return Err(Error::Rejected {
            context: "canonicalize (normalization gate)".into(),
            residual: norm,
        });
    }
    gauge_fix(space, b)
}

/// The gauge-fixing recipe without the coherence gate; the classifier uses
/// it on pathwise-solved rows directly.
pub(crate) fn gauge_fix(
    space: &QuantizerSpace,
    b: &BlockQuantizer,
) -> Result<(BlockQuantizer, GaugeElement)> {
    match space.dual().len() {
        3 => canonicalize_s3(space, b),
        4 => canonicalize_a4(space, b),
        _ => Err(Error::Unsupported(
            "canonical forms are implemented for the S3 and A4 duals".into(),
        )),
    }
}

fn nonzero(v: Complex64) -> bool {
    v.norm() > ZERO_CUTOFF
}

fn canonicalize_s3(
    space: &QuantizerSpace,
    b: &BlockQuantizer,
) -> Result<(BlockQuantizer, GaugeElement)> {
    let q12 = b.scalar(1, 2, 2);
    let q0 = b.scalar(2, 2, 0);
    let q1 = b.scalar(2, 2, 1);
    let q11 = b.scalar(1, 1, 0);
    let q2 = b.scalar(2, 2, 2);
    let l2 = if nonzero(q2) {
        q2
    } else if nonzero(q0) {
        principal_sqrt(q0)
    } else {
        C_ONE
    };
    let l1 = if nonzero(q12) {
        q12
    } else if nonzero(q1) {
        l2 * l2 / q1
    } else if nonzero(q11) {
        principal_sqrt(q11)
    } else {
        C_ONE
    };
    let gauge = GaugeElement::new(vec![C_ONE, l1, l2])?;
    let out = space.gauge_apply(&gauge, b)?;
    Ok((out, gauge))
}

fn canonicalize_a4(
    space: &QuantizerSpace,
    b: &BlockQuantizer,
) -> Result<(BlockQuantizer, GaugeElement)> {
    let q11 = b.scalar(1, 1, 2);
    let q22 = b.scalar(2, 2, 1);
    let q12 = b.scalar(1, 2, 0);
    let q21 = b.scalar(2, 1, 0);
    let q13 = b.scalar(1, 3, 3);
    let q31 = b.scalar(3, 1, 3);
    let q23 = b.scalar(2, 3, 3);
    let q32 = b.scalar(3, 2, 3);
    let q33 = [b.scalar(3, 3, 0), b.scalar(3, 3, 1), b.scalar(3, 3, 2)];
    let m = b
        .get(3, 3, 3)
        .cloned()
        .unwrap_or_else(|| CMatrix::zeros(2, 2));
    let all_nonzero = [q11, q22, q12, q21, q13, q31, q23, q32, q33[0], q33[1], q33[2]]
        .iter()
        .all(|v| nonzero(*v));

    // l3 first: from the isotypic scalars in the regular branch, otherwise
    // from the scale of the matrix block
    let l3 = if all_nonzero {
        principal_sqrt(q33[0])
    } else {
        match canonical_2x2(&m) {
            Canon2x2::Zero | Canon2x2::Nilpotent => {
                // scale is absorbed by the similarity, use l3 for a scalar
                if nonzero(q33[0]) {
                    principal_sqrt(q33[0])
                } else {
                    C_ONE
                }
            }
            Canon2x2::Diagonal(a, _) => a,
            Canon2x2::Jordan(l) => l,
        }
    };
    // l1, l2 greedily from whichever scalars are available
    let mut l1: Option<Complex64> = None;
    let mut l2: Option<Complex64> = None;
    for _ in 0..4 {
        if l1.is_none() {
            if nonzero(q13) {
                l1 = Some(q13);
            } else if nonzero(q31) {
                l1 = Some(q31);
            } else if nonzero(q33[1]) {
                l1 = Some(l3 * l3 / q33[1]);
            } else if let Some(v2) = l2 {
                if nonzero(q11) {
                    l1 = Some(principal_sqrt(v2 * q11));
                } else if nonzero(q12) {
                    l1 = Some(q12 / v2);
                } else if nonzero(q21) {
                    l1 = Some(q21 / v2);
                }
            }
        }
        if l2.is_none() {
            if nonzero(q23) {
                l2 = Some(q23);
            } else if nonzero(q32) {
                l2 = Some(q32);
            } else if nonzero(q33[2]) {
                l2 = Some(l3 * l3 / q33[2]);
            } else if let Some(v1) = l1 {
                if nonzero(q22) {
                    l2 = Some(principal_sqrt(v1 * q22));
                } else if nonzero(q12) {
                    l2 = Some(q12 / v1);
                } else if nonzero(q21) {
                    l2 = Some(q21 / v1);
                }
            }
        }
        if l1.is_some() && l2.is_some() {
            break;
        }
    }
    // coupled fallbacks when neither scalar chain gave a handle
    if l1.is_none() && l2.is_none() {
        if nonzero(q11) && nonzero(q22) {
            // q11 -> l2 q11 / l1^2 and q22 -> l1 q22 / l2^2 both to 1
            let third = Complex64::new(1.0 / 3.0, 0.0);
            l1 = Some((q11 * q11 * q22).powc(third));
            l2 = Some((q11 * q22 * q22).powc(third));
        } else if nonzero(q22) {
            l1 = Some(C_ONE);
            l2 = Some(principal_sqrt(q22));
        } else if nonzero(q11) {
            l2 = Some(C_ONE);
            l1 = Some(principal_sqrt(q11));
        }
    }
    let gauge = GaugeElement::new(vec![
        C_ONE,
        l1.unwrap_or(C_ONE),
        l2.unwrap_or(C_ONE),
        l3,
    ])?;
    let mut out = space.gauge_apply(&gauge, b)?;
    // present the matrix block in similarity normal form
    if let Some(gauged_m) = out.get(3, 3, 3).cloned() {
        let canon = half_plane(realize(canonical_2x2(&gauged_m)));
        out.set(3, 3, 3, canon);
    }
    Ok((out, gauge))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonical_forms_of_2x2() {
        let zero = CMatrix::zeros(2, 2);
        assert_eq!(canonical_2x2(&zero), Canon2x2::Zero);
        let mut n = CMatrix::zeros(2, 2);
        n[(0, 1)] = c(3.0, 1.0);
        assert_eq!(canonical_2x2(&n), Canon2x2::Nilpotent);
        let mut j = CMatrix::zeros(2, 2);
        j[(0, 0)] = c(2.0, 0.0);
        j[(0, 1)] = c(5.0, 0.0);
        j[(1, 1)] = c(2.0, 0.0);
        assert_eq!(canonical_2x2(&j), Canon2x2::Jordan(c(2.0, 0.0)));
        let mut d = CMatrix::zeros(2, 2);
        d[(0, 0)] = c(1.0, 0.0);
        d[(1, 1)] = c(-4.0, 0.0);
        match canonical_2x2(&d) {
            Canon2x2::Diagonal(a, b) => {
                assert!((a - c(-4.0, 0.0)).norm() < 1e-10);
                assert!((b - c(1.0, 0.0)).norm() < 1e-10);
            }
            other => panic!("unexpected {other:?}"),
        }
        // similarity invariance: conjugate the diagonal and recover it
        let p = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 1.0)], vec![c(0.0, 1.0), c(1.0, -1.0)]]);
        let sim = p.mul(&d).mul(&p.inverse().unwrap());
        match canonical_2x2(&sim) {
            Canon2x2::Diagonal(a, b) => {
                assert!((a - c(-4.0, 0.0)).norm() < 1e-8);
                assert!((b - c(1.0, 0.0)).norm() < 1e-8);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

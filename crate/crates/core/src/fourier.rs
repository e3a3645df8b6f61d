//! The noncommutative Fourier transform between `C[G]` (and `C[G x G]`) and
//! direct sums of endomorphism blocks.
//!
//! Forward: `f_hat(a) = sum_g f(g) D_a(g)`, summed in ascending element
//! order so results are bitwise deterministic. Inverse:
//! `f(g) = (1/|G|) sum_a d_a tr(D_a(g)^* f_hat(a))`, the pair version with
//! `1/|G|^2` and `d_a d_b`. With unitary representations the two are exact
//! mutual inverses.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{check_square_of, pair_split, FiniteGroup, GroupAlgebraElement};
use crate::linalg::CMatrix;
use crate::repr::Dual;

/// Fourier image of an element of `C[G]`: one block per irrep.
#[derive(Debug, Clone)]
pub struct FourierImage {
    pub blocks: Vec<CMatrix>,
}

/// Fourier image of an element of `C[G x G]`: one block per irrep pair,
/// `blocks[alpha][beta]` of size `d_alpha * d_beta`.
#[derive(Debug, Clone)]
pub struct PairFourierImage {
    pub blocks: Vec<Vec<CMatrix>>,
}

/// `f_hat(a) = sum_g f(g) D_a(g)` over a single builtin group.
pub fn forward(dual: &Dual, f: &GroupAlgebraElement) -> Result<FourierImage> {
    if f.group() != dual.group() {
        return Err(Error::Mismatch("element group differs from dual group".into()));
    }
    let n = dual.group().order();
    let blocks = dual
        .irreps()
        .iter()
        .map(|irr| {
            let mut b = CMatrix::zeros(irr.dim, irr.dim);
            for g in 0..n {
                let c = f.coeff(g);
                if c != Complex64::new(0.0, 0.0) {
                    b.axpy(c, &irr.matrices[g]);
                }
            }
            b
        })
        .collect();
    Ok(FourierImage { blocks })
}

pub fn inverse(dual: &Dual, image: &FourierImage) -> Result<GroupAlgebraElement> {
    let group = dual.group();
    let n = group.order();
    if image.blocks.len() != dual.len() {
        return Err(Error::Mismatch("block count differs from dual size".into()));
    }
    for (irr, b) in dual.irreps().iter().zip(image.blocks.iter()) {
        if b.rows() != irr.dim || b.cols() != irr.dim {
            return Err(Error::Mismatch("block shape differs from irrep dimension".into()));
        }
    }
    let mut out = GroupAlgebraElement::zero(group);
    let scale = 1.0 / n as f64;
    for g in 0..n {
        let mut c = Complex64::new(0.0, 0.0);
        for (irr, b) in dual.irreps().iter().zip(image.blocks.iter()) {
            let tr = irr.matrices[g].adjoint().mul(b).trace();
            c += Complex64::new(irr.dim as f64 * scale, 0.0) * tr;
        }
        out.set_coeff(g, c);
    }
    Ok(out)
}

/// Pair transform of `f` in `C[G x G]`, with `G` the dual's group.
pub fn pair_forward(dual: &Dual, f: &GroupAlgebraElement) -> Result<PairFourierImage> {
    check_square_of(dual.group(), f.group())?;
    let n = dual.group().order();
    let k = dual.len();
    let mut blocks: Vec<Vec<CMatrix>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    CMatrix::zeros(
                        dual.irreps()[a].dim * dual.irreps()[b].dim,
                        dual.irreps()[a].dim * dual.irreps()[b].dim,
                    )
                })
                .collect()
        })
        .collect();
    for idx in 0..f.group().order() {
        let c = f.coeff(idx);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (g, h) = pair_split(n, idx);
        for a in 0..k {
            for b in 0..k {
                let kron = dual.pair_matrix(a, b, g, h);
                blocks[a][b].axpy(c, &kron);
            }
        }
    }
    Ok(PairFourierImage { blocks })
}

/// Inverse pair transform into `C[G x G]` (the `square` group).
pub fn pair_inverse(
    dual: &Dual,
    square: &Arc<FiniteGroup>,
    image: &PairFourierImage,
) -> Result<GroupAlgebraElement> {
    check_square_of(dual.group(), square)?;
    let n = dual.group().order();
    let k = dual.len();
    if image.blocks.len() != k || image.blocks.iter().any(|r| r.len() != k) {
        return Err(Error::Mismatch("pair block table shape".into()));
    }
    for a in 0..k {
        for b in 0..k {
            let want = dual.irreps()[a].dim * dual.irreps()[b].dim;
            if image.blocks[a][b].rows() != want || image.blocks[a][b].cols() != want {
                return Err(Error::Mismatch("pair block shape differs from d_a d_b".into()));
            }
        }
    }
    let mut out = GroupAlgebraElement::zero(square);
    let scale = 1.0 / (n * n) as f64;
    for g in 0..n {
        for h in 0..n {
            let mut c = Complex64::new(0.0, 0.0);
            for a in 0..k {
                for b in 0..k {
                    let d_ab = dual.irreps()[a].dim * dual.irreps()[b].dim;
                    let tr = dual
                        .pair_matrix(a, b, g, h)
                        .adjoint()
                        .mul(&image.blocks[a][b])
                        .trace();
                    c += Complex64::new(d_ab as f64 * scale, 0.0) * tr;
                }
            }
            out.set_coeff(crate::group::pair_index(n, g, h), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::linalg::C_ONE;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(group: &Arc<FiniteGroup>, rng: &mut ChaCha8Rng) -> GroupAlgebraElement {
        GroupAlgebraElement::from_coeffs(
            group,
            (0..group.order())
                .map(|_| Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn delta_identity_maps_to_identity_blocks() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let dual = Dual::new(&s3, 0).unwrap();
        let image = forward(&dual, &GroupAlgebraElement::one(&s3)).unwrap();
        for b in &image.blocks {
            assert!(b.is_identity(1e-12));
        }
        // and back: all-identity blocks invert to delta_e
        let back = inverse(&dual, &image).unwrap();
        assert!(back.approx_eq(&GroupAlgebraElement::one(&s3), 1e-12));
    }

    #[test]
    fn sum_over_group_concentrates_in_trivial_block() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let dual = Dual::new(&s3, 0).unwrap();
        let all = GroupAlgebraElement::from_coeffs(&s3, alloc::vec![C_ONE; 6]).unwrap();
        let image = forward(&dual, &all).unwrap();
        assert!((image.blocks[0][(0, 0)] - Complex64::new(6.0, 0.0)).norm() < 1e-12);
        assert!(image.blocks[1].max_abs() < 1e-12);
        assert!(image.blocks[2].max_abs() < 1e-12);
    }

    #[test]
    fn basis_elements_map_to_representation_matrices() {
        let a4 = FiniteGroup::alternating(4).unwrap();
        let dual = Dual::new(&a4, 0).unwrap();
        for g in [0usize, 3, 7] {
            let image = forward(&dual, &GroupAlgebraElement::delta(&a4, g)).unwrap();
            for (irr, b) in dual.irreps().iter().zip(image.blocks.iter()) {
                assert!(b.diff_norm(&irr.matrices[g]) < 1e-12);
            }
        }
    }

    #[test]
    fn single_roundtrip_and_multiplicativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for group in [
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::alternating(4).unwrap(),
            FiniteGroup::cyclic(5).unwrap(),
        ] {
            let dual = Dual::new(&group, 0).unwrap();
            for _ in 0..20 {
                let f = random_element(&group, &mut rng);
                let back = inverse(&dual, &forward(&dual, &f).unwrap()).unwrap();
                assert!(back.approx_eq(&f, 1e-10));
            }
            let a = random_element(&group, &mut rng);
            let b = random_element(&group, &mut rng);
            let fa = forward(&dual, &a).unwrap();
            let fb = forward(&dual, &b).unwrap();
            let fab = forward(&dual, &a.multiply(&b).unwrap()).unwrap();
            for k in 0..dual.len() {
                assert!(fab.blocks[k].diff_norm(&fa.blocks[k].mul(&fb.blocks[k])) < 1e-9);
            }
        }
    }

    #[test]
    fn pair_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let sq = FiniteGroup::product(&s3, &s3).unwrap();
        let dual = Dual::new(&s3, 0).unwrap();
        for _ in 0..10 {
            let f = random_element(&sq, &mut rng);
            let image = pair_forward(&dual, &f).unwrap();
            let back = pair_inverse(&dual, &sq, &image).unwrap();
            assert!(back.approx_eq(&f, 1e-10));
        }
        // forward of the unit has identity blocks
        let image = pair_forward(&dual, &GroupAlgebraElement::one(&sq)).unwrap();
        for row in &image.blocks {
            for b in row {
                assert!(b.is_identity(1e-12));
            }
        }
    }

    #[test]
    fn equivariance_bridge() {
        // f commutes with the diagonal iff every pair block commutes with
        // D_a(g) (x) D_b(g)
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let sq = FiniteGroup::product(&s3, &s3).unwrap();
        let dual = Dual::new(&s3, 0).unwrap();
        // a natural element: class sum of the diagonal
        let mut nat = GroupAlgebraElement::zero(&sq);
        for g in 0..6 {
            nat.set_coeff(crate::group::pair_index(6, g, g), C_ONE);
        }
        let image = pair_forward(&dual, &nat).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for g in 0..6 {
                    let m = dual.pair_matrix(a, b, g, g);
                    assert!(
                        image.blocks[a][b].mul(&m).diff_norm(&m.mul(&image.blocks[a][b])) < 1e-9
                    );
                }
            }
        }
        // conversely, a non-natural element has some non-commuting block
        let skew = GroupAlgebraElement::delta(&sq, crate::group::pair_index(6, 1, 0));
        let image = pair_forward(&dual, &skew).unwrap();
        let mut commutes = true;
        'outer: for a in 0..3 {
            for b in 0..3 {
                for g in 0..6 {
                    let m = dual.pair_matrix(a, b, g, g);
                    if image.blocks[a][b].mul(&m).diff_norm(&m.mul(&image.blocks[a][b])) > 1e-6 {
                        commutes = false;
                        break 'outer;
                    }
                }
            }
        }
        assert!(!commutes);
    }
}

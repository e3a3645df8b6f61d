//! Applying a quantizer to objects of the category: deform an equivariant
//! algebra's multiplication, a module action, and transport a braiding.
//!
//! The quantizer acts on a tensor square through the representation:
//! `q = sum q_{g,h} (g,h)` becomes `Q = sum q_{g,h} rho(g) (x) rho(h)`, and
//! the deformed multiplication is `mu o Q`. Coherence of `q` is exactly
//! what keeps deformed multiplications associative, so the constructors
//! only gate on naturality and leave associativity observable.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{pair_split, FiniteGroup, GroupAlgebraElement};
use crate::linalg::{CMatrix, C_ONE, C_ZERO};
use crate::quantizer::{Quantizer, QuantizerSpace};

pub use crate::abelian::associativity_residual;

/// An associative algebra carried by a representation: `mult[k][(i,j)]` is
/// the coefficient of `e_k` in `e_i e_j`.
#[derive(Debug, Clone)]
pub struct EquivariantAlgebra {
    pub rep: Vec<CMatrix>,
    pub mult: Vec<CMatrix>,
}

impl EquivariantAlgebra {
    pub fn dim(&self) -> usize {
        self.rep[0].rows()
    }

    /// Functions on the group with the pointwise product and translation
    /// action: basis of delta functions, `rho(g) e_x = e_{gx}`.
    pub fn functions_on_group(group: &Arc<FiniteGroup>) -> EquivariantAlgebra {
        let n = group.order();
        let rep = (0..n)
            .map(|g| {
                CMatrix::from_fn(n, n, |i, x| {
                    if group.mul(g, x) == i {
                        C_ONE
                    } else {
                        C_ZERO
                    }
                })
            })
            .collect();
        let mut mult = vec![CMatrix::zeros(n, n); n];
        for x in 0..n {
            mult[x][(x, x)] = C_ONE;
        }
        EquivariantAlgebra { rep, mult }
    }

    /// The group algebra of an abelian group graded by its characters:
    /// basis `e_a` per character, `g . e_a = chi_a(g) e_a`,
    /// `e_a e_b = e_{ab}`.
    pub fn character_graded(
        group: &Arc<FiniteGroup>,
        dual: &crate::abelian::DualGroup,
    ) -> Result<EquivariantAlgebra> {
        let irreps = crate::repr::builtin_irreps(group)?;
        if irreps.iter().any(|i| i.dim != 1) {
            return Err(Error::Unsupported("character grading needs an abelian group".into()));
        }
        let k = dual.size();
        let n = group.order();
        let rep = (0..n)
            .map(|g| {
                CMatrix::from_fn(k, k, |i, j| {
                    if i == j {
                        irreps[i].chars[g]
                    } else {
                        C_ZERO
                    }
                })
            })
            .collect();
        let mut mult = vec![CMatrix::zeros(k, k); k];
        for a in 0..k {
            for b in 0..k {
                mult[dual.mul(a, b)][(a, b)] = C_ONE;
            }
        }
        Ok(EquivariantAlgebra { rep, mult })
    }

    /// Largest defect of `g(x y) = g(x) g(y)` over basis pairs and group
    /// elements.
    pub fn equivariance_residual(&self, group: &FiniteGroup) -> f64 {
        let n = self.dim();
        let mut resid = 0.0f64;
        for g in 0..group.order() {
            let rho = &self.rep[g];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        // coefficient of e_k in g(e_i e_j)
                        let mut lhs = C_ZERO;
                        for m in 0..n {
                            lhs += self.mult[m][(i, j)] * rho[(k, m)];
                        }
                        // coefficient of e_k in g(e_i) g(e_j)
                        let mut rhs = C_ZERO;
                        for a in 0..n {
                            let ra = rho[(a, i)];
                            if ra == C_ZERO {
                                continue;
                            }
                            for b in 0..n {
                                rhs += ra * rho[(b, j)] * self.mult[k][(a, b)];
                            }
                        }
                        resid = resid.max((lhs - rhs).norm());
                    }
                }
            }
        }
        resid
    }

    pub fn associativity(&self) -> f64 {
        associativity_residual(&self.mult)
    }
}

/// A left module over an equivariant algebra: `action[k][(a,i)]` is the
/// coefficient of `f_k` in `e_a . f_i`.
#[derive(Debug, Clone)]
pub struct EquivariantModule {
    pub rep: Vec<CMatrix>,
    pub action: Vec<CMatrix>,
}

impl EquivariantModule {
    pub fn dim(&self) -> usize {
        self.rep[0].rows()
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(algebra: &EquivariantAlgebra) -> EquivariantModule {
        let n = algebra.dim();
        let action = (0..n)
            .map(|k| CMatrix::from_fn(n, n, |a, i| algebra.mult[k][(a, i)]))
            .collect();
        EquivariantModule { rep: algebra.rep.clone(), action }
    }

    /// The zero module.
    pub fn zero(algebra: &EquivariantAlgebra, group_order: usize) -> EquivariantModule {
        let _ = algebra;
        EquivariantModule {
            rep: (0..group_order).map(|_| CMatrix::zeros(0, 0)).collect(),
            action: Vec::new(),
        }
    }

    /// Largest defect of `(a b) . x = a . (b x)` in the given algebra.
    pub fn compatibility_residual(&self, algebra: &EquivariantAlgebra) -> f64 {
        let na = algebra.dim();
        let ne = self.dim();
        let mut resid = 0.0f64;
        for a in 0..na {
            for b in 0..na {
                for x in 0..ne {
                    for k in 0..ne {
                        let mut lhs = C_ZERO;
                        for m in 0..na {
                            lhs += algebra.mult[m][(a, b)] * self.action[k][(m, x)];
                        }
                        let mut rhs = C_ZERO;
                        for j in 0..ne {
                            rhs += self.action[j][(b, x)] * self.action[k][(a, j)];
                        }
                        resid = resid.max((lhs - rhs).norm());
                    }
                }
            }
        }
        resid
    }
}

/// The operator by which `q` acts on the tensor product of two
/// representations: `sum q_{g,h} rho(g) (x) sigma(h)`.
pub fn pair_action(
    space: &QuantizerSpace,
    q: &GroupAlgebraElement,
    rho: &[CMatrix],
    sigma: &[CMatrix],
) -> CMatrix {
    let n = space.group().order();
    let (dx, dy) = (rho[0].rows(), sigma[0].rows());
    let mut out = CMatrix::zeros(dx * dy, dx * dy);
    for (idx, c) in q.coeffs().iter().enumerate() {
        if *c == C_ZERO {
            continue;
        }
        let (g, h) = pair_split(n, idx);
        out.axpy(*c, &rho[g].kron(&sigma[h]));
    }
    out
}

fn require_natural(space: &QuantizerSpace, q: &Quantizer, tol: f64) -> Result<()> {
    let resid = space.naturality_residual(q);
    if resid > tol {
        return Err(Error::Rejected { context: "quantize (naturality gate)".into(), residual: resid });
    }
    Ok(())
}

/// Deform the multiplication: `mu_Q = mu o Q_{A,A}`.
pub fn quantize_algebra(
    space: &QuantizerSpace,
    algebra: &EquivariantAlgebra,
    q: &Quantizer,
    tol: f64,
) -> Result<EquivariantAlgebra> {
    require_natural(space, q, tol)?;
    let n = algebra.dim();
    let qop = pair_action(space, q.element(), &algebra.rep, &algebra.rep);
    let mut mult = vec![CMatrix::zeros(n, n); n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut v = C_ZERO;
                for a in 0..n {
                    for b in 0..n {
                        let w = qop[(a * n + b, i * n + j)];
                        if w != C_ZERO {
                            v += algebra.mult[k][(a, b)] * w;
                        }
                    }
                }
                mult[k][(i, j)] = v;
            }
        }
    }
    Ok(EquivariantAlgebra { rep: algebra.rep.clone(), mult })
}

/// Deform a module action: `nu_Q = nu o Q_{A,E}`.
pub fn quantize_module(
    space: &QuantizerSpace,
    algebra: &EquivariantAlgebra,
    module: &EquivariantModule,
    q: &Quantizer,
    tol: f64,
) -> Result<EquivariantModule> {
    require_natural(space, q, tol)?;
    let na = algebra.dim();
    let ne = module.dim();
    if ne == 0 {
        return Ok(module.clone());
    }
    let qop = pair_action(space, q.element(), &algebra.rep, &module.rep);
    let mut action = vec![CMatrix::zeros(na, ne); ne];
    for k in 0..ne {
        for a in 0..na {
            for i in 0..ne {
                let mut v = C_ZERO;
                for b in 0..na {
                    for j in 0..ne {
                        let w = qop[(b * ne + j, a * ne + i)];
                        if w != C_ZERO {
                            v += module.action[k][(b, j)] * w;
                        }
                    }
                }
                action[k][(a, i)] = v;
            }
        }
    }
    Ok(EquivariantModule { rep: module.rep.clone(), action })
}

/// The flip `x (x) y -> y (x) x` between spaces of the given dimensions.
pub fn flip(dx: usize, dy: usize) -> CMatrix {
    CMatrix::from_fn(dy * dx, dx * dy, |r, c| {
        let (y, x) = (r / dx, r % dx);
        let (x2, y2) = (c / dy, c % dy);
        if x == x2 && y == y2 {
            C_ONE
        } else {
            C_ZERO
        }
    })
}

/// Transport a braiding along a regular quantizer:
/// `sigma_Q = Q_{Y,X}^{-1} o sigma o Q_{X,Y}`.
pub fn transport_braiding(
    space: &QuantizerSpace,
    q: &Quantizer,
    rho_x: &[CMatrix],
    rho_y: &[CMatrix],
    sigma: &CMatrix,
    tol: f64,
) -> Result<CMatrix> {
    require_natural(space, q, tol)?;
    let blocks = space.blocks_from_algebra(q)?;
    if !space.is_regular(&blocks)? {
        return Err(Error::Singular(
            "braiding transport needs a regular quantizer".into(),
        ));
    }
    let q_xy = pair_action(space, q.element(), rho_x, rho_y);
    let q_yx = pair_action(space, q.element(), rho_y, rho_x);
    q_yx.solve(&sigma.mul(&q_xy))
}

/// Naturality defect of a candidate braiding between two representations.
pub fn braiding_naturality_residual(
    group: &FiniteGroup,
    rho_x: &[CMatrix],
    rho_y: &[CMatrix],
    sigma: &CMatrix,
) -> f64 {
    let mut resid = 0.0f64;
    for g in 0..group.order() {
        let xy = rho_x[g].kron(&rho_y[g]);
        let yx = rho_y[g].kron(&rho_x[g]);
        resid = resid.max(sigma.mul(&xy).diff_norm(&yx.mul(sigma)));
    }
    resid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{quantizer_from_cocycle, quaternion_cocycle, DualGroup};
    use crate::group::FiniteGroup;
    use crate::quantizer::BlockQuantizer;
    use num_complex::Complex64;

    fn s3_space() -> QuantizerSpace {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        QuantizerSpace::new(&s3, 0).unwrap()
    }

    fn s3_row(space: &QuantizerSpace, vals: [f64; 6]) -> Quantizer {
        let mut b = BlockQuantizer::identity(space.dual());
        let keys = [(1, 1, 0), (1, 2, 2), (2, 1, 2), (2, 2, 0), (2, 2, 1), (2, 2, 2)];
        for (k, v) in keys.iter().zip(vals.iter()) {
            b.set_scalar(k.0, k.1, k.2, Complex64::new(*v, 0.0));
        }
        space.algebra_from_blocks(&b).unwrap()
    }

    #[test]
    fn trivial_quantizer_preserves_structure_exactly() {
        let space = s3_space();
        let alg = EquivariantAlgebra::functions_on_group(space.group());
        assert!(alg.equivariance_residual(space.group()) < 1e-12);
        assert!(alg.associativity() < 1e-12);
        let deformed = quantize_algebra(&space, &alg, &space.trivial(), 1e-9).unwrap();
        for k in 0..alg.dim() {
            assert!(deformed.mult[k].diff_norm(&alg.mult[k]) < 1e-10);
        }
    }

    #[test]
    fn coherent_row_deforms_associatively_incoherent_does_not() {
        let space = s3_space();
        let alg = EquivariantAlgebra::functions_on_group(space.group());
        // row d is a quantizer: the deformed pointwise algebra stays
        // associative (exhaustive over all basis triples)
        let qd = s3_row(&space, [0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let dd = quantize_algebra(&space, &alg, &qd, 1e-9).unwrap();
        assert!(dd.equivariance_residual(space.group()) < 1e-9);
        assert!(dd.associativity() < 1e-9);
        // row c fails the coherence condition and the deformation feels it
        let qc = s3_row(&space, [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let dc = quantize_algebra(&space, &alg, &qc, 1e-9).unwrap();
        assert!(dc.associativity() > 1e-3);
    }

    #[test]
    fn non_natural_quantizer_rejected() {
        let space = s3_space();
        let alg = EquivariantAlgebra::functions_on_group(space.group());
        // delta at (g, g) for non-central g is not natural
        let idx = crate::group::pair_index(6, 1, 1);
        let q = Quantizer::new(GroupAlgebraElement::delta(space.square(), idx));
        assert!(space.naturality_residual(&q) > 0.1);
        assert!(quantize_algebra(&space, &alg, &q, 1e-9).is_err());
    }

    #[test]
    fn quaternions_from_quantized_character_algebra() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::product(&c2, &c2).unwrap();
        let space = QuantizerSpace::new(&v4, 0).unwrap();
        let dual = DualGroup::for_group(&v4).unwrap();
        let alg = EquivariantAlgebra::character_graded(&v4, &dual).unwrap();
        assert!(alg.equivariance_residual(space.group()) < 1e-12);
        let quat = quaternion_cocycle(&dual).unwrap();
        let q = quantizer_from_cocycle(&space, &dual, &quat, 1e-9).unwrap();
        let deformed = quantize_algebra(&space, &alg, &q, 1e-9).unwrap();
        // matches the twisted group algebra structure constants
        let twisted = crate::abelian::twisted_group_algebra(&dual, &quat);
        for k in 0..4 {
            assert!(deformed.mult[k].diff_norm(&twisted[k]) < 1e-9);
        }
        assert!(deformed.associativity() < 1e-9);
    }

    #[test]
    fn module_deformation_compatibility() {
        let space = s3_space();
        let alg = EquivariantAlgebra::functions_on_group(space.group());
        let module = EquivariantModule::regular(&alg);
        assert!(module.compatibility_residual(&alg) < 1e-12);
        let qd = s3_row(&space, [0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let dalg = quantize_algebra(&space, &alg, &qd, 1e-9).unwrap();
        let dmod = quantize_module(&space, &alg, &module, &qd, 1e-9).unwrap();
        assert!(dmod.compatibility_residual(&dalg) < 1e-9);
        // zero module stays zero
        let z = EquivariantModule::zero(&alg, space.group().order());
        let dz = quantize_module(&space, &alg, &z, &qd, 1e-9).unwrap();
        assert_eq!(dz.dim(), 0);
    }

    #[test]
    fn braiding_transport() {
        let space = s3_space();
        let e2 = &space.dual().irreps()[2];
        let sigma = flip(2, 2);
        assert!(braiding_naturality_residual(space.group(), &e2.matrices, &e2.matrices, &sigma) < 1e-12);
        // trivial quantizer leaves the flip unchanged
        let t = transport_braiding(&space, &space.trivial(), &e2.matrices, &e2.matrices, &sigma, 1e-9)
            .unwrap();
        assert!(t.diff_norm(&sigma) < 1e-10);
        // a symmetric regular row commutes with the flip and fixes it
        let qa = s3_row(&space, [1.0, 1.0, 1.0, 2.0, 2.0, 1.0]);
        let ta = transport_braiding(&space, &qa, &e2.matrices, &e2.matrices, &sigma, 1e-9).unwrap();
        assert!(braiding_naturality_residual(space.group(), &e2.matrices, &e2.matrices, &ta) < 1e-9);
        assert!(ta.diff_norm(&sigma) < 1e-9);
        // an element with asymmetric cross blocks genuinely rescales the
        // flip between different irreps
        let e1 = &space.dual().irreps()[1];
        let cross = flip(1, 2);
        let qs = s3_row(&space, [1.0, 2.0, 3.0, 1.0, 1.0, 1.0]);
        let t2 = transport_braiding(&space, &qs, &e1.matrices, &e2.matrices, &cross, 1e-9).unwrap();
        assert!(braiding_naturality_residual(space.group(), &e1.matrices, &e2.matrices, &t2) < 1e-9);
        assert!(t2.diff_norm(&cross) > 1e-3);
        assert!(t2.scale(Complex64::new(1.5, 0.0)).diff_norm(&cross) < 1e-9);
        // row d has singular blocks and is rejected
        let qd = s3_row(&space, [0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(transport_braiding(&space, &qd, &e2.matrices, &e2.matrices, &sigma, 1e-9).is_err());
    }
}

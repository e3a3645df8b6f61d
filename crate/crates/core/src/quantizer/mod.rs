//! The quantizer data model in both pictures, the defining conditions, the
//! quadratic block system, the gauge action, canonicalization and the
//! classification for `S3` and `A4`.
//!
//! A quantizer lives in `C[G x G]`. Its Fourier transform is a family of
//! operators on the `E_a (x) E_b`, each block diagonal over the adapted
//! basis with a `c x c` matrix per irrep appearing with multiplicity `c`.
//! All verification happens twice: by plain convolution in `C[G^3]` and by
//! operator equations on triple tensor products; the two agree because the
//! Fourier transform is a faithful algebra map.

mod canonical;
mod classify;
mod relations;

pub use canonical::{canonical_2x2, canonicalize, Canon2x2};
pub use classify::{
    classify, Classification, Entry, FamilyVariant, MatrixForm, QuantizerFamily, UncatalogedRow,
};
pub use relations::{extract_relations, symbol_name, Monomial, Relation, Symbol};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{pair_forward, pair_inverse, PairFourierImage};
use crate::group::{pair_index, pair_split, FiniteGroup, GroupAlgebraElement};
use crate::linalg::{CMatrix, C_ONE, C_ZERO};
use crate::repr::Dual;
use crate::{DEFAULT_TOLERANCE, ZERO_CUTOFF};

/// An element of `C[G x G]` acting on tensor products of `G`-modules.
#[derive(Debug, Clone)]
pub struct Quantizer {
    element: GroupAlgebraElement,
}

impl Quantizer {
    pub fn new(element: GroupAlgebraElement) -> Quantizer {
        Quantizer { element }
    }

    pub fn element(&self) -> &GroupAlgebraElement {
        &self.element
    }

    pub fn into_element(self) -> GroupAlgebraElement {
        self.element
    }
}

/// Residuals of the three defining conditions; a quantizer is accepted when
/// all three are below tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionReport {
    pub coherence: f64,
    pub naturality: f64,
    pub normalization: f64,
}

impl ConditionReport {
    pub fn max(&self) -> f64 {
        self.coherence.max(self.naturality).max(self.normalization)
    }

    pub fn accepted(&self, tol: f64) -> bool {
        self.max() < tol
    }
}

/// Shared context for all quantizer computations over one group: the group,
/// its square and cube (materialized multiplication tables), and the dual
/// with all pairwise adapted bases.
#[derive(Debug)]
pub struct QuantizerSpace {
    group: Arc<FiniteGroup>,
    square: Arc<FiniteGroup>,
    cube: Arc<FiniteGroup>,
    dual: Dual,
}

impl QuantizerSpace {
    pub fn new(group: &Arc<FiniteGroup>, seed: u64) -> Result<QuantizerSpace> {
        let dual = Dual::new(group, seed)?;
        let square = FiniteGroup::product(group, group)?;
        let cube = FiniteGroup::product(&square, group)?;
        Ok(QuantizerSpace { group: group.clone(), square, cube, dual })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn square(&self) -> &Arc<FiniteGroup> {
        &self.square
    }

    pub fn cube(&self) -> &Arc<FiniteGroup> {
        &self.cube
    }

    pub fn dual(&self) -> &Dual {
        &self.dual
    }

    /// The unit quantizer `q = 1`.
    pub fn trivial(&self) -> Quantizer {
        Quantizer::new(GroupAlgebraElement::one(&self.square))
    }

    fn cube_index(&self, g: usize, h: usize, k: usize) -> usize {
        let n = self.group.order();
        pair_index(n, pair_index(n, g, h), k)
    }

    /// `q -> 1 (x) q` in `C[G^3]`.
    pub fn embed_one_left(&self, q: &GroupAlgebraElement) -> GroupAlgebraElement {
        let n = self.group.order();
        let e = self.group.identity();
        let mut out = GroupAlgebraElement::zero(&self.cube);
        for (idx, c) in q.coeffs().iter().enumerate() {
            if *c != C_ZERO {
                let (g, h) = pair_split(n, idx);
                out.set_coeff(self.cube_index(e, g, h), *c);
            }
        }
        out
    }

    /// `q -> q (x) 1` in `C[G^3]`.
    pub fn embed_one_right(&self, q: &GroupAlgebraElement) -> GroupAlgebraElement {
        let n = self.group.order();
        let e = self.group.identity();
        let mut out = GroupAlgebraElement::zero(&self.cube);
        for (idx, c) in q.coeffs().iter().enumerate() {
            if *c != C_ZERO {
                let (g, h) = pair_split(n, idx);
                out.set_coeff(self.cube_index(g, h, e), *c);
            }
        }
        out
    }

    /// `(1 (x) Delta)(q)`: `(g, h) -> (g, h, h)`.
    pub fn embed_one_delta(&self, q: &GroupAlgebraElement) -> GroupAlgebraElement {
        let n = self.group.order();
        let mut out = GroupAlgebraElement::zero(&self.cube);
        for (idx, c) in q.coeffs().iter().enumerate() {
            if *c != C_ZERO {
                let (g, h) = pair_split(n, idx);
                out.set_coeff(self.cube_index(g, h, h), *c);
            }
        }
        out
    }

    /// `(Delta (x) 1)(q)`: `(g, h) -> (g, g, h)`.
    pub fn embed_delta_one(&self, q: &GroupAlgebraElement) -> GroupAlgebraElement {
        let n = self.group.order();
        let mut out = GroupAlgebraElement::zero(&self.cube);
        for (idx, c) in q.coeffs().iter().enumerate() {
            if *c != C_ZERO {
                let (g, h) = pair_split(n, idx);
                out.set_coeff(self.cube_index(g, g, h), *c);
            }
        }
        out
    }

    /// Largest violation of `q . Delta(g) = Delta(g) . q` over all `g`,
    /// computed by coefficient permutation rather than full convolution.
    pub fn naturality_residual(&self, q: &Quantizer) -> f64 {
        let n = self.group.order();
        let coeffs = q.element.coeffs();
        let mut resid = 0.0f64;
        for g in 0..n {
            let ginv = self.group.inv(g);
            for x in 0..n {
                let xg = self.group.mul(x, ginv);
                let gx = self.group.mul(ginv, x);
                for y in 0..n {
                    let right = coeffs[pair_index(n, xg, self.group.mul(y, ginv))];
                    let left = coeffs[pair_index(n, gx, self.group.mul(ginv, y))];
                    resid = resid.max((right - left).norm());
                }
            }
        }
        resid
    }

    /// Largest deviation of the normalization blocks from the identity.
    pub fn normalization_residual(&self, q: &Quantizer) -> Result<f64> {
        let image = pair_forward(&self.dual, &q.element)?;
        let mut resid = 0.0f64;
        for a in 0..self.dual.len() {
            let d = self.dual.irreps()[a].dim;
            resid = resid.max(image.blocks[0][a].diff_norm(&CMatrix::identity(d)));
            resid = resid.max(image.blocks[a][0].diff_norm(&CMatrix::identity(d)));
        }
        Ok(resid)
    }

    /// Coherence defect `(1 (x) Delta)(q)(1 (x) q) - (Delta (x) 1)(q)(q (x) 1)`
    /// by plain convolution in `C[G^3]`.
    pub fn coherence_residual(&self, q: &Quantizer) -> Result<f64> {
        let lhs = self
            .embed_one_delta(&q.element)
            .multiply(&self.embed_one_left(&q.element))?;
        let rhs = self
            .embed_delta_one(&q.element)
            .multiply(&self.embed_one_right(&q.element))?;
        Ok(lhs.diff_norm(&rhs))
    }

    /// The three condition residuals.
    pub fn check_conditions(&self, q: &Quantizer) -> Result<ConditionReport> {
        Ok(ConditionReport {
            coherence: self.coherence_residual(q)?,
            naturality: self.naturality_residual(q),
            normalization: self.normalization_residual(q)?,
        })
    }

    /// Read off the multiplicity-space blocks of a natural quantizer.
    pub fn blocks_from_algebra(&self, q: &Quantizer) -> Result<BlockQuantizer> {
        let image = pair_forward(&self.dual, &q.element)?;
        self.blocks_from_pair_image(&image)
    }

    fn blocks_from_pair_image(&self, image: &PairFourierImage) -> Result<BlockQuantizer> {
        let k = self.dual.len();
        let mut blocks = BTreeMap::new();
        let mut worst = 0.0f64;
        for a in 0..k {
            for b in 0..k {
                let deco = self.dual.decomposition(a, b);
                let (parts, resid) = deco.extract_blocks(&image.blocks[a][b]);
                worst = worst.max(resid);
                for (gamma, part) in parts.into_iter().enumerate() {
                    if let Some(m) = part {
                        blocks.insert((a, b, gamma), m);
                    }
                }
            }
        }
        if worst > ZERO_CUTOFF {
            return Err(Error::Numerical {
                context: "naturality violation while extracting blocks".into(),
                residual: worst,
                tolerance: ZERO_CUTOFF,
            });
        }
        Ok(BlockQuantizer { blocks, dual_size: k })
    }

    /// Assemble the group algebra element carried by a block family; the
    /// result is natural by construction.
    pub fn algebra_from_blocks(&self, b: &BlockQuantizer) -> Result<Quantizer> {
        let k = self.dual.len();
        if b.dual_size != k {
            return Err(Error::Mismatch("block family indexed by a different dual".into()));
        }
        let mut pair_blocks: Vec<Vec<CMatrix>> = Vec::with_capacity(k);
        for a in 0..k {
            let mut row = Vec::with_capacity(k);
            for bb in 0..k {
                row.push(self.assembled_pair_operator(b, a, bb)?);
            }
            pair_blocks.push(row);
        }
        let image = PairFourierImage { blocks: pair_blocks };
        let element = pair_inverse(&self.dual, &self.square, &image)?;
        Ok(Quantizer::new(element))
    }

    /// Operator form of the coherence condition per irrep triple. For each
    /// `(a, b, c)` both sides are built as operators on
    /// `E_a (x) E_b (x) E_c` and compared entrywise.
    pub fn check_coherence_blocks(
        &self,
        b: &BlockQuantizer,
    ) -> Result<Vec<((usize, usize, usize), f64)>> {
        let k = self.dual.len();
        if b.dual_size != k {
            return Err(Error::Mismatch("block family indexed by a different dual".into()));
        }
        let mut assembled: Vec<Vec<CMatrix>> = Vec::with_capacity(k);
        for a in 0..k {
            let mut row = Vec::with_capacity(k);
            for bb in 0..k {
                row.push(self.assembled_pair_operator(b, a, bb)?);
            }
            assembled.push(row);
        }
        let dims: Vec<usize> = self.dual.irreps().iter().map(|i| i.dim).collect();
        let mut out = Vec::new();
        for alpha in 0..k {
            for beta in 0..k {
                for gamma in 0..k {
                    let (da, dc) = (dims[alpha], dims[gamma]);
                    let inner_l = CMatrix::identity(da).kron(&assembled[beta][gamma]);
                    let outer_l = self.lift_left(&assembled, alpha, beta, gamma);
                    let lhs = outer_l.mul(&inner_l);
                    let inner_r = assembled[alpha][beta].kron(&CMatrix::identity(dc));
                    let outer_r = self.lift_right(&assembled, alpha, beta, gamma);
                    let rhs = outer_r.mul(&inner_r);
                    out.push(((alpha, beta, gamma), lhs.diff_norm(&rhs)));
                }
            }
        }
        Ok(out)
    }

    /// `nu^* (blockdiag q^gamma (x) I) nu` for the pair `(a, b)`.
    pub fn assembled_pair_operator(
        &self,
        b: &BlockQuantizer,
        a: usize,
        bb: usize,
    ) -> Result<CMatrix> {
        let deco = self.dual.decomposition(a, bb);
        let k = self.dual.len();
        let mut parts: Vec<Option<CMatrix>> = vec![None; k];
        for gamma in 0..k {
            let c = deco.mults[gamma];
            if c == 0 {
                continue;
            }
            match b.blocks.get(&(a, bb, gamma)) {
                Some(m) => {
                    if m.rows() != c || m.cols() != c {
                        return Err(Error::Mismatch(format!(
                            "block ({a},{bb},{gamma}) must be {c}x{c}"
                        )));
                    }
                    parts[gamma] = Some(m.clone());
                }
                None => parts[gamma] = Some(b.default_block(a, bb, c)),
            }
        }
        Ok(deco.assemble_blocks(&parts))
    }

    /// Operator applying the pair blocks `q_{alpha, eta}` across the
    /// decomposition of `E_beta (x) E_gamma`.
    fn lift_left(
        &self,
        assembled: &[Vec<CMatrix>],
        alpha: usize,
        beta: usize,
        gamma: usize,
    ) -> CMatrix {
        let dims: Vec<usize> = self.dual.irreps().iter().map(|i| i.dim).collect();
        let da = dims[alpha];
        let deco = self.dual.decomposition(beta, gamma);
        let inner_dim = deco.total_dim();
        let total = da * inner_dim;
        let mut block = CMatrix::zeros(total, total);
        for eta in 0..self.dual.len() {
            let c = deco.mults[eta];
            if c == 0 {
                continue;
            }
            let de = dims[eta];
            let off = deco.block_offset(eta);
            let q_ae = &assembled[alpha][eta];
            for copy in 0..c {
                for a1 in 0..da {
                    for m1 in 0..de {
                        let row = a1 * inner_dim + off + copy * de + m1;
                        for a2 in 0..da {
                            for m2 in 0..de {
                                let col = a2 * inner_dim + off + copy * de + m2;
                                block[(row, col)] = q_ae[(a1 * de + m1, a2 * de + m2)];
                            }
                        }
                    }
                }
            }
        }
        let rot = CMatrix::identity(da).kron(&deco.basis);
        rot.adjoint().mul(&block).mul(&rot)
    }

    /// Mirror image of [`Self::lift_left`] for `(E_alpha (x) E_beta) (x) E_gamma`.
    fn lift_right(
        &self,
        assembled: &[Vec<CMatrix>],
        alpha: usize,
        beta: usize,
        gamma: usize,
    ) -> CMatrix {
        let dims: Vec<usize> = self.dual.irreps().iter().map(|i| i.dim).collect();
        let dc = dims[gamma];
        let deco = self.dual.decomposition(alpha, beta);
        let inner_dim = deco.total_dim();
        let total = inner_dim * dc;
        let mut block = CMatrix::zeros(total, total);
        for xi in 0..self.dual.len() {
            let c = deco.mults[xi];
            if c == 0 {
                continue;
            }
            let dx = dims[xi];
            let off = deco.block_offset(xi);
            let q_xc = &assembled[xi][gamma];
            for copy in 0..c {
                for m1 in 0..dx {
                    for c1 in 0..dc {
                        let row = (off + copy * dx + m1) * dc + c1;
                        for m2 in 0..dx {
                            for c2 in 0..dc {
                                let col = (off + copy * dx + m2) * dc + c2;
                                block[(row, col)] = q_xc[(m1 * dc + c1, m2 * dc + c2)];
                            }
                        }
                    }
                }
            }
        }
        let rot = deco.basis.kron(&CMatrix::identity(dc));
        rot.adjoint().mul(&block).mul(&rot)
    }

    /// A quantizer is regular when every assembled pair operator is
    /// invertible.
    pub fn is_regular(&self, b: &BlockQuantizer) -> Result<bool> {
        let k = self.dual.len();
        for a in 0..k {
            for bb in 0..k {
                let op = self.assembled_pair_operator(b, a, bb)?;
                if op.smallest_singular_value() <= ZERO_CUTOFF {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Gauge action in the block picture:
    /// `q^gamma_{a,b} -> l_gamma l_a^{-1} l_b^{-1} q^gamma_{a,b}`.
    pub fn gauge_apply(&self, l: &GaugeElement, b: &BlockQuantizer) -> Result<BlockQuantizer> {
        l.validate(self.dual.len())?;
        let mut blocks = BTreeMap::new();
        for ((a, bb, gamma), m) in &b.blocks {
            let factor = l.scalars[*gamma] / (l.scalars[*a] * l.scalars[*bb]);
            blocks.insert((*a, *bb, *gamma), m.scale(factor));
        }
        Ok(BlockQuantizer { blocks, dual_size: b.dual_size })
    }

    /// Gauge action in the algebra picture: `q -> Delta(l) . q . (l^-1 (x) l^-1)`
    /// for a central unit `l`.
    pub fn gauge_apply_algebra(
        &self,
        l: &GroupAlgebraElement,
        q: &Quantizer,
    ) -> Result<Quantizer> {
        if l.group() != &self.group {
            return Err(Error::Mismatch("gauge unit over the wrong group".into()));
        }
        if !l.is_central(DEFAULT_TOLERANCE) {
            return Err(Error::Unsupported(
                "gauge action by a non-central unit; only central units act blockwise".into(),
            ));
        }
        let linv = l.invert()?;
        let dl = l.diagonal_embed(&self.square)?;
        let lt = GroupAlgebraElement::tensor_embed(&linv, &linv, &self.square)?;
        let element = dl.multiply(&q.element)?.multiply(&lt)?;
        Ok(Quantizer::new(element))
    }

    /// The Fourier scalars of a central unit, as a gauge element.
    pub fn gauge_from_unit(&self, l: &GroupAlgebraElement) -> Result<GaugeElement> {
        let image = crate::fourier::forward(&self.dual, l)?;
        let mut scalars = Vec::with_capacity(self.dual.len());
        for (idx, b) in image.blocks.iter().enumerate() {
            let d = b.rows();
            let s = b.trace() / Complex64::new(d as f64, 0.0);
            if b.diff_norm(&CMatrix::identity(d).scale(s)) > 1e-8 {
                return Err(Error::Unsupported(format!(
                    "unit is not scalar on irrep {idx}; not central"
                )));
            }
            scalars.push(s);
        }
        GaugeElement::new(scalars)
    }
}

/// The block picture of a quantizer: for each `(alpha, beta)` and each
/// `gamma` appearing with multiplicity `c`, a `c x c` matrix on the
/// multiplicity space. Missing entries default to the normalization value
/// (identity for pairs with a trivial factor) or zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockQuantizer {
    blocks: BTreeMap<(usize, usize, usize), CMatrix>,
    dual_size: usize,
}

impl BlockQuantizer {
    pub fn empty(dual_size: usize) -> BlockQuantizer {
        BlockQuantizer { blocks: BTreeMap::new(), dual_size }
    }

    /// All blocks the identity: the trivial quantizer.
    pub fn identity(dual: &Dual) -> BlockQuantizer {
        let k = dual.len();
        let mut blocks = BTreeMap::new();
        for a in 0..k {
            for b in 0..k {
                for (gamma, &c) in dual.clebsch_gordan(a, b).iter().enumerate() {
                    if c > 0 {
                        blocks.insert((a, b, gamma), CMatrix::identity(c));
                    }
                }
            }
        }
        BlockQuantizer { blocks, dual_size: k }
    }

    fn default_block(&self, a: usize, b: usize, c: usize) -> CMatrix {
        if a == 0 || b == 0 {
            CMatrix::identity(c)
        } else {
            CMatrix::zeros(c, c)
        }
    }

    pub fn dual_size(&self) -> usize {
        self.dual_size
    }

    pub fn get(&self, a: usize, b: usize, gamma: usize) -> Option<&CMatrix> {
        self.blocks.get(&(a, b, gamma))
    }

    /// Scalar value of a 1x1 block, with defaults applied.
    pub fn scalar(&self, a: usize, b: usize, gamma: usize) -> Complex64 {
        match self.blocks.get(&(a, b, gamma)) {
            Some(m) => m[(0, 0)],
            None => {
                if a == 0 || b == 0 {
                    C_ONE
                } else {
                    C_ZERO
                }
            }
        }
    }

    pub fn set(&mut self, a: usize, b: usize, gamma: usize, m: CMatrix) {
        self.blocks.insert((a, b, gamma), m);
    }

    pub fn set_scalar(&mut self, a: usize, b: usize, gamma: usize, v: Complex64) {
        let mut m = CMatrix::zeros(1, 1);
        m[(0, 0)] = v;
        self.blocks.insert((a, b, gamma), m);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &CMatrix)> {
        self.blocks.iter()
    }

    /// Normalization residual in the block picture:
    /// `q^a_{a,0} = q^a_{0,a} = 1`.
    pub fn normalization_residual(&self) -> f64 {
        let mut resid = 0.0f64;
        for a in 0..self.dual_size {
            resid = resid.max((self.scalar(0, a, a) - C_ONE).norm());
            resid = resid.max((self.scalar(a, 0, a) - C_ONE).norm());
        }
        resid
    }

    /// Worst coherence residual over all irrep triples.
    pub fn max_coherence_residual(&self, space: &QuantizerSpace) -> Result<f64> {
        Ok(space
            .check_coherence_blocks(self)?
            .into_iter()
            .fold(0.0f64, |m, (_, r)| m.max(r)))
    }
}

/// Per-irrep nonzero scalars with `l_0 = 1`; the Fourier picture of a
/// central unit of `C[G]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeElement {
    pub scalars: Vec<Complex64>,
}

impl GaugeElement {
    pub fn new(scalars: Vec<Complex64>) -> Result<GaugeElement> {
        let g = GaugeElement { scalars };
        g.validate(g.scalars.len())?;
        Ok(g)
    }

    pub fn ones(k: usize) -> GaugeElement {
        GaugeElement { scalars: vec![C_ONE; k] }
    }

    fn validate(&self, dual_size: usize) -> Result<()> {
        if self.scalars.len() != dual_size {
            return Err(Error::Mismatch("gauge scalar count differs from dual size".into()));
        }
        if (self.scalars[0] - C_ONE).norm() > 1e-12 {
            return Err(Error::Invalid("gauge scalar at the trivial irrep must be 1".into()));
        }
        if self.scalars.iter().any(|s| s.norm() < 1e-12) {
            return Err(Error::Invalid("gauge scalars must be nonzero".into()));
        }
        Ok(())
    }

    /// Composition of gauges (pointwise product of scalars).
    pub fn compose(&self, other: &GaugeElement) -> Result<GaugeElement> {
        if self.scalars.len() != other.scalars.len() {
            return Err(Error::Mismatch("gauge size mismatch".into()));
        }
        GaugeElement::new(
            self.scalars
                .iter()
                .zip(other.scalars.iter())
                .map(|(a, b)| a * b)
                .collect(),
        )
    }
}

//! Unitary irreducible representations of the builtin groups, characters,
//! Clebsch-Gordan data, isotypic projectors and adapted tensor-product bases.
//!
//! Supported groups: cyclic groups and products of abelian builtins, `S1`,
//! `S2`, `S3`, `A1..A3`, `A4`. The dual enumeration is frozen per group:
//! the trivial representation comes first, then (for `S3`) sign and the
//! standard 2-dimensional representation, and (for `A4`) the two nontrivial
//! 1-dimensional representations followed by the 3-dimensional one.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupKind};
use crate::linalg::{orthonormalize, CMatrix, C_ONE, C_ZERO};

const PI: f64 = core::f64::consts::PI;

/// A unitary irreducible representation given by explicit matrices.
#[derive(Debug, Clone)]
pub struct Irrep {
    /// Position in the frozen dual enumeration.
    pub label: usize,
    pub dim: usize,
    /// One matrix per group element, indexed like the group.
    pub matrices: Vec<CMatrix>,
    /// Character value per group element.
    pub chars: Vec<Complex64>,
}

impl Irrep {
    fn new(label: usize, matrices: Vec<CMatrix>) -> Irrep {
        let dim = matrices[0].rows();
        let chars = matrices.iter().map(|m| m.trace()).collect();
        Irrep { label, dim, matrices, chars }
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn character(&self, g: usize) -> Complex64 {
        self.chars[g]
    }

    /// Homomorphism + unitarity + irreducibility residuals.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let n = group.order();
        let mut resid = 0.0f64;
        for g in 0..n {
            let u = self.matrices[g].mul(&self.matrices[g].adjoint());
            resid = resid.max(u.diff_norm(&CMatrix::identity(self.dim)));
            for h in 0..n {
                let prod = self.matrices[g].mul(&self.matrices[h]);
                resid = resid.max(prod.diff_norm(&self.matrices[group.mul(g, h)]));
            }
        }
        let norm: f64 =
            self.chars.iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64;
        resid = resid.max((norm - 1.0).abs());
        if resid > 1e-10 {
            return Err(Error::Numerical {
                context: format!("irrep {} validation", self.label),
                residual: resid,
                tolerance: 1e-10,
            });
        }
        Ok(())
    }
}

/// Character table over conjugacy classes.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    /// `values[irrep][class]`.
    pub values: Vec<Vec<Complex64>>,
    pub class_sizes: Vec<usize>,
    pub class_labels: Vec<String>,
}

impl CharacterTable {
    /// Row orthogonality and the sum-of-squares identity.
    pub fn validate(&self, order: usize, dims: &[usize]) -> Result<()> {
        let k = self.values.len();
        let mut resid = 0.0f64;
        for a in 0..k {
            for b in 0..k {
                let mut s = C_ZERO;
                for (cls, sz) in self.class_sizes.iter().enumerate() {
                    s += self.values[a][cls]
                        * self.values[b][cls].conj()
                        * Complex64::new(*sz as f64, 0.0);
                }
                s /= Complex64::new(order as f64, 0.0);
                let expect = if a == b { C_ONE } else { C_ZERO };
                resid = resid.max((s - expect).norm());
            }
        }
        let sq: usize = dims.iter().map(|d| d * d).sum();
        if sq != order {
            return Err(Error::Numerical {
                context: "sum of squared dimensions".into(),
                residual: (sq as f64 - order as f64).abs(),
                tolerance: 0.0,
            });
        }
        if resid > 1e-10 {
            return Err(Error::Numerical {
                context: "character orthogonality".into(),
                residual: resid,
                tolerance: 1e-10,
            });
        }
        Ok(())
    }
}

fn cyclic_character_matrices(order: usize, k: usize) -> Vec<CMatrix> {
    (0..order)
        .map(|j| {
            let theta = 2.0 * PI * (k * j % order) as f64 / order as f64;
            let mut m = CMatrix::zeros(1, 1);
            m[(0, 0)] = Complex64::new(Float::cos(theta), Float::sin(theta));
            m
        })
        .collect()
}

/// Complete set of unitary irreps in the frozen dual order.
pub fn builtin_irreps(group: &Arc<FiniteGroup>) -> Result<Vec<Irrep>> {
    let irreps = match group.kind() {
        GroupKind::Cyclic(n) => (0..*n)
            .map(|k| Irrep::new(k, cyclic_character_matrices(*n, k)))
            .collect(),
        // groups of order <= 3 are cyclic with the element index as the
        // generator power under the lexicographic enumeration
        GroupKind::Symmetric(n) if *n <= 2 => {
            let order = group.order();
            (0..order)
                .map(|k| Irrep::new(k, cyclic_character_matrices(order, k)))
                .collect()
        }
        GroupKind::Alternating(n) if *n <= 3 => {
            let order = group.order();
            (0..order)
                .map(|k| Irrep::new(k, cyclic_character_matrices(order, k)))
                .collect()
        }
        GroupKind::Symmetric(3) => s3_irreps(group),
        GroupKind::Alternating(4) => a4_irreps(group),
        GroupKind::Product(a, b) if a.is_abelian_builtin() && b.is_abelian_builtin() => {
            let left = a.build()?;
            let right = b.build()?;
            let li = builtin_irreps(&left)?;
            let ri = builtin_irreps(&right)?;
            let (nl, nr) = (left.order(), right.order());
            let mut out = Vec::with_capacity(nl * nr);
            for (ai, la) in li.iter().enumerate() {
                for (bi, rb) in ri.iter().enumerate() {
                    let mats = (0..nl * nr)
                        .map(|idx| {
                            let (g, h) = crate::group::pair_split(nr, idx);
                            let mut m = CMatrix::zeros(1, 1);
                            m[(0, 0)] = la.chars[g] * rb.chars[h];
                            m
                        })
                        .collect();
                    out.push(Irrep::new(ai * nr + bi, mats));
                }
            }
            out
        }
        k => {
            return Err(Error::Unsupported(format!(
                "irreducible representations for {k}"
            )))
        }
    };
    for irr in &irreps {
        irr.validate(group)?;
    }
    Ok(irreps)
}

fn s3_irreps(group: &Arc<FiniteGroup>) -> Vec<Irrep> {
    let n = group.order();
    let perms = group.permutations().expect("S3 stores its permutations");
    let trivial = (0..n).map(|_| CMatrix::identity(1)).collect();
    let sign = (0..n)
        .map(|g| {
            let mut m = CMatrix::zeros(1, 1);
            m[(0, 0)] = Complex64::new(perm_sign(&perms[g]), 0.0);
            m
        })
        .collect();
    // standard representation on the plane x+y+z = 0, orthonormal basis
    let s2 = Float::sqrt(2.0f64);
    let s6 = Float::sqrt(6.0f64);
    let basis = [[1.0 / s2, 1.0 / s6], [-1.0 / s2, 1.0 / s6], [0.0, -2.0 / s6]];
    let standard = (0..n)
        .map(|g| {
            let p = &perms[g];
            CMatrix::from_fn(2, 2, |i, j| {
                let mut s = 0.0;
                for x in 0..3 {
                    s += basis[p[x] as usize][i] * basis[x][j];
                }
                Complex64::new(s, 0.0)
            })
        })
        .collect();
    vec![
        Irrep::new(0, trivial),
        Irrep::new(1, sign),
        Irrep::new(2, standard),
    ]
}

fn a4_irreps(group: &Arc<FiniteGroup>) -> Vec<Irrep> {
    let n = group.order();
    let perms = group.permutations().expect("A4 stores its permutations");
    let trivial: Vec<CMatrix> = (0..n).map(|_| CMatrix::identity(1)).collect();

    // quotient by the Klein four-group: exponent of each coset of <(123)>
    let r = group.index_of_label("(123)").expect("A4 contains (123)");
    let v4: Vec<usize> = (0..n)
        .filter(|&g| g == group.identity() || group.mul(g, g) == group.identity())
        .collect();
    let mut exponent = vec![usize::MAX; n];
    let mut rk = group.identity();
    for k in 0..3 {
        for &v in &v4 {
            exponent[group.mul(rk, v)] = k;
        }
        rk = group.mul(rk, r);
    }
    let omega = Complex64::new(Float::cos(2.0 * PI / 3.0), Float::sin(2.0 * PI / 3.0));
    let chi = |pow: usize| -> Vec<CMatrix> {
        (0..n)
            .map(|g| {
                let mut m = CMatrix::zeros(1, 1);
                m[(0, 0)] = omega.powu((exponent[g] * pow) as u32);
                m
            })
            .collect()
    };

    // rotation representation: permute the vertices of the tetrahedron
    let verts = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    let vmat = CMatrix::from_fn(3, 3, |i, j| Complex64::new(verts[j][i], 0.0));
    let vinv = vmat.inverse().expect("vertex matrix invertible");
    let rot = (0..n)
        .map(|g| {
            let p = &perms[g];
            let target =
                CMatrix::from_fn(3, 3, |i, j| Complex64::new(verts[p[j] as usize][i], 0.0));
            let raw = target.mul(&vinv);
            // entries are exactly 0 or +-1; snap away the rounding noise
            CMatrix::from_fn(3, 3, |i, j| {
                Complex64::new(Float::round(raw[(i, j)].re), 0.0)
            })
        })
        .collect();

    vec![
        Irrep::new(0, trivial),
        Irrep::new(1, chi(1)),
        Irrep::new(2, chi(2)),
        Irrep::new(3, rot),
    ]
}

fn perm_sign(p: &[u8]) -> f64 {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Projector onto the `gamma`-isotypic component of the representation `rep`
/// (one matrix per group element): `p = (d/|G|) sum_g conj(chi(g)) D(g)`.
pub fn isotypic_projector(group: &FiniteGroup, rep: &[CMatrix], gamma: &Irrep) -> CMatrix {
    let n = group.order();
    let dim = rep[0].rows();
    let mut p = CMatrix::zeros(dim, dim);
    let scale = gamma.dim as f64 / n as f64;
    for g in 0..n {
        p.axpy(gamma.chars[g].conj() * Complex64::new(scale, 0.0), &rep[g]);
    }
    p
}

/// Adapted basis for `E_alpha (x) E_beta`: a unitary `nu` whose rows are
/// grouped in dual order by irrep `gamma`, each group holding
/// `c^gamma` copies laid out as (copy index, internal index), so that
/// `nu (D_a(g) (x) D_b(g)) nu^*` is block diagonal with `gamma` blocks equal
/// to `I_c (x) D_gamma(g)`.
#[derive(Debug, Clone)]
pub struct TensorDecomposition {
    pub alpha: usize,
    pub beta: usize,
    /// Multiplicity per dual label.
    pub mults: Vec<usize>,
    /// Dimension of each irrep, for block layout.
    pub dims: Vec<usize>,
    /// The unitary change of basis.
    pub basis: CMatrix,
}

impl TensorDecomposition {
    /// Row offset of the `gamma` block inside the adapted basis.
    pub fn block_offset(&self, gamma: usize) -> usize {
        (0..gamma).map(|k| self.mults[k] * self.dims[k]).sum()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Split a natural operator on `E_alpha (x) E_beta` into multiplicity
    /// matrices: for each `gamma` with `c > 0` a `c x c` matrix, plus the
    /// largest off-structure magnitude (which must vanish for operators
    /// commuting with the diagonal action).
    pub fn extract_blocks(&self, op: &CMatrix) -> (Vec<Option<CMatrix>>, f64) {
        let rotated = self.basis.mul(op).mul(&self.basis.adjoint());
        let mut blocks: Vec<Option<CMatrix>> = vec![None; self.mults.len()];
        for gamma in 0..self.mults.len() {
            let c = self.mults[gamma];
            if c == 0 {
                continue;
            }
            let d = self.dims[gamma];
            let off = self.block_offset(gamma);
            let mut q = CMatrix::zeros(c, c);
            for i in 0..c {
                for j in 0..c {
                    let mut s = C_ZERO;
                    for m in 0..d {
                        s += rotated[(off + i * d + m, off + j * d + m)];
                    }
                    q[(i, j)] = s / Complex64::new(d as f64, 0.0);
                }
            }
            blocks[gamma] = Some(q);
        }
        let assembled = self.assemble_rotated(&blocks);
        (blocks, rotated.diff_norm(&assembled))
    }

    fn assemble_rotated(&self, blocks: &[Option<CMatrix>]) -> CMatrix {
        let n = self.total_dim();
        let mut out = CMatrix::zeros(n, n);
        for gamma in 0..self.mults.len() {
            let c = self.mults[gamma];
            if c == 0 {
                continue;
            }
            let d = self.dims[gamma];
            let off = self.block_offset(gamma);
            let q = blocks[gamma]
                .as_ref()
                .expect("missing block for nonzero multiplicity");
            for i in 0..c {
                for j in 0..c {
                    for m in 0..d {
                        out[(off + i * d + m, off + j * d + m)] = q[(i, j)];
                    }
                }
            }
        }
        out
    }

    /// Inverse of [`extract_blocks`]: assemble `nu^* (blockdiag q (x) I) nu`.
    pub fn assemble_blocks(&self, blocks: &[Option<CMatrix>]) -> CMatrix {
        let rotated = self.assemble_rotated(blocks);
        self.basis.adjoint().mul(&rotated).mul(&self.basis)
    }
}

/// The dual of a builtin group: its irreps, character table and all
/// pairwise tensor decompositions, built eagerly so that every later
/// operation is pure and lock-free.
#[derive(Debug)]
pub struct Dual {
    group: Arc<FiniteGroup>,
    irreps: Vec<Irrep>,
    char_table: CharacterTable,
    cg: Vec<Vec<Vec<usize>>>,
    decomps: Vec<Vec<TensorDecomposition>>,
}

impl Dual {
    pub fn new(group: &Arc<FiniteGroup>, seed: u64) -> Result<Dual> {
        let irreps = builtin_irreps(group)?;
        let char_table = character_table(group, &irreps);
        char_table.validate(group.order(), &irreps.iter().map(|i| i.dim).collect::<Vec<_>>())?;
        let k = irreps.len();
        let mut cg = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                cg[a][b] = clebsch_gordan(group, &irreps, a, b)?;
            }
        }
        let mut decomps = Vec::with_capacity(k);
        for a in 0..k {
            let mut row = Vec::with_capacity(k);
            for b in 0..k {
                row.push(tensor_decomposition_impl(group, &irreps, &cg[a][b], a, b, seed)?);
            }
            decomps.push(row);
        }
        Ok(Dual { group: group.clone(), irreps, char_table, cg, decomps })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn character_table(&self) -> &CharacterTable {
        &self.char_table
    }

    /// Clebsch-Gordan integers `c^gamma_{alpha beta}` for all `gamma`.
    pub fn clebsch_gordan(&self, alpha: usize, beta: usize) -> &[usize] {
        &self.cg[alpha][beta]
    }

    pub fn decomposition(&self, alpha: usize, beta: usize) -> &TensorDecomposition {
        &self.decomps[alpha][beta]
    }

    /// Index of the 1-dimensional irrep whose character is the pointwise
    /// product of two given 1-dimensional characters, if that product is
    /// again in the dual (always true for characters).
    pub fn char_product(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.group.order();
        self.irreps.iter().position(|cand| {
            (0..n).all(|g| {
                (cand.chars[g] - self.irreps[a].chars[g] * self.irreps[b].chars[g]).norm() < 1e-8
            })
        })
    }

    /// The pair representation matrix `D_a(g) (x) D_b(h)`.
    pub fn pair_matrix(&self, alpha: usize, beta: usize, g: usize, h: usize) -> CMatrix {
        self.irreps[alpha].matrices[g].kron(&self.irreps[beta].matrices[h])
    }
}

pub fn character_table(group: &FiniteGroup, irreps: &[Irrep]) -> CharacterTable {
    let classes = group.conjugacy_classes();
    let values = irreps
        .iter()
        .map(|irr| classes.iter().map(|c| irr.chars[c[0]]).collect())
        .collect();
    CharacterTable {
        values,
        class_sizes: classes.iter().map(|c| c.len()).collect(),
        class_labels: classes
            .iter()
            .map(|c| String::from(group.label(c[0])))
            .collect(),
    }
}

/// `c^gamma_{alpha beta} = (1/|G|) sum_g chi_a(g) chi_b(g) conj(chi_c(g))`,
/// rounded to the nearest integer with an integrality check.
pub fn clebsch_gordan(
    group: &FiniteGroup,
    irreps: &[Irrep],
    alpha: usize,
    beta: usize,
) -> Result<Vec<usize>> {
    let n = group.order();
    let mut out = Vec::with_capacity(irreps.len());
    for gamma in irreps {
        let mut s = C_ZERO;
        for g in 0..n {
            s += irreps[alpha].chars[g] * irreps[beta].chars[g] * gamma.chars[g].conj();
        }
        s /= Complex64::new(n as f64, 0.0);
        let rounded = Float::round(s.re);
        let resid = Float::max((s.re - rounded).abs(), s.im.abs());
        if resid > 1e-8 || rounded < -0.5 {
            return Err(Error::Numerical {
                context: format!("Clebsch-Gordan integer ({alpha},{beta})->{}", gamma.label),
                residual: resid,
                tolerance: 1e-8,
            });
        }
        out.push(rounded as usize);
    }
    Ok(out)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
    })
}

/// Phase-normalize an isometry so its largest-magnitude entry is real
/// positive; keeps the adapted basis deterministic across seeds wherever
/// the intertwiner is unique up to phase.
fn normalize_phase(t: &mut CMatrix) {
    let mut best = 0.0f64;
    let mut pick = C_ONE;
    for i in 0..t.rows() {
        for j in 0..t.cols() {
            let v = t[(i, j)];
            if v.norm() > best + 1e-12 {
                best = v.norm();
                pick = v;
            }
        }
    }
    if best > 0.0 {
        let phase = pick / Complex64::new(best, 0.0);
        *t = t.scale(phase.conj());
    }
}

/// Unitary intertwiner witnessing `delta (x) E_alpha ~ E_alpha` for a
/// 1-dimensional `delta`; `None` when the twisted representation is not
/// equivalent to the original.
fn twist_unitary(
    group: &FiniteGroup,
    irreps: &[Irrep],
    delta: usize,
    alpha: usize,
    seed: u64,
) -> Option<CMatrix> {
    let n = group.order();
    let d = irreps[alpha].dim;
    // character check first: chi_delta * chi_alpha == chi_alpha?
    let fixes = (0..n).all(|g| {
        (irreps[delta].chars[g] * irreps[alpha].chars[g] - irreps[alpha].chars[g]).norm() < 1e-8
    });
    if !fixes || irreps[delta].dim != 1 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_7715);
    for _ in 0..6 {
        let x = random_matrix(&mut rng, d, d);
        let mut w = CMatrix::zeros(d, d);
        for g in 0..n {
            let coeff = irreps[delta].chars[g].conj() / Complex64::new(n as f64, 0.0);
            let term = irreps[alpha].matrices[g]
                .mul(&x)
                .mul(&irreps[alpha].matrices[g].adjoint());
            w.axpy(coeff, &term);
        }
        // Schur: w^* w is a positive scalar for a successful draw
        let gram = w.adjoint().mul(&w);
        let lambda = gram.trace().re / d as f64;
        if lambda > 1e-8 && gram.diff_norm(&CMatrix::identity(d).scale(Complex64::new(lambda, 0.0))) < 1e-8 {
            return Some(w.scale(Complex64::new(1.0 / Float::sqrt(lambda), 0.0)));
        }
    }
    None
}

fn tensor_decomposition_impl(
    group: &Arc<FiniteGroup>,
    irreps: &[Irrep],
    mults: &[usize],
    alpha: usize,
    beta: usize,
    seed: u64,
) -> Result<TensorDecomposition> {
    let n = group.order();
    let da = irreps[alpha].dim;
    let db = irreps[beta].dim;
    let dim = da * db;
    let pair: Vec<CMatrix> = (0..n)
        .map(|g| irreps[alpha].matrices[g].kron(&irreps[beta].matrices[g]))
        .collect();
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ ((alpha as u64) << 32) ^ ((beta as u64) << 16));

    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for (gamma, &c) in mults.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let dg = irreps[gamma].dim;
        let mut isometries = intertwiner_basis(&pair, &irreps[gamma], c, &mut rng)?;
        if c >= 2 {
            align_multiplicity_basis(group, irreps, alpha, gamma, &mut isometries, seed);
        }
        for t in isometries.iter_mut() {
            normalize_phase(t);
        }
        for t in &isometries {
            for m in 0..dg {
                rows.push((0..dim).map(|r| t[(r, m)].conj()).collect());
            }
        }
    }
    if rows.len() != dim {
        return Err(Error::Numerical {
            context: format!("adapted basis completeness for pair ({alpha},{beta})"),
            residual: (dim as isize - rows.len() as isize).unsigned_abs() as f64,
            tolerance: 0.0,
        });
    }
    let basis = CMatrix::from_rows(&rows);
    let deco = TensorDecomposition {
        alpha,
        beta,
        mults: mults.to_vec(),
        dims: irreps.iter().map(|i| i.dim).collect(),
        basis,
    };
    // validation: unitarity and exact block action
    let unit = deco.basis.mul(&deco.basis.adjoint());
    let mut resid = unit.diff_norm(&CMatrix::identity(dim));
    for g in 0..n {
        let rotated = deco.basis.mul(&pair[g]).mul(&deco.basis.adjoint());
        let mut expected = CMatrix::zeros(dim, dim);
        for (gamma, &c) in mults.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let dgm = irreps[gamma].dim;
            let off = deco.block_offset(gamma);
            for i in 0..c {
                for r in 0..dgm {
                    for s in 0..dgm {
                        expected[(off + i * dgm + r, off + i * dgm + s)] =
                            irreps[gamma].matrices[g][(r, s)];
                    }
                }
            }
        }
        resid = resid.max(rotated.diff_norm(&expected));
    }
    if resid > 1e-9 {
        return Err(Error::Numerical {
            context: format!("adapted basis for pair ({alpha},{beta})"),
            residual: resid,
            tolerance: 1e-9,
        });
    }
    Ok(deco)
}

/// Orthonormal isometric intertwiners `E_gamma -> E` spanning the
/// multiplicity space, built by averaging random seeds.
fn intertwiner_basis(
    pair: &[CMatrix],
    gamma: &Irrep,
    c: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CMatrix>> {
    let n = pair.len();
    let dim = pair[0].rows();
    let dg = gamma.dim;
    let scale = Complex64::new(dg as f64 / n as f64, 0.0);
    for round in 0..4 {
        let mut candidates = Vec::new();
        for _ in 0..(c + 2 + round) {
            let x = random_matrix(rng, dim, dg);
            let mut t = CMatrix::zeros(dim, dg);
            for g in 0..n {
                let term = pair[g].mul(&x).mul(&gamma.matrices[g].adjoint());
                t.axpy(scale, &term);
            }
            candidates.push(t);
        }
        let basis = orthonormalize(&candidates, 1e-7);
        if basis.len() >= c {
            // rescale Frobenius-normalized intertwiners into isometries
            let root = Complex64::new(Float::sqrt(dg as f64), 0.0);
            return Ok(basis.into_iter().take(c).map(|t| t.scale(root)).collect());
        }
    }
    Err(Error::Numerical {
        context: format!("intertwiner space for irrep {}", gamma.label),
        residual: 0.0,
        tolerance: 1e-7,
    })
}

/// Rotate a multiplicity-2 copy basis into the eigenbasis of the twist by a
/// fixing character, when one exists. This pins the canonical form of the
/// matrix blocks: diagonal matrix blocks then commute with the twist, which
/// the coherence system requires of them.
fn align_multiplicity_basis(
    group: &Arc<FiniteGroup>,
    irreps: &[Irrep],
    alpha: usize,
    gamma: usize,
    isometries: &mut Vec<CMatrix>,
    seed: u64,
) {
    let c = isometries.len();
    if c != 2 {
        return;
    }
    let delta = match (1..irreps.len()).find(|&d| {
        irreps[d].dim == 1
            && twist_fixes(group, irreps, d, gamma)
            && twist_fixes(group, irreps, d, alpha)
    }) {
        Some(d) => d,
        None => return,
    };
    let w_alpha = match twist_unitary(group, irreps, delta, alpha, seed) {
        Some(w) => w,
        None => return,
    };
    let w_gamma = match twist_unitary(group, irreps, delta, gamma, seed.wrapping_add(1)) {
        Some(w) => w,
        None => return,
    };
    let dg = irreps[gamma].dim;
    let dbeta = isometries[0].rows() / irreps[alpha].dim;
    let lift = w_alpha.kron(&CMatrix::identity(dbeta));
    // (W (x) I) T_i = sum_j T_j b_ji W_gamma
    let mut b = CMatrix::zeros(c, c);
    for i in 0..c {
        let image = lift.mul(&isometries[i]);
        for j in 0..c {
            let coeff = isometries[j].mul(&w_gamma).frobenius_inner(&image)
                / Complex64::new(dg as f64, 0.0);
            b[(j, i)] = coeff;
        }
    }
    // eigenbasis of the 2x2 twist action; skip when it is scalar
    if let Some((vals, vecs)) = eigen2(&b) {
        if (vals[0] - vals[1]).norm() < 1e-8 {
            return;
        }
        let new0 = combine(isometries, &vecs[0]);
        let new1 = combine(isometries, &vecs[1]);
        *isometries = vec![new0, new1];
    }
}

fn twist_fixes(group: &Arc<FiniteGroup>, irreps: &[Irrep], delta: usize, target: usize) -> bool {
    (0..group.order()).all(|g| {
        (irreps[delta].chars[g] * irreps[target].chars[g] - irreps[target].chars[g]).norm() < 1e-8
    })
}

fn combine(isometries: &[CMatrix], v: &[Complex64; 2]) -> CMatrix {
    let mut out = isometries[0].scale(v[0]);
    out.axpy(v[1], &isometries[1]);
    out
}

/// Eigen decomposition of a normal 2x2 matrix: (values, orthonormal vectors).
/// Returns `None` for a defective (non-normal, repeated) input.
pub fn eigen2(m: &CMatrix) -> Option<([Complex64; 2], [[Complex64; 2]; 2])> {
    assert_eq!((m.rows(), m.cols()), (2, 2));
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det.scale_re(4.0)).sqrt();
    let l0 = (tr + disc) * Complex64::new(0.5, 0.0);
    let l1 = (tr - disc) * Complex64::new(0.5, 0.0);
    let vec_for = |l: Complex64| -> Option<[Complex64; 2]> {
        // rows of (M - l I) are orthogonal to the eigenvector's conjugate
        let r1 = [a - l, b];
        let r2 = [c, d - l];
        let cand = if r1[0].norm() + r1[1].norm() > r2[0].norm() + r2[1].norm() {
            [-r1[1], r1[0]]
        } else {
            [-r2[1], r2[0]]
        };
        let norm = Float::sqrt(cand[0].norm_sqr() + cand[1].norm_sqr());
        if norm < 1e-12 {
            // M - l I = 0: any basis works
            return Some([C_ONE, C_ZERO]);
        }
        let inv = Complex64::new(1.0 / norm, 0.0);
        Some([cand[0] * inv, cand[1] * inv])
    };
    let v0 = vec_for(l0)?;
    let mut v1 = vec_for(l1)?;
    // for a normal matrix the eigenvectors are orthogonal; enforce it
    let overlap = v0[0].conj() * v1[0] + v0[1].conj() * v1[1];
    if overlap.norm() > 1e-8 {
        if (l0 - l1).norm() < 1e-10 {
            v1 = [-v0[1].conj(), v0[0].conj()];
        } else {
            return None;
        }
    }
    Some(([l0, l1], [v0, v1]))
}

trait ScaleRe {
    fn scale_re(&self, f: f64) -> Complex64;
}
impl ScaleRe for Complex64 {
    fn scale_re(&self, f: f64) -> Complex64 {
        Complex64::new(self.re * f, self.im * f)
    }
}

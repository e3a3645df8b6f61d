//! Quantizers of abelian groups as multiplicative 2-cocycles on the dual.
//!
//! For an abelian group every irrep is a character, every block is a
//! scalar, and the coherence system is the 2-cocycle identity
//! `z(ab,c) z(a,b) = z(a,bc) z(b,c)`. The gauge action is the coboundary
//! action, so quantizers up to gauge are classified by `H^2` of the dual.
//! Cocycles with nowhere-zero values reduce constructively: the commutator
//! pairing `c(a,b) = z(a,b)/z(b,a)` is a gauge invariant alternating
//! bicharacter; dividing out a canonical bicharacter representative leaves
//! a symmetric cocycle, and a symmetric cocycle over the divisible group
//! `C*` splits by choosing compatible root sections of its central
//! extension.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupKind};
use crate::linalg::{CMatrix, C_ONE, C_ZERO};
use crate::quantizer::{BlockQuantizer, Quantizer, QuantizerSpace};

const PI: f64 = core::f64::consts::PI;

/// The dual of an abelian builtin group: a product of cyclic factors with
/// componentwise index arithmetic matching the frozen irrep enumeration.
#[derive(Debug, Clone)]
pub struct DualGroup {
    radices: Vec<usize>,
    size: usize,
}

impl DualGroup {
    pub fn for_group(group: &Arc<FiniteGroup>) -> Result<DualGroup> {
        let mut radices = Vec::new();
        flatten(group.kind(), &mut radices)?;
        let size = radices.iter().product();
        if size != group.order() {
            return Err(Error::Mismatch("dual size differs from group order".into()));
        }
        Ok(DualGroup { radices, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (i, r) in self.radices.iter().enumerate().rev() {
            out[i] = idx % r;
            idx /= r;
        }
        out
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        let mut idx = 0;
        for (t, r) in tuple.iter().zip(self.radices.iter()) {
            idx = idx * r + (t % r);
        }
        idx
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let ta = self.tuple_of(a);
        let tb = self.tuple_of(b);
        let sum: Vec<usize> = ta
            .iter()
            .zip(tb.iter())
            .zip(self.radices.iter())
            .map(|((x, y), r)| (x + y) % r)
            .collect();
        self.index_of(&sum)
    }

    /// Index of the `j`-th generator character.
    pub fn generator(&self, j: usize) -> usize {
        let mut t = vec![0; self.radices.len()];
        t[j] = 1;
        self.index_of(&t)
    }
}

fn flatten(kind: &GroupKind, out: &mut Vec<usize>) -> Result<()> {
    match kind {
        GroupKind::Cyclic(n) => {
            out.push(*n);
            Ok(())
        }
        GroupKind::Symmetric(n) if *n <= 2 => {
            out.push(if *n == 2 { 2 } else { 1 });
            Ok(())
        }
        GroupKind::Alternating(n) if *n <= 3 => {
            out.push(if *n == 3 { 3 } else { 1 });
            Ok(())
        }
        GroupKind::Product(a, b) => {
            flatten(a, out)?;
            flatten(b, out)
        }
        k => Err(Error::Unsupported(format!("{k} is not an abelian builtin"))),
    }
}

/// A normalized multiplicative 2-cocycle on the dual group.
#[derive(Debug, Clone)]
pub struct Cocycle {
    pub values: CMatrix,
}

impl Cocycle {
    pub fn trivial(dual: &DualGroup) -> Cocycle {
        Cocycle { values: CMatrix::from_fn(dual.size(), dual.size(), |_, _| C_ONE) }
    }

    pub fn value(&self, a: usize, b: usize) -> Complex64 {
        self.values[(a, b)]
    }
}

/// Largest violation of the cocycle identity and the normalization.
pub fn cocycle_check(dual: &DualGroup, values: &CMatrix) -> f64 {
    let k = dual.size();
    assert_eq!((values.rows(), values.cols()), (k, k), "square table over the dual");
    let mut resid = 0.0f64;
    for a in 0..k {
        resid = resid.max((values[(0, a)] - C_ONE).norm());
        resid = resid.max((values[(a, 0)] - C_ONE).norm());
        for b in 0..k {
            let ab = dual.mul(a, b);
            for c in 0..k {
                let bc = dual.mul(b, c);
                let lhs = values[(ab, c)] * values[(a, b)];
                let rhs = values[(a, bc)] * values[(b, c)];
                resid = resid.max((lhs - rhs).norm());
            }
        }
    }
    resid
}

/// Build the quantizer carried by a valid cocycle: the Fourier block at
/// `(a, b)` is the scalar `z(a, b)` on the character `a.b`.
pub fn quantizer_from_cocycle(
    space: &QuantizerSpace,
    dual: &DualGroup,
    z: &Cocycle,
    tol: f64,
) -> Result<Quantizer> {
    let resid = cocycle_check(dual, &z.values);
    if resid > tol {
        return Err(Error::Rejected { context: "cocycle check".into(), residual: resid });
    }
    if space.dual().len() != dual.size() {
        return Err(Error::Mismatch("space dual differs from cocycle dual".into()));
    }
    let mut blocks = BlockQuantizer::empty(dual.size());
    for a in 0..dual.size() {
        for b in 0..dual.size() {
            blocks.set_scalar(a, b, dual.mul(a, b), z.value(a, b));
        }
    }
    space.algebra_from_blocks(&blocks)
}

/// Read a cocycle table back off a quantizer over an abelian group.
pub fn cocycle_from_quantizer(
    space: &QuantizerSpace,
    dual: &DualGroup,
    q: &Quantizer,
) -> Result<Cocycle> {
    let blocks = space.blocks_from_algebra(q)?;
    let k = dual.size();
    let values = CMatrix::from_fn(k, k, |a, b| blocks.scalar(a, b, dual.mul(a, b)));
    Ok(Cocycle { values })
}

/// Outcome of the coboundary reduction.
#[derive(Debug, Clone)]
pub struct CoboundaryReduction {
    /// Canonical representative cohomologous to the input.
    pub representative: Cocycle,
    /// Gauge scalars: `rep(a,b) = l_a^{-1} l_b^{-1} z(a,b) l_{ab}`.
    pub gauge: Vec<Complex64>,
    /// Generator pairing exponents `c(u_i, u_j) = exp(2 pi i s / gcd)`
    /// for `i < j`; all zero exactly when the class is trivial.
    pub pairing_exponents: Vec<((usize, usize), i64)>,
}

/// Reduce a nowhere-zero cocycle to the canonical bicharacter
/// representative of its cohomology class, constructively.
pub fn coboundary_reduce(dual: &DualGroup, z: &Cocycle, tol: f64) -> Result<CoboundaryReduction> {
    let k = dual.size();
    let resid = cocycle_check(dual, &z.values);
    if resid > tol {
        return Err(Error::Rejected { context: "cocycle check".into(), residual: resid });
    }
    for a in 0..k {
        for b in 0..k {
            if z.value(a, b).norm() < 1e-12 {
                return Err(Error::Singular(
                    "coboundary reduction requires nowhere-zero cocycle values".into(),
                ));
            }
        }
    }
    let m = dual.radices().len();
    // canonical representative from the commutator pairing on generators
    let mut pairing_exponents = Vec::new();
    let mut rep = CMatrix::from_fn(k, k, |_, _| C_ONE);
    for i in 0..m {
        for j in i + 1..m {
            let ui = dual.generator(i);
            let uj = dual.generator(j);
            let c = z.value(ui, uj) / z.value(uj, ui);
            let g = gcd(dual.radices()[i], dual.radices()[j]);
            let s = snap_root_exponent(c, g)?;
            pairing_exponents.push(((i, j), s));
            if s == 0 {
                continue;
            }
            for a in 0..k {
                for b in 0..k {
                    let ta = dual.tuple_of(a);
                    let tb = dual.tuple_of(b);
                    let e = (ta[i] * tb[j] * s as usize) % g;
                    let theta = 2.0 * PI * e as f64 / g as f64;
                    rep[(a, b)] *= Complex64::new(Float::cos(theta), Float::sin(theta));
                }
            }
        }
    }
    // tau = z / rep is symmetric; split its central extension by taking
    // compatible roots on the generators
    let tau = CMatrix::from_fn(k, k, |a, b| z.value(a, b) / rep[(a, b)]);
    let sym_resid = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .fold(0.0f64, |r, (a, b)| r.max((tau[(a, b)] - tau[(b, a)]).norm()));
    if sym_resid > tol.max(1e-7) {
        return Err(Error::Numerical {
            context: "pairing removal left a non-symmetric cocycle".into(),
            residual: sym_resid,
            tolerance: tol.max(1e-7),
        });
    }
    // section values on generators: (r_j, u_j)^{n_j} must be the identity
    let mut section = vec![C_ZERO; m];
    for j in 0..m {
        let n = dual.radices()[j];
        let uj = dual.generator(j);
        // norm of the generator chain: product tau(u_j^i, u_j)
        let mut norm = C_ONE;
        let mut acc = 0usize; // u_j^i
        for _ in 0..n {
            norm *= tau[(acc, uj)];
            acc = dual.mul(acc, uj);
        }
        section[j] = norm.powf(-1.0 / n as f64);
    }
    // m(x): value component of prod_j (r_j, u_j)^{x_j} in the extension
    let mut msec = vec![C_ONE; k];
    for x in 0..k {
        let t = dual.tuple_of(x);
        let mut val = C_ONE;
        let mut elem = 0usize;
        for (j, &power) in t.iter().enumerate() {
            let uj = dual.generator(j);
            for _ in 0..power {
                val = val * section[j] * tau[(elem, uj)];
                elem = dual.mul(elem, uj);
            }
        }
        msec[x] = val;
    }
    // tau = d(msec); gauge scalars are the inverse section values
    let gauge: Vec<Complex64> = msec.iter().map(|v| C_ONE / v).collect();
    // verify: rep = l_a^{-1} l_b^{-1} z(a,b) l_{ab}
    let mut worst = 0.0f64;
    for a in 0..k {
        for b in 0..k {
            let got = z.value(a, b) * gauge[dual.mul(a, b)] / (gauge[a] * gauge[b]);
            worst = worst.max((got - rep[(a, b)]).norm());
        }
    }
    if worst > tol.max(1e-7) {
        return Err(Error::Numerical {
            context: "coboundary reduction verification".into(),
            residual: worst,
            tolerance: tol.max(1e-7),
        });
    }
    Ok(CoboundaryReduction {
        representative: Cocycle { values: rep },
        gauge,
        pairing_exponents,
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Match a unit-modulus value to `exp(2 pi i s / order)`.
fn snap_root_exponent(c: Complex64, order: usize) -> Result<i64> {
    if (c.norm() - 1.0).abs() > 1e-7 {
        return Err(Error::Numerical {
            context: "commutator pairing is not unimodular".into(),
            residual: (c.norm() - 1.0).abs(),
            tolerance: 1e-7,
        });
    }
    let mut arg = Float::atan2(c.im, c.re);
    if arg < 0.0 {
        arg += 2.0 * PI;
    }
    let s = Float::round(arg * order as f64 / (2.0 * PI)) as i64;
    let theta = 2.0 * PI * s as f64 / order as f64;
    let snapped = Complex64::new(Float::cos(theta), Float::sin(theta));
    if (snapped - c).norm() > 1e-7 {
        return Err(Error::Numerical {
            context: "pairing value is not a root of unity of the expected order".into(),
            residual: (snapped - c).norm(),
            tolerance: 1e-7,
        });
    }
    Ok(s % order as i64)
}

/// Structure constants of the twisted group algebra of the dual:
/// `e_a e_b = z(a, b) e_{ab}`. Entry `[k]` is the matrix of coefficients of
/// `e_k` in `e_i e_j` at `(i, j)`.
pub fn twisted_group_algebra(dual: &DualGroup, z: &Cocycle) -> Vec<CMatrix> {
    let k = dual.size();
    let mut out = vec![CMatrix::zeros(k, k); k];
    for i in 0..k {
        for j in 0..k {
            out[dual.mul(i, j)][(i, j)] = z.value(i, j);
        }
    }
    out
}

/// Exhaustive associativity defect of a structure-constant table.
pub fn associativity_residual(mult: &[CMatrix]) -> f64 {
    let n = mult.len();
    let coeff = |i: usize, j: usize, k: usize| mult[k][(i, j)];
    let mut resid = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    // coefficient of e_l in (e_i e_j) e_k minus e_i (e_j e_k)
                    let mut lhs = C_ZERO;
                    let mut rhs = C_ZERO;
                    for m in 0..n {
                        lhs += coeff(i, j, m) * coeff(m, k, l);
                        rhs += coeff(j, k, m) * coeff(i, m, l);
                    }
                    resid = resid.max((lhs - rhs).norm());
                }
            }
        }
    }
    resid
}

/// The quaternion cocycle on the dual of `C2 x C2`: the twisted group
/// algebra it defines is the quaternions (`e_i^2 = -1`, anticommuting
/// imaginary units).
pub fn quaternion_cocycle(dual: &DualGroup) -> Result<Cocycle> {
    if dual.radices() != [2, 2] {
        return Err(Error::Unsupported("quaternion cocycle lives on the dual of C2xC2".into()));
    }
    // indices: 0 = (0,0), 1 = (0,1), 2 = (1,0), 3 = (1,1)
    let table: [[f64; 4]; 4] = [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
    ];
    let values = CMatrix::from_fn(4, 4, |a, b| Complex64::new(table[a][b], 0.0));
    Ok(Cocycle { values })
}

/// The sign bicharacter `z(a, b) = (-1)^(a2 b1)` on the dual of `C2 x C2`;
/// the standard representative of the nontrivial cohomology class.
pub fn sign_bicharacter(dual: &DualGroup) -> Result<Cocycle> {
    if dual.radices() != [2, 2] {
        return Err(Error::Unsupported("sign bicharacter lives on the dual of C2xC2".into()));
    }
    let values = CMatrix::from_fn(4, 4, |a, b| {
        let ta = dual.tuple_of(a);
        let tb = dual.tuple_of(b);
        if (ta[1] * tb[0]) % 2 == 1 {
            -C_ONE
        } else {
            C_ONE
        }
    });
    Ok(Cocycle { values })
}

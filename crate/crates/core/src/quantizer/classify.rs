//! Classification of the block quantizers of `S3` and `A4`.
//!
//! The classifier enumerates zero/nonzero support patterns of the scalar
//! blocks, keeps the patterns consistent with the extracted relation set,
//! solves the remaining monomial constraints on the nonzero stratum (the
//! constraints are monomial equalities, so the stratum is a coset of a
//! subtorus and generic points come from the integer null space of the
//! exponent matrix), gauge-fixes each solved row to its canonical form and
//! matches it against the family catalog. Rows listed as duplicates of
//! earlier families are folded in; patterns that solve to rows outside the
//! catalog are returned separately.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C_ONE, C_ZERO};

use super::canonical::gauge_fix;
use super::relations::{extract_relations, Monomial, Symbol};
use super::{BlockQuantizer, QuantizerSpace};

/// One scalar slot of a canonical family row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entry {
    Zero,
    One,
    /// A free complex parameter; equal indices mean the same parameter.
    Param(usize),
}

/// Normal forms offered for the 2x2 matrix block of `A4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixForm {
    /// The identity (trivial family).
    Identity,
    /// `diag(lambda, kappa)`, two parameters.
    DiagPair,
    /// `[[lambda, 1], [0, lambda]]`, one parameter.
    JordanParam,
    /// The zero matrix.
    Zero2,
    /// `[[0, 1], [0, 0]]`.
    Nilpotent,
    /// `[[1, 1], [0, 1]]`.
    Unipotent,
    /// `diag(1, lambda)`, one parameter.
    DiagOne,
}

impl MatrixForm {
    pub fn param_count(&self) -> usize {
        match self {
            MatrixForm::DiagPair => 2,
            MatrixForm::JordanParam | MatrixForm::DiagOne => 1,
            _ => 0,
        }
    }

    pub fn realize(&self, params: &[Complex64]) -> Result<CMatrix> {
        if params.len() != self.param_count() {
            return Err(Error::Invalid("matrix form parameter count".into()));
        }
        let mut m = CMatrix::zeros(2, 2);
        match self {
            MatrixForm::Identity => {
                m = CMatrix::identity(2);
            }
            MatrixForm::DiagPair => {
                m[(0, 0)] = params[0];
                m[(1, 1)] = params[1];
            }
            MatrixForm::JordanParam => {
                m[(0, 0)] = params[0];
                m[(0, 1)] = C_ONE;
                m[(1, 1)] = params[0];
            }
            MatrixForm::Zero2 => {}
            MatrixForm::Nilpotent => {
                m[(0, 1)] = C_ONE;
            }
            MatrixForm::Unipotent => {
                m[(0, 0)] = C_ONE;
                m[(0, 1)] = C_ONE;
                m[(1, 1)] = C_ONE;
            }
            MatrixForm::DiagOne => {
                m[(0, 0)] = C_ONE;
                m[(1, 1)] = params[0];
            }
        }
        Ok(m)
    }

    pub fn label(&self) -> &'static str {
        match self {
            MatrixForm::Identity => "I",
            MatrixForm::DiagPair => "diag(l,k)",
            MatrixForm::JordanParam => "[[l,1],[0,l]]",
            MatrixForm::Zero2 => "0",
            MatrixForm::Nilpotent => "[[0,1],[0,0]]",
            MatrixForm::Unipotent => "[[1,1],[0,1]]",
            MatrixForm::DiagOne => "diag(1,l)",
        }
    }
}

/// A matrix-form choice with its parameters.
#[derive(Debug, Clone)]
pub struct FamilyVariant {
    pub form: MatrixForm,
    pub params: Vec<Complex64>,
}

/// A named family of quantizers: a canonical scalar row plus optional
/// matrix-block normal forms.
#[derive(Debug, Clone)]
pub struct QuantizerFamily {
    pub name: String,
    pub entries: Vec<Entry>,
    /// Matrix-block forms applicable to this family (empty when the group
    /// has no matrix block).
    pub matrix_forms: Vec<MatrixForm>,
    /// Rows of the source tables that reduce to this family.
    pub merged_rows: Vec<String>,
    pub scalar_param_count: usize,
}

impl QuantizerFamily {
    /// Build the block quantizer for given scalar parameters and an
    /// optional matrix-form choice.
    pub fn instantiate(
        &self,
        keys: &[Symbol],
        dual_size: usize,
        scalar_params: &[Complex64],
        variant: Option<&FamilyVariant>,
    ) -> Result<BlockQuantizer> {
        if scalar_params.len() != self.scalar_param_count {
            return Err(Error::Invalid("scalar parameter count".into()));
        }
        let mut b = BlockQuantizer::empty(dual_size);
        // normalization blocks
        for a in 0..dual_size {
            b.set_scalar(0, a, a, C_ONE);
            b.set_scalar(a, 0, a, C_ONE);
        }
        for (key, entry) in keys.iter().zip(self.entries.iter()) {
            let v = match entry {
                Entry::Zero => C_ZERO,
                Entry::One => C_ONE,
                Entry::Param(i) => scalar_params[*i],
            };
            b.set_scalar(key.0, key.1, key.2, v);
        }
        if dual_size == 4 {
            let m = match variant {
                Some(v) => v.form.realize(&v.params)?,
                None => CMatrix::identity(2),
            };
            b.set(3, 3, 3, m);
        } else if variant.is_some() {
            return Err(Error::Invalid("this family has no matrix block".into()));
        }
        Ok(b)
    }
}

/// A solved support pattern that does not match the catalog.
#[derive(Debug, Clone)]
pub struct UncatalogedRow {
    pub entries: Vec<Entry>,
}

/// Result of the classification.
#[derive(Debug, Clone)]
pub struct Classification {
    /// Scalar block keys in table column order.
    pub scalar_keys: Vec<Symbol>,
    pub families: Vec<QuantizerFamily>,
    /// Consistent support patterns whose canonical rows are not in the
    /// catalog (kept for transparency, not emitted as families).
    pub uncataloged: Vec<UncatalogedRow>,
    pub dual_size: usize,
}

impl Classification {
    pub fn family(&self, name: &str) -> Option<&QuantizerFamily> {
        self.families.iter().find(|f| f.name == name)
    }
}

struct CatalogRow {
    name: &'static str,
    entries: &'static [i8], // 0, 1, or -(param index + 1)
    dedup_to: Option<&'static str>,
}

const S3_KEYS: [Symbol; 6] = [(1, 1, 0), (1, 2, 2), (2, 1, 2), (2, 2, 0), (2, 2, 1), (2, 2, 2)];

const S3_CATALOG: [CatalogRow; 7] = [
    CatalogRow { name: "a", entries: &[1, 1, 1, -1, -1, 1], dedup_to: None },
    CatalogRow { name: "b", entries: &[0, 0, 0, 0, 1, 1], dedup_to: None },
    CatalogRow { name: "c", entries: &[0, 0, 0, 0, 0, 1], dedup_to: None },
    CatalogRow { name: "d", entries: &[0, 0, 0, 0, 1, 0], dedup_to: None },
    CatalogRow { name: "e", entries: &[1, 1, 1, 1, 1, 0], dedup_to: None },
    CatalogRow { name: "f", entries: &[0, 0, 0, 0, 0, 0], dedup_to: Some("1") },
    CatalogRow { name: "g", entries: &[1, 1, 1, 0, 0, 0], dedup_to: Some("1") },
];

const A4_KEYS: [Symbol; 11] = [
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

const A4_CATALOG: [CatalogRow; 11] = [
    CatalogRow { name: "a", entries: &[1; 11], dedup_to: None },
    CatalogRow { name: "b", entries: &[1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0], dedup_to: None },
    CatalogRow { name: "c", entries: &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0], dedup_to: None },
    CatalogRow { name: "d", entries: &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1], dedup_to: None },
    CatalogRow { name: "e", entries: &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1], dedup_to: None },
    CatalogRow { name: "f", entries: &[0; 11], dedup_to: Some("b") },
    CatalogRow { name: "g", entries: &[0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0], dedup_to: Some("c") },
    CatalogRow { name: "h", entries: &[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0], dedup_to: Some("b") },
    CatalogRow { name: "i", entries: &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1], dedup_to: Some("d") },
    CatalogRow { name: "j", entries: &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0], dedup_to: Some("b") },
    CatalogRow { name: "k", entries: &[1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0], dedup_to: Some("b") },
];

/// Enumerate and solve the support patterns, then emit the catalog families.
pub fn classify(space: &QuantizerSpace) -> Result<Classification> {
    let (keys, catalog, a4): (&[Symbol], &[CatalogRow], bool) = match space.dual().len() {
        3 => (&S3_KEYS, &S3_CATALOG, false),
        4 => (&A4_KEYS, &A4_CATALOG, true),
        _ => {
            return Err(Error::Unsupported(
                "classification is implemented for S3 and A4".into(),
            ))
        }
    };
    let relations = extract_relations(space.dual())?;
    let pairs: Vec<(Monomial, Monomial)> =
        relations.iter().flat_map(|r| r.atomic_pairs()).collect();

    let k = keys.len();
    let mut found: Vec<(Vec<Entry>, Vec<Complex64>)> = Vec::new();
    for mask in 0u32..(1 << k) {
        let zero: BTreeSet<Symbol> = keys
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) == 0)
            .map(|(_, s)| *s)
            .collect();
        let consistent = pairs
            .iter()
            .all(|(l, r)| l.vanishes(&zero) == r.vanishes(&zero));
        if !consistent {
            continue;
        }
        if let Some(row) = solve_pattern(space, keys, &pairs, &zero)? {
            found.push(row);
        }
    }

    // match against the catalog
    let mut family_names: Vec<&'static str> = Vec::new();
    let mut merged: Vec<(String, String)> = Vec::new();
    let mut uncataloged = Vec::new();
    for (entries, _values) in &found {
        match catalog.iter().find(|row| entries_match(row.entries, entries)) {
            Some(row) => match row.dedup_to {
                None => family_names.push(row.name),
                Some(target) => merged.push((String::from(row.name), String::from(target))),
            },
            None => uncataloged.push(UncatalogedRow { entries: entries.clone() }),
        }
    }

    let mut families = Vec::new();
    // the trivial quantizer is the distinguished point of the all-nonzero
    // stratum and is always emitted first
    families.push(QuantizerFamily {
        name: String::from("1"),
        entries: vec![Entry::One; k],
        matrix_forms: if a4 { vec![MatrixForm::Identity] } else { Vec::new() },
        merged_rows: merged
            .iter()
            .filter(|(_, t)| t == "1")
            .map(|(s, _)| s.clone())
            .collect(),
        scalar_param_count: 0,
    });
    for row in catalog.iter().filter(|r| r.dedup_to.is_none()) {
        if !family_names.contains(&row.name) {
            return Err(Error::Numerical {
                context: String::from("pattern enumeration missed a catalog family"),
                residual: 1.0,
                tolerance: 0.0,
            });
        }
        let entries = catalog_entries(row.entries);
        let param_count = row
            .entries
            .iter()
            .filter(|e| **e < 0)
            .map(|e| (-e) as usize)
            .max()
            .unwrap_or(0);
        let matrix_forms = if a4 {
            if row.name == "a" {
                vec![MatrixForm::DiagPair, MatrixForm::JordanParam]
            } else {
                vec![
                    MatrixForm::Zero2,
                    MatrixForm::Nilpotent,
                    MatrixForm::Unipotent,
                    MatrixForm::DiagOne,
                ]
            }
        } else {
            Vec::new()
        };
        families.push(QuantizerFamily {
            name: String::from(row.name),
            entries,
            matrix_forms,
            merged_rows: merged
                .iter()
                .filter(|(_, t)| t == row.name)
                .map(|(s, _)| s.clone())
                .collect(),
            scalar_param_count: param_count,
        });
    }
    Ok(Classification {
        scalar_keys: keys.to_vec(),
        families,
        uncataloged,
        dual_size: space.dual().len(),
    })
}

fn catalog_entries(spec: &[i8]) -> Vec<Entry> {
    spec.iter()
        .map(|e| match e {
            0 => Entry::Zero,
            1 => Entry::One,
            p => Entry::Param((-p - 1) as usize),
        })
        .collect()
}

fn entries_match(spec: &[i8], got: &[Entry]) -> bool {
    if spec.len() != got.len() {
        return false;
    }
    // params must match up to renumbering; catalog params are few, compare
    // positions of equal parameter indices
    let canon = catalog_entries(spec);
    let normalize = |es: &[Entry]| -> Vec<i32> {
        let mut map: Vec<usize> = Vec::new();
        es.iter()
            .map(|e| match e {
                Entry::Zero => -1,
                Entry::One => -2,
                Entry::Param(i) => {
                    let pos = match map.iter().position(|m| m == i) {
                        Some(p) => p,
                        None => {
                            map.push(*i);
                            map.len() - 1
                        }
                    };
                    pos as i32
                }
            })
            .collect()
    };
    normalize(&canon) == normalize(got)
}

/// Solve the monomial system on the nonzero stratum of a support pattern.
/// Returns the canonical (gauge-fixed) row, or `None` when the stratum is
/// empty.
fn solve_pattern(
    space: &QuantizerSpace,
    keys: &[Symbol],
    pairs: &[(Monomial, Monomial)],
    zero: &BTreeSet<Symbol>,
) -> Result<Option<(Vec<Entry>, Vec<Complex64>)>> {
    let nonzero: Vec<Symbol> = keys.iter().filter(|s| !zero.contains(s)).copied().collect();
    let col_of = |s: Symbol| nonzero.iter().position(|t| *t == s);
    // exponent rows for relations active on this stratum
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (l, r) in pairs {
        if l.vanishes(zero) {
            continue;
        }
        let mut row = vec![0.0f64; nonzero.len()];
        for f in l.factors() {
            row[col_of(*f).expect("nonvanishing factor in pattern")] += 1.0;
        }
        for f in r.factors() {
            row[col_of(*f).expect("nonvanishing factor in pattern")] -= 1.0;
        }
        if row.iter().any(|v| v.abs() > 0.5) {
            rows.push(row);
        }
    }
    let basis = null_space(&rows, nonzero.len());
    // sample two generic points of the stratum and gauge-fix both
    let mut canon_rows: Vec<Vec<Complex64>> = Vec::new();
    for run in 0..2usize {
        let mut z = vec![Complex64::new(0.0, 0.0); nonzero.len()];
        for (j, vec_b) in basis.iter().enumerate() {
            let w = generic_weight(run, j);
            for (i, v) in vec_b.iter().enumerate() {
                z[i] += w * Complex64::new(*v, 0.0);
            }
        }
        let mut b = BlockQuantizer::empty(space.dual().len());
        for a in 0..space.dual().len() {
            b.set_scalar(0, a, a, C_ONE);
            b.set_scalar(a, 0, a, C_ONE);
        }
        for key in keys.iter().filter(|s| zero.contains(s)) {
            b.set_scalar(key.0, key.1, key.2, C_ZERO);
        }
        for (i, key) in nonzero.iter().enumerate() {
            b.set_scalar(key.0, key.1, key.2, z[i].exp());
        }
        let (fixed, _gauge) = gauge_fix(space, &b)?;
        canon_rows.push(
            keys.iter()
                .map(|s| fixed.scalar(s.0, s.1, s.2))
                .collect::<Vec<Complex64>>(),
        );
    }
    // classify entries
    let mut entries = Vec::with_capacity(keys.len());
    let mut params: Vec<(Complex64, Complex64)> = Vec::new();
    for i in 0..keys.len() {
        let (v0, v1) = (canon_rows[0][i], canon_rows[1][i]);
        let e = if v0.norm() < 1e-6 && v1.norm() < 1e-6 {
            Entry::Zero
        } else if (v0 - C_ONE).norm() < 1e-6 && (v1 - C_ONE).norm() < 1e-6 {
            Entry::One
        } else {
            // identify equal parameters across slots
            let idx = params
                .iter()
                .position(|(a, b)| (a - v0).norm() < 1e-6 && (b - v1).norm() < 1e-6);
            match idx {
                Some(p) => Entry::Param(p),
                None => {
                    params.push((v0, v1));
                    Entry::Param(params.len() - 1)
                }
            }
        };
        entries.push(e);
    }
    let values = canon_rows[0].clone();
    Ok(Some((entries, values)))
}

fn generic_weight(run: usize, j: usize) -> Complex64 {
    // fixed transcendental-ish samples keep runs deterministic
    let base = [
        Complex64::new(0.31, 0.17),
        Complex64::new(-0.23, 0.41),
        Complex64::new(0.13, -0.29),
        Complex64::new(0.37, 0.07),
        Complex64::new(-0.11, -0.19),
        Complex64::new(0.29, 0.23),
        Complex64::new(0.17, -0.37),
        Complex64::new(-0.41, 0.13),
        Complex64::new(0.07, 0.31),
        Complex64::new(0.19, 0.11),
        Complex64::new(-0.29, 0.37),
    ];
    let v = base[(j + run * 3) % base.len()];
    v * Complex64::new(1.0 + run as f64 * 0.618, 0.0)
}

/// Null space basis of a small real matrix by Gauss-Jordan elimination.
fn null_space(rows: &[Vec<f64>], cols: usize) -> Vec<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let mut best = r;
        let mut best_val = 0.0;
        for i in r..m.len() {
            if m[i][c].abs() > best_val {
                best_val = m[i][c].abs();
                best = i;
            }
        }
        if best_val < 1e-9 {
            continue;
        }
        m.swap(r, best);
        let d = m[r][c];
        for v in m[r].iter_mut() {
            *v /= d;
        }
        for i in 0..m.len() {
            if i != r && m[i][c].abs() > 1e-12 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = f * m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![0.0f64; cols];
        v[fc] = 1.0;
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[ri][fc];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn s3_classification_families() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let space = QuantizerSpace::new(&s3, 0).unwrap();
        let cls = classify(&space).unwrap();
        let names: Vec<&str> = cls.families.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, vec!["1", "a", "b", "c", "d", "e"]);
        let a = cls.family("a").unwrap();
        assert_eq!(a.scalar_param_count, 1);
        assert_eq!(
            a.entries,
            vec![
                Entry::One,
                Entry::One,
                Entry::One,
                Entry::Param(0),
                Entry::Param(0),
                Entry::One
            ]
        );
        // rows f and g fold into the trivial family
        let trivial = cls.family("1").unwrap();
        assert_eq!(trivial.merged_rows, vec![String::from("f"), String::from("g")]);
        // one pathwise-consistent pattern falls outside the table
        assert_eq!(cls.uncataloged.len(), 1);
        assert_eq!(
            cls.uncataloged[0].entries,
            vec![
                Entry::One,
                Entry::One,
                Entry::One,
                Entry::Zero,
                Entry::Zero,
                Entry::One
            ]
        );
    }

    #[test]
    fn a4_classification_families() {
        let a4 = FiniteGroup::alternating(4).unwrap();
        let space = QuantizerSpace::new(&a4, 0).unwrap();
        let cls = classify(&space).unwrap();
        let names: Vec<&str> = cls.families.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, vec!["1", "a", "b", "c", "d", "e"]);
        let b = cls.family("b").unwrap();
        assert_eq!(
            b.matrix_forms,
            vec![
                MatrixForm::Zero2,
                MatrixForm::Nilpotent,
                MatrixForm::Unipotent,
                MatrixForm::DiagOne
            ]
        );
        assert!(b.merged_rows.contains(&String::from("f")));
        assert!(b.merged_rows.contains(&String::from("h")));
        assert!(b.merged_rows.contains(&String::from("j")));
        assert!(b.merged_rows.contains(&String::from("k")));
        assert_eq!(cls.family("c").unwrap().merged_rows, vec![String::from("g")]);
        assert_eq!(cls.family("d").unwrap().merged_rows, vec![String::from("i")]);
        let a = cls.family("a").unwrap();
        assert_eq!(a.matrix_forms, vec![MatrixForm::DiagPair, MatrixForm::JordanParam]);
    }

    #[test]
    fn family_instantiation_round_trips_scalars() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let space = QuantizerSpace::new(&s3, 0).unwrap();
        let cls = classify(&space).unwrap();
        let lam = Complex64::new(2.5, -0.5);
        let b = cls
            .family("a")
            .unwrap()
            .instantiate(&cls.scalar_keys, cls.dual_size, &[lam], None)
            .unwrap();
        assert!((b.scalar(2, 2, 0) - lam).norm() < 1e-15);
        assert!((b.scalar(2, 2, 2) - C_ONE).norm() < 1e-15);
    }
}

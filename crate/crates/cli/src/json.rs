//! JSON schemas for the file formats consumed and produced by the CLI.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use quantizer_core::abelian::{Cocycle, DualGroup};
use quantizer_core::group::{FiniteGroup, GroupAlgebraElement, GroupKind};
use quantizer_core::linalg::CMatrix;
use quantizer_core::quantizer::BlockQuantizer;
use quantizer_core::repr::Dual;
use quantizer_core::{Error, Result};

/// `[re, im]` pair.
pub type Cpx = [f64; 2];

pub fn to_cpx(z: Complex64) -> Cpx {
    [z.re, z.im]
}

pub fn from_cpx(c: Cpx) -> Complex64 {
    Complex64::new(c[0], c[1])
}

pub fn matrix_to_json(m: &CMatrix) -> Vec<Vec<Cpx>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| to_cpx(m[(i, j)])).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<Cpx>]) -> Result<CMatrix> {
    let r = rows.len();
    let c = rows.first().map(|x| x.len()).unwrap_or(0);
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Invalid("ragged matrix in JSON".into()));
    }
    Ok(CMatrix::from_fn(r, c, |i, j| from_cpx(rows[i][j])))
}

/// One term of a group algebra element; `g` is a label or an index.
#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub g: GroupRef,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Index(usize),
    Label(String),
}

/// `{"group": "<spec>", "terms": [{"g": ..., "re": ..., "im": ...}]}`;
/// omitted terms are zero.
#[derive(Debug, Serialize, Deserialize)]
pub struct ElementJson {
    pub group: String,
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    pub fn from_element(elem: &GroupAlgebraElement) -> ElementJson {
        let group = elem.group();
        let terms = elem
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(g, c)| TermJson {
                g: GroupRef::Label(group.label(g).to_string()),
                re: c.re,
                im: c.im,
            })
            .collect();
        ElementJson { group: group.kind().to_string(), terms }
    }

    pub fn resolve(&self, group: &Arc<FiniteGroup>) -> Result<GroupAlgebraElement> {
        let want = group.kind().to_string();
        if self.group != want {
            return Err(Error::Mismatch(format!(
                "element file is over '{}', expected '{}'",
                self.group, want
            )));
        }
        let mut out = GroupAlgebraElement::zero(group);
        for term in &self.terms {
            let idx = match &term.g {
                GroupRef::Index(i) => {
                    if *i >= group.order() {
                        return Err(Error::Invalid(format!("element index {i} out of range")));
                    }
                    *i
                }
                GroupRef::Label(l) => group
                    .index_of_label(l)
                    .ok_or_else(|| Error::Invalid(format!("unknown element label '{l}'")))?,
            };
            let prev = out.coeff(idx);
            out.set_coeff(idx, prev + Complex64::new(term.re, term.im));
        }
        Ok(out)
    }
}

/// `{"group": ..., "blocks": {"a,b,g": [[[re,im],...],...]}}`; omitted
/// blocks default per normalization.
#[derive(Debug, Serialize, Deserialize)]
pub struct BlocksJson {
    pub group: String,
    pub blocks: BTreeMap<String, Vec<Vec<Cpx>>>,
}

impl BlocksJson {
    pub fn from_blocks(group: &GroupKind, b: &BlockQuantizer) -> BlocksJson {
        let blocks = b
            .iter()
            .map(|((a, bb, g), m)| (format!("{a},{bb},{g}"), matrix_to_json(m)))
            .collect();
        BlocksJson { group: group.to_string(), blocks }
    }

    pub fn resolve(&self, dual: &Dual) -> Result<BlockQuantizer> {
        let mut out = BlockQuantizer::empty(dual.len());
        // normalization defaults first
        for a in 0..dual.len() {
            out.set_scalar(0, a, a, Complex64::new(1.0, 0.0));
            out.set_scalar(a, 0, a, Complex64::new(1.0, 0.0));
        }
        for (key, rows) in &self.blocks {
            let parts: Vec<&str> = key.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Invalid(format!("bad block key '{key}'")));
            }
            let idx: Vec<usize> = parts
                .iter()
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Invalid(format!("bad block key '{key}'")))?;
            let (a, b, g) = (idx[0], idx[1], idx[2]);
            if a >= dual.len() || b >= dual.len() || g >= dual.len() {
                return Err(Error::Invalid(format!("block key '{key}' out of range")));
            }
            let c = dual.clebsch_gordan(a, b)[g];
            if c == 0 {
                return Err(Error::Invalid(format!(
                    "block key '{key}' addresses a vanishing multiplicity"
                )));
            }
            let m = matrix_from_json(rows)?;
            if m.rows() != c || m.cols() != c {
                return Err(Error::Mismatch(format!("block '{key}' must be {c}x{c}")));
            }
            out.set(a, b, g, m);
        }
        Ok(out)
    }
}

/// `{"dual": "<group spec>", "values": [[[re,im],...],...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct CocycleJson {
    pub dual: String,
    pub values: Vec<Vec<Cpx>>,
}

impl CocycleJson {
    pub fn from_cocycle(kind: &GroupKind, z: &Cocycle) -> CocycleJson {
        CocycleJson { dual: kind.to_string(), values: matrix_to_json(&z.values) }
    }

    pub fn resolve(&self, dual: &DualGroup) -> Result<Cocycle> {
        let values = matrix_from_json(&self.values)?;
        if values.rows() != dual.size() || values.cols() != dual.size() {
            return Err(Error::Mismatch(format!(
                "cocycle table must be {0}x{0}",
                dual.size()
            )));
        }
        Ok(Cocycle { values })
    }
}

/// `{"blocks": {"a" or "a,b": [[[re,im],...],...]}}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct FourierJson {
    pub blocks: BTreeMap<String, Vec<Vec<Cpx>>>,
}

/// Character and Clebsch-Gordan dump:
/// `{"group": ..., "chars": [[..]], "cg": {"(a,b)": {"g": c}}}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub group: String,
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub chars: Vec<Vec<Cpx>>,
    pub cg: BTreeMap<String, BTreeMap<String, usize>>,
}

/// Equivariant algebra: representation matrices plus structure constants.
#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub group: String,
    pub dim: usize,
    /// One `dim x dim` matrix per group element.
    pub rep: Vec<Vec<Vec<Cpx>>>,
    /// `mult[k][i][j]` is the coefficient of `e_k` in `e_i e_j`.
    pub mult: Vec<Vec<Vec<Cpx>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub associativity_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariance_residual: Option<f64>,
}

impl AlgebraJson {
    pub fn from_algebra(
        kind: &GroupKind,
        alg: &quantizer_core::actions::EquivariantAlgebra,
    ) -> AlgebraJson {
        AlgebraJson {
            group: kind.to_string(),
            dim: alg.dim(),
            rep: alg.rep.iter().map(matrix_to_json).collect(),
            mult: alg.mult.iter().map(matrix_to_json).collect(),
            associativity_residual: None,
            equivariance_residual: None,
        }
    }

    pub fn resolve(
        &self,
        group: &Arc<FiniteGroup>,
    ) -> Result<quantizer_core::actions::EquivariantAlgebra> {
        if self.group != group.kind().to_string() {
            return Err(Error::Mismatch(format!(
                "algebra file is over '{}', expected '{}'",
                self.group,
                group.kind()
            )));
        }
        if self.rep.len() != group.order() || self.mult.len() != self.dim {
            return Err(Error::Mismatch("algebra table shapes".into()));
        }
        let rep: Result<Vec<CMatrix>> = self.rep.iter().map(|m| matrix_from_json(m)).collect();
        let mult: Result<Vec<CMatrix>> = self.mult.iter().map(|m| matrix_from_json(m)).collect();
        let (rep, mult) = (rep?, mult?);
        for m in rep.iter().chain(mult.iter()) {
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::Mismatch("algebra matrix dimensions".into()));
            }
        }
        Ok(quantizer_core::actions::EquivariantAlgebra { rep, mult })
    }
}

/// Machine-readable error envelope printed on stderr.
#[derive(Debug, Serialize)]
pub struct ErrorJson {
    pub error: ErrorBody,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

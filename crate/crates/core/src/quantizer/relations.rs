//! Symbolic relations among the scalar blocks, extracted from the coherence
//! condition on triple tensor products.
//!
//! For every irrep triple and every constituent appearing with total path
//! multiplicity one, both sides of the coherence diagram act by a product of
//! two scalar blocks, and the equation is basis independent. These scalar
//! equations are collected and reduced: common factors are cancelled
//! (solutions are stratified by support, and within a stratum the nonzero
//! blocks are invertible), symbol equalities become equivalence classes,
//! definition-like equations (one side a single symbol) are substituted to
//! drop immediately redundant consequences, and surviving equations sharing
//! a monomial are merged into equality chains.
//!
//! For abelian groups every constituent is multiplicity free and the raw
//! scan already is the 2-cocycle identity; it is returned undeduced.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Result;
use crate::repr::Dual;

/// A scalar block `q^gamma_{alpha,beta}` named by its indices.
pub type Symbol = (usize, usize, usize);

/// A product of scalar blocks; the empty product is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    factors: Vec<Symbol>,
}

impl Monomial {
    pub fn new(mut factors: Vec<Symbol>) -> Monomial {
        factors.sort_unstable();
        Monomial { factors }
    }

    pub fn one() -> Monomial {
        Monomial { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[Symbol] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Evaluate under an assignment; missing symbols evaluate to 0.
    pub fn eval(&self, assignment: &BTreeMap<Symbol, Complex64>) -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for f in &self.factors {
            v *= assignment
                .get(f)
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0));
        }
        v
    }

    /// True when some factor lies in the zero-support set.
    pub fn vanishes(&self, zero: &BTreeSet<Symbol>) -> bool {
        self.factors.iter().any(|f| zero.contains(f))
    }

    fn cancel_common(a: &Monomial, b: &Monomial) -> (Monomial, Monomial) {
        let mut left = a.factors.clone();
        let mut right: Vec<Option<Symbol>> = b.factors.iter().copied().map(Some).collect();
        left.retain(|s| {
            if let Some(slot) = right.iter_mut().find(|r| **r == Some(*s)) {
                *slot = None;
                false
            } else {
                true
            }
        });
        (
            Monomial::new(left),
            Monomial::new(right.into_iter().flatten().collect()),
        )
    }

    fn substitute(&self, defs: &BTreeMap<Symbol, Monomial>) -> Monomial {
        let mut current = self.clone();
        for _ in 0..16 {
            let mut next = Vec::new();
            let mut changed = false;
            for f in &current.factors {
                match defs.get(f) {
                    Some(m) => {
                        next.extend_from_slice(&m.factors);
                        changed = true;
                    }
                    None => next.push(*f),
                }
            }
            current = Monomial::new(next);
            if !changed {
                break;
            }
        }
        current
    }

    pub fn render(&self, names: &dyn Fn(Symbol) -> String) -> String {
        if self.factors.is_empty() {
            return String::from("1");
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&names(self.factors[i]));
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }
}

/// An equality chain of monomials (at least two sides).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    sides: Vec<Monomial>,
}

impl Relation {
    pub fn sides(&self) -> &[Monomial] {
        &self.sides
    }

    /// Consecutive pairs of the chain as atomic equalities.
    pub fn atomic_pairs(&self) -> Vec<(Monomial, Monomial)> {
        self.sides
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect()
    }

    /// Largest pairwise defect under an assignment.
    pub fn residual(&self, assignment: &BTreeMap<Symbol, Complex64>) -> f64 {
        let vals: Vec<Complex64> = self.sides.iter().map(|m| m.eval(assignment)).collect();
        let mut r = 0.0f64;
        for i in 1..vals.len() {
            r = r.max((vals[i] - vals[0]).norm());
        }
        r
    }

    pub fn render(&self, names: &dyn Fn(Symbol) -> String) -> String {
        let parts: Vec<String> = self.sides.iter().map(|m| m.render(names)).collect();
        parts.join(" = ")
    }
}

/// Conventional display name for a scalar block symbol.
pub fn symbol_name(s: Symbol) -> String {
    let (a, b, g) = s;
    format!("q[{a},{b};{g}]")
}

fn equation_key(a: &Monomial, b: &Monomial) -> (Monomial, Monomial) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Extract the scalar relation set for the dual's group.
pub fn extract_relations(dual: &Dual) -> Result<Vec<Relation>> {
    let abelian = dual.irreps().iter().all(|i| i.dim == 1);
    let raw = raw_scan(dual, abelian);
    if abelian {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (l, r) in raw {
            let key = equation_key(&l, &r);
            if seen.insert(key.clone()) {
                out.push(Relation { sides: vec![key.0, key.1] });
            }
        }
        return Ok(out);
    }
    Ok(reduce(raw))
}

/// Scan irrep triples for multiplicity-free constituents. For nonabelian
/// groups the scan covers triples built from at most two distinct
/// nontrivial irreps; mixed triples only repeat consequences of these.
fn raw_scan(dual: &Dual, include_all: bool) -> Vec<(Monomial, Monomial)> {
    let k = dual.len();
    let mut out = Vec::new();
    for alpha in 0..k {
        for beta in 0..k {
            for gamma in 0..k {
                if !include_all {
                    let mut labels = BTreeSet::new();
                    for x in [alpha, beta, gamma] {
                        if x != 0 {
                            labels.insert(x);
                        }
                    }
                    if labels.len() > 2 {
                        continue;
                    }
                }
                scan_triple(dual, alpha, beta, gamma, &mut out);
            }
        }
    }
    out
}

fn scan_triple(
    dual: &Dual,
    alpha: usize,
    beta: usize,
    gamma: usize,
    out: &mut Vec<(Monomial, Monomial)>,
) {
    let k = dual.len();
    let cg_bg = dual.clebsch_gordan(beta, gamma);
    let cg_ab = dual.clebsch_gordan(alpha, beta);
    for zeta in 0..k {
        let mut left_path = None;
        let mut left_count = 0usize;
        for eta in 0..k {
            let c = cg_bg[eta] * dual.clebsch_gordan(alpha, eta)[zeta];
            left_count += c;
            if c == 1 {
                left_path = Some(eta);
            }
        }
        let mut right_path = None;
        let mut right_count = 0usize;
        for xi in 0..k {
            let c = cg_ab[xi] * dual.clebsch_gordan(xi, gamma)[zeta];
            right_count += c;
            if c == 1 {
                right_path = Some(xi);
            }
        }
        if left_count != 1 || right_count != 1 {
            continue;
        }
        let eta = left_path.expect("unique left path");
        let xi = right_path.expect("unique right path");
        let mut lfac = Vec::new();
        if beta != 0 && gamma != 0 {
            lfac.push((beta, gamma, eta));
        }
        if alpha != 0 && eta != 0 {
            lfac.push((alpha, eta, zeta));
        }
        let mut rfac = Vec::new();
        if alpha != 0 && beta != 0 {
            rfac.push((alpha, beta, xi));
        }
        if xi != 0 && gamma != 0 {
            rfac.push((xi, gamma, zeta));
        }
        let l = Monomial::new(lfac);
        let r = Monomial::new(rfac);
        if l != r {
            out.push((l, r));
        }
    }
}

struct UnionFind {
    parent: BTreeMap<Symbol, Symbol>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind { parent: BTreeMap::new() }
    }

    fn find(&mut self, s: Symbol) -> Symbol {
        let p = *self.parent.get(&s).unwrap_or(&s);
        if p == s {
            return s;
        }
        let root = self.find(p);
        self.parent.insert(s, root);
        root
    }

    fn union(&mut self, a: Symbol, b: Symbol) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(hi, lo);
    }

    fn classes(&mut self) -> BTreeMap<Symbol, BTreeSet<Symbol>> {
        let keys: Vec<Symbol> = self.parent.keys().copied().collect();
        let mut out: BTreeMap<Symbol, BTreeSet<Symbol>> = BTreeMap::new();
        for s in keys {
            let r = self.find(s);
            out.entry(r).or_default().insert(s);
            out.entry(r).or_default().insert(r);
        }
        out
    }
}

fn reduce(raw: Vec<(Monomial, Monomial)>) -> Vec<Relation> {
    let mut uf = UnionFind::new();
    let mut equations: Vec<(Monomial, Monomial)> = raw;
    // cancellation / class extraction to a fixed point
    for _ in 0..8 {
        let mut changed = false;
        let mut next = Vec::new();
        for (l, r) in equations.drain(..) {
            let l = Monomial::new(l.factors.iter().map(|s| uf.find(*s)).collect());
            let r = Monomial::new(r.factors.iter().map(|s| uf.find(*s)).collect());
            let (l, r) = Monomial::cancel_common(&l, &r);
            if l == r {
                changed = true;
                continue;
            }
            if l.degree() == 1 && r.degree() == 1 {
                uf.union(l.factors[0], r.factors[0]);
                changed = true;
                continue;
            }
            next.push((l, r));
        }
        equations = next;
        if !changed {
            break;
        }
    }
    // final class rewrite + dedupe
    let mut seen = BTreeSet::new();
    let mut rewritten = Vec::new();
    for (l, r) in equations {
        let l = Monomial::new(l.factors.iter().map(|s| uf.find(*s)).collect());
        let r = Monomial::new(r.factors.iter().map(|s| uf.find(*s)).collect());
        let (l, r) = Monomial::cancel_common(&l, &r);
        if l == r {
            continue;
        }
        let key = equation_key(&l, &r);
        if seen.insert(key.clone()) {
            rewritten.push(key);
        }
    }
    // definitions: equations with a single-symbol side
    let mut defs: BTreeMap<Symbol, Monomial> = BTreeMap::new();
    for (l, r) in &rewritten {
        let (sym, body) = if l.degree() == 1 {
            (l.factors[0], r.clone())
        } else if r.degree() == 1 {
            (r.factors[0], l.clone())
        } else {
            continue;
        };
        if body.factors.contains(&sym) {
            continue;
        }
        defs.entry(sym).or_insert(body);
    }
    // drop non-definition equations that normalize to a tautology
    let kept: Vec<(Monomial, Monomial)> = rewritten
        .into_iter()
        .filter(|(l, r)| {
            if l.degree() == 1 || r.degree() == 1 {
                return true;
            }
            l.substitute(&defs) != r.substitute(&defs)
        })
        .collect();
    // merge into chains: connected components over shared monomials
    let mut nodes: Vec<Monomial> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    fn index_of(nodes: &mut Vec<Monomial>, m: &Monomial) -> usize {
        match nodes.iter().position(|n| n == m) {
            Some(i) => i,
            None => {
                nodes.push(m.clone());
                nodes.len() - 1
            }
        }
    }
    for (l, r) in &kept {
        let i = index_of(&mut nodes, l);
        let j = index_of(&mut nodes, r);
        edges.push((i, j));
    }
    for (_, members) in uf.classes() {
        let ms: Vec<Monomial> = members.iter().map(|s| Monomial::new(vec![*s])).collect();
        let first = index_of(&mut nodes, &ms[0]);
        for m in &ms[1..] {
            let j = index_of(&mut nodes, m);
            edges.push((first, j));
        }
    }
    fn comp_root(comp: &mut Vec<usize>, i: usize) -> usize {
        if comp[i] == i {
            i
        } else {
            let r = comp_root(comp, comp[i]);
            comp[i] = r;
            r
        }
    }
    let mut comp: Vec<usize> = (0..nodes.len()).collect();
    for (i, j) in edges {
        let ri = comp_root(&mut comp, i);
        let rj = comp_root(&mut comp, j);
        if ri != rj {
            let (lo, hi) = (ri.min(rj), ri.max(rj));
            comp[hi] = lo;
        }
    }
    let mut groups: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
    for i in 0..nodes.len() {
        let r = comp_root(&mut comp, i);
        groups.entry(r).or_default().push(nodes[i].clone());
    }
    let mut out: Vec<Relation> = groups
        .into_values()
        .filter(|g| g.len() >= 2)
        .map(|mut g| {
            g.sort();
            g.dedup();
            Relation { sides: g }
        })
        .collect();
    out.sort_by(|a, b| a.sides[0].cmp(&b.sides[0]));
    out
}

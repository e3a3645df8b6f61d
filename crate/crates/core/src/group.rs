//! Finite groups as explicit multiplication tables, and their group algebras.
//!
//! Elements are canonical indices into a fixed enumeration. Permutation
//! groups enumerate their elements in lexicographic one-line order, so the
//! index of any element is stable across runs and platforms. Product groups
//! use the g-major pairing `index(g, h) = g * |H| + h`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{C_ONE, C_ZERO};

/// Largest order accepted for a base (non-product) group.
pub const BASE_ORDER_CAP: usize = 120;
/// Largest order accepted for a materialized product group.
pub const PRODUCT_ORDER_CAP: usize = 1728;

/// How a group was constructed; doubles as its structural identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Product(Box<GroupKind>, Box<GroupKind>),
}

impl GroupKind {
    /// Parse a compact spec such as `S3`, `A4`, `C6`, `C2xC2`, `S3xS3`.
    pub fn parse(spec: &str) -> Result<GroupKind> {
        let parts: Vec<&str> = spec.split('x').collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::Invalid(format!("bad group spec '{spec}'")));
        }
        let mut kinds = Vec::new();
        for part in parts {
            let (head, tail) = part.split_at(1);
            let n: usize = tail
                .parse()
                .map_err(|_| Error::Invalid(format!("bad group spec '{spec}'")))?;
            let kind = match head {
                "C" | "c" | "Z" | "z" => GroupKind::Cyclic(n),
                "S" | "s" => GroupKind::Symmetric(n),
                "A" | "a" => GroupKind::Alternating(n),
                _ => return Err(Error::Invalid(format!("bad group spec '{spec}'"))),
            };
            kinds.push(kind);
        }
        let mut it = kinds.into_iter();
        let first = it.next().unwrap();
        Ok(it.fold(first, |acc, k| GroupKind::Product(Box::new(acc), Box::new(k))))
    }

    pub fn is_abelian_builtin(&self) -> bool {
        match self {
            GroupKind::Cyclic(_) => true,
            GroupKind::Product(a, b) => a.is_abelian_builtin() && b.is_abelian_builtin(),
            GroupKind::Symmetric(n) => *n <= 2,
            GroupKind::Alternating(n) => *n <= 3,
        }
    }

    pub fn build(&self) -> Result<Arc<FiniteGroup>> {
        match self {
            GroupKind::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupKind::Symmetric(n) => FiniteGroup::symmetric(*n),
            GroupKind::Alternating(n) => FiniteGroup::alternating(*n),
            GroupKind::Product(a, b) => {
                let left = a.build()?;
                let right = b.build()?;
                FiniteGroup::product(&left, &right)
            }
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Symmetric(n) => write!(f, "S{n}"),
            GroupKind::Alternating(n) => write!(f, "A{n}"),
            GroupKind::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

/// A finite group given by its full multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    kind: GroupKind,
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    labels: Vec<String>,
    classes: Vec<Vec<usize>>,
    /// One-line forms for permutation groups, in enumeration order.
    perms: Option<Vec<Vec<u8>>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl FiniteGroup {
    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of the element carrying this label, if any.
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// One-line permutation forms for symmetric/alternating groups.
    pub fn permutations(&self) -> Option<&[Vec<u8>]> {
        self.perms.as_deref()
    }

    /// Smallest-index representative per class.
    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&g))
            .expect("element outside class partition")
    }

    pub fn cyclic(n: usize) -> Result<Arc<FiniteGroup>> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group needs n >= 1".into()));
        }
        if n > 24 {
            return Err(Error::Capacity { what: "cyclic group order".into(), limit: 24, got: n });
        }
        let mult: Vec<u32> = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
            .collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Arc::new(FiniteGroup::finish(GroupKind::Cyclic(n), n, mult, labels, None)))
    }

    pub fn symmetric(n: usize) -> Result<Arc<FiniteGroup>> {
        let perms = all_permutations(n)?;
        FiniteGroup::from_permutations(GroupKind::Symmetric(n), perms)
    }

    pub fn alternating(n: usize) -> Result<Arc<FiniteGroup>> {
        let perms: Vec<Vec<u8>> =
            all_permutations(n)?.into_iter().filter(|p| is_even(p)).collect();
        FiniteGroup::from_permutations(GroupKind::Alternating(n), perms)
    }

    fn from_permutations(kind: GroupKind, perms: Vec<Vec<u8>>) -> Result<Arc<FiniteGroup>> {
        let order = perms.len();
        if order > BASE_ORDER_CAP {
            return Err(Error::Capacity {
                what: format!("{kind} order"),
                limit: BASE_ORDER_CAP,
                got: order,
            });
        }
        let index_of = |p: &[u8]| -> u32 {
            perms
                .iter()
                .position(|q| q.as_slice() == p)
                .expect("permutation group not closed") as u32
        };
        let mut mult = vec![0u32; order * order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                // (p * q)(x) = p(q(x)); apply q first
                let comp: Vec<u8> = (0..p.len()).map(|x| p[q[x] as usize]).collect();
                mult[i * order + j] = index_of(&comp);
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Ok(Arc::new(FiniteGroup::finish(kind, order, mult, labels, Some(perms))))
    }

    pub fn product(left: &Arc<FiniteGroup>, right: &Arc<FiniteGroup>) -> Result<Arc<FiniteGroup>> {
        let order = left.order * right.order;
        if order > PRODUCT_ORDER_CAP {
            return Err(Error::Capacity {
                what: "product group order".into(),
                limit: PRODUCT_ORDER_CAP,
                got: order,
            });
        }
        let (nl, nr) = (left.order, right.order);
        let mut mult = vec![0u32; order * order];
        for g1 in 0..nl {
            for h1 in 0..nr {
                let a = g1 * nr + h1;
                for g2 in 0..nl {
                    let gg = left.mul(g1, g2) * nr;
                    let row = a * order + g2 * nr;
                    for h2 in 0..nr {
                        mult[row + h2] = (gg + right.mul(h1, h2)) as u32;
                    }
                }
            }
        }
        let mut labels = Vec::with_capacity(order);
        for g in 0..nl {
            for h in 0..nr {
                labels.push(format!("({},{})", left.labels[g], right.labels[h]));
            }
        }
        let kind =
            GroupKind::Product(Box::new(left.kind.clone()), Box::new(right.kind.clone()));
        Ok(Arc::new(FiniteGroup::finish(kind, order, mult, labels, None)))
    }

    fn finish(
        kind: GroupKind,
        order: usize,
        mult: Vec<u32>,
        labels: Vec<String>,
        perms: Option<Vec<Vec<u8>>>,
    ) -> FiniteGroup {
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mult[e * order + g] as usize == g && mult[g * order + e] as usize == g))
            .expect("no identity element");
        let mut inv = vec![0u32; order];
        for g in 0..order {
            inv[g] = (0..order)
                .find(|&h| mult[g * order + h] as usize == identity)
                .expect("no inverse element") as u32;
        }
        let classes = conjugacy_classes(order, &mult, &inv);
        FiniteGroup { kind, order, mult, inv, identity, labels, classes, perms }
    }

    /// Exhaustive associativity check; cheap for desk-scale groups.
    pub fn check_associativity(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rows and columns of the multiplication table are permutations.
    pub fn check_latin_square(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                seen[self.mul(a, b)] = true;
            }
            if seen.iter().any(|s| !s) {
                return false;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                seen[self.mul(b, a)] = true;
            }
            if seen.iter().any(|s| !s) {
                return false;
            }
        }
        true
    }
}

/// Flat index of `(g, h)` in a product group `G x H`.
#[inline]
pub fn pair_index(right_order: usize, g: usize, h: usize) -> usize {
    g * right_order + h
}

/// Inverse of [`pair_index`].
#[inline]
pub fn pair_split(right_order: usize, idx: usize) -> (usize, usize) {
    (idx / right_order, idx % right_order)
}

fn all_permutations(n: usize) -> Result<Vec<Vec<u8>>> {
    if n == 0 {
        return Err(Error::Invalid("permutation group needs n >= 1".into()));
    }
    if n > 5 {
        return Err(Error::Capacity { what: "permutation degree".into(), limit: 5, got: n });
    }
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    permute_rec(n, &mut current, &mut used, &mut out);
    Ok(out)
}

fn permute_rec(n: usize, current: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            current.push(v as u8);
            permute_rec(n, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Cycle notation on 1-based points, e.g. `(12)(34)`; identity is `()`.
fn cycle_notation(p: &[u8]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut next = p[start] as usize;
        while next != start {
            seen[next] = true;
            cycle.push(next);
            next = p[next] as usize;
        }
        out.push('(');
        for pt in cycle {
            out.push_str(&(pt + 1).to_string());
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn conjugacy_classes(order: usize, mult: &[u32], inv: &[u32]) -> Vec<Vec<usize>> {
    let mul = |a: usize, b: usize| mult[a * order + b] as usize;
    let mut assigned = vec![false; order];
    let mut classes = Vec::new();
    for g in 0..order {
        if assigned[g] {
            continue;
        }
        let mut class = Vec::new();
        for h in 0..order {
            let c = mul(mul(h, g), inv[h] as usize);
            if !assigned[c] {
                assigned[c] = true;
                class.push(c);
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// An element of the complex group algebra `C[G]`.
#[derive(Debug, Clone)]
pub struct GroupAlgebraElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<Complex64>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupAlgebraElement { group: group.clone(), coeffs: vec![C_ZERO; group.order()] }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[group.identity()] = C_ONE;
        e
    }

    /// Basis element `delta_g`.
    pub fn delta(group: &Arc<FiniteGroup>, g: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[g] = C_ONE;
        e
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Mismatch(format!(
                "coefficient vector length {} does not match group order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupAlgebraElement { group: group.clone(), coeffs })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> Complex64 {
        self.coeffs[g]
    }

    pub fn set_coeff(&mut self, g: usize, v: Complex64) {
        self.coeffs[g] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(GroupAlgebraElement { group: self.group.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a - b)
            .collect();
        Ok(GroupAlgebraElement { group: self.group.clone(), coeffs })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    /// Convolution product: coefficient of `g` is the sum of `a(x) b(y)`
    /// over pairs with `x y = g`. Zero coefficients are skipped, which makes
    /// products of sparse elements (the common case in coherence checks)
    /// cheap even in large product algebras.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let g = &self.group;
        let mut out = Self::zero(g);
        for (x, a) in self.coeffs.iter().enumerate() {
            if *a == C_ZERO {
                continue;
            }
            for (y, b) in other.coeffs.iter().enumerate() {
                if *b == C_ZERO {
                    continue;
                }
                out.coeffs[g.mul(x, y)] += a * b;
            }
        }
        Ok(out)
    }

    pub fn inf_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn diff_norm(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.group == other.group && self.diff_norm(other) <= tol
    }

    /// Ring homomorphism `delta_g -> delta_(g,g)` into `C[G x G]`.
    pub fn diagonal_embed(&self, square: &Arc<FiniteGroup>) -> Result<GroupAlgebraElement> {
        let n = self.group.order();
        check_square_of(&self.group, square)?;
        let mut out = GroupAlgebraElement::zero(square);
        for (g, a) in self.coeffs.iter().enumerate() {
            if *a != C_ZERO {
                out.coeffs[pair_index(n, g, g)] = *a;
            }
        }
        Ok(out)
    }

    /// `a (x) b` in `C[G x G]`: coefficient at `(g, h)` is `a(g) b(h)`.
    pub fn tensor_embed(
        a: &GroupAlgebraElement,
        b: &GroupAlgebraElement,
        square: &Arc<FiniteGroup>,
    ) -> Result<GroupAlgebraElement> {
        a.check_same_group(b)?;
        let n = a.group.order();
        check_square_of(&a.group, square)?;
        let mut out = GroupAlgebraElement::zero(square);
        for (g, x) in a.coeffs.iter().enumerate() {
            if *x == C_ZERO {
                continue;
            }
            for (h, y) in b.coeffs.iter().enumerate() {
                if *y != C_ZERO {
                    out.coeffs[pair_index(n, g, h)] = x * y;
                }
            }
        }
        Ok(out)
    }

    /// True when this element commutes with every basis element.
    pub fn is_central(&self, tol: f64) -> bool {
        let g = &self.group;
        for h in 0..g.order() {
            let d = Self::delta(g, h);
            let lhs = self.multiply(&d).unwrap();
            let rhs = d.multiply(self).unwrap();
            if lhs.diff_norm(&rhs) > tol {
                return false;
            }
        }
        true
    }

    /// Two-sided inverse obtained by solving the convolution linear system.
    pub fn invert(&self) -> Result<GroupAlgebraElement> {
        use crate::linalg::CMatrix;
        let g = &self.group;
        let n = g.order();
        // (l * u)(y) = sum_x l(y x^{-1}) u(x)
        let m = CMatrix::from_fn(n, n, |y, x| self.coeffs[g.mul(y, g.inv(x))]);
        let mut rhs = CMatrix::zeros(n, 1);
        rhs[(g.identity(), 0)] = C_ONE;
        let u = m
            .solve(&rhs)
            .map_err(|_| Error::Singular("group algebra element is not a unit".into()))?;
        let coeffs = (0..n).map(|x| u[(x, 0)]).collect();
        Ok(GroupAlgebraElement { group: g.clone(), coeffs })
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "elements over different groups: {} vs {}",
                self.group.kind(),
                other.group.kind()
            )))
        }
    }
}

/// Require `square` to be `G x G` for the given `G`.
pub fn check_square_of(base: &Arc<FiniteGroup>, square: &Arc<FiniteGroup>) -> Result<()> {
    match square.kind() {
        GroupKind::Product(a, b) if **a == *base.kind() && **b == *base.kind() => Ok(()),
        k => Err(Error::Mismatch(format!("expected {0}x{0}, got {k}", base.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_shape_and_classes() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.conjugacy_classes().len(), 3);
        assert!(s3.check_associativity());
        assert!(s3.check_latin_square());
        // (), (12), (123) land in three distinct classes
        let e = s3.index_of_label("()").unwrap();
        let t = s3.index_of_label("(12)").unwrap();
        let r = s3.index_of_label("(123)").unwrap();
        let classes = [s3.class_of(e), s3.class_of(t), s3.class_of(r)];
        assert_eq!(classes.iter().collect::<alloc::collections::BTreeSet<_>>().len(), 3);
        assert_eq!(s3.conjugacy_classes()[classes[1]].len(), 3);
        assert_eq!(s3.conjugacy_classes()[classes[2]].len(), 2);
    }

    #[test]
    fn a4_shape_and_classes() {
        let a4 = FiniteGroup::alternating(4).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.conjugacy_classes().len(), 4);
        assert!(a4.check_associativity());
        // (), (12)(34), (123), (132) represent the four classes
        let reps = ["()", "(12)(34)", "(123)", "(132)"];
        let mut classes = alloc::collections::BTreeSet::new();
        for r in reps {
            let idx = a4.index_of_label(r).unwrap();
            classes.insert(a4.class_of(idx));
        }
        assert_eq!(classes.len(), 4);
    }

    #[test]
    fn trivial_group() {
        let c1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.identity(), 0);
    }

    #[test]
    fn caps_enforced() {
        assert!(FiniteGroup::cyclic(25).is_err());
        assert!(FiniteGroup::symmetric(6).is_err());
        let a4 = FiniteGroup::alternating(4).unwrap();
        let sq = FiniteGroup::product(&a4, &a4).unwrap();
        let cube = FiniteGroup::product(&sq, &a4).unwrap();
        assert_eq!(cube.order(), 1728);
        assert!(FiniteGroup::product(&cube, &a4).is_err());
    }

    #[test]
    fn product_componentwise() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let p = FiniteGroup::product(&c2, &c3).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.check_associativity());
        assert!(p.check_latin_square());
        // (1,1) * (1,2) = (0,0)
        let a = pair_index(3, 1, 1);
        let b = pair_index(3, 1, 2);
        assert_eq!(p.mul(a, b), pair_index(3, 0, 0));
        assert_eq!(p.label(pair_index(3, 1, 2)), "(1,2)");
    }

    #[test]
    fn convolution_unit_and_basis() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let one = GroupAlgebraElement::one(&s3);
        let a = GroupAlgebraElement::from_coeffs(
            &s3,
            (0..6).map(|i| Complex64::new(i as f64, 1.0)).collect(),
        )
        .unwrap();
        assert!(one.multiply(&a).unwrap().approx_eq(&a, 1e-12));
        assert!(a.multiply(&one).unwrap().approx_eq(&a, 1e-12));
        for g in 0..6 {
            for h in 0..6 {
                let dg = GroupAlgebraElement::delta(&s3, g);
                let dh = GroupAlgebraElement::delta(&s3, h);
                let prod = dg.multiply(&dh).unwrap();
                assert!(prod.approx_eq(&GroupAlgebraElement::delta(&s3, s3.mul(g, h)), 1e-12));
            }
        }
    }

    #[test]
    fn sum_of_group_squares() {
        // (sum_g g)^2 = |G| sum_g g in C[S3]; oracle: count pairs by brute force
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let all = GroupAlgebraElement::from_coeffs(&s3, vec![C_ONE; 6]).unwrap();
        let prod = all.multiply(&all).unwrap();
        let mut expected = vec![0.0; 6];
        for x in 0..6 {
            for y in 0..6 {
                expected[s3.mul(x, y)] += 1.0;
            }
        }
        for g in 0..6 {
            assert!((prod.coeff(g).re - expected[g]).abs() < 1e-12);
            assert!((expected[g] - 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_embed_is_ring_map() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let sq = FiniteGroup::product(&s3, &s3).unwrap();
        let a = GroupAlgebraElement::from_coeffs(
            &s3,
            (0..6).map(|i| Complex64::new(0.3 * i as f64 - 1.0, 0.1 * i as f64)).collect(),
        )
        .unwrap();
        let b = GroupAlgebraElement::from_coeffs(
            &s3,
            (0..6).map(|i| Complex64::new(1.0 - 0.2 * i as f64, -0.4 + 0.05 * i as f64)).collect(),
        )
        .unwrap();
        let lhs = a.multiply(&b).unwrap().diagonal_embed(&sq).unwrap();
        let rhs = a
            .diagonal_embed(&sq)
            .unwrap()
            .multiply(&b.diagonal_embed(&sq).unwrap())
            .unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-12));
        // 1 -> 1 and delta_g -> delta_(g,g)
        let one = GroupAlgebraElement::one(&s3);
        assert!(one
            .diagonal_embed(&sq)
            .unwrap()
            .approx_eq(&GroupAlgebraElement::one(&sq), 1e-15));
    }

    #[test]
    fn tensor_embed_multiplies_componentwise() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let sq = FiniteGroup::product(&s3, &s3).unwrap();
        let a = GroupAlgebraElement::delta(&s3, 2);
        let b = GroupAlgebraElement::delta(&s3, 4);
        let t = GroupAlgebraElement::tensor_embed(&a, &b, &sq).unwrap();
        assert!(t.approx_eq(&GroupAlgebraElement::delta(&sq, pair_index(6, 2, 4)), 1e-15));
        // (a (x) b)(c (x) d) = ac (x) bd on random dense elements
        let dense = |seed: usize| {
            GroupAlgebraElement::from_coeffs(
                &s3,
                (0..6)
                    .map(|i| Complex64::new(((seed * 7 + i * 3) % 11) as f64 - 5.0, (i % 3) as f64))
                    .collect(),
            )
            .unwrap()
        };
        let (a, b, c, d) = (dense(1), dense(2), dense(3), dense(4));
        let lhs = GroupAlgebraElement::tensor_embed(&a, &b, &sq)
            .unwrap()
            .multiply(&GroupAlgebraElement::tensor_embed(&c, &d, &sq).unwrap())
            .unwrap();
        let rhs = GroupAlgebraElement::tensor_embed(
            &a.multiply(&c).unwrap(),
            &b.multiply(&d).unwrap(),
            &sq,
        )
        .unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-10));
    }

    #[test]
    fn unit_inversion() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let mut l = GroupAlgebraElement::one(&s3).scale(Complex64::new(2.0, 0.0));
        // add a central class-sum perturbation to keep it central and invertible
        for g in [3usize, 4] {
            l.set_coeff(g, Complex64::new(0.25, 0.1));
        }
        assert!(l.is_central(1e-12));
        let inv = l.invert().unwrap();
        assert!(l
            .multiply(&inv)
            .unwrap()
            .approx_eq(&GroupAlgebraElement::one(&s3), 1e-10));
        let zero = GroupAlgebraElement::zero(&s3);
        assert!(zero.invert().is_err());
    }
}

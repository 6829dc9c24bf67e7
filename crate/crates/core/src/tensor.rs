//! Tensor products `A_R(G) ⊗ A_R(H)`, the product groupoid algebra
//! `A_R(G × H)` on the basis of products `A × B`, and the maps `σ`, `π`
//! between them.
//!
//! Both sides describe functions on `G × H` and both use a two-level normal
//! form: the outer factor is expanded uniformly per degree, each outer cell
//! carries the normal form of its slice in the inner factor, and outer sibling
//! families with equal slices are merged. Tensors nest the right factor inside
//! the left one; product-algebra elements nest the left factor inside the
//! right one. Both are canonical, so `σ` and `π` are checked across two
//! independent layouts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::bisect::{self, expand_cylinder_into, BasicBisection};
use crate::graph::{Graph, GroupoidPoint};
use crate::scalars::{Scalar, ScalarRing};
use crate::steinberg::{
    collapse_siblings, expand_and_sum, induced_hom, same_graph, AlgebraElement, AlgebraValue,
    RepresentationAssignment, SemigroupBasis, SteinbergError,
};

type Slices = BTreeMap<BasicBisection, BTreeMap<BasicBisection, Scalar>>;

fn nested_normal_form<I>(outer: &Graph, inner: &Graph, pairs: I) -> Slices
where
    I: IntoIterator<Item = (Scalar, BasicBisection, BasicBisection)>,
{
    let mut by_degree: BTreeMap<i64, Vec<(Scalar, BasicBisection, BasicBisection)>> = BTreeMap::new();
    for (r, o, i) in pairs {
        if r.is_zero() {
            continue;
        }
        for piece in o.pieces(outer) {
            by_degree.entry(piece.degree()).or_default().push((r.clone(), piece, i.clone()));
        }
    }
    let mut raw: BTreeMap<BasicBisection, Vec<(Scalar, BasicBisection)>> = BTreeMap::new();
    let mut cells = Vec::new();
    for (_, list) in by_degree {
        let depth = list.iter().map(|(_, o, _)| o.alpha().len()).max().unwrap_or(0);
        for (r, o, i) in list {
            cells.clear();
            expand_cylinder_into(outer, &o, depth, &mut cells);
            for c in cells.drain(..) {
                raw.entry(c).or_default().push((r.clone(), i.clone()));
            }
        }
    }
    let mut slices: Slices = BTreeMap::new();
    for (cell, list) in raw {
        let mut slice = expand_and_sum(inner, list.iter().map(|(r, i)| (r.clone(), i)));
        collapse_siblings(inner, &mut slice);
        if !slice.is_empty() {
            slices.insert(cell, slice);
        }
    }
    collapse_siblings(outer, &mut slices);
    slices
}

fn check_ring<'a>(ring: ScalarRing, scalars: impl IntoIterator<Item = &'a Scalar>) -> Result<(), SteinbergError> {
    for r in scalars {
        if r.ring() != ring {
            return Err(SteinbergError::RingMismatch(ring, r.ring()));
        }
    }
    Ok(())
}

fn validate(graph: &Graph, b: &BasicBisection) -> Result<(), SteinbergError> {
    BasicBisection::new(graph, b.alpha().clone(), b.beta().clone(), b.excluded().clone())?;
    Ok(())
}

/// `A × B` with `A` over the left graph and `B` over the right one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductBisection {
    pub left: BasicBisection,
    pub right: BasicBisection,
}

impl ProductBisection {
    pub fn new(left: BasicBisection, right: BasicBisection) -> Self {
        ProductBisection { left, right }
    }

    pub fn inverse(&self) -> Self {
        ProductBisection::new(self.left.inverse(), self.right.inverse())
    }

    pub fn is_empty(&self, left: &Graph, right: &Graph) -> bool {
        self.left.is_empty(left) || self.right.is_empty(right)
    }

    pub fn is_diagonal(&self) -> bool {
        self.left.is_diagonal() && self.right.is_diagonal()
    }

    pub fn degree(&self) -> (i64, i64) {
        (self.left.degree(), self.right.degree())
    }

    /// `(A × B)(C × D) = AC × BD` as a disjoint list of cylinder products.
    pub fn product(&self, other: &Self, left: &Graph, right: &Graph) -> Vec<ProductBisection> {
        let l = bisect::product(left, &self.left, &other.left);
        let r = bisect::product(right, &self.right, &other.right);
        cross(&l, &r)
    }

    /// `(A × B) ∩ (C × D) = (A ∩ C) × (B ∩ D)`.
    pub fn intersect(&self, other: &Self, left: &Graph, right: &Graph) -> Vec<ProductBisection> {
        let l = bisect::intersect(left, &self.left, &other.left);
        let r = bisect::intersect(right, &self.right, &other.right);
        cross(&l, &r)
    }

    /// `(A × B) ∖ (C × D) = ((A ∖ C) × B) ⊔ ((A ∩ C) × (B ∖ D))`.
    pub fn relative_complement(&self, other: &Self, left: &Graph, right: &Graph) -> Vec<ProductBisection> {
        let a_minus_c = bisect::relative_complement(left, &self.left, &other.left);
        let a_cap_c = bisect::intersect(left, &self.left, &other.left);
        let b_minus_d = bisect::relative_complement(right, &self.right, &other.right);
        let mut out = cross(&a_minus_c, &self.right.pieces(right));
        out.extend(cross(&a_cap_c, &b_minus_d));
        out
    }

    pub fn contains(&self, x: &GroupoidPoint, y: &GroupoidPoint, left: &Graph, right: &Graph) -> bool {
        bisect::member(left, x, &self.left) && bisect::member(right, y, &self.right)
    }

    pub fn display<'a>(&'a self, left: &'a Graph, right: &'a Graph) -> String {
        format!("{}x{}", self.left.display(left), self.right.display(right))
    }
}

fn cross(l: &[BasicBisection], r: &[BasicBisection]) -> Vec<ProductBisection> {
    l.iter().flat_map(|a| r.iter().map(move |b| ProductBisection::new(a.clone(), b.clone()))).collect()
}

impl SemigroupBasis for ProductBisection {
    /// Componentwise product of cylinders.
    fn basis_product(&self, other: &Self) -> Option<Self> {
        Some(ProductBisection::new(
            bisect::cylinder_product(&self.left, &other.left)?,
            bisect::cylinder_product(&self.right, &other.right)?,
        ))
    }
}

/// An element `Σ r (1_A ⊗ 1_B)` of `A_R(G) ⊗ A_R(H)` in normal form.
#[derive(Clone)]
pub struct TensorElement {
    left: Arc<Graph>,
    right: Arc<Graph>,
    ring: ScalarRing,
    terms: BTreeMap<(BasicBisection, BasicBisection), Scalar>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.terms == other.terms
            && same_graph(&self.left, &other.left)
            && same_graph(&self.right, &other.right)
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(left: Arc<Graph>, right: Arc<Graph>, ring: ScalarRing) -> Self {
        TensorElement { left, right, ring, terms: BTreeMap::new() }
    }

    pub fn one(left: Arc<Graph>, right: Arc<Graph>, ring: ScalarRing) -> Self {
        let a = AlgebraElement::one(left, ring);
        let b = AlgebraElement::one(right, ring);
        Self::simple(&a, &b).expect("same ring")
    }

    fn build<I>(left: Arc<Graph>, right: Arc<Graph>, ring: ScalarRing, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, BasicBisection, BasicBisection)>,
    {
        let slices = nested_normal_form(&left, &right, pairs);
        let terms = slices
            .into_iter()
            .flat_map(|(a, slice)| slice.into_iter().map(move |(b, r)| ((a.clone(), b), r)))
            .collect();
        TensorElement { left, right, ring, terms }
    }

    pub fn from_terms(
        left: Arc<Graph>,
        right: Arc<Graph>,
        ring: ScalarRing,
        pairs: &[(Scalar, BasicBisection, BasicBisection)],
    ) -> Result<Self, SteinbergError> {
        check_ring(ring, pairs.iter().map(|(r, _, _)| r))?;
        for (_, a, b) in pairs {
            validate(&left, a)?;
            validate(&right, b)?;
        }
        Ok(Self::build(left, right, ring, pairs.iter().cloned()))
    }

    /// `f ⊗ g`.
    pub fn simple(f: &AlgebraElement, g: &AlgebraElement) -> Result<Self, SteinbergError> {
        if f.ring() != g.ring() {
            return Err(SteinbergError::RingMismatch(f.ring(), g.ring()));
        }
        let pairs: Vec<_> = f
            .terms()
            .iter()
            .flat_map(|(a, r)| g.terms().iter().map(move |(b, s)| (r.try_mul(s).expect("same ring"), a.clone(), b.clone())))
            .collect();
        Ok(Self::build(f.graph().clone(), g.graph().clone(), f.ring(), pairs))
    }

    /// `1_A ⊗ 1_B`.
    pub fn indicator(left: Arc<Graph>, right: Arc<Graph>, ring: ScalarRing, k: &ProductBisection) -> Self {
        Self::build(left, right, ring, [(ring.one(), k.left.clone(), k.right.clone())])
    }

    pub fn left(&self) -> &Arc<Graph> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Graph> {
        &self.right
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<(BasicBisection, BasicBisection), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn pairs(&self) -> impl Iterator<Item = (Scalar, BasicBisection, BasicBisection)> + '_ {
        self.terms.iter().map(|((a, b), r)| (r.clone(), a.clone(), b.clone()))
    }

    fn compatible(&self, other: &Self) -> Result<(), SteinbergError> {
        if !same_graph(&self.left, &other.left) || !same_graph(&self.right, &other.right) {
            return Err(SteinbergError::GraphMismatch);
        }
        if self.ring != other.ring {
            return Err(SteinbergError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.compatible(other)?;
        Ok(Self::build(self.left.clone(), self.right.clone(), self.ring, self.pairs().chain(other.pairs())))
    }

    pub fn scale(&self, r: &Scalar) -> Self {
        let pairs = self.pairs().map(|(c, a, b)| (c.try_mul(r).expect("same ring"), a, b));
        Self::build(self.left.clone(), self.right.clone(), self.ring, pairs)
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.from_int(-1))
    }

    /// Componentwise product `(1_A ⊗ 1_B)(1_C ⊗ 1_D) = 1_{AC} ⊗ 1_{BD}`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.compatible(other)?;
        let mut pairs = Vec::new();
        for ((a, b), r) in &self.terms {
            for ((c, d), s) in &other.terms {
                if let (Some(ac), Some(bd)) = (bisect::cylinder_product(a, c), bisect::cylinder_product(b, d)) {
                    pairs.push((r.try_mul(s)?, ac, bd));
                }
            }
        }
        Ok(Self::build(self.left.clone(), self.right.clone(), self.ring, pairs))
    }

    /// `(Σ r a ⊗ b)^* = Σ conj(r) a^* ⊗ b^*`.
    pub fn star(&self) -> Self {
        let pairs = self.terms.iter().map(|((a, b), r)| (r.conj(), a.inverse(), b.inverse()));
        Self::build(self.left.clone(), self.right.clone(), self.ring, pairs)
    }

    /// The function value at `(x, y)` in `G × H`.
    pub fn evaluate(&self, x: &GroupoidPoint, y: &GroupoidPoint) -> Scalar {
        let mut total = self.ring.zero();
        for ((a, b), r) in &self.terms {
            if bisect::member(&self.left, x, a) && bisect::member(&self.right, y, b) {
                total = total.try_add(r).expect("same ring");
            }
        }
        total
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(a, b)| a.is_diagonal() && b.is_diagonal())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, b), r)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "{}*({}) (x) ({})",
                crate::syntax::fmt_coefficient(r),
                a.display(&self.left),
                b.display(&self.right)
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement[{}]({})", self.ring, self)
    }
}

impl AlgebraValue for TensorElement {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("compatible operands")
    }

    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("compatible operands")
    }

    fn scale(&self, r: &Scalar) -> Self {
        TensorElement::scale(self, r)
    }
}

/// An element of `A_R(G × H)` in normal form.
#[derive(Clone)]
pub struct ProductAlgebraElement {
    left: Arc<Graph>,
    right: Arc<Graph>,
    ring: ScalarRing,
    terms: BTreeMap<ProductBisection, Scalar>,
}

impl PartialEq for ProductAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.terms == other.terms
            && same_graph(&self.left, &other.left)
            && same_graph(&self.right, &other.right)
    }
}

impl Eq for ProductAlgebraElement {}

impl ProductAlgebraElement {
    pub fn zero(left: Arc<Graph>, right: Arc<Graph>, ring: ScalarRing) -> Self {
        ProductAlgebraElement { left, right, ring, terms: BTreeMap::new() }
    }

    pub fn one(left: Arc<Graph>, right: Arc<Graph>, ring: ScalarRing) -> Self {
        let mut pairs = Vec::new();
        for v in left.vertices() {
            for w in right.vertices() {
                let k = ProductBisection::new(BasicBisection::vertex(&left, v), BasicBisection::vertex(&right, w));
                pairs.push((ring.one(), k));
            }
        }
        Self::build(left, right, ring, pairs)
    }

    fn build<I>(left: Arc<Graph>, right: Arc<Graph>, ring: ScalarRing, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, ProductBisection)>,
    {
        let slices = nested_normal_form(&right, &left, pairs.into_iter().map(|(r, k)| (r, k.right, k.left)));
        let terms = slices
            .into_iter()
            .flat_map(|(b, slice)| slice.into_iter().map(move |(a, r)| (ProductBisection::new(a, b.clone()), r)))
            .collect();
        ProductAlgebraElement { left, right, ring, terms }
    }

    pub fn from_terms(
        left: Arc<Graph>,
        right: Arc<Graph>,
        ring: ScalarRing,
        pairs: &[(Scalar, ProductBisection)],
    ) -> Result<Self, SteinbergError> {
        check_ring(ring, pairs.iter().map(|(r, _)| r))?;
        for (_, k) in pairs {
            validate(&left, &k.left)?;
            validate(&right, &k.right)?;
        }
        Ok(Self::build(left, right, ring, pairs.iter().cloned()))
    }

    pub fn indicator(left: Arc<Graph>, right: Arc<Graph>, ring: ScalarRing, k: &ProductBisection) -> Self {
        Self::build(left, right, ring, [(ring.one(), k.clone())])
    }

    pub fn left(&self) -> &Arc<Graph> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Graph> {
        &self.right
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<ProductBisection, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_pairs(&self) -> Vec<(Scalar, ProductBisection)> {
        self.terms.iter().map(|(k, r)| (r.clone(), k.clone())).collect()
    }

    fn compatible(&self, other: &Self) -> Result<(), SteinbergError> {
        if !same_graph(&self.left, &other.left) || !same_graph(&self.right, &other.right) {
            return Err(SteinbergError::GraphMismatch);
        }
        if self.ring != other.ring {
            return Err(SteinbergError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    fn rebuild(&self, pairs: impl IntoIterator<Item = (Scalar, ProductBisection)>) -> Self {
        Self::build(self.left.clone(), self.right.clone(), self.ring, pairs)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.compatible(other)?;
        Ok(self.rebuild(self.to_pairs().into_iter().chain(other.to_pairs())))
    }

    pub fn scale(&self, r: &Scalar) -> Self {
        self.rebuild(self.terms.iter().map(|(k, c)| (c.try_mul(r).expect("same ring"), k.clone())))
    }

    /// Convolution in the product groupoid.
    pub fn convolve(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.compatible(other)?;
        let mut pairs = Vec::new();
        for (k, r) in &self.terms {
            for (l, s) in &other.terms {
                if let Some(kl) = k.basis_product(l) {
                    pairs.push((r.try_mul(s)?, kl));
                }
            }
        }
        Ok(self.rebuild(pairs))
    }

    pub fn star(&self) -> Self {
        self.rebuild(self.terms.iter().map(|(k, r)| (r.conj(), k.inverse())))
    }

    pub fn evaluate(&self, x: &GroupoidPoint, y: &GroupoidPoint) -> Scalar {
        let mut total = self.ring.zero();
        for (k, r) in &self.terms {
            if k.contains(x, y, &self.left, &self.right) {
                total = total.try_add(r).expect("same ring");
            }
        }
        total
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(ProductBisection::is_diagonal)
    }

    /// Pair degrees `(d_left, d_right)` occurring in the normal form.
    pub fn pair_degrees(&self) -> BTreeSet<(i64, i64)> {
        self.terms.keys().map(ProductBisection::degree).collect()
    }
}

impl fmt::Display for ProductAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", crate::syntax::fmt_coefficient(r), k.display(&self.left, &self.right))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ProductAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProductAlgebraElement[{}]({})", self.ring, self)
    }
}

impl AlgebraValue for ProductAlgebraElement {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("compatible operands")
    }

    fn mul(&self, other: &Self) -> Self {
        self.convolve(other).expect("compatible operands")
    }

    fn scale(&self, r: &Scalar) -> Self {
        ProductAlgebraElement::scale(self, r)
    }
}

/// `σ(1_A ⊗ 1_B) = 1_{A×B}`.
pub fn sigma(t: &TensorElement) -> ProductAlgebraElement {
    let pairs = t.terms.iter().map(|((a, b), r)| (r.clone(), ProductBisection::new(a.clone(), b.clone())));
    ProductAlgebraElement::build(t.left.clone(), t.right.clone(), t.ring, pairs)
}

/// `t_{A×B} = 1_A ⊗ 1_B`.
pub fn tensor_assignment(
    left: Arc<Graph>,
    right: Arc<Graph>,
    ring: ScalarRing,
) -> RepresentationAssignment<ProductBisection, TensorElement> {
    let zero = TensorElement::zero(left.clone(), right.clone(), ring);
    RepresentationAssignment::from_fn(zero, move |k: &ProductBisection| {
        if validate(&left, &k.left).is_err() || validate(&right, &k.right).is_err() {
            return None;
        }
        Some(TensorElement::indicator(left.clone(), right.clone(), ring, k))
    })
}

/// `π = Σ r_K t_K` for the tensor assignment.
pub fn pi(p: &ProductAlgebraElement) -> TensorElement {
    pi_of_terms(&p.left, &p.right, p.ring, p.terms.iter().map(|(k, r)| (r, k))).expect("normal-form terms are valid")
}

/// `π` applied to an arbitrary (not necessarily normal) expression.
pub fn pi_of_terms<'a, I>(left: &Arc<Graph>, right: &Arc<Graph>, ring: ScalarRing, terms: I) -> Result<TensorElement, SteinbergError>
where
    I: IntoIterator<Item = (&'a Scalar, &'a ProductBisection)>,
{
    let rep = tensor_assignment(left.clone(), right.clone(), ring);
    induced_hom(&rep, terms)
}

/// Disjoint refinement of a family: the atoms of the Boolean algebra it
/// generates, each written as a union of cylinders.
///
/// Every member of the input is the disjoint union of the output cylinders
/// it contains.
pub fn refine_family(graph: &Graph, family: &[BasicBisection]) -> Vec<BasicBisection> {
    let mut by_degree: BTreeMap<i64, Vec<(usize, BasicBisection)>> = BTreeMap::new();
    for (i, b) in family.iter().enumerate() {
        for piece in b.pieces(graph) {
            by_degree.entry(piece.degree()).or_default().push((i, piece));
        }
    }
    let mut pattern: BTreeMap<BasicBisection, BTreeSet<usize>> = BTreeMap::new();
    let mut cells = Vec::new();
    for (_, list) in by_degree {
        let depth = list.iter().map(|(_, b)| b.alpha().len()).max().unwrap_or(0);
        for (i, b) in list {
            cells.clear();
            expand_cylinder_into(graph, &b, depth, &mut cells);
            for c in cells.drain(..) {
                pattern.entry(c).or_default().insert(i);
            }
        }
    }
    collapse_siblings(graph, &mut pattern);
    pattern.into_keys().collect()
}

/// Refines both factor families at once.
pub fn refine_families(
    left: &Graph,
    p: &[BasicBisection],
    right: &Graph,
    q: &[BasicBisection],
) -> (Vec<BasicBisection>, Vec<BasicBisection>) {
    (refine_family(left, p), refine_family(right, q))
}

/// Components by pair degree `(d_left, d_right)`.
pub fn product_degree(p: &ProductAlgebraElement) -> BTreeMap<(i64, i64), ProductAlgebraElement> {
    let mut parts: BTreeMap<(i64, i64), Vec<(Scalar, ProductBisection)>> = BTreeMap::new();
    for (k, r) in &p.terms {
        parts.entry(k.degree()).or_default().push((r.clone(), k.clone()));
    }
    parts.into_iter().map(|(d, pairs)| (d, p.rebuild(pairs))).collect()
}

/// Components by the summed degree `d_left + d_right`.
pub fn quotient_degree(p: &ProductAlgebraElement) -> BTreeMap<i64, ProductAlgebraElement> {
    let mut parts: BTreeMap<i64, Vec<(Scalar, ProductBisection)>> = BTreeMap::new();
    for (k, r) in &p.terms {
        let (a, b) = k.degree();
        parts.entry(a + b).or_default().push((r.clone(), k.clone()));
    }
    parts.into_iter().map(|(d, pairs)| (d, p.rebuild(pairs))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_bisection, parse_element, parse_product, parse_tensor};

    const Z: ScalarRing = ScalarRing::Integers;

    fn cuntz(n: usize) -> Arc<Graph> {
        Arc::new(Graph::cuntz(n).unwrap())
    }

    #[test]
    fn componentwise_products() {
        let g = cuntz(2);
        let t1 = parse_tensor("(Z(1,@)) (x) (Z(2,@))", &g, &g, Z).unwrap();
        let t2 = parse_tensor("(Z(@,1)) (x) (Z(@,2))", &g, &g, Z).unwrap();
        let expected = parse_tensor("(Z(1,1)) (x) (Z(2,2))", &g, &g, Z).unwrap();
        assert_eq!(t1.try_mul(&t2).unwrap(), expected);
        let one = TensorElement::one(g.clone(), g.clone(), Z);
        assert_eq!(one.try_mul(&t1).unwrap(), t1);
        assert_eq!(t1.try_mul(&one).unwrap(), t1);
        let a = parse_tensor("(Z(@,1)) (x) (Z(1,2) + 3*Z(@,@))", &g, &g, Z).unwrap();
        let b = parse_tensor("(Z(2,@)) (x) (Z(2,1))", &g, &g, Z).unwrap();
        assert!(a.try_mul(&b).unwrap().is_zero());
    }

    #[test]
    fn sigma_and_pi_examples() {
        let g = cuntz(2);
        let t = parse_tensor("(Z(1,@)) (x) (Z(2,@))", &g, &g, Z).unwrap();
        let p = parse_product("Z(1,@)xZ(2,@)", &g, &g, Z).unwrap();
        assert_eq!(sigma(&t), p);
        assert_eq!(pi(&p), t);
        assert!(sigma(&TensorElement::zero(g.clone(), g.clone(), Z)).is_zero());
        assert!(pi(&ProductAlgebraElement::zero(g.clone(), g.clone(), Z)).is_zero());
        assert_eq!(sigma(&TensorElement::one(g.clone(), g.clone(), Z)), ProductAlgebraElement::one(g.clone(), g, Z));
    }

    #[test]
    fn layouts_differ_but_agree() {
        // an L-shaped region: (Z(1,1) x Z(@,@)) + (Z(2,2) x Z(1,1))
        let g = cuntz(2);
        let t = parse_tensor("(Z(1,1)) (x) (Z(@,@)) + (Z(2,2)) (x) (Z(1,1))", &g, &g, Z).unwrap();
        assert_eq!(t.terms().len(), 2);
        let p = sigma(&t);
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.to_string(), "1*Z(@,@)xZ(1,1) + 1*Z(1,1)xZ(2,2)");
        assert_eq!(pi(&p), t);
    }

    #[test]
    fn refinement() {
        let g = cuntz(2);
        let b = |s: &str| parse_bisection(s, &g).unwrap();
        assert_eq!(refine_family(&g, &[b("Z(@,@)"), b("Z(1,1)")]), vec![b("Z(1,1)"), b("Z(2,2)")]);
        assert_eq!(refine_family(&g, &[b("Z(1,2)"), b("Z(2,2)")]), vec![b("Z(1,2)"), b("Z(2,2)")]);
        assert!(refine_family(&g, &[]).is_empty());
        let x = refine_family(&g, &[b("Z(1,@)"), b("Z(1.1,1)"), b("Z(2,2)")]);
        assert_eq!(x, vec![b("Z(1.1,1)"), b("Z(1.2,2)"), b("Z(2,2)")]);
    }

    #[test]
    fn gradings() {
        let g = cuntz(2);
        let p = parse_product("Z(1,@)xZ(2,@)", &g, &g, Z).unwrap();
        assert_eq!(product_degree(&p).into_keys().collect::<Vec<_>>(), vec![(1, 1)]);
        assert_eq!(quotient_degree(&p).into_keys().collect::<Vec<_>>(), vec![2]);
        let d = parse_product("Z(1,1)xZ(2,2) + 2*Z(@,@)xZ(1,1)", &g, &g, Z).unwrap();
        assert_eq!(product_degree(&d).into_keys().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn product_relative_complement_partitions() {
        let g = cuntz(2);
        let b = |s: &str| parse_bisection(s, &g).unwrap();
        let ab = ProductBisection::new(b("Z(@,@)"), b("Z(1,@)"));
        let cd = ProductBisection::new(b("Z(1,1)"), b("Z(1.2,2)"));
        let mut pieces = ab.relative_complement(&cd, &g, &g);
        pieces.extend(ab.intersect(&cd, &g, &g));
        let parts: Vec<_> = pieces.iter().map(|k| (Z.one(), k.clone())).collect();
        let whole = ProductAlgebraElement::indicator(g.clone(), g.clone(), Z, &ab);
        assert_eq!(ProductAlgebraElement::from_terms(g.clone(), g, Z, &parts).unwrap(), whole);
    }

    #[test]
    fn simple_tensor_of_elements() {
        let g = cuntz(2);
        let h = cuntz(3);
        let f = parse_element("2*Z(1,@) + Z(2,2)", &g, Z).unwrap();
        let k = parse_element("Z(3,1)", &h, Z).unwrap();
        let t = TensorElement::simple(&f, &k).unwrap();
        assert_eq!(t.terms().len(), 2);
        assert_eq!(t.star(), TensorElement::simple(&f.star(), &k.star()).unwrap());
    }
}

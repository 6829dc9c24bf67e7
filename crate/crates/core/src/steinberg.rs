//! The Steinberg algebra `A_R(G)` of the boundary path groupoid of a
//! finite graph without sinks.
//!
//! Elements are finite linear combinations of indicator functions of
//! cylinders, stored in a canonical normal form:
//!
//! 1. every term is split into excluded-set-free cylinders;
//! 2. within each degree, every cylinder is expanded to the largest alpha
//!    length occurring in that degree, and coefficients are summed;
//! 3. zero coefficients are dropped;
//! 4. sibling families `{Z(αe, βe) : e ∈ r(α)E¹}` carrying one common
//!    coefficient are repeatedly merged into `Z(α, β)`.
//!
//! Cylinders containing a given cylinder form a chain (strip a common last
//! edge from both paths), so step 4 yields the maximal cylinders on which the
//! function is constant and nonzero. The result depends only on the
//! function, and structural equality of normal forms is equality of
//! functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bisect::{self, expand_cylinder_into, BasicBisection, BisectError};
use crate::graph::{Graph, GroupoidPoint};
use crate::scalars::{Scalar, ScalarError, ScalarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinbergError {
    #[error("operands live over different graphs")]
    GraphMismatch,
    #[error("operands live over different rings: {0} vs {1}")]
    RingMismatch(ScalarRing, ScalarRing),
    #[error("no inclusion {0} -> {1}")]
    UnsupportedInclusion(ScalarRing, ScalarRing),
    #[error("representation has no image for {0}")]
    MissingAssignment(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Bisect(#[from] BisectError),
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Uniform per-degree expansion with summed coefficients, zeros dropped.
///
/// Input bisections may carry excluded sets; the output keys are cylinders.
pub(crate) fn expand_and_sum<'a, I>(graph: &Graph, pairs: I) -> BTreeMap<BasicBisection, Scalar>
where
    I: IntoIterator<Item = (Scalar, &'a BasicBisection)>,
{
    let mut by_degree: BTreeMap<i64, Vec<(Scalar, BasicBisection)>> = BTreeMap::new();
    for (r, b) in pairs {
        if r.is_zero() {
            continue;
        }
        for piece in b.pieces(graph) {
            by_degree.entry(piece.degree()).or_default().push((r.clone(), piece));
        }
    }
    let mut out = BTreeMap::new();
    let mut scratch = Vec::new();
    for (_, list) in by_degree {
        let depth = list.iter().map(|(_, b)| b.alpha().len()).max().unwrap_or(0);
        for (r, c) in list {
            scratch.clear();
            expand_cylinder_into(graph, &c, depth, &mut scratch);
            for cell in scratch.drain(..) {
                match out.entry(cell) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(r.clone());
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => o.get_mut().add_assign_unchecked(&r),
                }
            }
        }
    }
    out.retain(|_, r| !r.is_zero());
    out
}

/// Merges complete sibling families with equal values until none remain.
///
/// Generic over the value so that the tensor layer can collapse families
/// whose "coefficient" is an entire slice in the other factor.
pub(crate) fn collapse_siblings<V: Clone + PartialEq>(graph: &Graph, terms: &mut BTreeMap<BasicBisection, V>) {
    loop {
        let mut families: BTreeMap<BasicBisection, Vec<BasicBisection>> = BTreeMap::new();
        for b in terms.keys() {
            if let Some(p) = b.parent(graph) {
                families.entry(p).or_default().push(b.clone());
            }
        }
        let mut changed = false;
        for (parent, kids) in families {
            if kids.len() != graph.out_edges(parent.alpha().range()).len() {
                continue;
            }
            let first = &terms[&kids[0]];
            if kids[1..].iter().any(|k| &terms[k] != first) {
                continue;
            }
            let value = first.clone();
            for k in &kids {
                terms.remove(k);
            }
            terms.insert(parent, value);
            changed = true;
        }
        if !changed {
            break;
        }
    }
}

/// An element of `A_R(G)` in normal form.
#[derive(Clone)]
pub struct AlgebraElement {
    graph: Arc<Graph>,
    ring: ScalarRing,
    terms: BTreeMap<BasicBisection, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms && same_graph(&self.graph, &other.graph)
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[{}]({})", self.ring, self)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", crate::syntax::fmt_coefficient(r), b.display(&self.graph))?;
        }
        Ok(())
    }
}

impl AlgebraElement {
    pub fn zero(graph: Arc<Graph>, ring: ScalarRing) -> Self {
        AlgebraElement { graph, ring, terms: BTreeMap::new() }
    }

    /// Sum of the vertex cylinders `Z(@v, @v)`; the unit of the algebra.
    pub fn one(graph: Arc<Graph>, ring: ScalarRing) -> Self {
        let units: Vec<BasicBisection> = graph.vertices().map(|v| BasicBisection::vertex(&graph, v)).collect();
        let terms = units.iter().map(|b| (ring.one(), b));
        Self::from_validated(graph, ring, terms)
    }

    /// `r · 1_b`.
    pub fn indicator(graph: Arc<Graph>, ring: ScalarRing, b: &BasicBisection, r: Scalar) -> Result<Self, SteinbergError> {
        Self::from_terms(graph, ring, &[(r, b.clone())])
    }

    /// Normal form of `Σ r_i 1_{b_i}`.
    pub fn from_terms(
        graph: Arc<Graph>,
        ring: ScalarRing,
        pairs: &[(Scalar, BasicBisection)],
    ) -> Result<Self, SteinbergError> {
        for (r, b) in pairs {
            if r.ring() != ring {
                return Err(SteinbergError::RingMismatch(ring, r.ring()));
            }
            BasicBisection::new(&graph, b.alpha().clone(), b.beta().clone(), b.excluded().clone())?;
        }
        Ok(Self::from_validated(graph, ring, pairs.iter().map(|(r, b)| (r.clone(), b))))
    }

    pub(crate) fn from_validated<'a, I>(graph: Arc<Graph>, ring: ScalarRing, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, &'a BasicBisection)>,
    {
        let mut terms = expand_and_sum(&graph, pairs);
        collapse_siblings(&graph, &mut terms);
        AlgebraElement { graph, ring, terms }
    }

    fn from_owned(graph: Arc<Graph>, ring: ScalarRing, pairs: Vec<(Scalar, BasicBisection)>) -> Self {
        Self::from_validated(graph, ring, pairs.iter().map(|(r, b)| (r.clone(), b)))
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<BasicBisection, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, other: &Self) -> Result<(), SteinbergError> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(SteinbergError::GraphMismatch);
        }
        if self.ring != other.ring {
            return Err(SteinbergError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.compatible(other)?;
        let pairs = self.terms.iter().chain(&other.terms).map(|(b, r)| (r.clone(), b));
        Ok(Self::from_validated(self.graph.clone(), self.ring, pairs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(Scalar::neg)
    }

    pub fn scale(&self, r: &Scalar) -> Result<Self, SteinbergError> {
        if r.ring() != self.ring {
            return Err(SteinbergError::RingMismatch(self.ring, r.ring()));
        }
        if r.is_zero() {
            return Ok(Self::zero(self.graph.clone(), self.ring));
        }
        Ok(self.map_coefficients(|c| c.mul_unchecked(r)))
    }

    fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        // multiplying by a nonzero scalar of an integral domain keeps the collapse pattern
        AlgebraElement {
            graph: self.graph.clone(),
            ring: self.ring,
            terms: self.terms.iter().map(|(b, r)| (b.clone(), f(r))).collect(),
        }
    }

    /// Convolution product.
    pub fn convolve(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.compatible(other)?;
        let mut pairs = Vec::new();
        for (a, ra) in &self.terms {
            for (b, rb) in &other.terms {
                if let Some(ab) = bisect::cylinder_product(a, b) {
                    pairs.push((ra.mul_unchecked(rb), ab));
                }
            }
        }
        Ok(Self::from_owned(self.graph.clone(), self.ring, pairs))
    }

    /// The involution `f*(x) = conj(f(x⁻¹))`.
    pub fn star(&self) -> Self {
        // swapping α and β maps sibling families to sibling families, so the
        // result is again in normal form
        AlgebraElement {
            graph: self.graph.clone(),
            ring: self.ring,
            terms: self.terms.iter().map(|(b, r)| (b.inverse(), r.conj())).collect(),
        }
    }

    pub fn evaluate(&self, g: &GroupoidPoint) -> Scalar {
        let mut total = self.ring.zero();
        for (b, r) in &self.terms {
            if bisect::member(&self.graph, g, b) {
                total.add_assign_unchecked(r);
            }
        }
        total
    }

    /// Whether the support lies in the unit space.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(BasicBisection::is_diagonal)
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(BasicBisection::degree).collect()
    }

    /// Whether all terms share one degree (zero counts as homogeneous).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let degrees = self.degrees();
        (degrees.len() == 1).then(|| *degrees.iter().next().unwrap())
    }

    pub fn degree_component(&self, d: i64) -> Self {
        AlgebraElement {
            graph: self.graph.clone(),
            ring: self.ring,
            terms: self.terms.iter().filter(|(b, _)| b.degree() == d).map(|(b, r)| (b.clone(), r.clone())).collect(),
        }
    }

    /// Image under the coefficient inclusion `R -> target`.
    pub fn map_scalars(&self, target: ScalarRing) -> Result<Self, SteinbergError> {
        if !self.ring.includes_into(target) {
            return Err(SteinbergError::UnsupportedInclusion(self.ring, target));
        }
        let terms = self
            .terms
            .iter()
            .map(|(b, r)| Ok((b.clone(), r.include_into(target)?)))
            .collect::<Result<_, ScalarError>>()?;
        Ok(AlgebraElement { graph: self.graph.clone(), ring: target, terms })
    }

    /// Equality by expanding both sides to a common alpha length per degree,
    /// without relying on the collapse step.
    pub fn agrees_by_expansion(&self, other: &Self) -> bool {
        if self.compatible(other).is_err() {
            return false;
        }
        let mut depth: BTreeMap<i64, usize> = BTreeMap::new();
        for b in self.terms.keys().chain(other.terms.keys()) {
            let d = depth.entry(b.degree()).or_insert(0);
            *d = (*d).max(b.alpha().len());
        }
        let flatten = |f: &Self| {
            let mut out: BTreeMap<BasicBisection, Scalar> = BTreeMap::new();
            let mut cells = Vec::new();
            for (b, r) in &f.terms {
                cells.clear();
                expand_cylinder_into(&f.graph, b, depth[&b.degree()], &mut cells);
                for c in cells.drain(..) {
                    out.insert(c, r.clone());
                }
            }
            out
        };
        flatten(self) == flatten(other)
    }

    /// Terms of the normal form as `(coefficient, bisection)` pairs.
    pub fn to_pairs(&self) -> Vec<(Scalar, BasicBisection)> {
        self.terms.iter().map(|(b, r)| (r.clone(), b.clone())).collect()
    }

    /// `π(f) = Σ r_B t_B` over the normal-form terms.
    pub fn induced_hom<T: AlgebraValue>(
        &self,
        rep: &RepresentationAssignment<BasicBisection, T>,
    ) -> Result<T, SteinbergError> {
        induced_hom(rep, self.terms.iter().map(|(b, r)| (r, b)))
    }
}

/// Pairwise disjoint bisections with coefficients representing the same
/// function as `pairs`; no sibling collapse is applied.
pub fn disjointify(
    graph: &Graph,
    ring: ScalarRing,
    pairs: &[(Scalar, BasicBisection)],
) -> Result<Vec<(Scalar, BasicBisection)>, SteinbergError> {
    for (r, b) in pairs {
        if r.ring() != ring {
            return Err(SteinbergError::RingMismatch(ring, r.ring()));
        }
        BasicBisection::new(graph, b.alpha().clone(), b.beta().clone(), b.excluded().clone())?;
    }
    let terms = expand_and_sum(graph, pairs.iter().map(|(r, b)| (r.clone(), b)));
    Ok(terms.into_iter().map(|(b, r)| (r, b)).collect())
}

/// Values an R-algebra representation can take.
pub trait AlgebraValue: Clone + PartialEq + fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Scalar) -> Self;
}

impl AlgebraValue for AlgebraElement {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("compatible operands")
    }

    fn mul(&self, other: &Self) -> Self {
        self.convolve(other).expect("compatible operands")
    }

    fn scale(&self, r: &Scalar) -> Self {
        AlgebraElement::scale(self, r).expect("matching ring")
    }
}

impl AlgebraValue for Scalar {
    fn add(&self, other: &Self) -> Self {
        self.add_unchecked(other)
    }

    fn mul(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }

    fn scale(&self, r: &Scalar) -> Self {
        self.mul_unchecked(r)
    }
}

/// Basis sets closed under products, with `None` standing for `∅`.
pub trait SemigroupBasis: Clone + Ord + fmt::Debug {
    fn basis_product(&self, other: &Self) -> Option<Self>;
}

impl SemigroupBasis for BasicBisection {
    fn basis_product(&self, other: &Self) -> Option<Self> {
        bisect::cylinder_product(self, other)
    }
}

type AssignFn<B, T> = dyn Fn(&B) -> Option<T> + Send + Sync;

/// An assignment `B ↦ t_B` into some algebra, together with that algebra's
/// zero and the image chosen for the empty set.
pub struct RepresentationAssignment<B, T> {
    zero: T,
    empty: T,
    assign: Box<AssignFn<B, T>>,
}

impl<B: 'static, T: AlgebraValue + Send + Sync + 'static> RepresentationAssignment<B, T> {
    pub fn from_fn(zero: T, assign: impl Fn(&B) -> Option<T> + Send + Sync + 'static) -> Self {
        RepresentationAssignment { empty: zero.clone(), zero, assign: Box::new(assign) }
    }

    pub fn from_map(zero: T, map: BTreeMap<B, T>) -> Self
    where
        B: Ord + Send + Sync,
    {
        Self::from_fn(zero, move |b| map.get(b).cloned())
    }

    /// Overrides `t_∅`.
    pub fn with_empty_image(mut self, empty: T) -> Self {
        self.empty = empty;
        self
    }
}

impl<B, T: Clone> RepresentationAssignment<B, T> {
    pub fn zero(&self) -> &T {
        &self.zero
    }

    pub fn image(&self, b: &B) -> Option<T> {
        (self.assign)(b)
    }

    pub fn image_or_empty(&self, b: Option<&B>) -> Option<T> {
        match b {
            Some(b) => self.image(b),
            None => Some(self.empty.clone()),
        }
    }
}

/// `t_B = 1_B` inside `A_R(G)` itself.
pub fn identity_assignment(graph: Arc<Graph>, ring: ScalarRing) -> RepresentationAssignment<BasicBisection, AlgebraElement> {
    let zero = AlgebraElement::zero(graph.clone(), ring);
    RepresentationAssignment::from_fn(zero, move |b| {
        AlgebraElement::indicator(graph.clone(), ring, b, ring.one()).ok()
    })
}

/// `Σ r_B t_B` for an arbitrary finite expression.
pub fn induced_hom<'a, B, T, I>(rep: &RepresentationAssignment<B, T>, terms: I) -> Result<T, SteinbergError>
where
    B: fmt::Debug + 'a,
    T: AlgebraValue,
    I: IntoIterator<Item = (&'a Scalar, &'a B)>,
{
    let mut acc = rep.zero().clone();
    for (r, b) in terms {
        let t = rep.image(b).ok_or_else(|| SteinbergError::MissingAssignment(format!("{b:?}")))?;
        acc = acc.add(&t.scale(r));
    }
    Ok(acc)
}

/// A finite disjoint family together with its union.
#[derive(Debug, Clone)]
pub struct WitnessFamily<B> {
    pub members: Vec<B>,
    pub union: B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepresentationFailure {
    /// `t_∅ ≠ 0`.
    EmptyNotZero,
    /// `t_A t_B ≠ t_{AB}`.
    NotMultiplicative { left: String, right: String },
    /// `Σ_{B∈F} t_B ≠ t_{⋃F}` for the family at this index.
    NotAdditive { family: usize },
    Missing(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RepresentationReport {
    pub pairs_checked: usize,
    pub families_checked: usize,
    pub failure: Option<RepresentationFailure>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the three representation axioms on a finite witness set: `t_∅ = 0`,
/// multiplicativity on all pairs drawn from the witnesses, and additivity
/// over each family.
pub fn check_representation<B, T>(
    rep: &RepresentationAssignment<B, T>,
    witnesses: &[WitnessFamily<B>],
) -> RepresentationReport
where
    B: SemigroupBasis,
    T: AlgebraValue,
{
    let mut report = RepresentationReport::default();
    if rep.image_or_empty(None).as_ref() != Some(rep.zero()) {
        report.failure = Some(RepresentationFailure::EmptyNotZero);
        return report;
    }
    let sets: BTreeSet<&B> = witnesses.iter().flat_map(|w| w.members.iter().chain(std::iter::once(&w.union))).collect();
    let lookup = |b: &B| rep.image(b).ok_or_else(|| RepresentationFailure::Missing(format!("{b:?}")));
    for a in &sets {
        for b in &sets {
            let outcome = (|| {
                let (ta, tb) = (lookup(a)?, lookup(b)?);
                let ab = a.basis_product(b);
                let tab = rep.image_or_empty(ab.as_ref()).ok_or_else(|| RepresentationFailure::Missing(format!("{ab:?}")))?;
                if ta.mul(&tb) != tab {
                    return Err(RepresentationFailure::NotMultiplicative {
                        left: format!("{a:?}"),
                        right: format!("{b:?}"),
                    });
                }
                Ok(())
            })();
            report.pairs_checked += 1;
            if let Err(f) = outcome {
                report.failure = Some(f);
                return report;
            }
        }
    }
    for (i, w) in witnesses.iter().enumerate() {
        let outcome = (|| {
            let mut sum = rep.zero().clone();
            for m in &w.members {
                sum = sum.add(&lookup(m)?);
            }
            if sum != lookup(&w.union)? {
                return Err(RepresentationFailure::NotAdditive { family: i });
            }
            Ok(())
        })();
        report.families_checked += 1;
        if let Err(f) = outcome {
            report.failure = Some(f);
            return report;
        }
    }
    report
}

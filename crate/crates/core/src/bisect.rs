//! Basic compact open bisections `Z(α, β, F)` of the boundary path groupoid.
//!
//! `Z(α, β)` is the set of triples `(αx, |α| − |β|, βx)`, and
//! `Z(α, β, F) = Z(α, β) \ ⋃_{e∈F} Z(αe, βe)`. Since the graph has no
//! sinks, `Z(α, β, F)` is the disjoint union of the cylinders `Z(αe, βe)`
//! with `e ∉ F`, so every operation here can work on excluded-set-free
//! cylinders and return sorted disjoint lists of them.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, GroupoidPoint, Path};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisectError {
    #[error("paths do not share a range")]
    RangeMismatch,
    #[error("excluded edge `{0}` is not emitted by the range of alpha")]
    BadExclusion(String),
    #[error("cannot expand to alpha length {target}: need at least {minimum}")]
    TargetTooShort { target: usize, minimum: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `Z(alpha, beta, excluded)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicBisection {
    alpha: Path,
    beta: Path,
    excluded: BTreeSet<EdgeId>,
}

impl BasicBisection {
    pub fn new(graph: &Graph, alpha: Path, beta: Path, excluded: BTreeSet<EdgeId>) -> Result<Self, BisectError> {
        if alpha.range() != beta.range() {
            return Err(BisectError::RangeMismatch);
        }
        let emitted = graph.out_edges(alpha.range());
        if let Some(&bad) = excluded.iter().find(|e| !emitted.contains(e)) {
            return Err(BisectError::BadExclusion(graph.edge_name(bad).to_string()));
        }
        Ok(BasicBisection { alpha, beta, excluded })
    }

    /// `Z(alpha, beta)` with no exclusions.
    pub fn cylinder(alpha: Path, beta: Path) -> Result<Self, BisectError> {
        if alpha.range() != beta.range() {
            return Err(BisectError::RangeMismatch);
        }
        Ok(BasicBisection { alpha, beta, excluded: BTreeSet::new() })
    }

    pub(crate) fn cylinder_unchecked(alpha: Path, beta: Path) -> Self {
        debug_assert_eq!(alpha.range(), beta.range());
        BasicBisection { alpha, beta, excluded: BTreeSet::new() }
    }

    /// The unit-space cylinder `Z(@v, @v)`.
    pub fn vertex(graph: &Graph, v: u32) -> Self {
        Self::cylinder_unchecked(graph.empty_path(v), graph.empty_path(v))
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    pub fn excluded(&self) -> &BTreeSet<EdgeId> {
        &self.excluded
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn is_cylinder(&self) -> bool {
        self.excluded.is_empty()
    }

    /// Whether the bisection lies in the unit space.
    pub fn is_diagonal(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn is_empty(&self, graph: &Graph) -> bool {
        !self.excluded.is_empty() && self.excluded.len() == graph.out_edges(self.alpha.range()).len()
    }

    pub fn inverse(&self) -> BasicBisection {
        BasicBisection { alpha: self.beta.clone(), beta: self.alpha.clone(), excluded: self.excluded.clone() }
    }

    /// `Z(α', β')` when `self = Z(α'e, β'e)`.
    pub(crate) fn parent(&self, graph: &Graph) -> Option<BasicBisection> {
        let (a, b) = (self.alpha.last_edge()?, self.beta.last_edge()?);
        if a != b {
            return None;
        }
        Some(BasicBisection::cylinder_unchecked(self.alpha.parent(graph)?, self.beta.parent(graph)?))
    }

    /// Decomposition into excluded-set-free cylinders.
    pub fn pieces(&self, graph: &Graph) -> Vec<BasicBisection> {
        if self.excluded.is_empty() {
            return vec![self.clone()];
        }
        graph
            .out_edges(self.alpha.range())
            .iter()
            .filter(|e| !self.excluded.contains(e))
            .map(|&e| {
                BasicBisection::cylinder_unchecked(self.alpha.push_unchecked(graph, e), self.beta.push_unchecked(graph, e))
            })
            .collect()
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> DisplayBisection<'a> {
        DisplayBisection(graph, self)
    }
}

pub struct DisplayBisection<'a>(pub &'a Graph, pub &'a BasicBisection);

impl fmt::Display for DisplayBisection<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, b) = (self.0, self.1);
        write!(f, "Z({},{}", g.fmt_path(&b.alpha, false), g.fmt_path(&b.beta, false))?;
        if !b.excluded.is_empty() {
            let names: Vec<&str> = b.excluded.iter().map(|&e| g.edge_name(e)).collect();
            write!(f, "|{}", names.join(","))?;
        }
        f.write_str(")")
    }
}

/// Pairwise disjoint cylinders with alpha length `target` whose union is `b`.
pub fn expand(graph: &Graph, b: &BasicBisection, target: usize) -> Result<Vec<BasicBisection>, BisectError> {
    if b.is_empty(graph) {
        return Ok(Vec::new());
    }
    let minimum = b.alpha.len() + usize::from(!b.excluded.is_empty());
    if target < minimum {
        return Err(BisectError::TargetTooShort { target, minimum });
    }
    let mut out = Vec::new();
    for piece in b.pieces(graph) {
        expand_cylinder_into(graph, &piece, target, &mut out);
    }
    out.sort();
    Ok(out)
}

pub(crate) fn expand_cylinder_into(graph: &Graph, c: &BasicBisection, target: usize, out: &mut Vec<BasicBisection>) {
    debug_assert!(c.is_cylinder() && target >= c.alpha.len());
    let depth = target - c.alpha.len();
    if depth == 0 {
        out.push(c.clone());
        return;
    }
    let start = graph.empty_path(c.alpha.range());
    for tau in start.extensions_of_length(graph, depth) {
        out.push(BasicBisection::cylinder_unchecked(
            c.alpha.concat_unchecked(&tau),
            c.beta.concat_unchecked(&tau),
        ));
    }
}

/// `Z(α,β)·Z(γ,δ)` for plain cylinders.
pub fn cylinder_product(a: &BasicBisection, b: &BasicBisection) -> Option<BasicBisection> {
    debug_assert!(a.is_cylinder() && b.is_cylinder());
    if let Some(tau) = b.alpha.strip_prefix(&a.beta) {
        // γ = βτ
        Some(BasicBisection::cylinder_unchecked(a.alpha.concat_unchecked(&tau), b.beta.clone()))
    } else {
        // β = γτ
        let tau = a.beta.strip_prefix(&b.alpha)?;
        Some(BasicBisection::cylinder_unchecked(a.alpha.clone(), b.beta.concat_unchecked(&tau)))
    }
}

/// `Z(α,β) ∩ Z(γ,δ)` for plain cylinders.
pub fn cylinder_intersection(a: &BasicBisection, b: &BasicBisection) -> Option<BasicBisection> {
    debug_assert!(a.is_cylinder() && b.is_cylinder());
    if a.degree() != b.degree() {
        return None;
    }
    let (short, long) = if a.alpha.len() <= b.alpha.len() { (a, b) } else { (b, a) };
    let kappa = long.alpha.strip_prefix(&short.alpha)?;
    let tail = long.beta.strip_prefix(&short.beta)?;
    (kappa.edges() == tail.edges()).then(|| long.clone())
}

/// Whether cylinder `inner` is contained in cylinder `outer`.
pub fn cylinder_contains(outer: &BasicBisection, inner: &BasicBisection) -> bool {
    inner.alpha.len() >= outer.alpha.len() && cylinder_intersection(outer, inner).as_ref() == Some(inner)
}

/// The set product `ab` as a sorted disjoint list of cylinders.
pub fn product(graph: &Graph, a: &BasicBisection, b: &BasicBisection) -> Vec<BasicBisection> {
    let left = a.pieces(graph);
    let right = b.pieces(graph);
    let mut out: Vec<BasicBisection> =
        left.iter().flat_map(|x| right.iter().filter_map(move |y| cylinder_product(x, y))).collect();
    out.sort();
    out
}

/// `a ∩ b` as a sorted disjoint list of cylinders.
pub fn intersect(graph: &Graph, a: &BasicBisection, b: &BasicBisection) -> Vec<BasicBisection> {
    let left = a.pieces(graph);
    let right = b.pieces(graph);
    let mut out: Vec<BasicBisection> =
        left.iter().flat_map(|x| right.iter().filter_map(move |y| cylinder_intersection(x, y))).collect();
    out.sort();
    out
}

/// Which branch of the complement computation produced a result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Complement {
    /// `a ⊆ b`.
    Empty,
    /// `a ∩ b = ∅`.
    Whole,
    /// `Z(α,β,F) \ Z(α,β,H) = ⊔_{e∈H∖F} Z(αe,βe)`.
    ExcludedExtension(Vec<BasicBisection>),
    /// `Z(α,β,F) \ Z(ακ,βκ,H)`: the chain `Z(α,β,F∪{κ₁}) ⊔ Z(ακ₁,βκ₁,{κ₂}) ⊔ … ⊔ ⊔_{e∈H} Z(ακe,βκe)`.
    KappaChain(Vec<BasicBisection>),
}

impl Complement {
    pub fn name(&self) -> &'static str {
        match self {
            Complement::Empty => "Empty",
            Complement::Whole => "Whole",
            Complement::ExcludedExtension(_) => "ExcludedExtension",
            Complement::KappaChain(_) => "KappaChain",
        }
    }

    pub fn formula_applies(&self) -> bool {
        matches!(self, Complement::ExcludedExtension(_) | Complement::KappaChain(_))
    }
}

/// Classifies `a \ b` by prefix comparison and returns the matching
/// decomposition in `Z(α, β, F)` form.
///
/// Degrees equal and `(γ, δ) = (ακ, βκ)` gives the extension (`κ = ε`) or
/// chain formula. `(α, β) = (γλ, δλ)` with `λ ≠ ε` means `a ⊆ Z(γ, δ)`,
/// so the complement is `a` or `∅` depending on whether `λ₁ ∈ H`. Every
/// other configuration is disjoint.
pub fn classify_complement(graph: &Graph, a: &BasicBisection, b: &BasicBisection) -> Complement {
    if a.is_empty(graph) {
        return Complement::Empty;
    }
    if b.is_empty(graph) || a.degree() != b.degree() {
        return Complement::Whole;
    }
    if let Some(kappa) = b.alpha.strip_prefix(&a.alpha) {
        let Some(tail) = b.beta.strip_prefix(&a.beta) else {
            return Complement::Whole;
        };
        if tail.edges() != kappa.edges() {
            return Complement::Whole;
        }
        if kappa.is_empty() {
            let list = b
                .excluded
                .difference(&a.excluded)
                .map(|&e| {
                    BasicBisection::cylinder_unchecked(a.alpha.push_unchecked(graph, e), a.beta.push_unchecked(graph, e))
                })
                .collect();
            return Complement::ExcludedExtension(list);
        }
        let k = kappa.edges();
        if a.excluded.contains(&k[0]) {
            return Complement::Whole;
        }
        let mut list = Vec::with_capacity(k.len() + b.excluded.len());
        let mut first_excl = a.excluded.clone();
        first_excl.insert(k[0]);
        list.push(BasicBisection { alpha: a.alpha.clone(), beta: a.beta.clone(), excluded: first_excl });
        let (mut alpha, mut beta) = (a.alpha.clone(), a.beta.clone());
        for w in k.windows(2) {
            alpha = alpha.push_unchecked(graph, w[0]);
            beta = beta.push_unchecked(graph, w[0]);
            list.push(BasicBisection { alpha: alpha.clone(), beta: beta.clone(), excluded: BTreeSet::from([w[1]]) });
        }
        for &e in &b.excluded {
            list.push(BasicBisection::cylinder_unchecked(
                b.alpha.push_unchecked(graph, e),
                b.beta.push_unchecked(graph, e),
            ));
        }
        return Complement::KappaChain(list);
    }
    if let Some(lambda) = a.alpha.strip_prefix(&b.alpha) {
        let Some(tail) = a.beta.strip_prefix(&b.beta) else {
            return Complement::Whole;
        };
        if tail.edges() != lambda.edges() {
            return Complement::Whole;
        }
        return if b.excluded.contains(&lambda.edges()[0]) { Complement::Whole } else { Complement::Empty };
    }
    Complement::Whole
}

/// `a \ b` as a sorted disjoint list of cylinders.
pub fn relative_complement(graph: &Graph, a: &BasicBisection, b: &BasicBisection) -> Vec<BasicBisection> {
    let mut out = match classify_complement(graph, a, b) {
        Complement::Empty => Vec::new(),
        Complement::Whole => a.pieces(graph),
        Complement::ExcludedExtension(list) | Complement::KappaChain(list) => {
            list.iter().flat_map(|x| x.pieces(graph)).collect()
        }
    };
    out.sort();
    out
}

/// Smallest alpha length at which both bisections expand into plain cylinders.
fn common_depth(a: &BasicBisection, b: &BasicBisection) -> usize {
    let need = |x: &BasicBisection| x.alpha.len() + usize::from(!x.excluded.is_empty());
    need(a).max(need(b))
}

/// Reference implementation of `a \ b`: expand both to one alpha length
/// and take the set difference of the resulting cylinder lists.
pub fn relative_complement_by_expansion(graph: &Graph, a: &BasicBisection, b: &BasicBisection) -> Vec<BasicBisection> {
    let depth = common_depth(a, b);
    let removed: BTreeSet<BasicBisection> = expand(graph, b, depth).unwrap_or_default().into_iter().collect();
    expand(graph, a, depth).unwrap_or_default().into_iter().filter(|c| !removed.contains(c)).collect()
}

/// Whether two disjoint cylinder lists cover the same set.
pub fn same_union(graph: &Graph, left: &[BasicBisection], right: &[BasicBisection]) -> bool {
    let depth = left.iter().chain(right).map(|c| common_depth(c, c)).max().unwrap_or(0);
    let flatten = |list: &[BasicBisection]| {
        let mut out = Vec::new();
        for c in list {
            for p in c.pieces(graph) {
                expand_cylinder_into(graph, &p, depth, &mut out);
            }
        }
        out.sort();
        out
    };
    flatten(left) == flatten(right)
}

/// Whether `g ∈ b`.
pub fn member(graph: &Graph, g: &GroupoidPoint, b: &BasicBisection) -> bool {
    if b.is_empty(graph) || g.k != b.degree() {
        return false;
    }
    if !g.x.starts_with(&b.alpha) || !g.y.starts_with(&b.beta) {
        return false;
    }
    if !b.excluded.is_empty() && b.excluded.contains(&g.x.edge_at(b.alpha.len())) {
        return false;
    }
    g.x.shift(graph, b.alpha.len()) == g.y.shift(graph, b.beta.len())
}

//! Projections and the diagonal, effectiveness, Bowen–Franks groups, and the
//! decision procedure for tensor products of Cuntz groupoid algebras.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bisect::BasicBisection;
use crate::graph::{Graph, Path};
use crate::leavitt::LeavittElement;
use crate::scalars::{Scalar, ScalarRing};
use crate::steinberg::{AlgebraElement, AlgebraValue};
use crate::tensor::{pi, sigma, ProductAlgebraElement, ProductBisection, TensorElement};
use crate::verify;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("Bowen-Franks group needs n >= 2, got {0}")]
    TooSmall(u64),
}

/// Algebras with an involution and a notion of diagonal support.
pub trait InvolutiveAlgebra: AlgebraValue {
    fn star(&self) -> Self;
    fn is_diagonal(&self) -> bool;
}

impl InvolutiveAlgebra for AlgebraElement {
    fn star(&self) -> Self {
        AlgebraElement::star(self)
    }

    fn is_diagonal(&self) -> bool {
        AlgebraElement::is_diagonal(self)
    }
}

impl InvolutiveAlgebra for ProductAlgebraElement {
    fn star(&self) -> Self {
        ProductAlgebraElement::star(self)
    }

    fn is_diagonal(&self) -> bool {
        ProductAlgebraElement::is_diagonal(self)
    }
}

impl InvolutiveAlgebra for LeavittElement {
    fn star(&self) -> Self {
        LeavittElement::star(self)
    }

    fn is_diagonal(&self) -> bool {
        LeavittElement::is_diagonal(self)
    }
}

/// `p = p² = p^*`.
pub fn is_projection<A: InvolutiveAlgebra>(p: &A) -> bool {
    p.star() == *p && p.mul(p) == *p
}

/// All paths of length at most `depth`, shortest first.
pub fn paths_up_to(graph: &Graph, depth: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for v in graph.vertices() {
        let start = graph.empty_path(v);
        for m in 0..=depth {
            out.extend(start.extensions_of_length(graph, m));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Cylinders `Z(α, β)` with `|α|, |β| ≤ depth`.
pub fn cylinders_up_to(graph: &Graph, depth: usize) -> Vec<BasicBisection> {
    let paths = paths_up_to(graph, depth);
    let mut out = Vec::new();
    for a in &paths {
        for b in &paths {
            if a.range() == b.range() {
                out.push(BasicBisection::cylinder(a.clone(), b.clone()).expect("matching ranges"));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ProjectionSearch<E> {
    pub candidates: u64,
    /// Distinct projections found, each with its diagonal flag.
    pub projections: Vec<(E, bool)>,
    /// `Some(all diagonal)` when the ring is kind; the assertion is not made
    /// otherwise.
    pub kind_assertion: Option<bool>,
}

impl<E> ProjectionSearch<E> {
    pub fn non_diagonal(&self) -> impl Iterator<Item = &E> {
        self.projections.iter().filter(|(_, d)| !d).map(|(e, _)| e)
    }

    pub fn passed(&self) -> bool {
        self.kind_assertion != Some(false)
    }
}

fn finish<E>(ring: ScalarRing, candidates: u64, found: Vec<E>) -> ProjectionSearch<E>
where
    E: InvolutiveAlgebra + fmt::Display,
{
    let mut unique: BTreeMap<String, E> = BTreeMap::new();
    for p in found {
        unique.entry(p.to_string()).or_insert(p);
    }
    let projections: Vec<(E, bool)> = unique.into_values().map(|p| {
        let d = p.is_diagonal();
        (p, d)
    }).collect();
    let kind_assertion = (ring.is_kind() == Some(true)).then(|| projections.iter().all(|(_, d)| *d));
    ProjectionSearch { candidates, projections, kind_assertion }
}

/// Every element supported on cylinders with `|α|, |β| ≤ depth` and integer
/// coefficients in `[-coeff_bound, coeff_bound]`.
pub fn search_projections(
    graph: &Arc<Graph>,
    ring: ScalarRing,
    depth: usize,
    coeff_bound: u32,
) -> ProjectionSearch<AlgebraElement> {
    let basis = cylinders_up_to(graph, depth);
    let width = 2 * coeff_bound as u64 + 1;
    let total = width.checked_pow(basis.len() as u32).expect("search space fits in u64");
    let found: Vec<AlgebraElement> = (0..total)
        .into_par_iter()
        .filter_map(|mut index| {
            let mut pairs = Vec::new();
            for b in &basis {
                let c = (index % width) as i64 - coeff_bound as i64;
                index /= width;
                if c != 0 {
                    pairs.push((ring.from_int(c), b.clone()));
                }
            }
            let f = AlgebraElement::from_terms(graph.clone(), ring, &pairs).expect("valid cylinders");
            is_projection(&f).then_some(f)
        })
        .collect();
    finish(ring, total, found)
}

/// Orbits `{B, B⁻¹}` of a basis under inversion.
fn inverse_orbits<B: Clone + Ord>(basis: &[B], inverse: impl Fn(&B) -> B) -> Vec<(B, Option<B>)> {
    basis
        .iter()
        .filter_map(|b| {
            let inv = inverse(b);
            match inv.cmp(b) {
                std::cmp::Ordering::Equal => Some((b.clone(), None)),
                std::cmp::Ordering::Greater => Some((b.clone(), Some(inv))),
                std::cmp::Ordering::Less => None,
            }
        })
        .collect()
}

/// A sparse self-adjoint candidate: a few orbits, coefficient `r` on `B` and
/// `conj(r)` on `B⁻¹`.
fn sample_self_adjoint<B: Clone>(
    rng: &mut ChaCha8Rng,
    orbits: &[(B, Option<B>)],
    ring: ScalarRing,
    coeff_bound: i64,
    max_orbits: usize,
) -> Vec<(Scalar, B)> {
    let k = rng.gen_range(1..=max_orbits.min(orbits.len()));
    let mut pairs = Vec::new();
    for (b, inv) in orbits.choose_multiple(rng, k) {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-coeff_bound..=coeff_bound);
        }
        let r = ring.from_int(c);
        if let Some(inv) = inv {
            pairs.push((r.conj(), inv.clone()));
        }
        pairs.push((r, b.clone()));
    }
    pairs
}

const MAX_ORBITS: usize = 6;

/// Seeded random search over sparse self-adjoint elements of `A_R(G)`.
pub fn random_projection_search(
    graph: &Arc<Graph>,
    ring: ScalarRing,
    depth: usize,
    coeff_bound: u32,
    samples: u64,
    seed: u64,
) -> ProjectionSearch<AlgebraElement> {
    let orbits = inverse_orbits(&cylinders_up_to(graph, depth), BasicBisection::inverse);
    let found = chunked(samples, seed, |rng| {
        let pairs = sample_self_adjoint(rng, &orbits, ring, coeff_bound as i64, MAX_ORBITS);
        let f = AlgebraElement::from_terms(graph.clone(), ring, &pairs).expect("valid cylinders");
        is_projection(&f).then_some(f)
    });
    finish(ring, samples, found)
}

/// The same search in the product algebra `A_R(G × H)`.
pub fn random_product_projection_search(
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    ring: ScalarRing,
    depth: usize,
    coeff_bound: u32,
    samples: u64,
    seed: u64,
) -> ProjectionSearch<ProductAlgebraElement> {
    let l = cylinders_up_to(left, depth);
    let r = cylinders_up_to(right, depth);
    let basis: Vec<ProductBisection> =
        l.iter().flat_map(|a| r.iter().map(move |b| ProductBisection::new(a.clone(), b.clone()))).collect();
    let orbits = inverse_orbits(&basis, ProductBisection::inverse);
    let found = chunked(samples, seed, |rng| {
        let pairs = sample_self_adjoint(rng, &orbits, ring, coeff_bound as i64, MAX_ORBITS);
        let f = ProductAlgebraElement::from_terms(left.clone(), right.clone(), ring, &pairs).expect("valid cylinders");
        is_projection(&f).then_some(f)
    });
    finish(ring, samples, found)
}

/// Runs `samples` draws split into fixed chunks, each with its own stream of
/// the seeded generator, so the outcome does not depend on thread count.
fn chunked<E: Send>(samples: u64, seed: u64, draw: impl Fn(&mut ChaCha8Rng) -> Option<E> + Sync) -> Vec<E> {
    const CHUNK: u64 = 1024;
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let n = CHUNK.min(samples - i * CHUNK);
            (0..n).filter_map(|_| draw(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

/// Homomorphisms whose diagonal preservation can be sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalHom {
    Identity,
    Sigma,
    Pi,
    MapScalars,
    ToSteinberg,
}

impl DiagonalHom {
    pub const ALL: [DiagonalHom; 5] =
        [DiagonalHom::Identity, DiagonalHom::Sigma, DiagonalHom::Pi, DiagonalHom::MapScalars, DiagonalHom::ToSteinberg];
}

impl fmt::Display for DiagonalHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagonalHom::Identity => "identity",
            DiagonalHom::Sigma => "sigma",
            DiagonalHom::Pi => "pi",
            DiagonalHom::MapScalars => "map_scalars",
            DiagonalHom::ToSteinberg => "to_steinberg",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalReport {
    pub hom: DiagonalHom,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl DiagonalReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Samples diagonal inputs and checks that their images are diagonal.
///
/// Sigma and pi run over `O_2 × O_3`, map_scalars includes `ℤ` into `ℤ[i]`
/// on `O_2`, to_steinberg uses `L_2` and `L_3`. For sigma the diagonal
/// product cylinders of depth at most 2 are also checked to be hit.
pub fn check_diagonal_preservation(hom: DiagonalHom, samples: usize, seed: u64) -> DiagonalReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = ScalarRing::Integers;
    let o2 = Arc::new(Graph::cuntz(2).expect("n = 2"));
    let o3 = Arc::new(Graph::cuntz(3).expect("n = 3"));
    let mut report = DiagonalReport { hom, checked: 0, counterexample: None };
    let fail = |input: String, image: String| Some(format!("{input} -> {image}"));
    for _ in 0..samples {
        report.checked += 1;
        let bad = match hom {
            DiagonalHom::Identity => {
                let f = verify::random_diagonal_element(&mut rng, &o2, z, 3, 4, 3);
                (!f.is_diagonal()).then(|| fail(f.to_string(), f.to_string())).flatten()
            }
            DiagonalHom::Sigma => {
                let t = verify::random_diagonal_tensor(&mut rng, &o2, &o3, z, 3, 4, 3);
                let p = sigma(&t);
                (!p.is_diagonal()).then(|| fail(t.to_string(), p.to_string())).flatten()
            }
            DiagonalHom::Pi => {
                let t = verify::random_diagonal_tensor(&mut rng, &o2, &o3, z, 3, 4, 3);
                let p = sigma(&t);
                let back = pi(&p);
                (!back.is_diagonal()).then(|| fail(p.to_string(), back.to_string())).flatten()
            }
            DiagonalHom::MapScalars => {
                let f = verify::random_diagonal_element(&mut rng, &o2, z, 3, 4, 3);
                let g = f.map_scalars(ScalarRing::GaussianIntegers).expect("Z includes into Z[i]");
                (!g.is_diagonal()).then(|| fail(f.to_string(), g.to_string())).flatten()
            }
            DiagonalHom::ToSteinberg => {
                let n = rng.gen_range(2..=3);
                let a = verify::random_diagonal_leavitt(&mut rng, n, z, 3, 4, 3);
                let f = a.to_steinberg();
                (!f.is_diagonal()).then(|| fail(a.to_string(), f.to_string())).flatten()
            }
        };
        if bad.is_some() {
            report.counterexample = bad;
            return report;
        }
    }
    if hom == DiagonalHom::Sigma {
        let left = cylinders_up_to(&o2, 2).into_iter().filter(BasicBisection::is_diagonal).collect::<Vec<_>>();
        let right = cylinders_up_to(&o3, 2).into_iter().filter(BasicBisection::is_diagonal).collect::<Vec<_>>();
        for a in &left {
            for b in &right {
                report.checked += 1;
                let k = ProductBisection::new(a.clone(), b.clone());
                let target = ProductAlgebraElement::indicator(o2.clone(), o3.clone(), z, &k);
                let pre = TensorElement::indicator(o2.clone(), o3.clone(), z, &k);
                if !pre.is_diagonal() || sigma(&pre) != target {
                    report.counterexample = Some(format!("{} not hit by a diagonal tensor", target));
                    return report;
                }
            }
        }
    }
    report
}

/// Whether every cycle has an exit.
pub fn is_effective(graph: &Graph) -> bool {
    // a cycle without an exit runs through vertices of out-degree 1 only
    graph.vertices().all(|v| {
        let mut u = v;
        for _ in 0..graph.vertex_count() {
            let out = graph.out_edges(u);
            if out.len() != 1 {
                return true;
            }
            u = graph.range(out[0]);
            if u == v {
                return false;
            }
        }
        true
    })
}

/// A cyclic group; order 0 stands for `ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteCyclicGroup {
    pub order: u64,
}

impl fmt::Display for FiniteCyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            f.write_str("Z")
        } else {
            write!(f, "Z/{}", self.order)
        }
    }
}

/// `BF([n]) = ℤ/(n−1)`.
pub fn bowen_franks(n: u64) -> Result<FiniteCyclicGroup, InvariantError> {
    if n < 2 {
        return Err(InvariantError::TooSmall(n));
    }
    Ok(FiniteCyclicGroup { order: n - 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictReason {
    LengthMismatch,
    SortedTuplesDiffer,
    Equal,
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Outcome of comparing `O_{n_1} × … × O_{n_k}` with `O_{m_1} × … × O_{m_l}`,
/// with the isotropy ranks and Bowen–Franks groups as evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleVerdict {
    pub same: bool,
    pub reason: VerdictReason,
    pub left_rank: usize,
    pub right_rank: usize,
    pub left_bf: Vec<FiniteCyclicGroup>,
    pub right_bf: Vec<FiniteCyclicGroup>,
}

impl fmt::Display for TupleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[FiniteCyclicGroup]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        writeln!(f, "verdict: {}", self.reason)?;
        writeln!(f, "isomorphic: {}", self.same)?;
        writeln!(f, "isotropy ranks: {} vs {}", self.left_rank, self.right_rank)?;
        write!(f, "bowen-franks: {} vs {}", list(&self.left_bf), list(&self.right_bf))
    }
}

pub fn decide_tensor_tuples(ns: &[u64], ms: &[u64]) -> Result<TupleVerdict, InvariantError> {
    let mut a = ns.to_vec();
    let mut b = ms.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let left_bf = a.iter().map(|&n| bowen_franks(n)).collect::<Result<Vec<_>, _>>()?;
    let right_bf = b.iter().map(|&n| bowen_franks(n)).collect::<Result<Vec<_>, _>>()?;
    let reason = if a.len() != b.len() {
        VerdictReason::LengthMismatch
    } else if a != b {
        VerdictReason::SortedTuplesDiffer
    } else {
        VerdictReason::Equal
    };
    Ok(TupleVerdict {
        same: reason == VerdictReason::Equal,
        reason,
        left_rank: a.len(),
        right_rank: b.len(),
        left_bf,
        right_bf,
    })
}

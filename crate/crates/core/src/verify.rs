//! Seeded random generators and the property suites run by `verify`.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bisect::{self, BasicBisection};
use crate::graph::{BoundaryPoint, Graph, GroupoidPoint, Path, VertexId};
use crate::invariants::{self, DiagonalHom};
use crate::leavitt::{Generator, LeavittElement, Monomial};
use crate::scalars::{verify_kind_witness, KindWitness, Scalar, ScalarRing};
use crate::steinberg::{check_representation, disjointify, AlgebraElement, AlgebraValue, WitnessFamily};
use crate::tensor::{
    pi, pi_of_terms, product_degree, quotient_degree, refine_family, sigma, tensor_assignment, ProductAlgebraElement,
    ProductBisection, TensorElement,
};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut Rng64, ring: ScalarRing, bound: i64) -> Scalar {
    let int = |rng: &mut Rng64| BigInt::from(rng.gen_range(-bound..=bound));
    let (re, im) = match ring {
        ScalarRing::Integers => (BigRational::from(int(rng)), BigRational::zero()),
        ScalarRing::GaussianIntegers => (BigRational::from(int(rng)), BigRational::from(int(rng))),
        ScalarRing::Rationals => {
            let d = BigInt::from(rng.gen_range(1..=3));
            (BigRational::new(int(rng), d), BigRational::zero())
        }
        ScalarRing::DyadicRationals => {
            let d = BigInt::from(1u32 << rng.gen_range(0..=2));
            (BigRational::new(int(rng), d), BigRational::zero())
        }
    };
    Scalar::new(ring, re, im).expect("value lies in the ring")
}

pub fn random_nonzero_scalar(rng: &mut Rng64, ring: ScalarRing, bound: i64) -> Scalar {
    loop {
        let r = random_scalar(rng, ring, bound.max(1));
        if !r.is_zero() {
            return r;
        }
    }
}

fn in_edges(graph: &Graph, v: VertexId) -> Vec<u32> {
    graph.edge_ids().filter(|&e| graph.range(e) == v).collect()
}

pub fn random_walk(rng: &mut Rng64, graph: &Graph, from: VertexId, len: usize) -> Path {
    let mut edges = Vec::with_capacity(len);
    let mut v = from;
    for _ in 0..len {
        let e = *graph.out_edges(v).choose(rng).expect("no sinks");
        edges.push(e);
        v = graph.range(e);
    }
    if edges.is_empty() {
        graph.empty_path(from)
    } else {
        graph.path(&edges).expect("walk is composable")
    }
}

/// A path of length at most `len` ending at `to`; shorter if a source is hit.
fn random_walk_into(rng: &mut Rng64, graph: &Graph, to: VertexId, len: usize) -> Path {
    let mut edges = Vec::with_capacity(len);
    let mut v = to;
    for _ in 0..len {
        let Some(&e) = in_edges(graph, v).choose(rng) else { break };
        edges.push(e);
        v = graph.source(e);
    }
    edges.reverse();
    if edges.is_empty() {
        graph.empty_path(to)
    } else {
        graph.path(&edges).expect("walk is composable")
    }
}

fn random_vertex(rng: &mut Rng64, graph: &Graph) -> VertexId {
    rng.gen_range(0..graph.vertex_count() as VertexId)
}

/// `Z(α, β)` with `|α|, |β| ≤ depth`.
pub fn random_cylinder(rng: &mut Rng64, graph: &Graph, depth: usize) -> BasicBisection {
    let v = random_vertex(rng, graph);
    let la = rng.gen_range(0..=depth);
    let lb = rng.gen_range(0..=depth);
    let alpha = random_walk(rng, graph, v, la);
    let beta = random_walk_into(rng, graph, alpha.range(), lb);
    BasicBisection::cylinder(alpha, beta).expect("ranges agree")
}

/// A cylinder of the given degree, if one turns up within a few draws.
pub fn random_cylinder_of_degree(rng: &mut Rng64, graph: &Graph, depth: usize, degree: i64) -> Option<BasicBisection> {
    (0..64).map(|_| random_cylinder(rng, graph, depth)).find(|b| b.degree() == degree)
}

/// `Z(α, β, F)` where `F` is empty with probability one half.
pub fn random_bisection(rng: &mut Rng64, graph: &Graph, depth: usize) -> BasicBisection {
    let c = random_cylinder(rng, graph, depth);
    if rng.gen_bool(0.5) {
        return c;
    }
    let out = graph.out_edges(c.alpha().range());
    let excluded: BTreeSet<u32> = out.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    BasicBisection::new(graph, c.alpha().clone(), c.beta().clone(), excluded).expect("excluded edges leave r(α)")
}

/// A cylinder inside `b` obtained by extending both paths by a random `τ`.
pub fn random_subcylinder(rng: &mut Rng64, graph: &Graph, b: &BasicBisection, extra: usize) -> BasicBisection {
    let len = rng.gen_range(0..=extra);
    let tau = random_walk(rng, graph, b.alpha().range(), len);
    BasicBisection::cylinder(b.alpha().concat(&tau).expect("composable"), b.beta().concat(&tau).expect("composable"))
        .expect("ranges agree")
}

pub fn random_terms(
    rng: &mut Rng64,
    graph: &Graph,
    ring: ScalarRing,
    depth: usize,
    max_terms: usize,
    coeff: i64,
) -> Vec<(Scalar, BasicBisection)> {
    let n = rng.gen_range(1..=max_terms);
    (0..n).map(|_| (random_nonzero_scalar(rng, ring, coeff), random_bisection(rng, graph, depth))).collect()
}

pub fn random_element(
    rng: &mut Rng64,
    graph: &Arc<Graph>,
    ring: ScalarRing,
    depth: usize,
    max_terms: usize,
    coeff: i64,
) -> AlgebraElement {
    let pairs = random_terms(rng, graph, ring, depth, max_terms, coeff);
    AlgebraElement::from_terms(graph.clone(), ring, &pairs).expect("valid terms")
}

pub fn random_diagonal_cylinder(rng: &mut Rng64, graph: &Graph, depth: usize) -> BasicBisection {
    let v = random_vertex(rng, graph);
    let len = rng.gen_range(0..=depth);
    let a = random_walk(rng, graph, v, len);
    BasicBisection::cylinder(a.clone(), a).expect("ranges agree")
}

pub fn random_diagonal_element(
    rng: &mut Rng64,
    graph: &Arc<Graph>,
    ring: ScalarRing,
    depth: usize,
    max_terms: usize,
    coeff: i64,
) -> AlgebraElement {
    let n = rng.gen_range(1..=max_terms);
    let pairs: Vec<_> =
        (0..n).map(|_| (random_nonzero_scalar(rng, ring, coeff), random_diagonal_cylinder(rng, graph, depth))).collect();
    AlgebraElement::from_terms(graph.clone(), ring, &pairs).expect("valid terms")
}

pub fn random_tensor(
    rng: &mut Rng64,
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    ring: ScalarRing,
    depth: usize,
    max_terms: usize,
    coeff: i64,
) -> TensorElement {
    let n = rng.gen_range(1..=max_terms);
    let pairs: Vec<_> = (0..n)
        .map(|_| {
            (random_nonzero_scalar(rng, ring, coeff), random_bisection(rng, left, depth), random_bisection(rng, right, depth))
        })
        .collect();
    TensorElement::from_terms(left.clone(), right.clone(), ring, &pairs).expect("valid terms")
}

pub fn random_diagonal_tensor(
    rng: &mut Rng64,
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    ring: ScalarRing,
    depth: usize,
    max_terms: usize,
    coeff: i64,
) -> TensorElement {
    let n = rng.gen_range(1..=max_terms);
    let pairs: Vec<_> = (0..n)
        .map(|_| {
            (
                random_nonzero_scalar(rng, ring, coeff),
                random_diagonal_cylinder(rng, left, depth),
                random_diagonal_cylinder(rng, right, depth),
            )
        })
        .collect();
    TensorElement::from_terms(left.clone(), right.clone(), ring, &pairs).expect("valid terms")
}

pub fn random_product_terms(
    rng: &mut Rng64,
    left: &Graph,
    right: &Graph,
    ring: ScalarRing,
    depth: usize,
    max_terms: usize,
    coeff: i64,
) -> Vec<(Scalar, ProductBisection)> {
    let n = rng.gen_range(1..=max_terms);
    (0..n)
        .map(|_| {
            let k = ProductBisection::new(random_cylinder(rng, left, depth), random_cylinder(rng, right, depth));
            (random_nonzero_scalar(rng, ring, coeff), k)
        })
        .collect()
}

pub fn random_product(
    rng: &mut Rng64,
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    ring: ScalarRing,
    depth: usize,
    max_terms: usize,
    coeff: i64,
) -> ProductAlgebraElement {
    let pairs = random_product_terms(rng, left, right, ring, depth, max_terms, coeff);
    ProductAlgebraElement::from_terms(left.clone(), right.clone(), ring, &pairs).expect("valid terms")
}

fn random_word(rng: &mut Rng64, n: usize, depth: usize) -> Vec<u32> {
    let len = rng.gen_range(0..=depth);
    (0..len).map(|_| rng.gen_range(1..=n as u32)).collect()
}

pub fn random_leavitt(rng: &mut Rng64, n: usize, ring: ScalarRing, depth: usize, max_terms: usize, coeff: i64) -> LeavittElement {
    let k = rng.gen_range(1..=max_terms);
    let pairs: Vec<(Scalar, Monomial)> = (0..k)
        .map(|_| (random_nonzero_scalar(rng, ring, coeff), (random_word(rng, n, depth), random_word(rng, n, depth))))
        .collect();
    LeavittElement::from_terms(n, ring, pairs).expect("single ring")
}

pub fn random_diagonal_leavitt(
    rng: &mut Rng64,
    n: usize,
    ring: ScalarRing,
    depth: usize,
    max_terms: usize,
    coeff: i64,
) -> LeavittElement {
    let k = rng.gen_range(1..=max_terms);
    let pairs: Vec<(Scalar, Monomial)> = (0..k)
        .map(|_| {
            let mu = random_word(rng, n, depth);
            (random_nonzero_scalar(rng, ring, coeff), (mu.clone(), mu))
        })
        .collect();
    LeavittElement::from_terms(n, ring, pairs).expect("single ring")
}

/// A random word in the generators `e_i`, `e_i^*`.
pub fn random_generator_word(rng: &mut Rng64, n: usize, len: usize) -> Vec<Generator> {
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=n as u32);
            if rng.gen_bool(0.5) {
                Generator::Edge(i)
            } else {
                Generator::Adjoint(i)
            }
        })
        .collect()
}

fn shortest_path(graph: &Graph, from: VertexId, to: VertexId) -> Option<Vec<u32>> {
    let mut prev: Vec<Option<u32>> = vec![None; graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    let mut queue = VecDeque::from([from]);
    seen[from as usize] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut edges = Vec::new();
            let mut u = to;
            while u != from {
                let e = prev[u as usize].expect("visited");
                edges.push(e);
                u = graph.source(e);
            }
            edges.reverse();
            return Some(edges);
        }
        for &e in graph.out_edges(v) {
            let w = graph.range(e);
            if !seen[w as usize] {
                seen[w as usize] = true;
                prev[w as usize] = Some(e);
                queue.push_back(w);
            }
        }
    }
    None
}

/// An eventually periodic infinite path starting at `v`.
pub fn random_boundary_point_from(
    rng: &mut Rng64,
    graph: &Graph,
    v: VertexId,
    max_prefix: usize,
    max_cycle: usize,
) -> BoundaryPoint {
    let len = rng.gen_range(0..=max_prefix);
    let prefix = random_walk(rng, graph, v, len);
    let w = prefix.range();
    let len = rng.gen_range(1..=max_cycle.max(1));
    let walk = random_walk(rng, graph, w, len);
    if let Some(back) = shortest_path(graph, walk.range(), w) {
        let cycle: Vec<u32> = walk.edges().iter().copied().chain(back).collect();
        let cycle = graph.path(&cycle).expect("closed walk");
        return BoundaryPoint::new(graph, prefix, cycle).expect("closed cycle at the prefix range");
    }
    // no way back: keep walking until a vertex repeats
    let mut edges: Vec<u32> = prefix.edges().iter().chain(walk.edges()).copied().collect();
    let mut visited = vec![walk.range()];
    let mut u = walk.range();
    loop {
        let e = *graph.out_edges(u).choose(rng).expect("no sinks");
        edges.push(e);
        u = graph.range(e);
        if let Some(j) = visited.iter().position(|&x| x == u) {
            let start = edges.len() - (visited.len() - j);
            let cycle = graph.path(&edges[start..]).expect("closed walk");
            let pre = if start == 0 { graph.empty_path(v) } else { graph.path(&edges[..start]).expect("walk") };
            return BoundaryPoint::new(graph, pre, cycle).expect("closed cycle");
        }
        visited.push(u);
    }
}

/// A point `(αz, |α| − |β|, βz)` of the cylinder `b`.
pub fn random_point_in(rng: &mut Rng64, graph: &Graph, b: &BasicBisection) -> GroupoidPoint {
    let z = random_boundary_point_from(rng, graph, b.alpha().range(), 3, 3);
    let extend = |p: &Path| {
        let prefix = p.concat(z.prefix()).expect("z starts at r(p)");
        BoundaryPoint::new(graph, prefix, z.cycle().clone()).expect("valid point")
    };
    GroupoidPoint::new(graph, extend(b.alpha()), b.degree(), extend(b.beta())).expect("tail equivalent")
}

/// A groupoid point drawn from a random cylinder of the given depth.
pub fn random_point(rng: &mut Rng64, graph: &Graph, depth: usize) -> GroupoidPoint {
    let b = random_cylinder(rng, graph, depth);
    random_point_in(rng, graph, &b)
}

/// Points concentrated on the supports of `bisections`, mixed with
/// unrelated ones.
pub fn probe_points(rng: &mut Rng64, graph: &Graph, bisections: &[BasicBisection], count: usize) -> Vec<GroupoidPoint> {
    (0..count)
        .map(|_| {
            let pieces: Vec<BasicBisection> = bisections.iter().flat_map(|b| b.pieces(graph)).collect();
            match pieces.choose(rng) {
                Some(b) if rng.gen_bool(0.7) => {
                    let deeper = random_subcylinder(rng, graph, b, 2);
                    random_point_in(rng, graph, &deeper)
                }
                _ => random_point(rng, graph, 3),
            }
        })
        .collect()
}

/// Rewrites a product-bisection expression into a different expression of
/// the same function by splitting terms.
pub fn random_reexpression(
    rng: &mut Rng64,
    left: &Graph,
    right: &Graph,
    terms: &[(Scalar, ProductBisection)],
) -> Vec<(Scalar, ProductBisection)> {
    let mut out = Vec::new();
    for (i, (r, k)) in terms.iter().enumerate() {
        let force = i == 0;
        match rng.gen_range(0..4) {
            0 if !force => out.push((r.clone(), k.clone())),
            1 => {
                // split the left factor one level down
                for c in bisect::expand(left, &k.left, k.left.alpha().len() + 1).expect("cylinder") {
                    out.push((r.clone(), ProductBisection::new(c, k.right.clone())));
                }
            }
            2 => {
                for c in bisect::expand(right, &k.right, k.right.alpha().len() + rng.gen_range(1..=2)).expect("cylinder") {
                    out.push((r.clone(), ProductBisection::new(k.left.clone(), c)));
                }
            }
            _ => {
                // K = (K ∖ L) ⊔ (K ∩ L) for a random L, plus a cancelling pair
                let l = ProductBisection::new(random_cylinder(rng, left, 2), random_cylinder(rng, right, 2));
                for piece in k.relative_complement(&l, left, right).into_iter().chain(k.intersect(&l, left, right)) {
                    out.push((r.clone(), piece));
                }
                out.push((r.clone(), l.clone()));
                out.push((r.neg(), l));
            }
        }
    }
    out.shuffle(rng);
    out
}

/// Outcome of one property suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn cuntz(n: usize) -> Arc<Graph> {
    Arc::new(Graph::cuntz(n).expect("n >= 2"))
}

/// A two-vertex graph without sinks whose loops have exits.
pub fn two_vertex_graph() -> Arc<Graph> {
    Arc::new(Graph::parse("vertex a\nvertex b\nedge x a b\nedge y b a\nedge l b b\nedge m a a\n").expect("valid graph"))
}

pub fn cuntz_relations(max_n: usize) -> SuiteReport {
    let mut report = SuiteReport::new("cuntz relations");
    let z = ScalarRing::Integers;
    for n in 2..=max_n {
        let g = cuntz(n);
        let s = |i: usize, adjoint: bool| {
            let e = g.empty_path(0);
            let p = g.path(&[i as u32]).expect("edge");
            let b = if adjoint { BasicBisection::cylinder(e, p) } else { BasicBisection::cylinder(p, e) };
            AlgebraElement::indicator(g.clone(), z, &b.expect("cylinder"), z.one()).expect("valid")
        };
        let one = AlgebraElement::one(g.clone(), z);
        let mut sum = AlgebraElement::zero(g.clone(), z);
        for i in 0..n {
            sum = sum.add(&s(i, false).mul(&s(i, true)));
            for j in 0..n {
                let p = s(i, true).mul(&s(j, false));
                let expected = if i == j { one.clone() } else { AlgebraElement::zero(g.clone(), z) };
                report.check(p == expected, || format!("n={n}: s{i}* s{j} = {p}"));
            }
        }
        report.check(sum == one, || format!("n={n}: sum s_i s_i* = {sum}"));
    }
    report
}

pub fn sigma_pi(rng: &mut Rng64, left: &Arc<Graph>, right: &Arc<Graph>, iters: usize) -> SuiteReport {
    let mut report = SuiteReport::new("sigma/pi round trip");
    let z = ScalarRing::Integers;
    for _ in 0..iters {
        let t1 = random_tensor(rng, left, right, z, 3, 3, 3);
        let t2 = random_tensor(rng, left, right, z, 3, 3, 3);
        let p = random_product(rng, left, right, z, 3, 3, 3);
        let s1 = sigma(&t1);
        report.check(pi(&s1) == t1, || format!("pi(sigma(t)) != t for t = {t1}"));
        report.check(sigma(&pi(&p)) == p, || format!("sigma(pi(p)) != p for p = {p}"));
        let prod = sigma(&t1.mul(&t2));
        report.check(prod == s1.mul(&sigma(&t2)), || format!("sigma not multiplicative on {t1} ; {t2}"));
        report.check(sigma(&t1.star()) == s1.star(), || format!("sigma not star-preserving on {t1}"));
    }
    report
}

pub fn disjointification(rng: &mut Rng64, graph: &Arc<Graph>, iters: usize, points: usize) -> SuiteReport {
    let mut report = SuiteReport::new("disjointify");
    let z = ScalarRing::Integers;
    for _ in 0..iters {
        let terms = random_terms(rng, graph, z, 3, 5, 3);
        let out = disjointify(graph, z, &terms).expect("valid terms");
        let disjoint = out.iter().enumerate().all(|(i, (_, a))| {
            out[i + 1..].iter().all(|(_, b)| bisect::intersect(graph, a, b).is_empty())
        });
        report.check(disjoint, || format!("overlapping output for {terms:?}"));
        let sets: Vec<BasicBisection> = terms.iter().map(|(_, b)| b.clone()).collect();
        for x in probe_points(rng, graph, &sets, points) {
            let value = |pairs: &[(Scalar, BasicBisection)]| {
                pairs.iter().filter(|(_, b)| bisect::member(graph, &x, b)).fold(z.zero(), |acc, (r, _)| acc.add(r))
            };
            report.check(value(&terms) == value(&out), || format!("value differs at {x:?}"));
        }
    }
    report
}

pub fn complements(rng: &mut Rng64, graph: &Graph, iters: usize) -> SuiteReport {
    let mut report = SuiteReport::new("relative complements");
    for _ in 0..iters {
        let a = random_bisection(rng, graph, 3);
        let b = if rng.gen_bool(0.5) { random_subcylinder(rng, graph, &a.pieces(graph).first().cloned().unwrap_or_else(|| a.clone()), 2) } else { random_bisection(rng, graph, 3) };
        let formula = bisect::relative_complement(graph, &a, &b);
        let oracle = bisect::relative_complement_by_expansion(graph, &a, &b);
        report.check(bisect::same_union(graph, &formula, &oracle), || format!("{a:?} minus {b:?}"));
        let mut parts = formula.clone();
        parts.extend(bisect::intersect(graph, &a, &b));
        let disjoint = parts.iter().enumerate().all(|(i, x)| parts[i + 1..].iter().all(|y| bisect::intersect(graph, x, y).is_empty()));
        report.check(disjoint && bisect::same_union(graph, &parts, &a.pieces(graph)), || format!("no partition of {a:?} by {b:?}"));
    }
    report
}

pub fn algebra_laws(rng: &mut Rng64, graph: &Arc<Graph>, ring: ScalarRing, iters: usize) -> SuiteReport {
    let mut report = SuiteReport::new("algebra laws");
    for _ in 0..iters {
        let f = random_element(rng, graph, ring, 2, 3, 2);
        let g = random_element(rng, graph, ring, 2, 3, 2);
        let h = random_element(rng, graph, ring, 2, 3, 2);
        report.check(f.mul(&g).mul(&h) == f.mul(&g.mul(&h)), || format!("associativity: {f} ; {g} ; {h}"));
        report.check(f.mul(&g.add(&h)) == f.mul(&g).add(&f.mul(&h)), || format!("distributivity: {f} ; {g} ; {h}"));
        report.check(f.mul(&g).star() == g.star().mul(&f.star()), || format!("(fg)* = g* f*: {f} ; {g}"));
        report.check(f.star().star() == f, || format!("f** = f: {f}"));
        report.check(f.agrees_by_expansion(&f.add(&AlgebraElement::zero(graph.clone(), ring))), || format!("f + 0: {f}"));
    }
    report
}

pub fn leavitt_bridge(rng: &mut Rng64, iters: usize) -> SuiteReport {
    let mut report = SuiteReport::new("leavitt bridge");
    let z = ScalarRing::Integers;
    let graphs = [cuntz(2), cuntz(3)];
    for i in 0..iters {
        let n = 2 + i % 2;
        let g = &graphs[i % 2];
        let a = random_leavitt(rng, n, z, 3, 4, 3);
        let b = random_leavitt(rng, n, z, 3, 4, 3);
        let fa = a.to_steinberg_on(g).expect("Cuntz graph");
        let fb = b.to_steinberg_on(g).expect("Cuntz graph");
        let to = |x: &LeavittElement| x.to_steinberg_on(g).expect("Cuntz graph");
        report.check(to(&a.mul(&b)) == fa.mul(&fb), || format!("product: {a} ; {b}"));
        report.check(to(&a.add(&b)) == fa.add(&fb), || format!("sum: {a} ; {b}"));
        report.check(to(&a.star()) == fa.star(), || format!("star: {a}"));
        report.check(LeavittElement::from_steinberg(&fa).ok().as_ref() == Some(&a), || format!("inverse: {a}"));
        report.check(a.is_diagonal() == fa.is_diagonal(), || format!("diagonal: {a}"));
        let len = rng.gen_range(0..6);
        let w = random_generator_word(rng, n, len);
        let reduced = LeavittElement::reduce_word(n, z, &w);
        let mut prod = LeavittElement::one(n, z);
        for gen in &w {
            let x = match *gen {
                Generator::Edge(i) => LeavittElement::generator(n, z, i),
                Generator::Adjoint(i) => LeavittElement::adjoint(n, z, i),
            };
            prod = prod.mul(&x);
        }
        report.check(reduced == prod, || format!("word reduction: {w:?}"));
    }
    report
}

pub fn universal_property(rng: &mut Rng64, left: &Arc<Graph>, right: &Arc<Graph>, iters: usize) -> SuiteReport {
    let mut report = SuiteReport::new("universal property");
    let z = ScalarRing::Integers;
    for _ in 0..iters {
        let first = random_product_terms(rng, left, right, z, 2, 3, 3);
        let second = random_reexpression(rng, left, right, &first);
        let same = ProductAlgebraElement::from_terms(left.clone(), right.clone(), z, &first).expect("valid")
            == ProductAlgebraElement::from_terms(left.clone(), right.clone(), z, &second).expect("valid");
        report.check(same, || format!("re-expression changed the element: {first:?}"));
        let a = pi_of_terms(left, right, z, first.iter().map(|(r, k)| (r, k))).expect("valid");
        let b = pi_of_terms(left, right, z, second.iter().map(|(r, k)| (r, k))).expect("valid");
        report.check(a == b, || format!("images differ: {a} vs {b}"));
    }
    report
}

/// A random family of cylinders inside `b` together with `b`.
fn random_cover(rng: &mut Rng64, graph: &Graph, b: &BasicBisection) -> Vec<BasicBisection> {
    let mut family = vec![b.clone()];
    for _ in 0..rng.gen_range(0..4) {
        family.push(random_subcylinder(rng, graph, b, 2));
    }
    refine_family(graph, &family)
}

pub fn representation_axioms(rng: &mut Rng64, left: &Arc<Graph>, right: &Arc<Graph>, pairs: usize, families: usize) -> SuiteReport {
    let mut report = SuiteReport::new("representation axioms");
    let z = ScalarRing::Integers;
    let rep = tensor_assignment(left.clone(), right.clone(), z);
    report.check(rep.image_or_empty(None).as_ref() == Some(rep.zero()), || "t of the empty set is nonzero".into());
    for _ in 0..pairs {
        let k = ProductBisection::new(random_cylinder(rng, left, 2), random_cylinder(rng, right, 2));
        let l = ProductBisection::new(random_cylinder(rng, left, 2), random_cylinder(rng, right, 2));
        let tk = rep.image(&k).expect("cylinders");
        let tl = rep.image(&l).expect("cylinders");
        let kl = crate::steinberg::SemigroupBasis::basis_product(&k, &l);
        let tkl = rep.image_or_empty(kl.as_ref()).expect("cylinders");
        report.check(tk.mul(&tl) == tkl, || format!("R2 fails on {k:?} ; {l:?}"));
    }
    for _ in 0..families {
        let a = random_cylinder(rng, left, 2);
        let b = random_cylinder(rng, right, 2);
        let xs = random_cover(rng, left, &a);
        let ys = random_cover(rng, right, &b);
        let members: Vec<ProductBisection> =
            xs.iter().flat_map(|x| ys.iter().map(move |y| ProductBisection::new(x.clone(), y.clone()))).collect();
        let family = WitnessFamily { members, union: ProductBisection::new(a, b) };
        let outcome = check_representation(&rep, std::slice::from_ref(&family));
        report.check(outcome.passed(), || format!("R3 fails on {family:?}: {:?}", outcome.failure));
    }
    report
}

fn homogeneous_product(
    rng: &mut Rng64,
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    ring: ScalarRing,
) -> Option<ProductAlgebraElement> {
    let first = ProductBisection::new(random_cylinder(rng, left, 2), random_cylinder(rng, right, 2));
    let (d1, d2) = first.degree();
    let mut pairs = vec![(random_nonzero_scalar(rng, ring, 3), first)];
    for _ in 0..rng.gen_range(0..3) {
        let a = random_cylinder_of_degree(rng, left, 3, d1)?;
        let b = random_cylinder_of_degree(rng, right, 3, d2)?;
        pairs.push((random_nonzero_scalar(rng, ring, 3), ProductBisection::new(a, b)));
    }
    Some(ProductAlgebraElement::from_terms(left.clone(), right.clone(), ring, &pairs).expect("valid"))
}

pub fn grading(rng: &mut Rng64, left: &Arc<Graph>, right: &Arc<Graph>, iters: usize) -> SuiteReport {
    let mut report = SuiteReport::new("grading");
    let z = ScalarRing::Integers;
    let mut done = 0;
    while done < iters {
        let (Some(f), Some(g)) = (homogeneous_product(rng, left, right, z), homogeneous_product(rng, left, right, z)) else {
            continue;
        };
        done += 1;
        let (Some(df), Some(dg)) = (f.pair_degrees().first().copied(), g.pair_degrees().first().copied()) else {
            continue;
        };
        let fg = f.mul(&g);
        if fg.is_zero() {
            continue;
        }
        let pair: Vec<_> = product_degree(&fg).into_keys().collect();
        report.check(pair == [(df.0 + dg.0, df.1 + dg.1)], || format!("pair degree of {f} * {g}: {pair:?}"));
        let sum: Vec<_> = quotient_degree(&fg).into_keys().collect();
        report.check(sum == [df.0 + df.1 + dg.0 + dg.1], || format!("quotient degree of {f} * {g}: {sum:?}"));
    }
    report
}

pub fn kindness() -> SuiteReport {
    let mut report = SuiteReport::new("kindness");
    let z = ScalarRing::Integers;
    for n in 1..=3usize {
        let count = 7usize.pow(n as u32 + 1);
        for mut index in 0..count {
            let lambdas: Vec<Scalar> = (0..=n)
                .map(|_| {
                    let v = (index % 7) as i64 - 3;
                    index /= 7;
                    z.from_int(v)
                })
                .collect();
            let verdict = verify_kind_witness(z, &lambdas).expect("integers are a star subring");
            report.check(verdict != KindWitness::KindnessViolated, || format!("{lambdas:?}"));
        }
    }
    let half = Scalar::parse("1/2", ScalarRing::DyadicRationals).expect("dyadic");
    let verdict = verify_kind_witness(ScalarRing::DyadicRationals, &[half.clone(), half]);
    report.check(verdict == Ok(KindWitness::KindnessViolated), || format!("dyadic witness gave {verdict:?}"));
    report
}

pub fn projections(seed: u64, samples: u64) -> SuiteReport {
    let mut report = SuiteReport::new("projections are diagonal");
    let z = ScalarRing::Integers;
    let o2 = cuntz(2);
    let o3 = cuntz(3);
    let runs = [
        invariants::random_projection_search(&o2, z, 2, 2, samples, seed),
        invariants::random_projection_search(&o3, z, 1, 1, samples, seed ^ 1),
    ];
    for run in &runs {
        report.check(run.passed(), || format!("non-diagonal projection: {:?}", run.non_diagonal().next()));
    }
    let run = invariants::random_product_projection_search(&o2, &o2, z, 1, 1, samples, seed ^ 2);
    report.check(run.passed(), || format!("non-diagonal projection: {:?}", run.non_diagonal().next()));
    report
}

pub fn diagonal_preservation(seed: u64, samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new("diagonal preservation");
    for hom in DiagonalHom::ALL {
        let r = invariants::check_diagonal_preservation(hom, samples, seed);
        report.check(r.passed(), || format!("{hom}: {:?}", r.counterexample));
    }
    report
}

pub fn round_trips(rng: &mut Rng64, iters: usize) -> SuiteReport {
    use crate::syntax::{parse_element, parse_leavitt, parse_product, parse_tensor};
    let mut report = SuiteReport::new("parse/print round trip");
    let zi = ScalarRing::GaussianIntegers;
    let g = two_vertex_graph();
    let o2 = cuntz(2);
    for _ in 0..iters {
        let f = random_element(rng, &g, zi, 3, 4, 3);
        report.check(parse_element(&f.to_string(), &g, zi).as_ref() == Ok(&f), || f.to_string());
        let a = random_leavitt(rng, 2, zi, 3, 3, 3);
        report.check(parse_leavitt(&a.to_string(), 2, zi).as_ref() == Ok(&a), || a.to_string());
        let t = random_tensor(rng, &g, &o2, zi, 2, 3, 3);
        report.check(parse_tensor(&t.to_string(), &g, &o2, zi).as_ref() == Ok(&t), || t.to_string());
        let p = sigma(&t);
        report.check(parse_product(&p.to_string(), &g, &o2, zi).as_ref() == Ok(&p), || p.to_string());
    }
    report
}

/// Every suite at `iters` cases each, with generators derived from `seed`.
pub fn run_all(seed: u64, iters: usize) -> Vec<SuiteReport> {
    let mut rng = rng(seed);
    let o2 = cuntz(2);
    let o3 = cuntz(3);
    let two = two_vertex_graph();
    vec![
        cuntz_relations(5),
        sigma_pi(&mut rng, &o2, &o3, iters),
        sigma_pi(&mut rng, &two, &o2, iters),
        disjointification(&mut rng, &two, iters, 20),
        complements(&mut rng, &o2, iters),
        complements(&mut rng, &two, iters),
        algebra_laws(&mut rng, &two, ScalarRing::GaussianIntegers, iters),
        leavitt_bridge(&mut rng, iters),
        universal_property(&mut rng, &o2, &two, iters),
        representation_axioms(&mut rng, &o2, &o3, iters, iters),
        grading(&mut rng, &two, &o2, iters),
        kindness(),
        projections(seed, iters as u64 * 10),
        diagonal_preservation(seed, iters),
        round_trips(&mut rng, iters),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_points_lie_in_their_cylinder() {
        let mut r = rng(1);
        let g = two_vertex_graph();
        for _ in 0..200 {
            let b = random_cylinder(&mut r, &g, 3);
            let x = random_point_in(&mut r, &g, &b);
            assert!(bisect::member(&g, &x, &b));
        }
    }

    #[test]
    fn boundary_points_without_return_path() {
        // from `s` the walk can never come back
        let g = Graph::parse("vertex s\nvertex t\nedge a s t\nedge b t t\nedge c t t\n").unwrap();
        let mut r = rng(5);
        for _ in 0..50 {
            let x = random_boundary_point_from(&mut r, &g, 0, 2, 3);
            assert_eq!(x.source(), 0);
        }
    }

    #[test]
    fn all_suites_pass_small() {
        for report in run_all(11, 8) {
            assert!(report.passed(), "{}: {:?}", report.name, report.failures);
        }
    }
}

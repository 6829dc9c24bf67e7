//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Arithmetic is exact throughout, so every comparison is equality with zero
//! tolerance. Membership, expansion and kindness are re-derived here from
//! the definitions and used as oracles for the library.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use steinberg_core::bisect::{self, classify_complement};
use steinberg_core::invariants::{self, VerdictReason};
use steinberg_core::leavitt::{Generator, LeavittElement};
use steinberg_core::scalars::{verify_kind_witness, KindWitness};
use steinberg_core::steinberg::{check_representation, disjointify, SemigroupBasis, WitnessFamily};
use steinberg_core::tensor::{self, pi, pi_of_terms, sigma, tensor_assignment};
use steinberg_core::verify::{self, Rng64};
use steinberg_core::{
    AlgebraElement, BasicBisection, Graph, GroupoidPoint, Path, ProductAlgebraElement, ProductBisection, Scalar,
    ScalarRing, TensorElement,
};

const Z: ScalarRing = ScalarRing::Integers;
const SEED: u64 = 20240917;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cuntz(n: usize) -> Arc<Graph> {
    Arc::new(Graph::cuntz(n).unwrap())
}

// ---- oracles ----

/// `(x, k, y) ∈ Z(α, β, F)` straight from the definition.
fn in_bisection(g: &Graph, pt: &GroupoidPoint, b: &BasicBisection) -> bool {
    let (a, be) = (b.alpha(), b.beta());
    pt.k == a.len() as i64 - be.len() as i64
        && pt.x.starts_with(a)
        && pt.y.starts_with(be)
        && pt.x.shift(g, a.len()) == pt.y.shift(g, be.len())
        && !b.excluded().contains(&pt.x.edge_at(a.len()))
}

fn raw_value(g: &Graph, terms: &[(Scalar, BasicBisection)], pt: &GroupoidPoint) -> Scalar {
    let mut total = Z.zero();
    for (r, b) in terms {
        if in_bisection(g, pt, b) {
            total = total.try_add(r).unwrap();
        }
    }
    total
}

type Cell = (Vec<u32>, Vec<u32>);

/// The cylinders `Z(ατ, βτ)` with `|ατ| = depth` making up `b`.
fn cells(g: &Graph, b: &BasicBisection, depth: usize) -> BTreeSet<Cell> {
    assert!(depth > b.alpha().len() || (depth == b.alpha().len() && b.excluded().is_empty()));
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(tau) = stack.pop() {
        if b.alpha().len() + tau.len() == depth {
            let mut a = b.alpha().edges().to_vec();
            let mut c = b.beta().edges().to_vec();
            a.extend(&tau);
            c.extend(&tau);
            out.insert((a, c));
            continue;
        }
        let v = tau.last().map_or(b.alpha().range(), |&e| g.range(e));
        for &e in g.out_edges(v) {
            if tau.is_empty() && b.excluded().contains(&e) {
                continue;
            }
            let mut t = tau.clone();
            t.push(e);
            stack.push(t);
        }
    }
    out
}

fn union_cells(g: &Graph, bs: &[BasicBisection], depth: usize) -> BTreeSet<Cell> {
    bs.iter().flat_map(|b| cells(g, b, depth)).collect()
}

fn deep_enough(bs: &[&BasicBisection]) -> usize {
    bs.iter().map(|b| b.alpha().len()).max().unwrap_or(0) + 1
}

fn pairwise_disjoint(g: &Graph, bs: &[BasicBisection], depth: usize) -> bool {
    let mut seen = BTreeSet::new();
    bs.iter().all(|b| cells(g, b, depth).into_iter().all(|c| seen.insert(c)))
}

fn path(g: &Graph, edges: &[u32], at: u32) -> Path {
    if edges.is_empty() {
        g.empty_path(at)
    } else {
        g.path(edges).unwrap()
    }
}

fn point_pairs(rng: &mut Rng64, g: &Graph, h: &Graph, terms: &[(Scalar, BasicBisection, BasicBisection)], n: usize) -> Vec<(GroupoidPoint, GroupoidPoint)> {
    (0..n)
        .map(|_| match terms.choose(rng) {
            Some((_, a, b)) if rng.gen_bool(0.7) => {
                let x = verify::probe_points(rng, g, std::slice::from_ref(a), 1).remove(0);
                let y = verify::probe_points(rng, h, std::slice::from_ref(b), 1).remove(0);
                (x, y)
            }
            _ => (verify::random_point(rng, g, 3), verify::random_point(rng, h, 3)),
        })
        .collect()
}

fn raw_tensor_value(g: &Graph, h: &Graph, terms: &[(Scalar, BasicBisection, BasicBisection)], x: &GroupoidPoint, y: &GroupoidPoint) -> Scalar {
    let mut total = Z.zero();
    for (r, a, b) in terms {
        if in_bisection(g, x, a) && in_bisection(h, y, b) {
            total = total.try_add(r).unwrap();
        }
    }
    total
}

fn random_raw_tensor(rng: &mut Rng64, g: &Graph, h: &Graph) -> Vec<(Scalar, BasicBisection, BasicBisection)> {
    let n = rng.gen_range(1..=3);
    (0..n)
        .map(|_| (verify::random_nonzero_scalar(rng, Z, 3), verify::random_bisection(rng, g, 3), verify::random_bisection(rng, h, 3)))
        .collect()
}

// ---- criteria ----

fn c1_cuntz_relations() -> Check {
    let mut checked = 0;
    for n in 2..=5 {
        let g = cuntz(n);
        let v = g.empty_path(0);
        let ind = |a: &Path, b: &Path| {
            AlgebraElement::indicator(g.clone(), Z, &BasicBisection::cylinder(a.clone(), b.clone()).unwrap(), Z.one()).unwrap()
        };
        let unit = ind(&v, &v);
        let e = |i: u32| g.path(&[i]).unwrap();
        let mut sum = AlgebraElement::zero(g.clone(), Z);
        for i in 0..n as u32 {
            sum = sum.try_add(&ind(&e(i), &v).convolve(&ind(&v, &e(i))).unwrap()).unwrap();
            for j in 0..n as u32 {
                let p = ind(&v, &e(i)).convolve(&ind(&e(j), &v)).unwrap();
                let expected = if i == j { unit.clone() } else { AlgebraElement::zero(g.clone(), Z) };
                ensure(p == expected, || format!("n={n}: s{i}* s{j} = {p}"))?;
                checked += 1;
            }
        }
        ensure(sum == unit, || format!("n={n}: sum = {sum}"))?;
        checked += 1;
    }
    Ok(format!("{checked} identities, n = 2..5"))
}

fn c2_round_trip() -> Check {
    let mut rng = verify::rng(SEED ^ 2);
    let pairs = [(cuntz(2), cuntz(3)), (verify::two_vertex_graph(), cuntz(2))];
    let mut points = 0;
    for (g, h) in &pairs {
        for i in 0..500 {
            let raw1 = random_raw_tensor(&mut rng, g, h);
            let raw2 = random_raw_tensor(&mut rng, g, h);
            let t1 = TensorElement::from_terms(g.clone(), h.clone(), Z, &raw1).unwrap();
            let t2 = TensorElement::from_terms(g.clone(), h.clone(), Z, &raw2).unwrap();
            let p = verify::random_product(&mut rng, g, h, Z, 3, 3, 3);
            let s1 = sigma(&t1);
            ensure(pi(&s1) == t1, || format!("case {i}: pi(sigma(t)) != t for {t1}"))?;
            ensure(sigma(&pi(&p)) == p, || format!("case {i}: sigma(pi(p)) != p for {p}"))?;
            let s2 = sigma(&t2);
            ensure(sigma(&t1.try_mul(&t2).unwrap()) == s1.convolve(&s2).unwrap(), || format!("case {i}: multiplicativity on {t1} ; {t2}"))?;
            ensure(sigma(&t1.star()) == s1.star(), || format!("case {i}: star on {t1}"))?;
            for (x, y) in point_pairs(&mut rng, g, h, &raw1, 4) {
                let want = raw_tensor_value(g, h, &raw1, &x, &y);
                ensure(s1.evaluate(&x, &y) == want && t1.evaluate(&x, &y) == want, || format!("case {i}: value of {t1} at a point pair"))?;
                points += 1;
            }
        }
    }
    Ok(format!("2 x 500 pairs, {points} pointwise checks"))
}

fn c3_disjointify() -> Check {
    let mut rng = verify::rng(SEED ^ 3);
    let graphs = [cuntz(2), verify::two_vertex_graph()];
    for i in 0..200 {
        let g = &graphs[i % 2];
        let terms = verify::random_terms(&mut rng, g, Z, 3, 5, 3);
        let out = disjointify(g, Z, &terms).unwrap();
        for (a, x) in out.iter().enumerate() {
            for y in &out[a + 1..] {
                ensure(bisect::intersect(g, &x.1, &y.1).is_empty(), || format!("case {i}: overlap {:?} {:?}", x.1, y.1))?;
            }
        }
        let sets: Vec<BasicBisection> = terms.iter().map(|(_, b)| b.clone()).collect();
        for pt in verify::probe_points(&mut rng, g, &sets, 100) {
            ensure(raw_value(g, &terms, &pt) == raw_value(g, &out, &pt), || format!("case {i}: values differ at {pt:?}"))?;
        }
    }
    Ok("200 term lists x 100 points".into())
}

fn c4_complements() -> Check {
    let mut rng = verify::rng(SEED ^ 4);
    let graphs = [cuntz(2), verify::two_vertex_graph(), cuntz(3)];
    let mut applied = 0;
    let mut attempts = 0;
    let check_partition = |g: &Graph, a: &BasicBisection, b: &BasicBisection, formula: &[BasicBisection]| -> Result<(), String> {
        let mut parts = formula.to_vec();
        parts.extend(bisect::intersect(g, a, b));
        let depth = deep_enough(&parts.iter().chain([a, b]).collect::<Vec<_>>());
        ensure(pairwise_disjoint(g, &parts, depth), || format!("pieces overlap for {a:?} \\ {b:?}"))?;
        ensure(union_cells(g, &parts, depth) == cells(g, a, depth), || format!("no partition of {a:?} by {b:?}"))
    };
    while applied < 200 {
        attempts += 1;
        let g = &graphs[attempts % 3];
        let a = verify::random_bisection(&mut rng, g, 2);
        let len = rng.gen_range(0..=3);
        let kappa = verify::random_walk(&mut rng, g, a.alpha().range(), len);
        let base = BasicBisection::cylinder(a.alpha().concat(&kappa).unwrap(), a.beta().concat(&kappa).unwrap()).unwrap();
        let excluded = g.out_edges(base.alpha().range()).iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
        let b = BasicBisection::new(g, base.alpha().clone(), base.beta().clone(), excluded).unwrap();
        let case = classify_complement(g, &a, &b);
        if !case.formula_applies() {
            continue;
        }
        applied += 1;
        let formula = bisect::relative_complement(g, &a, &b);
        let depth = deep_enough(&formula.iter().chain([&a, &b]).collect::<Vec<_>>());
        let want: BTreeSet<Cell> = cells(g, &a, depth).difference(&cells(g, &b, depth)).cloned().collect();
        ensure(union_cells(g, &formula, depth) == want, || format!("formula disagrees with expansion for {a:?} \\ {b:?}"))?;
        let library_oracle = bisect::relative_complement_by_expansion(g, &a, &b);
        ensure(bisect::same_union(g, &formula, &library_oracle), || format!("library oracle mismatch for {a:?} \\ {b:?}"))?;
        check_partition(g, &a, &b, &formula)?;
    }
    for i in 0..200 {
        let g = &graphs[i % 3];
        let a = verify::random_bisection(&mut rng, g, 3);
        let b = verify::random_bisection(&mut rng, g, 3);
        check_partition(g, &a, &b, &bisect::relative_complement(g, &a, &b))?;
    }
    Ok(format!("200 formula cases ({attempts} draws), 200 unrestricted partitions"))
}

fn c5_projections() -> Check {
    let g = cuntz(2);
    let start = Instant::now();
    let search = invariants::search_projections(&g, Z, 1, 1);
    let exhaustive = start.elapsed();
    ensure(search.candidates == 19683, || format!("{} candidates", search.candidates))?;
    let found: BTreeSet<String> = search.projections.iter().map(|(p, _)| p.to_string()).collect();
    let expected: BTreeSet<String> = ["0", "1*Z(@,@)", "1*Z(1,1)", "1*Z(2,2)"].iter().map(|s| s.to_string()).collect();
    ensure(found == expected, || format!("projections {found:?}"))?;
    ensure(search.kind_assertion == Some(true), || "non-diagonal projection in the exhaustive search".into())?;
    // direct re-check of each reported projection
    for (p, d) in &search.projections {
        ensure(p.convolve(p).unwrap() == *p && p.star() == *p && *d == p.is_diagonal(), || format!("{p} misreported"))?;
    }
    let random = invariants::random_projection_search(&g, Z, 2, 2, 100_000, SEED);
    ensure(random.candidates == 100_000, || "sample count".into())?;
    ensure(random.non_diagonal().next().is_none(), || format!("non-diagonal: {:?}", random.non_diagonal().next()))?;
    ensure(exhaustive < Duration::from_secs(60), || format!("exhaustive search took {exhaustive:?}"))?;
    Ok(format!(
        "19683 exhaustive ({} projections, {:.1}s), 1e5 random ({} distinct projections, all diagonal)",
        search.projections.len(),
        exhaustive.as_secs_f64(),
        random.projections.len()
    ))
}

fn c6_decide() -> Check {
    let v = invariants::decide_tensor_tuples(&[2, 3], &[2, 2]).unwrap();
    ensure(!v.same && v.reason == VerdictReason::SortedTuplesDiffer, || format!("{v:?}"))?;
    let bf = |l: &[invariants::FiniteCyclicGroup]| l.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
    ensure(bf(&v.left_bf) == "Z/1,Z/2" && bf(&v.right_bf) == "Z/1,Z/1", || format!("{v:?}"))?;
    let v = invariants::decide_tensor_tuples(&[2, 2, 3], &[3, 2, 2]).unwrap();
    ensure(v.same && v.reason == VerdictReason::Equal, || format!("{v:?}"))?;
    let v = invariants::decide_tensor_tuples(&[2], &[2, 3]).unwrap();
    ensure(
        !v.same && v.reason == VerdictReason::LengthMismatch && (v.left_rank, v.right_rank) == (1, 2),
        || format!("{v:?}"),
    )?;
    Ok("3 verdicts with evidence".into())
}

/// Product of monomials by concatenating generator words and rewriting.
fn word_of(mu: &[u32], nu: &[u32]) -> Vec<Generator> {
    mu.iter().map(|&i| Generator::Edge(i)).chain(nu.iter().rev().map(|&i| Generator::Adjoint(i))).collect()
}

fn product_by_words(a: &LeavittElement, b: &LeavittElement) -> LeavittElement {
    let (n, ring) = (a.n(), a.ring());
    let mut acc = LeavittElement::zero(n, ring);
    for ((m1, n1), r) in a.terms() {
        for ((m2, n2), s) in b.terms() {
            let mut w = word_of(m1, n1);
            w.extend(word_of(m2, n2));
            let term = LeavittElement::reduce_word(n, ring, &w).scale(&r.try_mul(s).unwrap());
            acc = acc.try_add(&term).unwrap();
        }
    }
    acc
}

fn c7_leavitt_bridge() -> Check {
    let mut rng = verify::rng(SEED ^ 7);
    let graphs = [cuntz(2), cuntz(3)];
    let mut images: Vec<(LeavittElement, AlgebraElement)> = Vec::new();
    for i in 0..300 {
        let n = 2 + i % 2;
        let g = &graphs[i % 2];
        let to = |x: &LeavittElement| x.to_steinberg_on(g).unwrap();
        let a = verify::random_leavitt(&mut rng, n, Z, 3, 4, 3);
        let b = verify::random_leavitt(&mut rng, n, Z, 3, 4, 3);
        let ab = a.try_mul(&b).unwrap();
        ensure(ab == product_by_words(&a, &b), || format!("case {i}: prefix product disagrees with rewriting"))?;
        let (fa, fb) = (to(&a), to(&b));
        ensure(to(&ab) == fa.convolve(&fb).unwrap(), || format!("case {i}: not multiplicative on {a} ; {b}"))?;
        ensure(to(&a.try_add(&b).unwrap()) == fa.try_add(&fb).unwrap(), || format!("case {i}: not additive"))?;
        ensure(to(&a.star()) == fa.star(), || format!("case {i}: not star-preserving on {a}"))?;
        // term-by-term correspondence of normal forms
        ensure(fa.len() == a.terms().len(), || format!("case {i}: normal forms differ in size for {a}"))?;
        ensure(LeavittElement::from_steinberg(&fa).unwrap() == a, || format!("case {i}: pullback of {fa}"))?;
        let d = verify::random_diagonal_leavitt(&mut rng, n, Z, 3, 4, 3);
        ensure(d.is_diagonal() && to(&d).is_diagonal(), || format!("case {i}: {d} not mapped into the diagonal"))?;
        ensure(a.is_diagonal() == fa.is_diagonal(), || format!("case {i}: diagonal flag of {a}"))?;
        images.push((a, fa));
    }
    for (i, (a, fa)) in images.iter().enumerate() {
        for (b, fb) in &images[i + 1..] {
            if a.n() == b.n() && a != b {
                ensure(fa != fb, || format!("{a} and {b} share an image"))?;
            }
        }
    }
    Ok("300 elements over L_2 and L_3, injectivity on all pairs".into())
}

/// Splits one factor of a term into its children, test-side.
fn split_term(g: &Graph, h: &Graph, r: &Scalar, k: &ProductBisection, left: bool) -> Vec<(Scalar, ProductBisection)> {
    let (graph, b) = if left { (g, &k.left) } else { (h, &k.right) };
    let v = b.alpha().range();
    graph
        .out_edges(v)
        .iter()
        .map(|&e| {
            let mut a = b.alpha().edges().to_vec();
            let mut c = b.beta().edges().to_vec();
            a.push(e);
            c.push(e);
            let s = b.alpha().source();
            let t = b.beta().source();
            let child = BasicBisection::cylinder(path(graph, &a, s), path(graph, &c, t)).unwrap();
            let pb = if left { ProductBisection::new(child, k.right.clone()) } else { ProductBisection::new(k.left.clone(), child) };
            (r.clone(), pb)
        })
        .collect()
}

fn c8_universal_property() -> Check {
    let mut rng = verify::rng(SEED ^ 8);
    let pairs = [(cuntz(2), cuntz(3)), (verify::two_vertex_graph(), cuntz(2))];
    for i in 0..200 {
        let (g, h) = &pairs[i % 2];
        let first = verify::random_product_terms(&mut rng, g, h, Z, 2, 3, 3);
        let mut second: Vec<(Scalar, ProductBisection)> = Vec::new();
        for (j, (r, k)) in first.iter().enumerate() {
            match (j, rng.gen_range(0..3)) {
                (0, _) | (_, 0) => second.extend(split_term(g, h, r, k, rng.gen_bool(0.5))),
                (_, 1) => {
                    let extra = ProductBisection::new(verify::random_cylinder(&mut rng, g, 2), verify::random_cylinder(&mut rng, h, 2));
                    second.push((r.clone(), k.clone()));
                    second.push((r.clone(), extra.clone()));
                    second.push((r.neg(), extra));
                }
                _ => second.push((r.clone(), k.clone())),
            }
        }
        second.shuffle(&mut rng);
        ensure(first != second, || "expressions coincide".into())?;
        let a = pi_of_terms(g, h, Z, first.iter().map(|(r, k)| (r, k))).unwrap();
        let b = pi_of_terms(g, h, Z, second.iter().map(|(r, k)| (r, k))).unwrap();
        ensure(a == b, || format!("case {i}: {a} vs {b}"))?;
        let p = ProductAlgebraElement::from_terms(g.clone(), h.clone(), Z, &first).unwrap();
        ensure(pi(&p) == a, || format!("case {i}: normal form image differs"))?;
    }
    Ok("200 expression pairs".into())
}

fn c9_representation() -> Check {
    let mut rng = verify::rng(SEED ^ 9);
    let (g, h) = (cuntz(2), verify::two_vertex_graph());
    let rep = tensor_assignment(g.clone(), h.clone(), Z);
    ensure(rep.image_or_empty(None).unwrap().is_zero(), || "R1: t of the empty set is not zero".into())?;
    for i in 0..200 {
        let k = ProductBisection::new(verify::random_cylinder(&mut rng, &g, 2), verify::random_cylinder(&mut rng, &h, 2));
        let l = ProductBisection::new(verify::random_cylinder(&mut rng, &g, 2), verify::random_cylinder(&mut rng, &h, 2));
        let lhs = rep.image(&k).unwrap().try_mul(&rep.image(&l).unwrap()).unwrap();
        let rhs = rep.image_or_empty(k.basis_product(&l).as_ref()).unwrap();
        ensure(lhs == rhs, || format!("R2 case {i}: {k:?} ; {l:?}"))?;
    }
    for i in 0..100 {
        let a = verify::random_cylinder(&mut rng, &g, 2);
        let b = verify::random_cylinder(&mut rng, &h, 2);
        let family = |rng: &mut Rng64, graph: &Graph, top: &BasicBisection| {
            let mut p = vec![top.clone()];
            for _ in 0..rng.gen_range(1..4) {
                p.push(verify::random_subcylinder(rng, graph, top, 2));
            }
            p
        };
        let p = family(&mut rng, &g, &a);
        let q = family(&mut rng, &h, &b);
        let (xs, ys) = tensor::refine_families(&g, &p, &h, &q);
        for (graph, fam, refined) in [(&*g, &p, &xs), (&*h, &q, &ys)] {
            let depth = deep_enough(&fam.iter().chain(refined.iter()).collect::<Vec<_>>());
            ensure(pairwise_disjoint(graph, refined, depth), || format!("case {i}: refinement overlaps"))?;
            ensure(union_cells(graph, refined, depth) == union_cells(graph, fam, depth), || format!("case {i}: union changed"))?;
            for member in fam.iter() {
                let inside: Vec<BasicBisection> =
                    refined.iter().filter(|x| cells(graph, x, depth).is_subset(&cells(graph, member, depth))).cloned().collect();
                ensure(union_cells(graph, &inside, depth) == cells(graph, member, depth), || format!("case {i}: member not a union of atoms"))?;
            }
        }
        let members: Vec<ProductBisection> =
            xs.iter().flat_map(|x| ys.iter().map(move |y| ProductBisection::new(x.clone(), y.clone()))).collect();
        let witness = WitnessFamily { members, union: ProductBisection::new(a, b) };
        let report = check_representation(&rep, std::slice::from_ref(&witness));
        ensure(report.passed(), || format!("R3 case {i}: {:?}", report.failure))?;
    }
    Ok("R1, R2 on 200 pairs, R3 on 100 refined families".into())
}

fn c10_grading() -> Check {
    let mut rng = verify::rng(SEED ^ 10);
    let (g, h) = (verify::two_vertex_graph(), cuntz(2));
    let homogeneous = |rng: &mut Rng64| -> (ProductAlgebraElement, (i64, i64)) {
        loop {
            let first = ProductBisection::new(verify::random_cylinder(rng, &g, 2), verify::random_cylinder(rng, &h, 2));
            let d = first.degree();
            let mut terms = vec![(verify::random_nonzero_scalar(rng, Z, 3), first)];
            for _ in 0..rng.gen_range(0..3) {
                let (Some(a), Some(b)) =
                    (verify::random_cylinder_of_degree(rng, &g, 3, d.0), verify::random_cylinder_of_degree(rng, &h, 3, d.1))
                else {
                    continue;
                };
                terms.push((verify::random_nonzero_scalar(rng, Z, 3), ProductBisection::new(a, b)));
            }
            let p = ProductAlgebraElement::from_terms(g.clone(), h.clone(), Z, &terms).unwrap();
            if !p.is_zero() {
                return (p, d);
            }
        }
    };
    let mut nonzero = 0;
    let mut draws = 0;
    while nonzero < 200 {
        draws += 1;
        let (f, df) = homogeneous(&mut rng);
        let (e, de) = homogeneous(&mut rng);
        // bias towards composable pairs: conjugate e into f's range half the time
        let e = if rng.gen_bool(0.5) { f.star().convolve(&e).unwrap() } else { e };
        let de = if e.is_zero() { de } else { e.terms().keys().next().unwrap().degree() };
        let fe = f.convolve(&e).unwrap();
        if fe.is_zero() {
            continue;
        }
        nonzero += 1;
        let pair: Vec<(i64, i64)> = fe.terms().keys().map(|k| k.degree()).collect::<BTreeSet<_>>().into_iter().collect();
        ensure(pair == [(df.0 + de.0, df.1 + de.1)], || format!("pair degree of {f} * {e}: {pair:?}"))?;
        let split = tensor::product_degree(&fe);
        ensure(split.keys().copied().collect::<Vec<_>>() == pair, || "product_degree keys".into())?;
        let sum = tensor::quotient_degree(&fe);
        ensure(sum.keys().copied().collect::<Vec<_>>() == [df.0 + df.1 + de.0 + de.1], || format!("quotient degree of {f} * {e}"))?;
    }
    Ok(format!("200 nonzero homogeneous products ({draws} draws)"))
}

fn c11_kindness() -> Check {
    let mut cases = 0;
    for n in 1..=3u32 {
        for mut index in 0..7u32.pow(n + 1) {
            let lambdas: Vec<i64> = (0..=n)
                .map(|_| {
                    let v = (index % 7) as i64 - 3;
                    index /= 7;
                    v
                })
                .collect();
            // over ℤ the equation reads λ0 = λ0² + Σ λi²
            let holds = lambdas[0] == lambdas.iter().map(|l| l * l).sum::<i64>();
            let violated = holds && lambdas[1..].iter().any(|&l| l != 0);
            let scalars: Vec<Scalar> = lambdas.iter().map(|&l| Z.from_int(l)).collect();
            let verdict = verify_kind_witness(Z, &scalars).unwrap();
            let expected = match (holds, violated) {
                (false, _) => KindWitness::EquationFails,
                (true, true) => KindWitness::KindnessViolated,
                (true, false) => KindWitness::ConsistentWithKind,
            };
            ensure(verdict == expected, || format!("{lambdas:?}: {verdict:?}"))?;
            ensure(!violated, || format!("integer violation {lambdas:?}"))?;
            cases += 1;
        }
    }
    let half = Scalar::parse("1/2", ScalarRing::DyadicRationals).unwrap();
    let verdict = verify_kind_witness(ScalarRing::DyadicRationals, &[half.clone(), half]).unwrap();
    ensure(verdict == KindWitness::KindnessViolated, || format!("dyadic witness: {verdict:?}"))?;
    Ok(format!("{cases} integer tuples, dyadic witness violates kindness"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("cuntz relations", c1_cuntz_relations, Duration::from_secs(1)),
        ("sigma/pi round trip", c2_round_trip, Duration::from_secs(30)),
        ("disjointification", c3_disjointify, Duration::from_secs(30)),
        ("complement formulas", c4_complements, Duration::MAX),
        ("projections are diagonal", c5_projections, Duration::MAX),
        ("tuple decision", c6_decide, Duration::from_secs(1)),
        ("leavitt bridge", c7_leavitt_bridge, Duration::MAX),
        ("universal property", c8_universal_property, Duration::MAX),
        ("representation axioms", c9_representation, Duration::MAX),
        ("grading", c10_grading, Duration::MAX),
        ("kindness", c11_kindness, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > *budget {
                Err(format!("{detail}; over the {budget:?} budget"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{:.2}s]", i + 1, elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{:.2}s]", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

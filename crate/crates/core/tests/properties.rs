use std::sync::Arc;

use proptest::prelude::*;
use steinberg_core::bisect::{self, cylinder_product};
use steinberg_core::invariants::{bowen_franks, decide_tensor_tuples};
use steinberg_core::syntax::{parse_element, parse_leavitt, parse_product, parse_tensor};
use steinberg_core::tensor::{pi, sigma};
use steinberg_core::verify::{self, Rng64};
use steinberg_core::{AlgebraElement, Graph, LeavittElement, ScalarRing};

const Z: ScalarRing = ScalarRing::Integers;

fn graphs() -> Vec<Arc<Graph>> {
    vec![Arc::new(Graph::cuntz(2).unwrap()), Arc::new(Graph::cuntz(3).unwrap()), verify::two_vertex_graph()]
}

fn ring_strategy() -> impl Strategy<Value = ScalarRing> {
    prop_oneof![
        Just(ScalarRing::Integers),
        Just(ScalarRing::GaussianIntegers),
        Just(ScalarRing::Rationals),
        Just(ScalarRing::DyadicRationals),
    ]
}

fn element(rng: &mut Rng64, g: &Arc<Graph>, ring: ScalarRing) -> AlgebraElement {
    verify::random_element(rng, g, ring, 2, 3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cylinder_product_is_associative(seed in any::<u64>(), which in 0usize..3) {
        let g = &graphs()[which];
        let mut rng = verify::rng(seed);
        let [a, b, c] = [0; 3].map(|_| verify::random_cylinder(&mut rng, g, 3));
        let left = cylinder_product(&a, &b).and_then(|ab| cylinder_product(&ab, &c));
        let right = cylinder_product(&b, &c).and_then(|bc| cylinder_product(&a, &bc));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cylinder_inverse_laws(seed in any::<u64>(), which in 0usize..3) {
        let g = &graphs()[which];
        let mut rng = verify::rng(seed);
        let a = verify::random_cylinder(&mut rng, g, 3);
        let b = verify::random_cylinder(&mut rng, g, 3);
        let aia = cylinder_product(&a, &a.inverse()).and_then(|x| cylinder_product(&x, &a));
        prop_assert_eq!(aia, Some(a.clone()));
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        let ab_inv = cylinder_product(&a, &b).map(|x| x.inverse());
        let b_inv_a_inv = cylinder_product(&b.inverse(), &a.inverse());
        prop_assert_eq!(ab_inv, b_inv_a_inv);
    }

    #[test]
    fn bisection_product_matches_membership(seed in any::<u64>(), which in 0usize..3) {
        let g = &graphs()[which];
        let mut rng = verify::rng(seed);
        let a = verify::random_bisection(&mut rng, g, 2);
        let b = verify::random_bisection(&mut rng, g, 2);
        let inter = bisect::intersect(g, &a, &b);
        for pt in verify::probe_points(&mut rng, g, &[a.clone(), b.clone()], 20) {
            let both = bisect::member(g, &pt, &a) && bisect::member(g, &pt, &b);
            prop_assert_eq!(both, inter.iter().any(|c| bisect::member(g, &pt, c)));
        }
    }

    #[test]
    fn convolution_is_associative_and_distributive(seed in any::<u64>(), which in 0usize..3, ring in ring_strategy()) {
        let g = &graphs()[which];
        let mut rng = verify::rng(seed);
        let [f, h, k] = [0; 3].map(|_| element(&mut rng, g, ring));
        let fh = f.convolve(&h).unwrap();
        prop_assert_eq!(fh.convolve(&k).unwrap(), f.convolve(&h.convolve(&k).unwrap()).unwrap());
        prop_assert_eq!(
            f.convolve(&h.try_add(&k).unwrap()).unwrap(),
            fh.try_add(&f.convolve(&k).unwrap()).unwrap()
        );
        prop_assert_eq!(fh.star(), h.star().convolve(&f.star()).unwrap());
        prop_assert_eq!(f.star().star(), f.clone());
        prop_assert!(f.try_sub(&f).unwrap().is_zero());
        prop_assert_eq!(AlgebraElement::one(g.clone(), ring).convolve(&f).unwrap(), f);
    }

    #[test]
    fn normal_form_ignores_expression(seed in any::<u64>(), which in 0usize..3) {
        let g = &graphs()[which];
        let mut rng = verify::rng(seed);
        let terms = verify::random_terms(&mut rng, g, Z, 2, 4, 3);
        let f = AlgebraElement::from_terms(g.clone(), Z, &terms).unwrap();
        // split every term one level down
        let mut split = Vec::new();
        for (r, b) in &terms {
            for c in bisect::expand(g, b, b.alpha().len() + 1).unwrap() {
                split.push((r.clone(), c));
            }
        }
        split.reverse();
        prop_assert_eq!(AlgebraElement::from_terms(g.clone(), Z, &split).unwrap(), f.clone());
        let disjoint = steinberg_core::steinberg::disjointify(g, Z, &terms).unwrap();
        prop_assert_eq!(AlgebraElement::from_terms(g.clone(), Z, &disjoint).unwrap(), f.clone());
        prop_assert!(f.agrees_by_expansion(&AlgebraElement::from_terms(g.clone(), Z, &split).unwrap()));
    }

    #[test]
    fn shift_is_additive(seed in any::<u64>(), which in 0usize..3, a in 0usize..6, b in 0usize..6) {
        let g = &graphs()[which];
        let mut rng = verify::rng(seed);
        let x = verify::random_point(&mut rng, g, 3).x;
        prop_assert_eq!(x.shift(g, a).shift(g, b), x.shift(g, a + b));
        prop_assert_eq!(x.shift(g, a).edge_at(b), x.edge_at(a + b));
    }

    #[test]
    fn leavitt_star_is_an_anti_involution(seed in any::<u64>(), n in 2usize..5, ring in ring_strategy()) {
        let mut rng = verify::rng(seed);
        let a = verify::random_leavitt(&mut rng, n, ring, 3, 4, 3);
        let b = verify::random_leavitt(&mut rng, n, ring, 3, 4, 3);
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(a.try_mul(&b).unwrap().star(), b.star().try_mul(&a.star()).unwrap());
        prop_assert_eq!(LeavittElement::one(n, ring).try_mul(&a).unwrap(), a);
    }

    #[test]
    fn leavitt_words_reduce_consistently(seed in any::<u64>(), n in 2usize..4, len in 0usize..8) {
        let mut rng = verify::rng(seed);
        let w = verify::random_generator_word(&mut rng, n, len);
        let (u, v) = w.split_at(w.len() / 2);
        let whole = LeavittElement::reduce_word(n, Z, &w);
        let parts = LeavittElement::reduce_word(n, Z, u).try_mul(&LeavittElement::reduce_word(n, Z, v)).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn printing_then_parsing_round_trips(seed in any::<u64>(), which in 0usize..3, ring in ring_strategy()) {
        let gs = graphs();
        let g = &gs[which];
        let h = &gs[(which + 1) % 3];
        let mut rng = verify::rng(seed);
        let f = element(&mut rng, g, ring);
        prop_assert_eq!(parse_element(&f.to_string(), g, ring).unwrap(), f);
        let t = verify::random_tensor(&mut rng, g, h, ring, 2, 3, 3);
        prop_assert_eq!(parse_tensor(&t.to_string(), g, h, ring).unwrap(), t.clone());
        let p = sigma(&t);
        prop_assert_eq!(parse_product(&p.to_string(), g, h, ring).unwrap(), p.clone());
        prop_assert_eq!(pi(&p), t);
        let l = verify::random_leavitt(&mut rng, 2 + which, ring, 3, 3, 3);
        prop_assert_eq!(parse_leavitt(&l.to_string(), 2 + which, ring).unwrap(), l);
    }

    #[test]
    fn decision_is_symmetric_and_order_free(mut ns in prop::collection::vec(2u64..12, 1..5), ms in prop::collection::vec(2u64..12, 1..5)) {
        let forward = decide_tensor_tuples(&ns, &ms).unwrap();
        let backward = decide_tensor_tuples(&ms, &ns).unwrap();
        prop_assert_eq!(forward.same, backward.same);
        prop_assert_eq!(forward.reason, backward.reason);
        let same = decide_tensor_tuples(&ns, &ns).unwrap();
        prop_assert!(same.same);
        let original = ns.clone();
        ns.reverse();
        prop_assert!(decide_tensor_tuples(&original, &ns).unwrap().same);
    }

    #[test]
    fn bowen_franks_order(n in 2u64..=64) {
        prop_assert_eq!(bowen_franks(n).unwrap().order, n - 1);
    }
}

#[test]
fn bowen_franks_rejects_small_n() {
    assert!(bowen_franks(0).is_err());
    assert!(bowen_franks(1).is_err());
}

//! The Leavitt algebra `L_n` over a coefficient ring, as monomials
//! `e_μ e_ν^*` with the relations `e_i^* e_j = δ_ij` and `Σ_i e_i e_i^* = 1`.
//!
//! This module keeps its own word arithmetic and normal form (uniform
//! per-degree expansion followed by merging `Σ_i e_{μi} e_{νi}^*` back into
//! `e_μ e_ν^*`), independent of the bisection code, so that the
//! isomorphism onto the Steinberg algebra of the Cuntz groupoid can be
//! checked rather than assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bisect::BasicBisection;
use crate::graph::Graph;
use crate::scalars::{Scalar, ScalarRing};
use crate::steinberg::{AlgebraElement, AlgebraValue, SteinbergError};

/// A generator `e_i` or `e_i^*`, with letters numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Edge(u32),
    Adjoint(u32),
}

pub type Word = Vec<Generator>;

/// `(μ, ν)` standing for `e_μ e_ν^*`.
pub type Monomial = (Vec<u32>, Vec<u32>);

#[derive(Clone, PartialEq, Eq)]
pub struct LeavittElement {
    n: usize,
    ring: ScalarRing,
    terms: BTreeMap<Monomial, Scalar>,
}

fn monomial_degree(m: &Monomial) -> i64 {
    m.0.len() as i64 - m.1.len() as i64
}

fn normalize(n: usize, pairs: impl IntoIterator<Item = (Scalar, Monomial)>) -> BTreeMap<Monomial, Scalar> {
    let mut by_degree: BTreeMap<i64, Vec<(Scalar, Monomial)>> = BTreeMap::new();
    for (r, m) in pairs {
        if !r.is_zero() {
            by_degree.entry(monomial_degree(&m)).or_default().push((r, m));
        }
    }
    let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (_, list) in by_degree {
        let depth = list.iter().map(|(_, m)| m.0.len()).max().unwrap_or(0);
        for (r, (mu, nu)) in list {
            for tail in all_words(n, depth - mu.len()) {
                let key = ([mu.as_slice(), &tail].concat(), [nu.as_slice(), &tail].concat());
                match terms.get_mut(&key) {
                    Some(c) => *c = c.try_add(&r).expect("single ring"),
                    None => {
                        terms.insert(key, r.clone());
                    }
                }
            }
        }
    }
    terms.retain(|_, r| !r.is_zero());
    // Σ_i e_{μi} e_{νi}^* = e_μ e_ν^*
    loop {
        let mut families: BTreeMap<Monomial, Vec<Monomial>> = BTreeMap::new();
        for (mu, nu) in terms.keys() {
            if let (Some(a), Some(b)) = (mu.last(), nu.last()) {
                if a == b {
                    let parent = (mu[..mu.len() - 1].to_vec(), nu[..nu.len() - 1].to_vec());
                    families.entry(parent).or_default().push((mu.clone(), nu.clone()));
                }
            }
        }
        let mut changed = false;
        for (parent, kids) in families {
            if kids.len() != n {
                continue;
            }
            let c = terms[&kids[0]].clone();
            if kids.iter().any(|k| terms[k] != c) {
                continue;
            }
            for k in &kids {
                terms.remove(k);
            }
            terms.insert(parent, c);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    terms
}

fn all_words(n: usize, len: usize) -> Vec<Vec<u32>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                (1..=n as u32).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    words
}

/// `(e_μ e_ν^*)(e_γ e_δ^*)`, or `None` for zero.
fn monomial_product(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    let (mu, nu) = a;
    let (gamma, delta) = b;
    if let Some(tau) = gamma.strip_prefix(nu.as_slice()) {
        Some(([mu.as_slice(), tau].concat(), delta.clone()))
    } else {
        let tau = nu.strip_prefix(gamma.as_slice())?;
        Some((mu.clone(), [delta.as_slice(), tau].concat()))
    }
}

impl LeavittElement {
    pub fn zero(n: usize, ring: ScalarRing) -> Self {
        LeavittElement { n, ring, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, ring: ScalarRing) -> Self {
        Self::monomial(n, ring, Vec::new(), Vec::new())
    }

    pub fn monomial(n: usize, ring: ScalarRing, mu: Vec<u32>, nu: Vec<u32>) -> Self {
        LeavittElement { n, ring, terms: BTreeMap::from([((mu, nu), ring.one())]) }
    }

    /// `e_i`.
    pub fn generator(n: usize, ring: ScalarRing, i: u32) -> Self {
        Self::monomial(n, ring, vec![i], Vec::new())
    }

    /// `e_i^*`.
    pub fn adjoint(n: usize, ring: ScalarRing, i: u32) -> Self {
        Self::monomial(n, ring, Vec::new(), vec![i])
    }

    pub fn from_terms(n: usize, ring: ScalarRing, pairs: Vec<(Scalar, Monomial)>) -> Result<Self, SteinbergError> {
        for (r, (mu, nu)) in &pairs {
            if r.ring() != ring {
                return Err(SteinbergError::RingMismatch(ring, r.ring()));
            }
            debug_assert!(mu.iter().chain(nu).all(|&i| i >= 1 && i as usize <= n));
        }
        Ok(LeavittElement { n, ring, terms: normalize(n, pairs) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Rewrites `e_i^* e_j ↦ δ_ij` until the word reads `e_μ e_ν^*`.
    pub fn reduce_word(n: usize, ring: ScalarRing, word: &[Generator]) -> Self {
        let mut stack: Vec<Generator> = Vec::with_capacity(word.len());
        for &g in word {
            if let (Some(&Generator::Adjoint(i)), Generator::Edge(j)) = (stack.last(), g) {
                if i != j {
                    return Self::zero(n, ring);
                }
                stack.pop();
            } else {
                stack.push(g);
            }
        }
        let split = stack.iter().position(|g| matches!(g, Generator::Adjoint(_))).unwrap_or(stack.len());
        let mu = stack[..split]
            .iter()
            .map(|g| match g {
                Generator::Edge(i) => *i,
                Generator::Adjoint(_) => unreachable!("no e* e pair survives"),
            })
            .collect();
        let nu = stack[split..]
            .iter()
            .rev()
            .map(|g| match g {
                Generator::Adjoint(i) => *i,
                Generator::Edge(_) => unreachable!("no e* e pair survives"),
            })
            .collect();
        Self::monomial(n, ring, mu, nu)
    }

    fn compatible(&self, other: &Self) -> Result<(), SteinbergError> {
        if self.n != other.n {
            return Err(SteinbergError::GraphMismatch);
        }
        if self.ring != other.ring {
            return Err(SteinbergError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.compatible(other)?;
        let pairs = self.terms.iter().chain(&other.terms).map(|(m, r)| (r.clone(), m.clone()));
        Ok(LeavittElement { n: self.n, ring: self.ring, terms: normalize(self.n, pairs) })
    }

    pub fn scale(&self, r: &Scalar) -> Self {
        let pairs = self.terms.iter().map(|(m, c)| (c.try_mul(r).expect("single ring"), m.clone()));
        LeavittElement { n: self.n, ring: self.ring, terms: normalize(self.n, pairs) }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SteinbergError> {
        self.compatible(other)?;
        let mut pairs = Vec::new();
        for (a, ra) in &self.terms {
            for (b, rb) in &other.terms {
                if let Some(m) = monomial_product(a, b) {
                    pairs.push((ra.try_mul(rb)?, m));
                }
            }
        }
        Ok(LeavittElement { n: self.n, ring: self.ring, terms: normalize(self.n, pairs) })
    }

    /// `r e_μ e_ν^* ↦ conj(r) e_ν e_μ^*`.
    pub fn star(&self) -> Self {
        let pairs = self.terms.iter().map(|((mu, nu), r)| (r.conj(), (nu.clone(), mu.clone())));
        LeavittElement { n: self.n, ring: self.ring, terms: normalize(self.n, pairs) }
    }

    /// Whether every term has the form `e_μ e_μ^*`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(mu, nu)| mu == nu)
    }

    /// `e_μ e_ν^* ↦ 1_{Z(μ,ν)}` on the given Cuntz graph.
    pub fn to_steinberg_on(&self, graph: &Arc<Graph>) -> Result<AlgebraElement, SteinbergError> {
        let path = |w: &[u32]| -> Result<_, SteinbergError> {
            if w.is_empty() {
                return Ok(graph.empty_path(0));
            }
            let names: Vec<String> = w.iter().map(u32::to_string).collect();
            Ok(graph.path_by_names(&names).map_err(crate::bisect::BisectError::from)?)
        };
        let pairs = self
            .terms
            .iter()
            .map(|((mu, nu), r)| Ok((r.clone(), BasicBisection::cylinder(path(mu)?, path(nu)?)?)))
            .collect::<Result<Vec<_>, SteinbergError>>()?;
        AlgebraElement::from_terms(graph.clone(), self.ring, &pairs)
    }

    pub fn to_steinberg(&self) -> AlgebraElement {
        let graph = Arc::new(Graph::cuntz(self.n).expect("n >= 2"));
        self.to_steinberg_on(&graph).expect("letters are edges of the Cuntz graph")
    }

    /// Term-by-term pullback `1_{Z(μ,ν)} ↦ e_μ e_ν^*` from a one-vertex graph
    /// whose edges are named `1..=n`.
    pub fn from_steinberg(f: &AlgebraElement) -> Result<Self, SteinbergError> {
        let g = f.graph();
        let n = g.edge_count();
        if !g.is_single_vertex() || n < 2 {
            return Err(SteinbergError::GraphMismatch);
        }
        let letters = |p: &crate::graph::Path| -> Result<Vec<u32>, SteinbergError> {
            p.edges()
                .iter()
                .map(|&e| g.edge_name(e).parse::<u32>().map_err(|_| SteinbergError::GraphMismatch))
                .collect()
        };
        let mut terms = BTreeMap::new();
        for (b, r) in f.terms() {
            terms.insert((letters(b.alpha())?, letters(b.beta())?), r.clone());
        }
        Ok(LeavittElement { n, ring: f.ring(), terms })
    }
}

fn fmt_monomial(mu: &[u32], nu: &[u32]) -> String {
    let gens: Vec<String> =
        mu.iter().map(|i| format!("e{i}")).chain(nu.iter().rev().map(|i| format!("e{i}*"))).collect();
    gens.join(" ")
}

impl fmt::Display for LeavittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((mu, nu), r)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let c = crate::syntax::fmt_coefficient(r);
            if mu.is_empty() && nu.is_empty() {
                f.write_str(&c)?;
            } else {
                write!(f, "{c}*{}", fmt_monomial(mu, nu))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LeavittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeavittElement[n={}, {}]({})", self.n, self.ring, self)
    }
}

impl AlgebraValue for LeavittElement {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("compatible operands")
    }

    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("compatible operands")
    }

    fn scale(&self, r: &Scalar) -> Self {
        LeavittElement::scale(self, r)
    }
}

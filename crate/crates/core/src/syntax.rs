//! Textual grammars for scalars, bisections, algebra elements, Leavitt
//! expressions, tensors and groupoid points.
//!
//! ```text
//! element   := '0' | term (('+' | '-') term)*
//! term      := [coeff '*'] 'Z(' path ',' path ['|' edge (',' edge)*] ')'
//! path      := '@' [vertex] | edge ('.' edge)*
//! coeff     := ['-'] (digits ['/' digits] ['i'] | 'i' | '(' scalar ')')
//! leavitt   := lterm (('+' | '-') lterm)*
//! lterm     := coeff ['*' gens] | gens
//! gens      := ('e' digits ['*'])+
//! tensor    := tterm (('+' | '-') tterm)*
//! tterm     := [coeff '*'] '(' element ')' '(x)' '(' element ')'
//! product   := pterm (('+' | '-') pterm)*
//! pterm     := [coeff '*'] bisection 'x' bisection
//! point     := '[' boundary ';' integer ';' boundary ']'
//! boundary  := [edge ('.' edge)*] '(' edge ('.' edge)* ')'
//! ```
//!
//! Syntax errors carry the byte offset and what was expected; name and
//! composability problems are reported as semantic errors.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bisect::BasicBisection;
use crate::graph::{BoundaryPoint, Graph, GroupoidPoint, Path, VertexId};
use crate::leavitt::{Generator, LeavittElement, Word};
use crate::scalars::{Scalar, ScalarRing};
use crate::steinberg::AlgebraElement;
use crate::tensor::{ProductAlgebraElement, ProductBisection, TensorElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: expected {expected}, found {found}")]
    Syntax { position: usize, expected: String, found: String },
    #[error("{0}")]
    Semantic(String),
}

impl ParseError {
    pub fn is_syntax(&self) -> bool {
        matches!(self, ParseError::Syntax { .. })
    }
}

type Result<T> = std::result::Result<T, ParseError>;

fn semantic(e: impl fmt::Display) -> ParseError {
    ParseError::Semantic(e.to_string())
}

/// Coefficient as printed inside expressions: Gaussian values with both
/// parts nonzero are parenthesised.
pub fn fmt_coefficient(r: &Scalar) -> String {
    use num_traits::Zero;
    if !r.re().is_zero() && !r.im().is_zero() {
        format!("({r})")
    } else {
        r.to_string()
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error<T>(&mut self, expected: &str) -> Result<T> {
        self.skip_ws();
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        };
        Err(ParseError::Syntax { position: self.pos, expected: expected.to_string(), found })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(&format!("`{token}`"))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Some(s)
    }

    fn digits(&mut self) -> Option<&'a str> {
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Some(s)
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    /// Scans a coefficient literal without consuming anything on failure.
    fn scalar_text(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let _ = self.eat("-");
        self.skip_ws();
        let ok = if self.rest().starts_with('(') {
            match self.rest().find(')') {
                Some(close) => {
                    let inner = &self.rest()[1..close];
                    if !inner.is_empty() && inner.chars().all(|c| c.is_ascii_digit() || "+-/i ".contains(c)) {
                        self.pos += close + 1;
                        true
                    } else {
                        false
                    }
                }
                None => false,
            }
        } else if self.digits().is_some() {
            if self.rest().starts_with('/') {
                self.pos += 1;
                if self.digits().is_none() {
                    self.pos = start;
                    return None;
                }
            }
            if self.rest().starts_with('i') && !self.rest()[1..].starts_with(|c: char| c.is_alphanumeric()) {
                self.pos += 1;
            }
            true
        } else if self.rest().starts_with('i') && !self.rest()[1..].starts_with(|c: char| c.is_alphanumeric()) {
            self.pos += 1;
            true
        } else {
            false
        };
        if ok {
            Some(&self.text[start..self.pos])
        } else {
            self.pos = start;
            None
        }
    }

    /// `coeff '*'` if present.
    fn coefficient_prefix(&mut self, ring: ScalarRing) -> Result<Option<Scalar>> {
        let start = self.pos;
        let Some(text) = self.scalar_text() else {
            return Ok(None);
        };
        if !self.eat("*") {
            self.pos = start;
            return Ok(None);
        }
        Scalar::parse(text, ring).map(Some).map_err(semantic)
    }

    /// Sign introducing the next term, or `None` when the sum ends here.
    fn term_separator(&mut self) -> Result<Option<bool>> {
        if self.eat("+") {
            Ok(Some(false))
        } else if self.eat("-") {
            Ok(Some(true))
        } else {
            Ok(None)
        }
    }
}

/// Parses the terms of a signed sum, delegating each term to `term`.
fn parse_sum<T>(c: &mut Cursor<'_>, mut term: impl FnMut(&mut Cursor<'_>) -> Result<T>) -> Result<Vec<(bool, T)>> {
    let mut out = Vec::new();
    let start = c.pos;
    let first = match term(c) {
        Ok(t) => (false, t),
        Err(e) => {
            // `-Z(...)`: the sign is not part of a coefficient
            c.pos = start;
            if !c.eat("-") {
                return Err(e);
            }
            (true, term(c)?)
        }
    };
    out.push(first);
    while let Some(negate) = c.term_separator()? {
        out.push((negate, term(c)?));
    }
    Ok(out)
}

fn signed(r: Scalar, negate: bool) -> Scalar {
    if negate {
        r.neg()
    } else {
        r
    }
}

fn parse_path(c: &mut Cursor<'_>, graph: &Graph) -> Result<PathSyntax> {
    if c.eat("@") {
        let v = match c.ident() {
            Some(name) => Some(
                graph.vertex_by_name(name).ok_or_else(|| ParseError::Semantic(format!("unknown vertex `{name}`")))?,
            ),
            None => None,
        };
        return Ok(PathSyntax::Empty(v));
    }
    let mut names = Vec::new();
    loop {
        match c.ident() {
            Some(id) => names.push(id),
            None => return c.error("edge id or `@`"),
        }
        if !c.eat(".") {
            break;
        }
    }
    Ok(PathSyntax::Edges(graph.path_by_names(&names).map_err(semantic)?))
}

enum PathSyntax {
    Empty(Option<VertexId>),
    Edges(Path),
}

fn resolve_pair(graph: &Graph, a: PathSyntax, b: PathSyntax) -> Result<(Path, Path)> {
    let infer = |hint: Option<VertexId>| -> Result<Path> {
        match hint {
            Some(v) => Ok(graph.empty_path(v)),
            None if graph.is_single_vertex() => Ok(graph.empty_path(0)),
            None => Err(ParseError::Semantic("`@` needs a vertex name in a multi-vertex graph".into())),
        }
    };
    match (a, b) {
        (PathSyntax::Edges(a), PathSyntax::Edges(b)) => Ok((a, b)),
        (PathSyntax::Edges(a), PathSyntax::Empty(v)) => {
            let r = a.range();
            Ok((a, infer(v.or(Some(r)))?))
        }
        (PathSyntax::Empty(v), PathSyntax::Edges(b)) => {
            let r = b.range();
            Ok((infer(v.or(Some(r)))?, b))
        }
        (PathSyntax::Empty(v), PathSyntax::Empty(w)) => Ok((infer(v.or(w))?, infer(w.or(v))?)),
    }
}

fn parse_bisection_at(c: &mut Cursor<'_>, graph: &Graph) -> Result<BasicBisection> {
    c.expect("Z")?;
    c.expect("(")?;
    let a = parse_path(c, graph)?;
    c.expect(",")?;
    let b = parse_path(c, graph)?;
    let mut excluded = BTreeSet::new();
    if c.eat("|") {
        loop {
            let Some(id) = c.ident() else {
                return c.error("edge id");
            };
            excluded.insert(graph.edge_by_name(id).ok_or_else(|| ParseError::Semantic(format!("unknown edge `{id}`")))?);
            if !c.eat(",") {
                break;
            }
        }
    }
    c.expect(")")?;
    let (alpha, beta) = resolve_pair(graph, a, b)?;
    BasicBisection::new(graph, alpha, beta, excluded).map_err(semantic)
}

pub fn parse_bisection(text: &str, graph: &Graph) -> Result<BasicBisection> {
    let mut c = Cursor::new(text);
    let b = parse_bisection_at(&mut c, graph)?;
    c.expect_end()?;
    Ok(b)
}

fn parse_element_at(c: &mut Cursor<'_>, graph: &Arc<Graph>, ring: ScalarRing) -> Result<Vec<(Scalar, BasicBisection)>> {
    if c.peek() == Some('0') {
        let save = c.pos;
        c.skip_ws();
        c.pos += 1;
        if matches!(c.peek(), None | Some(')')) {
            return Ok(Vec::new());
        }
        c.pos = save;
    }
    let terms = parse_sum(c, |c| {
        let r = c.coefficient_prefix(ring)?.unwrap_or_else(|| ring.one());
        Ok((r, parse_bisection_at(c, graph)?))
    })?;
    Ok(terms.into_iter().map(|(neg, (r, b))| (signed(r, neg), b)).collect())
}

/// Parses a sum of `r*Z(α,β|F)` terms into its normal form.
pub fn parse_element(text: &str, graph: &Arc<Graph>, ring: ScalarRing) -> Result<AlgebraElement> {
    let mut c = Cursor::new(text);
    let pairs = parse_element_at(&mut c, graph, ring)?;
    c.expect_end()?;
    AlgebraElement::from_terms(graph.clone(), ring, &pairs).map_err(semantic)
}

/// Parses the raw term list of an element expression without normalising.
pub fn parse_terms(text: &str, graph: &Arc<Graph>, ring: ScalarRing) -> Result<Vec<(Scalar, BasicBisection)>> {
    let mut c = Cursor::new(text);
    let pairs = parse_element_at(&mut c, graph, ring)?;
    c.expect_end()?;
    Ok(pairs)
}

fn parse_generators(c: &mut Cursor<'_>, n: usize) -> Result<Word> {
    let mut word = Vec::new();
    while c.peek() == Some('e') {
        c.pos += 1;
        let Some(d) = c.digits() else {
            return c.error("generator index after `e`");
        };
        let i: usize = d.parse().map_err(semantic)?;
        if i == 0 || i > n {
            return Err(ParseError::Semantic(format!("generator e{i} out of range 1..={n}")));
        }
        let adjoint = c.rest().starts_with('*') && {
            c.pos += 1;
            true
        };
        word.push(if adjoint { Generator::Adjoint(i as u32) } else { Generator::Edge(i as u32) });
    }
    Ok(word)
}

/// Parses a word of generators such as `e1 e2* e1*`; `1` is the empty word.
pub fn parse_leavitt_word(text: &str, n: usize) -> Result<Word> {
    let mut c = Cursor::new(text);
    if c.eat("1") {
        c.expect_end()?;
        return Ok(Vec::new());
    }
    let w = parse_generators(&mut c, n)?;
    if w.is_empty() {
        return c.error("generator `e<i>` or `e<i>*`");
    }
    c.expect_end()?;
    Ok(w)
}

/// Parses a Leavitt expression such as `2*e1 e2* + 1`.
pub fn parse_leavitt(text: &str, n: usize, ring: ScalarRing) -> Result<LeavittElement> {
    let mut c = Cursor::new(text);
    let terms = parse_sum(&mut c, |c| {
        if c.peek() == Some('e') {
            return Ok((ring.one(), parse_generators(c, n)?));
        }
        let Some(text) = c.scalar_text() else {
            return c.error("coefficient or generator");
        };
        let r = Scalar::parse(text, ring).map_err(semantic)?;
        if c.eat("*") {
            let w = parse_generators(c, n)?;
            if w.is_empty() {
                return c.error("generator");
            }
            Ok((r, w))
        } else {
            Ok((r, Vec::new()))
        }
    })?;
    c.expect_end()?;
    let mut acc = LeavittElement::zero(n, ring);
    for (neg, (r, w)) in terms {
        let term = LeavittElement::reduce_word(n, ring, &w).scale(&signed(r, neg));
        acc = acc.try_add(&term).map_err(semantic)?;
    }
    Ok(acc)
}

fn parenthesised_element(c: &mut Cursor<'_>, graph: &Arc<Graph>, ring: ScalarRing) -> Result<AlgebraElement> {
    c.expect("(")?;
    let pairs = parse_element_at(c, graph, ring)?;
    c.expect(")")?;
    AlgebraElement::from_terms(graph.clone(), ring, &pairs).map_err(semantic)
}

/// Parses a sum of simple tensors `r*(f) (x) (g)`.
pub fn parse_tensor(text: &str, left: &Arc<Graph>, right: &Arc<Graph>, ring: ScalarRing) -> Result<TensorElement> {
    let mut c = Cursor::new(text);
    if c.eat("0") {
        c.expect_end()?;
        return Ok(TensorElement::zero(left.clone(), right.clone(), ring));
    }
    let terms = parse_sum(&mut c, |c| {
        let r = c.coefficient_prefix(ring)?.unwrap_or_else(|| ring.one());
        let f = parenthesised_element(c, left, ring)?;
        c.expect("(x)")?;
        let g = parenthesised_element(c, right, ring)?;
        Ok((r, f, g))
    })?;
    c.expect_end()?;
    let mut acc = TensorElement::zero(left.clone(), right.clone(), ring);
    for (neg, (r, f, g)) in terms {
        let t = TensorElement::simple(&f, &g).map_err(semantic)?.scale(&signed(r, neg));
        acc = acc.try_add(&t).map_err(semantic)?;
    }
    Ok(acc)
}

/// Parses a sum of `r*Z(α,β)xZ(γ,δ)` terms in the product-groupoid algebra.
pub fn parse_product(
    text: &str,
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    ring: ScalarRing,
) -> Result<ProductAlgebraElement> {
    let mut c = Cursor::new(text);
    if c.eat("0") {
        c.expect_end()?;
        return Ok(ProductAlgebraElement::zero(left.clone(), right.clone(), ring));
    }
    let terms = parse_sum(&mut c, |c| {
        let r = c.coefficient_prefix(ring)?.unwrap_or_else(|| ring.one());
        let a = parse_bisection_at(c, left)?;
        c.expect("x")?;
        let b = parse_bisection_at(c, right)?;
        Ok((r, ProductBisection::new(a, b)))
    })?;
    c.expect_end()?;
    let pairs: Vec<_> = terms.into_iter().map(|(neg, (r, k))| (signed(r, neg), k)).collect();
    ProductAlgebraElement::from_terms(left.clone(), right.clone(), ring, &pairs).map_err(semantic)
}

fn parse_edge_list(c: &mut Cursor<'_>, graph: &Graph) -> Result<Vec<String>> {
    let mut names = Vec::new();
    while let Some(id) = c.ident() {
        if graph.edge_by_name(id).is_none() {
            return Err(ParseError::Semantic(format!("unknown edge `{id}`")));
        }
        names.push(id.to_string());
        if !c.eat(".") {
            break;
        }
    }
    Ok(names)
}

fn parse_boundary_at(c: &mut Cursor<'_>, graph: &Graph) -> Result<BoundaryPoint> {
    let prefix = parse_edge_list(c, graph)?;
    c.expect("(")?;
    let cycle = parse_edge_list(c, graph)?;
    if cycle.is_empty() {
        return c.error("cycle edges");
    }
    c.expect(")")?;
    let cycle = graph.path_by_names(&cycle).map_err(semantic)?;
    let prefix =
        if prefix.is_empty() { graph.empty_path(cycle.source()) } else { graph.path_by_names(&prefix).map_err(semantic)? };
    BoundaryPoint::new(graph, prefix, cycle).map_err(semantic)
}

/// Parses `prefix(cycle)`, e.g. `1(2)` for `1·2^∞`.
pub fn parse_boundary_point(text: &str, graph: &Graph) -> Result<BoundaryPoint> {
    let mut c = Cursor::new(text);
    let x = parse_boundary_at(&mut c, graph)?;
    c.expect_end()?;
    Ok(x)
}

/// Parses `[x; k; y]`.
pub fn parse_groupoid_point(text: &str, graph: &Graph) -> Result<GroupoidPoint> {
    let mut c = Cursor::new(text);
    c.expect("[")?;
    let x = parse_boundary_at(&mut c, graph)?;
    c.expect(";")?;
    c.skip_ws();
    let neg = c.eat("-");
    let Some(d) = c.digits() else {
        return c.error("integer lag");
    };
    let k: i64 = d.parse().map_err(semantic)?;
    c.expect(";")?;
    let y = parse_boundary_at(&mut c, graph)?;
    c.expect("]")?;
    c.expect_end()?;
    GroupoidPoint::new(graph, x, if neg { -k } else { k }, y).map_err(semantic)
}

pub fn fmt_boundary_point(graph: &Graph, x: &BoundaryPoint) -> String {
    let prefix = if x.prefix().is_empty() { String::new() } else { graph.fmt_path(x.prefix(), false) };
    format!("{prefix}({})", graph.fmt_path(x.cycle(), false))
}

pub fn fmt_groupoid_point(graph: &Graph, g: &GroupoidPoint) -> String {
    format!("[{}; {}; {}]", fmt_boundary_point(graph, &g.x), g.k, fmt_boundary_point(graph, &g.y))
}

//! Valence schemes and Rumer diagrams on atoms placed clockwise at positions
//! `1..=n` of a circle.
//!
//! Crossing is decided combinatorially: two chords cross iff their endpoints
//! strictly interleave. Chords sharing an endpoint, and parallel chords
//! (multiple bonds), never cross.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::{Error, ParseError, Result};

/// A chord `(i, j)` with `1 <= i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    i: usize,
    j: usize,
}

impl Edge {
    /// Builds the edge joining `a` and `b` in either order.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::ZeroVertex);
        }
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { i: a, j: b }),
            std::cmp::Ordering::Greater => Ok(Edge { i: b, j: a }),
            std::cmp::Ordering::Equal => Err(Error::Loop(a)),
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn contains(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: usize) -> Option<usize> {
        if v == self.i {
            Some(self.j)
        } else if v == self.j {
            Some(self.i)
        } else {
            None
        }
    }

    pub fn crosses(&self, other: &Edge) -> bool {
        edges_cross(self, other)
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = Error;

    fn try_from([a, b]: [usize; 2]) -> Result<Self> {
        if a >= b {
            return Err(Error::Precondition(format!(
                "edge [{a},{b}] must be written with i < j"
            )));
        }
        Edge::new(a, b)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.i, e.j]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Strict interleaving test: `a<c<b<d` or `c<a<d<b`.
pub fn edges_cross(e1: &Edge, e2: &Edge) -> bool {
    let (a, b, c, d) = (e1.i, e1.j, e2.i, e2.j);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Every possible edge on `n` vertices in lexicographic order.
pub fn all_edges(n: usize) -> Vec<Edge> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| Edge { i, j }))
        .collect()
}

/// Per-vertex bond counts `(m_1, ..., m_n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<usize>);

impl Multidegree {
    pub fn new(degrees: Vec<usize>) -> Self {
        Multidegree(degrees)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Number of entries (atoms).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl From<Vec<usize>> for Multidegree {
    fn from(v: Vec<usize>) -> Self {
        Multidegree(v)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

impl FromStr for Multidegree {
    type Err = ParseError;

    /// Comma-separated nonnegative integers, e.g. `1,1,2`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut out = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let t = part.trim();
            let v = t.parse::<usize>().map_err(|_| ParseError::Syntax {
                pos,
                msg: format!("expected a nonnegative integer, found {t:?}"),
            })?;
            out.push(v);
            pos += part.len() + 1;
        }
        Ok(Multidegree(out))
    }
}

/// A loop-free multigraph on circularly ordered vertices `1..=n`, with its
/// edges kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SchemeRepr", into = "SchemeRepr")]
pub struct ValenceScheme {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct SchemeRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<SchemeRepr> for ValenceScheme {
    type Error = Error;

    fn try_from(r: SchemeRepr) -> Result<Self> {
        if r.edges.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition(
                "edges must be sorted lexicographically".into(),
            ));
        }
        ValenceScheme::new(r.n, r.edges)
    }
}

impl From<ValenceScheme> for SchemeRepr {
    fn from(s: ValenceScheme) -> Self {
        SchemeRepr {
            n: s.n,
            edges: s.edges,
        }
    }
}

impl ValenceScheme {
    pub fn new(n: usize, mut edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("a scheme needs at least one vertex".into()));
        }
        if let Some(e) = edges.iter().find(|e| e.j > n) {
            return Err(Error::VertexOutOfRange { vertex: e.j, n });
        }
        edges.sort_unstable();
        Ok(ValenceScheme { n, edges })
    }

    /// Builds a scheme from unordered vertex pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, edges)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Assumes `edges` are sorted and within range.
    pub(crate) fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(edges.iter().all(|e| e.j <= n));
        ValenceScheme { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of bonds `m`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicity(&self, e: &Edge) -> usize {
        self.edges.iter().filter(|f| *f == e).count()
    }

    pub fn is_rumer(&self) -> bool {
        is_rumer(self)
    }

    pub fn multidegree(&self) -> Multidegree {
        multidegree_of(self)
    }

    pub fn arc_lengths(&self, e: &Edge) -> Result<(usize, usize)> {
        arc_lengths(self, e)
    }

    /// First crossing pair in canonical order, if any.
    pub fn first_crossing(&self) -> Option<(Edge, Edge)> {
        self.edges
            .iter()
            .tuple_combinations()
            .find(|(a, b)| edges_cross(a, b))
            .map(|(a, b)| (*a, *b))
    }

    /// The scheme with one copy of `e` removed.
    pub fn without(&self, e: &Edge) -> Result<ValenceScheme> {
        let pos = self
            .edges
            .iter()
            .position(|f| f == e)
            .ok_or_else(|| Error::EdgeNotFound(e.to_string()))?;
        let mut edges = self.edges.clone();
        edges.remove(pos);
        Ok(ValenceScheme { n: self.n, edges })
    }

    /// The scheme with `e` added.
    pub fn with(&self, e: Edge) -> Result<ValenceScheme> {
        if e.j > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: e.j,
                n: self.n,
            });
        }
        let mut edges = self.edges.clone();
        let pos = edges.partition_point(|f| *f <= e);
        edges.insert(pos, e);
        Ok(ValenceScheme { n: self.n, edges })
    }

    /// Multiset union of the edges of two schemes on the same vertices.
    pub fn union(&self, other: &ValenceScheme) -> Result<ValenceScheme> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let edges = self
            .edges
            .iter()
            .merge(other.edges.iter())
            .copied()
            .collect();
        Ok(ValenceScheme { n: self.n, edges })
    }

    /// Canonical text form, e.g. `n=4; (1,2)(3,4)`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ValenceScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        if !self.edges.is_empty() {
            write!(f, " ")?;
        }
        for e in &self.edges {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for ValenceScheme {
    type Err = Error;

    /// Parses the text form `n=4; (1,2)(3,4)`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = |pos: usize, msg: &str| {
            Error::Parse(ParseError::Syntax {
                pos,
                msg: msg.to_string(),
            })
        };
        let (head, body) = s
            .split_once(';')
            .ok_or_else(|| syntax(0, "expected `n=<count>;`"))?;
        let head = head.trim();
        let n = head
            .strip_prefix("n")
            .map(str::trim_start)
            .and_then(|h| h.strip_prefix('='))
            .and_then(|h| h.trim().parse::<usize>().ok())
            .ok_or_else(|| syntax(0, "expected `n=<count>`"))?;
        let offset = head.len() + 1;
        let mut edges = Vec::new();
        let bytes = body.as_bytes();
        let mut k = 0;
        while k < bytes.len() {
            match bytes[k] {
                b if b.is_ascii_whitespace() => k += 1,
                b'(' => {
                    let close = body[k..]
                        .find(')')
                        .ok_or_else(|| syntax(offset + k, "unclosed `(`"))?;
                    let inner = &body[k + 1..k + close];
                    let (a, b) = inner
                        .split_once(',')
                        .ok_or_else(|| syntax(offset + k, "expected `(i,j)`"))?;
                    let parse = |t: &str| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| syntax(offset + k, "expected an integer vertex"))
                    };
                    let (a, b) = (parse(a)?, parse(b)?);
                    for v in [a, b] {
                        if v == 0 || v > n {
                            return Err(ParseError::IndexOutOfRange {
                                pos: offset + k,
                                index: v,
                                n,
                            }
                            .into());
                        }
                    }
                    if a == b {
                        return Err(ParseError::LoopBracket {
                            pos: offset + k,
                            index: a,
                        }
                        .into());
                    }
                    edges.push(Edge::new(a, b)?);
                    k += close + 1;
                }
                _ => return Err(syntax(offset + k, "unexpected character")),
            }
        }
        ValenceScheme::new(n, edges)
    }
}

/// A valence scheme with no two crossing chords.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "ValenceScheme", into = "ValenceScheme")]
pub struct RumerDiagram(ValenceScheme);

impl RumerDiagram {
    pub fn new(scheme: ValenceScheme) -> Result<Self> {
        match scheme.first_crossing() {
            Some((a, b)) => Err(Error::Crossing(a.to_string(), b.to_string())),
            None => Ok(RumerDiagram(scheme)),
        }
    }

    pub fn scheme(&self) -> &ValenceScheme {
        &self.0
    }

    pub fn into_scheme(self) -> ValenceScheme {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0.edges
    }
}

impl TryFrom<ValenceScheme> for RumerDiagram {
    type Error = Error;

    fn try_from(s: ValenceScheme) -> Result<Self> {
        RumerDiagram::new(s)
    }
}

impl From<RumerDiagram> for ValenceScheme {
    fn from(d: RumerDiagram) -> Self {
        d.0
    }
}

impl fmt::Display for RumerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_rumer(g: &ValenceScheme) -> bool {
    g.first_crossing().is_none()
}

pub fn multidegree_of(g: &ValenceScheme) -> Multidegree {
    let mut d = vec![0; g.n];
    for e in &g.edges {
        d[e.i - 1] += 1;
        d[e.j - 1] += 1;
    }
    Multidegree(d)
}

/// Lengths of the two circular arcs cut out by `e`: the inner arc through
/// `i+1..j-1` first, then the outer arc through `j+1..n, 1..i-1`. Each length
/// is the number of non-isolated internal vertices plus one.
pub fn arc_lengths(g: &ValenceScheme, e: &Edge) -> Result<(usize, usize)> {
    if !g.edges.contains(e) {
        return Err(Error::EdgeNotFound(e.to_string()));
    }
    let d = multidegree_of(g);
    let busy = |v: &usize| d.0[v - 1] > 0;
    let inner = (e.i + 1..e.j).filter(busy).count();
    let outer = (e.j + 1..=g.n).chain(1..e.i).filter(busy).count();
    Ok((inner + 1, outer + 1))
}

/// Backtracking over edges in nondecreasing lexicographic order.
///
/// The lowest vertex `v` that still has residual degree must be paired with
/// some higher vertex, so each multiset of edges is produced exactly once and
/// in lexicographic order.
struct DegreeSearch<'a, F: FnMut(&[Edge])> {
    residual: Vec<usize>,
    chosen: Vec<Edge>,
    non_crossing: bool,
    visit: &'a mut F,
}

impl<F: FnMut(&[Edge])> DegreeSearch<'_, F> {
    fn run(&mut self, remaining: usize) {
        let Some(v0) = self.residual.iter().position(|&r| r > 0) else {
            (self.visit)(&self.chosen);
            return;
        };
        let v = v0 + 1;
        if 2 * self.residual[v0] > remaining {
            return;
        }
        let lower = match self.chosen.last() {
            Some(last) if last.i == v => last.j,
            _ => v + 1,
        };
        for w in lower..=self.residual.len() {
            if self.residual[w - 1] == 0 {
                continue;
            }
            let e = Edge { i: v, j: w };
            if self.non_crossing && self.chosen.iter().any(|f| edges_cross(f, &e)) {
                continue;
            }
            self.residual[v0] -= 1;
            self.residual[w - 1] -= 1;
            self.chosen.push(e);
            self.run(remaining - 2);
            self.chosen.pop();
            self.residual[v0] += 1;
            self.residual[w - 1] += 1;
        }
    }
}

fn search_by_multidegree(d: &Multidegree, non_crossing: bool, mut visit: impl FnMut(&[Edge])) {
    let total = d.sum();
    if d.is_empty() || total % 2 == 1 {
        return;
    }
    let mut search = DegreeSearch {
        residual: d.0.clone(),
        chosen: Vec::with_capacity(total / 2),
        non_crossing,
        visit: &mut visit,
    };
    search.run(total);
}

/// All Rumer diagrams with exactly the degrees `d`, in canonical order.
/// Infeasible inputs yield an empty list.
pub fn enumerate_rumer_by_multidegree(d: &Multidegree) -> Vec<RumerDiagram> {
    let n = d.len();
    let mut out = Vec::new();
    search_by_multidegree(d, true, |edges| {
        out.push(RumerDiagram(ValenceScheme::from_sorted(n, edges.to_vec())))
    });
    out
}

/// All valence schemes (crossing or not) with exactly the degrees `d`.
pub fn enumerate_schemes_by_multidegree(d: &Multidegree) -> Vec<ValenceScheme> {
    let n = d.len();
    let mut out = Vec::new();
    search_by_multidegree(d, false, |edges| {
        out.push(ValenceScheme::from_sorted(n, edges.to_vec()))
    });
    out
}

fn search_by_size(n: usize, m: usize, mut visit: impl FnMut(&[Edge])) {
    let edges = all_edges(n);
    let mut chosen = Vec::with_capacity(m);
    fn go(
        edges: &[Edge],
        start: usize,
        m: usize,
        chosen: &mut Vec<Edge>,
        visit: &mut dyn FnMut(&[Edge]),
    ) {
        if chosen.len() == m {
            visit(chosen);
            return;
        }
        for (k, e) in edges.iter().enumerate().skip(start) {
            if chosen.iter().any(|f| edges_cross(f, e)) {
                continue;
            }
            chosen.push(*e);
            go(edges, k, m, chosen, visit);
            chosen.pop();
        }
    }
    go(&edges, 0, m, &mut chosen, &mut visit);
}

/// All Rumer diagrams with `m` bonds on `n` atoms, in canonical order.
///
/// This is the disjoint union of [`enumerate_rumer_by_multidegree`] over all
/// multidegrees with sum `2m`.
pub fn enumerate_rumer(n: usize, m: usize) -> Vec<RumerDiagram> {
    let mut out = Vec::new();
    search_by_size(n, m, |edges| {
        out.push(RumerDiagram(ValenceScheme::from_sorted(n, edges.to_vec())))
    });
    out
}

/// Number of Rumer diagrams with `m` bonds on `n` atoms, by direct search.
pub fn count_rumer(n: usize, m: usize) -> u64 {
    let mut count = 0u64;
    search_by_size(n, m, |_| count += 1);
    count
}

/// Number of Rumer diagrams with degrees `d`, by direct search.
pub fn count_rumer_by_multidegree(d: &Multidegree) -> u64 {
    let mut count = 0u64;
    search_by_multidegree(d, true, |_| count += 1);
    count
}

/// Every loop-free multigraph with `m` edges on `n` vertices, each once, in
/// canonical order.
pub fn enumerate_valence_schemes(n: usize, m: usize) -> impl Iterator<Item = ValenceScheme> {
    let edges = all_edges(n);
    let empty = edges.is_empty() && m > 0;
    edges
        .into_iter()
        .combinations_with_replacement(m)
        .filter(move |_| !empty)
        .map(move |edges| ValenceScheme::from_sorted(n, edges))
}

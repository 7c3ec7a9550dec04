//! Bracket monomials and integer bracket polynomials, the quadratic Plücker
//! rewrite, and straightening into the Rumer basis.
//!
//! A bracket `[i,j]` stands for the 2x2 determinant of the coordinate columns
//! of atoms `i` and `j`, so `[j,i] = -[i,j]`. Monomials are stored by their
//! valence scheme, i.e. the sorted multiset of normalized brackets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{arc_lengths, edges_cross, Edge, Multidegree, ValenceScheme};
use crate::{Error, ParseError, Result};

/// Rewrite budget used by [`straighten`].
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// A normalized bracket together with the sign picked up by normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedBracket {
    pub edge: Edge,
    pub sign: i8,
}

/// `[a,b]` as a normalized edge with sign: `+1` when `a < b`, `-1` when
/// `a > b`. Equal indices are rejected.
pub fn bracket(a: usize, b: usize) -> Result<SignedBracket> {
    let edge = Edge::new(a, b)?;
    Ok(SignedBracket {
        edge,
        sign: if a < b { 1 } else { -1 },
    })
}

/// A product of brackets on `n` atoms, identified with its valence scheme.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketMonomial(ValenceScheme);

impl BracketMonomial {
    pub fn new(n: usize, factors: Vec<Edge>) -> Result<Self> {
        Ok(BracketMonomial(ValenceScheme::new(n, factors)?))
    }

    /// The empty product, i.e. the constant 1.
    pub fn one(n: usize) -> Result<Self> {
        Ok(BracketMonomial(ValenceScheme::empty(n)?))
    }

    /// The monomial whose factors are exactly the edges of `scheme`.
    pub fn from_scheme(scheme: ValenceScheme) -> Self {
        BracketMonomial(scheme)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn factors(&self) -> &[Edge] {
        self.0.edges()
    }

    /// Number of bracket factors.
    pub fn degree(&self) -> usize {
        self.0.size()
    }

    pub fn scheme(&self) -> &ValenceScheme {
        &self.0
    }

    pub fn into_scheme(self) -> ValenceScheme {
        self.0
    }

    pub fn multidegree(&self) -> Multidegree {
        self.0.multidegree()
    }
}

impl fmt::Display for BracketMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors().is_empty() {
            return write!(f, "1");
        }
        for e in self.factors() {
            write!(f, "[{},{}]", e.i(), e.j())?;
        }
        Ok(())
    }
}

pub fn monomial_scheme(m: &BracketMonomial) -> ValenceScheme {
    m.0.clone()
}

/// A finite integer combination of bracket monomials on `n` atoms. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct BracketPolynomial {
    n: usize,
    terms: BTreeMap<BracketMonomial, BigInt>,
}

impl BracketPolynomial {
    pub fn zero(n: usize) -> Self {
        BracketPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: BracketMonomial) -> Self {
        Self::from_term(BigInt::one(), m)
    }

    pub fn from_term(coeff: BigInt, m: BracketMonomial) -> Self {
        let mut p = Self::zero(m.n());
        p.add_term(coeff, m);
        p
    }

    pub fn from_scheme(scheme: ValenceScheme) -> Self {
        Self::from_monomial(BracketMonomial(scheme))
    }

    /// Product of signed brackets given as ordered index pairs.
    pub fn product(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut sign = 1i8;
        let mut factors = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            check_vertex(a, n)?;
            check_vertex(b, n)?;
            let sb = bracket(a, b)?;
            sign *= sb.sign;
            factors.push(sb.edge);
        }
        Ok(Self::from_term(
            BigInt::from(sign),
            BracketMonomial::new(n, factors)?,
        ))
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&BracketMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &BracketMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds `coeff * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, coeff: BigInt, m: BracketMonomial) {
        debug_assert_eq!(m.n(), self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        BracketPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies every term by the bracket `e`.
    pub fn times_edge(&self, e: Edge) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(c.clone(), BracketMonomial(m.0.with(e)?));
        }
        Ok(out)
    }

    /// Multiplies every term by the monomial `rest`.
    pub fn times_monomial(&self, rest: &BracketMonomial) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(c.clone(), BracketMonomial(m.0.union(&rest.0)?));
        }
        Ok(out)
    }

    /// Parses the textual grammar
    ///
    /// ```text
    /// polynomial := term (("+" | "-") term)*
    /// term       := [coeff "*"] bracket+ | coeff
    /// bracket    := "[" int "," int "]"
    /// ```
    ///
    /// with optional leading sign and insignificant whitespace. A bare
    /// coefficient denotes a multiple of the empty monomial.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Parser::new(text, n).polynomial()
    }

    /// True when every monomial has a non-crossing valence scheme.
    pub fn is_straight(&self) -> bool {
        self.terms.keys().all(|m| m.0.is_rumer())
    }
}

impl fmt::Display for BracketPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.factors().is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &BracketPolynomial {
    type Output = BracketPolynomial;

    fn add(self, rhs: &BracketPolynomial) -> BracketPolynomial {
        assert_eq!(self.n, rhs.n, "adding polynomials on different vertex sets");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Add for BracketPolynomial {
    type Output = BracketPolynomial;

    fn add(self, rhs: BracketPolynomial) -> BracketPolynomial {
        &self + &rhs
    }
}

impl Neg for &BracketPolynomial {
    type Output = BracketPolynomial;

    fn neg(self) -> BracketPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &BracketPolynomial {
    type Output = BracketPolynomial;

    fn sub(self, rhs: &BracketPolynomial) -> BracketPolynomial {
        self + &(-rhs)
    }
}

impl Sub for BracketPolynomial {
    type Output = BracketPolynomial;

    fn sub(self, rhs: BracketPolynomial) -> BracketPolynomial {
        &self - &rhs
    }
}

impl Mul<&BigInt> for &BracketPolynomial {
    type Output = BracketPolynomial;

    fn mul(self, rhs: &BigInt) -> BracketPolynomial {
        self.scale(rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(with = "crate::json::bigint")]
    coeff: BigInt,
    factors: Vec<[usize; 2]>,
}

impl From<BracketPolynomial> for PolynomialRepr {
    fn from(p: BracketPolynomial) -> Self {
        PolynomialRepr {
            n: p.n,
            terms: p
                .terms
                .into_iter()
                .map(|(m, coeff)| TermRepr {
                    coeff,
                    factors: m.factors().iter().map(|&e| e.into()).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialRepr> for BracketPolynomial {
    type Error = Error;

    /// Factor pairs may be given in either order; a reversed pair flips the
    /// sign of its term.
    fn try_from(r: PolynomialRepr) -> Result<Self> {
        let mut p = BracketPolynomial::zero(r.n);
        for t in r.terms {
            let pairs: Vec<_> = t.factors.iter().map(|f| (f[0], f[1])).collect();
            let q = BracketPolynomial::product(r.n, &pairs)?;
            p = &p + &q.scale(&t.coeff);
        }
        Ok(p)
    }
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v == 0 || v > n {
        Err(Error::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, n: usize) -> Self {
        Parser { text, pos: 0, n }
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
        .into()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{c}`")))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&self.text[start..start + len])
    }

    fn index(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let at = self.pos;
        let d = self
            .digits()
            .ok_or_else(|| self.syntax("expected a vertex index"))?;
        match d.parse::<usize>() {
            Ok(v) if v >= 1 && v <= self.n => Ok((v, at)),
            Ok(v) => Err(ParseError::IndexOutOfRange {
                pos: at,
                index: v,
                n: self.n,
            }
            .into()),
            Err(_) => Err(ParseError::IndexOutOfRange {
                pos: at,
                index: usize::MAX,
                n: self.n,
            }
            .into()),
        }
    }

    fn polynomial(mut self) -> Result<BracketPolynomial> {
        let mut p = BracketPolynomial::zero(self.n);
        let mut sign = BigInt::one();
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            p = &p + &t.scale(&sign);
            match self.peek() {
                None => return Ok(p),
                Some('+') => {
                    self.pos += 1;
                    sign = BigInt::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -BigInt::one();
                }
                Some(c) => return Err(self.syntax(format!("unexpected `{c}`"))),
            }
        }
    }

    fn term(&mut self) -> Result<BracketPolynomial> {
        let mut coeff = BigInt::one();
        let mut explicit = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let d = self.digits().expect("digit was peeked");
            coeff = d.parse().expect("ascii digits form an integer");
            explicit = true;
            if !self.eat('*') {
                if self.peek() == Some('[') {
                    return Err(self.syntax("expected `*` between coefficient and bracket"));
                }
                return Ok(BracketPolynomial::from_term(coeff, BracketMonomial::one(self.n)?));
            }
        }
        let mut pairs = Vec::new();
        while self.peek() == Some('[') {
            let open = self.pos;
            self.pos += 1;
            let (a, _) = self.index()?;
            self.expect(',')?;
            let (b, _) = self.index()?;
            self.expect(']')?;
            if a == b {
                return Err(ParseError::LoopBracket { pos: open, index: a }.into());
            }
            pairs.push((a, b));
        }
        if pairs.is_empty() {
            return Err(self.syntax(if explicit {
                "expected a bracket after `*`"
            } else {
                "expected a term"
            }));
        }
        Ok(BracketPolynomial::product(self.n, &pairs)?.scale(&coeff))
    }
}

/// The quadratic identity solved for a crossing pair: with the four endpoints
/// sorted as `a < b < c < d`,
/// `[a,c][b,d] = [a,b][c,d] + [a,d][b,c]`.
pub fn plucker_expand(n: usize, e1: &Edge, e2: &Edge) -> Result<BracketPolynomial> {
    if !edges_cross(e1, e2) {
        return Err(Error::NotCrossing(e1.to_string(), e2.to_string()));
    }
    let mut v = [e1.i(), e1.j(), e2.i(), e2.j()];
    v.sort_unstable();
    let [a, b, c, d] = v;
    let mut p = BracketPolynomial::zero(n);
    p.add_term(BigInt::one(), BracketMonomial::new(n, vec![Edge::new(a, b)?, Edge::new(c, d)?])?);
    p.add_term(BigInt::one(), BracketMonomial::new(n, vec![Edge::new(a, d)?, Edge::new(b, c)?])?);
    Ok(p)
}

/// Rewrites bracket polynomials into combinations of Rumer monomials.
///
/// Each monomial is processed by locating an arc of minimal length. A length-1
/// arc lets its edge be factored out; otherwise the edge through the first
/// non-isolated vertex inside the arc crosses it and the quadratic identity
/// replaces the pair by two monomials with strictly shorter minimal arcs.
/// Ties go to the lexicographically smallest edge, its inner arc before the
/// outer one, and then to the smallest interior vertex.
#[derive(Debug)]
pub struct Straightener {
    fuel: u64,
    steps: u64,
    cache: HashMap<BracketMonomial, BracketPolynomial>,
}

impl Default for Straightener {
    fn default() -> Self {
        Self::with_fuel(DEFAULT_FUEL)
    }
}

impl Straightener {
    pub fn with_fuel(fuel: u64) -> Self {
        Straightener {
            fuel,
            steps: 0,
            cache: HashMap::new(),
        }
    }

    /// Quadratic rewrites performed so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn straighten(&mut self, p: &BracketPolynomial) -> Result<BracketPolynomial> {
        let mut out = BracketPolynomial::zero(p.n);
        for (m, c) in &p.terms {
            let s = self.monomial(m)?;
            for (mm, cc) in s.terms {
                out.add_term(cc * c, mm);
            }
        }
        if let Some(bad) = out.terms.keys().find(|m| !m.0.is_rumer()) {
            return Err(Error::Internal(format!(
                "straightening produced the crossing monomial {bad}"
            )));
        }
        Ok(out)
    }

    fn monomial(&mut self, m: &BracketMonomial) -> Result<BracketPolynomial> {
        if let Some(hit) = self.cache.get(m) {
            return Ok(hit.clone());
        }
        let result = self.monomial_uncached(m)?;
        self.cache.insert(m.clone(), result.clone());
        Ok(result)
    }

    fn monomial_uncached(&mut self, m: &BracketMonomial) -> Result<BracketPolynomial> {
        let scheme = &m.0;
        let n = scheme.n();
        let Some((edge, inner, len)) = minimal_arc(scheme)? else {
            return Ok(BracketPolynomial::from_monomial(m.clone()));
        };
        let rest = scheme.without(&edge)?;
        if len == 1 {
            let sub = self.monomial(&BracketMonomial(rest))?;
            return sub.times_edge(edge);
        }

        let degrees = scheme.multidegree();
        let busy = |v: &usize| degrees.degrees()[v - 1] > 0;
        let k = if inner {
            (edge.i() + 1..edge.j()).find(busy)
        } else {
            (1..edge.i()).chain(edge.j() + 1..=n).find(busy)
        }
        .ok_or_else(|| Error::Internal(format!("arc of {edge} has no interior vertex")))?;
        let through = *rest
            .edges()
            .iter()
            .find(|f| f.contains(k))
            .ok_or_else(|| Error::Internal(format!("no edge through vertex {k}")))?;
        if !edges_cross(&edge, &through) {
            return Err(Error::Internal(format!(
                "edge {through} through the minimal arc of {edge} does not cross it"
            )));
        }

        self.steps += 1;
        if self.steps > self.fuel {
            return Err(Error::FuelExhausted(self.fuel));
        }
        let remainder = BracketMonomial(rest.without(&through)?);
        let expanded = plucker_expand(n, &edge, &through)?.times_monomial(&remainder)?;
        let mut out = BracketPolynomial::zero(n);
        for (mm, c) in &expanded.terms {
            let s = self.monomial(mm)?;
            for (k2, c2) in s.terms {
                out.add_term(c2 * c, k2);
            }
        }
        Ok(out)
    }
}

/// The edge carrying a shortest arc, whether that arc is the inner one, and
/// its length. `None` for the empty scheme.
fn minimal_arc(scheme: &ValenceScheme) -> Result<Option<(Edge, bool, usize)>> {
    let mut best: Option<(Edge, bool, usize)> = None;
    let mut prev: Option<Edge> = None;
    for e in scheme.edges() {
        if prev == Some(*e) {
            continue;
        }
        prev = Some(*e);
        let (inner, outer) = arc_lengths(scheme, e)?;
        for (is_inner, len) in [(true, inner), (false, outer)] {
            if best.is_none_or(|(_, _, l)| len < l) {
                best = Some((*e, is_inner, len));
            }
        }
    }
    Ok(best)
}

/// Straightens `p` with the default fuel.
pub fn straighten(p: &BracketPolynomial) -> Result<BracketPolynomial> {
    Straightener::default().straighten(p)
}

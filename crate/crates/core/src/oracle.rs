//! Independent ground truth for the bracket algebra.
//!
//! Brackets are expanded into the `2n` coordinates `x1(i), x2(i)`, the SL(2)
//! action is applied by substitution, and spans are measured by exact
//! fraction-free elimination. Nothing here goes through the straightening
//! code except [`verify_basis`], which checks it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bracket::{BracketMonomial, BracketPolynomial, Straightener};
use crate::counting::{rho_closed, CountValue};
use crate::diagram::{enumerate_rumer, enumerate_valence_schemes, Edge, ValenceScheme};
use crate::{Error, Result};

/// Exponents of `x1(1), x2(1), ..., x1(n), x2(n)`, ordered graded
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer polynomial in the coordinates of `n` atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPolynomial {
    n: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl XPolynomial {
    pub fn zero(n: usize) -> Self {
        XPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; 2 * n], BigInt::one())
    }

    /// The coordinate `x_coord(atom)`, with `atom` in `1..=n` and `coord` in
    /// `1..=2`.
    pub fn variable(n: usize, atom: usize, coord: usize) -> Self {
        assert!((1..=n).contains(&atom) && (1..=2).contains(&coord));
        let mut e = vec![0; 2 * n];
        e[2 * (atom - 1) + coord - 1] = 1;
        Self::monomial(n, e, BigInt::one())
    }

    pub fn monomial(n: usize, exps: Vec<u32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), 2 * n);
        let mut p = Self::zero(n);
        p.add_term(Exponents(exps), coeff);
        p
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &XPolynomial) -> XPolynomial {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> XPolynomial {
        let mut out = Self::zero(self.n);
        for (e, k) in &self.terms {
            out.add_term(e.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &XPolynomial) -> XPolynomial {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.0.iter().zip(&e2.0).map(|(a, b)| a + b).collect();
                out.add_term(Exponents(e), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> XPolynomial {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// True when every term has total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == d)
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| {
                    let name = format!("x{}_{}", v % 2 + 1, v / 2 + 1);
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `x1(i) x2(j) - x2(i) x1(j)`.
fn bracket_polynomial(n: usize, e: &Edge) -> XPolynomial {
    let x = |atom, coord| XPolynomial::variable(n, atom, coord);
    x(e.i(), 1)
        .mul(&x(e.j(), 2))
        .add(&x(e.i(), 2).mul(&x(e.j(), 1)).scale(&BigInt::from(-1)))
}

pub fn expand_monomial(m: &BracketMonomial) -> XPolynomial {
    let n = m.n();
    m.factors()
        .iter()
        .fold(XPolynomial::one(n), |acc, e| acc.mul(&bracket_polynomial(n, e)))
}

/// Replaces every bracket by its determinant and collects.
pub fn expand(p: &BracketPolynomial) -> XPolynomial {
    let mut out = XPolynomial::zero(p.n());
    for (m, c) in p.terms() {
        out = out.add(&expand_monomial(m).scale(c));
    }
    out
}

/// An integer 2x2 matrix of determinant 1, entries `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnimodularMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(UnimodularMatrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        UnimodularMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    /// `[[1,1],[0,1]]`.
    pub fn upper() -> Self {
        UnimodularMatrix { a: 1, b: 1, c: 0, d: 1 }
    }

    /// `[[1,0],[1,1]]`.
    pub fn lower() -> Self {
        UnimodularMatrix { a: 1, b: 0, c: 1, d: 1 }
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn inverse(&self) -> Self {
        UnimodularMatrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn mul(&self, o: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// `(sigma . f)(x(1), ..., x(n)) = f(sigma^-1 x(1), ..., sigma^-1 x(n))`.
pub fn act(sigma: &UnimodularMatrix, f: &XPolynomial) -> XPolynomial {
    let n = f.n;
    let inv = sigma.inverse();
    let x = |atom, coord| XPolynomial::variable(n, atom, coord);
    let linear = |row: [i64; 2], atom| {
        x(atom, 1)
            .scale(&BigInt::from(row[0]))
            .add(&x(atom, 2).scale(&BigInt::from(row[1])))
    };
    let rows = inv.entries();
    let images: Vec<XPolynomial> = (1..=n)
        .flat_map(|atom| [linear(rows[0], atom), linear(rows[1], atom)])
        .collect();
    let mut out = XPolynomial::zero(n);
    for (e, c) in &f.terms {
        let term = e
            .0
            .iter()
            .zip(&images)
            .filter(|(&p, _)| p > 0)
            .fold(XPolynomial::one(n), |acc, (&p, img)| acc.mul(&img.pow(p)));
        out = out.add(&term.scale(c));
    }
    out
}

/// Incremental row echelon form over the integers with fraction-free
/// reduction; rows are sparse `(column, value)` lists sorted by column.
#[derive(Debug, Default)]
struct Echelon {
    pivots: BTreeMap<usize, Vec<(usize, BigInt)>>,
}

impl Echelon {
    fn insert(&mut self, mut row: Vec<(usize, BigInt)>) -> bool {
        loop {
            let Some(lead) = row.first().map(|(c, _)| *c) else {
                return false;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                normalize(&mut row);
                self.pivots.insert(lead, row);
                return true;
            };
            row = eliminate(&row, pivot);
        }
    }
}

/// `p0 * row - r0 * pivot`, where `p0` and `r0` are the leading entries; the
/// leading column cancels.
fn eliminate(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let g = row[0].1.gcd(&pivot[0].1);
    let p0 = &pivot[0].1 / &g;
    let r0 = &row[0].1 / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let next = match (row.get(i), pivot.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) => match ci.cmp(cj) {
                Ordering::Less => {
                    i += 1;
                    (*ci, &p0 * vi)
                }
                Ordering::Greater => {
                    j += 1;
                    (*cj, -(&r0 * vj))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (*ci, &p0 * vi - &r0 * vj)
                }
            },
            (Some((ci, vi)), None) => {
                i += 1;
                (*ci, &p0 * vi)
            }
            (None, Some((cj, vj))) => {
                j += 1;
                (*cj, -(&r0 * vj))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    normalize(&mut out);
    out
}

/// Divides out the content of a row.
fn normalize(row: &mut [(usize, BigInt)]) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Rank over the rationals of the coefficient matrix whose rows are the
/// given polynomials and whose columns are the union of their exponent
/// vectors in graded lexicographic order.
pub fn rank_of_span(fs: &[XPolynomial]) -> usize {
    if let Some(first) = fs.first() {
        assert!(fs.iter().all(|f| f.n == first.n), "mixed atom counts");
    }
    let columns: BTreeSet<&Exponents> = fs.iter().flat_map(|f| f.terms.keys()).collect();
    let index: BTreeMap<&Exponents, usize> =
        columns.into_iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut echelon = Echelon::default();
    let mut rank = 0;
    for f in fs {
        let row: Vec<(usize, BigInt)> = f
            .terms
            .iter()
            .map(|(e, c)| (index[e], c.clone()))
            .collect();
        if echelon.insert(row) {
            rank += 1;
        }
    }
    rank
}

/// Outcome of [`verify_basis`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub n: usize,
    pub m: usize,
    pub rumer_count: usize,
    pub rumer_rank: usize,
    pub full_rank: usize,
    pub rho: CountValue,
    pub schemes_checked: usize,
    pub straighten_failures: Vec<String>,
    pub pass: bool,
}

/// Checks that the Rumer monomials of degree `m` on `n` atoms are linearly
/// independent, that all bracket monomials span a space of the same
/// dimension `rho(n, m)`, and that straightening every valence scheme gives
/// an equal polynomial supported on Rumer monomials of the same multidegree.
pub fn verify_basis(n: usize, m: usize) -> BasisReport {
    verify_basis_with_fuel(n, m, crate::bracket::DEFAULT_FUEL)
}

pub fn verify_basis_with_fuel(n: usize, m: usize, fuel: u64) -> BasisReport {
    let rho = rho_closed(n, m);
    let rumer: Vec<XPolynomial> = enumerate_rumer(n, m)
        .into_iter()
        .map(|d| expand_monomial(&BracketMonomial::from_scheme(d.into_scheme())))
        .collect();
    let rumer_rank = rank_of_span(&rumer);

    let schemes: Vec<ValenceScheme> = enumerate_valence_schemes(n, m).collect();
    let mut full = Vec::with_capacity(schemes.len());
    let mut failures = Vec::new();
    let mut straightener = Straightener::with_fuel(fuel);
    for s in &schemes {
        let monomial = BracketMonomial::from_scheme(s.clone());
        let direct = expand_monomial(&monomial);
        match straightener.straighten(&BracketPolynomial::from_monomial(monomial)) {
            Ok(st) => {
                if expand(&st) != direct {
                    failures.push(format!("{s}: expansion changed"));
                }
                let md = s.multidegree();
                for (t, _) in st.terms() {
                    if !t.scheme().is_rumer() {
                        failures.push(format!("{s}: crossing term {t}"));
                    }
                    if t.multidegree() != md {
                        failures.push(format!("{s}: term {t} changes the multidegree"));
                    }
                }
            }
            Err(e) => failures.push(format!("{s}: {e}")),
        }
        full.push(direct);
    }
    let full_rank = rank_of_span(&full);

    let rumer_count = rumer.len();
    let pass = failures.is_empty()
        && rho == rumer_count as u64
        && rumer_rank == rumer_count
        && rho == full_rank as u64;
    BasisReport {
        n,
        m,
        rumer_count,
        rumer_rank,
        full_rank,
        rho,
        schemes_checked: schemes.len(),
        straighten_failures: failures,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> BracketPolynomial {
        BracketPolynomial::parse(s, n).unwrap()
    }

    #[test]
    fn expand_examples() {
        let x = |a, c| XPolynomial::variable(2, a, c);
        let want = x(1, 1).mul(&x(2, 2)).add(&x(1, 2).mul(&x(2, 1)).scale(&BigInt::from(-1)));
        assert_eq!(expand(&poly("[1,2]", 2)), want);
        assert_eq!(expand(&poly("1", 3)), XPolynomial::one(3));
        assert!(expand(&poly("[1,2][3,4] - [1,3][2,4] + [1,4][2,3]", 4)).is_zero());
        assert!(expand(&poly("[1,2][3,4][1,3]", 4)).is_homogeneous_of_degree(6));
        assert_eq!(expand(&poly("[2,1]", 2)), want.scale(&BigInt::from(-1)));
    }

    #[test]
    fn act_examples() {
        let f = expand(&poly("[1,2]", 2));
        assert_eq!(act(&UnimodularMatrix::identity(), &f), f);
        assert_eq!(act(&UnimodularMatrix::upper(), &f), f);
        let x11 = XPolynomial::variable(1, 1, 1);
        let x21 = XPolynomial::variable(1, 1, 2);
        assert_eq!(
            act(&UnimodularMatrix::upper(), &x11),
            x11.add(&x21.scale(&BigInt::from(-1)))
        );
    }

    #[test]
    fn unimodular_checks() {
        assert_eq!(UnimodularMatrix::new(2, 0, 0, 1), Err(Error::NotUnimodular(2)));
        let s = UnimodularMatrix::new(2, 3, 1, 2).unwrap();
        assert_eq!(s.mul(&s.inverse()), UnimodularMatrix::identity());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of_span(&[expand(&poly("[1,2]", 2))]), 1);
        assert_eq!(rank_of_span(&[]), 0);
        assert_eq!(rank_of_span(&[XPolynomial::zero(2)]), 0);
        let singles: Vec<_> = enumerate_valence_schemes(4, 1)
            .map(|s| expand_monomial(&BracketMonomial::from_scheme(s)))
            .collect();
        assert_eq!(rank_of_span(&singles), 6);
        let pairs: Vec<_> = enumerate_valence_schemes(4, 2)
            .map(|s| expand_monomial(&BracketMonomial::from_scheme(s)))
            .collect();
        assert_eq!(pairs.len(), 21);
        assert_eq!(rank_of_span(&pairs), 20);
    }

    #[test]
    fn rank_sees_dependent_rows() {
        let a = expand(&poly("[1,2][3,4]", 4));
        let b = expand(&poly("[1,4][2,3]", 4));
        let c = a.scale(&BigInt::from(3)).add(&b.scale(&BigInt::from(-5)));
        assert_eq!(rank_of_span(&[a.clone(), b.clone(), c]), 2);
        assert_eq!(rank_of_span(&[a.clone(), a]), 1);
    }

    #[test]
    fn verify_basis_examples() {
        let r = verify_basis(4, 2);
        assert!(r.pass, "{r:?}");
        assert_eq!((r.rumer_count, r.rumer_rank, r.full_rank), (20, 20, 20));
        let r = verify_basis(2, 3);
        assert!(r.pass);
        assert_eq!((r.rumer_rank, r.rho.clone()), (1, CountValue::from(1)));
        let r = verify_basis(3, 0);
        assert!(r.pass);
        assert_eq!(r.full_rank, 1);
    }

    #[test]
    fn report_json_shape() {
        let r = verify_basis(3, 1);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["n", "m", "rumer_count", "rumer_rank", "full_rank", "rho", "straighten_failures"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["rho"].to_string(), "3");
    }

    #[test]
    fn graded_lex_order() {
        let a = Exponents::new(vec![2, 0]);
        let b = Exponents::new(vec![0, 3]);
        let c = Exponents::new(vec![1, 1]);
        assert!(a > c);
        assert!(b > a);
    }
}

//! Dimension counts: the binomial determinant for `rho(n, m)`, its product
//! form, and the even-triangle recurrence for `N(m_1, ..., m_n)`.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::Multidegree;
use crate::{Error, Result};

/// An exact nonnegative count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CountValue(#[serde(with = "crate::json::biguint")] BigUint);

impl CountValue {
    pub fn zero() -> Self {
        CountValue(BigUint::zero())
    }

    pub fn one() -> Self {
        CountValue(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for CountValue {
    fn from(v: u64) -> Self {
        CountValue(BigUint::from(v))
    }
}

impl From<BigUint> for CountValue {
    fn from(v: BigUint) -> Self {
        CountValue(v)
    }
}

impl PartialEq<u64> for CountValue {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl PartialOrd<u64> for CountValue {
    fn partial_cmp(&self, other: &u64) -> Option<std::cmp::Ordering> {
        Some(self.0.cmp(&BigUint::from(*other)))
    }
}

impl Add for CountValue {
    type Output = CountValue;

    fn add(self, rhs: CountValue) -> CountValue {
        CountValue(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a CountValue> for CountValue {
    type Output = CountValue;

    fn add(self, rhs: &'a CountValue) -> CountValue {
        CountValue(self.0 + &rhs.0)
    }
}

impl Sum for CountValue {
    fn sum<I: Iterator<Item = CountValue>>(iter: I) -> Self {
        iter.fold(CountValue::zero(), Add::add)
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact `C(k, l)`; zero when `l > k`.
pub fn binomial(k: u64, l: u64) -> CountValue {
    CountValue(binomial_big(k, l))
}

fn binomial_big(k: u64, l: u64) -> BigUint {
    if l > k {
        return BigUint::zero();
    }
    let l = l.min(k - l);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..l).fold(BigUint::one(), |acc, t| acc * (k - t) / (t + 1))
}

/// Three nonnegative integers obeying all triangle inequalities with even
/// perimeter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvenTriangle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl EvenTriangle {
    pub fn new(a: usize, b: usize, c: usize) -> Option<Self> {
        even_triangle(a, b, c).then_some(EvenTriangle { a, b, c })
    }

    /// All `c` completing `(a, b)` to an even triangle, ascending:
    /// `|a-b|, |a-b|+2, ..., a+b`.
    pub fn completions(a: usize, b: usize) -> impl Iterator<Item = usize> {
        (a.abs_diff(b)..=a + b).step_by(2)
    }
}

pub fn even_triangle(a: usize, b: usize, c: usize) -> bool {
    a <= b + c && b <= a + c && c <= a + b && (a + b + c).is_multiple_of(2)
}

/// Memo table for the recurrence, keyed on the full tuple.
#[derive(Debug, Default, Clone)]
pub struct Recurrence {
    memo: HashMap<Vec<usize>, BigUint>,
}

impl Recurrence {
    pub fn new() -> Self {
        Self::default()
    }

    /// `N(m_1, ..., m_k)`.
    pub fn value(&mut self, d: &[usize]) -> CountValue {
        CountValue(self.eval(d))
    }

    fn eval(&mut self, d: &[usize]) -> BigUint {
        match d {
            [] => BigUint::zero(),
            [m1] => {
                if *m1 == 0 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            }
            _ if d.iter().sum::<usize>() % 2 == 1 => BigUint::zero(),
            _ => {
                if let Some(v) = self.memo.get(d) {
                    return v.clone();
                }
                let k = d.len();
                let (a, b) = (d[k - 2], d[k - 1]);
                let mut prefix = d[..k - 1].to_vec();
                let mut total = BigUint::zero();
                for mu in EvenTriangle::completions(a, b) {
                    prefix[k - 2] = mu;
                    total += self.eval(&prefix);
                }
                self.memo.insert(d.to_vec(), total.clone());
                total
            }
        }
    }
}

/// `N(m_1, ..., m_n)` from the even-triangle recurrence; `d` must be
/// non-empty.
pub fn n_recurrence(d: &Multidegree) -> CountValue {
    Recurrence::new().value(d.degrees())
}

/// `rho(n, m)` as the 2x2 binomial determinant
/// `C(m+n-1,n-1) C(m+n-2,n-2) - C(m+n-2,n-1) C(m+n-1,n-2)`.
///
/// `n = 1` gives 1 for `m = 0` and 0 otherwise; `m = 0` gives 1.
pub fn rho_closed(n: usize, m: usize) -> CountValue {
    if n == 0 {
        return CountValue::zero();
    }
    if n == 1 {
        return if m == 0 { CountValue::one() } else { CountValue::zero() };
    }
    let (n, m) = (n as u64, m as u64);
    let big = |k, l| BigInt::from(binomial_big(k, l));
    let det = big(m + n - 1, n - 1) * big(m + n - 2, n - 2)
        - big(m + n - 2, n - 1) * big(m + n - 1, n - 2);
    CountValue(
        det.to_biguint()
            .expect("the binomial determinant is nonnegative"),
    )
}

/// `rho(n, m)` as `(m+1)(m+n-1) prod_{t=2}^{n-2} (m+t)^2 / ((n-1)! (n-2)!)`.
pub fn rho_product(n: usize, m: usize) -> Result<CountValue> {
    if n < 3 {
        return Err(Error::Domain { n, min: 3 });
    }
    let (n, m) = (n as u64, m as u64);
    let mut numerator = BigUint::from(m + 1) * BigUint::from(m + n - 1);
    for t in 2..=n - 2 {
        let f = BigUint::from(m + t);
        numerator *= &f * &f;
    }
    let factorial = |k: u64| (1..=k).fold(BigUint::one(), |acc, t| acc * t);
    let denominator = factorial(n - 1) * factorial(n - 2);
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "product formula numerator not divisible at n={n}, m={m}"
    );
    Ok(CountValue(q))
}

/// Ordered `parts`-tuples of nonnegative integers summing to `total`, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Compositions {
    let current = if parts == 0 {
        (total == 0).then(Vec::new)
    } else {
        let mut v = vec![0; parts];
        v[parts - 1] = total;
        Some(v)
    };
    Compositions { current }
}

#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Multidegree;

    fn next(&mut self) -> Option<Multidegree> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut suffix = if k > 0 { next[k - 1] } else { 0 };
        let mut advanced = false;
        for i in (0..k.saturating_sub(1)).rev() {
            if suffix > 0 {
                next[i] += 1;
                for slot in &mut next[i + 1..] {
                    *slot = 0;
                }
                next[k - 1] = suffix - 1;
                advanced = true;
                break;
            }
            suffix += next[i];
        }
        if advanced {
            self.current = Some(next);
        }
        Some(Multidegree::new(cur))
    }
}

/// `sum over m_1 + ... + m_n = 2m` of `N(m_1, ..., m_n)`.
pub fn rho_sum_over_compositions(n: usize, m: usize) -> CountValue {
    let mut table = Recurrence::new();
    compositions(2 * m, n)
        .map(|d| table.value(d.degrees()))
        .sum()
}

/// Number of valence schemes (all multigraphs) with `m` edges on `n` vertices.
pub fn valence_scheme_count(n: usize, m: usize) -> CountValue {
    let edges = (n * n.saturating_sub(1) / 2) as u64;
    if edges == 0 {
        return if m == 0 { CountValue::one() } else { CountValue::zero() };
    }
    binomial(edges + m as u64 - 1, m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[usize]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(9, 0), 1);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(60, 30), 118264581564861424u64);
    }

    #[test]
    fn even_triangle_examples() {
        assert!(even_triangle(1, 1, 0));
        assert!(!even_triangle(1, 1, 1));
        assert!(!even_triangle(2, 5, 1));
        assert_eq!(EvenTriangle::completions(3, 1).collect::<Vec<_>>(), [2, 4]);
        assert_eq!(EvenTriangle::completions(2, 2).collect::<Vec<_>>(), [0, 2, 4]);
        assert!(EvenTriangle::new(2, 2, 3).is_none());
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(n_recurrence(&md(&[0])), 1);
        assert_eq!(n_recurrence(&md(&[3])), 0);
        assert_eq!(n_recurrence(&md(&[1, 2])), 0);
        assert_eq!(n_recurrence(&md(&[2, 2])), 1);
        assert_eq!(n_recurrence(&md(&[1, 1, 1, 1])), 2);
        assert_eq!(n_recurrence(&md(&[2, 2, 1, 1])), 2);
        assert_eq!(n_recurrence(&md(&[1, 1, 1])), 0);
    }

    #[test]
    fn rho_closed_examples() {
        assert_eq!(rho_closed(2, 5), 1);
        assert_eq!(rho_closed(3, 1), 3);
        assert_eq!(rho_closed(4, 2), 20);
        assert_eq!(rho_closed(7, 0), 1);
        assert_eq!(rho_closed(1, 0), 1);
        assert_eq!(rho_closed(1, 3), 0);
    }

    #[test]
    fn rho_product_examples() {
        assert_eq!(rho_product(3, 2).unwrap(), 6);
        assert_eq!(rho_product(4, 2).unwrap(), 20);
        assert_eq!(rho_product(3, 0).unwrap(), 1);
        assert_eq!(rho_product(2, 4), Err(Error::Domain { n: 2, min: 3 }));
    }

    #[test]
    fn composition_examples() {
        let got: Vec<_> = compositions(2, 2).map(Multidegree::into_inner).collect();
        assert_eq!(got, [vec![0, 2], vec![1, 1], vec![2, 0]]);
        let got: Vec<_> = compositions(0, 3).map(Multidegree::into_inner).collect();
        assert_eq!(got, [vec![0, 0, 0]]);
        assert_eq!(compositions(4, 2).count(), 5);
        assert_eq!(compositions(3, 1).count(), 1);
        assert_eq!(compositions(0, 0).count(), 1);
        assert_eq!(compositions(2, 0).count(), 0);
        let all: Vec<_> = compositions(6, 4).collect();
        assert_eq!(all.len(), 84);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rho_sum_examples() {
        assert_eq!(rho_sum_over_compositions(4, 1), 6);
        assert_eq!(rho_sum_over_compositions(2, 3), 1);
        assert_eq!(rho_sum_over_compositions(3, 2), 6);
    }

    #[test]
    fn valence_scheme_counts() {
        assert_eq!(valence_scheme_count(4, 2), 21);
        assert_eq!(valence_scheme_count(2, 3), 1);
        assert_eq!(valence_scheme_count(1, 0), 1);
        assert_eq!(valence_scheme_count(1, 1), 0);
    }
}

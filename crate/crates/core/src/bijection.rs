//! The vertex-merge map `psi` and its section on Rumer diagrams.
//!
//! `psi` takes a scheme on `n+1` atoms, deletes the bonds joining `n` and
//! `n+1`, and slides the remaining bonds at `n+1` over to `n`. Restricted to
//! Rumer diagrams of multidegree `(m_1, ..., m_{n+1})` it is a bijection onto
//! the union of the Rumer diagrams of multidegree `(m_1, ..., m_{n-1}, mu)`
//! over all `mu` forming an even triangle with `m_n` and `m_{n+1}`, which is
//! exactly the shape of the counting recurrence.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::counting::{binomial, even_triangle, EvenTriangle};
use crate::diagram::{
    enumerate_rumer_by_multidegree, enumerate_schemes_by_multidegree, Edge, Multidegree,
    RumerDiagram, ValenceScheme,
};
use crate::{Error, Result};

/// Image of a scheme under `psi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiResult {
    pub scheme: ValenceScheme,
    /// Degree of the merged vertex `n`.
    pub mu_n: usize,
    /// Number of `(n, n+1)` bonds removed.
    pub m_join: usize,
}

pub fn psi(g: &ValenceScheme) -> Result<PsiResult> {
    let top = g.n();
    if top < 2 {
        return Err(Error::Precondition(
            "psi needs a scheme on at least two vertices".into(),
        ));
    }
    let n = top - 1;
    let join = Edge::new(n, top)?;
    let mut m_join = 0;
    let mut edges = Vec::with_capacity(g.size());
    for e in g.edges() {
        if *e == join {
            m_join += 1;
        } else if e.j() == top {
            edges.push(Edge::new(e.i(), n)?);
        } else {
            edges.push(*e);
        }
    }
    let scheme = ValenceScheme::new(n, edges)?;
    let mu_n = scheme.multidegree().degrees()[n - 1];
    let degrees = g.multidegree();
    let (m_n, m_top) = (degrees.degrees()[n - 1], degrees.degrees()[top - 1]);
    debug_assert_eq!(mu_n + 2 * m_join, m_n + m_top);
    debug_assert!(even_triangle(m_n, m_top, mu_n));
    Ok(PsiResult {
        scheme,
        mu_n,
        m_join,
    })
}

/// The unique Rumer preimage of `g` under `psi` with degrees `m_n` at `n`
/// and `m_next` at the new vertex `n+1`.
///
/// The bond-ends at `n` are ordered clockwise from vertex 1 (ascending other
/// endpoint); the first `m_next - r` move to `n+1`, the rest stay, and `r`
/// bonds `(n, n+1)` are added, where `r = (m_n + m_next - mu_n) / 2`.
pub fn psi_section(g: &RumerDiagram, m_n: usize, m_next: usize) -> Result<RumerDiagram> {
    let n = g.n();
    let mu = g.scheme().multidegree().degrees()[n - 1];
    if !even_triangle(m_n, m_next, mu) {
        return Err(Error::Precondition(format!(
            "({m_n}, {m_next}, {mu}) is not an even triangle"
        )));
    }
    let r = (m_n + m_next - mu) / 2;
    let moved = m_next - r;
    let top = n + 1;
    let mut edges = Vec::with_capacity(g.edges().len() + r);
    let mut seen_at_n = 0;
    for e in g.edges() {
        if e.j() == n {
            if seen_at_n < moved {
                edges.push(Edge::new(e.i(), top)?);
            } else {
                edges.push(*e);
            }
            seen_at_n += 1;
        } else {
            edges.push(*e);
        }
    }
    edges.extend(std::iter::repeat_n(Edge::new(n, top)?, r));
    let scheme = ValenceScheme::new(top, edges)?;
    RumerDiagram::new(scheme).map_err(|e| Error::Internal(format!("section is not Rumer: {e}")))
}

/// Outcome of [`verify_psi_bijection`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub multidegree: Multidegree,
    pub bijection_ok: bool,
    pub rumer_count: usize,
    pub target_count: usize,
    pub schemes_checked: usize,
    pub counterexamples: Vec<String>,
}

/// Checks on the multidegree `d = (m_1, ..., m_{n+1})` that `psi` is
/// injective on Rumer diagrams, lands on Rumer diagrams in the even-triangle
/// union, hits all of it, and is inverted by [`psi_section`]; and that over
/// all valence schemes the fibre over `G` has at most `C(mu_n, m_{n+1} - r)`
/// elements.
pub fn verify_psi_bijection(d: &Multidegree) -> Result<BijectionReport> {
    let k = d.len();
    if k < 2 {
        return Err(Error::Precondition(
            "the merge map needs at least two vertices".into(),
        ));
    }
    let degrees = d.degrees();
    let (m_n, m_next) = (degrees[k - 2], degrees[k - 1]);
    let mut bad = Vec::new();

    let rumer = enumerate_rumer_by_multidegree(d);
    let mut image: BTreeSet<ValenceScheme> = BTreeSet::new();
    for h in &rumer {
        let p = psi(h.scheme())?;
        let r = p.m_join;
        if !even_triangle(m_n, m_next, p.mu_n) || p.mu_n + 2 * r != m_n + m_next {
            bad.push(format!("{h}: degree bookkeeping mu={} r={r}", p.mu_n));
        }
        let Ok(g) = RumerDiagram::new(p.scheme.clone()) else {
            bad.push(format!("{h}: image {} is not Rumer", p.scheme));
            continue;
        };
        match psi_section(&g, m_n, m_next) {
            Ok(back) if back == *h => {}
            Ok(back) => bad.push(format!("{h}: section of {g} gives {back}")),
            Err(e) => bad.push(format!("{h}: section of {g} failed: {e}")),
        }
        if !image.insert(p.scheme) {
            bad.push(format!("{h}: image {g} already hit"));
        }
    }

    let mut target: BTreeSet<ValenceScheme> = BTreeSet::new();
    for mu in EvenTriangle::completions(m_n, m_next) {
        let mut reduced = degrees[..k - 1].to_vec();
        reduced[k - 2] = mu;
        for g in enumerate_rumer_by_multidegree(&Multidegree::new(reduced)) {
            target.insert(g.into_scheme());
        }
    }
    for g in target.difference(&image) {
        bad.push(format!("{g}: not in the image"));
    }
    for g in image.difference(&target) {
        bad.push(format!("{g}: image outside the even-triangle union"));
    }

    let schemes = enumerate_schemes_by_multidegree(d);
    let mut fibres: BTreeMap<ValenceScheme, (usize, usize, usize)> = BTreeMap::new();
    for s in &schemes {
        let p = psi(s)?;
        fibres.entry(p.scheme).or_insert((0, p.mu_n, p.m_join)).0 += 1;
    }
    for (g, (size, mu, r)) in &fibres {
        let bound = binomial(*mu as u64, (m_next - r) as u64);
        if bound < *size as u64 {
            bad.push(format!("{g}: fibre of size {size} exceeds C({mu},{})", m_next - r));
        }
    }

    Ok(BijectionReport {
        multidegree: d.clone(),
        bijection_ok: bad.is_empty(),
        rumer_count: rumer.len(),
        target_count: target.len(),
        schemes_checked: schemes.len(),
        counterexamples: bad,
    })
}

//! Brute-force references that share no code with the library's search,
//! crossing test or counting formulas.

#![allow(dead_code)]

/// Two chords cross iff exactly one endpoint of the second lies strictly
/// inside the first, with all four endpoints distinct.
pub fn chords_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    let distinct = a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1;
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |v: usize| lo < v && v < hi;
    distinct && (inside(b.0) != inside(b.1))
}

/// All multisets of `m` chords on `n` points, as sorted vectors of pairs,
/// produced by plain odometer counting over chord indices.
pub fn all_multisets(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    let mut chords = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            chords.push((i, j));
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        out.push(Vec::new());
        return out;
    }
    if chords.is_empty() {
        return out;
    }
    let mut idx = vec![0usize; m];
    loop {
        if idx.windows(2).all(|w| w[0] <= w[1]) {
            out.push(idx.iter().map(|&k| chords[k]).collect());
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < chords.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

pub fn degrees(n: usize, chords: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(a, b) in chords {
        d[a - 1] += 1;
        d[b - 1] += 1;
    }
    d
}

pub fn non_crossing(chords: &[(usize, usize)]) -> bool {
    for (k, a) in chords.iter().enumerate() {
        for b in &chords[k + 1..] {
            if chords_cross(*a, *b) {
                return false;
            }
        }
    }
    true
}

pub fn brute_rumer(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    all_multisets(n, m)
        .into_iter()
        .filter(|c| non_crossing(c))
        .collect()
}

pub fn brute_rumer_by_degrees(d: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let total: usize = d.iter().sum();
    if total % 2 == 1 {
        return Vec::new();
    }
    all_multisets(d.len(), total / 2)
        .into_iter()
        .filter(|c| degrees(d.len(), c) == d && non_crossing(c))
        .collect()
}

/// Catalan numbers from the convolution `C_{k+1} = sum C_i C_{k-i}`.
pub fn catalan(m: usize) -> u64 {
    let mut c = vec![1u64];
    for k in 0..m {
        c.push((0..=k).map(|i| c[i] * c[k - i]).sum());
    }
    c[m]
}

/// All ordered `parts`-tuples summing to `total`, by recursion.
pub fn tuples(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in tuples(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

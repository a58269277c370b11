//! Reference implementations used only by tests. None of them call into the
//! crate's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

/// All permutations of `1..=n` in one-line notation.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q: Vec<usize> = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Positions `i` with `p(i) > p(i + 1)`.
pub fn right_descents(p: &[usize]) -> BTreeSet<usize> {
    (1..p.len()).filter(|&i| p[i - 1] > p[i]).collect()
}

/// Pairs of values `(a, b)`, `a < b`, appearing in decreasing order.
pub fn inversions(p: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                out.insert((p[j], p[i]));
            }
        }
    }
    out
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        q[v - 1] = i + 1;
    }
    q
}

/// `v ≤_L w` iff the inversion set of `v^{-1}` is contained in that of `w^{-1}`.
pub fn left_le(v: &[usize], w: &[usize]) -> bool {
    inversions(&inverse(v)).is_subset(&inversions(&inverse(w)))
}

/// `v ≤_R w` iff the value inversions of `v` are contained in those of `w`.
pub fn right_le(v: &[usize], w: &[usize]) -> bool {
    inversions(v).is_subset(&inversions(w))
}

/// Descent-free pairs, counted directly.
pub fn count_descent_free_pairs(n: usize) -> u64 {
    let ds: Vec<BTreeSet<usize>> = permutations(n).iter().map(|p| right_descents(p)).collect();
    let mut count = 0;
    for a in &ds {
        for b in &ds {
            if a.is_disjoint(b) {
                count += 1;
            }
        }
    }
    count
}

/// The words equal to `word` in the positive braid monoid, found by applying
/// braid relations in both directions until nothing new appears.
pub fn braid_class(word: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::from([word.to_vec()]);
    seen.insert(word.to_vec());
    while let Some(w) = queue.pop_front() {
        let mut next = Vec::new();
        for k in 0..w.len().saturating_sub(1) {
            if w[k].abs_diff(w[k + 1]) >= 2 {
                let mut v = w.clone();
                v.swap(k, k + 1);
                next.push(v);
            }
        }
        for k in 0..w.len().saturating_sub(2) {
            if w[k] == w[k + 2] && w[k].abs_diff(w[k + 1]) == 1 {
                let mut v = w.clone();
                v[k] = w[k + 1];
                v[k + 1] = w[k];
                v[k + 2] = w[k + 1];
                next.push(v);
            }
        }
        for v in next {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// All words of length `len` in the letters `1..n`.
pub fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (1..n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..other.cols {
                        out.data[i * other.cols + j] += a * other.get(k, j);
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &IntMatrix, c: i64) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }
}

/// Rank over the rationals by fraction-free elimination on `i128`.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    for x in &mut m[i] {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `Λ_n` acting on `V = ⊕_{i=1}^n K[x]/(x^i)`: a path from `i` to `j` acts as
/// a map `V_j -> V_i`, with `α_i: V_{i+1} -> V_i` the projection and
/// `β_i: V_{i-1} -> V_i` multiplication by `x`. Paths compose left to right.
pub struct TruncatedPolynomials {
    pub n: usize,
    offsets: Vec<usize>,
}

impl TruncatedPolynomials {
    pub fn new(n: usize) -> Self {
        let mut offsets = vec![0];
        for i in 1..=n {
            offsets.push(offsets[i - 1] + i);
        }
        TruncatedPolynomials { n, offsets }
    }

    pub fn size(&self) -> usize {
        self.offsets[self.n]
    }

    /// The valley path `source -> valley -> target`.
    pub fn path(&self, source: usize, valley: usize, target: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.size(), self.size());
        for k in 0..source {
            m.set(self.offsets[source - 1] + k, self.offsets[source - 1] + k, 1);
        }
        let mut current = source;
        for _ in valley..source {
            m = m.mul(&self.beta(current));
            current -= 1;
        }
        for _ in valley..target {
            m = m.mul(&self.alpha(current));
            current += 1;
        }
        m
    }

    fn alpha(&self, i: usize) -> IntMatrix {
        // V_{i+1} -> V_i, x^k -> x^k for k < i
        let mut m = IntMatrix::zeros(self.size(), self.size());
        for k in 0..i {
            m.set(self.offsets[i - 1] + k, self.offsets[i] + k, 1);
        }
        m
    }

    fn beta(&self, i: usize) -> IntMatrix {
        // V_{i-1} -> V_i, x^k -> x^{k+1}
        let mut m = IntMatrix::zeros(self.size(), self.size());
        for k in 0..i - 1 {
            m.set(self.offsets[i - 1] + k + 1, self.offsets[i - 2] + k, 1);
        }
        m
    }
}

/// The inverse of the Cartan matrix `C_{ij} = min(i, j)`: tridiagonal with
/// `2` on the diagonal except `1` in the last entry, and `-1` off it.
pub fn cartan_inverse(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = if i + 1 == n { 1 } else { 2 };
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

/// `χ(M, N) = d(M)^T C^{-1} d(N)`.
pub fn euler_form(d: &[i64], e: &[i64]) -> i64 {
    let c = cartan_inverse(d.len());
    let mut total = 0;
    for i in 0..d.len() {
        for j in 0..e.len() {
            total += d[i] * c[i][j] * e[j];
        }
    }
    total
}

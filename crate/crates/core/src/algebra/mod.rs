//! The Auslander algebra `Λ_n` of `K[x]/(x^n)` as a quiver with relations.
//!
//! The quiver is the double of the linear quiver `1 - 2 - ... - n` with
//! arrows `α_i: i -> i+1` and `β_i: i -> i-1`. Paths compose left to right.
//! The relations are `α_1 β_2 = 0` and `α_i β_{i+1} = β_i α_{i-1}` for
//! `1 < i < n`.
//!
//! Rewriting `α_i β_{i+1} -> β_i α_{i-1}` and `α_1 β_2 -> 0` pushes every
//! descent to the front of a path. The irreducible paths are "valleys": walk
//! down from `i` to `k` and then up to `j`, written `(i, k, j)` with
//! `1 <= k <= min(i, j)`. These form a basis, and since the two rules never
//! overlap the rewriting is confluent.

mod hom;
mod ideal;
mod module;
mod resolution;

use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

pub use hom::{
    endomorphism_radical_dim, find_isomorphism, hom_dim, hom_space, is_isomorphic, is_isomorphic_with_seed,
    is_local, iso_seed, set_iso_seed, DEFAULT_ISO_SEED,
};
pub(crate) use ideal::left_mult_on_summands;
pub use ideal::{ideal_summand_module, tensor_with_ideal, Ideal};
pub use module::{LeftModule, ModuleMap, RightModule};
pub use resolution::{
    ext1_by_cocycles, ext_dim, extension_by_cocycle, extension_cocycles, nonsplit_pushout, projective_cover,
    projective_resolution, Cocycles, ProjectiveMap, Resolution,
};

/// An element of `Λ_n` as coordinates in the path basis.
pub type Element = Vec<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowKind {
    Alpha,
    Beta,
}

/// `α_i: i -> i+1` or `β_i: i -> i-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub index: usize,
}

impl Arrow {
    pub fn alpha(i: usize) -> Self {
        Arrow { kind: ArrowKind::Alpha, index: i }
    }

    pub fn beta(i: usize) -> Self {
        Arrow { kind: ArrowKind::Beta, index: i }
    }

    pub fn source(self) -> usize {
        self.index
    }

    pub fn target(self) -> usize {
        match self.kind {
            ArrowKind::Alpha => self.index + 1,
            ArrowKind::Beta => self.index - 1,
        }
    }

    /// The arrow with the opposite orientation under `α_i <-> β_{i+1}`.
    pub fn opposite(self) -> Self {
        match self.kind {
            ArrowKind::Alpha => Arrow::beta(self.index + 1),
            ArrowKind::Beta => Arrow::alpha(self.index - 1),
        }
    }

    /// Short name used in serialized modules: `a1`, `b2`, ...
    pub fn name(self) -> String {
        match self.kind {
            ArrowKind::Alpha => format!("a{}", self.index),
            ArrowKind::Beta => format!("b{}", self.index),
        }
    }
}

/// A valley path `(source, valley, target)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisPath {
    pub source: usize,
    pub valley: usize,
    pub target: usize,
}

impl BasisPath {
    pub fn len(self) -> usize {
        (self.source - self.valley) + (self.target - self.valley)
    }

    pub fn is_trivial(self) -> bool {
        self.len() == 0
    }

    /// The arrows along the path, in order.
    pub fn arrows(self) -> Vec<Arrow> {
        let down = (self.valley + 1..=self.source).rev().map(Arrow::beta);
        let up = (self.valley..self.target).map(Arrow::alpha);
        down.chain(up).collect()
    }
}

impl fmt::Display for BasisPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "e{}", self.source);
        }
        let names: Vec<String> = self.arrows().into_iter().map(Arrow::name).collect();
        write!(f, "{}", names.join("."))
    }
}

/// A relation `Σ c · (first then second)` among paths of length two.
#[derive(Clone, Debug)]
pub struct Relation {
    pub vertex: usize,
    pub terms: Vec<(i64, Arrow, Arrow)>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct Algebra {
    n: usize,
    basis: Vec<BasisPath>,
    /// `offsets[i][j]` is the first basis index of `e_i Λ e_j`.
    offsets: Vec<Vec<usize>>,
    arrows: Vec<Arrow>,
}

impl Algebra {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let mut basis = Vec::new();
        let mut offsets = vec![vec![0; n + 1]; n + 1];
        for i in 1..=n {
            for j in 1..=n {
                offsets[i][j] = basis.len();
                for k in 1..=i.min(j) {
                    basis.push(BasisPath { source: i, valley: k, target: j });
                }
            }
        }
        let arrows = (1..n).map(Arrow::alpha).chain((2..=n).map(Arrow::beta)).collect();
        Ok(Algebra { n, basis, offsets, arrows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Position of an arrow in [`Algebra::arrows`].
    pub fn arrow_position(&self, a: Arrow) -> usize {
        match a.kind {
            ArrowKind::Alpha => a.index - 1,
            ArrowKind::Beta => self.n - 1 + a.index - 2,
        }
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        Ok(())
    }

    /// Basis indices of `e_i Λ e_j`, ordered by valley.
    pub fn block(&self, i: usize, j: usize) -> Range<usize> {
        let start = self.offsets[i][j];
        start..start + i.min(j)
    }

    pub fn index_of(&self, p: BasisPath) -> usize {
        self.offsets[p.source][p.target] + p.valley - 1
    }

    pub fn arrow_index(&self, a: Arrow) -> usize {
        let valley = a.source().min(a.target());
        self.index_of(BasisPath { source: a.source(), valley, target: a.target() })
    }

    pub fn idempotent_index(&self, i: usize) -> usize {
        self.index_of(BasisPath { source: i, valley: i, target: i })
    }

    /// Product of two basis paths, `None` when it vanishes.
    pub fn mul_basis(&self, p: usize, q: usize) -> Option<usize> {
        let (p, q) = (self.basis[p], self.basis[q]);
        if p.target != q.source {
            return None;
        }
        // climbing to p.target and descending to q.valley equals descending
        // by the same amount first
        let valley = (p.valley + q.valley).checked_sub(p.target).filter(|&k| k >= 1)?;
        Some(self.index_of(BasisPath { source: p.source, valley, target: q.target }))
    }

    pub fn zero(&self) -> Element {
        vec![Rational::zero(); self.dim()]
    }

    pub fn one(&self) -> Element {
        let mut x = self.zero();
        for i in 1..=self.n {
            x[self.idempotent_index(i)] = Rational::one();
        }
        x
    }

    pub fn basis_element(&self, p: usize) -> Element {
        let mut x = self.zero();
        x[p] = Rational::one();
        x
    }

    pub fn idempotent(&self, i: usize) -> Element {
        self.basis_element(self.idempotent_index(i))
    }

    pub fn arrow_element(&self, a: Arrow) -> Element {
        self.basis_element(self.arrow_index(a))
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Element {
        let mut out = self.zero();
        for (p, cp) in x.iter().enumerate() {
            if cp.is_zero() {
                continue;
            }
            for (q, cq) in y.iter().enumerate() {
                if cq.is_zero() {
                    continue;
                }
                if let Some(r) = self.mul_basis(p, q) {
                    out[r] += &(cp * cq);
                }
            }
        }
        out
    }

    /// The defining relations, one per vertex below `n`.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        if self.n >= 2 {
            out.push(Relation { vertex: 1, terms: vec![(1, Arrow::alpha(1), Arrow::beta(2))] });
        }
        for i in 2..self.n {
            out.push(Relation {
                vertex: i,
                terms: vec![(1, Arrow::alpha(i), Arrow::beta(i + 1)), (-1, Arrow::beta(i), Arrow::alpha(i - 1))],
            });
        }
        out
    }

    /// Matrix of `x -> x·y` from `e_i Λ e_s` to `e_i Λ e_t`, in path coordinates.
    pub fn right_mult_block(&self, i: usize, s: usize, t: usize, y: &[Rational]) -> Matrix {
        let (src, dst) = (self.block(i, s), self.block(i, t));
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (col, p) in src.clone().enumerate() {
            for q in self.block(s, t) {
                if y[q].is_zero() {
                    continue;
                }
                if let Some(r) = self.mul_basis(p, q) {
                    m[(r - dst.start, col)] += &y[q];
                }
            }
        }
        m
    }

    /// Matrix of `y -> x·y` from `e_v Λ e_j` to `e_u Λ e_j` for `x` in `e_u Λ e_v`.
    pub fn left_mult_block(&self, x: &[Rational], u: usize, v: usize, j: usize) -> Matrix {
        let (src, dst) = (self.block(v, j), self.block(u, j));
        let mut m = Matrix::zeros(dst.len(), src.len());
        for p in self.block(u, v) {
            if x[p].is_zero() {
                continue;
            }
            for (col, q) in src.clone().enumerate() {
                if let Some(r) = self.mul_basis(p, q) {
                    m[(r - dst.start, col)] += &x[p];
                }
            }
        }
        m
    }

    /// The component `e_u x e_v`.
    pub fn restrict(&self, x: &[Rational], u: usize, v: usize) -> Element {
        let mut out = self.zero();
        for p in self.block(u, v) {
            out[p] = x[p].clone();
        }
        out
    }

    /// The anti-involution fixing vertices and swapping `α_i <-> β_{i+1}`.
    pub fn involution(&self, x: &[Rational]) -> Element {
        let mut out = self.zero();
        for (p, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = self.basis[p];
            // reversing a valley path gives the valley path with ends swapped
            let q = self.index_of(BasisPath { source: b.target, valley: b.valley, target: b.source });
            out[q] = c.clone();
        }
        out
    }
}

/// `Λ_n` for `n >= 1`.
pub fn build_algebra(n: usize) -> Result<std::sync::Arc<Algebra>> {
    Ok(std::sync::Arc::new(Algebra::new(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for n in 1..=6 {
            let a = Algebra::new(n).unwrap();
            assert_eq!(a.dim(), n * (n + 1) * (2 * n + 1) / 6);
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(a.block(i, j).len(), i.min(j));
                }
            }
        }
        assert_eq!(Algebra::new(3).unwrap().dim(), 14);
        assert!(Algebra::new(1).unwrap().arrows().is_empty());
    }

    #[test]
    fn relations_hold() {
        let a = Algebra::new(4).unwrap();
        let path = |arrows: &[Arrow]| {
            arrows.iter().skip(1).fold(a.arrow_element(arrows[0]), |acc, &b| a.mul(&acc, &a.arrow_element(b)))
        };
        assert_eq!(path(&[Arrow::alpha(1), Arrow::beta(2)]), a.zero());
        for i in 2..4 {
            assert_eq!(path(&[Arrow::alpha(i), Arrow::beta(i + 1)]), path(&[Arrow::beta(i), Arrow::alpha(i - 1)]));
        }
        // the loop at 1 through 3 vanishes as well
        assert_eq!(path(&[Arrow::alpha(1), Arrow::alpha(2), Arrow::beta(3), Arrow::beta(2)]), a.zero());
        // a valley path is the product of its arrows
        for (p, b) in a.basis().iter().enumerate() {
            if !b.is_trivial() {
                assert_eq!(path(&b.arrows()), a.basis_element(p));
            }
        }
    }

    #[test]
    fn associativity_and_unit() {
        for n in 1..=4 {
            let a = Algebra::new(n).unwrap();
            let d = a.dim();
            for p in 0..d {
                let x = a.basis_element(p);
                assert_eq!(a.mul(&a.one(), &x), x);
                assert_eq!(a.mul(&x, &a.one()), x);
                for q in 0..d {
                    for r in 0..d {
                        let left = a.mul_basis(p, q).and_then(|pq| a.mul_basis(pq, r));
                        let right = a.mul_basis(q, r).and_then(|qr| a.mul_basis(p, qr));
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn involution_reverses_products() {
        let a = Algebra::new(4).unwrap();
        for p in 0..a.dim() {
            for q in 0..a.dim() {
                let (x, y) = (a.basis_element(p), a.basis_element(q));
                assert_eq!(a.involution(&a.mul(&x, &y)), a.mul(&a.involution(&y), &a.involution(&x)));
            }
        }
    }

    #[test]
    fn two_cycle_at_one_vanishes() {
        let a = Algebra::new(2).unwrap();
        let x = a.mul(&a.arrow_element(Arrow::alpha(1)), &a.arrow_element(Arrow::beta(2)));
        assert_eq!(x, a.zero());
    }
}

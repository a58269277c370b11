//! The symmetric group `S_n` in one-line notation: lengths, descents, reduced
//! words and the two weak orders.
//!
//! Products are composition of functions, `(v * w)(k) = v(w(k))`. With this
//! convention right multiplication by `s_i` swaps the entries in positions
//! `i, i+1` and left multiplication swaps the values `i, i+1`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeOp {
    Join,
    Meet,
}

/// A set of generator indices `{1, ..., n-1}` stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSet(u64);

impl DescentSet {
    pub fn empty() -> Self {
        DescentSet(0)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: DescentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: DescentSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn difference(self, other: DescentSet) -> DescentSet {
        DescentSet(self.0 & !other.0)
    }

    pub fn intersection(self, other: DescentSet) -> DescentSet {
        DescentSet(self.0 & other.0)
    }

    /// Smallest element.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..64).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for DescentSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = DescentSet::empty();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

/// A permutation of `{1, ..., n}` in one-line notation, `w(i) = word[i-1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] || n > u8::MAX as usize {
                return Err(Error::InvalidPermutation { n, word });
            }
            seen[x] = true;
        }
        Ok(Permutation { word: word.into_iter().map(|x| x as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation { word: (1..=n as u8).collect() }
    }

    /// The longest element `w_0 = [n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        assert!(n >= 1);
        Permutation { word: (1..=n as u8).rev().collect() }
    }

    /// The simple transposition `s_i` of `i` and `i+1`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorOutOfRange { index: i, n });
        }
        let mut w = Permutation::identity(n);
        w.word.swap(i - 1, i);
        Ok(w)
    }

    /// The product `s_{i_1} * ... * s_{i_k}`.
    pub fn from_word(n: usize, generators: &[usize]) -> Result<Self> {
        let mut w = Permutation::identity(n);
        for &i in generators {
            if i == 0 || i >= n {
                return Err(Error::GeneratorOutOfRange { index: i, n });
            }
            w.word.swap(i - 1, i);
        }
        Ok(w)
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut word: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation { word: word.clone() });
            // next lexicographic permutation
            let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
                break;
            };
            let j = (i..word.len()).rev().find(|&j| word[j] > word[i - 1]).unwrap();
            word.swap(i - 1, j);
            word[i..].reverse();
        }
        out
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&x| x as usize).collect()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(k, &x)| x as usize == k + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (k, &x) in self.word.iter().enumerate() {
            inv[x as usize - 1] = (k + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// `self * other`, i.e. `k -> self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_rank(other)?;
        Ok(Permutation { word: other.word.iter().map(|&k| self.word[k as usize - 1]).collect() })
    }

    /// `self * s_i` (swap positions).
    pub fn mul_simple_right(&self, i: usize) -> Permutation {
        let mut w = self.clone();
        w.word.swap(i - 1, i);
        w
    }

    /// `s_i * self` (swap values).
    pub fn mul_simple_left(&self, i: usize) -> Permutation {
        let mut w = self.clone();
        for x in &mut w.word {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        w
    }

    pub(crate) fn check_rank(&self, other: &Permutation) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_descent(&self, i: usize, side: Side) -> bool {
        if i == 0 || i >= self.n() {
            return false;
        }
        match side {
            Side::Right => self.word[i - 1] > self.word[i],
            // s_i w < w iff i+1 stands left of i
            Side::Left => {
                let pos = |v: usize| self.word.iter().position(|&x| x as usize == v).unwrap();
                pos(i + 1) < pos(i)
            }
        }
    }

    pub fn descents(&self, side: Side) -> DescentSet {
        match side {
            Side::Right => (1..self.n()).filter(|&i| self.word[i - 1] > self.word[i]).collect(),
            Side::Left => {
                let inv = self.inverse();
                (1..self.n()).filter(|&i| inv.word[i - 1] > inv.word[i]).collect()
            }
        }
    }

    /// The lexicographically smallest reduced word, found by repeatedly
    /// stripping the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut out = Vec::with_capacity(self.length());
        while let Some(i) = w.descents(Side::Left).first() {
            out.push(i);
            w = w.mul_simple_left(i);
        }
        out
    }

    /// Every reduced word of `self`, in lexicographic order.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        if self.is_identity() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in self.descents(Side::Left).iter() {
            for mut tail in self.mul_simple_left(i).all_reduced_words() {
                tail.insert(0, i);
                out.push(tail);
            }
        }
        out
    }

    /// Inverted value pairs `(a, b)`, `a < b`, with `b` left of `a`, as an
    /// `n x n` boolean table. These grow along the right weak order.
    fn value_inversions(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        let pos = self.inverse();
        let mut table = vec![vec![false; n + 1]; n + 1];
        for a in 1..=n {
            for b in a + 1..=n {
                table[a][b] = pos.word[a - 1] > pos.word[b - 1];
            }
        }
        table
    }

    fn from_value_inversions(n: usize, table: &[Vec<bool>]) -> Permutation {
        // position of value a = number of values standing to its left
        let mut pos = vec![0u8; n];
        for a in 1..=n {
            let mut before = 0;
            for b in 1..=n {
                if b > a && table[a][b] || b < a && !table[b][a] {
                    before += 1;
                }
            }
            pos[a - 1] = (before + 1) as u8;
        }
        Permutation { word: pos }.inverse()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.word)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { "," } else { "" };
        let parts: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.word().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let word = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(word).map_err(serde::de::Error::custom)
    }
}

/// `v <= w` in the chosen weak order, decided by length additivity:
/// `v <=_L w` iff `l(w) = l(v) + l(w v^-1)` and `v <=_R w` iff
/// `l(w) = l(v) + l(v^-1 w)`.
pub fn weak_le(v: &Permutation, w: &Permutation, side: Side) -> Result<bool> {
    v.check_rank(w)?;
    let quotient = match side {
        Side::Left => w.compose(&v.inverse())?,
        Side::Right => v.inverse().compose(w)?,
    };
    Ok(w.length() == v.length() + quotient.length())
}

/// Join or meet in the chosen weak order. Exhaustive search up to rank 5,
/// inversion-set closure beyond.
pub fn weak_lattice_op(v: &Permutation, w: &Permutation, side: Side, op: LatticeOp) -> Result<Permutation> {
    if v.n() <= 5 {
        weak_lattice_op_exhaustive(v, w, side, op)
    } else {
        weak_lattice_op_closure(v, w, side, op)
    }
}

/// Lattice operation by scanning all of `S_n` for the extremal common bound.
pub fn weak_lattice_op_exhaustive(v: &Permutation, w: &Permutation, side: Side, op: LatticeOp) -> Result<Permutation> {
    v.check_rank(w)?;
    let le = |a: &Permutation, b: &Permutation| weak_le(a, b, side).expect("same rank");
    let bounds: Vec<Permutation> = Permutation::all(v.n())
        .into_iter()
        .filter(|u| match op {
            LatticeOp::Join => le(v, u) && le(w, u),
            LatticeOp::Meet => le(u, v) && le(u, w),
        })
        .collect();
    let best = bounds
        .iter()
        .find(|u| {
            bounds.iter().all(|b| match op {
                LatticeOp::Join => le(u, b),
                LatticeOp::Meet => le(b, u),
            })
        })
        .expect("weak order is a lattice");
    Ok(best.clone())
}

/// Lattice operation through inversion sets: the join's inversion set is the
/// transitive closure of the union, and `u -> w_0 u` reverses the right order.
pub fn weak_lattice_op_closure(v: &Permutation, w: &Permutation, side: Side, op: LatticeOp) -> Result<Permutation> {
    v.check_rank(w)?;
    match side {
        Side::Left => {
            // u -> u^-1 identifies the left order with the right order.
            Ok(weak_lattice_op_closure(&v.inverse(), &w.inverse(), Side::Right, op)?.inverse())
        }
        Side::Right => match op {
            LatticeOp::Join => Ok(right_join(v, w)),
            LatticeOp::Meet => {
                let w0 = Permutation::longest(v.n());
                let j = right_join(&w0.compose(v)?, &w0.compose(w)?);
                w0.compose(&j)
            }
        },
    }
}

fn right_join(v: &Permutation, w: &Permutation) -> Permutation {
    let n = v.n();
    let (iv, iw) = (v.value_inversions(), w.value_inversions());
    let mut table: Vec<Vec<bool>> = (0..=n).map(|a| (0..=n).map(|b| iv[a][b] || iw[a][b]).collect()).collect();
    // (a,b), (b,c) inverted with a < b < c forces (a,c)
    let mut changed = true;
    while changed {
        changed = false;
        for a in 1..=n {
            for b in a + 1..=n {
                if !table[a][b] {
                    continue;
                }
                for c in b + 1..=n {
                    if table[b][c] && !table[a][c] {
                        table[a][c] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    let u = Permutation::from_value_inversions(n, &table);
    debug_assert_eq!(u.value_inversions(), table);
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(word: &[usize]) -> Permutation {
        Permutation::new(word.to_vec()).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(Permutation::longest(5).length(), 10);
        // s_1 s_2 = [2,3,1]: inversions (1,3), (2,3)
        assert_eq!(Permutation::from_word(3, &[1, 2]).unwrap(), p(&[2, 3, 1]));
        assert_eq!(p(&[2, 3, 1]).length(), 2);
    }

    #[test]
    fn descent_sets() {
        assert!(Permutation::identity(4).descents(Side::Left).is_empty());
        assert!(Permutation::identity(4).descents(Side::Right).is_empty());
        let full: DescentSet = (1..4).collect();
        assert_eq!(Permutation::longest(4).descents(Side::Left), full);
        assert_eq!(Permutation::longest(4).descents(Side::Right), full);
        let w = p(&[2, 3, 1]);
        assert_eq!(w.descents(Side::Right).iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(w.descents(Side::Left).iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn reduced_words() {
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(Permutation::simple(3, 2).unwrap().reduced_word(), vec![2]);
        assert_eq!(Permutation::longest(3).reduced_word(), vec![1, 2, 1]);
        assert_eq!(Permutation::longest(3).all_reduced_words(), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(Permutation::longest(4).all_reduced_words().len(), 16);
    }

    #[test]
    fn weak_order_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2s1 = Permutation::from_word(3, &[2, 1]).unwrap();
        let s1s2 = Permutation::from_word(3, &[1, 2]).unwrap();
        assert!(weak_le(&s1, &s2s1, Side::Left).unwrap());
        assert!(!weak_le(&s1, &s1s2, Side::Left).unwrap());
        assert!(weak_le(&s1, &s1s2, Side::Right).unwrap());
        let w0 = Permutation::longest(3);
        assert!(!weak_le(&w0, &s1s2, Side::Right).unwrap());
        assert!(matches!(
            weak_le(&s1, &Permutation::identity(4), Side::Left),
            Err(Error::RankMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn lattice_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        for side in [Side::Left, Side::Right] {
            assert_eq!(weak_lattice_op(&s1, &s1, side, LatticeOp::Join).unwrap(), s1);
            assert_eq!(weak_lattice_op(&s1, &s2, side, LatticeOp::Join).unwrap(), Permutation::longest(3));
            assert_eq!(weak_lattice_op(&s1, &s2, side, LatticeOp::Meet).unwrap(), Permutation::identity(3));
        }
    }

    #[test]
    fn invalid_words_are_rejected() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::simple(3, 3).is_err());
    }
}

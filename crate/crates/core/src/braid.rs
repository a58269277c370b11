//! The positive braid monoid `B_n^+` in left-greedy (Garside) normal form.
//!
//! A braid is a list of simple factors, each a non-identity permutation
//! standing for its positive lift. The list is left-weighted: for adjacent
//! factors `(a, b)` every left descent of `b` is a right descent of `a`.
//! Two braids are equal exactly when their factor lists are.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::sym::{Permutation, Side};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PositiveBraid {
    n: usize,
    factors: Vec<Permutation>,
}

impl PositiveBraid {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        PositiveBraid { n, factors: Vec::new() }
    }

    /// The generator `𝔰_i`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(PositiveBraid::from_permutation(&Permutation::simple(n, i)?))
    }

    /// The positive lift of a permutation (a single simple factor).
    pub fn from_permutation(p: &Permutation) -> Self {
        let factors = if p.is_identity() { Vec::new() } else { vec![p.clone()] };
        PositiveBraid { n: p.n(), factors }
    }

    /// The Garside element `w_+`, the lift of `w_0`.
    pub fn w_plus(n: usize) -> Self {
        PositiveBraid::from_permutation(&Permutation::longest(n))
    }

    /// Normal form of the product of the lifts of `factors`, which need not be
    /// left-weighted.
    pub fn from_factors(n: usize, factors: Vec<Permutation>) -> Result<Self> {
        for f in &factors {
            if f.n() != n {
                return Err(Error::RankMismatch { left: n, right: f.n() });
            }
        }
        let mut b = PositiveBraid { n, factors };
        b.relax();
        Ok(b)
    }

    /// Normal form of the word `𝔰_{i_1} ⋯ 𝔰_{i_k}`.
    pub fn normalize(word: &[usize], n: usize) -> Result<Self> {
        let factors = word.iter().map(|&i| Permutation::simple(n, i)).collect::<Result<Vec<_>>>()?;
        PositiveBraid::from_factors(n, factors)
    }

    /// The normal form of `v̲ · w̲`.
    pub fn from_pair(v: &Permutation, w: &Permutation) -> Result<Self> {
        v.check_rank(w)?;
        PositiveBraid::from_factors(v.n(), vec![v.clone(), w.clone()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Word length, i.e. the degree in the grading of `B_+`.
    pub fn length(&self) -> usize {
        self.factors.iter().map(Permutation::length).sum()
    }

    /// A word in the generators representing `self`: the concatenated reduced
    /// words of the factors.
    pub fn word(&self) -> Vec<usize> {
        self.factors.iter().flat_map(Permutation::reduced_word).collect()
    }

    /// Membership in `[1, w_+^2]_L`, which is the set of braids with at most
    /// two normal-form factors.
    pub fn in_interval(&self) -> bool {
        self.factors.len() <= 2
    }

    /// Image in `S_n` under `𝔰_i -> s_i`.
    pub fn image(&self) -> Permutation {
        self.factors.iter().fold(Permutation::identity(self.n), |acc, f| acc.compose(f).expect("same rank"))
    }

    pub fn product(&self, other: &PositiveBraid) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let mut b = PositiveBraid { n: self.n, factors };
        b.relax();
        Ok(b)
    }

    /// `𝔰_i · self`.
    pub fn left_mul_generator(&self, i: usize) -> Result<Self> {
        let mut factors = Vec::with_capacity(self.factors.len() + 1);
        factors.push(Permutation::simple(self.n, i)?);
        factors.extend(self.factors.iter().cloned());
        let mut b = PositiveBraid { n: self.n, factors };
        b.relax();
        Ok(b)
    }

    /// The two-factor reading `(v, w)` with `self = v̲ · w̲`.
    pub fn pair_form(&self) -> Result<(Permutation, Permutation)> {
        let id = Permutation::identity(self.n);
        match self.factors.as_slice() {
            [] => Ok((id.clone(), id)),
            [a] => Ok((a.clone(), id)),
            [a, b] => Ok((a.clone(), b.clone())),
            _ => Err(Error::NotInInterval { factors: self.factors.len() }),
        }
    }

    /// The image under the anti-automorphism reversing words. A simple factor
    /// reverses to its inverse.
    pub fn reverse(&self) -> Self {
        let factors = self.factors.iter().rev().map(Permutation::inverse).collect();
        let mut b = PositiveBraid { n: self.n, factors };
        b.relax();
        b
    }

    /// `𝔰_j^{-1} · self` if `𝔰_j` left-divides `self`.
    fn strip_left_generator(&self, j: usize) -> Option<Self> {
        // the head factor is gcd(self, w_+), so 𝔰_j divides self iff it
        // divides the head
        let head = self.factors.first()?;
        if !head.is_descent(j, Side::Left) {
            return None;
        }
        let mut factors = self.factors.clone();
        factors[0] = head.mul_simple_left(j);
        let mut b = PositiveBraid { n: self.n, factors };
        b.relax();
        Some(b)
    }

    /// Restore the left-weighted condition by sliding generators from the
    /// head of each factor to the tail of its predecessor.
    fn relax(&mut self) {
        self.factors.retain(|f| !f.is_identity());
        loop {
            let mut changed = false;
            for k in 0..self.factors.len().saturating_sub(1) {
                loop {
                    let (a, b) = (&self.factors[k], &self.factors[k + 1]);
                    let movable = b.descents(Side::Left).difference(a.descents(Side::Right));
                    let Some(j) = movable.first() else { break };
                    self.factors[k] = self.factors[k].mul_simple_right(j);
                    self.factors[k + 1] = self.factors[k + 1].mul_simple_left(j);
                    changed = true;
                    if self.factors[k + 1].is_identity() {
                        break;
                    }
                }
            }
            self.factors.retain(|f| !f.is_identity());
            if !changed {
                break;
            }
        }
    }
}

impl fmt::Debug for PositiveBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}{:?}", self.n, self.factors)
    }
}

impl fmt::Display for PositiveBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl<'de> Deserialize<'de> for PositiveBraid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            factors: Vec<Permutation>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let b = PositiveBraid::from_factors(raw.n, raw.factors.clone()).map_err(serde::de::Error::custom)?;
        if b.factors != raw.factors {
            return Err(serde::de::Error::custom("factors are not in left-greedy normal form"));
        }
        Ok(b)
    }
}

/// Whether `y = z · x` for some positive `z`, i.e. `y >=_L x`.
///
/// Reversal turns this into left divisibility, which is decided by stripping
/// the generators of `x` one at a time from the head of `y`.
pub fn is_right_divisor(x: &PositiveBraid, y: &PositiveBraid) -> Result<bool> {
    is_left_divisor(&x.reverse(), &y.reverse())
}

/// Whether `y = x · z` for some positive `z`, i.e. `y >=_R x`.
pub fn is_left_divisor(x: &PositiveBraid, y: &PositiveBraid) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::RankMismatch { left: x.n, right: y.n });
    }
    if x.length() > y.length() {
        return Ok(false);
    }
    let mut rest = y.clone();
    for j in x.word() {
        match rest.strip_left_generator(j) {
            Some(r) => rest = r,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// The interval `[1, w_+^2]_L = S_+ S_+`, sorted.
pub fn interval_w2(n: usize) -> Vec<PositiveBraid> {
    let perms = Permutation::all(n);
    let mut out: Vec<PositiveBraid> = perms
        .par_iter()
        .flat_map_iter(|v| perms.iter().map(move |w| PositiveBraid::from_pair(v, w).expect("same rank")))
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// Whether `v` and `w` share no right descent.
pub fn is_descent_pair(v: &Permutation, w: &Permutation) -> bool {
    v.n() == w.n() && v.descents(Side::Right).is_disjoint(w.descents(Side::Right))
}

/// All pairs `(v, w)` in `S_n × S_n` without a common right descent.
pub fn descent_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let perms = Permutation::all(n);
    let mut out = Vec::new();
    for v in &perms {
        for w in &perms {
            if is_descent_pair(v, w) {
                out.push((v.clone(), w.clone()));
            }
        }
    }
    out
}

/// Maps a descent pair `(v, w)` to `(v̲ w̲^{-1})^{-1} w_+ = w̲ · (v^{-1} w_0)̲`
/// in `[1, w_+^2]_L`.
pub fn descent_pair_to_interval(v: &Permutation, w: &Permutation) -> Result<PositiveBraid> {
    v.check_rank(w)?;
    if let Some(d) = v.descents(Side::Right).intersection(w.descents(Side::Right)).first() {
        return Err(Error::CommonRightDescent { descent: d });
    }
    let complement = v.inverse().compose(&Permutation::longest(v.n()))?;
    PositiveBraid::from_pair(w, &complement)
}

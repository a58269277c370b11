//! The sequences `c_n = n!`, `t_n` and `p_{n,i}`, each computed more than one way.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::braid::interval_w2;
use crate::complex::{SigmaComplex, P_TABLE};
use crate::sym::{Permutation, Side};

/// `t_0, …, t_7`.
pub const T_TABLE: [u64; 8] = [1, 1, 3, 19, 211, 3651, 90921, 3081513];

/// Ranks up to which [`t_by_pairs`] is run by [`consistency_report`].
pub const MAX_N_PAIRS: usize = 7;
/// Ranks up to which the interval and the complex are enumerated by
/// [`consistency_report`].
pub const MAX_N_INTERVAL: usize = 6;

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `t_n = Σ_{k<n} (-1)^{n+k+1} C(n,k)^2 t_k` with `t_0 = 1`.
pub fn t_recursive(n: usize) -> BigUint {
    t_recursive_table(n).pop().expect("nonempty")
}

/// `t_0, …, t_n`.
pub fn t_recursive_table(n: usize) -> Vec<BigUint> {
    let mut t: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut sum = BigInt::zero();
        for (k, tk) in t.iter().enumerate() {
            let b = BigInt::from(binomial(m as u64, k as u64));
            let term = &b * &b * tk;
            if (m + k + 1) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        t.push(sum);
    }
    t.into_iter().map(|x| x.to_biguint().expect("counts are nonnegative")).collect()
}

/// Pairs in `S_n × S_n` without a common right descent, by direct scan.
pub fn t_by_pairs(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let masks: Vec<u64> = Permutation::all(n).iter().map(|p| p.descents(Side::Right).bits()).collect();
    let count: u64 =
        masks.par_iter().map(|&a| masks.iter().filter(|&&b| a & b == 0).count() as u64).sum();
    BigUint::from(count)
}

/// Eulerian numbers `A(m, d)`: permutations of `m` letters with `d` descents.
fn eulerian(m: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for len in 2..=m {
        let mut next = vec![BigUint::zero(); len];
        for (d, a) in row.iter().enumerate() {
            next[d] += a * (d + 1);
            next[d + 1] += a * (len - d - 1);
        }
        row = next;
    }
    row
}

/// Row `n + 1` of OEIS A046802 without its leading 1, which small cases of
/// `(p_{n,1}, …, p_{n,n})` follow.
pub fn a046802_row(n: usize) -> Vec<BigUint> {
    (1..=n)
        .map(|k| (k..=n).map(|j| binomial(n as u64, j as u64) * &eulerian(j)[k - 1]).sum())
        .collect()
}

fn as_string<S: Serializer, T: ToString>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

fn as_opt_string<S: Serializer, T: ToString>(value: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// The counts for one rank, with agreement flags. Big integers serialize as
/// decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub c: BigUint,
    #[serde(serialize_with = "as_string")]
    pub t_recursive: BigUint,
    #[serde(serialize_with = "as_opt_string")]
    pub t_pairs: Option<BigUint>,
    pub t_interval: Option<usize>,
    pub facets: Option<usize>,
    pub p: Option<Vec<u64>>,
    pub p_total: Option<u64>,
    /// Whether `p` equals the tabulated row, when one exists.
    pub p_matches_table: Option<bool>,
    /// Whether `p` equals the A046802 row; data, not a claim.
    pub p_matches_a046802: Option<bool>,
    /// Whether every populated count of `t_n` agrees.
    pub consistent: bool,
}

/// Aggregates every count available at rank `n` within the enumeration limits.
pub fn consistency_report(n: usize) -> CountReport {
    let t_recursive = t_recursive(n);
    let t_pairs = (n <= MAX_N_PAIRS).then(|| t_by_pairs(n));
    let enumerate = (1..=MAX_N_INTERVAL).contains(&n);
    let t_interval = enumerate.then(|| interval_w2(n).len());
    let sigma = enumerate.then(|| SigmaComplex::build(n));
    let facets = sigma.as_ref().map(|s| s.facets().len());
    let p = sigma.as_ref().map(SigmaComplex::p_counts);
    let p_total = p.as_ref().map(|row| row.iter().sum());
    let p_matches_table = p.as_ref().and_then(|row| P_TABLE.get(n.wrapping_sub(1)).map(|t| row.as_slice() == *t));
    let p_matches_a046802 =
        p.as_ref().map(|row| row.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>() == a046802_row(n));
    let same = |x: usize| BigUint::from(x) == t_recursive;
    let consistent = t_pairs.as_ref().is_none_or(|t| *t == t_recursive)
        && t_interval.is_none_or(same)
        && facets.is_none_or(same)
        && p_matches_table != Some(false);
    CountReport {
        n,
        c: factorial(n),
        t_recursive,
        t_pairs,
        t_interval,
        facets,
        p,
        p_total,
        p_matches_table,
        p_matches_a046802,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_matches_table() {
        let t = t_recursive_table(7);
        for (k, v) in T_TABLE.iter().enumerate() {
            assert_eq!(t[k], BigUint::from(*v));
        }
    }

    #[test]
    fn pairs_small() {
        for n in 0..=5 {
            assert_eq!(t_by_pairs(n), BigUint::from(T_TABLE[n]));
        }
    }

    #[test]
    fn a046802_rows() {
        for (n, row) in P_TABLE.iter().enumerate() {
            let expected: Vec<BigUint> = row.iter().map(|&x| BigUint::from(x)).collect();
            assert_eq!(a046802_row(n + 1), expected);
        }
    }

    #[test]
    fn report_rank_three() {
        let r = consistency_report(3);
        assert!(r.consistent);
        assert_eq!(r.t_interval, Some(19));
        assert_eq!(r.p_total, Some(15));
        assert_eq!(r.p_matches_table, Some(true));
        let one = consistency_report(1);
        assert!(one.consistent);
        assert_eq!(one.p, Some(vec![1]));
    }
}

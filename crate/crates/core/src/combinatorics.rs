//! Exact counting primitives: factorials, binomials, standard Young tableaux
//! (straight and skew), Gaussian binomials and restricted partition counts.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::bareiss_det;
use crate::partition::{Partition, SkewShape};

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: usize, k: i64) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of standard Young tableaux of shape `λ` by the hook length formula.
pub fn count_syt(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let hooks = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &row)| {
            let conj = &conj;
            (0..row).map(move |j| (row - j - 1) + (conj.part(j) - i - 1) + 1)
        })
        .fold(BigUint::one(), |acc, h| acc * h);
    factorial(lambda.size()) / hooks
}

/// Number of standard fillings of the skew shape `outer / inner`.
///
/// Zero when `inner ⊄ outer`. Otherwise evaluated through the Jacobi–Trudi
/// type determinant `N! · det[1 / (λ_i − μ_j − i + j)!]`, with `1/k! = 0` for
/// `k < 0`. Row `i` is scaled by `(λ_i − i + ℓ)!` so the matrix is integral,
/// and the determinant is taken by fraction-free elimination.
pub fn count_skew_syt(shape: &SkewShape) -> BigUint {
    if !shape.is_contained() {
        return BigUint::zero();
    }
    let outer = &shape.outer;
    let inner = &shape.inner;
    let len = outer.len();
    if len == 0 {
        return BigUint::one();
    }
    let mut scale = BigUint::one();
    let rows: Vec<Vec<BigInt>> = (1..=len)
        .map(|i| {
            let row_len = outer.part(i - 1);
            let top = row_len + len - i;
            let top_fact = factorial(top);
            let entries = (1..=len)
                .map(|j| {
                    let arg = row_len as i64 - inner.part(j - 1) as i64 - i as i64 + j as i64;
                    if arg < 0 {
                        BigInt::zero()
                    } else {
                        // (top)! / arg!, a falling factorial since arg ≤ top.
                        let arg = arg as usize;
                        debug_assert!(arg <= top);
                        BigInt::from(((arg + 1)..=top).fold(BigUint::one(), |acc, k| acc * k))
                    }
                })
                .collect();
            scale *= top_fact;
            entries
        })
        .collect();
    let det = bareiss_det(rows);
    let numer = BigInt::from(factorial(shape.size())) * det;
    let (quot, rem) = numer.div_rem(&BigInt::from(scale));
    assert!(rem.is_zero(), "skew tableau count is not integral");
    quot.to_biguint().expect("skew tableau count is negative")
}

/// Gaussian binomial `[n choose k]_q` at an integer `q ≥ 2`; zero outside
/// `0 ≤ k ≤ n`.
pub fn q_binomial(n: usize, k: i64, q: u64) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

/// Unrestricted partition numbers `p(0), ..., p(n)`.
pub fn partition_counts(n: usize) -> Vec<BigUint> {
    restricted_counts(n, 1)
}

pub fn count_partitions(n: usize) -> BigUint {
    partition_counts(n).pop().unwrap()
}

/// Partitions of `m` with every part at least 2.
pub fn count_partitions_no_ones(m: usize) -> BigUint {
    restricted_counts(m, 2).pop().unwrap()
}

fn restricted_counts(n: usize, min_part: usize) -> Vec<BigUint> {
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in min_part..=n {
        for total in part..=n {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways
}

//! Small dense exact linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::scalar::ExactScalar;

pub(crate) type Matrix = Vec<Vec<ExactScalar>>;

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination with row pivoting. Every intermediate division is exact.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&t % &prev).is_zero());
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a square rational matrix: rows are cleared of
/// denominators, then [`bareiss_det`] runs over the integers.
pub(crate) fn rational_det(m: &[Vec<ExactScalar>]) -> ExactScalar {
    let mut scale = BigInt::one();
    let rows = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>()
        })
        .collect();
    ExactScalar::new(bareiss_det(rows), scale)
}

pub(crate) fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ExactScalar::one() } else { ExactScalar::zero() })
                .collect()
        })
        .collect()
}

/// Row-parallel product; the result does not depend on scheduling.
pub(crate) fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.par_iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(ExactScalar::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub(crate) fn vec_mat(v: &[ExactScalar], m: &Matrix) -> Vec<ExactScalar> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| {
            v.iter()
                .zip(m)
                .filter(|(x, _)| !x.is_zero())
                .fold(ExactScalar::zero(), |acc, (x, row)| acc + x * &row[j])
        })
        .collect()
}

pub(crate) fn mat_pow(m: &Matrix, e: u32) -> Matrix {
    let mut result = identity(m.len());
    for _ in 0..e {
        result = mat_mul(&result, m);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn integer_determinants() {
        assert_eq!(bareiss_det(ints(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        // Needs a pivot swap.
        assert_eq!(bareiss_det(ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            bareiss_det(ints(&[&[0, 2, 1], &[3, 0, 4], &[1, 1, 1]])),
            BigInt::from(5)
        );
        assert_eq!(bareiss_det(ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(bareiss_det(vec![]), BigInt::one());
    }

    #[test]
    fn rational_determinant() {
        let m = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 4), int(1)]];
        assert_eq!(rational_det(&m), ratio(1, 2) - ratio(1, 12));
    }

    #[test]
    fn powers() {
        let m = vec![vec![int(1), int(1)], vec![int(1), int(0)]];
        assert_eq!(mat_pow(&m, 10)[0][1], int(55));
        assert_eq!(mat_pow(&m, 0), identity(2));
        assert_eq!(vec_mat(&[int(1), int(0)], &mat_pow(&m, 5)), vec![int(8), int(5)]);
    }
}

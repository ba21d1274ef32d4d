//! Lagrange–Sylvester interpolation for reversible kernels.
//!
//! If `K` is diagonalizable with distinct eigenvalues `λ_1, ..., λ_m`, then
//! `K^r = Σ_i λ_i^r Π_{j≠i} (K − λ_j I)/(λ_i − λ_j)`, a polynomial of degree
//! `m − 1` in `K`. When two states sit at graph distance `d = m − 1` the
//! separation between them depends on the eigenvalues alone:
//!
//! ```text
//! 1 − K^r(x, y)/π(y) = Σ_{i: λ_i ≠ 1} λ_i^r Π_{j ≠ i, λ_j ≠ 1} (1 − λ_j)/(λ_i − λ_j)
//! ```
//!
//! Eigenvalues are always supplied by the caller; nothing here runs a
//! numerical eigensolver.

use std::fmt::Display;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::TransitionKernel;
use crate::linalg::{self, rational_det};
use crate::scalar::{pow, ExactScalar};

/// Pairwise distinct exact eigenvalues, kept in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueList {
    values: Vec<ExactScalar>,
}

impl EigenvalueList {
    pub fn new(mut values: Vec<ExactScalar>) -> Result<Self> {
        values.sort_by(|a, b| b.cmp(a));
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("eigenvalues must be pairwise distinct"));
        }
        Ok(EigenvalueList { values })
    }

    pub fn values(&self) -> &[ExactScalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains_unit(&self) -> bool {
        self.values.iter().any(One::is_one)
    }

    /// The list with one more value; fails if it is already present.
    pub fn with(&self, extra: ExactScalar) -> Result<Self> {
        let mut values = self.values.clone();
        values.push(extra);
        Self::new(values)
    }

    /// Non-unit eigenvalues, which must all lie in `(−1, 1)`.
    fn non_unit(&self) -> Result<Vec<&ExactScalar>> {
        if !self.contains_unit() {
            return Err(Error::invalid("eigenvalue list does not contain 1"));
        }
        let rest: Vec<&ExactScalar> = self.values.iter().filter(|v| !v.is_one()).collect();
        if let Some(bad) = rest.iter().find(|v| v.abs() >= ExactScalar::one()) {
            return Err(Error::invalid(format!("eigenvalue {bad} is outside (-1, 1)")));
        }
        Ok(rest)
    }
}

/// Elementary symmetric polynomials `e_0, ..., e_k` of `values`.
fn elementary_symmetric(values: &[&ExactScalar]) -> Vec<ExactScalar> {
    let mut e = vec![ExactScalar::zero(); values.len() + 1];
    e[0] = ExactScalar::one();
    for (count, v) in values.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            let add = &e[k - 1] * *v;
            e[k] += add;
        }
    }
    e
}

/// Weights `w_i = λ_i^r / Π_{j≠i} (λ_i − λ_j)`.
fn lagrange_weights(vals: &[ExactScalar], r: u32) -> Vec<ExactScalar> {
    vals.iter()
        .enumerate()
        .map(|(i, li)| {
            let denom: ExactScalar = vals
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, lj)| li - lj)
                .product();
            pow(li, r) / denom
        })
        .collect()
}

/// Coefficients `γ_1, ..., γ_m` with `K^r = Σ_a γ_a K^{a−1}` for any
/// diagonalizable `K` whose distinct eigenvalues are exactly `eigs`.
///
/// `γ_a = (−1)^{m−a} Σ_i w_i · e_{m−a}({λ_j : j ≠ i})`.
pub fn interpolation_coefficients(eigs: &EigenvalueList, r: u32) -> Vec<ExactScalar> {
    let vals = eigs.values();
    let m = vals.len();
    let weights = lagrange_weights(vals, r);
    let mut gamma = vec![ExactScalar::zero(); m];
    for (i, w) in weights.iter().enumerate() {
        let others: Vec<&ExactScalar> = vals.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v).collect();
        let e = elementary_symmetric(&others);
        for a in 1..=m {
            let term = w * &e[m - a];
            if (m - a).is_multiple_of(2) {
                gamma[a - 1] += term;
            } else {
                gamma[a - 1] -= term;
            }
        }
    }
    gamma
}

/// Same coefficients by enumerating every subset of size `m − a` of the
/// other eigenvalues. Exponential; limited to `m ≤ 8`.
pub fn interpolation_coefficients_by_subsets(eigs: &EigenvalueList, r: u32) -> Result<Vec<ExactScalar>> {
    let vals = eigs.values();
    let m = vals.len();
    if m > 8 {
        return Err(Error::invalid(format!("subset enumeration limited to 8 eigenvalues, got {m}")));
    }
    let weights = lagrange_weights(vals, r);
    let mut gamma = vec![ExactScalar::zero(); m];
    for (i, w) in weights.iter().enumerate() {
        let others: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        for mask in 0u32..(1 << others.len()) {
            let size = mask.count_ones() as usize;
            let product: ExactScalar = others
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &j)| vals[j].clone())
                .product();
            let a = m - size;
            let term = w * product;
            if size.is_multiple_of(2) {
                gamma[a - 1] += term;
            } else {
                gamma[a - 1] -= term;
            }
        }
    }
    Ok(gamma)
}

/// `Σ_a γ_a K^{a−1}` as a dense matrix.
pub fn kernel_polynomial<S: PartialEq + Display>(kernel: &TransitionKernel<S>, coeffs: &[ExactScalar]) -> Vec<Vec<ExactScalar>> {
    let k = kernel.matrix().to_vec();
    let size = kernel.len();
    let mut acc = vec![vec![ExactScalar::zero(); size]; size];
    let mut power = linalg::identity(size);
    for (a, c) in coeffs.iter().enumerate() {
        if a > 0 {
            power = linalg::mat_mul(&power, &k);
        }
        for (acc_row, pow_row) in acc.iter_mut().zip(&power) {
            for (x, y) in acc_row.iter_mut().zip(pow_row) {
                *x += c * y;
            }
        }
    }
    acc
}

/// Eigenvalue-only separation `1 − K^r(x, y)/π(y)` for states at the maximal
/// distance `d = (number of distinct eigenvalues) − 1`. The caller vouches
/// for that hypothesis.
pub fn separation_from_spectrum(eigs: &EigenvalueList, r: u32) -> Result<ExactScalar> {
    let rest = eigs.non_unit()?;
    let mut total = ExactScalar::zero();
    for (i, li) in rest.iter().enumerate() {
        let mut term = pow(li, r);
        for (j, lj) in rest.iter().enumerate() {
            if i != j {
                term *= (ExactScalar::one() - *lj) / (*li - *lj);
            }
        }
        total += term;
    }
    Ok(total)
}

/// Smallest `r` with `K^r(x, y) > 0`.
///
/// Every pair of states of a reversible chain is within distance
/// `|eigs| − 1`; the search stops there and reports a consistency error if
/// `y` has not been reached.
pub fn verify_distance<S: PartialEq + Display>(
    kernel: &TransitionKernel<S>,
    eigs: &EigenvalueList,
    x: usize,
    y: usize,
) -> Result<usize> {
    if x >= kernel.len() || y >= kernel.len() {
        return Err(Error::invalid("state index out of range"));
    }
    let bound = eigs.len().saturating_sub(1);
    let mut dist = kernel.point_mass(x);
    for r in 0..=bound {
        if dist[y].is_positive() {
            return Ok(r);
        }
        dist = kernel.step(&dist);
    }
    Err(Error::consistency(format!(
        "state {} not reached from {} within {bound} steps",
        kernel.states()[y],
        kernel.states()[x]
    )))
}

/// Birth–death chain on `{0, ..., d}`: `down[x−1] = K(x, x−1)`,
/// `hold[x] = K(x, x)`, `up[x] = K(x, x+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BirthDeathChain {
    down: Vec<ExactScalar>,
    hold: Vec<ExactScalar>,
    up: Vec<ExactScalar>,
}

impl BirthDeathChain {
    pub fn new(down: Vec<ExactScalar>, hold: Vec<ExactScalar>, up: Vec<ExactScalar>) -> Result<Self> {
        let d = up.len();
        if down.len() != d || hold.len() != d + 1 {
            return Err(Error::invalid("birth-death rates have inconsistent lengths"));
        }
        if down.iter().chain(&up).any(|v| !v.is_positive()) {
            return Err(Error::invalid("birth and death rates must be positive"));
        }
        for x in 0..=d {
            let a = if x > 0 { down[x - 1].clone() } else { ExactScalar::zero() };
            let c = if x < d { up[x].clone() } else { ExactScalar::zero() };
            if hold[x].is_negative() || !(a + &hold[x] + c).is_one() {
                return Err(Error::invalid(format!("row {x} is not a probability vector")));
            }
        }
        Ok(BirthDeathChain { down, hold, up })
    }

    /// Holding probabilities are whatever the moves leave over.
    pub fn from_rates(down: Vec<ExactScalar>, up: Vec<ExactScalar>) -> Result<Self> {
        let d = up.len();
        if down.len() != d {
            return Err(Error::invalid("birth-death rates have inconsistent lengths"));
        }
        let hold = (0..=d)
            .map(|x| {
                let mut h = ExactScalar::one();
                if x > 0 {
                    h -= &down[x - 1];
                }
                if x < d {
                    h -= &up[x];
                }
                h
            })
            .collect();
        Self::new(down, hold, up)
    }

    /// Largest state `d`.
    pub fn top(&self) -> usize {
        self.up.len()
    }

    /// `c_x + a_{x+1} ≤ 1` for every `0 ≤ x < d`.
    pub fn is_monotone(&self) -> bool {
        self.up.iter().zip(&self.down).all(|(c, a)| c + a <= ExactScalar::one())
    }

    /// `π(x) ∝ Π_{i=1}^{x} c_{i−1}/a_i`.
    pub fn stationary(&self) -> Vec<ExactScalar> {
        let mut weights = vec![ExactScalar::one()];
        for (c, a) in self.up.iter().zip(&self.down) {
            let next = weights.last().unwrap() * c / a;
            weights.push(next);
        }
        let z: ExactScalar = weights.iter().sum();
        weights.into_iter().map(|w| w / &z).collect()
    }

    pub fn kernel(&self) -> TransitionKernel<usize> {
        let d = self.top();
        let mut m = vec![vec![ExactScalar::zero(); d + 1]; d + 1];
        for x in 0..=d {
            m[x][x] = self.hold[x].clone();
            if x > 0 {
                m[x][x - 1] = self.down[x - 1].clone();
            }
            if x < d {
                m[x][x + 1] = self.up[x].clone();
            }
        }
        TransitionKernel::new((0..=d).collect(), m, self.stationary()).expect("square by construction")
    }
}

/// Separation of a monotone birth–death chain started at 0, from its
/// eigenvalues alone, cross-checked against `1 − K^r(0, d)/π(d)`.
///
/// `eigs` must be the full spectrum: `d + 1` distinct values, each verified
/// by an exact singularity test of `K − λI`.
pub fn birth_death_separation(chain: &BirthDeathChain, eigs: &EigenvalueList, r: u32) -> Result<ExactScalar> {
    if !chain.is_monotone() {
        return Err(Error::Precondition("birth-death chain is not monotone".into()));
    }
    let kernel = chain.kernel();
    let d = chain.top();
    if eigs.len() != d + 1 {
        return Err(Error::invalid(format!(
            "expected {} distinct eigenvalues for a chain on {{0..{d}}}, got {}",
            d + 1,
            eigs.len()
        )));
    }
    for lambda in eigs.values() {
        let shifted: Vec<Vec<ExactScalar>> = kernel
            .matrix()
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| if i == j { v - lambda } else { v.clone() })
                    .collect()
            })
            .collect();
        if !rational_det(&shifted).is_zero() {
            return Err(Error::invalid(format!("{lambda} is not an eigenvalue of the chain")));
        }
    }
    let spectral = separation_from_spectrum(eigs, r)?;
    let reach = kernel.distributions_from(0, r).pop().unwrap();
    let direct = ExactScalar::one() - &reach[d] / &kernel.stationary()[d];
    if spectral != direct {
        return Err(Error::consistency(format!(
            "birth-death separation at r = {r}: eigenvalue formula {spectral}, matrix power {direct}"
        )));
    }
    Ok(spectral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn list(v: Vec<ExactScalar>) -> EigenvalueList {
        EigenvalueList::new(v).unwrap()
    }

    #[test]
    fn rejects_repeats() {
        assert!(EigenvalueList::new(vec![int(1), ratio(1, 2), ratio(2, 4)]).is_err());
    }

    #[test]
    fn one_state_chain() {
        for r in 0..5 {
            assert_eq!(interpolation_coefficients(&list(vec![int(1)]), r), vec![int(1)]);
        }
    }

    #[test]
    fn two_point_interpolation() {
        let l = ratio(1, 3);
        let eigs = list(vec![int(1), l.clone()]);
        for r in 0..6 {
            let lr = pow(&l, r);
            let expected = vec![
                (&lr - &l) / (int(1) - &l),
                (int(1) - &lr) / (int(1) - &l),
            ];
            assert_eq!(interpolation_coefficients(&eigs, r), expected);
        }
    }

    #[test]
    fn subset_route_agrees() {
        let eigs = list(vec![int(1), ratio(2, 3), ratio(-1, 5), ratio(1, 7), int(0), ratio(-3, 4)]);
        for r in 0..10 {
            assert_eq!(
                interpolation_coefficients(&eigs, r),
                interpolation_coefficients_by_subsets(&eigs, r).unwrap()
            );
        }
        let big = list((0..9).map(|i| ratio(i, 9)).collect());
        assert!(interpolation_coefficients_by_subsets(&big, 1).is_err());
    }

    #[test]
    fn low_powers_reproduce_themselves() {
        // For r < m the expansion must be the monomial K^r.
        let eigs = list(vec![int(1), ratio(1, 2), ratio(1, 4), int(0)]);
        for r in 0..4u32 {
            let gamma = interpolation_coefficients(&eigs, r);
            for (a, g) in gamma.iter().enumerate() {
                assert_eq!(*g, int(i32::from(a as u32 == r)));
            }
        }
    }

    #[test]
    fn eigenvalue_only_separation() {
        let l = ratio(2, 5);
        for r in 0..5 {
            assert_eq!(separation_from_spectrum(&list(vec![int(1), l.clone()]), r).unwrap(), pow(&l, r));
        }
        let s3 = list(vec![int(1), ratio(1, 3), int(0)]);
        assert_eq!(separation_from_spectrum(&s3, 2).unwrap(), ratio(1, 3));
        let gl22 = list(vec![int(1), ratio(1, 2), ratio(1, 4)]);
        assert_eq!(separation_from_spectrum(&gl22, 2).unwrap(), ratio(5, 8));
        assert!(separation_from_spectrum(&list(vec![ratio(1, 2)]), 1).is_err());
        assert!(separation_from_spectrum(&list(vec![int(1), int(-1)]), 1).is_err());
    }

    fn lazy_three() -> BirthDeathChain {
        BirthDeathChain::from_rates(vec![ratio(1, 4); 2], vec![ratio(1, 4); 2]).unwrap()
    }

    #[test]
    fn lazy_walk_on_three_states() {
        let chain = lazy_three();
        assert!(chain.is_monotone());
        let k = chain.kernel();
        assert!(k.detailed_balance_holds());
        assert_eq!(chain.stationary(), vec![ratio(1, 3); 3]);
        // Interior holding is 1/2, boundaries keep 3/4.
        assert_eq!(k.entry(1, 1), &ratio(1, 2));
        assert_eq!(k.entry(0, 0), &ratio(3, 4));
        let eigs = list(vec![int(1), ratio(3, 4), ratio(1, 4)]);
        assert_eq!(birth_death_separation(&chain, &eigs, 2).unwrap(), ratio(13, 16));
        for r in 0..12 {
            birth_death_separation(&chain, &eigs, r).unwrap();
        }
        assert_eq!(birth_death_separation(&chain, &eigs, 0).unwrap(), int(1));
        let wrong = list(vec![int(1), ratio(1, 2), int(0)]);
        assert!(matches!(birth_death_separation(&chain, &wrong, 2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn two_state_birth_death() {
        let (a1, c0) = (ratio(1, 3), ratio(1, 5));
        let chain = BirthDeathChain::from_rates(vec![a1.clone()], vec![c0.clone()]).unwrap();
        let lambda = int(1) - &a1 - &c0;
        let eigs = list(vec![int(1), lambda.clone()]);
        for r in 0..8 {
            assert_eq!(birth_death_separation(&chain, &eigs, r).unwrap(), pow(&lambda, r));
        }
    }

    #[test]
    fn non_monotone_chain_rejected() {
        let chain = BirthDeathChain::from_rates(vec![ratio(3, 4)], vec![ratio(3, 4)]).unwrap();
        assert!(!chain.is_monotone());
        let eigs = list(vec![int(1), ratio(-1, 2)]);
        assert!(matches!(birth_death_separation(&chain, &eigs, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn invalid_rows_rejected() {
        assert!(BirthDeathChain::from_rates(vec![ratio(3, 4)], vec![ratio(1, 2)]).is_ok());
        assert!(BirthDeathChain::from_rates(vec![ratio(3, 4), ratio(1, 2)], vec![ratio(1, 2), ratio(1, 2)]).is_err());
        assert!(BirthDeathChain::from_rates(vec![int(0)], vec![ratio(1, 2)]).is_err());
    }

    #[test]
    fn distance_on_birth_death() {
        let chain = lazy_three();
        let k = chain.kernel();
        let eigs = list(vec![int(1), ratio(3, 4), ratio(1, 4)]);
        assert_eq!(verify_distance(&k, &eigs, 0, 0).unwrap(), 0);
        assert_eq!(verify_distance(&k, &eigs, 0, 2).unwrap(), 2);
        // With too few eigenvalues the bound is violated.
        let short = list(vec![int(1), ratio(3, 4)]);
        assert!(matches!(verify_distance(&k, &short, 0, 2), Err(Error::Consistency(_))));
    }
}

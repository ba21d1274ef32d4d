//! Exact transition kernels and spectra.

use std::fmt::Display;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interpolation::EigenvalueList;
use crate::linalg::{self, Matrix};
use crate::partition::Partition;
use crate::scalar::ExactScalar;

/// A square stochastic matrix over an ordered state list, together with a
/// stationary vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionKernel<S = Partition> {
    states: Vec<S>,
    matrix: Matrix,
    stationary: Vec<ExactScalar>,
}

impl<S: PartialEq + Display> TransitionKernel<S> {
    /// Checks shapes only; stochasticity and reversibility are reported by
    /// [`rows_sum_to_one`](Self::rows_sum_to_one) and
    /// [`detailed_balance_holds`](Self::detailed_balance_holds).
    pub fn new(states: Vec<S>, matrix: Vec<Vec<ExactScalar>>, stationary: Vec<ExactScalar>) -> Result<Self> {
        let n = states.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) || stationary.len() != n {
            return Err(Error::invalid(format!("kernel over {n} states has mismatched dimensions")));
        }
        Ok(TransitionKernel { states, matrix, stationary })
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn matrix(&self) -> &[Vec<ExactScalar>] {
        &self.matrix
    }

    pub fn stationary(&self) -> &[ExactScalar] {
        &self.stationary
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, state: &S) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn entry(&self, from: usize, to: usize) -> &ExactScalar {
        &self.matrix[from][to]
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.matrix
            .iter()
            .all(|row| row.iter().sum::<ExactScalar>().is_one())
    }

    pub fn stationary_sums_to_one(&self) -> bool {
        self.stationary.iter().sum::<ExactScalar>().is_one()
    }

    /// `π(x) K(x, y) = π(y) K(y, x)` for every pair.
    pub fn detailed_balance_holds(&self) -> bool {
        (0..self.len()).all(|x| {
            (x + 1..self.len()).all(|y| {
                &self.stationary[x] * &self.matrix[x][y] == &self.stationary[y] * &self.matrix[y][x]
            })
        })
    }

    /// `πK = π`.
    pub fn is_stationary(&self) -> bool {
        linalg::vec_mat(&self.stationary, &self.matrix) == self.stationary
    }

    /// One step of a row distribution: `μ ↦ μK`.
    pub fn step(&self, dist: &[ExactScalar]) -> Vec<ExactScalar> {
        linalg::vec_mat(dist, &self.matrix)
    }

    /// `(Kf)(x) = Σ_y K(x, y) f(y)`.
    pub fn apply(&self, f: &[ExactScalar]) -> Vec<ExactScalar> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(f).map(|(k, v)| k * v).sum())
            .collect()
    }

    pub fn point_mass(&self, state: usize) -> Vec<ExactScalar> {
        (0..self.len())
            .map(|i| if i == state { ExactScalar::one() } else { ExactScalar::zero() })
            .collect()
    }

    /// Rows `K^0(x, ·), ..., K^{r_max}(x, ·)`.
    pub fn distributions_from(&self, start: usize, r_max: u32) -> Vec<Vec<ExactScalar>> {
        let mut rows = Vec::with_capacity(r_max as usize + 1);
        rows.push(self.point_mass(start));
        for _ in 0..r_max {
            let next = self.step(rows.last().unwrap());
            rows.push(next);
        }
        rows
    }

    /// `K^r` by repeated multiplication.
    pub fn power(&self, r: u32) -> Vec<Vec<ExactScalar>> {
        linalg::mat_pow(&self.matrix, r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub eigenvalue: ExactScalar,
    /// `None` when the multiplicity is not computed.
    pub multiplicity: Option<BigUint>,
}

/// Distinct eigenvalues in descending order with their multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn new(mut entries: Vec<SpectrumEntry>) -> Result<Self> {
        entries.sort_by(|a, b| b.eigenvalue.cmp(&a.eigenvalue));
        if entries.windows(2).any(|w| w[0].eigenvalue == w[1].eigenvalue) {
            return Err(Error::invalid("spectrum has repeated eigenvalues"));
        }
        if entries.iter().any(|e| e.multiplicity.as_ref().is_some_and(Zero::is_zero)) {
            return Err(Error::invalid("spectrum entry with zero multiplicity"));
        }
        Ok(Spectrum { entries })
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn eigenvalues(&self) -> Vec<ExactScalar> {
        self.entries.iter().map(|e| e.eigenvalue.clone()).collect()
    }

    pub fn multiplicity_of(&self, eigenvalue: &ExactScalar) -> Option<&BigUint> {
        self.entries
            .iter()
            .find(|e| &e.eigenvalue == eigenvalue)
            .and_then(|e| e.multiplicity.as_ref())
    }

    /// Sum of multiplicities, if all are known.
    pub fn total_multiplicity(&self) -> Option<BigUint> {
        self.entries.iter().map(|e| e.multiplicity.clone()).sum()
    }

    pub fn distinct(&self) -> EigenvalueList {
        EigenvalueList::new(self.eigenvalues()).expect("spectrum eigenvalues are distinct")
    }
}

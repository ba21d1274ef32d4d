//! Exact analysis of tensor-product random walks on the irreducible
//! representations of `S_n` and `GL(n, q)`.
//!
//! A step from the irreducible `λ` moves to `ρ` with probability
//! `d_ρ · m_ρ(λ ⊗ η) / (d_λ · d_η)`, where `η` is a fixed real-valued
//! representation. For `S_n` the driving representation is the defining
//! (permutation) representation; for `GL(n, q)` it is the permutation
//! representation on vectors of `F_q^n`. The walk is reversible with respect
//! to the Plancherel measure `d_λ² / |G|`.
//!
//! Everything here is exact: probabilities, distances and eigenvalues are
//! [`ExactScalar`] rationals, and every headline quantity can be computed by
//! several independent routes that are checked against each other.
//!
//! Module map:
//!
//! * [`partition`], [`combinatorics`]: partitions, tableau counts,
//!   binomials and Gaussian binomials.
//! * [`characters`]: conjugacy classes and the character table of `S_n`.
//! * [`occupancy`]: balls-in-boxes and random-span occupancy laws, exact and
//!   Monte Carlo.
//! * [`sn_walk`]: the walk on `Irr(S_n)`.
//! * [`gl_walk`]: the walk on `Irr(GL(n, q))` through its closed forms.
//! * [`interpolation`]: Lagrange–Sylvester expansion of kernel powers and
//!   eigenvalue-only separation formulas.

pub mod characters;
pub mod combinatorics;
pub mod curve;
pub mod error;
pub mod gl_walk;
pub mod interpolation;
pub mod kernel;
pub mod limits;
mod linalg;
pub mod occupancy;
pub mod partition;
pub mod scalar;
pub mod sn_walk;

pub use characters::{CharacterTable, ClassDescriptor};
pub use curve::{Curve, CurveRecord, Metric};
pub use error::{Error, Result};
pub use gl_walk::{GlIrrepFamily, QParameter};
pub use interpolation::{BirthDeathChain, EigenvalueList};
pub use kernel::{Spectrum, SpectrumEntry, TransitionKernel};
pub use occupancy::{McEstimate, RandomSource};
pub use partition::{Partition, SkewShape};
pub use scalar::ExactScalar;
pub use sn_walk::SnWalk;

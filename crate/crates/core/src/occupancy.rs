//! Occupancy laws.
//!
//! * `P(a, r, n)`: probability that `r` balls dropped uniformly into `n`
//!   boxes occupy exactly `a` boxes.
//! * `P_q(a, r, n)`: probability that `r` uniform vectors of `F_q^n` span an
//!   `a`-dimensional subspace.
//!
//! Both have inclusion–exclusion closed forms, both are `r`-step laws of a
//! pure-birth chain on `{0, ..., n}` started at 0, and both can be sampled.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, q_binomial};
use crate::error::{Error, Result};
use crate::scalar::{int, ExactScalar};

/// `P(a, r, n) = C(n, a) Σ_{b=n−a}^{n} (−1)^{b−(n−a)} C(a, n−b) (1 − b/n)^r`,
/// with `0^0 = 1`. Zero for `a > n`.
pub fn occupancy_exact(a: usize, r: u32, n: usize) -> ExactScalar {
    if a > n {
        return ExactScalar::zero();
    }
    if n == 0 {
        return ExactScalar::one();
    }
    let numer: BigInt = (n - a..=n)
        .map(|b| {
            let term = BigInt::from(binomial(a, (n - b) as i64)) * BigInt::from(n - b).pow(r);
            if (b - (n - a)).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum();
    ExactScalar::new(numer * BigInt::from(binomial(n, a as i64)), BigInt::from(n).pow(r))
}

/// `r`-step law of the occupied-box count: from `a`, stay with probability
/// `a/n`, otherwise move to `a + 1`. Indexed by `a = 0..=n`.
pub fn occupancy_chain_power(n: usize, r: u32) -> Vec<ExactScalar> {
    let hold: Vec<ExactScalar> = (0..=n)
        .map(|a| if n == 0 { ExactScalar::one() } else { ExactScalar::new(a.into(), n.into()) })
        .collect();
    pure_birth_power(&hold, r)
}

/// `P_q(a, r, n) = [n a]_q Σ_{b=n−a}^{n} (−1)^{b−(n−a)} q^{C(b−(n−a), 2)} [a n−b]_q q^{−rb}`.
/// Zero for `a > min(r, n)`.
pub fn qspan_exact(a: usize, r: u32, n: usize, q: u64) -> ExactScalar {
    if a > n {
        return ExactScalar::zero();
    }
    let qb = BigUint::from(q);
    // Common denominator q^{rn}: q^{−rb} = q^{r(n−b)} / q^{rn}.
    let numer: BigInt = (n - a..=n)
        .map(|b| {
            let s = b - (n - a);
            let term = BigInt::from(
                qb.pow((s * s.saturating_sub(1) / 2) as u32)
                    * q_binomial(a, (n - b) as i64, q)
                    * qb.pow(r * (n - b) as u32),
            );
            if s.is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum();
    ExactScalar::new(
        numer * BigInt::from(q_binomial(n, a as i64, q)),
        BigInt::from(qb.pow(r * n as u32)),
    )
}

/// `r`-step law of the span dimension: from dimension `a` the next vector
/// falls inside the current span with probability `q^{a−n}`.
pub fn qspan_chain_power(n: usize, r: u32, q: u64) -> Vec<ExactScalar> {
    let hold: Vec<ExactScalar> = (0..=n)
        .map(|a| ExactScalar::new(BigInt::one(), BigInt::from(q).pow((n - a) as u32)))
        .collect();
    pure_birth_power(&hold, r)
}

fn pure_birth_power(hold: &[ExactScalar], r: u32) -> Vec<ExactScalar> {
    let mut dist = vec![ExactScalar::zero(); hold.len()];
    dist[0] = ExactScalar::one();
    for _ in 0..r {
        let mut next = vec![ExactScalar::zero(); hold.len()];
        for (a, mass) in dist.iter().enumerate().filter(|(_, m)| !m.is_zero()) {
            next[a] += mass * &hold[a];
            if a + 1 < hold.len() {
                next[a + 1] += mass * (int(1) - &hold[a]);
            }
        }
        dist = next;
    }
    dist
}

/// Chance that a Poisson variable with mean `e^{−c}` is neither 0 nor 1:
/// `1 − e^{−e^{−c}} (1 + e^{−c})`.
pub fn poisson_not01(c: f64) -> f64 {
    let mean = (-c).exp();
    if mean < 0.25 {
        // Σ_{k≥2} e^{−μ} μ^k / k!, avoiding the cancellation in 1 − ...
        let mut term = mean * mean / 2.0;
        let mut sum = 0.0;
        let mut k = 2.0;
        while term > sum * f64::EPSILON {
            sum += term;
            k += 1.0;
            term *= mean / k;
        }
        (-mean).exp() * sum
    } else {
        1.0 - (-mean).exp() * (1.0 + mean)
    }
}

/// A reproducible random stream: identical `(seed, stream_id)` pairs give
/// identical draws, distinct stream ids give independent ChaCha streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSource {
    pub seed: u64,
    pub stream_id: u64,
}

impl RandomSource {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RandomSource { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub hits: u64,
    pub samples: u64,
    pub estimate: f64,
    /// Binomial standard error `sqrt(p̂(1 − p̂)/N)`.
    pub stderr: f64,
}

impl McEstimate {
    fn from_counts(hits: u64, samples: u64) -> Self {
        let p = hits as f64 / samples as f64;
        McEstimate { hits, samples, estimate: p, stderr: (p * (1.0 - p) / samples as f64).sqrt() }
    }

    /// `|estimate − p| ≤ k·σ(p)` with `σ(p) = sqrt(p(1 − p)/N)` taken at the
    /// exact value, so degenerate `p ∈ {0, 1}` demand an exact match.
    pub fn within_sigmas(&self, exact: f64, k: f64) -> bool {
        let sigma = (exact * (1.0 - exact) / self.samples as f64).sqrt();
        (self.estimate - exact).abs() <= k * sigma
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    Ok(())
}

fn occupancy_hits(a: usize, r: u32, n: usize, samples: u64, rng: &mut impl Rng) -> u64 {
    let mut occupied = vec![false; n];
    let mut hits = 0;
    for _ in 0..samples {
        occupied.iter_mut().for_each(|o| *o = false);
        let mut count = 0;
        for _ in 0..r {
            let box_idx = rng.random_range(0..n);
            if !occupied[box_idx] {
                occupied[box_idx] = true;
                count += 1;
            }
        }
        if count == a {
            hits += 1;
        }
    }
    hits
}

/// Empirical frequency of exactly `a` occupied boxes.
pub fn occupancy_mc(a: usize, r: u32, n: usize, samples: u64, src: &RandomSource) -> Result<McEstimate> {
    check_samples(samples)?;
    if n == 0 {
        return Err(Error::invalid("occupancy needs at least one box"));
    }
    let hits = occupancy_hits(a, r, n, samples, &mut src.rng());
    Ok(McEstimate::from_counts(hits, samples))
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank over `F_q` (`q` prime) by Gaussian elimination; `rows` is consumed.
pub fn rank_mod_prime(mut rows: Vec<Vec<u64>>, q: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_pow(rows[rank][col], q - 2, q);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % q;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in col..cols {
                    rows[i][j] = (rows[i][j] + (q - f) * rows[rank][j]) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn qspan_hits(a: usize, r: u32, n: usize, q: u64, samples: u64, rng: &mut impl Rng) -> u64 {
    let mut hits = 0;
    for _ in 0..samples {
        let rows = (0..r)
            .map(|_| (0..n).map(|_| rng.random_range(0..q)).collect())
            .collect();
        if rank_mod_prime(rows, q) == a {
            hits += 1;
        }
    }
    hits
}

/// Empirical frequency that `r` uniform vectors of `F_q^n` have rank `a`.
pub fn qspan_mc(a: usize, r: u32, n: usize, q: u64, samples: u64, src: &RandomSource) -> Result<McEstimate> {
    check_samples(samples)?;
    if !is_prime(q) {
        return Err(Error::UnsupportedField { q });
    }
    let hits = qspan_hits(a, r, n, q, samples, &mut src.rng());
    Ok(McEstimate::from_counts(hits, samples))
}

/// Splits `samples` over `streams` independent streams `0..streams` of
/// `seed` and runs them in parallel. The merged result depends only on
/// `(seed, streams, samples)`.
fn run_streams(samples: u64, seed: u64, streams: u64, f: impl Fn(&mut ChaCha8Rng, u64) -> u64 + Sync) -> Result<McEstimate> {
    check_samples(samples)?;
    if streams == 0 {
        return Err(Error::invalid("streams must be at least 1"));
    }
    let base = samples / streams;
    let extra = samples % streams;
    let hits: u64 = (0..streams)
        .into_par_iter()
        .map(|k| {
            let count = base + u64::from(k < extra);
            f(&mut RandomSource::new(seed, k).rng(), count)
        })
        .sum();
    Ok(McEstimate::from_counts(hits, samples))
}

pub fn occupancy_mc_parallel(a: usize, r: u32, n: usize, samples: u64, seed: u64, streams: u64) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::invalid("occupancy needs at least one box"));
    }
    run_streams(samples, seed, streams, |rng, count| occupancy_hits(a, r, n, count, rng))
}

pub fn qspan_mc_parallel(a: usize, r: u32, n: usize, q: u64, samples: u64, seed: u64, streams: u64) -> Result<McEstimate> {
    if !is_prime(q) {
        return Err(Error::UnsupportedField { q });
    }
    run_streams(samples, seed, streams, |rng, count| qspan_hits(a, r, n, q, count, rng))
}

//! The walk on `Irr(GL(n, q))` driven by the permutation character on
//! vectors, `g ↦ q^{dim Fix(g)}`.
//!
//! No `GL(n, q)` character values are computed. The separation distance is
//! attained at any irreducible whose family of partitions is empty at the
//! unit cuspidal, which reduces it to the span law of random vectors:
//!
//! ```text
//! s(r) = 1 − P_q(n, r, n) = Σ_{b=1}^{n} (−1)^{b+1} q^{C(b,2)} [n b]_q q^{−rb}
//! ```
//!
//! Formulas are rational in `q` and accept any integer `q ≥ 2`;
//! [`QParameter::is_prime_power`] records whether a field of that size
//! exists.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinatorics::q_binomial;
use crate::curve::{Curve, Metric};
use crate::error::{Error, Result};
use crate::interpolation::separation_from_spectrum;
use crate::kernel::{Spectrum, SpectrumEntry};
use crate::occupancy::qspan_exact;
use crate::partition::{enumerate_partitions, Partition};
use crate::scalar::{powi, ExactScalar};

pub const GL_ROUTES: &str = "closed+qspan+lagrange";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QParameter {
    pub q: u64,
    pub is_prime_power: bool,
}

impl QParameter {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("q must be at least 2, got {q}")));
        }
        Ok(QParameter { q, is_prime_power: is_prime_power(q) })
    }
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    rest == 1
}

fn check_q(q: u64) -> Result<()> {
    QParameter::new(q).map(|_| ())
}

fn check_excluded(n: usize, q: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("GL(0, q) has no walk"));
    }
    if n == 1 && q == 2 {
        return Err(Error::ExcludedCase("GL(1, 2) is the trivial group".into()));
    }
    Ok(())
}

/// Distinct eigenvalues `q^{−i}`, `0 ≤ i ≤ n`. Multiplicities (class counts
/// by fixed-space dimension) are not computed and are left as `None`.
pub fn gl_spectrum(n: usize, q: u64) -> Result<Spectrum> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let entries = (0..=n)
        .map(|i| SpectrumEntry {
            eigenvalue: ExactScalar::new(BigInt::one(), BigInt::from(q).pow(i as u32)),
            multiplicity: None,
        })
        .collect();
    Spectrum::new(entries)
}

/// Terms `(−1)^{b+1} q^{C(b,2)} [n b]_q q^{−rb}` for `b = 1..=n`.
pub fn gl_separation_terms(n: usize, q: u64, r: u32) -> Vec<ExactScalar> {
    let qb = BigInt::from(q);
    (1..=n)
        .map(|b| {
            let numer = qb.pow((b * (b - 1) / 2) as u32) * BigInt::from(q_binomial(n, b as i64, q));
            let numer = if b % 2 == 1 { numer } else { -numer };
            ExactScalar::new(numer, qb.pow(r * b as u32))
        })
        .collect()
}

pub fn gl_separation_closed_form(n: usize, q: u64, r: u32) -> ExactScalar {
    gl_separation_terms(n, q, r).into_iter().sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlSeparationRoutes {
    pub closed_form: ExactScalar,
    /// `1 − P_q(n, r, n)`.
    pub qspan: ExactScalar,
    /// Eigenvalue-only interpolation formula on `{q^{−i}}`.
    pub lagrange: ExactScalar,
}

impl GlSeparationRoutes {
    pub fn agree(&self) -> bool {
        self.closed_form == self.qspan && self.closed_form == self.lagrange
    }
}

pub fn gl_separation_routes(n: usize, q: u64, r: u32) -> Result<GlSeparationRoutes> {
    check_q(q)?;
    check_excluded(n, q)?;
    let eigs = gl_spectrum(n, q)?.distinct();
    Ok(GlSeparationRoutes {
        closed_form: gl_separation_closed_form(n, q, r),
        qspan: ExactScalar::one() - qspan_exact(n, r, n, q),
        lagrange: separation_from_spectrum(&eigs, r)?,
    })
}

/// `s(r)` for `GL(n, q)`, all three routes required to agree.
pub fn gl_separation_exact(n: usize, q: u64, r: u32) -> Result<ExactScalar> {
    let routes = gl_separation_routes(n, q, r)?;
    if !routes.agree() {
        return Err(Error::consistency(format!(
            "GL({n},{q}) s({r}): closed {}, qspan {}, lagrange {}",
            routes.closed_form, routes.qspan, routes.lagrange
        )));
    }
    Ok(routes.closed_form)
}

pub fn gl_separation_curve(n: usize, q: u64, r_max: u32) -> Result<Curve> {
    let mut curve = Curve::new(Metric::Separation, n, Some(q));
    for r in 0..=r_max {
        curve.push(r, gl_separation_exact(n, q, r)?, GL_ROUTES);
    }
    if let Some(r) = curve.first_increase() {
        log::warn!("GL({n},{q}) separation increases at r = {r}");
    }
    Ok(curve)
}

/// `(q^{−(c+1)} − 4 q^{−(2c+3)}, 2 q^{−(c+1)})`, bounds on `s(n + c)`.
pub fn gl_separation_bounds(q: u64, c: u32) -> (ExactScalar, ExactScalar) {
    let qs = ExactScalar::from_integer(q.into());
    let lead = powi(&qs, -(i64::from(c) + 1));
    let lower = &lead - ExactScalar::from_integer(4.into()) * powi(&qs, -(2 * i64::from(c) + 3));
    let upper = lead * ExactScalar::from_integer(2.into());
    (lower, upper)
}

/// Whether `lower ≤ s(n + c) ≤ upper` for the given `n`.
pub fn check_gl_bounds(n: usize, q: u64, c: u32) -> Result<bool> {
    let s = gl_separation_exact(n, q, n as u32 + c)?;
    let (lower, upper) = gl_separation_bounds(q, c);
    Ok(lower <= s && s <= upper)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerLimit {
    pub value: f64,
    /// Number of product factors used.
    pub factors: u32,
}

/// `lim_{n→∞} s(n + c) = 1 − Π_{m≥1} (1 − q^{−(c+m)})`.
///
/// Summed as `−expm1(Σ ln(1 − q^{−(c+m)}))`; factors stop once
/// `q^{−(c+m)}` no longer moves the running log-sum in `f64`.
pub fn gl_separation_limit(q: u64, c: u32) -> EulerLimit {
    let qf = q as f64;
    let mut log_sum = 0.0f64;
    let mut factors = 0;
    for m in 1u32.. {
        let x = qf.powf(-f64::from(c + m));
        if factors > 0 && x <= log_sum.abs() * f64::EPSILON * 0.5 {
            break;
        }
        log_sum += (-x).ln_1p();
        factors = m;
    }
    EulerLimit { value: -log_sum.exp_m1(), factors }
}

fn mobius(mut d: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if d > 1 {
        result = -result;
    }
    result
}

/// Number of cuspidal characters of `GL(m, q)`:
/// `(1/m) Σ_{d | m} μ(d) (q^{m/d} − 1)`.
pub fn cuspidal_count(m: usize, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if m == 0 {
        return Err(Error::invalid("cuspidal degree must be at least 1"));
    }
    let total: BigInt = (1..=m as u64)
        .filter(|d| (m as u64).is_multiple_of(*d))
        .map(|d| (BigInt::from(q).pow((m as u64 / d) as u32) - 1) * mobius(d))
        .sum();
    let (quot, rem) = total.div_rem(&BigInt::from(m));
    if !rem.is_zero() {
        return Err(Error::consistency(format!("cuspidal count for m = {m}, q = {q} is not integral")));
    }
    quot.to_biguint()
        .ok_or_else(|| Error::consistency("negative cuspidal count".to_string()))
}

/// Number of degree-`n` families of partitions, the coefficient of `x^n` in
/// `Π_m Π_k (1 − x^{mk})^{−|C_m|}`. With `avoid_e`, the unit cuspidal is
/// dropped, counting families with `Λ(e) = ∅`.
pub fn count_gl_families(n: usize, q: u64, avoid_e: bool) -> Result<BigUint> {
    check_q(q)?;
    let mut series = vec![BigUint::zero(); n + 1];
    series[0] = BigUint::one();
    for m in 1..=n {
        let mut count = cuspidal_count(m, q)?;
        if m == 1 && avoid_e {
            count -= 1u32;
        }
        if count.is_zero() {
            continue;
        }
        for k in 1..=n / m {
            let step = m * k;
            // (1 − x^step)^{−count} = Σ_t C(count + t − 1, t) x^{step·t}
            let mut coeffs = vec![BigUint::one()];
            for t in 1..=n / step {
                let prev = coeffs.last().unwrap().clone();
                coeffs.push(prev * (&count + (t as u32 - 1)) / t as u32);
            }
            let mut next = vec![BigUint::zero(); n + 1];
            for (deg, v) in series.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (t, coef) in coeffs.iter().enumerate() {
                    let target = deg + step * t;
                    if target > n {
                        break;
                    }
                    next[target] += v * coef;
                }
            }
            series = next;
        }
    }
    Ok(series.swap_remove(n))
}

/// A finitely supported map from cuspidals to partitions. Cuspidals are
/// named `(degree m, index)` with `index < |C_m|`; the unit cuspidal `e` is
/// `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlIrrepFamily {
    /// `(m, index, Λ(c))` with nonempty partitions, sorted by cuspidal.
    pub assignments: Vec<(usize, u64, Partition)>,
    pub degree: usize,
}

impl GlIrrepFamily {
    pub fn new(mut assignments: Vec<(usize, u64, Partition)>, q: u64) -> Result<Self> {
        assignments.retain(|(_, _, p)| !p.is_empty());
        assignments.sort_by_key(|a| (a.0, a.1));
        if assignments.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::invalid("cuspidal assigned twice"));
        }
        for (m, idx, _) in &assignments {
            let count = cuspidal_count(*m, q)?;
            if BigUint::from(*idx) >= count {
                return Err(Error::invalid(format!("GL({m},{q}) has only {count} cuspidals, index {idx}")));
            }
        }
        let degree = assignments.iter().map(|(m, _, p)| m * p.size()).sum();
        Ok(GlIrrepFamily { assignments, degree })
    }

    /// `Λ(e)`.
    pub fn unit_partition(&self) -> Partition {
        self.assignments
            .iter()
            .find(|(m, idx, _)| *m == 1 && *idx == 0)
            .map(|(_, _, p)| p.clone())
            .unwrap_or_default()
    }
}

/// All degree-`n` families, for small `(n, q)`. Fails if the cuspidal list
/// would exceed `max_cuspidals` entries.
pub fn enumerate_gl_families(n: usize, q: u64, max_cuspidals: usize) -> Result<Vec<GlIrrepFamily>> {
    check_q(q)?;
    let mut cuspidals = Vec::new();
    for m in 1..=n {
        let count = cuspidal_count(m, q)?;
        let count = usize::try_from(count)
            .ok()
            .filter(|c| cuspidals.len() + c <= max_cuspidals)
            .ok_or_else(|| Error::invalid(format!("too many cuspidals for GL({n},{q})")))?;
        cuspidals.extend((0..count as u64).map(|idx| (m, idx)));
    }

    fn go(
        cuspidals: &[(usize, u64)],
        remaining: usize,
        chosen: &mut Vec<(usize, u64, Partition)>,
        out: &mut Vec<Vec<(usize, u64, Partition)>>,
    ) {
        let Some((&(m, idx), rest)) = cuspidals.split_first() else {
            if remaining == 0 {
                out.push(chosen.clone());
            }
            return;
        };
        go(rest, remaining, chosen, out);
        for size in 1..=remaining / m {
            for part in enumerate_partitions(size) {
                chosen.push((m, idx, part));
                go(rest, remaining - m * size, chosen, out);
                chosen.pop();
            }
        }
    }

    let mut raw = Vec::new();
    go(&cuspidals, n, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|a| GlIrrepFamily::new(a, q)).collect()
}

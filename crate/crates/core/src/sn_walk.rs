//! The walk on `Irr(S_n)` driven by the defining representation.
//!
//! From `λ` the walk removes a corner box and re-attaches a box somewhere,
//! with `K(λ, ρ) = d_ρ m_ρ(λ ⊗ η) / (n d_λ)`. It starts at the trivial
//! representation `(n)` and is reversible for the Plancherel measure.
//!
//! The ratio `K^r((n), λ)/π(λ)` is available by three routes:
//!
//! * matrix: iterate the kernel from the point mass at `(n)`;
//! * spectral: `Σ_C (fp(C)/n)^r |C| χ^λ(C) / d_λ`;
//! * nonnegative: `Σ_a P(a, r, n) (n − a)! d_{λ/(n−a)} / d_λ`.
//!
//! The separation distance is attained at `(1^n)` and reduces to
//! `Σ_{i=0}^{n−2} (−1)^{n−i} C(n, i) (n − i − 1) (i/n)^r`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::characters::{defining_power_multiplicity, CharacterTable};
use crate::combinatorics::{binomial, count_partitions_no_ones, count_skew_syt, count_syt, factorial};
use crate::curve::{Curve, Metric};
use crate::error::{Error, Result};
use crate::interpolation::{separation_from_spectrum, verify_distance, EigenvalueList};
use crate::kernel::{Spectrum, SpectrumEntry, TransitionKernel};
use crate::limits::check_n;
use crate::occupancy::{occupancy_exact, poisson_not01};
use crate::partition::{enumerate_partitions, Partition, SkewShape};
use crate::scalar::{as_integer, int, to_f64, ExactScalar};

/// Route tag written for separation records where every route agreed.
pub const ALL_ROUTES: &str = "matrix+spectral+nonneg+occupancy+closed+lagrange";

/// Kernel from character inner products.
pub fn build_kernel_characters(n: usize) -> Result<TransitionKernel> {
    let table = CharacterTable::new(n)?;
    kernel_from_table(&table)
}

fn kernel_from_table(table: &CharacterTable) -> Result<TransitionKernel> {
    let n = table.n();
    let eta = table.defining_character();
    let states = table.partitions().to_vec();
    let dims: Vec<i64> = (0..states.len()).map(|l| table.dimension(l)).collect();
    let mut matrix = Vec::with_capacity(states.len());
    for (l, lambda) in states.iter().enumerate() {
        let row = states
            .iter()
            .enumerate()
            .map(|(r, rho)| {
                let m = table.tensor_multiplicity(lambda, &eta, rho)?;
                Ok(ExactScalar::new(m * dims[r], BigInt::from(dims[l] * n as i64)))
            })
            .collect::<Result<Vec<_>>>()?;
        matrix.push(row);
    }
    TransitionKernel::new(states, matrix, plancherel(&dims, n))
}

fn plancherel(dims: &[i64], n: usize) -> Vec<ExactScalar> {
    let order = BigInt::from(factorial(n));
    dims.iter().map(|&d| ExactScalar::new(BigInt::from(d * d), order.clone())).collect()
}

/// Kernel from the box-moving description: `m_ρ(λ ⊗ η)` counts the
/// partitions `μ` obtained from `λ` by removing a corner and from which `ρ`
/// is obtained by adding one.
pub fn build_kernel_boxes(n: usize) -> Result<TransitionKernel> {
    check_n(n)?;
    let states = enumerate_partitions(n);
    let dims: Vec<i64> = states
        .iter()
        .map(|l| i64::try_from(count_syt(l)).expect("dimension fits in i64"))
        .collect();
    let mut matrix = vec![vec![ExactScalar::zero(); states.len()]; states.len()];
    for (l, lambda) in states.iter().enumerate() {
        for row in lambda.removable_rows() {
            let mu = lambda.remove_box(row);
            for add in mu.addable_rows() {
                let rho = mu.add_box(add);
                let r = states.iter().position(|s| *s == rho).expect("ρ is a partition of n");
                matrix[l][r] += ExactScalar::new(BigInt::from(dims[r]), BigInt::from(dims[l] * n as i64));
            }
        }
    }
    TransitionKernel::new(states, matrix, plancherel(&dims, n))
}

/// Both kernel constructions, compared entry by entry.
pub fn check_kernel_routes(n: usize) -> Result<TransitionKernel> {
    let chars = build_kernel_characters(n)?;
    let boxes = build_kernel_boxes(n)?;
    if chars != boxes {
        return Err(Error::consistency(format!("character and box-move kernels differ for n = {n}")));
    }
    Ok(chars)
}

/// Eigenvalues `i/n` for `i ∈ {0, ..., n−2} ∪ {n}`; the multiplicity of
/// `i/n` is the number of classes with exactly `i` fixed points.
pub fn spectrum_sn(n: usize) -> Result<Spectrum> {
    if n < 2 {
        return Err(Error::Precondition(format!("spectrum needs n >= 2, got {n}")));
    }
    let entries = (0..=n - 2)
        .chain(std::iter::once(n))
        .map(|i| SpectrumEntry {
            eigenvalue: ExactScalar::new(i.into(), n.into()),
            multiplicity: Some(count_partitions_no_ones(n - i)),
        })
        .collect();
    Spectrum::new(entries)
}

/// `Σ_{i=0}^{n−2} (−1)^{n−i} C(n, i) (n − i − 1) (i/n)^r`, evaluated over the
/// common denominator `n^r` in big integers. Valid for any `n ≥ 2`.
pub fn separation_closed_form(n: usize, r: u32) -> ExactScalar {
    assert!(n >= 2, "separation needs n >= 2");
    let numer: BigInt = (0..=n - 2)
        .map(|i| {
            let term = BigInt::from(binomial(n, i as i64)) * (n - i - 1) * BigInt::from(i).pow(r);
            if (n - i).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum();
    ExactScalar::new(numer, BigInt::from(n).pow(r))
}

/// Closed-form-only curve for `r = 0..=r_max`; usable for large `n`.
pub fn separation_closed_form_curve(n: usize, r_max: u32) -> Curve {
    let mut curve = Curve::new(Metric::Separation, n, None);
    for r in 0..=r_max {
        curve.push(r, separation_closed_form(n, r), "closed");
    }
    curve
}

/// Limit profile `1 − e^{−e^{−c}} (1 + e^{−c})` of `s(n log n + cn)`.
pub fn separation_profile(c: f64) -> f64 {
    poisson_not01(c)
}

/// Separation at `r = ⌈n ln n + cn⌉` against the limit profile.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfilePoint {
    pub n: usize,
    pub c: f64,
    pub r: u32,
    pub exact: ExactScalar,
    pub value: f64,
    pub limit: f64,
    /// `|value − limit| · n / ln n`.
    pub scaled_error: f64,
}

pub fn profile_point(n: usize, c: f64) -> ProfilePoint {
    let nf = n as f64;
    let r = (nf * nf.ln() + c * nf).ceil().max(0.0) as u32;
    let exact = separation_closed_form(n, r);
    let value = to_f64(&exact);
    let limit = separation_profile(c);
    ProfilePoint { n, c, r, exact, value, limit, scaled_error: (value - limit).abs() * nf / nf.ln() }
}

/// Every route to `s(r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationRoutes {
    /// `max_λ [1 − K^r((n), λ)/π(λ)]` from the iterated kernel.
    pub matrix: ExactScalar,
    /// `1 − ratio((1^n))` through the character sum.
    pub spectral: ExactScalar,
    /// `1 − ratio((1^n))` through the nonnegative expansion.
    pub nonneg: ExactScalar,
    /// `1 − P(n, r, n) − P(n − 1, r, n)`.
    pub occupancy: ExactScalar,
    pub closed_form: ExactScalar,
    /// Eigenvalue-only interpolation formula.
    pub lagrange: ExactScalar,
}

impl SeparationRoutes {
    fn all(&self) -> [(&'static str, &ExactScalar); 6] {
        [
            ("matrix", &self.matrix),
            ("spectral", &self.spectral),
            ("nonneg", &self.nonneg),
            ("occupancy", &self.occupancy),
            ("closed", &self.closed_form),
            ("lagrange", &self.lagrange),
        ]
    }

    pub fn agree(&self) -> bool {
        self.all().iter().all(|(_, v)| *v == &self.closed_form)
    }

    pub fn describe(&self) -> String {
        self.all()
            .iter()
            .map(|(name, v)| format!("{name}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// The walk on `Irr(S_n)` with its character table and cached tableau
/// counts.
#[derive(Clone, Debug)]
pub struct SnWalk {
    n: usize,
    table: CharacterTable,
    kernel: TransitionKernel,
    dims: Vec<BigInt>,
    /// `row_skew[λ][k] = d_{λ/(k)}`.
    row_skew: Vec<Vec<BigInt>>,
}

impl SnWalk {
    pub fn new(n: usize) -> Result<Self> {
        let table = CharacterTable::new(n)?;
        let kernel = kernel_from_table(&table)?;
        let dims = (0..table.partitions().len()).map(|l| BigInt::from(table.dimension(l))).collect();
        let row_skew = table
            .partitions()
            .iter()
            .map(|lambda| {
                (0..=n)
                    .map(|k| BigInt::from(count_skew_syt(&SkewShape::new(lambda.clone(), Partition::row(k)))))
                    .collect()
            })
            .collect();
        Ok(SnWalk { n, table, kernel, dims, row_skew })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn kernel(&self) -> &TransitionKernel {
        &self.kernel
    }

    pub fn states(&self) -> &[Partition] {
        self.kernel.states()
    }

    /// Index of the trivial representation `(n)`.
    pub fn start(&self) -> usize {
        0
    }

    /// Index of the sign representation `(1^n)`.
    pub fn sign_state(&self) -> usize {
        self.states().len() - 1
    }

    pub fn index_of(&self, lambda: &Partition) -> Result<usize> {
        self.table
            .index_of(lambda)
            .ok_or_else(|| Error::invalid(format!("{lambda} is not a partition of {}", self.n)))
    }

    /// `K^r((n), ·)` for `r = 0..=r_max`.
    pub fn distributions(&self, r_max: u32) -> Vec<Vec<ExactScalar>> {
        self.kernel.distributions_from(self.start(), r_max)
    }

    pub fn distribution(&self, r: u32) -> Vec<ExactScalar> {
        self.distributions(r).pop().unwrap()
    }

    /// `Σ_C (fp(C)/n)^r |C| χ^λ(C) / d_λ`.
    pub fn ratio_spectral(&self, r: u32, lambda: usize) -> ExactScalar {
        let numer: BigInt = self
            .table
            .classes()
            .iter()
            .enumerate()
            .map(|(c, class)| {
                BigInt::from(class.class_size)
                    * BigInt::from(class.fixed_points).pow(r)
                    * self.table.value(lambda, c)
            })
            .sum();
        ExactScalar::new(numer, BigInt::from(self.n).pow(r) * &self.dims[lambda])
    }

    /// Terms `P(a, r, n) (n − a)! d_{λ/(n−a)} / d_λ` for `a = 0..=n`.
    pub fn nonneg_terms(&self, r: u32, lambda: usize) -> Vec<ExactScalar> {
        let occ: Vec<ExactScalar> = (0..=self.n).map(|a| occupancy_exact(a, r, self.n)).collect();
        self.nonneg_terms_with(&occ, lambda)
    }

    fn nonneg_terms_with(&self, occ: &[ExactScalar], lambda: usize) -> Vec<ExactScalar> {
        let n = self.n;
        (0..=n)
            .map(|a| {
                let weight = BigInt::from(factorial(n - a)) * &self.row_skew[lambda][n - a];
                &occ[a] * ExactScalar::new(weight, self.dims[lambda].clone())
            })
            .collect()
    }

    pub fn ratio_nonneg(&self, r: u32, lambda: usize) -> ExactScalar {
        self.nonneg_terms(r, lambda).into_iter().sum()
    }

    /// Ratios for every state given the row `K^r((n), ·)`, with all three
    /// routes compared.
    fn ratios_from(&self, r: u32, dist: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        let occ: Vec<ExactScalar> = (0..=self.n).map(|a| occupancy_exact(a, r, self.n)).collect();
        (0..self.states().len())
            .map(|l| {
                let matrix = &dist[l] / &self.kernel.stationary()[l];
                let spectral = self.ratio_spectral(r, l);
                let nonneg: ExactScalar = self.nonneg_terms_with(&occ, l).into_iter().sum();
                if matrix != spectral || matrix != nonneg {
                    return Err(Error::consistency(format!(
                        "ratio at {} for r = {r}: matrix {matrix}, spectral {spectral}, nonneg {nonneg}",
                        self.states()[l]
                    )));
                }
                Ok(matrix)
            })
            .collect()
    }

    /// `K^r((n), λ)/π(λ)` for every `λ`, three routes checked.
    pub fn ratios(&self, r: u32) -> Result<Vec<ExactScalar>> {
        self.ratios_from(r, &self.distribution(r))
    }

    pub fn ratio_at(&self, r: u32, lambda: &Partition) -> Result<ExactScalar> {
        let l = self.index_of(lambda)?;
        Ok(self.ratios(r)?.swap_remove(l))
    }

    /// Multiplicity of `λ` in `η^{⊗r}`: `(1/n!) Σ_C |C| fp(C)^r χ^λ(C)`.
    pub fn tensor_power_multiplicity(&self, r: u32, lambda: &Partition) -> Result<BigInt> {
        let l = self.index_of(lambda)?;
        let m = defining_power_multiplicity(&self.table, l, r);
        match as_integer(&m) {
            Some(v) if !v.is_negative() => Ok(v),
            _ => Err(Error::consistency(format!(
                "multiplicity of {lambda} in the {r}-th tensor power is {m}"
            ))),
        }
    }

    /// `K^r((n), λ) · n^r / d_λ = m_λ(η^{⊗r})`.
    pub fn tensor_power_check(&self, r: u32, lambda: &Partition) -> Result<bool> {
        let l = self.index_of(lambda)?;
        let m = self.tensor_power_multiplicity(r, lambda)?;
        let lhs = &self.distribution(r)[l] * ExactScalar::new(BigInt::from(self.n).pow(r), self.dims[l].clone());
        Ok(lhs == int(m))
    }

    fn separation_routes_from(&self, r: u32, dist: &[ExactScalar], lagrange_eigs: &EigenvalueList) -> Result<SeparationRoutes> {
        if self.n < 2 {
            return Err(Error::Precondition("separation needs n >= 2".into()));
        }
        let ratios = self.ratios_from(r, dist)?;
        let min = ratios.iter().min().expect("at least one state");
        let sign = self.sign_state();
        if &ratios[sign] != min {
            let argmin = ratios.iter().position(|v| v == min).unwrap();
            return Err(Error::consistency(format!(
                "r = {r}: minimum ratio at {} ({min}) is below the sign representation's {}",
                self.states()[argmin],
                ratios[sign]
            )));
        }
        let one = ExactScalar::one();
        let routes = SeparationRoutes {
            matrix: &one - min,
            spectral: &one - self.ratio_spectral(r, sign),
            nonneg: &one - self.ratio_nonneg(r, sign),
            occupancy: &one - occupancy_exact(self.n, r, self.n) - occupancy_exact(self.n - 1, r, self.n),
            closed_form: separation_closed_form(self.n, r),
            lagrange: separation_from_spectrum(lagrange_eigs, r)?,
        };
        if !routes.agree() {
            return Err(Error::consistency(format!("s({r}) routes disagree: {}", routes.describe())));
        }
        Ok(routes)
    }

    /// All routes to `s(r)`; fails unless they agree and `(1^n)` attains the
    /// minimum ratio.
    pub fn separation_routes(&self, r: u32) -> Result<SeparationRoutes> {
        let eigs = spectrum_sn(self.n)?.distinct();
        self.separation_routes_from(r, &self.distribution(r), &eigs)
    }

    pub fn separation_exact(&self, r: u32) -> Result<ExactScalar> {
        Ok(self.separation_routes(r)?.closed_form)
    }

    /// Total variation between `K^r((n), ·)` and the Plancherel measure.
    pub fn tv_exact(&self, r: u32) -> ExactScalar {
        tv_between(&self.distribution(r), self.kernel.stationary())
    }

    /// Separation for `r = 0..=r_max`, one record per `r`, every route
    /// checked. An increase between consecutive steps is logged, not fatal.
    pub fn separation_curve(&self, r_max: u32) -> Result<Curve> {
        let eigs = spectrum_sn(self.n)?.distinct();
        let mut curve = Curve::new(Metric::Separation, self.n, None);
        for (r, dist) in self.distributions(r_max).iter().enumerate() {
            let routes = self.separation_routes_from(r as u32, dist, &eigs)?;
            curve.push(r as u32, routes.closed_form, ALL_ROUTES);
        }
        if let Some(r) = curve.first_increase() {
            log::warn!("separation for n = {} increases at r = {r}", self.n);
        }
        Ok(curve)
    }

    pub fn tv_curve(&self, r_max: u32) -> Curve {
        let mut curve = Curve::new(Metric::TotalVariation, self.n, None);
        for (r, dist) in self.distributions(r_max).iter().enumerate() {
            curve.push(r as u32, tv_between(dist, self.kernel.stationary()), "matrix");
        }
        curve
    }

    /// `g_C(ρ) = χ^ρ(C)/d_ρ`, an eigenfunction with eigenvalue `fp(C)/n`.
    pub fn eigenfunction(&self, class: usize) -> Vec<ExactScalar> {
        (0..self.states().len())
            .map(|l| ExactScalar::new(self.table.value(l, class).into(), self.dims[l].clone()))
            .collect()
    }

    pub fn eigenvalue_of_class(&self, class: usize) -> ExactScalar {
        ExactScalar::new(self.table.classes()[class].fixed_points.into(), self.n.into())
    }

    /// Graph distance from `(n)` to `λ`, bounded by the number of distinct
    /// eigenvalues minus one.
    pub fn distance_to(&self, lambda: &Partition) -> Result<usize> {
        let eigs = spectrum_sn(self.n)?.distinct();
        verify_distance(&self.kernel, &eigs, self.start(), self.index_of(lambda)?)
    }
}

fn tv_between(p: &[ExactScalar], q: &[ExactScalar]) -> ExactScalar {
    let total: ExactScalar = p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum();
    total / int(2)
}

/// Wrapper building the walk for one query.
pub fn ratio_at(n: usize, r: u32, lambda: &Partition) -> Result<ExactScalar> {
    SnWalk::new(n)?.ratio_at(r, lambda)
}

pub fn tensor_power_check(n: usize, r: u32, lambda: &Partition) -> Result<bool> {
    SnWalk::new(n)?.tensor_power_check(r, lambda)
}

pub fn separation_exact(n: usize, r: u32) -> Result<ExactScalar> {
    SnWalk::new(n)?.separation_exact(r)
}

pub fn tv_exact(n: usize, r: u32) -> Result<ExactScalar> {
    Ok(SnWalk::new(n)?.tv_exact(r))
}

/// `r` with `(n ln n)/2 + cn ≤ r`, rounded up.
pub fn tv_cutoff_time(n: usize, c: f64) -> u32 {
    let nf = n as f64;
    (0.5 * nf * nf.ln() + c * nf).ceil().max(0.0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn s3_kernel() {
        let k = build_kernel_characters(3).unwrap();
        assert_eq!(k.states(), &[p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(k.matrix()[0], vec![ratio(1, 3), ratio(2, 3), int(0)]);
        assert_eq!(k.matrix()[2], vec![int(0), ratio(2, 3), ratio(1, 3)]);
        assert_eq!(k.stationary(), &[ratio(1, 6), ratio(2, 3), ratio(1, 6)]);
        assert!(k.rows_sum_to_one());
        assert_eq!(check_kernel_routes(3).unwrap(), k);
    }

    #[test]
    fn only_near_trivial_states_reach_trivial() {
        for n in 2..=7 {
            let k = build_kernel_boxes(n).unwrap();
            for (l, lambda) in k.states().iter().enumerate() {
                let expected = *lambda == p(&[n]) || (n >= 2 && *lambda == p(&[n - 1, 1]));
                assert_eq!(k.entry(l, 0).is_positive(), expected, "{lambda}");
            }
        }
    }

    #[test]
    fn s4_spectrum() {
        let s = spectrum_sn(4).unwrap();
        let mults: Vec<u32> = s
            .entries()
            .iter()
            .map(|e| u32::try_from(e.multiplicity.clone().unwrap()).unwrap())
            .collect();
        assert_eq!(s.eigenvalues(), vec![int(1), ratio(2, 4), ratio(1, 4), int(0)]);
        assert_eq!(mults, vec![1, 1, 1, 2]);
        assert!(spectrum_sn(1).is_err());
    }

    #[test]
    fn ratio_examples() {
        let w = SnWalk::new(3).unwrap();
        assert_eq!(w.ratio_at(0, &p(&[3])).unwrap(), int(6));
        assert_eq!(w.ratio_at(1, &p(&[1, 1, 1])).unwrap(), int(0));
        assert_eq!(w.ratio_at(2, &p(&[1, 1, 1])).unwrap(), ratio(2, 3));
        assert!(w.ratio_at(2, &p(&[2, 2])).is_err());
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation_exact(3, 2).unwrap(), ratio(1, 3));
        assert_eq!(separation_exact(4, 3).unwrap(), ratio(5, 8));
        assert_eq!(separation_exact(4, 2).unwrap(), int(1));
        assert_eq!(separation_closed_form(4, 3), ratio(5, 8));
        for n in 2..=30 {
            assert_eq!(separation_closed_form(n, 0), int(1), "n={n}");
        }
    }

    #[test]
    fn tensor_power_examples() {
        let w = SnWalk::new(3).unwrap();
        assert_eq!(w.tensor_power_multiplicity(1, &p(&[3])).unwrap(), BigInt::one());
        assert_eq!(w.tensor_power_multiplicity(1, &p(&[1, 1, 1])).unwrap(), BigInt::zero());
        for lambda in w.states().to_vec() {
            let expected = BigInt::from(i32::from(lambda == p(&[3])));
            assert_eq!(w.tensor_power_multiplicity(0, &lambda).unwrap(), expected);
            for r in 0..6 {
                assert!(w.tensor_power_check(r, &lambda).unwrap());
            }
        }
    }

    #[test]
    fn tv_at_zero() {
        for n in 2..=6 {
            let expected = int(1) - ExactScalar::new(BigInt::one(), BigInt::from(factorial(n)));
            assert_eq!(tv_exact(n, 0).unwrap(), expected);
        }
    }

    #[test]
    fn profile_values() {
        assert!(separation_profile(50.0) < 1e-20);
        assert!((separation_profile(0.0) - 0.2642411).abs() < 1e-7);
        let pt = profile_point(16, 0.0);
        assert_eq!(pt.r, (16.0f64 * 16f64.ln()).ceil() as u32);
    }

    #[test]
    fn s3_curve_values() {
        let curve = SnWalk::new(3).unwrap().separation_curve(3).unwrap();
        let vals: Vec<ExactScalar> = curve.values().into_iter().cloned().collect();
        assert_eq!(vals, vec![int(1), int(1), ratio(1, 3), ratio(1, 9)]);
    }

    #[test]
    fn distances() {
        for n in 2..=8 {
            let w = SnWalk::new(n).unwrap();
            assert_eq!(w.distance_to(&Partition::column(n)).unwrap(), n - 1);
            assert_eq!(w.distance_to(&p(&[n])).unwrap(), 0);
        }
    }
}

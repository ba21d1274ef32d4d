//! Conjugacy classes and irreducible characters of `S_n`, plus the
//! fixed-point character sums that drive the walk's nonnegative expansion.
//!
//! Rows and columns of [`CharacterTable`] both follow
//! [`enumerate_partitions`] order, so the first row is the trivial character
//! and the first column is the class of `n`-cycles.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::combinatorics::{binomial, count_skew_syt, factorial};
use crate::error::{Error, Result};
use crate::limits::check_n;
use crate::partition::{enumerate_partitions, Partition, SkewShape};
use crate::scalar::{as_integer, ratio, ExactScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDescriptor {
    pub cycle_type: Partition,
    pub class_size: u64,
    /// Number of 1-cycles.
    pub fixed_points: usize,
    /// Cycle length `j` ↦ number of `j`-cycles.
    pub cycle_counts: BTreeMap<usize, usize>,
    pub sign: i8,
    pub num_cycles: usize,
}

impl ClassDescriptor {
    pub fn new(cycle_type: Partition) -> Self {
        let n = cycle_type.size();
        let mut cycle_counts = BTreeMap::new();
        for &part in cycle_type.parts() {
            *cycle_counts.entry(part).or_insert(0) += 1;
        }
        let centralizer = cycle_counts
            .iter()
            .fold(num_bigint::BigUint::from(1u32), |acc, (&j, &nj)| {
                acc * num_bigint::BigUint::from(j).pow(nj as u32) * factorial(nj)
            });
        let class_size = u64::try_from(factorial(n) / centralizer).expect("class size overflows u64");
        let num_cycles = cycle_type.len();
        ClassDescriptor {
            fixed_points: cycle_type.multiplicity(1),
            sign: if (n - num_cycles).is_multiple_of(2) { 1 } else { -1 },
            cycle_type,
            class_size,
            cycle_counts,
            num_cycles,
        }
    }
}

/// One descriptor per partition of `n`, `1 ≤ n ≤` [`max_n`](crate::limits::max_n).
pub fn conjugacy_classes(n: usize) -> Result<Vec<ClassDescriptor>> {
    check_n(n)?;
    Ok(enumerate_partitions(n).into_iter().map(ClassDescriptor::new).collect())
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    classes: Vec<ClassDescriptor>,
    /// `values[λ][C]`
    values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

pub fn character_table(n: usize) -> Result<CharacterTable> {
    CharacterTable::new(n)
}

impl CharacterTable {
    pub fn new(n: usize) -> Result<Self> {
        let classes = conjugacy_classes(n)?;
        let partitions = enumerate_partitions(n);
        let mut values = vec![vec![0i64; classes.len()]; partitions.len()];
        for (c, class) in classes.iter().enumerate() {
            let mut memo = HashMap::new();
            for (l, lambda) in partitions.iter().enumerate() {
                values[l][c] = murnaghan_nakayama(lambda.parts(), class.cycle_type.parts(), &mut memo);
            }
        }
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(CharacterTable { n, partitions, classes, values, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn classes(&self) -> &[ClassDescriptor] {
        &self.classes
    }

    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn value(&self, lambda: usize, class: usize) -> i64 {
        self.values[lambda][class]
    }

    pub fn row(&self, lambda: usize) -> &[i64] {
        &self.values[lambda]
    }

    /// `d_λ = χ^λ(identity)`; the identity class is the last column.
    pub fn dimension(&self, lambda: usize) -> i64 {
        self.values[lambda][self.classes.len() - 1]
    }

    pub fn group_order(&self) -> BigInt {
        factorial(self.n).into()
    }

    /// The defining character: number of fixed points on each class.
    pub fn defining_character(&self) -> Vec<i64> {
        self.classes.iter().map(|c| c.fixed_points as i64).collect()
    }

    fn lookup(&self, lambda: &Partition) -> Result<usize> {
        self.index_of(lambda)
            .ok_or_else(|| Error::invalid(format!("{lambda} is not a partition of {}", self.n)))
    }

    /// `m_ρ(λ ⊗ η) = (1/n!) Σ_C |C| χ^λ(C) η(C) χ^ρ(C)` for a real class
    /// function `η` given in column order. Fails unless the result is a
    /// nonnegative integer.
    pub fn tensor_multiplicity(&self, lambda: &Partition, eta: &[i64], rho: &Partition) -> Result<BigInt> {
        if eta.len() != self.classes.len() {
            return Err(Error::invalid(format!(
                "class function has {} values, expected {}",
                eta.len(),
                self.classes.len()
            )));
        }
        let (l, r) = (self.lookup(lambda)?, self.lookup(rho)?);
        let total: BigInt = self
            .classes
            .iter()
            .enumerate()
            .map(|(c, class)| {
                BigInt::from(class.class_size) * self.values[l][c] * eta[c] * self.values[r][c]
            })
            .sum();
        let (m, rem) = total.div_rem(&self.group_order());
        if !rem.is_zero() || m.is_negative() {
            return Err(Error::consistency(format!(
                "multiplicity of {rho} in {lambda} ⊗ η is {total}/{}, not a nonnegative integer",
                self.n
            )));
        }
        Ok(m)
    }

    /// `Σ_{g : fp(g) = i} χ^λ(g)`, evaluated by summing over classes and by
    /// the inclusion–exclusion formula
    /// `(n!/i!) Σ_j (−1)^j / j! · d_{λ/(n−i−j)}`; the two must agree.
    pub fn fixed_point_character_sum(&self, lambda: &Partition, i: usize) -> Result<BigInt> {
        let n = self.n;
        if i > n {
            return Err(Error::invalid(format!("fixed-point count {i} exceeds n = {n}")));
        }
        let l = self.lookup(lambda)?;
        let by_classes: BigInt = self
            .classes
            .iter()
            .enumerate()
            .filter(|(_, class)| class.fixed_points == i)
            .map(|(c, class)| BigInt::from(class.class_size) * self.values[l][c])
            .sum();

        let n_fact: BigInt = factorial(n).into();
        let i_fact: BigInt = factorial(i).into();
        let by_tableaux: ExactScalar = (0..=n - i)
            .map(|j| {
                let skew = count_skew_syt(&SkewShape::new(lambda.clone(), Partition::row(n - i - j)));
                let sign = if j % 2 == 0 { 1 } else { -1 };
                ratio(BigInt::from(skew) * sign, BigInt::from(factorial(j)))
            })
            .sum::<ExactScalar>()
            * ratio(n_fact, i_fact);

        match as_integer(&by_tableaux) {
            Some(v) if v == by_classes => Ok(v),
            _ => Err(Error::consistency(format!(
                "fixed-point sum for {lambda}, i = {i}: classes give {by_classes}, tableaux give {by_tableaux}"
            ))),
        }
    }

    /// CSV with a header row of cycle types and one row per `λ`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda");
        for class in &self.classes {
            write!(out, ",\"{}\"", class.cycle_type).unwrap();
        }
        out.push('\n');
        for (l, lambda) in self.partitions.iter().enumerate() {
            write!(out, "\"{lambda}\"").unwrap();
            for v in &self.values[l] {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// `χ^λ` on the class of cycle type `mu`, removing rim hooks of length
/// `mu[0], mu[1], ...` in turn. Rim hooks are bead moves on the beta-set
/// `{λ_i + ℓ − 1 − i}`; the sign is the parity of beads jumped over.
/// `memo` is keyed by the remaining shape and must be used for one `mu` only.
fn murnaghan_nakayama(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&hook, rest)) = mu.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < hook || beta.contains(&(b - hook)) {
            continue;
        }
        let target = b - hook;
        let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Convenience wrapper building the table for `n`.
pub fn fixed_point_character_sum(n: usize, lambda: &Partition, i: usize) -> Result<BigInt> {
    CharacterTable::new(n)?.fixed_point_character_sum(lambda, i)
}

/// Convenience wrapper building the table for `n`.
pub fn tensor_multiplicity(n: usize, lambda: &Partition, eta: &[i64], rho: &Partition) -> Result<BigInt> {
    CharacterTable::new(n)?.tensor_multiplicity(lambda, eta, rho)
}

/// `Σ_{g ∈ S_n : fp(g) = i} sign(g)`, from the cycle index of `S_n`:
/// `(−1)^{n−i+1} C(n, i) (n − i − 1)` for `0 ≤ i ≤ n − 1`, and 1 for `i = n`.
pub fn signed_fixed_point_sum(n: usize, i: usize) -> BigInt {
    match i.cmp(&n) {
        std::cmp::Ordering::Equal => BigInt::from(1),
        std::cmp::Ordering::Greater => BigInt::zero(),
        std::cmp::Ordering::Less => {
            let sign = if (n - i + 1).is_multiple_of(2) { 1 } else { -1 };
            BigInt::from(binomial(n, i as i64)) * (n - i - 1) * sign
        }
    }
}

/// The class function `g ↦ fp(g)^r` paired against `χ^λ`, divided by `n!`:
/// the multiplicity of `λ` in the `r`-th tensor power of the defining
/// representation.
pub(crate) fn defining_power_multiplicity(table: &CharacterTable, lambda: usize, r: u32) -> ExactScalar {
    let total: BigInt = table
        .classes
        .iter()
        .enumerate()
        .map(|(c, class)| {
            BigInt::from(class.class_size) * BigInt::from(class.fixed_points).pow(r) * table.values[lambda][c]
        })
        .sum();
    ExactScalar::new(total, table.group_order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn s3_classes() {
        let classes = conjugacy_classes(3).unwrap();
        let sizes: Vec<u64> = classes.iter().map(|c| c.class_size).collect();
        // (3), (2,1), (1,1,1)
        assert_eq!(sizes, vec![2, 3, 1]);
        assert_eq!(classes[2].fixed_points, 3);
        assert_eq!(classes[1].sign, -1);
        assert_eq!(classes[0].sign, 1);
    }

    #[test]
    fn class_equation() {
        for n in 1..=10 {
            let classes = conjugacy_classes(n).unwrap();
            let total: u64 = classes.iter().map(|c| c.class_size).sum();
            assert_eq!(BigInt::from(total), BigInt::from(factorial(n)));
            for c in &classes {
                assert_eq!(c.cycle_counts.iter().map(|(j, nj)| j * nj).sum::<usize>(), n);
                assert_eq!(c.fixed_points, c.cycle_counts.get(&1).copied().unwrap_or(0));
            }
        }
    }

    #[test]
    fn size_limit() {
        assert!(matches!(conjugacy_classes(0), Err(Error::SizeLimit { .. })));
        assert!(matches!(conjugacy_classes(11), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn s3_table() {
        let t = CharacterTable::new(3).unwrap();
        let standard = t.index_of(&p(&[2, 1])).unwrap();
        // classes in order (3), (2,1), (1^3)
        assert_eq!(t.row(standard), &[-1, 0, 2]);
        assert_eq!(t.row(0), &[1, 1, 1]);
        assert_eq!(t.row(2), &[1, -1, 1]);
    }

    #[test]
    fn trivial_and_sign_rows() {
        for n in 1..=8 {
            let t = CharacterTable::new(n).unwrap();
            let last = t.partitions().len() - 1;
            for (c, class) in t.classes().iter().enumerate() {
                assert_eq!(t.value(0, c), 1);
                assert_eq!(t.value(last, c), class.sign as i64);
            }
        }
    }

    #[test]
    fn fixed_point_sum_examples() {
        let t = CharacterTable::new(3).unwrap();
        assert_eq!(t.fixed_point_character_sum(&p(&[2, 1]), 1).unwrap(), BigInt::zero());
        assert_eq!(t.fixed_point_character_sum(&p(&[1, 1, 1]), 0).unwrap(), BigInt::from(2));
        // Trivial character counts permutations: 2 derangements, 3 with one
        // fixed point, 0 with two, 1 identity.
        let counts: Vec<BigInt> = (0..=3)
            .map(|i| t.fixed_point_character_sum(&p(&[3]), i).unwrap())
            .collect();
        assert_eq!(counts, [2, 3, 0, 1].map(BigInt::from));
        assert!(t.fixed_point_character_sum(&p(&[3]), 4).is_err());
    }

    #[test]
    fn signed_sum_examples() {
        assert_eq!(signed_fixed_point_sum(4, 0), BigInt::from(-3));
        assert_eq!(signed_fixed_point_sum(3, 1), BigInt::from(-3));
        assert_eq!(signed_fixed_point_sum(5, 5), BigInt::from(1));
        assert_eq!(signed_fixed_point_sum(5, 4), BigInt::zero());
    }

    #[test]
    fn tensor_multiplicity_examples() {
        let t = CharacterTable::new(3).unwrap();
        let trivial = vec![1; 3];
        let defining = t.defining_character();
        assert_eq!(defining, vec![0, 1, 3]);
        for a in t.partitions() {
            for b in t.partitions() {
                let m = t.tensor_multiplicity(a, &trivial, b).unwrap();
                assert_eq!(m, BigInt::from(i32::from(a == b)));
            }
        }
        assert_eq!(t.tensor_multiplicity(&p(&[3]), &defining, &p(&[2, 1])).unwrap(), BigInt::from(1));
        assert_eq!(t.tensor_multiplicity(&p(&[1, 1, 1]), &defining, &p(&[3])).unwrap(), BigInt::zero());
        // A class function that is not a character.
        assert!(matches!(
            t.tensor_multiplicity(&p(&[3]), &[1, 0, 0], &p(&[3])),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn csv_export() {
        let csv = CharacterTable::new(3).unwrap().to_csv();
        assert_eq!(
            csv,
            "lambda,\"[3]\",\"[2,1]\",\"[1,1,1]\"\n\"[3]\",1,1,1\n\"[2,1]\",-1,0,2\n\"[1,1,1]\",1,-1,1\n"
        );
    }
}

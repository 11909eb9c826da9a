//! Integer partitions, hook lengths, and brute-force distribution oracles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::distribution::{Flavor, HookDistribution};
use crate::error::{Error, Result};

/// Largest `n` the enumeration oracle accepts unless the caller raises it.
pub const DEFAULT_BRUTE_FORCE_GUARD: usize = 40;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates and wraps `parts`.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain("partition parts must be weakly decreasing".into()));
        }
        Ok(Self { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The transposed diagram: part `j` counts the rows of length at least `j`.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Hook lengths of every cell, row by row.
    ///
    /// The hook of cell `(k, j)` has length `arm + leg + 1` where the arm is
    /// `parts[k] - j - 1` and the leg is `conjugate[j] - k - 1` (0-based).
    pub fn hook_lengths(&self) -> HookMultiset {
        let conj = self.conjugate();
        let mut values = Vec::with_capacity(self.weight());
        for (k, &row) in self.parts.iter().enumerate() {
            for (j, &col) in conj.parts[..row].iter().enumerate() {
                values.push((row - j - 1) + (col - k - 1) + 1);
            }
        }
        HookMultiset { values }
    }

    /// Number of cells whose hook length is exactly `t`.
    pub fn count_hooks_equal(&self, t: usize) -> usize {
        self.hook_lengths().values.iter().filter(|&&h| h == t).count()
    }

    /// Number of cells whose hook length is a multiple of `t`.
    pub fn count_hooks_multiple(&self, t: usize) -> usize {
        assert!(t >= 1, "t must be positive");
        self.hook_lengths().values.iter().filter(|&&h| h % t == 0).count()
    }

    /// Number of standard Young tableaux of this shape, `n! / prod(hooks)`.
    pub fn syt_count(&self) -> Result<BigUint> {
        let n = self.weight();
        let mut num = BigUint::one();
        for k in 2..=n {
            num *= k as u64;
        }
        let mut den = BigUint::one();
        for h in self.hook_lengths().values {
            den *= h as u64;
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "hook product does not divide {n}! for {self}"
            )));
        }
        Ok(q)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The multiset of hook lengths of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookMultiset {
    values: Vec<usize>,
}

impl HookMultiset {
    /// Hook lengths in row-major cell order.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.values.iter().copied().max()
    }

    /// Sorted copy, largest first; two multisets are equal iff these agree.
    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.values.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Streams the partitions of `n` in reverse-lexicographic order, starting
/// from `(n)` and ending with `(1, 1, ..., 1)`.
pub fn enumerate_partitions(n: usize) -> Partitions {
    Partitions {
        current: if n == 0 { Some(Vec::new()) } else { Some(vec![n]) },
    }
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        // successor: drop trailing 1s, decrement the last part > 1 and
        // refill with copies of the new value
        let mut next = cur.clone();
        let mut ones = 0;
        while next.last() == Some(&1) {
            next.pop();
            ones += 1;
        }
        if let Some(last) = next.pop() {
            let v = last - 1;
            let mut remaining = ones + last;
            while remaining > 0 {
                let piece = v.min(remaining);
                next.push(piece);
                remaining -= piece;
            }
            self.current = Some(next);
        }
        Some(Partition { parts: cur })
    }
}

/// Distribution of a hook statistic over all partitions of `n`, by enumeration.
///
/// Refuses `n > guard`; pass [`DEFAULT_BRUTE_FORCE_GUARD`] for the usual limit.
pub fn brute_force_distribution(
    n: usize,
    t: usize,
    flavor: Flavor,
    guard: usize,
) -> Result<HookDistribution> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    if n > guard {
        return Err(Error::ResourceGuard(format!(
            "brute-force enumeration refused for n = {n} (guard is {guard})"
        )));
    }
    let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
    for lambda in enumerate_partitions(n) {
        let m = match flavor {
            Flavor::Equal => lambda.count_hooks_equal(t),
            Flavor::Multiple => lambda.count_hooks_multiple(t),
        };
        *counts.entry(m).or_default() += 1u32;
    }
    HookDistribution::from_counts(n, t, flavor, counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    /// p(n) by Euler's pentagonal recurrence, independent of the engine.
    fn pentagonal_oracle(n: usize) -> u64 {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                k += 1;
            }
        }
        p[n] as u64
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(0).collect::<Vec<_>>(), vec![Partition::empty()]);
        for n in [5usize, 19] {
            assert_eq!(enumerate_partitions(n).count() as u64, pentagonal_oracle(n));
        }
        assert_eq!(pentagonal_oracle(5), 7);
        assert_eq!(pentagonal_oracle(19), 490);
    }

    #[test]
    fn enumeration_is_reverse_lex_and_distinct() {
        let all: Vec<_> = enumerate_partitions(12).collect();
        for w in all.windows(2) {
            assert!(w[0].parts() > w[1].parts());
        }
        assert!(all.iter().all(|p| p.weight() == 12));
        assert_eq!(all.last().unwrap().parts(), &[1; 12]);
    }

    #[test]
    fn invalid_parts_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(part(&[5, 4, 1]).conjugate(), part(&[3, 2, 2, 2, 1]));
        assert_eq!(part(&[4]).conjugate(), part(&[1, 1, 1, 1]));
        for lambda in enumerate_partitions(10) {
            assert_eq!(lambda.conjugate().conjugate(), lambda);
        }
    }

    #[test]
    fn hooks_of_small_shapes() {
        assert_eq!(part(&[5, 4, 1]).hook_lengths().sorted(), vec![7, 5, 5, 4, 3, 3, 2, 1, 1, 1]);
        assert_eq!(part(&[1]).hook_lengths().values(), &[1]);
        assert_eq!(part(&[2, 1]).hook_lengths().sorted(), vec![3, 1, 1]);
    }

    #[test]
    fn hook_counts() {
        let l = part(&[2, 1]);
        assert_eq!(l.count_hooks_equal(1), 2);
        assert_eq!(l.count_hooks_equal(2), 0);
        assert_eq!(part(&[1]).count_hooks_equal(1), 1);
        assert_eq!(part(&[3]).count_hooks_multiple(2), 1);
        assert_eq!(l.count_hooks_multiple(2), 0);
        for lambda in enumerate_partitions(9) {
            assert_eq!(lambda.count_hooks_multiple(1), 9);
        }
    }

    #[test]
    fn hook_multiset_shape_invariants() {
        for n in 1..=12 {
            for lambda in enumerate_partitions(n) {
                let h = lambda.hook_lengths();
                assert_eq!(h.len(), n);
                assert_eq!(h.max(), Some(lambda.parts()[0] + lambda.len() - 1));
            }
        }
    }

    #[test]
    fn hooks_invariant_under_conjugation() {
        for n in 0..=15 {
            for lambda in enumerate_partitions(n) {
                assert_eq!(lambda.hook_lengths().sorted(), lambda.conjugate().hook_lengths().sorted());
            }
        }
    }

    /// Counts standard fillings directly: place 1..n one cell at a time on an outer corner.
    fn syt_brute(parts: &[usize]) -> u64 {
        if parts.iter().all(|&p| p == 0) {
            return 1;
        }
        let mut total = 0;
        let mut shape = parts.to_vec();
        for k in 0..shape.len() {
            let removable = shape[k] > 0 && (k + 1 == shape.len() || shape[k + 1] < shape[k]);
            if removable {
                shape[k] -= 1;
                total += syt_brute(&shape);
                shape[k] += 1;
            }
        }
        total
    }

    #[test]
    fn standard_tableaux_counts() {
        assert_eq!(part(&[6]).syt_count().unwrap(), BigUint::from(1u32));
        assert_eq!(syt_brute(&[2, 1]), 2);
        assert_eq!(syt_brute(&[2, 2]), 2);
        assert_eq!(part(&[2, 1]).syt_count().unwrap(), BigUint::from(2u32));
        assert_eq!(part(&[2, 2]).syt_count().unwrap(), BigUint::from(2u32));
        for lambda in enumerate_partitions(8) {
            assert_eq!(lambda.syt_count().unwrap(), BigUint::from(syt_brute(lambda.parts())));
        }
    }

    #[test]
    fn sum_of_squared_tableaux_counts_is_factorial() {
        for n in 0..=12 {
            let mut sum = BigUint::zero();
            for lambda in enumerate_partitions(n) {
                let d = lambda.syt_count().unwrap();
                sum += &d * &d;
            }
            let fact: BigUint = (1..=n as u64).product();
            assert_eq!(sum, fact, "n = {n}");
        }
    }

    #[test]
    fn brute_force_vectors() {
        let d = brute_force_distribution(19, 2, Flavor::Multiple, DEFAULT_BRUTE_FORCE_GUARD).unwrap();
        assert_eq!(d.sparse_counts(), vec![(2, 5), (8, 185), (9, 300)]);
        let d = brute_force_distribution(3, 1, Flavor::Equal, DEFAULT_BRUTE_FORCE_GUARD).unwrap();
        assert_eq!(d.sparse_counts(), vec![(1, 2), (2, 1)]);
        let d = brute_force_distribution(0, 4, Flavor::Equal, DEFAULT_BRUTE_FORCE_GUARD).unwrap();
        assert_eq!(d.sparse_counts(), vec![(0, 1)]);
    }

    #[test]
    fn brute_force_guard() {
        let err = brute_force_distribution(41, 2, Flavor::Equal, DEFAULT_BRUTE_FORCE_GUARD).unwrap_err();
        assert!(matches!(err, Error::ResourceGuard(_)));
        assert!(brute_force_distribution(5, 2, Flavor::Equal, 4).is_err());
    }

    #[test]
    fn two_hook_multiples_live_on_triangular_cores() {
        // n - 2m must be the size of a 2-core, i.e. a triangular number
        let triangular: Vec<usize> = (0..20).map(|k| k * (k + 1) / 2).collect();
        for n in 0..=60 {
            let d = crate::engine::tmult_distribution(n, 2).unwrap();
            for (m, _) in d.sparse_counts_big() {
                assert!(triangular.contains(&(n - 2 * m)), "n = {n}, m = {m}");
            }
        }
    }
}

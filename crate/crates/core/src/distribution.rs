//! Hook-statistic distributions and their export records.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which hook statistic is counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Hooks of length exactly `t`.
    Equal,
    /// Hooks whose length is a positive multiple of `t`.
    Multiple,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Equal => "equal",
            Flavor::Multiple => "multiple",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" => Ok(Flavor::Equal),
            "multiple" => Ok(Flavor::Multiple),
            other => Err(Error::Domain(format!("unknown flavor '{other}'"))),
        }
    }
}

/// Exact counts `#{lambda |- n : statistic(lambda) = m}` for one `(n, t, flavor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookDistribution {
    n: usize,
    t: usize,
    flavor: Flavor,
    counts: BTreeMap<usize, BigUint>,
    total: BigUint,
}

impl HookDistribution {
    /// Zero counts are dropped; `total` is the sum of the counts.
    pub fn from_counts(
        n: usize,
        t: usize,
        flavor: Flavor,
        counts: BTreeMap<usize, BigUint>,
    ) -> Result<Self> {
        if t == 0 {
            return Err(Error::Domain("t must be at least 1".into()));
        }
        let counts: BTreeMap<usize, BigUint> =
            counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if flavor == Flavor::Multiple {
            if let Some((&m, _)) = counts.iter().next_back() {
                if m > n / t {
                    return Err(Error::Internal(format!(
                        "{m} multiples of {t} cannot fit in a partition of {n}"
                    )));
                }
            }
        }
        let total = counts.values().sum();
        Ok(Self {
            n,
            t,
            flavor,
            counts,
            total,
        })
    }

    /// Builds from a dense coefficient vector indexed by `m`.
    pub fn from_dense(n: usize, t: usize, flavor: Flavor, dense: Vec<BigUint>) -> Result<Self> {
        Self::from_counts(n, t, flavor, dense.into_iter().enumerate().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Nonzero counts keyed by the statistic value.
    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    pub fn count(&self, m: usize) -> BigUint {
        self.counts.get(&m).cloned().unwrap_or_default()
    }

    /// `p(n)`, the number of partitions summarized.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn min_support(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn max_support(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    pub fn sparse_counts_big(&self) -> Vec<(usize, BigUint)> {
        self.counts.iter().map(|(&m, c)| (m, c.clone())).collect()
    }

    /// Nonzero counts as `u64`; panics if a count does not fit.
    pub fn sparse_counts(&self) -> Vec<(usize, u64)> {
        self.counts
            .iter()
            .map(|(&m, c)| (m, c.to_u64().expect("count exceeds u64")))
            .collect()
    }

    /// Probabilities `counts[m] / total` in double precision.
    pub fn probabilities(&self) -> Vec<(usize, f64)> {
        let ln_total = ln_biguint(&self.total);
        self.counts
            .iter()
            .map(|(&m, c)| (m, (ln_biguint(c) - ln_total).exp()))
            .collect()
    }

    pub fn to_record(&self) -> DistributionRecord {
        DistributionRecord {
            n: self.n,
            t: self.t,
            flavor: self.flavor,
            total: self.total.to_string(),
            counts: self
                .counts
                .iter()
                .map(|(&m, c)| (m, c.to_string()))
                .collect(),
        }
    }

    pub fn from_record(record: &DistributionRecord) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (m, c) in &record.counts {
            let value = BigUint::from_str(c)
                .map_err(|_| Error::Domain(format!("count '{c}' is not a decimal integer")))?;
            counts.insert(*m, value);
        }
        let d = Self::from_counts(record.n, record.t, record.flavor, counts)?;
        let total = BigUint::from_str(&record.total)
            .map_err(|_| Error::Domain(format!("total '{}' is not a decimal integer", record.total)))?;
        if total != d.total {
            return Err(Error::Domain("total does not equal the sum of counts".into()));
        }
        Ok(d)
    }
}

/// Natural log of a big unsigned integer, without overflowing `f64`.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Interchange record for a distribution. Counts are decimal strings because
/// they exceed every native integer width.
///
/// ```json
/// {"n":19,"t":2,"flavor":"multiple","total":"490","counts":[[2,"5"],[8,"185"],[9,"300"]]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionRecord {
    pub n: usize,
    pub t: usize,
    pub flavor: Flavor,
    pub total: String,
    pub counts: Vec<(usize, String)>,
}

impl DistributionRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad distribution record: {e}")))
    }
}

/// A distribution computed in floating point: log of the total plus
/// per-value probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatDistribution {
    pub n: usize,
    pub t: usize,
    pub flavor: Flavor,
    /// Natural log of `p(n)` as produced by the float computation.
    pub ln_total: f64,
    /// `(m, probability)` for every `m` with a nonzero count, ascending.
    pub probabilities: Vec<(usize, f64)>,
}

impl FloatDistribution {
    /// Approximate count of `m` as a float (may be `inf` beyond `f64` range).
    pub fn approx_count(&self, m: usize) -> f64 {
        self.probabilities
            .iter()
            .find(|(k, _)| *k == m)
            .map(|(_, p)| (p.ln() + self.ln_total).exp())
            .unwrap_or(0.0)
    }

    /// Record with counts printed in 17-significant-digit scientific notation.
    pub fn to_record(&self) -> DistributionRecord {
        DistributionRecord {
            n: self.n,
            t: self.t,
            flavor: self.flavor,
            total: format!("{:.16e}", self.ln_total.exp()),
            counts: self
                .probabilities
                .iter()
                .map(|&(m, p)| (m, format!("{:.16e}", (p.ln() + self.ln_total).exp())))
                .collect(),
        }
    }
}

//! Distributions of hook-length statistics over integer partitions.
//!
//! For a partition `lambda` of `n` and a positive integer `t`, two statistics
//! are studied: the number of hooks of length exactly `t`, and the number of
//! hooks whose length is a multiple of `t`. Their generating functions are
//! infinite products, from which [`engine`] extracts exact counts. The
//! remaining modules cover the saddle-point asymptotics, the limiting laws
//! and the comparison between the two.
//!
//! ```
//! use hookdist::{exact_distribution, Flavor};
//!
//! let d = exact_distribution(19, 2, Flavor::Multiple).unwrap();
//! assert_eq!(d.sparse_counts(), vec![(2, 5), (8, 185), (9, 300)]);
//! ```

pub mod asymptotics;
pub mod distribution;
pub mod engine;
pub mod error;
pub mod identities;
pub mod logscale;
pub mod partition;
pub mod poly;
pub mod ring;
pub mod series;
pub mod special;
pub mod stats;

pub use asymptotics::{theorem1_params, theorem2_params, SaddleSolution, TheoremParams};
pub use distribution::{DistributionRecord, Flavor, FloatDistribution, HookDistribution};
pub use engine::{evaluate_p, exact_distribution, float_distribution, partition_numbers};
pub use error::{Error, Result};
pub use logscale::LogValue;
pub use partition::{enumerate_partitions, HookMultiset, Partition};
pub use poly::MarkerPolynomial;
pub use series::TruncatedSeries;
pub use special::LimitModel;

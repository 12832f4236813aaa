//! Entropy-extremal aggregation of finite probability distributions.
//!
//! Given `p` on `n` atoms and a target size `m < n`, the entropy of an
//! aggregation (the law of `f(X)` for a surjective `f` onto `m` symbols) is
//! bracketed by two operators on `p`. The minimum is attained exactly by
//! [`aggregation::q_operator`]; the maximum is NP-hard, bounded above by
//! [`aggregation::r_operator`] and approximated to within
//! [`aggregation::alpha_constant`] bits (and a factor 10/11) by
//! [`aggregation::huffman_aggregate`].
//!
//! Supporting modules:
//!
//! * [`dist`]: the sorted [`ProbDist`] type, entropy and relative entropy.
//! * [`majorization`]: the majorization preorder behind every bound.
//! * [`bounds`]: entropy lower bounds from the ratio `p_1 / p_n`.
//! * [`coupling`]: couplings with aggregations and the distance `D(p, q)`.
//! * [`tunstall`]: Tunstall parse trees and compression-rate bounds.
//! * [`cli`]: the `entagg` command-line front end.
//! * [`selftest`]: seeded randomized property suites.

pub mod aggregation;
pub mod bounds;
pub mod cli;
pub mod coupling;
pub mod dist;
pub mod error;
pub mod majorization;
pub mod report;
pub mod selftest;
pub mod tunstall;

pub use aggregation::Aggregation;
pub use dist::ProbDist;
pub use error::{Error, Result};

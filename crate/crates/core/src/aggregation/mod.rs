//! Aggregations of a distribution and the operators bracketing their entropy.
//!
//! An aggregation of `p` (n atoms) into `m` atoms sums `p` over the blocks of
//! a partition of `{0, .., n-1}`; it is the law of `f(X)` for a surjective
//! `f` onto `m` symbols. This module provides:
//!
//! * [`r_operator`]: the most uniform `m`-atom vector majorizing `p`. Its
//!   entropy upper-bounds every aggregation.
//! * [`q_operator`]: merges the `n - m + 1` largest atoms; the exact entropy
//!   minimizer.
//! * [`huffman_aggregate`]: `n - m` Huffman merge steps, within
//!   [`alpha_constant`] bits of the `r_operator` bound and within a factor
//!   10/11 of the optimum.
//! * [`exact_max_aggregation`]: exhaustive search, the reference optimum
//!   for small `n`.
//! * [`gen_3partition_instance`]: hard instances from 3-Partition.
//!
//! Indices are 0-based positions in the sorted source distribution.

mod exhaustive;
mod huffman;
mod three_partition;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::dist::{compensated_sum, ProbDist};
use crate::error::{Error, Result};

pub use exhaustive::{
    entropy_extremes, exact_max_aggregation, exact_min_aggregation, for_each_partition,
    EntropyExtremes, DEFAULT_LIMIT_N,
};
pub use huffman::{huffman_aggregate, HuffmanTrace, MergeStep};
pub use three_partition::{
    gen_3partition_instance, verify_with_oracle, OracleVerdict, ThreePartitionInstance,
};

/// A partition of the source indices together with the induced distribution.
///
/// Blocks are ordered like `dist`: by decreasing mass, ties by smallest
/// member. Each block lists its members in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregation {
    blocks: Vec<Vec<usize>>,
    dist: ProbDist,
    source_n: usize,
}

impl Aggregation {
    /// Build from an explicit list of blocks, which must partition
    /// `0..p.len()` into nonempty sets.
    pub fn from_blocks(p: &ProbDist, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = p.len();
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Aggregation("empty block".into()));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::Aggregation(format!(
                        "index {i} out of range for {n} atoms"
                    )));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Aggregation(format!("index {i} appears twice")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Aggregation(format!("index {i} is not covered")));
        }
        Ok(Self::assemble(p, blocks))
    }

    /// Build from a block label per source index. Labels need not be
    /// contiguous; every distinct label becomes one block.
    pub fn from_labels(p: &ProbDist, labels: &[usize]) -> Result<Self> {
        if labels.len() != p.len() {
            return Err(Error::Aggregation(format!(
                "{} labels for {} atoms",
                labels.len(),
                p.len()
            )));
        }
        let mut by_label: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(i);
        }
        Ok(Self::assemble(p, by_label.into_values().collect()))
    }

    /// Every atom in its own block.
    pub fn identity(p: &ProbDist) -> Self {
        Self::assemble(p, (0..p.len()).map(|i| vec![i]).collect())
    }

    /// A single block holding everything.
    pub fn total(p: &ProbDist) -> Self {
        Self::assemble(p, vec![(0..p.len()).collect()])
    }

    fn assemble(p: &ProbDist, mut blocks: Vec<Vec<usize>>) -> Self {
        let probs = p.probs();
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let mut weighted: Vec<(f64, Vec<usize>)> = blocks
            .into_iter()
            .map(|b| (compensated_sum(b.iter().map(|&i| probs[i])), b))
            .collect();
        weighted.sort_by(|x, y| y.0.total_cmp(&x.0));
        let (sums, blocks): (Vec<f64>, Vec<Vec<usize>>) = weighted.into_iter().unzip();
        Self {
            blocks,
            dist: ProbDist::from_parts(sums),
            source_n: p.len(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn dist(&self) -> &ProbDist {
        &self.dist
    }

    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub fn entropy(&self) -> f64 {
        self.dist.entropy()
    }

    /// True when every block is a singleton.
    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Checks that `self` was built from `p`: same atom count and block sums
    /// matching `dist` within `tolerance`.
    pub fn check_source(&self, p: &ProbDist, tolerance: f64) -> Result<()> {
        if self.source_n != p.len() {
            return Err(Error::Aggregation(format!(
                "aggregation covers {} atoms, distribution has {}",
                self.source_n,
                p.len()
            )));
        }
        for (j, (block, &q)) in self.blocks.iter().zip(self.dist.probs()).enumerate() {
            let s = compensated_sum(block.iter().map(|&i| p.probs()[i]));
            if (s - q).abs() > tolerance {
                return Err(Error::Aggregation(format!(
                    "block {j} sums to {s} but the aggregated mass is {q}"
                )));
            }
        }
        Ok(())
    }
}

impl Serialize for Aggregation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Aggregation", 3)?;
        s.serialize_field("blocks", &self.blocks)?;
        s.serialize_field("dist", self.dist.probs())?;
        s.serialize_field("entropy", &self.entropy())?;
        s.end()
    }
}

/// `1 - (1 + ln ln 2) / ln 2`, the additive loss of the Huffman aggregation.
pub fn alpha_constant() -> f64 {
    let ln2 = std::f64::consts::LN_2;
    1.0 - (1.0 + ln2.ln()) / ln2
}

fn check_m(p: &ProbDist, m: usize) -> Result<()> {
    let n = p.len();
    if m < 2 || m >= n {
        return Err(Error::Param(format!(
            "need 2 <= m < n, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// Compensated suffix sums: `out[i] = sum_{j >= i} p_j`, with `out[n] = 0`.
fn suffix_sums(probs: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; probs.len() + 1];
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for i in (0..probs.len()).rev() {
        let x = probs[i];
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
        out[i] = sum + comp;
    }
    out
}

/// The largest 1-based `i <= m - 1` with `p_i >= (sum_{j>i} p_j) / (m - i)`,
/// or 0 when `p_1 < 1/m` (the uniform case).
pub fn istar(p: &ProbDist, m: usize) -> Result<usize> {
    check_m(p, m)?;
    Ok(istar_unchecked(p, m))
}

fn istar_unchecked(p: &ProbDist, m: usize) -> usize {
    let probs = p.probs();
    if probs[0] < 1.0 / m as f64 {
        return 0;
    }
    let tail = suffix_sums(probs);
    (1..m)
        .rev()
        // 1-based i: p_i is probs[i-1], the tail after it starts at probs[i]
        .find(|&i| probs[i - 1] >= tail[i] / (m - i) as f64)
        .unwrap_or(0)
}

/// `R_m(p)`: keep the `i*` largest atoms, spread the remaining mass evenly
/// over the other `m - i*` slots.
pub fn r_operator(p: &ProbDist, m: usize) -> Result<ProbDist> {
    check_m(p, m)?;
    let i = istar_unchecked(p, m);
    if i == 0 {
        return ProbDist::uniform(m);
    }
    let probs = p.probs();
    let level = suffix_sums(probs)[i] / (m - i) as f64;
    let mut out = probs[..i].to_vec();
    out.resize(m, level);
    Ok(ProbDist::from_parts(out))
}

/// `Q_m(p)`: the first `n - m + 1` atoms in one block, the rest singletons.
/// Accepts `m = 1` (total merge).
pub fn q_operator(p: &ProbDist, m: usize) -> Result<Aggregation> {
    let n = p.len();
    if m == 0 || m >= n {
        return Err(Error::Param(format!(
            "need 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let head = n - m + 1;
    let mut blocks = vec![(0..head).collect::<Vec<_>>()];
    blocks.extend((head..n).map(|i| vec![i]));
    Ok(Aggregation::assemble(p, blocks))
}

//! Reduction from 3-Partition: `3m` integers `a_i` with `B/4 < a_i < B/2`,
//! `B = sum / m`, become the distribution `p_i = a_i / (m B)`. The maximum
//! aggregation entropy into `m` atoms equals `log2 m` exactly when the
//! integers split into `m` triples of sum `B`.

use serde::Serialize;

use super::{exact_max_aggregation, Aggregation};
use crate::dist::ProbDist;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreePartitionInstance {
    /// Input integers reordered to match `dist` (non-increasing).
    pub numbers: Vec<u64>,
    pub m: usize,
    /// `B = sum / m`; not necessarily an integer.
    pub bound: f64,
    pub dist: ProbDist,
    /// `log2 m`.
    pub target_entropy: f64,
}

/// Validate a 3-Partition instance and build the induced distribution.
pub fn gen_3partition_instance(a: &[u64]) -> Result<ThreePartitionInstance> {
    if a.is_empty() || a.len() % 3 != 0 {
        return Err(Error::Instance(format!(
            "need 3m numbers with m >= 1, got {}",
            a.len()
        )));
    }
    let m = a.len() / 3;
    let total: u128 = a.iter().map(|&x| x as u128).sum();
    // B/4 < a_i < B/2 with B = total/m, in integers: 4 m a_i > total > 2 m a_i
    for (i, &x) in a.iter().enumerate() {
        let scaled = x as u128 * m as u128;
        if 4 * scaled <= total || 2 * scaled >= total {
            return Err(Error::Instance(format!(
                "a[{i}] = {x} is outside (B/4, B/2) with B = {}",
                total as f64 / m as f64
            )));
        }
    }
    let mut numbers = a.to_vec();
    numbers.sort_by(|x, y| y.cmp(x));
    let dist = ProbDist::from_parts(
        numbers
            .iter()
            .map(|&x| x as f64 / total as f64)
            .collect(),
    );
    Ok(ThreePartitionInstance {
        numbers,
        m,
        bound: total as f64 / m as f64,
        dist,
        target_entropy: (m as f64).log2(),
    })
}

/// Result of solving an instance with the exhaustive oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub max_entropy: f64,
    pub target_entropy: f64,
    /// Integer sum of each block of the optimal aggregation.
    pub block_sums: Vec<u64>,
    /// True iff every optimal block sums to exactly `B`, i.e. the instance is
    /// a YES instance.
    pub is_yes: bool,
    pub aggregation: Aggregation,
}

pub fn verify_with_oracle(inst: &ThreePartitionInstance, limit_n: usize) -> Result<OracleVerdict> {
    let aggregation = exact_max_aggregation(&inst.dist, inst.m, limit_n)?;
    let block_sums: Vec<u64> = aggregation
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&i| inst.numbers[i]).sum())
        .collect();
    let total: u64 = inst.numbers.iter().sum();
    let is_yes = total % inst.m as u64 == 0
        && block_sums.iter().all(|&s| s == total / inst.m as u64);
    Ok(OracleVerdict {
        max_entropy: aggregation.entropy(),
        target_entropy: inst.target_entropy,
        block_sums,
        is_yes,
        aggregation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::DEFAULT_LIMIT_N;

    #[test]
    fn yes_instance() {
        let inst = gen_3partition_instance(&[20, 26, 29, 21, 24, 30]).unwrap();
        assert_eq!(inst.m, 2);
        assert_eq!(inst.bound, 75.0);
        assert_eq!(inst.numbers, vec![30, 29, 26, 24, 21, 20]);
        assert!((inst.dist.probs()[0] - 30.0 / 150.0).abs() < 1e-15);
        let v = verify_with_oracle(&inst, DEFAULT_LIMIT_N).unwrap();
        assert!(v.is_yes);
        assert_eq!(v.block_sums, vec![75, 75]);
        assert!((v.max_entropy - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_range() {
        // 40 >= B/2 = 37.5
        assert!(matches!(
            gen_3partition_instance(&[20, 26, 29, 21, 14, 40]),
            Err(Error::Instance(_))
        ));
        assert!(matches!(
            gen_3partition_instance(&[1, 2]),
            Err(Error::Instance(_))
        ));
        assert!(matches!(gen_3partition_instance(&[]), Err(Error::Instance(_))));
    }

    #[test]
    fn single_triple() {
        let inst = gen_3partition_instance(&[1, 1, 1]).unwrap();
        assert_eq!(inst.m, 1);
        assert_eq!(inst.target_entropy, 0.0);
        let v = verify_with_oracle(&inst, DEFAULT_LIMIT_N).unwrap();
        assert!(v.is_yes);
        assert!(v.max_entropy.abs() < 1e-15);
    }

    #[test]
    fn no_instance() {
        // sum 150, B = 75, but no triple reaches 75
        let a = [28, 28, 28, 22, 22, 22];
        let inst = gen_3partition_instance(&a).unwrap();
        let v = verify_with_oracle(&inst, DEFAULT_LIMIT_N).unwrap();
        assert!(!v.is_yes);
        assert!(v.max_entropy < 1.0 - 1e-9);
    }
}

//! Exhaustive search over set partitions, encoded as restricted-growth
//! strings (`labels[0] = 0`, `labels[k] <= 1 + max(labels[..k])`) and
//! visited in lexicographic order.

use super::Aggregation;
use crate::dist::ProbDist;
use crate::error::{Error, Result};

/// Default guard on `n` for exhaustive search. Bell(12) is about 4.2 million.
pub const DEFAULT_LIMIT_N: usize = 12;

/// Visit every partition of `0..n` as a restricted-growth string, in
/// lexicographic order. With `blocks = Some(m)` only partitions into exactly
/// `m` blocks are visited. The callback receives the labels and the block
/// count.
pub fn for_each_partition<F: FnMut(&[usize], usize)>(n: usize, blocks: Option<usize>, mut visit: F) {
    if n == 0 {
        return;
    }
    if let Some(m) = blocks {
        if m == 0 || m > n {
            return;
        }
    }
    let mut labels = vec![0usize; n];
    recurse(&mut labels, 1, 1, blocks, &mut visit);
}

fn recurse<F: FnMut(&[usize], usize)>(
    labels: &mut [usize],
    k: usize,
    used: usize,
    target: Option<usize>,
    visit: &mut F,
) {
    let n = labels.len();
    if k == n {
        if target.map_or(true, |m| m == used) {
            visit(labels, used);
        }
        return;
    }
    let remaining = n - k - 1;
    // reuse an existing block only if enough elements remain to open the rest
    let may_reuse = target.map_or(true, |m| remaining >= m - used);
    if may_reuse {
        for l in 0..used {
            labels[k] = l;
            recurse(labels, k + 1, used, target, visit);
        }
    }
    if target.map_or(true, |m| used < m) {
        labels[k] = used;
        recurse(labels, k + 1, used + 1, target, visit);
    }
}

fn labels_entropy(probs: &[f64], labels: &[usize], blocks: usize, sums: &mut [f64]) -> f64 {
    sums[..blocks].fill(0.0);
    for (&p, &l) in probs.iter().zip(labels) {
        sums[l] += p;
    }
    let nats: f64 = sums[..blocks]
        .iter()
        .filter(|s| **s > 0.0)
        .map(|s| -s * s.ln())
        .sum();
    nats / std::f64::consts::LN_2
}

fn check_size(p: &ProbDist, m: usize, limit_n: usize) -> Result<()> {
    let n = p.len();
    if m == 0 || m > n {
        return Err(Error::Param(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    if n > limit_n {
        return Err(Error::Size { n, limit: limit_n });
    }
    Ok(())
}

fn extremal(p: &ProbDist, m: usize, limit_n: usize, maximize: bool) -> Result<Aggregation> {
    check_size(p, m, limit_n)?;
    let probs = p.probs();
    let mut sums = vec![0.0; m];
    let mut best: Option<(f64, Vec<usize>)> = None;
    for_each_partition(p.len(), Some(m), |labels, blocks| {
        let h = labels_entropy(probs, labels, blocks, &mut sums);
        let better = match &best {
            None => true,
            // strict: the lexicographically first optimum is kept
            Some((b, _)) => {
                if maximize {
                    h > *b
                } else {
                    h < *b
                }
            }
        };
        if better {
            best = Some((h, labels.to_vec()));
        }
    });
    let (_, labels) = best.expect("at least one partition into m blocks");
    Aggregation::from_labels(p, &labels)
}

/// A maximum-entropy aggregation of `p` into `m` blocks, by enumerating all
/// partitions. Ties go to the lexicographically smallest label string.
pub fn exact_max_aggregation(p: &ProbDist, m: usize, limit_n: usize) -> Result<Aggregation> {
    extremal(p, m, limit_n, true)
}

/// A minimum-entropy aggregation of `p` into `m` blocks, by enumeration.
pub fn exact_min_aggregation(p: &ProbDist, m: usize, limit_n: usize) -> Result<Aggregation> {
    extremal(p, m, limit_n, false)
}

/// Minimum and maximum aggregation entropy for every block count, from a
/// single pass over all partitions. Index `m` holds the values for `m`
/// blocks; index 0 is unused.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyExtremes {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

pub fn entropy_extremes(p: &ProbDist, limit_n: usize) -> Result<EntropyExtremes> {
    let n = p.len();
    if n > limit_n {
        return Err(Error::Size { n, limit: limit_n });
    }
    let probs = p.probs();
    let mut min = vec![f64::INFINITY; n + 1];
    let mut max = vec![f64::NEG_INFINITY; n + 1];
    min[0] = f64::NAN;
    max[0] = f64::NAN;
    let mut sums = vec![0.0; n];
    for_each_partition(n, None, |labels, blocks| {
        let h = labels_entropy(probs, labels, blocks, &mut sums);
        min[blocks] = min[blocks].min(h);
        max[blocks] = max[blocks].max(h);
    });
    Ok(EntropyExtremes { min, max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[f64]) -> ProbDist {
        ProbDist::new(v.to_vec()).unwrap()
    }

    fn stirling2(n: usize, k: usize) -> u64 {
        let mut t = vec![vec![0u64; k + 1]; n + 1];
        t[0][0] = 1;
        for i in 1..=n {
            for j in 1..=k.min(i) {
                t[i][j] = j as u64 * t[i - 1][j] + t[i - 1][j - 1];
            }
        }
        t[n][k]
    }

    #[test]
    fn partition_counts_match_stirling_and_bell() {
        let bell = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];
        for n in 1..bell.len() {
            let mut all = 0u64;
            for_each_partition(n, None, |_, _| all += 1);
            assert_eq!(all, bell[n], "Bell({n})");
            for k in 1..=n {
                let mut c = 0u64;
                for_each_partition(n, Some(k), |_, b| {
                    assert_eq!(b, k);
                    c += 1;
                });
                assert_eq!(c, stirling2(n, k), "S({n},{k})");
            }
        }
    }

    #[test]
    fn visits_in_lexicographic_order() {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for_each_partition(5, None, |l, _| seen.push(l.to_vec()));
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert!(seen.iter().all(|l| {
            let mut top = 0;
            l.iter().enumerate().all(|(i, &x)| {
                let ok = if i == 0 { x == 0 } else { x <= top + 1 };
                top = top.max(x);
                ok
            })
        }));
    }

    #[test]
    fn oracle_examples() {
        let p = d(&[0.4, 0.3, 0.2, 0.1]);
        let best = exact_max_aggregation(&p, 2, DEFAULT_LIMIT_N).unwrap();
        assert!((best.entropy() - 1.0).abs() < 1e-15);
        // first optimum in label order: 0,1,1,0 -> {0,3},{1,2}
        assert_eq!(best.blocks(), &[vec![0, 3], vec![1, 2]]);

        let p = d(&[0.6, 0.2, 0.1, 0.1]);
        let best = exact_max_aggregation(&p, 2, DEFAULT_LIMIT_N).unwrap();
        assert!((best.dist().probs()[0] - 0.6).abs() < 1e-15);

        let one = d(&[1.0]);
        let best = exact_max_aggregation(&one, 1, DEFAULT_LIMIT_N).unwrap();
        assert_eq!(best.blocks(), &[vec![0]]);
        assert_eq!(best.entropy(), 0.0);
    }

    #[test]
    fn size_guard() {
        let p = ProbDist::uniform(13).unwrap();
        assert!(matches!(
            exact_max_aggregation(&p, 2, DEFAULT_LIMIT_N),
            Err(Error::Size { n: 13, limit: 12 })
        ));
        assert!(exact_max_aggregation(&ProbDist::uniform(4).unwrap(), 5, 12).is_err());
    }

    #[test]
    fn extremes_agree_with_per_m_search() {
        let p = d(&[0.31, 0.22, 0.17, 0.12, 0.1, 0.05, 0.03]);
        let ext = entropy_extremes(&p, DEFAULT_LIMIT_N).unwrap();
        for m in 1..=p.len() {
            let hi = exact_max_aggregation(&p, m, DEFAULT_LIMIT_N).unwrap().entropy();
            let lo = exact_min_aggregation(&p, m, DEFAULT_LIMIT_N).unwrap().entropy();
            assert!((ext.max[m] - hi).abs() < 1e-12);
            assert!((ext.min[m] - lo).abs() < 1e-12);
        }
        assert!((ext.max[p.len()] - p.entropy()).abs() < 1e-12);
        assert_eq!(ext.min[1], 0.0);
    }
}

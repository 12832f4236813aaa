//! Couplings between a distribution and one of its aggregations, and the
//! distance `D(p, q) = 2 W(p, q) - H(p) - H(q)` where `W` is the minimum
//! entropy over all couplings.
//!
//! When `q` aggregates `p`, the coupling that places each `p_j` in the row of
//! its block has entropy `H(p)`, and no coupling can do better, so
//! `D(p, q) = H(p) - H(q)`. General pairs would need a minimum-entropy
//! coupling solver and are rejected.

use serde::Serialize;

use crate::aggregation::{huffman_aggregate, r_operator, Aggregation};
use crate::dist::{compensated_sum, entropy, entropy_of, ProbDist, EPS_CMP, EPS_SUM};
use crate::error::{Error, Result};

/// An `m x n` joint distribution with its marginals. Rows follow the
/// aggregated distribution, columns the source distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Coupling {
    pub matrix: Vec<Vec<f64>>,
    pub row_marginal: ProbDist,
    pub col_marginal: ProbDist,
}

impl Coupling {
    pub fn joint_entropy(&self) -> f64 {
        let cells: Vec<f64> = self.matrix.iter().flatten().copied().collect();
        entropy_of(&cells)
    }

    /// Check non-negativity, unit mass and both marginals.
    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.row_marginal.len(), self.col_marginal.len());
        if self.matrix.len() != m || self.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Aggregation(format!("coupling matrix is not {m} x {n}")));
        }
        if self.matrix.iter().flatten().any(|x| !(*x >= 0.0)) {
            return Err(Error::Aggregation("negative coupling entry".into()));
        }
        let total = compensated_sum(self.matrix.iter().flatten().copied());
        if (total - 1.0).abs() > EPS_SUM {
            return Err(Error::Aggregation(format!("coupling mass is {total}")));
        }
        for (i, (row, &r)) in self.matrix.iter().zip(self.row_marginal.probs()).enumerate() {
            let s = compensated_sum(row.iter().copied());
            if (s - r).abs() > EPS_CMP {
                return Err(Error::Aggregation(format!("row {i} sums to {s}, marginal {r}")));
            }
        }
        for (j, &c) in self.col_marginal.probs().iter().enumerate() {
            let s = compensated_sum(self.matrix.iter().map(|row| row[j]));
            if (s - c).abs() > EPS_CMP {
                return Err(Error::Aggregation(format!(
                    "column {j} sums to {s}, marginal {c}"
                )));
            }
        }
        Ok(())
    }
}

/// The coupling `M_q`: row `i` carries `p_j` in column `j` for every `j` in
/// block `i`, zero elsewhere.
pub fn build_mq_coupling(p: &ProbDist, agg: &Aggregation) -> Result<Coupling> {
    agg.check_source(p, EPS_CMP)?;
    let n = p.len();
    let matrix = agg
        .blocks()
        .iter()
        .map(|block| {
            let mut row = vec![0.0; n];
            for &j in block {
                row[j] = p.probs()[j];
            }
            row
        })
        .collect();
    Ok(Coupling {
        matrix,
        row_marginal: agg.dist().clone(),
        col_marginal: p.clone(),
    })
}

/// `D(p, q)` for an aggregation `q` of `p`, which is `H(p) - H(q)`.
pub fn d_distance_aggregation(p: &ProbDist, agg: &Aggregation) -> Result<f64> {
    agg.check_source(p, EPS_CMP)?;
    Ok((entropy(p) - agg.entropy()).max(0.0))
}

/// Find a partition of `p` whose block sums reproduce `q` within
/// `tolerance`. Fails with a scope error when `q` is not an aggregation of
/// `p`, and with a size error beyond `limit_n` atoms.
pub fn find_aggregation(
    p: &ProbDist,
    q: &ProbDist,
    tolerance: f64,
    limit_n: usize,
) -> Result<Aggregation> {
    let (n, m) = (p.len(), q.len());
    if n > limit_n {
        return Err(Error::Size { n, limit: limit_n });
    }
    if m > n {
        return Err(Error::Scope(format!(
            "{m} atoms cannot aggregate a {n}-atom distribution"
        )));
    }
    let mut remaining: Vec<f64> = q.probs().to_vec();
    let mut counts = vec![0usize; m];
    let mut labels = vec![0usize; n];
    if assign(p.probs(), 0, &mut remaining, &mut counts, &mut labels, tolerance) {
        Aggregation::from_labels(p, &labels)
    } else {
        Err(Error::Scope(
            "q is not an aggregation of p; D needs a general minimum-entropy coupling".into(),
        ))
    }
}

fn assign(
    probs: &[f64],
    k: usize,
    remaining: &mut [f64],
    counts: &mut [usize],
    labels: &mut [usize],
    tol: f64,
) -> bool {
    if k == probs.len() {
        return counts.iter().all(|&c| c > 0) && remaining.iter().all(|r| r.abs() <= tol);
    }
    let empty_bins = counts.iter().filter(|&&c| c == 0).count();
    if empty_bins > probs.len() - k {
        return false;
    }
    let x = probs[k];
    for b in 0..remaining.len() {
        if remaining[b] + tol < x {
            continue;
        }
        // bins in identical states are interchangeable
        if (0..b).any(|c| counts[c] == counts[b] && remaining[c] == remaining[b]) {
            continue;
        }
        remaining[b] -= x;
        counts[b] += 1;
        labels[k] = b;
        if assign(probs, k + 1, remaining, counts, labels, tol) {
            return true;
        }
        remaining[b] += x;
        counts[b] -= 1;
    }
    false
}

/// `D(p, q)` when `q` is (recognisably) an aggregation of `p`.
pub fn d_distance(p: &ProbDist, q: &ProbDist, limit_n: usize) -> Result<f64> {
    let agg = find_aggregation(p, q, 1e-9, limit_n)?;
    d_distance_aggregation(p, &agg)
}

/// Result of [`approximate_closest_dist`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosestDist {
    pub aggregation: Aggregation,
    /// `D(p, q)` for the returned aggregation.
    pub d_value: f64,
    /// `H(R_m(p)) - H(q)`; bounds how far `d_value` can be above the optimum.
    pub certificate: f64,
}

/// An `m`-atom distribution whose distance to `p` is within
/// [`alpha_constant`](crate::aggregation::alpha_constant) of the closest one.
pub fn approximate_closest_dist(p: &ProbDist, m: usize) -> Result<ClosestDist> {
    let (aggregation, _) = huffman_aggregate(p, m)?;
    let d_value = d_distance_aggregation(p, &aggregation)?;
    let certificate = entropy(&r_operator(p, m)?) - aggregation.entropy();
    Ok(ClosestDist {
        aggregation,
        d_value,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::{alpha_constant, exact_max_aggregation, DEFAULT_LIMIT_N};

    fn d(v: &[f64]) -> ProbDist {
        ProbDist::new(v.to_vec()).unwrap()
    }

    #[test]
    fn mq_worked_example() {
        let p = d(&[0.4, 0.3, 0.2, 0.1]);
        let agg = Aggregation::from_blocks(&p, vec![vec![0, 3], vec![1, 2]]).unwrap();
        let c = build_mq_coupling(&p, &agg).unwrap();
        assert_eq!(c.matrix, vec![vec![0.4, 0.0, 0.0, 0.1], vec![0.0, 0.3, 0.2, 0.0]]);
        c.validate().unwrap();
        assert!((c.joint_entropy() - entropy(&p)).abs() < 1e-12);
    }

    #[test]
    fn mq_identity_and_total() {
        let p = d(&[0.5, 0.3, 0.2]);
        let c = build_mq_coupling(&p, &Aggregation::identity(&p)).unwrap();
        for (i, row) in c.matrix.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { p.probs()[i] } else { 0.0 });
            }
        }
        let c = build_mq_coupling(&p, &Aggregation::total(&p)).unwrap();
        assert_eq!(c.matrix, vec![p.probs().to_vec()]);
        c.validate().unwrap();
    }

    #[test]
    fn mq_rejects_foreign_aggregation() {
        let p = d(&[0.4, 0.3, 0.2, 0.1]);
        let other = d(&[0.25, 0.25, 0.25, 0.25]);
        let agg = Aggregation::from_blocks(&other, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(build_mq_coupling(&p, &agg), Err(Error::Aggregation(_))));
        let short = d(&[0.5, 0.5]);
        let agg = Aggregation::identity(&short);
        assert!(matches!(d_distance_aggregation(&p, &agg), Err(Error::Aggregation(_))));
    }

    #[test]
    fn distance_examples() {
        let p = d(&[0.4, 0.3, 0.2, 0.1]);
        assert_eq!(d_distance_aggregation(&p, &Aggregation::identity(&p)).unwrap(), 0.0);
        let (huff, _) = huffman_aggregate(&p, 2).unwrap();
        let dh = d_distance_aggregation(&p, &huff).unwrap();
        assert!((dh - 0.875488).abs() < 1e-5);
        let best = exact_max_aggregation(&p, 2, DEFAULT_LIMIT_N).unwrap();
        let db = d_distance_aggregation(&p, &best).unwrap();
        assert!((db - 0.846439).abs() < 1e-5);
    }

    #[test]
    fn closest_examples() {
        let p = d(&[0.4, 0.3, 0.2, 0.1]);
        let c = approximate_closest_dist(&p, 2).unwrap();
        assert!((c.d_value - 0.875488).abs() < 1e-5);
        assert!((c.d_value - 0.846439 - 0.029049).abs() < 1e-5);
        assert!(c.certificate <= alpha_constant());

        let p = d(&[0.6, 0.2, 0.1, 0.1]);
        let c = approximate_closest_dist(&p, 2).unwrap();
        let best = exact_max_aggregation(&p, 2, DEFAULT_LIMIT_N).unwrap();
        assert!((c.d_value - d_distance_aggregation(&p, &best).unwrap()).abs() < 1e-12);

        let u = ProbDist::uniform(4).unwrap();
        let c = approximate_closest_dist(&u, 2).unwrap();
        assert!((c.d_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recognises_aggregations() {
        let p = d(&[0.4, 0.3, 0.2, 0.1]);
        let q = d(&[0.7, 0.3]);
        let agg = find_aggregation(&p, &q, 1e-9, DEFAULT_LIMIT_N).unwrap();
        assert!((agg.dist().probs()[0] - 0.7).abs() < 1e-12);
        let dist = d_distance(&p, &q, DEFAULT_LIMIT_N).unwrap();
        assert!((dist - (entropy(&p) - entropy(&q))).abs() < 1e-12);
        // 0.65 is not a subset sum
        let q = d(&[0.65, 0.35]);
        assert!(matches!(d_distance(&p, &q, DEFAULT_LIMIT_N), Err(Error::Scope(_))));
        let q = d(&[0.2; 5]);
        assert!(matches!(d_distance(&p, &q, DEFAULT_LIMIT_N), Err(Error::Scope(_))));
    }
}

//! Tunstall (variable-to-fixed) parse trees for memoryless sources and the
//! compression-rate bounds that follow from the ratio entropy bound.
//!
//! With `n` leaves each source segment is sent as a `ceil(log2 n)`-bit
//! index, so the rate is `R = ceil(log2 n) / E[L]`. For a memoryless source
//! `E[L] = H(W) / H(P)`, and because leaf probabilities of a Tunstall tree
//! are within a factor `rho = 1 / p_min` of each other,
//! `H(W) >= log2 n - theorem2_gap(rho)`. That gives
//! `R <= ceil(log2 n) H(P) / (log2 n - theorem2_gap(rho))`, which is
//! sharper than the classical `ceil(log2 n) H(P) / (log2 n - log2 rho)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::bounds::theorem2_gap;
use crate::dist::{compensated_sum, entropy, entropy_of, ProbDist};
use crate::error::{Error, Result};
use crate::report::sig17;

/// A stationary memoryless source. Symbol `k` is the `k`-th most probable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceModel {
    symbol_probs: ProbDist,
    rho: f64,
}

impl SourceModel {
    pub fn new(symbol_probs: ProbDist) -> Result<Self> {
        if symbol_probs.len() < 2 {
            return Err(Error::Param("a source needs at least two symbols".into()));
        }
        if symbol_probs.min() <= 0.0 {
            return Err(Error::Param("every source symbol needs positive probability".into()));
        }
        let rho = 1.0 / symbol_probs.min();
        Ok(Self { symbol_probs, rho })
    }

    pub fn symbol_probs(&self) -> &ProbDist {
        &self.symbol_probs
    }

    pub fn alphabet_size(&self) -> usize {
        self.symbol_probs.len()
    }

    /// Reciprocal of the least probable symbol's probability.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn entropy(&self) -> f64 {
        entropy(&self.symbol_probs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Leaf {
    pub word: Vec<usize>,
    pub prob: f64,
    pub depth: usize,
}

impl Leaf {
    /// The word spelled with `a`, `b`, ... (or dot-separated indices past
    /// 26 symbols).
    pub fn label(&self, alphabet_size: usize) -> String {
        if alphabet_size <= 26 {
            self.word.iter().map(|&s| (b'a' + s as u8) as char).collect()
        } else {
            let parts: Vec<String> = self.word.iter().map(|s| s.to_string()).collect();
            parts.join(".")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TunstallTree {
    /// Leaves in lexicographic word order.
    pub leaves: Vec<Leaf>,
    pub n_leaves: usize,
    pub internal_count: usize,
    pub alphabet_size: usize,
}

impl TunstallTree {
    pub fn leaf_probs(&self) -> Vec<f64> {
        self.leaves.iter().map(|l| l.prob).collect()
    }

    pub fn leaf_dist(&self) -> ProbDist {
        ProbDist::from_parts(self.leaf_probs())
    }

    /// Largest over smallest leaf probability.
    pub fn leaf_ratio(&self) -> f64 {
        let probs = self.leaf_probs();
        let max = probs.iter().copied().fold(f64::MIN, f64::max);
        let min = probs.iter().copied().fold(f64::MAX, f64::min);
        max / min
    }
}

// Heap entry: most probable leaf first, ties to the lexicographically
// smallest word.
#[derive(Debug, PartialEq)]
struct Candidate(Leaf);

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .prob
            .total_cmp(&other.0.prob)
            .then_with(|| other.0.word.cmp(&self.0.word))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Grow a Tunstall tree by repeatedly expanding the most probable leaf.
/// `n_leaves_target` must be `1 + t (K - 1)`; `t = 0` gives the bare root.
pub fn build_tunstall_tree(src: &SourceModel, n_leaves_target: usize) -> Result<TunstallTree> {
    let k = src.alphabet_size();
    if n_leaves_target == 0 || (n_leaves_target - 1) % (k - 1) != 0 {
        return Err(Error::Param(format!(
            "{n_leaves_target} leaves is not reachable with a {k}-ary tree (need 1 + t*{})",
            k - 1
        )));
    }
    let expansions = (n_leaves_target - 1) / (k - 1);
    let symbols = src.symbol_probs().probs();
    let mut heap = BinaryHeap::new();
    heap.push(Candidate(Leaf {
        word: Vec::new(),
        prob: 1.0,
        depth: 0,
    }));
    for _ in 0..expansions {
        let Candidate(parent) = heap.pop().expect("tree always has a leaf");
        for (s, &ps) in symbols.iter().enumerate() {
            let mut word = parent.word.clone();
            word.push(s);
            heap.push(Candidate(Leaf {
                word,
                prob: parent.prob * ps,
                depth: parent.depth + 1,
            }));
        }
    }
    let mut leaves: Vec<Leaf> = heap.into_iter().map(|c| c.0).collect();
    leaves.sort_by(|a, b| a.word.cmp(&b.word));
    Ok(TunstallTree {
        n_leaves: leaves.len(),
        leaves,
        internal_count: expansions,
        alphabet_size: k,
    })
}

/// Mean segment length `sum prob * depth`.
pub fn expected_length(tree: &TunstallTree) -> f64 {
    compensated_sum(tree.leaves.iter().map(|l| l.prob * l.depth as f64))
}

/// `ceil(log2 n)` in integer arithmetic; 0 for `n <= 1`.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub n_leaves: usize,
    pub rho: f64,
    /// Source entropy, bits per symbol.
    pub h_p: f64,
    /// Leaf entropy, bits.
    pub h_w: f64,
    /// Expected segment length, `sum prob * depth`.
    pub e_l: f64,
    /// `h_w / h_p`, the memoryless-source identity for `e_l`.
    pub e_l_from_entropy: f64,
    pub rate: f64,
    /// Classical bound with `log2 rho` in the denominator.
    pub js_bound: Option<f64>,
    /// Bound with `theorem2_gap(rho)` in the denominator.
    pub new_bound: Option<f64>,
    pub leaf_ratio: f64,
    /// `log2 n - theorem2_gap(rho)`, the guaranteed leaf entropy.
    pub leaf_entropy_floor: f64,
    /// Bounds that could not be formed, with the reason.
    pub bound_errors: Vec<String>,
}

pub fn rate_report(src: &SourceModel, n_leaves_target: usize) -> Result<RateReport> {
    if n_leaves_target < 2 {
        return Err(Error::Param("a rate needs at least two leaves".into()));
    }
    let tree = build_tunstall_tree(src, n_leaves_target)?;
    let n = tree.n_leaves;
    let log_n = (n as f64).log2();
    let codeword = ceil_log2(n) as f64;
    let h_p = src.entropy();
    let h_w = entropy_of(&tree.leaf_probs());
    let e_l = expected_length(&tree);
    let rho = src.rho();
    let gap = theorem2_gap(rho)?;

    let mut bound_errors = Vec::new();
    let mut bound = |name: &str, subtract: f64| {
        let denom = log_n - subtract;
        if denom > 0.0 {
            Some(codeword * h_p / denom)
        } else {
            bound_errors.push(
                Error::BoundDomain(format!(
                    "{name}: log2 n - {subtract} = {denom} is not positive"
                ))
                .to_string(),
            );
            None
        }
    };
    let new_bound = bound("new_bound", gap);
    let js_bound = bound("js_bound", rho.log2());

    Ok(RateReport {
        n_leaves: n,
        rho,
        h_p,
        h_w,
        e_l,
        e_l_from_entropy: h_w / h_p,
        rate: codeword / e_l,
        js_bound,
        new_bound,
        leaf_ratio: tree.leaf_ratio(),
        leaf_entropy_floor: log_n - gap,
        bound_errors,
    })
}

pub const RATE_CSV_HEADER: &str = "source,rho,n_leaves,h_p,h_w,e_l,rate,new_bound,js_bound";

impl RateReport {
    /// One CSV row under [`RATE_CSV_HEADER`]; absent bounds are empty fields.
    pub fn csv_row(&self, src: &SourceModel) -> String {
        let source: Vec<String> = src.symbol_probs().probs().iter().map(|x| sig17(*x)).collect();
        let opt = |x: Option<f64>| x.map(sig17).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            source.join(";"),
            sig17(self.rho),
            self.n_leaves,
            sig17(self.h_p),
            sig17(self.h_w),
            sig17(self.e_l),
            sig17(self.rate),
            opt(self.new_bound),
            opt(self.js_bound),
        )
    }
}

/// Leaf counts `1 + t (K - 1)` in `[lo, hi]`.
pub fn reachable_leaf_counts(alphabet_size: usize, lo: usize, hi: usize) -> Vec<usize> {
    let step = alphabet_size - 1;
    (0..)
        .map(|t| 1 + t * step)
        .skip_while(|&n| n < lo)
        .take_while(|&n| n <= hi)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src(v: &[f64]) -> SourceModel {
        SourceModel::new(ProbDist::new(v.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn worked_tree() {
        let s = src(&[0.7, 0.3]);
        let t = build_tunstall_tree(&s, 4).unwrap();
        let labels: Vec<String> = t.leaves.iter().map(|l| l.label(2)).collect();
        assert_eq!(labels, ["aaa", "aab", "ab", "b"]);
        let expected = [0.343, 0.147, 0.21, 0.3];
        for (l, e) in t.leaves.iter().zip(expected) {
            assert!((l.prob - e).abs() < 1e-12);
        }
        let depths: Vec<usize> = t.leaves.iter().map(|l| l.depth).collect();
        assert_eq!(depths, [3, 3, 2, 1]);
        assert_eq!(t.internal_count, 3);
        assert!((expected_length(&t) - 2.19).abs() < 1e-9);
    }

    #[test]
    fn symmetric_source() {
        let s = src(&[0.5, 0.5]);
        let t = build_tunstall_tree(&s, 4).unwrap();
        let labels: Vec<String> = t.leaves.iter().map(|l| l.label(2)).collect();
        assert_eq!(labels, ["aa", "ab", "ba", "bb"]);
        assert!(t.leaves.iter().all(|l| l.prob == 0.25 && l.depth == 2));
        assert_eq!(expected_length(&t), 2.0);
    }

    #[test]
    fn reachability() {
        let s = src(&[0.7, 0.3]);
        assert_eq!(build_tunstall_tree(&s, 5).unwrap().n_leaves, 5);
        let root = build_tunstall_tree(&s, 1).unwrap();
        assert_eq!(root.n_leaves, 1);
        assert_eq!(expected_length(&root), 0.0);
        let s3 = src(&[0.5, 0.3, 0.2]);
        assert!(matches!(build_tunstall_tree(&s3, 4), Err(Error::Param(_))));
        assert_eq!(build_tunstall_tree(&s3, 5).unwrap().n_leaves, 5);
        assert!(build_tunstall_tree(&s3, 0).is_err());
        assert_eq!(reachable_leaf_counts(3, 2, 9), vec![3, 5, 7, 9]);
        assert_eq!(reachable_leaf_counts(2, 2, 4), vec![2, 3, 4]);
    }

    #[test]
    fn source_validation() {
        assert!(SourceModel::new(ProbDist::new(vec![1.0]).unwrap()).is_err());
        assert!(SourceModel::new(ProbDist::new(vec![1.0, 0.0]).unwrap()).is_err());
        let s = src(&[0.7, 0.3]);
        assert!((s.rho() - 10.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ceil_log2_values() {
        let cases = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (1024, 10), (1025, 11)];
        for (n, e) in cases {
            assert_eq!(ceil_log2(n), e, "n = {n}");
        }
    }

    #[test]
    fn worked_rates() {
        let r = rate_report(&src(&[0.7, 0.3]), 4).unwrap();
        assert!((r.e_l - 2.19).abs() < 1e-9);
        assert!((r.rate - 0.913242).abs() < 1e-5);
        assert!((r.new_bound.unwrap() - 1.010897).abs() < 1e-4);
        assert!((r.js_bound.unwrap() - 6.701).abs() < 1e-2);
        assert!((r.e_l - r.e_l_from_entropy).abs() < 1e-9);

        let r = rate_report(&src(&[0.5, 0.5]), 4).unwrap();
        assert_eq!(r.rate, 1.0);
        assert!((r.new_bound.unwrap() - 1.044965).abs() < 1e-5);
        assert!((r.js_bound.unwrap() - 2.0).abs() < 1e-12);

        let r = rate_report(&src(&[0.5, 0.5]), 2).unwrap();
        assert!((r.new_bound.unwrap() - 1.094176).abs() < 1e-5);
        assert_eq!(r.js_bound, None);
        assert_eq!(r.bound_errors.len(), 1);
        assert!(r.bound_errors[0].contains("js_bound"));

        assert!(rate_report(&src(&[0.5, 0.5]), 1).is_err());
    }

    #[test]
    fn csv_row_has_all_columns() {
        let s = src(&[0.5, 0.5]);
        let r = rate_report(&s, 2).unwrap();
        let row = r.csv_row(&s);
        assert_eq!(row.split(',').count(), RATE_CSV_HEADER.split(',').count());
        assert!(row.ends_with(','));
    }
}

//! Property tests for distributions, majorization and the aggregation
//! operators.

use entropy_aggregation::aggregation::{
    alpha_constant, huffman_aggregate, q_operator, r_operator, Aggregation,
};
use entropy_aggregation::bounds::{build_z_rho, theorem2_gap};
use entropy_aggregation::dist::kl_divergence;
use entropy_aggregation::majorization::{check_schur_gap, majorizes, majorizes_with_tolerance};
use entropy_aggregation::tunstall::{build_tunstall_tree, SourceModel};
use entropy_aggregation::ProbDist;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn weights(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001f64..1.0, n)
}

fn dist(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ProbDist> {
    weights(n).prop_map(|w| ProbDist::normalized(w).unwrap())
}

/// A distribution together with a block label for every atom.
fn dist_with_labels() -> impl Strategy<Value = (ProbDist, Vec<usize>)> {
    dist(2..=12).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), prop::collection::vec(0..n, n))
    })
}

/// Compress labels so that every label in `0..k` is used.
fn dense(labels: &[usize]) -> Vec<usize> {
    let mut seen = Vec::new();
    labels
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(i) => i,
            None => {
                seen.push(*l);
                seen.len() - 1
            }
        })
        .collect()
}

proptest! {
    #[test]
    fn normalized_input_is_sorted_and_sums_to_one(w in weights(1..=40)) {
        let p = ProbDist::normalized(w).unwrap();
        prop_assert!(p.probs().windows(2).all(|x| x[0] >= x[1]));
        prop_assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_lies_between_zero_and_log_n(p in dist(1..=60)) {
        let h = p.entropy();
        prop_assert!(h >= 0.0);
        prop_assert!(h <= (p.len() as f64).log2() + 1e-12);
    }

    #[test]
    fn permutation_invariance(mut w in weights(2..=20), seed in any::<u64>()) {
        let a = ProbDist::normalized(w.clone()).unwrap();
        let k = (seed as usize) % w.len();
        w.rotate_left(k);
        let last = w.len() - 1;
        w.swap(0, last);
        let b = ProbDist::normalized(w).unwrap();
        prop_assert!((a.entropy() - b.entropy()).abs() < 1e-12);
    }

    #[test]
    fn padding_is_neutral(p in dist(1..=20), extra in 0usize..10) {
        let q = p.padded(p.len() + extra);
        prop_assert!((p.entropy() - q.entropy()).abs() < 1e-15);
        prop_assert!(majorizes(&p, &q).holds && majorizes(&q, &p).holds);
    }

    #[test]
    fn majorization_is_reflexive(p in dist(1..=30)) {
        prop_assert!(majorizes(&p, &p).holds);
    }

    #[test]
    fn uniform_is_majorized_by_everything(p in dist(1..=30)) {
        let u = ProbDist::uniform(p.len()).unwrap();
        prop_assert!(majorizes_with_tolerance(&u, &p, TOL).holds);
    }

    #[test]
    fn majorization_is_transitive_along_aggregation_chains((p, labels) in dist_with_labels()) {
        // p <= q <= total for any aggregation q
        let q = Aggregation::from_labels(&p, &dense(&labels)).unwrap();
        let total = Aggregation::total(&p);
        prop_assert!(majorizes_with_tolerance(&p, q.dist(), TOL).holds);
        prop_assert!(majorizes_with_tolerance(q.dist(), total.dist(), TOL).holds);
        prop_assert!(majorizes_with_tolerance(&p, total.dist(), TOL).holds);
    }

    #[test]
    fn aggregation_never_increases_entropy((p, labels) in dist_with_labels()) {
        let q = Aggregation::from_labels(&p, &dense(&labels)).unwrap();
        prop_assert!(q.entropy() <= p.entropy() + 1e-12);
        let gap = check_schur_gap(&p, q.dist()).unwrap();
        prop_assert!(gap >= -TOL);
    }

    #[test]
    fn kl_is_non_negative(a in dist(1..=10), b in dist(1..=10)) {
        prop_assume!(b.len() <= a.len());
        prop_assert!(kl_divergence(&b, &a).unwrap() >= 0.0);
    }

    #[test]
    fn operators_preserve_mass_and_order((p, m) in dist(3..=30).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), 2..n)
    })) {
        let r = r_operator(&p, m).unwrap();
        let q = q_operator(&p, m).unwrap();
        let (h, _) = huffman_aggregate(&p, m).unwrap();
        for d in [&r, q.dist(), h.dist()] {
            prop_assert_eq!(d.len(), m);
            prop_assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        // Q is the least entropic, R an upper bound, Huffman within alpha of R
        prop_assert!(q.entropy() <= h.entropy() + TOL);
        prop_assert!(h.entropy() <= r.entropy() + TOL);
        prop_assert!(r.entropy() - h.entropy() <= alpha_constant() + TOL);
        prop_assert!(majorizes_with_tolerance(&r, h.dist(), TOL).holds);
    }

    #[test]
    fn z_rho_is_between_p_and_bound(w in prop::collection::vec(1.0f64..4.0, 2..=50)) {
        let p = ProbDist::normalized(w).unwrap();
        let rho = 4.0;
        let z = build_z_rho(&p, rho).unwrap();
        let bound = (p.len() as f64).log2() - theorem2_gap(rho).unwrap();
        prop_assert!(p.entropy() >= z.dist.entropy() - TOL);
        prop_assert!(z.dist.entropy() >= bound - TOL);
        prop_assert!(z.dist.ratio() <= rho * (1.0 + 1e-9));
    }

    #[test]
    fn gap_is_monotone_and_below_log_rho(a in 1.0f64..200.0, b in 1.0f64..200.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (gl, gh) = (theorem2_gap(lo).unwrap(), theorem2_gap(hi).unwrap());
        prop_assert!(gl <= gh + 1e-12);
        prop_assert!(gh <= hi.log2() + 1e-12);
    }

    #[test]
    fn tunstall_leaves_form_a_complete_code(
        w in prop::collection::vec(0.05f64..1.0, 2..=4),
        t in 0usize..60,
    ) {
        let src = SourceModel::new(ProbDist::normalized(w).unwrap()).unwrap();
        let k = src.alphabet_size();
        let n = 1 + t * (k - 1);
        let tree = build_tunstall_tree(&src, n).unwrap();
        prop_assert_eq!(tree.leaves.len(), n);
        let kraft: f64 = tree.leaves.iter().map(|l| (k as f64).powi(-(l.depth as i32))).sum();
        prop_assert!((kraft - 1.0).abs() < 1e-9);
        prop_assert!(tree.leaf_ratio() <= src.rho() * (1.0 + 1e-12));
    }
}

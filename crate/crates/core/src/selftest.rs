//! Seeded randomized property suites, run by `entagg selftest`.
//!
//! Each suite draws `cases` random instances from a ChaCha stream seeded by
//! the caller, checks one family of inequalities, and counts violations.
//! Identical `(cases, seed)` give identical results.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::aggregation::{
    alpha_constant, entropy_extremes, huffman_aggregate, q_operator, r_operator, Aggregation,
    DEFAULT_LIMIT_N,
};
use crate::bounds::{build_z_rho, theorem2_gap};
use crate::coupling::{build_mq_coupling, d_distance_aggregation};
use crate::dist::{entropy, ProbDist};
use crate::majorization::{majorizes_with_tolerance, schur_gap_with_tolerance};
use crate::tunstall::{build_tunstall_tree, rate_report, reachable_leaf_counts, SourceModel};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub checks: usize,
    pub failures: usize,
    /// First failing case, if any.
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A random distribution on `n` atoms. Shapes vary between flat, skewed and
/// heavy-headed vectors, with occasional exact ties.
pub fn random_dist<R: Rng>(rng: &mut R, n: usize) -> ProbDist {
    let shape = rng.gen_range(0..4);
    let mut w: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.gen_range(1e-6..1.0);
            match shape {
                0 => u,
                1 => -u.ln(),
                2 => u.powi(4),
                _ => (-u.ln()).powi(3),
            }
        })
        .collect();
    if n > 1 && rng.gen_bool(0.2) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        w[j] = w[i];
    }
    ProbDist::normalized(w).expect("positive weights")
}

/// A random distribution with `p_1 / p_n <= rho`. Half the time the two
/// extremes are pinned to exactly ratio `rho`.
pub fn random_ratio_dist<R: Rng>(rng: &mut R, n: usize, rho: f64) -> ProbDist {
    let mut w: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..=rho)).collect();
    if n >= 2 && rng.gen_bool(0.5) {
        w[0] = 1.0;
        w[1] = rho;
        // push the rest to the ends to approach the extremal shape
        for x in w.iter_mut().skip(2) {
            if rng.gen_bool(0.5) {
                *x = if rng.gen_bool(0.5) { 1.0 } else { rho };
            }
        }
    }
    ProbDist::normalized(w).expect("positive weights")
}

/// A uniformly random labelling of `0..n` into exactly `m` nonempty blocks.
pub fn random_aggregation<R: Rng>(rng: &mut R, p: &ProbDist, m: usize) -> Aggregation {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut labels = vec![0; n];
    for (k, &i) in order.iter().enumerate() {
        labels[i] = if k < m { k } else { rng.gen_range(0..m) };
    }
    Aggregation::from_labels(p, &labels).expect("labels cover every index")
}

/// Sandwich, 10/11 and exact-minimum checks against exhaustive enumeration,
/// plus the coupling-distance guarantee, on `n in [3, 10]`.
fn aggregation_suites(rng: &mut ChaCha8Rng, cases: usize) -> Vec<SuiteResult> {
    let mut min_suite = SuiteResult::new("exact_minimum");
    let mut sandwich = SuiteResult::new("additive_sandwich");
    let mut mult = SuiteResult::new("multiplicative_10_11");
    let mut distance = SuiteResult::new("distance_guarantee");
    let alpha = alpha_constant();
    for _ in 0..cases {
        let n = rng.gen_range(3..=10);
        let p = random_dist(rng, n);
        let ext = entropy_extremes(&p, DEFAULT_LIMIT_N).expect("n <= 10");
        for m in 2..n {
            let q = q_operator(&p, m).expect("valid m");
            min_suite.check((q.entropy() - ext.min[m]).abs() <= TOL, || {
                format!("{:?} m={m}: H(Q)={} min={}", p.probs(), q.entropy(), ext.min[m])
            });
            let hr = entropy(&r_operator(&p, m).expect("valid m"));
            let (huff, _) = huffman_aggregate(&p, m).expect("valid m");
            let hh = huff.entropy();
            sandwich.check(ext.max[m] <= hr + TOL && hh >= hr - alpha - TOL, || {
                format!("{:?} m={m}: max={} H(R)={hr} H(huff)={hh}", p.probs(), ext.max[m])
            });
            mult.check(hh >= 10.0 / 11.0 * ext.max[m] - TOL, || {
                format!("{:?} m={m}: H(huff)={hh} max={}", p.probs(), ext.max[m])
            });
            let d = d_distance_aggregation(&p, &huff).expect("own aggregation");
            let d_star = entropy(&p) - ext.max[m];
            let coupling_ok = build_mq_coupling(&p, &huff)
                .map(|c| c.validate().is_ok() && (c.joint_entropy() - entropy(&p)).abs() <= TOL)
                .unwrap_or(false);
            distance.check(coupling_ok && d <= d_star + alpha + TOL, || {
                format!("{:?} m={m}: D={d} D*={d_star}", p.probs())
            });
        }
        for s in [&mut min_suite, &mut sandwich, &mut mult, &mut distance] {
            s.cases += 1;
        }
    }
    vec![min_suite, sandwich, mult, distance]
}

fn majorization_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("majorization_chain");
    for _ in 0..cases {
        let n = rng.gen_range(3..=30);
        let m = rng.gen_range(2..n);
        let p = random_dist(rng, n);
        let r = r_operator(&p, m).expect("valid m");
        let q = random_aggregation(rng, &p, m);
        let holds = |a: &ProbDist, b: &ProbDist| majorizes_with_tolerance(a, b, TOL).holds;
        s.check(holds(&p, &r) && holds(&p, q.dist()) && holds(&r, q.dist()), || {
            format!("{:?} m={m} q={:?}", p.probs(), q.blocks())
        });
        let gap = schur_gap_with_tolerance(&p, q.dist(), TOL);
        s.check(matches!(gap, Ok(g) if g >= -TOL), || {
            format!("refined Schur on {:?} q={:?}: {gap:?}", p.probs(), q.blocks())
        });
        s.cases += 1;
    }
    s
}

fn ratio_bound_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("ratio_bound");
    let rhos = [1.5, 2.0, 4.0, 10.0];
    for _ in 0..cases {
        let rho = *rhos.choose(rng).expect("nonempty");
        let n = rng.gen_range(2..=64);
        let p = random_ratio_dist(rng, n, rho);
        let z = build_z_rho(&p, rho);
        let ok = match &z {
            Ok(z) => {
                let bound = (n as f64).log2() - theorem2_gap(rho).expect("rho >= 1");
                let (hp, hz) = (entropy(&p), entropy(&z.dist));
                hp >= hz - TOL
                    && hz >= bound - TOL
                    && majorizes_with_tolerance(&p, &z.dist, TOL).holds
            }
            Err(_) => false,
        };
        s.check(ok, || format!("rho={rho} {:?}: {z:?}", p.probs()));
        s.cases += 1;
    }
    s
}

fn tunstall_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("tunstall_bounds");
    for _ in 0..cases {
        let k = rng.gen_range(2..=3);
        let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.02..1.0)).collect();
        let src = SourceModel::new(ProbDist::normalized(w).expect("positive")).expect("k >= 2");
        let counts = reachable_leaf_counts(k, 2, 1025);
        let n = *counts.choose(rng).expect("nonempty");
        let tree = build_tunstall_tree(&src, n).expect("reachable");
        let r = rate_report(&src, n).expect("reachable");
        let mut ok = (r.e_l - r.e_l_from_entropy).abs() <= TOL
            && tree.leaf_ratio() <= src.rho() * (1.0 + 1e-12)
            && r.h_w >= r.leaf_entropy_floor - TOL;
        if let Some(nb) = r.new_bound {
            ok &= r.rate <= nb + TOL;
            if let Some(js) = r.js_bound {
                ok &= nb <= js + TOL;
            }
        }
        s.check(ok, || format!("source {:?} n={n}: {r:?}", src.symbol_probs().probs()));
        s.cases += 1;
    }
    s
}

/// Run every suite with `cases` instances each.
pub fn run_all(cases: usize, seed: u64) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = aggregation_suites(&mut rng, cases);
    out.push(majorization_suite(&mut rng, cases));
    out.push(ratio_bound_suite(&mut rng, cases));
    out.push(tunstall_suite(&mut rng, cases));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..20);
            let p = random_ratio_dist(&mut rng, n, 4.0);
            assert!(p.ratio() <= 4.0 * (1.0 + 1e-12));
            let m = rng.gen_range(1..=n);
            let q = random_aggregation(&mut rng, &p, m);
            assert_eq!(q.m(), m);
            assert_eq!(random_dist(&mut rng, n).len(), n);
        }
    }

    #[test]
    fn small_run_is_clean_and_reproducible() {
        let a = run_all(25, 11);
        assert!(a.iter().all(|s| s.passed()), "{a:?}");
        assert_eq!(a, run_all(25, 11));
    }
}

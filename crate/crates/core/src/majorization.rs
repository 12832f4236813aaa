//! The majorization preorder on sorted probability vectors.
//!
//! `a ⪯ b` ("a is majorized by b") when every prefix sum of `b` is at least
//! the corresponding prefix sum of `a`, after padding the shorter vector with
//! zeros. Entropy reverses this order, and [`check_schur_gap`] measures the
//! slack in the refined form `H(a) >= H(b) + D(b || a)`.

use serde::Serialize;

use crate::dist::{entropy, kl_divergence, ProbDist, EPS_CMP};
use crate::error::{Error, Result};

/// Outcome of a majorization test `a ⪯ b`, with the full witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// Length (1-based) of the first prefix whose gap is below tolerance.
    pub first_violation_index: Option<usize>,
    /// `sum_{k<=i} b_k - sum_{k<=i} a_k` for every prefix length `i`.
    pub prefix_gaps: Vec<f64>,
}

pub fn pad_to_common_length(a: &ProbDist, b: &ProbDist) -> (ProbDist, ProbDist) {
    let len = a.len().max(b.len());
    (a.padded(len), b.padded(len))
}

/// Prefix gaps of `b` over `a`, both accumulated with compensation.
fn prefix_gaps(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut gaps = Vec::with_capacity(a.len());
    // running difference kept as (sum, compensation)
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for (&x, &y) in a.iter().zip(b) {
        for term in [y, -x] {
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        gaps.push(sum + comp);
    }
    gaps
}

/// Is `a ⪯ b`? Ties count as satisfied up to [`EPS_CMP`].
pub fn majorizes(a: &ProbDist, b: &ProbDist) -> MajorizationVerdict {
    majorizes_with_tolerance(a, b, EPS_CMP)
}

/// [`majorizes`] with an explicit tolerance: the relation holds when every
/// prefix gap is `>= -tolerance`.
pub fn majorizes_with_tolerance(a: &ProbDist, b: &ProbDist, tolerance: f64) -> MajorizationVerdict {
    let (a, b) = pad_to_common_length(a, b);
    let prefix_gaps = prefix_gaps(a.probs(), b.probs());
    let first_violation_index = prefix_gaps
        .iter()
        .position(|g| *g < -tolerance)
        .map(|i| i + 1);
    MajorizationVerdict {
        holds: first_violation_index.is_none(),
        first_violation_index,
        prefix_gaps,
    }
}

/// `H(a) - H(b) - D(b || a)` for `a ⪯ b`; non-negative up to rounding.
pub fn check_schur_gap(a: &ProbDist, b: &ProbDist) -> Result<f64> {
    schur_gap_with_tolerance(a, b, EPS_CMP)
}

pub fn schur_gap_with_tolerance(a: &ProbDist, b: &ProbDist, tolerance: f64) -> Result<f64> {
    let verdict = majorizes_with_tolerance(a, b, tolerance);
    if let Some(prefix_len) = verdict.first_violation_index {
        return Err(Error::Majorization {
            prefix_len,
            gap: verdict.prefix_gaps[prefix_len - 1],
        });
    }
    let (a, b) = pad_to_common_length(a, b);
    let d = kl_divergence(&b, &a)?;
    Ok(entropy(&a) - entropy(&b) - d)
}

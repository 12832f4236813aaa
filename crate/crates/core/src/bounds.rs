//! Entropy lower bounds for distributions whose largest-to-smallest ratio is
//! at most `rho`.
//!
//! If `p_1 / p_n <= rho` then
//!
//! ```text
//! H(p) >= log2 n - (rho ln rho / (rho - 1) - 1 - ln(rho ln rho / (rho - 1))) / ln 2
//! ```
//!
//! The bound is attained in the limit by the extremal vector `z_rho(p)`
//! built in [`build_z_rho`]: a run of `rho * p_n` entries, one residual
//! entry, and a run of `p_n` entries. [`prior_bound_gap`] is the older
//! bound `ln((rho + 1)^2 / (4 rho))`, kept in natural log exactly as it is
//! usually stated, for comparison tables.

use serde::Serialize;

use crate::dist::{compensated_sum, ProbDist, EPS_CMP};
use crate::error::{Error, Result};

/// Below `1 + RHO_LIMIT_GUARD` the gap is reported as its limit value 0.
const RHO_LIMIT_GUARD: f64 = 1e-8;

fn check_rho(rho: f64) -> Result<()> {
    if !(rho >= 1.0) || !rho.is_finite() {
        return Err(Error::Param(format!("rho must be a finite value >= 1, got {rho}")));
    }
    Ok(())
}

/// Subtractive term of the ratio bound, in bits.
pub fn theorem2_gap(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if rho <= 1.0 + RHO_LIMIT_GUARD {
        return Ok(0.0);
    }
    let t = rho * rho.ln() / (rho - 1.0);
    Ok((t - 1.0 - t.ln()) / std::f64::consts::LN_2)
}

/// `log2 n - theorem2_gap(rho)`, floored at 0.
pub fn theorem2_lower_bound(n: usize, rho: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Param("n must be at least 1".into()));
    }
    Ok(((n as f64).log2() - theorem2_gap(rho)?).max(0.0))
}

/// `ln((rho + 1)^2 / (4 rho))`. Natural log, as the prior bound is written.
pub fn prior_bound_gap(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(((rho + 1.0).powi(2) / (4.0 * rho)).ln())
}

/// Both lower bounds for `n` atoms at ratio `rho`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub rho: f64,
    pub n: usize,
    /// `log2 n - gap_theorem2`, floored at 0.
    pub theorem2_bound: f64,
    /// `log2 n - gap_prior`, floored at 0.
    pub prior_bound: f64,
    pub gap_theorem2: f64,
    pub gap_prior: f64,
}

pub fn bound_report(n: usize, rho: f64) -> Result<BoundReport> {
    let gap_theorem2 = theorem2_gap(rho)?;
    let gap_prior = prior_bound_gap(rho)?;
    Ok(BoundReport {
        rho,
        n,
        theorem2_bound: theorem2_lower_bound(n, rho)?,
        prior_bound: ((n as f64).log2() - gap_prior).max(0.0),
        gap_theorem2,
        gap_prior,
    })
}

/// The extremal vector `z_rho(p)` for a given base distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZRhoDist {
    pub base: ProbDist,
    pub rho: f64,
    /// Number of leading `rho * p_n` entries.
    pub i: usize,
    /// The single residual entry, in `[p_n, rho * p_n)`.
    pub middle: f64,
    pub dist: ProbDist,
}

/// Build `z_rho(p)`. Requires `p_n > 0`, `rho > 1` and `p_1 / p_n <= rho`.
pub fn build_z_rho(p: &ProbDist, rho: f64) -> Result<ZRhoDist> {
    check_rho(rho)?;
    if rho <= 1.0 {
        return Err(Error::Param("z_rho needs rho > 1".into()));
    }
    let n = p.len();
    let pn = p.min();
    if pn <= 0.0 {
        return Err(Error::Support {
            index: n - 1,
            detail: "smallest probability must be positive".into(),
        });
    }
    let ratio = p.max() / pn;
    if ratio > rho * (1.0 + EPS_CMP) {
        return Err(Error::Ratio { ratio, rho });
    }
    // 1 - n p_n, summed as excesses over p_n so it does not depend on the
    // rounding of the total mass
    let excess = compensated_sum(p.probs().iter().map(|&x| x - pn));
    let step = pn * (rho - 1.0);
    let i = ((excess / step + 1e-9).floor().max(0.0) as usize).min(n - 1);
    let middle = excess + pn - i as f64 * step;

    let mut values = vec![rho * pn; i];
    values.push(middle);
    values.resize(n, pn);
    Ok(ZRhoDist {
        base: p.clone(),
        rho,
        i,
        middle,
        dist: ProbDist::from_parts(values),
    })
}

/// One row of the gap comparison: the bound above, the prior bound (nats,
/// as written), the classical `log2 rho` term, and the prior gap converted to
/// bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub rho: f64,
    pub gap_theorem2: f64,
    pub gap_prior: f64,
    pub log2_rho: f64,
    pub gap_prior_bits: f64,
}

pub const COMPARISON_CSV_HEADER: &str =
    "rho,gap_thm2_bits,gap_prior_nats_as_written,log2_rho,gap_prior_bits";

pub fn bound_comparison_table(rho_grid: &[f64]) -> Result<Vec<ComparisonRow>> {
    rho_grid
        .iter()
        .map(|&rho| {
            let gap_prior = prior_bound_gap(rho)?;
            Ok(ComparisonRow {
                rho,
                gap_theorem2: theorem2_gap(rho)?,
                gap_prior,
                log2_rho: rho.log2(),
                gap_prior_bits: gap_prior / std::f64::consts::LN_2,
            })
        })
        .collect()
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
            .collect(),
    }
}

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    use crate::report::sig17;
    let mut out = String::from(COMPARISON_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [r.rho, r.gap_theorem2, r.gap_prior, r.log2_rho, r.gap_prior_bits];
        let line: Vec<String> = fields.iter().map(|x| sig17(*x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

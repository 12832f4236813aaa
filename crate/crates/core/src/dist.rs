//! Validated probability vectors and the elementary information measures
//! (Shannon entropy, relative entropy) used by every other module.
//!
//! A [`ProbDist`] is always stored sorted non-increasingly. Zero entries are
//! kept: several operations compare vectors of explicit, possibly padded,
//! lengths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|sum - 1|` accepted by strict construction.
pub const EPS_SUM: f64 = 1e-9;

/// Tolerance for equality comparisons between probabilities.
pub const EPS_CMP: f64 = 1e-12;

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// A probability vector sorted non-increasingly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    /// Strict construction: entries must be finite and non-negative and sum to
    /// one within [`EPS_SUM`]. The values are sorted, never rescaled.
    pub fn new(values: impl Into<Vec<f64>>) -> Result<Self> {
        let probs = Self::checked(values.into())?;
        let sum = compensated_sum(probs.iter().copied());
        if (sum - 1.0).abs() > EPS_SUM {
            return Err(Error::Sum {
                sum,
                tolerance: EPS_SUM,
            });
        }
        Ok(Self::sorted(probs))
    }

    /// Like [`ProbDist::new`] but divides by the total mass first.
    pub fn normalized(values: impl Into<Vec<f64>>) -> Result<Self> {
        let mut probs = Self::checked(values.into())?;
        let sum = compensated_sum(probs.iter().copied());
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self::sorted(probs))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("empty distribution".into()));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// Internal constructor for vectors produced by the library itself, whose
    /// mass is one by construction up to rounding.
    pub(crate) fn from_parts(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.iter().all(|p| *p >= 0.0));
        Self::sorted(values)
    }

    fn checked(values: Vec<f64>) -> Result<Vec<f64>> {
        if values.is_empty() {
            return Err(Error::Validation("empty distribution".into()));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::Validation(format!(
                "entry {i} is {v}; probabilities must be finite and non-negative"
            )));
        }
        if values.iter().all(|v| *v == 0.0) {
            return Err(Error::Validation("all entries are zero".into()));
        }
        Ok(values)
    }

    fn sorted(mut probs: Vec<f64>) -> Self {
        // stable: ties keep their input order
        probs.sort_by(|a, b| b.total_cmp(a));
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.probs[0]
    }

    pub fn min(&self) -> f64 {
        self.probs[self.probs.len() - 1]
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.probs.get(i).copied()
    }

    /// Copy extended with zeros to `len` atoms. Shorter targets are ignored.
    pub fn padded(&self, len: usize) -> ProbDist {
        let mut probs = self.probs.clone();
        if len > probs.len() {
            probs.resize(len, 0.0);
        }
        ProbDist { probs }
    }

    pub fn entropy(&self) -> f64 {
        entropy(self)
    }

    /// Ratio between the largest and the smallest entry; infinite if the
    /// smallest entry is zero.
    pub fn ratio(&self) -> f64 {
        let min = self.min();
        if min == 0.0 {
            f64::INFINITY
        } else {
            self.max() / min
        }
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }
}

impl TryFrom<Vec<f64>> for ProbDist {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        ProbDist::new(values)
    }
}

impl From<ProbDist> for Vec<f64> {
    fn from(p: ProbDist) -> Self {
        p.probs
    }
}

/// `make_dist`: validate and sort, rescaling only when `normalize` is set.
pub fn make_dist(values: &[f64], normalize: bool) -> Result<ProbDist> {
    if normalize {
        ProbDist::normalized(values.to_vec())
    } else {
        ProbDist::new(values.to_vec())
    }
}

/// Shannon entropy in bits of an arbitrary non-negative vector, with
/// `0 log 0 = 0`. Summed in nats and converted once.
pub fn entropy_of(values: &[f64]) -> f64 {
    let nats = compensated_sum(
        values
            .iter()
            .filter(|p| **p > 0.0)
            .map(|&p| -p * p.ln()),
    );
    nats / std::f64::consts::LN_2
}

pub fn entropy(p: &ProbDist) -> f64 {
    entropy_of(p.probs())
}

/// Relative entropy `D(b || a)` in bits. The shorter argument is padded with
/// zeros.
pub fn kl_divergence(b: &ProbDist, a: &ProbDist) -> Result<f64> {
    let len = b.len().max(a.len());
    let (b, a) = (b.padded(len), a.padded(len));
    let mut terms = Vec::with_capacity(len);
    for (i, (&bi, &ai)) in b.probs().iter().zip(a.probs()).enumerate() {
        if bi == 0.0 {
            continue;
        }
        if ai == 0.0 {
            return Err(Error::Support {
                index: i,
                detail: format!("b[{i}] = {bi} > 0 but a[{i}] = 0"),
            });
        }
        terms.push(bi * (bi / ai).ln());
    }
    // tiny negative totals are rounding noise
    Ok((compensated_sum(terms) / std::f64::consts::LN_2).max(0.0))
}

/// Parse a distribution file: either a JSON array of numbers or decimals
/// separated by whitespace/newlines.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return serde_json::from_str::<Vec<f64>>(trimmed)
            .map_err(|e| Error::Validation(format!("bad JSON array: {e}")));
    }
    trimmed
        .split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| Error::Validation(format!("not a number: {tok:?}")))
        })
        .collect()
}

/// Render a probability vector in the whitespace-separated text format.
pub fn format_values(p: &ProbDist) -> String {
    let mut out = String::new();
    for x in p.probs() {
        out.push_str(&crate::report::sig17(*x));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn make_dist_sorts() {
        let p = make_dist(&[0.2, 0.5, 0.3], false).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.3, 0.2]);
        assert_eq!(make_dist(&[1.0], false).unwrap().probs(), &[1.0]);
    }

    #[test]
    fn make_dist_errors() {
        assert!(matches!(
            make_dist(&[0.4, 0.4], false),
            Err(Error::Sum { .. })
        ));
        assert!(matches!(
            make_dist(&[], false),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            make_dist(&[1.2, -0.2], false),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            make_dist(&[f64::NAN, 1.0], false),
            Err(Error::Validation(_))
        ));
        let p = make_dist(&[0.4, 0.4], true).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn zeros_are_kept() {
        let p = ProbDist::new(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(p.probs(), &[1.0, 0.0, 0.0]);
        assert_eq!(p.entropy(), 0.0);
    }

    #[test]
    fn entropy_examples() {
        let half = ProbDist::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(entropy(&half), 1.0);
        assert_eq!(entropy(&ProbDist::new(vec![1.0, 0.0]).unwrap()), 0.0);
        let p = ProbDist::new(vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        // -sum p log2 p, evaluated term by term
        let direct: f64 = [0.4_f64, 0.3, 0.2, 0.1]
            .iter()
            .map(|p| -p * p.log2())
            .sum();
        assert!(close(entropy(&p), direct, 1e-12));
        assert!(close(entropy(&p), 1.846439, 1e-6));
    }

    #[test]
    fn uniform_entropy_is_log_n() {
        for k in [1u32, 2, 3, 7, 10, 16, 20] {
            let n = 1usize << k;
            let u = ProbDist::uniform(n).unwrap();
            assert!(close(entropy(&u), k as f64, 1e-12), "n = {n}");
        }
        for n in [3usize, 5, 6, 1000, 12345] {
            let u = ProbDist::uniform(n).unwrap();
            assert!(close(entropy(&u), (n as f64).log2(), 1e-12), "n = {n}");
        }
    }

    #[test]
    fn kl_examples() {
        let half = ProbDist::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(kl_divergence(&half, &half).unwrap(), 0.0);
        let point = ProbDist::new(vec![1.0, 0.0]).unwrap();
        assert!(close(kl_divergence(&point, &half).unwrap(), 1.0, 1e-15));
        let b = ProbDist::new(vec![0.9, 0.1]).unwrap();
        let direct = 0.9 * (0.9_f64 / 0.5).log2() + 0.1 * (0.1_f64 / 0.5).log2();
        let d = kl_divergence(&b, &half).unwrap();
        assert!(close(d, direct, 1e-12));
        assert!(close(d, 0.531004, 1e-6));
    }

    #[test]
    fn kl_support_error() {
        let half = ProbDist::new(vec![0.5, 0.5]).unwrap();
        let point = ProbDist::new(vec![1.0]).unwrap();
        // half has mass where the padded point mass has none
        assert!(matches!(
            kl_divergence(&half, &point),
            Err(Error::Support { index: 1, .. })
        ));
    }

    #[test]
    fn parse_both_formats() {
        assert_eq!(parse_values("[0.5, 0.25,0.25]").unwrap(), vec![0.5, 0.25, 0.25]);
        assert_eq!(parse_values("0.5\n0.25 0.25\n").unwrap(), vec![0.5, 0.25, 0.25]);
        assert!(parse_values("0.5 abc").is_err());
        assert!(parse_values("[0.5,").is_err());
    }

    #[test]
    fn serde_validates() {
        let p: ProbDist = serde_json::from_str("[0.25, 0.75]").unwrap();
        assert_eq!(p.probs(), &[0.75, 0.25]);
        assert!(serde_json::from_str::<ProbDist>("[0.25, 0.25]").is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), "[0.75,0.25]");
    }
}

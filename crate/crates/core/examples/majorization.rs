// Majorization between a distribution, its upper-bound operator and an
// arbitrary aggregation, plus the refined Schur-concavity gap.

use std::io::Write;

use entropy_aggregation::aggregation::{r_operator, Aggregation};
use entropy_aggregation::majorization::{check_schur_gap, majorizes};
use entropy_aggregation::ProbDist;

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    let p = ProbDist::new(vec![0.35, 0.25, 0.15, 0.1, 0.1, 0.05])?;
    let r = r_operator(&p, 3)?;
    let q = Aggregation::from_blocks(&p, vec![vec![0, 5], vec![1, 4], vec![2, 3]])?;

    for (name, a, b) in [
        ("p <= R_3(p)", &p, &r),
        ("p <= q", &p, q.dist()),
        ("R_3(p) <= q", &r, q.dist()),
    ] {
        let v = majorizes(a, b);
        writeln!(out, "{name:<12} holds = {:<5} prefix gaps = {:?}", v.holds, rounded(&v.prefix_gaps))?;
    }

    // the reverse direction fails; the verdict says where
    let v = majorizes(q.dist(), &p);
    writeln!(out, "q <= p       holds = {}, first violation at prefix {:?}", v.holds, v.first_violation_index)?;

    let gap = check_schur_gap(&p, q.dist())?;
    writeln!(out, "H(p) - H(q) - D(q||p) = {gap:.6} (non-negative when p <= q)")?;
    Ok(())
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e6).round() / 1e6 + 0.0).collect()
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&mut std::io::stdout())
}

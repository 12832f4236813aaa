// The coupling distance between a distribution and its aggregations, and
// the closest `m`-atom distribution up to an additive constant.

use std::io::Write;

use entropy_aggregation::aggregation::Aggregation;
use entropy_aggregation::coupling::{approximate_closest_dist, build_mq_coupling, d_distance};
use entropy_aggregation::ProbDist;

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    let p = ProbDist::new(vec![0.4, 0.3, 0.2, 0.1])?;
    let agg = Aggregation::from_blocks(&p, vec![vec![0, 3], vec![1, 2]])?;
    let coupling = build_mq_coupling(&p, &agg)?;
    coupling.validate()?;
    writeln!(out, "M_q for q = {:?}:", agg.dist().probs())?;
    for row in &coupling.matrix {
        writeln!(out, "  {row:?}")?;
    }
    writeln!(out, "H(M_q) = {:.6} = H(p) = {:.6}", coupling.joint_entropy(), p.entropy())?;

    // D works on plain distributions as long as q is recognisably an aggregation
    let q = ProbDist::new(vec![0.7, 0.3])?;
    writeln!(out, "D(p, {:?}) = {:.6}", q.probs(), d_distance(&p, &q, 12)?)?;

    let closest = approximate_closest_dist(&p, 2)?;
    writeln!(
        out,
        "closest 2-atom: {:?}, D = {:.6}, certificate {:.6}",
        closest.aggregation.dist().probs(),
        closest.d_value,
        closest.certificate
    )?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&mut std::io::stdout())
}

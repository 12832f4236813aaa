// Compress a distribution to `m` atoms and compare the achievable entropies.
//
// Prints the minimum-entropy aggregation, the greedy Huffman aggregation,
// the exact maximum found by enumeration, and the upper bound `H(R_m(p))`
// that sandwiches the maximum.
//
// Run with `cargo run --example aggregate_extremes`.

use std::io::Write;

use entropy_aggregation::aggregation::{
    alpha_constant, exact_max_aggregation, huffman_aggregate, istar, q_operator, r_operator,
    DEFAULT_LIMIT_N,
};
use entropy_aggregation::ProbDist;

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    let p = ProbDist::new(vec![0.4, 0.3, 0.2, 0.1])?;
    let m = 2;
    writeln!(out, "p = {:?}, H(p) = {:.6} bits, m = {m}", p.probs(), p.entropy())?;

    let q = q_operator(&p, m)?;
    writeln!(out, "minimum:  Q_m blocks {:?} -> {:?}, H = {:.6}", q.blocks(), q.dist().probs(), q.entropy())?;

    let (huff, trace) = huffman_aggregate(&p, m)?;
    writeln!(out, "huffman:  blocks {:?} -> {:?}, H = {:.6}", huff.blocks(), huff.dist().probs(), huff.entropy())?;
    for step in &trace.merge_steps {
        writeln!(out, "          merged atoms {} and {} into mass {:.3}", step.first, step.second, step.merged)?;
    }

    let best = exact_max_aggregation(&p, m, DEFAULT_LIMIT_N)?;
    writeln!(out, "exact:    blocks {:?} -> {:?}, H = {:.6}", best.blocks(), best.dist().probs(), best.entropy())?;

    let r = r_operator(&p, m)?;
    writeln!(out, "upper:    R_m = {:?} (i* = {}), H = {:.6}", r.probs(), istar(&p, m)?, r.entropy())?;

    let gap = r.entropy() - huff.entropy();
    writeln!(out, "H(R_m) - H(huffman) = {gap:.6} <= alpha = {:.6}", alpha_constant())?;
    assert!(gap <= alpha_constant());
    assert!(best.entropy() <= r.entropy() + 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&mut std::io::stdout())
}

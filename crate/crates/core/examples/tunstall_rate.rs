// Build Tunstall variable-to-fixed codes and compare the achieved
// compression rate with the two upper bounds.

use std::io::Write;

use entropy_aggregation::tunstall::{build_tunstall_tree, rate_report, SourceModel, RATE_CSV_HEADER};
use entropy_aggregation::ProbDist;

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    let src = SourceModel::new(ProbDist::new(vec![0.7, 0.3])?)?;
    let tree = build_tunstall_tree(&src, 4)?;
    writeln!(out, "4-leaf tree for P = (0.7, 0.3):")?;
    for leaf in &tree.leaves {
        writeln!(out, "  {:<4} p = {:.3}", leaf.label(src.alphabet_size()), leaf.prob)?;
    }
    let r = rate_report(&src, 4)?;
    writeln!(out, "E[L] = {:.4}, rate = {:.6}", r.e_l, r.rate)?;
    writeln!(out, "new bound = {:?}, classical bound = {:?}", r.new_bound, r.js_bound)?;

    writeln!(out, "{RATE_CSV_HEADER}")?;
    let ternary = SourceModel::new(ProbDist::new(vec![0.5, 0.3, 0.2])?)?;
    for n in [3, 9, 65, 257, 1025] {
        writeln!(out, "{}", rate_report(&ternary, n)?.csv_row(&ternary))?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&mut std::io::stdout())
}

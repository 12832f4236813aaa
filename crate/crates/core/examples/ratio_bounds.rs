// Entropy lower bounds for distributions with bounded max/min ratio.
//
// Shows the two bounds for a given `(n, rho)`, builds the extremal vector
// `z_rho` for a concrete distribution, and prints a few rows of the gap
// comparison table.

use std::io::Write;

use entropy_aggregation::bounds::{bound_comparison_table, bound_report, build_z_rho};
use entropy_aggregation::majorization::majorizes;
use entropy_aggregation::ProbDist;

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    let report = bound_report(1000, 2.0)?;
    writeln!(
        out,
        "n = 1000, rho = 2: new bound {:.6} bits (gap {:.6}), prior bound {:.6} (gap {:.6})",
        report.theorem2_bound, report.gap_theorem2, report.prior_bound, report.gap_prior
    )?;

    let p = ProbDist::new(vec![0.3, 0.25, 0.25, 0.2])?;
    let z = build_z_rho(&p, 1.5)?;
    writeln!(out, "z_1.5({:?}) = {:?}", p.probs(), z.dist.probs())?;
    writeln!(out, "  {} entries at rho * p_n, middle entry {:.4}", z.i, z.middle)?;
    writeln!(
        out,
        "  H(p) = {:.6} >= H(z) = {:.6}, p <= z: {}",
        p.entropy(),
        z.dist.entropy(),
        majorizes(&p, &z.dist).holds
    )?;

    writeln!(out, "{:>6} {:>10} {:>10} {:>10}", "rho", "gap", "prior", "log2 rho")?;
    for row in bound_comparison_table(&[1.5, 2.0, 4.0, 10.0, 100.0])? {
        writeln!(
            out,
            "{:>6} {:>10.6} {:>10.6} {:>10.6}",
            row.rho, row.gap_theorem2, row.gap_prior, row.log2_rho
        )?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&mut std::io::stdout())
}

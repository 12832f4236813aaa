// Reduce a 3-Partition instance to an entropy question and answer it with
// the exhaustive oracle. An instance is a YES instance exactly when some
// aggregation into `m` blocks reaches entropy `log2 m`.

use std::io::Write;

use entropy_aggregation::aggregation::{gen_3partition_instance, verify_with_oracle, DEFAULT_LIMIT_N};

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    let instances: [&[u64]; 2] = [
        // 26 + 24 + 25 = 27 + 23 + 25 = 75
        &[26, 24, 25, 27, 23, 25],
        // same B, but every triple sums to 60, 70, 80 or 90
        &[20, 20, 20, 30, 30, 30],
    ];
    for numbers in instances {
        let inst = gen_3partition_instance(numbers)?;
        let verdict = verify_with_oracle(&inst, DEFAULT_LIMIT_N)?;
        writeln!(out, "{numbers:?}: m = {}, B = {}", inst.m, inst.bound)?;
        writeln!(
            out,
            "  best entropy {:.12} vs log2 m = {:.12}, block sums {:?} -> {}",
            verdict.max_entropy,
            verdict.target_entropy,
            verdict.block_sums,
            if verdict.is_yes { "YES" } else { "NO" }
        )?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&mut std::io::stdout())
}

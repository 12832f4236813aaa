// Run the built-in randomized property suites with a fixed seed.

use std::io::Write;

use entropy_aggregation::selftest::run_all;

pub fn run_example(out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    let results = run_all(50, 2024);
    for s in &results {
        let status = if s.passed() { "ok" } else { "FAILED" };
        writeln!(out, "{:<22} {:>5} checks  {status}", s.name, s.checks)?;
    }
    if results.iter().any(|s| !s.passed()) {
        return Err("a property suite failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&mut std::io::stdout())
}

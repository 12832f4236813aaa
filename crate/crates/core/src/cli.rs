//! The `entagg` command-line front end.
//!
//! Every subcommand builds a JSON report; `--format` picks how it is
//! printed. Exit codes: 0 success, 1 validation error, 2 size or scope
//! guard, 3 I/O error. Diagnostics go to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::aggregation::{
    alpha_constant, exact_max_aggregation, gen_3partition_instance, huffman_aggregate, istar,
    q_operator, r_operator, verify_with_oracle, DEFAULT_LIMIT_N,
};
use crate::bounds::{
    bound_comparison_table, bound_report, build_z_rho, comparison_csv, linear_grid,
};
use crate::coupling::{approximate_closest_dist, build_mq_coupling};
use crate::dist::{entropy, make_dist, parse_values, ProbDist};
use crate::error::Error;
use crate::majorization::majorizes;
use crate::report::{sig6, to_json17};
use crate::selftest;
use crate::tunstall::{rate_report, reachable_leaf_counts, SourceModel, RATE_CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "entagg", version, about = "Entropy-extremal aggregation of probability distributions")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Rescale input distributions to unit mass instead of rejecting them.
    #[arg(long, global = true)]
    pub normalize: bool,

    /// Output format (json unless the subcommand says otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// R_m, Q_m and the Huffman aggregation with their certificates.
    Aggregate {
        #[arg(short)]
        m: usize,
        file: PathBuf,
    },
    /// Ratio entropy lower bounds for n atoms.
    Bounds {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        rho: f64,
    },
    /// The extremal vector z_rho(p) and its majorization verdict.
    Zrho {
        #[arg(long)]
        rho: f64,
        file: PathBuf,
    },
    /// Exhaustive maximum-entropy aggregation.
    Oracle {
        #[arg(short)]
        m: usize,
        file: PathBuf,
        /// Override the size guard on n.
        #[arg(long)]
        limit_n: Option<usize>,
    },
    /// Approximate closest m-atom distribution, its distance and coupling.
    Distance {
        #[arg(short)]
        m: usize,
        file: PathBuf,
    },
    /// Tunstall rate report for a memoryless source.
    Tunstall {
        /// Comma-separated symbol probabilities.
        #[arg(long, value_delimiter = ',', required = true)]
        probs: Vec<f64>,
        /// Number of leaves (the largest one with --sweep).
        #[arg(short)]
        n: usize,
        /// One row per reachable leaf count in [2, n].
        #[arg(long)]
        sweep: bool,
    },
    /// Gap comparison table over a grid of rho (CSV by default).
    CompareBounds {
        #[arg(long, default_value_t = 1.0)]
        rho_min: f64,
        #[arg(long, default_value_t = 100.0)]
        rho_max: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Distribution induced by a 3-Partition instance, with an oracle verdict.
    Gen3p {
        file: PathBuf,
        #[arg(long)]
        limit_n: Option<usize>,
    },
    /// Seeded randomized property suites.
    Selftest {
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Size { .. } | Error::Scope(_)) => 2,
            Failure::Lib(_) => 1,
            Failure::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

/// What a subcommand produced.
enum Output {
    Report(Value),
    /// Preformatted CSV for table-shaped commands, with its JSON form.
    Table { csv: String, json: Value },
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            code
        }
    }
}

pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = dispatch(config, err).and_then(|(output, ok)| {
        let format = config.format.unwrap_or(match config.command {
            Command::CompareBounds { .. } => OutputFormat::Csv,
            _ => OutputFormat::Json,
        });
        let text = render(&output, format);
        out.write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))?;
        Ok(ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

fn read_dist(path: &Path, normalize: bool) -> Result<ProbDist, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(make_dist(&parse_values(&text)?, normalize)?)
}

fn read_integers(path: &Path) -> Result<Vec<u64>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed)
            .map_err(|e| Error::Instance(format!("bad JSON array: {e}")).into());
    }
    trimmed
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Instance(format!("not a positive integer: {t:?}")).into())
        })
        .collect()
}

fn limit_with_warning(limit: Option<usize>, err: &mut dyn Write) -> usize {
    match limit {
        Some(l) if l > DEFAULT_LIMIT_N => {
            let _ = writeln!(
                err,
                "warning: exhaustive search above n = {DEFAULT_LIMIT_N} may take very long"
            );
            l
        }
        Some(l) => l,
        None => DEFAULT_LIMIT_N,
    }
}

/// Returns the output and whether the command's own checks passed.
fn dispatch(config: &CliConfig, err: &mut dyn Write) -> Result<(Output, bool), Failure> {
    let normalize = config.normalize;
    let report = match &config.command {
        Command::Aggregate { m, file } => {
            let p = read_dist(file, normalize)?;
            let m = *m;
            let r = r_operator(&p, m)?;
            let q = q_operator(&p, m)?;
            let (huff, trace) = huffman_aggregate(&p, m)?;
            let (hr, hh) = (entropy(&r), huff.entropy());
            let alpha = alpha_constant();
            json!({
                "n": p.len(),
                "m": m,
                "input": p.probs(),
                "input_entropy": entropy(&p),
                "istar": istar(&p, m)?,
                "r_dist": r.probs(),
                "r_entropy": hr,
                "q_dist": q.dist().probs(),
                "q_blocks": q.blocks(),
                "q_entropy": q.entropy(),
                "huffman_dist": huff.dist().probs(),
                "huffman_blocks": huff.blocks(),
                "huffman_entropy": hh,
                "i_q": trace.i_q,
                "tail_mass": trace.tail_mass,
                "alpha": alpha,
                "additive_gap": hr - hh,
                "additive_ok": hr - hh <= alpha,
                "multiplicative_ratio": if hr > 0.0 { hh / hr } else { 1.0 },
                "multiplicative_ok": hh >= 10.0 / 11.0 * hr,
            })
        }
        Command::Bounds { n, rho } => serde_json::to_value(bound_report(*n, *rho)?)
            .expect("report serializes"),
        Command::Zrho { rho, file } => {
            let p = read_dist(file, normalize)?;
            let z = build_z_rho(&p, *rho)?;
            let verdict = majorizes(&p, &z.dist);
            json!({
                "rho": rho,
                "input": p.probs(),
                "i": z.i,
                "middle": z.middle,
                "z_dist": z.dist.probs(),
                "input_entropy": entropy(&p),
                "z_entropy": entropy(&z.dist),
                "majorized": verdict.holds,
                "first_violation_index": verdict.first_violation_index,
                "prefix_gaps": verdict.prefix_gaps,
            })
        }
        Command::Oracle { m, file, limit_n } => {
            let limit = limit_with_warning(*limit_n, err);
            let p = read_dist(file, normalize)?;
            let best = exact_max_aggregation(&p, *m, limit)?;
            serde_json::to_value(&best).expect("aggregation serializes")
        }
        Command::Distance { m, file } => {
            let p = read_dist(file, normalize)?;
            let closest = approximate_closest_dist(&p, *m)?;
            let coupling = build_mq_coupling(&p, &closest.aggregation)?;
            json!({
                "aggregation": closest.aggregation,
                "d_value": closest.d_value,
                "certificate": closest.certificate,
                "alpha": alpha_constant(),
                "coupling": coupling,
                "coupling_entropy": coupling.joint_entropy(),
            })
        }
        Command::Tunstall { probs, n, sweep } => {
            let src = SourceModel::new(make_dist(probs, normalize)?)?;
            let counts = if *sweep {
                reachable_leaf_counts(src.alphabet_size(), 2, *n)
            } else {
                vec![*n]
            };
            let mut csv = format!("{RATE_CSV_HEADER}\n");
            let mut reports = Vec::new();
            for c in counts {
                let r = rate_report(&src, c)?;
                for e in &r.bound_errors {
                    let _ = writeln!(err, "note: n = {c}: {e}");
                }
                csv.push_str(&r.csv_row(&src));
                csv.push('\n');
                reports.push(serde_json::to_value(&r).expect("report serializes"));
            }
            let json = if *sweep {
                Value::Array(reports)
            } else {
                reports.pop().expect("one report")
            };
            return Ok((Output::Table { csv, json }, true));
        }
        Command::CompareBounds {
            rho_min,
            rho_max,
            steps,
        } => {
            if !(rho_min <= rho_max) {
                return Err(Error::Param(format!("rho-min {rho_min} exceeds rho-max {rho_max}")).into());
            }
            let rows = bound_comparison_table(&linear_grid(*rho_min, *rho_max, *steps))?;
            let json = serde_json::to_value(&rows).expect("rows serialize");
            return Ok((
                Output::Table {
                    csv: comparison_csv(&rows),
                    json,
                },
                true,
            ));
        }
        Command::Gen3p { file, limit_n } => {
            let limit = limit_with_warning(*limit_n, err);
            let inst = gen_3partition_instance(&read_integers(file)?)?;
            let mut report = serde_json::to_value(&inst).expect("instance serializes");
            if inst.dist.len() <= limit {
                let v = verify_with_oracle(&inst, limit)?;
                report["oracle"] = json!({
                    "max_entropy": v.max_entropy,
                    "reaches_target": v.is_yes,
                    "block_sums": v.block_sums,
                    "blocks": v.aggregation.blocks(),
                });
            } else {
                let _ = writeln!(
                    err,
                    "note: n = {} exceeds the oracle limit {limit}; no verdict",
                    inst.dist.len()
                );
            }
            report
        }
        Command::Selftest { cases, seed } => {
            let results = selftest::run_all(*cases, *seed);
            let ok = results.iter().all(|s| s.passed());
            let mut csv = String::from("suite,cases,checks,failures,status\n");
            for s in &results {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    s.name,
                    s.cases,
                    s.checks,
                    s.failures,
                    if s.passed() { "pass" } else { "FAIL" }
                ));
            }
            let json = json!({"seed": seed, "cases": cases, "suites": results, "passed": ok});
            return Ok((Output::Table { csv, json }, ok));
        }
    };
    Ok((Output::Report(report), true))
}

fn render(output: &Output, format: OutputFormat) -> String {
    match (output, format) {
        (Output::Table { csv, .. }, OutputFormat::Csv) => csv.clone(),
        (Output::Table { json, .. }, OutputFormat::Json) | (Output::Report(json), OutputFormat::Json) => {
            format!("{}\n", to_json17(json))
        }
        (Output::Table { json, .. }, OutputFormat::Text) | (Output::Report(json), OutputFormat::Text) => {
            let mut out = String::new();
            text_lines("", json, &mut out);
            out
        }
        (Output::Report(json), OutputFormat::Csv) => {
            let map = match json {
                Value::Object(map) => map.clone(),
                other => {
                    let mut m = Map::new();
                    m.insert("value".into(), other.clone());
                    m
                }
            };
            let header: Vec<&str> = map.keys().map(String::as_str).collect();
            let row: Vec<String> = map.values().map(csv_cell).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        Value::Object(_) => to_json17(v).replace(',', ";"),
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => to_json17(other),
    }
}

fn text_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig6(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(text_scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(_) => {
            let mut s = String::new();
            text_lines("", v, &mut s);
            s.trim_end().replace('\n', "; ")
        }
        other => other.to_string(),
    }
}

fn text_lines(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                if v.is_object() {
                    text_lines(&key, v, out);
                } else {
                    out.push_str(&format!("{key}: {}\n", text_scalar(v)));
                }
            }
        }
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            for (i, item) in items.iter().enumerate() {
                text_lines(&format!("{prefix}[{i}]"), item, out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", text_scalar(other))),
    }
}

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tstruct_core::derivedcat::{AutoEq, IndecObject};
use tstruct_core::recol::{find_compatible_idempotent, FactorJson, FactorTStructure, Generator, Recollement};
use tstruct_core::repcat::Algebra;
use tstruct_core::tstr::{
    enumerate_smc, enumerate_tstructures, orbit_equivalent, semisimple_tstructures, Aisle, AisleJson, ExtInt,
    TStructure,
};
use tstruct_core::verify::{self, Report, Status, VerifyConfig};

#[derive(Parser)]
#[command(name = "tstruct", version, about = "t-structures and recollements of D^b(A_n)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Smc,
    Tstructures,
    Semisimple,
}

#[derive(Args)]
struct WindowArg {
    /// `w` for -w..0, or `a..b`.
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    window: String,
}

#[derive(Args)]
struct RecArg {
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Idempotent generator P_r.
    #[arg(long, conflicts_with = "x")]
    r: Option<usize>,
    /// Exceptional generator as JSON `{"l":..,"k":..,"d":..}` or @file.
    #[arg(long)]
    x: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List SMCs, bounded t-structures or semisimple index vectors.
    Enumerate {
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of blocks for `semisimple`.
        #[arg(long, default_value_t = 1)]
        blocks: usize,
        #[command(flatten)]
        window: WindowArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Match every aisle of D^b(A_2) in the window against the eight templates.
    ClassifyA2 {
        #[command(flatten)]
        window: WindowArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        window: WindowArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Glue a corner index and a quotient aisle.
    Induce {
        #[command(flatten)]
        rec: RecArg,
        #[arg(long, allow_hyphen_values = true)]
        corner: String,
        #[arg(long)]
        quotient: String,
    },
    /// Restrict a compatible aisle to the two factors.
    Restrict {
        #[command(flatten)]
        rec: RecArg,
        #[arg(long)]
        aisle: String,
    },
    /// Test compatibility of an aisle with a recollement.
    Compatible {
        #[command(flatten)]
        rec: RecArg,
        #[arg(long)]
        aisle: String,
    },
    /// Find r with the bounded aisle compatible with R_r.
    FindIdempotent {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        aisle: String,
    },
    /// Search for τ^a[b] carrying one aisle to another.
    Orbit {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
    },
}

/// Bad input; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl std::fmt::Display) -> anyhow::Error {
    Usage(msg.to_string()).into()
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let parsed = match s.split_once("..") {
        Some((a, b)) => a.trim().parse().and_then(|a| b.trim().parse().map(|b| (a, b))),
        None => s.trim().parse::<i64>().map(|w| (-w, 0)),
    };
    match parsed {
        Ok((lo, hi)) if lo <= hi => Ok((lo, hi)),
        _ => Err(usage(format!("bad window {s:?}: expected `w` (meaning -w..0) or `a..b` with a <= b"))),
    }
}

/// Inline JSON, or `@path`.
fn read_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{what}: cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("{what}: {e}")))
}

fn read_tstructure(alg: &Algebra, arg: &str, what: &str) -> Result<TStructure> {
    let j: AisleJson = read_json(arg, what)?;
    let aisle = Aisle::from_json(alg, &j).map_err(|e| usage(format!("{what}: {e}")))?;
    TStructure::new(aisle).map_err(|e| usage(format!("{what}: {e}")))
}

fn recollement(rec: &RecArg) -> Result<Recollement> {
    let g = match (rec.r, &rec.x) {
        (Some(r), None) => Generator::Idempotent { r },
        (None, Some(x)) => Generator::Exceptional { x: read_json::<IndecObject>(x, "--x")? },
        _ => bail!(usage("give exactly one of --r and --x")),
    };
    Recollement::from_generator(rec.n, g).map_err(usage)
}

fn emit(v: &Value) -> Result<bool> {
    println!("{}", serde_json::to_string(v)?);
    Ok(true)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn table(format: Format, header: &[&str], rows: &[Vec<String>], lines: &[Value]) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for l in lines {
                let _ = writeln!(out, "{l}");
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "{}", header.join(","));
            for r in rows {
                let _ = writeln!(out, "{}", r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            }
        }
        Format::Md => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for r in rows {
                let _ = writeln!(out, "| {} |", r.join(" | "));
            }
        }
    }
    out
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn enumerate(kind: Kind, n: usize, blocks: usize, (lo, hi): (i64, i64), format: Format, cap: usize) -> Result<bool> {
    let size = if kind == Kind::Semisimple { blocks } else { n };
    if size == 0 || size > cap {
        bail!(usage(format!("size {size} outside 1..={cap} (raise --cap to allow more)")));
    }
    let text = match kind {
        Kind::Smc => {
            let smcs = enumerate_smc(&Algebra::linear(n), lo, hi);
            let rows: Vec<Vec<String>> = smcs.iter().enumerate().map(|(i, s)| vec![i.to_string(), join(s.objects())]).collect();
            let lines: Vec<Value> = smcs.iter().map(|s| json!({ "smc": s })).collect();
            table(format, &["index", "objects"], &rows, &lines)
        }
        Kind::Tstructures => {
            let alg = Algebra::linear(n);
            let ts = enumerate_tstructures(&alg, lo, hi);
            let mut header = vec!["index".to_string()];
            header.extend(alg.modules().iter().map(|m| format!("c{m}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = ts
                .iter()
                .enumerate()
                .map(|(i, t)| std::iter::once(i.to_string()).chain(t.thresholds().iter().map(|c| c.to_string())).collect())
                .collect();
            let lines: Vec<Value> = ts.iter().map(|t| json!({"thresholds": t.thresholds(), "aisle": t.aisle().to_json()})).collect();
            table(format, &header, &rows, &lines)
        }
        Kind::Semisimple => {
            let vs = semisimple_tstructures(blocks, lo, hi);
            let rows: Vec<Vec<String>> = vs
                .iter()
                .enumerate()
                .map(|(i, v)| vec![i.to_string(), join(v), v.iter().all(|c| c.is_finite()).to_string()])
                .collect();
            let lines: Vec<Value> = vs.iter().map(|v| json!({"index": v, "bounded": v.iter().all(|c| c.is_finite())})).collect();
            table(format, &["index", "vector", "bounded"], &rows, &lines)
        }
    };
    print!("{text}");
    Ok(true)
}

fn print_reports(reports: &[Report], format: Format) -> Result<bool> {
    for r in reports {
        eprintln!("{}: {:.3}s", r.suite, r.elapsed.as_secs_f64());
    }
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(reports)?),
        Format::Csv | Format::Md => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(|c| {
                        let status = match c.status {
                            Status::Pass => "pass",
                            Status::Fail => "fail",
                            Status::Skipped => "skipped",
                        };
                        vec![
                            r.suite.clone(),
                            c.claim.clone(),
                            c.statement.clone(),
                            status.to_string(),
                            c.checked.to_string(),
                            c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                        ]
                    })
                })
                .collect();
            let mut s = table(format, &["suite", "claim", "statement", "status", "checked", "witness"], &rows, &[]);
            let counts: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| r.counts.iter().map(|(k, v)| vec![r.suite.clone(), k.clone(), v.to_string()]))
                .collect();
            if format == Format::Md {
                s.push('\n');
            }
            s.push_str(&table(format, &["suite", "count", "value"], &counts, &[]));
            if let Some(r) = reports.first() {
                let _ = writeln!(s, "{}seed {}", if format == Format::Md { "\n" } else { "# " }, r.seed);
            }
            s
        }
    };
    print!("{text}");
    Ok(reports.iter().all(Report::passed))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Enumerate { kind, n, blocks, window, format, cap } => {
            enumerate(kind, n, blocks, parse_window(&window.window)?, format, cap)
        }
        Cmd::ClassifyA2 { window, format } => {
            let (lo, hi) = parse_window(&window.window)?;
            if hi - lo < 3 {
                bail!(usage("the A_2 classification needs a window of width at least 3"));
            }
            let reports = verify::run("a2-classification", &VerifyConfig { n: 2, lo, hi, seed: 0 }).map_err(usage)?;
            print_reports(&reports, format)
        }
        Cmd::Verify { suite, n, window, seed, format } => {
            let (lo, hi) = parse_window(&window.window)?;
            let start = Instant::now();
            let reports = verify::run(&suite, &VerifyConfig { n, lo, hi, seed }).map_err(usage)?;
            eprintln!("total: {:.3}s", start.elapsed().as_secs_f64());
            print_reports(&reports, format)
        }
        Cmd::Induce { rec, corner, quotient } => {
            let rec = recollement(&rec)?;
            let corner: ExtInt = corner.parse().map_err(|e| usage(format!("--corner: {e}")))?;
            let quotient: AisleJson = read_json(&quotient, "--quotient")?;
            let f = FactorTStructure::from_json(&rec, &FactorJson { corner, quotient }).map_err(|e| usage(format!("--quotient: {e}")))?;
            TStructure::new(f.quotient.clone()).map_err(|e| usage(format!("--quotient: {e}")))?;
            let t = rec.induce(&f)?;
            emit(&serde_json::to_value(t.aisle().to_json())?)
        }
        Cmd::Restrict { rec, aisle } => {
            let rec = recollement(&rec)?;
            let t = read_tstructure(rec.algebra(), &aisle, "--aisle")?;
            let f = rec.restrict(&t)?;
            emit(&serde_json::to_value(f.to_json())?)
        }
        Cmd::Compatible { rec, aisle } => {
            let rec = recollement(&rec)?;
            let t = read_tstructure(rec.algebra(), &aisle, "--aisle")?;
            emit(&json!({ "compatible": rec.is_compatible(&t) }))
        }
        Cmd::FindIdempotent { n, aisle } => {
            let t = read_tstructure(&Algebra::linear(n), &aisle, "--aisle")?;
            if !t.is_bounded() {
                bail!(usage("--aisle: the search needs a bounded t-structure"));
            }
            let (r, tag) = find_compatible_idempotent(&t)?;
            emit(&json!({ "r": r, "case": tag.label() }))
        }
        Cmd::Orbit { n, t1, t2 } => {
            let alg = Algebra::linear(n);
            let a = read_tstructure(&alg, &t1, "--t1")?;
            let b = read_tstructure(&alg, &t2, "--t2")?;
            let found: Option<AutoEq> = orbit_equivalent(&a, &b);
            emit(&serde_json::to_value(found)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("3").unwrap(), (-3, 0));
        assert_eq!(parse_window("-3..0").unwrap(), (-3, 0));
        assert_eq!(parse_window("0..1").unwrap(), (0, 1));
        assert!(parse_window("1..0").is_err());
        assert!(parse_window("x").is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn usage_errors_are_tagged() {
        assert!(usage("y").is::<Usage>());
        assert!(!anyhow::anyhow!("x").is::<Usage>());
    }
}

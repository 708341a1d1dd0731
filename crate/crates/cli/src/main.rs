//! Command-line front end.
//!
//! ```text
//! relgw invariant "Y;N=4;l=5;d=1;ins=1.0"
//! relgw relative --ambient-dim 2 --hyp-degree 1 --degree 2 --mult 2 --ins 0.0,2.0,2.0,2.0,2.0
//! relgw cy --ambient-dim 4 --hyp-degree 5 --max-degree 3
//! relgw verify --level full --json
//! relgw cache merge a.tsv b.tsv merged.tsv
//! ```
//!
//! Exit codes: 0 on success, 1 on compute/cache failures, 2 on usage or
//! key-parse errors. All values are exact rationals; identical invocations
//! produce byte-identical output for a given cache state.

use clap::{Parser, Subcommand};
use relgw::engine::instanton_table;
use relgw::error::EngineError;
use relgw::verify::{self, Level};
use relgw::{CacheStore, Engine, InvariantKey, Kind, Rat};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "relgw", version, about = "Exact genus-0 Gromov-Witten invariants of projective hypersurfaces")]
struct Cli {
    /// Persistent cache file; loaded if present, written back after a
    /// successful run.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress informational notes.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one invariant given as a key string.
    Invariant {
        /// Key in the text grammar, e.g. "Y;N=4;l=5;d=1;ins=1.0".
        key: String,
    },
    /// Evaluate a relative invariant assembled from parts.
    Relative {
        /// Ambient projective dimension N.
        #[arg(long)]
        ambient_dim: u32,
        /// Hypersurface degree l.
        #[arg(long)]
        hyp_degree: u32,
        /// Curve degree d.
        #[arg(long)]
        degree: u32,
        /// Tangency multiplicity at the first marked point.
        #[arg(long)]
        mult: u32,
        /// Comma-separated insertions "exp.psi", slot 1 first.
        #[arg(long, default_value = "")]
        ins: String,
    },
    /// Instanton table of a Calabi-Yau hypersurface (l = N + 1).
    Cy {
        #[arg(long)]
        ambient_dim: u32,
        #[arg(long)]
        hyp_degree: u32,
        /// Largest curve degree to tabulate.
        #[arg(long)]
        max_degree: u32,
    },
    /// Run the self-verification suite.
    Verify {
        /// "fast" or "full" (full adds the quintic degree-2/3 checks).
        #[arg(long, default_value = "fast")]
        level: String,
    },
    /// Cache maintenance.
    Cache {
        #[command(subcommand)]
        op: CacheOp,
    },
}

#[derive(Subcommand)]
enum CacheOp {
    /// Merge cache files into one; unequal values for a key abort.
    Merge {
        /// Input files followed by the output file.
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
}

const EXIT_COMPUTE: i32 = 1;
const EXIT_USAGE: i32 = 2;

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match &cli.command {
        Command::Invariant { key } => cmd_invariant(&cli, key),
        Command::Relative {
            ambient_dim,
            hyp_degree,
            degree,
            mult,
            ins,
        } => {
            let key = format!(
                "R;N={ambient_dim};l={hyp_degree};d={degree};m={mult};ins={ins}"
            );
            cmd_invariant(&cli, &key)
        }
        Command::Cy {
            ambient_dim,
            hyp_degree,
            max_degree,
        } => cmd_cy(&cli, *ambient_dim, *hyp_degree, *max_degree),
        Command::Verify { level } => cmd_verify(&cli, level),
        Command::Cache { op } => match op {
            CacheOp::Merge { files } => cmd_cache_merge(files),
        },
    }
}

fn load_engine(cache: &Option<PathBuf>) -> Result<Engine, String> {
    match cache {
        Some(path) if path.exists() => {
            let store = CacheStore::load(path).map_err(|e| e.to_string())?;
            Ok(Engine::with_cache(store))
        }
        _ => Ok(Engine::new()),
    }
}

fn save_engine(eng: &Engine, cache: &Option<PathBuf>) -> Result<(), String> {
    if let Some(path) = cache {
        eng.cache().save(path).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn rat_json(v: &Rat) -> serde_json::Value {
    serde_json::json!({
        "num": v.numer().to_string(),
        "den": v.denom().to_string(),
    })
}

fn geometry_json(key: &InvariantKey) -> serde_json::Value {
    let l = match key.kind {
        Kind::Ambient => None,
        _ => Some(key.geom.hyp_degree),
    };
    serde_json::json!({
        "N": key.geom.ambient_dim,
        "l": l,
        "restrictedOnly": key.kind != Kind::Ambient && key.geom.restricted_only(),
    })
}

const RESTRICTED_CAVEAT: &str =
    "restricted invariants only: insertions are pulled back from the ambient space";

fn cmd_invariant(cli: &Cli, key_str: &str) -> i32 {
    let key = match InvariantKey::parse(key_str) {
        Ok(k) => k.canonicalize(),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut eng = match load_engine(&cli.cache) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_COMPUTE;
        }
    };
    let value = match eng.evaluate(&key) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_COMPUTE;
        }
    };
    if let Err(e) = save_engine(&eng, &cli.cache) {
        eprintln!("error: {e}");
        return EXIT_COMPUTE;
    }
    let restricted = key.kind != Kind::Ambient && key.geom.restricted_only();
    if cli.json {
        let mut obj = serde_json::json!({
            "key": key.serialize(),
            "value": rat_json(&value),
            "vdim": key.vdim(),
            "geometry": geometry_json(&key),
            "cacheHits": eng.cache_hits(),
        });
        if restricted {
            obj["caveat"] = serde_json::Value::String(RESTRICTED_CAVEAT.into());
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        println!("{} = {}", key.serialize(), value);
        if restricted && !cli.quiet {
            println!("# note: {RESTRICTED_CAVEAT}");
        }
    }
    0
}

fn cmd_cy(cli: &Cli, ambient_dim: u32, hyp_degree: u32, max_degree: u32) -> i32 {
    if hyp_degree != ambient_dim + 1 {
        eprintln!(
            "error: not a Calabi-Yau hypersurface (need l = N + 1, got N={ambient_dim} l={hyp_degree}); \
             use `relgw invariant` for individual values"
        );
        return EXIT_USAGE;
    }
    if max_degree < 1 {
        eprintln!("error: --max-degree must be at least 1");
        return EXIT_USAGE;
    }
    let mut eng = match load_engine(&cli.cache) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_COMPUTE;
        }
    };
    let rows = match instanton_table(&mut eng, ambient_dim, hyp_degree, max_degree) {
        Ok(rows) => rows,
        Err(EngineError::Precondition(e)) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_COMPUTE;
        }
    };
    if let Err(e) = save_engine(&eng, &cli.cache) {
        eprintln!("error: {e}");
        return EXIT_COMPUTE;
    }
    let geom = relgw::Geometry::new(ambient_dim, hyp_degree);
    if cli.json {
        let rows_json: Vec<serde_json::Value> = rows
            .iter()
            .map(|(d, i_d, n_d)| {
                serde_json::json!({
                    "d": d,
                    "I": rat_json(i_d),
                    "n": rat_json(n_d),
                })
            })
            .collect();
        let mut obj = serde_json::json!({
            "geometry": {
                "N": ambient_dim,
                "l": hyp_degree,
                "restrictedOnly": geom.restricted_only(),
            },
            "rows": rows_json,
            "cacheHits": eng.cache_hits(),
        });
        if geom.restricted_only() {
            obj["caveat"] = serde_json::Value::String(RESTRICTED_CAVEAT.into());
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        let width = rows
            .iter()
            .map(|(_, i_d, _)| i_d.to_string().len())
            .max()
            .unwrap_or(3)
            .max(3);
        println!("{:>3}  {:>width$}  n_d", "d", "I_d");
        for (d, i_d, n_d) in &rows {
            println!("{:>3}  {:>width$}  {}", d, i_d.to_string(), n_d);
        }
        if geom.restricted_only() && !cli.quiet {
            println!("# note: {RESTRICTED_CAVEAT}");
        }
    }
    0
}

fn cmd_verify(cli: &Cli, level: &str) -> i32 {
    let level = match Level::parse(level) {
        Some(l) => l,
        None => {
            eprintln!("error: --level must be `fast` or `full`");
            return EXIT_USAGE;
        }
    };
    let report = verify::run(level);
    if cli.json {
        let checks: Vec<serde_json::Value> = report
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "passed": c.passed,
                    "millis": c.millis,
                    "detail": c.detail,
                })
            })
            .collect();
        let obj = serde_json::json!({
            "level": if report.level == Level::Fast { "fast" } else { "full" },
            "passed": report.passed(),
            "checks": checks,
        });
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        for c in &report.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            println!("{:<26} {} ({} ms) {}", c.name, status, c.millis, c.detail);
        }
        let status = if report.passed() { "pass" } else { "FAIL" };
        println!("overall: {status}");
    }
    if report.passed() {
        0
    } else {
        EXIT_COMPUTE
    }
}

fn cmd_cache_merge(files: &[PathBuf]) -> i32 {
    let (out, inputs) = match files.split_last() {
        Some((out, inputs)) if !inputs.is_empty() => (out, inputs),
        _ => {
            eprintln!("error: need at least one input file and one output file");
            return EXIT_USAGE;
        }
    };
    let mut merged = CacheStore::new();
    for path in inputs {
        let store = match CacheStore::load(Path::new(path)) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_COMPUTE;
            }
        };
        merged = match CacheStore::merge(merged, store) {
            Ok(m) => m,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_COMPUTE;
            }
        };
    }
    if let Err(e) = merged.save(out) {
        eprintln!("error: {e}");
        return EXIT_COMPUTE;
    }
    println!(
        "merged {} file(s), {} entries -> {}",
        inputs.len(),
        merged.len(),
        out.display()
    );
    0
}

//! `covgamma`: exact coverings of the octahedron by smaller copies.
//!
//! Exit codes: 0 success (covered / certified / found), 1 bad input or I/O,
//! 2 negative verdict (not covered / inconclusive bound / search failed),
//! 3 certifier budget exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use covgamma::assign::{certify_lower_bound, DEFAULT_NODE_BUDGET};
use covgamma::configs::find_entry;
use covgamma::cover::{verify_covering_with_budget, CoverageStatus, CoveringConfig, DEFAULT_CELL_BUDGET};
use covgamma::search::{binary_search_lambda, local_search_upper};
use covgamma::table::{gamma_table, write_csv, TableOptions};
use covgamma::witness::{Generator, WitnessSet};
use covgamma::Rational;

const SCHEMA: &str = "covgamma/1";

#[derive(Parser)]
#[command(name = "covgamma", version, about = "Exact covering certificates for the octahedron")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Default budget: certifier cells for verify/search, search nodes for lower.
    #[arg(long, global = true, env = "COVGAMMA_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify or refute that a configuration covers the body.
    Verify {
        /// Configuration JSON: {"lambda": "p/q", "translations": [["p/q", ...], ...]}.
        config: Option<PathBuf>,
        /// Use a catalog entry instead of a file.
        #[arg(long, conflicts_with = "config")]
        catalog: Option<String>,
        /// Override the ratio.
        #[arg(long)]
        lambda: Option<Rational>,
    },
    /// Certify a lower bound on the covering functional from witness points.
    Lower {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lambda: Rational,
        /// Comma list of vertices, centers, nodes, midpoints.
        #[arg(long, default_value = "vertices")]
        witness: String,
        /// Ratio for node points and midpoints (default: --lambda).
        #[arg(long)]
        node_lambda: Option<Rational>,
    },
    /// Write gamma_table.json and gamma_table.csv.
    Table {
        #[arg(long, default_value_t = 4)]
        m_min: usize,
        #[arg(long, default_value_t = 17)]
        m_max: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Certifier cell budget.
        #[arg(long)]
        cell_budget: Option<u64>,
    },
    /// List the node points of every facet.
    Nodes {
        #[arg(long)]
        lambda: Rational,
        #[arg(long)]
        midpoints: bool,
    },
    /// Search for a covering: local search by default, or bisection of a
    /// catalog entry's ratio with `--catalog`.
    Search {
        #[arg(long, required_unless_present = "catalog")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "catalog")]
        lambda: Option<Rational>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, default_value = "1/2")]
        lo: Rational,
        #[arg(long, default_value = "1")]
        hi: Rational,
        #[arg(long, default_value_t = 12)]
        steps: usize,
    },
}

#[derive(Serialize)]
struct Manifest {
    command: String,
    inputs: Value,
    budgets: Value,
    seed: Option<u64>,
    version: &'static str,
    timestamp: String,
}

fn manifest(command: &str, inputs: Value, budgets: Value, seed: Option<u64>) -> Manifest {
    Manifest {
        command: command.into(),
        inputs,
        budgets,
        seed,
        version: env!("CARGO_PKG_VERSION"),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    }
}

fn emit(manifest: Manifest, result: impl Serialize) -> Result<Value> {
    let doc = json!({ "schema": SCHEMA, "manifest": manifest, "result": result });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(doc)
}

fn load_config(path: &Path) -> Result<CoveringConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cfg: CoveringConfig = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Verify { config, catalog, lambda } => {
            let budget = cli.budget.unwrap_or(DEFAULT_CELL_BUDGET);
            let (mut cfg, source) = match (config, catalog) {
                (Some(p), None) => (load_config(&p)?, json!({ "file": p })),
                (None, Some(id)) => {
                    let e = find_entry(&id).with_context(|| format!("no catalog entry {id:?}"))?;
                    (e.config(), json!({ "catalog": id }))
                }
                _ => bail!("give a config file or --catalog"),
            };
            if let Some(l) = &lambda {
                cfg = cfg.with_lambda(l.clone());
                cfg.validate()?;
            }
            let r = verify_covering_with_budget(&cfg, budget)?;
            let inputs = json!({ "source": source, "lambda": cfg.lambda, "translations": cfg.translations });
            emit(manifest("verify", inputs, json!({ "cells": budget }), None), &r)?;
            Ok(match r.status {
                CoverageStatus::Covered => 0,
                CoverageStatus::NotCovered => 2,
                CoverageStatus::Inconclusive => 3,
            })
        }
        Command::Lower { m, lambda, witness, node_lambda } => {
            let budget = cli.budget.unwrap_or(DEFAULT_NODE_BUDGET);
            let gens = Generator::parse_list(&witness, node_lambda.as_ref().unwrap_or(&lambda))?;
            let w = WitnessSet::build(&gens)?;
            let v = certify_lower_bound(m, &lambda, &w, budget)?;
            let inputs = json!({ "m": m, "lambda": lambda, "witness": gens });
            emit(manifest("lower", inputs, json!({ "nodes": budget }), None), &v)?;
            Ok(if v.is_certified() { 0 } else { 2 })
        }
        Command::Table { m_min, m_max, out, cell_budget } => {
            let opts = TableOptions {
                node_budget: cli.budget.unwrap_or(DEFAULT_NODE_BUDGET),
                cell_budget: cell_budget.unwrap_or(DEFAULT_CELL_BUDGET),
            };
            let rows = gamma_table(m_min, m_max, &opts)?;
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let man = manifest(
                "table",
                json!({ "m_min": m_min, "m_max": m_max }),
                json!({ "nodes": opts.node_budget, "cells": opts.cell_budget }),
                None,
            );
            let doc = json!({ "schema": SCHEMA, "manifest": man, "rows": rows });
            let json_path = out.join("gamma_table.json");
            std::fs::write(&json_path, serde_json::to_string_pretty(&doc)? + "\n")
                .with_context(|| format!("writing {}", json_path.display()))?;
            let csv_path = out.join("gamma_table.csv");
            let file = std::fs::File::create(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
            write_csv(&rows, file)?;
            for r in &rows {
                println!("m={:<3} lower={:<5} upper={:<5} {}", r.m, r.lower, r.upper, if r.tight { "tight" } else { "gap" });
            }
            Ok(0)
        }
        Command::Nodes { lambda, midpoints } => {
            let mut gens = vec![Generator::NodePoints(lambda.clone())];
            if midpoints {
                gens.push(Generator::NodeMidpoints(lambda.clone()));
            }
            let w = WitnessSet::build(&gens)?;
            let degenerate = lambda == Rational::new(2, 3);
            let result = json!({ "lambda": lambda, "degenerate": degenerate, "count": w.len(), "points": w.points });
            emit(manifest("nodes", json!({ "lambda": lambda, "midpoints": midpoints }), json!({}), None), result)?;
            Ok(0)
        }
        Command::Search { m, lambda, seed, iterations, catalog, lo, hi, steps } => {
            let budget = cli.budget.unwrap_or(DEFAULT_CELL_BUDGET);
            if let Some(id) = catalog {
                let e = find_entry(&id).with_context(|| format!("no catalog entry {id:?}"))?;
                let t = e.translations.clone();
                let r = binary_search_lambda(|_| t.clone(), &lo, &hi, steps, budget)?;
                let inputs = json!({ "catalog": id, "lo": lo, "hi": hi, "steps": steps });
                emit(manifest("search", inputs, json!({ "cells": budget }), None), &r)?;
                return Ok(0);
            }
            let (m, lambda) = (m.expect("clap requires m"), lambda.expect("clap requires lambda"));
            let r = local_search_upper(m, &lambda, seed, iterations, budget)?;
            let inputs = json!({ "m": m, "lambda": lambda, "iterations": iterations });
            emit(manifest("search", inputs, json!({ "cells": budget }), Some(seed)), &r)?;
            Ok(if r.config.is_some() { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

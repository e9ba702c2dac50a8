use super::diagnostic::triangle_diagnostic;
use super::experiment::{emit_outputs, scaling_experiment};
use super::io::write_file;
use super::pipeline::{verified_block_graph, verified_geometry, PipelineConfig};
use crate::blocks::{build_h, lemma22_exhaustive, random_blocks, verify_ks2_free, BlockGraph, Lemma22Mode};
use crate::containers::{count_ksfree_bound, iterate_containers, niceness_check, IterateConfig, NicenessConfig};
use crate::geometry::{unital_incidence, verify_unital, SearchBudget};
use crate::graph::{alpha_s_exact, alpha_s_greedy, DenseGraph};
use crate::Result;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

#[derive(Debug, Parser)]
#[command(name = "erdos-rogers", version, about = "Unital block graphs, K_s-free set containers and alpha_s experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphaMethod {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerationMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the secant-line/point incidence graph F.
    BuildUnital {
        #[arg(long)]
        q: u64,
        /// Write the incidence lists here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check sizes, degrees, C4-freeness and the O'Nan search for F.
    VerifyUnital {
        #[arg(long)]
        q: u64,
        /// Node budget for the O'Nan search.
        #[arg(long, default_value_t = 600_000_000)]
        budget: u64,
        /// Optional wall-clock cap in seconds on top of the node budget.
        #[arg(long)]
        seconds: Option<f64>,
    },
    /// Build the random block graph H.
    BuildBlock {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        seed: u64,
        /// Directory for `partition.txt` and `graph.txt`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search H for a K_{s+2}.
    VerifyFree {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Largest K_s-free induced subgraph of a graph file.
    Alpha {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = AlphaMethod::Exact)]
        method: AlphaMethod,
        /// Node budget for the exact search.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Iterate the container step on H down to the size threshold.
    Containers {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        lambda_c: Option<f64>,
        #[arg(long)]
        threshold: Option<usize>,
        /// Write the family as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include full containers in the JSON.
        #[arg(long)]
        full: bool,
    },
    /// Upper bound on the number of K_s-free t-sets of H.
    CountBound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long)]
        lambda_c: Option<f64>,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Check the four-vertex witness on clique partitions of E(K_{s+2}).
    Lemma22 {
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = EnumerationMode::Exhaustive)]
        mode: EnumerationMode,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
    /// Full pipeline over several q and seeds, with CSV, JSON and SVG output.
    Experiment {
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5, 7, 11])]
        q: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Fill the seconds column and write timings.csv.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        exact_cap: Option<usize>,
        /// Node budget for the O'Nan search per q.
        #[arg(long, default_value_t = 1_000_000)]
        onan_nodes: u64,
    },
    /// Triangle/hexagon counts and the balanced-scale check.
    Diagnose {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Smallest sampled set; defaults to 500 s^2 q^2.
        #[arg(long)]
        min_size: Option<usize>,
        /// Skip the hexagon count of F.
        #[arg(long)]
        no_hexagons: bool,
        /// Write the balanced-scale rows as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn block_graph(q: u64, s: usize, seed: u64) -> Result<BlockGraph> {
    let f = Arc::new(unital_incidence(q)?.incidence);
    let part = random_blocks(&f, s, seed)?;
    build_h(f, part)
}

/// Runs one command; `Ok(false)` means a verification failed.
pub fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::BuildUnital { q, out } => {
            let u = unital_incidence(q)?;
            let text = u.to_text();
            match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    println!("q={q} X={} Y={} written to {}", u.x_count(), u.y_count(), path.display());
                }
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::VerifyUnital { q, budget, seconds } => {
            let u = unital_incidence(q)?;
            let limit = SearchBudget {
                max_nodes: Some(budget),
                max_time: seconds.map(|t| Duration::from_secs_f64(t.max(0.0))),
            };
            let report = verify_unital(u.q, &u.incidence, limit);
            print_json(&report)?;
            Ok(report.all_pass)
        }
        Command::BuildBlock { q, s, seed, out } => {
            let h = block_graph(q, s, seed)?;
            if let Some(dir) = out {
                write_file(&dir.join("partition.txt"), &h.partition.to_text(&h.incidence))?;
                write_file(&dir.join("graph.txt"), &h.to_text())?;
            }
            print_json(&json!({ "q": q, "s": s, "seed": seed, "n": h.n(), "edges": h.edge_count() }))?;
            Ok(true)
        }
        Command::VerifyFree { q, s, seed } => {
            let report = verify_ks2_free(&block_graph(q, s, seed)?);
            print_json(&report)?;
            Ok(report.free)
        }
        Command::Alpha { input, s, method, budget, trials, seed } => {
            let g = DenseGraph::parse_text(&std::fs::read_to_string(&input)?)?;
            let result = match method {
                AlphaMethod::Exact => alpha_s_exact(&g, s, budget),
                AlphaMethod::Greedy => alpha_s_greedy(&g, s, trials, seed),
            };
            print_json(&result)?;
            Ok(true)
        }
        Command::Containers { q, s, seed, lambda_c, threshold, out, full } => {
            let h = block_graph(q, s, seed)?;
            let cfg = IterateConfig { lambda_c, threshold, ..Default::default() };
            let (family, _) = iterate_containers(&h, &cfg)?;
            let value = family.to_json(full);
            if let Some(path) = out {
                write_file(&path, &(serde_json::to_string_pretty(&value)? + "\n"))?;
            }
            print_json(&json!({
                "depth": family.depth,
                "containers": family.len(),
                "max_container": family.max_container(),
                "threshold": family.threshold,
                "terminated": family.terminated(),
                "abort": family.abort,
                "audit_failures": family.audit_failures,
                "depth_stats": family.depth_stats,
            }))?;
            Ok(family.audit_failures.is_empty())
        }
        Command::CountBound { q, s, seed, t, lambda_c, threshold } => {
            let h = block_graph(q, s, seed)?;
            let cfg = IterateConfig { lambda_c, threshold, ..Default::default() };
            let (family, _) = iterate_containers(&h, &cfg)?;
            let bound = count_ksfree_bound(&family, t)?;
            print_json(&json!({
                "t": bound.t,
                "threshold": bound.threshold,
                "containers": bound.containers,
                "bound": bound.bound.to_string(),
                "coarse": bound.coarse.to_string(),
                "bound_log2": bound.bound_log2,
                "target_log2": bound.target_log2,
            }))?;
            Ok(true)
        }
        Command::Lemma22 { s, mode, samples, seed, budget } => {
            let mode = match mode {
                EnumerationMode::Exhaustive => Lemma22Mode::Exhaustive,
                EnumerationMode::Sampled => Lemma22Mode::Sampled { samples, seed },
            };
            let report = lemma22_exhaustive(s, mode, budget)?;
            print_json(&report)?;
            Ok(report.failures == 0)
        }
        Command::Experiment { q, s, trials, out, timings, exact_cap, onan_nodes } => {
            let cfg = PipelineConfig {
                qs: q,
                s,
                trials,
                exact_cap,
                onan_nodes,
                out_dir: Some(out.clone()),
                timings,
                ..Default::default()
            };
            let outcome = scaling_experiment(&cfg)?;
            for path in emit_outputs(&outcome, &out, timings)? {
                println!("wrote {}", path.display());
            }
            match (&outcome.fit, &outcome.fit_note) {
                (Some(fit), _) => println!(
                    "fit slope {:.4} (reference {:.4}); diagnostic only",
                    fit.slope, fit.target_exponent
                ),
                (None, Some(note)) => println!("no fit: {note}"),
                _ => {}
            }
            Ok(outcome.verifications.iter().all(|v| v.all_pass))
        }
        Command::Diagnose { q, s, seed, samples, min_size, no_hexagons, csv } => {
            let geom = verified_geometry(q, SearchBudget::nodes(1_000_000))?;
            let h = verified_block_graph(&geom, s, seed)?;
            let triangles = triangle_diagnostic(&h, !no_hexagons);
            let nice = niceness_check(&h, &NicenessConfig { samples, seed, min_size }, &[]);
            if let Some(path) = csv {
                write_file(&path, &nice.to_csv())?;
            }
            print_json(&json!({
                "triangles": triangles,
                "niceness": nice.summary(),
                "pass_rate": nice.pass_rate,
                "vacuous": nice.vacuous,
            }))?;
            Ok(true)
        }
    }
}

/// Exit status 0 when every verification passed, 1 when one failed, 2 on
/// errors.
pub fn main_exit() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_q_lists() {
        let cli = Cli::parse_from(["erdos-rogers", "experiment", "--q", "3,5", "--s", "2", "--trials", "3"]);
        match cli.command {
            Command::Experiment { q, trials, .. } => assert_eq!((q, trials), (vec![3, 5], 3)),
            other => panic!("unexpected {other:?}"),
        }
    }
}

//! `gis` — exact element arithmetic and exhaustive verification for graph
//! inverse semigroups and polycyclic monoids.
//!
//! Graphs come from a JSON file or a builtin. The file holds an object
//! with two fields:
//!
//! ```json
//! {
//!   "vertices": ["v1", "v2"],
//!   "edges": [
//!     { "id": "e", "src": "v1", "dst": "v2" },
//!     { "id": "f", "src": "v1", "dst": "v2" }
//!   ]
//! }
//! ```
//!
//! Element expressions are whitespace-separated generator tokens: a vertex
//! id, an edge id, or an edge id with the suffix `^-1`; the literal `0`
//! denotes zero. Polycyclic letter words use `p<i>` and `p<i>^-1` tokens.
//!
//! Exit status: 0 on success, 1 when a verification suite finds a
//! counterexample, 2 on input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use gis_core::embed::{self, EmbeddingSpec};
use gis_core::expr;
use gis_core::gis;
use gis_core::graph::Graph;
use gis_core::poly::{self, Arity};
use gis_core::verify::{self, Report, TopologyConfig};

#[derive(Parser)]
#[command(
    name = "gis",
    version,
    about = "Exact arithmetic and exhaustive verification for graph inverse semigroups",
    long_about = "Exact arithmetic and exhaustive verification for graph inverse semigroups \
                  and polycyclic monoids.\n\n\
                  Graph files are JSON: {\"vertices\": [\"v1\", ...], \"edges\": \
                  [{\"id\": \"e\", \"src\": \"v1\", \"dst\": \"v2\"}, ...]}. \
                  Builtins: rose:K (one vertex, K loops) and ladder:N (vertices 1..2N, \
                  one edge (2n-1) -> 2n per rung).\n\n\
                  Expressions are whitespace-separated generator tokens: a vertex id, an \
                  edge id, or an edge id with the suffix ^-1; the literal 0 denotes zero.\n\n\
                  Exit status: 0 success, 1 verification counterexample, 2 input error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all paths up to a length bound.
    Paths {
        #[command(flatten)]
        graph: GraphSource,
        /// Maximum path length.
        #[arg(long, value_name = "L")]
        max_len: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Multiply two elements and print the normal form.
    Mul {
        #[command(flatten)]
        graph: GraphSource,
        /// Left factor expression.
        lhs: String,
        /// Right factor expression.
        rhs: String,
    },
    /// Reduce a generator expression to its normal form.
    Reduce {
        #[command(flatten)]
        graph: GraphSource,
        expr: String,
    },
    /// Invert an element.
    Invert {
        #[command(flatten)]
        graph: GraphSource,
        expr: String,
    },
    /// Map an element into the polycyclic monoid (canonical generator
    /// assignment; `--p2` composes with the prefix-code embedding).
    Embed {
        #[command(flatten)]
        graph: GraphSource,
        expr: String,
        /// Land in the two-generator monoid via the prefix code.
        #[arg(long)]
        p2: bool,
    },
    /// Polycyclic monoid word operations.
    Poly {
        #[command(subcommand)]
        command: PolyCommand,
    },
    /// Run verification suites and report pass/fail.
    Verify {
        /// Which suite to run.
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        graph: MaybeGraphSource,
        /// Element bound: maximum path length per side.
        #[arg(long, value_name = "L", default_value_t = 3)]
        max_len: usize,
        /// Truncation window for the topology checks.
        #[arg(long, value_name = "T", default_value_t = 5)]
        trunc: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Seed for the randomized confluence sample.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Reduce a letter word (tokens `p<i>`, `p<i>^-1`) to normal form.
    Reduce {
        /// Generator arity.
        #[arg(long, value_name = "K")]
        arity: u32,
        word: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file (JSON with `vertices` and `edges`).
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Built-in graph: `rose:K` or `ladder:N`.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct MaybeGraphSource {
    /// Graph file (JSON with `vertices` and `edges`).
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Built-in graph: `rose:K` or `ladder:N`.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Axioms,
    Embedding,
    P2,
    Confluence,
    Topology,
    All,
}

#[derive(Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeEntry>,
}

#[derive(Deserialize)]
struct EdgeEntry {
    id: String,
    src: String,
    dst: String,
}

/// A loaded graph plus its display label; ladder builtins remember their
/// rung count so the counterexample suite can run.
struct LoadedGraph {
    graph: Graph,
    label: String,
    ladder_rungs: Option<u32>,
}

fn load_builtin(name: &str) -> Result<LoadedGraph, String> {
    let (kind, count) = name
        .split_once(':')
        .ok_or_else(|| format!("malformed builtin `{name}` (expected rose:K or ladder:N)"))?;
    let count: u32 = count
        .parse()
        .map_err(|_| format!("malformed builtin count in `{name}`"))?;
    match kind {
        "rose" => Ok(LoadedGraph {
            graph: Graph::rose(count),
            label: name.to_string(),
            ladder_rungs: None,
        }),
        "ladder" => {
            if count < 2 {
                return Err("a ladder needs at least 2 rungs".to_string());
            }
            Ok(LoadedGraph {
                graph: Graph::ladder(count),
                label: name.to_string(),
                ladder_rungs: Some(count),
            })
        }
        other => Err(format!(
            "unknown builtin `{other}` (expected rose or ladder)"
        )),
    }
}

fn load_file(path: &PathBuf) -> Result<LoadedGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: GraphFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let graph = Graph::new(
        file.vertices,
        file.edges.into_iter().map(|e| (e.id, e.src, e.dst)),
    )
    .map_err(|e| format!("{}: {e}", path.display()))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(LoadedGraph {
        graph,
        label,
        ladder_rungs: None,
    })
}

fn load(graph: &Option<PathBuf>, builtin: &Option<String>) -> Result<LoadedGraph, String> {
    match (graph, builtin) {
        (Some(path), None) => load_file(path),
        (None, Some(name)) => load_builtin(name),
        _ => Err("exactly one of --graph and --builtin is required".to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Paths {
            graph,
            max_len,
            format,
        } => {
            let loaded = load(&graph.graph, &graph.builtin)?;
            let g = &loaded.graph;
            let paths = g.enumerate_paths(max_len);
            match format {
                OutputFormat::Text => {
                    for p in &paths {
                        println!("{}", g.format_path(p));
                    }
                }
                OutputFormat::Json => {
                    let listed: Vec<_> = paths
                        .iter()
                        .map(|p| {
                            serde_json::json!({
                                "start": g.vertex_name(p.start()),
                                "edges": p.edges().iter()
                                    .map(|&e| g.edge_name(e)).collect::<Vec<_>>(),
                                "range": g.vertex_name(g.range(p)),
                                "length": p.len(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&listed).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mul { graph, lhs, rhs } => {
            let loaded = load(&graph.graph, &graph.builtin)?;
            let g = &loaded.graph;
            let x = expr::parse_element(g, &lhs).map_err(|e| e.to_string())?;
            let y = expr::parse_element(g, &rhs).map_err(|e| e.to_string())?;
            println!("{}", expr::format_element(g, &gis::multiply(&x, &y)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { graph, expr: text } => {
            let loaded = load(&graph.graph, &graph.builtin)?;
            let g = &loaded.graph;
            let x = expr::parse_element(g, &text).map_err(|e| e.to_string())?;
            println!("{}", expr::format_element(g, &x));
            Ok(ExitCode::SUCCESS)
        }
        Command::Invert { graph, expr: text } => {
            let loaded = load(&graph.graph, &graph.builtin)?;
            let g = &loaded.graph;
            let x = expr::parse_element(g, &text).map_err(|e| e.to_string())?;
            println!("{}", expr::format_element(g, &gis::invert(&x)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed {
            graph,
            expr: text,
            p2,
        } => {
            let loaded = load(&graph.graph, &graph.builtin)?;
            let g = &loaded.graph;
            let x = expr::parse_element(g, &text).map_err(|e| e.to_string())?;
            let spec = EmbeddingSpec::canonical(g);
            let image = if p2 {
                embed::embed_element_p2(g, &spec, &x)
            } else {
                embed::embed_element(g, &spec, &x)
            };
            println!("{}", poly::format_element(&image));
            Ok(ExitCode::SUCCESS)
        }
        Command::Poly { command } => match command {
            PolyCommand::Reduce { arity, word } => {
                let letters =
                    poly::parse_letters(&word, Arity::Finite(arity)).map_err(|e| e.to_string())?;
                println!("{}", poly::format_element(&poly::reduce(&letters)));
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Verify {
            suite,
            graph,
            max_len,
            trunc,
            format,
            seed,
        } => run_verify(suite, graph, max_len, trunc, format, seed),
    }
}

fn run_verify(
    suite: Suite,
    graph: MaybeGraphSource,
    max_len: usize,
    trunc: usize,
    format: OutputFormat,
    seed: u64,
) -> Result<ExitCode, String> {
    if trunc == 0 {
        return Err("--trunc must be at least 1".to_string());
    }
    let loaded = match (&graph.graph, &graph.builtin) {
        (None, None) => None,
        _ => Some(load(&graph.graph, &graph.builtin)?),
    };
    let need = |loaded: &Option<LoadedGraph>| -> Result<(), String> {
        if loaded.is_none() {
            return Err("this suite needs --graph or --builtin".to_string());
        }
        Ok(())
    };

    let reports: Vec<Report> = match suite {
        Suite::Axioms => {
            need(&loaded)?;
            let l = loaded.as_ref().unwrap();
            vec![Report::Suite(verify::axioms_suite(
                &l.graph, &l.label, max_len,
            ))]
        }
        Suite::Embedding => {
            need(&loaded)?;
            let l = loaded.as_ref().unwrap();
            let spec = EmbeddingSpec::canonical(&l.graph);
            vec![Report::Embedding(embed::verify_embedding(
                &l.graph, &spec, &l.label, max_len,
            ))]
        }
        Suite::P2 => {
            need(&loaded)?;
            let l = loaded.as_ref().unwrap();
            vec![Report::Suite(verify::p2_suite(
                &l.graph, &l.label, max_len, 8,
            ))]
        }
        Suite::Confluence => {
            vec![Report::Suite(verify::rewriting_suite(seed, 10_000, 12))]
        }
        Suite::Topology => {
            need(&loaded)?;
            let l = loaded.as_ref().unwrap();
            let cfg = TopologyConfig {
                trunc,
                ..TopologyConfig::default()
            };
            let mut reports: Vec<Report> = verify::topology_suite(&l.graph, &l.label, &cfg)
                .into_iter()
                .map(Report::Topology)
                .collect();
            if let Some(rungs) = l.ladder_rungs {
                reports.push(Report::Topology(verify::ladder_example_suite(rungs, 2)));
            }
            reports
        }
        Suite::All => {
            need(&loaded)?;
            let l = loaded.as_ref().unwrap();
            verify::verify_all(&l.graph, &l.label, max_len, trunc, seed, l.ladder_rungs)
        }
    };

    let passed = reports.iter().all(Report::passed);
    match format {
        OutputFormat::Text => {
            for r in &reports {
                println!("{}", r.render_text());
            }
            println!("overall: {}", if passed { "pass" } else { "fail" });
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "reports": reports,
                "status": if passed { "pass" } else { "fail" },
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

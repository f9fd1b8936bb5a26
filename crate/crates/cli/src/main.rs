//! `mutvis` command line.
//!
//! Every command prints one line of JSON on stdout; diagnostics go to
//! stderr. Exit codes: 0 success, 1 invalid certificate (`verify` only),
//! 2 usage, I/O or schema error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mutvis::bounds::{bounds_csv, bounds_for, hypercube_table_csv};
use mutvis::io::{graph_from_json, graph_to_dot, graph_to_json};
use mutvis::solver::{bf_column_caps, solve};
use mutvis::{
    bypass_vertices, CertificateFile, Construction, Graph, SelfCheck, SetKind, SolveOptions,
    Symmetry, TopologyKind, TopologySpec, VertexSet,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "mutvis",
    version,
    about = "Mutual-visibility sets in hypercube-like networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a topology graph.
    Gen {
        kind: String,
        d: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Build a named construction as a certificate.
    Construct {
        name: String,
        d: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Run the checker and record the result in the certificate.
        #[arg(long)]
        verify: bool,
    },
    /// Check a certificate file.
    Verify {
        path: PathBuf,
        /// Store the outcome in the file's `verified` field.
        #[arg(long)]
        write_back: bool,
    },
    /// Exact maximum (total) mutual-visibility set.
    Solve {
        /// Topology kind or path to a graph JSON file.
        target: String,
        d: Option<usize>,
        #[arg(long)]
        total: bool,
        /// Node budget.
        #[arg(long)]
        budget: Option<u64>,
        /// Time budget in seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        /// Search only for sets larger than this.
        #[arg(long)]
        seed_lower_bound: Option<usize>,
        /// Fix the first vertex (vertex-transitive topologies only).
        #[arg(long)]
        symmetry: bool,
        /// Skip the butterfly column caps.
        #[arg(long)]
        no_caps: bool,
        #[arg(long, default_value_t = mutvis::solver::DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Closed-form bounds for one dimension or an inclusive range `a..b`.
    Bounds {
        kind: String,
        d: String,
        #[arg(long)]
        csv: bool,
    },
    /// Bypass vertices and the zero-total test.
    Bypass { target: String, d: Option<usize> },
}

/// Outcome that maps onto a process exit code.
enum Status {
    Ok,
    Invalid,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Invalid) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("MUTVIS_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().with_context(|| format!("MUTVIS_THREADS={v:?}"))?;
    if n == 0 {
        bail!("MUTVIS_THREADS must be positive");
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Gen {
            kind,
            d,
            out,
            format,
        } => cmd_gen(&kind, d, out.as_deref(), format),
        Command::Construct {
            name,
            d,
            out,
            verify,
        } => cmd_construct(&name, d, out.as_deref(), verify),
        Command::Verify { path, write_back } => cmd_verify(&path, write_back),
        Command::Solve {
            target,
            d,
            total,
            budget,
            time_budget,
            seed_lower_bound,
            symmetry,
            no_caps,
            max_vertices,
        } => {
            let g = load_target(&target, d)?;
            let mut opts = SolveOptions::new(if total {
                SetKind::Total
            } else {
                SetKind::Mutual
            })
            .with_max_vertices(max_vertices);
            opts.node_budget = budget;
            opts.initial_lower_bound = seed_lower_bound;
            if let Some(t) = time_budget {
                opts.time_budget = Some(Duration::try_from_secs_f64(t).context("--time-budget")?);
            }
            if symmetry {
                match g.topology() {
                    Some(spec) if spec.is_vertex_transitive() => {
                        opts.symmetry = Symmetry::VertexTransitive
                    }
                    _ => bail!("--symmetry needs a vertex-transitive topology (hypercube or ccc)"),
                }
            }
            if let Some(spec) = g.topology() {
                if spec.kind == TopologyKind::Butterfly
                    && !no_caps
                    && g.vertex_count() <= max_vertices
                {
                    opts.caps.push(bf_column_caps(&g, spec.d)?);
                }
            }
            cmd_solve(&g, &opts)
        }
        Command::Bounds { kind, d, csv } => cmd_bounds(&kind, &d, csv),
        Command::Bypass { target, d } => {
            let g = load_target(&target, d)?;
            let r = bypass_vertices(&g)?;
            print_json(&json!({
                "bp": r.bp,
                "bypass_vertices": labels(&g, &r.bypass_vertices),
                "total_mv_zero": r.bp == 0,
            }));
            Ok(Status::Ok)
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{v}");
}

fn labels(g: &Graph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|v| g.label_string(v)).collect()
}

fn parse_spec(kind: &str, d: usize) -> Result<TopologySpec> {
    Ok(TopologySpec::new(kind.parse()?, d)?)
}

/// A topology kind with its dimension, or a graph JSON file.
fn load_target(target: &str, d: Option<usize>) -> Result<Graph> {
    if let Ok(kind) = target.parse::<TopologyKind>() {
        let d = d.ok_or_else(|| anyhow!("{kind} needs a dimension"))?;
        return Ok(TopologySpec::new(kind, d)?.generate()?);
    }
    if d.is_some() {
        bail!("a dimension only applies to topology kinds, not to file {target:?}");
    }
    let text = fs::read_to_string(target).with_context(|| format!("reading {target}"))?;
    graph_from_json(&text).with_context(|| format!("parsing {target}"))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_gen(kind: &str, d: usize, out: Option<&Path>, format: GraphFormat) -> Result<Status> {
    let g = parse_spec(kind, d)?.generate()?;
    let text = match format {
        GraphFormat::Json => graph_to_json(&g),
        GraphFormat::Dot => graph_to_dot(&g),
    };
    match out {
        Some(path) => {
            write_out(path, &text)?;
            print_json(&json!({
                "path": path.display().to_string(),
                "n": g.vertex_count(),
                "edges": g.edge_count(),
            }));
        }
        None => print!("{}{}", text, if text.ends_with('\n') { "" } else { "\n" }),
    }
    Ok(Status::Ok)
}

fn cmd_construct(name: &str, d: usize, out: Option<&Path>, verify: bool) -> Result<Status> {
    let c: Construction = name.parse()?;
    let check = if verify {
        SelfCheck::Verify
    } else {
        SelfCheck::Skip
    };
    let cert = c.build(d, check)?;
    let file = CertificateFile::from(&cert);
    match out {
        Some(path) => {
            write_out(path, &file.to_json_pretty())?;
            print_json(&json!({
                "construction": c.name(),
                "d": d,
                "size": file.claimed_size,
                "verified": file.verified,
                "path": path.display().to_string(),
            }));
        }
        None => print_json(&serde_json::to_value(&file)?),
    }
    Ok(Status::Ok)
}

fn cmd_verify(path: &Path, write_back: bool) -> Result<Status> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut file =
        CertificateFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let (g, _) = file.resolve()?;
    let verdict = file.verify()?;
    let failing = verdict
        .failing_pair
        .map(|(u, v)| [g.label_string(u), g.label_string(v)]);
    print_json(&json!({
        "valid": verdict.valid,
        "set_kind": file.set_kind,
        "size": file.claimed_size,
        "failing_pair": failing,
    }));
    if write_back {
        write_out(path, &file.to_json_pretty())?;
    }
    if let Some([u, v]) = &failing {
        eprintln!("pair {u} and {v} is not visible");
    }
    Ok(if verdict.valid {
        Status::Ok
    } else {
        Status::Invalid
    })
}

fn cmd_solve(g: &Graph, opts: &SolveOptions) -> Result<Status> {
    let r = solve(g, opts)?;
    if r.budget_exhausted {
        eprintln!(
            "budget exhausted after {} nodes; result is not a proof",
            r.nodes_explored
        );
    }
    let mut v = serde_json::to_value(&r)?;
    v["witness"] = json!(labels(g, &r.witness));
    print_json(&v);
    Ok(Status::Ok)
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .with_context(|| format!("bad dimension {t:?}"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                bail!("empty range {s}");
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![parse(s)?]),
    }
}

fn cmd_bounds(kind: &str, d: &str, csv: bool) -> Result<Status> {
    let kind: TopologyKind = kind.parse()?;
    let ds = parse_range(d)?;
    if csv {
        let text = match kind {
            TopologyKind::Hypercube => hypercube_table_csv(ds)?,
            _ => {
                let reports = ds
                    .into_iter()
                    .map(|d| bounds_for(kind, d))
                    .collect::<Result<Vec<_>, _>>()?;
                bounds_csv(&reports)?
            }
        };
        print!("{text}");
        return Ok(Status::Ok);
    }
    let reports = ds
        .into_iter()
        .map(|d| bounds_for(kind, d))
        .collect::<Result<Vec<_>, _>>()?;
    match reports.as_slice() {
        [one] => print_json(&serde_json::to_value(one)?),
        many => print_json(&serde_json::to_value(many)?),
    }
    Ok(Status::Ok)
}

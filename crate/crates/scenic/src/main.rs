//! Command-line interface: synthesize point sets, build arrangements,
//! generate routes, run experiments, and render SVG.
//!
//! Exit codes: 0 success, 2 malformed input, 3 degenerate geometry,
//! 64 usage errors.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use scenic::apsp::compute_apsp;
use scenic::arrangement::{bridge_components, build_arrangement, Arrangement, NodeKind};
use scenic::error::ScenicError;
use scenic::experiment::{format_summary, run_random_experiment, ExperimentConfig};
use scenic::io::{fmt_sig9, parse_pointset, write_pointset, RouteFile};
use scenic::metrics::route_metrics;
use scenic::route::{acch_route, acu_route, dpe_route, Route, RouteAlgorithm};
use scenic::svg::{render_route_file, render_svg};
use scenic::synth::{generate_synthetic, SynthConfig, SynthShape};

#[derive(Parser)]
#[command(name = "scenic", version, about = "Scenic curves and routes for weighted two-class point sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a synthetic point configuration.
    Synth(SynthArgs),
    /// Build and summarize the arrangement of a point set.
    Arrange(ArrangeArgs),
    /// Generate a scenic route over a point set.
    Route(RouteArgs),
    /// Run the seeded random-instance experiment.
    Experiment(ExperimentArgs),
    /// Render an arrangement and/or route as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Layout shape.
    #[arg(long, value_parser = parse_shape)]
    shape: SynthShape,
    /// Points per class.
    #[arg(long)]
    count: Option<usize>,
    /// Grid/line spacing.
    #[arg(long)]
    spacing: Option<f64>,
    /// Circle radius (half-circle layout).
    #[arg(long)]
    radius: Option<f64>,
    /// Uniform blue/red weight ratio.
    #[arg(long)]
    delta: Option<f64>,
    /// Output file, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct ArrangeArgs {
    /// Point set file, `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct RouteArgs {
    /// Route algorithm: acu, acch, or dpe.
    #[arg(long, value_parser = parse_algo)]
    algo: RouteAlgorithm,
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 4)]
    n_red: usize,
    #[arg(long, default_value_t = 4)]
    n_blue: usize,
    /// Coordinate range, two values.
    #[arg(long, num_args = 2, allow_negative_numbers = true, default_values_t = [-30.0, 30.0])]
    coord_range: Vec<f64>,
    /// Weight range, two values.
    #[arg(long, num_args = 2, allow_negative_numbers = true, default_values_t = [1.0, 50.0])]
    weight_range: Vec<f64>,
    /// Master seed; falls back to SCENIC_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct RenderArgs {
    /// Point set file for the arrangement layer.
    #[arg(long)]
    input: Option<String>,
    /// Route file to overlay (or to render alone).
    #[arg(long)]
    route: Option<String>,
    #[arg(long, default_value = "-")]
    out: String,
}

fn parse_shape(raw: &str) -> Result<SynthShape, String> {
    SynthShape::parse(raw).ok_or_else(|| {
        format!(
            "unknown shape `{raw}` (expected grid_alternating, line_alternating, \
             halfline_split, or halfcircle_split)"
        )
    })
}

fn parse_algo(raw: &str) -> Result<RouteAlgorithm, String> {
    RouteAlgorithm::parse(raw)
        .ok_or_else(|| format!("unknown algorithm `{raw}` (expected acu, acch, or dpe)"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &ScenicError) -> u8 {
    match err {
        ScenicError::DegeneratePair { .. } => 3,
        _ => 2,
    }
}

fn read_input(path: &str) -> Result<String, ScenicError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| ScenicError::Parse(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| ScenicError::Parse(format!("reading {path}: {e}")))
    }
}

fn write_output(path: &str, content: &str) -> Result<(), ScenicError> {
    if path == "-" {
        std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| ScenicError::Parse(format!("writing stdout: {e}")))
    } else {
        std::fs::write(path, content)
            .map_err(|e| ScenicError::Parse(format!("writing {path}: {e}")))
    }
}

fn run(cli: Cli) -> Result<(), ScenicError> {
    match cli.cmd {
        Cmd::Synth(a) => {
            let mut cfg = SynthConfig::new(a.shape);
            if let Some(c) = a.count {
                cfg.count = c;
            }
            if let Some(s) = a.spacing {
                cfg.extent = s;
            }
            if let Some(r) = a.radius {
                cfg.extent = r;
            }
            if let Some(d) = a.delta {
                cfg.delta = d;
            }
            let pts = generate_synthetic(&cfg)?;
            write_output(&a.out, &write_pointset(&pts))
        }
        Cmd::Arrange(a) => {
            let pts = parse_pointset(&read_input(&a.input)?)?;
            let arr = bridge_components(build_arrangement(&pts)?);
            write_output(&a.out, &arrangement_summary(&arr))
        }
        Cmd::Route(a) => {
            let pts = parse_pointset(&read_input(&a.input)?)?;
            let arr = bridge_components(build_arrangement(&pts)?);
            let apsp = compute_apsp(&arr)?;
            let route = match a.algo {
                RouteAlgorithm::Acu => acu_route(&arr, &apsp),
                RouteAlgorithm::Acch => acch_route(&arr, &apsp),
                RouteAlgorithm::Dpe => dpe_route(&arr, &apsp),
            };
            let metrics = route_metrics(&route, &arr)?;
            let file = RouteFile::from_route(&arr, &route, &metrics, None);
            write_output(&a.out, &file.to_text())
        }
        Cmd::Experiment(a) => {
            let seed = match a.seed {
                Some(s) => s,
                None => std::env::var("SCENIC_SEED")
                    .ok()
                    .and_then(|v| v.parse().ok())
                    .unwrap_or(0),
            };
            let cfg = ExperimentConfig {
                trials: a.trials,
                n_red: a.n_red,
                n_blue: a.n_blue,
                coord_range: (a.coord_range[0], a.coord_range[1]),
                weight_range: (a.weight_range[0], a.weight_range[1]),
                seed,
            };
            let summary = run_random_experiment(&cfg)?;
            write_output(&a.out, &format_summary(&summary))
        }
        Cmd::Render(a) => match (&a.input, &a.route) {
            (Some(input), route_path) => {
                let pts = parse_pointset(&read_input(input)?)?;
                let arr = bridge_components(build_arrangement(&pts)?);
                let route = match route_path {
                    Some(path) => Some(route_from_file(&arr, &read_input(path)?)?),
                    None => None,
                };
                write_output(&a.out, &render_svg(&arr, route.as_ref()))
            }
            (None, Some(path)) => {
                let file = RouteFile::parse(&read_input(path)?)?;
                write_output(&a.out, &render_route_file(&file))
            }
            (None, None) => Err(ScenicError::Parse(
                "render needs --input and/or --route".into(),
            )),
        },
    }
}

/// Rebuild a Route against a freshly computed arrangement from the edge ids
/// stored in a route file. Arrangement construction is deterministic, so
/// ids written for the same point set still apply.
fn route_from_file(arr: &Arrangement, text: &str) -> Result<Route, ScenicError> {
    let file = RouteFile::parse(text)?;
    for e in &file.edges {
        let matches = arr.edges.get(e.id).is_some_and(|edge| {
            edge.endpoints == (e.from, e.to) || edge.endpoints == (e.to, e.from)
        });
        if !matches {
            return Err(ScenicError::Parse(format!(
                "route edge {} does not match this point set's arrangement",
                e.id
            )));
        }
    }
    let seed_edges: Vec<usize> = file
        .edges
        .iter()
        .filter(|e| e.role == scenic::io::EdgeRole::Seed)
        .map(|e| e.id)
        .collect();
    let edges: std::collections::BTreeSet<usize> = file.edges.iter().map(|e| e.id).collect();
    let mut nodes = std::collections::BTreeSet::new();
    for &e in &edges {
        nodes.insert(arr.edges[e].endpoints.0);
        nodes.insert(arr.edges[e].endpoints.1);
    }
    Ok(Route {
        algorithm: file.algorithm,
        edges,
        nodes,
        construction_log: vec![scenic::route::LogStep {
            kind: scenic::route::StepKind::Seed,
            edges: seed_edges,
        }],
    })
}

fn arrangement_summary(arr: &Arrangement) -> String {
    let count_kind = |k: NodeKind| arr.nodes.iter().filter(|n| n.kind == k).count();
    let count_edge = |pred: fn(&scenic::arrangement::EdgeKind) -> bool| {
        arr.edges.iter().filter(|e| pred(&e.kind)).count()
    };
    let bridge_len: f64 = arr.bridges.iter().map(|&b| arr.edges[b].length).sum();
    let mut out = String::from("arrangement v1\n");
    out.push_str(&format!(
        "points {}  red {}  blue {}\n",
        arr.points.len(),
        arr.red_count(),
        arr.blue_count()
    ));
    let circles = arr
        .curves
        .iter()
        .filter(|c| c.kind.is_circle())
        .count();
    out.push_str(&format!(
        "curves {}  circles {}  lines {}\n",
        arr.curves.len(),
        circles,
        arr.curves.len() - circles
    ));
    out.push_str(&format!(
        "nodes {}  intersection {}  loop_anchor {}  clip_end {}  bridge_foot {}\n",
        arr.nodes.len(),
        count_kind(NodeKind::Intersection),
        count_kind(NodeKind::LoopAnchor),
        count_kind(NodeKind::ClipEnd),
        count_kind(NodeKind::BridgeFoot)
    ));
    out.push_str(&format!(
        "edges {}  arcs {}  segments {}  loops {}  bridges {}\n",
        arr.edges.len(),
        count_edge(|k| matches!(k, scenic::arrangement::EdgeKind::Arc { .. })),
        count_edge(|k| matches!(k, scenic::arrangement::EdgeKind::Segment { .. })),
        count_edge(|k| matches!(k, scenic::arrangement::EdgeKind::Loop { .. })),
        arr.bridges.len()
    ));
    out.push_str(&format!(
        "bridge_length {}\ntotal_edge_length {}\n",
        fmt_sig9(bridge_len),
        fmt_sig9(arr.total_edge_length())
    ));
    out
}

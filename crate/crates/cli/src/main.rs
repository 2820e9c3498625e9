use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tightspan::complex::{
    enumerate_qplus_with, enumerate_section_with, enumerate_tight_span_with, EnumOptions, PolyComplex, DEFAULT_CAP,
};
use tightspan::flow::{dual_metric_lp, max_multiflow, verify_minmax, MinMaxMode, Network};
use tightspan::geometry::{classify_membership, geodesic_polyline, retract_to_qplus, retract_to_section, retract_to_tight_span};
use tightspan::io;
use tightspan::metric::{check_directed_tree_metric, check_path_condition, check_tree_condition};
use tightspan::random::{random_distance, random_metric, random_network, rng, EntryShape};
use tightspan::rank::{dim_tight_span_certificate, tropical_rank_certificate};
use tightspan::treereal::{
    evaluate_realization, random_realization, realize_directed_tree_metric, realize_path, realize_tree,
    split_decomposition, splits_pairwise_compatible, Realization, RealizationKind,
};
use tightspan::{DirectedDistance, Error};

const DISTANCE_HELP: &str = "Distance files look like\n  {\"labels\": [\"a\",\"b\"], \"matrix\": [[\"0\",\"1/2\"],[\"1\",\"0\"]]}\nwith entries as \"p/q\" strings or integers.";
const POINT_HELP: &str = "Point files look like\n  {\"col\": {\"a\": \"0\", \"b\": \"1/2\"}, \"row\": {\"a\": \"1\", \"b\": \"0\"}}";
const NETWORK_HELP: &str = "Network files look like\n  {\"vertices\": [\"s\",\"t\",\"x\"], \"edges\": [{\"tail\":\"s\",\"head\":\"x\",\"cap\":1}], \"terminals\": [\"s\",\"t\"]}\nThe distance file must be labelled by the terminal names, in order.";
const REALIZATION_HELP: &str = "Realization files look like\n  {\"labels\": [\"a\",\"b\"], \"vertices\": 2, \"edges\": [{\"tail\":0,\"head\":1,\"length\":\"1\"}], \"subtrees\": {\"a\": [0], \"b\": [1]}}";

#[derive(Parser)]
#[command(name = "tightspan", version, about = "Directed tight spans, tropical polytopes, tree realizations and multiflow duality")]
struct Cli {
    /// Write JSON output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a distance file and report whether it is a metric.
    #[command(after_help = DISTANCE_HELP)]
    Validate { distance: PathBuf },
    /// Check the quadruple (path), sextuple (tree) or directed tree metric condition.
    #[command(after_help = DISTANCE_HELP)]
    Check { which: Condition, distance: PathBuf },
    /// Tropical rank with a uniqueness certificate.
    #[command(after_help = DISTANCE_HELP)]
    Rank { distance: PathBuf },
    /// Dimension of the tight span with a certificate.
    #[command(after_help = DISTANCE_HELP)]
    Dim { distance: PathBuf },
    /// Enumerate the tight span complex.
    #[command(after_help = DISTANCE_HELP)]
    Tightspan(ComplexArgs),
    /// Enumerate the complex of nonnegative minimal points of the unrestricted polyhedron.
    #[command(after_help = DISTANCE_HELP)]
    Qplus(ComplexArgs),
    /// Enumerate the canonical balanced section.
    #[command(after_help = DISTANCE_HELP)]
    Section(ComplexArgs),
    /// 1-skeleton of a complex of dimension at most 1.
    #[command(after_help = DISTANCE_HELP)]
    Skeleton {
        distance: PathBuf,
        #[arg(long, value_enum, default_value = "tightspan")]
        kind: ComplexChoice,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Also write the skeleton as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build an oriented-tree realization.
    #[command(after_help = DISTANCE_HELP)]
    Realize {
        which: Condition,
        distance: PathBuf,
        /// Also write the realization as DOT with colored subtrees.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Retract a point onto the tight span, Q+, or the canonical section.
    #[command(after_help = POINT_HELP)]
    Retract {
        distance: PathBuf,
        point: PathBuf,
        #[arg(long, value_enum, default_value = "tight")]
        to: RetractTarget,
    },
    /// Subdivided geodesic between two points of the tight span.
    #[command(after_help = POINT_HELP)]
    Geodesic {
        distance: PathBuf,
        from: PathBuf,
        to: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Maximum multiflow, metric-extension LP, or the min-max check.
    #[command(after_help = NETWORK_HELP)]
    Flow {
        which: FlowCommand,
        network: PathBuf,
        distance: PathBuf,
        #[arg(long, value_enum, default_value = "T")]
        mode: Mode,
        /// For `verify`, print certificates and every individual check.
        #[arg(long)]
        report: bool,
    },
    /// Split decomposition of a realization with single-vertex subtrees.
    #[command(after_help = REALIZATION_HELP)]
    Decompose { realization: PathBuf },
    /// Write a seeded random instance.
    Sample {
        what: SampleKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Network vertices (terminals are the first `n`).
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        #[arg(long)]
        eulerian: bool,
        /// Realization class.
        #[arg(long, default_value = "singleton")]
        kind: String,
    },
}

#[derive(clap::Args)]
struct ComplexArgs {
    distance: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Condition {
    Path,
    Tree,
    Dtm,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexChoice {
    Tightspan,
    Qplus,
    Section,
}

#[derive(Clone, Copy, ValueEnum)]
enum RetractTarget {
    Tight,
    Qplus,
    Section,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlowCommand {
    Max,
    Dual,
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "Q", alias = "q")]
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    Distance,
    Metric,
    Network,
    Realization,
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse_json(&text)
}

fn read_distance(path: &Path) -> Result<DirectedDistance, Error> {
    io::distance_from_json(&read_json(path)?)
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn complex(mu: &DirectedDistance, kind: ComplexChoice, cap: usize) -> Result<PolyComplex, Error> {
    let opts = EnumOptions { cap };
    match kind {
        ComplexChoice::Tightspan => enumerate_tight_span_with(mu, &opts),
        ComplexChoice::Qplus => enumerate_qplus_with(mu, &opts),
        ComplexChoice::Section => enumerate_section_with(mu, &opts),
    }
}

fn witness_json(mu: &DirectedDistance, w: &[usize]) -> Value {
    json!(w.iter().map(|&i| mu.labels()[i].as_str()).collect::<Vec<_>>())
}

fn run(cli: Cli) -> Result<Value, Error> {
    Ok(match cli.command {
        Command::Validate { distance } => {
            let mu = read_distance(&distance)?;
            json!({ "valid": true, "n": mu.n(), "metric": mu.is_metric() })
        }
        Command::Check { which, distance } => {
            let mu = read_distance(&distance)?;
            match which {
                Condition::Path => {
                    let c = check_path_condition(&mu);
                    let mut v = json!({ "path_condition": c.holds, "dim_tight_span": tightspan::rank::dim_tight_span(&mu) });
                    if let Some(w) = c.witness {
                        v["witness"] = witness_json(&mu, &w);
                    }
                    v
                }
                Condition::Tree => {
                    let c = check_tree_condition(&mu);
                    let mut v = json!({ "tree_condition": c.holds, "tropical_rank": tightspan::rank::tropical_rank(&mu) });
                    if let Some(w) = c.witness {
                        v["witness"] = witness_json(&mu, &w);
                    }
                    v
                }
                Condition::Dtm => json!({
                    "directed_tree_metric": check_directed_tree_metric(&mu)?,
                    "tropical_rank": tightspan::rank::tropical_rank(&mu),
                }),
            }
        }
        Command::Rank { distance } => {
            let mu = read_distance(&distance)?;
            let cert = tropical_rank_certificate(&mu);
            json!({
                "tropical_rank": cert.value,
                "certificate": io::rank_certificate_to_json(mu.ground(), mu.ground(), &cert),
            })
        }
        Command::Dim { distance } => {
            let mu = read_distance(&distance)?;
            let cert = dim_tight_span_certificate(&mu);
            json!({
                "dim_tight_span": cert.as_ref().map_or(0, |c| c.value),
                "certificate": cert.map(|c| io::rank_certificate_to_json(mu.ground(), mu.ground(), &c)),
            })
        }
        Command::Tightspan(a) => complex_output(&a, ComplexChoice::Tightspan)?,
        Command::Qplus(a) => complex_output(&a, ComplexChoice::Qplus)?,
        Command::Section(a) => complex_output(&a, ComplexChoice::Section)?,
        Command::Skeleton { distance, kind, cap, dot } => {
            let mu = read_distance(&distance)?;
            let skel = complex(&mu, kind, cap)?.skeleton()?;
            if let Some(path) = dot {
                write_text(&path, &io::skeleton_to_dot(&skel))?;
            }
            json!({
                "vertices": skel.vertices.iter().map(|p| io::point_to_json(mu.ground(), p)).collect::<Vec<_>>(),
                "edges": skel.edges.iter()
                    .map(|e| json!({"tail": e.tail, "head": e.head, "length": io::rational_json(&e.length)}))
                    .collect::<Vec<_>>(),
            })
        }
        Command::Realize { which, distance, dot } => {
            let mu = read_distance(&distance)?;
            let r = match which {
                Condition::Path => realize_path(&mu)?,
                Condition::Tree => realize_tree(&mu)?,
                Condition::Dtm => realize_directed_tree_metric(&mu)?,
            };
            if let Some(path) = dot {
                write_text(&path, &io::realization_to_dot(&r))?;
            }
            io::realization_to_json(&r)
        }
        Command::Retract { distance, point, to } => {
            let mu = read_distance(&distance)?;
            let p = io::point_from_json(mu.ground(), &read_json(&point)?)?;
            let q = match to {
                RetractTarget::Tight => retract_to_tight_span(&mu, &p)?,
                RetractTarget::Qplus => retract_to_qplus(&mu, &p)?,
                RetractTarget::Section => retract_to_section(&mu, &p)?,
            };
            json!({ "point": io::point_to_json(mu.ground(), &q), "membership": classify_membership(&mu, &q).name() })
        }
        Command::Geodesic { distance, from, to, steps } => {
            let mu = read_distance(&distance)?;
            let p = io::point_from_json(mu.ground(), &read_json(&from)?)?;
            let q = io::point_from_json(mu.ground(), &read_json(&to)?)?;
            io::polyline_to_json(mu.ground(), &geodesic_polyline(&mu, &p, &q, steps)?)
        }
        Command::Flow { which, network, distance, mode, report } => {
            let net = io::network_from_json(&read_json(&network)?)?;
            let mu = read_distance(&distance)?;
            flow_output(&net, &mu, which, mode, report)?
        }
        Command::Decompose { realization } => {
            let r: Realization = io::realization_from_json(&read_json(&realization)?)?;
            let terms = split_decomposition(&r)?;
            json!({
                "terms": io::splits_to_json(&r.labels, &terms),
                "compatible": splits_pairwise_compatible(&terms),
                "distance": io::distance_to_json(&evaluate_realization(&r)?),
            })
        }
        Command::Sample { what, n, seed, vertices, eulerian, kind } => {
            if n == 0 {
                return Err(Error::EmptyGroundSet);
            }
            let shape = EntryShape::default();
            let mut r = rng(seed);
            match what {
                SampleKind::Distance => io::distance_to_json(&random_distance(&mut r, n, &shape)),
                SampleKind::Metric => io::distance_to_json(&random_metric(&mut r, n, &shape)),
                SampleKind::Network => {
                    if n < 2 || vertices < n {
                        return Err(Error::InvalidArgument("need 2 <= n <= vertices".into()));
                    }
                    io::network_to_json(&random_network(&mut r, vertices, n, 3, eulerian))
                }
                SampleKind::Realization => {
                    io::realization_to_json(&random_realization(RealizationKind::parse(&kind)?, n, seed)?)
                }
            }
        }
    })
}

fn complex_output(a: &ComplexArgs, kind: ComplexChoice) -> Result<Value, Error> {
    let mu = read_distance(&a.distance)?;
    Ok(io::complex_to_json(mu.ground(), &complex(&mu, kind, a.cap)?))
}

fn flow_output(net: &Network, mu: &DirectedDistance, which: FlowCommand, mode: Mode, report: bool) -> Result<Value, Error> {
    Ok(match which {
        FlowCommand::Max => {
            let (value, flow) = max_multiflow(net, mu)?;
            json!({ "value": io::rational_json(&value), "flow": io::flow_to_json(net, &flow) })
        }
        FlowCommand::Dual => {
            let (value, ext) = dual_metric_lp(net, mu)?;
            json!({ "value": io::rational_json(&value), "extension": io::extension_to_json(&ext) })
        }
        FlowCommand::Verify => {
            let mode = match mode {
                Mode::T => MinMaxMode::T,
                Mode::Q => MinMaxMode::Q,
            };
            let r = verify_minmax(net, mu, mode)?;
            if report {
                io::minmax_to_json(net, &r)
            } else {
                json!({ "max": io::rational_json(&r.max), "min": io::rational_json(&r.min), "equal": r.equal && r.ok() })
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = write_text(&path, &text) {
                        return fail(&e);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    let v = json!({ "error": e.kind(), "message": e.to_string() });
    println!("{}", serde_json::to_string_pretty(&v).expect("JSON values serialize"));
    ExitCode::from(1)
}

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use oddgraph::graphs::{
    boundary_labeled, contract_edge, differential, enumerate, enumerate_by_edges, fixtures, graph_from_json,
    graph_to_json, orientation_to_json, Contraction, EnumOptions, Orientation, StableGraph,
};
use oddgraph::psi::{self, PsiCheck, WkTable};
use oddgraph::scalars::rational_to_json;
use oddgraph::weights::{cochain, Theory};
use oddgraph_cli::{algebra, render, suites, Outcome};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "oddgraph", version, about = "Stable ribbon graph complexes and their partition-function cochains")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel maps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct AlgebraArgs {
    /// `E` or `QN`.
    #[arg(long)]
    builtin: Option<String>,
    /// Size of the matrices for `QN`.
    #[arg(long = "N")]
    n: Option<usize>,
    /// `λ_1,…,λ_N` for `QN`.
    #[arg(long)]
    lambda: Option<String>,
    /// Algebra file with `basis`, `mult`, `g`, `I` and optionally `Itilde`.
    #[arg(long)]
    json: Option<PathBuf>,
}

impl AlgebraArgs {
    fn load_or_e(&self) -> Result<oddgraph::graded::AlgebraWithOps> {
        if self.builtin.is_none() && self.json.is_none() {
            return Ok(oddgraph::graded::make_e());
        }
        algebra::load(self.builtin.as_deref(), self.n, self.lambda.as_deref(), self.json.as_deref())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Algebra axioms and the operators `I`, `Ĩ`.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    Graphs {
        #[command(subcommand)]
        cmd: GraphsCmd,
    },
    Weights {
        #[command(subcommand)]
        cmd: WeightsCmd,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    Psi {
        #[command(subcommand)]
        cmd: PsiCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Check(AlgebraArgs),
}

#[derive(Subcommand)]
enum GraphsCmd {
    /// Isomorphism classes with a given number of edges.
    Enum {
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        edges: usize,
        /// One cycle per vertex, no vertex genus.
        #[arg(long)]
        ordinary: bool,
        /// Every cycle has length three.
        #[arg(long)]
        trivalent: bool,
        #[arg(long)]
        odd_cycles: bool,
        /// Bound on the total vertex genus of stable graphs.
        #[arg(long, default_value_t = 1)]
        max_gamma: u32,
    },
    /// Edge contractions of one oriented graph.
    Contract {
        /// Fixture name (`theta`, `figure8`, `fig1`) or a graph file.
        #[arg(long)]
        graph: String,
        /// Contract only the edge through this flag.
        #[arg(long)]
        edge: Option<usize>,
        #[arg(long)]
        ordinary: bool,
    },
}

#[derive(Subcommand)]
enum WeightsCmd {
    /// `Z` and `Ẑ` of one graph, or the cochain `Ẑ` up to an edge budget.
    Z {
        #[arg(long, conflicts_with = "max_edges")]
        graph: Option<String>,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, default_value_t = 1)]
        max_gamma: u32,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// cocycle, counterexample, loop-defect, coboundary or d-squared.
    suite: String,
    #[arg(long, default_value_t = 4)]
    max_edges: usize,
    #[arg(long, default_value_t = 1)]
    max_gamma: u32,
    #[command(flatten)]
    algebra: AlgebraArgs,
}

#[derive(Subcommand)]
enum PsiCmd {
    /// Both sides of the ψ identity in degree `d`.
    Check {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        /// Defaults to the top degree `3g − 3 + n`.
        #[arg(long)]
        d: Option<u32>,
        /// Evaluate both sides at this point.
        #[arg(long)]
        lambda: Option<String>,
    },
}

fn load_graph(spec: &str) -> Result<(StableGraph, Orientation)> {
    if let Some(found) = fixtures::by_name(spec) {
        return Ok(found);
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("no fixture or file named {spec:?}"))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
    graph_from_json(&v).map_err(|e| anyhow!("{spec}: {e}"))
}

fn contraction_json(edge: (usize, usize), k: &Contraction) -> Value {
    let (or, s) = k.graph.orientation_of_items(&k.items);
    json!({
        "edge": [edge.0, edge.1],
        "kind": format!("{:?}", k.kind),
        "sign": k.sign * s,
        "graph": graph_to_json(&k.graph, Some(&or)),
        "type": k.graph.surface_type().ok(),
    })
}

fn graphs_enum(
    g: Option<u32>,
    n: Option<u32>,
    edges: usize,
    ordinary: bool,
    trivalent: bool,
    odd_cycles: bool,
    max_gamma: u32,
) -> Result<Outcome> {
    let opts = EnumOptions {
        ordinary,
        odd_cycles_only: odd_cycles,
        max_total_gamma: if ordinary { None } else { Some(max_gamma) },
    };
    let found = match (g, n) {
        (Some(g), Some(n)) => enumerate(g, n, edges, &opts),
        (None, None) => enumerate_by_edges(edges, &opts),
        _ => bail!("give both --g and --n or neither"),
    };
    let list: Vec<Value> = found
        .iter()
        .filter(|c| !trivalent || c.graph().cycles.iter().all(|cy| cy.len() == 3))
        .map(|c| {
            json!({
                "graph": graph_to_json(c.graph(), None),
                "type": [c.surface_type.0, c.surface_type.1],
                "edges": c.graph().num_edges(),
                "autOrder": c.aut_order(),
                "orientable": !c.reverses,
            })
        })
        .collect();
    Ok(Outcome::new(json!({"count": list.len(), "classes": list}), true))
}

fn graphs_contract(spec: &str, edge: Option<usize>, ordinary: bool) -> Result<Outcome> {
    let (g, or) = load_graph(spec)?;
    let items = g.items(&or);
    let contractions: Vec<Value> = match edge {
        Some(f) => {
            if f >= g.num_flags() {
                bail!("flag {f} out of range");
            }
            let pair = (f.min(g.eta[f]), f.max(g.eta[f]));
            match contract_edge(&g, &items, pair.0, ordinary).map_err(|e| anyhow!("{e}"))? {
                Some(k) => vec![contraction_json(pair, &k)],
                None => vec![],
            }
        }
        None => boundary_labeled(&g, &items, ordinary).iter().map(|(e, k)| contraction_json(*e, k)).collect(),
    };
    let diff: Vec<Value> =
        differential(&g, &items, ordinary).into_iter().map(|(code, c)| json!({"class": code, "coefficient": c})).collect();
    let report = json!({
        "graph": graph_to_json(&g, Some(&or)),
        "type": g.surface_type().ok(),
        "contractions": contractions,
        "differential": diff,
    });
    Ok(Outcome::new(report, true))
}

fn weights_z(graph: Option<&str>, max_edges: Option<usize>, max_gamma: u32, alg: &AlgebraArgs) -> Result<Outcome> {
    let ops = alg.load_or_e()?;
    let th = Theory::new(&ops);
    if let Some(spec) = graph {
        let (g, or) = load_graph(spec)?;
        let items = g.items(&or);
        let zhat = match th.zhat(&g, &items) {
            Ok(v) => rational_to_json(&v),
            Err(e) => json!({"error": e.to_string()}),
        };
        let report = json!({
            "graph": graph_to_json(&g, Some(&or)),
            "orientation": orientation_to_json(&g, &or),
            "Z": rational_to_json(&th.z(&g, &items)),
            "Zhat": zhat,
        });
        return Ok(Outcome::new(report, true));
    }
    let max_edges = max_edges.ok_or_else(|| anyhow!("give --graph or --max-edges"))?;
    if !th.engine.trace_condition() {
        bail!("the trace condition fails, so Ẑ is undefined for this algebra");
    }
    let cs = suites::classes(max_edges, &suites::stable(max_gamma));
    let c = cochain(&cs, |h, it| th.zhat(h, it).expect("trace condition checked"));
    Ok(Outcome::new(json!({"cochain": c.to_json()}), true))
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let ops = || args.algebra.load_or_e();
    match args.suite.as_str() {
        "d-squared" => Ok(suites::d_squared(args.max_edges, args.max_gamma)),
        "cocycle" => suites::cocycle(&ops()?, args.max_edges, args.max_gamma),
        "loop-defect" => Ok(suites::loop_defect(&ops()?, args.max_edges)),
        "coboundary" => suites::coboundary(&ops()?, args.max_edges, args.max_gamma),
        "counterexample" => Ok(suites::counterexample()),
        other => bail!("unknown suite {other:?}; expected one of {}", suites::SUITES.join(", ")),
    }
}

fn psi_check(g: u32, n: u32, d: Option<u32>, lambda: Option<&str>) -> Result<Outcome> {
    let top = psi::top_degree(g, n);
    let d = match d {
        Some(d) => d,
        None if top >= 0 => top as u32,
        None => bail!("type ({g}, {n}) is unstable"),
    };
    let point = lambda.map(algebra::parse_lambda).transpose()?;
    if let Some(p) = &point {
        if p.len() != n as usize {
            bail!("--lambda has {} entries, expected {n}", p.len());
        }
    }
    let mut table = WkTable::new();
    let lhs = psi::psi_lhs(&mut table, g, n, d)?;
    let rhs = psi::psi_rhs(g, n, d)?;
    let check = PsiCheck { g, n, d, lhs, rhs };
    Ok(Outcome::new(check.to_json(point.as_deref()), check.matches()))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Algebra { cmd: AlgebraCmd::Check(a) } => {
            let ops = algebra::load(a.builtin.as_deref(), a.n, a.lambda.as_deref(), a.json.as_deref())?;
            let (report, ok) = algebra::check(&ops);
            Ok(Outcome::new(report, ok))
        }
        Command::Graphs { cmd: GraphsCmd::Enum { g, n, edges, ordinary, trivalent, odd_cycles, max_gamma } } => {
            graphs_enum(*g, *n, *edges, *ordinary, *trivalent, *odd_cycles, *max_gamma)
        }
        Command::Graphs { cmd: GraphsCmd::Contract { graph, edge, ordinary } } => {
            graphs_contract(graph, *edge, *ordinary)
        }
        Command::Weights { cmd: WeightsCmd::Z { graph, max_edges, max_gamma, algebra } } => {
            weights_z(graph.as_deref(), *max_edges, *max_gamma, algebra)
        }
        Command::Verify(args) => verify(args),
        Command::Psi { cmd: PsiCmd::Check { g, n, d, lambda } } => psi_check(*g, *n, *d, lambda.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = render(&outcome.report);
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

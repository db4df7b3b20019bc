//! Command-line front end. `run` takes the argument list and output sinks
//! and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::construct::{construct, full_trace, Phase};
use crate::cores::{bc_subtree_core, center, centroid, compare_middle_parts, subtree_core, CoreReport};
use crate::count::{SubtreeCounter, DEFAULT_ENUMERATION_CAP};
use crate::error::Error;
use crate::generate::{all_free_trees_capped, DEFAULT_GENERATION_CAP};
use crate::tree::{parse_edge_list_labeled, LabeledTree, Tree};
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;

#[derive(Debug, Parser)]
#[command(name = "bctree", version, about = "BC-tree construction, BC-subtree counting and core location")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a BC-tree with a given order and number of leaves.
    Construct(ConstructArgs),
    /// Count subtrees, BC-subtrees and leaf-containing BC-subtrees.
    Count(CountArgs),
    /// Locate the BC-subtree-core, subtree-core, center or centroid.
    Core(CoreArgs),
    /// Run the exhaustive verification suites.
    Verify(VerifyArgs),
    /// List every free tree of an order as blank-line separated edge lists.
    EnumerateTrees(EnumerateArgs),
}

#[derive(Debug, clap::Args)]
struct ConstructArgs {
    #[arg(long)]
    order: usize,
    #[arg(long)]
    leaves: usize,
    /// Print every stage of both constructions.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
    /// Also write the tree in graphviz format to this file.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountChoice {
    Subtrees,
    Bc,
    LeafBc,
    All,
}

#[derive(Debug, clap::Args)]
struct CountArgs {
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    metric: CountChoice,
    /// Also report per-vertex counts, in vertex order.
    #[arg(long)]
    per_vertex: bool,
    /// Largest tree order the subtree enumeration accepts.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoreChoice {
    Bc,
    Subtree,
    Center,
    Centroid,
    Compare,
}

#[derive(Debug, clap::Args)]
struct CoreArgs {
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "bc")]
    metric: CoreChoice,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteChoice {
    All,
    Formulas,
    Extremal,
    Construction,
    Cores,
    Figures,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 10)]
    max_order: usize,
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteChoice,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[arg(long, default_value_t = DEFAULT_GENERATION_CAP)]
    generation_cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, clap::Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    #[arg(long, default_value_t = DEFAULT_GENERATION_CAP)]
    cap: usize,
    #[arg(long)]
    json: bool,
}

/// A failure carrying the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_INPUT,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(&a, out),
        Command::Count(a) => cmd_count(&a, out),
        Command::Core(a) => cmd_core(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::EnumerateTrees(a) => cmd_enumerate_trees(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    // Round-trip through `Value` so object keys come out sorted.
    let value = serde_json::to_value(value).expect("report types serialize");
    writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("values serialize"))
}

fn edge_pairs(t: &Tree) -> Vec<[usize; 2]> {
    t.edges().map(|(u, v)| [u, v]).collect()
}

fn write_dot(path: &Option<PathBuf>, t: &Tree) -> Result<(), Failure> {
    if let Some(path) = path {
        fs::write(path, t.to_dot())?;
    }
    Ok(())
}

fn read_tree(path: &Path) -> Result<LabeledTree, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_edge_list_labeled(&text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write) -> CmdResult {
    let tree = match construct(a.order, a.leaves) {
        Ok(t) => t,
        Err(Error::Infeasible(verdict)) => {
            if a.json {
                print_json(out, &verdict)?;
            } else {
                writeln!(out, "infeasible: {}", verdict.reason)?;
            }
            return Ok(EXIT_INFEASIBLE);
        }
        Err(e) => return Err(e.into()),
    };
    let traces = if a.trace { full_trace(a.order)? } else { Vec::new() };
    if a.json {
        let stages: Vec<_> = traces
            .iter()
            .flat_map(|trace| {
                trace.stages.iter().map(move |s| {
                    json!({
                        "phase": trace.phase,
                        "leaf_count": s.leaf_count,
                        "edges": edge_pairs(&s.tree),
                    })
                })
            })
            .collect();
        let mut report = json!({
            "order": a.order,
            "leaves": a.leaves,
            "edges": edge_pairs(&tree),
        });
        if a.trace {
            report["trace"] = json!(stages);
        }
        print_json(out, &report)?;
    } else {
        for trace in &traces {
            let phase = match trace.phase {
                Phase::Algorithm1 => "algorithm1",
                Phase::Algorithm2 => "algorithm2",
            };
            for (i, stage) in trace.stages.iter().enumerate() {
                writeln!(out, "# {phase} stage {}: {} leaves", i + 1, stage.leaf_count)?;
                write!(out, "{}", stage.tree.to_edge_list())?;
                writeln!(out)?;
            }
        }
        if a.trace {
            writeln!(out, "# result: order {}, {} leaves", a.order, a.leaves)?;
        }
        write!(out, "{}", tree.to_edge_list())?;
    }
    write_dot(&a.dot, &tree)?;
    Ok(EXIT_OK)
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> CmdResult {
    let counter = SubtreeCounter::with_cap(a.cap)?;
    let input = read_tree(&a.input)?;
    let t = &input.tree;
    let p = counter.profile(t)?;
    let want = |m: CountChoice| a.metric == m || a.metric == CountChoice::All;

    if a.json {
        let mut report = serde_json::Map::new();
        report.insert("order".into(), json!(p.order));
        report.insert("labels".into(), json!(input.labels));
        if want(CountChoice::Subtrees) {
            report.insert("subtrees".into(), json!(p.total_subtrees));
        }
        if want(CountChoice::Bc) {
            report.insert("bc".into(), json!(p.total_bc));
        }
        if want(CountChoice::LeafBc) {
            report.insert("leaf_bc".into(), json!(p.total_leaf_bc));
        }
        if a.per_vertex {
            let mut per_vertex = serde_json::Map::new();
            if want(CountChoice::Subtrees) {
                per_vertex.insert("subtrees".into(), json!(p.per_vertex_subtrees));
            }
            if want(CountChoice::Bc) {
                per_vertex.insert("bc".into(), json!(p.per_vertex_bc));
            }
            report.insert("per_vertex".into(), serde_json::Value::Object(per_vertex));
        }
        print_json(out, &report)?;
    } else {
        if want(CountChoice::Subtrees) {
            writeln!(out, "subtrees: {}", p.total_subtrees)?;
        }
        if want(CountChoice::Bc) {
            writeln!(out, "bc: {}", p.total_bc)?;
        }
        if want(CountChoice::LeafBc) {
            writeln!(out, "leaf-bc: {}", p.total_leaf_bc)?;
        }
        if a.per_vertex {
            let labels: Vec<String> = input.labels.iter().map(i64::to_string).collect();
            writeln!(out, "vertices: {}", labels.join(" "))?;
            if want(CountChoice::Subtrees) {
                writeln!(out, "subtrees per vertex: {}", join(&p.per_vertex_subtrees))?;
            }
            if want(CountChoice::Bc) {
                writeln!(out, "bc per vertex: {}", join(&p.per_vertex_bc))?;
            }
        }
    }
    write_dot(&a.dot, t)?;
    Ok(EXIT_OK)
}

/// A core report with vertex ids replaced by input labels.
#[derive(Serialize)]
struct LabeledCore {
    metric: &'static str,
    vertices: Vec<i64>,
    extreme_value: u64,
    max_pairwise_distance: usize,
    adjacent_only: bool,
}

impl LabeledCore {
    fn new(input: &LabeledTree, report: &CoreReport) -> Self {
        LabeledCore {
            metric: report.metric.name(),
            vertices: report.argmax_set.iter().map(|&v| input.label(v)).collect(),
            extreme_value: report.extreme_value,
            max_pairwise_distance: report.max_pairwise_distance,
            adjacent_only: report.adjacent_only,
        }
    }

    fn write_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let vertices: Vec<String> = self.vertices.iter().map(i64::to_string).collect();
        writeln!(out, "{}: {{{}}}", self.metric, vertices.join(", "))?;
        writeln!(out, "  value: {}", self.extreme_value)?;
        writeln!(out, "  max pairwise distance: {}", self.max_pairwise_distance)?;
        writeln!(out, "  adjacent only: {}", self.adjacent_only)
    }
}

fn cmd_core(a: &CoreArgs, out: &mut dyn Write) -> CmdResult {
    let counter = SubtreeCounter::with_cap(a.cap)?;
    let input = read_tree(&a.input)?;
    let t = &input.tree;
    write_dot(&a.dot, t)?;
    let single = match a.metric {
        CoreChoice::Bc => Some(bc_subtree_core(t, &counter)),
        CoreChoice::Subtree => Some(subtree_core(t, &counter)),
        CoreChoice::Center => Some(center(t)),
        CoreChoice::Centroid => Some(centroid(t)),
        CoreChoice::Compare => None,
    };
    if let Some(result) = single {
        let report = match result {
            Ok(r) => r,
            Err(Error::NoBcSubtree) => {
                if a.json {
                    print_json(out, &json!({ "metric": "bc_subtree_core", "no_bc_subtree": true }))?;
                } else {
                    writeln!(out, "bc_subtree_core: none (no BC-subtree exists)")?;
                }
                return Ok(EXIT_FAILURE);
            }
            Err(e) => return Err(e.into()),
        };
        let labeled = LabeledCore::new(&input, &report);
        if a.json {
            print_json(out, &labeled)?;
        } else {
            labeled.write_text(out)?;
        }
        return Ok(EXIT_OK);
    }

    let cmp = compare_middle_parts(t, &counter)?;
    let parts: Vec<LabeledCore> = [
        Some(&cmp.center),
        Some(&cmp.centroid),
        Some(&cmp.subtree_core),
        cmp.bc_subtree_core.as_ref(),
    ]
    .into_iter()
    .flatten()
    .map(|r| LabeledCore::new(&input, r))
    .collect();
    if a.json {
        let distances: Vec<_> = cmp
            .distances
            .iter()
            .map(|d| json!({ "first": d.first.name(), "second": d.second.name(), "distance": d.distance }))
            .collect();
        print_json(
            out,
            &json!({
                "parts": parts,
                "distances": distances,
                "subtree_core_in_bc_core": cmp.subtree_core_in_bc_core,
            }),
        )?;
    } else {
        for part in &parts {
            part.write_text(out)?;
        }
        if cmp.bc_subtree_core.is_none() {
            writeln!(out, "bc_subtree_core: none (no BC-subtree exists)")?;
        }
        for d in &cmp.distances {
            writeln!(out, "distance {} - {}: {}", d.first.name(), d.second.name(), d.distance)?;
        }
        match cmp.subtree_core_in_bc_core {
            Some(inside) => writeln!(out, "subtree_core subset of bc_subtree_core: {inside}")?,
            None => writeln!(out, "subtree_core subset of bc_subtree_core: n/a")?,
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let options = VerifyOptions {
        max_order: a.max_order,
        generation_cap: a.generation_cap,
        counter: SubtreeCounter::with_cap(a.cap)?,
    };
    let suites: Vec<Suite> = match a.suite {
        SuiteChoice::All => Suite::ALL.to_vec(),
        SuiteChoice::Formulas => vec![Suite::Formulas],
        SuiteChoice::Extremal => vec![Suite::Extremal],
        SuiteChoice::Construction => vec![Suite::Construction],
        SuiteChoice::Cores => vec![Suite::Cores],
        SuiteChoice::Figures => vec![Suite::Figures],
    };
    let report = verify::run(&suites, &options)?;
    if a.json {
        print_json(out, &report)?;
    } else {
        write!(out, "{}", report.render_text())?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_enumerate_trees(a: &EnumerateArgs, out: &mut dyn Write) -> CmdResult {
    let trees = all_free_trees_capped(a.order, a.cap)?;
    if a.json {
        let all: Vec<_> = trees.map(|t| edge_pairs(&t)).collect();
        print_json(out, &json!({ "order": a.order, "trees": all }))?;
    } else {
        for (i, t) in trees.enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{}", t.to_edge_list())?;
        }
    }
    Ok(EXIT_OK)
}

//! Command-line front end. Exit codes: 0 success or premise holds, 1 negative
//! verdict, 2 usage, parse, or precondition error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::campaign::{iff_check, run_campaign, CampaignConfig, CampaignMode};
use crate::certify::{certify_with_witness, check_forest_condition, Certificate, MAX_EXHAUSTIVE_COLORS};
use crate::construct::build_forest;
use crate::format::{parse_budget, parse_budget_palette, parse_graph, write_graph};
use crate::graph::{ColorBudget, ColorSet, EdgeColoredGraph, Palette};
use crate::oracle::{FamilyMode, InstanceFamily};
use crate::theorems::{
    check_bh_prefix, check_bh_subset, check_main_premise, check_su10_2_5, lemma_bound, make_sharpness_instance,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "fchroma", version, about = "f-chromatic spanning forests in edge-colored graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a forest with exactly w components exists.
    Check(CheckArgs),
    /// Build a forest with exactly w components.
    Construct(ForestArgs),
    /// Check the premise of a sufficient condition, or print the bipartite edge bound.
    Theorem(TheoremArgs),
    /// Generate a complete bipartite instance sitting exactly on the threshold.
    Sharpness(SharpnessArgs),
    /// Run a verification campaign.
    Campaign(CampaignArgs),
    /// Compare the decision procedure and builder against exhaustive search.
    OracleCompare(ForestArgs),
}

#[derive(Debug, Args)]
pub struct ForestArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Caps per color; every color gets cap 1 when omitted.
    #[arg(long)]
    pub budget: Option<PathBuf>,
    #[arg(short = 'w')]
    pub w: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub machine: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub forest: ForestArgs,
    /// Attach a witness forest when satisfied.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TheoremVariant {
    Main,
    BhPrefix,
    BhSubset,
    Su25,
    Lemma,
}

#[derive(Debug, Args)]
pub struct TheoremArgs {
    pub variant: TheoremVariant,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub budget: Option<PathBuf>,
    #[arg(short = 'w')]
    pub w: Option<usize>,
    /// Vertex count N (lemma).
    #[arg(short = 'n')]
    pub order: Option<usize>,
    /// Component count s (lemma).
    #[arg(short = 's')]
    pub components: Option<usize>,
    #[arg(long)]
    pub machine: bool,
}

#[derive(Debug, Args)]
pub struct SharpnessArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'm')]
    pub m: usize,
    #[arg(short = 'w')]
    pub w: usize,
    /// Caps per color; defines the color set.
    #[arg(long, conflicts_with = "num_colors")]
    pub budget: Option<PathBuf>,
    /// Without a budget file: colors c1..cK, each with cap 1.
    #[arg(long)]
    pub num_colors: Option<usize>,
    /// The subset R, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub colors: Vec<String>,
    /// Where to write the generated graph; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CampaignModeArg {
    IffAgreement,
    MainTheorem,
    Bh,
    Su25,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    pub mode: CampaignModeArg,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// iff-agreement only: enumerate every instance within the bounds.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 8)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 4)]
    pub max_colors: usize,
    #[arg(long, default_value_t = 3)]
    pub max_cap: usize,
    #[arg(long, default_value_t = 4)]
    pub max_w: usize,
    /// Print only the summary.
    #[arg(long)]
    pub quiet: bool,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Check(args) => cmd_check(&args, out),
        Command::Construct(args) => cmd_construct(&args, out),
        Command::Theorem(args) => cmd_theorem(&args, out),
        Command::Sharpness(args) => cmd_sharpness(&args, out),
        Command::Campaign(args) => cmd_campaign(&args, out),
        Command::OracleCompare(args) => cmd_oracle_compare(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<EdgeColoredGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_budget(path: Option<&Path>, graph: &EdgeColoredGraph) -> Result<ColorBudget, Failure> {
    match path {
        Some(path) => parse_budget(&read(path)?, graph.palette()).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => Ok(ColorBudget::uniform(graph.color_count(), 1)),
    }
}

fn edge_lines(graph: &EdgeColoredGraph, ids: &[usize]) -> String {
    let mut s = String::new();
    for &id in ids {
        let e = graph.edge(id);
        let _ = writeln!(s, "edge {} {} {}", e.u, e.v, graph.palette().name(e.color));
    }
    s
}

/// Human rendering; a violation is shown with both sides recomputed from
/// the graph.
fn describe_certificate(certificate: &Certificate, graph: &EdgeColoredGraph, budget: &ColorBudget, w: usize) -> String {
    match certificate {
        Certificate::Satisfied { witness } => {
            let mut s = "satisfied\n".to_owned();
            if let Some(ids) = witness {
                s += &edge_lines(graph, ids);
            }
            s
        }
        Certificate::Violated(v) => {
            let palette = graph.palette();
            let omega = graph
                .remove_colors(&v.colors)
                .map(|g| g.component_count())
                .unwrap_or(v.omega);
            let caps: Vec<String> = v.colors.iter().map(|&c| budget.cap(c).to_string()).collect();
            let sum = budget.sum_over(&v.colors);
            format!(
                "violated\nviolating colors: {}\nomega(G - E_R) = {omega}\nbound = w + sum f(R) = {w} + ({}) = {}\n{omega} > {}\n",
                palette.describe(&v.colors),
                if caps.is_empty() { "0".to_owned() } else { caps.join(" + ") },
                w + sum,
                w + sum
            )
        }
    }
}

fn emit_certificate(
    out: &mut dyn Write,
    machine: bool,
    certificate: &Certificate,
    graph: &EdgeColoredGraph,
    budget: &ColorBudget,
    w: usize,
) -> Result<(), Failure> {
    if machine {
        writeln!(out, "{}", serde_json::to_string(&certificate.report(graph))?)?;
    } else {
        write!(out, "{}", describe_certificate(certificate, graph, budget, w))?;
    }
    Ok(())
}

fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Outcome {
    let a = &args.forest;
    let graph = load_graph(&a.graph)?;
    let budget = load_budget(a.budget.as_deref(), &graph)?;
    let certificate = if args.witness {
        certify_with_witness(&graph, &budget, a.w)?
    } else {
        check_forest_condition(&graph, &budget, a.w)?
    };
    emit_certificate(out, a.machine, &certificate, &graph, &budget, a.w)?;
    Ok(if certificate.is_satisfied() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_construct(a: &ForestArgs, out: &mut dyn Write) -> Outcome {
    let graph = load_graph(&a.graph)?;
    let budget = load_budget(a.budget.as_deref(), &graph)?;
    match build_forest(&graph, &budget, a.w)? {
        Some(forest) => {
            if a.machine {
                let edges: Vec<_> = forest
                    .edges()
                    .map(|e| json!([e.u, e.v, graph.palette().name(e.color)]))
                    .collect();
                writeln!(out, "{}", json!({"found": true, "edges": edges}))?;
            } else {
                write!(out, "{}", edge_lines(&graph, forest.edge_ids()))?;
            }
            Ok(EXIT_OK)
        }
        None => {
            if graph.color_count() <= MAX_EXHAUSTIVE_COLORS {
                let certificate = check_forest_condition(&graph, &budget, a.w)?;
                if a.machine {
                    let report = serde_json::to_value(certificate.report(&graph))?;
                    writeln!(out, "{}", json!({"found": false, "certificate": report}))?;
                } else {
                    writeln!(out, "no forest")?;
                    write!(out, "{}", describe_certificate(&certificate, &graph, &budget, a.w))?;
                }
            } else if a.machine {
                writeln!(out, "{}", json!({"found": false}))?;
            } else {
                writeln!(out, "no forest")?;
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn require<T: Copy>(value: Option<T>, what: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure(format!("this theorem variant needs {what}")))
}

fn cmd_theorem(a: &TheoremArgs, out: &mut dyn Write) -> Outcome {
    if let TheoremVariant::Lemma = a.variant {
        let bound = lemma_bound(require(a.order, "-n N")?, require(a.components, "-s S")?)?;
        if a.machine {
            writeln!(
                out,
                "{}",
                json!({"bound": bound.bound(), "bound_quarters": bound.bound_quarters, "exact_max": bound.exact_max})
            )?;
        } else {
            writeln!(out, "{bound}")?;
        }
        return Ok(EXIT_OK);
    }
    let path = a
        .graph
        .as_deref()
        .ok_or_else(|| Failure("this theorem variant needs --graph".into()))?;
    let graph = load_graph(path)?;
    let report = match a.variant {
        TheoremVariant::Main => {
            let budget = load_budget(a.budget.as_deref(), &graph)?;
            check_main_premise(&graph, &budget, require(a.w, "-w")?)?
        }
        TheoremVariant::BhPrefix => check_bh_prefix(&graph)?,
        TheoremVariant::BhSubset => check_bh_subset(&graph)?,
        TheoremVariant::Su25 => {
            let budget = load_budget(a.budget.as_deref(), &graph)?;
            check_su10_2_5(&graph, &budget, require(a.w, "-w")?)?
        }
        TheoremVariant::Lemma => unreachable!("handled above"),
    };
    if a.machine {
        writeln!(
            out,
            "{}",
            json!({"verdict": if report.holds() { "holds" } else { "fails" }, "detail": report.describe(graph.palette())})
        )?;
    } else {
        writeln!(out, "{}", report.describe(graph.palette()))?;
    }
    Ok(if report.holds() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_sharpness(a: &SharpnessArgs, out: &mut dyn Write) -> Outcome {
    let (palette, budget) = match &a.budget {
        Some(path) => parse_budget_palette(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        None => {
            let k = a
                .num_colors
                .ok_or_else(|| Failure("give --budget or --num-colors".into()))?;
            (Palette::numbered(k), ColorBudget::uniform(k, 1))
        }
    };
    let subset: ColorSet = a
        .colors
        .iter()
        .map(|name| {
            palette
                .lookup(name)
                .ok_or_else(|| Failure(format!("color {name:?} is not in the color set")))
        })
        .collect::<Result<_, _>>()?;
    let instance = make_sharpness_instance(a.n, a.m, a.w, &budget, &subset)?;
    let graph = EdgeColoredGraph::new(instance.graph.vertex_count(), palette, instance.graph.edges().to_vec())?;

    let text = write_graph(&graph);
    match &a.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        None => write!(out, "{text}")?,
    }
    let in_r = graph.edges_with_colors(&subset)?.len();
    let certificate = check_forest_condition(&graph, &budget, a.w)?;
    // Report lines are comments so stdout stays a valid graph file.
    writeln!(out, "# p = {}", instance.p)?;
    writeln!(out, "# |E_R| = {in_r}")?;
    writeln!(out, "# p^2/4 = {}", instance.p * instance.p / 4)?;
    match certificate.violation() {
        Some(v) => writeln!(
            out,
            "# verdict: violated at {} (omega {} > bound {})",
            graph.palette().describe(&v.colors),
            v.omega,
            v.bound
        )?,
        None => writeln!(out, "# verdict: satisfied")?,
    }
    Ok(if certificate.is_satisfied() { EXIT_NEGATIVE } else { EXIT_OK })
}

fn cmd_campaign(a: &CampaignArgs, out: &mut dyn Write) -> Outcome {
    let mode = match a.mode {
        CampaignModeArg::IffAgreement => CampaignMode::IffAgreement,
        CampaignModeArg::MainTheorem => CampaignMode::MainTheorem,
        CampaignModeArg::Bh => CampaignMode::Bh,
        CampaignModeArg::Su25 => CampaignMode::Su25,
    };
    let mut config = CampaignConfig::new(mode, a.trials, a.seed);
    config.jobs = a.jobs;
    config.family = InstanceFamily {
        max_vertices: a.max_vertices,
        max_colors: a.max_colors,
        caps: 0..=a.max_cap,
        w: 1..=a.max_w,
        mode: if a.exhaustive {
            FamilyMode::Exhaustive
        } else {
            FamilyMode::Sampled { count: a.trials, seed: a.seed }
        },
    };
    let mut write_error = None;
    let summary = run_campaign(&config, &mut |trial| {
        if !a.quiet && write_error.is_none() {
            if let Err(e) = writeln!(out, "{trial}") {
                write_error = Some(e);
            }
        }
    })?;
    if let Some(e) = write_error {
        return Err(e.into());
    }
    writeln!(out, "mode: {}", mode.name())?;
    writeln!(out, "{summary}")?;
    Ok(if summary.clean() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_oracle_compare(a: &ForestArgs, out: &mut dyn Write) -> Outcome {
    let graph = load_graph(&a.graph)?;
    let budget = load_budget(a.budget.as_deref(), &graph)?;
    let check = iff_check(&graph, &budget, a.w)?;
    let word = |b: bool, yes: &'static str, no: &'static str| if b { yes } else { no };
    if a.machine {
        writeln!(
            out,
            "{}",
            json!({
                "certify": word(check.satisfied, "satisfied", "violated"),
                "oracle": word(check.oracle_found, "found", "none"),
                "builder": word(check.builder_found, "found", "none"),
                "agreement": check.agrees(),
            })
        )?;
    } else {
        writeln!(out, "certify: {}", word(check.satisfied, "satisfied", "violated"))?;
        writeln!(out, "oracle: {}", word(check.oracle_found, "found", "none"))?;
        writeln!(out, "builder: {}", word(check.builder_found, "found", "none"))?;
        writeln!(out, "agreement: {}", word(check.agrees(), "yes", "no"))?;
    }
    Ok(if check.agrees() { EXIT_OK } else { EXIT_NEGATIVE })
}

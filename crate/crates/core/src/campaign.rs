//! Randomized and exhaustive verification campaigns.
//!
//! Each trial is independent and seeded on its own, so any reported line can
//! be replayed alone. Trials run in parallel chunks; records reach the sink
//! in trial order regardless.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::certify::{check_forest_condition, check_heterochromatic_tree, CheckError};
use crate::construct::build_forest;
use crate::graph::{ColorBudget, ColorId, Edge, EdgeColoredGraph, Palette};
use crate::oracle::{brute_force_forest, FamilyMode, Instance, InstanceFamily, OracleError};
use crate::theorems::{
    check_bh_prefix, check_bh_subset, check_main_premise, check_su10_2_5, random_bipartite_coloring_with,
    ColorDistribution, TheoremError,
};

const CHUNK: usize = 4096;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CampaignMode {
    /// Decision procedure vs exhaustive search vs builder.
    IffAgreement,
    /// Complete bipartite premise implies a forest.
    MainTheorem,
    /// Prefix and subset forms agree, and imply a rainbow spanning tree.
    Bh,
    /// General-graph premise implies a forest.
    Su25,
}

impl CampaignMode {
    pub fn name(self) -> &'static str {
        match self {
            CampaignMode::IffAgreement => "iff-agreement",
            CampaignMode::MainTheorem => "main-theorem",
            CampaignMode::Bh => "bh",
            CampaignMode::Su25 => "su25",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub mode: CampaignMode,
    pub trials: usize,
    pub seed: u64,
    /// Instance family for `IffAgreement`; ignored by the other modes.
    pub family: InstanceFamily,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

impl CampaignConfig {
    pub fn new(mode: CampaignMode, trials: usize, seed: u64) -> Self {
        Self {
            mode,
            trials,
            seed,
            family: InstanceFamily {
                max_vertices: 8,
                max_colors: 4,
                caps: 0..=3,
                w: 1..=4,
                mode: FamilyMode::Sampled { count: trials, seed },
            },
            jobs: None,
        }
    }
}

/// One line of campaign output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub index: usize,
    /// Per-trial seed; `None` for enumerated instances.
    pub seed: Option<u64>,
    pub n: usize,
    /// Second part size for bipartite modes.
    pub m: Option<usize>,
    pub w: usize,
    /// `holds`/`fails` for premise modes, `satisfied`/`violated` for the
    /// decision procedure.
    pub premise: &'static str,
    pub premise_positive: bool,
    pub forest_found: bool,
    /// Premise holds but no forest exists.
    pub counterexample: bool,
    pub agreement: bool,
}

impl fmt::Display for Trial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or("-".to_owned(), |s| s.to_string());
        let m = self.m.map_or("-".to_owned(), |m| m.to_string());
        write!(
            f,
            "{seed}\t{}\t{m}\t{}\t{}\t{}\t{}",
            self.n,
            self.w,
            self.premise,
            if self.forest_found { "found" } else { "none" },
            if self.agreement { "agree" } else { "DISAGREE" }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub trials: usize,
    pub premise_positive: usize,
    pub forests_found: usize,
    pub disagreements: usize,
    pub counterexamples: usize,
}

impl Summary {
    fn add(&mut self, t: &Trial) {
        self.trials += 1;
        self.premise_positive += t.premise_positive as usize;
        self.forests_found += t.forest_found as usize;
        self.disagreements += !t.agreement as usize;
        self.counterexamples += t.counterexample as usize;
    }

    pub fn clean(&self) -> bool {
        self.disagreements == 0 && self.counterexamples == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trials: {}\tpremise-positive: {}\tforests: {}\ndisagreements: {}\ncounterexamples: {}",
            self.trials, self.premise_positive, self.forests_found, self.disagreements, self.counterexamples
        )
    }
}

/// Seed of trial `index`: splitmix64 of `seed + index`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Everything the iff-agreement campaign compares on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IffCheck {
    pub satisfied: bool,
    pub oracle_found: bool,
    pub builder_found: bool,
    /// Builder output passes forest validation (vacuously true when absent).
    pub builder_valid: bool,
    /// A violation recomputes to `omega > bound` (vacuously true when absent).
    pub violation_rechecks: bool,
}

impl IffCheck {
    pub fn agrees(&self) -> bool {
        self.satisfied == self.oracle_found
            && self.builder_found == self.satisfied
            && self.builder_valid
            && self.violation_rechecks
    }
}

pub fn iff_check(graph: &EdgeColoredGraph, budget: &ColorBudget, w: usize) -> Result<IffCheck, CampaignError> {
    let certificate = check_forest_condition(graph, budget, w)?;
    let oracle_found = brute_force_forest(graph, budget, w)?.is_some();
    let built = build_forest(graph, budget, w)?;
    let builder_valid = match &built {
        Some(forest) => graph
            .validate_spanning_forest(forest.edge_ids(), budget, w)
            .map_err(CheckError::from)?,
        None => true,
    };
    let violation_rechecks = match certificate.violation() {
        Some(v) => v.recheck(graph, budget, w).map_err(CheckError::from)?,
        None => true,
    };
    Ok(IffCheck {
        satisfied: certificate.is_satisfied(),
        oracle_found,
        builder_found: built.is_some(),
        builder_valid,
        violation_rechecks,
    })
}

fn iff_trial(index: usize, seed: Option<u64>, instance: &Instance) -> Result<Trial, CampaignError> {
    let check = iff_check(&instance.graph, &instance.budget, instance.w)?;
    Ok(Trial {
        index,
        seed,
        n: instance.graph.vertex_count(),
        m: None,
        w: instance.w,
        premise: if check.satisfied { "satisfied" } else { "violated" },
        premise_positive: check.satisfied,
        forest_found: check.builder_found,
        counterexample: false,
        agreement: check.agrees(),
    })
}

/// Random caps over `colors` colors summing to exactly `total`.
fn random_budget(rng: &mut impl Rng, colors: usize, total: usize) -> ColorBudget {
    let mut caps = vec![0; colors];
    for _ in 0..total {
        caps[rng.gen_range(0..colors)] += 1;
    }
    ColorBudget::from_caps(caps)
}

fn premise_label(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

/// Random `K_{n,m}` (n, m <= 6, at most 8 colors) with a budget whose caps
/// sum to at least `n + m - w`.
pub fn main_theorem_instance(seed: u64) -> Result<(EdgeColoredGraph, ColorBudget, usize), TheoremError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=6);
    let colors = rng.gen_range(1..=8usize.min(n * m));
    let w = rng.gen_range(1..=n + m);
    let slack = rng.gen_range(0..=2);
    let budget = random_budget(&mut rng, colors, n + m - w + slack);
    let distribution = if rng.gen_bool(0.5) {
        ColorDistribution::Uniform
    } else {
        ColorDistribution::Weighted(budget.caps().iter().map(|&c| c as f64 + 0.25).collect())
    };
    let graph = random_bipartite_coloring_with(n, m, &Palette::numbered(colors), &mut rng, &distribution)?;
    Ok((graph, budget, w))
}

fn main_theorem_trial(index: usize, seed: u64) -> Result<Trial, CampaignError> {
    let (graph, budget, w) = main_theorem_instance(seed)?;
    let holds = check_main_premise(&graph, &budget, w)?.holds();
    let found = build_forest(&graph, &budget, w)?.is_some();
    let satisfied = check_forest_condition(&graph, &budget, w)?.is_satisfied();
    let spec = crate::theorems::BipartiteSpec::of(&graph)?;
    Ok(Trial {
        index,
        seed: Some(seed),
        n: spec.n,
        m: Some(spec.m),
        w,
        premise: premise_label(holds),
        premise_positive: holds,
        forest_found: found,
        counterexample: holds && !found,
        agreement: found == satisfied,
    })
}

/// Random `K_{n,n}` (n <= 5) with `2n - 1` colors, each used at least once.
pub fn bh_instance(seed: u64) -> EdgeColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=5);
    let colors = 2 * n - 1;
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, n + b))).collect();
    pairs.shuffle(&mut rng);
    // Skewed weights make the premise fail a fair share of the time.
    let weights: Vec<f64> = (0..colors).map(|_| rng.gen::<f64>().powi(3) + 0.01).collect();
    let total: f64 = weights.iter().sum();
    let mut edges: Vec<Edge> = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let c = if i < colors {
                i
            } else {
                let mut x = rng.gen::<f64>() * total;
                weights
                    .iter()
                    .position(|&wt| {
                        x -= wt;
                        x < 0.0
                    })
                    .unwrap_or(colors - 1)
            };
            Edge::new(a, b, ColorId::from_index(c))
        })
        .collect();
    edges.sort_by_key(|e| (e.u, e.v));
    EdgeColoredGraph::new(2 * n, Palette::numbered(colors), edges).expect("K_{n,n} is simple")
}

fn bh_trial(index: usize, seed: u64) -> Result<Trial, CampaignError> {
    let graph = bh_instance(seed);
    let prefix = check_bh_prefix(&graph)?.holds();
    let subset = check_bh_subset(&graph)?.holds();
    let satisfied = check_heterochromatic_tree(&graph)?.is_satisfied();
    let found = build_forest(&graph, &ColorBudget::uniform(graph.color_count(), 1), 1)?.is_some();
    let n = graph.vertex_count() / 2;
    Ok(Trial {
        index,
        seed: Some(seed),
        n,
        m: Some(n),
        w: 1,
        premise: premise_label(subset),
        premise_positive: subset,
        forest_found: found,
        counterexample: subset && !satisfied,
        agreement: prefix == subset && found == satisfied,
    })
}

/// Random graph on 2..=8 vertices with up to 4 colors, caps in 0..=3 and
/// `1 <= w <= n - 1`.
pub fn su25_instance(seed: u64) -> (EdgeColoredGraph, ColorBudget, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=8);
    let colors = rng.gen_range(1..=4);
    let density = rng.gen_range(0.3..=1.0);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge::new(u, v, ColorId::from_index(rng.gen_range(0..colors))))
        .collect();
    let graph = EdgeColoredGraph::new(n, Palette::numbered(colors), edges).expect("simple graph");
    let budget = ColorBudget::from_caps((0..colors).map(|_| rng.gen_range(0..=3)).collect());
    let w = rng.gen_range(1..n);
    (graph, budget, w)
}

fn su25_trial(index: usize, seed: u64) -> Result<Trial, CampaignError> {
    let (graph, budget, w) = su25_instance(seed);
    let holds = check_su10_2_5(&graph, &budget, w)?.holds();
    let found = build_forest(&graph, &budget, w)?.is_some();
    let satisfied = check_forest_condition(&graph, &budget, w)?.is_satisfied();
    Ok(Trial {
        index,
        seed: Some(seed),
        n: graph.vertex_count(),
        m: None,
        w,
        premise: premise_label(holds),
        premise_positive: holds,
        forest_found: found,
        counterexample: holds && !found,
        agreement: found == satisfied,
    })
}

fn run_chunked<T, F>(
    pool: Option<&rayon::ThreadPool>,
    items: impl Iterator<Item = T>,
    work: F,
    sink: &mut dyn FnMut(&Trial),
) -> Result<Summary, CampaignError>
where
    T: Send,
    F: Fn(usize, T) -> Result<Trial, CampaignError> + Sync,
{
    let mut summary = Summary::default();
    let mut items = items.enumerate().peekable();
    while items.peek().is_some() {
        let chunk: Vec<(usize, T)> = items.by_ref().take(CHUNK).collect();
        let evaluate = || {
            chunk
                .into_par_iter()
                .map(|(i, item)| work(i, item))
                .collect::<Result<Vec<Trial>, _>>()
        };
        let trials = match pool {
            Some(pool) => pool.install(evaluate)?,
            None => evaluate()?,
        };
        for t in &trials {
            summary.add(t);
            sink(t);
        }
    }
    Ok(summary)
}

/// Runs a campaign, handing every trial to `sink` in trial order.
pub fn run_campaign(config: &CampaignConfig, sink: &mut dyn FnMut(&Trial)) -> Result<Summary, CampaignError> {
    let pool = match config.jobs {
        Some(jobs) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| CampaignError::Pool(e.to_string()))?,
        ),
        None => None,
    };
    let pool = pool.as_ref();
    let seeds = (0..config.trials).map(|i| trial_seed(config.seed, i));
    match config.mode {
        CampaignMode::IffAgreement => match config.family.mode {
            FamilyMode::Exhaustive => {
                let instances = config.family.instances()?;
                run_chunked(pool, instances, |i, inst| iff_trial(i, None, &inst), sink)
            }
            FamilyMode::Sampled { .. } => {
                config.family.validate()?;
                let family = &config.family;
                let sample = |i, seed| {
                    let instance = family.sample(&mut ChaCha8Rng::seed_from_u64(seed));
                    iff_trial(i, Some(seed), &instance)
                };
                run_chunked(pool, seeds, sample, sink)
            }
        },
        CampaignMode::MainTheorem => run_chunked(pool, seeds, main_theorem_trial, sink),
        CampaignMode::Bh => run_chunked(pool, seeds, bh_trial, sink),
        CampaignMode::Su25 => run_chunked(pool, seeds, su25_trial, sink),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_clean() {
        for mode in [CampaignMode::MainTheorem, CampaignMode::Bh, CampaignMode::Su25, CampaignMode::IffAgreement] {
            let summary = run_campaign(&CampaignConfig::new(mode, 0, 1), &mut |_| {}).unwrap();
            assert_eq!(summary, Summary::default());
            assert!(summary.clean());
        }
    }

    #[test]
    fn trials_arrive_in_order_and_replay() {
        let mut config = CampaignConfig::new(CampaignMode::Su25, 50, 3);
        config.jobs = Some(2);
        let mut seen = Vec::new();
        let summary = run_campaign(&config, &mut |t| seen.push(t.clone())).unwrap();
        assert_eq!(summary.trials, 50);
        assert!(seen.iter().enumerate().all(|(i, t)| t.index == i));
        let again = su25_trial(7, seen[7].seed.unwrap()).unwrap();
        assert_eq!(again, seen[7]);
    }

    #[test]
    fn bh_instances_use_every_color() {
        for i in 0..100 {
            let g = bh_instance(trial_seed(11, i));
            let n = g.vertex_count() / 2;
            assert_eq!(g.color_count(), 2 * n - 1);
            assert!(g.multiplicities().iter().all(|&k| k >= 1));
        }
    }

    #[test]
    fn main_theorem_budgets_meet_the_edge_count() {
        for i in 0..100 {
            let (g, f, w) = main_theorem_instance(trial_seed(5, i)).unwrap();
            assert!(f.total() >= g.vertex_count() - w);
        }
    }

    #[test]
    fn trial_line_format() {
        let t = Trial {
            index: 0,
            seed: Some(42),
            n: 3,
            m: Some(2),
            w: 1,
            premise: "holds",
            premise_positive: true,
            forest_found: true,
            counterexample: false,
            agreement: true,
        };
        assert_eq!(t.to_string(), "42\t3\t2\t1\tholds\tfound\tagree");
    }
}

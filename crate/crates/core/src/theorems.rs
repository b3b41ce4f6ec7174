//! Sufficient conditions for `f`-chromatic spanning forests, the bipartite
//! edge bound behind them, and the construction showing the complete
//! bipartite threshold is tight.
//!
//! Every threshold `|E_R| > X²/4` is compared as `4·|E_R| > X²` in exact
//! integer arithmetic. `X` may be negative and is squared as is.

use std::fmt;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::certify::{check_color_limit, mask_to_set, subsets_by_size, CheckError};
use crate::graph::{ColorBudget, ColorId, ColorSet, Edge, EdgeColoredGraph, GraphError, Palette};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("not complete bipartite: {0}")]
    NotCompleteBipartite(String),
    #[error("expected a balanced K_{{n,n}}, got K_{{{n},{m}}}")]
    NotBalanced { n: usize, m: usize },
    #[error("expected {expected} colors, found {found}")]
    WrongColorCount { expected: usize, found: usize },
    #[error("color {0} appears on no edge")]
    ZeroMultiplicity(String),
    #[error("caps sum to {sum}, but a forest with w components needs {needed} edges, so none can exist")]
    BudgetTooSmall { sum: usize, needed: usize },
    #[error("component count w={w} is outside {min}..={max}")]
    ComponentsOutOfRange { w: usize, min: usize, max: usize },
    #[error("need 1 <= s <= N, got N={order}, s={components}")]
    LemmaOutOfRange { order: usize, components: usize },
    #[error("p = {0} must be positive")]
    NonPositiveP(i64),
    #[error("p = {0} must be even")]
    OddP(i64),
    #[error("p/2 = {half} exceeds a part of K_{{{n},{m}}}")]
    HalfExceedsPart { half: usize, n: usize, m: usize },
    #[error("the color subset must be non-empty")]
    EmptySubset,
    #[error("the color subset must leave at least one color outside it")]
    FullSubset,
    #[error("part sizes must be positive, got n={n}, m={m}")]
    EmptyPart { n: usize, m: usize },
    #[error("no colors to draw from")]
    EmptyPalette,
    #[error("invalid color weights: {0}")]
    InvalidWeights(String),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Part sizes of a complete bipartite graph `K_{n,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteSpec {
    pub n: usize,
    pub m: usize,
}

impl BipartiteSpec {
    pub fn new(n: usize, m: usize) -> Result<Self, TheoremError> {
        if n == 0 || m == 0 {
            return Err(TheoremError::EmptyPart { n, m });
        }
        Ok(Self { n, m })
    }

    /// Recovers the bipartition of a complete bipartite graph; `n` is the
    /// size of the side holding vertex 0.
    pub fn of(graph: &EdgeColoredGraph) -> Result<Self, TheoremError> {
        let not = |msg: String| Err(TheoremError::NotCompleteBipartite(msg));
        let v = graph.vertex_count();
        if v < 2 {
            return not(format!("{v} vertices"));
        }
        let mut adjacent_to_zero = vec![false; v];
        for e in graph.edges() {
            if e.u == 0 {
                adjacent_to_zero[e.v] = true;
            } else if e.v == 0 {
                adjacent_to_zero[e.u] = true;
            }
        }
        // In K_{n,m}, vertex 0's side is exactly its non-neighbours.
        let side: Vec<bool> = adjacent_to_zero.iter().map(|&a| !a).collect();
        let n = side.iter().filter(|&&s| s).count();
        let m = v - n;
        if m == 0 {
            return not("vertex 0 has no neighbours".into());
        }
        if let Some(e) = graph.edges().iter().find(|e| side[e.u] == side[e.v]) {
            return not(format!("edge {{{}, {}}} lies inside one side", e.u, e.v));
        }
        if graph.edge_count() != n * m {
            return not(format!("{} of the {} cross edges present", graph.edge_count(), n * m));
        }
        Ok(Self { n, m })
    }

    /// Whether `graph` is `K_{n,m}` with parts `[0, n)` and `[n, n+m)`.
    pub fn matches_canonical(&self, graph: &EdgeColoredGraph) -> bool {
        graph.vertex_count() == self.n + self.m
            && graph.edge_count() == self.n * self.m
            && graph
                .edges()
                .iter()
                .all(|e| (e.u < self.n) != (e.v < self.n))
    }

    pub fn order(&self) -> usize {
        self.n + self.m
    }

    /// Cross pairs `(a, n + b)` in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (0..self.m).map(move |b| (a, self.n + b)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PremiseFailure {
    /// `4·edges > x²` fails for this subset.
    Subset { colors: ColorSet, edges: usize, x: i64 },
    /// The `r` smallest multiplicities sum to at most `r²/4`.
    Prefix { r: usize, prefix_sum: usize },
    /// `|E(G)| > C(n-w, 2)` fails.
    EdgeCount { edges: usize, limit: usize },
    /// `g(c)·(n-w) <= |E(G)|·f(c)` fails for this color.
    ColorRatio { color: ColorId, multiplicity: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PremiseReport {
    Holds,
    Fails(PremiseFailure),
}

impl PremiseReport {
    pub fn holds(&self) -> bool {
        matches!(self, PremiseReport::Holds)
    }

    pub fn describe(&self, palette: &Palette) -> String {
        match self {
            PremiseReport::Holds => "holds".into(),
            PremiseReport::Fails(PremiseFailure::Subset { colors, edges, x }) => format!(
                "fails at R = {}: 4*|E_R| = {} <= X^2 = {} (X = {x})",
                palette.describe(colors),
                4 * edges,
                x * x
            ),
            PremiseReport::Fails(PremiseFailure::Prefix { r, prefix_sum }) => format!(
                "fails at r = {r}: 4*prefix = {} <= r^2 = {}",
                4 * prefix_sum,
                r * r
            ),
            PremiseReport::Fails(PremiseFailure::EdgeCount { edges, limit }) => {
                format!("fails: |E| = {edges} is not above C(n-w, 2) = {limit}")
            }
            PremiseReport::Fails(PremiseFailure::ColorRatio { color, multiplicity, cap }) => format!(
                "fails at color {}: multiplicity {multiplicity} against cap {cap}",
                palette.name(*color)
            ),
        }
    }
}

/// `(n+m-w-Σ_{c∉R} f(c))` together with `|E_R|` for a color bitmask.
fn main_premise_terms(mults: &[usize], caps: &[usize], total_cap: usize, order: usize, w: usize, mask: u64) -> (usize, i64) {
    let (mut edges, mut inside) = (0, 0);
    for c in 0..mults.len() {
        if mask >> c & 1 == 1 {
            edges += mults[c];
            inside += caps[c];
        }
    }
    let outside = (total_cap - inside) as i64;
    (edges, order as i64 - w as i64 - outside)
}

fn exceeds_quarter_square(edges: usize, x: i64) -> bool {
    4 * edges as i128 > (x as i128) * (x as i128)
}

fn check_main_inputs(graph: &EdgeColoredGraph, budget: &ColorBudget, w: usize) -> Result<BipartiteSpec, TheoremError> {
    let spec = BipartiteSpec::of(graph)?;
    budget.check_covers(graph)?;
    let order = spec.order();
    if w == 0 || w > order {
        return Err(TheoremError::ComponentsOutOfRange { w, min: 1, max: order });
    }
    if budget.total() < order - w {
        return Err(TheoremError::BudgetTooSmall {
            sum: budget.total(),
            needed: order - w,
        });
    }
    Ok(spec)
}

/// Checks `|E_R(G)| > (n+m-w-Σ_{c∉R} f(c))²/4` for every non-empty `R` on a
/// complete bipartite graph.
pub fn check_main_premise(graph: &EdgeColoredGraph, budget: &ColorBudget, w: usize) -> Result<PremiseReport, TheoremError> {
    let spec = check_main_inputs(graph, budget, w)?;
    check_color_limit(graph)?;
    let mults = graph.multiplicities();
    let total = budget.total();
    for mask in subsets_by_size(graph.color_count()).skip(1) {
        let (edges, x) = main_premise_terms(&mults, budget.caps(), total, spec.order(), w, mask);
        if !exceeds_quarter_square(edges, x) {
            return Ok(PremiseReport::Fails(PremiseFailure::Subset {
                colors: mask_to_set(mask),
                edges,
                x,
            }));
        }
    }
    Ok(PremiseReport::Holds)
}

/// Evaluates the complete bipartite premise at one subset `colors`.
pub fn main_premise_holds_at(
    graph: &EdgeColoredGraph,
    budget: &ColorBudget,
    w: usize,
    colors: &ColorSet,
) -> Result<bool, TheoremError> {
    let spec = BipartiteSpec::of(graph)?;
    budget.check_covers(graph)?;
    let edges = graph.edges_with_colors(colors)?.len();
    let outside: usize = graph.colors().filter(|c| !colors.contains(c)).map(|c| budget.cap(c)).sum();
    let x = spec.order() as i64 - w as i64 - outside as i64;
    Ok(exceeds_quarter_square(edges, x))
}

fn check_balanced_inputs(graph: &EdgeColoredGraph) -> Result<BipartiteSpec, TheoremError> {
    let spec = BipartiteSpec::of(graph)?;
    if spec.n != spec.m {
        return Err(TheoremError::NotBalanced { n: spec.n, m: spec.m });
    }
    let expected = 2 * spec.n - 1;
    if graph.color_count() != expected {
        return Err(TheoremError::WrongColorCount {
            expected,
            found: graph.color_count(),
        });
    }
    if let Some(c) = graph.colors().find(|&c| graph.edges_of_color(c).is_empty()) {
        return Err(TheoremError::ZeroMultiplicity(graph.palette().name(c).to_owned()));
    }
    Ok(spec)
}

/// Sorted-prefix form on `K_{n,n}` with `2n-1` colors: the `r` rarest
/// colors cover more than `r²/4` edges for every `r`.
pub fn check_bh_prefix(graph: &EdgeColoredGraph) -> Result<PremiseReport, TheoremError> {
    check_balanced_inputs(graph)?;
    let mut mults = graph.multiplicities();
    mults.sort_unstable();
    let mut prefix_sum = 0;
    for (i, &e) in mults.iter().enumerate() {
        prefix_sum += e;
        let r = i + 1;
        if !exceeds_quarter_square(prefix_sum, r as i64) {
            return Ok(PremiseReport::Fails(PremiseFailure::Prefix { r, prefix_sum }));
        }
    }
    Ok(PremiseReport::Holds)
}

/// Subset form on `K_{n,n}` with `2n-1` colors: `|E_R| > |R|²/4` for every
/// non-empty `R`.
pub fn check_bh_subset(graph: &EdgeColoredGraph) -> Result<PremiseReport, TheoremError> {
    check_balanced_inputs(graph)?;
    check_color_limit(graph)?;
    let mults = graph.multiplicities();
    for mask in subsets_by_size(graph.color_count()).skip(1) {
        let edges: usize = (0..mults.len()).filter(|c| mask >> c & 1 == 1).map(|c| mults[c]).sum();
        let size = mask.count_ones() as i64;
        if !exceeds_quarter_square(edges, size) {
            return Ok(PremiseReport::Fails(PremiseFailure::Subset {
                colors: mask_to_set(mask),
                edges,
                x: size,
            }));
        }
    }
    Ok(PremiseReport::Holds)
}

/// Premise for general graphs: with `g` the actual multiplicities,
/// `|E(G)| > C(n-w, 2)` and `g(c)·(n-w) <= |E(G)|·f(c)` for every color.
pub fn check_su10_2_5(graph: &EdgeColoredGraph, budget: &ColorBudget, w: usize) -> Result<PremiseReport, TheoremError> {
    let n = graph.vertex_count();
    if w == 0 || w >= n {
        return Err(TheoremError::ComponentsOutOfRange {
            w,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    budget.check_covers(graph)?;
    let edges = graph.edge_count();
    let k = n - w;
    let limit = k * (k - 1) / 2;
    if edges <= limit {
        return Ok(PremiseReport::Fails(PremiseFailure::EdgeCount { edges, limit }));
    }
    for c in graph.colors() {
        let multiplicity = graph.edges_of_color(c).len();
        let cap = budget.cap(c);
        if (multiplicity as u128) * (k as u128) > (edges as u128) * (cap as u128) {
            return Ok(PremiseReport::Fails(PremiseFailure::ColorRatio {
                color: c,
                multiplicity,
                cap,
            }));
        }
    }
    Ok(PremiseReport::Holds)
}

/// Upper bound `(N-(s-1))²/4` on the edges of a bipartite graph of order
/// `N` with `s` components, plus the exact maximum `⌊t/2⌋⌈t/2⌉`,
/// `t = N-s+1`, attained by one balanced complete bipartite component and
/// `s-1` isolated vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaBound {
    pub order: usize,
    pub components: usize,
    /// `4 × bound`, i.e. `(N-s+1)²`.
    pub bound_quarters: u64,
    pub exact_max: u64,
}

impl LemmaBound {
    pub fn bound(&self) -> f64 {
        self.bound_quarters as f64 / 4.0
    }
}

impl fmt::Display for LemmaBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.bound_quarters / 4;
        let frac = match self.bound_quarters % 4 {
            0 => "",
            1 => ".25",
            2 => ".5",
            _ => ".75",
        };
        write!(f, "bound {whole}{frac} exact {}", self.exact_max)
    }
}

pub fn lemma_bound(order: usize, components: usize) -> Result<LemmaBound, TheoremError> {
    if components == 0 || components > order {
        return Err(TheoremError::LemmaOutOfRange { order, components });
    }
    let t = (order - components + 1) as u64;
    Ok(LemmaBound {
        order,
        components,
        bound_quarters: t * t,
        exact_max: (t / 2) * t.div_ceil(2),
    })
}

/// `K_{n,m}` colored so that `|E_R| = p²/4` with `p = n+m-w-Σ_{c∉R} f(c)`:
/// the edges among the first `p/2` vertices of each side use colors of `R`,
/// every other edge uses a color outside `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessInstance {
    pub graph: EdgeColoredGraph,
    pub spec: BipartiteSpec,
    pub colors: ColorSet,
    pub p: usize,
}

impl SharpnessInstance {
    /// Side length of the embedded `K_{p/2,p/2}`.
    pub fn half(&self) -> usize {
        self.p / 2
    }

    pub fn in_core(&self, e: &Edge) -> bool {
        let (a, b) = (e.u.min(e.v), e.u.max(e.v) - self.spec.n);
        a < self.half() && b < self.half()
    }
}

pub fn make_sharpness_instance(
    n: usize,
    m: usize,
    w: usize,
    budget: &ColorBudget,
    colors: &ColorSet,
) -> Result<SharpnessInstance, TheoremError> {
    let spec = BipartiteSpec::new(n, m)?;
    if w == 0 || w > spec.order() {
        return Err(TheoremError::ComponentsOutOfRange { w, min: 1, max: spec.order() });
    }
    let palette = Palette::numbered(budget.len());
    if let Some(&c) = colors.iter().find(|c| !palette.contains(**c)) {
        return Err(GraphError::UnknownColor(c).into());
    }
    if colors.is_empty() {
        return Err(TheoremError::EmptySubset);
    }
    let outside: Vec<ColorId> = palette.ids().filter(|c| !colors.contains(c)).collect();
    if outside.is_empty() {
        return Err(TheoremError::FullSubset);
    }
    let outside_caps: usize = outside.iter().map(|&c| budget.cap(c)).sum();
    let p = spec.order() as i64 - w as i64 - outside_caps as i64;
    if p <= 0 {
        return Err(TheoremError::NonPositiveP(p));
    }
    if p % 2 != 0 {
        return Err(TheoremError::OddP(p));
    }
    let half = (p / 2) as usize;
    if half > n || half > m {
        return Err(TheoremError::HalfExceedsPart { half, n, m });
    }

    let inside: Vec<ColorId> = colors.iter().copied().collect();
    let (mut next_in, mut next_out) = (0, 0);
    let edges = spec
        .pairs()
        .map(|(a, b)| {
            let color = if a < half && b - n < half {
                next_in += 1;
                inside[(next_in - 1) % inside.len()]
            } else {
                next_out += 1;
                outside[(next_out - 1) % outside.len()]
            };
            Edge::new(a, b, color)
        })
        .collect();
    Ok(SharpnessInstance {
        graph: EdgeColoredGraph::new(spec.order(), palette, edges)?,
        spec,
        colors: colors.clone(),
        p: p as usize,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColorDistribution {
    Uniform,
    /// Relative weight per color ordinal.
    Weighted(Vec<f64>),
}

/// `K_{n,m}` in canonical layout, each edge's color drawn independently.
pub fn random_bipartite_coloring(
    n: usize,
    m: usize,
    palette: &Palette,
    seed: u64,
    distribution: &ColorDistribution,
) -> Result<EdgeColoredGraph, TheoremError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_bipartite_coloring_with(n, m, palette, &mut rng, distribution)
}

pub(crate) fn random_bipartite_coloring_with(
    n: usize,
    m: usize,
    palette: &Palette,
    rng: &mut impl Rng,
    distribution: &ColorDistribution,
) -> Result<EdgeColoredGraph, TheoremError> {
    let spec = BipartiteSpec::new(n, m)?;
    if palette.is_empty() {
        return Err(TheoremError::EmptyPalette);
    }
    let weighted = match distribution {
        ColorDistribution::Uniform => None,
        ColorDistribution::Weighted(weights) => {
            if weights.len() != palette.len() {
                return Err(TheoremError::InvalidWeights(format!(
                    "{} weights for {} colors",
                    weights.len(),
                    palette.len()
                )));
            }
            Some(WeightedIndex::new(weights).map_err(|e| TheoremError::InvalidWeights(e.to_string()))?)
        }
    };
    let edges = spec
        .pairs()
        .map(|(a, b)| {
            let c = match &weighted {
                Some(dist) => dist.sample(rng),
                None => rng.gen_range(0..palette.len()),
            };
            Edge::new(a, b, ColorId::from_index(c))
        })
        .collect();
    Ok(EdgeColoredGraph::new(spec.order(), palette.clone(), edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::check_heterochromatic_tree;
    use crate::graph::fixtures::*;

    fn set(ids: &[usize]) -> ColorSet {
        ids.iter().map(|&i| ColorId::from_index(i)).collect()
    }

    /// K_{n,n} whose edges, in row-major order, take the given colors.
    fn knn(n: usize, colors: usize, coloring: &[usize]) -> EdgeColoredGraph {
        let spec = BipartiteSpec::new(n, n).unwrap();
        let edges = spec
            .pairs()
            .zip(coloring)
            .map(|((a, b), &c)| Edge::new(a, b, ColorId::from_index(c)))
            .collect();
        EdgeColoredGraph::new(2 * n, Palette::numbered(colors), edges).unwrap()
    }

    #[test]
    fn lemma_bound_values() {
        let b = lemma_bound(6, 1).unwrap();
        assert_eq!((b.bound(), b.exact_max), (9.0, 9));
        let b = lemma_bound(7, 3).unwrap();
        assert_eq!((b.bound(), b.exact_max), (6.25, 6));
        assert_eq!(b.to_string(), "bound 6.25 exact 6");
        let b = lemma_bound(4, 4).unwrap();
        assert_eq!((b.bound(), b.exact_max), (0.25, 0));
        assert!(lemma_bound(3, 0).is_err());
        assert!(lemma_bound(3, 4).is_err());
    }

    #[test]
    fn recovers_bipartition() {
        let g = k22_heterochromatic();
        assert_eq!(BipartiteSpec::of(&g), Ok(BipartiteSpec { n: 2, m: 2 }));
        let missing = g.remove_colors(&set(&[2])).unwrap();
        assert!(matches!(BipartiteSpec::of(&missing), Err(TheoremError::NotCompleteBipartite(_))));
        let triangle = EdgeColoredGraph::new(
            3,
            Palette::numbered(1),
            vec![Edge::new(0, 1, ColorId(0)), Edge::new(0, 2, ColorId(0)), Edge::new(1, 2, ColorId(0))],
        )
        .unwrap();
        assert!(BipartiteSpec::of(&triangle).is_err());
    }

    #[test]
    fn main_premise_holds_on_small_k22() {
        // (0,2)=c1, (0,3)=c2, (1,2)=c2, (1,3)=c3.
        let g = knn(2, 3, &[0, 1, 1, 2]);
        let f = ColorBudget::uniform(3, 1);
        assert_eq!(check_main_premise(&g, &f, 1), Ok(PremiseReport::Holds));
        assert_eq!(check_bh_subset(&g), Ok(PremiseReport::Holds));
        assert_eq!(check_bh_prefix(&g), Ok(PremiseReport::Holds));
        assert!(check_heterochromatic_tree(&g).unwrap().is_satisfied());
    }

    #[test]
    fn main_premise_requires_budget_sum() {
        let g = knn(2, 3, &[0, 1, 1, 2]);
        let f = ColorBudget::from_caps(vec![1, 1, 0]);
        assert_eq!(
            check_main_premise(&g, &f, 1),
            Err(TheoremError::BudgetTooSmall { sum: 2, needed: 3 })
        );
    }

    #[test]
    fn bh_prefix_fails_at_four() {
        // n = 3, five colors with multiplicities (1,1,1,1,5).
        let g = knn(3, 5, &[0, 1, 2, 3, 4, 4, 4, 4, 4]);
        assert_eq!(
            check_bh_prefix(&g),
            Ok(PremiseReport::Fails(PremiseFailure::Prefix { r: 4, prefix_sum: 4 }))
        );
        match check_bh_subset(&g).unwrap() {
            PremiseReport::Fails(PremiseFailure::Subset { colors, edges, .. }) => {
                assert_eq!(colors, set(&[0, 1, 2, 3]));
                assert_eq!(edges, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bh_preconditions() {
        let g = k22_monochromatic();
        assert!(matches!(check_bh_prefix(&g), Err(TheoremError::WrongColorCount { expected: 3, found: 1 })));
        let g = knn(2, 3, &[0, 0, 0, 0]);
        assert_eq!(check_bh_prefix(&g), Err(TheoremError::ZeroMultiplicity("c2".into())));
        let k11 = knn(1, 1, &[0]);
        assert_eq!(check_bh_subset(&k11), Ok(PremiseReport::Holds));
    }

    fn k4(colors: &[usize], caps: Vec<usize>) -> (EdgeColoredGraph, ColorBudget) {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let edges = pairs
            .iter()
            .zip(colors)
            .map(|(&(u, v), &c)| Edge::new(u, v, ColorId::from_index(c)))
            .collect();
        let g = EdgeColoredGraph::new(4, Palette::numbered(caps.len()), edges).unwrap();
        (g, ColorBudget::from_caps(caps))
    }

    #[test]
    fn general_graph_premise() {
        let (g, f) = k4(&[0, 0, 1, 1, 2, 2], vec![1, 1, 1]);
        assert_eq!(check_su10_2_5(&g, &f, 1), Ok(PremiseReport::Holds));
        let (g, f) = k4(&[0, 0, 1, 1, 2, 2], vec![0, 1, 1]);
        assert_eq!(
            check_su10_2_5(&g, &f, 1),
            Ok(PremiseReport::Fails(PremiseFailure::ColorRatio {
                color: ColorId(0),
                multiplicity: 2,
                cap: 0
            }))
        );
        // Triangle plus isolated vertex: |E| = 3 = C(3, 2).
        let tri = EdgeColoredGraph::new(
            4,
            Palette::numbered(3),
            vec![Edge::new(0, 1, ColorId(0)), Edge::new(0, 2, ColorId(1)), Edge::new(1, 2, ColorId(2))],
        )
        .unwrap();
        assert_eq!(
            check_su10_2_5(&tri, &ColorBudget::uniform(3, 1), 1),
            Ok(PremiseReport::Fails(PremiseFailure::EdgeCount { edges: 3, limit: 3 }))
        );
        assert!(check_su10_2_5(&tri, &ColorBudget::uniform(3, 1), 4).is_err());
    }

    #[test]
    fn sharpness_k22() {
        let f = ColorBudget::uniform(3, 1);
        let inst = make_sharpness_instance(2, 2, 1, &f, &set(&[0, 1])).unwrap();
        assert_eq!(inst.p, 2);
        assert_eq!(inst.half(), 1);
        assert_eq!(inst.graph.edges_with_colors(&inst.colors).unwrap().len(), 1);
        assert_eq!(main_premise_holds_at(&inst.graph, &f, 1, &inst.colors), Ok(false));
        assert!(!check_main_premise(&inst.graph, &f, 1).unwrap().holds());
        for e in inst.graph.edges() {
            assert_eq!(inst.in_core(e), inst.colors.contains(&e.color));
        }
    }

    #[test]
    fn sharpness_k33() {
        let f = ColorBudget::uniform(5, 1);
        // One color outside R: p = 6 - 1 - 1 = 4.
        let inst = make_sharpness_instance(3, 3, 1, &f, &set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(inst.p, 4);
        assert_eq!(inst.graph.edges_with_colors(&inst.colors).unwrap().len(), 4);
    }

    #[test]
    fn sharpness_rejections() {
        let f = ColorBudget::uniform(3, 1);
        assert_eq!(
            make_sharpness_instance(2, 2, 3, &f, &set(&[0, 1])),
            Err(TheoremError::NonPositiveP(0))
        );
        assert_eq!(make_sharpness_instance(2, 2, 2, &f, &set(&[0, 1])), Err(TheoremError::OddP(1)));
        assert_eq!(make_sharpness_instance(2, 2, 1, &f, &set(&[])), Err(TheoremError::EmptySubset));
        assert_eq!(make_sharpness_instance(2, 2, 1, &f, &set(&[0, 1, 2])), Err(TheoremError::FullSubset));
        let f = ColorBudget::from_caps(vec![1, 1, 0]);
        assert!(matches!(
            make_sharpness_instance(1, 5, 2, &f, &set(&[0, 1])),
            Err(TheoremError::HalfExceedsPart { half: 2, .. })
        ));
    }

    #[test]
    fn random_colorings() {
        let p = Palette::numbered(3);
        let g = random_bipartite_coloring(1, 1, &p, 4, &ColorDistribution::Uniform).unwrap();
        assert_eq!(g.edge_count(), 1);
        let a = random_bipartite_coloring(4, 4, &p, 7, &ColorDistribution::Uniform).unwrap();
        let b = random_bipartite_coloring(4, 4, &p, 7, &ColorDistribution::Uniform).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.multiplicities().iter().sum::<usize>(), 16);
        assert!(BipartiteSpec::new(4, 4).unwrap().matches_canonical(&a));

        let skewed = ColorDistribution::Weighted(vec![0.0, 1.0, 0.0]);
        let g = random_bipartite_coloring(3, 2, &p, 1, &skewed).unwrap();
        assert_eq!(g.multiplicities(), vec![0, 6, 0]);
        assert!(matches!(
            random_bipartite_coloring(2, 2, &p, 1, &ColorDistribution::Weighted(vec![1.0])),
            Err(TheoremError::InvalidWeights(_))
        ));
        assert!(matches!(
            random_bipartite_coloring(2, 2, &p, 1, &ColorDistribution::Weighted(vec![0.0; 3])),
            Err(TheoremError::InvalidWeights(_))
        ));
        assert_eq!(
            random_bipartite_coloring(2, 2, &Palette::default(), 1, &ColorDistribution::Uniform),
            Err(TheoremError::EmptyPalette)
        );
    }
}

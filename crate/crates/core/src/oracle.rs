//! Exhaustive ground truth for small instances.
//!
//! Nothing here shares code with the decision procedure or the builder:
//! the forest search keeps its own rollback union-find and checks every
//! edge subset of the required size directly.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{ColorBudget, ColorId, Edge, EdgeColoredGraph, GraphError, Palette, SpanningForest};

pub const MAX_VERTICES: usize = 10;
pub const MAX_EDGES: usize = 20;
pub const MAX_EXTREMAL_ORDER: usize = 30;
/// Largest vertex count for which every graph is enumerated.
pub const MAX_ENUMERATED_VERTICES: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {vertices} vertices and {edges} edges; the exhaustive search handles at most {MAX_VERTICES} and {MAX_EDGES}")]
    TooLarge { vertices: usize, edges: usize },
    #[error("component count {w} is outside 1..={vertex_count}")]
    ComponentsOutOfRange { w: usize, vertex_count: usize },
    #[error("need 1 <= s <= N <= {MAX_EXTREMAL_ORDER}, got N={order}, s={components}")]
    ExtremalOutOfRange { order: usize, components: usize },
    #[error("infeasible instance family: {0}")]
    InfeasibleBounds(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Union-find without path compression so unions can be undone.
struct RollbackSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl RollbackSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.root(a), self.root(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push((ra, rb));
        true
    }

    fn undo(&mut self) {
        let (ra, rb) = self.history.pop().expect("undo without union");
        self.parent[rb] = rb;
        self.size[ra] -= self.size[rb];
    }
}

struct Search<'a> {
    edges: &'a [Edge],
    caps: &'a [usize],
    usage: Vec<usize>,
    sets: RollbackSets,
    chosen: Vec<usize>,
}

impl Search<'_> {
    // Combinations in lexicographic order; a branch dies as soon as its
    // prefix has a cycle or overruns a cap, since both are hereditary.
    fn extend(&mut self, start: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        for i in start..=self.edges.len() - remaining {
            let e = self.edges[i];
            let c = e.color.index();
            if self.usage[c] == self.caps[c] || !self.sets.union(e.u, e.v) {
                continue;
            }
            self.usage[c] += 1;
            self.chosen.push(i);
            if self.extend(i + 1, remaining - 1) {
                return true;
            }
            self.chosen.pop();
            self.usage[c] -= 1;
            self.sets.undo();
        }
        false
    }
}

/// Lexicographically first acyclic `f`-chromatic edge set of size
/// `vertex_count - w`, if any exists.
pub fn brute_force_forest<'g>(
    graph: &'g EdgeColoredGraph,
    budget: &ColorBudget,
    w: usize,
) -> Result<Option<SpanningForest<'g>>, OracleError> {
    let n = graph.vertex_count();
    if n > MAX_VERTICES || graph.edge_count() > MAX_EDGES {
        return Err(OracleError::TooLarge {
            vertices: n,
            edges: graph.edge_count(),
        });
    }
    if w == 0 || w > n {
        return Err(OracleError::ComponentsOutOfRange { w, vertex_count: n });
    }
    budget.check_covers(graph)?;
    let target = n - w;
    if target > graph.edge_count() {
        return Ok(None);
    }
    let mut search = Search {
        edges: graph.edges(),
        caps: budget.caps(),
        usage: vec![0; graph.color_count()],
        sets: RollbackSets::new(n),
        chosen: Vec::with_capacity(target),
    };
    if !search.extend(0, target) {
        return Ok(None);
    }
    let forest = SpanningForest::new(graph, search.chosen).expect("search only keeps acyclic sets");
    Ok(Some(forest))
}

/// Maximum edge count of a bipartite graph on `order` vertices with exactly
/// `components` components, by enumerating the component orders.
pub fn extremal_bipartite_max_edges(order: usize, components: usize) -> Result<u64, OracleError> {
    if components == 0 || components > order || order > MAX_EXTREMAL_ORDER {
        return Err(OracleError::ExtremalOutOfRange { order, components });
    }
    fn best(remaining: usize, parts: usize, largest: usize) -> Option<u64> {
        if parts == 0 {
            return (remaining == 0).then_some(0);
        }
        // Non-increasing parts, each at least 1.
        let hi = largest.min(remaining + 1 - parts);
        (1..=hi)
            .filter_map(|k| {
                let here = ((k / 2) * k.div_ceil(2)) as u64;
                best(remaining - k, parts - 1, k).map(|rest| here + rest)
            })
            .max()
    }
    Ok(best(order, components, order).expect("some partition exists when 1 <= s <= N"))
}

/// One `(G, f, w)` triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: EdgeColoredGraph,
    pub budget: ColorBudget,
    pub w: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    /// Every graph up to isomorphism, every coloring up to color relabeling,
    /// every budget, every component count.
    Exhaustive,
    /// Seeded random instances.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFamily {
    pub max_vertices: usize,
    /// Palette size. Exhaustive mode always uses exactly this many colors
    /// (unused colors included); sampled mode draws 1..=max_colors.
    pub max_colors: usize,
    pub caps: RangeInclusive<usize>,
    /// Intersected with `1..=vertex_count` per graph.
    pub w: RangeInclusive<usize>,
    pub mode: FamilyMode,
}

impl InstanceFamily {
    pub fn validate(&self) -> Result<(), OracleError> {
        let infeasible = |msg: String| Err(OracleError::InfeasibleBounds(msg));
        if self.max_vertices == 0 {
            return infeasible("need at least one vertex".into());
        }
        if self.max_colors == 0 {
            return infeasible("need at least one color".into());
        }
        if self.caps.is_empty() {
            return infeasible("empty cap range".into());
        }
        if self.w.is_empty() || *self.w.start() == 0 || *self.w.start() > self.max_vertices {
            return infeasible(format!("component range {:?} admits no instance", self.w));
        }
        let limit = match self.mode {
            FamilyMode::Exhaustive => MAX_ENUMERATED_VERTICES,
            FamilyMode::Sampled { .. } => MAX_VERTICES,
        };
        if self.max_vertices > limit {
            return infeasible(format!(
                "{} vertices exceeds the limit of {limit} for this mode",
                self.max_vertices
            ));
        }
        Ok(())
    }

    /// Deterministic stream of instances.
    pub fn instances(&self) -> Result<Box<dyn Iterator<Item = Instance> + Send>, OracleError> {
        self.validate()?;
        Ok(match self.mode {
            FamilyMode::Exhaustive => Box::new(self.exhaustive()),
            FamilyMode::Sampled { count, seed } => Box::new(self.sampled(count, seed)),
        })
    }

    /// Every `(graph, coloring)` pair of the exhaustive enumeration, without
    /// budgets or component counts.
    pub fn colored_graphs(&self) -> Result<Vec<EdgeColoredGraph>, OracleError> {
        self.validate()?;
        if self.mode != FamilyMode::Exhaustive {
            return Err(OracleError::InfeasibleBounds("colored_graphs is exhaustive-only".into()));
        }
        Ok(colored_graphs(self.max_vertices, self.max_colors).collect())
    }

    /// Every budget with caps drawn from `self.caps` over `colors` colors.
    pub fn budgets(&self, colors: usize) -> Vec<ColorBudget> {
        let values: Vec<usize> = self.caps.clone().collect();
        let mut out = Vec::new();
        let mut digits = vec![0usize; colors];
        loop {
            out.push(ColorBudget::from_caps(digits.iter().map(|&d| values[d]).collect()));
            let Some(pos) = digits.iter().rposition(|&d| d + 1 < values.len()) else {
                return out;
            };
            digits[pos] += 1;
            digits[pos + 1..].fill(0);
        }
    }

    pub fn w_values(&self, vertex_count: usize) -> RangeInclusive<usize> {
        (*self.w.start()).max(1)..=(*self.w.end()).min(vertex_count)
    }

    fn exhaustive(&self) -> impl Iterator<Item = Instance> + Send {
        let family = self.clone();
        let budgets = self.budgets(self.max_colors);
        colored_graphs(self.max_vertices, self.max_colors).flat_map(move |graph| {
            let ws = family.w_values(graph.vertex_count());
            let budgets = budgets.clone();
            budgets.into_iter().flat_map(move |budget| {
                let graph = graph.clone();
                ws.clone().map(move |w| Instance {
                    graph: graph.clone(),
                    budget: budget.clone(),
                    w,
                })
            })
        })
    }

    fn sampled(&self, count: usize, seed: u64) -> impl Iterator<Item = Instance> + Send {
        let family = self.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(move |_| family.sample(&mut rng))
    }

    /// One random instance drawn from the family's bounds.
    pub fn sample(&self, rng: &mut impl Rng) -> Instance {
        let n = rng.gen_range(*self.w.start()..=self.max_vertices);
        let mut pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        pairs.shuffle(rng);
        let m = rng.gen_range(0..=pairs.len().min(MAX_EDGES));
        pairs.truncate(m);
        pairs.sort_unstable();
        let colors = rng.gen_range(1..=self.max_colors);
        let edges = pairs
            .into_iter()
            .map(|(u, v)| Edge::new(u, v, ColorId::from_index(rng.gen_range(0..colors))))
            .collect();
        let graph = EdgeColoredGraph::new(n, Palette::numbered(colors), edges).expect("sampled graph is simple");
        let budget = ColorBudget::from_caps((0..colors).map(|_| rng.gen_range(self.caps.clone())).collect());
        let w = rng.gen_range(self.w_values(n));
        Instance { graph, budget, w }
    }
}

fn colored_graphs(max_vertices: usize, colors: usize) -> impl Iterator<Item = EdgeColoredGraph> + Send {
    (1..=max_vertices).flat_map(move |n| {
        nonisomorphic_graphs(n).into_iter().flat_map(move |pairs| {
            RestrictedGrowth::new(pairs.len(), colors).map(move |coloring| {
                let edges = pairs
                    .iter()
                    .zip(&coloring)
                    .map(|(&(u, v), &c)| Edge::new(u, v, ColorId::from_index(c)))
                    .collect();
                EdgeColoredGraph::new(n, Palette::numbered(colors), edges).expect("enumerated graph is simple")
            })
        })
    })
}

/// One edge list per isomorphism class of simple graphs on `n` vertices:
/// the representative whose adjacency bitmask is minimal over all vertex
/// permutations.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let slot = |u: usize, v: usize| -> usize {
        let (a, b) = (u.min(v), u.max(v));
        pairs.iter().position(|&p| p == (a, b)).expect("pair in range")
    };
    let perms = permutations(n);
    // perm_slots[p][i]: slot of pair i after applying permutation p.
    let perm_slots: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| slot(p[u], p[v])).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let canonical = perm_slots.iter().all(|slots| {
            let mut image = 0u64;
            for (i, &s) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    image |= 1 << s;
                }
            }
            image >= mask
        });
        if canonical {
            out.push(
                (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i])
                    .collect(),
            );
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    heap(n, &mut current, &mut out);
    out
}

/// Colorings of `len` positions with at most `colors` colors, up to color
/// relabeling: restricted growth strings (each value at most one more than
/// the running maximum), in lexicographic order.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    current: Option<Vec<usize>>,
    colors: usize,
}

impl RestrictedGrowth {
    pub fn new(len: usize, colors: usize) -> Self {
        Self {
            current: (colors > 0 || len == 0).then(|| vec![0; len]),
            colors,
        }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let s = self.current.as_mut().unwrap();
        let mut advanced = false;
        for i in (1..s.len()).rev() {
            let prefix_max = s[..i].iter().copied().max().unwrap_or(0);
            if s[i] <= prefix_max && s[i] + 1 < self.colors {
                s[i] += 1;
                s[i + 1..].fill(0);
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

//! Edge-colored simple graphs, color budgets, and forest validation.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsu::DisjointSets;

/// Ordinal of a color within a graph's [`Palette`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColorId(pub u32);

impl ColorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Self {
        ColorId(index as u32)
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Position of an edge in [`EdgeColoredGraph::edges`].
pub type EdgeId = usize;

/// A subset of a graph's color set.
pub type ColorSet = BTreeSet<ColorId>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },
    #[error("edge {edge} duplicates the pair {{{u}, {v}}}")]
    DuplicateEdge { edge: usize, u: usize, v: usize },
    #[error("edge {edge} uses vertex {vertex}, but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("edge {edge} has color {color} which is not in the color set")]
    UnknownEdgeColor { edge: usize, color: ColorId },
    #[error("color {0} is not in the color set")]
    UnknownColor(ColorId),
    #[error("color name {0:?} is declared twice")]
    DuplicateColorName(String),
    #[error("budget covers {found} colors but the color set has {expected}")]
    BudgetMismatch { expected: usize, found: usize },
    #[error("edge id {0} does not belong to the graph")]
    EdgeNotInGraph(EdgeId),
}

/// Names for the colors `0..len`, in ordinal order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Palette {
    names: Vec<String>,
    index: HashMap<String, ColorId>,
}

impl Palette {
    /// Colors named `c1`, `c2`, ..., `c<count>`.
    pub fn numbered(count: usize) -> Self {
        Self::from_names((1..=count).map(|i| format!("c{i}")))
            .expect("generated names are distinct")
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut palette = Palette::default();
        for name in names {
            let name = name.into();
            if palette.lookup(&name).is_some() {
                return Err(GraphError::DuplicateColorName(name));
            }
            palette.intern(&name);
        }
        Ok(palette)
    }

    /// Returns the color named `name`, adding it if unseen.
    pub fn intern(&mut self, name: &str) -> ColorId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = ColorId::from_index(self.names.len());
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<ColorId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, color: ColorId) -> &str {
        &self.names[color.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, color: ColorId) -> bool {
        color.index() < self.names.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = ColorId> + '_ {
        (0..self.names.len()).map(ColorId::from_index)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Formats a color set as `{a, b}` using the palette's names.
    pub fn describe(&self, colors: &ColorSet) -> String {
        let names: Vec<&str> = colors.iter().map(|&c| self.name(c)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: ColorId,
}

impl Edge {
    pub fn new(u: usize, v: usize, color: ColorId) -> Self {
        Self { u, v, color }
    }

    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Per-color caps `f`, indexed by color ordinal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorBudget {
    caps: Vec<usize>,
}

impl ColorBudget {
    pub fn uniform(color_count: usize, cap: usize) -> Self {
        Self {
            caps: vec![cap; color_count],
        }
    }

    pub fn from_caps(caps: Vec<usize>) -> Self {
        Self { caps }
    }

    pub fn cap(&self, color: ColorId) -> usize {
        self.caps[color.index()]
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.caps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.caps.is_empty()
    }

    pub fn total(&self) -> usize {
        self.caps.iter().sum()
    }

    pub fn sum_over<'a>(&self, colors: impl IntoIterator<Item = &'a ColorId>) -> usize {
        colors.into_iter().map(|&c| self.cap(c)).sum()
    }

    /// Errors unless the budget defines a cap for exactly the colors of `graph`.
    pub fn check_covers(&self, graph: &EdgeColoredGraph) -> Result<(), GraphError> {
        if self.caps.len() != graph.color_count() {
            return Err(GraphError::BudgetMismatch {
                expected: graph.color_count(),
                found: self.caps.len(),
            });
        }
        Ok(())
    }
}

/// Connected components of a graph: a dense label per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    labels: Vec<usize>,
    count: usize,
}

impl ComponentDecomposition {
    fn from_sets(sets: &mut DisjointSets) -> Self {
        let mut relabel = HashMap::new();
        let mut labels = Vec::with_capacity(sets.len());
        for v in 0..sets.len() {
            let root = sets.find(v);
            let next = relabel.len();
            labels.push(*relabel.entry(root).or_insert(next));
        }
        Self {
            count: relabel.len(),
            labels,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn label(&self, vertex: usize) -> usize {
        self.labels[vertex]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }
}

/// A simple graph on vertices `0..vertex_count` whose edges carry colors
/// from a finite palette. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    palette: Palette,
    by_color: Vec<Vec<EdgeId>>,
}

impl EdgeColoredGraph {
    /// Validates and builds a graph. Rejects loops, repeated pairs,
    /// out-of-range endpoints, and colors outside the palette.
    pub fn new(vertex_count: usize, palette: Palette, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut by_color = vec![Vec::new(); palette.len()];
        for (i, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        edge: i,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if e.u == e.v {
                return Err(GraphError::Loop { edge: i, vertex: e.u });
            }
            if !palette.contains(e.color) {
                return Err(GraphError::UnknownEdgeColor { edge: i, color: e.color });
            }
            if !seen.insert(e.key()) {
                return Err(GraphError::DuplicateEdge { edge: i, u: e.u, v: e.v });
            }
            by_color[e.color.index()].push(i);
        }
        Ok(Self {
            vertex_count,
            edges,
            palette,
            by_color,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn color_count(&self) -> usize {
        self.palette.len()
    }

    pub fn colors(&self) -> impl Iterator<Item = ColorId> + '_ {
        self.palette.ids()
    }

    pub fn all_colors(&self) -> ColorSet {
        self.colors().collect()
    }

    /// Ids of the edges carrying `color`, ascending.
    pub fn edges_of_color(&self, color: ColorId) -> &[EdgeId] {
        &self.by_color[color.index()]
    }

    /// Looks up the edge joining `u` and `v`, in either orientation.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|e| e.key() == key)
    }

    fn check_colors(&self, colors: &ColorSet) -> Result<(), GraphError> {
        match colors.iter().find(|c| !self.palette.contains(**c)) {
            Some(&c) => Err(GraphError::UnknownColor(c)),
            None => Ok(()),
        }
    }

    /// `E_R(G)`: ids of the edges whose color lies in `colors`, ascending.
    pub fn edges_with_colors(&self, colors: &ColorSet) -> Result<Vec<EdgeId>, GraphError> {
        self.check_colors(colors)?;
        Ok((0..self.edges.len())
            .filter(|&i| colors.contains(&self.edges[i].color))
            .collect())
    }

    /// `G - E_R(G)`: same vertices and palette, edges colored in `colors` dropped.
    pub fn remove_colors(&self, colors: &ColorSet) -> Result<EdgeColoredGraph, GraphError> {
        self.check_colors(colors)?;
        let kept = self
            .edges
            .iter()
            .filter(|e| !colors.contains(&e.color))
            .copied()
            .collect();
        EdgeColoredGraph::new(self.vertex_count, self.palette.clone(), kept)
    }

    pub fn components(&self) -> ComponentDecomposition {
        let mut sets = DisjointSets::new(self.vertex_count);
        for e in &self.edges {
            sets.union(e.u, e.v);
        }
        ComponentDecomposition::from_sets(&mut sets)
    }

    /// `ω(G)`.
    pub fn component_count(&self) -> usize {
        let mut sets = DisjointSets::new(self.vertex_count);
        for e in &self.edges {
            sets.union(e.u, e.v);
        }
        sets.count()
    }

    /// `ω(G - E_R(G))` where `R` is given as a bitmask over color ordinals.
    /// `sets` is scratch space of length `vertex_count`.
    pub(crate) fn component_count_without_mask(&self, removed: u64, sets: &mut DisjointSets) -> usize {
        sets.reset();
        for (c, ids) in self.by_color.iter().enumerate() {
            if removed >> c & 1 == 1 {
                continue;
            }
            for &id in ids {
                let e = self.edges[id];
                sets.union(e.u, e.v);
            }
        }
        sets.count()
    }

    /// `|E_c(G)|`.
    pub fn color_multiplicity(&self, color: ColorId) -> Result<usize, GraphError> {
        if !self.palette.contains(color) {
            return Err(GraphError::UnknownColor(color));
        }
        Ok(self.by_color[color.index()].len())
    }

    /// Multiplicity of every color, by ordinal.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.by_color.iter().map(Vec::len).collect()
    }

    /// Whether every color appears on at most `budget.cap(c)` edges.
    pub fn is_f_chromatic(&self, budget: &ColorBudget) -> Result<bool, GraphError> {
        budget.check_covers(self)?;
        Ok(self
            .colors()
            .all(|c| self.by_color[c.index()].len() <= budget.cap(c)))
    }

    /// Whether `forest` is an acyclic, `budget`-respecting edge set of
    /// exactly `vertex_count - components` edges.
    pub fn validate_spanning_forest(
        &self,
        forest: &[EdgeId],
        budget: &ColorBudget,
        components: usize,
    ) -> Result<bool, GraphError> {
        budget.check_covers(self)?;
        if let Some(&bad) = forest.iter().find(|&&id| id >= self.edges.len()) {
            return Err(GraphError::EdgeNotInGraph(bad));
        }
        if components > self.vertex_count || forest.len() != self.vertex_count - components {
            return Ok(false);
        }
        let mut sets = DisjointSets::new(self.vertex_count);
        let mut usage = vec![0usize; self.color_count()];
        for &id in forest {
            let e = self.edges[id];
            // A repeated id also fails here, as a 2-cycle.
            if !sets.union(e.u, e.v) {
                return Ok(false);
            }
            usage[e.color.index()] += 1;
        }
        Ok(self.colors().all(|c| usage[c.index()] <= budget.cap(c)))
    }
}

/// An acyclic edge subset of a graph, spanning all of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest<'g> {
    graph: &'g EdgeColoredGraph,
    edges: Vec<EdgeId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {0} closes a cycle")]
    Cycle(EdgeId),
}

impl<'g> SpanningForest<'g> {
    pub fn new(graph: &'g EdgeColoredGraph, mut edges: Vec<EdgeId>) -> Result<Self, ForestError> {
        edges.sort_unstable();
        let mut sets = DisjointSets::new(graph.vertex_count());
        for &id in &edges {
            if id >= graph.edge_count() {
                return Err(GraphError::EdgeNotInGraph(id).into());
            }
            let e = graph.edge(id);
            if !sets.union(e.u, e.v) {
                return Err(ForestError::Cycle(id));
            }
        }
        Ok(Self { graph, edges })
    }

    pub fn graph(&self) -> &'g EdgeColoredGraph {
        self.graph
    }

    /// Edge ids, ascending.
    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|&id| self.graph.edge(id))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.graph.vertex_count() - self.edges.len()
    }

    pub fn color_usage(&self) -> Vec<usize> {
        let mut usage = vec![0; self.graph.color_count()];
        for e in self.edges() {
            usage[e.color.index()] += 1;
        }
        usage
    }

    pub fn into_edge_ids(self) -> Vec<EdgeId> {
        self.edges
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// K_{2,2} with parts {0,1}, {2,3}: (0,2)=c1, (0,3)=c1, (1,2)=c2, (1,3)=c3.
    pub fn k22_heterochromatic() -> EdgeColoredGraph {
        let c = ColorId::from_index;
        EdgeColoredGraph::new(
            4,
            Palette::numbered(3),
            vec![
                Edge::new(0, 2, c(0)),
                Edge::new(0, 3, c(0)),
                Edge::new(1, 2, c(1)),
                Edge::new(1, 3, c(2)),
            ],
        )
        .unwrap()
    }

    /// K_{2,2} with every edge colored c1, palette {c1}.
    pub fn k22_monochromatic() -> EdgeColoredGraph {
        let c1 = ColorId(0);
        EdgeColoredGraph::new(
            4,
            Palette::numbered(1),
            vec![
                Edge::new(0, 2, c1),
                Edge::new(0, 3, c1),
                Edge::new(1, 2, c1),
                Edge::new(1, 3, c1),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn set(ids: &[usize]) -> ColorSet {
        ids.iter().map(|&i| ColorId::from_index(i)).collect()
    }

    #[test]
    fn rejects_invalid_edges() {
        let p = Palette::numbered(1);
        let c1 = ColorId(0);
        assert_eq!(
            EdgeColoredGraph::new(2, p.clone(), vec![Edge::new(0, 0, c1)]),
            Err(GraphError::Loop { edge: 0, vertex: 0 })
        );
        assert_eq!(
            EdgeColoredGraph::new(4, p.clone(), vec![Edge::new(0, 2, ColorId(8))]),
            Err(GraphError::UnknownEdgeColor { edge: 0, color: ColorId(8) })
        );
        assert_eq!(
            EdgeColoredGraph::new(4, p.clone(), vec![Edge::new(0, 2, c1), Edge::new(2, 0, c1)]),
            Err(GraphError::DuplicateEdge { edge: 1, u: 2, v: 0 })
        );
        assert!(matches!(
            EdgeColoredGraph::new(2, p, vec![Edge::new(0, 2, c1)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn edges_with_colors_and_removal() {
        let g = k22_heterochromatic();
        assert_eq!(g.edges_with_colors(&set(&[0])).unwrap(), vec![0, 1]);
        assert!(g.edges_with_colors(&set(&[])).unwrap().is_empty());
        assert_eq!(g.edges_with_colors(&g.all_colors()).unwrap().len(), 4);
        assert_eq!(
            g.edges_with_colors(&set(&[5])),
            Err(GraphError::UnknownColor(ColorId(5)))
        );

        let h = g.remove_colors(&set(&[0])).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edges(), &[g.edge(2), g.edge(3)]);
        assert_eq!(h.color_count(), 3);
        assert_eq!(g.remove_colors(&set(&[])).unwrap(), g);
        assert_eq!(g.remove_colors(&g.all_colors()).unwrap().edge_count(), 0);
    }

    #[test]
    fn component_counts() {
        let g = k22_heterochromatic();
        assert_eq!(g.components().count(), 1);
        assert_eq!(g.remove_colors(&g.all_colors()).unwrap().components().count(), 4);
        let minus_c1 = g.remove_colors(&set(&[0])).unwrap().components();
        assert_eq!(minus_c1.count(), 2);
        assert!(minus_c1.connected(1, 2) && minus_c1.connected(1, 3));
        assert!(!minus_c1.connected(0, 1));
    }

    #[test]
    fn multiplicities() {
        let mut p = Palette::numbered(3);
        p.intern("unused");
        let g = EdgeColoredGraph::new(4, p, k22_heterochromatic().edges().to_vec()).unwrap();
        assert_eq!(g.color_multiplicity(ColorId(0)), Ok(2));
        assert_eq!(g.color_multiplicity(ColorId(1)), Ok(1));
        assert_eq!(g.color_multiplicity(ColorId(3)), Ok(0));
        assert!(g.color_multiplicity(ColorId(4)).is_err());
    }

    #[test]
    fn f_chromatic_example_profile() {
        // A 12-edge path colored with counts (3,1,3,0,0,1,2) under
        // f = (3,1,3,0,0,1,2).
        let counts = [3usize, 1, 3, 0, 0, 1, 2];
        let mut edges = Vec::new();
        for (c, &k) in counts.iter().enumerate() {
            for _ in 0..k {
                let i = edges.len();
                edges.push(Edge::new(i, i + 1, ColorId::from_index(c)));
            }
        }
        let g = EdgeColoredGraph::new(11, Palette::numbered(7), edges).unwrap();
        let f = ColorBudget::from_caps(vec![3, 1, 3, 0, 0, 1, 2]);
        assert_eq!(g.is_f_chromatic(&f), Ok(true));

        let k22 = k22_heterochromatic();
        assert_eq!(k22.is_f_chromatic(&ColorBudget::uniform(3, 1)), Ok(false));
        assert_eq!(k22.is_f_chromatic(&ColorBudget::uniform(3, 4)), Ok(true));
        assert!(k22.is_f_chromatic(&ColorBudget::uniform(2, 4)).is_err());
    }

    #[test]
    fn spanning_forest_validation() {
        let g = k22_heterochromatic();
        let ones = ColorBudget::uniform(3, 1);
        assert_eq!(g.validate_spanning_forest(&[0, 2, 3], &ones, 1), Ok(true));
        assert_eq!(g.validate_spanning_forest(&[], &ones, 4), Ok(true));
        assert_eq!(g.validate_spanning_forest(&[0, 1, 2, 3], &ones, 0), Ok(false));
        // Both c1 edges: acyclic but over budget.
        assert_eq!(g.validate_spanning_forest(&[0, 1, 2], &ones, 1), Ok(false));
        assert_eq!(g.validate_spanning_forest(&[0, 2], &ones, 1), Ok(false));
        assert_eq!(g.validate_spanning_forest(&[0, 0], &ones, 2), Ok(false));
        assert_eq!(
            g.validate_spanning_forest(&[9], &ones, 3),
            Err(GraphError::EdgeNotInGraph(9))
        );

        let forest = SpanningForest::new(&g, vec![3, 0, 2]).unwrap();
        assert_eq!(forest.edge_ids(), &[0, 2, 3]);
        assert_eq!(forest.component_count(), 1);
        assert_eq!(forest.color_usage(), vec![1, 1, 1]);
        assert_eq!(
            SpanningForest::new(&g, vec![0, 1, 2, 3]),
            Err(ForestError::Cycle(3))
        );
    }

    #[test]
    fn mask_component_count_matches_removal() {
        let g = k22_heterochromatic();
        let mut sets = DisjointSets::new(4);
        for mask in 0u64..8 {
            let r: ColorSet = (0..3).filter(|c| mask >> c & 1 == 1).map(ColorId::from_index).collect();
            assert_eq!(
                g.component_count_without_mask(mask, &mut sets),
                g.remove_colors(&r).unwrap().component_count()
            );
        }
    }

    #[test]
    fn palette_rejects_duplicates() {
        assert_eq!(
            Palette::from_names(["a", "b", "a"]),
            Err(GraphError::DuplicateColorName("a".into()))
        );
        let p = Palette::numbered(2);
        assert_eq!(p.lookup("c2"), Some(ColorId(1)));
        assert_eq!(p.describe(&[ColorId(0), ColorId(1)].into_iter().collect()), "{c1, c2}");
    }
}

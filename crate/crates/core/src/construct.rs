//! Builds `f`-chromatic spanning forests by matroid intersection.
//!
//! The two matroids are the graphic matroid of `G` (independent = acyclic)
//! and the partition matroid whose independent sets use each color `c` at
//! most `f(c)` times. A common independent set of size `n - w` is exactly an
//! `f`-chromatic spanning forest with `w` components.

use std::collections::VecDeque;

use thiserror::Error;

use crate::certify::{check_w, CheckError};
use crate::dsu::DisjointSets;
use crate::graph::{ColorBudget, EdgeColoredGraph, EdgeId, SpanningForest};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot keep {target} edges out of {available}")]
pub struct TruncateError {
    pub target: usize,
    pub available: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Augmentation {
    /// The set grew by exactly one edge.
    Augmented,
    /// The set is a maximum common independent set.
    Exhausted,
}

/// A common independent set `I` with its per-color usage and connectivity.
#[derive(Debug, Clone)]
pub struct IntersectionState<'a> {
    graph: &'a EdgeColoredGraph,
    budget: &'a ColorBudget,
    /// Edges whose color has a positive cap; the rest can never join `I`.
    ground: Vec<EdgeId>,
    in_set: Vec<bool>,
    usage: Vec<usize>,
    sets: DisjointSets,
}

impl<'a> IntersectionState<'a> {
    pub fn new(graph: &'a EdgeColoredGraph, budget: &'a ColorBudget) -> Result<Self, CheckError> {
        budget.check_covers(graph)?;
        let ground = (0..graph.edge_count())
            .filter(|&id| budget.cap(graph.edge(id).color) > 0)
            .collect();
        Ok(Self {
            graph,
            budget,
            ground,
            in_set: vec![false; graph.edge_count()],
            usage: vec![0; graph.color_count()],
            sets: DisjointSets::new(graph.vertex_count()),
        })
    }

    pub fn len(&self) -> usize {
        self.in_set.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members of `I`, ascending.
    pub fn members(&self) -> Vec<EdgeId> {
        (0..self.in_set.len()).filter(|&id| self.in_set[id]).collect()
    }

    pub fn usage(&self) -> &[usize] {
        &self.usage
    }

    /// Whether `I` is acyclic and within every cap.
    pub fn invariants_hold(&self) -> bool {
        let mut sets = DisjointSets::new(self.graph.vertex_count());
        let mut usage = vec![0; self.graph.color_count()];
        for id in self.members() {
            let e = self.graph.edge(id);
            if !sets.union(e.u, e.v) {
                return false;
            }
            usage[e.color.index()] += 1;
        }
        usage == self.usage && self.graph.colors().all(|c| usage[c.index()] <= self.budget.cap(c))
    }

    fn rebuild(&mut self) {
        self.sets.reset();
        self.usage.fill(0);
        for id in 0..self.in_set.len() {
            if self.in_set[id] {
                let e = self.graph.edge(id);
                self.sets.union(e.u, e.v);
                self.usage[e.color.index()] += 1;
            }
        }
    }

    /// Grows `I` by one edge along a shortest augmenting path of the
    /// exchange graph, taking the lexicographically least such path.
    pub fn augment(&mut self) -> Augmentation {
        let graph = self.graph;
        let members = self.members();
        let outside: Vec<EdgeId> = self.ground.iter().copied().filter(|&id| !self.in_set[id]).collect();
        if outside.is_empty() {
            return Augmentation::Exhausted;
        }
        let m = graph.edge_count();
        let mut succ: Vec<Vec<EdgeId>> = vec![Vec::new(); m];
        let mut pred: Vec<Vec<EdgeId>> = vec![Vec::new(); m];
        let mut add_arc = |from: EdgeId, to: EdgeId| {
            succ[from].push(to);
            pred[to].push(from);
        };

        let mut is_source = vec![false; m];
        let mut is_sink = vec![false; m];
        for &y in &outside {
            let e = graph.edge(y);
            is_source[y] = !self.sets.same(e.u, e.v);
            is_sink[y] = self.usage[e.color.index()] < self.budget.cap(e.color);
        }

        // x -> y when I - x + y is a forest.
        let mut without = DisjointSets::new(graph.vertex_count());
        for &x in &members {
            without.reset();
            for &z in &members {
                if z != x {
                    let e = graph.edge(z);
                    without.union(e.u, e.v);
                }
            }
            for &y in &outside {
                let e = graph.edge(y);
                if !without.same(e.u, e.v) {
                    add_arc(x, y);
                }
            }
        }
        // y -> x when I - x + y respects the caps.
        for &y in &outside {
            let cy = graph.edge(y).color;
            for &x in &members {
                if is_sink[y] || graph.edge(x).color == cy {
                    add_arc(y, x);
                }
            }
        }
        for list in succ.iter_mut() {
            list.sort_unstable();
        }

        // Distance from every node to the nearest sink.
        let mut dist = vec![usize::MAX; m];
        let mut queue = VecDeque::new();
        for &y in &outside {
            if is_sink[y] {
                dist[y] = 0;
                queue.push_back(y);
            }
        }
        while let Some(node) = queue.pop_front() {
            for &p in &pred[node] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[node] + 1;
                    queue.push_back(p);
                }
            }
        }

        let Some(start) = outside
            .iter()
            .copied()
            .filter(|&y| is_source[y] && dist[y] != usize::MAX)
            .min_by_key(|&y| (dist[y], y))
        else {
            return Augmentation::Exhausted;
        };

        let mut path = vec![start];
        let mut node = start;
        while dist[node] > 0 {
            node = succ[node]
                .iter()
                .copied()
                .find(|&next| dist[next] + 1 == dist[node])
                .expect("a node at distance d > 0 has a successor at distance d - 1");
            path.push(node);
        }
        for &id in &path {
            self.in_set[id] = !self.in_set[id];
        }
        self.rebuild();
        Augmentation::Augmented
    }

    /// Augments until `I` has `target` edges or no augmenting path remains.
    pub fn grow_to(&mut self, target: usize) -> usize {
        let mut size = self.len();
        while size < target && self.augment() == Augmentation::Augmented {
            size += 1;
        }
        size
    }
}

/// The first `target` edges of `edges`. Subsets of a common independent set
/// stay independent in both matroids.
pub fn truncate_to(edges: &[EdgeId], target: usize) -> Result<Vec<EdgeId>, TruncateError> {
    if target > edges.len() {
        return Err(TruncateError {
            target,
            available: edges.len(),
        });
    }
    Ok(edges[..target].to_vec())
}

/// An `f`-chromatic spanning forest with exactly `w` components, or `None`
/// if no such forest exists.
pub fn build_forest<'g>(
    graph: &'g EdgeColoredGraph,
    budget: &ColorBudget,
    w: usize,
) -> Result<Option<SpanningForest<'g>>, CheckError> {
    check_w(graph, w)?;
    let target = graph.vertex_count() - w;
    let mut state = IntersectionState::new(graph, budget)?;
    if state.grow_to(target) < target {
        return Ok(None);
    }
    let edges = truncate_to(&state.members(), target).expect("state holds at least target edges");
    Ok(Some(SpanningForest::new(graph, edges).expect("common independent sets are forests")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{ColorId, Edge, Palette};

    #[test]
    fn builds_rainbow_tree() {
        let g = k22_heterochromatic();
        let f = ColorBudget::uniform(3, 1);
        let forest = build_forest(&g, &f, 1).unwrap().unwrap();
        assert_eq!(forest.len(), 3);
        assert_eq!(g.validate_spanning_forest(forest.edge_ids(), &f, 1), Ok(true));
    }

    #[test]
    fn empty_forest_for_w_equal_n() {
        let g = k22_monochromatic();
        let forest = build_forest(&g, &ColorBudget::uniform(1, 0), 4).unwrap().unwrap();
        assert!(forest.is_empty());
    }

    #[test]
    fn monochromatic_not_found() {
        let g = k22_monochromatic();
        let f = ColorBudget::uniform(1, 1);
        assert!(build_forest(&g, &f, 1).unwrap().is_none());
        assert!(build_forest(&g, &f, 3).unwrap().is_some());
    }

    #[test]
    fn augment_from_empty_and_exhaust() {
        let g = k22_heterochromatic();
        let f = ColorBudget::uniform(3, 1);
        let mut state = IntersectionState::new(&g, &f).unwrap();
        assert_eq!(state.augment(), Augmentation::Augmented);
        assert_eq!(state.len(), 1);
        assert!(state.invariants_hold());

        let g = k22_monochromatic();
        let f = ColorBudget::uniform(1, 1);
        let mut state = IntersectionState::new(&g, &f).unwrap();
        assert_eq!(state.augment(), Augmentation::Augmented);
        assert_eq!(state.augment(), Augmentation::Exhausted);
        assert_eq!(state.len(), 1);
    }

    #[test]
    fn augmentation_keeps_invariants() {
        // Greedy would take (0,1,a) and (1,2,b) first and get stuck; the
        // exchange path swaps an edge out to reach a spanning tree.
        let c = ColorId::from_index;
        let g = EdgeColoredGraph::new(
            4,
            Palette::numbered(3),
            vec![
                Edge::new(0, 1, c(0)),
                Edge::new(1, 2, c(1)),
                Edge::new(0, 2, c(2)),
                Edge::new(2, 3, c(0)),
            ],
        )
        .unwrap();
        let f = ColorBudget::uniform(3, 1);
        let mut state = IntersectionState::new(&g, &f).unwrap();
        let mut sizes = vec![];
        while state.augment() == Augmentation::Augmented {
            assert!(state.invariants_hold());
            sizes.push(state.len());
        }
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.validate_spanning_forest(&state.members(), &f, 1), Ok(true));
    }

    #[test]
    fn zero_cap_edges_never_enter() {
        let g = k22_heterochromatic();
        let f = ColorBudget::from_caps(vec![0, 1, 1]);
        let mut state = IntersectionState::new(&g, &f).unwrap();
        state.grow_to(usize::MAX);
        assert_eq!(state.members(), vec![2, 3]);
        assert!(build_forest(&g, &f, 1).unwrap().is_none());
    }

    #[test]
    fn truncation() {
        assert_eq!(truncate_to(&[4, 7, 9], 3), Ok(vec![4, 7, 9]));
        assert_eq!(truncate_to(&[4, 7, 9], 0), Ok(vec![]));
        assert_eq!(truncate_to(&[4, 7, 9], 2), Ok(vec![4, 7]));
        assert_eq!(truncate_to(&[4, 7, 9], 4), Err(TruncateError { target: 4, available: 3 }));
    }

    #[test]
    fn deterministic() {
        let g = k22_heterochromatic();
        let f = ColorBudget::uniform(3, 2);
        let a = build_forest(&g, &f, 1).unwrap().unwrap().into_edge_ids();
        let b = build_forest(&g, &f, 1).unwrap().unwrap().into_edge_ids();
        assert_eq!(a, b);
    }
}

//! Decision procedure for the existence of an `f`-chromatic spanning forest
//! with exactly `w` components.
//!
//! Such a forest exists iff `ω(G - E_R(G)) <= w + Σ_{c∈R} f(c)` for every
//! color subset `R`. The checker walks all subsets, smallest first, and
//! either reports the first subset breaking the inequality or declares the
//! condition satisfied.

use serde::Serialize;
use thiserror::Error;

use crate::construct;
use crate::dsu::DisjointSets;
use crate::graph::{ColorBudget, ColorId, ColorSet, EdgeColoredGraph, EdgeId, GraphError};

/// Largest color set the exhaustive subset walks accept.
pub const MAX_EXHAUSTIVE_COLORS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("component count w={w} is outside 1..={vertex_count}")]
    ComponentsOutOfRange { w: usize, vertex_count: usize },
    #[error("{colors} colors exceeds the exhaustive limit of {MAX_EXHAUSTIVE_COLORS}")]
    TooManyColors { colors: usize },
    #[error("graph has {components} components but must be connected")]
    Disconnected { components: usize },
    #[error("k={k} is outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn check_w(graph: &EdgeColoredGraph, w: usize) -> Result<(), CheckError> {
    if w == 0 || w > graph.vertex_count() {
        return Err(CheckError::ComponentsOutOfRange {
            w,
            vertex_count: graph.vertex_count(),
        });
    }
    Ok(())
}

pub(crate) fn check_color_limit(graph: &EdgeColoredGraph) -> Result<(), CheckError> {
    if graph.color_count() > MAX_EXHAUSTIVE_COLORS {
        return Err(CheckError::TooManyColors {
            colors: graph.color_count(),
        });
    }
    Ok(())
}

/// A color subset `R` with `ω(G - E_R(G)) > w + Σ_{c∈R} f(c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub colors: ColorSet,
    /// `ω(G - E_R(G))`.
    pub omega: usize,
    /// `w + Σ_{c∈R} f(c)`.
    pub bound: usize,
}

impl Violation {
    /// Recomputes both sides from scratch and confirms `omega > bound`.
    pub fn recheck(&self, graph: &EdgeColoredGraph, budget: &ColorBudget, w: usize) -> Result<bool, GraphError> {
        budget.check_covers(graph)?;
        let omega = graph.remove_colors(&self.colors)?.component_count();
        let bound = w + budget.sum_over(&self.colors);
        Ok(omega == self.omega && bound == self.bound && omega > bound)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// No subset violates the condition. The witness, when requested, is a
    /// valid forest.
    Satisfied { witness: Option<Vec<EdgeId>> },
    Violated(Violation),
}

impl Certificate {
    pub fn verdict(&self) -> Verdict {
        match self {
            Certificate::Satisfied { .. } => Verdict::Satisfied,
            Certificate::Violated(_) => Verdict::Violated,
        }
    }

    pub fn is_satisfied(&self) -> bool {
        self.verdict() == Verdict::Satisfied
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Certificate::Violated(v) => Some(v),
            Certificate::Satisfied { .. } => None,
        }
    }

    /// Machine-readable form; colors appear by name.
    pub fn report(&self, graph: &EdgeColoredGraph) -> CertificateReport {
        let palette = graph.palette();
        match self {
            Certificate::Satisfied { witness } => CertificateReport {
                verdict: "satisfied",
                violating_colors: None,
                omega: None,
                bound: None,
                witness_edges: witness.as_ref().map(|ids| {
                    ids.iter()
                        .map(|&id| {
                            let e = graph.edge(id);
                            (e.u, e.v, palette.name(e.color).to_owned())
                        })
                        .collect()
                }),
            },
            Certificate::Violated(v) => CertificateReport {
                verdict: "violated",
                violating_colors: Some(v.colors.iter().map(|&c| palette.name(c).to_owned()).collect()),
                omega: Some(v.omega),
                bound: Some(v.bound),
                witness_edges: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_colors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_edges: Option<Vec<(usize, usize, String)>>,
}

/// Subsets of `0..n` as bitmasks: by increasing size, lexicographic by
/// sorted members within a size.
pub(crate) fn subsets_by_size(n: usize) -> impl Iterator<Item = u64> {
    (0..=n).flat_map(move |k| Combinations::new(n, k))
}

struct Combinations {
    n: usize,
    idx: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let idx = self.idx.as_mut()?;
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        let k = idx.len();
        match (0..k).rev().find(|&i| idx[i] < self.n - k + i) {
            Some(i) => {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
            None => self.idx = None,
        }
        Some(mask)
    }
}

pub(crate) fn mask_to_set(mask: u64) -> ColorSet {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(ColorId::from_index)
        .collect()
}

/// Decides whether `graph` has an `f`-chromatic spanning forest with exactly
/// `w` components, returning the first violating subset if not.
pub fn check_forest_condition(graph: &EdgeColoredGraph, budget: &ColorBudget, w: usize) -> Result<Certificate, CheckError> {
    check_w(graph, w)?;
    budget.check_covers(graph)?;
    check_color_limit(graph)?;

    let n = graph.vertex_count();
    let caps = budget.caps();
    let mut sets = DisjointSets::new(n);
    for mask in subsets_by_size(graph.color_count()) {
        let bound = w + (0..caps.len())
            .filter(|c| mask >> c & 1 == 1)
            .map(|c| caps[c])
            .sum::<usize>();
        // ω never exceeds n.
        if bound >= n {
            continue;
        }
        let omega = graph.component_count_without_mask(mask, &mut sets);
        if omega > bound {
            return Ok(Certificate::Violated(Violation {
                colors: mask_to_set(mask),
                omega,
                bound,
            }));
        }
    }
    Ok(Certificate::Satisfied { witness: None })
}

/// Like [`check_forest_condition`], but a satisfied certificate carries a
/// witness forest built by [`construct::build_forest`].
pub fn certify_with_witness(graph: &EdgeColoredGraph, budget: &ColorBudget, w: usize) -> Result<Certificate, CheckError> {
    let certificate = check_forest_condition(graph, budget, w)?;
    if !certificate.is_satisfied() {
        return Ok(certificate);
    }
    let witness = construct::build_forest(graph, budget, w)?.map(|forest| forest.into_edge_ids());
    Ok(Certificate::Satisfied { witness })
}

/// Heterochromatic spanning tree: every color at most once, one component.
pub fn check_heterochromatic_tree(graph: &EdgeColoredGraph) -> Result<Certificate, CheckError> {
    check_forest_condition(graph, &ColorBudget::uniform(graph.color_count(), 1), 1)
}

/// Heterochromatic spanning forest with `k` edges (so `n - k` components)
/// in a connected graph.
pub fn check_jinli_forest(graph: &EdgeColoredGraph, k: usize) -> Result<Certificate, CheckError> {
    let n = graph.vertex_count();
    let components = graph.component_count();
    if components > 1 {
        return Err(CheckError::Disconnected { components });
    }
    if k == 0 || k >= n {
        return Err(CheckError::KOutOfRange {
            k,
            max: n.saturating_sub(1),
        });
    }
    check_forest_condition(graph, &ColorBudget::uniform(graph.color_count(), 1), n - k)
}

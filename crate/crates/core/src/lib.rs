//! Decide, construct, and certify `f`-chromatic spanning forests with a
//! prescribed number of components in edge-colored graphs.
//!
//! A graph is `f`-chromatic when every color `c` appears on at most `f(c)`
//! of its edges. [`certify`] decides existence and returns either a witness
//! or a violating color subset; [`construct`] builds a forest by matroid
//! intersection; [`theorems`] checks the known sufficient conditions;
//! [`oracle`] provides exhaustive ground truth for small instances.

pub mod campaign;
pub mod certify;
pub mod cli;
pub mod construct;
mod dsu;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod theorems;

pub use certify::{
    certify_with_witness, check_forest_condition, check_heterochromatic_tree, check_jinli_forest, Certificate,
    CheckError, Verdict, Violation,
};
pub use construct::{build_forest, truncate_to, Augmentation, IntersectionState};
pub use graph::{
    ColorBudget, ColorId, ColorSet, ComponentDecomposition, Edge, EdgeColoredGraph, EdgeId, GraphError, Palette,
    SpanningForest,
};

//! Line-oriented text formats for graphs and budgets.
//!
//! Graph files start with `graph <vertex_count>` followed by
//! `edge <u> <v> <color>` records and optional `color <name>` declarations
//! for colors that no edge uses. Budget files hold `cap <color> <n>` records.
//! Anything after `#` on a line is ignored. Color names become ordinals in
//! first-seen order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{ColorBudget, Edge, EdgeColoredGraph, GraphError, Palette};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GraphError },
    #[error("missing `graph <vertex_count>` header")]
    MissingHeader,
    #[error("budget has no cap for color {0:?}")]
    MissingCap(String),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn number<T: std::str::FromStr>(line: usize, what: &str, token: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("{what} must be a non-negative integer, got {token:?}")))
}

pub fn parse_graph(text: &str) -> Result<EdgeColoredGraph, ParseError> {
    let mut lines = records(text);
    let vertex_count = match lines.next() {
        Some((line, fields)) if fields[0] == "graph" => {
            if fields.len() != 2 {
                return Err(syntax(line, "expected `graph <vertex_count>`"));
            }
            number(line, "vertex count", fields[1])?
        }
        Some((line, _)) => return Err(syntax(line, "expected `graph <vertex_count>` header")),
        None => return Err(ParseError::MissingHeader),
    };

    let mut palette = Palette::default();
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    for (line, fields) in lines {
        match fields[0] {
            "edge" => {
                if fields.len() != 4 {
                    return Err(syntax(line, "expected `edge <u> <v> <color>`"));
                }
                let u = number(line, "vertex", fields[1])?;
                let v = number(line, "vertex", fields[2])?;
                let color = palette.intern(fields[3]);
                edges.push(Edge::new(u, v, color));
                edge_lines.push(line);
            }
            "color" => {
                if fields.len() != 2 {
                    return Err(syntax(line, "expected `color <name>`"));
                }
                palette.intern(fields[1]);
            }
            "graph" => return Err(syntax(line, "duplicate `graph` header")),
            other => return Err(syntax(line, format!("unknown record {other:?}"))),
        }
    }

    EdgeColoredGraph::new(vertex_count, palette, edges).map_err(|source| {
        let line = match source {
            GraphError::Loop { edge, .. }
            | GraphError::DuplicateEdge { edge, .. }
            | GraphError::VertexOutOfRange { edge, .. }
            | GraphError::UnknownEdgeColor { edge, .. } => edge_lines[edge],
            _ => 0,
        };
        ParseError::Invalid { line, source }
    })
}

/// Parses caps for the colors of `palette`. Every color must be covered
/// exactly once.
pub fn parse_budget(text: &str, palette: &Palette) -> Result<ColorBudget, ParseError> {
    let mut caps: Vec<Option<usize>> = vec![None; palette.len()];
    for (line, fields) in records(text) {
        if fields[0] != "cap" || fields.len() != 3 {
            return Err(syntax(line, "expected `cap <color> <non-negative integer>`"));
        }
        let color = palette
            .lookup(fields[1])
            .ok_or_else(|| syntax(line, format!("color {:?} is not in the graph", fields[1])))?;
        let slot = &mut caps[color.index()];
        if slot.is_some() {
            return Err(syntax(line, format!("second cap for color {:?}", fields[1])));
        }
        *slot = Some(number(line, "cap", fields[2])?);
    }
    caps.into_iter()
        .enumerate()
        .map(|(i, cap)| cap.ok_or_else(|| ParseError::MissingCap(palette.names()[i].clone())))
        .collect::<Result<Vec<_>, _>>()
        .map(ColorBudget::from_caps)
}

/// Parses a budget file on its own; the palette is the file's colors in
/// first-seen order.
pub fn parse_budget_palette(text: &str) -> Result<(Palette, ColorBudget), ParseError> {
    let mut palette = Palette::default();
    for (line, fields) in records(text) {
        if fields[0] != "cap" || fields.len() != 3 {
            return Err(syntax(line, "expected `cap <color> <non-negative integer>`"));
        }
        palette.intern(fields[1]);
    }
    let budget = parse_budget(text, &palette)?;
    Ok((palette, budget))
}

/// Emits a graph file that parses back to an identical graph: every color
/// is declared up front so ordinals survive the round trip.
pub fn write_graph(graph: &EdgeColoredGraph) -> String {
    let mut out = format!("graph {}\n", graph.vertex_count());
    for name in graph.palette().names() {
        let _ = writeln!(out, "color {name}");
    }
    for e in graph.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.u, e.v, graph.palette().name(e.color));
    }
    out
}

pub fn write_budget(budget: &ColorBudget, palette: &Palette) -> String {
    let mut out = String::new();
    for c in palette.ids() {
        let _ = writeln!(out, "cap {} {}", palette.name(c), budget.cap(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColorId;

    const K22: &str = "\
# heterochromatic K_{2,2}
graph 4
edge 0 2 red
edge 0 3 red   # same color twice
edge 1 2 green
edge 1 3 blue
color spare
";

    #[test]
    fn parses_graph_with_unused_color() {
        let g = parse_graph(K22).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.palette().names(), &["red", "green", "blue", "spare"]);
        assert_eq!(g.color_multiplicity(ColorId(3)), Ok(0));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_graph("graph 3\nedge 0 1 a\n\nedge 1 1 a\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid { line: 4, source: GraphError::Loop { .. } }));
        let err = parse_graph("graph 3\nedge 0 x a\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        assert_eq!(parse_graph("# nothing\n"), Err(ParseError::MissingHeader));
        let err = parse_graph("graph 2\nedge 0 1 a\nedge 1 0 b\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid { line: 3, .. }));
    }

    #[test]
    fn budget_must_cover_every_color() {
        let g = parse_graph(K22).unwrap();
        let f = parse_budget("cap red 2\ncap green 1\ncap blue 0\ncap spare 5\n", g.palette()).unwrap();
        assert_eq!(f.caps(), &[2, 1, 0, 5]);
        assert_eq!(
            parse_budget("cap red 2\ncap green 1\ncap blue 0\n", g.palette()),
            Err(ParseError::MissingCap("spare".into()))
        );
        assert!(matches!(
            parse_budget("cap red -1\n", g.palette()),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_budget("cap mauve 1\n", g.palette()),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn standalone_budget() {
        let (palette, f) = parse_budget_palette("cap b 2\ncap a 0\n").unwrap();
        assert_eq!(palette.names(), &["b", "a"]);
        assert_eq!(f.caps(), &[2, 0]);
        assert!(parse_budget_palette("cap b 2\ncap b 1\n").is_err());
    }

    #[test]
    fn written_files_parse_back() {
        let g = parse_graph(K22).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let f = ColorBudget::from_caps(vec![1, 2, 3, 0]);
        assert_eq!(parse_budget(&write_budget(&f, g.palette()), g.palette()).unwrap(), f);
    }
}

use std::fmt::Write;

use super::{HasseDiagram, VertexColour};

pub(crate) fn colour_name(colour: VertexColour) -> &'static str {
    match colour {
        VertexColour::Ascending => "blue",
        VertexColour::Descending => "red",
        VertexColour::TradeOff => "gray",
        VertexColour::BoundaryLower | VertexColour::BoundaryUpper => "black",
    }
}

pub(crate) fn aggregate_label(diagram: &HasseDiagram, indices: &[usize]) -> String {
    let upper = diagram.signature().upper_index();
    indices
        .iter()
        .map(|&i| match i {
            0 => "0".to_string(),
            i if i == upper => "1".to_string(),
            i => format!("x{i}"),
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders a diagram in Graphviz DOT. Frozen edges are dashed.
pub fn diagram_to_dot(diagram: &HasseDiagram, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  node [style=filled, fontcolor=white];").unwrap();
    for v in diagram.vertices() {
        writeln!(
            out,
            "  v{} [label=\"{}\", fillcolor={}];",
            v.min_index(),
            aggregate_label(diagram, v.indices()),
            colour_name(v.colour())
        )
        .unwrap();
    }
    for (u, v, state) in diagram.edges() {
        let style = if state.is_frozen() {
            " [style=dashed]"
        } else {
            ""
        };
        writeln!(out, "  v{} -> v{}{};", u.0, v.0, style).unwrap();
    }
    out.push_str("}\n");
    out
}

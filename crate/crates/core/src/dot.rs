//! Deterministic Graphviz export of carry graphs. Even pivots are drawn
//! double-circled, odd pivots filled, the starting node bold; output order
//! follows the graph's stored node and edge order so diffs are stable.

use std::fmt::Write;

use crate::graphcore::YoungGraph;

pub fn render(graph: &YoungGraph, include_start: bool) -> String {
    let mut out = String::new();
    let kind = if graph.is_pruned() { "young" } else { "H" };
    let _ = writeln!(out, "digraph \"{}_{}_{}\" {{", kind, graph.g(), graph.k());
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle fontsize=11];");
    for (i, node) in graph.nodes().iter().enumerate() {
        if node.is_start {
            if include_start {
                let _ = writeln!(out, "  \"{}\" [penwidth=2.5];", node);
            }
            continue;
        }
        let mut attrs = Vec::new();
        if graph.is_even_pivot(i) {
            attrs.push("shape=doublecircle".to_string());
        }
        if graph.is_odd_pivot(i) {
            attrs.push("style=filled fillcolor=gray85".to_string());
        }
        let _ = writeln!(out, "  \"{}\" [{}];", node, attrs.join(" "));
    }
    for edge in graph.edges() {
        if !include_start && edge.from == 0 {
            continue;
        }
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"({},{})\"];",
            graph.nodes()[edge.from],
            graph.nodes()[edge.to],
            edge.label_left,
            edge.label_right
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::build_young_graph;

    #[test]
    fn dot_output_is_stable_and_complete() {
        let (young, _) = build_young_graph(8, 5).unwrap().unwrap();
        let a = render(&young, true);
        let b = render(&young, true);
        assert_eq!(a, b);
        assert!(a.starts_with("digraph \"young_8_5\""));
        assert!(a.contains("\"[[0,0]]\" [penwidth=2.5];"));
        assert!(a.contains("\"[[0,0]]\" -> \"[0,3]\" [label=\"(1,5)\"];"));
        // 8 internal nodes + start, 16 internal edges + 1 start edge
        assert_eq!(a.matches(" -> ").count(), 17);
        let without = render(&young, false);
        assert_eq!(without.matches(" -> ").count(), 16);
        assert!(!without.contains("[[0,0]]"));
    }
}

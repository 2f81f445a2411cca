//! Browser bindings for exploring Young graphs interactively: the graph
//! structure as JSON (drawn on a canvas by the page), the multiples list,
//! and the generating function with its series. All results come back as
//! JSON strings; errors are reported in-band so the page can show them.

use wasm_bindgen::prelude::*;

use revmul::classify::classify;
use revmul::enumerate::{enumerate_multiples, Limit};
use revmul::genfunc::{generating_functions_with_budget, GfOutcome};
use revmul::graphcore::build_h_graph;

fn error_json(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

/// The (g,k) Young graph as JSON: nodes with pivot flags, labeled edges,
/// size statistics and the family name. `exists: false` when the carry
/// graph has no pivots.
#[wasm_bindgen]
pub fn young_graph_json(g: u32, k: u32) -> String {
    let h = match build_h_graph(g, k) {
        Ok(h) => h,
        Err(e) => return error_json(e),
    };
    let Some((young, stats)) = h.prune() else {
        return serde_json::json!({
            "exists": false,
            "g": g,
            "k": k,
            "h_nodes": h.internal_node_count(),
            "h_edges": h.internal_edge_count(),
        })
        .to_string();
    };
    let nodes: Vec<serde_json::Value> = young
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            serde_json::json!({
                "label": n.to_string(),
                "start": n.is_start,
                "even": young.is_even_pivot(i),
                "odd": young.is_odd_pivot(i),
            })
        })
        .collect();
    let edges: Vec<serde_json::Value> = young
        .edges()
        .iter()
        .map(|e| {
            serde_json::json!({
                "from": e.from,
                "to": e.to,
                "label": format!("({},{})", e.label_left, e.label_right),
            })
        })
        .collect();
    serde_json::json!({
        "exists": true,
        "g": g,
        "k": k,
        "family": classify(&young).to_string(),
        "nodes": nodes,
        "edges": edges,
        "internal_nodes": young.internal_node_count(),
        "internal_edges": young.internal_edge_count(),
        "h_nodes": h.internal_node_count(),
        "h_edges": h.internal_edge_count(),
        "pruned_nodes": stats.removed_nodes,
        "pruned_edges": stats.removed_edges,
    })
    .to_string()
}

/// Graphviz text for the same graph, for copy-paste.
#[wasm_bindgen]
pub fn young_graph_dot(g: u32, k: u32) -> String {
    match build_h_graph(g, k).map(|h| h.prune()) {
        Ok(Some((young, _))) => revmul::dot::render(&young, true),
        Ok(None) => format!("// no ({},{}) Young graph\n", g, k),
        Err(e) => format!("// {}\n", e),
    }
}

/// The first `count` reverse multiples, in tuple notation plus decimal
/// when the value fits 64 bits.
#[wasm_bindgen]
pub fn multiples_json(g: u32, k: u32, count: u32) -> String {
    let young = match build_h_graph(g, k).map(|h| h.prune()) {
        Ok(Some((young, _))) => young,
        Ok(None) => return serde_json::json!({ "exists": false }).to_string(),
        Err(e) => return error_json(e),
    };
    let count = count.min(200) as usize;
    match enumerate_multiples(&young, Limit::Count(count)) {
        Ok(list) => {
            let rows: Vec<serde_json::Value> = list
                .iter()
                .map(|m| {
                    serde_json::json!({
                        "tuple": m.tuple_notation(),
                        "decimal": m.value_u64().map(|v| v.to_string()),
                        "digits": m.len(),
                    })
                })
                .collect();
            serde_json::json!({ "exists": true, "multiples": rows }).to_string()
        }
        Err(e) => error_json(e),
    }
}

/// Generating functions and the counting series.
#[wasm_bindgen]
pub fn generating_function_json(g: u32, k: u32, terms: u32) -> String {
    let young = match build_h_graph(g, k).map(|h| h.prune()) {
        Ok(Some((young, _))) => young,
        Ok(None) => return serde_json::json!({ "exists": false }).to_string(),
        Err(e) => return error_json(e),
    };
    let terms = terms.min(30) as usize;
    match generating_functions_with_budget(&young, 128) {
        Ok(outcome) => {
            let series: Vec<String> = match outcome.c_series(terms) {
                Ok(s) => s.iter().map(|c| c.to_string()).collect(),
                Err(e) => return error_json(e),
            };
            match outcome {
                GfOutcome::Closed(gfs) => serde_json::json!({
                    "exists": true,
                    "series_only": false,
                    "p": gfs.p.to_string(),
                    "q": gfs.q.to_string(),
                    "c": gfs.c.to_string(),
                    "series": series,
                })
                .to_string(),
                GfOutcome::SeriesOnly { .. } => serde_json::json!({
                    "exists": true,
                    "series_only": true,
                    "series": series,
                })
                .to_string(),
            }
        }
        Err(e) => error_json(e),
    }
}

//! Graphviz rendering of a route state.

use std::fmt::Write as _;

use crate::engine::RouteState;
use crate::model::{Instance, NodeId};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph: the depot as a box, one colour per route, edges in
/// visit order with both depot legs. A single-stop route is drawn as one
/// depot leg.
pub fn render_dot(inst: &Instance, state: &RouteState) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(inst.name()));
    out.push_str("  node [shape=circle];\n");
    out.push_str("  edge [colorscheme=set19, penwidth=2];\n");
    let _ = writeln!(
        out,
        "  {} [shape=box, label={}];",
        quote(inst.depot_label()),
        quote(inst.depot_label())
    );
    for w in inst.warehouses() {
        let label = format!("{}\\n{} t", inst.label(w), inst.demand(w));
        let _ = writeln!(out, "  {} [label=\"{}\"];", quote(inst.label(w)), label);
    }

    for (k, chain) in state.chains().iter().enumerate() {
        let color = k % 9 + 1;
        let names: Vec<&str> = chain.nodes().iter().map(|&v| inst.label(v)).collect();
        let _ = writeln!(
            out,
            "  // route {}: {} ({} t)",
            k + 1,
            names.join("-"),
            chain.load()
        );
        let mut legs: Vec<(NodeId, NodeId)> = Vec::with_capacity(chain.len() + 1);
        legs.push((NodeId::DEPOT, chain.first()));
        legs.extend(chain.nodes().windows(2).map(|w| (w[0], w[1])));
        if chain.len() > 1 {
            legs.push((chain.last(), NodeId::DEPOT));
        }
        for (a, b) in legs {
            let _ = writeln!(
                out,
                "  {} -- {} [color={color}, label=\"{}\"];",
                quote(inst.label(a)),
                quote(inst.label(b)),
                inst.dist(a, b)
            );
        }
    }
    out.push_str("}\n");
    out
}

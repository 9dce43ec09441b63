//! Graphviz rendering of a quotient structure, one fill colour per component.

use std::fmt::Write as _;

use redprod::ReducedProduct;

const PALETTE: [&str; 8] = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"];

/// Loops are left out: factors are reflexivized, so every class has one.
pub fn quotient_dot(rp: &ReducedProduct, components: &[Vec<usize>]) -> String {
    let mut colour = vec![0usize; rp.class_count()];
    for (k, members) in components.iter().enumerate() {
        for &c in members {
            colour[c] = k;
        }
    }
    let mut out = String::from("digraph quotient {\n  node [shape=box, style=filled];\n");
    for (c, rep) in rp.representatives().iter().enumerate() {
        let _ = writeln!(
            out,
            "  c{c} [label=\"{rep}\", fillcolor=\"{}\", comment=\"component {}\"];",
            PALETTE[colour[c] % PALETTE.len()],
            colour[c]
        );
    }
    for &(u, v) in rp.quotient().relation() {
        if u != v {
            let _ = writeln!(out, "  c{u} -> c{v};");
        }
    }
    out.push_str("}\n");
    out
}

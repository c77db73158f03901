use std::fmt::Write;

use super::DualComplex;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz text for the 1-skeleton. Nodes are stratum ids labelled by their
/// component index; edges keep multiplicity and are labelled by their id.
pub fn export_dot(gamma: &DualComplex) -> String {
    let mut out = String::from("graph gamma {\n");
    let vertices = gamma.cells(0);
    for v in vertices {
        let _ = writeln!(out, "  {} [label={}];", quote(&v.id), quote(&v.indices[0].to_string()));
    }
    for e in gamma.cells(1) {
        let (a, b) = (&vertices[e.faces[1]], &vertices[e.faces[0]]);
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(&a.id),
            quote(&b.id),
            quote(&e.id)
        );
    }
    out.push_str("}\n");
    out
}

//! Graphviz output for context posets and external spectra.

use std::fmt::Write;

use bohrify_core::context::ContextPoset;
use bohrify_core::spectrum::{ExternalSpectrum, PointSet};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram: contexts as boxes labelled with generators and linear
/// dimension, smaller contexts at the bottom.
pub fn contexts_dot(name: &str, poset: &ContextPoset) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "digraph \"{}\" {{",
        escape(&format!("{name} contexts"))
    );
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for (i, c) in poset.contexts().iter().enumerate() {
        let _ = writeln!(
            out,
            "  c{i} [label=\"{}\\ndim {}\"];",
            escape(&c.label),
            c.algebra.linear_dim()
        );
    }
    for (a, b) in poset.hasse_edges() {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    out.push_str("}\n");
    out
}

/// Spectrum points as ellipses `(context, character)`, covering restriction
/// arrows, and one subgraph per point closure. Points of `overlay` are
/// filled.
pub fn spectrum_dot(
    name: &str,
    poset: &ContextPoset,
    spectrum: &ExternalSpectrum,
    overlay: Option<&PointSet>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "digraph \"{}\" {{",
        escape(&format!("{name} spectrum"))
    );
    out.push_str("  rankdir=BT;\n  node [shape=ellipse];\n");
    for (p, sp) in spectrum.points().iter().enumerate() {
        let fill = match overlay {
            Some(set) if set.contains(p) => ", style=filled, fillcolor=lightblue",
            _ => "",
        };
        let _ = writeln!(
            out,
            "  p{p} [label=\"({}, {})\\n{}\"{fill}];",
            sp.context,
            sp.character,
            escape(&poset.context(sp.context).label)
        );
    }
    let hasse = poset.hasse_edges();
    for (p, sp) in spectrum.points().iter().enumerate() {
        for &(lo, hi) in &hasse {
            if hi == sp.context {
                if let Some(q) = spectrum.restrict(p, lo) {
                    let _ = writeln!(out, "  p{q} -> p{p};");
                }
            }
        }
    }
    for p in 0..spectrum.len() {
        let closure = spectrum.point_closure(p);
        if closure.count_ones(..) < 2 {
            continue;
        }
        let members: Vec<String> = closure.ones().map(|q| format!("p{q}")).collect();
        let _ = writeln!(out, "  subgraph closure_p{p} {{ {}; }}", members.join("; "));
    }
    out.push_str("}\n");
    out
}

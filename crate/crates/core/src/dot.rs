//! Graphviz output. Node order is fixed (element ids, or assembly order,
//! which is lexicographic by member set), so output is byte-stable.

use std::fmt::Write as _;

use crate::assembly::Assembly;
use crate::element_set::ElementSet;
use crate::lattice::FiniteFrame;
use crate::sublocale::boolean_sublocale;
use crate::topology::FiniteSpace;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of `L`, bottom at the bottom.
pub fn frame_dot(frame: &FiniteFrame) -> String {
    let mut out = String::from("digraph frame {\n  rankdir=BT;\n  node [shape=circle];\n");
    for a in frame.elements() {
        writeln!(out, "  n{a} [label={}];", quote(&frame.label(a))).unwrap();
    }
    for (a, b) in frame.cover_pairs() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of `S(L)` under inclusion. Closed sublocales are boxes,
/// open ones ellipses, clopen ones octagons; `𝔟(p)` for primes `p` is shaded.
pub fn assembly_dot(assembly: &Assembly) -> String {
    let frame = assembly.frame();
    let prime_points: Vec<ElementSet> = frame
        .primes()
        .iter()
        .map(|p| boolean_sublocale(frame, p).members().clone())
        .collect();
    let n = assembly.len();
    let mut out = String::from("digraph assembly {\n  rankdir=BT;\n");
    for i in 0..n {
        let s = assembly.get(i);
        let shape = match (s.is_closed(), s.is_open()) {
            (true, true) => "octagon",
            (true, false) => "box",
            (false, true) => "ellipse",
            (false, false) => "plaintext",
        };
        let mut attrs = format!("label={}, shape={shape}", quote(&s.to_string()));
        if prime_points.contains(s.members()) {
            attrs.push_str(", style=filled, fillcolor=lightgray");
        }
        writeln!(out, "  s{i} [{attrs}];").unwrap();
    }
    for i in 0..n {
        for j in 0..n {
            let covers = i != j
                && assembly.is_subset(i, j)
                && !(0..n).any(|k| k != i && k != j && assembly.is_subset(i, k) && assembly.is_subset(k, j));
            if covers {
                writeln!(out, "  s{i} -> s{j};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the specialization preorder, `x → y` when `x ∈ cl{y}`.
/// Points with the same neighbourhood share a strongly connected pair.
pub fn space_dot(space: &FiniteSpace) -> String {
    let n = space.points();
    let mut out = String::from("digraph space {\n  rankdir=BT;\n");
    for x in 0..n {
        writeln!(out, "  p{x} [label=\"{x}\"];").unwrap();
    }
    let lt = |x: usize, y: usize| x != y && space.specializes(x, y);
    for x in 0..n {
        for y in 0..n {
            let strict = lt(x, y) && !lt(y, x);
            let equivalent = lt(x, y) && lt(y, x);
            let covers = strict && !(0..n).any(|z| lt(x, z) && !lt(z, x) && lt(z, y) && !lt(y, z));
            if covers || equivalent {
                writeln!(out, "  p{x} -> p{y};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

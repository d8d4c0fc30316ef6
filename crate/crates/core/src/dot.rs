//! Graphviz output. Node order follows element and quasipoint indices.

use std::fmt::Write;

use crate::lattice::Lattice;
use crate::presheaf::EtaleSpace;
use crate::spectrum::StoneSpectrum;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram: cover edges only, elements of equal height on one rank.
pub fn lattice_dot(l: &Lattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n");
    for a in 0..l.len() {
        let _ = writeln!(out, "  e{a} [label={}];", quote(l.name(a)));
    }
    let heights = l.heights();
    let max = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=max {
        let row: Vec<String> = (0..l.len())
            .filter(|&a| heights[a] == h)
            .map(|a| format!("e{a}"))
            .collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", row.join("; "));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(out, "  e{a} -> e{b};");
    }
    out.push_str("}\n");
    out
}

/// Membership graph between elements and quasipoints.
pub fn spectrum_dot(l: &Lattice, spectrum: &StoneSpectrum) -> String {
    let mut out = String::from("graph spectrum {\n  rankdir=LR;\n");
    for a in 0..l.len() {
        let _ = writeln!(out, "  e{a} [label={}, shape=circle];", quote(l.name(a)));
    }
    for (i, q) in spectrum.quasipoints.iter().enumerate() {
        let min = crate::spectrum::min_element(l, q);
        let _ = writeln!(
            out,
            "  q{i} [label={}, shape=box];",
            quote(&format!("H_{}", l.name(min)))
        );
    }
    for a in 0..l.len() {
        for q in spectrum.basis_set(a).iter() {
            let _ = writeln!(out, "  e{a} -- q{q};");
        }
    }
    out.push_str("}\n");
    out
}

/// Germs grouped by quasipoint, with the projection drawn as edges.
pub fn etale_dot(
    l: &Lattice,
    etale: &EtaleSpace,
    label: impl Fn(usize, usize) -> String,
) -> String {
    let mut out = String::from("digraph etale {\n  rankdir=BT;\n");
    for (q, stalk) in etale.stalks.iter().enumerate() {
        let _ = writeln!(
            out,
            "  q{q} [label={}, shape=box];",
            quote(&format!("H_{}", l.name(stalk.minimum)))
        );
    }
    for (p, &(q, germ)) in etale.points.iter().enumerate() {
        let _ = writeln!(out, "  g{p} [label={}];", quote(&label(q, germ)));
        let _ = writeln!(out, "  g{p} -> q{q};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus;

    fn edges(dot: &str, sep: &str) -> usize {
        dot.lines().filter(|l| l.contains(sep)).count()
    }

    #[test]
    fn diamond_and_hexagon() {
        let b2 = lattice_dot(corpus("B2").unwrap().lattice());
        assert_eq!(b2.lines().filter(|l| l.contains("[label=")).count(), 4);
        assert_eq!(edges(&b2, "->"), 4);
        let o6 = lattice_dot(corpus("O6").unwrap().lattice());
        assert_eq!(edges(&o6, "->"), 6);
        assert!(o6.contains("e0 -> e1;") && !o6.contains("e0 -> e5;"));
    }

    #[test]
    fn bipartite_spectrum() {
        let b3 = corpus("B3").unwrap().into_lattice();
        let s = StoneSpectrum::new(&b3);
        let dot = spectrum_dot(&b3, &s);
        // each of the 3 quasipoints contains 4 elements
        assert_eq!(edges(&dot, "--"), 12);
        assert_eq!(dot, spectrum_dot(&b3, &s));
    }
}

//! Graphviz DOT export. Nodes are emitted in index order and edges in
//! lexicographic order, so output is stable.

use std::fmt::Write;

use crate::filters::{describe_set, enumerate_filters};
use crate::lattice::FinPoset;
use crate::semantics::StableModel;

use super::HarnessError;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn graph(name: &str, labels: &[String], edges: &[(usize, usize, Option<&str>)]) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(label));
    }
    for &(a, b, label) in edges {
        match label {
            Some(l) => {
                let _ = writeln!(out, "  n{a} -> n{b} [label={}];", quote(l));
            }
            None => {
                let _ = writeln!(out, "  n{a} -> n{b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Cover relation of a poset, drawn bottom to top.
pub fn hasse_dot(poset: &FinPoset) -> String {
    let edges: Vec<_> = poset.covers().into_iter().map(|(a, b)| (a, b, None)).collect();
    graph("hasse", poset.names(), &edges)
}

/// Every related pair of the model's bimodule as an edge labelled `R`.
pub fn bimodule_dot(m: &StableModel) -> Result<String, HarnessError> {
    let b = m.bimodule().ok_or(HarnessError::NoBimodule)?;
    let edges: Vec<_> = b.pairs().into_iter().map(|(w, v)| (w, v, Some("R"))).collect();
    Ok(graph("bimodule", m.frame().names(), &edges))
}

/// The filters of the frame ordered by inclusion.
pub fn filters_dot(m: &StableModel) -> Result<String, HarnessError> {
    let filt = enumerate_filters(m.frame().clone())?;
    let labels: Vec<String> = filt.sets().iter().map(|&s| describe_set(m.frame(), s)).collect();
    let edges: Vec<_> = filt.order().poset().covers().into_iter().map(|(a, b)| (a, b, None)).collect();
    Ok(graph("filters", &labels, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::parse_model;
    use crate::lattice::named::*;

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn d4_hasse_and_filters() {
        let d = d4();
        let h = hasse_dot(d.poset());
        assert_eq!(count(&h, "[label="), 4);
        assert_eq!(count(&h, "->"), 4);
        let m = parse_model(
            "elements = [\"0\", \"a\", \"b\", \"1\"]\norder = [[\"0\", \"a\"], [\"0\", \"b\"], [\"a\", \"1\"], [\"b\", \"1\"]]\n",
        )
        .unwrap();
        let f = filters_dot(&m).unwrap();
        assert_eq!(count(&f, "[label="), 4);
        assert_eq!(count(&f, "->"), 4);
        assert!(matches!(bimodule_dot(&m), Err(HarnessError::NoBimodule)));
    }

    #[test]
    fn one_point_hasse() {
        let h = hasse_dot(chain(1).poset());
        assert_eq!(count(&h, "[label="), 1);
        assert_eq!(count(&h, "->"), 0);
    }
}

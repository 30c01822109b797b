use std::fmt::{self, Write};

use crate::lattices::FinitePoset;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram as a `digraph`: nodes in display order (top first), one plain
/// edge per cover pair pointing from the larger node to the smaller.
pub fn emit_dot<N: fmt::Display>(poset: &FinitePoset<N>) -> String {
    let order = poset.display_order();
    let mut position = vec![0; poset.len()];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let mut out = String::from("digraph lattice {\n");
    for (p, &i) in order.iter().enumerate() {
        writeln!(out, "  n{p} [label=\"{}\"];", escape(&poset.node(i).to_string())).unwrap();
    }
    let mut edges: Vec<(usize, usize)> = poset
        .covers()
        .into_iter()
        .map(|(lo, hi)| (position[hi], position[lo]))
        .collect();
    edges.sort();
    for (a, b) in edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// One line per node in display order, listing the nodes it covers.
pub fn emit_text<N: fmt::Display>(poset: &FinitePoset<N>) -> String {
    let order = poset.display_order();
    let covers = poset.covers();
    let mut out = format!("nodes: {}\ncovers: {}\n", poset.len(), covers.len());
    for &i in &order {
        let below: Vec<String> = order
            .iter()
            .filter(|&&j| covers.contains(&(j, i)))
            .map(|&j| poset.node(j).to_string())
            .collect();
        if below.is_empty() {
            writeln!(out, "{}", poset.node(i)).unwrap();
        } else {
            writeln!(out, "{} > {}", poset.node(i), below.join(", ")).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{chain, predicted_ideal_lattice};
    use crate::fields::{ExtensionPair, FieldDescriptor};
    use std::sync::Arc;

    fn edge_count(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->")).count()
    }

    #[test]
    fn chain_of_three() {
        let dot = emit_dot(&chain(3));
        assert_eq!(dot, "digraph lattice {\n  n0 [label=\"2\"];\n  n1 [label=\"1\"];\n  n2 [label=\"0\"];\n  n0 -> n1;\n  n1 -> n2;\n}\n");
        assert_eq!(edge_count(&dot), 2);
    }

    #[test]
    fn gf4_depth_three() {
        let ext = ExtensionPair::new(FieldDescriptor::prime(2).unwrap(), FieldDescriptor::galois(2, 2).unwrap()).unwrap();
        let l = predicted_ideal_lattice(Arc::new(ext), 3).unwrap().labeled();
        let dot = emit_dot(&l);
        assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 10);
        assert_eq!(edge_count(&dot), 13);
        assert!(dot.lines().nth(1).unwrap().contains("\"R\""));
        assert_eq!(dot, emit_dot(&l));
        let text = emit_text(&l);
        assert!(text.contains("<X>_V > (1,<1>), (1,<a+1>), (1,<a>)"));
    }

    #[test]
    fn labels_are_escaped() {
        let p = FinitePoset::new(vec!["a\"b".to_string()], |a, b| a == b).unwrap();
        assert!(emit_dot(&p).contains("label=\"a\\\"b\""));
    }
}

mod common;

use common::{LONG_SAMPLE, SHORT_SAMPLE};
use eah_core::adaptive_graph::{AdaptiveGraph, Vertex};

fn v(name: &str) -> Vertex {
    match name.strip_suffix("_aux") {
        Some(s) => Vertex::aux(s.as_bytes()[0]),
        None => Vertex::base(name.as_bytes()),
    }
}

#[test]
fn short_sample_labels() {
    let mut g = AdaptiveGraph::build(SHORT_SAMPLE, 1).unwrap();
    g.assign_codewords();
    let labels: Vec<String> = g
        .edges()
        .map(|(e, l)| format!("{}->{} {}", e.from, e.to, l))
        .collect();
    assert_eq!(
        labels,
        [
            "a->b (2,0)",
            "b->a (1,0)",
            "b->b_aux (1,11)",
            "b->c (1,10)",
            "b_aux->b (0,λ)",
            "c->c_aux (1,1)",
            "c->d (1,0)",
            "c_aux->c (0,λ)",
            "d->b (1,0)",
        ]
    );
}

#[test]
fn long_sample_labels() {
    let mut g = AdaptiveGraph::build(LONG_SAMPLE, 1).unwrap();
    g.assign_codewords();
    let expected = [
        ("a", "b", 31, "0"),
        ("b", "a", 8, "0"),
        ("b", "e", 23, "1"),
        ("c", "a", 22, "10"),
        ("c", "e", 14, "11"),
        ("c", "c_aux", 28, "0"),
        ("d", "c", 36, "0"),
        ("e", "d", 37, "0"),
    ];
    assert_eq!(g.transitions().count(), expected.len());
    for (from, to, freq, code) in expected {
        let label = g.label(&v(from), &v(to)).unwrap();
        assert_eq!(
            (label.frequency, label.codeword.to_string().as_str()),
            (freq, code),
            "{from}->{to}"
        );
    }
    let after_c: Vec<String> = g
        .successors_sorted(&v("c"))
        .into_iter()
        .map(|(e, _)| e.to.to_string())
        .collect();
    assert_eq!(after_c, ["a", "e", "c_aux"]);
}

#[test]
fn dot_rendering() {
    let mut g = AdaptiveGraph::build(SHORT_SAMPLE, 1).unwrap();
    g.assign_codewords();
    let dot = g.export_dot();
    assert!(dot.starts_with("digraph G {\n"));
    assert!(dot.ends_with("}\n"));
    assert!(dot.contains("\"a\" -> \"b\" [label=\"(2,0)\"];"));
    assert!(dot.contains("\"c_aux\";"));
    assert_eq!(dot.lines().count(), 2 + 6 + 9);
}

use oct_core::io::{
    parse_canonical, parse_edge_list, parse_qubo, read_graph, sanitize, write_canonical,
    InputFormat, LabelOrder,
};
use oct_core::Graph;
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..25).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..60).prop_map(move |pairs| {
            let mut edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn canonical_round_trip(g in arb_graph()) {
        let bytes = write_canonical(&g);
        prop_assert_eq!(parse_canonical(&bytes).unwrap(), g.clone());
        let (h, labels) = read_graph(&bytes, InputFormat::Auto, LabelOrder::Lexicographic).unwrap();
        prop_assert_eq!(h, g);
        prop_assert!(labels.labels.iter().enumerate().all(|(i, l)| l == &i.to_string()));
    }

    #[test]
    fn edge_order_does_not_matter(g in arb_graph(), rot in 0usize..60, flip in any::<bool>()) {
        let mut lines: Vec<String> = g
            .edges()
            .map(|(u, v)| if flip { format!("v{v} v{u}") } else { format!("v{u} v{v}") })
            .collect();
        if !lines.is_empty() {
            let k = rot % lines.len();
            lines.rotate_left(k);
        }
        let text = lines.join("\n");
        let shuffled = sanitize(&parse_edge_list(text.as_bytes()).unwrap(), LabelOrder::Numeric);
        let sorted_text = { let mut l = lines.clone(); l.sort(); l.join("\n") };
        let sorted = sanitize(&parse_edge_list(sorted_text.as_bytes()).unwrap(), LabelOrder::Numeric);
        prop_assert_eq!(write_canonical(&shuffled.0), write_canonical(&sorted.0));
        prop_assert_eq!(shuffled.0.m(), g.m());
    }

    #[test]
    fn sanitize_drops_loops_and_zero_weights(n in 2usize..10, extra in 0usize..5) {
        let mut text = format!("1\n{n} {}\n", n - 1 + extra);
        for i in 1..n {
            text.push_str(&format!("{i} {} 3\n", i + 1));
        }
        for i in 0..extra {
            // self-loops and zero weights alternate
            if i % 2 == 0 {
                text.push_str(&format!("{} {} 5\n", i % n + 1, i % n + 1));
            } else {
                text.push_str("1 2 0\n");
            }
        }
        let raws = parse_qubo(text.as_bytes()).unwrap();
        let (g, _) = sanitize(&raws[0], LabelOrder::Numeric);
        prop_assert_eq!(g.n(), n);
        prop_assert_eq!(g.m(), n - 1);
    }
}

#[test]
fn qubo_duplicate_keeps_nonzero_copy() {
    let text = b"1\n3 3\n1 2 0\n2 1 4\n2 3 1\n";
    let (g, labels) = read_graph(text, InputFormat::Qubo, LabelOrder::Numeric).unwrap();
    assert_eq!((g.n(), g.m()), (3, 2));
    assert!(g.has_edge(0, 1));
    assert_eq!(labels.label(0), "1");
}

#[test]
fn label_orders_differ() {
    let raw = parse_edge_list(b"2 10\n10 9\n").unwrap();
    let (_, lex) = sanitize(&raw, LabelOrder::Lexicographic);
    let (_, num) = sanitize(&raw, LabelOrder::Numeric);
    assert_eq!(lex.labels, ["10", "2", "9"]);
    assert_eq!(num.labels, ["2", "9", "10"]);
}

#[test]
fn malformed_inputs_report_lines() {
    let err = parse_canonical(b"3 2\n0 1\n1 7\n").unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");
    assert!(parse_edge_list(b"a b c\n").is_err());
    assert!(parse_qubo(b"2\n3 1\n1 2 1\n").is_err());
}

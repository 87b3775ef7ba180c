//! Ingestion of the QUBO and edge-list corpora, deterministic sanitization,
//! and the canonical on-disk graph format.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{OctError, Result};
use crate::graph::Graph;

/// Unsanitized graph as read from a corpus file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawGraph {
    /// Every vertex label, including labels without surviving edges.
    pub labels: Vec<String>,
    pub edges: Vec<(String, String, i64)>,
}

/// Relabeling order used by [`sanitize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelOrder {
    /// Plain string comparison, so `"10" < "2"`.
    #[default]
    Lexicographic,
    /// Integer labels compare numerically and sort before any other label.
    Numeric,
}

impl LabelOrder {
    fn compare(self, a: &str, b: &str) -> Ordering {
        match self {
            LabelOrder::Lexicographic => a.cmp(b),
            LabelOrder::Numeric => match (a.parse::<i128>(), b.parse::<i128>()) {
                (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
                (Ok(_), Err(_)) => Ordering::Less,
                (Err(_), Ok(_)) => Ordering::Greater,
                (Err(_), Err(_)) => a.cmp(b),
            },
        }
    }
}

/// Original label of each sanitized vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelMap {
    pub labels: Vec<String>,
}

impl LabelMap {
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Whitespace tokens tagged with their 1-based line number.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .flat_map(|(i, line)| line.split_whitespace().map(move |t| (i + 1, t)))
}

fn as_text(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| OctError::parse(0, format!("invalid UTF-8: {e}")))
}

/// Parses a QUBO corpus file: an instance count, then per instance a line
/// `n nnz` followed by `nnz` triples `i j q` with 1-based indices.
pub fn parse_qubo(bytes: &[u8]) -> Result<Vec<RawGraph>> {
    let text = as_text(bytes)?;
    let mut toks = tokens(text);
    let mut last_line = 1;
    let mut next = |what: &str| -> Result<(usize, i64)> {
        match toks.next() {
            Some((line, tok)) => {
                last_line = line;
                tok.parse::<i64>()
                    .map(|x| (line, x))
                    .map_err(|_| OctError::parse(line, format!("expected {what}, found {tok:?}")))
            }
            None => Err(OctError::parse(
                last_line,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    };

    let (line, count) = next("instance count")?;
    if count < 0 {
        return Err(OctError::parse(line, "negative instance count"));
    }
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let (line, n) = next("vertex count")?;
        let (_, nnz) = next("entry count")?;
        if n < 0 || nnz < 0 {
            return Err(OctError::parse(line, "negative instance header"));
        }
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::with_capacity(nnz as usize);
        for _ in 0..nnz {
            let (line, i) = next("row index")?;
            let (_, j) = next("column index")?;
            let (_, q) = next("coefficient")?;
            if i < 1 || i > n || j < 1 || j > n {
                return Err(OctError::parse(
                    line,
                    format!("index ({i}, {j}) outside 1..={n}"),
                ));
            }
            edges.push((i.to_string(), j.to_string(), q));
        }
        out.push(RawGraph { labels, edges });
    }
    Ok(out)
}

/// Header `n m` of a canonical file, if `text` has exactly that structure.
fn canonical_header(text: &str) -> Option<(usize, usize)> {
    let mut lines = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let head: Vec<&str> = lines.next()?.split_whitespace().collect();
    if head.len() != 2 {
        return None;
    }
    let n: usize = head[0].parse().ok()?;
    let m: usize = head[1].parse().ok()?;
    let mut count = 0;
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return None;
        }
        let u: usize = toks[0].parse().ok()?;
        let v: usize = toks[1].parse().ok()?;
        if u >= n || v >= n {
            return None;
        }
        count += 1;
    }
    (count == m).then_some((n, m))
}

/// Parses whitespace-separated label pairs with unit weights. Lines starting
/// with `#` are ignored. A file in canonical format (header `n m` followed by
/// exactly `m` in-range pairs) yields the labels `0..n`, including isolated
/// vertices, and no header edge.
pub fn parse_edge_list(bytes: &[u8]) -> Result<RawGraph> {
    let text = as_text(bytes)?;
    let canonical = canonical_header(text);
    let mut labels = BTreeSet::new();
    let mut edges = Vec::new();
    let mut skipped_header = false;
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if canonical.is_some() && !skipped_header {
            skipped_header = true;
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if !toks.len().is_multiple_of(2) {
            return Err(OctError::parse(
                i + 1,
                format!("odd number of tokens ({})", toks.len()),
            ));
        }
        for pair in toks.chunks(2) {
            labels.insert(pair[0].to_string());
            labels.insert(pair[1].to_string());
            edges.push((pair[0].to_string(), pair[1].to_string(), 1));
        }
    }
    if let Some((n, _)) = canonical {
        labels.extend((0..n).map(|v| v.to_string()));
    }
    Ok(RawGraph {
        labels: labels.into_iter().collect(),
        edges,
    })
}

/// Parses the canonical format strictly, without relabeling.
pub fn parse_canonical(bytes: &[u8]) -> Result<Graph> {
    let text = as_text(bytes)?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (hline, head) = lines
        .next()
        .ok_or_else(|| OctError::parse(1, "missing header"))?;
    let field = |tok: Option<&str>, line: usize, what: &str| -> Result<usize> {
        tok.ok_or_else(|| OctError::parse(line + 1, format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|_| OctError::parse(line + 1, format!("non-numeric {what}")))
    };
    let mut it = head.split_whitespace();
    let n = field(it.next(), hline, "vertex count")?;
    let m = field(it.next(), hline, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines {
        let mut it = line.split_whitespace();
        let u = field(it.next(), i, "endpoint")?;
        let v = field(it.next(), i, "endpoint")?;
        if it.next().is_some() {
            return Err(OctError::parse(i + 1, "trailing tokens"));
        }
        if u >= n || v >= n || u == v {
            return Err(OctError::parse(i + 1, format!("invalid edge ({u}, {v})")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(OctError::parse(
            hline + 1,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

/// Drops self-loops and zero-weight edges, merges duplicates (an edge
/// survives if any copy has nonzero weight) and relabels vertices `0..n` by
/// the given label order.
pub fn sanitize(raw: &RawGraph, order: LabelOrder) -> (Graph, LabelMap) {
    let mut all: BTreeSet<&str> = raw.labels.iter().map(String::as_str).collect();
    for (a, b, _) in &raw.edges {
        all.insert(a);
        all.insert(b);
    }
    let mut labels: Vec<&str> = all.into_iter().collect();
    labels.sort_by(|a, b| order.compare(a, b));
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let edges = raw
        .edges
        .iter()
        .filter(|(a, b, w)| a != b && *w != 0)
        .map(|(a, b, _)| (index[a.as_str()], index[b.as_str()]));
    let g =
        Graph::from_edges(labels.len(), edges).expect("sanitized edges are in range and loop-free");
    let map = LabelMap {
        labels: labels.into_iter().map(str::to_string).collect(),
    };
    (g, map)
}

/// Canonical text: `n m`, then one `u v` line per edge with `u < v`, sorted.
pub fn write_canonical(g: &Graph) -> Vec<u8> {
    let mut out = String::with_capacity(16 + 12 * g.m());
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out.into_bytes()
}

/// Input formats understood by [`read_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    /// Canonical if the file matches it exactly, otherwise a named edge list.
    #[default]
    Auto,
    Canonical,
    EdgeList,
    /// First instance of a QUBO corpus file.
    Qubo,
}

/// Reads one graph. Canonical files are taken as-is; everything else goes
/// through [`sanitize`].
pub fn read_graph(
    bytes: &[u8],
    format: InputFormat,
    order: LabelOrder,
) -> Result<(Graph, LabelMap)> {
    let identity = |g: Graph| {
        let labels = (0..g.n()).map(|v| v.to_string()).collect();
        (g, LabelMap { labels })
    };
    match format {
        InputFormat::Canonical => parse_canonical(bytes).map(identity),
        InputFormat::EdgeList => Ok(sanitize(&parse_edge_list(bytes)?, order)),
        InputFormat::Qubo => {
            let raws = parse_qubo(bytes)?;
            let first = raws
                .first()
                .ok_or_else(|| OctError::parse(1, "QUBO file holds no instance"))?;
            Ok(sanitize(first, order))
        }
        InputFormat::Auto => {
            if canonical_header(as_text(bytes)?).is_some() {
                parse_canonical(bytes).map(identity)
            } else {
                Ok(sanitize(&parse_edge_list(bytes)?, order))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{complete, cycle};

    fn edge(a: &str, b: &str, w: i64) -> (String, String, i64) {
        (a.into(), b.into(), w)
    }

    #[test]
    fn qubo_single_instance() {
        let raws = parse_qubo(b"1\n3 2\n1 2 5\n2 3 0\n").unwrap();
        assert_eq!(raws.len(), 1);
        assert_eq!(raws[0].labels, vec!["1", "2", "3"]);
        assert_eq!(raws[0].edges, vec![edge("1", "2", 5), edge("2", "3", 0)]);
    }

    #[test]
    fn qubo_keeps_self_loops_until_sanitize() {
        let raws = parse_qubo(b"1\n2 1\n1 1 4\n").unwrap();
        assert_eq!(raws[0].edges, vec![edge("1", "1", 4)]);
        let (g, _) = sanitize(&raws[0], LabelOrder::Lexicographic);
        assert_eq!((g.n(), g.m()), (2, 0));
    }

    #[test]
    fn qubo_multiple_instances_and_negative_weights() {
        let raws = parse_qubo(b"2\n2 1\n1 2 -3\n3 1\n\n3 1 7\n").unwrap();
        assert_eq!(raws.len(), 2);
        assert_eq!(raws[1].edges, vec![edge("3", "1", 7)]);
    }

    #[test]
    fn qubo_errors_carry_line_numbers() {
        match parse_qubo(b"1\n3 2\n1 2 5\n") {
            Err(OctError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_qubo(b"1\n3 2\n1 x 5\n2 3 1\n") {
            Err(OctError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_qubo(b"one\n").is_err());
        assert!(parse_qubo(b"1\n2 1\n1 3 1\n").is_err());
    }

    #[test]
    fn edge_list_examples() {
        let raw = parse_edge_list(b"a b\nb c\n").unwrap();
        assert_eq!(raw.labels, vec!["a", "b", "c"]);
        assert_eq!(raw.edges.len(), 2);
        assert_eq!(parse_edge_list(b"# comment\n0 1\n").unwrap().edges.len(), 1);
        let dup = parse_edge_list(b"0 1\n1 0\n").unwrap();
        assert_eq!(dup.edges.len(), 2);
        assert_eq!(sanitize(&dup, LabelOrder::Lexicographic).0.m(), 1);
        assert!(matches!(
            parse_edge_list(b"0 1 2\n"),
            Err(OctError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn sanitize_examples() {
        let raw = RawGraph {
            labels: vec!["1".into(), "2".into(), "3".into()],
            edges: vec![edge("1", "2", 5), edge("2", "3", 0), edge("1", "1", 4)],
        };
        let (g, map) = sanitize(&raw, LabelOrder::Lexicographic);
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map.labels, vec!["1", "2", "3"]);

        let raw = RawGraph {
            labels: vec!["b".into(), "a".into()],
            edges: vec![edge("b", "a", 1)],
        };
        let (g, map) = sanitize(&raw, LabelOrder::Lexicographic);
        assert_eq!(map.id_of("a"), Some(0));
        assert_eq!(map.id_of("b"), Some(1));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn sanitize_mixed_weight_duplicates_keep_edge() {
        let raw = RawGraph {
            labels: vec![],
            edges: vec![edge("x", "y", 0), edge("y", "x", 2)],
        };
        assert_eq!(sanitize(&raw, LabelOrder::Lexicographic).0.m(), 1);
    }

    #[test]
    fn label_orders() {
        let raw = RawGraph {
            labels: vec!["2".into(), "10".into(), "a".into()],
            edges: vec![],
        };
        assert_eq!(
            sanitize(&raw, LabelOrder::Lexicographic).1.labels,
            vec!["10", "2", "a"]
        );
        assert_eq!(
            sanitize(&raw, LabelOrder::Numeric).1.labels,
            vec!["2", "10", "a"]
        );
    }

    #[test]
    fn isolated_labels_are_retained() {
        let raw = parse_qubo(b"1\n4 1\n1 2 1\n").unwrap();
        assert_eq!(sanitize(&raw[0], LabelOrder::Lexicographic).0.n(), 4);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(write_canonical(&complete(3)), b"3 3\n0 1\n0 2\n1 2\n");
        assert_eq!(write_canonical(&Graph::empty(0)), b"0 0\n");
    }

    #[test]
    fn canonical_round_trip() {
        let mut g = cycle(12);
        g = Graph::from_edges(14, g.edges().chain([(0, 6)])).unwrap();
        let bytes = write_canonical(&g);
        assert_eq!(parse_canonical(&bytes).unwrap(), g);
        let raw = parse_edge_list(&bytes).unwrap();
        assert_eq!(sanitize(&raw, LabelOrder::Numeric).0, g);
        assert_eq!(
            read_graph(&bytes, InputFormat::Auto, LabelOrder::Lexicographic)
                .unwrap()
                .0,
            g
        );
        // small graphs survive the lexicographic relabel unchanged
        let small = cycle(5);
        let raw = parse_edge_list(&write_canonical(&small)).unwrap();
        assert_eq!(sanitize(&raw, LabelOrder::Lexicographic).0, small);
    }

    #[test]
    fn canonical_parse_errors() {
        assert!(parse_canonical(b"3 2\n0 1\n").is_err());
        assert!(parse_canonical(b"3 1\n0 3\n").is_err());
        assert!(parse_canonical(b"").is_err());
    }

    #[test]
    fn auto_detects_edge_lists() {
        let (g, map) =
            read_graph(b"a b\nb c\nc a\n", InputFormat::Auto, LabelOrder::default()).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(map.labels, vec!["a", "b", "c"]);
    }
}

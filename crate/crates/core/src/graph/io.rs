use thiserror::Error;

use super::{EdgeError, Graph};

/// What went wrong on a line of an edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    InvalidUtf8,
    /// Header missing or not of the form `n m`.
    MalformedHeader,
    /// Edge line not of the form `u v`.
    MalformedLine,
    OutOfRange { vertex: usize, n: usize },
    SelfLoop { vertex: usize },
    DuplicateEdge { u: usize, v: usize },
    /// The header promised `expected` edges but the file lists `found`.
    EdgeCount { expected: usize, found: usize },
}

/// Edge-list parse failure; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {}", describe(.kind))]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::InvalidUtf8 => "input is not valid UTF-8".into(),
        ParseErrorKind::MalformedHeader => "expected header `n m`".into(),
        ParseErrorKind::MalformedLine => "expected edge line `u v`".into(),
        ParseErrorKind::OutOfRange { vertex, n } => {
            format!("vertex {vertex} out of range (n = {n})")
        }
        ParseErrorKind::SelfLoop { vertex } => format!("self-loop at vertex {vertex}"),
        ParseErrorKind::DuplicateEdge { u, v } => format!("duplicate edge {u} {v}"),
        ParseErrorKind::EdgeCount { expected, found } => {
            format!("header declares {expected} edges, found {found}")
        }
    }
}

fn two_numbers(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v` with `0 <= u, v < n`. Blank lines are skipped.
pub fn parse_edge_list(bytes: &[u8]) -> Result<Graph, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError {
        line: 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count(),
        kind: ParseErrorKind::InvalidUtf8,
    })?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError {
        line: 1,
        kind: ParseErrorKind::MalformedHeader,
    })?;
    let (n, m) = two_numbers(header).ok_or(ParseError {
        line: header_line,
        kind: ParseErrorKind::MalformedHeader,
    })?;

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut found = 0;
    let mut last_line = header_line;
    for (line, text) in lines {
        last_line = line;
        let err = |kind| ParseError { line, kind };
        let (u, v) = two_numbers(text).ok_or_else(|| err(ParseErrorKind::MalformedLine))?;
        for w in [u, v] {
            if w >= n {
                return Err(err(ParseErrorKind::OutOfRange { vertex: w, n }));
            }
        }
        if u == v {
            return Err(err(ParseErrorKind::SelfLoop { vertex: u }));
        }
        // Linear scan keeps the error on the offending line; lists are sorted afterwards.
        if adj[u].contains(&v) {
            return Err(err(ParseErrorKind::DuplicateEdge { u, v }));
        }
        adj[u].push(v);
        adj[v].push(u);
        found += 1;
    }
    if found != m {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::EdgeCount { expected: m, found },
        });
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(n, edges.collect::<Vec<_>>()).map_err(|e| {
        // Unreachable: every rejection above mirrors a from_edges check.
        let kind = match e {
            EdgeError::OutOfRange { vertex, n } => ParseErrorKind::OutOfRange { vertex, n },
            EdgeError::SelfLoop(vertex) => ParseErrorKind::SelfLoop { vertex },
            EdgeError::Duplicate(u, v) => ParseErrorKind::DuplicateEdge { u, v },
        };
        ParseError { line: 0, kind }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_edge_and_edgeless() {
        let g = parse_edge_list(b"2 1\n0 1").unwrap();
        assert_eq!(g, Graph::from_edges(2, [(0, 1)]).unwrap());
        let g = parse_edge_list(b"3 0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn errors_name_their_line() {
        let e = parse_edge_list(b"2 1\n0 0").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::SelfLoop { vertex: 0 });

        let e = parse_edge_list(b"3 2\n0 1\n1 0\n").unwrap_err();
        assert_eq!((e.line, e.kind), (3, ParseErrorKind::DuplicateEdge { u: 1, v: 0 }));

        let e = parse_edge_list(b"3 1\n0 3\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::OutOfRange { vertex: 3, n: 3 });

        let e = parse_edge_list(b"3 1\n0 x\n").unwrap_err();
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::MalformedLine));

        let e = parse_edge_list(b"3\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedHeader);

        let e = parse_edge_list(b"3 2\n0 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EdgeCount { expected: 2, found: 1 });

        let e = parse_edge_list(b"2 1\n0 1\n\xff").unwrap_err();
        assert_eq!((e.line, e.kind), (3, ParseErrorKind::InvalidUtf8));
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..30, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = crate::graph::gnp(n, p, seed);
            let back = parse_edge_list(g.to_edge_list().as_bytes()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}

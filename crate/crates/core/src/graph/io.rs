//! Plain-text graph format: a header line `n m`, then `m` lines `u v` with
//! `u < v`, sorted. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{Graph, GraphError};

impl Graph {
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = content_lines(text);
        let g = parse_graph_block(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(GraphError::Parse { line, msg: "trailing content".into() });
        }
        Ok(g)
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize), GraphError> {
    let err = |msg: &str| GraphError::Parse { line, msg: msg.into() };
    let mut it = s.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("expected two integers"));
    }
    let a = a.parse().map_err(|_| err("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| err("not a non-negative integer"))?;
    Ok((a, b))
}

/// Reads one `n m` header and its edge lines from `lines`.
pub(crate) fn parse_graph_block<'a, I>(lines: &mut I) -> Result<Graph, GraphError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hline, header) =
        lines.next().ok_or(GraphError::Parse { line: 0, msg: "missing header".into() })?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for _ in 0..m {
        let (line, s) = lines
            .next()
            .ok_or(GraphError::Parse { line: last_line, msg: format!("expected {m} edges") })?;
        last_line = line;
        let (u, v) = parse_pair(line, s)?;
        if u >= v {
            let msg = if u == v { "self-loop" } else { "edge must be written as u < v" };
            return Err(GraphError::Parse { line, msg: msg.into() });
        }
        if let Some(&prev) = edges.last() {
            if prev >= (u, v) {
                let msg = if prev == (u, v) { "duplicate edge" } else { "edges not sorted" };
                return Err(GraphError::Parse { line, msg: msg.into() });
            }
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::from_edges(5, [(3, 4), (0, 2), (1, 2)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "5 3\n0 2\n1 2\n3 4\n");
        assert_eq!(Graph::from_text(&text).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["3 1\n1 1\n", "3 2\n0 1\n0 1\n", "3 2\n1 2\n0 1\n", "3 1\n2 1\n", "3 2\n0 1\n", "x\n", "2 1\n0 5\n", "2 0\n0 1\n"] {
            assert!(Graph::from_text(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn comments_ignored() {
        let g = Graph::from_text("# c4\n4 4\n0 1\n0 3\n\n1 2\n2 3\n").unwrap();
        assert_eq!(g, Graph::cycle(4));
    }
}

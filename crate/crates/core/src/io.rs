//! graph6 (short form, n ≤ 62) and the plain edge-list text format.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Graph6Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const BIAS: u8 = 63;

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 string. The input must be exactly one encoded graph:
/// no `>>graph6<<` prefix and no line terminator.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    let (&head, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if head == 126 {
        return Err(Graph6Error::UnsupportedOrder);
    }
    if !(BIAS..126).contains(&head) {
        return Err(Graph6Error::MalformedHeader(head));
    }
    let n = usize::from(head - BIAS);
    let expected = body_len(n);
    for (offset, &byte) in body.iter().enumerate() {
        if !(BIAS..=126).contains(&byte) {
            return Err(Graph6Error::InvalidBodyByte { offset: offset + 1, byte });
        }
    }
    if body.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage(body.len() - expected));
    }

    let total_bits = n * n.saturating_sub(1) / 2;
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n).expect("n <= 62 by header check");
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    for pad in total_bits..expected * 6 {
        if bit(pad) {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(g)
}

/// Encodes a graph in short graph6 form.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    debug_assert!(n <= MAX_ORDER);
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`
/// with 0-based vertex indices. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: String| Error::EdgeList { line, message };

    let (hl, header) = lines.next().ok_or_else(|| err(1, "missing 'n m' header".into()))?;
    let (n, m) = two_ints(header).ok_or_else(|| err(hl, format!("bad header {header:?}")))?;
    let mut g = Graph::empty(n).map_err(|e| err(hl, e.to_string()))?;
    let mut seen = 0;
    for (ln, line) in lines {
        let (u, v) = two_ints(line).ok_or_else(|| err(ln, format!("bad edge {line:?}")))?;
        if g.has_edge(u, v) {
            return Err(err(ln, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v).map_err(|e| err(ln, e.to_string()))?;
        seen += 1;
    }
    if seen != m {
        return Err(err(hl, format!("header announces {m} edges, found {seen}")));
    }
    Ok(g)
}

fn two_ints(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Some((a, b)),
        _ => None,
    }
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.edge_count());
    for (i, j) in g.edges() {
        writeln!(s, "{i} {j}").unwrap();
    }
    s
}

/// Reads a graph file. Files whose first content line is `n m` are treated as
/// edge lists, anything else as newline-separated graph6 (one graph per line,
/// optional `>>graph6<<` prefix).
pub fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    parse_graphs(&std::fs::read_to_string(path)?)
}

/// [`read_graphs`] on text already in memory.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    if first.is_some_and(|l| two_ints(l).is_some()) {
        return Ok(vec![parse_edge_list(text)?]);
    }
    read_graph6_lines(text)
}

pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(|l| l.trim_end_matches('\r'))
        .map(|l| l.strip_prefix(">>graph6<<").unwrap_or(l))
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l).map_err(Error::from))
        .collect()
}

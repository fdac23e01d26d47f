use super::graph::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by the graph6 codec.
pub const GRAPH6_MAX_ORDER: usize = 1 << 18;

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encode in graph6: `N(n)` followed by the upper triangle of the adjacency
/// matrix, column by column, six bits per byte.
pub fn to_graph6(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let nbits = n * n.saturating_sub(1) / 2;
    let mut body = vec![0u8; nbits.div_ceil(6)];
    for (u, v) in g.edges() {
        // bit index of x(u, v), u < v
        let k = v * (v - 1) / 2 + u;
        body[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(body.iter().map(|b| b + 63));
    out
}

pub fn to_graph6_string(g: &Graph) -> String {
    String::from_utf8(to_graph6(g)).expect("graph6 is ASCII")
}

fn sixbits(line: &[u8], line_no: usize) -> Result<Vec<u8>> {
    line.iter()
        .map(|&c| {
            if (63..=126).contains(&c) {
                Ok(c - 63)
            } else {
                Err(Error::parse(line_no, format!("byte {c} outside the graph6 range")))
            }
        })
        .collect()
}

/// Decode one graph6 line (without newline). `line_no` is used in errors.
pub fn parse_graph6_line(line: &str, line_no: usize) -> Result<Graph> {
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let data = sixbits(line.as_bytes(), line_no)?;
    let (n, body) = match data.as_slice() {
        [] => return Err(Error::parse(line_no, "empty graph6 line")),
        [63, 63, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::parse(line_no, "truncated size field"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| acc << 6 | b as usize);
            (n, &rest[6..])
        }
        [63, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::parse(line_no, "truncated size field"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| acc << 6 | b as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => (*first as usize, rest),
    };
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::parse(line_no, format!("order {n} exceeds {GRAPH6_MAX_ORDER}")));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(Error::parse(
            line_no,
            format!("expected {} data bytes for {n} vertices, found {}", nbits.div_ceil(6), body.len()),
        ));
    }
    let mut adj = vec![Vec::new(); n];
    let mut k = 0usize;
    let bit = |k: usize| body[k / 6] >> (5 - k % 6) & 1 == 1;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                adj[u].push(v as u32);
                adj[v].push(u as u32);
            }
            k += 1;
        }
    }
    if (nbits..body.len() * 6).any(bit) {
        return Err(Error::parse(line_no, "nonzero padding bits"));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph::from_sorted_adj(adj))
}

/// Decode a graph6 file: one graph per non-empty line, optional header on
/// the first line.
pub fn parse_graph6(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.is_empty())
        .map(|(ln, l)| parse_graph6_line(l, ln))
        .collect()
}

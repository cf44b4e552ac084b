//! graph6 encoding and decoding.
//!
//! The format packs the upper triangle of the adjacency matrix,
//! column-major — pairs `(0,1), (0,2), (1,2), (0,3), ...` — into 6-bit
//! groups stored as printable bytes `63..=126`, preceded by the vertex
//! count: one byte `n + 63` for `n <= 62`, or `'~'` followed by three
//! 6-bit digits (big-endian) for `63 <= n <= 258047`. Padding bits are
//! zero. Files hold one graph per line, optionally preceded by the
//! `>>graph6<<` header.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &[u8] = b">>graph6<<";
const MAX_LONG_N: usize = 258_047;

/// Decodes a single graph6 line (header optional).
pub fn parse_graph6(input: &[u8]) -> Result<Graph> {
    let mut bytes = input;
    if bytes.starts_with(HEADER) {
        bytes = &bytes[HEADER.len()..];
    }
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(Error::MalformedGraph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::MalformedGraph6(format!(
            "byte {b:#x} outside the printable range 63..=126"
        )));
    }

    let (n, body) = decode_order(bytes)?;
    if n == 0 {
        return Err(Error::MalformedGraph6("graph of order 0".into()));
    }

    let bits = n * (n - 1) / 2;
    let expect = bits.div_ceil(6);
    if body.len() != expect {
        return Err(Error::MalformedGraph6(format!(
            "expected {expect} edge bytes for n={n}, found {}",
            body.len()
        )));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let group = body[k / 6] - 63;
            if group & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    // leftover bits of the last group must be zero padding
    if bits > 0 {
        let used = bits % 6;
        if used != 0 && (body[bits / 6] - 63) & ((1 << (6 - used)) - 1) != 0 {
            return Err(Error::MalformedGraph6("nonzero padding bits".into()));
        }
    }

    Graph::new(n, edges)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8])> {
    if bytes[0] != b'~' {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == b'~' {
        return Err(Error::MalformedGraph6(
            "orders above 258047 are not supported".into(),
        ));
    }
    if bytes.len() < 4 {
        return Err(Error::MalformedGraph6("truncated long-form order".into()));
    }
    let n = bytes[1..4]
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    Ok((n, &bytes[4..]))
}

/// Encodes a graph as a graph6 line (no trailing newline).
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= MAX_LONG_N {
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    } else {
        return Err(Error::InvalidArgument(format!(
            "graph6 caps at {MAX_LONG_N} vertices, got {n}"
        )));
    }

    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses a newline-delimited multi-graph file; blank lines are skipped.
/// Returns `(line_number, result)` pairs so a bad line can be reported
/// without aborting the rest.
pub fn parse_graph6_lines(text: &[u8]) -> Vec<(usize, Result<Graph>)> {
    text.split(|&b| b == b'\n')
        .enumerate()
        .filter(|(_, line)| !line.iter().all(|b| b.is_ascii_whitespace()))
        .map(|(idx, line)| (idx + 1, parse_graph6(line)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_decodes() {
        let g = parse_graph6(b"C~").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn p4_decodes() {
        let g = parse_graph6(b"Ch").unwrap();
        assert_eq!(g, Graph::path(4));
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph6(b"@").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn header_and_newline_tolerated() {
        assert_eq!(parse_graph6(b">>graph6<<Ch\n").unwrap(), Graph::path(4));
    }

    #[test]
    fn encodes_known_graphs() {
        assert_eq!(write_graph6(&Graph::complete(4)).unwrap(), "C~");
        assert_eq!(write_graph6(&Graph::path(4)).unwrap(), "Ch");
        assert_eq!(write_graph6(&Graph::new(1, []).unwrap()).unwrap(), "@");
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(b"C\x1f").is_err()); // byte below 63
        assert!(parse_graph6(b"ChC").is_err()); // trailing garbage
        assert!(parse_graph6(b"C").is_err()); // missing edge byte
        assert!(parse_graph6(b"?").is_err()); // order 0
    }

    #[test]
    fn nonzero_padding_rejected() {
        // n=2, one pair bit, so five padding bits; 'A' + group 000001
        // encodes a padding bit, not an edge.
        let ok = parse_graph6(b"A_").unwrap(); // 100000: edge (0,1)
        assert_eq!(ok.edge_count(), 1);
        assert!(parse_graph6(b"A`").is_err()); // 000001: padding set
    }

    #[test]
    fn long_form_roundtrip() {
        let g = Graph::path(100);
        let enc = write_graph6(&g).unwrap();
        assert!(enc.starts_with('~'));
        assert_eq!(parse_graph6(enc.as_bytes()).unwrap(), g);
    }

    #[test]
    fn multiline_files() {
        let parsed = parse_graph6_lines(b"Ch\n\nC~\nbad\x05\n");
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[0].0, 1);
        assert!(parsed[0].1.is_ok());
        assert!(parsed[1].1.is_ok());
        assert_eq!(parsed[2].0, 4);
        assert!(parsed[2].1.is_err());
    }
}

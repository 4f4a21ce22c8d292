//! graph6 interchange format.
//!
//! Layout: a size header followed by the upper-triangular adjacency bits in
//! column order `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per byte
//! (most significant first) with offset 63. Short form covers `n <= 62`;
//! the `~`-prefixed long form is accepted on input up to the 64-vertex cap.

use super::{Graph, MAX_VERTICES};
use crate::{Error, Result};

const OPTIONAL_HEADER: &str = ">>graph6<<";

/// Encodes a graph in short form (`n <= 62`).
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > 62 {
        return Err(Error::Graph6(format!(
            "short form encodes at most 62 vertices, got {n}"
        )));
    }
    let mut out = Vec::new();
    out.push(n as u8 + 63);
    let mut acc: u32 = 0;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u32::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc as u8 + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) as u8 + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parses one graph6 value, tolerating the optional `>>graph6<<` prefix
/// and surrounding whitespace.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(OPTIONAL_HEADER) {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside graph6 range")));
    }
    let (n, payload) = decode_size(bytes)?;
    if n == 0 {
        return Err(Error::Graph6("graph on 0 vertices is not supported".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::Graph6(format!(
            "order {n} exceeds the {MAX_VERTICES}-vertex representation"
        )));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    if payload.len() < need {
        return Err(Error::Graph6(format!(
            "truncated payload: need {need} bytes for n={n}, got {}",
            payload.len()
        )));
    }
    if payload.len() > need {
        return Err(Error::Graph6(format!(
            "payload too long: expected {need} bytes for n={n}, got {}",
            payload.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.adj[i] |= 1u64 << j;
                g.adj[j] |= 1u64 << i;
            }
            bit += 1;
        }
    }
    // Padding bits past the triangle must be zero.
    while bit < 6 * need {
        let byte = payload[bit / 6] - 63;
        if byte >> (5 - bit % 6) & 1 == 1 {
            return Err(Error::Graph6("nonzero trailing padding bits".into()));
        }
        bit += 1;
    }
    Ok(g)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    // Long form: '~' then three 6-bit digits, big-endian.
    if bytes.len() >= 2 && bytes[1] == 126 {
        return Err(Error::Graph6("very long size form is not supported".into()));
    }
    if bytes.len() < 4 {
        return Err(Error::Graph6("truncated long-form size header".into()));
    }
    let n = bytes[1..4]
        .iter()
        .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    Ok((n, &bytes[4..]))
}

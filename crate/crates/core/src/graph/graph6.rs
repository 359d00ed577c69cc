//! The graph6 text format: printable bytes carrying 6 bits each (offset 63),
//! vertex count header followed by the upper triangle of the adjacency
//! matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`.

use super::{Graph, GraphError};

/// Largest order representable with the 4-byte header.
pub const MAX_ORDER: usize = 258_047;

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 { offset, reason: reason.into() }
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// newline are accepted; nonzero padding bits are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let mut bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut base = 0;
    if bytes.starts_with(HEADER.as_bytes()) {
        bytes = &bytes[HEADER.len()..];
        base = HEADER.len();
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(base + pos, format!("byte {:#04x} outside 63..=126", bytes[pos])));
    }
    let (n, header_len) = match bytes {
        [] => return Err(err(base, "empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err(base + 2 + rest.len(), "truncated 8-byte order header"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, b| (acc << 6) | (b - 63) as usize);
            (n, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err(base + 1 + rest.len(), "truncated 4-byte order header"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n > MAX_ORDER {
        return Err(GraphError::Capacity { n, max: MAX_ORDER });
    }
    let body = &bytes[header_len..];
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() < need {
        return Err(err(base + bytes.len(), format!("truncated bit field: expected {need} bytes, got {}", body.len())));
    }
    if body.len() > need {
        return Err(err(base + header_len + need, "trailing bytes after bit field"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edge_set(n, edges))
}

/// Canonical graph6 encoding, without header or newline.
pub fn write_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(GraphError::Capacity { n, max: MAX_ORDER });
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut field = vec![0u8; bits.div_ceil(6)];
    // bit index of (u, v), u < v, in column order
    for &(u, v) in g.edges() {
        let k = v * (v - 1) / 2 + u;
        field[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(field.into_iter().map(|b| b + 63));
    Ok(String::from_utf8(out).expect("graph6 bytes are ascii"))
}

//! graph6 codec (header-free variant).
//!
//! Layout: N(n) encodes the order, then the upper triangle of the adjacency
//! matrix in column order x_{0,1}, x_{0,2}, x_{1,2}, x_{0,3}, ... packed into
//! 6-bit groups, each printed as `byte + 63`. N(n) is one byte for n <= 62,
//! `~` plus three bytes for n <= 258047, and `~~` plus six bytes above that.

use super::Graph;
use thiserror::Error;

/// Decode failures carry the byte position of the offending input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at position {pos} outside graph6 range 63..=126")]
    BadByte { pos: usize, byte: u8 },
    #[error("truncated size header at position {0}")]
    TruncatedHeader(usize),
    #[error("vertex count {0} exceeds the supported maximum {1}")]
    TooLarge(u64, u64),
    #[error("expected {expected} data bytes for n={n}, found {found}")]
    WrongLength { n: usize, expected: usize, found: usize },
    #[error("padding bits at position {0} are not zero")]
    NonzeroPadding(usize),
}

/// Graphs above this order are rejected on decode (encode asserts the same).
pub const MAX_DECODE_N: u64 = 10_000;

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    assert!(
        (n as u64) <= MAX_DECODE_N,
        "graph6 encoding capped at {MAX_DECODE_N} vertices"
    );
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // n <= 10^4 < 258048, so the 4-byte header always suffices here
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut group: u8 = 0;
    let mut filled: u8 = 0;
    for v in 1..n {
        for u in 0..v {
            group = (group << 1) | u8::from(g.has_edge(u, v));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte { pos, byte: b });
        }
    }
    let six = |pos: usize| -> u64 { (bytes[pos] - 63) as u64 };

    let (n, data_start) = if bytes[0] != 126 {
        (six(0), 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader(bytes.len()));
        }
        ((six(1) << 12) | (six(2) << 6) | six(3), 4)
    } else {
        if bytes.len() < 8 {
            return Err(Graph6Error::TruncatedHeader(bytes.len()));
        }
        let mut n = 0u64;
        for i in 2..8 {
            n = (n << 6) | six(i);
        }
        (n, 8)
    };
    if n > MAX_DECODE_N {
        return Err(Graph6Error::TooLarge(n, MAX_DECODE_N));
    }
    let n = n as usize;

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let found = bytes.len() - data_start;
    if found != expected {
        return Err(Graph6Error::WrongLength { n, expected, found });
    }

    let mut g = Graph::empty_builder(n);
    let mut idx = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = data_start + idx / 6;
            let bit = 5 - idx % 6;
            if (bytes[byte] - 63) >> bit & 1 != 0 {
                g.add_edge_mut(u, v);
            }
            idx += 1;
        }
    }
    // trailing pad bits must be zero
    if !nbits.is_multiple_of(6) {
        let last = bytes[bytes.len() - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding(bytes.len() - 1));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        // K4 packs the six upper-triangle ones into a single full group.
        assert_eq!(Graph::complete(4).to_graph6(), "C~");
        // Single isolated vertex: just the size byte.
        assert_eq!(Graph::empty(1).to_graph6(), "@");
        assert_eq!(Graph::empty(0).to_graph6(), "?");
        // Worked by hand from the byte rules: P4 = 0-1-2-3.
        // bits x01 x02 x12 x03 x13 x23 = 1 0 1 0 0 1 -> 0b101001 = 41 -> 'h'
        assert_eq!(Graph::path(4).to_graph6(), "Ch");
    }

    #[test]
    fn decode_inverts_encode() {
        for g in [
            Graph::empty(0),
            Graph::empty(5),
            Graph::path(7),
            Graph::complete(9),
            Graph::complete_bipartite(3, 5),
            Graph::join(&Graph::complete(1), &Graph::path(6)),
            Graph::complete_bipartite(40, 41), // 4-byte header regime
        ] {
            let s = g.to_graph6();
            assert_eq!(Graph::from_graph6(&s).unwrap(), g, "g6={s}");
        }
    }

    #[test]
    fn malformed_inputs_rejected_with_position() {
        assert_eq!(Graph::from_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(
            Graph::from_graph6("C\u{7f}"),
            Err(Graph6Error::BadByte { pos: 1, byte: 0x7f })
        );
        assert!(matches!(
            Graph::from_graph6("C~~"),
            Err(Graph6Error::WrongLength { n: 4, expected: 1, found: 2 })
        ));
        assert!(matches!(Graph::from_graph6("~A"), Err(Graph6Error::TruncatedHeader(_))));
        // D? would be 5 vertices with 10 zero bits in 2 bytes; one byte is short
        assert!(matches!(
            Graph::from_graph6("D?"),
            Err(Graph6Error::WrongLength { n: 5, expected: 2, found: 1 })
        ));
        // K2 with a dirty pad: only the top bit of the group is data, so
        // 0b100001 ('`') has a nonzero pad while 0b100000 ('_') is valid K2
        assert_eq!(Graph::from_graph6("A_").unwrap(), Graph::complete(2));
        assert!(matches!(Graph::from_graph6("A`"), Err(Graph6Error::NonzeroPadding(1))));
        // oversized header
        let s = "~~~~~~~~"; // 8 x '~': n = maximal 36-bit value
        assert!(matches!(Graph::from_graph6(s), Err(Graph6Error::TooLarge(_, _))));
    }

    #[test]
    fn trailing_newline_tolerated() {
        let s = format!("{}\n", Graph::complete(4).to_graph6());
        assert_eq!(Graph::from_graph6(&s).unwrap(), Graph::complete(4));
    }
}

//! graph6 encoding, restricted to the single-byte size header (n <= 62).
//!
//! A graph6 line is `chr(63 + n)` followed by the upper-triangle adjacency
//! bits in column-major order, packed six to a byte, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph, MAX_ORDER};

const BIAS: u8 = 63;

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (&head, payload) = bytes.split_first().ok_or(Error::Graph6Empty)?;
    for (position, &byte) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&byte) {
            return Err(Error::Graph6BadChar { position, byte });
        }
    }
    if head == 126 {
        return Err(Error::Graph6Unsupported);
    }
    let n = (head - BIAS) as usize;
    if n == 0 {
        return Err(Error::OrderOutOfRange(0));
    }
    let nbits = pair_count(n);
    let expected = nbits.div_ceil(6);
    if payload.len() != expected {
        return Err(Error::Graph6Truncated { expected, found: payload.len() });
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(adj))
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange(n));
    }
    let nbits = pair_count(n);
    let mut payload = vec![0u8; nbits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                payload[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(payload.len() + 1);
    out.push((BIAS + n as u8) as char);
    out.extend(payload.into_iter().map(|b| (b + BIAS) as char));
    Ok(out)
}

/// Reads one graph per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        assert_eq!(parse_graph6("A_").unwrap(), complete(2).unwrap());
        assert_eq!(parse_graph6("Bw").unwrap(), complete(3).unwrap());
        let empty3 = parse_graph6("B?").unwrap();
        assert_eq!(empty3, Graph::empty(3).unwrap());
        assert!(!empty3.is_connected());

        assert_eq!(to_graph6(&complete(2).unwrap()).unwrap(), "A_");
        assert_eq!(to_graph6(&complete(3).unwrap()).unwrap(), "Bw");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
        // P4 (0-1-2-3): bits (0,1)=1 (0,2)=0 (1,2)=1 (0,3)=0 (1,3)=0 (2,3)=1
        // -> 101001 = 41, 41 + 63 = 104 = 'h'
        assert_eq!(to_graph6(&path(4).unwrap()).unwrap(), "Ch");
        // C4 adds (0,3): 101101 = 45 -> 'l'
        assert_eq!(to_graph6(&cycle(4).unwrap()).unwrap(), "Cl");
    }

    #[test]
    fn error_kinds() {
        assert_eq!(parse_graph6(""), Err(Error::Graph6Empty));
        assert!(matches!(parse_graph6("A "), Err(Error::Graph6BadChar { position: 1, .. })));
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6Truncated { expected: 1, found: 0 })));
        assert!(matches!(parse_graph6("A__"), Err(Error::Graph6Truncated { .. })));
        assert_eq!(parse_graph6("~?@A"), Err(Error::Graph6Unsupported));
        assert_eq!(parse_graph6("?"), Err(Error::OrderOutOfRange(0)));
    }

    #[test]
    fn header_and_multiline() {
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), complete(3).unwrap());
        let gs = parse_graph6_lines("A_\n\nBw\n").unwrap();
        assert_eq!(gs.len(), 2);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=62, seed in any::<u64>(), density in 0u32..=100) {
            // Cheap deterministic edge sampler driven by the seed.
            let mut state = seed | 1;
            let mut edges = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if (state % 100) < density as u64 {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = to_graph6(&g).unwrap();
            prop_assert!(s.bytes().all(|b| (63..=126).contains(&b)));
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}

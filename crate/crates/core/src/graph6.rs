//! graph6 encoding for graphs of order at most 62.
//!
//! A graph6 line is the byte `n + 63` followed by the upper triangle of the
//! adjacency matrix, read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed big-endian into 6-bit groups each offset by 63. Padding bits must be
//! zero. An optional `>>graph6<<` header is accepted on input and never written.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::Graph;

/// Largest order representable with the one-byte size prefix.
pub const MAX_GRAPH6_ORDER: usize = 62;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("order {0} is not supported (graph6 here covers 1..={MAX_GRAPH6_ORDER})")]
    UnsupportedOrder(usize),
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("expected {expected} data bytes for order {n}, found {found}")]
    WrongLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-zero padding bits")]
    NonZeroPadding,
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<Graph6Error>,
    },
    #[error("read failed: {0}")]
    Io(String),
}

pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push((n + 63) as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&first, data) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { offset, byte });
        }
    }
    let n = (first - 63) as usize;
    if n == 0 || n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let expected = data_len(n);
    if data.len() != expected {
        return Err(Graph6Error::WrongLength {
            n,
            expected,
            found: data.len(),
        });
    }
    let mut g = Graph::new(n).expect("order checked above");
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let word = data[bit / 6] - 63;
            if word >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v).expect("vertices in range");
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let word = data[bit / 6] - 63;
        if word & ((1u8 << (6 - bit % 6)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(g)
}

/// Reads one graph per non-empty line.
pub fn read_all<R: BufRead>(reader: R) -> Result<Vec<Graph>, Graph6Error> {
    let mut graphs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Graph6Error::Io(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let g = decode(line.trim()).map_err(|e| Graph6Error::Line {
            line: i + 1,
            source: Box::new(e),
        })?;
        graphs.push(g);
    }
    Ok(graphs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        // 5 vertices, edges 0-2 0-4 1-3 3-4
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g).unwrap(), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
        assert_eq!(encode(&Graph::new(1).unwrap()).unwrap(), "@");
        assert_eq!(encode(&Graph::complete(4).unwrap()).unwrap(), "C~");
        assert_eq!(encode(&Graph::cycle(4).unwrap()).unwrap(), "Cl");
        assert_eq!(decode("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(
            decode(">>graph6<<C~\n").unwrap(),
            Graph::complete(4).unwrap()
        );
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("?"), Err(Graph6Error::UnsupportedOrder(0)));
        assert_eq!(
            decode("C~~"),
            Err(Graph6Error::WrongLength {
                n: 4,
                expected: 1,
                found: 2
            })
        );
        assert_eq!(
            decode("C\x7f"),
            Err(Graph6Error::InvalidByte {
                offset: 1,
                byte: 0x7f
            })
        );
        // three pairs for n = 3; the low three bits of '~' are padding
        assert_eq!(decode("B~"), Err(Graph6Error::NonZeroPadding));
        assert!(encode(&Graph::new(63).unwrap()).is_err());
    }

    #[test]
    fn reads_streams() {
        let text = "A_\n\nA?\nB~\n";
        let err = read_all(text.as_bytes()).unwrap_err();
        assert!(matches!(err, Graph6Error::Line { line: 4, .. }));
        let graphs = read_all("A_\nA?\n".as_bytes()).unwrap();
        assert_eq!(
            graphs.iter().map(Graph::size).collect::<Vec<_>>(),
            vec![1, 0]
        );
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=62, seed in any::<u64>()) {
            let mut g = Graph::new(n).unwrap();
            let mut s = seed | 1;
            for v in 1..n {
                for u in 0..v {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    if s & 3 == 0 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let text = encode(&g).unwrap();
            prop_assert_eq!(text.len(), 1 + data_len(n));
            prop_assert_eq!(decode(&text).unwrap(), g);
        }
    }
}

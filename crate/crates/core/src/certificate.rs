//! Serialized witnesses that a graph of order `n` and size `m` has a maximal edge coloring.
//!
//! The wire format is a compact UTF-8 JSON object
//! `{"n":4,"k":3,"edges":[[0,1,0],[0,3,2],...],"note":"..."}` with edges as
//! `[u, v, color]`, `u < v`, sorted lexicographically, and `note` omitted when
//! absent. [`Certificate::to_json`] always emits exactly this form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{chromatic_index_complete, maximality, EdgeColoring, MaximalityVerdict};
use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("vertex count {0} is outside 1..={MAX_VERTICES}")]
    InvalidOrder(usize),
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color out of range: {color} with k = {k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("invalid edge {u}-{v}: {reason}")]
    InvalidEdge {
        u: usize,
        v: usize,
        reason: &'static str,
    },
    #[error("certificate declares k = {found} but order {n} requires k = {expected}")]
    ColorCountMismatch {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("coloring is not maximal: {0}")]
    NotMaximal(MaximalityVerdict),
}

impl CertificateError {
    /// Stable short code; one per failure class.
    pub fn code(&self) -> &'static str {
        match self {
            CertificateError::Malformed(_) => "malformed",
            CertificateError::InvalidOrder(_) => "invalid-order",
            CertificateError::VertexOutOfRange { .. } => "vertex-out-of-range",
            CertificateError::ColorOutOfRange { .. } => "color-out-of-range",
            CertificateError::InvalidEdge { .. } => "invalid-edge",
            CertificateError::ColorCountMismatch { .. } => "k-mismatch",
            CertificateError::NotMaximal(v) => v.reason_code(),
        }
    }

    /// True for syntax or schema problems, as opposed to a well-formed but invalid witness.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, CertificateError::Malformed(_))
    }
}

impl Certificate {
    /// Edge count.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
        serde_json::from_str(text).map_err(|e| CertificateError::Malformed(e.to_string()))
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Certificate, CertificateError> {
        serde_json::from_slice(bytes).map_err(|e| CertificateError::Malformed(e.to_string()))
    }

    /// Compact canonical JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization is infallible")
    }
}

/// Builds a certificate from a coloring that verifies as maximal.
pub fn encode_certificate(g: &Graph, col: &EdgeColoring) -> Result<Certificate, CertificateError> {
    match maximality(g, col) {
        MaximalityVerdict::Maximal => {}
        MaximalityVerdict::ColorCountMismatch { expected, found } => {
            return Err(CertificateError::ColorCountMismatch {
                n: g.order(),
                expected,
                found,
            })
        }
        other => return Err(CertificateError::NotMaximal(other)),
    }
    Ok(Certificate {
        n: g.order(),
        k: col.colors(),
        edges: col.triples().map(|(u, v, c)| [u, v, c]).collect(),
        note: None,
    })
}

/// Rebuilds the graph and coloring and re-verifies maximality.
///
/// Edges may be listed in any order and orientation; re-encoding yields the
/// canonical sorted form.
pub fn decode_certificate(cert: &Certificate) -> Result<(Graph, EdgeColoring), CertificateError> {
    let n = cert.n;
    if n == 0 || n > MAX_VERTICES {
        return Err(CertificateError::InvalidOrder(n));
    }
    let expected = chromatic_index_complete(n);
    if cert.k != expected {
        return Err(CertificateError::ColorCountMismatch {
            n,
            expected,
            found: cert.k,
        });
    }
    let mut g = Graph::new(n).map_err(|_| CertificateError::InvalidOrder(n))?;
    for &[u, v, c] in &cert.edges {
        for vertex in [u, v] {
            if vertex >= n {
                return Err(CertificateError::VertexOutOfRange { vertex, n });
            }
        }
        if c >= cert.k {
            return Err(CertificateError::ColorOutOfRange {
                color: c,
                k: cert.k,
            });
        }
        match g.add_edge(u, v) {
            Ok(true) => {}
            Ok(false) => {
                return Err(CertificateError::InvalidEdge {
                    u,
                    v,
                    reason: "listed twice",
                })
            }
            Err(GraphError::SelfLoop(_)) => {
                return Err(CertificateError::InvalidEdge {
                    u,
                    v,
                    reason: "self-loop",
                })
            }
            Err(e) => unreachable!("vertices were range-checked: {e}"),
        }
    }
    let col = EdgeColoring::from_triples(&g, cert.k, cert.edges.iter().map(|&[u, v, c]| (u, v, c)))
        .expect("edges and colors were checked above");
    match maximality(&g, &col) {
        MaximalityVerdict::Maximal => Ok((g, col)),
        other => Err(CertificateError::NotMaximal(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{canonical_complete_coloring, Extension};
    use proptest::prelude::*;

    const C4_WITNESS: &str = r#"{"n":4,"k":3,"edges":[[0,1,0],[0,3,2],[1,2,1],[2,3,0]]}"#;

    #[test]
    fn c4_witness_decodes() {
        let cert = Certificate::from_json(C4_WITNESS).unwrap();
        let (g, col) = decode_certificate(&cert).unwrap();
        assert_eq!((g.order(), g.size(), col.colors()), (4, 4, 3));
        assert_eq!(encode_certificate(&g, &col).unwrap().to_json(), C4_WITNESS);
    }

    #[test]
    fn note_round_trips_and_is_omitted_when_absent() {
        let (g, col) = canonical_complete_coloring(3).unwrap();
        let cert = encode_certificate(&g, &col).unwrap();
        assert!(!cert.to_json().contains("note"));
        let noted = cert.with_note("round robin");
        let text = noted.to_json();
        assert!(text.ends_with(r#""note":"round robin"}"#));
        assert_eq!(Certificate::from_json(&text).unwrap(), noted);
    }

    #[test]
    fn distinct_rejections() {
        let bad_color = r#"{"n":4,"k":3,"edges":[[0,1,3],[0,3,2],[1,2,1],[2,3,0]]}"#;
        let err = decode_certificate(&Certificate::from_json(bad_color).unwrap()).unwrap_err();
        assert_eq!(err, CertificateError::ColorOutOfRange { color: 3, k: 3 });
        assert_eq!(err.to_string(), "color out of range: 3 with k = 3");

        let bad_vertex = r#"{"n":4,"k":3,"edges":[[0,4,0]]}"#;
        let err = decode_certificate(&Certificate::from_json(bad_vertex).unwrap()).unwrap_err();
        assert_eq!(err.code(), "vertex-out-of-range");

        let bad_k = r#"{"n":4,"k":4,"edges":[[0,1,0]]}"#;
        let err = decode_certificate(&Certificate::from_json(bad_k).unwrap()).unwrap_err();
        assert_eq!(err.code(), "k-mismatch");

        let clash = r#"{"n":4,"k":3,"edges":[[0,1,0],[0,3,0],[1,2,1],[2,3,0]]}"#;
        let err = decode_certificate(&Certificate::from_json(clash).unwrap()).unwrap_err();
        assert_eq!(
            err,
            CertificateError::NotMaximal(MaximalityVerdict::Improper {
                vertex: 0,
                color: 0
            })
        );
        assert_eq!(err.code(), "improper");

        let extendable = r#"{"n":4,"k":3,"edges":[[0,1,0],[0,3,1],[1,2,1],[2,3,0]]}"#;
        let err = decode_certificate(&Certificate::from_json(extendable).unwrap()).unwrap_err();
        assert_eq!(
            err,
            CertificateError::NotMaximal(MaximalityVerdict::Extendable(Extension {
                u: 0,
                v: 2,
                color: 2
            }))
        );

        let twice = r#"{"n":4,"k":3,"edges":[[0,1,0],[1,0,1]]}"#;
        let err = decode_certificate(&Certificate::from_json(twice).unwrap()).unwrap_err();
        assert_eq!(err.code(), "invalid-edge");

        for text in [
            r#"{"n":4,"k":3,"edges":[[0,1,0],[0,3,2]"#,
            r#"{"n":4,"k":3}"#,
            r#"{"n":4,"k":3,"edges":[[0,1]]}"#,
            r#"{"n":4,"k":3,"edges":[],"extra":1}"#,
            "\u{0}",
        ] {
            let err = Certificate::from_json(text).unwrap_err();
            assert!(err.is_parse_error(), "{text}");
            assert_eq!(err.code(), "malformed");
        }
    }

    #[test]
    fn encode_refuses_non_maximal() {
        let g = Graph::cycle(4).unwrap();
        let col = EdgeColoring::from_triples(&g, 3, [(0, 1, 0), (1, 2, 1), (2, 3, 0), (0, 3, 1)])
            .unwrap();
        assert_eq!(
            encode_certificate(&g, &col).unwrap_err().code(),
            "extendable"
        );
    }

    #[test]
    fn decode_accepts_unsorted_edges_and_normalizes() {
        let shuffled = r#"{"n":4,"k":3,"edges":[[3,2,0],[1,2,1],[3,0,2],[1,0,0]]}"#;
        let (g, col) = decode_certificate(&Certificate::from_json(shuffled).unwrap()).unwrap();
        assert_eq!(encode_certificate(&g, &col).unwrap().to_json(), C4_WITNESS);
    }

    proptest! {
        #[test]
        fn canonical_certificates_round_trip(n in 2usize..16, perm_seed in any::<u64>()) {
            let (g, col) = canonical_complete_coloring(n).unwrap();
            // rotate labels so certificates differ from the identity layout
            let shift = (perm_seed % n as u64) as usize;
            let perm: Vec<usize> = (0..n).map(|v| (v + shift) % n).collect();
            let (g, col) = (g.permuted(&perm), col.permuted(&perm));
            let cert = encode_certificate(&g, &col).unwrap();
            let text = cert.to_json();
            let parsed = Certificate::from_json(&text).unwrap();
            prop_assert_eq!(&parsed, &cert);
            let (g2, col2) = decode_certificate(&parsed).unwrap();
            prop_assert_eq!(encode_certificate(&g2, &col2).unwrap().to_json(), text);
        }
    }
}

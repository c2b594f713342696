//! Exact tools for maximal edge colorings of small graphs.
//!
//! A proper edge coloring of an `n`-vertex graph with `χ'(K_n)` colors is
//! *maximal* when no missing edge can be added in any color without breaking
//! properness. This crate verifies such colorings, evaluates the known bounds
//! on the set `MEC(n)` of edge counts that admit one, and decides membership
//! for small `n` by isomorph-free enumeration plus backtracking.

mod bits;

pub mod bounds;
pub mod canon;
pub mod certificate;
pub mod coloring;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod spectrum;

pub use bounds::{
    degree_sum_filter, independent_triple_filter, lemma_hypothesis_holds, lemma_quadratic,
    lemma_quadratic_root, lemma_stated_bound, max_degree_filter, mec_lower_bound,
    predicted_spectrum, theorem_nonmember, BoundTheorem, LowerBound, Parity, PredictionStatus,
    SpectrumPrediction,
};
pub use certificate::{decode_certificate, encode_certificate, Certificate, CertificateError};
pub use coloring::{
    canonical_complete_coloring, check_proper, chromatic_index_complete, find_extension,
    is_maximal_edge_coloring, maximality, ColoringError, EdgeColoring, Extension,
    MaximalityVerdict, Palette, ProperVerdict,
};
pub use enumerate::{enumerate_graphs, EnumerationError, GraphStream, MAX_ENUMERATION_ORDER};
pub use graph::{Graph, GraphError, MAX_VERTICES};
pub use search::{
    brute_force_exists_mec_coloring, decide, exists_mec_coloring, BruteForceError, Decision,
    FilterKind, Filters, Outcome,
};
pub use spectrum::{
    compute_spectrum, compute_spectrum_range, exists_mec, EntryStats, EntryVerdict, GraphSource,
    SearchConfig, SearchError, SpectrumEntry, UnknownReason,
};

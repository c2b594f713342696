//! Deciding membership of `m` in `MEC(n)` over a stream of candidate graphs.
//!
//! A pair `(n, m)` is a member as soon as one graph of the stream admits a
//! maximal coloring, and a nonmember only once every graph has been decided
//! negative. Graphs are handed to workers in contiguous, index-ordered chunks.
//! The verdict always comes from the lowest-index colorable graph, and the
//! reported statistics cover exactly the graphs up to it, so the result does
//! not depend on the number of workers.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{theorem_nonmember, BoundTheorem};
use crate::certificate::{encode_certificate, Certificate};
use crate::coloring::EdgeColoring;
use crate::enumerate::{EnumerationError, GraphStream, MAX_ENUMERATION_ORDER};
use crate::graph::{Graph, MAX_VERTICES};
use crate::search::{decide, Decision, Filters};

const CHUNK: usize = 32;

/// Where candidate graphs come from.
#[derive(Debug, Clone, Default)]
pub enum GraphSource {
    /// Isomorph-free enumeration.
    #[default]
    Internal,
    /// A fixed list, e.g. read from graph6; only graphs of matching order and
    /// size are used, in list order.
    External(Arc<Vec<Graph>>),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub filters: Filters,
    pub workers: usize,
    /// Per-graph cap on color assignments.
    pub node_budget: Option<u64>,
    /// Cap on augmentations examined by the internal enumerator, per `m`.
    pub enumeration_budget: Option<u64>,
    /// Answer pairs excluded by a proven result without searching.
    pub theorem_shortcuts: bool,
    pub source: GraphSource,
    /// Set from outside to stop early; affected entries come back unknown.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            filters: Filters::ALL,
            workers: 1,
            node_budget: None,
            enumeration_budget: None,
            theorem_shortcuts: false,
            source: GraphSource::Internal,
            cancel: None,
        }
    }
}

impl SearchConfig {
    fn cancelled(&self) -> bool {
        self.cancel
            .as_ref()
            .is_some_and(|c| c.load(Ordering::Relaxed))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    NodeBudget,
    EnumerationBudget,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryVerdict {
    Member(Certificate),
    NonmemberExhausted,
    NonmemberTheorem(BoundTheorem),
    Unknown(UnknownReason),
}

impl EntryVerdict {
    pub fn code(&self) -> &'static str {
        match self {
            EntryVerdict::Member(_) => "member",
            EntryVerdict::NonmemberExhausted => "nonmember-exhausted",
            EntryVerdict::NonmemberTheorem(_) => "nonmember-theorem",
            EntryVerdict::Unknown(_) => "unknown",
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, EntryVerdict::Member(_))
    }

    pub fn is_nonmember(&self) -> bool {
        matches!(
            self,
            EntryVerdict::NonmemberExhausted | EntryVerdict::NonmemberTheorem(_)
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EntryStats {
    /// Graphs taken from the stream.
    pub graphs: u64,
    /// Graphs rejected by a filter.
    pub filtered: u64,
    /// Graphs that reached backtracking.
    pub searched: u64,
    /// Color assignments tried, summed over graphs.
    pub nodes: u64,
    /// Graphs whose search ran out of budget.
    pub unknown: u64,
}

impl EntryStats {
    fn add(&mut self, other: &EntryStats) {
        self.graphs += other.graphs;
        self.filtered += other.filtered;
        self.searched += other.searched;
        self.nodes += other.nodes;
        self.unknown += other.unknown;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub n: usize,
    pub m: usize,
    pub verdict: EntryVerdict,
    pub stats: EntryStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {0} is outside 1..={MAX_ENUMERATION_ORDER} for exhaustive search")]
    UnsupportedOrder(usize),
    #[error("size {m} exceeds C({n},2) = {max}")]
    SizeOutOfRange { n: usize, m: usize, max: usize },
    #[error("worker count must be at least 1")]
    NoWorkers,
}

/// Decides whether `m ∈ MEC(n)`.
pub fn exists_mec(n: usize, m: usize, cfg: &SearchConfig) -> Result<SpectrumEntry, SearchError> {
    let order_limit = match cfg.source {
        GraphSource::Internal => MAX_ENUMERATION_ORDER,
        GraphSource::External(_) => MAX_VERTICES,
    };
    if n == 0 || n > order_limit {
        return Err(SearchError::UnsupportedOrder(n));
    }
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(SearchError::SizeOutOfRange { n, m, max });
    }
    if cfg.workers == 0 {
        return Err(SearchError::NoWorkers);
    }
    if cfg.theorem_shortcuts {
        if let Some(t) = theorem_nonmember(n, m) {
            return Ok(SpectrumEntry {
                n,
                m,
                verdict: EntryVerdict::NonmemberTheorem(t),
                stats: EntryStats::default(),
            });
        }
    }
    let feed: Box<dyn Iterator<Item = Result<Graph, EnumerationError>> + Send> = match &cfg.source {
        GraphSource::Internal => Box::new(GraphStream::new(n, m, cfg.enumeration_budget).map_err(
            |e| match e {
                EnumerationError::UnsupportedOrder(n) => SearchError::UnsupportedOrder(n),
                EnumerationError::SizeOutOfRange { n, m, max } => {
                    SearchError::SizeOutOfRange { n, m, max }
                }
                EnumerationError::BudgetExceeded { .. } => unreachable!("raised while streaming"),
            },
        )?),
        GraphSource::External(list) => {
            let list = Arc::clone(list);
            Box::new((0..list.len()).filter_map(move |i| {
                let g = &list[i];
                (g.order() == n && g.size() == m).then(|| Ok(g.clone()))
            }))
        }
    };
    let run = Run::new(feed, cfg);
    let result = if cfg.workers == 1 {
        run.work();
        run
    } else {
        std::thread::scope(|scope| {
            for _ in 0..cfg.workers {
                scope.spawn(|| run.work());
            }
        });
        run
    };
    Ok(result.finish(n, m))
}

/// Decides every `m` in `0..=C(n,2)` in increasing order, passing each entry
/// to `sink` as soon as it is known.
pub fn compute_spectrum(
    n: usize,
    cfg: &SearchConfig,
    sink: impl FnMut(&SpectrumEntry),
) -> Result<Vec<SpectrumEntry>, SearchError> {
    let max = n * n.saturating_sub(1) / 2;
    compute_spectrum_range(n, 0, max, cfg, sink)
}

/// [`compute_spectrum`] restricted to `from..=to`. Stops after the current
/// entry once `cfg.cancel` is set.
pub fn compute_spectrum_range(
    n: usize,
    from: usize,
    to: usize,
    cfg: &SearchConfig,
    mut sink: impl FnMut(&SpectrumEntry),
) -> Result<Vec<SpectrumEntry>, SearchError> {
    let mut entries = Vec::new();
    for m in from..=to {
        let entry = exists_mec(n, m, cfg)?;
        sink(&entry);
        entries.push(entry);
        if cfg.cancelled() {
            break;
        }
    }
    Ok(entries)
}

struct Chunk {
    start: u64,
    graphs: Vec<Graph>,
}

/// Per-chunk results. Chunks stop at their first colorable graph, so
/// `stats` covers exactly the processed prefix.
struct ChunkResult {
    start: u64,
    stats: EntryStats,
    member: Option<(u64, Graph, EdgeColoring)>,
}

struct Feed {
    source: Box<dyn Iterator<Item = Result<Graph, EnumerationError>> + Send>,
    next_index: u64,
    exhausted: bool,
    enumeration_failed: bool,
}

struct Run<'a> {
    cfg: &'a SearchConfig,
    feed: Mutex<Feed>,
    best: AtomicU64,
    results: Mutex<Vec<ChunkResult>>,
    interrupted: AtomicBool,
}

impl<'a> Run<'a> {
    fn new(
        source: Box<dyn Iterator<Item = Result<Graph, EnumerationError>> + Send>,
        cfg: &'a SearchConfig,
    ) -> Self {
        Run {
            cfg,
            feed: Mutex::new(Feed {
                source,
                next_index: 0,
                exhausted: false,
                enumeration_failed: false,
            }),
            best: AtomicU64::new(u64::MAX),
            results: Mutex::new(Vec::new()),
            interrupted: AtomicBool::new(false),
        }
    }

    fn take_chunk(&self) -> Option<Chunk> {
        let mut feed = self.feed.lock().expect("feed lock");
        if feed.exhausted || feed.next_index > self.best.load(Ordering::Acquire) {
            return None;
        }
        let start = feed.next_index;
        let mut graphs = Vec::with_capacity(CHUNK);
        while graphs.len() < CHUNK {
            match feed.source.next() {
                Some(Ok(g)) => graphs.push(g),
                Some(Err(_)) => {
                    feed.enumeration_failed = true;
                    feed.exhausted = true;
                    break;
                }
                None => {
                    feed.exhausted = true;
                    break;
                }
            }
        }
        feed.next_index += graphs.len() as u64;
        (!graphs.is_empty()).then_some(Chunk { start, graphs })
    }

    fn work(&self) {
        loop {
            if self.cfg.cancelled() {
                self.interrupted.store(true, Ordering::Release);
                return;
            }
            let Some(chunk) = self.take_chunk() else {
                return;
            };
            let result = self.process(chunk);
            self.results.lock().expect("results lock").push(result);
        }
    }

    fn process(&self, chunk: Chunk) -> ChunkResult {
        let mut stats = EntryStats::default();
        let mut member = None;
        for (offset, g) in chunk.graphs.into_iter().enumerate() {
            let index = chunk.start + offset as u64;
            if index > self.best.load(Ordering::Acquire) {
                break;
            }
            if self.cfg.cancelled() {
                self.interrupted.store(true, Ordering::Release);
                break;
            }
            let outcome = decide(&g, self.cfg.filters, self.cfg.node_budget);
            stats.graphs += 1;
            stats.nodes += outcome.nodes;
            match outcome.decision {
                Decision::Filtered(_) => stats.filtered += 1,
                Decision::NotColorable => stats.searched += 1,
                Decision::Unknown => {
                    stats.searched += 1;
                    stats.unknown += 1;
                }
                Decision::Colorable(col) => {
                    stats.searched += 1;
                    self.best.fetch_min(index, Ordering::AcqRel);
                    member = Some((index, g, col));
                    break;
                }
            }
        }
        ChunkResult {
            start: chunk.start,
            stats,
            member,
        }
    }

    fn finish(self, n: usize, m: usize) -> SpectrumEntry {
        let feed = self.feed.into_inner().expect("feed lock");
        let mut results = self.results.into_inner().expect("results lock");
        results.sort_by_key(|r| r.start);
        let best = self.best.into_inner();
        let mut stats = EntryStats::default();
        let mut witness = None;
        for r in results {
            if r.start > best {
                break;
            }
            stats.add(&r.stats);
            if let Some((index, g, col)) = r.member {
                if index == best {
                    witness = Some((index, g, col));
                    break;
                }
            }
        }
        let verdict = if let Some((index, g, col)) = witness {
            let cert = encode_certificate(&g, &col)
                .expect("search only returns verified colorings")
                .with_note(format!("graph {index} of the candidate stream"));
            EntryVerdict::Member(cert)
        } else if self.interrupted.into_inner() {
            EntryVerdict::Unknown(UnknownReason::Cancelled)
        } else if feed.enumeration_failed {
            EntryVerdict::Unknown(UnknownReason::EnumerationBudget)
        } else if stats.unknown > 0 {
            EntryVerdict::Unknown(UnknownReason::NodeBudget)
        } else {
            EntryVerdict::NonmemberExhausted
        };
        SpectrumEntry {
            n,
            m,
            verdict,
            stats,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::decode_certificate;
    use crate::coloring::is_maximal_edge_coloring;
    use crate::graph6;

    fn members(n: usize, cfg: &SearchConfig) -> Vec<usize> {
        compute_spectrum(n, cfg, |_| {})
            .unwrap()
            .into_iter()
            .filter(|e| e.verdict.is_member())
            .map(|e| e.m)
            .collect()
    }

    #[test]
    fn small_spectra_match_independent_search() {
        // computed separately by plain backtracking over a graph atlas
        let cfg = SearchConfig::default();
        assert_eq!(members(1, &cfg), vec![0]);
        assert_eq!(members(2, &cfg), vec![1]);
        assert_eq!(members(3, &cfg), vec![3]);
        assert_eq!(members(4, &cfg), vec![4, 6]);
        assert_eq!(members(5, &cfg), vec![8, 9, 10]);
        assert_eq!(members(6, &cfg), vec![9, 10, 11, 12, 13, 15]);
        assert_eq!(members(7, &cfg), (15..=21).collect::<Vec<_>>());
        let mut eight: Vec<usize> = (16..=26).collect();
        eight.push(28);
        assert_eq!(members(8, &cfg), eight);
    }

    #[test]
    fn c4_is_the_witness_for_four_edges() {
        let e = exists_mec(4, 4, &SearchConfig::default()).unwrap();
        let EntryVerdict::Member(cert) = &e.verdict else {
            panic!("expected member, got {:?}", e.verdict)
        };
        let (g, col) = decode_certificate(cert).unwrap();
        assert!(is_maximal_edge_coloring(&g, &col));
        assert_eq!((g.order(), g.size(), col.colors()), (4, 4, 3));
    }

    #[test]
    fn below_the_bound_is_decided_by_exhaustion() {
        for m in 0..4 {
            let e = exists_mec(4, m, &SearchConfig::default()).unwrap();
            assert_eq!(e.verdict, EntryVerdict::NonmemberExhausted);
        }
        let cfg = SearchConfig {
            theorem_shortcuts: true,
            ..SearchConfig::default()
        };
        let e = exists_mec(4, 3, &cfg).unwrap();
        assert_eq!(
            e.verdict,
            EntryVerdict::NonmemberTheorem(BoundTheorem::EvenLowerBound)
        );
        assert_eq!(e.stats, EntryStats::default());
        // 5 is not covered by any result, so shortcuts change nothing
        assert_eq!(
            exists_mec(4, 5, &cfg).unwrap().verdict,
            EntryVerdict::NonmemberExhausted
        );
    }

    #[test]
    fn complete_graphs_are_members() {
        for n in 3..=10 {
            let e = exists_mec(n, n * (n - 1) / 2, &SearchConfig::default()).unwrap();
            let EntryVerdict::Member(cert) = &e.verdict else {
                panic!("K_{n}")
            };
            decode_certificate(cert).unwrap();
        }
    }

    #[test]
    fn worker_count_does_not_change_entries() {
        let one = compute_spectrum(6, &SearchConfig::default(), |_| {}).unwrap();
        for workers in [2, 3, 8] {
            let cfg = SearchConfig {
                workers,
                ..SearchConfig::default()
            };
            assert_eq!(compute_spectrum(6, &cfg, |_| {}).unwrap(), one);
        }
    }

    #[test]
    fn external_stream_gives_the_same_verdicts() {
        let text = include_str!("../tests/data/atlas6.g6");
        let list = Arc::new(graph6::read_all(text.as_bytes()).unwrap());
        let cfg = SearchConfig {
            source: GraphSource::External(list),
            ..SearchConfig::default()
        };
        assert_eq!(members(6, &cfg), members(6, &SearchConfig::default()));
    }

    #[test]
    fn budgets_yield_unknown_not_nonmember() {
        let cfg = SearchConfig {
            node_budget: Some(1),
            filters: Filters::NONE,
            ..SearchConfig::default()
        };
        let e = exists_mec(6, 8, &cfg).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Unknown(UnknownReason::NodeBudget));
        assert!(e.stats.unknown > 0);

        let cfg = SearchConfig {
            enumeration_budget: Some(5),
            ..SearchConfig::default()
        };
        let e = exists_mec(7, 10, &cfg).unwrap();
        assert_eq!(
            e.verdict,
            EntryVerdict::Unknown(UnknownReason::EnumerationBudget)
        );
    }

    #[test]
    fn cancellation_is_reported() {
        let flag = Arc::new(AtomicBool::new(true));
        let cfg = SearchConfig {
            cancel: Some(flag),
            ..SearchConfig::default()
        };
        let e = exists_mec(6, 8, &cfg).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Unknown(UnknownReason::Cancelled));
        let entries = compute_spectrum(6, &cfg, |_| {}).unwrap();
        assert_eq!(entries.len(), 1);
    }

    #[test]
    fn rejects_bad_arguments() {
        let cfg = SearchConfig::default();
        assert_eq!(
            exists_mec(13, 1, &cfg),
            Err(SearchError::UnsupportedOrder(13))
        );
        assert_eq!(
            exists_mec(0, 0, &cfg),
            Err(SearchError::UnsupportedOrder(0))
        );
        assert!(matches!(
            exists_mec(4, 7, &cfg),
            Err(SearchError::SizeOutOfRange { .. })
        ));
        let cfg = SearchConfig {
            workers: 0,
            ..SearchConfig::default()
        };
        assert_eq!(exists_mec(4, 4, &cfg), Err(SearchError::NoWorkers));
    }

    #[test]
    fn streaming_sink_sees_every_entry_in_order() {
        let mut seen = Vec::new();
        let entries =
            compute_spectrum_range(5, 3, 7, &SearchConfig::default(), |e| seen.push(e.m)).unwrap();
        assert_eq!(seen, vec![3, 4, 5, 6, 7]);
        assert_eq!(entries.len(), 5);
    }
}

//! Greedy online matching with discards.
//!
//! Each request is decided before the next one is seen: the left label takes
//! its first unoccupied neighbor in oracle order, or is discarded.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MachineError, MatchError};
use crate::graph::{BipartiteGraph, Graph};
use crate::label::BitLabel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "right", rename_all = "kebab-case")]
pub enum Outcome {
    Matched(BitLabel),
    Discarded,
    DuplicateIgnored,
}

/// One log line per request, in arrival order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub left: BitLabel,
    pub outcome: Outcome,
}

enum GraphHandle<'g> {
    Borrowed(&'g dyn BipartiteGraph),
    Shared(Graph),
}

pub struct MatchSession<'g> {
    graph: GraphHandle<'g>,
    occupied: BTreeMap<BitLabel, BitLabel>,
    matched: BTreeMap<BitLabel, BitLabel>,
    discarded: Vec<BitLabel>,
    discarded_set: BTreeSet<BitLabel>,
    log: Vec<LogEntry>,
    requests_seen: u64,
}

impl MatchSession<'static> {
    /// A session that keeps its graph alive.
    pub fn shared(graph: Graph) -> Self {
        Self::with_handle(GraphHandle::Shared(graph))
    }
}

impl<'g> MatchSession<'g> {
    pub fn new(graph: &'g dyn BipartiteGraph) -> Self {
        Self::with_handle(GraphHandle::Borrowed(graph))
    }

    fn with_handle(graph: GraphHandle<'g>) -> Self {
        Self {
            graph,
            occupied: BTreeMap::new(),
            matched: BTreeMap::new(),
            discarded: Vec::new(),
            discarded_set: BTreeSet::new(),
            log: Vec::new(),
            requests_seen: 0,
        }
    }

    pub fn request(&mut self, x: &BitLabel) -> Result<Outcome, MatchError> {
        let neighbors = self
            .graph()
            .neighbors(x)
            .ok_or_else(|| MatchError::OutsideUniverse(x.clone()))?;
        self.requests_seen += 1;
        let outcome = if self.matched.contains_key(x) || self.discarded_set.contains(x) {
            Outcome::DuplicateIgnored
        } else if let Some(r) = neighbors.into_iter().find(|r| !self.occupied.contains_key(r)) {
            self.occupied.insert(r.clone(), x.clone());
            self.matched.insert(x.clone(), r.clone());
            Outcome::Matched(r)
        } else {
            self.discarded.push(x.clone());
            self.discarded_set.insert(x.clone());
            Outcome::Discarded
        };
        self.log.push(LogEntry {
            left: x.clone(),
            outcome: outcome.clone(),
        });
        Ok(outcome)
    }

    pub fn graph(&self) -> &dyn BipartiteGraph {
        match &self.graph {
            GraphHandle::Borrowed(g) => *g,
            GraphHandle::Shared(g) => g.as_ref(),
        }
    }

    /// Left label matched to `r`, if any.
    pub fn owner(&self, r: &BitLabel) -> Option<&BitLabel> {
        self.occupied.get(r)
    }

    pub fn matched_to(&self, x: &BitLabel) -> Option<&BitLabel> {
        self.matched.get(x)
    }

    pub fn matched(&self) -> &BTreeMap<BitLabel, BitLabel> {
        &self.matched
    }

    pub fn occupied(&self) -> &BTreeMap<BitLabel, BitLabel> {
        &self.occupied
    }

    pub fn discarded(&self) -> &[BitLabel] {
        &self.discarded
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn requests_seen(&self) -> u64 {
        self.requests_seen
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscardReport {
    pub streams: u64,
    pub requests: u64,
    pub max_discards: u64,
    /// Discards must stay strictly below this.
    pub bound: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub violating_stream: Option<Vec<BitLabel>>,
}

/// Runs every stream through a fresh session and checks `discards < a`.
/// Streams longer than `b` distinct requests are rejected.
pub fn discard_bound_check(
    g: &dyn BipartiteGraph,
    a: u64,
    b: u64,
    streams: &[Vec<BitLabel>],
) -> Result<DiscardReport, MatchError> {
    let mut report = DiscardReport {
        streams: streams.len() as u64,
        requests: 0,
        max_discards: 0,
        bound: a,
        pass: true,
        violating_stream: None,
    };
    for (i, stream) in streams.iter().enumerate() {
        let distinct = stream.iter().collect::<BTreeSet<_>>().len() as u64;
        if distinct > b {
            return Err(MatchError::StreamTooLong {
                stream: i,
                count: distinct as usize,
                limit: b,
            });
        }
        let mut s = MatchSession::new(g);
        for x in stream {
            s.request(x)?;
        }
        let d = s.discarded().len() as u64;
        report.requests += s.requests_seen();
        report.max_discards = report.max_discards.max(d);
        if d >= a && report.pass {
            report.pass = false;
            report.violating_stream = Some(stream.clone());
        }
    }
    Ok(report)
}

/// `count` streams, each a seeded uniform choice of `len` distinct labels
/// from `pool`.
pub fn random_streams(pool: &[BitLabel], len: usize, count: usize, seed: u64) -> Vec<Vec<BitLabel>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| pool.choose_multiple(&mut rng, len).cloned().collect())
        .collect()
}

/// Stream file: one bit string per line; blank lines and `#` comments skipped.
pub fn parse_stream(text: &str) -> Result<Vec<BitLabel>, MachineError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(line.parse().map_err(|e| MachineError::Parse {
            line: i + 1,
            msg: format!("{e}"),
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, ExplicitGraph, Universe};
    use crate::label::bits;

    fn abc() -> ExplicitGraph {
        // a=00, b=01, c=10; r1=0, r2=1
        ExplicitGraph::from_edges([
            (bits("00"), bits("0")),
            (bits("01"), bits("0")),
            (bits("10"), bits("0")),
            (bits("10"), bits("1")),
        ])
    }

    #[test]
    fn hand_simulated_three_requests() {
        let g = abc();
        let mut s = MatchSession::new(&g);
        assert_eq!(s.request(&bits("00")).unwrap(), Outcome::Matched(bits("0")));
        assert_eq!(s.request(&bits("01")).unwrap(), Outcome::Discarded);
        assert_eq!(s.request(&bits("10")).unwrap(), Outcome::Matched(bits("1")));
        assert_eq!(s.discarded(), &[bits("01")]);
    }

    #[test]
    fn duplicates_leave_state_unchanged() {
        let g = abc();
        let mut s = MatchSession::new(&g);
        s.request(&bits("00")).unwrap();
        s.request(&bits("01")).unwrap();
        let before = (s.matched().clone(), s.discarded().to_vec());
        assert_eq!(s.request(&bits("00")).unwrap(), Outcome::DuplicateIgnored);
        assert_eq!(s.request(&bits("01")).unwrap(), Outcome::DuplicateIgnored);
        assert_eq!((s.matched().clone(), s.discarded().to_vec()), before);
    }

    #[test]
    fn outside_universe_is_an_error() {
        let g = abc();
        let mut s = MatchSession::new(&g);
        assert!(matches!(
            s.request(&bits("111")),
            Err(MatchError::OutsideUniverse(_))
        ));
        assert_eq!(s.requests_seen(), 0);
    }

    #[test]
    fn complete_graph_never_discards() {
        let g = complete_bipartite(Universe::single(3), Universe::single(3)).unwrap();
        let pool = Universe::single(3).to_vec().unwrap();
        let streams = random_streams(&pool, 8, 50, 7);
        let r = discard_bound_check(&g, 1, 8, &streams).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_discards, 0);
    }

    #[test]
    fn empty_and_short_streams_report() {
        let g = abc();
        let r = discard_bound_check(&g, 2, 3, &[vec![], vec![bits("00")]]).unwrap();
        assert_eq!(r.streams, 2);
        assert_eq!(r.requests, 1);
        assert!(r.pass);
    }

    #[test]
    fn violation_carries_stream() {
        let g = abc();
        let stream = vec![bits("00"), bits("01"), bits("10")];
        let r = discard_bound_check(&g, 1, 3, std::slice::from_ref(&stream)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.violating_stream, Some(stream));
    }

    #[test]
    fn stream_file_parsing() {
        assert_eq!(parse_stream("# s\n01\n\n1\n").unwrap(), vec![bits("01"), bits("1")]);
        assert!(matches!(
            parse_stream("01\n0x\n"),
            Err(MachineError::Parse { line: 2, .. })
        ));
        assert!(parse_stream("").unwrap().is_empty());
    }
}

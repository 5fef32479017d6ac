//! Brute-force and sampled certification of expansion and dispersion.
//!
//! Neighbor sets are materialized once into dense bitsets over right ranks
//! ([`NeighborTable`]); every subset check is then an OR + popcount. Exhaustive
//! mode walks all `size`-subsets in lexicographic index order and reports the
//! lexicographically first violation, so verdicts are deterministic even
//! though the walk is split across threads.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{GraphError, VerifyError};
use crate::graph::BipartiteGraph;
use crate::label::BitLabel;

/// Neighbor labels of one left vertex plus their bitset over the right side.
type Row = (Vec<BitLabel>, Vec<u64>);
/// A failing subset (vertex indices, union size).
type Witness = (Vec<usize>, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// Exhaustive when the subset count fits the budget, sampled otherwise.
    #[default]
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckBudget {
    pub mode: CheckMode,
    /// Largest subset count enumerated in `Auto` mode.
    pub exhaustive_limit: u64,
    pub samples: u64,
    pub adversarial_restarts: u64,
    pub seed: u64,
}

impl Default for CheckBudget {
    fn default() -> Self {
        Self {
            mode: CheckMode::Auto,
            exhaustive_limit: 10_000_000,
            samples: 100_000,
            adversarial_restarts: 1_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckRecord {
    Exhaustive {
        subsets: u64,
    },
    #[serde(rename = "adversarial+sampled")]
    Sampled {
        samples: u64,
        adversarial_restarts: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail {
        witness: Vec<BitLabel>,
        neighbors: usize,
    },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCertificate {
    pub subset_size: u64,
    pub required_neighbors: u64,
    pub mode: CheckRecord,
    pub result: Verdict,
    /// Smallest neighbor count among the subsets examined.
    pub min_observed: u64,
    pub graph_fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DispersionCertificate {
    pub subset_size: u64,
    pub delta_num: u64,
    pub delta_den: u64,
    pub right_size: u64,
    pub required_neighbors: u64,
    pub mode: CheckRecord,
    pub result: Verdict,
    pub min_observed: u64,
    pub graph_fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Expansion(ExpansionCertificate),
    Dispersion(DispersionCertificate),
}

impl Certificate {
    pub fn is_pass(&self) -> bool {
        matches!(self.verdict(), Verdict::Pass)
    }

    /// Only an exhaustive pass rules out every violation.
    pub fn is_definitive(&self) -> bool {
        matches!(self.mode(), CheckRecord::Exhaustive { .. })
    }

    pub fn verdict(&self) -> &Verdict {
        match self {
            Certificate::Expansion(c) => &c.result,
            Certificate::Dispersion(c) => &c.result,
        }
    }

    pub fn mode(&self) -> &CheckRecord {
        match self {
            Certificate::Expansion(c) => &c.mode,
            Certificate::Dispersion(c) => &c.mode,
        }
    }

    pub fn fingerprint(&self) -> &str {
        match self {
            Certificate::Expansion(c) => &c.graph_fingerprint,
            Certificate::Dispersion(c) => &c.graph_fingerprint,
        }
    }

    /// Equality ignoring the graph fingerprint.
    pub fn same_verdict(&self, other: &Certificate) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.clear_fingerprint();
        b.clear_fingerprint();
        a == b
    }

    fn clear_fingerprint(&mut self) {
        match self {
            Certificate::Expansion(c) => c.graph_fingerprint.clear(),
            Certificate::Dispersion(c) => c.graph_fingerprint.clear(),
        }
    }
}

impl From<ExpansionCertificate> for Certificate {
    fn from(c: ExpansionCertificate) -> Self {
        Certificate::Expansion(c)
    }
}

impl From<DispersionCertificate> for Certificate {
    fn from(c: DispersionCertificate) -> Self {
        Certificate::Dispersion(c)
    }
}

/// Deduplicated neighbor sets as bitsets over right ranks.
pub struct NeighborTable {
    left: Vec<BitLabel>,
    right_size: u64,
    words: usize,
    sets: Vec<u64>,
    fingerprint: String,
}

impl NeighborTable {
    pub fn build(g: &dyn BipartiteGraph) -> Result<Self, GraphError> {
        let left = g.left().to_vec()?;
        let right_size = g
            .right()
            .cardinality()
            .filter(|&c| c <= crate::graph::MATERIALIZE_LIMIT)
            .ok_or_else(|| GraphError::UniverseTooLarge("right side of checked graph".into()))?;
        let words = (right_size as usize).div_ceil(64).max(1);
        let rows: Vec<Result<Row, GraphError>> = left
            .par_iter()
            .map(|x| {
                let ns = g
                    .neighbors(x)
                    .ok_or_else(|| GraphError::NotInLeft(x.clone()))?;
                let mut row = vec![0u64; words];
                for r in &ns {
                    let idx = g.right().rank(r).ok_or_else(|| {
                        GraphError::InvalidUniverse(format!(
                            "neighbor {r} of {x} is outside the right universe"
                        ))
                    })? as usize;
                    row[idx / 64] |= 1 << (idx % 64);
                }
                Ok((ns, row))
            })
            .collect();
        let mut hasher = Sha256::new();
        let mut sets = Vec::with_capacity(left.len() * words);
        for (x, row) in left.iter().zip(rows) {
            let (ns, row) = row?;
            for r in &ns {
                hasher.update(format!("{x} {r}\n").as_bytes());
            }
            sets.extend_from_slice(&row);
        }
        let fingerprint = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        Ok(Self {
            left,
            right_size,
            words,
            sets,
            fingerprint,
        })
    }

    pub fn left(&self) -> &[BitLabel] {
        &self.left
    }

    pub fn left_len(&self) -> usize {
        self.left.len()
    }

    pub fn right_size(&self) -> u64 {
        self.right_size
    }

    /// SHA-256 of the edge dump.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.sets[i * self.words..(i + 1) * self.words]
    }

    pub fn distinct_degree(&self, i: usize) -> usize {
        popcount(self.row(i))
    }

    /// Number of distinct right nodes adjacent to the subset.
    pub fn union_count(&self, subset: &[usize]) -> usize {
        let mut acc = vec![0u64; self.words];
        for &i in subset {
            or_into(&mut acc, self.row(i));
        }
        popcount(&acc)
    }
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn or_into(acc: &mut [u64], row: &[u64]) {
    for (a, r) in acc.iter_mut().zip(row) {
        *a |= r;
    }
}

fn union_popcount(acc: &[u64], row: &[u64]) -> usize {
    acc.iter()
        .zip(row)
        .map(|(a, r)| (a | r).count_ones() as usize)
        .sum()
}

/// `C(n, k)` saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

struct SearchOutcome {
    mode: CheckRecord,
    failure: Option<(Vec<usize>, usize)>,
    min_observed: usize,
}

fn search(table: &NeighborTable, size: usize, required: usize, budget: &CheckBudget) -> SearchOutcome {
    let n = table.left_len();
    let total = binomial(n as u64, size as u64);
    let exhaustive = match budget.mode {
        CheckMode::Exhaustive => true,
        CheckMode::Sampled => false,
        CheckMode::Auto => total <= budget.exhaustive_limit,
    };
    if size == 0 {
        let failure = (required > 0).then(|| (Vec::new(), 0));
        return SearchOutcome {
            mode: CheckRecord::Exhaustive { subsets: 1 },
            failure,
            min_observed: 0,
        };
    }
    if exhaustive {
        let (failure, min_observed) = exhaustive_search(table, size, required);
        SearchOutcome {
            mode: CheckRecord::Exhaustive { subsets: total },
            failure,
            min_observed,
        }
    } else {
        sampled_search(table, size, required, budget)
    }
}

fn exhaustive_search(
    table: &NeighborTable,
    size: usize,
    required: usize,
) -> (Option<Witness>, usize) {
    let n = table.left_len();
    let first_fail = AtomicUsize::new(usize::MAX);
    let results: Vec<(usize, Option<Witness>)> = (0..=n - size)
        .into_par_iter()
        .map(|i0| {
            if first_fail.load(Ordering::Relaxed) < i0 {
                return (usize::MAX, None);
            }
            let mut walker = Walker {
                table,
                size,
                required,
                combo: vec![i0],
                acc: vec![table.row(i0).to_vec()],
                min: usize::MAX,
            };
            let fail = walker.descend();
            if fail.is_some() {
                first_fail.fetch_min(i0, Ordering::Relaxed);
            }
            (walker.min, fail)
        })
        .collect();
    let min = results.iter().map(|r| r.0).min().unwrap_or(0);
    let failure = results.into_iter().find_map(|r| r.1);
    match failure {
        Some((combo, count)) => (Some((combo, count)), count.min(min)),
        None => (None, min),
    }
}

struct Walker<'a> {
    table: &'a NeighborTable,
    size: usize,
    required: usize,
    combo: Vec<usize>,
    acc: Vec<Vec<u64>>,
    min: usize,
}

impl Walker<'_> {
    /// Depth-first walk in lexicographic order; returns the first violation.
    fn descend(&mut self) -> Option<(Vec<usize>, usize)> {
        let depth = self.combo.len();
        let last = *self.combo.last().expect("non-empty combo");
        let n = self.table.left_len();
        if depth == self.size {
            let count = popcount(&self.acc[depth - 1]);
            self.min = self.min.min(count);
            return (count < self.required).then(|| (self.combo.clone(), count));
        }
        let remaining = self.size - depth;
        for j in last + 1..=n - remaining {
            if remaining == 1 {
                let count = union_popcount(&self.acc[depth - 1], self.table.row(j));
                self.min = self.min.min(count);
                if count < self.required {
                    let mut combo = self.combo.clone();
                    combo.push(j);
                    return Some((combo, count));
                }
                continue;
            }
            let mut next = self.acc[depth - 1].clone();
            or_into(&mut next, self.table.row(j));
            self.acc.push(next);
            self.combo.push(j);
            let fail = self.descend();
            self.combo.pop();
            self.acc.pop();
            if fail.is_some() {
                return fail;
            }
        }
        None
    }
}

fn sampled_search(
    table: &NeighborTable,
    size: usize,
    required: usize,
    budget: &CheckBudget,
) -> SearchOutcome {
    let n = table.left_len();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut min_observed = usize::MAX;
    let mut failure = None;
    for _ in 0..budget.samples {
        let mut subset = rand::seq::index::sample(&mut rng, n, size).into_vec();
        let count = table.union_count(&subset);
        min_observed = min_observed.min(count);
        if count < required && failure.is_none() {
            subset.sort_unstable();
            failure = Some((subset, count));
        }
    }
    let starts: Vec<usize> = if (n as u64) <= budget.adversarial_restarts {
        (0..n).collect()
    } else {
        let mut s = rand::seq::index::sample(&mut rng, n, budget.adversarial_restarts as usize)
            .into_vec();
        s.sort_unstable();
        s
    };
    let greedy: Vec<(Vec<usize>, usize)> = starts
        .par_iter()
        .map(|&s| greedy_from(table, size, s))
        .collect();
    for (mut subset, count) in greedy {
        min_observed = min_observed.min(count);
        if count < required && failure.is_none() {
            subset.sort_unstable();
            failure = Some((subset, count));
        }
    }
    SearchOutcome {
        mode: CheckRecord::Sampled {
            samples: budget.samples,
            adversarial_restarts: starts.len() as u64,
        },
        failure,
        min_observed: if min_observed == usize::MAX { 0 } else { min_observed },
    }
}

/// Grow a subset from `start`, each step adding the node contributing the
/// fewest new neighbors (ties: smallest index).
fn greedy_from(table: &NeighborTable, size: usize, start: usize) -> (Vec<usize>, usize) {
    let n = table.left_len();
    let mut chosen = vec![false; n];
    chosen[start] = true;
    let mut subset = vec![start];
    let mut acc = table.row(start).to_vec();
    while subset.len() < size {
        let best = (0..n)
            .filter(|&j| !chosen[j])
            .min_by_key(|&j| (union_popcount(&acc, table.row(j)), j))
            .expect("size <= n");
        chosen[best] = true;
        subset.push(best);
        or_into(&mut acc, table.row(best));
    }
    (subset, popcount(&acc))
}

fn check_size(table: &NeighborTable, size: u64) -> Result<(), VerifyError> {
    if size > table.left_len() as u64 {
        return Err(VerifyError::SubsetTooLarge {
            size,
            left: table.left_len() as u64,
        });
    }
    Ok(())
}

fn verdict(table: &NeighborTable, failure: Option<(Vec<usize>, usize)>) -> Verdict {
    match failure {
        None => Verdict::Pass,
        Some((idx, neighbors)) => Verdict::Fail {
            witness: idx.into_iter().map(|i| table.left[i].clone()).collect(),
            neighbors,
        },
    }
}

/// Does every `subset_size`-subset of the left side have at least
/// `required` distinct right neighbors?
pub fn check_expander(
    g: &dyn BipartiteGraph,
    subset_size: u64,
    required: u64,
    budget: &CheckBudget,
) -> Result<ExpansionCertificate, VerifyError> {
    let table = NeighborTable::build(g)?;
    check_expander_table(&table, subset_size, required, budget)
}

pub fn check_expander_table(
    table: &NeighborTable,
    subset_size: u64,
    required: u64,
    budget: &CheckBudget,
) -> Result<ExpansionCertificate, VerifyError> {
    check_size(table, subset_size)?;
    let required_usize = usize::try_from(required).unwrap_or(usize::MAX);
    let out = search(table, subset_size as usize, required_usize, budget);
    Ok(ExpansionCertificate {
        subset_size,
        required_neighbors: required,
        mode: out.mode,
        result: verdict(table, out.failure),
        min_observed: out.min_observed as u64,
        graph_fingerprint: table.fingerprint.clone(),
    })
}

/// `ceil((1 - num/den) * right)`.
pub fn dispersion_requirement(right: u64, num: u64, den: u64) -> u64 {
    let top = (den - num) as u128 * right as u128;
    top.div_ceil(den as u128) as u64
}

/// Does every `subset_size`-subset touch at least `(1 - delta)|R|` right
/// nodes? `delta = delta_num / delta_den`.
pub fn check_disperser(
    g: &dyn BipartiteGraph,
    subset_size: u64,
    delta_num: u64,
    delta_den: u64,
    budget: &CheckBudget,
) -> Result<DispersionCertificate, VerifyError> {
    let table = NeighborTable::build(g)?;
    check_disperser_table(&table, subset_size, delta_num, delta_den, budget)
}

pub fn check_disperser_table(
    table: &NeighborTable,
    subset_size: u64,
    delta_num: u64,
    delta_den: u64,
    budget: &CheckBudget,
) -> Result<DispersionCertificate, VerifyError> {
    if delta_den == 0 || delta_num >= delta_den {
        return Err(VerifyError::InvalidDelta {
            num: delta_num,
            den: delta_den,
        });
    }
    check_size(table, subset_size)?;
    let required = dispersion_requirement(table.right_size, delta_num, delta_den);
    let out = search(table, subset_size as usize, required as usize, budget);
    Ok(DispersionCertificate {
        subset_size,
        delta_num,
        delta_den,
        right_size: table.right_size,
        required_neighbors: required,
        mode: out.mode,
        result: verdict(table, out.failure),
        min_observed: out.min_observed as u64,
        graph_fingerprint: table.fingerprint.clone(),
    })
}

/// Greedy adversarial subset of the given size, tried from every start node;
/// returns the subset with the fewest distinct neighbors (ties: earliest
/// start).
pub fn min_neighbor_subset(
    g: &dyn BipartiteGraph,
    size: u64,
) -> Result<(Vec<BitLabel>, u64), VerifyError> {
    let table = NeighborTable::build(g)?;
    check_size(&table, size)?;
    if size == 0 {
        return Ok((Vec::new(), 0));
    }
    let best = (0..table.left_len())
        .into_par_iter()
        .map(|s| greedy_from(&table, size as usize, s))
        .collect::<Vec<_>>()
        .into_iter()
        .min_by_key(|(_, c)| *c)
        .expect("non-empty left side");
    let (mut idx, count) = best;
    idx.sort_unstable();
    Ok((
        idx.into_iter().map(|i| table.left[i].clone()).collect(),
        count as u64,
    ))
}

/// Distinct neighbors of a subset, straight from the oracle.
pub fn subset_neighbor_count(
    g: &dyn BipartiteGraph,
    subset: &[BitLabel],
) -> Result<usize, GraphError> {
    let mut seen = BTreeSet::new();
    for x in subset {
        seen.extend(g.neighbors(x).ok_or_else(|| GraphError::NotInLeft(x.clone()))?);
    }
    Ok(seen.len())
}

/// Recheck a failing certificate's witness against the graph oracle.
pub fn witness_reverifies(g: &dyn BipartiteGraph, cert: &Certificate) -> bool {
    let (size, required, result) = match cert {
        Certificate::Expansion(c) => (c.subset_size, c.required_neighbors, &c.result),
        Certificate::Dispersion(c) => (c.subset_size, c.required_neighbors, &c.result),
    };
    match result {
        Verdict::Pass => true,
        Verdict::Fail { witness, neighbors } => {
            let distinct: BTreeSet<&BitLabel> = witness.iter().collect();
            distinct.len() as u64 == size
                && subset_neighbor_count(g, witness)
                    .is_ok_and(|c| c == *neighbors && (c as u64) < required)
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graph::{complete_bipartite, random_regular_graph, ExplicitGraph, RandomGraphSeed, Universe};
    use crate::label::bits;

    fn star() -> ExplicitGraph {
        ExplicitGraph::from_edges([
            (bits("00"), bits("0")),
            (bits("01"), bits("0")),
            (bits("10"), bits("1")),
        ])
    }

    #[test]
    fn complete_passes_exhaustively() {
        let g = complete_bipartite(Universe::single(3), Universe::single(2)).unwrap();
        let c = check_expander(&g, 2, 4, &CheckBudget::default()).unwrap();
        assert_eq!(c.result, Verdict::Pass);
        assert_eq!(c.mode, CheckRecord::Exhaustive { subsets: 28 });
        let c = check_expander(&g, 1, 4, &CheckBudget::default()).unwrap();
        assert_eq!(c.result, Verdict::Pass);
    }

    #[test]
    fn shared_neighbor_pair_fails_with_witness() {
        let g = star();
        let c = check_expander(&g, 2, 2, &CheckBudget::default()).unwrap();
        assert_eq!(
            c.result,
            Verdict::Fail {
                witness: vec![bits("00"), bits("01")],
                neighbors: 1
            }
        );
        assert!(witness_reverifies(&g, &c.clone().into()));
    }

    #[test]
    fn oversized_subset_is_an_error() {
        let g = star();
        assert!(matches!(
            check_expander(&g, 4, 1, &CheckBudget::default()),
            Err(VerifyError::SubsetTooLarge { size: 4, left: 3 })
        ));
    }

    #[test]
    fn disperser_on_complete_graph_passes() {
        let g = complete_bipartite(Universe::single(3), Universe::single(2)).unwrap();
        for k in 1..=8 {
            let c = check_disperser(&g, k, 1, 2, &CheckBudget::default()).unwrap();
            assert_eq!(c.result, Verdict::Pass);
            let c = check_disperser(&g, k, 0, 1, &CheckBudget::default()).unwrap();
            assert_eq!(c.result, Verdict::Pass);
        }
    }

    #[test]
    fn all_share_one_right_node_fails_dispersion() {
        let left = Universe::single(2);
        let right = Universe::single(2);
        let adj: BTreeMap<_, _> = left
            .iter()
            .unwrap()
            .map(|x| (x, vec![bits("00")]))
            .collect();
        let g = ExplicitGraph::new(left, right, adj).unwrap();
        let c = check_disperser(&g, 2, 1, 2, &CheckBudget::default()).unwrap();
        assert_eq!(c.required_neighbors, 2);
        assert!(matches!(c.result, Verdict::Fail { neighbors: 1, .. }));
    }

    #[test]
    fn invalid_delta() {
        let g = star();
        assert!(check_disperser(&g, 1, 2, 2, &CheckBudget::default()).is_err());
        assert!(check_disperser(&g, 1, 0, 0, &CheckBudget::default()).is_err());
    }

    #[test]
    fn min_subset_on_complete_and_star() {
        let g = complete_bipartite(Universe::single(2), Universe::single(2)).unwrap();
        assert_eq!(min_neighbor_subset(&g, 3).unwrap().1, 4);
        let (subset, count) = min_neighbor_subset(&star(), 2).unwrap();
        assert_eq!(subset, vec![bits("00"), bits("01")]);
        assert_eq!(count, 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(120, 2), 7140);
        assert_eq!(binomial(32, 4), 35_960);
        assert_eq!(binomial(64, 4), 635_376);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(10_000, 5000), u64::MAX);
    }

    #[test]
    fn dispersion_requirement_rounds_up() {
        assert_eq!(dispersion_requirement(8, 1, 2), 4);
        assert_eq!(dispersion_requirement(5, 1, 2), 3);
        assert_eq!(dispersion_requirement(9, 1, 3), 6);
    }

    #[test]
    fn sampled_mode_records_counts() {
        let g = random_regular_graph(
            Universe::single(5),
            Universe::single(4),
            RandomGraphSeed { seed: 3, degree: 4 },
        )
        .unwrap();
        let budget = CheckBudget {
            mode: CheckMode::Sampled,
            samples: 500,
            adversarial_restarts: 10,
            ..CheckBudget::default()
        };
        let c = check_expander(&g, 3, 1, &budget).unwrap();
        assert_eq!(
            c.mode,
            CheckRecord::Sampled {
                samples: 500,
                adversarial_restarts: 10
            }
        );
        assert_eq!(c.result, Verdict::Pass);
    }

    #[test]
    fn exhaustive_witness_is_lexicographically_first() {
        let g = random_regular_graph(
            Universe::single(5),
            Universe::single(3),
            RandomGraphSeed { seed: 5, degree: 2 },
        )
        .unwrap();
        let c = check_expander(&g, 3, 6, &CheckBudget::default()).unwrap();
        let Verdict::Fail { witness, .. } = &c.result else {
            panic!("expected a violation");
        };
        // Independent scan in lexicographic index order.
        let left = g.left().to_vec().unwrap();
        let mut first = None;
        'outer: for a in 0..left.len() {
            for b in a + 1..left.len() {
                for d in b + 1..left.len() {
                    let s = [left[a].clone(), left[b].clone(), left[d].clone()];
                    if subset_neighbor_count(&g, &s).unwrap() < 6 {
                        first = Some(s.to_vec());
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(Some(witness.clone()), first);
    }
}

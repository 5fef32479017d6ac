use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::manifest::GraphManifest;
use super::universe::Universe;
use super::BipartiteGraph;
use crate::error::GraphError;
use crate::label::BitLabel;

/// Recorded in manifests so a reader knows how neighbor lists were drawn.
pub const RANDOM_GENERATOR: &str =
    "chacha8(splitmix64(seed ^ fnv1a64(len_le64 || bits))) + rand 0.8 index::sample";

/// Complete bipartite graph: every left node sees the whole right universe
/// in canonical order.
#[derive(Debug, Clone)]
pub struct CompleteGraph {
    left: Universe,
    right: Universe,
    right_size: u64,
}

pub fn complete_bipartite(left: Universe, right: Universe) -> Result<CompleteGraph, GraphError> {
    left.cardinality()
        .ok_or_else(|| GraphError::UniverseTooLarge("left of complete graph".into()))?;
    let right_size = right
        .cardinality()
        .ok_or_else(|| GraphError::UniverseTooLarge("right of complete graph".into()))?;
    if right_size == 0 {
        return Err(GraphError::DegenerateGraph);
    }
    Ok(CompleteGraph {
        left,
        right,
        right_size,
    })
}

impl BipartiteGraph for CompleteGraph {
    fn left(&self) -> &Universe {
        &self.left
    }

    fn right(&self) -> &Universe {
        &self.right
    }

    fn neighbors(&self, x: &BitLabel) -> Option<Vec<BitLabel>> {
        if !self.left.contains(x) {
            return None;
        }
        self.right.to_vec().ok()
    }

    fn degree(&self, x: &BitLabel) -> Option<usize> {
        self.left.contains(x).then_some(self.right_size as usize)
    }

    fn neighbor(&self, x: &BitLabel, i: usize) -> Option<BitLabel> {
        if !self.left.contains(x) {
            return None;
        }
        self.right.unrank(i as u64)
    }

    fn manifest(&self) -> GraphManifest {
        GraphManifest::new("complete", &self.left, &self.right, "complete bipartite graph")
            .with_degree(self.right_size)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomGraphSeed {
    pub seed: u64,
    pub degree: usize,
}

/// Left-regular random graph whose neighbor lists are drawn without
/// replacement from a stream keyed by `(seed, x)`.
#[derive(Debug, Clone)]
pub struct RandomGraph {
    left: Universe,
    right: Universe,
    right_size: u64,
    seed: RandomGraphSeed,
}

pub fn random_regular_graph(
    left: Universe,
    right: Universe,
    seed: RandomGraphSeed,
) -> Result<RandomGraph, GraphError> {
    let right_size = right
        .cardinality()
        .filter(|&c| c <= super::MATERIALIZE_LIMIT)
        .ok_or_else(|| GraphError::UniverseTooLarge("right of random graph".into()))?;
    if right_size == 0 {
        return Err(GraphError::DegenerateGraph);
    }
    if seed.degree as u64 > right_size {
        return Err(GraphError::DegreeTooLarge {
            degree: seed.degree as u64,
            right: right_size,
        });
    }
    Ok(RandomGraph {
        left,
        right,
        right_size,
        seed,
    })
}

impl RandomGraph {
    pub fn seed(&self) -> RandomGraphSeed {
        self.seed
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for a named sub-stream of `seed` (sub-graph names, resample rounds).
pub fn derive_seed(seed: u64, tag: &str) -> u64 {
    splitmix64(seed ^ fnv1a(tag.as_bytes().iter().copied()))
}

fn fnv1a<I: IntoIterator<Item = u8>>(bytes: I) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes.into_iter().fold(FNV_OFFSET, |h, byte| {
        (h ^ byte as u64).wrapping_mul(FNV_PRIME)
    })
}

/// Per-node stream key derived from the graph seed and the node label.
pub fn stream_key(seed: u64, x: &BitLabel) -> u64 {
    let len = (x.len() as u64).to_le_bytes();
    let h = fnv1a(len.into_iter().chain(x.bits().iter().map(|&b| b as u8)));
    splitmix64(seed ^ h)
}

impl BipartiteGraph for RandomGraph {
    fn left(&self) -> &Universe {
        &self.left
    }

    fn right(&self) -> &Universe {
        &self.right
    }

    fn neighbors(&self, x: &BitLabel) -> Option<Vec<BitLabel>> {
        if !self.left.contains(x) {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(stream_key(self.seed.seed, x));
        let picks =
            rand::seq::index::sample(&mut rng, self.right_size as usize, self.seed.degree);
        Some(
            picks
                .into_iter()
                .map(|i| self.right.unrank(i as u64).expect("index below right size"))
                .collect(),
        )
    }

    fn degree(&self, x: &BitLabel) -> Option<usize> {
        self.left.contains(x).then_some(self.seed.degree)
    }

    fn manifest(&self) -> GraphManifest {
        let mut m = GraphManifest::new(
            "random",
            &self.left,
            &self.right,
            "seeded random left-regular graph",
        )
        .with_degree(self.seed.degree as u64);
        m.seed = Some(self.seed.seed);
        m.generator = Some(RANDOM_GENERATOR.to_string());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_left;
    use crate::label::bits;

    #[test]
    fn complete_neighbors_in_canonical_order() {
        let g = complete_bipartite(Universe::single(2), Universe::single(1)).unwrap();
        for x in enumerate_left(&g).unwrap() {
            assert_eq!(g.neighbors(&x).unwrap(), vec![bits("0"), bits("1")]);
        }
    }

    #[test]
    fn complete_indexed_neighbor() {
        let g = complete_bipartite(Universe::single(1), Universe::single(2)).unwrap();
        assert_eq!(g.neighbor(&bits("0"), 3), Some(bits("11")));
        assert_eq!(g.neighbor(&bits("0"), 4), None);
        assert_eq!(g.neighbor(&bits("00"), 0), None);
        assert_eq!(g.degree(&bits("1")), Some(4));
    }

    #[test]
    fn complete_rejects_empty_right() {
        let err = complete_bipartite(Universe::single(1), Universe::explicit([])).unwrap_err();
        assert!(err.to_string().contains("degenerate graph"));
    }

    #[test]
    fn random_is_deterministic() {
        let seed = RandomGraphSeed { seed: 7, degree: 4 };
        let a = random_regular_graph(Universe::single(4), Universe::single(3), seed).unwrap();
        let b = random_regular_graph(Universe::single(4), Universe::single(3), seed).unwrap();
        for x in enumerate_left(&a).unwrap() {
            assert_eq!(a.neighbors(&x), b.neighbors(&x));
        }
    }

    #[test]
    fn random_draws_without_replacement() {
        let seed = RandomGraphSeed { seed: 11, degree: 4 };
        let g = random_regular_graph(Universe::single(4), Universe::single(3), seed).unwrap();
        for x in enumerate_left(&g).unwrap() {
            let mut n = g.neighbors(&x).unwrap();
            assert_eq!(n.len(), 4);
            assert!(n.iter().all(|r| r.len() == 3));
            n.sort();
            n.dedup();
            assert_eq!(n.len(), 4);
        }
    }

    #[test]
    fn random_rejects_oversized_degree() {
        let seed = RandomGraphSeed { seed: 1, degree: 9 };
        assert!(matches!(
            random_regular_graph(Universe::single(2), Universe::single(3), seed),
            Err(GraphError::DegreeTooLarge { degree: 9, right: 8 })
        ));
    }

    #[test]
    fn different_seeds_differ() {
        let a = random_regular_graph(
            Universe::single(5),
            Universe::single(4),
            RandomGraphSeed { seed: 1, degree: 3 },
        )
        .unwrap();
        let b = random_regular_graph(
            Universe::single(5),
            Universe::single(4),
            RandomGraphSeed { seed: 2, degree: 3 },
        )
        .unwrap();
        let left = enumerate_left(&a).unwrap();
        assert!(left.iter().any(|x| a.neighbors(x) != b.neighbors(x)));
    }
}

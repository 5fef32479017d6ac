use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinators::{build_hk, default_cap, share, PipelineConfig, PipelineManifest};
use crate::error::BuildError;
use crate::graph::{complete_bipartite, Graph, Universe};
use crate::label::BitLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HkSource {
    /// Complete graph on lengths `[k, cap(k)]` x `{0,1}^{k+1}`.
    Complete,
    Pipeline,
}

#[derive(Clone)]
pub struct HkEntry {
    pub k: usize,
    pub cap: usize,
    pub source: HkSource,
    pub graph: Graph,
    pub manifest: Option<PipelineManifest>,
}

/// The graphs `H_0 .. H_{k_max}` used by the decompressor and by `list(x)`.
#[derive(Clone)]
pub struct HkFamily {
    c: u64,
    k_max: usize,
    entries: BTreeMap<usize, HkEntry>,
}

fn complete_entry(k: usize) -> Result<HkEntry, BuildError> {
    let cap = default_cap(k);
    let left = Universe::range(k, cap)?;
    let graph = share(complete_bipartite(left, Universe::single(k + 1))?);
    Ok(HkEntry {
        k,
        cap,
        source: HkSource::Complete,
        graph,
        manifest: None,
    })
}

impl HkFamily {
    /// Complete fallback below `k = 2`, built pipelines for `2..=k_max`.
    /// The template's `k` and cap are replaced per level.
    pub fn build(template: &PipelineConfig, k_max: usize) -> Result<Self, BuildError> {
        let mut entries = BTreeMap::new();
        for k in 0..=k_max {
            let entry = if k < 2 {
                complete_entry(k)?
            } else {
                let mut cfg = template.clone();
                cfg.k = k;
                cfg.left_len_cap = None;
                let p = build_hk(&cfg)?;
                HkEntry {
                    k,
                    cap: cfg.cap(),
                    source: HkSource::Pipeline,
                    graph: p.hk.graph.clone(),
                    manifest: Some(p.manifest()),
                }
            };
            entries.insert(k, entry);
        }
        Ok(Self {
            c: template.c,
            k_max,
            entries,
        })
    }

    /// Complete graphs at every level.
    pub fn complete(c: u64, k_max: usize) -> Result<Self, BuildError> {
        let entries = (0..=k_max)
            .map(|k| complete_entry(k).map(|e| (k, e)))
            .collect::<Result<_, _>>()?;
        Ok(Self { c, k_max, entries })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn get(&self, k: usize) -> Option<&HkEntry> {
        self.entries.get(&k)
    }

    pub fn entries(&self) -> impl Iterator<Item = &HkEntry> {
        self.entries.values()
    }

    /// `ceil(2^k / c^2)`: the discard bound for one level.
    pub fn discard_bound(&self, k: usize) -> u64 {
        (1u64 << k).div_ceil(self.c * self.c).max(1)
    }

    /// Is `x` a left node of `H_k`?
    pub fn admits(&self, k: usize, x: &BitLabel) -> bool {
        self.get(k).is_some_and(|e| e.graph.left().contains(x))
    }
}

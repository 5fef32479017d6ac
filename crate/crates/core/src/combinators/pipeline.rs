//! Builders for `G_k` (union of padded expander blocks), `F_k` (disperser,
//! replicated then prefix-merged) and `H_k = G_k ∘ F_k`.
//!
//! Base graphs come from a provider: seeded random graphs that are certified
//! and resampled on failure, or complete graphs for tiny parameters. Every
//! sub-graph carries its certificates in the returned manifest, together
//! with the seed that passed, so a manifest rebuilds bit-exactly.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::{gk_right_size_audit, RightSizeAudit};
use super::{pad_right_labels, prefix_merge, product, replicate_right, share, shifted_union};
use crate::error::BuildError;
use crate::graph::{
    complete_bipartite, derive_seed, random_regular_graph, Graph, GraphManifest, RandomGraphSeed,
    Universe,
};
use crate::verify::{
    check_disperser_table, check_expander_table, CheckBudget, Certificate, NeighborTable, Verdict,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProviderKind {
    /// Seeded random graphs, certified and resampled on failure.
    #[default]
    Random,
    /// Complete bipartite graphs sized so the requirements hold trivially.
    Complete,
}

/// Default left-length cap: `min(2^k, k + 3)`.
pub fn default_cap(k: usize) -> usize {
    if k < 6 {
        (1usize << k).min(k + 3)
    } else {
        k + 3
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub k: usize,
    pub c: u64,
    #[serde(default)]
    pub left_len_cap: Option<usize>,
    pub lambda: u64,
    pub alpha: u64,
    #[serde(default)]
    pub provider: ProviderKind,
    pub seed: u64,
    /// Pinned seeds per sub-graph name (`gk/block/<n>`, `fk/disperser`).
    #[serde(default)]
    pub seeds: BTreeMap<String, RandomGraphSeed>,
    #[serde(default)]
    pub block_degree: Option<usize>,
    #[serde(default)]
    pub block_right_bits: Option<usize>,
    #[serde(default)]
    pub disperser_degree: Option<usize>,
    #[serde(default)]
    pub disperser_right_bits: Option<usize>,
    pub max_attempts: u32,
    pub budget: CheckBudget,
}

impl PipelineConfig {
    pub fn new(k: usize, c: u64) -> Self {
        Self {
            k,
            c,
            left_len_cap: None,
            lambda: 1,
            alpha: 1,
            provider: ProviderKind::Random,
            seed: 0,
            seeds: BTreeMap::new(),
            block_degree: None,
            block_right_bits: None,
            disperser_degree: None,
            disperser_right_bits: None,
            max_attempts: 16,
            budget: CheckBudget::default(),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.left_len_cap = Some(cap);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn cap(&self) -> usize {
        self.left_len_cap.unwrap_or_else(|| default_cap(self.k))
    }

    pub fn big_k(&self) -> u64 {
        1u64 << self.k
    }

    /// `ceil(K / c^2)`: fewer than this many requests get discarded.
    pub fn subset_size(&self) -> u64 {
        self.big_k().div_ceil(self.c * self.c).max(1)
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        let bad = |m: String| Err(BuildError::InvalidConfig(m));
        if self.c < 2 {
            return bad(format!("c must be >= 2, got {}", self.c));
        }
        if self.k < 2 {
            return bad(format!("k must be >= 2, got {}", self.k));
        }
        if self.k > 20 {
            return bad(format!("k = {} is beyond desk scale", self.k));
        }
        let cap = self.cap();
        if cap < self.k || (self.k < 63 && cap as u64 > self.big_k()) {
            return bad(format!("cap {cap} must satisfy k <= cap <= 2^k"));
        }
        if cap > 24 {
            return bad(format!("cap {cap} is beyond desk scale"));
        }
        if self.lambda == 0 || self.alpha == 0 {
            return bad("lambda and alpha must be positive".into());
        }
        if self.max_attempts == 0 {
            return bad("max_attempts must be positive".into());
        }
        Ok(())
    }

    fn block_right_bits(&self) -> usize {
        let need = self.c * self.c * self.subset_size();
        self.block_right_bits
            .unwrap_or_else(|| match self.provider {
                ProviderKind::Random => (self.k + 2).max(super::label_width(2 * need)),
                ProviderKind::Complete => super::label_width(need),
            })
    }

    fn block_degree(&self) -> usize {
        let cap = 1usize << self.block_right_bits();
        self.block_degree
            .unwrap_or(2 * (self.c * self.c) as usize)
            .min(cap)
    }

    fn disperser_right_bits(&self) -> usize {
        self.disperser_right_bits.unwrap_or(self.k + 1)
    }

    fn disperser_degree(&self) -> usize {
        let cap = 1usize << self.disperser_right_bits();
        self.disperser_degree
            .unwrap_or(self.big_k() as usize / 2 + 2)
            .min(cap)
    }

    fn check_budget(&self, name: &str) -> CheckBudget {
        CheckBudget {
            seed: derive_seed(self.budget.seed, name),
            ..self.budget
        }
    }

    fn attempt_seed(&self, name: &str, default_degree: usize, attempt: u32) -> RandomGraphSeed {
        let first = self.seeds.get(name).copied().unwrap_or(RandomGraphSeed {
            seed: derive_seed(self.seed, name),
            degree: default_degree,
        });
        if attempt == 0 {
            first
        } else {
            RandomGraphSeed {
                seed: derive_seed(first.seed, &format!("resample/{attempt}")),
                ..first
            }
        }
    }
}

/// A graph together with its manifest (certificates included).
#[derive(Clone)]
pub struct BuiltGraph {
    pub graph: Graph,
    pub manifest: GraphManifest,
}

/// The three graphs of one `H_k` build.
#[derive(Clone)]
pub struct Pipeline {
    pub config: PipelineConfig,
    pub gk: BuiltGraph,
    pub fk: BuiltGraph,
    pub hk: BuiltGraph,
    pub len_r: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineManifest {
    pub k: usize,
    pub c: u64,
    pub lambda: u64,
    pub alpha: u64,
    pub cap: usize,
    pub provider: ProviderKind,
    pub len_r: usize,
    pub subset_size: u64,
    pub required_neighbors: u64,
    /// Config with every seed that passed certification pinned.
    pub config: PipelineConfig,
    pub right_size_audit: RightSizeAudit,
    /// Sum of the desk-scale block right sizes.
    pub desk_block_right_total: u64,
    pub gk: GraphManifest,
    pub fk: GraphManifest,
    pub hk: GraphManifest,
}

impl Pipeline {
    /// The `(K/c^2, K)` certificate of `H_k`.
    pub fn hk_certificate(&self) -> &Certificate {
        self.hk
            .manifest
            .certificates
            .last()
            .expect("build_hk attaches a certificate")
    }

    pub fn manifest(&self) -> PipelineManifest {
        let cfg = &self.config;
        let desk_block_right_total = self
            .gk
            .manifest
            .parts
            .first()
            .map(|u| u.parts.iter().filter_map(|b| b.right.count).sum())
            .unwrap_or(0);
        PipelineManifest {
            k: cfg.k,
            c: cfg.c,
            lambda: cfg.lambda,
            alpha: cfg.alpha,
            cap: cfg.cap(),
            provider: cfg.provider,
            len_r: self.len_r,
            subset_size: cfg.subset_size(),
            required_neighbors: cfg.big_k(),
            config: cfg.clone(),
            right_size_audit: gk_right_size_audit(cfg.k as u64, cfg.lambda, cfg.cap() as u64),
            desk_block_right_total,
            gk: self.gk.manifest.clone(),
            fk: self.fk.manifest.clone(),
            hk: self.hk.manifest.clone(),
        }
    }
}

fn describe(cert: &Certificate) -> String {
    match cert.verdict() {
        Verdict::Pass => "pass".into(),
        Verdict::Fail { witness, neighbors } => {
            let w: Vec<String> = witness.iter().map(|l| l.to_string()).collect();
            format!("witness [{}] has only {neighbors} neighbors", w.join(","))
        }
    }
}

/// One expander block on `{0,1}^n`, certified `(s, c^2 s)` for every
/// `s <= ceil(K/c^2)`.
fn certified_block(cfg: &PipelineConfig, n: usize) -> Result<(BuiltGraph, Option<RandomGraphSeed>), BuildError> {
    let name = format!("gk/block/{n}");
    let right = Universe::single(cfg.block_right_bits());
    let c2 = cfg.c * cfg.c;
    let attempts = match cfg.provider {
        ProviderKind::Random => cfg.max_attempts,
        ProviderKind::Complete => 1,
    };
    let mut detail = String::new();
    for attempt in 0..attempts {
        let (graph, seed): (Graph, _) = match cfg.provider {
            ProviderKind::Random => {
                let seed = cfg.attempt_seed(&name, cfg.block_degree(), attempt);
                (
                    share(random_regular_graph(Universe::single(n), right.clone(), seed)?),
                    Some(seed),
                )
            }
            ProviderKind::Complete => (
                share(complete_bipartite(Universe::single(n), right.clone())?),
                None,
            ),
        };
        let table = NeighborTable::build(graph.as_ref())?;
        let budget = cfg.check_budget(&name);
        let mut certs = Vec::new();
        let max_s = cfg.subset_size().min(table.left_len() as u64);
        for s in 1..=max_s {
            let cert: Certificate = check_expander_table(&table, s, c2 * s, &budget)?.into();
            let pass = cert.is_pass();
            if !pass {
                detail = format!("s={s}: {}", describe(&cert));
            }
            certs.push(cert);
            if !pass {
                break;
            }
        }
        if certs.iter().all(Certificate::is_pass) {
            let mut manifest = graph.manifest().with_param("name", name.clone());
            manifest.certificates = certs;
            return Ok((BuiltGraph { graph, manifest }, seed));
        }
    }
    Err(BuildError::CertificationFailed {
        name,
        attempts,
        detail,
    })
}

/// `G_k`: the shifted union of the blocks for lengths `k..=cap`, right labels
/// padded to `len_R = width + 1`. Certified `(ceil(K/c^2), K)`.
pub fn build_gk(cfg: &PipelineConfig) -> Result<BuiltGraph, BuildError> {
    build_gk_with_seeds(cfg).map(|(g, _)| g)
}

fn build_gk_with_seeds(
    cfg: &PipelineConfig,
) -> Result<(BuiltGraph, BTreeMap<String, RandomGraphSeed>), BuildError> {
    cfg.validate()?;
    let blocks: Vec<(BuiltGraph, Option<RandomGraphSeed>)> = (cfg.k..=cfg.cap())
        .into_par_iter()
        .map(|n| certified_block(cfg, n))
        .collect::<Result<_, _>>()?;
    let mut seeds = BTreeMap::new();
    for (n, (_, seed)) in (cfg.k..).zip(&blocks) {
        if let Some(seed) = seed {
            seeds.insert(format!("gk/block/{n}"), *seed);
        }
    }
    let union = shifted_union(blocks.iter().map(|(b, _)| b.graph.clone()).collect())?;
    let len_r = union.width() + 1;
    let mut union_manifest = crate::graph::BipartiteGraph::manifest(&union);
    union_manifest.parts = blocks.into_iter().map(|(b, _)| b.manifest).collect();
    let padded = share(pad_right_labels(share(union), len_r)?);
    let table = NeighborTable::build(padded.as_ref())?;
    let cert: Certificate =
        check_expander_table(&table, cfg.subset_size(), cfg.big_k(), &cfg.check_budget("gk"))?.into();
    if !cert.is_pass() {
        return Err(BuildError::CertificationFailed {
            name: "gk".into(),
            attempts: 1,
            detail: describe(&cert),
        });
    }
    let mut manifest = padded
        .manifest()
        .with_param("name", "gk")
        .with_param("len_r", len_r);
    manifest.parts = vec![union_manifest];
    manifest.certificates = vec![cert];
    Ok((
        BuiltGraph {
            graph: padded,
            manifest,
        },
        seeds,
    ))
}

/// `F_k` on `{0,1}^{left_len}`: a `(K, 1/2)`-disperser, replicated
/// `2 ceil(K / |R|)` times, merged to `{0,1}^{k+1}`. Certified `(K, K)`.
pub fn build_fk(cfg: &PipelineConfig, left_len: usize) -> Result<BuiltGraph, BuildError> {
    build_fk_checked(cfg, left_len, |_| Ok(None)).map(|(f, _, _)| f)
}

type ExtraCheck<'a> = dyn Fn(&Graph) -> Result<Option<(BuiltGraph, Certificate)>, BuildError> + 'a;

fn build_fk_checked(
    cfg: &PipelineConfig,
    left_len: usize,
    extra: impl Fn(&Graph) -> Result<Option<(BuiltGraph, Certificate)>, BuildError>,
) -> Result<(BuiltGraph, Option<RandomGraphSeed>, Option<BuiltGraph>), BuildError> {
    let extra: &ExtraCheck = &extra;
    cfg.validate()?;
    let k = cfg.k;
    if left_len <= k + 1 {
        return Err(BuildError::InvalidConfig(format!(
            "F_k left length {left_len} must exceed k + 1 = {}",
            k + 1
        )));
    }
    if left_len > 22 {
        return Err(BuildError::InvalidConfig(format!(
            "F_k left length {left_len} is beyond desk scale"
        )));
    }
    let name = "fk/disperser";
    let big_k = cfg.big_k();
    let right_bits = cfg.disperser_right_bits();
    let right_size = 1u64 << right_bits;
    let copies = 2 * big_k.div_ceil(right_size);
    let tag = super::label_width(copies);
    if tag + right_bits < k + 1 {
        return Err(BuildError::InvalidConfig(format!(
            "replicated labels have {} bits, fewer than k + 1",
            tag + right_bits
        )));
    }
    let attempts = match cfg.provider {
        ProviderKind::Random => cfg.max_attempts,
        ProviderKind::Complete => 1,
    };
    let budget = cfg.check_budget(name);
    let mut detail = String::new();
    for attempt in 0..attempts {
        let (disperser, seed): (Graph, _) = match cfg.provider {
            ProviderKind::Random => {
                let seed = cfg.attempt_seed(name, cfg.disperser_degree(), attempt);
                (
                    share(random_regular_graph(
                        Universe::single(left_len),
                        Universe::single(right_bits),
                        seed,
                    )?),
                    Some(seed),
                )
            }
            ProviderKind::Complete => (
                share(complete_bipartite(
                    Universe::single(left_len),
                    Universe::single(right_bits),
                )?),
                None,
            ),
        };
        let dtable = NeighborTable::build(disperser.as_ref())?;
        let dcert: Certificate = check_disperser_table(&dtable, big_k, 1, 2, &budget)?.into();
        if !dcert.is_pass() {
            detail = format!("disperser: {}", describe(&dcert));
            continue;
        }
        let mut dmanifest = disperser.manifest().with_param("name", name);
        dmanifest.certificates = vec![dcert];
        let replicated = share(replicate_right(disperser, copies)?);
        let mut rmanifest = replicated.manifest();
        rmanifest.parts = vec![dmanifest];
        let fk = share(prefix_merge(replicated, k + 1)?);
        let ftable = NeighborTable::build(fk.as_ref())?;
        let fcert: Certificate = check_expander_table(&ftable, big_k, big_k, &budget)?.into();
        if !fcert.is_pass() {
            detail = format!("F_k: {}", describe(&fcert));
            continue;
        }
        let mut manifest = fk.manifest().with_param("name", "fk");
        manifest.parts = vec![rmanifest];
        manifest.certificates = vec![fcert];
        let built = BuiltGraph { graph: fk, manifest };
        match extra(&built.graph)? {
            None => return Ok((built, seed, None)),
            Some((h, hcert)) if hcert.is_pass() => return Ok((built, seed, Some(h))),
            Some((_, hcert)) => {
                detail = format!("H_k: {}", describe(&hcert));
            }
        }
    }
    Err(BuildError::CertificationFailed {
        name: name.into(),
        attempts,
        detail,
    })
}

/// `H_k = product(G_k, F_k)`, certified `(ceil(K/c^2), K)`. `F_k` is
/// resampled when the product fails its check.
pub fn build_hk(cfg: &PipelineConfig) -> Result<Pipeline, BuildError> {
    let (gk, mut seeds) = build_gk_with_seeds(cfg)?;
    let len_r = gk
        .graph
        .right()
        .length_bounds()
        .map(|(_, max)| max)
        .unwrap_or(1);
    let hbudget = cfg.check_budget("hk");
    let (fk, fseed, hk) = build_fk_checked(cfg, len_r, |f| {
        let h = share(product(gk.graph.clone(), f.clone())?);
        let table = NeighborTable::build(h.as_ref())?;
        let cert: Certificate =
            check_expander_table(&table, cfg.subset_size(), cfg.big_k(), &hbudget)?.into();
        let mut manifest = h.manifest().with_param("name", "hk");
        manifest.parts = vec![gk.manifest.clone()];
        manifest.certificates = vec![cert.clone()];
        Ok(Some((BuiltGraph { graph: h, manifest }, cert)))
    })?;
    let mut hk = hk.expect("extra check always yields H_k");
    hk.manifest.parts.push(fk.manifest.clone());
    if let Some(seed) = fseed {
        seeds.insert("fk/disperser".into(), seed);
    }
    let mut config = cfg.clone();
    config.seeds = seeds;
    Ok(Pipeline {
        config,
        gk,
        fk,
        hk,
        len_r,
    })
}

//! Graph algebra: disjoint union with right-label shifting, right-label
//! padding, right-side replication, prefix-merge and graph product, plus the
//! parameter envelopes and the `G_k` / `F_k` / `H_k` builders.

mod params;
mod pipeline;

use std::sync::Arc;

pub use params::{fk_envelope, gk_right_size_audit, guv_envelope, FkParams, GuvParams, RightSizeAudit};
pub use pipeline::{
    build_fk, build_gk, build_hk, default_cap, BuiltGraph, Pipeline, PipelineConfig,
    PipelineManifest, ProviderKind,
};

use crate::error::GraphError;
use crate::graph::{BipartiteGraph, Graph, GraphManifest, Universe, MATERIALIZE_LIMIT};
use crate::label::BitLabel;

/// Bits needed to number `count` items: the smallest `w` with `2^w >= count`.
pub fn label_width(count: u64) -> usize {
    if count <= 1 {
        0
    } else {
        64 - (count - 1).leading_zeros() as usize
    }
}

/// `{0, .., count-1}` rendered in `width` bits.
fn numbered_universe(count: u64, width: usize) -> Result<Universe, GraphError> {
    if width < 63 && count == 1u64 << width {
        return Ok(Universe::single(width));
    }
    if count > MATERIALIZE_LIMIT {
        return Err(GraphError::UniverseTooLarge(format!(
            "{count} numbered right labels"
        )));
    }
    Ok(Universe::explicit(
        (0..count).map(|v| BitLabel::from_u64(v, width)),
    ))
}

fn right_size(g: &dyn BipartiteGraph) -> Result<u64, GraphError> {
    g.right()
        .cardinality()
        .ok_or_else(|| GraphError::UniverseTooLarge("right universe".into()))
}

/// Disjoint union; part `b`'s right label `r` becomes the integer
/// `offset_b + rank_b(r)` written in a common width.
pub struct ShiftedUnion {
    parts: Vec<Graph>,
    offsets: Vec<u64>,
    width: usize,
    left: Universe,
    right: Universe,
}

pub fn shifted_union(parts: Vec<Graph>) -> Result<ShiftedUnion, GraphError> {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i].left().overlaps(parts[j].left()) {
                return Err(GraphError::OverlappingLefts {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0u64;
    for p in &parts {
        offsets.push(total);
        total = total
            .checked_add(right_size(p.as_ref())?)
            .ok_or_else(|| GraphError::UniverseTooLarge("union right side".into()))?;
    }
    let width = label_width(total);
    let right = numbered_universe(total, width)?;
    let left = union_left(&parts)?;
    Ok(ShiftedUnion {
        parts,
        offsets,
        width,
        left,
        right,
    })
}

/// Contiguous length ranges stay structured; anything else is materialized.
fn union_left(parts: &[Graph]) -> Result<Universe, GraphError> {
    let mut ranges = Vec::new();
    for p in parts {
        match p.left() {
            Universe::Lengths { min_len, max_len } => ranges.push((*min_len, *max_len)),
            Universe::Explicit(_) => {
                ranges.clear();
                break;
            }
        }
    }
    if ranges.len() == parts.len() && !ranges.is_empty() {
        ranges.sort_unstable();
        if ranges.windows(2).all(|w| w[0].1 + 1 == w[1].0) {
            return Universe::range(ranges[0].0, ranges[ranges.len() - 1].1);
        }
    }
    let mut labels = Vec::new();
    for p in parts {
        labels.extend(p.left().iter()?);
    }
    Ok(Universe::explicit(labels))
}

impl ShiftedUnion {
    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

impl BipartiteGraph for ShiftedUnion {
    fn left(&self) -> &Universe {
        &self.left
    }

    fn right(&self) -> &Universe {
        &self.right
    }

    fn neighbors(&self, x: &BitLabel) -> Option<Vec<BitLabel>> {
        let (b, part) = self
            .parts
            .iter()
            .enumerate()
            .find(|(_, p)| p.left().contains(x))?;
        let offset = self.offsets[b];
        Some(
            part.neighbors(x)?
                .iter()
                .map(|r| {
                    let rank = part.right().rank(r).expect("neighbor lies in right universe");
                    BitLabel::from_u64(offset + rank, self.width)
                })
                .collect(),
        )
    }

    fn degree(&self, x: &BitLabel) -> Option<usize> {
        self.parts.iter().find(|p| p.left().contains(x))?.degree(x)
    }

    fn manifest(&self) -> GraphManifest {
        GraphManifest::new("shifted_union", &self.left, &self.right, "disjoint union, right labels shifted by cumulative offsets")
            .with_param("offsets", self.offsets.clone())
            .with_param("width", self.width)
            .with_parts(self.parts.iter().map(|p| p.manifest()).collect())
    }
}

/// `r` becomes `r · 1 · 0^(target_len - |r| - 1)`.
pub fn pad_label(r: &BitLabel, target_len: usize) -> Option<BitLabel> {
    if r.len() >= target_len {
        return None;
    }
    let mut out = r.clone();
    out.push(true);
    while out.len() < target_len {
        out.push(false);
    }
    Some(out)
}

pub struct PaddedRight {
    inner: Graph,
    target_len: usize,
    right: Universe,
}

pub fn pad_right_labels(g: Graph, target_len: usize) -> Result<PaddedRight, GraphError> {
    let mut padded = Vec::new();
    for r in g.right().iter()? {
        let p = pad_label(&r, target_len).ok_or_else(|| GraphError::PadTargetTooSmall {
            len: r.len(),
            label: r.clone(),
            target: target_len,
        })?;
        padded.push(p);
    }
    Ok(PaddedRight {
        inner: g,
        target_len,
        right: Universe::explicit(padded),
    })
}

impl BipartiteGraph for PaddedRight {
    fn left(&self) -> &Universe {
        self.inner.left()
    }

    fn right(&self) -> &Universe {
        &self.right
    }

    fn neighbors(&self, x: &BitLabel) -> Option<Vec<BitLabel>> {
        Some(
            self.inner
                .neighbors(x)?
                .iter()
                .map(|r| pad_label(r, self.target_len).expect("checked at construction"))
                .collect(),
        )
    }

    fn degree(&self, x: &BitLabel) -> Option<usize> {
        self.inner.degree(x)
    }

    fn manifest(&self) -> GraphManifest {
        GraphManifest::new("padded", self.left(), &self.right, "right labels padded with 10...0")
            .with_param("target_len", self.target_len)
            .with_parts(vec![self.inner.manifest()])
    }
}

/// `copies` tagged copies of the right side, each wired like the original.
/// The copy index is written in `ceil(log2 copies)` bits in front of the
/// original label.
pub struct Replicated {
    inner: Graph,
    copies: u64,
    tag_width: usize,
    right: Universe,
}

pub fn replicate_right(g: Graph, copies: u64) -> Result<Replicated, GraphError> {
    if copies == 0 {
        return Err(GraphError::ZeroCopies);
    }
    let tag_width = label_width(copies);
    let right = match g.right() {
        Universe::Lengths { min_len, max_len } if copies == 1u64 << tag_width => {
            Universe::range(min_len + tag_width, max_len + tag_width)?
        }
        other => {
            let base = other.to_vec()?;
            if base.len() as u64 * copies > MATERIALIZE_LIMIT {
                return Err(GraphError::UniverseTooLarge("replicated right side".into()));
            }
            Universe::explicit((0..copies).flat_map(|j| {
                let tag = BitLabel::from_u64(j, tag_width);
                base.iter().map(move |r| tag.concat(r))
            }))
        }
    };
    Ok(Replicated {
        inner: g,
        copies,
        tag_width,
        right,
    })
}

impl BipartiteGraph for Replicated {
    fn left(&self) -> &Universe {
        self.inner.left()
    }

    fn right(&self) -> &Universe {
        &self.right
    }

    fn neighbors(&self, x: &BitLabel) -> Option<Vec<BitLabel>> {
        let base = self.inner.neighbors(x)?;
        let mut out = Vec::with_capacity(base.len() * self.copies as usize);
        for j in 0..self.copies {
            let tag = BitLabel::from_u64(j, self.tag_width);
            out.extend(base.iter().map(|r| tag.concat(r)));
        }
        Some(out)
    }

    fn degree(&self, x: &BitLabel) -> Option<usize> {
        Some(self.inner.degree(x)? * self.copies as usize)
    }

    fn manifest(&self) -> GraphManifest {
        GraphManifest::new("replicated", self.left(), &self.right, "right side replicated")
            .with_param("copies", self.copies)
            .with_param("tag_width", self.tag_width)
            .with_parts(vec![self.inner.manifest()])
    }
}

/// Right nodes sharing their first `prefix_len` bits are identified.
/// Neighbor lists keep duplicates.
pub struct PrefixMerged {
    inner: Graph,
    prefix_len: usize,
    right: Universe,
}

pub fn prefix_merge(g: Graph, prefix_len: usize) -> Result<PrefixMerged, GraphError> {
    let shortest = match g.right() {
        Universe::Lengths { min_len, .. } => (*min_len < prefix_len)
            .then(|| BitLabel::from_bits(vec![false; *min_len])),
        Universe::Explicit(v) => v.iter().find(|r| r.len() < prefix_len).cloned(),
    };
    if let Some(label) = shortest {
        return Err(GraphError::LabelTooShort { label, prefix_len });
    }
    Ok(PrefixMerged {
        inner: g,
        prefix_len,
        right: Universe::single(prefix_len),
    })
}

impl BipartiteGraph for PrefixMerged {
    fn left(&self) -> &Universe {
        self.inner.left()
    }

    fn right(&self) -> &Universe {
        &self.right
    }

    fn neighbors(&self, x: &BitLabel) -> Option<Vec<BitLabel>> {
        Some(
            self.inner
                .neighbors(x)?
                .iter()
                .map(|r| r.prefix(self.prefix_len).expect("checked at construction"))
                .collect(),
        )
    }

    fn degree(&self, x: &BitLabel) -> Option<usize> {
        self.inner.degree(x)
    }

    fn manifest(&self) -> GraphManifest {
        GraphManifest::new("prefix_merge", self.left(), &self.right, "right nodes merged by label prefix")
            .with_param("prefix_len", self.prefix_len)
            .with_parts(vec![self.inner.manifest()])
    }
}

/// Composition: `(x, y)` is an edge when some `z` has `(x, z)` in `first`
/// and `(z, y)` in `second`. The list of `x` concatenates the lists of its
/// middle nodes.
pub struct Product {
    first: Graph,
    second: Graph,
}

pub fn product(first: Graph, second: Graph) -> Result<Product, GraphError> {
    if let Some(z) = first.right().first_outside(second.left())? {
        return Err(GraphError::InterfaceMismatch(z));
    }
    Ok(Product { first, second })
}

impl BipartiteGraph for Product {
    fn left(&self) -> &Universe {
        self.first.left()
    }

    fn right(&self) -> &Universe {
        self.second.right()
    }

    fn neighbors(&self, x: &BitLabel) -> Option<Vec<BitLabel>> {
        let mut out = Vec::new();
        for z in self.first.neighbors(x)? {
            out.extend(self.second.neighbors(&z)?);
        }
        Some(out)
    }

    fn degree(&self, x: &BitLabel) -> Option<usize> {
        self.first
            .neighbors(x)?
            .iter()
            .map(|z| self.second.degree(z))
            .sum()
    }

    fn manifest(&self) -> GraphManifest {
        GraphManifest::new("product", self.left(), self.right(), "graph product (composition)")
            .with_parts(vec![self.first.manifest(), self.second.manifest()])
    }
}

/// Wrap a combinator result as a shareable [`Graph`].
pub fn share<G: BipartiteGraph + 'static>(g: G) -> Graph {
    Arc::new(g)
}

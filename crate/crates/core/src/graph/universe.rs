use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::label::BitLabel;

/// Largest explicit universe the desk-scale code will materialize.
pub const MATERIALIZE_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniverseKind {
    SingleLength,
    LengthRange,
    ExplicitSet,
}

/// A finite set of labels forming one side of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Universe {
    /// All strings whose length lies in `min_len..=max_len`.
    Lengths { min_len: usize, max_len: usize },
    /// A sorted, deduplicated label set.
    Explicit(Vec<BitLabel>),
}

impl Universe {
    pub fn single(len: usize) -> Self {
        Universe::Lengths {
            min_len: len,
            max_len: len,
        }
    }

    pub fn range(min_len: usize, max_len: usize) -> Result<Self, GraphError> {
        if min_len > max_len {
            return Err(GraphError::InvalidUniverse(format!(
                "min_len {min_len} > max_len {max_len}"
            )));
        }
        Ok(Universe::Lengths { min_len, max_len })
    }

    pub fn explicit<I: IntoIterator<Item = BitLabel>>(labels: I) -> Self {
        let mut v: Vec<BitLabel> = labels.into_iter().collect();
        v.sort();
        v.dedup();
        Universe::Explicit(v)
    }

    pub fn kind(&self) -> UniverseKind {
        match self {
            Universe::Lengths { min_len, max_len } if min_len == max_len => {
                UniverseKind::SingleLength
            }
            Universe::Lengths { .. } => UniverseKind::LengthRange,
            Universe::Explicit(_) => UniverseKind::ExplicitSet,
        }
    }

    /// Shortest and longest label lengths present (`None` for an empty set).
    pub fn length_bounds(&self) -> Option<(usize, usize)> {
        match self {
            Universe::Lengths { min_len, max_len } => Some((*min_len, *max_len)),
            Universe::Explicit(v) => Some((v.first()?.len(), v.last()?.len())),
        }
    }

    pub fn contains(&self, x: &BitLabel) -> bool {
        match self {
            Universe::Lengths { min_len, max_len } => (*min_len..=*max_len).contains(&x.len()),
            Universe::Explicit(v) => v.binary_search(x).is_ok(),
        }
    }

    /// Number of labels; `None` when it overflows `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            Universe::Lengths { min_len, max_len } => {
                if *max_len >= 63 {
                    return None;
                }
                (*min_len..=*max_len).try_fold(0u64, |acc, n| acc.checked_add(1u64 << n))
            }
            Universe::Explicit(v) => Some(v.len() as u64),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality() == Some(0)
    }

    /// Position of `x` in canonical `(length, lex)` order.
    pub fn rank(&self, x: &BitLabel) -> Option<u64> {
        match self {
            Universe::Lengths { min_len, .. } => {
                if !self.contains(x) || x.len() >= 63 {
                    return None;
                }
                let before: u64 = (*min_len..x.len()).map(|n| 1u64 << n).sum();
                Some(before + x.to_u64()?)
            }
            Universe::Explicit(v) => v.binary_search(x).ok().map(|i| i as u64),
        }
    }

    /// Inverse of [`Universe::rank`].
    pub fn unrank(&self, mut index: u64) -> Option<BitLabel> {
        match self {
            Universe::Lengths { min_len, max_len } => {
                for n in *min_len..=(*max_len).min(62) {
                    let block = 1u64 << n;
                    if index < block {
                        return Some(BitLabel::from_u64(index, n));
                    }
                    index -= block;
                }
                None
            }
            Universe::Explicit(v) => v.get(usize::try_from(index).ok()?).cloned(),
        }
    }

    /// Every label in canonical order.
    pub fn iter(&self) -> Result<Box<dyn Iterator<Item = BitLabel> + '_>, GraphError> {
        match self {
            Universe::Lengths { min_len, max_len } => {
                if self.cardinality().is_none_or(|c| c > MATERIALIZE_LIMIT) {
                    return Err(GraphError::UniverseTooLarge(format!(
                        "lengths {min_len}..={max_len}"
                    )));
                }
                Ok(Box::new(
                    (*min_len..=*max_len).flat_map(BitLabel::all_of_len),
                ))
            }
            Universe::Explicit(v) => Ok(Box::new(v.iter().cloned())),
        }
    }

    /// Materialize into a vector, refusing universes beyond [`MATERIALIZE_LIMIT`].
    pub fn to_vec(&self) -> Result<Vec<BitLabel>, GraphError> {
        Ok(self.iter()?.collect())
    }

    pub fn overlaps(&self, other: &Universe) -> bool {
        use Universe::*;
        match (self, other) {
            (
                Lengths {
                    min_len: a0,
                    max_len: a1,
                },
                Lengths {
                    min_len: b0,
                    max_len: b1,
                },
            ) => a0.max(b0) <= a1.min(b1),
            (Lengths { .. }, Explicit(v)) => v.iter().any(|x| self.contains(x)),
            (Explicit(v), Lengths { .. }) => v.iter().any(|x| other.contains(x)),
            (Explicit(a), Explicit(b)) => {
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => return true,
                    }
                }
                false
            }
        }
    }

    /// First member of `self` missing from `other`, if any.
    pub fn first_outside(&self, other: &Universe) -> Result<Option<BitLabel>, GraphError> {
        if let (
            Universe::Lengths {
                min_len: a0,
                max_len: a1,
            },
            Universe::Lengths {
                min_len: b0,
                max_len: b1,
            },
        ) = (self, other)
        {
            if b0 <= a0 && a1 <= b1 {
                return Ok(None);
            }
            let n = if a0 < b0 { *a0 } else { (*b1 + 1).max(*a0) };
            return Ok(Some(BitLabel::from_bits(vec![false; n])));
        }
        Ok(self.iter()?.find(|x| !other.contains(x)))
    }

    pub fn manifest(&self) -> UniverseManifest {
        let (min_len, max_len) = self.length_bounds().unwrap_or((0, 0));
        UniverseManifest {
            kind: self.kind(),
            min_len,
            max_len,
            count: self.cardinality(),
        }
    }
}

/// Serialized description of a universe inside a graph manifest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseManifest {
    pub kind: UniverseKind,
    pub min_len: usize,
    pub max_len: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count: Option<u64>,
}

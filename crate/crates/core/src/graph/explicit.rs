use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::manifest::GraphManifest;
use super::universe::Universe;
use super::BipartiteGraph;
use crate::error::GraphError;
use crate::label::BitLabel;

/// A graph stored as adjacency lists. Left nodes without an entry have
/// degree zero.
#[derive(Debug, Clone)]
pub struct ExplicitGraph {
    left: Universe,
    right: Universe,
    adjacency: BTreeMap<BitLabel, Vec<BitLabel>>,
}

impl ExplicitGraph {
    pub fn new(
        left: Universe,
        right: Universe,
        adjacency: BTreeMap<BitLabel, Vec<BitLabel>>,
    ) -> Result<Self, GraphError> {
        for (x, ns) in &adjacency {
            if !left.contains(x) {
                return Err(GraphError::NotInLeft(x.clone()));
            }
            if let Some(r) = ns.iter().find(|r| !right.contains(r)) {
                return Err(GraphError::InvalidUniverse(format!(
                    "neighbor {r} of {x} lies outside the right universe"
                )));
            }
        }
        Ok(Self {
            left,
            right,
            adjacency,
        })
    }

    /// Graph whose universes are exactly the labels named by `edges`.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (BitLabel, BitLabel)>,
    {
        let mut adjacency: BTreeMap<BitLabel, Vec<BitLabel>> = BTreeMap::new();
        for (x, r) in edges {
            adjacency.entry(x).or_default().push(r);
        }
        let left = Universe::explicit(adjacency.keys().cloned());
        let right = Universe::explicit(adjacency.values().flatten().cloned());
        Self {
            left,
            right,
            adjacency,
        }
    }

    /// Materialize any finite graph.
    pub fn from_graph(g: &dyn BipartiteGraph) -> Result<Self, GraphError> {
        let mut adjacency = BTreeMap::new();
        for x in g.left().iter()? {
            let ns = g.neighbors(&x).ok_or_else(|| GraphError::NotInLeft(x.clone()))?;
            adjacency.insert(x, ns);
        }
        Ok(Self {
            left: g.left().clone(),
            right: g.right().clone(),
            adjacency,
        })
    }

    /// Parse the `<left-bits> <right-bits>` line format.
    pub fn from_edge_dump(text: &str) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (l, r) = line.split_once(' ').ok_or_else(|| GraphError::EdgeDump {
                line: i + 1,
                msg: "expected `<left-bits> <right-bits>`".into(),
            })?;
            let parse = |s: &str| {
                s.parse::<BitLabel>().map_err(|e| GraphError::EdgeDump {
                    line: i + 1,
                    msg: e.to_string(),
                })
            };
            edges.push((parse(l)?, parse(r)?));
        }
        Ok(Self::from_edges(edges))
    }
}

impl BipartiteGraph for ExplicitGraph {
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
        Some(self.adjacency.get(x).cloned().unwrap_or_default())
    }

    fn manifest(&self) -> GraphManifest {
        GraphManifest::new("explicit", &self.left, &self.right, "explicit edge list")
            .with_param("edges", self.adjacency.values().map(Vec::len).sum::<usize>())
    }
}

/// One line per edge, `<left-bits> <right-bits>`, sorted by left label then
/// neighbor index.
pub fn edge_dump(g: &dyn BipartiteGraph) -> Result<String, GraphError> {
    let mut out = String::new();
    for x in g.left().iter()? {
        for r in g.neighbors(&x).ok_or_else(|| GraphError::NotInLeft(x.clone()))? {
            writeln!(out, "{x} {r}").expect("write to string");
        }
    }
    Ok(out)
}

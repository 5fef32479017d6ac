use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::universe::{Universe, UniverseManifest};
use crate::verify::Certificate;

/// JSON description of a graph: universes, construction parameters,
/// provenance, certificates and the manifests of its parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphManifest {
    pub kind: String,
    pub left: UniverseManifest,
    pub right: UniverseManifest,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<String>,
    pub provenance: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub parts: Vec<GraphManifest>,
}

impl GraphManifest {
    pub fn new(kind: &str, left: &Universe, right: &Universe, provenance: &str) -> Self {
        Self {
            kind: kind.to_string(),
            left: left.manifest(),
            right: right.manifest(),
            degree: None,
            seed: None,
            generator: None,
            provenance: provenance.to_string(),
            certificates: Vec::new(),
            params: BTreeMap::new(),
            parts: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_parts(mut self, parts: Vec<GraphManifest>) -> Self {
        self.parts = parts;
        self
    }

    pub fn with_degree(mut self, degree: u64) -> Self {
        self.degree = Some(degree);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

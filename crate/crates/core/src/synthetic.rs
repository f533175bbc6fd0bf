//! Table-driven model spaces.
//!
//! A synthetic space declares opaque model ids and looks every description
//! length up in a table. It exists to pin reusability and transferability
//! scores to hand-chosen costs and to replay a concrete space's costs through
//! the generic scoring code.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coding::BitLength;
use crate::error::{Error, Result};
use crate::model_space::{ModelSpace, SearchBounds};

/// The on-disk form of a synthetic space. See `docs/synthetic.md`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticDocument {
    pub models: Vec<String>,
    /// `K(M)` per model.
    pub k_model: BTreeMap<String, u64>,
    /// `K(case | M)`, keyed by model then case id.
    pub k_case_given: BTreeMap<String, BTreeMap<String, u64>>,
    /// `K(M | source)`, keyed by model then source model id.
    #[serde(default)]
    pub k_transfer: BTreeMap<String, BTreeMap<String, u64>>,
    /// `K(case)` without a model, keyed by case id.
    #[serde(default)]
    pub k_null: BTreeMap<String, u64>,
}

/// A validated synthetic space. Models and cases are ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticSpace {
    doc: SyntheticDocument,
}

pub fn load_synthetic(path: impl AsRef<Path>) -> Result<SyntheticSpace> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
    SyntheticSpace::from_json(&text)
}

impl SyntheticSpace {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SyntheticDocument =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        SyntheticSpace::new(doc)
    }

    /// Validates totality: every declared model has `K(M)`, a `K(case | M)`
    /// for every case id any model mentions, and a `K(M | source)` for every
    /// source id any model mentions.
    pub fn new(doc: SyntheticDocument) -> Result<Self> {
        if doc.models.is_empty() {
            return Err(Error::Schema("the model list is empty".into()));
        }
        let declared: BTreeSet<&String> = doc.models.iter().collect();
        if declared.len() != doc.models.len() {
            return Err(Error::Schema("duplicate model id".into()));
        }
        for (table, keys) in [
            ("k_model", doc.k_model.keys().collect::<Vec<_>>()),
            ("k_case_given", doc.k_case_given.keys().collect()),
            ("k_transfer", doc.k_transfer.keys().collect()),
        ] {
            if let Some(stray) = keys.into_iter().find(|k| !declared.contains(k)) {
                return Err(Error::Schema(format!(
                    "{table} names undeclared model {stray:?}"
                )));
            }
        }
        let cases: BTreeSet<&String> = doc.k_case_given.values().flat_map(|t| t.keys()).collect();
        let sources: BTreeSet<&String> = doc.k_transfer.values().flat_map(|t| t.keys()).collect();
        for model in &doc.models {
            if !doc.k_model.contains_key(model) {
                return Err(Error::Schema(format!("missing k_model[{model:?}]")));
            }
            for case in &cases {
                if doc
                    .k_case_given
                    .get(model)
                    .and_then(|t| t.get(*case))
                    .is_none()
                {
                    return Err(Error::Schema(format!(
                        "missing k_case_given[{model:?}][{case:?}]"
                    )));
                }
            }
            for source in &sources {
                if doc
                    .k_transfer
                    .get(model)
                    .and_then(|t| t.get(*source))
                    .is_none()
                {
                    return Err(Error::Schema(format!(
                        "missing k_transfer[{model:?}][{source:?}]"
                    )));
                }
            }
        }
        Ok(SyntheticSpace { doc })
    }

    pub fn document(&self) -> &SyntheticDocument {
        &self.doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.doc).expect("documents always serialize")
    }

    fn check_model(&self, model: &str) -> Result<()> {
        if self.doc.k_model.contains_key(model) {
            Ok(())
        } else {
            Err(Error::UnknownModel(model.to_string()))
        }
    }
}

impl ModelSpace for SyntheticSpace {
    type Model = String;
    type Case = String;

    /// Every declared model, provided the case is known.
    fn candidates(&self, case: &String, _bounds: &SearchBounds) -> Result<Vec<String>> {
        let first = &self.doc.models[0];
        let known = self
            .doc
            .k_case_given
            .get(first)
            .is_some_and(|t| t.contains_key(case));
        if !known {
            return Err(Error::Schema(format!("unknown case id {case:?}")));
        }
        let mut models = self.doc.models.clone();
        models.sort();
        Ok(models)
    }

    fn admits_source(&self, source: &String) -> bool {
        self.doc.k_model.contains_key(source)
    }

    fn model_cost(&self, model: &String) -> Result<BitLength> {
        self.check_model(model)?;
        Ok(BitLength(self.doc.k_model[model]))
    }

    fn case_cost(&self, model: &String, case: &String) -> Result<BitLength> {
        self.check_model(model)?;
        self.doc
            .k_case_given
            .get(model)
            .and_then(|t| t.get(case))
            .map(|&b| BitLength(b))
            .ok_or_else(|| Error::Schema(format!("missing k_case_given[{model:?}][{case:?}]")))
    }

    fn null_case_cost(&self, case: &String) -> Result<BitLength> {
        self.doc
            .k_null
            .get(case)
            .map(|&b| BitLength(b))
            .ok_or_else(|| Error::Schema(format!("missing k_null[{case:?}]")))
    }

    fn transfer_cost(&self, target: &String, source: &String) -> Result<BitLength> {
        self.check_model(target)?;
        self.doc
            .k_transfer
            .get(target)
            .and_then(|t| t.get(source))
            .map(|&b| BitLength(b))
            .ok_or_else(|| Error::Schema(format!("missing k_transfer[{target:?}][{source:?}]")))
    }
}

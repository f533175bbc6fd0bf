//! The interface every model space exposes to inference and scoring.
//!
//! Reusability and transferability only ever need candidate enumeration and
//! three description lengths: `K(M)`, `K(case | M)` and `K(M | M')`. Concrete
//! spaces ([`MorphologySpace`](crate::morphology::MorphologySpace)) and
//! table-driven ones ([`SyntheticSpace`](crate::synthetic::SyntheticSpace))
//! implement this trait, and every score is defined once against it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coding::BitLength;
use crate::error::Result;

/// Limits on the pattern models considered by a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Largest slot count `n`.
    pub max_slots: usize,
    /// Literal tokens per pattern.
    pub max_literals: usize,
    /// Slot tokens per pattern.
    pub max_slot_tokens: usize,
    /// Longest literal, in characters.
    pub max_literal_len: Option<usize>,
    /// Literal tokens across both patterns of a model.
    pub max_model_literals: Option<usize>,
    /// Enumeration fails with a resource error past this many candidates.
    pub max_candidates: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_slots: 2,
            max_literals: 3,
            max_slot_tokens: 3,
            max_literal_len: None,
            max_model_literals: None,
            max_candidates: 250_000,
        }
    }
}

impl SearchBounds {
    /// True when the structural limits (not the candidate cap) admit `model`.
    pub fn admits(&self, model: &crate::morphology::MorphModel) -> bool {
        let within_pattern = |p: &crate::morphology::Pattern| {
            p.literal_count() <= self.max_literals
                && p.slot_token_count() <= self.max_slot_tokens
                && self
                    .max_literal_len
                    .is_none_or(|max| p.literals().all(|w| w.chars().count() <= max))
        };
        model.n() <= self.max_slots
            && within_pattern(model.phi1())
            && within_pattern(model.phi2())
            && self
                .max_model_literals
                .is_none_or(|max| model.literal_count() <= max)
    }
}

/// Weak or strong reusability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Weak,
    Strong,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Weak => "weak",
            Variant::Strong => "strong",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "weak" => Ok(Variant::Weak),
            "strong" => Ok(Variant::Strong),
            other => Err(format!(
                "unknown variant {other:?} (expected weak or strong)"
            )),
        }
    }
}

/// A space of models over one domain.
///
/// Implementations are immutable after construction and must return the same
/// candidates and costs for the same inputs.
pub trait ModelSpace: Sync {
    type Model: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync;
    type Case: Clone + fmt::Debug + Sync;

    /// Models whose two-part cost on `case` may be minimal, compressive, or
    /// useful once a source model is known. Must include every model whose
    /// `K(M) + K(case | M)` is at most the model-free baseline plus the
    /// cheapest fallback model.
    fn candidates(&self, case: &Self::Case, bounds: &SearchBounds) -> Result<Vec<Self::Model>>;

    /// True when `source` is itself a model of this space, so that it competes
    /// with the candidates once it is given for free.
    fn admits_source(&self, source: &Self::Model) -> bool;

    fn model_cost(&self, model: &Self::Model) -> Result<BitLength>;

    fn case_cost(&self, model: &Self::Model, case: &Self::Case) -> Result<BitLength>;

    /// `K(x, y)`: the case described without any model.
    fn null_case_cost(&self, case: &Self::Case) -> Result<BitLength>;

    /// `K(target | source)`.
    fn transfer_cost(&self, target: &Self::Model, source: &Self::Model) -> Result<BitLength>;

    fn same_model(&self, a: &Self::Model, b: &Self::Model) -> bool {
        a == b
    }
}

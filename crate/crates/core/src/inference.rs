//! Two-part MDL inference on a single case.

use rayon::prelude::*;
use serde::Serialize;

use crate::coding::BitLength;
use crate::error::{Error, Result};
use crate::model_space::{ModelSpace, SearchBounds};

/// `K(M)` and `K(case | M)` for one candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelScore<M> {
    pub model: M,
    pub model_bits: BitLength,
    pub case_bits: BitLength,
}

impl<M> ModelScore<M> {
    pub fn total(&self) -> BitLength {
        self.model_bits + self.case_bits
    }
}

/// The outcome of minimizing `K(M) + K(case | M)` over the candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdlResult<M> {
    pub opt_bits: BitLength,
    /// `K(case)` with no model.
    pub null_bits: BitLength,
    /// Every minimizer, ordered by `(K(M), printed form)`. Never empty.
    pub argmin_models: Vec<M>,
    /// Every candidate, ordered by `(total, K(M), printed form)`.
    pub breakdown: Vec<ModelScore<M>>,
}

impl<M: Clone> MdlResult<M> {
    /// Candidates whose two-part cost is strictly below `K(case)`, in
    /// breakdown order.
    pub fn compatible(&self) -> Vec<ModelScore<M>> {
        self.breakdown
            .iter()
            .take_while(|s| s.total() < self.null_bits)
            .cloned()
            .collect()
    }

    pub fn argmin_scores(&self) -> impl Iterator<Item = &ModelScore<M>> + '_ {
        self.breakdown
            .iter()
            .take_while(move |s| s.total() == self.opt_bits)
    }
}

/// Scores `models` on `case` in parallel; the output order follows the input.
pub fn score_models<S: ModelSpace>(
    space: &S,
    case: &S::Case,
    models: Vec<S::Model>,
) -> Result<Vec<ModelScore<S::Model>>> {
    models
        .into_par_iter()
        .map(|model| {
            Ok(ModelScore {
                model_bits: space.model_cost(&model)?,
                case_bits: space.case_cost(&model, case)?,
                model,
            })
        })
        .collect()
}

pub fn optimal_models<S: ModelSpace>(
    space: &S,
    case: &S::Case,
    bounds: &SearchBounds,
) -> Result<MdlResult<S::Model>> {
    let candidates = space.candidates(case, bounds)?;
    if candidates.is_empty() {
        return Err(Error::Search(format!("no candidate model for {case:?}")));
    }
    let null_bits = space.null_case_cost(case)?;
    let mut breakdown: Vec<(String, ModelScore<S::Model>)> = score_models(space, case, candidates)?
        .into_iter()
        .map(|s| (s.model.to_string(), s))
        .collect();
    breakdown.sort_by(|(pa, a), (pb, b)| {
        (a.total(), a.model_bits, pa, &a.model).cmp(&(b.total(), b.model_bits, pb, &b.model))
    });
    let breakdown: Vec<ModelScore<S::Model>> = breakdown.into_iter().map(|(_, s)| s).collect();
    let opt_bits = breakdown[0].total();
    let argmin_models = breakdown
        .iter()
        .take_while(|s| s.total() == opt_bits)
        .map(|s| s.model.clone())
        .collect();
    Ok(MdlResult {
        opt_bits,
        null_bits,
        argmin_models,
        breakdown,
    })
}

/// Models with `K(M) + K(case | M) < K(case)`, ordered by two-part cost.
pub fn compatible_models<S: ModelSpace>(
    space: &S,
    case: &S::Case,
    bounds: &SearchBounds,
) -> Result<Vec<S::Model>> {
    Ok(optimal_models(space, case, bounds)?
        .compatible()
        .into_iter()
        .map(|s| s.model)
        .collect())
}

//! Weak and strong reusability of a source model for a target case.
//!
//! With integer bit costs both notions are governed by a single degree: the
//! source model is η-reusable exactly for the integers `1 <= η <= ρ`, and
//! `ρ = 0` means it is not reusable at any level.

use serde::Serialize;

use crate::coding::{BitLength, Case};
use crate::error::{Error, Result};
use crate::inference::{optimal_models, MdlResult};
use crate::model_space::{ModelSpace, SearchBounds, Variant};
use crate::morphology::{case_cost_given_model, Model, MorphologySpace};

/// `K(M)` against `K(M | source)` for one minimizer of the target case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongWitness<M> {
    pub model: M,
    pub model_bits: BitLength,
    pub transfer_bits: BitLength,
}

impl<M> StrongWitness<M> {
    /// `K(M) - K(M | source)`, which may be negative.
    pub fn gain(&self) -> i128 {
        i128::from(self.model_bits.bits()) - i128::from(self.transfer_bits.bits())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReusabilityReport<M> {
    pub rho_weak: BitLength,
    pub rho_strong: BitLength,
    /// `min_M K(M) + K(case | M)`.
    pub weak_lhs: BitLength,
    /// `min_M K(M | source) + K(case | M)`.
    pub weak_rhs_min: BitLength,
    /// The first model, in breakdown order, attaining `weak_rhs_min`.
    pub weak_rhs_model: M,
    /// One entry per minimizer of the target case, in argmin order.
    pub strong_witnesses: Vec<StrongWitness<M>>,
}

impl<M> ReusabilityReport<M> {
    pub fn rho(&self, variant: Variant) -> BitLength {
        match variant {
            Variant::Weak => self.rho_weak,
            Variant::Strong => self.rho_strong,
        }
    }

    pub fn is_reusable(&self, eta: u64, variant: Variant) -> Result<bool> {
        check_eta(eta)?;
        Ok(eta <= self.rho(variant).bits())
    }
}

pub(crate) fn check_eta(eta: u64) -> Result<()> {
    if eta == 0 {
        Err(Error::Domain(
            "eta must be a positive number of bits".into(),
        ))
    } else {
        Ok(())
    }
}

pub fn reusability<S: ModelSpace>(
    space: &S,
    source: &S::Model,
    case: &S::Case,
    bounds: &SearchBounds,
) -> Result<ReusabilityReport<S::Model>> {
    let target = optimal_models(space, case, bounds)?;
    reusability_given(space, source, case, &target)
}

/// As [`reusability`], reusing an already computed inference on the target.
pub fn reusability_given<S: ModelSpace>(
    space: &S,
    source: &S::Model,
    case: &S::Case,
    target: &MdlResult<S::Model>,
) -> Result<ReusabilityReport<S::Model>> {
    let mut best: Option<(BitLength, &S::Model)> = None;
    let mut source_seen = false;
    for score in &target.breakdown {
        source_seen |= space.same_model(&score.model, source);
        let bits = space.transfer_cost(&score.model, source)? + score.case_bits;
        if best.is_none_or(|(b, _)| bits < b) {
            best = Some((bits, &score.model));
        }
    }
    if !source_seen && space.admits_source(source) {
        let bits = space.transfer_cost(source, source)? + space.case_cost(source, case)?;
        if best.is_none_or(|(b, _)| bits < b) {
            best = Some((bits, source));
        }
    }
    let (weak_rhs_min, weak_rhs_model) = best.expect("an inference result is never empty");
    let weak_lhs = target.opt_bits;

    let strong_witnesses = target
        .argmin_scores()
        .map(|s| {
            Ok(StrongWitness {
                model: s.model.clone(),
                model_bits: s.model_bits,
                transfer_bits: space.transfer_cost(&s.model, source)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_gain = strong_witnesses
        .iter()
        .map(StrongWitness::gain)
        .min()
        .expect("the argmin set is never empty");

    Ok(ReusabilityReport {
        rho_weak: weak_lhs.saturating_sub(weak_rhs_min),
        rho_strong: BitLength(min_gain.max(0) as u64),
        weak_lhs,
        weak_rhs_min,
        weak_rhs_model: weak_rhs_model.clone(),
        strong_witnesses,
    })
}

pub fn rho_weak<S: ModelSpace>(
    space: &S,
    source: &S::Model,
    case: &S::Case,
    bounds: &SearchBounds,
) -> Result<BitLength> {
    Ok(reusability(space, source, case, bounds)?.rho_weak)
}

pub fn rho_strong<S: ModelSpace>(
    space: &S,
    source: &S::Model,
    case: &S::Case,
    bounds: &SearchBounds,
) -> Result<BitLength> {
    Ok(reusability(space, source, case, bounds)?.rho_strong)
}

pub fn rho<S: ModelSpace>(
    space: &S,
    source: &S::Model,
    case: &S::Case,
    variant: Variant,
    bounds: &SearchBounds,
) -> Result<BitLength> {
    Ok(reusability(space, source, case, bounds)?.rho(variant))
}

pub fn is_weakly_reusable<S: ModelSpace>(
    space: &S,
    source: &S::Model,
    case: &S::Case,
    eta: u64,
    bounds: &SearchBounds,
) -> Result<bool> {
    reusability(space, source, case, bounds)?.is_reusable(eta, Variant::Weak)
}

pub fn is_strongly_reusable<S: ModelSpace>(
    space: &S,
    source: &S::Model,
    case: &S::Case,
    eta: u64,
    bounds: &SearchBounds,
) -> Result<bool> {
    reusability(space, source, case, bounds)?.is_reusable(eta, Variant::Strong)
}

/// Experimental: reusability for a target problem whose solution is unknown.
///
/// The missing solution is filled in with the source model's own cheapest
/// completion of `x`, and the case form is scored on the result. Returns
/// `None` when the source model cannot parse `x`, in which case it offers no
/// prediction to reuse.
pub fn problem_reusability(
    space: &MorphologySpace,
    source: &Model,
    x: &str,
    bounds: &SearchBounds,
) -> Result<Option<(String, ReusabilityReport<Model>)>> {
    space.alphabet().validate(x)?;
    let Some(m) = source.as_morph().filter(|m| m.is_predictive()) else {
        return Ok(None);
    };
    let mut best: Option<(BitLength, String)> = None;
    for (_, y) in m.complete(x) {
        let bits = case_cost_given_model(source, &Case::new(x, y.as_str()), space.alphabet())?.bits;
        if best.as_ref().is_none_or(|(b, w)| (bits, &y) < (*b, w)) {
            best = Some((bits, y));
        }
    }
    let Some((_, y)) = best else {
        return Ok(None);
    };
    let report = reusability(space, source, &Case::new(x, y.as_str()), bounds)?;
    Ok(Some((y, report)))
}

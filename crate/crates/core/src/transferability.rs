//! Transferability of a solved source case toward a target case.
//!
//! Every model compatible with the source case is scored for reusability on
//! the target. `tau_max` is the best degree (0 when nothing is compatible) and
//! `tau_avg` its expectation under the algorithmic posterior
//! `2^-(K(source | M) + K(M))`, normalized over the compatible set. Weights are
//! exact rationals; the `f64` fields are conversions for reporting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coding::BitLength;
use crate::error::Result;
use crate::inference::{optimal_models, MdlResult};
use crate::model_space::{ModelSpace, SearchBounds, Variant};
use crate::reusability::{check_eta, reusability_given, ReusabilityReport};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelTransfer<M> {
    pub model: M,
    /// `K(M) + K(source | M)`.
    pub source_bits: BitLength,
    #[serde(skip)]
    pub weight: BigRational,
    #[serde(rename = "weight")]
    pub weight_f64: f64,
    pub rho: BitLength,
    pub reusability: ReusabilityReport<M>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferReport<M> {
    pub variant: Variant,
    pub tau_max: BitLength,
    #[serde(skip)]
    pub tau_avg_exact: BigRational,
    pub tau_avg: f64,
    /// Weighted variance of the per-model degrees. A diagnostic: the average
    /// alone hides how much the compatible models disagree.
    pub rho_variance: f64,
    pub compatible_count: usize,
    /// Compatible models in order of two-part cost on the source case.
    pub per_model: Vec<ModelTransfer<M>>,
}

impl<M> TransferReport<M> {
    /// Some compatible model is η-reusable on the target at the given η.
    pub fn is_transferable(&self, eta: u64) -> Result<bool> {
        check_eta(eta)?;
        Ok(self.tau_max.bits() >= eta)
    }

    /// Some compatible model is reusable at all (degree above zero).
    pub fn is_transferable_at_all(&self) -> bool {
        self.tau_max > BitLength::ZERO
    }
}

pub fn transfer_report<S, T>(
    source_space: &S,
    target_space: &T,
    source_case: &S::Case,
    target_case: &T::Case,
    variant: Variant,
    bounds: &SearchBounds,
) -> Result<TransferReport<S::Model>>
where
    S: ModelSpace,
    T: ModelSpace<Model = S::Model>,
{
    let source = optimal_models(source_space, source_case, bounds)?;
    let target = optimal_models(target_space, target_case, bounds)?;
    transfer_report_given(target_space, &source, target_case, &target, variant)
}

/// As [`transfer_report`], from inference results already computed on both
/// cases.
pub fn transfer_report_given<T: ModelSpace>(
    target_space: &T,
    source: &MdlResult<T::Model>,
    target_case: &T::Case,
    target: &MdlResult<T::Model>,
    variant: Variant,
) -> Result<TransferReport<T::Model>> {
    let compatible = source.compatible();
    let reports = compatible
        .par_iter()
        .map(|s| reusability_given(target_space, &s.model, target_case, target))
        .collect::<Result<Vec<_>>>()?;

    let weights = posterior_weights(compatible.iter().map(|s| s.total()));
    let mut per_model = Vec::with_capacity(compatible.len());
    for ((score, weight), report) in compatible.into_iter().zip(weights).zip(reports) {
        per_model.push(ModelTransfer {
            source_bits: score.total(),
            weight_f64: to_f64(&weight),
            rho: report.rho(variant),
            weight,
            model: score.model,
            reusability: report,
        });
    }

    let tau_max = per_model
        .iter()
        .map(|m| m.rho)
        .max()
        .unwrap_or(BitLength::ZERO);
    let tau_avg_exact = per_model
        .iter()
        .map(|m| &m.weight * rational(m.rho))
        .fold(BigRational::zero(), |acc, x| acc + x);
    let variance = per_model
        .iter()
        .map(|m| {
            let d = rational(m.rho) - &tau_avg_exact;
            &m.weight * &d * &d
        })
        .fold(BigRational::zero(), |acc, x| acc + x);

    Ok(TransferReport {
        variant,
        tau_max,
        tau_avg: to_f64(&tau_avg_exact),
        tau_avg_exact,
        rho_variance: to_f64(&variance),
        compatible_count: per_model.len(),
        per_model,
    })
}

/// `2^-t_i / sum_j 2^-t_j`, exactly.
pub fn posterior_weights(totals: impl IntoIterator<Item = BitLength>) -> Vec<BigRational> {
    let totals: Vec<u64> = totals.into_iter().map(BitLength::bits).collect();
    let Some(&worst) = totals.iter().max() else {
        return Vec::new();
    };
    // Scale every weight by 2^worst so the numerators are integers.
    let numerators: Vec<BigInt> = totals
        .iter()
        .map(|&t| BigInt::from(1) << (worst - t) as usize)
        .collect();
    let sum: BigInt = numerators.iter().sum();
    numerators
        .into_iter()
        .map(|n| BigRational::new(n, sum.clone()))
        .collect()
}

fn rational(bits: BitLength) -> BigRational {
    BigRational::from_integer(BigInt::from(bits.bits()))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn tau_max<S, T>(
    source_space: &S,
    target_space: &T,
    source_case: &S::Case,
    target_case: &T::Case,
    variant: Variant,
    bounds: &SearchBounds,
) -> Result<BitLength>
where
    S: ModelSpace,
    T: ModelSpace<Model = S::Model>,
{
    Ok(transfer_report(
        source_space,
        target_space,
        source_case,
        target_case,
        variant,
        bounds,
    )?
    .tau_max)
}

pub fn tau_avg<S, T>(
    source_space: &S,
    target_space: &T,
    source_case: &S::Case,
    target_case: &T::Case,
    variant: Variant,
    bounds: &SearchBounds,
) -> Result<f64>
where
    S: ModelSpace,
    T: ModelSpace<Model = S::Model>,
{
    Ok(transfer_report(
        source_space,
        target_space,
        source_case,
        target_case,
        variant,
        bounds,
    )?
    .tau_avg)
}

#[allow(clippy::too_many_arguments)]
pub fn is_transferable<S, T>(
    source_space: &S,
    target_space: &T,
    source_case: &S::Case,
    target_case: &T::Case,
    eta: u64,
    variant: Variant,
    bounds: &SearchBounds,
) -> Result<bool>
where
    S: ModelSpace,
    T: ModelSpace<Model = S::Model>,
{
    check_eta(eta)?;
    transfer_report(
        source_space,
        target_space,
        source_case,
        target_case,
        variant,
        bounds,
    )?
    .is_transferable(eta)
}

//! Solving `A : B :: C : ?` by transferring models of `(A, B)`.
//!
//! A solution is scored by the length of the whole analogy's description:
//! a source model `M^S` and `(A, B)` given it, then a target model given the
//! source (one bit when `M^T = M^S`, otherwise `1 + K(M^T)`), then `(C, y)`
//! given the target model. Target models come from a pool holding every
//! predictive pattern model that describes `(A, B)` and either fits the
//! inference budget or binds each slot to a nonempty substring. Each pool
//! model proposes `y = phi2(r)` for every `r` with `phi1(r) = C`; proposals are
//! ranked by total bits, ties broken by `y`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::coding::{Alphabet, BitLength, Case};
use crate::error::{Error, Result};
use crate::inference::optimal_models;
use crate::model_space::SearchBounds;
use crate::morphology::{
    case_cost_given_model, generate_candidates_with, CandidateFilter, Model, MorphModel,
    MorphologySpace, Representation,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub y: String,
    pub model: Model,
    pub representation: Representation,
    /// `source_bits + transfer_bits + case_bits`.
    pub total_bits: BitLength,
    pub source_model: Model,
    /// `K(M^S) + K((A, B) | M^S)`.
    pub source_bits: BitLength,
    /// `K(M^T | M^S)`.
    pub transfer_bits: BitLength,
    /// `K((C, y) | M^T)`.
    pub case_bits: BitLength,
    /// `M^T = M^S`.
    pub reused: bool,
    /// 1-based.
    pub rank: usize,
}

/// A target model with its cheapest source: itself when reusing costs no
/// more than describing it fresh after the optimal source model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoolEntry {
    pub model: MorphModel,
    pub source_model: Model,
    pub source_bits: BitLength,
    pub transfer_bits: BitLength,
    pub reused: bool,
}

impl PoolEntry {
    fn prefix_bits(&self) -> BitLength {
        self.source_bits + self.transfer_bits
    }
}

/// The target model pool derived from one source case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourcePool {
    pub source: Case,
    pub entries: Vec<PoolEntry>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Solver {
    space: MorphologySpace,
    bounds: SearchBounds,
}

impl Solver {
    pub fn new(alphabet: Alphabet, bounds: SearchBounds) -> Self {
        Solver {
            space: MorphologySpace::new(alphabet),
            bounds,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.space.alphabet()
    }

    pub fn bounds(&self) -> &SearchBounds {
        &self.bounds
    }

    pub fn space(&self) -> &MorphologySpace {
        &self.space
    }

    pub fn pool(&self, a: &str, b: &str) -> Result<SourcePool> {
        let source = Case::new(a, b);
        let alphabet = self.alphabet();
        let inferred = optimal_models(&self.space, &source, &self.bounds)?;
        let best_source = inferred.argmin_models[0].clone();
        let relevant = CandidateFilter {
            max_total: Some(self.space.relevance_budget(&source)?),
            nonempty_slots: false,
        };
        let nonempty = CandidateFilter {
            max_total: None,
            nonempty_slots: true,
        };
        let mut models = generate_candidates_with(&source, &self.bounds, alphabet, &relevant)?;
        models.extend(generate_candidates_with(
            &source,
            &self.bounds,
            alphabet,
            &nonempty,
        )?);
        models.retain(MorphModel::is_predictive);
        models.sort();
        models.dedup();
        let entries = models
            .into_par_iter()
            .map(|model| {
                let as_model = Model::Morph(model.clone());
                let k = as_model.cost(alphabet)?;
                let own = k + case_cost_given_model(&as_model, &source, alphabet)?.bits;
                let reuse = own + 1;
                let fresh = inferred.opt_bits + 1 + k;
                Ok(if reuse <= fresh {
                    PoolEntry {
                        source_model: as_model,
                        source_bits: own,
                        transfer_bits: BitLength(1),
                        reused: true,
                        model,
                    }
                } else {
                    PoolEntry {
                        source_model: best_source.clone(),
                        source_bits: inferred.opt_bits,
                        transfer_bits: BitLength(1) + k,
                        reused: false,
                        model,
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SourcePool { source, entries })
    }

    /// The `top_k` best distinct solutions, best first.
    pub fn solve(&self, a: &str, b: &str, c: &str, top_k: usize) -> Result<Vec<Solution>> {
        if top_k == 0 {
            return Err(Error::Domain("top_k must be at least 1".into()));
        }
        let pool = self.pool(a, b)?;
        self.solve_with(&pool, c, top_k)
    }

    pub fn solve_with(&self, pool: &SourcePool, c: &str, top_k: usize) -> Result<Vec<Solution>> {
        self.alphabet().validate(c)?;
        let proposals: Vec<Vec<Solution>> = pool
            .entries
            .par_iter()
            .map(|entry| self.proposals(entry, c))
            .collect::<Result<_>>()?;

        // Cheapest proposal per y; ties go to the smaller (model, representation).
        let mut best: BTreeMap<String, Solution> = BTreeMap::new();
        for s in proposals.into_iter().flatten() {
            match best.get(&s.y) {
                Some(old)
                    if (old.total_bits, &old.model, &old.representation)
                        <= (s.total_bits, &s.model, &s.representation) => {}
                _ => {
                    best.insert(s.y.clone(), s);
                }
            }
        }
        if best.is_empty() {
            return Err(Error::EmptySolution(format!(
                "no model of {}:{} applies to {c:?}",
                pool.source.x, pool.source.y
            )));
        }
        let mut ranked: Vec<Solution> = best.into_values().collect();
        ranked.sort_by(|p, q| (p.total_bits, &p.y).cmp(&(q.total_bits, &q.y)));
        ranked.truncate(top_k);
        for (i, s) in ranked.iter_mut().enumerate() {
            s.rank = i + 1;
        }
        Ok(ranked)
    }

    fn proposals(&self, entry: &PoolEntry, c: &str) -> Result<Vec<Solution>> {
        let mut by_y: BTreeMap<String, (BitLength, Representation)> = BTreeMap::new();
        for (r, y) in entry.model.complete(c) {
            if self.alphabet().validate(&y).is_err() {
                continue;
            }
            let bits = BitLength(1) + r.cost(self.alphabet())?;
            match by_y.get(&y) {
                Some((b, _)) if *b <= bits => {}
                _ => {
                    by_y.insert(y, (bits, r));
                }
            }
        }
        Ok(by_y
            .into_iter()
            .map(|(y, (case_bits, representation))| Solution {
                y,
                model: Model::Morph(entry.model.clone()),
                representation,
                total_bits: entry.prefix_bits() + case_bits,
                source_model: entry.source_model.clone(),
                source_bits: entry.source_bits,
                transfer_bits: entry.transfer_bits,
                case_bits,
                reused: entry.reused,
                rank: 0,
            })
            .collect())
    }

    /// The cheapest transfer that produces exactly `(c, d)`, or
    /// [`BitLength::INFINITE`] when no pool model does.
    pub fn score_candidate(&self, a: &str, b: &str, c: &str, d: &str) -> Result<BitLength> {
        let pool = self.pool(a, b)?;
        self.score_with(&pool, c, d)
    }

    pub fn score_with(&self, pool: &SourcePool, c: &str, d: &str) -> Result<BitLength> {
        let target = Case::new(c, d);
        self.alphabet().validate(c)?;
        self.alphabet().validate(d)?;
        let best = pool
            .entries
            .par_iter()
            .map(|entry| {
                let reps = entry.model.invert(&target);
                let mut cheapest = BitLength::INFINITE;
                for r in reps {
                    let bits = entry.prefix_bits() + BitLength(1) + r.cost(self.alphabet())?;
                    cheapest = cheapest.min(bits);
                }
                Ok(cheapest)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap_or(BitLength::INFINITE);
        Ok(best)
    }
}

//! Candidate model generation.
//!
//! Every slot of a canonical model that describes a case is bound to a
//! substring of one of the two words (or to the empty word). Fixing a tuple of
//! such values, the patterns that produce a word are exactly its factorizations
//! into slot occurrences and maximal literal runs, so enumerating value tuples
//! and factorizations yields every describing model within bounds.

use std::collections::BTreeSet;

use crate::coding::{word_cost_unchecked, Alphabet, BitLength, Case};
use crate::error::{Error, Result};
use crate::model_space::SearchBounds;

use super::{MorphModel, Pattern, PatternToken};

/// Restrictions applied on top of [`SearchBounds`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CandidateFilter {
    /// Keep only models whose flagged model code plus representation code
    /// (`K(M) + K(case | M)`) fits in this many bits.
    pub max_total: Option<BitLength>,
    /// Bind every slot to a nonempty substring.
    pub nonempty_slots: bool,
}

/// Every canonical pattern model within `bounds` that describes `case`.
pub fn generate_candidates(
    case: &Case,
    bounds: &SearchBounds,
    alphabet: &Alphabet,
) -> Result<Vec<MorphModel>> {
    generate_candidates_with(case, bounds, alphabet, &CandidateFilter::default())
}

pub fn generate_candidates_with(
    case: &Case,
    bounds: &SearchBounds,
    alphabet: &Alphabet,
    filter: &CandidateFilter,
) -> Result<Vec<MorphModel>> {
    alphabet.validate(&case.x)?;
    alphabet.validate(&case.y)?;
    let x: Vec<char> = case.x.chars().collect();
    let y: Vec<char> = case.y.chars().collect();

    let mut values: BTreeSet<Vec<char>> = BTreeSet::new();
    for word in [&x, &y] {
        for start in 0..word.len() {
            for end in start + 1..=word.len() {
                values.insert(word[start..end].to_vec());
            }
        }
    }
    if !filter.nonempty_slots {
        values.insert(Vec::new());
    }
    let values: Vec<Vec<char>> = values.into_iter().collect();
    let value_costs: Vec<u64> = values
        .iter()
        .map(|v| (v.len() as u64 + 1) * alphabet.symbol_cost())
        .collect();

    let mut found: BTreeSet<MorphModel> = BTreeSet::new();
    let mut tuple = Vec::new();
    for n in 1..=bounds.max_slots {
        let mut indices = vec![0usize; n];
        loop {
            tuple.clear();
            tuple.extend(indices.iter().map(|&i| values[i].as_slice()));
            let rep_bits: u64 = indices.iter().map(|&i| value_costs[i]).sum();
            // model kind flag + unary(n) + case flag + representation
            let fixed = 1 + n as u64 + 1 + rep_bits;
            let budget = match filter.max_total {
                Some(max) if max.bits() < fixed => None,
                Some(max) => Some(max.bits() - fixed),
                None => Some(u64::MAX),
            };
            if let Some(budget) = budget {
                collect_models(&x, &y, &tuple, budget, bounds, alphabet, &mut found)?;
            }
            if !advance(&mut indices, values.len()) {
                break;
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Odometer increment; false once every tuple has been visited.
fn advance(indices: &mut [usize], base: usize) -> bool {
    for i in indices.iter_mut().rev() {
        *i += 1;
        if *i < base {
            return true;
        }
        *i = 0;
    }
    false
}

struct Factorization {
    tokens: Vec<PatternToken>,
    bits: u64,
    used: u32,
    literals: usize,
}

fn collect_models(
    x: &[char],
    y: &[char],
    values: &[&[char]],
    budget: u64,
    bounds: &SearchBounds,
    alphabet: &Alphabet,
    found: &mut BTreeSet<MorphModel>,
) -> Result<()> {
    let n = values.len();
    let rest_x = min_rest_costs(x, values, alphabet);
    let rest_y = min_rest_costs(y, values, alphabet);
    if rest_x[0].saturating_add(rest_y[0]) > budget {
        return Ok(());
    }
    let first = factorizations(x, values, budget - rest_y[0], &rest_x, bounds, alphabet);
    if first.is_empty() {
        return Ok(());
    }
    let second = factorizations(y, values, budget - rest_x[0], &rest_y, bounds, alphabet);
    let all_slots = (1u32 << n) - 1;
    let constant_ok = n == 1 && values[0].is_empty();
    for p in &first {
        for q in &second {
            if p.bits + q.bits > budget {
                continue;
            }
            let used = p.used | q.used;
            if used != all_slots && !(used == 0 && constant_ok) {
                continue;
            }
            if let Some(max) = bounds.max_model_literals {
                if p.literals + q.literals > max {
                    continue;
                }
            }
            found.insert(MorphModel {
                n,
                phi1: Pattern::from_canonical(p.tokens.clone()),
                phi2: Pattern::from_canonical(q.tokens.clone()),
            });
            if found.len() > bounds.max_candidates {
                return Err(Error::Resource {
                    limit: bounds.max_candidates,
                    found: found.len(),
                });
            }
        }
    }
    Ok(())
}

/// Lower bound on the cost of coding `word[pos..]` plus the END tag, ignoring
/// token limits and literal adjacency.
fn min_rest_costs(word: &[char], values: &[&[char]], alphabet: &Alphabet) -> Vec<u64> {
    let len = word.len();
    let mut rest = vec![u64::MAX; len + 1];
    rest[len] = 2;
    for pos in (0..len).rev() {
        let mut best = u64::MAX;
        for (k, value) in values.iter().enumerate() {
            if !value.is_empty() && word[pos..].starts_with(value) {
                let tail = rest[pos + value.len()];
                best = best.min(tail.saturating_add(2 + k as u64 + 1));
            }
        }
        for (offset, tail) in rest[pos + 1..].iter().enumerate() {
            let lit = 2 + (offset as u64 + 2) * alphabet.symbol_cost();
            best = best.min(tail.saturating_add(lit));
        }
        rest[pos] = best;
    }
    rest
}

fn factorizations(
    word: &[char],
    values: &[&[char]],
    budget: u64,
    rest: &[u64],
    bounds: &SearchBounds,
    alphabet: &Alphabet,
) -> Vec<Factorization> {
    let mut out = Vec::new();
    let mut walker = Walker {
        word,
        values,
        budget,
        rest,
        bounds,
        alphabet,
        tokens: Vec::new(),
        out: &mut out,
    };
    walker.step(0, false, 0, 0, 0, 0);
    out
}

struct Walker<'a> {
    word: &'a [char],
    values: &'a [&'a [char]],
    budget: u64,
    rest: &'a [u64],
    bounds: &'a SearchBounds,
    alphabet: &'a Alphabet,
    tokens: Vec<PatternToken>,
    out: &'a mut Vec<Factorization>,
}

impl Walker<'_> {
    fn step(
        &mut self,
        pos: usize,
        after_literal: bool,
        literals: usize,
        slot_tokens: usize,
        bits: u64,
        used: u32,
    ) {
        if bits.saturating_add(self.rest[pos]) > self.budget {
            return;
        }
        if pos == self.word.len() {
            self.out.push(Factorization {
                tokens: self.tokens.clone(),
                bits: bits + 2,
                used,
                literals,
            });
        }
        if slot_tokens < self.bounds.max_slot_tokens {
            for (k, value) in self.values.iter().enumerate() {
                if self.word[pos..].starts_with(value) {
                    self.tokens.push(PatternToken::Slot(k + 1));
                    self.step(
                        pos + value.len(),
                        false,
                        literals,
                        slot_tokens + 1,
                        bits + 2 + k as u64 + 1,
                        used | (1 << k),
                    );
                    self.tokens.pop();
                }
            }
        }
        if !after_literal && literals < self.bounds.max_literals {
            let longest = self
                .bounds
                .max_literal_len
                .map_or(self.word.len(), |max| (pos + max).min(self.word.len()));
            for end in pos + 1..=longest {
                let lit: String = self.word[pos..end].iter().collect();
                let lit_bits = 2 + word_cost_unchecked(&lit, self.alphabet).bits();
                self.tokens.push(PatternToken::Literal(lit));
                self.step(end, true, literals + 1, slot_tokens, bits + lit_bits, used);
                self.tokens.pop();
            }
        }
    }
}

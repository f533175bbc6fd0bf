//! Brute-force reference implementations.
//!
//! Nothing here calls the engine's search, inversion, inference or scoring
//! code. Only the codec (`Model::cost`, `word_cost`) and the model value types
//! are shared, so agreement with the engine is independent evidence.

use std::collections::BTreeSet;

use analogy_mdl::coding::{word_cost, Alphabet, Case};
use analogy_mdl::morphology::{Model, MorphModel, Pattern, PatternToken};
use analogy_mdl::synthetic::SyntheticDocument;
use analogy_mdl::Variant;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct OracleBounds {
    pub symbols: String,
    pub max_word_len: usize,
    pub max_slots: usize,
    pub max_literal_len: usize,
    /// Literal tokens across both patterns.
    pub max_literal_tokens: usize,
    /// Slot tokens per pattern.
    pub max_slot_tokens: usize,
    pub cap: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            symbols: "abc".into(),
            max_word_len: 4,
            max_slots: 2,
            max_literal_len: 2,
            max_literal_tokens: 2,
            max_slot_tokens: 2,
            cap: 200_000,
        }
    }
}

impl OracleBounds {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(&self.symbols).unwrap()
    }

    /// The engine bounds describing the same model set.
    pub fn search_bounds(&self) -> analogy_mdl::SearchBounds {
        analogy_mdl::SearchBounds {
            max_slots: self.max_slots,
            max_literals: self.max_literal_tokens,
            max_slot_tokens: self.max_slot_tokens,
            max_literal_len: Some(self.max_literal_len),
            max_model_literals: Some(self.max_literal_tokens),
            max_candidates: self.cap,
        }
    }
}

/// Every word over `symbols` with length in `1..=max_len`.
pub fn nonempty_words(symbols: &str, max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| symbols.chars().map(move |c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every word over `symbols` with length at most `max_len`, "" first.
pub fn all_words(symbols: &str, max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    out.extend(nonempty_words(symbols, max_len));
    out
}

/// Token sequences with no two adjacent literals, within the per-pattern
/// slot-token and literal-token limits.
fn patterns(
    n: usize,
    literals: &[String],
    max_slot_tokens: usize,
    max_literal_tokens: usize,
) -> Vec<Vec<PatternToken>> {
    fn grow(
        prefix: &mut Vec<PatternToken>,
        n: usize,
        literals: &[String],
        slots_left: usize,
        lits_left: usize,
        out: &mut Vec<Vec<PatternToken>>,
    ) {
        out.push(prefix.clone());
        if slots_left > 0 {
            for k in 1..=n {
                prefix.push(PatternToken::Slot(k));
                grow(prefix, n, literals, slots_left - 1, lits_left, out);
                prefix.pop();
            }
        }
        let after_literal = matches!(prefix.last(), Some(PatternToken::Literal(_)));
        if lits_left > 0 && !after_literal {
            for w in literals {
                prefix.push(PatternToken::Literal(w.clone()));
                grow(prefix, n, literals, slots_left, lits_left - 1, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(
        &mut Vec::new(),
        n,
        literals,
        max_slot_tokens,
        max_literal_tokens,
        &mut out,
    );
    out
}

fn literal_tokens(tokens: &[PatternToken]) -> usize {
    tokens
        .iter()
        .filter(|t| matches!(t, PatternToken::Literal(_)))
        .count()
}

/// Every canonical pattern model within the bounds, exactly once.
pub fn enumerate_all_models(b: &OracleBounds) -> Result<Vec<MorphModel>, String> {
    let literals = nonempty_words(&b.symbols, b.max_literal_len);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=b.max_slots {
        let pats = patterns(n, &literals, b.max_slot_tokens, b.max_literal_tokens);
        for p1 in &pats {
            for p2 in &pats {
                if literal_tokens(p1) + literal_tokens(p2) > b.max_literal_tokens {
                    continue;
                }
                let used: BTreeSet<usize> = p1
                    .iter()
                    .chain(p2.iter())
                    .filter_map(|t| match t {
                        PatternToken::Slot(k) => Some(*k),
                        PatternToken::Literal(_) => None,
                    })
                    .collect();
                let canonical = if used.is_empty() {
                    n == 1
                } else {
                    used.len() == n
                };
                if !canonical {
                    continue;
                }
                let m = MorphModel::new(
                    n,
                    Pattern::new(p1.clone()).unwrap(),
                    Pattern::new(p2.clone()).unwrap(),
                )
                .map_err(|e| format!("oracle produced a non-canonical model: {e}"))?;
                if !seen.insert(m.clone()) {
                    return Err(format!("duplicate model {m}"));
                }
                out.push(m);
                if out.len() > b.cap {
                    return Err(format!("more than {} models", b.cap));
                }
            }
        }
    }
    Ok(out)
}

fn substrings(word: &str) -> BTreeSet<String> {
    let chars: Vec<char> = word.chars().collect();
    let mut out = BTreeSet::new();
    out.insert(String::new());
    for i in 0..chars.len() {
        for j in i + 1..=chars.len() {
            out.insert(chars[i..j].iter().collect());
        }
    }
    out
}

/// Candidate slot values for a case: every substring of either word.
pub fn slot_values(c: &Case) -> Vec<String> {
    let mut values = substrings(&c.x);
    values.extend(substrings(&c.y));
    values.into_iter().collect()
}

/// Whether `tokens` under `r` spells `word`, without building the string.
fn spells(tokens: &[PatternToken], r: &[String], word: &str) -> bool {
    let mut rest = word;
    for t in tokens {
        let piece = match t {
            PatternToken::Literal(w) => w.as_str(),
            PatternToken::Slot(k) => r[k - 1].as_str(),
        };
        match rest.strip_prefix(piece) {
            Some(tail) => rest = tail,
            None => return false,
        }
    }
    rest.is_empty()
}

/// All representations of `c` under `m`, found by trying every assignment of
/// substrings of the two words to the slots. A slot occurring nowhere (the
/// constant model's) is bound to the empty word.
pub fn oracle_invert(m: &MorphModel, c: &Case) -> Vec<Vec<String>> {
    oracle_invert_among(m, c, &slot_values(c))
}

pub fn oracle_invert_among(m: &MorphModel, c: &Case, values: &[String]) -> Vec<Vec<String>> {
    let p1 = m.phi1().tokens();
    let p2 = m.phi2().tokens();
    let fits = |tokens: &[PatternToken], word: &str| {
        tokens.iter().all(|t| match t {
            PatternToken::Literal(w) => word.contains(w.as_str()),
            PatternToken::Slot(_) => true,
        })
    };
    if !fits(p1, &c.x) || !fits(p2, &c.y) {
        return Vec::new();
    }
    let used: BTreeSet<usize> = m.phi1().slots().chain(m.phi2().slots()).collect();

    struct Search<'a> {
        used: &'a BTreeSet<usize>,
        values: &'a [String],
        p1: &'a [PatternToken],
        p2: &'a [PatternToken],
        c: &'a Case,
        out: Vec<Vec<String>>,
    }
    impl Search<'_> {
        fn assign(&mut self, k: usize, r: &mut Vec<String>) {
            if k == r.len() {
                if spells(self.p1, r, &self.c.x) && spells(self.p2, r, &self.c.y) {
                    self.out.push(r.clone());
                }
                return;
            }
            if !self.used.contains(&(k + 1)) {
                r[k] = String::new();
                self.assign(k + 1, r);
                return;
            }
            for v in self.values {
                r[k].clone_from(v);
                self.assign(k + 1, r);
            }
        }
    }
    let mut search = Search {
        used: &used,
        values,
        p1,
        p2,
        c,
        out: Vec::new(),
    };
    search.assign(0, &mut vec![String::new(); m.n()]);
    let mut out = search.out;
    out.sort();
    out
}

/// The three description lengths of one finite space, by table or by scan.
pub trait OracleTables {
    type Model: Clone + PartialEq + std::fmt::Debug;
    type Case;

    fn models(&self) -> Vec<Self::Model>;
    fn k_model(&self, m: &Self::Model) -> u64;
    fn k_case(&self, m: &Self::Model, c: &Self::Case) -> u64;
    /// `K(c | M)` for every model, in `models()` order.
    fn k_case_all(&self, c: &Self::Case) -> Vec<u64> {
        self.models().iter().map(|m| self.k_case(m, c)).collect()
    }
    fn k_transfer(&self, t: &Self::Model, s: &Self::Model) -> u64;
    fn k_null(&self, c: &Self::Case) -> u64;
    fn contains(&self, m: &Self::Model) -> bool;
}

/// The morphology space within oracle bounds, plus the hard-code model.
pub struct OracleMorphology {
    pub alphabet: Alphabet,
    pub models: Vec<Model>,
}

impl OracleMorphology {
    pub fn new(b: &OracleBounds) -> Self {
        let mut models = vec![Model::HardCode];
        models.extend(
            enumerate_all_models(b)
                .unwrap()
                .into_iter()
                .map(Model::Morph),
        );
        OracleMorphology {
            alphabet: b.alphabet(),
            models,
        }
    }

    fn word(&self, w: &str) -> u64 {
        word_cost(w, &self.alphabet).unwrap().bits()
    }

    fn k_case_among(&self, m: &Model, c: &Case, values: &[String]) -> u64 {
        let reps = match m {
            Model::HardCode => Vec::new(),
            Model::Morph(m) => oracle_invert_among(m, c, values),
        };
        let best = reps
            .iter()
            .map(|r| r.iter().map(|v| self.word(v)).sum::<u64>())
            .min();
        1 + best.unwrap_or_else(|| self.k_null(c))
    }
}

impl OracleTables for OracleMorphology {
    type Model = Model;
    type Case = Case;

    fn models(&self) -> Vec<Model> {
        self.models.clone()
    }

    fn k_model(&self, m: &Model) -> u64 {
        m.cost(&self.alphabet).unwrap().bits()
    }

    fn k_case(&self, m: &Model, c: &Case) -> u64 {
        self.k_case_among(m, c, &slot_values(c))
    }

    /// The scan over ~10^5 models is split across threads; each model is
    /// still handled by the same sequential brute force.
    fn k_case_all(&self, c: &Case) -> Vec<u64> {
        let values = slot_values(c);
        self.models
            .par_iter()
            .map(|m| self.k_case_among(m, c, &values))
            .collect()
    }

    fn k_transfer(&self, t: &Model, s: &Model) -> u64 {
        if t == s {
            1
        } else {
            1 + self.k_model(t)
        }
    }

    fn k_null(&self, c: &Case) -> u64 {
        self.word(&c.x) + self.word(&c.y)
    }

    fn contains(&self, _m: &Model) -> bool {
        true
    }
}

/// Raw table lookups over a synthetic document.
pub struct OracleSynthetic<'a>(pub &'a SyntheticDocument);

impl OracleTables for OracleSynthetic<'_> {
    type Model = String;
    type Case = String;

    fn models(&self) -> Vec<String> {
        self.0.models.clone()
    }

    fn k_model(&self, m: &String) -> u64 {
        self.0.k_model[m]
    }

    fn k_case(&self, m: &String, c: &String) -> u64 {
        self.0.k_case_given[m][c]
    }

    fn k_transfer(&self, t: &String, s: &String) -> u64 {
        self.0.k_transfer[t][s]
    }

    fn k_null(&self, c: &String) -> u64 {
        self.0.k_null[c]
    }

    fn contains(&self, m: &String) -> bool {
        self.0.models.contains(m)
    }
}

/// `(M, K(M), K(case | M))` for every model of the space, in order.
fn scored<T: OracleTables>(t: &T, c: &T::Case) -> Vec<(T::Model, u64, u64)> {
    t.models()
        .into_iter()
        .zip(t.k_case_all(c))
        .map(|(m, kc)| {
            let k = t.k_model(&m);
            (m, k, kc)
        })
        .collect()
}

pub struct OracleInference<M> {
    pub opt: u64,
    /// Unordered.
    pub argmin: Vec<M>,
    /// `(model, K(M), K(case | M))` for every model.
    pub all: Vec<(M, u64, u64)>,
    pub null: u64,
}

pub fn oracle_inference<T: OracleTables>(t: &T, c: &T::Case) -> OracleInference<T::Model> {
    let all = scored(t, c);
    let opt = all.iter().map(|(_, k, kc)| k + kc).min().unwrap();
    let argmin = all
        .iter()
        .filter(|(_, k, kc)| k + kc == opt)
        .map(|(m, _, _)| m.clone())
        .collect();
    OracleInference {
        opt,
        argmin,
        all,
        null: t.k_null(c),
    }
}

/// `min_M K(M | ms) + K(c | M)` over the target space, plus `ms` itself when
/// it belongs to the space.
pub fn weak_rhs<T: OracleTables>(
    t: &T,
    target: &OracleInference<T::Model>,
    ms: &T::Model,
    c: &T::Case,
) -> u64 {
    let mut rhs = target
        .all
        .iter()
        .map(|(m, _, kc)| t.k_transfer(m, ms) + kc)
        .min()
        .unwrap();
    if t.contains(ms) && !target.all.iter().any(|(m, _, _)| m == ms) {
        rhs = rhs.min(t.k_transfer(ms, ms) + t.k_case(ms, c));
    }
    rhs
}

/// Weak reusability evaluated literally at one η, given the η-free right-hand minimum.
pub fn weakly_reusable(opt: u64, rhs: u64, eta: u64) -> bool {
    opt >= rhs + eta
}

/// Strong reusability evaluated literally at one η: every minimizer compresses by η.
pub fn strongly_reusable<T: OracleTables>(
    t: &T,
    target: &OracleInference<T::Model>,
    ms: &T::Model,
    eta: u64,
) -> bool {
    target
        .argmin
        .iter()
        .all(|m| t.k_model(m) >= t.k_transfer(m, ms) + eta)
}

/// Largest η in `1..=max_eta` at which the raw predicate holds; 0 if none.
pub fn oracle_rho<T: OracleTables>(
    t: &T,
    target: &OracleInference<T::Model>,
    ms: &T::Model,
    c: &T::Case,
    variant: Variant,
    max_eta: u64,
) -> u64 {
    let rhs = weak_rhs(t, target, ms, c);
    (1..=max_eta)
        .rev()
        .find(|&eta| match variant {
            Variant::Weak => weakly_reusable(target.opt, rhs, eta),
            Variant::Strong => strongly_reusable(t, target, ms, eta),
        })
        .unwrap_or(0)
}

/// Compatible models of the source case, ρ of each on the target, and the
/// posterior-weighted average computed as one exact fraction.
pub fn oracle_tau<T: OracleTables>(
    source: &OracleInference<T::Model>,
    t: &T,
    target: &OracleInference<T::Model>,
    ct: &T::Case,
    variant: Variant,
    max_eta: u64,
) -> (u64, BigRational, usize) {
    let compatible: Vec<(T::Model, u64)> = source
        .all
        .iter()
        .filter(|(_, k, kc)| k + kc < source.null)
        .map(|(m, k, kc)| (m.clone(), k + kc))
        .collect();
    if compatible.is_empty() {
        return (0, BigRational::from_integer(BigInt::from(0)), 0);
    }
    let rhos: Vec<u64> = compatible
        .iter()
        .map(|(m, _)| oracle_rho(t, target, m, ct, variant, max_eta))
        .collect();
    let tau_max = *rhos.iter().max().unwrap();
    // sum_i rho_i 2^-t_i / sum_i 2^-t_i, with every term scaled by 2^T.
    let top = compatible.iter().map(|(_, bits)| *bits).max().unwrap();
    let mut num = BigInt::from(0);
    let mut den = BigInt::from(0);
    for ((_, bits), rho) in compatible.iter().zip(&rhos) {
        let w = BigInt::from(1) << (top - bits) as usize;
        num += &w * BigInt::from(*rho);
        den += w;
    }
    (tau_max, BigRational::new(num, den), compatible.len())
}

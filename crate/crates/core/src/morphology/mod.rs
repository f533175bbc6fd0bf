//! Concatenation-pattern transformations of word pairs.
//!
//! A [`MorphModel`] is a pair of patterns `(phi1, phi2)` over `n` slots. Given
//! a representation `r = (r_1, ..., r_n)` the model produces the case
//! `(phi1(r), phi2(r))`, where each pattern concatenates literal words and slot
//! values. The model scores a case 1 when some representation produces it and
//! 0 otherwise, so inference reduces to finding representations and counting
//! bits.
//!
//! [`Model`] adds one hypothesis that is not a pattern pair: the model-free
//! description, which describes every case by hard-coding both words.

mod candidates;
mod space;
mod syntax;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coding::{word_cost, Alphabet, BitLength, BitReader, BitWriter, Case};
use crate::error::{Error, Result};

pub use candidates::{generate_candidates, generate_candidates_with, CandidateFilter};
pub use space::MorphologySpace;
pub use syntax::parse_model;

/// Two-bit token tags used in the pattern code.
const TAG_LITERAL: u64 = 0b00;
const TAG_SLOT: u64 = 0b01;
const TAG_END: u64 = 0b10;
const TAG_BITS: u64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PatternToken {
    Literal(String),
    /// 1-based slot index.
    Slot(usize),
}

/// A canonical sequence of tokens: literals are nonempty and never adjacent.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pattern {
    tokens: Vec<PatternToken>,
}

impl Pattern {
    /// Builds a pattern, rejecting tokens that are not in canonical form.
    pub fn new(tokens: Vec<PatternToken>) -> Result<Self> {
        let mut previous_literal = false;
        for token in &tokens {
            match token {
                PatternToken::Literal(word) => {
                    if word.is_empty() {
                        return Err(Error::CanonicalForm("empty literal".into()));
                    }
                    if previous_literal {
                        return Err(Error::CanonicalForm("adjacent literals".into()));
                    }
                    previous_literal = true;
                }
                PatternToken::Slot(0) => {
                    return Err(Error::CanonicalForm("slot indices start at 1".into()))
                }
                PatternToken::Slot(_) => previous_literal = false,
            }
        }
        Ok(Pattern { tokens })
    }

    /// Merges adjacent literals and drops empty ones.
    pub fn canonicalize(tokens: Vec<PatternToken>) -> Self {
        let mut out: Vec<PatternToken> = Vec::with_capacity(tokens.len());
        for token in tokens {
            match token {
                PatternToken::Literal(word) if word.is_empty() => {}
                PatternToken::Literal(word) => match out.last_mut() {
                    Some(PatternToken::Literal(prev)) => prev.push_str(&word),
                    _ => out.push(PatternToken::Literal(word)),
                },
                slot => out.push(slot),
            }
        }
        Pattern { tokens: out }
    }

    pub(crate) fn from_canonical(tokens: Vec<PatternToken>) -> Self {
        debug_assert!(Pattern::new(tokens.clone()).is_ok());
        Pattern { tokens }
    }

    pub fn tokens(&self) -> &[PatternToken] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn literal_count(&self) -> usize {
        self.tokens
            .iter()
            .filter(|t| matches!(t, PatternToken::Literal(_)))
            .count()
    }

    pub fn slot_token_count(&self) -> usize {
        self.tokens.len() - self.literal_count()
    }

    pub fn slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.tokens.iter().filter_map(|t| match t {
            PatternToken::Slot(k) => Some(*k),
            PatternToken::Literal(_) => None,
        })
    }

    pub fn literals(&self) -> impl Iterator<Item = &str> + '_ {
        self.tokens.iter().filter_map(|t| match t {
            PatternToken::Literal(w) => Some(w.as_str()),
            PatternToken::Slot(_) => None,
        })
    }

    fn max_slot(&self) -> usize {
        self.slots().max().unwrap_or(0)
    }

    /// Concatenates the pattern with slot values taken from `values`.
    pub fn instantiate(&self, values: &[String]) -> String {
        let mut out = String::new();
        for token in &self.tokens {
            match token {
                PatternToken::Literal(word) => out.push_str(word),
                PatternToken::Slot(k) => out.push_str(&values[k - 1]),
            }
        }
        out
    }

    /// Bit length of the pattern code, END tag included.
    pub fn cost(&self, alphabet: &Alphabet) -> Result<BitLength> {
        let mut bits = BitLength(TAG_BITS);
        for token in &self.tokens {
            bits += BitLength(TAG_BITS) + token_payload_cost(token, alphabet)?;
        }
        Ok(bits)
    }

    pub fn encode(&self, alphabet: &Alphabet, out: &mut BitWriter) -> Result<()> {
        for token in &self.tokens {
            match token {
                PatternToken::Literal(word) => {
                    out.write_fixed(TAG_LITERAL, TAG_BITS);
                    out.write_word(word, alphabet)?;
                }
                PatternToken::Slot(k) => {
                    out.write_fixed(TAG_SLOT, TAG_BITS);
                    out.write_unary(*k as u64)?;
                }
            }
        }
        out.write_fixed(TAG_END, TAG_BITS);
        Ok(())
    }

    fn decode(reader: &mut BitReader<'_>, alphabet: &Alphabet) -> Option<Pattern> {
        let mut tokens = Vec::new();
        loop {
            match reader.read_fixed(TAG_BITS)? {
                TAG_LITERAL => tokens.push(PatternToken::Literal(reader.read_word(alphabet)?)),
                TAG_SLOT => tokens.push(PatternToken::Slot(reader.read_unary()? as usize)),
                TAG_END => return Pattern::new(tokens).ok(),
                _ => return None,
            }
        }
    }
}

fn token_payload_cost(token: &PatternToken, alphabet: &Alphabet) -> Result<BitLength> {
    match token {
        PatternToken::Literal(word) => word_cost(word, alphabet),
        PatternToken::Slot(k) => Ok(BitLength(*k as u64)),
    }
}

/// A canonical pattern pair over `n` slots.
///
/// Every slot in `1..=n` occurs in at least one pattern. The single exception
/// is a constant model (no slot tokens at all), which has `n = 1` and binds its
/// unused slot to the empty word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorphModel {
    n: usize,
    phi1: Pattern,
    phi2: Pattern,
}

impl MorphModel {
    pub fn new(n: usize, phi1: Pattern, phi2: Pattern) -> Result<Self> {
        if n == 0 {
            return Err(Error::CanonicalForm("slot count must be at least 1".into()));
        }
        let mut used = vec![false; n];
        for k in phi1.slots().chain(phi2.slots()) {
            if k > n {
                return Err(Error::CanonicalForm(format!(
                    "slot ${k} exceeds slot count {n}"
                )));
            }
            used[k - 1] = true;
        }
        let constant = used.iter().all(|u| !u);
        if constant && n != 1 {
            return Err(Error::CanonicalForm(
                "a constant model has exactly one slot".into(),
            ));
        }
        if !constant {
            if let Some(k) = used.iter().position(|u| !u) {
                return Err(Error::CanonicalForm(format!(
                    "slot ${} is never used",
                    k + 1
                )));
            }
        }
        Ok(MorphModel { n, phi1, phi2 })
    }

    /// Builds a model whose slot count is the largest slot index used.
    pub fn from_patterns(phi1: Pattern, phi2: Pattern) -> Result<Self> {
        let n = phi1.max_slot().max(phi2.max_slot()).max(1);
        MorphModel::new(n, phi1, phi2)
    }

    /// `phi(r) = (r, r)`.
    pub fn identity() -> Self {
        let slot = Pattern::from_canonical(vec![PatternToken::Slot(1)]);
        MorphModel {
            n: 1,
            phi1: slot.clone(),
            phi2: slot,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi1(&self) -> &Pattern {
        &self.phi1
    }

    pub fn phi2(&self) -> &Pattern {
        &self.phi2
    }

    pub fn is_constant(&self) -> bool {
        self.phi1.slots().chain(self.phi2.slots()).next().is_none()
    }

    /// True when every slot of `phi2` also occurs in `phi1`, so that matching
    /// `phi1` alone determines the second word.
    pub fn is_predictive(&self) -> bool {
        let bound: BTreeSet<usize> = self.phi1.slots().collect();
        self.phi2.slots().all(|k| bound.contains(&k))
    }

    pub fn literal_count(&self) -> usize {
        self.phi1.literal_count() + self.phi2.literal_count()
    }

    pub fn apply(&self, r: &Representation) -> Result<Case> {
        if r.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                got: r.len(),
            });
        }
        Ok(Case::new(
            self.phi1.instantiate(r.values()),
            self.phi2.instantiate(r.values()),
        ))
    }

    /// Every representation `r` with `apply(r) == case`, in ascending order.
    pub fn invert(&self, case: &Case) -> Vec<Representation> {
        let x: Vec<char> = case.x.chars().collect();
        let y: Vec<char> = case.y.chars().collect();
        let mut found = BTreeSet::new();
        let mut bindings: Vec<Option<Vec<char>>> = vec![None; self.n];
        let mut matcher = Matcher {
            patterns: [self.phi1.tokens(), self.phi2.tokens()],
            words: [&x, &y],
            found: &mut found,
        };
        matcher.run(0, 0, 0, &mut bindings);
        found.into_iter().collect()
    }

    /// Representations of `x` alone under `phi1`, each paired with `phi2(r)`.
    /// Only meaningful for predictive models.
    pub fn complete(&self, x: &str) -> Vec<(Representation, String)> {
        let chars: Vec<char> = x.chars().collect();
        let mut found = BTreeSet::new();
        let mut bindings: Vec<Option<Vec<char>>> = vec![None; self.n];
        let empty: [PatternToken; 0] = [];
        let mut matcher = Matcher {
            patterns: [self.phi1.tokens(), &empty],
            words: [&chars, &[]],
            found: &mut found,
        };
        matcher.run(0, 0, 0, &mut bindings);
        found
            .into_iter()
            .map(|r| {
                let y = self.phi2.instantiate(r.values());
                (r, y)
            })
            .collect()
    }

    pub fn cost(&self, alphabet: &Alphabet) -> Result<BitLength> {
        Ok(BitLength(self.n as u64) + self.phi1.cost(alphabet)? + self.phi2.cost(alphabet)?)
    }

    pub fn encode(&self, alphabet: &Alphabet, out: &mut BitWriter) -> Result<()> {
        out.write_unary(self.n as u64)?;
        self.phi1.encode(alphabet, out)?;
        self.phi2.encode(alphabet, out)
    }
}

/// Joint backtracking match of both patterns against both words.
struct Matcher<'a> {
    patterns: [&'a [PatternToken]; 2],
    words: [&'a [char]; 2],
    found: &'a mut BTreeSet<Representation>,
}

impl Matcher<'_> {
    fn run(
        &mut self,
        side: usize,
        token: usize,
        pos: usize,
        bindings: &mut Vec<Option<Vec<char>>>,
    ) {
        if side == 2 {
            let values = bindings
                .iter()
                .map(|b| b.as_ref().map(|v| v.iter().collect()).unwrap_or_default())
                .collect();
            self.found.insert(Representation(values));
            return;
        }
        let word = self.words[side];
        let tokens = self.patterns[side];
        if token == tokens.len() {
            if pos == word.len() {
                self.run(side + 1, 0, 0, bindings);
            }
            return;
        }
        match &tokens[token] {
            PatternToken::Literal(lit) => {
                let mut end = pos;
                for ch in lit.chars() {
                    if word.get(end) != Some(&ch) {
                        return;
                    }
                    end += 1;
                }
                self.run(side, token + 1, end, bindings);
            }
            PatternToken::Slot(k) => {
                let slot = k - 1;
                if let Some(value) = &bindings[slot] {
                    if word[pos..].starts_with(value) {
                        let end = pos + value.len();
                        self.run(side, token + 1, end, bindings);
                    }
                } else {
                    for end in pos..=word.len() {
                        bindings[slot] = Some(word[pos..end].to_vec());
                        self.run(side, token + 1, end, bindings);
                    }
                    bindings[slot] = None;
                }
            }
        }
    }
}

/// Slot values `(r_1, ..., r_n)`. Ordered lexicographically by the value tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Representation(pub Vec<String>);

impl Representation {
    pub fn new<S: Into<String>>(values: impl IntoIterator<Item = S>) -> Self {
        Representation(values.into_iter().map(Into::into).collect())
    }

    pub fn values(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn cost(&self, alphabet: &Alphabet) -> Result<BitLength> {
        self.0.iter().map(|v| word_cost(v, alphabet)).sum()
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.join(", "))
    }
}

/// A hypothesis of the morphology model space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Model {
    /// Describes every case by hard-coding both words. Its code is one bit.
    HardCode,
    Morph(MorphModel),
}

impl Model {
    pub fn as_morph(&self) -> Option<&MorphModel> {
        match self {
            Model::HardCode => None,
            Model::Morph(m) => Some(m),
        }
    }

    /// Bit length of the model code: a one-bit kind flag, then for pattern
    /// models the unary slot count and both pattern codes.
    pub fn cost(&self, alphabet: &Alphabet) -> Result<BitLength> {
        match self {
            Model::HardCode => Ok(BitLength(1)),
            Model::Morph(m) => Ok(BitLength(1) + m.cost(alphabet)?),
        }
    }

    pub fn encode(&self, alphabet: &Alphabet, out: &mut BitWriter) -> Result<()> {
        match self {
            Model::HardCode => {
                out.push(false);
                Ok(())
            }
            Model::Morph(m) => {
                out.push(true);
                m.encode(alphabet, out)
            }
        }
    }

    pub fn decode(reader: &mut BitReader<'_>, alphabet: &Alphabet) -> Option<Model> {
        if !reader.read_bit()? {
            return Some(Model::HardCode);
        }
        let n = reader.read_unary()? as usize;
        let phi1 = Pattern::decode(reader, alphabet)?;
        let phi2 = Pattern::decode(reader, alphabet)?;
        MorphModel::new(n, phi1, phi2).ok().map(Model::Morph)
    }

    /// Per-part bit accounting, in emission order.
    pub fn cost_breakdown(&self, alphabet: &Alphabet) -> Result<Vec<(String, BitLength)>> {
        let mut parts = vec![("kind flag".to_string(), BitLength(1))];
        if let Model::Morph(m) = self {
            parts.push((format!("slot count n={}", m.n), BitLength(m.n as u64)));
            for (name, pattern) in [("phi1", &m.phi1), ("phi2", &m.phi2)] {
                for token in pattern.tokens() {
                    let label = match token {
                        PatternToken::Literal(w) => format!("{name} literal {w:?}"),
                        PatternToken::Slot(k) => format!("{name} slot ${k}"),
                    };
                    parts.push((
                        label,
                        BitLength(TAG_BITS) + token_payload_cost(token, alphabet)?,
                    ));
                }
                parts.push((format!("{name} end"), BitLength(TAG_BITS)));
            }
        }
        Ok(parts)
    }
}

impl From<MorphModel> for Model {
    fn from(m: MorphModel) -> Self {
        Model::Morph(m)
    }
}

/// `K(case | model)` together with the representation that achieves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseCost {
    pub bits: BitLength,
    /// `None` when the case is hard-coded.
    pub witness: Option<Representation>,
}

/// One flag bit, then either the cheapest representation (ties broken by the
/// value tuple) or both words hard-coded.
pub fn case_cost_given_model(model: &Model, case: &Case, alphabet: &Alphabet) -> Result<CaseCost> {
    alphabet.validate(&case.x)?;
    alphabet.validate(&case.y)?;
    let best = match model {
        Model::HardCode => None,
        Model::Morph(m) => cheapest_representation(m, case, alphabet)?,
    };
    Ok(match best {
        Some((bits, r)) => CaseCost {
            bits: BitLength(1) + bits,
            witness: Some(r),
        },
        None => CaseCost {
            bits: BitLength(1) + crate::coding::null_case_cost(case, alphabet)?,
            witness: None,
        },
    })
}

fn cheapest_representation(
    m: &MorphModel,
    case: &Case,
    alphabet: &Alphabet,
) -> Result<Option<(BitLength, Representation)>> {
    let mut best: Option<(BitLength, Representation)> = None;
    // `invert` yields representations in ascending order, so keeping the first
    // strict improvement breaks ties lexicographically.
    for r in m.invert(case) {
        let bits = r.cost(alphabet)?;
        if best.as_ref().is_none_or(|(b, _)| bits < *b) {
            best = Some((bits, r));
        }
    }
    Ok(best)
}

pub fn encode_case_given_model(
    model: &Model,
    case: &Case,
    alphabet: &Alphabet,
    out: &mut BitWriter,
) -> Result<CaseCost> {
    let cost = case_cost_given_model(model, case, alphabet)?;
    match &cost.witness {
        Some(r) => {
            out.push(true);
            for value in r.values() {
                out.write_word(value, alphabet)?;
            }
        }
        None => {
            out.push(false);
            out.write_word(&case.x, alphabet)?;
            out.write_word(&case.y, alphabet)?;
        }
    }
    Ok(cost)
}

/// `K(target | source)`: one bit when the target reuses the source model
/// unchanged, otherwise one bit followed by the full target model code.
pub fn transfer_cost(target: &Model, source: &Model, alphabet: &Alphabet) -> Result<BitLength> {
    if target == source {
        Ok(BitLength(1))
    } else {
        Ok(BitLength(1) + target.cost(alphabet)?)
    }
}

pub fn encode_transfer(
    target: &Model,
    source: &Model,
    alphabet: &Alphabet,
    out: &mut BitWriter,
) -> Result<()> {
    if target == source {
        out.push(false);
        Ok(())
    } else {
        out.push(true);
        target.encode(alphabet, out)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::HardCode => f.write_str(syntax::HARDCODE_KEYWORD),
            Model::Morph(m) => m.fmt(f),
        }
    }
}

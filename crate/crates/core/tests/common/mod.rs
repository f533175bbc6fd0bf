#![allow(dead_code)]

pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};

use analogy_mdl::morphology::{Pattern, PatternToken};
use analogy_mdl::synthetic::SyntheticDocument;
use analogy_mdl::{Case, MorphModel, SearchBounds};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two minimizers of cost 8 on "case"; the source "MS" compresses M1 to
/// nothing and leaves M2 as expensive as before.
pub fn hand_built_table() -> SyntheticDocument {
    serde_json::from_str(
        r#"{
            "models": ["M1", "M2"],
            "k_model": {"M1": 10, "M2": 5},
            "k_case_given": {"M1": {"case": 3}, "M2": {"case": 3}},
            "k_transfer": {"M1": {"MS": 0}, "M2": {"MS": 5}},
            "k_null": {"case": 20}
        }"#,
    )
    .unwrap()
}

/// A random target space with one case "ct" and a random source space with
/// one case "cs".
#[derive(Debug, Clone)]
pub struct RandomTables {
    pub target: SyntheticDocument,
    pub source: SyntheticDocument,
}

/// Target models are `T0..`, source models `S0..`, and half the time the
/// source space also holds `T0`, which makes the source a target model.
/// Transfer lengths never exceed `K(M) + 1`, as any code for `M | source` can
/// fall back on coding `M` outright. Small ranges make argmin ties common.
pub fn random_tables(rng: &mut impl Rng) -> RandomTables {
    let n_target = rng.gen_range(1..=5);
    let n_source = rng.gen_range(1..=4);
    let models: Vec<String> = (0..n_target).map(|i| format!("T{i}")).collect();
    let mut sources: Vec<String> = (0..n_source).map(|i| format!("S{i}")).collect();
    if rng.gen_bool(0.5) {
        sources.push("T0".into());
    }
    let columns: BTreeSet<&String> = sources.iter().chain(models.iter()).collect();

    let mut target = SyntheticDocument {
        models: models.clone(),
        k_null: BTreeMap::from([("ct".to_string(), rng.gen_range(5..=25u64))]),
        ..SyntheticDocument::default()
    };
    for m in &models {
        let k = rng.gen_range(0..=12u64);
        target.k_model.insert(m.clone(), k);
        target.k_case_given.insert(
            m.clone(),
            BTreeMap::from([("ct".to_string(), rng.gen_range(0..=12u64))]),
        );
        let row = columns
            .iter()
            .map(|s| {
                let t = if *s == m { 1 } else { rng.gen_range(0..=k + 1) };
                ((*s).clone(), t)
            })
            .collect();
        target.k_transfer.insert(m.clone(), row);
    }

    let mut source = SyntheticDocument {
        models: sources.clone(),
        k_null: BTreeMap::from([("cs".to_string(), rng.gen_range(5..=30u64))]),
        ..SyntheticDocument::default()
    };
    for s in &sources {
        source.k_model.insert(s.clone(), rng.gen_range(0..=12u64));
        source.k_case_given.insert(
            s.clone(),
            BTreeMap::from([("cs".to_string(), rng.gen_range(0..=12u64))]),
        );
    }
    RandomTables { target, source }
}

/// Distinct cases, both words of length at most `max_len`, in a fixed order
/// determined by `seed`.
pub fn sample_cases(symbols: &str, max_len: usize, count: usize, seed: u64) -> Vec<Case> {
    let words = oracle::all_words(symbols, max_len);
    let mut all: Vec<Case> = words
        .iter()
        .flat_map(|x| words.iter().map(move |y| Case::new(x.as_str(), y.as_str())))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

/// A random word over `symbols` with length in `lengths`.
pub fn random_word<R: Rng + ?Sized>(
    rng: &mut R,
    symbols: &[char],
    lengths: std::ops::RangeInclusive<usize>,
) -> String {
    let len = rng.gen_range(lengths);
    (0..len).map(|_| *symbols.choose(rng).unwrap()).collect()
}

fn random_pattern(
    rng: &mut impl Rng,
    n: usize,
    symbols: &[char],
    bounds: &SearchBounds,
) -> Pattern {
    let max_len = bounds.max_literal_len.unwrap_or(4);
    let slots = rng.gen_range(0..=bounds.max_slot_tokens);
    let literals = rng.gen_range(0..=bounds.max_literals);
    let mut tokens: Vec<PatternToken> = Vec::new();
    for _ in 0..slots {
        tokens.push(PatternToken::Slot(rng.gen_range(1..=n)));
    }
    for _ in 0..literals {
        tokens.push(PatternToken::Literal(random_word(
            rng,
            symbols,
            1..=max_len,
        )));
    }
    tokens.shuffle(rng);
    Pattern::canonicalize(tokens)
}

/// A random canonical pattern model within `bounds`, literals capped at four
/// letters when the bounds leave their length open.
pub fn random_model(rng: &mut impl Rng, symbols: &[char], bounds: &SearchBounds) -> MorphModel {
    loop {
        let n = rng.gen_range(1..=bounds.max_slots);
        let phi1 = random_pattern(rng, n, symbols, bounds);
        let phi2 = random_pattern(rng, n, symbols, bounds);
        let n = if phi1.slots().chain(phi2.slots()).next().is_none() {
            1
        } else {
            n
        };
        if let Ok(m) = MorphModel::new(n, phi1, phi2) {
            if bounds.admits(&m) {
                return m;
            }
        }
    }
}

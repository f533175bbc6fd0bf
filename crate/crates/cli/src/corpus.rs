//! TSV analogy corpora: `a<TAB>b<TAB>c[<TAB>d]` per line, `#` starts a comment.

use analogy_mdl::inference::optimal_models;
use analogy_mdl::transferability::transfer_report_given;
use analogy_mdl::{Alphabet, BitLength, Case, Error};
use log::warn;
use rayon::prelude::*;

use crate::args::RunConfig;
use crate::report::{EvalSummary, RecordRow, SkippedRow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub line: usize,
    pub a: String,
    pub b: String,
    pub c: String,
    pub gold: Option<String>,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub records: Vec<CorpusRecord>,
    pub skipped: Vec<(usize, String)>,
}

/// Blank and comment-only lines are ignored; anything else that is not three
/// or four alphabet words is skipped with a reason.
pub fn parse_corpus(text: &str, alphabet: &Alphabet) -> Corpus {
    let mut corpus = Corpus::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim_end_matches('\r');
        if content.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split('\t').map(str::trim).collect();
        if !(3..=4).contains(&fields.len()) {
            corpus.skipped.push((
                line,
                format!(
                    "expected 3 or 4 tab-separated words, found {}",
                    fields.len()
                ),
            ));
            continue;
        }
        if let Some(err) = fields.iter().find_map(|w| alphabet.validate(w).err()) {
            corpus.skipped.push((line, err.to_string()));
            continue;
        }
        corpus.records.push(CorpusRecord {
            line,
            a: fields[0].to_string(),
            b: fields[1].to_string(),
            c: fields[2].to_string(),
            gold: fields.get(3).map(|s| s.to_string()),
        });
    }
    for (line, reason) in &corpus.skipped {
        warn!("skipping corpus line {line}: {reason}");
    }
    corpus
}

/// Solves every record in parallel; rows come back in input order.
pub fn evaluate(
    corpus: &Corpus,
    config: &RunConfig,
) -> (EvalSummary, Vec<RecordRow>, Vec<SkippedRow>) {
    let solver = analogy_mdl::Solver::new(config.alphabet.clone(), config.bounds.clone());
    let rows: Vec<Result<RecordRow, SkippedRow>> = corpus
        .records
        .par_iter()
        .map(|rec| evaluate_record(&solver, rec, config))
        .collect();

    let mut skipped: Vec<SkippedRow> = corpus
        .skipped
        .iter()
        .map(|(line, reason)| SkippedRow {
            line: *line,
            reason: reason.clone(),
        })
        .collect();
    let mut records = Vec::new();
    for row in rows {
        match row {
            Ok(row) => records.push(row),
            Err(skip) => {
                warn!("skipping corpus line {}: {}", skip.line, skip.reason);
                skipped.push(skip);
            }
        }
    }
    skipped.sort_by_key(|s| s.line);

    let gold: Vec<&RecordRow> = records.iter().filter(|r| r.gold.is_some()).collect();
    let mean = |xs: Vec<f64>| (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);
    let rate = |f: fn(&RecordRow) -> bool| {
        mean(gold.iter().map(|r| if f(r) { 1.0 } else { 0.0 }).collect())
    };
    let summary = EvalSummary {
        records: records.len() + skipped.len(),
        scored: records.len(),
        skipped: skipped.len(),
        with_gold: gold.len(),
        accuracy_at_1: rate(|r| r.correct_at_1 == Some(true)),
        accuracy_at_k: rate(|r| r.correct_at_k == Some(true)),
        mean_tau_max: mean(records.iter().map(|r| r.tau_max.bits() as f64).collect()),
        mean_tau_avg: mean(records.iter().map(|r| r.tau_avg).collect()),
    };
    (summary, records, skipped)
}

/// A record that cannot be solved for lack of a fitting model is scored as a
/// miss; any other failure skips it.
fn evaluate_record(
    solver: &analogy_mdl::Solver,
    rec: &CorpusRecord,
    config: &RunConfig,
) -> Result<RecordRow, SkippedRow> {
    let skip = |e: Error| SkippedRow {
        line: rec.line,
        reason: e.to_string(),
    };
    let mut row = RecordRow {
        line: rec.line,
        a: rec.a.clone(),
        b: rec.b.clone(),
        c: rec.c.clone(),
        gold: rec.gold.clone(),
        predictions: Vec::new(),
        top_bits: None,
        correct_at_1: None,
        correct_at_k: None,
        tau_max: BitLength::ZERO,
        tau_avg: 0.0,
        error: None,
    };
    match solver.solve(&rec.a, &rec.b, &rec.c, config.top_k) {
        Ok(solutions) => {
            row.top_bits = solutions.first().map(|s| s.total_bits);
            row.predictions = solutions.into_iter().map(|s| s.y).collect();
        }
        Err(e @ Error::EmptySolution(_)) => row.error = Some(e.to_string()),
        Err(e) => return Err(skip(e)),
    }
    if let Some(gold) = &rec.gold {
        row.correct_at_1 = Some(row.predictions.first() == Some(gold));
        row.correct_at_k = Some(row.predictions.contains(gold));
    }
    // Transferability toward the gold solution, or the predicted one.
    let Some(d) = rec.gold.as_ref().or(row.predictions.first()) else {
        return Ok(row);
    };
    let space = solver.space();
    let source_case = Case::new(rec.a.as_str(), rec.b.as_str());
    let target_case = Case::new(rec.c.as_str(), d.as_str());
    let scored = optimal_models(space, &source_case, &config.bounds).and_then(|source| {
        let target = optimal_models(space, &target_case, &config.bounds)?;
        transfer_report_given(space, &source, &target_case, &target, config.variant)
    });
    let report = scored.map_err(skip)?;
    row.tau_max = report.tau_max;
    row.tau_avg = report.tau_avg;
    Ok(row)
}

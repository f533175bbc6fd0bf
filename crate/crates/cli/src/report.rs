//! Report documents. Every JSON report carries `"schema": 1` and prints
//! models in the textual model syntax.

use analogy_mdl::inference::MdlResult;
use analogy_mdl::reusability::ReusabilityReport;
use analogy_mdl::transferability::TransferReport;
use analogy_mdl::{BitLength, Model, Solution, Variant};
use serde::Serialize;

use crate::args::RunConfig;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub alphabet: String,
    pub max_slots: usize,
    pub max_literals: usize,
    pub variant: Variant,
    pub top_k: usize,
    pub seed: u64,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        ConfigEcho {
            alphabet: c.alphabet.as_string(),
            max_slots: c.bounds.max_slots,
            max_literals: c.bounds.max_literals,
            variant: c.variant,
            top_k: c.top_k,
            seed: c.seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolutionRow {
    pub rank: usize,
    pub y: String,
    pub total_bits: BitLength,
    pub source_bits: BitLength,
    pub transfer_bits: BitLength,
    pub case_bits: BitLength,
    pub reused: bool,
    pub model: String,
    pub source_model: String,
    pub representation: Vec<String>,
}

impl From<&Solution> for SolutionRow {
    fn from(s: &Solution) -> Self {
        SolutionRow {
            rank: s.rank,
            y: s.y.clone(),
            total_bits: s.total_bits,
            source_bits: s.source_bits,
            transfer_bits: s.transfer_bits,
            case_bits: s.case_bits,
            reused: s.reused,
            model: s.model.to_string(),
            source_model: s.source_model.to_string(),
            representation: s.representation.values().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub schema: u32,
    pub command: &'static str,
    pub config: ConfigEcho,
    pub equation: [String; 3],
    pub solutions: Vec<SolutionRow>,
}

#[derive(Debug, Serialize)]
pub struct WitnessRow {
    pub model: String,
    pub model_bits: BitLength,
    pub transfer_bits: BitLength,
}

#[derive(Debug, Serialize)]
pub struct ReusabilityRow {
    pub rho_weak: BitLength,
    pub rho_strong: BitLength,
    pub weak_lhs: BitLength,
    pub weak_rhs_min: BitLength,
    pub weak_rhs_model: String,
    pub strong_witnesses: Vec<WitnessRow>,
}

impl From<&ReusabilityReport<Model>> for ReusabilityRow {
    fn from(r: &ReusabilityReport<Model>) -> Self {
        ReusabilityRow {
            rho_weak: r.rho_weak,
            rho_strong: r.rho_strong,
            weak_lhs: r.weak_lhs,
            weak_rhs_min: r.weak_rhs_min,
            weak_rhs_model: r.weak_rhs_model.to_string(),
            strong_witnesses: r
                .strong_witnesses
                .iter()
                .map(|w| WitnessRow {
                    model: w.model.to_string(),
                    model_bits: w.model_bits,
                    transfer_bits: w.transfer_bits,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TargetRow {
    pub case: String,
    pub opt_bits: BitLength,
    pub null_bits: BitLength,
    pub argmin_models: Vec<String>,
}

impl TargetRow {
    pub fn new(case: String, r: &MdlResult<Model>) -> Self {
        TargetRow {
            case,
            opt_bits: r.opt_bits,
            null_bits: r.null_bits,
            argmin_models: r.argmin_models.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PerModelRow {
    pub model: String,
    pub source_bits: BitLength,
    pub weight: f64,
    pub weight_exact: String,
    pub rho: BitLength,
    pub rho_weak: BitLength,
    pub rho_strong: BitLength,
}

#[derive(Debug, Serialize)]
pub struct TransferRow {
    pub variant: Variant,
    pub tau_max: BitLength,
    pub tau_avg: f64,
    pub tau_avg_exact: String,
    pub rho_variance: f64,
    pub compatible_count: usize,
    pub per_model: Vec<PerModelRow>,
}

impl From<&TransferReport<Model>> for TransferRow {
    fn from(r: &TransferReport<Model>) -> Self {
        TransferRow {
            variant: r.variant,
            tau_max: r.tau_max,
            tau_avg: r.tau_avg,
            tau_avg_exact: r.tau_avg_exact.to_string(),
            rho_variance: r.rho_variance,
            compatible_count: r.compatible_count,
            per_model: r
                .per_model
                .iter()
                .map(|m| PerModelRow {
                    model: m.model.to_string(),
                    source_bits: m.source_bits,
                    weight: m.weight_f64,
                    weight_exact: m.weight.to_string(),
                    rho: m.rho,
                    rho_weak: m.reusability.rho_weak,
                    rho_strong: m.reusability.rho_strong,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ScoreReport {
    pub schema: u32,
    pub command: &'static str,
    pub config: ConfigEcho,
    pub target: TargetRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelScoreRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceScoreRow>,
}

#[derive(Debug, Serialize)]
pub struct ModelScoreRow {
    pub model: String,
    pub model_bits: BitLength,
    pub reusability: ReusabilityRow,
}

#[derive(Debug, Serialize)]
pub struct SourceScoreRow {
    pub case: String,
    pub opt_bits: BitLength,
    pub null_bits: BitLength,
    pub transfer: TransferRow,
}

#[derive(Debug, Serialize)]
pub struct InspectReport {
    pub schema: u32,
    pub command: &'static str,
    pub model: String,
    pub cost: BitLength,
    pub bits: String,
    pub breakdown: Vec<PartRow>,
}

#[derive(Debug, Serialize)]
pub struct PartRow {
    pub part: String,
    pub bits: BitLength,
}

#[derive(Debug, Serialize)]
pub struct RecordRow {
    pub line: usize,
    pub a: String,
    pub b: String,
    pub c: String,
    pub gold: Option<String>,
    pub predictions: Vec<String>,
    pub top_bits: Option<BitLength>,
    pub correct_at_1: Option<bool>,
    pub correct_at_k: Option<bool>,
    pub tau_max: BitLength,
    pub tau_avg: f64,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SkippedRow {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct EvalSummary {
    pub records: usize,
    pub scored: usize,
    pub skipped: usize,
    pub with_gold: usize,
    pub accuracy_at_1: Option<f64>,
    pub accuracy_at_k: Option<f64>,
    pub mean_tau_max: Option<f64>,
    pub mean_tau_avg: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub schema: u32,
    pub command: &'static str,
    pub config: ConfigEcho,
    pub corpus: String,
    pub summary: EvalSummary,
    pub records: Vec<RecordRow>,
    pub skipped: Vec<SkippedRow>,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

pub fn solve_tsv(r: &SolveReport) -> String {
    let mut out =
        String::from("rank\ty\ttotal_bits\tsource_bits\ttransfer_bits\tcase_bits\tmodel\n");
    for s in &r.solutions {
        out += &format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            s.rank, s.y, s.total_bits, s.source_bits, s.transfer_bits, s.case_bits, s.model
        );
    }
    out
}

pub fn score_tsv(r: &ScoreReport) -> String {
    let mut out = format!(
        "target\t{}\ntarget_opt_bits\t{}\ntarget_null_bits\t{}\n",
        r.target.case, r.target.opt_bits, r.target.null_bits
    );
    if let Some(m) = &r.model {
        out += &format!(
            "model\t{}\nmodel_bits\t{}\nrho_weak\t{}\nrho_strong\t{}\nweak_lhs\t{}\nweak_rhs_min\t{}\n",
            m.model,
            m.model_bits,
            m.reusability.rho_weak,
            m.reusability.rho_strong,
            m.reusability.weak_lhs,
            m.reusability.weak_rhs_min
        );
    }
    if let Some(s) = &r.source {
        out += &format!(
            "source\t{}\nvariant\t{}\ntau_max\t{}\ntau_avg\t{}\nrho_variance\t{}\ncompatible_count\t{}\n",
            s.case,
            s.transfer.variant,
            s.transfer.tau_max,
            s.transfer.tau_avg,
            s.transfer.rho_variance,
            s.transfer.compatible_count
        );
    }
    out
}

pub fn inspect_tsv(r: &InspectReport) -> String {
    let mut out = format!("model\t{}\ncost\t{}\nbits\t{}\n", r.model, r.cost, r.bits);
    for p in &r.breakdown {
        out += &format!("{}\t{}\n", p.part, p.bits);
    }
    out
}

pub fn eval_tsv(r: &EvalReport) -> String {
    let mut out =
        String::from("line\ta\tb\tc\tgold\ttop1\ttop_bits\tcorrect_at_1\ttau_max\ttau_avg\n");
    for rec in &r.records {
        out += &format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            rec.line,
            rec.a,
            rec.b,
            rec.c,
            opt(&rec.gold),
            opt(&rec.predictions.first()),
            opt(&rec.top_bits),
            opt(&rec.correct_at_1),
            rec.tau_max,
            rec.tau_avg
        );
    }
    let s = &r.summary;
    out += &format!(
        "# records\t{}\n# scored\t{}\n# skipped\t{}\n# with_gold\t{}\n# accuracy_at_1\t{}\n# accuracy_at_k\t{}\n# mean_tau_max\t{}\n# mean_tau_avg\t{}\n",
        s.records,
        s.scored,
        s.skipped,
        s.with_gold,
        opt(&s.accuracy_at_1),
        opt(&s.accuracy_at_k),
        opt(&s.mean_tau_max),
        opt(&s.mean_tau_avg)
    );
    out
}

use std::path::PathBuf;

use analogy_mdl::{Alphabet, Case, SearchBounds, Variant};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "analogy-mdl",
    version,
    about = "Measure transferability of analogy cases in bits and solve A:B::C:?"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve A : B :: C : ? and print ranked solutions.
    Solve { a: String, b: String, c: String },

    /// Score a source model or source case against a target case.
    Score(ScoreArgs),

    /// Solve every record of a TSV corpus and summarize accuracy.
    Eval { corpus: PathBuf },

    /// Print a model's bit encoding and cost breakdown.
    InspectModel { expr: String },
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Source model expression, e.g. 'phi1=$1; phi2=$1."s"'.
    #[arg(long, conflicts_with = "source", required_unless_present = "source")]
    pub model: Option<String>,

    /// Source case as x:y.
    #[arg(long)]
    pub source: Option<String>,

    /// Target case as x:y.
    #[arg(long)]
    pub target: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Symbols of the alphabet, in code order.
    #[arg(long, global = true, default_value = analogy_mdl::coding::DEFAULT_SYMBOLS)]
    pub alphabet: String,

    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub max_slots: u64,

    /// Literal tokens per pattern.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_literals: usize,

    #[arg(long, global = true, default_value = "weak")]
    pub variant: Variant,

    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub top_k: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Reserved; recorded in reports but affects no result.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alphabet: Alphabet,
    pub bounds: SearchBounds,
    pub variant: Variant,
    pub top_k: usize,
    pub format: Format,
    pub seed: u64,
}

impl RunArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let alphabet = Alphabet::new(&self.alphabet).context("invalid --alphabet")?;
        let bounds = SearchBounds {
            max_slots: self.max_slots as usize,
            max_literals: self.max_literals,
            ..SearchBounds::default()
        };
        Ok(RunConfig {
            alphabet,
            bounds,
            variant: self.variant,
            top_k: self.top_k as usize,
            format: self.format,
            seed: self.seed,
        })
    }
}

pub fn parse_case(text: &str, alphabet: &Alphabet) -> Result<Case> {
    let Some((x, y)) = text.split_once(':') else {
        bail!("expected a case as x:y, got {text:?}");
    };
    if y.contains(':') {
        bail!("expected a single ':' in case {text:?}");
    }
    alphabet.validate(x)?;
    alphabet.validate(y)?;
    Ok(Case::new(x, y))
}

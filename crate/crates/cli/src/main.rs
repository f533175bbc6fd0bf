mod args;
mod corpus;
mod report;

use std::process::ExitCode;

use analogy_mdl::coding::BitWriter;
use analogy_mdl::inference::optimal_models;
use analogy_mdl::reusability::reusability_given;
use analogy_mdl::transferability::transfer_report_given;
use analogy_mdl::{parse_model, Error, ModelSpace, MorphologySpace, Solver};
use anyhow::{Context, Result};
use clap::Parser;
use serde::Serialize;

use args::{parse_case, Cli, Command, Format, RunConfig, ScoreArgs};
use report::*;

const EXIT_INPUT: u8 = 1;
const EXIT_NO_SOLUTION: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(
        env_logger::Env::new()
            .filter_or("ANALOGY_MDL_LOG", "warn")
            .write_style("ANALOGY_MDL_LOG_STYLE"),
    )
    .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let no_solution = e
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::EmptySolution(_)));
            ExitCode::from(if no_solution {
                EXIT_NO_SOLUTION
            } else {
                EXIT_INPUT
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = cli.config.resolve()?;
    match cli.command {
        Command::Solve { a, b, c } => solve(&config, &a, &b, &c),
        Command::Score(args) => score(&config, &args),
        Command::Eval { corpus } => eval(&config, &corpus),
        Command::InspectModel { expr } => inspect(&config, &expr),
    }
}

fn emit<T: Serialize>(config: &RunConfig, doc: &T, tsv: impl FnOnce(&T) -> String) {
    match config.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(doc).expect("reports always serialize")
        ),
        Format::Tsv => print!("{}", tsv(doc)),
    }
}

fn solve(config: &RunConfig, a: &str, b: &str, c: &str) -> Result<ExitCode> {
    let solver = Solver::new(config.alphabet.clone(), config.bounds.clone());
    let solutions = solver.solve(a, b, c, config.top_k)?;
    let doc = SolveReport {
        schema: SCHEMA,
        command: "solve",
        config: config.into(),
        equation: [a.to_string(), b.to_string(), c.to_string()],
        solutions: solutions.iter().map(SolutionRow::from).collect(),
    };
    emit(config, &doc, solve_tsv);
    Ok(ExitCode::SUCCESS)
}

fn score(config: &RunConfig, args: &ScoreArgs) -> Result<ExitCode> {
    let space = MorphologySpace::new(config.alphabet.clone());
    let target_case = parse_case(&args.target, &config.alphabet).context("invalid --target")?;
    let target = optimal_models(&space, &target_case, &config.bounds)?;
    let mut doc = ScoreReport {
        schema: SCHEMA,
        command: "score",
        config: config.into(),
        target: TargetRow::new(target_case.to_string(), &target),
        model: None,
        source: None,
    };
    if let Some(expr) = &args.model {
        let model = parse_model(expr).context("invalid --model")?;
        let r = reusability_given(&space, &model, &target_case, &target)?;
        doc.model = Some(ModelScoreRow {
            model: model.to_string(),
            model_bits: space.model_cost(&model)?,
            reusability: (&r).into(),
        });
    }
    if let Some(source) = &args.source {
        let source_case = parse_case(source, &config.alphabet).context("invalid --source")?;
        let inferred = optimal_models(&space, &source_case, &config.bounds)?;
        let t = transfer_report_given(&space, &inferred, &target_case, &target, config.variant)?;
        doc.source = Some(SourceScoreRow {
            case: source_case.to_string(),
            opt_bits: inferred.opt_bits,
            null_bits: inferred.null_bits,
            transfer: (&t).into(),
        });
    }
    emit(config, &doc, score_tsv);
    Ok(ExitCode::SUCCESS)
}

fn eval(config: &RunConfig, path: &std::path::Path) -> Result<ExitCode> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read corpus {}", path.display()))?;
    let parsed = corpus::parse_corpus(&text, &config.alphabet);
    let (summary, records, skipped) = corpus::evaluate(&parsed, config);
    let failed = summary.scored == 0;
    let doc = EvalReport {
        schema: SCHEMA,
        command: "eval",
        config: config.into(),
        corpus: path.display().to_string(),
        summary,
        records,
        skipped,
    };
    emit(config, &doc, eval_tsv);
    if failed {
        eprintln!("error: no corpus record could be scored");
        return Ok(ExitCode::from(EXIT_INPUT));
    }
    Ok(ExitCode::SUCCESS)
}

fn inspect(config: &RunConfig, expr: &str) -> Result<ExitCode> {
    let model = parse_model(expr)?;
    let mut bits = BitWriter::new();
    model.encode(&config.alphabet, &mut bits)?;
    let doc = InspectReport {
        schema: SCHEMA,
        command: "inspect-model",
        model: model.to_string(),
        cost: model.cost(&config.alphabet)?,
        bits: bits.to_string(),
        breakdown: model
            .cost_breakdown(&config.alphabet)?
            .into_iter()
            .map(|(part, bits)| PartRow { part, bits })
            .collect(),
    };
    emit(config, &doc, inspect_tsv);
    Ok(ExitCode::SUCCESS)
}

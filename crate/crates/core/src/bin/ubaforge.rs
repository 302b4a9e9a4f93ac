use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::Parser;

use ubaforge::pipeline::{run, Emit, PipelineConfig};

/// Translate LTL formulas to unambiguous Büchi automata in HOA format.
#[derive(Parser, Debug)]
#[command(name = "ubaforge", version)]
struct Args {
    /// Formula to translate. Without it, formulas are read from standard
    /// input, one per line.
    formula: Option<String>,
    /// Read formulas in LBT prefix syntax.
    #[arg(long)]
    prefix: bool,
    /// Skip the fairness rewrite rules.
    #[arg(long)]
    no_rewrites: bool,
    /// Always use the standard disambiguation step.
    #[arg(long)]
    no_heuristic: bool,
    /// Translate `G μ` for purely-eventual `μ` without suspension.
    #[arg(long)]
    no_suspension: bool,
    /// Create all complement states before disambiguating.
    #[arg(long)]
    eager_complements: bool,
    /// Which automaton to print: vwaa, tgba or uba.
    #[arg(long, default_value = "uba", value_parser = clap::value_parser!(String))]
    emit: String,
    /// Give up after this many disambiguation steps.
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Check the result against the formula on lasso words, and check
    /// unambiguity.
    #[arg(long)]
    check: bool,
    /// Print per-stage statistics as JSON lines on standard error.
    #[arg(long)]
    stats: bool,
    /// Seed for the sampled check on larger alphabets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let emit: Emit = match args.emit.parse() {
        Ok(e) => e,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let config = PipelineConfig {
        prefix: args.prefix,
        rewrites: !args.no_rewrites,
        heuristic: !args.no_heuristic,
        suspension: !args.no_suspension,
        eager_complements: args.eager_complements,
        emit,
        max_iterations: args.max_iterations,
        check: args.check,
        seed: args.seed,
        ..PipelineConfig::default()
    };
    let inputs: Vec<String> = match args.formula {
        Some(f) => vec![f],
        None => {
            let stdin = io::stdin();
            let mut lines = Vec::new();
            for line in stdin.lock().lines() {
                match line {
                    Ok(l) if l.trim().is_empty() => {}
                    Ok(l) => lines.push(l),
                    Err(e) => {
                        eprintln!("error: reading standard input: {e}");
                        return ExitCode::FAILURE;
                    }
                }
            }
            lines
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failed = false;
    for input in &inputs {
        match run(input, &config) {
            Ok(result) => {
                if args.stats {
                    for v in &result.stats {
                        eprintln!("{v}");
                    }
                }
                if out.write_all(result.text.as_bytes()).is_err() {
                    return ExitCode::FAILURE;
                }
            }
            Err(e) => {
                eprintln!("error: {input}: {e}");
                failed = true;
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

//! Command-line front end: parses l-sequence specs, runs sessions and emits
//! tables or check reports as text, CSV or JSON.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use grig::classifier::{criterion_trace, exponent_estimate, CriterionKind};
use grig::metrics::{
    complexity, complexity_formula, max_power, repetitive, repulsiveness, PowerOutcome,
};
use grig::report::{float_cell, report_doc, Doc, Format};
use grig::verify::{run_check, run_suite, square_relation, CheckParams, CHECK_IDS};
use grig::{Error, LSpec, Session, SessionConfig};

const MEMORY_BUDGET_ENV: &str = "GRIG_MEMORY_BUDGET";

#[derive(Parser)]
#[command(
    name = "grig",
    version,
    about = "Exact language and aperiodic-order metrics for l-Grigorchuk subshifts",
    after_help = "L-SPEC GRAMMAR:\n  const:<k>                constant sequence l_i = k\n  geom:<b>                 l_i = b^i, b >= 2\n  poly:<c_d,...,c_0>       l_i = P(i), coefficients high to low\n  list:<v1,v2,...>[:repeat-last]\n                           explicit entries; without :repeat-last, queries\n                           past the end are errors\n  ex3                      l = (1,1,1,3,1,7,...): 1 at odd i, 2^{i/2}-1 at\n                           even i (bounded part fixed to 1)\n  ex4                      l = (1,0,3,0,5,2,...): i at odd i, 2^{i/2}-i at\n                           even i; zero entries, validated in weak-zero mode"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Table => Format::Table,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Sequence spec, e.g. const:1, geom:2, list:3,1,4,1,5:repeat-last.
    #[arg(long = "l", value_name = "SPEC")]
    l: String,

    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,

    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Bound in bytes on any single materialized word
    /// [default: 67108864, or the GRIG_MEMORY_BUDGET environment variable].
    #[arg(long, value_name = "BYTES")]
    memory_budget: Option<usize>,

    /// Bound on p * |v| when probing powers v^p [default: 1048576].
    #[arg(long, value_name = "N")]
    power_cap: Option<u64>,
}

impl Common {
    fn session(&self) -> Result<Session, Error> {
        let spec: LSpec = self.l.parse()?;
        let mut config = SessionConfig::default();
        if let Some(budget) = self.memory_budget {
            config.memory_budget = budget;
        } else if let Ok(text) = std::env::var(MEMORY_BUDGET_ENV) {
            config.memory_budget = text.parse().map_err(|_| {
                Error::InvalidArg(format!("{MEMORY_BUDGET_ENV} must be a byte count, got {text:?}"))
            })?;
        }
        if let Some(cap) = self.power_cap {
            config.power_cap = cap;
        }
        Ok(Session::with_config(spec, config))
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| Error::InvalidArg(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the length-n prefix of the generating word.
    Prefix {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// List all factors of length n with their right extensions.
    Factors {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// Exact complexity p(n) next to the closed-form evaluator and their delta.
    Complexity {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N")]
        n_max: u64,
    },
    /// The closed-form complexity evaluator alone (empty below its range).
    FormulaComplexity {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N")]
        n_max: u64,
    },
    /// Maximal powers Q(n) for n = 2..n-max.
    Power {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N")]
        n_max: usize,
    },
    /// Exact repetitive function R(n) for n = 1..n-max.
    Repetitive {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N")]
        n_max: usize,
    },
    /// Repulsiveness statistic A_{alpha,n} for n = 2..n-max.
    Repulsive {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, value_name = "N")]
        n_max: usize,
    },
    /// Right-special factors per length.
    Special {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N")]
        n_max: usize,
    },
    /// Boundedness criteria over an alpha grid, exponent estimates and the
    /// square relation between them.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated alpha values to sweep.
        #[arg(long, default_value = "1,1.5,2,3,4", value_name = "GRID")]
        alpha_grid: String,
        #[arg(long, default_value_t = 20)]
        depth: u64,
    },
    /// Run named checks; exits 2 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// "all" runs the whole registry.
        #[arg(long, conflicts_with = "check")]
        suite: Option<String>,
        /// Run a single check by id.
        #[arg(long, value_name = "ID")]
        check: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the error path too.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Prefix { common, n } => {
            let mut session = common.session()?;
            let word = session.eta_prefix_word(n)?;
            if matches!(common.format, OutputFormat::Table) {
                common.emit(&format!("{word}\n"))?;
            } else {
                let mut doc = Doc::new("prefix", &common.l, vec!["n", "prefix"]);
                doc.push(vec![Value::from(n), Value::String(word.to_string())]);
                common.emit(&doc.render(common.format.into()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Factors { common, n } => {
            let mut session = common.session()?;
            let mut doc = Doc::new("factors", &common.l, vec!["word", "extensions"]);
            let table = session.factors(n)?;
            for (word, ext) in table.entries() {
                let exts: String = ext.letters().map(|l| l.as_char()).collect();
                doc.push(vec![
                    Value::String(word.to_string()),
                    Value::String(exts),
                ]);
            }
            common.emit(&doc.render(common.format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Complexity { common, n_max } => {
            let mut session = common.session()?;
            let spec = session.spec().clone();
            let mut doc = Doc::new(
                "complexity",
                &common.l,
                vec!["n", "p_oracle", "p_formula", "delta"],
            );
            for n in 1..=n_max {
                let oracle = complexity(&mut session, n as usize)?;
                let (formula, delta) = match complexity_formula(&spec, n) {
                    Ok(f) => (Value::from(f), Value::from(oracle as i64 - f as i64)),
                    Err(Error::OutOfRange { .. }) => (Value::Null, Value::Null),
                    Err(e) => return Err(e),
                };
                doc.push(vec![Value::from(n), Value::from(oracle), formula, delta]);
            }
            common.emit(&doc.render(common.format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FormulaComplexity { common, n_max } => {
            let session = common.session()?;
            let spec = session.spec().clone();
            let mut doc = Doc::new("formula-complexity", &common.l, vec!["n", "p_formula"]);
            for n in 1..=n_max {
                let cell = match complexity_formula(&spec, n) {
                    Ok(f) => Value::from(f),
                    Err(Error::OutOfRange { .. }) => Value::Null,
                    Err(e) => return Err(e),
                };
                doc.push(vec![Value::from(n), cell]);
            }
            common.emit(&doc.render(common.format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Power { common, n_max } => {
            let mut session = common.session()?;
            let mut doc = Doc::new("power", &common.l, vec!["n", "q", "status"]);
            for n in 2..=n_max {
                let (q, status) = match max_power(&mut session, n)? {
                    PowerOutcome::Exact(q) => (q, "exact"),
                    PowerOutcome::CapReached(q) => (q, "cap-reached"),
                };
                doc.push(vec![
                    Value::from(n),
                    Value::from(q),
                    Value::String(status.into()),
                ]);
            }
            common.emit(&doc.render(common.format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Repetitive { common, n_max } => {
            let mut session = common.session()?;
            let mut doc = Doc::new("repetitive", &common.l, vec!["n", "r"]);
            for n in 1..=n_max {
                doc.push(vec![Value::from(n), Value::from(repetitive(&mut session, n)?)]);
            }
            common.emit(&doc.render(common.format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Repulsive { common, alpha, n_max } => {
            let mut session = common.session()?;
            let mut doc = Doc::new("repulsive", &common.l, vec!["n", "a_alpha"]);
            for n in 2..=n_max {
                doc.push(vec![
                    Value::from(n),
                    float_cell(repulsiveness(&mut session, alpha, n)?),
                ]);
            }
            common.emit(&doc.render(common.format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Special { common, n_max } => {
            let mut session = common.session()?;
            let mut doc = Doc::new("special", &common.l, vec!["n", "count", "words"]);
            for n in 1..=n_max {
                let special = session.right_special_words(n)?;
                let words: Vec<String> = special
                    .iter()
                    .map(|(w, s)| format!("{w}:{s}"))
                    .collect();
                doc.push(vec![
                    Value::from(n),
                    Value::from(special.len()),
                    Value::String(words.join(" ")),
                ]);
            }
            common.emit(&doc.render(common.format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            common,
            alpha_grid,
            depth,
        } => {
            let session = common.session()?;
            let spec = session.spec().clone();
            let mut grid = Vec::new();
            for (i, part) in alpha_grid.split(',').enumerate() {
                grid.push(part.trim().parse::<f64>().map_err(|_| Error::Parse {
                    pos: i,
                    msg: format!("bad alpha value {part:?}"),
                })?);
            }
            let mut doc = Doc::new(
                "classify",
                &common.l,
                vec!["section", "kind", "alpha", "value", "extra", "verdict"],
            );
            for kind in [CriterionKind::Finite, CriterionKind::Repetitive] {
                for &alpha in &grid {
                    let trace = criterion_trace(&spec, alpha, kind, depth)?;
                    doc.push(vec![
                        Value::String("criterion".into()),
                        Value::String(kind.label().into()),
                        float_cell(alpha),
                        float_cell(trace.sup_abs),
                        float_cell(*trace.terms.last().unwrap()),
                        Value::String(trace.verdict.label().into()),
                    ]);
                }
            }
            if spec.is_strict() {
                for kind in [CriterionKind::Finite, CriterionKind::Repetitive] {
                    let est = exponent_estimate(&spec, kind, depth)?;
                    doc.push(vec![
                        Value::String("estimate".into()),
                        Value::String(kind.label().into()),
                        Value::Null,
                        float_cell(est.last),
                        float_cell(est.drift),
                        Value::Null,
                    ]);
                }
            }
            let square = square_relation(&session, depth)?;
            doc.push(vec![
                Value::String("square-relation".into()),
                Value::Null,
                Value::Null,
                Value::String(square.status.label().into()),
                Value::String(square.status.note().to_string()),
                Value::String(square.detail),
            ]);
            common.emit(&doc.render(common.format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            common,
            suite,
            check,
        } => {
            let mut session = common.session()?;
            let params = CheckParams::default();
            let reports = match (&suite, &check) {
                (_, Some(id)) => {
                    if !CHECK_IDS.contains(&id.as_str()) {
                        return Err(Error::UnknownCheck(format!(
                            "{id}; available checks: {}",
                            CHECK_IDS.join(", ")
                        )));
                    }
                    vec![run_check(id, &mut session, &params)?]
                }
                (Some(s), None) if s != "all" => {
                    return Err(Error::InvalidArg(format!(
                        "unknown suite {s:?}; only \"all\" is defined"
                    )))
                }
                _ => run_suite(&mut session, &params)?,
            };
            let doc = report_doc("verify", &common.l, &reports);
            common.emit(&doc.render(common.format.into()))?;
            if reports.iter().any(|r| r.status.is_fail()) {
                Ok(ExitCode::from(2))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

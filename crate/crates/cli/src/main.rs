//! `erecheck`: containment, equivalence and matching of extended regular
//! expressions from the command line.

mod commands;
mod cross;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use erecheck::containment::DEFAULT_FUEL;
use erecheck::{BitsetAlgebra, CheckOptions, CofiniteAlgebra, IntersectionLiterals, IntervalAlgebra};

/// Exit status when a verdict disagrees with the bounded-slice oracle.
const EXIT_DISAGREEMENT: u8 = 3;
const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "erecheck",
    version,
    about = "Decide containment and equivalence of extended regular expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Symbol alphabet: `bitset:<chars>`, `unicode` or `cofinite`.
    #[arg(long, global = true, default_value = "unicode", value_name = "SPEC")]
    alphabet: String,

    /// Write the derivation as JSON lines, one object per rule application.
    #[arg(long, global = true, value_name = "PATH")]
    trace_json: Option<PathBuf>,

    /// Disable the fast-path axioms.
    #[arg(long, global = true)]
    no_axioms: bool,

    /// Keep visited pairs for the whole query rather than per branch.
    #[arg(long, global = true, value_name = "BOOL", default_value_t = true, action = ArgAction::Set)]
    global_memo: bool,

    /// Maximum number of rule applications per query.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: u64,

    /// Cross-validate against bounded language slices (bitset alphabets of
    /// at most 8 symbols); exits with 3 on disagreement.
    #[arg(long, global = true)]
    oracle_check: bool,

    /// Report metrics of the parsed expression before normalization too.
    #[arg(long, global = true)]
    raw_metrics: bool,

    /// How `next` treats the literals of an intersection.
    #[arg(long, global = true, value_enum, default_value_t = Literals::Join)]
    intersection_literals: Literals,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Literals {
    Join,
    Meet,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Does every word of LHS belong to RHS?
    Check { lhs: String, rhs: String },
    /// Do LHS and RHS denote the same language?
    Equiv { lhs: String, rhs: String },
    /// Is WORD in the language of EXPR? `\u{hex}` escapes are allowed.
    Match { word: String, expr: String },
    /// Print the derivative of EXPR by a symbol or class.
    Derive {
        #[arg(long, value_name = "CLASS")]
        by: String,
        expr: String,
    },
    /// Print the next literals of EXPR, one per line.
    Next { expr: String },
    /// Check LHS ⊑ RHS and print the derivation.
    Trace { lhs: String, rhs: String },
    /// Print size and literal width of EXPR, and query statistics if RHS is given.
    Metrics { expr: String, rhs: Option<String> },
}

/// Alphabet selected by `--alphabet`.
#[derive(Debug, Clone, PartialEq, Eq)]
enum AlphabetSpec {
    Bitset(String),
    Unicode,
    Cofinite,
}

impl AlphabetSpec {
    fn parse(spec: &str) -> Result<Self> {
        match spec {
            "unicode" => Ok(AlphabetSpec::Unicode),
            "cofinite" => Ok(AlphabetSpec::Cofinite),
            _ => match spec.strip_prefix("bitset:") {
                Some(chars) => Ok(AlphabetSpec::Bitset(chars.to_string())),
                None => bail!("unknown alphabet {spec:?}; expected bitset:<chars>, unicode or cofinite"),
            },
        }
    }
}

/// Everything a subcommand needs besides the algebra.
struct RunConfig {
    command: Command,
    options: CheckOptions,
    literals: IntersectionLiterals,
    trace_json: Option<PathBuf>,
    oracle_check: bool,
    raw_metrics: bool,
}

fn run(cli: Cli) -> Result<u8> {
    let spec = AlphabetSpec::parse(&cli.alphabet)?;
    if cli.oracle_check && !matches!(spec, AlphabetSpec::Bitset(_)) {
        bail!("--oracle-check needs a bitset alphabet");
    }
    let config = RunConfig {
        command: cli.command,
        options: CheckOptions {
            axioms: !cli.no_axioms,
            global_memo: cli.global_memo,
            fuel: cli.fuel,
            trace: cli.trace_json.is_some(),
        },
        literals: match cli.intersection_literals {
            Literals::Join => IntersectionLiterals::Join,
            Literals::Meet => IntersectionLiterals::Meet,
        },
        trace_json: cli.trace_json,
        oracle_check: cli.oracle_check,
        raw_metrics: cli.raw_metrics,
    };
    match spec {
        AlphabetSpec::Bitset(chars) => {
            let alg = BitsetAlgebra::new(chars.chars()).context("invalid bitset alphabet")?;
            commands::run(alg, config)
        }
        AlphabetSpec::Unicode => commands::run(IntervalAlgebra::unicode(), config),
        AlphabetSpec::Cofinite => commands::run(CofiniteAlgebra::unicode(), config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_specs() {
        assert_eq!(AlphabetSpec::parse("unicode").unwrap(), AlphabetSpec::Unicode);
        assert_eq!(AlphabetSpec::parse("cofinite").unwrap(), AlphabetSpec::Cofinite);
        assert_eq!(AlphabetSpec::parse("bitset:abc").unwrap(), AlphabetSpec::Bitset("abc".into()));
        assert!(AlphabetSpec::parse("ascii").is_err());
    }

    #[test]
    fn flags_parse_after_the_subcommand() {
        let cli = Cli::try_parse_from([
            "erecheck",
            "check",
            "--alphabet",
            "bitset:ab",
            "a",
            "b",
            "--global-memo=false",
            "--no-axioms",
        ])
        .unwrap();
        assert_eq!(cli.alphabet, "bitset:ab");
        assert!(!cli.global_memo && cli.no_axioms);
        assert!(matches!(cli.command, Command::Check { .. }));
    }
}

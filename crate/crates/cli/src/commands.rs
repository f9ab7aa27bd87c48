//! Subcommands, generic over the selected algebra.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use erecheck::syntax::parse_raw;
use erecheck::{BooleanAlgebra, Checker, Direction, Ere, TraceEvent, Verdict};

use crate::cross::CrossCheck;
use crate::text::{parse_diagnostic, read_word, show_word};
use crate::{Command, RunConfig, EXIT_DISAGREEMENT};

pub fn run<A: CrossCheck>(alg: A, config: RunConfig) -> Result<u8> {
    let uses_trace = matches!(
        config.command,
        Command::Check { .. }
            | Command::Equiv { .. }
            | Command::Trace { .. }
            | Command::Metrics { rhs: Some(_), .. }
    );
    if config.trace_json.is_some() && !uses_trace {
        bail!("--trace-json applies to check, equiv, trace and metrics with two expressions");
    }
    let checks = matches!(
        config.command,
        Command::Check { .. } | Command::Equiv { .. } | Command::Trace { .. } | Command::Match { .. }
    );
    if config.oracle_check && !checks {
        bail!("--oracle-check applies to check, equiv, trace and match");
    }
    if config.raw_metrics && !matches!(config.command, Command::Metrics { .. }) {
        bail!("--raw-metrics applies to metrics");
    }

    let mut options = config.options;
    options.trace |= matches!(config.command, Command::Trace { .. });
    let mut c = Checker::new(alg, options);
    c.builder_mut().set_intersection_literals(config.literals);

    match &config.command {
        Command::Check { lhs, rhs } | Command::Trace { lhs, rhs } => {
            let (r, s) = (parse(&mut c, "lhs", lhs)?, parse(&mut c, "rhs", rhs)?);
            let v = c.check(&r, &s)?;
            write_trace(&c, &v.trace, config.trace_json.as_deref())?;
            if matches!(config.command, Command::Trace { .. }) {
                print_derivation(&c, &v.trace);
            }
            match &v.witness {
                None => println!("HOLDS"),
                Some(w) => println!("FAILS witness={}", show_word(c.algebra(), w)),
            }
            if config.oracle_check {
                if let Some(problem) = A::cross_containment(&mut c, &r, &s, v.witness.as_deref())? {
                    return Ok(disagreement(&problem));
                }
            }
            Ok(verdict_code(&v))
        }
        Command::Equiv { lhs, rhs } => {
            let (r, s) = (parse(&mut c, "lhs", lhs)?, parse(&mut c, "rhs", rhs)?);
            let v = c.equivalent(&r, &s)?;
            write_trace(&c, &v.trace, config.trace_json.as_deref())?;
            let (inner, outer) = match v.direction {
                Direction::Forward => (&r, &s),
                Direction::Backward => (&s, &r),
            };
            match &v.witness {
                None => println!("EQUIVALENT"),
                Some(w) => {
                    let side = if v.direction == Direction::Forward { "lhs" } else { "rhs" };
                    println!("DIFFERENT witness={} only-in={side}", show_word(c.algebra(), w));
                }
            }
            if config.oracle_check {
                let mut problem = A::cross_containment(&mut c, inner, outer, v.witness.as_deref())?;
                if v.holds && problem.is_none() {
                    problem = A::cross_containment(&mut c, &s, &r, None)?;
                }
                if let Some(problem) = problem {
                    return Ok(disagreement(&problem));
                }
            }
            Ok(verdict_code(&v))
        }
        Command::Match { word, expr } => {
            let r = parse(&mut c, "expression", expr)?;
            let w = read_word(c.algebra(), word).context("invalid word")?;
            let matched = c.membership(&w, &r);
            println!("{}", if matched { "MATCH" } else { "NO MATCH" });
            if config.oracle_check {
                if let Some(problem) = A::cross_membership(&mut c, &w, &r, matched)? {
                    return Ok(disagreement(&problem));
                }
            }
            Ok(if matched { 0 } else { 1 })
        }
        Command::Derive { by, expr } => {
            let r = parse(&mut c, "expression", expr)?;
            let by_expr = parse(&mut c, "--by", by)?;
            let Some(set) = by_expr.as_literal().cloned() else {
                bail!("--by must be a single symbol or class, got {}", c.builder().to_string(&by_expr));
            };
            let b = c.builder_mut();
            let next = b.next(&r);
            let alg = b.algebra();
            if alg.is_empty(&set) {
                bail!("cannot derive by the empty class");
            }
            let uniform =
                next.iter().any(|l| alg.is_subset(&set, l)) || alg.is_disjoint(&set, &next.cover(alg));
            if !uniform {
                let lits: Vec<String> = next.iter().map(|l| alg.set_to_string(l)).collect();
                bail!(
                    "{} cuts across the next literals of the expression ({}); derive by a smaller class",
                    alg.set_to_string(&set),
                    lits.join(", ")
                );
            }
            let d = b.deriv_literal(&set, &r)?;
            println!("{}", b.to_string(&d));
            Ok(0)
        }
        Command::Next { expr } => {
            let r = parse(&mut c, "expression", expr)?;
            let b = c.builder_mut();
            let next = b.next(&r);
            for lit in next.iter() {
                println!("{}", b.algebra().set_to_string(lit));
            }
            Ok(0)
        }
        Command::Metrics { expr, rhs } => {
            let r = parse(&mut c, "expression", expr)?;
            println!("size {}", r.size());
            println!("width {}", r.width());
            let next = c.builder_mut().next(&r).len();
            println!("next {next}");
            if config.raw_metrics {
                let raw =
                    parse_raw(c.algebra(), expr).map_err(|e| parse_diagnostic("expression", expr, &e))?;
                println!("raw-size {}", raw.size());
                println!("raw-width {}", raw.width());
                println!("raw-negation-depth {}", raw.negation_depth());
            }
            if let Some(rhs) = rhs {
                let s = parse(&mut c, "rhs", rhs)?;
                let v = c.check(&r, &s)?;
                write_trace(&c, &v.trace, config.trace_json.as_deref())?;
                println!("holds {}", v.holds);
                println!("steps {}", v.stats.steps);
                println!("visited {}", v.stats.visited);
                println!("max-depth {}", v.stats.max_depth);
                println!("search-states {}", v.stats.search_states);
                println!("interned {}", c.builder().interned());
            }
            Ok(0)
        }
    }
}

fn parse<A: BooleanAlgebra>(c: &mut Checker<A>, what: &str, text: &str) -> Result<Ere<A::Set>> {
    c.parse(text).map_err(|e| parse_diagnostic(what, text, &e))
}

fn verdict_code<A: BooleanAlgebra>(v: &Verdict<A>) -> u8 {
    if v.holds {
        0
    } else {
        1
    }
}

fn disagreement(problem: &str) -> u8 {
    eprintln!("oracle disagreement: {problem}");
    EXIT_DISAGREEMENT
}

fn write_trace<A: BooleanAlgebra>(
    c: &Checker<A>,
    trace: &[TraceEvent<A::Set>],
    path: Option<&Path>,
) -> Result<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut out = BufWriter::new(file);
    for event in trace {
        serde_json::to_writer(&mut out, &event.render(c.builder()))?;
        out.write_all(b"\n")?;
    }
    out.flush().with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn print_derivation<A: BooleanAlgebra>(c: &Checker<A>, trace: &[TraceEvent<A::Set>]) {
    for event in trace {
        let e = event.render(c.builder());
        let by = e.literal.map(|l| format!("{l}: ")).unwrap_or_default();
        println!("{:indent$}{by}{} ⊑ {}  ({})", "", e.lhs, e.rhs, e.rule, indent = 2 * e.depth);
    }
}

//! The `realize` command line.
//!
//! Deciding subcommands print `ANSWER=<Yes|No|FuelExhausted> EVIDENCE=<n>`
//! as their first line and exit with 0, 1 or 2 accordingly. Runtime errors
//! exit with 3 and usage errors with 4. Traces go to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use realizability_core::bridge::{decide_prefix_theorem1, prefix_via_rr, rr_to_prefix, RegularFilter};
use realizability_core::decide::{
    certified_buchi_fuel, certified_fuel, decide_buchi_traced, decide_prefix_traced, Answer, Fuel, Outcome, Verdict,
};
use realizability_core::definitive::{definitive_language, find_definitive_word};
use realizability_core::infalpha::{
    certified_fuel_infinite, decide_prefix_infinite_traced, decide_prefix_universal, reduce_morphism_automaton,
    DeadlockAccepting, EffectiveAutomaton,
};
use realizability_core::words::{universal_indexed_word, Universality};
use realizability_core::{Alphabet, Dfa};

use crate::effective::parse_effective;
use crate::error::{CliError, FormatError};
use crate::format::{parse_dfa, render_dfa};
use crate::generator::{generate, parse_alphabet, parse_params, Generated, NamedMorphism};
use crate::machines::parse_machines;
use crate::regex::compile_regex;

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_FUEL: u8 = 2;
pub const EXIT_ERROR: u8 = 3;
pub const EXIT_USAGE: u8 = 4;

/// Largest letter index scanned when building definitive words over the
/// countable alphabet.
pub const DEFAULT_SCAN_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "realize",
    version,
    about = "Definitive words and realizability deciders for finite automata"
)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print a definitive word of an automaton.
    Definitive {
        automaton: PathBuf,
        /// Also print the definitive-language automaton.
        #[arg(long)]
        language: bool,
    },
    /// Does some prefix of the word belong to L(A)?
    DecidePrefix(DecideArgs),
    /// Do infinitely many prefixes of the word belong to L(A)?
    DecideBuchi(DecideArgs),
    /// Decide over the universal word on the countable alphabet.
    DecideInfinite(InfiniteArgs),
    /// Regular realizability of a filter, through prefix realizability.
    Rr(RrArgs),
    /// Word generators.
    Word {
        #[command(subcommand)]
        action: WordAction,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct WordArgs {
    /// champernowne, ultper, universal-indexed, morphism or theorem1.
    #[arg(long = "gen")]
    pub generator: String,
    /// Comma-separated key=value pairs.
    #[arg(long)]
    pub params: Option<String>,
    /// Machine list for theorem1.
    #[arg(long)]
    pub machines: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct DecideArgs {
    #[arg(long)]
    pub automaton: PathBuf,
    #[command(flatten)]
    pub word: WordArgs,
    #[arg(long)]
    pub fuel: Option<usize>,
    /// Stream positions and states to standard error.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct InfiniteArgs {
    /// Automaton with index-set edges.
    #[arg(long, conflicts_with_all = ["morphism", "automaton"], required_unless_present = "morphism")]
    pub effective: Option<PathBuf>,
    /// Built-in morphism applied to the universal word: runs, balanced or relabel.
    #[arg(long, requires = "automaton")]
    pub morphism: Option<String>,
    /// Finite automaton read over the morphic image.
    #[arg(long)]
    pub automaton: Option<PathBuf>,
    /// Automaton for the morphism's image language, used as its oracle.
    #[arg(long, requires = "morphism")]
    pub image: Option<PathBuf>,
    #[arg(long)]
    pub buchi: bool,
    #[arg(long)]
    pub fuel: Option<usize>,
    #[arg(long)]
    pub trace: bool,
    #[arg(long, default_value_t = DEFAULT_SCAN_LIMIT)]
    pub scan_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct RrArgs {
    /// Filter language: an automaton file, or an expression.
    #[arg(long)]
    pub filter: String,
    /// The query language as an expression.
    #[arg(long, conflicts_with = "automaton", required_unless_present = "automaton")]
    pub regex: Option<String>,
    /// The query language as an automaton file.
    #[arg(long)]
    pub automaton: Option<PathBuf>,
    /// Alphabet for expressions: `01` or `a|b|c`.
    #[arg(long, default_value = "01")]
    pub alphabet: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum WordAction {
    /// Print W[1, N].
    Dump {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        upto: usize,
    },
}

/// Parses arguments (without the program name) and checks that named files exist.
pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("realize")).chain(argv.into_iter().map(Into::into));
    let inv = Invocation::try_parse_from(args).map_err(|e| CliError::Usage(e.render().to_string()))?;
    let mut files: Vec<(&str, &Path)> = Vec::new();
    match &inv.command {
        Command::Definitive { automaton, .. } => files.push(("<AUTOMATON>", automaton)),
        Command::DecidePrefix(d) | Command::DecideBuchi(d) => {
            files.push(("--automaton", &d.automaton));
            files.extend(d.word.machines.as_deref().map(|p| ("--machines", p)));
        }
        Command::DecideInfinite(d) => {
            files.extend(d.effective.as_deref().map(|p| ("--effective", p)));
            files.extend(d.automaton.as_deref().map(|p| ("--automaton", p)));
            files.extend(d.image.as_deref().map(|p| ("--image", p)));
        }
        Command::Rr(r) => files.extend(r.automaton.as_deref().map(|p| ("--automaton", p))),
        Command::Word {
            action: WordAction::Dump { word, .. },
        } => files.extend(word.machines.as_deref().map(|p| ("--machines", p))),
    }
    for (flag, path) in files {
        if !path.is_file() {
            return Err(CliError::Usage(format!("{flag}: no such file `{}`", path.display())));
        }
    }
    Ok(inv)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn with_path<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn load_dfa(path: &Path) -> Result<Dfa, CliError> {
    with_path(path, parse_dfa(&read(path)?))
}

fn load_word(args: &WordArgs, default: Option<&Alphabet>) -> Result<Generated, CliError> {
    let machines = match &args.machines {
        Some(p) => Some(with_path(p, parse_machines(&read(p)?))?),
        None => None,
    };
    generate(
        &args.generator,
        &parse_params(args.params.as_deref())?,
        machines,
        default,
    )
}

fn report(out: &mut dyn Write, outcome: Outcome) -> Result<u8, CliError> {
    match outcome {
        Outcome::Decided(v) => {
            writeln!(out, "ANSWER={} EVIDENCE={}", v.answer, v.evidence)?;
            Ok(if v.answer == Answer::Yes { EXIT_YES } else { EXIT_NO })
        }
        Outcome::FuelExhausted { steps_used } => {
            writeln!(out, "ANSWER=FuelExhausted EVIDENCE={steps_used}")?;
            Ok(EXIT_FUEL)
        }
    }
}

fn negate(o: Outcome) -> Outcome {
    match o {
        Outcome::Decided(v) => Outcome::Decided(Verdict {
            answer: v.answer.negate(),
            ..v
        }),
        other => other,
    }
}

fn decide(args: &DecideArgs, buchi: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let a = load_dfa(&args.automaton)?;
    let generated = load_word(&args.word, Some(a.alphabet()))?;
    let word = generated.as_word().ok_or_else(|| {
        CliError::Usage(format!(
            "`{}` is a word over the countable alphabet; use decide-infinite",
            args.word.generator
        ))
    })?;
    if let (Generated::Theorem1(t), false, None, false) = (&generated, buchi, args.fuel, args.trace) {
        return report(out, Outcome::Decided(decide_prefix_theorem1(t, &a)?));
    }
    let fuel = match args.fuel {
        Some(k) => Fuel::new(k).map_err(|_| CliError::Usage("--fuel must be positive".into()))?,
        None if word.universality() == Universality::FactorUniversal => if buchi {
            certified_buchi_fuel(&a, word)
        } else {
            certified_fuel(&a, word)
        }
        .expect("factor-universal words bound occurrences"),
        None => {
            return Err(CliError::Usage(format!(
                "--fuel is required for `{}`",
                args.word.generator
            )))
        }
    };
    let names = a.state_names().to_vec();
    let mut trace = |i: usize, q: usize| {
        if args.trace {
            let _ = writeln!(err, "TRACE {i} {}", names[q]);
        }
    };
    let outcome = if buchi {
        decide_buchi_traced(&a, word, fuel, &mut trace)?
    } else {
        decide_prefix_traced(&a, word, fuel, &mut trace)?
    };
    report(out, outcome)
}

fn decide_effective<A: EffectiveAutomaton>(
    a: A,
    args: &InfiniteArgs,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let w = universal_indexed_word();
    let fuel = |x: &dyn EffectiveAutomaton| -> Result<Fuel, CliError> {
        match args.fuel {
            Some(k) => Fuel::new(k).map_err(|_| CliError::Usage("--fuel must be positive".into())),
            None => Ok(certified_fuel_infinite(x, &w, args.scan_limit)?.unwrap_or_else(|| Fuel::at_least(usize::MAX))),
        }
    };
    let mut trace = |i: usize, q: usize, x: &dyn EffectiveAutomaton| {
        let _ = writeln!(err, "TRACE {i} {}", x.state_name(q));
    };
    if args.buchi {
        let variant = DeadlockAccepting::new(a)?;
        let f = fuel(&variant)?;
        let o = if args.trace {
            decide_prefix_infinite_traced(&variant, &w, f, |i, q| trace(i, q, &variant))?
        } else {
            decide_prefix_universal(&variant, f)?
        };
        Ok(negate(o))
    } else {
        let f = fuel(&a)?;
        Ok(if args.trace {
            decide_prefix_infinite_traced(&a, &w, f, |i, q| trace(i, q, &a))?
        } else {
            decide_prefix_universal(&a, f)?
        })
    }
}

fn decide_infinite(args: &InfiniteArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let outcome = if let Some(p) = &args.effective {
        let a = with_path(p, parse_effective(&read(p)?))?;
        decide_effective(&a, args, err)?
    } else {
        let name = args.morphism.as_deref().expect("required by the parser");
        let a = load_dfa(args.automaton.as_deref().expect("required by the parser"))?;
        let mut m = NamedMorphism::builtin(name, Some(a.alphabet()))?;
        if let Some(p) = &args.image {
            m = m.with_image(load_dfa(p)?)?;
        }
        decide_effective(reduce_morphism_automaton(&a, m)?, args, err)?
    };
    report(out, outcome)
}

fn load_language(spec: &str, alphabet: &Alphabet) -> Result<Dfa, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        load_dfa(path)
    } else {
        compile_regex(spec, alphabet).map_err(|source| CliError::Format {
            path: format!("expression `{spec}`"),
            source,
        })
    }
}

fn rr(args: &RrArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let alphabet = parse_alphabet(&args.alphabet)?;
    let filter = load_language(&args.filter, &alphabet)?;
    let r = match (&args.regex, &args.automaton) {
        (_, Some(p)) => load_dfa(p)?,
        (Some(e), None) => load_language(e, filter.alphabet())?,
        (None, None) => unreachable!("required by the parser"),
    };
    if r.alphabet() != filter.alphabet() {
        return Err(realizability_core::Error::AlphabetMismatch.into());
    }
    let product = !filter.intersect(&r)?.is_empty();
    let filter = RegularFilter::new(filter)?;
    let code = report(out, prefix_via_rr(&rr_to_prefix(&r)?, &filter)?)?;
    writeln!(out, "PRODUCT={}", if product { "Yes" } else { "No" })?;
    Ok(code)
}

pub fn execute(inv: &Invocation, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    match &inv.command {
        Command::Definitive { automaton, language } => {
            let a = load_dfa(automaton)?;
            writeln!(out, "DEFINITIVE={}", a.alphabet().render(&find_definitive_word(&a)))?;
            if *language {
                write!(out, "{}", render_dfa(&definitive_language(&a)))?;
            }
            Ok(EXIT_YES)
        }
        Command::DecidePrefix(d) => decide(d, false, out, err),
        Command::DecideBuchi(d) => decide(d, true, out, err),
        Command::DecideInfinite(d) => decide_infinite(d, out, err),
        Command::Rr(r) => rr(r, out),
        Command::Word {
            action: WordAction::Dump { word, upto },
        } => {
            writeln!(out, "{}", load_word(word, None)?.render_prefix(*upto)?)?;
            Ok(EXIT_YES)
        }
    }
}

/// Parses, executes and reports errors; returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_invocation(argv).and_then(|inv| execute(&inv, out, err));
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "{}", msg.trim_end());
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

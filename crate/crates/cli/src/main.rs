//! `coxcomm` — word posets, commutation classes, and reduced words of
//! Coxeter group elements on the command line.
//!
//! Exit codes: `0` success, `2` invalid input, `3` a resource budget was
//! exhausted, `4` an internal invariant failed (always a bug worth
//! reporting). Output for identical inputs (and `--seed`) is byte-identical
//! across runs.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use coxcomm_core::{
    build_poset, c_count_expansion, c_set, commutation_class_bfs, enumerate_commutation_classes,
    perm_to_element, Alphabet, CoxeterSystem, ErrorClass, GroupElement, Order, Permutation,
    RootSign, Word, DEFAULT_DOWNSET_BUDGET, DEFAULT_WORD_BUDGET,
};

/// Environment variable overriding the default memo budget (the `--budget-memo`
/// flag still wins over the variable).
const MEMO_BUDGET_VAR: &str = "COXCOMM_BUDGET_MEMO";

// ---------------------------------------------------------------------
// Command-line grammar
// ---------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "coxcomm",
    version,
    about = "Word posets, commutation classes, and reduced words of Coxeter group elements",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the word poset of a word and print it as text, JSON, or DOT.
    Poset {
        #[command(flatten)]
        input: TraceInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the commutation class of a word.
    Class {
        #[command(flatten)]
        input: TraceInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Maximum number of words to enumerate before giving up.
        #[arg(long, value_name = "N")]
        budget_class: Option<usize>,
    },
    /// Operations on Coxeter group elements.
    #[command(subcommand)]
    Coxeter(CoxeterCommand),
    /// Seeded sampling checks of the exact arithmetic and the enumeration
    /// engines; fails with exit code 4 if any invariant is violated.
    Selftest {
        /// Seed for the sampled draws; the output is a pure function of it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of draws per check.
        #[arg(long, default_value_t = 200, value_name = "N")]
        draws: usize,
    },
}

#[derive(Subcommand)]
enum CoxeterCommand {
    /// Decide whether a word is a reduced expression; prints true or false.
    Check {
        #[command(flatten)]
        system: SystemSpec,
        /// Word over the generator names, e.g. "s1,s2,s1".
        #[arg(long, value_name = "WORD")]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count the reduced words of an element (exact big integer).
    CountReduced {
        #[command(flatten)]
        system: SystemSpec,
        #[command(flatten)]
        element: ElementSpec,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Maximum number of memoized subelements.
        #[arg(long, value_name = "N")]
        budget_memo: Option<usize>,
    },
    /// List the commutation classes of an element's reduced words, one
    /// canonical (least) word per class.
    Classes {
        #[command(flatten)]
        system: SystemSpec,
        #[command(flatten)]
        element: ElementSpec,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Maximum number of reduced words to enumerate.
        #[arg(long, value_name = "N")]
        budget_class: Option<usize>,
    },
    /// Compute the element's set of depth functions on its inversion set,
    /// one function per commutation class.
    Cset {
        #[command(flatten)]
        system: SystemSpec,
        #[command(flatten)]
        element: ElementSpec,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Maximum number of memoized subelements.
        #[arg(long, value_name = "N")]
        budget_memo: Option<usize>,
    },
    /// Count commutation classes by the inclusion-exclusion recurrence over
    /// independent descent subsets, printing the first-level expansion.
    Recurrence {
        #[command(flatten)]
        system: SystemSpec,
        #[command(flatten)]
        element: ElementSpec,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Maximum number of memoized subelements.
        #[arg(long, value_name = "N")]
        budget_memo: Option<usize>,
    },
}

/// Alphabet file plus word, the inputs every plain-word command takes.
#[derive(Args)]
struct TraceInput {
    /// JSON file: {"symbols": [...], "commuting_pairs": [["a","b"], ...]}.
    #[arg(long, value_name = "FILE")]
    alphabet: PathBuf,
    /// Word as symbol names separated by spaces and/or commas.
    #[arg(long, value_name = "WORD")]
    word: String,
}

/// Exactly one way of naming the Coxeter system.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SystemSpec {
    /// Named system: A3, B4, D5, E6..E8, F4, H3, H4, I2:7, I2:inf.
    #[arg(long = "type", value_name = "NAME")]
    type_name: Option<String>,
    /// JSON file: {"generators": [...], "matrix": [[1,3],...]} (0 = infinite).
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
}

/// Exactly one way of naming the group element.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ElementSpec {
    /// Generator word, e.g. "s1,s2,s1"; the element is the product.
    #[arg(long, value_name = "WORD")]
    word: Option<String>,
    /// One-line permutation for type-A systems: "4231" or "10,3,2,...".
    #[arg(long, value_name = "PERM")]
    perm: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

// ---------------------------------------------------------------------
// Failure plumbing
// ---------------------------------------------------------------------

enum CliError {
    Core(coxcomm_core::Error),
    Usage(String),
    Check(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => 2,
                ErrorClass::Budget => 3,
                ErrorClass::Invariant => 4,
            },
            CliError::Usage(_) => 2,
            CliError::Check(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) | CliError::Check(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<coxcomm_core::Error> for CliError {
    fn from(e: coxcomm_core::Error) -> CliError {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn positive(name: &str, value: usize) -> CliResult<usize> {
    if value == 0 {
        return Err(CliError::Usage(format!("{name} must be positive")));
    }
    Ok(value)
}

/// Budget for class/word enumeration: the flag, or the built-in default.
fn class_budget(flag: Option<usize>) -> CliResult<usize> {
    positive("--budget-class", flag.unwrap_or(DEFAULT_WORD_BUDGET))
}

/// Budget for memoized recursions: the flag wins, then the environment
/// variable, then the built-in default.
fn memo_budget(flag: Option<usize>) -> CliResult<usize> {
    if let Some(value) = flag {
        return positive("--budget-memo", value);
    }
    match std::env::var(MEMO_BUDGET_VAR) {
        Ok(text) => {
            let value: usize = text.parse().map_err(|_| {
                CliError::Usage(format!("{MEMO_BUDGET_VAR} must be a positive integer, got {text:?}"))
            })?;
            positive(MEMO_BUDGET_VAR, value)
        }
        Err(_) => Ok(DEFAULT_DOWNSET_BUDGET),
    }
}

fn no_dot(format: Format) -> CliResult<()> {
    if format == Format::Dot {
        return Err(CliError::Usage(
            "dot output only applies to the poset command".to_string(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Input construction
// ---------------------------------------------------------------------

impl SystemSpec {
    fn build(&self) -> CliResult<CoxeterSystem> {
        match (&self.type_name, &self.matrix) {
            (Some(name), None) => Ok(CoxeterSystem::parse_name(name)?),
            (None, Some(path)) => Ok(CoxeterSystem::from_json(&read_file(path)?)?),
            _ => unreachable!("clap enforces exactly one of --type/--matrix"),
        }
    }
}

impl ElementSpec {
    fn build(&self, sys: &CoxeterSystem) -> CliResult<GroupElement> {
        match (&self.word, &self.perm) {
            (Some(word), None) => {
                let word = sys.alphabet().parse_word(word)?;
                Ok(sys.element_of_word(&word)?)
            }
            (None, Some(perm)) => {
                let perm = Permutation::parse(perm)?;
                Ok(perm_to_element(sys, &perm)?)
            }
            _ => unreachable!("clap enforces exactly one of --word/--perm"),
        }
    }
}

fn load_alphabet(path: &Path) -> CliResult<Alphabet> {
    Ok(Alphabet::from_json(&read_file(path)?)?)
}

// ---------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------

fn print_json(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("JSON rendering cannot fail"));
}

fn cmd_poset(input: &TraceInput, format: Format) -> CliResult<()> {
    let alphabet = load_alphabet(&input.alphabet)?;
    let word = alphabet.parse_word(&input.word)?;
    let poset = build_poset(&word, &alphabet)?;
    match format {
        Format::Dot => print!("{}", poset.to_dot(&alphabet)),
        Format::Json => {
            let covers: Vec<[usize; 2]> =
                poset.covers().iter().map(|&(u, v)| [u + 1, v + 1]).collect();
            print_json(serde_json::json!({
                "word": alphabet.word_names(&word),
                "size": poset.size(),
                "covers": covers,
            }));
        }
        Format::Text => {
            println!("word: {}", alphabet.format_word(&word));
            println!("size: {}", poset.size());
            for (u, &label) in poset.labels().iter().enumerate() {
                println!("{}: {}", u + 1, alphabet.name(label));
            }
            println!("covers:");
            for &(u, v) in poset.covers() {
                println!("{} < {}", u + 1, v + 1);
            }
        }
    }
    Ok(())
}

fn cmd_class(input: &TraceInput, format: Format, budget: Option<usize>) -> CliResult<()> {
    no_dot(format)?;
    let alphabet = load_alphabet(&input.alphabet)?;
    let word = alphabet.parse_word(&input.word)?;
    let class = commutation_class_bfs(&word, &alphabet, class_budget(budget)?)?;
    match format {
        Format::Json => {
            let words: Vec<Vec<String>> =
                class.iter().map(|w| alphabet.word_names(w)).collect();
            print_json(serde_json::json!({ "words": words, "count": class.len() }));
        }
        _ => {
            for member in &class {
                println!("{}", alphabet.format_word(member));
            }
            println!("total: {}", class.len());
        }
    }
    Ok(())
}

fn cmd_check(system: &SystemSpec, word: &str, format: Format) -> CliResult<()> {
    no_dot(format)?;
    let sys = system.build()?;
    let word = sys.alphabet().parse_word(word)?;
    let reduced = sys.is_reduced(&word)?;
    match format {
        Format::Json => print_json(serde_json::json!({ "reduced": reduced })),
        _ => println!("{reduced}"),
    }
    Ok(())
}

fn cmd_count_reduced(
    system: &SystemSpec,
    element: &ElementSpec,
    format: Format,
    budget: Option<usize>,
) -> CliResult<()> {
    no_dot(format)?;
    let sys = system.build()?;
    let g = element.build(&sys)?;
    let count = g.count_reduced_words(memo_budget(budget)?)?;
    match format {
        Format::Json => print_json(serde_json::json!({
            "canonical_word": sys.alphabet().word_names(g.canonical_reduced_word()),
            "count": count.to_string(),
        })),
        _ => println!("{count}"),
    }
    Ok(())
}

fn cmd_classes(
    system: &SystemSpec,
    element: &ElementSpec,
    format: Format,
    budget: Option<usize>,
) -> CliResult<()> {
    no_dot(format)?;
    let sys = system.build()?;
    let g = element.build(&sys)?;
    let classes = enumerate_commutation_classes(&g, class_budget(budget)?)?;
    match format {
        Format::Json => {
            let words: Vec<Vec<String>> = classes
                .iter()
                .map(|(w, _)| sys.alphabet().word_names(w))
                .collect();
            print_json(serde_json::json!({ "classes": words, "count": classes.len() }));
        }
        _ => {
            for (word, _) in &classes {
                println!("{}", sys.alphabet().format_word(word));
            }
            println!("total: {}", classes.len());
        }
    }
    Ok(())
}

fn cmd_cset(
    system: &SystemSpec,
    element: &ElementSpec,
    format: Format,
    budget: Option<usize>,
) -> CliResult<()> {
    no_dot(format)?;
    let sys = system.build()?;
    let g = element.build(&sys)?;
    let cset = c_set(&g, memo_budget(budget)?)?;
    match format {
        Format::Json => {
            let lambdas: Vec<serde_json::Value> =
                cset.lambdas().iter().map(|l| l.to_json_value()).collect();
            print_json(serde_json::json!({
                "canonical_word": sys.alphabet().word_names(g.canonical_reduced_word()),
                "count": cset.count(),
                "lambdas": lambdas,
            }));
        }
        _ => {
            println!(
                "element: {}",
                sys.alphabet().format_word(g.canonical_reduced_word())
            );
            for lambda in cset.lambdas() {
                println!("{lambda}");
            }
            println!("total: {}", cset.count());
        }
    }
    Ok(())
}

fn cmd_recurrence(
    system: &SystemSpec,
    element: &ElementSpec,
    format: Format,
    budget: Option<usize>,
) -> CliResult<()> {
    no_dot(format)?;
    let sys = system.build()?;
    let g = element.build(&sys)?;
    let expansion = c_count_expansion(&g, memo_budget(budget)?)?;
    let subset_names = |subset: &[usize]| -> Vec<String> {
        subset.iter().map(|&s| sys.alphabet().name(s).to_string()).collect()
    };
    match format {
        Format::Json => {
            let terms: Vec<serde_json::Value> = expansion
                .terms
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "subset": subset_names(&t.subset),
                        "sign": t.sign,
                        "count": t.count.to_string(),
                    })
                })
                .collect();
            print_json(serde_json::json!({
                "canonical_word": sys.alphabet().word_names(g.canonical_reduced_word()),
                "total": expansion.total.to_string(),
                "terms": terms,
            }));
        }
        _ => {
            println!("total: {}", expansion.total);
            for term in &expansion.terms {
                let sign = if term.sign >= 0 { '+' } else { '-' };
                println!("{sign} {{{}}} -> {}", subset_names(&term.subset).join(" "), term.count);
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Selftest
// ---------------------------------------------------------------------

fn expect(check: bool, what: &str, draw: usize) -> CliResult<()> {
    if check {
        Ok(())
    } else {
        Err(CliError::Check(format!("selftest failed: {what} (draw {draw})")))
    }
}

/// Seeded sampling checks: exact form invariance and inversion-set laws in
/// five systems, and agreement of linear-extension enumeration with the
/// rewriting oracle over random alphabets.
fn cmd_selftest(seed: u64, draws: usize) -> CliResult<()> {
    let draws = positive("--draws", draws)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let systems = [
        CoxeterSystem::type_a(3)?,
        CoxeterSystem::type_b(3)?,
        CoxeterSystem::type_h(3)?,
        CoxeterSystem::dihedral(Order::Finite(7))?,
        CoxeterSystem::dihedral(Order::Infinite)?,
    ];
    for draw in 0..draws {
        let sys = &systems[draw % systems.len()];
        let len = rng.gen_range(0..=8);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(0..sys.n())).collect();
        let g = sys.element_of_word(&Word::new(letters))?;
        let (s, t) = (rng.gen_range(0..sys.n()), rng.gen_range(0..sys.n()));
        expect(
            &sys.form(&g.root_image(s), &g.root_image(t)) == sys.bilinear(s, t),
            "form invariance",
            draw,
        )?;
        let inversions = sys.inversion_set(g.canonical_reduced_word())?;
        expect(inversions.len() == g.length(), "inversion count = length", draw)?;
        for root in &inversions {
            expect(root.sign_class()? == RootSign::Positive, "positive inversion root", draw)?;
        }
    }
    println!("group invariants: {draws} draws ok");

    for draw in 0..draws {
        let names: Vec<String> = (0..4).map(|i| format!("g{i}")).collect();
        let mut pairs = Vec::new();
        for a in 0..4usize {
            for b in a + 1..4 {
                if rng.gen::<bool>() {
                    pairs.push((a, b));
                }
            }
        }
        let alphabet = Alphabet::new(names, &pairs)?;
        let len = rng.gen_range(0..=6);
        let word = Word::new((0..len).map(|_| rng.gen_range(0..4)).collect());
        let poset = build_poset(&word, &alphabet)?;
        let by_extension: std::collections::BTreeSet<Word> = poset
            .enumerate_words(DEFAULT_WORD_BUDGET)?
            .into_iter()
            .collect();
        let by_bfs = commutation_class_bfs(&word, &alphabet, DEFAULT_WORD_BUDGET)?;
        expect(by_extension == by_bfs, "extension set = rewriting class", draw)?;
        expect(
            poset.count_linear_extensions(DEFAULT_DOWNSET_BUDGET)?
                == num_bigint::BigUint::from(by_bfs.len()),
            "extension count = class size",
            draw,
        )?;
    }
    println!("class enumeration: {draws} draws ok");
    println!("selftest: ok (seed {seed})");
    Ok(())
}

// ---------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Poset { input, format } => cmd_poset(input, *format),
        Command::Class { input, format, budget_class } => {
            cmd_class(input, *format, *budget_class)
        }
        Command::Coxeter(sub) => match sub {
            CoxeterCommand::Check { system, word, format } => cmd_check(system, word, *format),
            CoxeterCommand::CountReduced { system, element, format, budget_memo } => {
                cmd_count_reduced(system, element, *format, *budget_memo)
            }
            CoxeterCommand::Classes { system, element, format, budget_class } => {
                cmd_classes(system, element, *format, *budget_class)
            }
            CoxeterCommand::Cset { system, element, format, budget_memo } => {
                cmd_cset(system, element, *format, *budget_memo)
            }
            CoxeterCommand::Recurrence { system, element, format, budget_memo } => {
                cmd_recurrence(system, element, *format, *budget_memo)
            }
        },
        Command::Selftest { seed, draws } => cmd_selftest(*seed, *draws),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

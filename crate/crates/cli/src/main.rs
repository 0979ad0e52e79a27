//! `csf`: build and export seeds, print gradings and run verification suites.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use csf_core::export::{seed_to_dot, seed_to_json_string};
use csf_core::grading::{
    assign_conf3_gradings, check_face_identity, check_recursive_identity, conf4_gradings,
    gradings_for_reduced_seed, mutate_graded, Gradings,
};
use csf_core::quiver::{build_borel_quiver, build_conf3_quiver, build_conf4_quiver};
use csf_core::realization::{check_twist, sample_bruhat, verify_exchange};
use csf_core::word::{enumerate_reduced_words_with_limit, parse_letters, sign_sequence, DEFAULT_ENUMERATION_RANK};
use csf_core::{CartanData, DoubleWord, DynkinType, Error, ReducedWord, Seed, VertexId};

/// Environment variable lifting the rank limit of `--all-words`.
const MAX_RANK_ENV: &str = "CSF_MAX_RANK";

/// Mutations per random sequence in the mutation suite.
const MUTATION_STEPS: usize = 10;

#[derive(Parser)]
#[command(name = "csf", version, about = "Cluster seeds for reduced words of the longest Weyl element")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct WordArgs {
    /// Dynkin type letter (A to G).
    #[arg(long = "type", value_parser = parse_type)]
    kind: DynkinType,
    /// Rank of the root system.
    #[arg(long)]
    rank: usize,
    /// Comma-separated letters; defaults to the canonical word. Double words
    /// use negative letters for the first factor.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Borel,
    Conf3,
    Conf4,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Fact,
    Recursive,
    Face,
    Mutation,
    Exchange,
    Twist,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build a seed and export it.
    Quiver {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_enum, default_value = "borel")]
        space: SpaceArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a seed together with the grading of every vertex.
    Grade {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_enum, default_value = "conf3")]
        space: SpaceArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites; prints JSON lines, exits 0 iff all pass.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        word: WordArgs,
        /// Check every reduced word of the longest element.
        #[arg(long, conflicts_with = "word")]
        all_words: bool,
        /// Random points or mutation sequences per word.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the twist formula with the direct transporter at random points.
    Twist {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mutate a seed at the given vertices in order and export the result.
    Mutate {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_enum, default_value = "conf3")]
        space: SpaceArg,
        /// Vertex id such as `2.1`; repeat for a sequence.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_type(s: &str) -> Result<DynkinType, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => DynkinType::from_letter(c.to_ascii_uppercase()).ok_or_else(|| format!("unknown type {s}")),
        _ => Err(format!("expected a single letter, got {s}")),
    }
}

/// Failure of a command: usage errors exit with 2, others with 1.
enum Failure {
    Usage(String),
    Engine(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<bool, Failure>;

impl WordArgs {
    fn cartan(&self) -> Result<Arc<CartanData>, Failure> {
        Ok(Arc::new(CartanData::new(self.kind, self.rank)?))
    }

    fn reduced_word(&self) -> Result<ReducedWord, Failure> {
        let cartan = self.cartan()?;
        match &self.word {
            Some(w) => Ok(ReducedWord::from_signed(cartan, &parse_letters(w)?)?),
            None => Ok(ReducedWord::canonical(cartan)),
        }
    }

    fn double_word(&self) -> Result<DoubleWord, Failure> {
        let cartan = self.cartan()?;
        let letters = match &self.word {
            Some(w) => parse_letters(w)?,
            None => {
                let w0 = cartan.canonical_w0_word();
                w0.iter()
                    .map(|&i| -(i as i64))
                    .chain(w0.iter().map(|&i| i as i64))
                    .collect()
            }
        };
        Ok(DoubleWord::new(cartan, letters)?)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn build(word: &WordArgs, space: SpaceArg) -> Result<Seed, Failure> {
    Ok(match space {
        SpaceArg::Borel => build_borel_quiver(&word.reduced_word()?)?,
        SpaceArg::Conf3 => build_conf3_quiver(&word.reduced_word()?)?,
        SpaceArg::Conf4 => build_conf4_quiver(&word.double_word()?)?,
    })
}

fn graded(word: &WordArgs, space: SpaceArg) -> Result<(Seed, Gradings), Failure> {
    Ok(match space {
        SpaceArg::Borel => {
            let w = word.reduced_word()?;
            let seed = build_borel_quiver(&w)?;
            let g = gradings_for_reduced_seed(&seed, &w)?;
            (seed, g)
        }
        SpaceArg::Conf3 => assign_conf3_gradings(&word.reduced_word()?)?,
        SpaceArg::Conf4 => conf4_gradings(&word.double_word()?)?,
    })
}

fn render(seed: &Seed, gradings: Option<&Gradings>, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => seed_to_json_string(seed, gradings)? + "\n",
        Format::Dot => seed_to_dot(seed),
    })
}

fn cmd_quiver(word: &WordArgs, space: SpaceArg, format: Format, out: Option<&PathBuf>) -> CmdResult {
    let seed = build(word, space)?;
    emit(&render(&seed, None, format)?, out)?;
    Ok(true)
}

fn cmd_grade(word: &WordArgs, space: SpaceArg, out: Option<&PathBuf>) -> CmdResult {
    let (seed, g) = graded(word, space)?;
    emit(&render(&seed, Some(&g), Format::Json)?, out)?;
    Ok(true)
}

fn cmd_mutate(word: &WordArgs, space: SpaceArg, at: &[String], format: Format, out: Option<&PathBuf>) -> CmdResult {
    let ids = at
        .iter()
        .map(|s| s.parse::<VertexId>())
        .collect::<Result<Vec<_>, _>>()?;
    // gradings follow mutations only where the face identity guarantees it
    let text = if matches!(space, SpaceArg::Conf3) {
        let (mut seed, mut g) = graded(word, space)?;
        for id in &ids {
            (seed, g) = mutate_graded(&seed, &g, id)?;
        }
        render(&seed, Some(&g), format)?
    } else {
        let mut seed = build(word, space)?;
        for id in &ids {
            seed = seed.mutate(id)?;
        }
        render(&seed, None, format)?
    };
    emit(&text, out)?;
    Ok(true)
}

/// Collects report lines and the overall verdict.
struct Reporter {
    total: usize,
    failed: usize,
    out: io::StdoutLock<'static>,
}

impl Reporter {
    fn new() -> Self {
        Reporter {
            total: 0,
            failed: 0,
            out: io::stdout().lock(),
        }
    }

    fn line(&mut self, check: &str, inputs: Value, pass: bool, expected: Value, actual: Value) -> io::Result<()> {
        self.total += 1;
        if !pass {
            self.failed += 1;
        }
        let v = json!({"check": check, "inputs": inputs, "pass": pass, "expected": expected, "actual": actual});
        writeln!(self.out, "{v}")
    }

    fn finish(mut self) -> io::Result<bool> {
        let pass = self.failed == 0;
        let v = json!({"check": "summary", "total": self.total, "failed": self.failed, "pass": pass});
        writeln!(self.out, "{v}")?;
        Ok(pass)
    }
}

fn max_rank() -> usize {
    std::env::var(MAX_RANK_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_RANK)
}

fn words_for(word: &WordArgs, all: bool) -> Result<Vec<ReducedWord>, Failure> {
    if all {
        Ok(enumerate_reduced_words_with_limit(&word.cartan()?, max_rank())?)
    } else {
        Ok(vec![word.reduced_word()?])
    }
}

fn letters(w: &ReducedWord) -> Value {
    json!(w.letters())
}

fn suite_fact(words: &[ReducedWord], rep: &mut Reporter) -> io::Result<()> {
    for w in words {
        let bad: Vec<String> = w
            .cartan()
            .positive_roots()
            .iter()
            .filter(|a| {
                let s = sign_sequence(w.cartan(), w.letters(), a);
                s.windows(2).filter(|p| p[0] != p[1]).count() != 1
            })
            .map(ToString::to_string)
            .collect();
        let roots = w.cartan().num_positive_roots();
        rep.line(
            "fact",
            json!({"word": letters(w)}),
            bad.is_empty(),
            json!({"roots": roots, "sign_changes_each": 1}),
            json!({"roots": roots, "violating_roots": bad}),
        )?;
    }
    Ok(())
}

fn suite_recursive(words: &[ReducedWord], rep: &mut Reporter) -> io::Result<()> {
    for w in words {
        let r = check_recursive_identity(w);
        rep.line(
            "recursive",
            json!({"word": letters(w)}),
            r.passed(),
            json!({"positions": w.len(), "violations": 0}),
            json!({"positions": r.checked, "violations": r.violations}),
        )?;
    }
    Ok(())
}

fn suite_face(words: &[ReducedWord], rep: &mut Reporter) -> Result<(), Failure> {
    for w in words {
        let (seed, g) = assign_conf3_gradings(w)?;
        let r = check_face_identity(&seed, &g)?;
        rep.line(
            "face",
            json!({"word": letters(w)}),
            r.passed(),
            json!({"vertices": seed.len(), "violations": 0}),
            json!({
                "unfrozen": r.unfrozen.checked,
                "frozen": r.frozen.checked,
                "violations": r.unfrozen.violations.iter().chain(&r.frozen.violations).collect::<Vec<_>>(),
            }),
        )?;
    }
    Ok(())
}

fn suite_mutation(words: &[ReducedWord], trials: usize, seed: u64, rep: &mut Reporter) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for w in words {
        let (start, g0) = assign_conf3_gradings(w)?;
        if start.unfrozen_ids().is_empty() {
            continue;
        }
        for trial in 0..trials {
            let (mut s, mut g) = (start.clone(), g0.clone());
            let mut path = Vec::new();
            let mut ok = true;
            for _ in 0..MUTATION_STEPS {
                let ids = s.unfrozen_ids();
                let k = ids[rng.gen_range(0..ids.len())];
                path.push(k.to_string());
                let (s2, g2) = mutate_graded(&s, &g, &k)?;
                ok &= s2.is_skew_symmetrizable() && s2.mutate(&k)? == s;
                ok &= check_face_identity(&s2, &g2)?.unfrozen.passed();
                s = s2;
                g = g2;
            }
            rep.line(
                "mutation",
                json!({"word": letters(w), "trial": trial, "path": path}),
                ok,
                json!("involutive, skew-symmetrizable, unfrozen zero-sums"),
                json!(ok),
            )?;
        }
    }
    Ok(())
}

fn suite_exchange(words: &[ReducedWord], trials: usize, seed: u64, rep: &mut Reporter) -> Result<(), Failure> {
    for w in words {
        let quiver = build_conf3_quiver(w)?;
        for t in 0..trials {
            let point = sample_bruhat(w, seed.wrapping_add(t as u64))?;
            for k in quiver.unfrozen_ids() {
                let r = verify_exchange(w, &point.matrix, &k)?;
                rep.line(
                    "exchange",
                    json!({"word": letters(w), "point": point.matrix, "vertex": k.to_string()}),
                    r.passed,
                    json!({"plus": r.plus, "minus": r.minus}),
                    json!({"method": r.method, "a_k": r.a_k, "a_k_new": r.a_k_new}),
                )?;
            }
        }
    }
    Ok(())
}

fn suite_twist(words: &[ReducedWord], trials: usize, seed: u64, rep: &mut Reporter) -> Result<(), Failure> {
    for w in words {
        for t in 0..trials {
            let point = sample_bruhat(w, seed.wrapping_add(t as u64))?;
            let r = check_twist(w, &point.matrix)?;
            rep.line(
                "twist",
                json!({"word": letters(w), "point": point.matrix}),
                r.passed(),
                json!({"gamma": r.formula, "gamma_prime_relation": true}),
                json!({"gamma": r.direct, "gamma_prime_relation": r.gamma_prime_ok, "b": r.b}),
            )?;
        }
    }
    Ok(())
}

fn cmd_verify(suite: Suite, word: &WordArgs, all: bool, trials: usize, seed: u64) -> CmdResult {
    let type_a = word.kind == DynkinType::A;
    if matches!(suite, Suite::Exchange | Suite::Twist) && !type_a {
        return Err(Failure::Usage(format!(
            "suite {:?} needs type A, got {}",
            suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
            word.kind
        )));
    }
    let words = words_for(word, all)?;
    let mut rep = Reporter::new();
    let run = |s: Suite| suite == s || suite == Suite::All;
    if run(Suite::Fact) {
        suite_fact(&words, &mut rep)?;
    }
    if run(Suite::Recursive) {
        suite_recursive(&words, &mut rep)?;
    }
    if run(Suite::Face) {
        suite_face(&words, &mut rep)?;
    }
    if run(Suite::Mutation) {
        suite_mutation(&words, trials, seed, &mut rep)?;
    }
    if run(Suite::Exchange) && type_a {
        suite_exchange(&words, trials, seed, &mut rep)?;
    }
    if run(Suite::Twist) && type_a {
        suite_twist(&words, trials, seed, &mut rep)?;
    }
    Ok(rep.finish()?)
}

fn cmd_twist(word: &WordArgs, trials: usize, seed: u64) -> CmdResult {
    if word.kind != DynkinType::A {
        return Err(Failure::Usage(format!("twist needs type A, got {}", word.kind)));
    }
    let w = word.reduced_word()?;
    let mut all = true;
    let mut out = io::stdout().lock();
    for t in 0..trials {
        let point = sample_bruhat(&w, seed.wrapping_add(t as u64))?;
        let r = check_twist(&w, &point.matrix)?;
        all &= r.passed();
        let v = json!({
            "trial": t,
            "point": point.matrix,
            "b": r.b,
            "gamma": r.formula,
            "gamma_direct": r.direct,
            "gamma_prime_relation": r.gamma_prime_ok,
            "pass": r.passed(),
        });
        writeln!(out, "{v}")?;
    }
    Ok(all)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Quiver {
            word,
            space,
            format,
            out,
        } => cmd_quiver(&word, space, format, out.as_ref()),
        Command::Grade { word, space, out } => cmd_grade(&word, space, out.as_ref()),
        Command::Verify {
            suite,
            word,
            all_words,
            trials,
            seed,
        } => cmd_verify(suite, &word, all_words, trials, seed),
        Command::Twist { word, trials, seed } => cmd_twist(&word, trials, seed),
        Command::Mutate {
            word,
            space,
            at,
            format,
            out,
        } => cmd_mutate(&word, space, &at, format, out.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

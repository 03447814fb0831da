//! `sctk`: command-line front end.
//!
//! Exit codes: 0 when the command succeeds or the checked property holds,
//! 1 when the property fails or the languages differ, 2 for usage, parse and
//! precondition errors.

mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sctk::decentralized::{self, replay, Claim, ReplicationConfig};
use sctk::oracle::{self, InstanceConfig};
use sctk::{format, Generator, IccMode, LanguageKind, ObservableSet, Witness};

use report::{language_sample, witness_json};

#[derive(Parser)]
#[command(name = "sctk", version, about = "Supervisory control toolkit for discrete-event systems")]
struct Cli {
    /// Also write a JSON report of the result to this file.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Out {
    /// Write the resulting automaton here instead of standard output.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Obs {
    /// Observable events, comma separated. Defaults to the events flagged `o`.
    #[arg(long, value_name = "LABELS")]
    obs: Option<String>,
}

#[derive(Args)]
struct Mode {
    /// Reading of the controllable-event clause of ICC.
    #[arg(long, default_value_t = IccMode::Literal, value_name = "literal|agreement")]
    mode: IccMode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Marked,
    Closed,
}

impl From<Which> for LanguageKind {
    fn from(w: Which) -> Self {
        match w {
            Which::Marked => LanguageKind::Marked,
            Which::Closed => LanguageKind::Closed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Gcc,
    Occ,
    Observer,
    Normal,
    Paranormal,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and print a summary.
    Validate { file: PathBuf },
    /// Remove states that are not reachable or not coreachable.
    Trim {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Check that every reachable state can reach a marked state.
    Nonblocking { file: PathBuf },
    /// Synchronous product.
    Sync {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Product of two generators over the same alphabet.
    Meet {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Natural projection onto the observable events.
    Project {
        file: PathBuf,
        #[command(flatten)]
        obs: Obs,
        #[command(flatten)]
        out: Out,
    },
    /// Inverse projection onto the alphabet of another file.
    Invproject {
        file: PathBuf,
        /// Automaton file whose alphabet is the target.
        #[arg(long, value_name = "FILE")]
        alphabet: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Supremal controllable sublanguage of the specification.
    Supcon {
        #[arg(long)]
        plant: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Check that the marked language of a candidate is controllable.
    Controllable {
        #[arg(long)]
        cand: PathBuf,
        #[arg(long)]
        plant: PathBuf,
    },
    /// Check a consistency property of the projection.
    Check {
        property: Property,
        /// The plant.
        file: PathBuf,
        #[command(flatten)]
        obs: Obs,
        #[command(flatten)]
        mode: Mode,
        /// Language for the observer property.
        #[arg(long, value_enum, default_value = "marked")]
        which: Which,
        /// Candidate sublanguage for normality and paranormality.
        #[arg(long, value_name = "FILE")]
        cand: Option<PathBuf>,
    },
    /// Search for an observable alphabet under which the projection is GCC.
    FindGccAlphabet {
        file: PathBuf,
        #[command(flatten)]
        mode: Mode,
    },
    /// Print the cover cells.
    Cover {
        file: PathBuf,
        #[command(flatten)]
        obs: Obs,
        #[command(flatten)]
        mode: Mode,
    },
    /// Build the reduced plant over the observable events.
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        obs: Obs,
        #[command(flatten)]
        mode: Mode,
        #[command(flatten)]
        out: Out,
    },
    /// Synthesize the supervisor on the reduced plant.
    Decsup {
        #[arg(long)]
        plant: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        obs: Obs,
        #[command(flatten)]
        mode: Mode,
        #[command(flatten)]
        out: Out,
    },
    /// Synthesize the supervisor on the full plant.
    Monosup {
        #[arg(long)]
        plant: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        obs: Obs,
        #[command(flatten)]
        out: Out,
    },
    /// Compare monolithic and decentralized supervision.
    #[command(subcommand)]
    Verify(Verify),
    /// Run the randomized replication harness.
    Replicate {
        /// Claims to test, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "prop1,prop2,corollary1,lemma1,theorem1")]
        claims: Vec<Claim>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        mode: Mode,
        /// Failures recorded and minimized per claim.
        #[arg(long, default_value_t = 5)]
        max_counterexamples: usize,
    },
    /// Compare the languages of two generators.
    Compare {
        #[arg(long, value_enum, default_value = "marked")]
        which: Which,
        a: PathBuf,
        b: PathBuf,
    },
    /// Emit a Graphviz description.
    Dot {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Whether the monolithic and lifted decentralized supervisors mark the
    /// same language.
    Theorem1 {
        #[arg(long)]
        plant: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        obs: Obs,
        #[command(flatten)]
        mode: Mode,
    },
    /// Whether a supervisor over the observable events is nonblocking
    /// alongside the plant.
    Lemma1 {
        #[arg(long)]
        plant: PathBuf,
        #[arg(long)]
        sup0: PathBuf,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Option<PathBuf>, sctk::Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(Some(path), e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(None, e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<sctk::Error> for CliError {
    fn from(e: sctk::Error) -> Self {
        CliError::Core(None, e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command produced: exit code, text for standard output, and the
/// report payload.
struct Done {
    code: u8,
    text: String,
    result: Value,
    mode: Option<IccMode>,
    seed: Option<u64>,
}

impl Done {
    fn new(code: u8, text: String, result: Value) -> Self {
        Self {
            code,
            text,
            result,
            mode: None,
            seed: None,
        }
    }

    fn with_mode(mut self, mode: IccMode) -> Self {
        self.mode = Some(mode);
        self
    }
}

fn load(path: &Path) -> CliResult<Generator> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    format::parse(&text).map_err(|e| CliError::Core(Some(path.to_owned()), e))
}

fn observable(obs: &Obs, g: &Generator) -> CliResult<ObservableSet> {
    let s = match &obs.obs {
        Some(list) => ObservableSet::parse(list)?,
        None => ObservableSet::default_of(g.alphabet()),
    };
    s.validate(g.alphabet())?;
    Ok(s)
}

fn labels(s: &ObservableSet) -> Vec<&str> {
    s.labels().iter().map(String::as_str).collect()
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))
}

/// Emit a generator to `-o` or standard output.
fn emit(g: &Generator, out: &Out, extra: &str) -> CliResult<Done> {
    let body = format::to_text(g);
    let summary = json!({
        "name": g.name(),
        "states": g.state_count(),
        "transitions": g.transition_count(),
        "marked": g.marked().len(),
    });
    let text = match &out.output {
        Some(path) => {
            write_file(path, &body)?;
            format!(
                "{extra}wrote {} ({} states, {} transitions)\n",
                path.display(),
                g.state_count(),
                g.transition_count()
            )
        }
        None => format!("{extra}{body}"),
    };
    Ok(Done::new(0, text, json!({ "automaton": summary })))
}

fn verdict_line(name: &str, holds: bool, witness: &Option<Witness>) -> String {
    match witness {
        Some(w) => format!("{name}: {holds}\nwitness: {w}\n"),
        None => format!("{name}: {holds}\n"),
    }
}

fn property_result(name: &str, (holds, witness): (bool, Option<Witness>), extra: Value) -> Done {
    let text = verdict_line(name, holds, &witness);
    let mut result = json!({ "property": name, "holds": holds, "witness": witness_json(&witness) });
    if let (Value::Object(m), Value::Object(e)) = (&mut result, extra) {
        m.extend(e);
    }
    Done::new(u8::from(!holds), text, result)
}

fn run(command: Command) -> CliResult<Done> {
    match command {
        Command::Validate { file } => {
            let g = load(&file)?;
            let (nonblocking, _) = sctk::is_nonblocking(&g);
            let text = format!(
                "{}: {} events, {} states, {} transitions, {} marked, {}\n",
                g.name(),
                g.alphabet().len(),
                g.state_count(),
                g.transition_count(),
                g.marked().len(),
                if nonblocking { "nonblocking" } else { "blocking" }
            );
            let result = json!({
                "name": g.name(),
                "events": g.alphabet().len(),
                "states": g.state_count(),
                "transitions": g.transition_count(),
                "marked": g.marked().len(),
                "nonblocking": nonblocking,
            });
            Ok(Done::new(0, text, result))
        }
        Command::Trim { file, out } => emit(&sctk::trim(&load(&file)?), &out, ""),
        Command::Nonblocking { file } => {
            let g = load(&file)?;
            Ok(property_result("nonblocking", sctk::is_nonblocking(&g), json!({})))
        }
        Command::Sync { a, b, out } => emit(&sctk::sync(&load(&a)?, &load(&b)?)?, &out, ""),
        Command::Meet { a, b, out } => emit(&sctk::meet(&load(&a)?, &load(&b)?)?, &out, ""),
        Command::Project { file, obs, out } => {
            let g = load(&file)?;
            let s = observable(&obs, &g)?;
            emit(&sctk::project(&g, &s), &out, "")
        }
        Command::Invproject {
            file,
            alphabet,
            out,
        } => {
            let g = load(&file)?;
            let full = load(&alphabet)?;
            emit(&sctk::inverse_project(&g, full.alphabet())?, &out, "")
        }
        Command::Supcon { plant, spec, out } => {
            let r = sctk::supcon(&load(&plant)?, &load(&spec)?)?;
            synthesis_done(r, &out)
        }
        Command::Controllable { cand, plant } => {
            let r = sctk::is_controllable(&load(&cand)?, &load(&plant)?)?;
            Ok(property_result("controllable", r, json!({})))
        }
        Command::Check {
            property,
            file,
            obs,
            mode,
            which,
            cand,
        } => {
            let g = load(&file)?;
            let s = observable(&obs, &g)?;
            let extra = json!({ "observable": labels(&s) });
            let candidate = || -> CliResult<Generator> {
                let path = cand
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("this check needs --cand <FILE>".into()))?;
                load(path)
            };
            let done = match property {
                Property::Gcc => property_result("gcc", sctk::check_gcc(&g, &s, mode.mode)?, extra),
                Property::Occ => property_result("occ", sctk::check_occ(&g, &s)?, extra),
                Property::Observer => {
                    let name = match which {
                        Which::Marked => "observer-marked",
                        Which::Closed => "observer-closed",
                    };
                    property_result(name, sctk::check_observer(&g, &s, which.into())?, extra)
                }
                Property::Normal => {
                    property_result("normal", sctk::check_normal(&candidate()?, &g, &s)?, extra)
                }
                Property::Paranormal => property_result(
                    "paranormal",
                    sctk::check_paranormal(&candidate()?, &g, &s)?,
                    extra,
                ),
            };
            Ok(done.with_mode(mode.mode))
        }
        Command::FindGccAlphabet { file, mode } => {
            let g = load(&file)?;
            let trace = sctk::find_gcc_alphabet(&g, mode.mode)?;
            let mut text = String::new();
            let _ = writeln!(text, "erased: {}", trace.erased.join(", "));
            for r in &trace.rejected {
                let _ = writeln!(
                    text,
                    "kept {}: states ({}, {}) at stage {}: {}",
                    r.label, r.states.0, r.states.1, r.stage, r.violation
                );
            }
            let _ = writeln!(text, "observable: {}", trace.result);
            let result = serde_json::to_value(&trace).expect("serializable");
            Ok(Done::new(0, text, result).with_mode(mode.mode))
        }
        Command::Cover { file, obs, mode } => {
            let g = load(&file)?;
            let s = observable(&obs, &g)?;
            let cover = sctk::build_cover(&g, &s, mode.mode)?;
            let mut text = String::new();
            for (i, c) in cover.cells().iter().enumerate() {
                let members: Vec<String> = c.iter().map(|q| q.to_string()).collect();
                let _ = writeln!(text, "cell {i}: {{{}}}", members.join(", "));
            }
            let result = json!({ "observable": labels(&s), "cells": cover.cells() });
            Ok(Done::new(0, text, result).with_mode(mode.mode))
        }
        Command::Reduce {
            file,
            obs,
            mode,
            out,
        } => {
            let g = load(&file)?;
            let s = observable(&obs, &g)?;
            let cover = sctk::build_cover(&g, &s, mode.mode)?;
            let reduced = sctk::reduce_plant(&g, &cover)?;
            Ok(emit(&reduced.generator, &out, "")?.with_mode(mode.mode))
        }
        Command::Decsup {
            plant,
            spec,
            obs,
            mode,
            out,
        } => {
            let g = load(&plant)?;
            let s = observable(&obs, &g)?;
            let r = sctk::decentralized_supcon(&g, &load(&spec)?, &s, mode.mode)?;
            Ok(synthesis_done(r, &out)?.with_mode(mode.mode))
        }
        Command::Monosup {
            plant,
            spec,
            obs,
            out,
        } => {
            let g = load(&plant)?;
            let s = observable(&obs, &g)?;
            synthesis_done(sctk::monolithic_supcon(&g, &load(&spec)?, &s)?, &out)
        }
        Command::Verify(Verify::Theorem1 {
            plant,
            spec,
            obs,
            mode,
        }) => verify_theorem1(&load(&plant)?, &load(&spec)?, &obs, mode.mode),
        Command::Verify(Verify::Lemma1 { plant, sup0 }) => verify_lemma1(&load(&plant)?, &load(&sup0)?),
        Command::Replicate {
            claims,
            trials,
            seed,
            mode,
            max_counterexamples,
        } => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let cfg = ReplicationConfig {
                claims,
                trials,
                seed,
                mode: mode.mode,
                instances: InstanceConfig::default(),
                max_counterexamples,
            };
            replicate(&cfg)
        }
        Command::Compare { which, a, b } => {
            let c = sctk::language_compare(&load(&a)?, &load(&b)?, which.into());
            let mut text = format!("verdict: {}\n", c.verdict);
            if let Some(w) = &c.only_left {
                let _ = writeln!(text, "only in {}: {}", a.display(), sctk::display_word(w));
            }
            if let Some(w) = &c.only_right {
                let _ = writeln!(text, "only in {}: {}", b.display(), sctk::display_word(w));
            }
            let code = u8::from(!c.is_equal());
            Ok(Done::new(code, text, serde_json::to_value(&c).expect("serializable")))
        }
        Command::Dot { file, out } => {
            let body = report::dot(&load(&file)?);
            match &out.output {
                Some(path) => {
                    write_file(path, &body)?;
                    Ok(Done::new(0, format!("wrote {}\n", path.display()), Value::Null))
                }
                None => Ok(Done::new(0, body, Value::Null)),
            }
        }
    }
}

fn synthesis_done(r: sctk::SynthesisResult, out: &Out) -> CliResult<Done> {
    let mut extra = String::new();
    if out.output.is_some() {
        let _ = writeln!(extra, "empty: {}", r.empty);
        for (q, l) in &r.disabled {
            let _ = writeln!(extra, "disable {l} at {q}");
        }
    }
    let mut done = emit(&r.supervisor, out, &extra)?;
    if let Value::Object(m) = &mut done.result {
        m.insert("empty".into(), json!(r.empty));
        m.insert("disabled".into(), json!(r.disabled));
    }
    Ok(done)
}

/// Oracle verdict when the plant is acyclic.
fn theorem1_oracle(g: &Generator, e: &Generator, s: &ObservableSet) -> CliResult<Option<bool>> {
    if !sctk::is_acyclic(g) {
        return Ok(None);
    }
    let k0 = oracle::brute_decentralized(g, e, s)?;
    Ok(Some(oracle::brute_monolithic(g, e)? == oracle::brute_lift_into(g, &k0, s)?))
}

fn verify_theorem1(g: &Generator, e: &Generator, obs: &Obs, mode: IccMode) -> CliResult<Done> {
    let s = observable(obs, g)?;
    let record = sctk::verify_theorem1(g, e, &s, mode)?;
    let oracle = theorem1_oracle(g, e, &s)?;
    if oracle.is_some_and(|o| o != record.equal) {
        return Err(CliError::Usage(
            "internal error: synthesis and brute-force oracle disagree".into(),
        ));
    }
    let c = &record.comparison;
    let mut text = String::new();
    let _ = writeln!(text, "gcc: {}", record.gcc);
    let _ = writeln!(text, "equal: {}", record.equal);
    let _ = writeln!(text, "verdict: {}", c.verdict);
    if let Some(w) = &c.only_left {
        let _ = writeln!(text, "only in L_m(SUP): {}", sctk::display_word(w));
    }
    if let Some(w) = &c.only_right {
        let _ = writeln!(text, "only in L_m(sync(SUP0, G)): {}", sctk::display_word(w));
    }
    text.push_str(&verdict_line("lemma1", record.lemma1, &record.lemma1_witness));
    let _ = writeln!(
        text,
        "oracle: {}",
        match oracle {
            Some(_) => "confirmed",
            None => "unavailable (cyclic plant)",
        }
    );
    let result = json!({
        "observable": labels(&s),
        "record": record,
        "sup": language_sample(&record.sup),
        "sup0": language_sample(&record.sup0),
        "lifted": language_sample(&record.lifted),
        "oracle": oracle.map(|equal| json!({ "equal": equal })),
    });
    Ok(Done::new(u8::from(!record.equal), text, result).with_mode(mode))
}

fn verify_lemma1(g: &Generator, sup0: &Generator) -> CliResult<Done> {
    let (holds, witness) = sctk::verify_lemma1(g, sup0)?;
    let s = ObservableSet::all(sup0.alphabet());
    let oracle = match (oracle::longest_path(g), oracle::longest_path(sup0)) {
        (Some(_), Some(bound)) => {
            let k0 = oracle::enumerate(sup0, LanguageKind::Marked, bound).strings;
            Some(oracle::brute_lemma1(g, &k0, &s)?.is_none())
        }
        _ => None,
    };
    if oracle.is_some_and(|o| o != holds) {
        return Err(CliError::Usage(
            "internal error: nonblocking check and brute-force oracle disagree".into(),
        ));
    }
    let mut done = property_result(
        "lemma1",
        (holds, witness),
        json!({ "oracle": oracle.map(|h| json!({ "holds": h })) }),
    );
    let _ = writeln!(
        done.text,
        "oracle: {}",
        if oracle.is_some() { "confirmed" } else { "unavailable (cyclic input)" }
    );
    Ok(done)
}

fn replicate(cfg: &ReplicationConfig) -> CliResult<Done> {
    let reports = decentralized::replicate(cfg, &[])?;
    let mut text = String::new();
    let mut replay_failures = 0;
    let mut disagreements = 0;
    let mut replays = Vec::new();
    for r in &reports {
        let mut ok = 0;
        for cx in &r.counterexamples {
            if replay(r.claim, cx, cfg.mode)? {
                ok += 1;
            }
        }
        replay_failures += r.counterexamples.len() - ok;
        disagreements += r.oracle_disagreements;
        replays.push(json!({ "claim": r.claim, "recorded": r.counterexamples.len(), "replayed": ok }));
        let _ = writeln!(
            text,
            "{:<11} trials {:>4}  holds {:>4}  fails {:>4}  skipped {:>4}  disagreements {}  counterexamples {} (replayed {})",
            r.claim.name(),
            r.trials,
            r.holds,
            r.fails,
            r.skipped,
            r.oracle_disagreements,
            r.counterexamples.len(),
            ok
        );
    }
    let result = json!({ "config": cfg, "reports": reports, "replay": replays });
    let code = u8::from(replay_failures > 0 || disagreements > 0);
    let mut done = Done::new(code, text, result).with_mode(cfg.mode);
    done.seed = Some(cfg.seed);
    Ok(done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, report_path) = (report::command_name(&cli.command), cli.report.clone());
    match run(cli.command) {
        Ok(done) => {
            print!("{}", done.text);
            if let Some(path) = report_path {
                let body = report::render(name, &done.result, done.code, done.mode, done.seed);
                if let Err(e) = write_file(&path, &body) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(done.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

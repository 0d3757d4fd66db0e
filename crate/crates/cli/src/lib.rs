//! `barker-lab` command-line front end.
//!
//! [`run`] parses arguments, performs one subcommand and returns the exit
//! code together with everything destined for stdout and stderr, so the
//! whole surface can be tested without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;

use barker_core::barker::full_report;
use barker_core::correlation::acf;
use barker_core::oddproof::{bounds_chain, lemma2_check, lemma3_breakdown, theorem_scan, WitnessAudit};
use barker_core::search::{search_barker, search_min_psl, verify_range, DEFAULT_SEED};
use barker_core::{catalogue, BinarySequence, Error, SearchMode, SearchOptions, SearchOutcome, Strategy};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GUARD_RAIL: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Environment variable holding a soft cap on search size.
pub const MAX_NODES_ENV: &str = "BARKER_LAB_MAX_NODES";

#[derive(Debug, Parser)]
#[command(name = "barker-lab", version, about = "Exact analysis and search of binary ±1 sequences")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for search subtasks.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    workers: u64,

    /// Override the length guard rails.
    #[arg(long, global = true)]
    force: bool,

    /// Seed for randomized operations.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,

    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,

    /// Soft cap on worst-case search size (also read from BARKER_LAB_MAX_NODES).
    #[arg(long, env = MAX_NODES_ENV, global = true)]
    max_nodes: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Barker,
    MinPsl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Full,
    Pruned,
    Skew,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Full => Strategy::Full,
            StrategyArg::Pruned => Strategy::Pruned,
            StrategyArg::Skew => Strategy::Skew,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Correlation profile, PSL, merit factor, runs and identity checks.
    Analyze {
        /// `+`/`-` or `1`/`0` string, or `@path` to read it from a file.
        sequence: String,
    },
    /// Identity checks plus run-structure bounds and the difference breakdown.
    VerifyLemmas { sequence: String },
    /// Search one length for Barker or minimum-PSL sequences.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        length: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Barker)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::Pruned)]
        strategy: StrategyArg,
        /// Sample budget for min-psl mode.
        #[arg(long, default_value_t = barker_core::search::DEFAULT_SAMPLE_BUDGET)]
        budget: u64,
        /// Do not fix A(1) = A(2) = +1; report raw sequences.
        #[arg(long)]
        raw: bool,
        /// Identify a sequence with the canonical form of its reversal.
        #[arg(long)]
        dedup_reversal: bool,
    },
    /// Barker counts for a range of lengths, checked against the catalogue.
    VerifyRange {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Odd lengths only, using skew-symmetric enumeration.
        #[arg(long)]
        odd_only: bool,
    },
    /// Exhaustive odd-length search next to the run-pattern case table.
    ProveOdd {
        #[arg(long)]
        max: usize,
    },
    /// The known Barker sequences with their correlation profiles.
    Table,
}

/// Exit code plus captured output.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardRail(_) => EXIT_GUARD_RAIL,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

impl Failure {
    fn invariant(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVARIANT, message: message.into() }
    }
}

type Res<T> = Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match dispatch(&cli, &mut out) {
        Ok(()) => Outcome { code: EXIT_OK, stdout: out, stderr: String::new() },
        Err(f) => Outcome { code: f.code, stdout: out, stderr: format!("error: {}\n", f.message) },
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Res<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { sequence } => analyze(g, &load_sequence(sequence)?, out),
        Command::VerifyLemmas { sequence } => verify_lemmas(g, &load_sequence(sequence)?, out),
        Command::Search { length, mode, strategy, budget, raw, dedup_reversal } => {
            let mut opts = options(g, (*strategy).into());
            opts.canonical = !raw;
            opts.dedup_reversal = *dedup_reversal;
            opts.sample_budget = opts.max_nodes.map_or(*budget, |m| m.min(*budget));
            search(g, *length as usize, *mode, &opts, out)
        }
        Command::VerifyRange { from, to, odd_only } => {
            verify(g, *from, *to, *odd_only, &options(g, Strategy::Pruned), out)
        }
        Command::ProveOdd { max } => prove_odd(g, *max, &options(g, Strategy::Skew), out),
        Command::Table => table(g, out),
    }
}

fn options(g: &GlobalOpts, strategy: Strategy) -> SearchOptions {
    SearchOptions {
        strategy,
        workers: g.workers as usize,
        allow_large: g.force,
        max_nodes: g.max_nodes,
        seed: g.seed,
        ..SearchOptions::default()
    }
}

fn load_sequence(arg: &str) -> Res<BinarySequence> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure { code: EXIT_USAGE, message: format!("{path}: {e}") })?
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect(),
        None => arg.to_string(),
    };
    Ok(BinarySequence::parse(&text)?)
}

/// Serializes through `Value`, whose maps keep keys sorted, so re-parsing and
/// re-serializing reproduces the bytes.
fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

fn push_json(out: &mut String, value: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    out.push_str(&text.expect("serializable"));
    out.push('\n');
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

// ---------------------------------------------------------------------------

fn analyze(g: &GlobalOpts, seq: &BinarySequence, out: &mut String) -> Res<()> {
    let profile = acf(seq);
    let runs = seq.runs();
    let lemmas = full_report(seq);
    match g.format {
        Format::Json => push_json(
            out,
            &json!({
                "sequence": seq,
                "correlation": to_json(&profile),
                "runs": to_json(&runs),
                "lemmas": to_json(&lemmas),
            }),
            true,
        ),
        Format::Csv => {
            out.push_str("u,c\n");
            for (u, c) in profile.values.iter().enumerate() {
                let _ = writeln!(out, "{u},{c}");
            }
        }
        Format::Text => {
            let _ = writeln!(out, "sequence      {seq}");
            let _ = writeln!(out, "n             {}", seq.len());
            let _ = writeln!(out, "acf           {}", join(&profile.values, " "));
            let _ = writeln!(out, "psl           {}", profile.psl.map_or("-".into(), |p| p.to_string()));
            let mf = profile.merit_factor.map_or("-".into(), |m| format!("{m} ({:.4})", m.to_f64()));
            let _ = writeln!(out, "merit factor  {mf}");
            let barker = lemmas.barker.is_pass();
            let _ = writeln!(out, "barker        {barker}");
            let _ = writeln!(out, "runs          ({})", join(&runs.boundaries, ","));
            let _ = writeln!(out, "run count     {}", runs.run_count);
            match (runs.e, runs.s_e, runs.v) {
                (Some(e), Some(se), Some(v)) => {
                    let _ = writeln!(out, "e, s_e, v     {e}, {se}, {v}");
                }
                _ => {
                    let _ = writeln!(out, "e             undefined");
                }
            }
            for (name, verdict) in lemmas.checks() {
                let _ = writeln!(out, "{name:<22}{verdict}");
            }
        }
    }
    if !lemmas.consistent() {
        return Err(Failure::invariant(format!("identity check failed on Barker sequence {seq}")));
    }
    Ok(())
}

fn verify_lemmas(g: &GlobalOpts, seq: &BinarySequence, out: &mut String) -> Res<()> {
    let audit = WitnessAudit::of(seq);
    let lemma3 = lemma3_breakdown(seq);
    match g.format {
        Format::Json | Format::Csv => push_json(
            out,
            &json!({
                "sequence": seq,
                "lemmas": to_json(&audit.lemmas),
                "lemma2": to_json(&lemma2_check(seq)),
                "bounds_chain": bounds_chain(seq).ok().map(|b| to_json(&b)),
                "lemma3": lemma3.as_ref().ok().map(to_json),
                "lemma3_violations": lemma3.as_ref().map(|b| b.violations()).unwrap_or_default(),
                "consistent": audit.consistent(),
            }),
            true,
        ),
        Format::Text => {
            let _ = writeln!(out, "sequence {seq} (n = {})", seq.len());
            for (name, verdict) in audit.lemmas.checks() {
                let _ = writeln!(out, "  {name:<22}{verdict}");
            }
            let l2 = &audit.lemma2;
            let _ = writeln!(out, "parity and lower bound");
            if let Some(r) = &l2.not_applicable {
                let _ = writeln!(out, "  premise               n/a: {r}");
            }
            let _ = writeln!(out, "  s_1 odd               {} (s_1 = {})", l2.s1_odd, l2.s1);
            let _ = writeln!(out, "  s_e odd               {}", l2.se_odd);
            let _ = writeln!(out, "  n >= 2 s_e - 3        {}", l2.length_bound);
            match &audit.bounds {
                Some(b) => {
                    let _ = writeln!(
                        out,
                        "bounds chain            2*{}-3 <= {} <= {}+{}+1: {} (s_e - s_1 = {})",
                        b.s_e,
                        b.n,
                        b.s1,
                        b.s_e,
                        if b.holds() { "pass" } else { "fail" },
                        b.gap
                    );
                }
                None => {
                    let _ = writeln!(out, "bounds chain            n/a: e undefined");
                }
            }
            match &lemma3 {
                Ok(b) => {
                    let _ = writeln!(out, "difference breakdown (e = {}, v = {})", b.e, b.v);
                    let _ = writeln!(out, "  applicable            {}", b.applicable);
                    if !b.reasons.is_empty() {
                        let _ = writeln!(out, "  reasons               {}", b.reasons.join("; "));
                    }
                    let opt = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
                    let _ = writeln!(out, "  delta                 {}", opt(b.delta));
                    let _ = writeln!(out, "  closed form           {}", opt(b.closed_form));
                    let _ = writeln!(out, "  S_j                   [{}]", join(&b.s_terms, ", "));
                    let _ = writeln!(out, "  R                     {}", opt(b.r_term));
                    let v = b.violations();
                    if !v.is_empty() {
                        let _ = writeln!(out, "  violations            {}", v.join("; "));
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "difference breakdown    {e}");
                }
            }
        }
    }
    if !audit.consistent() {
        return Err(Failure::invariant(format!("identity check failed on Barker sequence {seq}")));
    }
    if let Ok(b) = &lemma3 {
        if !b.violations().is_empty() {
            return Err(Failure::invariant(format!("difference identity violated: {:?}", b.violations())));
        }
    }
    Ok(())
}

fn outcome_json(o: &SearchOutcome, timing: bool) -> Value {
    let mut v = to_json(o);
    if timing {
        v["wall_ms"] = json!(o.wall_time.as_secs_f64() * 1e3);
    }
    v
}

fn search(g: &GlobalOpts, n: usize, mode: ModeArg, opts: &SearchOptions, out: &mut String) -> Res<()> {
    let outcome = match mode {
        ModeArg::Barker => search_barker(n, opts)?,
        ModeArg::MinPsl => search_min_psl(n, opts)?,
    };
    match g.format {
        Format::Json => push_json(out, &outcome_json(&outcome, g.timing), false),
        Format::Csv => {
            out.push_str("n,mode,count,best_psl,exhaustive,nodes_visited,nodes_pruned,witnesses\n");
            let mode = if outcome.mode == SearchMode::Barker { "barker" } else { "min_psl" };
            let _ = writeln!(
                out,
                "{},{mode},{},{},{},{},{},{}",
                outcome.n,
                outcome.found.len(),
                outcome.best_psl.map_or(String::new(), |p| p.to_string()),
                outcome.exhaustive,
                outcome.nodes_visited,
                outcome.nodes_pruned,
                join(&outcome.found, ";")
            );
        }
        Format::Text => {
            match outcome.mode {
                SearchMode::Barker => {
                    let _ = writeln!(out, "n = {}: {} Barker sequences", n, outcome.found.len());
                }
                SearchMode::MinPsl => {
                    let kind = if outcome.exhaustive { "exact" } else { "sampled upper bound" };
                    let _ = writeln!(out, "n = {}: best psl {} ({kind})", n, outcome.best_psl.unwrap_or(0));
                    if let Some(b) = outcome.psl_bound {
                        let _ = writeln!(out, "sqrt(2n ln 2n) = {:.3}: {}", b.bound, if b.within { "within" } else { "above" });
                    }
                }
            }
            for w in &outcome.found {
                let _ = writeln!(out, "  {w}");
            }
            let _ = writeln!(out, "nodes visited {}, pruned {}", outcome.nodes_visited, outcome.nodes_pruned);
            if g.timing {
                let _ = writeln!(out, "wall time {:.3?}", outcome.wall_time);
            }
        }
    }
    if outcome.mode == SearchMode::Barker {
        for w in &outcome.found {
            if !WitnessAudit::of(w).consistent() {
                return Err(Failure::invariant(format!("identity check failed on witness {w}")));
            }
        }
    }
    Ok(())
}

fn verify(g: &GlobalOpts, from: usize, to: usize, odd_only: bool, opts: &SearchOptions, out: &mut String) -> Res<()> {
    let summary = verify_range(from, to, odd_only, opts)?;
    match g.format {
        Format::Json => {
            for row in &summary.rows {
                push_json(out, &to_json(row), false);
            }
        }
        Format::Csv => {
            out.push_str("n,count,expected,matches,nodes_visited,nodes_pruned,witnesses\n");
            for r in &summary.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.n,
                    r.count,
                    r.expected,
                    r.matches,
                    r.nodes_visited,
                    r.nodes_pruned,
                    join(&r.witnesses, ";")
                );
            }
        }
        Format::Text => {
            let _ = writeln!(out, "{:>4} {:>6} {:>9} {:>12}  witnesses", "n", "count", "expected", "nodes");
            for r in &summary.rows {
                let _ = writeln!(
                    out,
                    "{:>4} {:>6} {:>9} {:>12}  {}",
                    r.n,
                    r.count,
                    r.expected,
                    r.nodes_visited,
                    join(&r.witnesses, " ")
                );
            }
            let _ = writeln!(out, "consistent with catalogue: {}", summary.consistent);
        }
    }
    if !summary.consistent {
        return Err(Failure::invariant("Barker counts differ from the catalogue"));
    }
    Ok(())
}

fn prove_odd(g: &GlobalOpts, max: usize, opts: &SearchOptions, out: &mut String) -> Res<()> {
    let scan = theorem_scan(max, opts)?;
    match g.format {
        Format::Json => push_json(out, &to_json(&scan), true),
        Format::Csv => out.push_str(&scan.to_csv()),
        Format::Text => {
            let _ = writeln!(out, "{:>4} {:>6}  {:<10} {:<6}  witnesses / case verdicts", "n", "count", "source", "agree");
            for r in &scan.rows {
                let cases: Vec<String> = r
                    .verdicts
                    .iter()
                    .map(|v| format!("{}({},{},{})", v.case_id.name(), v.s1, v.e, v.s_e))
                    .collect();
                let _ = writeln!(
                    out,
                    "{:>4} {:>6}  {:<10} {:<6}  {} {}",
                    r.n,
                    r.barker_count,
                    r.classifier_source,
                    r.agree,
                    join(&r.witnesses, " "),
                    cases.join(" ")
                );
            }
            let _ = writeln!(out, "odd Barker lengths: {}", join(&scan.barker_lengths, ", "));
        }
    }
    if !scan.all_agree {
        return Err(Failure::invariant("case table and exhaustive search disagree"));
    }
    if !scan.rows.iter().flat_map(|r| &r.audits).all(|a| a.consistent()) {
        return Err(Failure::invariant("identity check failed on a Barker witness"));
    }
    Ok(())
}

fn table(g: &GlobalOpts, out: &mut String) -> Res<()> {
    let rows: Vec<(&str, BinarySequence)> = catalogue::all();
    match g.format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(name, s)| json!({"name": name, "sequence": s, "correlation": to_json(&acf(s))}))
                .collect();
            push_json(out, &Value::Array(items), true);
        }
        Format::Csv => {
            out.push_str("name,sequence,n,psl,acf\n");
            for (name, s) in &rows {
                let p = acf(s);
                let _ = writeln!(out, "{name},{s},{},{},{}", s.len(), p.psl.unwrap(), join(&p.values, " "));
            }
        }
        Format::Text => {
            for (name, s) in &rows {
                let p = acf(s);
                let _ = writeln!(out, "{name:<4} {s:<14} psl {}  acf {}", p.psl.unwrap(), join(&p.values, " "));
            }
        }
    }
    Ok(())
}

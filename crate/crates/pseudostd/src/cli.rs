use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pseudostandard_core::closure::{PrefixGenerator, DEFAULT_GROWTH_CAP};
use pseudostandard_core::complexity::{analyze_infinite_with_cap, ComplexityRow};
use pseudostandard_core::counterexample::verify_4n;
use pseudostandard_core::normalize::RewriteRule;
use pseudostandard_core::periodicity::PeriodError;
use pseudostandard_core::{
    is_periodic, morse_hedlund_oracle, normalize, Antimorphism, BidirectiveSequence, FiniteWord,
    Letter, OracleVerdict, ParseError,
};

use crate::literal;
use crate::svg::complexity_chart;

/// Characters per line when long words are printed in text mode.
pub const WRAP_WIDTH: usize = 53;

/// Environment variable overriding the prefix growth cap, in letters.
pub const GROWTH_CAP_VAR: &str = "PSEUDO_GROWTH_CAP";

/// `k_max` above this needs `--heavy`.
const LIGHT_K_MAX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    ResourceCap = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            status: Status::Usage,
            message: message.into(),
        }
    }

    fn literal(text: &str, err: ParseError) -> Self {
        let column = text.get(..err.position).map_or(err.position, |s| s.chars().count());
        CliError::usage(format!("invalid literal: {err}\n  {text}\n  {}^", " ".repeat(column)))
    }
}

/// What a command produced: the JSON `result`, its text rendering and any
/// diagnostics for stderr.
struct Outcome {
    result: Value,
    text: String,
    diagnostics: Vec<String>,
    status: Status,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Self {
        Outcome {
            result,
            text,
            diagnostics: Vec::new(),
            status: Status::Success,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "pseudostd", version, about = "Generalized pseudostandard words over {0,1}")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the prefixes w_1 ... w_K, or a prefix of given length.
    Generate(GenerateArgs),
    /// Normalize a bidirective sequence.
    Normalize(NormalizeArgs),
    /// Decide periodicity and extract the period.
    Periodicity(PeriodicityArgs),
    /// Factor complexity profile of the infinite word.
    Complexity(ComplexityArgs),
    /// Check C(n) > 4n and the structural facts about the counterexample word.
    #[command(name = "verify-4n")]
    Verify4n(VerifyArgs),
    /// Random sweep comparing the periodicity decision with a complexity oracle.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum TextFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum TableFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Sequence literal such as `1^w;(EERR)^w`.
    literal: String,
    /// Number of closure steps.
    #[arg(long, required_unless_present = "length", conflicts_with = "length")]
    steps: Option<usize>,
    /// Length of the prefix to print.
    #[arg(long)]
    length: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: TextFormat,
}

#[derive(Args, Debug)]
struct NormalizeArgs {
    literal: String,
    /// Minimum number of explicit normalized terms.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    horizon: u64,
    #[arg(long, value_enum, default_value_t)]
    format: TextFormat,
}

#[derive(Args, Debug)]
struct PeriodicityArgs {
    literal: String,
    #[arg(long, value_enum, default_value_t)]
    format: TextFormat,
}

#[derive(Args, Debug)]
struct ComplexityArgs {
    literal: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    #[arg(long, value_enum, default_value_t)]
    format: TableFormat,
    /// Also write a line chart of C(n) against 4n.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(10..))]
    n_max: u64,
    #[arg(long, default_value_t = 2)]
    k_max: usize,
    /// Allow k_max above 3, which builds prefixes of several million letters.
    #[arg(long)]
    heavy: bool,
    #[arg(long, value_enum, default_value_t)]
    format: TextFormat,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t)]
    format: TextFormat,
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage.code() } else { Status::Success.code() };
        }
    };
    let (name, input, json_output) = describe(&cli.command);
    let outcome = execute(&cli.command);
    let (result, text, diagnostics, status) = match outcome {
        Ok(o) => (o.result, Some(o.text), o.diagnostics, o.status),
        Err(e) => (Value::Null, None, vec![e.message], e.status),
    };
    for d in &diagnostics {
        let level = if status == Status::Success { "warning" } else { "error" };
        eprintln!("{level}: {d}");
    }
    let mut stdout = std::io::stdout().lock();
    // A closed pipe downstream is not an error worth reporting.
    if json_output {
        let doc = json!({
            "command": name,
            "input": input,
            "result": result,
            "diagnostics": diagnostics,
        });
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("JSON values always serialize"));
    } else if let Some(text) = text {
        let _ = stdout.write_all(text.as_bytes());
    }
    let _ = stdout.flush();
    status.code()
}

fn describe(command: &Command) -> (&'static str, Value, bool) {
    let is_json = |f: TextFormat| matches!(f, TextFormat::Json);
    match command {
        Command::Generate(a) => (
            "generate",
            json!({ "literal": a.literal, "steps": a.steps, "length": a.length }),
            is_json(a.format),
        ),
        Command::Normalize(a) => (
            "normalize",
            json!({ "literal": a.literal, "horizon": a.horizon }),
            is_json(a.format),
        ),
        Command::Periodicity(a) => ("periodicity", json!({ "literal": a.literal }), is_json(a.format)),
        Command::Complexity(a) => (
            "complexity",
            json!({ "literal": a.literal, "n_max": a.n_max, "svg": a.svg }),
            matches!(a.format, TableFormat::Json),
        ),
        Command::Verify4n(a) => (
            "verify-4n",
            json!({ "n_max": a.n_max, "k_max": a.k_max }),
            is_json(a.format),
        ),
        Command::Sweep(a) => ("sweep", json!({ "count": a.count, "seed": a.seed }), is_json(a.format)),
    }
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Normalize(a) => cmd_normalize(a),
        Command::Periodicity(a) => cmd_periodicity(a),
        Command::Complexity(a) => cmd_complexity(a),
        Command::Verify4n(a) => cmd_verify_4n(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn parse_literal(text: &str) -> Result<BidirectiveSequence, CliError> {
    literal::parse(text).map_err(|e| CliError::literal(text, e))
}

fn growth_cap() -> Result<usize, CliError> {
    match std::env::var(GROWTH_CAP_VAR) {
        Ok(v) => v
            .trim()
            .replace('_', "")
            .parse()
            .map_err(|_| CliError::usage(format!("{GROWTH_CAP_VAR} must be a letter count, got {v:?}"))),
        Err(_) => Ok(DEFAULT_GROWTH_CAP),
    }
}

/// Splits `s` into lines of at most [`WRAP_WIDTH`] characters, each
/// terminated by a newline. The empty word prints as `ε`.
pub fn wrap(s: &str) -> String {
    if s.is_empty() {
        return "ε\n".to_string();
    }
    let mut out = String::with_capacity(s.len() + s.len() / WRAP_WIDTH + 1);
    for chunk in s.as_bytes().chunks(WRAP_WIDTH) {
        out.push_str(std::str::from_utf8(chunk).expect("words are ASCII"));
        out.push('\n');
    }
    out
}

fn thetas(ts: impl IntoIterator<Item = Antimorphism>) -> String {
    ts.into_iter().map(Antimorphism::to_char).collect()
}

fn cmd_generate(a: &GenerateArgs) -> Result<Outcome, CliError> {
    let seq = parse_literal(&a.literal)?;
    let mut generator = PrefixGenerator::with_cap(&seq, growth_cap()?);
    let outcome = match (a.steps, a.length) {
        (Some(steps), _) => {
            let capped = (0..steps).find_map(|_| generator.step().err());
            let chain = generator.chain();
            let mut text = String::new();
            let mut members = Vec::new();
            for (step, w) in chain.iter() {
                let _ = writeln!(
                    text,
                    "w_{} = ({}, {}) length {}",
                    step.index, step.letter, step.theta, step.len
                );
                text.push_str(&wrap(&w.to_string()));
                members.push(json!({
                    "k": step.index,
                    "delta": step.letter.to_string(),
                    "theta": step.theta.to_string(),
                    "length": step.len,
                    "word": w.to_string(),
                }));
            }
            let mut o = Outcome::ok(json!({ "chain": members, "partial": capped.is_some() }), text);
            if let Some(e) = capped {
                o.diagnostics.push(format!("{e}; stopped after {} steps", chain.len()));
                o.status = Status::ResourceCap;
            }
            o
        }
        (None, Some(length)) => {
            let capped = generator.extend_to(length).err();
            let word = generator.word_prefix(length).to_string();
            let mut o = Outcome::ok(
                json!({ "length": word.len(), "prefix": word, "partial": capped.is_some() }),
                wrap(&word),
            );
            if let Some(e) = capped {
                o.diagnostics.push(format!("{e}; printed the first {} letters", word.len()));
                o.status = Status::ResourceCap;
            }
            o
        }
        (None, None) => return Err(CliError::usage("one of --steps or --length is required")),
    };
    Ok(outcome)
}

fn rule_name(rule: RewriteRule) -> &'static str {
    match rule {
        RewriteRule::AlternatingPrefix => "alternating-prefix",
        RewriteRule::LetterRunPrefix => "letter-run-prefix",
        RewriteRule::DoubledComplementPrefix => "doubled-complement-prefix",
        RewriteRule::Factor => "factor",
    }
}

fn cmd_normalize(a: &NormalizeArgs) -> Result<Outcome, CliError> {
    let seq = parse_literal(&a.literal)?;
    let horizon = usize::try_from(a.horizon).map_err(|_| CliError::usage("horizon too large"))?;
    let result = normalize(&seq, horizon);
    let delta: String = result.horizon_terms.iter().map(|p| p.0.to_char()).collect();
    let theta = thetas(result.horizon_terms.iter().map(|p| p.1));
    let rewrites: Vec<Value> = result
        .rewrite_log
        .iter()
        .map(|e| json!({ "rule": rule_name(e.rule), "position": e.position }))
        .collect();

    let mut text = String::new();
    let mut diagnostics = Vec::new();
    match &result.normalized {
        Some(n) => {
            let _ = writeln!(text, "{n}");
        }
        None => {
            diagnostics.push(format!(
                "no closed form found within horizon {horizon}; printing the explicit terms"
            ));
            let _ = writeln!(text, "delta: {delta}");
            let _ = writeln!(text, "theta: {theta}");
        }
    }
    if result.rewrite_log.is_empty() {
        text.push_str("rewrites: none\n");
    } else {
        text.push_str("rewrites:\n");
        for e in &result.rewrite_log {
            let _ = writeln!(text, "  {:>4}  {}", e.position, e.rule);
        }
    }
    let json = json!({
        "closed_form_found": result.closed_form_found,
        "normalized": result.normalized.as_ref().map(literal::render),
        "changed": result.normalized.as_ref().map(|n| !n.same_streams(&seq)),
        "terms": { "delta": delta, "theta": theta },
        "rewrites": rewrites,
    });
    Ok(Outcome {
        diagnostics,
        ..Outcome::ok(json, text)
    })
}

fn cmd_periodicity(a: &PeriodicityArgs) -> Result<Outcome, CliError> {
    let seq = parse_literal(&a.literal)?;
    let verdict = is_periodic(&seq).map_err(|e| CliError {
        status: match e {
            PeriodError::GrowthCap(_) => Status::ResourceCap,
            _ => Status::VerificationFailed,
        },
        message: e.to_string(),
    })?;
    let mut text = String::new();
    let witness = verdict.witness.map(|w| {
        let _ = writeln!(
            text,
            "periodic\nwitness: delta(n+1) = {} exactly when theta(n) = {}, for n > {}",
            w.a, w.theta, w.n0
        );
        json!({ "a": w.a.to_string(), "theta": w.theta.to_string(), "n0": w.n0 })
    });
    let refutation = verdict.refutation.map(|(n1, n2)| {
        let _ = writeln!(
            text,
            "aperiodic\nrefutation: n1 = {n1} has delta(n1+1) = 1 exactly when theta(n1) = R; \
             n2 = {n2} has delta(n2+1) = 1 exactly when theta(n2) = E"
        );
        json!({ "n1": n1, "n2": n2 })
    });
    if let Some(p) = &verdict.period {
        let _ = writeln!(text, "period ({} letters):", p.len());
        text.push_str(&wrap(&p.to_string()));
    }
    let json = json!({
        "periodic": verdict.periodic,
        "witness": witness,
        "refutation": refutation,
        "period": verdict.period.as_ref().map(FiniteWord::to_string),
        "period_length": verdict.period.as_ref().map(FiniteWord::len),
    });
    Ok(Outcome::ok(json, text))
}

fn cmd_complexity(a: &ComplexityArgs) -> Result<Outcome, CliError> {
    let seq = parse_literal(&a.literal)?;
    let n_max = usize::try_from(a.n_max).map_err(|_| CliError::usage("n-max too large"))?;
    let (profile, capped) = match analyze_infinite_with_cap(&seq, n_max, growth_cap()?) {
        Ok(p) => (p, None),
        Err(e) => (e.partial.clone(), Some(e)),
    };
    let rows = &profile.rows;
    let text = match a.format {
        TableFormat::Csv => csv_rows(rows),
        _ => table_rows(rows),
    };
    let json = json!({
        "prefix_length_used": profile.prefix_length_used,
        "partial": capped.is_some(),
        "rows": rows
            .iter()
            .map(|r| json!({ "n": r.n, "C": r.c, "dC": r.dc, "d2C": r.d2c, "saturated": r.saturated }))
            .collect::<Vec<_>>(),
    });
    let mut outcome = Outcome::ok(json, text);
    if let Some(path) = &a.svg {
        let chart = complexity_chart(&literal::render(&seq), rows);
        std::fs::write(path, chart).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(e) = capped {
        outcome.diagnostics.push(format!("{e}; partial output"));
        outcome.status = Status::ResourceCap;
    }
    Ok(outcome)
}

fn csv_rows(rows: &[ComplexityRow]) -> String {
    let mut out = String::from("n,C,dC,d2C,saturated\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.n, r.c, r.dc, r.d2c, r.saturated);
    }
    out
}

fn table_rows(rows: &[ComplexityRow]) -> String {
    let mut out = format!("{:>6} {:>10} {:>8} {:>6}  saturated\n", "n", "C", "dC", "d2C");
    for r in rows {
        let _ = writeln!(
            out,
            "{:>6} {:>10} {:>8} {:>6}  {}",
            r.n,
            r.c,
            r.dc,
            r.d2c,
            if r.saturated { "yes" } else { "no" }
        );
    }
    out
}

fn cmd_verify_4n(a: &VerifyArgs) -> Result<Outcome, CliError> {
    if a.k_max > LIGHT_K_MAX && !a.heavy {
        return Err(CliError::usage(format!(
            "--k-max above {LIGHT_K_MAX} needs prefixes of several million letters; pass --heavy to run it"
        )));
    }
    let n_max = usize::try_from(a.n_max).map_err(|_| CliError::usage("n-max too large"))?;
    let report = verify_4n(n_max, a.k_max).map_err(|e| CliError {
        status: Status::ResourceCap,
        message: e.to_string(),
    })?;
    let passed = report.passed();
    let yes_no = |ok: bool| if ok { "ok" } else { "FAILED" };
    let mut text = String::new();
    let _ = writeln!(text, "C(10) = {}, dC(9) = {}", report.c10, report.delta_c9);
    let _ = writeln!(
        text,
        "C(n) > 4n for 10 <= n <= {}: {}",
        n_max,
        yes_no(report.violations.is_empty())
    );
    for (n, c) in &report.violations {
        let _ = writeln!(text, "  violation: C({n}) = {c} <= {}", 4 * n);
    }
    let _ = writeln!(
        text,
        "prefix of {} letters, doubling check: {}",
        report.prefix_length_used,
        yes_no(report.heuristic_agrees)
    );
    let _ = writeln!(
        text,
        "structural families k = {}..={}: {}",
        report.bispecial_families.start(),
        report.bispecial_families.end(),
        yes_no(report.family_failures.is_empty())
    );
    for k in &report.family_failures {
        let _ = writeln!(text, "  failure at k = {k}");
    }
    let _ = writeln!(text, "{}", if passed { "pass" } else { "FAIL" });
    let json = json!({
        "passed": passed,
        "c10": report.c10,
        "delta_c9": report.delta_c9,
        "checked_n": [report.checked_n_range.start(), report.checked_n_range.end()],
        "violations": report.violations.iter().map(|(n, c)| json!({ "n": n, "C": c })).collect::<Vec<_>>(),
        "prefix_length_used": report.prefix_length_used,
        "heuristic_agrees": report.heuristic_agrees,
        "families_checked": [report.bispecial_families.start(), report.bispecial_families.end()],
        "family_failures": report.family_failures,
        "min_excess": report.counts.iter().enumerate().skip(10).map(|(n, &c)| c as i64 - 4 * n as i64).min(),
    });
    let mut outcome = Outcome::ok(json, text);
    if !passed {
        outcome.status = Status::VerificationFailed;
        outcome.diagnostics.push("the 4n verification found a violation".to_string());
    }
    Ok(outcome)
}

fn random_sequence(rng: &mut ChaCha8Rng) -> BidirectiveSequence {
    let mut letters = |min: usize| -> FiniteWord {
        let n = rng.random_range(min..=4);
        (0..n).map(|_| Letter::from_bit(rng.random())).collect()
    };
    let (dp, dq) = (letters(0), letters(1));
    let mut thetas = |min: usize| -> Vec<Antimorphism> {
        let n = rng.random_range(min..=4);
        (0..n)
            .map(|_| if rng.random() { Antimorphism::E } else { Antimorphism::R })
            .collect()
    };
    let (tp, tq) = (thetas(0), thetas(1));
    BidirectiveSequence::new(dp, dq, tp, tq).expect("periods have at least one term")
}

/// Compares the exact periodicity decision against `C(n) ≤ n` on a long
/// prefix for random sequences with short preperiods and periods.
fn cmd_sweep(a: &SweepArgs) -> Result<Outcome, CliError> {
    const ORACLE_N: usize = 128;
    const PREFIX: usize = 1 << 14;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let cap = growth_cap()?;
    let (mut periodic, mut aperiodic) = (0usize, 0usize);
    let mut disagreements = Vec::new();
    for _ in 0..a.count {
        let seq = random_sequence(&mut rng);
        let verdict = is_periodic(&seq).map_err(|e| CliError {
            status: Status::VerificationFailed,
            message: format!("{seq}: {e}"),
        })?;
        let prefix = pseudostandard_core::closure::generate_word_prefix_with_cap(&seq, PREFIX, cap)
            .map_err(|e| CliError {
                status: Status::ResourceCap,
                message: format!("{seq}: {e}"),
            })?;
        let oracle = morse_hedlund_oracle(&prefix, ORACLE_N).expect("prefix is long enough");
        let evidence = matches!(oracle, OracleVerdict::PeriodicEvidence { .. });
        if verdict.periodic {
            periodic += 1;
        } else {
            aperiodic += 1;
        }
        if evidence != verdict.periodic {
            disagreements.push(literal::render(&seq));
        }
    }
    let mut text = format!(
        "{} sequences (seed {}): {periodic} periodic, {aperiodic} aperiodic, {} disagreements\n",
        a.count,
        a.seed,
        disagreements.len()
    );
    for d in &disagreements {
        let _ = writeln!(text, "  {d}");
    }
    let json = json!({
        "periodic": periodic,
        "aperiodic": aperiodic,
        "disagreements": disagreements,
    });
    let mut outcome = Outcome::ok(json, text);
    if !disagreements.is_empty() {
        outcome.status = Status::VerificationFailed;
        outcome.diagnostics.push("periodicity decision disagrees with the complexity oracle".to_string());
    }
    Ok(outcome)
}

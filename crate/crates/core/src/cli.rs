//! Command-line front end.
//!
//! Exit codes: 0 embeddable, 1 not embeddable, 2 input error, 3 checker
//! disagreement. A disagreement wins over everything else.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::bench::{run_bench, BenchTable};
use crate::genus::boundary_components;
use crate::reduce::{classify_residual, fully_reduce_linear, StepKind};
use crate::report::{
    classify, run_enumeration, CheckerSet, ClassificationReport, ClassifyOptions,
    EnumerationSummary, HarnessOptions, SCHEMA_VERSION,
};
use crate::word::{
    format_word, letter_name, parse_labeled, EnumerationOptions, WordError,
    DEFAULT_ENUMERATION_BOUND,
};

pub const EXIT_EMBEDDABLE: i32 = 0;
pub const EXIT_NOT_EMBEDDABLE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hieroglyph",
    version,
    about = "Torus embeddability of one-vertex rotation systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonFlags {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Canonicalize up to rotation and relabeling only.
    #[arg(long)]
    no_reflection: bool,
}

#[derive(Debug, Args)]
struct CheckerFlags {
    /// Run only the linear-time reduction checker (D).
    #[arg(long, conflicts_with = "checkers")]
    fast: bool,
    /// Subset of checkers to run, e.g. `ad`.
    #[arg(long)]
    checkers: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a single word, e.g. `abab`, `0,1,0,1` or `()`.
    Check {
        word: String,
        #[command(flatten)]
        common: CommonFlags,
        #[command(flatten)]
        checkers: CheckerFlags,
    },
    /// Classify one word per line from a file, or stdin when omitted or `-`.
    Batch {
        path: Option<PathBuf>,
        #[command(flatten)]
        common: CommonFlags,
        #[command(flatten)]
        checkers: CheckerFlags,
    },
    /// Run every checker on every chord diagram with `n` chords.
    Enumerate {
        n: usize,
        /// One representative per symmetry class.
        #[arg(long)]
        dedupe: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        max_n: usize,
        /// Single-threaded.
        #[arg(long)]
        serial: bool,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Show the reduction steps and boundary circles of a word.
    Trace {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Time the linear reducer on random words.
    Bench {
        /// Loop counts, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = vec![10_000usize, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest accepted ratio between work-per-loop figures.
        #[arg(long, default_value_t = 3.0)]
        max_spread: f64,
        #[arg(long)]
        json: bool,
    },
}

fn checker_options(flags: &CheckerFlags, common: &CommonFlags) -> Result<ClassifyOptions, String> {
    let checkers = if flags.fast {
        CheckerSet::FAST
    } else if let Some(spec) = &flags.checkers {
        CheckerSet::parse(spec)
            .ok_or_else(|| format!("invalid checker subset `{spec}`; use letters a-d"))?
    } else {
        CheckerSet::ALL
    };
    Ok(ClassifyOptions {
        checkers,
        include_reflection: !common.no_reflection,
    })
}

pub fn exit_code(report: &ClassificationReport) -> i32 {
    if !report.agreement {
        EXIT_DISAGREEMENT
    } else if report.torus_embeddable {
        EXIT_EMBEDDABLE
    } else {
        EXIT_NOT_EMBEDDABLE
    }
}

fn error_column(err: &WordError) -> Option<usize> {
    match err {
        WordError::BadToken { column, .. } | WordError::BadMultiplicity { column, .. } => {
            Some(*column)
        }
        _ => None,
    }
}

fn render_input_error(text: &str, err: &WordError, line: Option<usize>) -> String {
    let mut out = String::new();
    match (line, error_column(err)) {
        (Some(l), Some(c)) => out.push_str(&format!("error: line {l}, column {}: {err}\n", c + 1)),
        (Some(l), None) => out.push_str(&format!("error: line {l}: {err}\n")),
        (None, Some(c)) => out.push_str(&format!("error: column {}: {err}\n", c + 1)),
        (None, None) => out.push_str(&format!("error: {err}\n")),
    }
    if let Some(c) = error_column(err) {
        out.push_str(&format!("  {text}\n  {}^\n", " ".repeat(c)));
    }
    out
}

#[derive(Serialize)]
struct InputErrorJson<'a> {
    schema: u32,
    input: &'a str,
    line: Option<usize>,
    column: Option<usize>,
    error: String,
}

fn input_error_json(text: &str, err: &WordError, line: Option<usize>) -> String {
    serde_json::to_string(&InputErrorJson {
        schema: SCHEMA_VERSION,
        input: text,
        line,
        column: error_column(err).map(|c| c + 1),
        error: err.to_string(),
    })
    .expect("error records serialize")
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn render_report(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let shown = if r.word.is_empty() { "()" } else { &r.word };
    s.push_str(&format!(
        "word        {shown}  (input `{}`, n = {})\n",
        r.input, r.n
    ));
    s.push_str(&format!(
        "canonical   {}\n",
        if r.canonical.is_empty() {
            "()"
        } else {
            &r.canonical
        }
    ));
    if let (Some(f), Some(g)) = (r.faces, r.genus) {
        s.push_str(&format!("boundary    F = {f}, genus = {g}\n"));
    }
    s.push_str(&format!(
        "(A) genus <= 1              {}\n",
        yes_no(r.cond_a)
    ));
    let b_note = r
        .witness
        .as_ref()
        .map(|w| format!("  [{} ~ {}]", w.letters.join(""), w.pattern))
        .unwrap_or_default();
    s.push_str(&format!(
        "(B) no forbidden pattern    {}{b_note}\n",
        yes_no(r.cond_b)
    ));
    let c_note = r
        .decomposition
        .as_ref()
        .map(|d| {
            let parts: Vec<String> = d
                .parts
                .iter()
                .map(|p| format!("{{{}}}", p.join(",")))
                .collect();
            format!(
                "  [parts {} | isolated {{{}}}]",
                parts.join(" "),
                d.isolated.join(",")
            )
        })
        .unwrap_or_default();
    s.push_str(&format!(
        "(C) multipartite loop graph {}{c_note}\n",
        yes_no(r.cond_c)
    ));
    let d_note = match (&r.residual, r.residual_class) {
        (Some(res), Some(class)) => {
            let res = if res.is_empty() { "()" } else { res.as_str() };
            format!("  [residual {res}, {class:?}]")
        }
        _ => String::new(),
    };
    s.push_str(&format!(
        "(D) reduces to a torus core {}{d_note}\n",
        yes_no(r.cond_d)
    ));
    let verdict = if r.torus_embeddable {
        "embeddable in the torus"
    } else {
        "NOT embeddable in the torus"
    };
    s.push_str(&format!("verdict     {verdict}"));
    if !r.agreement {
        s.push_str("  !! checkers disagree");
    }
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
        }
    };
    match cli.command {
        Command::Check {
            word,
            common,
            checkers,
        } => cmd_check(&word, &common, &checkers),
        Command::Batch {
            path,
            common,
            checkers,
        } => cmd_batch(path, &common, &checkers),
        Command::Enumerate {
            n,
            dedupe,
            max_n,
            serial,
            common,
        } => cmd_enumerate(n, dedupe, max_n, serial, &common),
        Command::Trace { word, json } => cmd_trace(&word, json),
        Command::Bench {
            sizes,
            trials,
            seed,
            max_spread,
            json,
        } => cmd_bench(&sizes, trials, seed, max_spread, json),
    }
}

fn cmd_check(text: &str, common: &CommonFlags, flags: &CheckerFlags) -> i32 {
    let opts = match checker_options(flags, common) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT_ERROR;
        }
    };
    let labeled = match parse_labeled(text) {
        Ok(l) => l,
        Err(e) => {
            if common.json {
                println!("{}", input_error_json(text, &e, None));
            }
            eprint!("{}", render_input_error(text, &e, None));
            return EXIT_INPUT_ERROR;
        }
    };
    let report = classify(&labeled.word, text, opts);
    if common.json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("reports serialize")
        );
    } else {
        print!("{}", render_report(&report));
    }
    exit_code(&report)
}

#[derive(Debug, Default, Serialize)]
struct BatchSummary {
    total: usize,
    embeddable: usize,
    not_embeddable: usize,
    input_errors: usize,
    disagreements: usize,
}

fn cmd_batch(path: Option<PathBuf>, common: &CommonFlags, flags: &CheckerFlags) -> i32 {
    let opts = match checker_options(flags, common) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT_ERROR;
        }
    };
    let mut content = String::new();
    let read = match &path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map(|s| content = s),
        _ => io::stdin().read_to_string(&mut content).map(|_| ()),
    };
    if let Err(e) = read {
        eprintln!("error: cannot read input: {e}");
        return EXIT_INPUT_ERROR;
    }

    let lines: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .collect();
    let results: Vec<(usize, &str, Result<ClassificationReport, WordError>)> = lines
        .par_iter()
        .map(|&(no, line)| {
            (
                no,
                line,
                parse_labeled(line).map(|l| classify(&l.word, line, opts)),
            )
        })
        .collect();

    let mut summary = BatchSummary::default();
    for (no, line, result) in &results {
        summary.total += 1;
        match result {
            Ok(report) => {
                if !report.agreement {
                    summary.disagreements += 1;
                }
                if report.torus_embeddable {
                    summary.embeddable += 1;
                } else {
                    summary.not_embeddable += 1;
                }
                if common.json {
                    println!(
                        "{}",
                        serde_json::to_string(report).expect("reports serialize")
                    );
                } else {
                    let shown = if report.word.is_empty() {
                        "()"
                    } else {
                        &report.word
                    };
                    let verdict = if report.torus_embeddable {
                        "embeddable"
                    } else {
                        "not-embeddable"
                    };
                    let genus = report.genus.map_or("-".to_string(), |g| g.to_string());
                    let flag = if report.agreement {
                        ""
                    } else {
                        "  DISAGREEMENT"
                    };
                    println!("{no}: {shown}  genus={genus}  {verdict}{flag}");
                }
            }
            Err(e) => {
                summary.input_errors += 1;
                if common.json {
                    println!("{}", input_error_json(line, e, Some(*no)));
                }
                eprint!("{}", render_input_error(line, e, Some(*no)));
            }
        }
    }
    if common.json {
        #[derive(Serialize)]
        struct Wrapped<'a> {
            schema: u32,
            summary: &'a BatchSummary,
        }
        let w = Wrapped {
            schema: SCHEMA_VERSION,
            summary: &summary,
        };
        println!("{}", serde_json::to_string(&w).expect("summary serializes"));
    } else {
        println!(
            "summary: total={} embeddable={} not_embeddable={} input_errors={} disagreements={}",
            summary.total,
            summary.embeddable,
            summary.not_embeddable,
            summary.input_errors,
            summary.disagreements
        );
    }
    if summary.disagreements > 0 {
        EXIT_DISAGREEMENT
    } else if summary.input_errors > 0 {
        EXIT_INPUT_ERROR
    } else if summary.not_embeddable > 0 {
        EXIT_NOT_EMBEDDABLE
    } else {
        EXIT_EMBEDDABLE
    }
}

fn render_summary(s: &EnumerationSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "n = {}{}\n",
        s.n,
        if s.dedupe { " (one per class)" } else { "" }
    ));
    match s.expected_total {
        Some(e) => out.push_str(&format!("diagrams      {} (expected {e})\n", s.total)),
        None => out.push_str(&format!("diagrams      {}\n", s.total)),
    }
    for (g, count) in &s.genus_histogram {
        out.push_str(&format!("  genus {g}     {count}\n"));
    }
    out.push_str(&format!("embeddable    {}\n", s.embeddable));
    out.push_str(&format!("disagreements {}\n", s.disagreements.len()));
    for w in &s.disagreements {
        out.push_str(&format!("  {w}\n"));
    }
    out.push_str(&format!(
        "single-pass divergences {}\n",
        s.one_pass_divergences
    ));
    for w in &s.one_pass_examples {
        out.push_str(&format!("  {w}\n"));
    }
    out.push_str(&format!("elapsed       {:.1} ms\n", s.elapsed_ms));
    out
}

fn cmd_enumerate(n: usize, dedupe: bool, max_n: usize, serial: bool, common: &CommonFlags) -> i32 {
    let opts = HarnessOptions {
        enumeration: EnumerationOptions {
            max_n,
            dedupe,
            include_reflection: !common.no_reflection,
        },
        parallel: !serial,
    };
    let summary = match run_enumeration(n, opts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    if common.json {
        println!(
            "{}",
            serde_json::to_string(&summary).expect("summary serializes")
        );
    } else {
        print!("{}", render_summary(&summary));
    }
    if summary.disagreements.is_empty() {
        0
    } else {
        EXIT_DISAGREEMENT
    }
}

#[derive(Serialize)]
struct StepJson {
    kind: StepKind,
    letters: Vec<String>,
    positions: [usize; 2],
}

#[derive(Serialize)]
struct TraceJson {
    schema: u32,
    input: String,
    word: String,
    steps: Vec<StepJson>,
    residual: String,
    residual_class: crate::reduce::ResidualClass,
    faces: usize,
    boundary_orbits: Vec<Vec<usize>>,
}

fn cmd_trace(text: &str, json: bool) -> i32 {
    let labeled = match parse_labeled(text) {
        Ok(l) => l,
        Err(e) => {
            if json {
                println!("{}", input_error_json(text, &e, None));
            }
            eprint!("{}", render_input_error(text, &e, None));
            return EXIT_INPUT_ERROR;
        }
    };
    let w = labeled.word;
    let n = w.loop_count();
    let trace = fully_reduce_linear(&w);
    let class = classify_residual(&trace.residual);
    let boundary = boundary_components(&w);
    let steps: Vec<StepJson> = trace
        .steps
        .iter()
        .map(|s| {
            let mut letters = vec![letter_name(s.removed, n)];
            if let Some(k) = s.kept {
                letters.insert(0, letter_name(k, n));
            }
            StepJson {
                kind: s.kind,
                letters,
                positions: s.positions,
            }
        })
        .collect();
    let residual = format_word(&trace.residual.normalized());
    if json {
        let out = TraceJson {
            schema: SCHEMA_VERSION,
            input: text.to_string(),
            word: format_word(&w),
            steps,
            residual,
            residual_class: class,
            faces: boundary.faces,
            boundary_orbits: boundary.orbits,
        };
        println!("{}", serde_json::to_string(&out).expect("trace serializes"));
    } else {
        let shown = |s: &str| {
            if s.is_empty() {
                "()".to_string()
            } else {
                s.to_string()
            }
        };
        println!("word {}", shown(&format_word(&w)));
        println!("reduction ({} steps)", steps.len());
        for (i, s) in steps.iter().enumerate() {
            match s.kind {
                StepKind::Alpha => println!(
                    "  {}. alpha  remove isolated {} at positions {}, {}",
                    i + 1,
                    s.letters[0],
                    s.positions[0],
                    s.positions[1]
                ),
                StepKind::Beta => println!(
                    "  {}. beta   merge {} into {} (remove positions {}, {})",
                    i + 1,
                    s.letters[1],
                    s.letters[0],
                    s.positions[0],
                    s.positions[1]
                ),
            }
        }
        println!("residual {} ({:?})", shown(&residual), class);
        println!("boundary circles {}", boundary.faces);
        for orbit in &boundary.orbits {
            let items: Vec<String> = orbit.iter().map(|p| p.to_string()).collect();
            println!("  ({})", items.join(" "));
        }
    }
    if class.is_torus_residual() {
        EXIT_EMBEDDABLE
    } else {
        EXIT_NOT_EMBEDDABLE
    }
}

fn render_bench(t: &BenchTable) -> String {
    let mut out = format!(
        "seed {}\n{:>10} {:>7} {:>11} {:>11} {:>13}\n",
        t.seed, "n", "trials", "mean ms", "max ms", "work / n"
    );
    for r in &t.rows {
        out.push_str(&format!(
            "{:>10} {:>7} {:>11.3} {:>11.3} {:>13.3}\n",
            r.size, r.trials, r.mean_ms, r.max_ms, r.work_per_loop
        ));
    }
    match t.spread {
        Some(s) => out.push_str(&format!(
            "work/n spread {s:.3} (limit {:.1}): {}\n",
            t.max_spread,
            if t.linear { "linear" } else { "NOT linear" }
        )),
        None => out.push_str("no measurements\n"),
    }
    out
}

fn cmd_bench(sizes: &[usize], trials: usize, seed: u64, max_spread: f64, json: bool) -> i32 {
    let table = run_bench(sizes, trials, seed, max_spread);
    if json {
        println!(
            "{}",
            serde_json::to_string(&table).expect("table serializes")
        );
    } else {
        print!("{}", render_bench(&table));
    }
    if table.linear {
        0
    } else {
        1
    }
}

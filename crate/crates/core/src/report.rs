//! Aggregated verdicts of the four checkers, for single words and for
//! exhaustive enumeration.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::forbidden::is_condition_b;
use crate::genus::genus;
use crate::interlace::is_condition_c;
use crate::reduce::{classify_residual, fully_reduce_linear, reduce_one_pass, ResidualClass};
use crate::word::{
    canonical_form, double_factorial_odd, enumerate_diagrams_with, format_word, letter_name,
    DoubleOccurrenceWord, EnumerationOptions, Letter, WordError,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Which of the four conditions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckerSet {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl CheckerSet {
    pub const ALL: CheckerSet = CheckerSet {
        a: true,
        b: true,
        c: true,
        d: true,
    };
    pub const FAST: CheckerSet = CheckerSet {
        a: false,
        b: false,
        c: false,
        d: true,
    };

    /// Parses a subset such as `"abd"` (case-insensitive).
    pub fn parse(spec: &str) -> Option<CheckerSet> {
        let mut set = CheckerSet {
            a: false,
            b: false,
            c: false,
            d: false,
        };
        for ch in spec.chars() {
            match ch.to_ascii_lowercase() {
                'a' => set.a = true,
                'b' => set.b = true,
                'c' => set.c = true,
                'd' => set.d = true,
                ',' | ' ' => {}
                _ => return None,
            }
        }
        (set.a || set.b || set.c || set.d).then_some(set)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub checkers: CheckerSet,
    pub include_reflection: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            checkers: CheckerSet::ALL,
            include_reflection: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionJson {
    pub isolated: Vec<String>,
    pub parts: Vec<Vec<String>>,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessJson {
    pub letters: Vec<String>,
    pub pattern: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_us: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_us: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_us: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_us: Option<f64>,
}

/// Letter names in reports refer to the `word` field, i.e. the input
/// relabeled in first-occurrence order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub input: String,
    pub word: String,
    pub canonical: String,
    pub n: usize,
    pub faces: Option<usize>,
    pub genus: Option<usize>,
    pub cond_a: Option<bool>,
    pub cond_b: Option<bool>,
    pub cond_c: Option<bool>,
    pub cond_d: Option<bool>,
    pub agreement: bool,
    pub torus_embeddable: bool,
    pub residual_class: Option<ResidualClass>,
    pub residual: Option<String>,
    pub decomposition: Option<DecompositionJson>,
    pub witness: Option<WitnessJson>,
    pub timings: Timings,
}

impl ClassificationReport {
    pub fn verdicts(&self) -> Vec<bool> {
        [self.cond_a, self.cond_b, self.cond_c, self.cond_d]
            .into_iter()
            .flatten()
            .collect()
    }

    /// Copy with timings cleared, for comparisons.
    pub fn without_timings(&self) -> Self {
        Self {
            timings: Timings::default(),
            ..self.clone()
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e6)
}

pub fn classify(
    w: &DoubleOccurrenceWord,
    input: &str,
    opts: ClassifyOptions,
) -> ClassificationReport {
    let w = w.normalized();
    let n = w.loop_count();
    let name = |l: Letter| letter_name(l, n);
    let names = |ls: &[Letter]| ls.iter().map(|&l| name(l)).collect::<Vec<_>>();
    let mut timings = Timings::default();
    let set = opts.checkers;

    let mut faces = None;
    let mut genus_value = None;
    let mut cond_a = None;
    if set.a {
        let (report, t) =
            timed(|| genus(&w).expect("boundary tracing satisfies the parity relation"));
        timings.a_us = Some(t);
        faces = Some(report.faces);
        genus_value = Some(report.genus);
        cond_a = Some(report.torus_embeddable);
    }

    let mut cond_b = None;
    let mut witness = None;
    if set.b {
        let (verdict, t) = timed(|| is_condition_b(&w));
        timings.b_us = Some(t);
        cond_b = Some(verdict.holds);
        witness = verdict.witness.map(|wit| WitnessJson {
            letters: names(&wit.letters),
            pattern: wit.pattern_word().to_string(),
        });
    }

    let mut cond_c = None;
    let mut decomposition = None;
    if set.c {
        let (dec, t) = timed(|| is_condition_c(&w));
        timings.c_us = Some(t);
        cond_c = Some(dec.valid);
        decomposition = Some(DecompositionJson {
            isolated: names(&dec.isolated),
            parts: dec.parts.iter().map(|p| names(p)).collect(),
            valid: dec.valid,
        });
    }

    let mut cond_d = None;
    let mut residual_class = None;
    let mut residual = None;
    if set.d {
        let ((class, res), t) = timed(|| {
            let trace = fully_reduce_linear(&w);
            (classify_residual(&trace.residual), trace.residual)
        });
        timings.d_us = Some(t);
        cond_d = Some(class.is_torus_residual());
        residual_class = Some(class);
        residual = Some(format_word(&res.normalized()));
    }

    let verdicts: Vec<bool> = [cond_a, cond_b, cond_c, cond_d]
        .into_iter()
        .flatten()
        .collect();
    let agreement = verdicts.windows(2).all(|p| p[0] == p[1]);
    let torus_embeddable = cond_a.or(cond_d).or(cond_c).or(cond_b).unwrap_or(false);

    ClassificationReport {
        schema: SCHEMA_VERSION,
        input: input.to_string(),
        word: format_word(&w),
        canonical: format_word(&canonical_form(&w, opts.include_reflection).word),
        n,
        faces,
        genus: genus_value,
        cond_a,
        cond_b,
        cond_c,
        cond_d,
        agreement,
        torus_embeddable,
        residual_class,
        residual,
        decomposition,
        witness,
        timings,
    }
}

/// The four verdicts plus genus, without any reporting overhead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    pub genus: usize,
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    /// Verdict of the literal single-pass reduction (no wrap-around).
    pub one_pass: bool,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        self.a == self.b && self.b == self.c && self.c == self.d
    }
}

pub fn verdicts(w: &DoubleOccurrenceWord) -> Verdicts {
    let g = genus(w).expect("boundary tracing satisfies the parity relation");
    let residual = fully_reduce_linear(w).residual;
    Verdicts {
        genus: g.genus,
        a: g.torus_embeddable,
        b: is_condition_b(w).holds,
        c: is_condition_c(w).valid,
        d: classify_residual(&residual).is_torus_residual(),
        one_pass: classify_residual(&reduce_one_pass(w)).is_torus_residual(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnumerationSummary {
    pub schema: u32,
    pub n: usize,
    pub dedupe: bool,
    pub total: u64,
    /// `(2n - 1)!!`, the expected total without deduplication.
    pub expected_total: Option<u64>,
    pub genus_histogram: BTreeMap<usize, u64>,
    pub embeddable: u64,
    pub disagreements: Vec<String>,
    /// Words where the single-pass reduction without wrap-around gives a
    /// different verdict from the cyclic reducer.
    pub one_pass_divergences: u64,
    pub one_pass_examples: Vec<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessOptions {
    pub enumeration: EnumerationOptions,
    pub parallel: bool,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        Self {
            enumeration: EnumerationOptions::default(),
            parallel: true,
        }
    }
}

const CHUNK: usize = 4096;
const MAX_EXAMPLES: usize = 20;

/// Runs all four checkers on every diagram with `n` chords.
pub fn run_enumeration(n: usize, opts: HarnessOptions) -> Result<EnumerationSummary, WordError> {
    let start = Instant::now();
    let mut stream = enumerate_diagrams_with(n, opts.enumeration)?;
    let mut summary = EnumerationSummary {
        schema: SCHEMA_VERSION,
        n,
        dedupe: opts.enumeration.dedupe,
        total: 0,
        expected_total: (!opts.enumeration.dedupe).then(|| double_factorial_odd(n)),
        genus_histogram: BTreeMap::new(),
        embeddable: 0,
        disagreements: Vec::new(),
        one_pass_divergences: 0,
        one_pass_examples: Vec::new(),
        elapsed_ms: 0.0,
    };
    loop {
        let chunk: Vec<DoubleOccurrenceWord> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Verdicts> = if opts.parallel {
            chunk.par_iter().map(verdicts).collect()
        } else {
            chunk.iter().map(verdicts).collect()
        };
        for (word, v) in chunk.iter().zip(results) {
            summary.total += 1;
            *summary.genus_histogram.entry(v.genus).or_insert(0) += 1;
            if v.a {
                summary.embeddable += 1;
            }
            if !v.agree() {
                summary.disagreements.push(format_word(word));
            }
            if v.one_pass != v.d {
                summary.one_pass_divergences += 1;
                if summary.one_pass_examples.len() < MAX_EXAMPLES {
                    summary.one_pass_examples.push(format_word(word));
                }
            }
        }
    }
    summary.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(summary)
}

//! Condition (B): none of the four genus-2 hieroglyphs on four loops occurs
//! as the restriction of the word to some four of its letters.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::word::{canonical_form, parse_word, CanonicalForm, DoubleOccurrenceWord, Letter};

/// The four base patterns, in the order they are usually listed.
pub const FORBIDDEN_PATTERNS: [&str; 4] = ["ababcdcd", "abcdabcd", "abacdcbd", "abcadbdc"];

#[derive(Debug, Clone)]
pub struct ForbiddenSet {
    patterns: Vec<DoubleOccurrenceWord>,
    /// Rotation-and-relabeling canonical forms of every pattern and of its
    /// reversal, mapped to the index of the base pattern.
    closure: HashMap<DoubleOccurrenceWord, usize>,
}

impl ForbiddenSet {
    fn build() -> Self {
        let patterns: Vec<DoubleOccurrenceWord> = FORBIDDEN_PATTERNS
            .iter()
            .map(|s| parse_word(s).expect("forbidden patterns are valid words"))
            .collect();
        let mut closure = HashMap::new();
        for (i, p) in patterns.iter().enumerate() {
            for variant in [p.clone(), p.reversed()] {
                closure
                    .entry(canonical_form(&variant, false).word)
                    .or_insert(i);
            }
        }
        Self { patterns, closure }
    }

    pub fn patterns(&self) -> &[DoubleOccurrenceWord] {
        &self.patterns
    }

    /// Distinct canonical forms under rotation and relabeling only, with
    /// reversals of the base patterns included.
    pub fn closure(&self) -> impl Iterator<Item = &DoubleOccurrenceWord> {
        self.closure.keys()
    }

    pub fn closure_len(&self) -> usize {
        self.closure.len()
    }

    /// Canonical forms with reversal folded in; one per base pattern.
    pub fn reflection_classes(&self) -> Vec<CanonicalForm> {
        let mut out: Vec<CanonicalForm> = self
            .patterns
            .iter()
            .map(|p| canonical_form(p, true))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Index of the base pattern that `w` is equivalent to, if any.
    pub fn matches(&self, w: &DoubleOccurrenceWord) -> Option<usize> {
        if w.loop_count() != 4 {
            return None;
        }
        self.closure.get(&canonical_form(w, false).word).copied()
    }
}

pub fn forbidden_closure() -> &'static ForbiddenSet {
    static SET: OnceLock<ForbiddenSet> = OnceLock::new();
    SET.get_or_init(ForbiddenSet::build)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub letters: [Letter; 4],
    /// Index into [`FORBIDDEN_PATTERNS`].
    pub pattern: usize,
}

impl Witness {
    pub fn pattern_word(&self) -> &'static str {
        FORBIDDEN_PATTERNS[self.pattern]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionB {
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// Scans every 4-letter subset in lexicographic order and reports the first
/// one whose restriction is a forbidden pattern.
pub fn is_condition_b(w: &DoubleOccurrenceWord) -> ConditionB {
    let set = forbidden_closure();
    let n = w.loop_count();
    let occ = w.occurrences();
    let mut positions: [(usize, u32); 8] = [(0, 0); 8];
    let mut sub = Vec::with_capacity(8);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let chosen = [a, b, c, d];
                    for (k, &x) in chosen.iter().enumerate() {
                        positions[2 * k] = (occ[x][0], k as u32);
                        positions[2 * k + 1] = (occ[x][1], k as u32);
                    }
                    positions.sort_unstable_by_key(|&(p, _)| p);
                    sub.clear();
                    sub.extend(positions.iter().map(|&(_, k)| Letter(k)));
                    let restricted = DoubleOccurrenceWord::from_symbols_unchecked(sub.clone());
                    if let Some(pattern) = set.matches(&restricted) {
                        return ConditionB {
                            holds: false,
                            witness: Some(Witness {
                                letters: chosen.map(|x| Letter(x as u32)),
                                pattern,
                            }),
                        };
                    }
                }
            }
        }
    }
    ConditionB {
        holds: true,
        witness: None,
    }
}

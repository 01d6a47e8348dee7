//! Cyclic double-occurrence words.
//!
//! A one-vertex graph with a rotation system is written down by walking
//! around the vertex and recording the loop each half-edge belongs to. The
//! result is a cyclic word of length `2n` in which each of the `n` letters
//! occurs exactly twice. Everything else in this crate works on that
//! encoding.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest loop count accepted by [`enumerate_diagrams`] unless overridden.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("odd number of tokens ({len}); every letter must occur exactly twice")]
    OddLength { len: usize },
    #[error("token `{token}` occurs {count} time(s); expected exactly 2")]
    BadMultiplicity {
        token: String,
        count: usize,
        column: usize,
    },
    #[error("unparseable token `{token}`")]
    BadToken { token: String, column: usize },
    #[error("letter {0} does not occur in the word")]
    UnknownLetter(u32),
    #[error("loop count {n} exceeds the configured bound {max}")]
    BoundExceeded { n: usize, max: usize },
}

/// A loop of the hieroglyph. Ids are dense: a word with `n` loops uses
/// exactly `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u32);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated cyclic double-occurrence word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DoubleOccurrenceWord {
    symbols: Vec<Letter>,
}

impl DoubleOccurrenceWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a word from dense letter ids, checking that every id in
    /// `0..len/2` occurs exactly twice.
    pub fn new(symbols: Vec<Letter>) -> Result<Self, WordError> {
        if !symbols.len().is_multiple_of(2) {
            return Err(WordError::OddLength { len: symbols.len() });
        }
        let n = symbols.len() / 2;
        let mut counts = vec![0usize; n];
        for (column, s) in symbols.iter().enumerate() {
            match counts.get_mut(s.index()) {
                Some(c) => *c += 1,
                None => {
                    return Err(WordError::BadToken {
                        token: s.to_string(),
                        column,
                    })
                }
            }
        }
        if let Some((id, &count)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            let column = symbols.iter().position(|s| s.index() == id).unwrap_or(0);
            return Err(WordError::BadMultiplicity {
                token: id.to_string(),
                count,
                column,
            });
        }
        Ok(Self { symbols })
    }

    /// Builds a word from arbitrary ids, relabeling them densely in order of
    /// first occurrence.
    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Result<Self, WordError> {
        let ids: Vec<u32> = ids.into_iter().collect();
        let tokens: Vec<(String, usize)> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.to_string(), i))
            .collect();
        build_from_tokens(&tokens).map(|l| l.word)
    }

    /// Skips validation. Callers guarantee the double-occurrence property.
    pub(crate) fn from_symbols_unchecked(symbols: Vec<Letter>) -> Self {
        debug_assert!(Self::new(symbols.clone()).is_ok());
        Self { symbols }
    }

    pub fn symbols(&self) -> &[Letter] {
        &self.symbols
    }

    /// Number of loops.
    pub fn loop_count(&self) -> usize {
        self.symbols.len() / 2
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.loop_count() as u32).map(Letter)
    }

    /// The two positions of every letter, indexed by letter id; first < second.
    pub fn occurrences(&self) -> Vec<[usize; 2]> {
        let mut occ = vec![[usize::MAX; 2]; self.loop_count()];
        for (p, s) in self.symbols.iter().enumerate() {
            let slot = &mut occ[s.index()];
            if slot[0] == usize::MAX {
                slot[0] = p;
            } else {
                slot[1] = p;
            }
        }
        occ
    }

    pub fn to_pairing(&self) -> PositionPairing {
        let mut partner = vec![0usize; self.len()];
        for [p, q] in self.occurrences() {
            partner[p] = q;
            partner[q] = p;
        }
        PositionPairing { partner }
    }

    /// Cyclic rotation so that position `shift` becomes position 0.
    pub fn rotated(&self, shift: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(shift % self.len());
        Self { symbols }
    }

    pub fn reversed(&self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Self { symbols }
    }

    /// Applies a letter permutation: letter `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[u32]) -> Self {
        assert_eq!(perm.len(), self.loop_count(), "permutation size mismatch");
        let symbols = self
            .symbols
            .iter()
            .map(|s| Letter(perm[s.index()]))
            .collect();
        Self::new(symbols).expect("relabeling by a permutation keeps the word valid")
    }

    /// Relabels in order of first occurrence (`abab`-style normal form).
    pub fn normalized(&self) -> Self {
        Self {
            symbols: first_occurrence_relabel(&self.symbols),
        }
    }

    pub fn canonical_form(&self, include_reflection: bool) -> CanonicalForm {
        canonical_form(self, include_reflection)
    }
}

impl fmt::Display for DoubleOccurrenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self))
    }
}

/// Involution on positions pairing the two occurrences of each letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionPairing {
    partner: Vec<usize>,
}

impl PositionPairing {
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.partner
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }
}

/// Canonical representative of a word's symmetry class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub word: DoubleOccurrenceWord,
    pub reflection_included: bool,
}

/// A parsed word together with the original token for each letter id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledWord {
    pub word: DoubleOccurrenceWord,
    pub names: Vec<String>,
}

impl LabeledWord {
    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }
}

pub fn parse_word(text: &str) -> Result<DoubleOccurrenceWord, WordError> {
    parse_labeled(text).map(|l| l.word)
}

/// Parses either a string of ASCII letters `[a-z]` or comma-separated
/// non-negative integers. Surrounding whitespace and one pair of enclosing
/// parentheses are ignored, so `()` is the empty word.
pub fn parse_labeled(text: &str) -> Result<LabeledWord, WordError> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut offset = lead;
    if body.starts_with('(') && body.ends_with(')') && body.len() >= 2 {
        body = &body[1..body.len() - 1];
        offset += 1;
    }

    let mut tokens = Vec::new();
    if body.trim().is_empty() {
        // empty hieroglyph
    } else if body.contains(',') {
        let mut column = offset;
        for raw in body.split(',') {
            let tok = raw.trim();
            let tok_col = column + (raw.len() - raw.trim_start().len());
            if tok.is_empty()
                || !tok.bytes().all(|b| b.is_ascii_digit())
                || tok.parse::<u32>().is_err()
            {
                return Err(WordError::BadToken {
                    token: tok.to_string(),
                    column: tok_col,
                });
            }
            // strip leading zeros so "01" and "1" name the same letter
            let value: u32 = tok.parse().expect("checked above");
            tokens.push((value.to_string(), tok_col));
            column += raw.len() + 1;
        }
    } else {
        for (i, c) in body.char_indices() {
            if !c.is_ascii_lowercase() {
                return Err(WordError::BadToken {
                    token: c.to_string(),
                    column: offset + i,
                });
            }
            tokens.push((c.to_string(), offset + i));
        }
    }
    build_from_tokens(&tokens)
}

fn build_from_tokens(tokens: &[(String, usize)]) -> Result<LabeledWord, WordError> {
    let mut ids: HashMap<&str, u32> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut counts: Vec<(usize, usize)> = Vec::new();
    let mut symbols = Vec::with_capacity(tokens.len());
    for (tok, column) in tokens {
        let id = *ids.entry(tok.as_str()).or_insert_with(|| {
            names.push(tok.clone());
            counts.push((0, *column));
            (names.len() - 1) as u32
        });
        counts[id as usize].0 += 1;
        symbols.push(Letter(id));
    }
    if !tokens.len().is_multiple_of(2) {
        return Err(WordError::OddLength { len: tokens.len() });
    }
    if let Some((id, &(count, column))) = counts.iter().enumerate().find(|(_, (c, _))| *c != 2) {
        return Err(WordError::BadMultiplicity {
            token: names[id].clone(),
            count,
            column,
        });
    }
    Ok(LabeledWord {
        word: DoubleOccurrenceWord { symbols },
        names,
    })
}

/// Letter name used for display: `a`..`z` when the word has at most 26
/// loops, decimal ids otherwise.
pub fn letter_name(letter: Letter, loop_count: usize) -> String {
    if loop_count <= 26 {
        char::from(b'a' + letter.0 as u8).to_string()
    } else {
        letter.0.to_string()
    }
}

/// Renders a word in the input grammar accepted by [`parse_word`].
pub fn format_word(w: &DoubleOccurrenceWord) -> String {
    let n = w.loop_count();
    if n <= 26 {
        w.symbols()
            .iter()
            .map(|&s| char::from(b'a' + s.0 as u8))
            .collect()
    } else {
        w.symbols()
            .iter()
            .map(|s| s.0.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn first_occurrence_relabel(symbols: &[Letter]) -> Vec<Letter> {
    const UNSET: u32 = u32::MAX;
    let n = symbols.len() / 2;
    let mut map = vec![UNSET; n];
    let mut next = 0u32;
    symbols
        .iter()
        .map(|s| {
            let slot = &mut map[s.index()];
            if *slot == UNSET {
                *slot = next;
                next += 1;
            }
            Letter(*slot)
        })
        .collect()
}

/// Relabels the letters present in `symbols` densely, preserving the order
/// of their original ids.
pub(crate) fn order_preserving_relabel(symbols: &[Letter], bound: usize) -> Vec<Letter> {
    let mut present = vec![false; bound];
    for s in symbols {
        present[s.index()] = true;
    }
    let mut map = vec![0u32; bound];
    let mut next = 0u32;
    for (id, &p) in present.iter().enumerate() {
        if p {
            map[id] = next;
            next += 1;
        }
    }
    symbols.iter().map(|s| Letter(map[s.index()])).collect()
}

/// Restriction to a letter subset: the subsequence of kept letters, with the
/// cyclic origin at the smallest kept position and ids relabeled densely in
/// their original order.
pub fn restrict(
    w: &DoubleOccurrenceWord,
    keep: &[Letter],
) -> Result<DoubleOccurrenceWord, WordError> {
    let n = w.loop_count();
    let mut kept = vec![false; n];
    for l in keep {
        if l.index() >= n {
            return Err(WordError::UnknownLetter(l.0));
        }
        kept[l.index()] = true;
    }
    let sub: Vec<Letter> = w
        .symbols()
        .iter()
        .copied()
        .filter(|s| kept[s.index()])
        .collect();
    Ok(DoubleOccurrenceWord::from_symbols_unchecked(
        order_preserving_relabel(&sub, n),
    ))
}

/// Lexicographically minimal first-occurrence relabeling over all cyclic
/// rotations and, optionally, reversals.
pub fn canonical_form(w: &DoubleOccurrenceWord, include_reflection: bool) -> CanonicalForm {
    let len = w.len();
    let mut best: Option<Vec<Letter>> = None;
    let mut buf = Vec::with_capacity(len);
    let mut consider = |seq: &[Letter], buf: &mut Vec<Letter>| {
        for shift in 0..len.max(1) {
            buf.clear();
            buf.extend_from_slice(&seq[shift.min(len)..]);
            buf.extend_from_slice(&seq[..shift.min(len)]);
            let cand = first_occurrence_relabel(buf);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    };
    consider(w.symbols(), &mut buf);
    if include_reflection {
        let rev: Vec<Letter> = w.symbols().iter().rev().copied().collect();
        consider(&rev, &mut buf);
    }
    CanonicalForm {
        word: DoubleOccurrenceWord::from_symbols_unchecked(best.unwrap_or_default()),
        reflection_included: include_reflection,
    }
}

pub fn equivalent(
    a: &DoubleOccurrenceWord,
    b: &DoubleOccurrenceWord,
    include_reflection: bool,
) -> bool {
    a.len() == b.len()
        && canonical_form(a, include_reflection) == canonical_form(b, include_reflection)
}

/// `(2n - 1)!!`, the number of perfect matchings on `2n` points.
pub fn double_factorial_odd(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub max_n: usize,
    pub dedupe: bool,
    pub include_reflection: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_ENUMERATION_BOUND,
            dedupe: false,
            include_reflection: true,
        }
    }
}

/// Every chord diagram on `n` chords, as first-occurrence labeled words.
pub fn enumerate_diagrams(n: usize, dedupe: bool) -> Result<Diagrams, WordError> {
    enumerate_diagrams_with(
        n,
        EnumerationOptions {
            dedupe,
            ..EnumerationOptions::default()
        },
    )
}

pub fn enumerate_diagrams_with(n: usize, opts: EnumerationOptions) -> Result<Diagrams, WordError> {
    if n > opts.max_n {
        return Err(WordError::BoundExceeded { n, max: opts.max_n });
    }
    Ok(Diagrams {
        matchings: Matchings::new(n),
        dedupe: opts.dedupe.then_some(opts.include_reflection),
    })
}

/// Stream returned by [`enumerate_diagrams`].
pub struct Diagrams {
    matchings: Matchings,
    /// `Some(reflection)` when only class representatives are wanted.
    dedupe: Option<bool>,
}

impl Iterator for Diagrams {
    type Item = DoubleOccurrenceWord;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let w = self.matchings.next()?;
            match self.dedupe {
                None => return Some(w),
                Some(refl) => {
                    if canonical_form(&w, refl).word == w {
                        return Some(w);
                    }
                }
            }
        }
    }
}

/// Backtracking enumeration of perfect matchings. The smallest unmatched
/// position is always paired next, so letter ids come out in
/// first-occurrence order and each matching is produced once.
struct Matchings {
    slots: Vec<u32>,
    // (first position, partner position) per letter, letter = stack depth
    stack: Vec<(usize, usize)>,
    started: bool,
    done: bool,
}

const FREE: u32 = u32::MAX;

impl Matchings {
    fn new(n: usize) -> Self {
        Self {
            slots: vec![FREE; 2 * n],
            stack: Vec::with_capacity(n),
            started: false,
            done: false,
        }
    }

    fn next_free(&self, from: usize) -> Option<usize> {
        (from..self.slots.len()).find(|&p| self.slots[p] == FREE)
    }

    fn fill(&mut self) {
        while let Some(i) = self.next_free(0) {
            let j = self.next_free(i + 1).expect("free positions come in pairs");
            let letter = self.stack.len() as u32;
            self.slots[i] = letter;
            self.slots[j] = letter;
            self.stack.push((i, j));
        }
    }

    fn advance(&mut self) -> bool {
        while let Some((i, j)) = self.stack.pop() {
            self.slots[i] = FREE;
            self.slots[j] = FREE;
            if let Some(k) = self.next_free(j + 1) {
                let letter = self.stack.len() as u32;
                self.slots[i] = letter;
                self.slots[k] = letter;
                self.stack.push((i, k));
                self.fill();
                return true;
            }
        }
        false
    }

    fn current(&self) -> DoubleOccurrenceWord {
        DoubleOccurrenceWord::from_symbols_unchecked(
            self.slots.iter().map(|&s| Letter(s)).collect(),
        )
    }
}

impl Iterator for Matchings {
    type Item = DoubleOccurrenceWord;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(self.current());
        }
        if self.advance() {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

/// Uniformly random chord diagram on `n` chords (shuffle-and-pair).
pub fn random_word<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DoubleOccurrenceWord {
    let mut positions: Vec<usize> = (0..2 * n).collect();
    positions.shuffle(rng);
    let mut symbols = vec![Letter(0); 2 * n];
    for (letter, pair) in positions.chunks_exact(2).enumerate() {
        symbols[pair[0]] = Letter(letter as u32);
        symbols[pair[1]] = Letter(letter as u32);
    }
    DoubleOccurrenceWord::from_symbols_unchecked(symbols)
}

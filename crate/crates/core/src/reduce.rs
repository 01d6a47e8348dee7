//! Condition (D): reduction by deleting isolated loops (α) and merging
//! parallel loops (β), plus the linear-time reducer that decides it.
//!
//! α applies to a letter whose two occurrences are cyclically adjacent
//! (`aa…`). β applies to two letters that occur as adjacent pairs `xy` and
//! `yx` at four distinct positions (`xy…yx…`); it deletes both occurrences
//! of `y`, leaving `x` in place of the merged loop. Both moves preserve the
//! genus of the ribbon surface, and a word with no applicable move is
//! torus-embeddable exactly when it is `()`, `abab` or `abcabc`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::word::{
    canonical_form, order_preserving_relabel, parse_word, DoubleOccurrenceWord, Letter, WordError,
};

/// Default loop bound for [`oracle_reduce_all`].
pub const DEFAULT_ORACLE_BOUND: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("reduction step is not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Alpha,
    Beta,
}

/// One step of a reduction, in coordinates of the input word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub kind: StepKind,
    /// Positions removed by the step, in the input word.
    pub positions: [usize; 2],
    /// The letter removed.
    pub removed: Letter,
    /// For β, the parallel letter that absorbs the removed one.
    pub kept: Option<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub residual: DoubleOccurrenceWord,
    /// Elementary operations performed: worklist pops plus position removals.
    pub work: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidualClass {
    Empty,
    Abab,
    Abcabc,
    Other,
}

impl ResidualClass {
    pub fn is_torus_residual(self) -> bool {
        self != ResidualClass::Other
    }
}

/// A move available on a word, as used by the word-level API.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// Delete the letter at `pos` together with its neighbour `pos + 1`.
    Alpha { pos: usize },
    /// Merge parallel letters, deleting `remove` and keeping `keep`.
    Beta { keep: Letter, remove: Letter },
}

pub fn apply_alpha(
    w: &DoubleOccurrenceWord,
    pos: usize,
) -> Result<DoubleOccurrenceWord, ReduceError> {
    let len = w.len();
    if pos >= len {
        return Err(ReduceError::NotApplicable(format!(
            "position {pos} out of range"
        )));
    }
    let next = (pos + 1) % len;
    let sym = w.symbols();
    if next == pos || sym[pos] != sym[next] {
        return Err(ReduceError::NotApplicable(format!(
            "positions {pos} and {next} do not carry the same letter"
        )));
    }
    let rest: Vec<Letter> = sym
        .iter()
        .enumerate()
        .filter(|&(p, _)| p != pos && p != next)
        .map(|(_, &s)| s)
        .collect();
    Ok(DoubleOccurrenceWord::from_symbols_unchecked(
        order_preserving_relabel(&rest, w.loop_count()),
    ))
}

/// Positions `(p, q, q2, p2)` with `x` at `p, p2`, `y` at `q, q2`, and the
/// cyclic adjacencies `p -> q`, `q2 -> p2`.
fn beta_frame(w: &DoubleOccurrenceWord, x: Letter, y: Letter) -> Option<[usize; 4]> {
    let n = w.loop_count();
    if x == y || x.index() >= n || y.index() >= n {
        return None;
    }
    let len = w.len();
    let sym = w.symbols();
    let occ = w.occurrences();
    for (i, &p) in occ[x.index()].iter().enumerate() {
        let p2 = occ[x.index()][1 - i];
        let q = (p + 1) % len;
        if sym[q] != y {
            continue;
        }
        let q2 = if occ[y.index()][0] == q {
            occ[y.index()][1]
        } else {
            occ[y.index()][0]
        };
        if (q2 + 1) % len == p2 {
            return Some([p, q, q2, p2]);
        }
    }
    None
}

/// Merges the parallel letters `x` and `y` by deleting both occurrences of `y`.
pub fn apply_beta(
    w: &DoubleOccurrenceWord,
    x: Letter,
    y: Letter,
) -> Result<DoubleOccurrenceWord, ReduceError> {
    if beta_frame(w, x, y).is_none() {
        return Err(ReduceError::NotApplicable(format!(
            "letters {x} and {y} are not parallel"
        )));
    }
    let rest: Vec<Letter> = w.symbols().iter().copied().filter(|&s| s != y).collect();
    Ok(DoubleOccurrenceWord::from_symbols_unchecked(
        order_preserving_relabel(&rest, w.loop_count()),
    ))
}

pub fn apply_move(w: &DoubleOccurrenceWord, m: Move) -> Result<DoubleOccurrenceWord, ReduceError> {
    match m {
        Move::Alpha { pos } => apply_alpha(w, pos),
        Move::Beta { keep, remove } => apply_beta(w, keep, remove),
    }
}

/// Every distinct move applicable to `w`: one α per isolated letter and
/// both orientations of each parallel pair.
pub fn applicable_moves(w: &DoubleOccurrenceWord) -> Vec<Move> {
    let len = w.len();
    let sym = w.symbols();
    let mut out = Vec::new();
    let mut seen_alpha = HashSet::new();
    let mut seen_beta = HashSet::new();
    for p in 0..len {
        let q = (p + 1) % len;
        let (x, y) = (sym[p], sym[q]);
        if x == y {
            if seen_alpha.insert(x) {
                out.push(Move::Alpha { pos: p });
            }
        } else if beta_frame(w, x, y).is_some() {
            for (keep, remove) in [(x, y), (y, x)] {
                if seen_beta.insert((keep, remove)) {
                    out.push(Move::Beta { keep, remove });
                }
            }
        }
    }
    out
}

pub fn is_irreducible(w: &DoubleOccurrenceWord) -> bool {
    applicable_moves(w).is_empty()
}

/// Circular doubly-linked list over the positions of a word.
struct Ring {
    next: Vec<usize>,
    prev: Vec<usize>,
    partner: Vec<usize>,
    alive: Vec<bool>,
    live: usize,
}

impl Ring {
    fn new(w: &DoubleOccurrenceWord) -> Self {
        let len = w.len();
        Self {
            next: (0..len).map(|p| (p + 1) % len).collect(),
            prev: (0..len).map(|p| (p + len - 1) % len).collect(),
            partner: w.to_pairing().as_slice().to_vec(),
            alive: vec![true; len],
            live: len,
        }
    }

    fn unlink(&mut self, p: usize) {
        let (a, b) = (self.prev[p], self.next[p]);
        self.next[a] = b;
        self.prev[b] = a;
        self.alive[p] = false;
        self.live -= 1;
    }
}

/// Reduces `w` until no α or β step applies anywhere on the cycle.
///
/// Every pair of neighbouring positions starts on a worklist; a removal
/// creates at most two new neighbouring pairs and only those are pushed
/// again. Each β is detectable from either of its two adjacent pairs, so
/// examining new adjacencies is enough to catch every newly enabled step.
/// At most `2n + 2n` pops happen in total.
pub fn fully_reduce_linear(w: &DoubleOccurrenceWord) -> ReductionTrace {
    let len = w.len();
    let sym = w.symbols();
    let mut ring = Ring::new(w);
    let mut steps = Vec::new();
    let mut work = 0u64;
    let mut stack: Vec<usize> = (0..len).rev().collect();

    while let Some(p) = stack.pop() {
        work += 1;
        if !ring.alive[p] {
            continue;
        }
        let q = ring.next[p];
        if ring.partner[p] == q {
            let before = ring.prev[p];
            ring.unlink(p);
            ring.unlink(q);
            work += 2;
            steps.push(ReductionStep {
                kind: StepKind::Alpha,
                positions: [p, q],
                removed: sym[p],
                kept: None,
            });
            if ring.live > 0 {
                stack.push(before);
            }
            continue;
        }
        let q2 = ring.partner[q];
        let p2 = ring.next[q2];
        if p2 == ring.partner[p] {
            ring.unlink(q);
            ring.unlink(q2);
            work += 2;
            steps.push(ReductionStep {
                kind: StepKind::Beta,
                positions: [q, q2],
                removed: sym[q],
                kept: Some(sym[p]),
            });
            stack.push(p);
            stack.push(ring.prev[p2]);
        }
    }

    let rest: Vec<Letter> = (0..len)
        .filter(|&p| ring.alive[p])
        .map(|p| sym[p])
        .collect();
    ReductionTrace {
        steps,
        residual: DoubleOccurrenceWord::from_symbols_unchecked(order_preserving_relabel(
            &rest,
            w.loop_count(),
        )),
        work,
    }
}

/// Left-to-right single pass with no wrap-around: each symbol is appended
/// to a running sequence, cancelling against the current last symbol by α,
/// or by β when the appended symbol already sits directly before another
/// copy of the last symbol. Pairs formed later, or across the seam, are
/// never revisited. Kept only to compare against [`fully_reduce_linear`].
pub fn reduce_one_pass(w: &DoubleOccurrenceWord) -> DoubleOccurrenceWord {
    let len = w.len();
    let sym = w.symbols();
    let partner = w.to_pairing();
    let mut chain = Chain::new(len);

    for i in 0..len {
        if let Some(a) = chain.tail {
            if sym[a] == sym[i] {
                chain.unlink(a);
                continue;
            }
            let other_x = partner.partner(i);
            let other_a = partner.partner(a);
            if chain.alive[other_x] && chain.next[other_x] == Some(other_a) {
                chain.unlink(a);
                chain.unlink(other_a);
            }
        }
        chain.push(i);
    }

    let rest: Vec<Letter> = (0..len)
        .filter(|&p| chain.alive[p])
        .map(|p| sym[p])
        .collect();
    DoubleOccurrenceWord::from_symbols_unchecked(order_preserving_relabel(&rest, w.loop_count()))
}

/// Open doubly-linked list used by [`reduce_one_pass`].
struct Chain {
    next: Vec<Option<usize>>,
    prev: Vec<Option<usize>>,
    alive: Vec<bool>,
    tail: Option<usize>,
}

impl Chain {
    fn new(len: usize) -> Self {
        Self {
            next: vec![None; len],
            prev: vec![None; len],
            alive: vec![false; len],
            tail: None,
        }
    }

    fn push(&mut self, p: usize) {
        self.alive[p] = true;
        self.prev[p] = self.tail;
        self.next[p] = None;
        if let Some(t) = self.tail {
            self.next[t] = Some(p);
        }
        self.tail = Some(p);
    }

    fn unlink(&mut self, p: usize) {
        let (a, b) = (self.prev[p], self.next[p]);
        if let Some(a) = a {
            self.next[a] = b;
        }
        match b {
            Some(b) => self.prev[b] = a,
            None => self.tail = a,
        }
        self.alive[p] = false;
    }
}

fn reference_residuals() -> &'static [(ResidualClass, DoubleOccurrenceWord); 2] {
    use std::sync::OnceLock;
    static REFS: OnceLock<[(ResidualClass, DoubleOccurrenceWord); 2]> = OnceLock::new();
    REFS.get_or_init(|| {
        [
            (
                ResidualClass::Abab,
                canonical_form(&parse_word("abab").unwrap(), true).word,
            ),
            (
                ResidualClass::Abcabc,
                canonical_form(&parse_word("abcabc").unwrap(), true).word,
            ),
        ]
    })
}

/// Compares against `()`, `abab`, `abcabc`. Intended for irreducible words
/// but safe on any input; words longer than six symbols are `Other`
/// without further work.
pub fn classify_residual(w: &DoubleOccurrenceWord) -> ResidualClass {
    match w.len() {
        0 => ResidualClass::Empty,
        4 | 6 => {
            let c = canonical_form(w, true).word;
            reference_residuals()
                .iter()
                .find(|(_, r)| *r == c)
                .map_or(ResidualClass::Other, |(class, _)| *class)
        }
        _ => ResidualClass::Other,
    }
}

pub fn is_condition_d(w: &DoubleOccurrenceWord) -> bool {
    classify_residual(&fully_reduce_linear(w).residual).is_torus_residual()
}

/// All irreducible words reachable from `w` by any sequence of α/β moves,
/// as canonical forms (reversal included).
pub fn oracle_reduce_all(
    w: &DoubleOccurrenceWord,
) -> Result<BTreeSet<DoubleOccurrenceWord>, ReduceError> {
    oracle_reduce_all_bounded(w, DEFAULT_ORACLE_BOUND)
}

pub fn oracle_reduce_all_bounded(
    w: &DoubleOccurrenceWord,
    max_n: usize,
) -> Result<BTreeSet<DoubleOccurrenceWord>, ReduceError> {
    let n = w.loop_count();
    if n > max_n {
        return Err(WordError::BoundExceeded { n, max: max_n }.into());
    }
    let start = canonical_form(w, true).word;
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut residuals = BTreeSet::new();
    while let Some(cur) = queue.pop_front() {
        let moves = applicable_moves(&cur);
        if moves.is_empty() {
            residuals.insert(cur);
            continue;
        }
        for m in moves {
            let next = apply_move(&cur, m).expect("listed moves are applicable");
            let key = canonical_form(&next, true).word;
            if seen.insert(key.clone()) {
                queue.push_back(key);
            }
        }
    }
    Ok(residuals)
}

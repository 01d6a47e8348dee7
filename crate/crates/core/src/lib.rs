//! Torus embeddability of hieroglyphs: one-vertex graphs with a rotation
//! system, written as cyclic double-occurrence words.
//!
//! Four independent criteria decide whether such a graph embeds in the
//! torus, and they always agree:
//!
//! - (A) [`genus::is_torus_embeddable`]: the ribbon surface has genus ≤ 1;
//! - (B) [`forbidden::is_condition_b`]: no four letters restrict to one of
//!   `ababcdcd`, `abcdabcd`, `abacdcbd`, `abcadbdc`;
//! - (C) [`interlace::is_condition_c`]: the interlacement graph is isolated
//!   vertices plus a complete bi- or tripartite graph;
//! - (D) [`reduce::is_condition_d`]: α/β reduction ends in `()`, `abab` or
//!   `abcabc`. This one runs in linear time.

pub mod bench;
pub mod cli;
pub mod forbidden;
pub mod genus;
pub mod interlace;
pub mod reduce;
pub mod report;
pub mod word;

pub use forbidden::{forbidden_closure, is_condition_b, ForbiddenSet, Witness};
pub use genus::{boundary_components, genus, is_torus_embeddable, BoundaryTrace, GenusReport};
pub use interlace::{interlace_graph, is_condition_c, InterlaceGraph, MultipartiteDecomposition};
pub use reduce::{
    apply_alpha, apply_beta, classify_residual, fully_reduce_linear, is_condition_d,
    oracle_reduce_all, ReductionStep, ReductionTrace, ResidualClass,
};
pub use word::{
    canonical_form, enumerate_diagrams, equivalent, format_word, parse_word, restrict,
    CanonicalForm, DoubleOccurrenceWord, Letter, PositionPairing, WordError,
};

//! Threshold graphs presented by binary creation codes.
//!
//! A threshold graph on `n` vertices is described by a code of `n` symbols:
//! `n - 1` binary digits followed by a trailing `*`. The code is read right to
//! left — the rightmost symbol is the vertex placed first. A `1` adds a
//! dominating vertex (adjacent to everything placed so far), a `0` adds an
//! isolated vertex. The first vertex has nobody to dominate, so its digit is
//! irrelevant; it is written `*`, and codes ending in `0` or `1` normalize to
//! the starred spelling (`T(0010010) = T(001001*)`).
//!
//! Positions are 0-based and count from the *left*, so position `p` was placed
//! after position `q` whenever `p < q`, and two positions `p < q` are adjacent
//! exactly when the digit at `p` is `1`.
//!
//! The crate splits into:
//!
//! * [`code`] — the code type itself, `a`/`b` letter decompositions, and the
//!   structural defects (bracketed strings, separation issues) that separate
//!   arbitrary codes from almost-alternating ones;
//! * [`graph`] — explicit adjacency, code extraction from arbitrary graphs,
//!   and edge-list / dot export;
//! * [`counting`] — exact matching and independent-set counts, both by the
//!   right-to-left dynamic program and by brute-force oracles;
//! * [`moves`] — the local rewrites that preserve vertex and edge counts while
//!   monotonically driving the matching count up or the independent-set count
//!   down, plus the two normalization loops built from them;
//! * [`extremal`] — closed-form edge counts and direct construction of the
//!   extremal codes (almost-alternating for matchings, colex for independent
//!   sets);
//! * [`verify`] — exhaustive enumeration over all `2^(n-1)` codes checking the
//!   extremal claims, with parallel, deterministic, resumable reports.

pub mod code;
pub mod counting;
pub mod extremal;
pub mod graph;
pub mod moves;
pub mod verify;

pub use code::{AbForm, Bit, Letter, ParseCodeError, StructuralDefect, ThresholdCode};
pub use counting::{IndependenceVector, MatchingVector};
pub use graph::Graph;

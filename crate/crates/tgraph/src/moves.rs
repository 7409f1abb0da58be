//! Local code rewrites and the reduction loops built from them.
//!
//! Every move swaps a short window for another spelling with the same vertex
//! and edge counts (checked on each application). What changes is the count
//! profile: `ab_switch` preserves the matching vector exactly, the bracketed
//! moves strictly increase the number of matchings, and the indset moves
//! strictly decrease the number of independent sets. Chaining them drives
//! any code to the almost-alternating form (maximum matchings) or to the
//! colex form (minimum independent sets), with a [`RewriteTrace`] recording
//! each step and its totals as a certificate.
//!
//! Window positions name the leftmost symbol of the pattern. The `*` may
//! serve as the final symbol of a window, standing for whichever digit the
//! pattern needs there.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::code::{Bit, StructuralDefect, ThresholdCode};
use crate::counting::{ind_vector, match_vector};
use crate::extremal;
use crate::graph::edge_count;

/// The five rewrite moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    AbSwitch,
    BracketedOne,
    BracketedZero,
    IndsetConsecutive,
    IndsetNonconsecutive,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::AbSwitch => "ab-switch",
            MoveKind::BracketedOne => "bracketed-1-move",
            MoveKind::BracketedZero => "bracketed-0-move",
            MoveKind::IndsetConsecutive => "indset-0-move",
            MoveKind::IndsetNonconsecutive => "indset-nonconsecutive-move",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Errors from the move preconditions.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("window at {at} does not fit a code of {n} symbols")]
    OutOfRange { at: usize, n: usize },
    #[error("window at {at} reads {found:?}, expected {expected}")]
    PatternMismatch { at: usize, found: String, expected: &'static str },
}

/// The window text starting at `at`, `*` included, capped at `len` symbols.
fn window_text(code: &ThresholdCode, at: usize, len: usize) -> String {
    (at..code.n().min(at + len))
        .map(|p| match code.digit_at(p) {
            Some(b) => b.as_char(),
            None => '*',
        })
        .collect()
}

/// Overwrite stored digits from `at` with `digits`; a digit aimed at the
/// `*` position is absorbed (either reading of the `*` supplies it).
fn write_window(code: &ThresholdCode, at: usize, digits: &[Bit]) -> ThresholdCode {
    let mut symbols = code.symbols().to_vec();
    for (i, &d) in digits.iter().enumerate() {
        if at + i < symbols.len() {
            symbols[at + i] = d;
        }
    }
    ThresholdCode::from_symbols(symbols)
}

/// Every move must hand back a code with the same n and e.
fn preserving(before: &ThresholdCode, after: ThresholdCode) -> ThresholdCode {
    assert_eq!(before.n(), after.n(), "vertex count drifted: {before} -> {after}");
    assert_eq!(
        edge_count(before),
        edge_count(&after),
        "edge count drifted: {before} -> {after}"
    );
    after
}

/// Swap a `0110` window for `1001` or vice versa. Preserves the matching
/// vector entry-wise; the workhorse inside the separation-issue schedule.
pub fn ab_switch(code: &ThresholdCode, at: usize) -> Result<ThresholdCode, MoveError> {
    let n = code.n();
    if at + 4 > n {
        return Err(MoveError::OutOfRange { at, n });
    }
    let reads = |pattern: [Bit; 4]| (0..4).all(|i| code.matches(at + i, pattern[i]));
    use Bit::{One, Zero};
    let replacement = if reads([Zero, One, One, Zero]) {
        [One, Zero, Zero, One]
    } else if reads([One, Zero, Zero, One]) {
        [Zero, One, One, Zero]
    } else {
        return Err(MoveError::PatternMismatch {
            at,
            found: window_text(code, at, 4),
            expected: "0110 or 1001",
        });
    };
    Ok(preserving(code, write_window(code, at, &replacement)))
}

/// Shared body of the three run rewrites. The window is
/// `x d^j x` (left bracket `x` stored, right bracket stored or `*`) and
/// becomes `d x d^(j-2) x d`, pushing the run's surplus outward.
fn rewrite_run(
    code: &ThresholdCode,
    at: usize,
    run_digit: Bit,
    jmin: usize,
    expected: &'static str,
) -> Result<ThresholdCode, MoveError> {
    let n = code.n();
    if at + jmin + 2 > n {
        return Err(MoveError::OutOfRange { at, n });
    }
    let bracket = run_digit.flip();
    let mut j = 0;
    while at + 1 + j < n - 1 && code.digit_at(at + 1 + j) == Some(run_digit) {
        j += 1;
    }
    if code.digit_at(at) != Some(bracket) || j < jmin {
        return Err(MoveError::PatternMismatch {
            at,
            found: window_text(code, at, j + 2),
            expected,
        });
    }
    // maximality of the run makes the right bracket automatic: the next
    // symbol is the opposite digit or the `*`
    let mut replacement = Vec::with_capacity(j + 2);
    replacement.push(run_digit);
    replacement.push(bracket);
    replacement.extend(std::iter::repeat_n(run_digit, j - 2));
    replacement.push(bracket);
    replacement.push(run_digit);
    Ok(preserving(code, write_window(code, at, &replacement)))
}

/// Rewrite a bracketed 1-string: `0 1^j 0` with `j ≥ 3` (right bracket may
/// be the `*`) becomes `1 0 1^(j-2) 0 1`. Strictly increases the number of
/// matchings, weakly for every size.
pub fn bracketed_1_move(code: &ThresholdCode, at: usize) -> Result<ThresholdCode, MoveError> {
    rewrite_run(code, at, Bit::One, 3, "0 1^j 0 with j >= 3")
}

/// Rewrite a bracketed 0-string: `1 0^j 1` with `j ≥ 3` becomes
/// `0 1 0^(j-2) 1 0`. Strictly increases the number of matchings, weakly
/// for every size.
pub fn bracketed_0_move(code: &ThresholdCode, at: usize) -> Result<ThresholdCode, MoveError> {
    rewrite_run(code, at, Bit::Zero, 3, "1 0^j 1 with j >= 3")
}

/// The same rewrite as [`bracketed_0_move`] but admitted already at `j ≥ 2`,
/// where it strictly decreases the number of independent sets (weakly for
/// every size). A `j = 2` window is not a bracketed string, so the two
/// thresholds stay separate.
pub fn indset_consecutive_move(code: &ThresholdCode, at: usize) -> Result<ThresholdCode, MoveError> {
    rewrite_run(code, at, Bit::Zero, 2, "1 0^j 1 with j >= 2")
}

/// Rewrite `1 0 1^j 0 1` with `j ≥ 1` (final 1 may be the `*`) into
/// `0 1^(j+2) 0`, merging the two separated dominating groups. Strictly
/// decreases the number of independent sets, weakly for every size.
pub fn indset_nonconsecutive_move(
    code: &ThresholdCode,
    at: usize,
) -> Result<ThresholdCode, MoveError> {
    let n = code.n();
    if at + 5 > n {
        return Err(MoveError::OutOfRange { at, n });
    }
    use Bit::{One, Zero};
    let mut j = 0;
    while at + 2 + j < n - 1 && code.digit_at(at + 2 + j) == Some(One) {
        j += 1;
    }
    let shape_ok = code.digit_at(at) == Some(One)
        && code.digit_at(at + 1) == Some(Zero)
        && j >= 1
        && at + j + 3 < n
        && code.digit_at(at + j + 2) == Some(Zero) // middle 0 must be stored
        && code.matches(at + j + 3, One);
    if !shape_ok {
        return Err(MoveError::PatternMismatch {
            at,
            found: window_text(code, at, j + 4),
            expected: "1 0 1^j 0 1 with j >= 1",
        });
    }
    let mut replacement = Vec::with_capacity(j + 4);
    replacement.push(Zero);
    replacement.extend(std::iter::repeat_n(One, j + 2));
    replacement.push(Zero);
    Ok(preserving(code, write_window(code, at, &replacement)))
}

// ---- traces ------------------------------------------------------------------

/// Which count a reduction certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Matchings,
    Indsets,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Matchings => "matchings",
            Objective::Indsets => "indsets",
        }
    }

    fn total(self, code: &ThresholdCode) -> BigUint {
        match self {
            Objective::Matchings => match_vector(code).total(),
            Objective::Indsets => ind_vector(code).total(),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One applied move with the objective totals on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub kind: MoveKind,
    pub at: usize,
    pub before: ThresholdCode,
    pub after: ThresholdCode,
    pub total_before: BigUint,
    pub total_after: BigUint,
}

/// An ordered run of rewrite steps from `initial` to `final_code`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub objective: Objective,
    pub initial: ThresholdCode,
    pub final_code: ThresholdCode,
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    fn new(objective: Objective, initial: ThresholdCode) -> Self {
        let final_code = initial.clone();
        RewriteTrace { objective, initial, final_code, steps: Vec::new() }
    }

    fn push(&mut self, kind: MoveKind, at: usize, before: &ThresholdCode, after: &ThresholdCode) {
        self.steps.push(RewriteStep {
            kind,
            at,
            before: before.clone(),
            after: after.clone(),
            total_before: self.objective.total(before),
            total_after: self.objective.total(after),
        });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Check the composition invariants: consecutive steps chain, the ends
    /// match `initial`/`final_code`, and every step preserves n and e.
    pub fn validate(&self) -> bool {
        let mut at = &self.initial;
        for step in &self.steps {
            if step.before != *at
                || step.before.n() != step.after.n()
                || edge_count(&step.before) != edge_count(&step.after)
            {
                return false;
            }
            at = &step.after;
        }
        *at == self.final_code
    }
}

impl Serialize for RewriteTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (before_key, after_key) = match self.objective {
            Objective::Matchings => ("m_total_before", "m_total_after"),
            Objective::Indsets => ("i_total_before", "i_total_after"),
        };
        struct Steps<'a>(&'a RewriteTrace, &'static str, &'static str);
        impl Serialize for Steps<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.steps.len()))?;
                for step in &self.0.steps {
                    let mut entry = serde_json::Map::new();
                    entry.insert("kind".into(), step.kind.as_str().into());
                    entry.insert("at".into(), step.at.into());
                    entry.insert("before".into(), step.before.to_string().into());
                    entry.insert("after".into(), step.after.to_string().into());
                    entry.insert(self.1.into(), step.total_before.to_string().into());
                    entry.insert(self.2.into(), step.total_after.to_string().into());
                    seq.serialize_element(&entry)?;
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("objective", self.objective.as_str())?;
        map.serialize_entry("initial", &self.initial)?;
        map.serialize_entry("final", &self.final_code)?;
        map.serialize_entry("steps", &Steps(self, before_key, after_key))?;
        map.end()
    }
}

// ---- reductions --------------------------------------------------------------

/// Drive `code` to an almost-alternating code by matching-safe rewrites:
/// apply a bracketed move whenever a bracketed string exists (each strictly
/// increases the matching total), otherwise chase the minimal separation
/// issue with ab-switches until a bracketed string appears. The fixpoints
/// are exactly the almost-alternating codes.
pub fn maximize_matchings_by_moves(code: &ThresholdCode) -> RewriteTrace {
    let mut trace = RewriteTrace::new(Objective::Matchings, code.clone());
    let mut current = code.clone();
    loop {
        if let Some(StructuralDefect::BracketedString { digit, at, .. }) =
            current.find_bracketed_string()
        {
            let (kind, next) = match digit {
                Bit::One => (MoveKind::BracketedOne, bracketed_1_move(&current, at)),
                Bit::Zero => (MoveKind::BracketedZero, bracketed_0_move(&current, at)),
            };
            let next = next.expect("a bracketed string is a valid move window");
            trace.push(kind, at, &current, &next);
            let step = trace.steps.last().unwrap();
            assert!(
                step.total_after > step.total_before,
                "bracketed move failed to increase matchings: {current} -> {next}"
            );
            current = next;
            continue;
        }
        match current.find_separation_issue() {
            Some(StructuralDefect::SeparationIssue { first_pair, second_pair }) => {
                run_separation_schedule(&mut current, &mut trace, first_pair, second_pair);
            }
            _ => break,
        }
    }
    assert!(current.is_almost_alternating(), "reduction stalled on {current}");
    trace.final_code = current;
    trace
}

/// Shrink one separation issue with ab-switches until a bracketed string
/// appears. `p` and `q` index the two pairs; each round either closes the
/// gap by two or flips the first pair's digit in place (at most once in a
/// row), so the budget is linear in the gap.
fn run_separation_schedule(
    current: &mut ThresholdCode,
    trace: &mut RewriteTrace,
    mut p: usize,
    q: usize,
) {
    let budget = q - p + 4;
    for _ in 0..budget {
        let s = p - 1;
        let d1 = current.digit_at(p).expect("pair digit is stored");
        let at = if q == p + 3 {
            s // gap of one symbol: the base switch exposes a bracketed string
        } else {
            let w0 = current.digit_at(p + 3).expect("middle digit is stored");
            if w0 != d1 {
                s + 2
            } else {
                s
            }
        };
        let next = ab_switch(current, at).expect("schedule window always matches");
        trace.push(MoveKind::AbSwitch, at, current, &next);
        let step = trace.steps.last().unwrap();
        assert_eq!(step.total_before, step.total_after, "ab-switch changed the total");
        *current = next;
        if current.find_bracketed_string().is_some() {
            return;
        }
        assert!(q != p + 3, "base switch must expose a bracketed string: {current}");
        if at == s + 2 || d1 == Bit::One {
            p += 2;
        }
        // otherwise the switch was lateral: the pair digit flipped from 0 to
        // 1 in place and the next round advances
    }
    panic!("separation schedule exceeded its budget at {current}");
}

/// Drive `code` to the colex code by independent-set-decreasing rewrites:
/// always the leftmost consecutive window (`1 0^j 1`, `j ≥ 2`), otherwise
/// the leftmost nonconsecutive window. Each step strictly decreases both
/// the independent-set total and the code's binary value, which is the
/// termination certificate; the fixpoints are exactly the colex codes.
pub fn minimize_indsets_by_moves(code: &ThresholdCode) -> RewriteTrace {
    let mut trace = RewriteTrace::new(Objective::Indsets, code.clone());
    let mut current = code.clone();
    let mut value = binary_value(&current);
    loop {
        let found = find_consecutive_window(&current)
            .map(|at| (MoveKind::IndsetConsecutive, at))
            .or_else(|| {
                find_nonconsecutive_window(&current).map(|at| (MoveKind::IndsetNonconsecutive, at))
            });
        let Some((kind, at)) = found else { break };
        let next = match kind {
            MoveKind::IndsetConsecutive => indset_consecutive_move(&current, at),
            _ => indset_nonconsecutive_move(&current, at),
        }
        .expect("scanned window is a valid move window");
        let next_value = binary_value(&next);
        assert!(next_value < value, "binary value must strictly decrease: {current} -> {next}");
        value = next_value;
        trace.push(kind, at, &current, &next);
        let step = trace.steps.last().unwrap();
        assert!(
            step.total_after < step.total_before,
            "indset move failed to decrease the total: {current} -> {next}"
        );
        current = next;
    }
    let colex = extremal::colex_code(current.n(), edge_count(&current))
        .expect("n and e of a real code are always in range");
    assert_eq!(current, colex, "fixpoint is not the colex code");
    trace.final_code = current;
    trace
}

/// The stored digits read as a binary number, leftmost digit most
/// significant. Every indset move strictly lowers it.
fn binary_value(code: &ThresholdCode) -> BigUint {
    let mut v = BigUint::zero();
    for &b in code.symbols() {
        v <<= 1;
        if b == Bit::One {
            v += 1u32;
        }
    }
    v
}

/// Leftmost `1 0^j 1` window with `j ≥ 2` (closing 1 may be the `*`).
fn find_consecutive_window(code: &ThresholdCode) -> Option<usize> {
    let stored = code.n() - 1;
    for at in 0..stored {
        if code.digit_at(at) != Some(Bit::One) {
            continue;
        }
        let mut j = 0;
        while at + 1 + j < stored && code.digit_at(at + 1 + j) == Some(Bit::Zero) {
            j += 1;
        }
        if j >= 2 {
            return Some(at);
        }
    }
    None
}

/// Leftmost `1 0 1^j 0 1` window with `j ≥ 1` (final 1 may be the `*`).
fn find_nonconsecutive_window(code: &ThresholdCode) -> Option<usize> {
    let stored = code.n() - 1;
    for at in 0..stored.saturating_sub(3) {
        if code.digit_at(at) != Some(Bit::One) || code.digit_at(at + 1) != Some(Bit::Zero) {
            continue;
        }
        let mut j = 0;
        while at + 2 + j < stored && code.digit_at(at + 2 + j) == Some(Bit::One) {
            j += 1;
        }
        if j >= 1
            && at + j + 2 < stored
            && code.digit_at(at + j + 2) == Some(Bit::Zero)
            && (at + j + 3 == stored || code.digit_at(at + j + 3) == Some(Bit::One))
        {
            return Some(at);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{ind_vector, match_vector};

    fn code(text: &str) -> ThresholdCode {
        ThresholdCode::parse(text).unwrap()
    }

    fn all_codes(n: usize) -> impl Iterator<Item = ThresholdCode> {
        (0u64..1 << (n - 1)).map(move |mask| {
            let symbols = (0..n - 1)
                .map(|i| if mask >> (n - 2 - i) & 1 == 1 { Bit::One } else { Bit::Zero })
                .collect();
            ThresholdCode::from_symbols(symbols)
        })
    }

    #[test]
    fn ab_switch_swaps_and_preserves_the_vector() {
        let before = code("0110*");
        let after = ab_switch(&before, 0).unwrap();
        assert_eq!(after, code("1001*"));
        assert_eq!(match_vector(&before), match_vector(&after));
        // involution
        assert_eq!(ab_switch(&after, 0).unwrap(), before);
    }

    #[test]
    fn ab_switch_star_supplies_the_last_digit() {
        assert_eq!(ab_switch(&code("011*"), 0).unwrap(), code("100*"));
        assert_eq!(ab_switch(&code("100*"), 0).unwrap(), code("011*"));
    }

    #[test]
    fn ab_switch_rejects_bad_windows() {
        assert_eq!(
            ab_switch(&code("011011*"), 2),
            Err(MoveError::PatternMismatch {
                at: 2,
                found: "1011".into(),
                expected: "0110 or 1001"
            })
        );
        assert_eq!(ab_switch(&code("011*"), 1), Err(MoveError::OutOfRange { at: 1, n: 4 }));
    }

    #[test]
    fn bracketed_1_move_examples() {
        assert_eq!(bracketed_1_move(&code("011101*"), 0).unwrap(), code("101011*"));
        assert_eq!(bracketed_1_move(&code("01110*"), 0).unwrap(), code("10101*"));
        // right bracket supplied by the star
        assert_eq!(bracketed_1_move(&code("0111*"), 0).unwrap(), code("1010*"));
        // j = 2 is not enough
        assert!(matches!(
            bracketed_1_move(&code("0110*"), 0),
            Err(MoveError::PatternMismatch { at: 0, .. })
        ));
    }

    #[test]
    fn bracketed_0_move_examples() {
        assert_eq!(bracketed_0_move(&code("10001*"), 0).unwrap(), code("01010*"));
        assert_eq!(bracketed_0_move(&code("100001*"), 0).unwrap(), code("010010*"));
        assert!(matches!(
            bracketed_0_move(&code("1001*"), 0),
            Err(MoveError::PatternMismatch { at: 0, .. })
        ));
    }

    #[test]
    fn indset_consecutive_move_examples() {
        let before = code("1001*");
        let after = indset_consecutive_move(&before, 0).unwrap();
        assert_eq!(after, code("0110*"));
        assert!(ind_vector(&after).total() < ind_vector(&before).total());
        assert_eq!(indset_consecutive_move(&code("10001*"), 0).unwrap(), code("01010*"));
        // j = 1 is not enough even here
        assert!(matches!(
            indset_consecutive_move(&code("101*"), 0),
            Err(MoveError::PatternMismatch { at: 0, .. })
        ));
    }

    #[test]
    fn indset_nonconsecutive_move_examples() {
        assert_eq!(indset_nonconsecutive_move(&code("10101*"), 0).unwrap(), code("01110*"));
        assert_eq!(indset_nonconsecutive_move(&code("101101*"), 0).unwrap(), code("011110*"));
        // the final 1 supplied by the star
        assert_eq!(indset_nonconsecutive_move(&code("1010*"), 0).unwrap(), code("0111*"));
        // alternating codes have no such window
        assert!(indset_nonconsecutive_move(&code("0101*"), 0).is_err());
        assert_eq!(find_nonconsecutive_window(&code("0101*")), None);
    }

    #[test]
    fn moves_preserve_parameters_and_are_monotone() {
        // every valid window of every code up to n = 10
        for n in 2..=10usize {
            for c in all_codes(n) {
                let m = match_vector(&c);
                let i = ind_vector(&c);
                for at in 0..n - 1 {
                    if let Ok(next) = ab_switch(&c, at) {
                        assert_eq!(match_vector(&next), m, "ab-switch at {at} on {c}");
                    }
                    for (rewrite, strict_m) in [
                        (bracketed_1_move(&c, at), true),
                        (bracketed_0_move(&c, at), true),
                    ] {
                        if let Ok(next) = rewrite {
                            let m2 = match_vector(&next);
                            assert!(strict_m && m2.total() > m.total(), "{c} at {at}");
                            assert!(m.le_pointwise(&m2), "per-size drop: {c} -> {next}");
                        }
                    }
                    for next in
                        [indset_consecutive_move(&c, at), indset_nonconsecutive_move(&c, at)].into_iter().flatten()
                    {
                        let i2 = ind_vector(&next);
                        assert!(i2.total() < i.total(), "{c} at {at}");
                        assert!(i2.le_pointwise(&i), "per-size rise: {c} -> {next}");
                    }
                }
            }
        }
    }

    #[test]
    fn maximize_follows_the_documented_path() {
        let trace = maximize_matchings_by_moves(&code("011011*"));
        let kinds: Vec<&str> = trace.steps.iter().map(|s| s.kind.as_str()).collect();
        assert_eq!(kinds, ["ab-switch", "bracketed-1-move"]);
        assert_eq!(trace.steps[0].after, code("100111*"));
        assert_eq!(trace.final_code, code("101010*"));
        assert!(trace.validate());
    }

    #[test]
    fn maximize_the_remark_code() {
        let trace = maximize_matchings_by_moves(&code("1000111*"));
        let final_code = &trace.final_code;
        assert!(final_code.is_almost_alternating());
        assert_eq!(final_code.n(), 8);
        assert_eq!(edge_count(final_code), 13);
        assert!(
            match_vector(final_code).total() > match_vector(&code("1000111*")).total()
        );
    }

    #[test]
    fn maximize_leaves_almost_alternating_codes_alone() {
        for text in ["0101011*", "00110*", "111*", "*", "101010*"] {
            let trace = maximize_matchings_by_moves(&code(text));
            assert!(trace.is_empty(), "{text} moved");
            assert_eq!(trace.final_code, code(text));
        }
    }

    #[test]
    fn maximize_fixpoints_are_almost_alternating_exhaustively() {
        for n in 1..=11usize {
            for c in all_codes(n) {
                let trace = maximize_matchings_by_moves(&c);
                assert!(trace.validate(), "broken trace for {c}");
                assert!(trace.final_code.is_almost_alternating());
                assert_eq!(trace.is_empty(), c.is_almost_alternating(), "{c}");
                let before = match_vector(&c).total();
                let after = match_vector(&trace.final_code).total();
                assert!(if trace.is_empty() { after == before } else { after > before });
            }
        }
    }

    #[test]
    fn minimize_examples() {
        let trace = minimize_indsets_by_moves(&code("10101*"));
        assert_eq!(trace.final_code, code("01110*"));
        assert_eq!(trace.len(), 1);

        // one consecutive move and the colex code is already there
        let trace = minimize_indsets_by_moves(&code("1001*"));
        assert_eq!(trace.steps[0].kind, MoveKind::IndsetConsecutive);
        assert_eq!(trace.final_code, code("0110*"));
        assert_eq!(trace.len(), 1);

        assert!(minimize_indsets_by_moves(&code("101*")).is_empty());
        assert!(minimize_indsets_by_moves(&code("0000*")).is_empty());
    }

    #[test]
    fn minimize_reaches_colex_exhaustively() {
        for n in 1..=11usize {
            for c in all_codes(n) {
                let trace = minimize_indsets_by_moves(&c);
                assert!(trace.validate(), "broken trace for {c}");
                // the reduction itself asserts the colex fixpoint; confirm
                // emptiness exactly on colex inputs
                let colex = extremal::colex_code(n, edge_count(&c)).unwrap();
                assert_eq!(trace.is_empty(), c == colex, "{c}");
            }
        }
    }

    #[test]
    fn trace_serializes_with_objective_keyed_totals() {
        let trace = maximize_matchings_by_moves(&code("011011*"));
        let json: serde_json::Value = serde_json::from_str(
            &serde_json::to_string(&trace).unwrap(),
        )
        .unwrap();
        assert_eq!(json["objective"], "matchings");
        assert_eq!(json["initial"], "011011*");
        assert_eq!(json["final"], "101010*");
        let steps = json["steps"].as_array().unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0]["kind"], "ab-switch");
        assert_eq!(steps[0]["at"], 0);
        assert_eq!(steps[0]["m_total_before"], steps[0]["m_total_after"]);
        assert_eq!(steps[1]["kind"], "bracketed-1-move");
        let before: u64 = steps[1]["m_total_before"].as_str().unwrap().parse().unwrap();
        let after: u64 = steps[1]["m_total_after"].as_str().unwrap().parse().unwrap();
        assert!(after > before);

        let trace = minimize_indsets_by_moves(&code("1001*"));
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&trace).unwrap()).unwrap();
        assert_eq!(json["objective"], "indsets");
        assert!(json["steps"][0]["i_total_before"].is_string());
    }
}

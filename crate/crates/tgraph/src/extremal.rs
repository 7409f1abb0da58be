//! Closed-form edge counts and direct construction of the two extremal
//! codes for any vertex/edge pair: the almost-alternating code (maximum
//! matchings) and the colex code (minimum independent sets).

use thiserror::Error;

use crate::code::{AbForm, Bit, Letter, ThresholdCode};
use crate::graph::edge_count;

/// Errors from the `(n, e)` constructors.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("no graphs with zero vertices")]
    NoVertices,
    #[error("{e} edges out of range for {n} vertices (max {max})")]
    EdgesOutOfRange { n: usize, e: u64, max: u64 },
}

/// Largest edge count a small graph can have: `⌊n²/4⌋`. A small code spends
/// its edges most densely as the alternating word `bb…b`, which reaches
/// `(n−1) + (n−3) + …`.
pub fn sm(n: usize) -> u64 {
    (n as u64) * (n as u64) / 4
}

/// Edge count of a small unstarred code with `alpha` a's and `beta` b's:
/// `(α+β)² − α`.
pub fn s(alpha: u64, beta: u64) -> u64 {
    (alpha + beta) * (alpha + beta) - alpha
}

/// Edge count of a small starred code with `alpha` a's and `beta` b's:
/// `(α+β)² + β`.
pub fn s_star(alpha: u64, beta: u64) -> u64 {
    (alpha + beta) * (alpha + beta) + beta
}

fn choose_2(n: usize) -> u64 {
    (n as u64) * (n as u64 - 1) / 2
}

fn check_range(n: usize, e: u64) -> Result<(), ExtremalError> {
    if n == 0 {
        return Err(ExtremalError::NoVertices);
    }
    let max = choose_2(n);
    if e > max {
        return Err(ExtremalError::EdgesOutOfRange { n, e, max });
    }
    Ok(())
}

/// Word parameters of the small construction for `e ≤ sm(n)`:
/// `(block_len, alpha, beta, starred)`.
///
/// With `k = ⌊√e⌋`: the starred family covers `k² ≤ e ≤ k(k+1)` via
/// `β = e − k²`, `α = k − β` whenever the block length `n − 2k − 1` is
/// nonnegative; otherwise the unstarred family covers
/// `k(k+1) ≤ e ≤ (k+1)²` via `α = (k+1)² − e`, `β = (k+1) − α`.
fn small_params(n: usize, e: u64) -> (usize, u64, u64, bool) {
    debug_assert!(e <= sm(n));
    let mut k = e.isqrt();
    if e <= k * (k + 1) && n as u64 > 2 * k {
        let beta = e - k * k;
        let alpha = k - beta;
        return (n - 2 * k as usize - 1, alpha, beta, true);
    }
    if e <= k * (k + 1) {
        // only reachable at e = k² with n = 2k: fall back one word length
        k -= 1;
    }
    let alpha = (k + 1) * (k + 1) - e;
    let beta = (k + 1) - alpha;
    (n - 2 * (k as usize + 1), alpha, beta, false)
}

fn word(alpha: u64, beta: u64) -> Vec<Letter> {
    let mut w = Vec::with_capacity((alpha + beta) as usize);
    w.extend(std::iter::repeat_n(Letter::A, alpha as usize));
    w.extend(std::iter::repeat_n(Letter::B, beta as usize));
    w
}

fn aa_small(n: usize, e: u64) -> ThresholdCode {
    let (block_len, alpha, beta, starred) = small_params(n, e);
    AbForm::new(Some(Bit::Zero), block_len, word(alpha, beta), starred).code()
}

fn aa_large(n: usize, e: u64) -> ThresholdCode {
    // complement of the small construction at C(n,2) − e; complementing
    // swaps the letters, so re-sort the word a-first to stay canonical
    let (block_len, alpha, beta, starred) = small_params(n, choose_2(n) - e);
    AbForm::new(Some(Bit::One), block_len, word(beta, alpha), starred).code()
}

/// The canonical almost-alternating code with `n` vertices and `e` edges:
/// a block of equal digits, then all a's, then all b's. Maximizes the number
/// of matchings over all threshold graphs with these parameters.
pub fn almost_alternating_code(n: usize, e: u64) -> Result<ThresholdCode, ExtremalError> {
    check_range(n, e)?;
    let small_side = e <= sm(n);
    let large_side = choose_2(n) - e <= sm(n);
    let code = if small_side {
        aa_small(n, e)
    } else {
        aa_large(n, e)
    };
    if small_side && large_side {
        // both constructions apply; they must agree exactly
        assert_eq!(
            aa_small(n, e),
            aa_large(n, e),
            "small/large constructions disagree at ({n}, {e})"
        );
    }
    assert_eq!(code.n(), n);
    assert_eq!(edge_count(&code), e, "edge count off at ({n}, {e}): {code}");
    assert!(code.is_almost_alternating(), "({n}, {e}) construction {code} has a defect");
    Ok(code)
}

/// The colex code with `n` vertices and `e` edges: the graph whose edges are
/// the first `e` pairs in colexicographic order. Minimizes the number of
/// independent sets. At most one 0 appears after the first 1.
pub fn colex_code(n: usize, e: u64) -> Result<ThresholdCode, ExtremalError> {
    check_range(n, e)?;
    // largest clique the budget fills: max t with C(t,2) ≤ e
    let mut t = 1usize;
    while choose_2(t + 1) <= e {
        t += 1;
    }
    let r = (e - choose_2(t)) as usize;
    let mut symbols = Vec::with_capacity(n - 1);
    if r == 0 {
        symbols.extend(std::iter::repeat_n(Bit::Zero, n - t));
        symbols.extend(std::iter::repeat_n(Bit::One, t - 1));
    } else {
        // a t-clique plus one vertex adjacent to r of its members
        symbols.extend(std::iter::repeat_n(Bit::Zero, n - t - 1));
        symbols.extend(std::iter::repeat_n(Bit::One, r));
        symbols.push(Bit::Zero);
        symbols.extend(std::iter::repeat_n(Bit::One, t - r - 1));
    }
    let code = ThresholdCode::from_symbols(symbols);
    debug_assert_eq!(edge_count(&code), e);
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn closed_forms() {
        assert_eq!(sm(0), 0);
        assert_eq!(sm(4), 4);
        assert_eq!(sm(7), 12);
        assert_eq!(sm(4), edge_count(&code("1010")));

        assert_eq!(s(0, 0), 0);
        assert_eq!(s(1, 1), 3);
        assert_eq!(s(1, 1), edge_count(&code("0110")));
        assert_eq!(s(3, 1), 13);
        assert_eq!(s(3, 1), edge_count(&code("01010110")));
        assert_eq!(s_star(1, 1), 5);
        assert_eq!(s_star(1, 1), edge_count(&code("0110*")));
    }

    #[test]
    fn known_almost_alternating_codes() {
        assert_eq!(almost_alternating_code(8, 13).unwrap(), code("0101011*"));
        assert_eq!(almost_alternating_code(7, 12).unwrap(), code("101010*"));
        assert_eq!(almost_alternating_code(6, 0).unwrap(), code("00000*"));
        assert_eq!(almost_alternating_code(1, 0).unwrap(), code("*"));
        // the (8, 13) word is a³b
        let forms = almost_alternating_code(8, 13).unwrap().ab_forms();
        assert_eq!((forms[0].alpha(), forms[0].beta()), (3, 1));
        // (7, 12) sits on the small/large boundary with both readings
        assert_eq!(almost_alternating_code(7, 12).unwrap().ab_forms().len(), 2);
    }

    #[test]
    fn out_of_range_requests_fail() {
        assert_eq!(almost_alternating_code(0, 0), Err(ExtremalError::NoVertices));
        assert_eq!(colex_code(0, 0), Err(ExtremalError::NoVertices));
        assert_eq!(
            almost_alternating_code(4, 7),
            Err(ExtremalError::EdgesOutOfRange { n: 4, e: 7, max: 6 })
        );
        assert_eq!(
            colex_code(4, 7),
            Err(ExtremalError::EdgesOutOfRange { n: 4, e: 7, max: 6 })
        );
    }

    #[test]
    fn known_colex_codes() {
        assert_eq!(colex_code(4, 4).unwrap(), code("101*"));
        assert_eq!(colex_code(5, 3).unwrap(), code("0011*"));
        assert_eq!(colex_code(5, 5).unwrap(), code("0110*"));
        assert_eq!(colex_code(6, 9).unwrap(), code("01110*"));
        assert_eq!(colex_code(6, 15).unwrap(), code("11111*"));
        assert_eq!(colex_code(5, 0).unwrap(), code("0000*"));
        assert_eq!(colex_code(1, 0).unwrap(), code("*"));
    }

    #[test]
    fn construction_valid_for_all_pairs_to_n_14() {
        for n in 1..=14usize {
            for e in 0..=choose_2(n) {
                // constructor self-checks n, e, and almost-alternation
                let c = almost_alternating_code(n, e).unwrap();
                assert_eq!((c.n(), edge_count(&c)), (n, e));
                let cx = colex_code(n, e).unwrap();
                assert_eq!((cx.n(), edge_count(&cx)), (n, e));
                // at most one 0 after the first 1
                let s = cx.symbols();
                if let Some(first_one) = s.iter().position(|&b| b == Bit::One) {
                    let zeros = s[first_one..].iter().filter(|&&b| b == Bit::Zero).count();
                    assert!(zeros <= 1, "colex shape violated: {cx}");
                }
            }
        }
    }

    #[test]
    fn small_and_large_routes_agree_on_the_overlap() {
        for n in 1..=14usize {
            let top = choose_2(n);
            for e in 0..=top {
                if e <= sm(n) && top - e <= sm(n) {
                    assert_eq!(aa_small(n, e), aa_large(n, e), "overlap mismatch at ({n}, {e})");
                }
            }
        }
    }

    #[test]
    fn small_codes_hit_their_closed_form_edge_counts() {
        // every almost-alternating code's edges match s/s* on its own
        // word parameters (complemented for a block of ones)
        for n in 1..=14usize {
            let top = choose_2(n);
            for c in all_codes(n) {
                for f in c.ab_forms() {
                    let (a, b) = (f.alpha() as u64, f.beta() as u64);
                    if f.is_small() {
                        let want = if f.starred() { s_star(a, b) } else { s(a, b) };
                        assert_eq!(edge_count(&c), want, "small form of {c}");
                    }
                    if f.is_large() {
                        let dual = if f.starred() { s_star(b, a) } else { s(b, a) };
                        assert_eq!(edge_count(&c), top - dual, "large form of {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn sm_is_the_max_over_small_codes() {
        for n in 1..=14usize {
            let best = all_codes(n)
                .filter(|c| c.is_small() == Some(true))
                .map(|c| edge_count(&c))
                .max()
                .unwrap();
            assert_eq!(best, sm(n), "sm({n})");
        }
    }

    #[test]
    fn all_b_word_equals_one_block_a_word() {
        // b^k and 1a^(k−1)* spell the same 2k-vertex code
        for k in 1..=7usize {
            let bs = AbForm::new(None, 0, vec![Letter::B; k], false).code();
            let ones = AbForm::new(Some(Bit::One), 1, vec![Letter::A; k - 1], true).code();
            assert_eq!(bs, ones, "k = {k}");
            assert_eq!(bs.n(), 2 * k);
        }
    }

    #[test]
    fn word_parameters_are_determined_by_n_and_e() {
        // every almost-alternating code at (n, e) carries the constructed
        // word's {α, β} values; alternating codes are the boundary cases
        // where both readings occur and coincide with the construction
        for n in 1..=12usize {
            for c in all_codes(n) {
                let forms = c.ab_forms();
                if forms.is_empty() {
                    continue;
                }
                let e = edge_count(&c);
                let built = almost_alternating_code(n, e).unwrap();
                let allowed: Vec<(u64, u64)> = built
                    .ab_forms()
                    .iter()
                    .map(|f| {
                        let (a, b) = (f.alpha() as u64, f.beta() as u64);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                for f in &forms {
                    let (a, b) = (f.alpha() as u64, f.beta() as u64);
                    let key = (a.min(b), a.max(b));
                    assert!(
                        allowed.contains(&key),
                        "form {f} of {c} has {key:?}, construction {built} allows {allowed:?}"
                    );
                }
                if forms.len() == 2 {
                    assert_eq!(c, built, "alternating code at ({n}, {e}) differs");
                }
            }
        }
    }
}

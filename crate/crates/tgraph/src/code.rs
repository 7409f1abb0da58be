//! Creation codes and their structure: parsing, `a`/`b` decompositions,
//! alternation classes, and the two structural defects.
//!
//! Throughout, a code of length `n` stores `n - 1` digits; the final position
//! `n - 1` is the `*`. Pattern detectors treat the `*` as a wildcard that can
//! stand for either digit, because the graph does not change under either
//! reading.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// One stored digit of a creation code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    /// The other digit.
    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }
}

/// Errors from [`ThresholdCode::parse`]. Positions are 0-based offsets into
/// the input text.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseCodeError {
    #[error("empty code: a threshold code needs at least its `*` vertex")]
    Empty,
    #[error("illegal character {found:?} at position {position}: expected '0', '1', or a final '*'")]
    IllegalCharacter { found: char, position: usize },
    #[error("`*` at position {position}: it may only be the final symbol")]
    MisplacedStar { position: usize },
}

/// A threshold graph's creation code.
///
/// Equality is equality of the normalized spelling: `T(0010010)` and
/// `T(001001*)` parse to the same value. Ordering is lexicographic on the
/// stored digits, which for codes of equal length is also the numeric order
/// of the code read as a binary number (leftmost digit most significant).
///
/// ```
/// use tgraph::ThresholdCode;
///
/// let code = ThresholdCode::parse("0010010").unwrap();
/// assert_eq!(code.to_string(), "001001*");
/// assert_eq!(code.n(), 7);
/// ```
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThresholdCode {
    symbols: Vec<Bit>,
}

impl ThresholdCode {
    /// Parse text like `001001*`, `0010010`, or `*`. A trailing digit is
    /// accepted in place of the `*` and normalized away.
    pub fn parse(text: &str) -> Result<Self, ParseCodeError> {
        if text.is_empty() {
            return Err(ParseCodeError::Empty);
        }
        let chars: Vec<char> = text.chars().collect();
        let last = chars.len() - 1;
        let mut symbols = Vec::with_capacity(last);
        for (position, &ch) in chars[..last].iter().enumerate() {
            match ch {
                '0' => symbols.push(Bit::Zero),
                '1' => symbols.push(Bit::One),
                '*' => return Err(ParseCodeError::MisplacedStar { position }),
                found => return Err(ParseCodeError::IllegalCharacter { found, position }),
            }
        }
        match chars[last] {
            '0' | '1' | '*' => {}
            found => {
                return Err(ParseCodeError::IllegalCharacter { found, position: last });
            }
        }
        Ok(ThresholdCode { symbols })
    }

    /// Build a code from its stored digits; the `*` is implicit, so the
    /// resulting code has `symbols.len() + 1` vertices.
    pub fn from_symbols(symbols: Vec<Bit>) -> Self {
        ThresholdCode { symbols }
    }

    /// The single-vertex code `*`.
    pub fn singleton() -> Self {
        ThresholdCode { symbols: Vec::new() }
    }

    /// Number of vertices (stored digits plus the `*`).
    pub fn n(&self) -> usize {
        self.symbols.len() + 1
    }

    /// The stored digits, positions `0..n-1`.
    pub fn symbols(&self) -> &[Bit] {
        &self.symbols
    }

    /// Digit at `pos`, or `None` when `pos` is the `*`.
    ///
    /// # Panics
    ///
    /// Panics if `pos >= n`.
    pub fn digit_at(&self, pos: usize) -> Option<Bit> {
        assert!(pos < self.n(), "position {pos} out of range for n={}", self.n());
        self.symbols.get(pos).copied()
    }

    /// Whether position `pos` can be read as `digit`. The `*` matches both.
    pub fn matches(&self, pos: usize, digit: Bit) -> bool {
        match self.digit_at(pos) {
            Some(d) => d == digit,
            None => true,
        }
    }

    /// The code of the complement graph: every stored digit flips, the `*`
    /// stays. Placing a vertex that dominates everything so far is, in the
    /// complement, placing one that touches nothing, and vice versa.
    pub fn complement(&self) -> Self {
        ThresholdCode {
            symbols: self.symbols.iter().map(|b| b.flip()).collect(),
        }
    }

    /// Every way to read this code as a block of equal digits followed by a
    /// word over the letters `a = 01` and `b = 10`.
    ///
    /// The block length determines everything else: the digits after the
    /// block must pair up into letters, and whether the `*` is absorbed into
    /// the final letter or left standing is forced by parity. The result has
    /// zero entries (the code is not almost alternating), one entry, or — for
    /// alternating codes of at least two vertices — exactly two.
    pub fn ab_forms(&self) -> Vec<AbForm> {
        let mut forms = Vec::new();
        let leading = self.leading_run();
        for block_len in 0..=leading {
            let rem = self.symbols.len() - block_len;
            // Even remainder: the letters use stored digits only and the `*`
            // stands alone. Odd remainder: the final letter absorbs the `*`.
            let starred = rem % 2 == 0;
            if let Some(word) = self.parse_word(block_len, starred) {
                forms.push(AbForm {
                    block_digit: if block_len > 0 { Some(self.symbols[0]) } else { None },
                    block_len,
                    word,
                    starred,
                });
            }
        }
        debug_assert!(forms.len() <= 2, "more than two ab-forms for {self}");
        forms
    }

    /// Length of the maximal leading run of equal stored digits.
    fn leading_run(&self) -> usize {
        match self.symbols.first() {
            None => 0,
            Some(&d) => self.symbols.iter().take_while(|&&s| s == d).count(),
        }
    }

    fn parse_word(&self, from: usize, starred: bool) -> Option<Vec<Letter>> {
        let end = if starred { self.n() - 1 } else { self.n() };
        debug_assert_eq!((end - from) % 2, 0);
        let mut word = Vec::with_capacity((end - from) / 2);
        let mut pos = from;
        while pos < end {
            if self.matches(pos, Bit::Zero) && self.matches(pos + 1, Bit::One) {
                word.push(Letter::A);
            } else if self.matches(pos, Bit::One) && self.matches(pos + 1, Bit::Zero) {
                word.push(Letter::B);
            } else {
                return None;
            }
            pos += 2;
        }
        Some(word)
    }

    /// True when some block-plus-word reading exists — equivalently, when the
    /// code has neither a bracketed string nor a separation issue.
    pub fn is_almost_alternating(&self) -> bool {
        !self.ab_forms().is_empty()
    }

    /// True when the digits after the maximal leading run strictly alternate.
    /// Exactly these codes (`n >= 2`) admit two block-plus-word readings.
    pub fn is_alternating(&self) -> bool {
        let leading = self.leading_run();
        (leading.max(1)..self.symbols.len()).all(|i| self.symbols[i] != self.symbols[i - 1])
    }

    /// For an almost-alternating code, whether some reading has an empty or
    /// all-zero block. `None` when the code is not almost alternating.
    pub fn is_small(&self) -> Option<bool> {
        let forms = self.ab_forms();
        if forms.is_empty() {
            None
        } else {
            Some(forms.iter().any(AbForm::is_small))
        }
    }

    /// Companion to [`is_small`](Self::is_small): some reading has an empty
    /// or all-one block. At the boundary between small and large graphs a
    /// code can be both.
    pub fn is_large(&self) -> Option<bool> {
        let forms = self.ab_forms();
        if forms.is_empty() {
            None
        } else {
            Some(forms.iter().any(AbForm::is_large))
        }
    }

    // ---- structural defects ------------------------------------------------

    /// Leftmost maximal run of at least three equal digits that has the
    /// opposite digit on its left — a *bracketed string*. The right bracket
    /// is the opposite digit or the `*`, which maximality guarantees.
    pub fn find_bracketed_string(&self) -> Option<StructuralDefect> {
        let mut start = 0;
        while start < self.symbols.len() {
            let digit = self.symbols[start];
            let mut end = start;
            while end < self.symbols.len() && self.symbols[end] == digit {
                end += 1;
            }
            let run = end - start;
            if start >= 1 && run >= 3 {
                return Some(StructuralDefect::BracketedString {
                    digit,
                    at: start - 1,
                    run,
                    star_bracket: end == self.n() - 1,
                });
            }
            start = end;
        }
        None
    }

    /// A *separation issue*: two pairs of repeated digits, the first pair
    /// preceded by the opposite digit, separated by an odd-length middle, the
    /// second pair followed by at least one more symbol (the `*` counts).
    ///
    /// Returns the issue with the shortest middle, leftmost among those —
    /// the order the rewrite schedule needs.
    pub fn find_separation_issue(&self) -> Option<StructuralDefect> {
        let len = self.symbols.len();
        let mut middle = 1;
        while middle + 5 <= len {
            // pairs at p..=p+1 and q..=q+1, middle strictly between them
            for p in 1..len - middle - 3 {
                let q = p + 2 + middle;
                if self.symbols[p] == self.symbols[p + 1]
                    && self.symbols[p - 1] != self.symbols[p]
                    && q + 1 < len
                    && self.symbols[q] == self.symbols[q + 1]
                {
                    return Some(StructuralDefect::SeparationIssue {
                        first_pair: p,
                        second_pair: q,
                    });
                }
            }
            middle += 2;
        }
        None
    }

    /// The defect the matching-increasing rewrite loop acts on next:
    /// a bracketed string if any exists, otherwise a separation issue.
    pub fn find_defect(&self) -> Option<StructuralDefect> {
        self.find_bracketed_string().or_else(|| self.find_separation_issue())
    }
}

impl fmt::Display for ThresholdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.symbols {
            write!(f, "{}", bit.as_char())?;
        }
        write!(f, "*")
    }
}

impl fmt::Debug for ThresholdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({self})")
    }
}

impl FromStr for ThresholdCode {
    type Err = ParseCodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ThresholdCode::parse(s)
    }
}

impl Serialize for ThresholdCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ThresholdCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        ThresholdCode::parse(&text).map_err(serde::de::Error::custom)
    }
}

// ---- letters and forms -----------------------------------------------------

/// A letter of the two-digit alphabet: `a = 01`, `b = 10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn digits(self) -> [Bit; 2] {
        match self {
            Letter::A => [Bit::Zero, Bit::One],
            Letter::B => [Bit::One, Bit::Zero],
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// One reading of a code as block, word, and star placement.
///
/// `starred` records whether the `*` stands alone after the word. When it is
/// false the `*` serves as the final digit of the last letter, so the word is
/// nonempty. A form is *small* when its block is empty or made of zeros,
/// *large* when empty or made of ones; an empty block is both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbForm {
    block_digit: Option<Bit>,
    block_len: usize,
    word: Vec<Letter>,
    starred: bool,
}

/// Errors from [`AbForm::parse`]. Positions are 0-based offsets into the
/// notation text.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseAbError {
    #[error("empty block-word notation")]
    Empty,
    #[error("illegal character {found:?} at position {position}: expected digits, then letters 'a'/'b', then an optional final '*'")]
    IllegalCharacter { found: char, position: usize },
    #[error("block must repeat a single digit, but position {position} differs from the first")]
    MixedBlock { position: usize },
    #[error("digit at position {position} after the first letter; the block must come first")]
    DigitAfterLetter { position: usize },
    #[error("`*` at position {position}: it may only be the final symbol")]
    MisplacedStar { position: usize },
}

impl AbForm {
    /// Parse notation like `000aaba*`, `111aba`, or `0101` (digits only).
    /// A digits-only spelling without a `*` is read as a literal code.
    pub fn parse(text: &str) -> Result<Self, ParseAbError> {
        if text.is_empty() {
            return Err(ParseAbError::Empty);
        }
        let chars: Vec<char> = text.chars().collect();
        let mut block_digit = None;
        let mut block_len = 0usize;
        let mut word = Vec::new();
        let mut starred = false;
        for (position, &ch) in chars.iter().enumerate() {
            if starred {
                return Err(ParseAbError::MisplacedStar { position: position - 1 });
            }
            match ch {
                '0' | '1' => {
                    let digit = if ch == '0' { Bit::Zero } else { Bit::One };
                    if !word.is_empty() {
                        return Err(ParseAbError::DigitAfterLetter { position });
                    }
                    match block_digit {
                        None => block_digit = Some(digit),
                        Some(d) if d != digit => {
                            return Err(ParseAbError::MixedBlock { position });
                        }
                        Some(_) => {}
                    }
                    block_len += 1;
                }
                'a' => word.push(Letter::A),
                'b' => word.push(Letter::B),
                '*' => starred = true,
                found => return Err(ParseAbError::IllegalCharacter { found, position }),
            }
        }
        if !starred && word.is_empty() {
            // A bare digit block: the last digit is the star slot.
            block_len -= 1;
            if block_len == 0 {
                block_digit = None;
            }
            starred = true;
        }
        Ok(AbForm { block_digit, block_len, word, starred })
    }

    /// Assemble a form directly. `block_digit` is ignored when `block_len`
    /// is zero.
    ///
    /// # Panics
    ///
    /// Panics on the unrepresentable combination of an empty word with an
    /// absorbed star.
    pub fn new(block_digit: Option<Bit>, block_len: usize, word: Vec<Letter>, starred: bool) -> Self {
        assert!(
            starred || !word.is_empty(),
            "an unstarred form needs a final letter to hold the star"
        );
        let block_digit = if block_len == 0 { None } else { block_digit };
        assert!(
            block_len == 0 || block_digit.is_some(),
            "a nonempty block needs its digit"
        );
        AbForm { block_digit, block_len, word, starred }
    }

    pub fn block_digit(&self) -> Option<Bit> {
        self.block_digit
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Whether the `*` stands alone after the word.
    pub fn starred(&self) -> bool {
        self.starred
    }

    /// Number of `a` letters.
    pub fn alpha(&self) -> usize {
        self.word.iter().filter(|&&l| l == Letter::A).count()
    }

    /// Number of `b` letters.
    pub fn beta(&self) -> usize {
        self.word.len() - self.alpha()
    }

    /// Block empty or all zeros.
    pub fn is_small(&self) -> bool {
        self.block_digit != Some(Bit::One)
    }

    /// Block empty or all ones.
    pub fn is_large(&self) -> bool {
        self.block_digit != Some(Bit::Zero)
    }

    /// Vertex count of the code this form spells.
    pub fn n(&self) -> usize {
        self.block_len + 2 * self.word.len() + usize::from(self.starred)
    }

    /// Spell the form back out as a code.
    pub fn code(&self) -> ThresholdCode {
        let mut symbols = Vec::with_capacity(self.n() - 1);
        let block_digit = self.block_digit.unwrap_or(Bit::Zero);
        symbols.extend(std::iter::repeat_n(block_digit, self.block_len));
        for letter in &self.word {
            symbols.extend(letter.digits());
        }
        if !self.starred {
            // the last letter's closing digit is the star slot
            symbols.pop();
        }
        ThresholdCode::from_symbols(symbols)
    }
}

impl fmt::Display for AbForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(digit) = self.block_digit {
            for _ in 0..self.block_len {
                write!(f, "{}", digit.as_char())?;
            }
        }
        for letter in &self.word {
            write!(f, "{}", letter.as_char())?;
        }
        if self.starred {
            write!(f, "*")?;
        }
        Ok(())
    }
}

impl Serialize for AbForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        map.serialize_entry("notation", &self.to_string())?;
        map.serialize_entry("block", &self.block_digit.map(|d| d.as_char()))?;
        map.serialize_entry("block_len", &self.block_len)?;
        map.serialize_entry(
            "word",
            &self.word.iter().map(|l| l.as_char()).collect::<String>(),
        )?;
        map.serialize_entry("alpha", &self.alpha())?;
        map.serialize_entry("starred", &self.starred)?;
        map.end()
    }
}

// ---- defects ----------------------------------------------------------------

/// A local pattern that certifies a code is not almost alternating.
///
/// Positions name the leftmost symbol of the pattern: for a bracketed string
/// that is the left bracket. All positions are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralDefect {
    /// `x d^run x̄`-shaped: a run of at least three equal digits with the
    /// opposite digit on the left and the opposite digit or the `*` on the
    /// right. `at` is the left bracket, so the run occupies
    /// `at+1 ..= at+run`, and the right bracket sits at `at+run+1`.
    BracketedString {
        digit: Bit,
        at: usize,
        run: usize,
        star_bracket: bool,
    },
    /// Two repeated-digit pairs at `first_pair..=first_pair+1` and
    /// `second_pair..=second_pair+1`, odd middle in between, opposite digit
    /// before the first pair, at least one symbol after the second.
    SeparationIssue { first_pair: usize, second_pair: usize },
}

impl StructuralDefect {
    /// Inclusive span of code positions the defect occupies, bracket digits
    /// included.
    pub fn span(&self) -> (usize, usize) {
        match *self {
            StructuralDefect::BracketedString { at, run, .. } => (at, at + run + 1),
            StructuralDefect::SeparationIssue { first_pair, second_pair } => {
                (first_pair - 1, second_pair + 2)
            }
        }
    }

    /// Length of the odd middle for separation issues, `None` otherwise.
    pub fn middle_len(&self) -> Option<usize> {
        match *self {
            StructuralDefect::SeparationIssue { first_pair, second_pair } => {
                Some(second_pair - first_pair - 2)
            }
            StructuralDefect::BracketedString { .. } => None,
        }
    }

    /// Re-read `code` and confirm the claimed pattern is really there.
    pub fn validate(&self, code: &ThresholdCode) -> bool {
        match *self {
            StructuralDefect::BracketedString { digit, at, run, star_bracket } => {
                let right = at + run + 1;
                run >= 3
                    && right < code.n()
                    && code.matches(at, digit.flip())
                    && (at + 1..=at + run).all(|p| code.digit_at(p) == Some(digit))
                    && code.matches(right, digit.flip())
                    && star_bracket == (right == code.n() - 1)
            }
            StructuralDefect::SeparationIssue { first_pair, second_pair } => {
                let len = code.n() - 1;
                first_pair >= 1
                    && second_pair > first_pair + 2
                    && (second_pair - first_pair) % 2 == 1
                    && second_pair + 1 < len
                    && code.symbols()[first_pair] == code.symbols()[first_pair + 1]
                    && code.symbols()[first_pair - 1] != code.symbols()[first_pair]
                    && code.symbols()[second_pair] == code.symbols()[second_pair + 1]
            }
        }
    }
}

impl fmt::Display for StructuralDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StructuralDefect::BracketedString { digit, at, run, star_bracket } => {
                write!(
                    f,
                    "bracketed {}-string at {}..={} ({} digits{})",
                    digit.as_char(),
                    at,
                    at + run + 1,
                    run,
                    if star_bracket { ", right bracket is the *" } else { "" },
                )
            }
            StructuralDefect::SeparationIssue { first_pair, second_pair } => {
                write!(
                    f,
                    "separation issue: pairs at {}..={} and {}..={}, middle length {}",
                    first_pair,
                    first_pair + 1,
                    second_pair,
                    second_pair + 1,
                    second_pair - first_pair - 2,
                )
            }
        }
    }
}

impl Serialize for StructuralDefect {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match *self {
            StructuralDefect::BracketedString { digit, at, run, star_bracket } => {
                let kind = match digit {
                    Bit::Zero => "bracketed-0-string",
                    Bit::One => "bracketed-1-string",
                };
                map.serialize_entry("kind", kind)?;
                map.serialize_entry("at", &at)?;
                map.serialize_entry("run", &run)?;
                map.serialize_entry("star_bracket", &star_bracket)?;
            }
            StructuralDefect::SeparationIssue { first_pair, second_pair } => {
                map.serialize_entry("kind", "separation-issue")?;
                map.serialize_entry("first_pair", &first_pair)?;
                map.serialize_entry("second_pair", &second_pair)?;
                map.serialize_entry("middle_len", &(second_pair - first_pair - 2))?;
            }
        }
        map.serialize_entry("span", &self.span())?;
        map.end()
    }
}

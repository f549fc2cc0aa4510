//! Words over `{-, 0, +}` and `{0, 1}`, forbidden pattern sets, and the
//! zero-run parameters that drive the capacity bounds.
//!
//! Pattern files are plain text, one pattern per line. The characters `-`,
//! `0`, `+` stand for themselves and `x` (or `±`) stands for "either `+` or
//! `-`". Blank lines and everything after a `#` are ignored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One symbol of a difference word or pattern.
///
/// The declaration order `Minus < Zero < Plus` is the canonical symbol
/// order used for deterministic searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Minus,
    Zero,
    Plus,
    /// Either `+` or `-`; only legal inside extended pattern sets.
    PlusMinus,
}

impl Symbol {
    /// The three symbols of plain difference words, in canonical order.
    pub const PLAIN: [Symbol; 3] = [Symbol::Minus, Symbol::Zero, Symbol::Plus];

    pub fn negate(self) -> Self {
        match self {
            Symbol::Minus => Symbol::Plus,
            Symbol::Plus => Symbol::Minus,
            s => s,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '-' => Some(Symbol::Minus),
            '0' => Some(Symbol::Zero),
            '+' => Some(Symbol::Plus),
            'x' | '±' => Some(Symbol::PlusMinus),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Symbol::Minus => '-',
            Symbol::Zero => '0',
            Symbol::Plus => '+',
            Symbol::PlusMinus => 'x',
        }
    }

    pub fn is_zero(self) -> bool {
        self == Symbol::Zero
    }

    /// Whether this pattern symbol matches the text symbol `text`.
    pub fn matches(self, text: Symbol) -> bool {
        match self {
            Symbol::PlusMinus => matches!(text, Symbol::Plus | Symbol::Minus | Symbol::PlusMinus),
            s => s == text,
        }
    }
}

fn fmt_symbols(symbols: &[Symbol], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for s in symbols {
        write!(f, "{}", s.to_char())?;
    }
    Ok(())
}

fn occurs(pattern: &[Symbol], text: &[Symbol]) -> bool {
    if pattern.len() > text.len() {
        return false;
    }
    text.windows(pattern.len())
        .any(|w| pattern.iter().zip(w).all(|(p, t)| p.matches(*t)))
}

/// A non-empty forbidden difference pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<Symbol>);

impl Pattern {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("empty pattern".into()));
        }
        Ok(Pattern(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negate(&self) -> Pattern {
        Pattern(self.0.iter().map(|s| s.negate()).collect())
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }

    pub fn pm_count(&self) -> usize {
        self.0.iter().filter(|s| **s == Symbol::PlusMinus).count()
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn leading_zeros(&self) -> usize {
        self.0.iter().take_while(|s| s.is_zero()).count()
    }

    pub fn trailing_zeros(&self) -> usize {
        self.0.iter().rev().take_while(|s| s.is_zero()).count()
    }

    pub fn max_zero_run(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        for s in &self.0 {
            if s.is_zero() {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        best
    }

    /// Whether the pattern occurs as a contiguous subword of `text`.
    pub fn occurs_in(&self, text: &[Symbol]) -> bool {
        occurs(&self.0, text)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_symbols(&self.0, f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| {
                Symbol::from_char(c).ok_or_else(|| Error::Parse {
                    line: 1,
                    msg: format!("illegal character {c:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Pattern::new(symbols).map_err(|_| Error::Parse {
            line: 1,
            msg: "empty pattern".into(),
        })
    }
}

/// Zero-run parameters of a pattern set.
///
/// `r` is the longest run of zeros inside any pattern, `r1` (`r2`) the
/// longest run of zeros that starts (ends) a pattern. `±` counts as nonzero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroParams {
    pub r: usize,
    pub r1: usize,
    pub r2: usize,
}

impl ZeroParams {
    /// The parameters of the empty set, where nothing is forbidden.
    pub const EMPTY: ZeroParams = ZeroParams { r: 0, r1: 0, r2: 0 };
}

/// A finite, duplicate-free set of forbidden patterns with its derived
/// parameters.
///
/// Insertion order is preserved for output; equality is set equality.
#[derive(Clone, Debug)]
pub struct PatternSet {
    patterns: Vec<Pattern>,
    max_len: usize,
    total_len: usize,
    zeros: ZeroParams,
    extended: bool,
}

impl PartialEq for PatternSet {
    fn eq(&self, other: &Self) -> bool {
        let mut a: Vec<_> = self.patterns.iter().collect();
        let mut b: Vec<_> = other.patterns.iter().collect();
        a.sort();
        b.sort();
        a == b
    }
}

impl Eq for PatternSet {}

impl PatternSet {
    pub fn new(patterns: impl IntoIterator<Item = Pattern>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let patterns: Vec<Pattern> = patterns
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        if patterns.is_empty() {
            return Err(Error::EmptySet);
        }
        let max_len = patterns.iter().map(Pattern::len).max().unwrap_or(0);
        let total_len = patterns.iter().map(Pattern::len).sum();
        let zeros = ZeroParams {
            r: patterns.iter().map(Pattern::max_zero_run).max().unwrap_or(0),
            r1: patterns.iter().map(Pattern::leading_zeros).max().unwrap_or(0),
            r2: patterns.iter().map(Pattern::trailing_zeros).max().unwrap_or(0),
        };
        let extended = patterns.iter().any(|p| p.pm_count() > 0);
        Ok(PatternSet {
            patterns,
            max_len,
            total_len,
            zeros,
            extended,
        })
    }

    /// Parses the pattern file format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut patterns = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let symbols = line
                .chars()
                .map(|c| {
                    Symbol::from_char(c).ok_or_else(|| Error::Parse {
                        line: idx + 1,
                        msg: format!("illegal character {c:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            patterns.push(Pattern(symbols));
        }
        PatternSet::new(patterns)
    }

    /// Parses a whitespace- or comma-separated inline list such as `"+-, ++"`.
    pub fn from_list(list: &str) -> Result<Self> {
        let text: String = list
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect::<Vec<_>>()
            .join("\n");
        PatternSet::parse(&text)
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Maximal pattern length `m`.
    pub fn m(&self) -> usize {
        self.max_len
    }

    /// Sum of pattern lengths `M`.
    pub fn total_len(&self) -> usize {
        self.total_len
    }

    pub fn zero_params(&self) -> ZeroParams {
        self.zeros
    }

    pub fn r(&self) -> usize {
        self.zeros.r
    }

    pub fn r1(&self) -> usize {
        self.zeros.r1
    }

    pub fn r2(&self) -> usize {
        self.zeros.r2
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn has_all_zero_pattern(&self) -> bool {
        self.patterns.iter().any(Pattern::is_all_zero)
    }

    /// True when no pattern contains a zero.
    pub fn is_zero_free(&self) -> bool {
        self.patterns
            .iter()
            .all(|p| p.symbols().iter().all(|s| !s.is_zero()))
    }

    pub fn negate(&self) -> PatternSet {
        PatternSet::new(self.patterns.iter().map(Pattern::negate))
            .expect("negation preserves non-emptiness")
    }

    /// `D ∪ -D`.
    pub fn symmetric_closure(&self) -> PatternSet {
        let negated = self.patterns.iter().map(Pattern::negate);
        PatternSet::new(self.patterns.iter().cloned().chain(negated))
            .expect("closure preserves non-emptiness")
    }

    /// Number of plain patterns `expand` would produce before merging duplicates.
    pub fn expansion_size(&self) -> u128 {
        self.patterns
            .iter()
            .map(|p| 1u128.checked_shl(p.pm_count() as u32).unwrap_or(u128::MAX))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    /// Replaces every `±` by both `+` and `-`, refusing when more than
    /// `budget` patterns would be produced.
    pub fn expand_within(&self, budget: usize) -> Result<PatternSet> {
        if !self.extended {
            return Ok(self.clone());
        }
        if self.expansion_size() > budget as u128 {
            return Err(Error::BudgetExhausted(format!(
                "±-expansion would produce {} patterns (budget {budget})",
                self.expansion_size()
            )));
        }
        let mut out = Vec::new();
        for p in &self.patterns {
            let mut partial: Vec<Vec<Symbol>> = vec![Vec::with_capacity(p.len())];
            for s in p.symbols() {
                if *s == Symbol::PlusMinus {
                    partial = partial
                        .into_iter()
                        .flat_map(|w| {
                            let mut plus = w.clone();
                            plus.push(Symbol::Plus);
                            let mut minus = w;
                            minus.push(Symbol::Minus);
                            [plus, minus]
                        })
                        .collect();
                } else {
                    partial.iter_mut().for_each(|w| w.push(*s));
                }
            }
            out.extend(partial.into_iter().map(Pattern));
        }
        PatternSet::new(out)
    }

    /// Serializes to the canonical pattern file format (`±` written as `x`).
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        for p in &self.patterns {
            s.push_str(&p.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// A binary word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinWord(Vec<bool>);

impl BinWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BinWord(bits)
    }

    /// The `len` low bits of `value`, most significant first.
    pub fn from_bits(value: u64, len: usize) -> Self {
        BinWord((0..len).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    /// Inverse of [`BinWord::from_bits`]; words longer than 64 bits are truncated.
    pub fn to_bits(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for BinWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    line: 1,
                    msg: format!("illegal bit {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinWord)
    }
}

/// A word over `{-, 0, +}` (never contains `±`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffWord(Vec<Symbol>);

impl DiffWord {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.contains(&Symbol::PlusMinus) {
            return Err(Error::InvalidArgument(
                "difference words cannot contain ±".into(),
            ));
        }
        Ok(DiffWord(symbols))
    }

    pub fn zeros(n: usize) -> Self {
        DiffWord(vec![Symbol::Zero; n])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negate(&self) -> DiffWord {
        DiffWord(self.0.iter().map(|s| s.negate()).collect())
    }
}

impl fmt::Display for DiffWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_symbols(&self.0, f)
    }
}

impl FromStr for DiffWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match Symbol::from_char(c) {
                Some(sym) if sym != Symbol::PlusMinus => Ok(sym),
                _ => Err(Error::Parse {
                    line: 1,
                    msg: format!("illegal difference symbol {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiffWord(symbols))
    }
}

pub fn parse_pattern_set(text: &str) -> Result<PatternSet> {
    PatternSet::parse(text)
}

pub fn negate_set(d: &PatternSet) -> PatternSet {
    d.negate()
}

/// Default cap on the number of plain patterns produced by `±`-expansion.
pub const DEFAULT_EXPANSION_BUDGET: usize = 1 << 20;

/// Expands every `±`; a no-op for plain sets.
///
/// # Panics
///
/// Panics if the expansion exceeds [`DEFAULT_EXPANSION_BUDGET`]; use
/// [`PatternSet::expand_within`] to handle that case.
pub fn expand_extended(d: &PatternSet) -> PatternSet {
    d.expand_within(DEFAULT_EXPANSION_BUDGET)
        .expect("±-expansion exceeds the default budget")
}

/// Symbol-by-symbol difference `u - v`.
pub fn difference(u: &BinWord, v: &BinWord) -> Result<DiffWord> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(DiffWord(
        u.bits()
            .iter()
            .zip(v.bits())
            .map(|(&a, &b)| match (a, b) {
                (true, false) => Symbol::Plus,
                (false, true) => Symbol::Minus,
                _ => Symbol::Zero,
            })
            .collect(),
    ))
}

/// True iff no pattern of `d` occurs in `w`. `±` in `d` matches either sign.
pub fn avoids(w: &DiffWord, d: &PatternSet) -> bool {
    !d.patterns().iter().any(|p| p.occurs_in(w.symbols()))
}

pub fn zero_params(d: &PatternSet) -> ZeroParams {
    d.zero_params()
}

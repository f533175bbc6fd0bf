//! Fixed reference coding.
//!
//! Every description length in the crate is the exact length of a bitstring
//! produced by the encoders in this module (or the model encoders built on
//! top of them). Lengths are integers; nothing here touches floating point.
//!
//! Words are written letter by letter with a fixed-width symbol code. The code
//! reserves one extra value, END, which terminates every word, so the width is
//! `ceil(log2(|symbols| + 1))`. Counts are written in unary: `k - 1` ones and a
//! terminating zero. Bits are emitted most-significant first within a token.
//! The exact layout is documented in `docs/coding.md`.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A number of bits.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct BitLength(pub u64);

impl BitLength {
    pub const ZERO: BitLength = BitLength(0);
    /// Sentinel for "no description within bounds".
    pub const INFINITE: BitLength = BitLength(u64::MAX);

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self == Self::INFINITE
    }

    /// `max(self - other, 0)`.
    pub fn saturating_sub(self, other: BitLength) -> BitLength {
        BitLength(self.0.saturating_sub(other.0))
    }
}

impl Add for BitLength {
    type Output = BitLength;

    fn add(self, rhs: BitLength) -> BitLength {
        BitLength(self.0.saturating_add(rhs.0))
    }
}

impl Add<u64> for BitLength {
    type Output = BitLength;

    fn add(self, rhs: u64) -> BitLength {
        BitLength(self.0.saturating_add(rhs))
    }
}

impl AddAssign for BitLength {
    fn add_assign(&mut self, rhs: BitLength) {
        *self = *self + rhs;
    }
}

impl Sum for BitLength {
    fn sum<I: Iterator<Item = BitLength>>(iter: I) -> BitLength {
        iter.fold(BitLength::ZERO, Add::add)
    }
}

impl From<u64> for BitLength {
    fn from(bits: u64) -> Self {
        BitLength(bits)
    }
}

impl fmt::Display for BitLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Lowercase Latin letters followed by the hyphen.
pub const DEFAULT_SYMBOLS: &str = "abcdefghijklmnopqrstuvwxyz-";

/// Ordered set of symbols words are written over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, u64>,
    symbol_cost: u64,
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self> {
        let symbols: Vec<char> = symbols.chars().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &ch) in symbols.iter().enumerate() {
            if index.insert(ch, i as u64).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {ch:?}")));
            }
        }
        // Values 0..len are symbols, `len` itself is END.
        let end = symbols.len() as u64;
        let symbol_cost = u64::from(u64::BITS - end.leading_zeros());
        Ok(Alphabet {
            symbols,
            index,
            symbol_cost,
        })
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Width in bits of one symbol (or END) code.
    pub fn symbol_cost(&self) -> u64 {
        self.symbol_cost
    }

    pub fn contains(&self, ch: char) -> bool {
        self.index.contains_key(&ch)
    }

    pub fn code_of(&self, ch: char) -> Option<u64> {
        self.index.get(&ch).copied()
    }

    pub fn end_code(&self) -> u64 {
        self.symbols.len() as u64
    }

    /// Checks that every character of `word` belongs to the alphabet.
    pub fn validate(&self, word: &str) -> Result<()> {
        match word.chars().find(|&ch| !self.contains(ch)) {
            Some(ch) => Err(Error::Alphabet {
                ch,
                word: word.to_string(),
            }),
            None => Ok(()),
        }
    }

    pub fn as_string(&self) -> String {
        self.symbols.iter().collect()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::new(DEFAULT_SYMBOLS).expect("default alphabet is valid")
    }
}

/// A (problem, solution) pair of words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Case {
    pub x: String,
    pub y: String,
}

impl Case {
    pub fn new(x: impl Into<String>, y: impl Into<String>) -> Self {
        Case {
            x: x.into(),
            y: y.into(),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.x, self.y)
    }
}

/// Cost of writing `word` followed by END.
pub fn word_cost(word: &str, alphabet: &Alphabet) -> Result<BitLength> {
    alphabet.validate(word)?;
    Ok(word_cost_unchecked(word, alphabet))
}

pub(crate) fn word_cost_unchecked(word: &str, alphabet: &Alphabet) -> BitLength {
    BitLength((word.chars().count() as u64 + 1) * alphabet.symbol_cost())
}

/// Unary code length for a positive count.
pub fn unary_cost(k: u64) -> Result<BitLength> {
    if k == 0 {
        return Err(Error::Domain("unary code is defined for k >= 1".into()));
    }
    Ok(BitLength(k))
}

/// Model-free description of a case: both words hard-coded, no framing.
pub fn null_case_cost(case: &Case, alphabet: &Alphabet) -> Result<BitLength> {
    Ok(word_cost(&case.x, alphabet)? + word_cost(&case.y, alphabet)?)
}

/// Append-only bit sink.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    /// Writes the low `width` bits of `value`, most significant first.
    pub fn write_fixed(&mut self, value: u64, width: u64) {
        debug_assert!(width == 64 || value < (1u64 << width));
        for shift in (0..width).rev() {
            self.bits.push((value >> shift) & 1 == 1);
        }
    }

    pub fn write_unary(&mut self, k: u64) -> Result<()> {
        unary_cost(k)?;
        for _ in 1..k {
            self.bits.push(true);
        }
        self.bits.push(false);
        Ok(())
    }

    pub fn write_word(&mut self, word: &str, alphabet: &Alphabet) -> Result<()> {
        alphabet.validate(word)?;
        let width = alphabet.symbol_cost();
        for ch in word.chars() {
            let code = alphabet.code_of(ch).expect("validated above");
            self.write_fixed(code, width);
        }
        self.write_fixed(alphabet.end_code(), width);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit_length(&self) -> BitLength {
        BitLength(self.bits.len() as u64)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }
}

impl fmt::Display for BitWriter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.bits {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Cursor over a bit slice. Reads past the end return `None`.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a [bool]) -> Self {
        BitReader { bits, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn is_exhausted(&self) -> bool {
        self.pos >= self.bits.len()
    }

    pub fn read_bit(&mut self) -> Option<bool> {
        let bit = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(bit)
    }

    pub fn read_fixed(&mut self, width: u64) -> Option<u64> {
        let mut value = 0u64;
        for _ in 0..width {
            value = (value << 1) | u64::from(self.read_bit()?);
        }
        Some(value)
    }

    pub fn read_unary(&mut self) -> Option<u64> {
        let mut k = 1;
        while self.read_bit()? {
            k += 1;
        }
        Some(k)
    }

    /// Reads one END-terminated word. `None` on truncation or an unused code.
    pub fn read_word(&mut self, alphabet: &Alphabet) -> Option<String> {
        let mut word = String::new();
        loop {
            let code = self.read_fixed(alphabet.symbol_cost())?;
            if code == alphabet.end_code() {
                return Some(word);
            }
            word.push(*alphabet.symbols().get(code as usize)?);
        }
    }
}

/// True when no bitstring in `codes` is a proper prefix of another one.
/// Duplicates are tolerated only if they are identical entries.
pub fn is_prefix_free(codes: &[Vec<bool>]) -> bool {
    let mut sorted: Vec<&Vec<bool>> = codes.iter().collect();
    sorted.sort();
    sorted.dedup();
    // After sorting, a prefix sorts directly before some string it prefixes,
    // and every string between them shares that prefix.
    sorted
        .windows(2)
        .all(|pair| !(pair[0].len() < pair[1].len() && pair[1].starts_with(pair[0])))
}

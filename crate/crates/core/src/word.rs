use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// A finite word over `{0,1}`.
///
/// Symbols are stored as bytes holding `0` or `1`. A word is *even* when it
/// contains an even number of `1`s and *odd* otherwise; the empty word is even.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw symbols. Any nonzero byte is read as `1`.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        Word(bits.into_iter().map(|b| u8::from(b != 0)).collect())
    }

    /// `symbol` repeated `n` times.
    pub fn constant(symbol: u8, n: usize) -> Self {
        Word(vec![u8::from(symbol != 0); n])
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u8> {
        self.0.get(i).copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_even(&self) -> bool {
        self.ones().is_multiple_of(2)
    }

    pub fn is_odd(&self) -> bool {
        !self.is_even()
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn push(&mut self, symbol: u8) {
        self.0.push(u8::from(symbol != 0));
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// The subword `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u8> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub(crate) fn into_vec(self) -> Vec<u8> {
        self.0
    }

    pub(crate) fn from_vec_unchecked(v: Vec<u8>) -> Self {
        debug_assert!(v.iter().all(|&b| b <= 1));
        Word(v)
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                found => Err(ParseError::UnexpectedChar { position, found }),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl From<&[u8]> for Word {
    fn from(bits: &[u8]) -> Self {
        Word::from_bits(bits.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parity() {
        assert!(Word::new().is_even());
        assert!(w("1001").is_even());
        assert!(w("10").is_odd());
        assert!(w("000").is_even());
    }

    #[test]
    fn parse_rejects_other_symbols() {
        assert_eq!(
            "1021".parse::<Word>(),
            Err(ParseError::UnexpectedChar { position: 2, found: '2' })
        );
    }

    #[test]
    fn reverse_and_palindrome() {
        assert_eq!(w("1101").reversed(), w("1011"));
        assert!(w("100110110011011001").is_palindrome());
        assert!(!w("10").is_palindrome());
    }
}

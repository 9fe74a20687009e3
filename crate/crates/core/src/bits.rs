//! Finite binary strings and prefix sets.

use std::fmt;
use std::str::FromStr;

use dashu_ratio::RBig;

use crate::error::{invalid, GaleError, Result};
use crate::exact::pow;

/// A finite binary string. The empty word is printed as `λ`.
///
/// Ordering is length-agnostic lexicographic with `0 < 1`, which agrees
/// with the standard enumeration order on words of equal length.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord(Vec<bool>);

impl BitWord {
    pub fn empty() -> Self {
        BitWord(Vec::new())
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        BitWord(bits.into_iter().collect())
    }

    /// `bit` repeated `n` times.
    pub fn repeat(bit: bool, n: usize) -> Self {
        BitWord(vec![bit; n])
    }

    /// The `len`-bit binary expansion of `index`, most significant bit first.
    pub fn from_index(index: u64, len: usize) -> Self {
        BitWord((0..len).map(|i| (index >> (len - 1 - i)) & 1 == 1).collect())
    }

    /// Inverse of [`BitWord::from_index`]; panics above 64 bits.
    pub fn to_index(&self) -> u64 {
        assert!(self.len() <= 64, "word too long for an index");
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn pop(&mut self) -> Option<bool> {
        self.0.pop()
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    pub fn extend_from(&mut self, other: &BitWord) {
        self.0.extend_from_slice(&other.0);
    }

    /// `self · bit`
    pub fn child(&self, bit: bool) -> BitWord {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(bit);
        BitWord(v)
    }

    pub fn concat(&self, other: &BitWord) -> BitWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        BitWord(v)
    }

    /// The length-`n` prefix. Panics if `n > len`.
    pub fn prefix(&self, n: usize) -> BitWord {
        BitWord(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> BitWord {
        BitWord(self.0[n..].to_vec())
    }

    pub fn is_prefix_of(&self, other: &BitWord) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &BitWord) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    /// `#(1, w)`
    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// `#(0, w)`
    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    /// All prefixes from `λ` up to the word itself.
    pub fn prefixes(&self) -> impl Iterator<Item = BitWord> + '_ {
        (0..=self.len()).map(move |n| self.prefix(n))
    }

    /// All words of length `len` in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BitWord> {
        assert!(len < 64, "refusing to enumerate 2^{len} words");
        (0..(1u64 << len)).map(move |i| BitWord::from_index(i, len))
    }

    /// All words of length at most `depth`, shortest first.
    pub fn all_up_to(depth: usize) -> impl Iterator<Item = BitWord> {
        (0..=depth).flat_map(BitWord::all_of_length)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BitWord {
    type Err = GaleError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "λ" {
            return Ok(BitWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(invalid(format!("bad bit {other:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitWord)
    }
}

/// A finite antichain under the prefix order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixSet {
    words: Vec<BitWord>,
}

impl PrefixSet {
    /// Duplicates are merged; a proper prefix relation between two members is
    /// rejected.
    pub fn new<I: IntoIterator<Item = BitWord>>(words: I) -> Result<Self> {
        let mut words: Vec<BitWord> = words.into_iter().collect();
        words.sort();
        words.dedup();
        // in lexicographic order a word's extensions immediately follow it
        for pair in words.windows(2) {
            if pair[0].is_prefix_of(&pair[1]) {
                return Err(GaleError::NotPrefixSet { prefix: pair[0].clone(), word: pair[1].clone() });
            }
        }
        Ok(PrefixSet { words })
    }

    pub fn parse(words: &[impl AsRef<str>]) -> Result<Self> {
        let words = words.iter().map(|w| w.as_ref().parse()).collect::<Result<Vec<BitWord>>>()?;
        PrefixSet::new(words)
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(BitWord::len).max().unwrap_or(0)
    }

    /// The member that is a prefix of `w`, if any (there is at most one).
    pub fn member_prefix_of(&self, w: &BitWord) -> Option<&BitWord> {
        self.words.iter().find(|v| v.is_prefix_of(w))
    }

    /// `Σ_{w ∈ A} q^{-|w|}`, the s-dimensional cover sum of the set.
    pub fn kraft_mass(&self, q: &RBig) -> RBig {
        self.words.iter().map(|w| RBig::ONE / pow(q, w.len())).fold(RBig::ZERO, |acc, x| acc + x)
    }
}

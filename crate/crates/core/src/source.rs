//! Pull-based infinite (or finite) binary sequences.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::bits::BitWord;
use crate::error::{invalid, GaleError, Result};

/// A binary sequence queried one bit at a time.
///
/// `bit(i)` is `None` past the end of a finite source.
pub trait SequenceSource: Send + Sync + fmt::Debug {
    fn bit(&self, i: usize) -> Option<bool>;

    fn label(&self) -> String;

    /// The length-`n` prefix.
    fn prefix(&self, n: usize) -> Result<BitWord> {
        let mut w = BitWord::empty();
        for i in 0..n {
            w.push(self.bit(i).ok_or(GaleError::SourceExhausted(i))?);
        }
        Ok(w)
    }
}

pub type Source = Arc<dyn SequenceSource>;

/// `pattern^ω`
#[derive(Clone, Debug)]
pub struct Periodic {
    pattern: BitWord,
}

impl Periodic {
    pub fn new(pattern: BitWord) -> Result<Self> {
        if pattern.is_empty() {
            return Err(invalid("periodic source needs a nonempty pattern"));
        }
        Ok(Periodic { pattern })
    }

    pub fn constant(bit: bool) -> Self {
        Periodic { pattern: BitWord::repeat(bit, 1) }
    }

    pub fn pattern(&self) -> &BitWord {
        &self.pattern
    }
}

impl SequenceSource for Periodic {
    fn bit(&self, i: usize) -> Option<bool> {
        Some(self.pattern.bit(i % self.pattern.len()))
    }

    fn label(&self) -> String {
        format!("({})^ω", self.pattern)
    }
}

/// A finite word; exhausted past its end.
#[derive(Clone, Debug)]
pub struct Explicit {
    bits: BitWord,
}

impl Explicit {
    pub fn new(bits: BitWord) -> Self {
        Explicit { bits }
    }

    /// Reads `0`/`1` characters, ignoring whitespace.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        Ok(Explicit { bits: cleaned.parse()? })
    }

    pub fn bits(&self) -> &BitWord {
        &self.bits
    }
}

impl SequenceSource for Explicit {
    fn bit(&self, i: usize) -> Option<bool> {
        (i < self.bits.len()).then(|| self.bits.bit(i))
    }

    fn label(&self) -> String {
        format!("explicit[{} bits]", self.bits.len())
    }
}

/// The concatenation `0 1 00 01 10 11 000 …` of all nonempty words in
/// standard order.
#[derive(Clone, Debug, Default)]
pub struct Champernowne;

impl SequenceSource for Champernowne {
    fn bit(&self, mut i: usize) -> Option<bool> {
        let mut len = 1usize;
        loop {
            let block = len.checked_mul(1usize << len)?;
            if i < block {
                let word = (i / len) as u64;
                let offset = i % len;
                return Some((word >> (len - 1 - offset)) & 1 == 1);
            }
            i -= block;
            len += 1;
        }
    }

    fn label(&self) -> String {
        "champernowne".to_string()
    }
}

/// `0^k 1 0^ω`; the k-th member of a countable family.
#[derive(Clone, Debug)]
pub struct Indicator {
    k: usize,
}

impl Indicator {
    pub fn new(k: usize) -> Self {
        Indicator { k }
    }
}

impl SequenceSource for Indicator {
    fn bit(&self, i: usize) -> Option<bool> {
        Some(i == self.k)
    }

    fn label(&self) -> String {
        format!("0^{} 1 0^ω", self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_and_constant() {
        let p = Periodic::new("110".parse().unwrap()).unwrap();
        assert_eq!(p.prefix(7).unwrap().to_string(), "1101101");
        assert_eq!(Periodic::constant(false).prefix(3).unwrap().to_string(), "000");
        assert!(Periodic::new(BitWord::empty()).is_err());
    }

    #[test]
    fn explicit_exhausts() {
        let e = Explicit::new("01".parse().unwrap());
        assert_eq!(e.prefix(2).unwrap().to_string(), "01");
        assert_eq!(e.prefix(3).unwrap_err(), GaleError::SourceExhausted(2));
    }

    #[test]
    fn champernowne_prefix() {
        assert_eq!(Champernowne.prefix(14).unwrap().to_string(), "01000110110000");
    }

    #[test]
    fn indicator() {
        assert_eq!(Indicator::new(2).prefix(5).unwrap().to_string(), "00100");
    }
}

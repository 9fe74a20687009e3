//! Concrete gale constructions.

mod block;
mod circuit;
mod cover;

use std::fmt;

use dashu_ratio::RBig;

use crate::bits::BitWord;
use crate::error::{invalid, GaleError, Result};
use crate::exact::{pow, SExponent};
use crate::gale::{GaleRule, Kind};
use crate::source::Source;

pub use block::{BlockAlphabet, BlockGale};
pub use circuit::CircuitGale;
pub use cover::{CoverGale, CoverSumGale};

/// `d(w) = (q/2)^{|w|}`
#[derive(Clone, Debug)]
pub struct TrivialGale {
    s: SExponent,
    factor: RBig,
}

impl TrivialGale {
    pub fn new(s: SExponent) -> Self {
        let factor = s.half_q();
        TrivialGale { s, factor }
    }
}

impl GaleRule for TrivialGale {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        Ok(pow(&self.factor, w.len()))
    }

    fn step_ratio(&self, _w: &BitWord, _bit: bool) -> Option<Result<RBig>> {
        Some(Ok(self.factor.clone()))
    }

    fn label(&self) -> String {
        format!("trivial(q={})", self.s)
    }
}

/// `d(w) = q^{|w|}` on prefixes of the target, `0` elsewhere.
pub struct SingletonGale {
    s: SExponent,
    target: Source,
}

impl SingletonGale {
    pub fn new(s: SExponent, target: Source) -> Self {
        SingletonGale { s, target }
    }

    fn target_bit(&self, i: usize) -> Result<bool> {
        self.target.bit(i).ok_or(GaleError::SourceExhausted(i))
    }
}

impl fmt::Debug for SingletonGale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SingletonGale(q={}, target={})", self.s, self.target.label())
    }
}

impl GaleRule for SingletonGale {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        for (i, b) in w.iter().enumerate() {
            if self.target_bit(i)? != b {
                return Ok(RBig::ZERO);
            }
        }
        Ok(self.s.q_pow(w.len()))
    }

    fn step_ratio(&self, w: &BitWord, bit: bool) -> Option<Result<RBig>> {
        Some(self.target_bit(w.len()).map(|t| if t == bit { self.s.q().clone() } else { RBig::ZERO }))
    }

    fn label(&self) -> String {
        format!("singleton(q={}, target={})", self.s, self.target.label())
    }
}

/// Bets a fixed fraction `y` of the inflated capital on `1`:
/// `d(w0) = (1-y)·q·d(w)`, `d(w1) = y·q·d(w)`.
#[derive(Clone, Debug)]
pub struct FrequencyGale {
    s: SExponent,
    y: RBig,
    zero_factor: RBig,
    one_factor: RBig,
}

impl FrequencyGale {
    /// Requires `0 < y ≤ 1/2`.
    pub fn new(s: SExponent, y: RBig) -> Result<Self> {
        if y <= RBig::ZERO || y > RBig::from_parts(1.into(), 2u8.into()) {
            return Err(invalid(format!("frequency bias y = {y} must lie in (0, 1/2]")));
        }
        Ok(FrequencyGale::with_bias(s, y))
    }

    /// Any `0 ≤ y ≤ 1`; used for families whose bias tracks a frequency above 1/2.
    pub fn with_bias(s: SExponent, y: RBig) -> Self {
        let zero_factor = (RBig::ONE - &y) * s.q();
        let one_factor = &y * s.q();
        FrequencyGale { s, y, zero_factor, one_factor }
    }

    pub fn bias(&self) -> &RBig {
        &self.y
    }

    /// `y^{#1}(1-y)^{#0} q^{|w|}` evaluated directly from the counts.
    pub fn closed_form(&self, ones: usize, zeros: usize) -> RBig {
        pow(&self.y, ones) * pow(&(RBig::ONE - &self.y), zeros) * self.s.q_pow(ones + zeros)
    }
}

impl GaleRule for FrequencyGale {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        Ok(self.closed_form(w.ones(), w.zeros()))
    }

    fn step_ratio(&self, _w: &BitWord, bit: bool) -> Option<Result<RBig>> {
        Some(Ok(if bit { self.one_factor.clone() } else { self.zero_factor.clone() }))
    }

    fn label(&self) -> String {
        format!("frequency(q={}, y={})", self.s, self.y)
    }
}

use std::sync::Arc;

use dashu_ratio::RBig;

use crate::bits::BitWord;
use crate::circuit::{Census, MAX_INPUTS};
use crate::error::{invalid, GaleError, Result};
use crate::exact::SExponent;
use crate::gale::{GaleRule, Kind};
use crate::par::Exec;

/// Bets on each input-length segment in proportion to how many small
/// circuits agree with the bits seen so far:
/// `d(wu) = q^{|u|} N(n,t,u)/N(n,t) · d(w)` for `w` at the start of segment `n`.
///
/// Segment `n` occupies positions `2^n - 1 ..= 2^{n+1} - 2`.
#[derive(Debug)]
pub struct CircuitGale {
    s: SExponent,
    budgets: Vec<usize>,
    censuses: Vec<Arc<Census>>,
}

/// `(n, offset)` for global position `p`.
pub(crate) fn segment_of(p: usize) -> (usize, usize) {
    let n = (usize::BITS - 1 - (p + 1).leading_zeros()) as usize;
    (n, p + 1 - (1 << n))
}

impl CircuitGale {
    /// `budgets[n]` is the gate bound `t(n)` for segment `n`.
    pub fn new(s: SExponent, budgets: Vec<usize>, exec: Exec) -> Result<Self> {
        if budgets.is_empty() || budgets.len() > MAX_INPUTS + 1 {
            return Err(invalid(format!("circuit gale needs 1..={} segment budgets", MAX_INPUTS + 1)));
        }
        let censuses = budgets
            .iter()
            .enumerate()
            .map(|(n, &t)| Census::build(n, t, exec).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        for (n, c) in censuses.iter().enumerate() {
            if c.novel_count(budgets[n])? == 0 {
                return Err(invalid(format!("no circuits within budget for n={n}")));
            }
        }
        Ok(CircuitGale { s, budgets, censuses })
    }

    pub fn n_max(&self) -> usize {
        self.budgets.len() - 1
    }

    pub fn census(&self, n: usize) -> &Census {
        &self.censuses[n]
    }

    pub fn budget(&self, n: usize) -> usize {
        self.budgets[n]
    }

    fn segment_count(&self, n: usize, u: &BitWord) -> Result<u64> {
        self.censuses[n].conditional_count(self.budgets[n], u)
    }

    fn out_of_range(&self, len: usize) -> GaleError {
        GaleError::OutOfRange(format!(
            "circuit gale is defined up to length {}, asked for {len}",
            self.max_len().unwrap_or(0)
        ))
    }
}

impl GaleRule for CircuitGale {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        if w.len() > self.max_len().expect("bounded") {
            return Err(self.out_of_range(w.len()));
        }
        let mut v = RBig::ONE;
        let mut n = 0;
        while (1 << n) - 1 < w.len() {
            let start = (1 << n) - 1;
            let end = w.len().min((1 << (n + 1)) - 1);
            let u = BitWord::from_bits(w.bits()[start..end].iter().copied());
            let total = self.segment_count(n, &BitWord::empty())?;
            let part = self.segment_count(n, &u)?;
            v *= self.s.q_pow(u.len()) * RBig::from_parts(part.into(), total.into());
            n += 1;
        }
        Ok(v)
    }

    fn step_ratio(&self, w: &BitWord, bit: bool) -> Option<Result<RBig>> {
        if w.len() >= self.max_len().expect("bounded") {
            return Some(Err(self.out_of_range(w.len() + 1)));
        }
        let (n, offset) = segment_of(w.len());
        let u = w.suffix_from(w.len() - offset);
        let r = self.segment_count(n, &u).and_then(|before| {
            if before == 0 {
                return Ok(RBig::ZERO);
            }
            let after = self.segment_count(n, &u.child(bit))?;
            Ok(self.s.q() * RBig::from_parts(after.into(), before.into()))
        });
        Some(r)
    }

    fn max_len(&self) -> Option<usize> {
        Some((1 << (self.n_max() + 1)) - 1)
    }

    fn label(&self) -> String {
        format!("circuit(q={}, budgets={:?})", self.s, self.budgets)
    }
}

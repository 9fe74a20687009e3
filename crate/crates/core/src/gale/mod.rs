//! Gales, supergales and the machinery for walking along them.

pub mod checks;
pub mod suite;
pub mod table;
pub mod transform;

use std::cell::OnceCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use dashu_ratio::RBig;
use serde::{Deserialize, Serialize};

use crate::bits::BitWord;
use crate::error::Result;
use crate::exact::SExponent;
use crate::interval::{log2, Dyadic};

/// Which condition a rule promises: equality (`gale`) or `≥` (`supergale`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Gale,
    Supergale,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Gale => "gale",
            Kind::Supergale => "supergale",
        })
    }
}

/// A deterministic map from words to nonnegative exact rationals.
///
/// Implementations must be pure: `eval` on equal words returns equal values,
/// regardless of call order or thread.
pub trait GaleRule: Send + Sync + fmt::Debug {
    fn exponent(&self) -> &SExponent;

    fn kind(&self) -> Kind;

    fn eval(&self, w: &BitWord) -> Result<RBig>;

    /// `d(wb) / d(w)`, for rules that can produce it without evaluating
    /// `d(wb)` from scratch. Only meaningful when `d(w) > 0`.
    fn step_ratio(&self, _w: &BitWord, _bit: bool) -> Option<Result<RBig>> {
        None
    }

    /// Largest `|w|` at which `eval` is defined, if bounded.
    fn max_len(&self) -> Option<usize> {
        None
    }

    fn label(&self) -> String;
}

pub type Gale = Arc<dyn GaleRule>;

/// A word-keyed cache safe for concurrent readers and writers.
#[derive(Default)]
pub struct Memo {
    map: RwLock<HashMap<BitWord, RBig>>,
}

impl Memo {
    pub fn new() -> Self {
        Memo::default()
    }

    pub fn get(&self, w: &BitWord) -> Option<RBig> {
        self.map.read().expect("memo lock").get(w).cloned()
    }

    pub fn insert(&self, w: BitWord, v: RBig) {
        self.map.write().expect("memo lock").insert(w, v);
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Debug for Memo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Memo({} entries)", self.len())
    }
}

/// `d(wb)` given `d(w)`, using the step ratio when available.
pub fn child_value(gale: &dyn GaleRule, w: &mut BitWord, dw: &RBig, bit: bool) -> Result<RBig> {
    if dw.is_zero() {
        // supergale values below a zero node are zero
        return Ok(RBig::ZERO);
    }
    if let Some(r) = gale.step_ratio(w, bit) {
        return Ok(dw * r?);
    }
    w.push(bit);
    let v = gale.eval(w);
    w.pop();
    v
}

/// A position in the tree together with its exact value.
#[derive(Debug)]
pub struct Cursor<'g> {
    gale: &'g dyn GaleRule,
    word: BitWord,
    value: RBig,
}

impl<'g> Cursor<'g> {
    pub fn new(gale: &'g dyn GaleRule) -> Result<Self> {
        Cursor::at(gale, BitWord::empty())
    }

    pub fn at(gale: &'g dyn GaleRule, word: BitWord) -> Result<Self> {
        let value = gale.eval(&word)?;
        Ok(Cursor { gale, word, value })
    }

    pub fn gale(&self) -> &'g dyn GaleRule {
        self.gale
    }

    pub fn word(&self) -> &BitWord {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn value(&self) -> &RBig {
        &self.value
    }

    pub fn into_word(self) -> BitWord {
        self.word
    }

    pub fn child(&mut self, bit: bool) -> Result<RBig> {
        child_value(self.gale, &mut self.word, &self.value, bit)
    }

    pub fn push(&mut self, bit: bool) -> Result<()> {
        let v = self.child(bit)?;
        self.word.push(bit);
        self.value = v;
        Ok(())
    }

    pub fn push_word(&mut self, u: &BitWord) -> Result<()> {
        u.iter().try_for_each(|b| self.push(b))
    }

    /// Lookahead below the current word without moving the cursor.
    pub fn explore(&mut self) -> Explorer<'_> {
        Explorer::new(self.gale, &mut self.word, &self.value)
    }
}

/// Depth-first lookahead below a fixed word.
///
/// Values are reported scaled by one positive constant (either `1/d(w)` or
/// `1`), so they compare correctly with each other and with [`Explorer::base`].
pub struct Explorer<'c> {
    gale: &'c dyn GaleRule,
    word: &'c mut BitWord,
    root_len: usize,
    root_value: OnceCell<RBig>,
    ratio_mode: bool,
    stack: Vec<RBig>,
}

impl<'c> Explorer<'c> {
    fn new(gale: &'c dyn GaleRule, word: &'c mut BitWord, dw: &RBig) -> Self {
        let root_len = word.len();
        let ratio_mode = !dw.is_zero() && gale.step_ratio(word, false).is_some();
        let base = if ratio_mode { RBig::ONE } else { dw.clone() };
        Explorer { gale, word, root_len, root_value: OnceCell::from(dw.clone()), ratio_mode, stack: vec![base] }
    }

    /// Lookahead below a word known to have positive value, without
    /// materializing `d(w)` unless a node lacks step ratios.
    fn positive(gale: &'c dyn GaleRule, word: &'c mut BitWord) -> Result<Self> {
        if gale.step_ratio(word, false).is_none() {
            let dw = gale.eval(word)?;
            return Ok(Explorer::new(gale, word, &dw));
        }
        let root_len = word.len();
        Ok(Explorer { gale, word, root_len, root_value: OnceCell::new(), ratio_mode: true, stack: vec![RBig::ONE] })
    }

    fn root_value(&self) -> Result<&RBig> {
        if let Some(v) = self.root_value.get() {
            return Ok(v);
        }
        let v = self.gale.eval(&self.word.prefix(self.root_len))?;
        Ok(self.root_value.get_or_init(|| v))
    }

    /// The scaled value of the root word.
    pub fn base(&self) -> &RBig {
        &self.stack[0]
    }

    /// The scaled value at the current node.
    pub fn value(&self) -> &RBig {
        self.stack.last().expect("nonempty stack")
    }

    /// Number of bits below the root.
    pub fn depth(&self) -> usize {
        self.stack.len() - 1
    }

    pub fn descend(&mut self, bit: bool) -> Result<&RBig> {
        let cur = self.value();
        let v = if cur.is_zero() {
            RBig::ZERO
        } else if let Some(r) = self.gale.step_ratio(self.word, bit) {
            cur * r?
        } else {
            self.word.push(bit);
            let v = self.gale.eval(self.word);
            self.word.pop();
            if self.ratio_mode {
                v? / self.root_value()?
            } else {
                v?
            }
        };
        self.word.push(bit);
        self.stack.push(v);
        Ok(self.value())
    }

    pub fn ascend(&mut self) {
        assert!(self.depth() > 0, "already at the root");
        self.word.pop();
        self.stack.pop();
    }

    /// Scaled values along `u`, from the root (index 0) to `wu`.
    pub fn path(&mut self, u: &BitWord) -> Result<Vec<RBig>> {
        let start = self.depth();
        let mut out = Vec::with_capacity(u.len() + 1);
        out.push(self.value().clone());
        for b in u.iter() {
            let v = self.descend(b)?;
            out.push(v.clone());
        }
        for _ in start..self.depth() {
            self.ascend();
        }
        Ok(out)
    }
}

impl Drop for Explorer<'_> {
    fn drop(&mut self) {
        self.word.truncate(self.root_len);
    }
}

/// Streaming walk along a sequence that tracks `log2 d(w) - log2 d(λ)` as a
/// certified interval, with an exact fallback for ambiguous comparisons.
///
/// When the rule offers step ratios, each distinct ratio is logged once and
/// the running sum is a weighted count; otherwise exact values are kept.
pub struct PathWalk<'g> {
    gale: &'g dyn GaleRule,
    word: BitWord,
    bits: usize,
    base: RBig,
    log_rel: Dyadic,
    zero: bool,
    index: HashMap<RBig, usize>,
    ratios: Vec<(RBig, Dyadic, u64)>,
    value: Option<RBig>,
}

impl<'g> PathWalk<'g> {
    pub fn new(gale: &'g dyn GaleRule, bits: usize) -> Result<Self> {
        let base = gale.eval(&BitWord::empty())?;
        let zero = base.is_zero();
        let ratio_mode = !zero && gale.step_ratio(&BitWord::empty(), false).is_some();
        Ok(PathWalk {
            gale,
            word: BitWord::empty(),
            bits,
            value: if ratio_mode { None } else { Some(base.clone()) },
            base,
            log_rel: Dyadic::zero(bits),
            zero,
            index: HashMap::new(),
            ratios: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &BitWord {
        &self.word
    }

    /// `d(λ)`
    pub fn base(&self) -> &RBig {
        &self.base
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn push(&mut self, bit: bool) -> Result<()> {
        if self.zero {
            self.word.push(bit);
            return Ok(());
        }
        match self.value.take() {
            None => {
                let r = match self.gale.step_ratio(&self.word, bit) {
                    Some(r) => r?,
                    None => {
                        let here = self.gale.eval(&self.word)?;
                        let next = child_value(self.gale, &mut self.word, &here, bit)?;
                        next / here
                    }
                };
                self.word.push(bit);
                if r.is_zero() {
                    self.zero = true;
                    return Ok(());
                }
                let i = match self.index.get(&r) {
                    Some(&i) => i,
                    None => {
                        let l = log2(&r, self.bits)?;
                        self.ratios.push((r.clone(), l, 0));
                        self.index.insert(r, self.ratios.len() - 1);
                        self.ratios.len() - 1
                    }
                };
                self.ratios[i].2 += 1;
                self.log_rel = self.log_rel.add(&self.ratios[i].1);
            }
            Some(v) => {
                let next = child_value(self.gale, &mut self.word, &v, bit)?;
                self.word.push(bit);
                if next.is_zero() {
                    self.zero = true;
                } else {
                    self.log_rel = log2(&(&next / &self.base), self.bits)?;
                }
                self.value = Some(next);
            }
        }
        Ok(())
    }

    /// Lookahead below the current word. Values are scaled as in
    /// [`Cursor::explore`]; on a zero node everything below is zero.
    pub fn explore(&mut self) -> Result<Explorer<'_>> {
        if self.zero {
            return Ok(Explorer::new(self.gale, &mut self.word, &RBig::ZERO));
        }
        match &self.value {
            Some(v) => Ok(Explorer::new(self.gale, &mut self.word, v)),
            None => Explorer::positive(self.gale, &mut self.word),
        }
    }

    /// Certified `log2(d(w)/d(λ))`, or `None` once the value is zero.
    pub fn log_relative(&self) -> Option<&Dyadic> {
        (!self.zero).then_some(&self.log_rel)
    }

    /// Certified `log2 d(w)`, or `None` once the value is zero.
    pub fn log_absolute(&self) -> Result<Option<Dyadic>> {
        if self.zero {
            return Ok(None);
        }
        Ok(Some(log2(&self.base, self.bits)?.add(&self.log_rel)))
    }

    /// `d(w)/d(λ)` exactly. Costly on long ratio walks.
    pub fn exact_relative(&self) -> RBig {
        if self.zero {
            return RBig::ZERO;
        }
        match &self.value {
            Some(v) => v / &self.base,
            None => self.ratios.iter().fold(RBig::ONE, |acc, (r, _, c)| acc * r.pow(*c as usize)),
        }
    }

    /// Decides `d(w) ≥ 2^t · d(λ)`, using the interval when it is conclusive.
    pub fn relative_at_least(&self, t: &RBig) -> bool {
        if self.zero {
            return false;
        }
        if let Some(ans) = self.log_rel.certainly_ge(t) {
            return ans;
        }
        exact_ge_pow2(&self.exact_relative(), t)
    }
}

impl fmt::Debug for PathWalk<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathWalk")
            .field("len", &self.len())
            .field("log_rel", &self.log_rel)
            .field("zero", &self.zero)
            .finish()
    }
}

/// `x ≥ 2^t` for rational `t`, decided exactly as `x^den ≥ 2^num`.
pub fn exact_ge_pow2(x: &RBig, t: &RBig) -> bool {
    if *x <= RBig::ZERO {
        return false;
    }
    let den = t.denominator().clone();
    let num = t.numerator().clone();
    let den: usize = (&den).try_into().expect("threshold denominator fits in usize");
    let lhs = x.pow(den);
    let e: i64 = (&num).try_into().expect("threshold numerator fits in i64");
    lhs >= crate::exact::pow2(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::zoo::{FrequencyGale, TrivialGale};

    #[test]
    fn memo_round_trip() {
        let m = Memo::new();
        let w: BitWord = "01".parse().unwrap();
        assert!(m.get(&w).is_none());
        m.insert(w.clone(), ratio(3, 4));
        assert_eq!(m.get(&w), Some(ratio(3, 4)));
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn cursor_tracks_values() {
        let g = FrequencyGale::new(SExponent::martingale(), ratio(1, 4)).unwrap();
        let mut c = Cursor::new(&g).unwrap();
        c.push(false).unwrap();
        assert_eq!(c.value(), &ratio(3, 2));
        c.push(true).unwrap();
        assert_eq!(c.value(), &ratio(3, 4));
        assert_eq!(c.value(), &g.eval(c.word()).unwrap());
    }

    #[test]
    fn explorer_restores_word() {
        let g = TrivialGale::new("3/2".parse().unwrap());
        let mut c = Cursor::at(&g, "01".parse().unwrap()).unwrap();
        {
            let mut e = c.explore();
            let p = e.path(&"110".parse().unwrap()).unwrap();
            assert_eq!(p.len(), 4);
            assert_eq!(p[3], ratio(27, 64));
            e.descend(true).unwrap();
        }
        assert_eq!(c.word().to_string(), "01");
    }

    #[test]
    fn path_walk_exact_fallback() {
        let g = TrivialGale::new(SExponent::from_ratio(5, 2).unwrap());
        let mut walk = PathWalk::new(&g, 32).unwrap();
        let t = RBig::from(20u8);
        let mut first = None;
        for n in 1..=100 {
            walk.push(false).unwrap();
            if first.is_none() && walk.relative_at_least(&t) {
                first = Some(n);
            }
        }
        assert_eq!(first, Some(63));
        assert_eq!(walk.exact_relative(), ratio(5, 4).pow(100));
    }

    #[test]
    fn pow2_comparison() {
        assert!(exact_ge_pow2(&RBig::from(8u8), &RBig::from(3u8)));
        assert!(!exact_ge_pow2(&RBig::from(7u8), &RBig::from(3u8)));
        assert!(exact_ge_pow2(&RBig::from(2u8), &ratio(1, 2)));
        assert!(exact_ge_pow2(&ratio(1, 2), &RBig::from(-1)));
        assert!(!exact_ge_pow2(&RBig::ZERO, &RBig::from(-5)));
    }
}

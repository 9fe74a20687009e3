use dashu_ratio::RBig;

use crate::bits::BitWord;
use crate::error::{invalid, Result};
use crate::exact::SExponent;
use crate::gale::{GaleRule, Kind};

/// A nonempty set `S` of words of common length `l`, kept in lexicographic
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAlphabet {
    l: usize,
    words: Vec<BitWord>,
}

impl BlockAlphabet {
    pub fn new(l: usize, words: impl IntoIterator<Item = BitWord>) -> Result<Self> {
        if l == 0 || l > 32 {
            return Err(invalid(format!("block length {l} must lie in 1..=32")));
        }
        let mut words: Vec<BitWord> = words.into_iter().collect();
        if let Some(bad) = words.iter().find(|w| w.len() != l) {
            return Err(invalid(format!("block word {bad} does not have length {l}")));
        }
        words.sort();
        words.dedup();
        if words.is_empty() {
            return Err(invalid("block alphabet must be nonempty"));
        }
        Ok(BlockAlphabet { l, words })
    }

    pub fn parse(l: usize, words: &[impl AsRef<str>]) -> Result<Self> {
        let words = words.iter().map(|w| w.as_ref().parse()).collect::<Result<Vec<BitWord>>>()?;
        BlockAlphabet::new(l, words)
    }

    /// The first `size` words of length `l` in lexicographic order.
    pub fn first(l: usize, size: usize) -> Result<Self> {
        if l > 32 || size as u64 > 1u64 << l {
            return Err(invalid(format!("cannot pick {size} words of length {l}")));
        }
        BlockAlphabet::new(l, (0..size as u64).map(|i| BitWord::from_index(i, l)))
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, u: &BitWord) -> bool {
        self.words.binary_search(u).is_ok()
    }

    /// `|{v ∈ S : u ⊑ v}|` for `|u| ≤ l`.
    pub fn count_extending(&self, u: &BitWord) -> usize {
        self.words.iter().filter(|v| u.is_prefix_of(v)).count()
    }

    /// `ρ(u) = |{v ∈ S : u ⊑ v}| / |S|`
    pub fn rho(&self, u: &BitWord) -> RBig {
        RBig::from_parts(self.count_extending(u).into(), self.size().into())
    }
}

/// `d(wu) = q^{|u|} ρ(u) d(w)` for `w` at a block boundary and `|u| ≤ l`.
#[derive(Clone, Debug)]
pub struct BlockGale {
    s: SExponent,
    alphabet: BlockAlphabet,
}

impl BlockGale {
    pub fn new(s: SExponent, alphabet: BlockAlphabet) -> Self {
        BlockGale { s, alphabet }
    }

    pub fn alphabet(&self) -> &BlockAlphabet {
        &self.alphabet
    }

    /// `q^l / |S|`, the factor gained on each block drawn from `S`.
    pub fn block_factor(&self) -> RBig {
        self.s.q_pow(self.alphabet.l) / RBig::from(self.alphabet.size())
    }
}

impl GaleRule for BlockGale {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        let l = self.alphabet.l;
        let full = w.len() / l;
        let mut v = RBig::ONE;
        for k in 0..full {
            let block = BitWord::from_bits(w.bits()[k * l..(k + 1) * l].iter().copied());
            if !self.alphabet.contains(&block) {
                return Ok(RBig::ZERO);
            }
        }
        if full > 0 {
            v = self.block_factor().pow(full);
        }
        let tail = w.suffix_from(full * l);
        Ok(v * self.s.q_pow(tail.len()) * self.alphabet.rho(&tail))
    }

    fn step_ratio(&self, w: &BitWord, bit: bool) -> Option<Result<RBig>> {
        let l = self.alphabet.l;
        let tail = w.suffix_from(w.len() - w.len() % l);
        let before = self.alphabet.count_extending(&tail);
        if before == 0 {
            return Some(Ok(RBig::ZERO));
        }
        let after = self.alphabet.count_extending(&tail.child(bit));
        Some(Ok(self.s.q() * RBig::from_parts(after.into(), before.into())))
    }

    fn label(&self) -> String {
        format!("block(q={}, l={}, |S|={})", self.s, self.alphabet.l, self.alphabet.size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::gale::checks::validate;
    use crate::gale::Cursor;
    use crate::zoo::TrivialGale;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn alphabet_validation() {
        assert!(BlockAlphabet::parse(2, &["00", "1"]).is_err());
        assert!(BlockAlphabet::parse(2, &[] as &[&str]).is_err());
        assert!(BlockAlphabet::new(0, []).is_err());
        let a = BlockAlphabet::parse(2, &["11", "00", "11"]).unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.words()[0].to_string(), "00");
        assert_eq!(BlockAlphabet::first(3, 5).unwrap().words()[4].to_string(), "100");
    }

    #[test]
    fn small_values() {
        let g = BlockGale::new(SExponent::martingale(), BlockAlphabet::parse(2, &["00", "11"]).unwrap());
        assert_eq!(g.eval(&w("0")).unwrap(), RBig::ONE);
        assert_eq!(g.eval(&w("00")).unwrap(), ratio(2, 1));
        assert_eq!(g.eval(&w("01")).unwrap(), RBig::ZERO);
        assert_eq!(g.eval(&w("000000")).unwrap(), ratio(8, 1));
        assert!(validate(&g, 10).valid());
    }

    #[test]
    fn step_ratios_match_eval() {
        let g = BlockGale::new(
            "3/2".parse().unwrap(),
            BlockAlphabet::parse(3, &["001", "010", "100", "111", "110"]).unwrap(),
        );
        for u in BitWord::all_up_to(9) {
            let mut c = Cursor::new(&g).unwrap();
            c.push_word(&u).unwrap();
            assert_eq!(c.value(), &g.eval(&u).unwrap(), "{u}");
        }
    }

    #[test]
    fn full_alphabet_is_trivial() {
        let q: SExponent = "5/4".parse().unwrap();
        let g = BlockGale::new(q.clone(), BlockAlphabet::first(2, 4).unwrap());
        let t = TrivialGale::new(q);
        for u in BitWord::all_up_to(7) {
            assert_eq!(g.eval(&u).unwrap(), t.eval(&u).unwrap());
        }
    }
}

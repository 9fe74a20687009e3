use dashu_ratio::RBig;

use crate::bits::{BitWord, PrefixSet};
use crate::error::{invalid, Result};
use crate::exact::{pow, pow2, SExponent};
use crate::gale::{GaleRule, Kind, Memo};

/// The gale that reaches exactly `1` on every word of a prefix set.
///
/// Past a cover word `v` it decays as `(q/2)^{|w|-|v|}`; elsewhere it is the
/// `q`-weighted mass of the cover words still ahead.
#[derive(Debug)]
pub struct CoverGale {
    s: SExponent,
    cover: PrefixSet,
    memo: Memo,
}

impl CoverGale {
    pub fn new(s: SExponent, cover: PrefixSet) -> Self {
        CoverGale { s, cover, memo: Memo::new() }
    }

    pub fn cover(&self) -> &PrefixSet {
        &self.cover
    }

    fn compute(&self, w: &BitWord) -> RBig {
        if let Some(v) = self.cover.member_prefix_of(w) {
            return pow(&self.s.half_q(), w.len() - v.len());
        }
        self.cover
            .words()
            .iter()
            .filter(|v| w.is_prefix_of(v))
            .map(|v| RBig::ONE / self.s.q_pow(v.len() - w.len()))
            .fold(RBig::ZERO, |a, b| a + b)
    }
}

impl GaleRule for CoverGale {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        if let Some(v) = self.memo.get(w) {
            return Ok(v);
        }
        let v = self.compute(w);
        self.memo.insert(w.clone(), v.clone());
        Ok(v)
    }

    fn step_ratio(&self, w: &BitWord, _bit: bool) -> Option<Result<RBig>> {
        self.cover.member_prefix_of(w).map(|_| Ok(self.s.half_q()))
    }

    fn label(&self) -> String {
        format!("cover(q={}, |A|={})", self.s, self.cover.len())
    }
}

/// `Σ_r 2^r d_r` over finitely many covers, cover `r` having mass at most
/// `2^{-2^r}`.
#[derive(Debug)]
pub struct CoverSumGale {
    s: SExponent,
    members: Vec<CoverGale>,
}

impl CoverSumGale {
    pub fn new(s: SExponent, covers: Vec<PrefixSet>) -> Result<Self> {
        if covers.len() > 16 {
            return Err(invalid("at most 16 covers are supported"));
        }
        for (r, c) in covers.iter().enumerate() {
            let mass = c.kraft_mass(s.q());
            if mass > pow2(-(1i64 << r)) {
                return Err(invalid(format!("cover {r} has mass {mass}, above the allowed 2^-{}", 1u64 << r)));
            }
        }
        let members = covers.into_iter().map(|c| CoverGale::new(s.clone(), c)).collect();
        Ok(CoverSumGale { s, members })
    }

    pub fn members(&self) -> &[CoverGale] {
        &self.members
    }
}

impl GaleRule for CoverSumGale {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        let mut total = RBig::ZERO;
        for (r, g) in self.members.iter().enumerate() {
            total += pow2(r as i64) * g.eval(w)?;
        }
        Ok(total)
    }

    fn step_ratio(&self, w: &BitWord, _bit: bool) -> Option<Result<RBig>> {
        // once every cover has been passed the sum decays uniformly
        self.members
            .iter()
            .all(|g| g.cover.member_prefix_of(w).is_some() || g.cover.is_empty())
            .then(|| Ok(self.s.half_q()))
    }

    fn label(&self) -> String {
        format!("cover_sum(q={}, covers={})", self.s, self.members.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::gale::checks::validate;
    use crate::zoo::TrivialGale;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn hand_values() {
        let g = CoverGale::new(SExponent::martingale(), PrefixSet::parse(&["00"]).unwrap());
        assert_eq!(g.eval(&w("")).unwrap(), ratio(1, 4));
        assert_eq!(g.eval(&w("0")).unwrap(), ratio(1, 2));
        assert_eq!(g.eval(&w("1")).unwrap(), RBig::ZERO);
        assert_eq!(g.eval(&w("00")).unwrap(), RBig::ONE);
        assert_eq!(g.eval(&w("000")).unwrap(), RBig::ONE);
        assert!(validate(&g, 8).valid());
    }

    #[test]
    fn root_cover_is_trivial() {
        let q: SExponent = "3/2".parse().unwrap();
        let g = CoverGale::new(q.clone(), PrefixSet::parse(&["λ"]).unwrap());
        let t = TrivialGale::new(q);
        for u in BitWord::all_up_to(6) {
            assert_eq!(g.eval(&u).unwrap(), t.eval(&u).unwrap());
        }
    }

    #[test]
    fn sum_reaches_weight() {
        let covers: Vec<PrefixSet> =
            (0..4).map(|r| PrefixSet::new([BitWord::repeat(false, 1 << r)]).unwrap()).collect();
        let g = CoverSumGale::new(SExponent::martingale(), covers).unwrap();
        assert!(g.eval(&BitWord::repeat(false, 8)).unwrap() >= ratio(8, 1));
        assert!(validate(&g, 9).valid());
        let heavy = vec![PrefixSet::parse(&["0", "1"]).unwrap()];
        assert!(CoverSumGale::new(SExponent::martingale(), heavy).is_err());
    }
}

//! Finite gale tables and their seeded random generation.

use dashu_ratio::RBig;
use rand::Rng;

use crate::bits::BitWord;
use crate::error::{invalid, GaleError, Result};
use crate::exact::{ratio, SExponent};
use crate::gale::{GaleRule, Kind};

/// Explicit values on `{0,1}^{≤depth}`, stored level by level.
#[derive(Clone, Debug)]
pub struct TableGale {
    s: SExponent,
    kind: Kind,
    depth: usize,
    values: Vec<RBig>,
}

fn slot(w: &BitWord) -> usize {
    (1usize << w.len()) - 1 + w.to_index() as usize
}

impl TableGale {
    /// `values` lists `d(w)` for all `|w| ≤ depth` in length-then-lexicographic order.
    pub fn new(s: SExponent, kind: Kind, depth: usize, values: Vec<RBig>) -> Result<Self> {
        if depth > 24 {
            return Err(invalid("table depth above 24 is not supported"));
        }
        let expected = (1usize << (depth + 1)) - 1;
        if values.len() != expected {
            return Err(invalid(format!("table of depth {depth} needs {expected} values, got {}", values.len())));
        }
        Ok(TableGale { s, kind, depth, values })
    }

    /// Tabulates another rule.
    pub fn tabulate(d: &dyn GaleRule, depth: usize) -> Result<Self> {
        let values = BitWord::all_up_to(depth).map(|w| d.eval(&w)).collect::<Result<Vec<_>>>()?;
        TableGale::new(d.exponent().clone(), d.kind(), depth, values)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self) -> &[RBig] {
        &self.values
    }

    pub fn set(&mut self, w: &BitWord, v: RBig) -> Result<()> {
        if w.len() > self.depth {
            return Err(self.out_of_range(w));
        }
        self.values[slot(w)] = v;
        Ok(())
    }

    fn out_of_range(&self, w: &BitWord) -> GaleError {
        GaleError::OutOfRange(format!("table has depth {}, asked for |w| = {}", self.depth, w.len()))
    }

    /// A random table honoring the supergale condition exactly, or the gale
    /// condition when `slack` is false.
    ///
    /// `d(λ) ∈ (0, 1]`; each node splits `q·d(w)` among its children in
    /// eighths, after discarding a random quarter-multiple when `slack` is on.
    pub fn random<R: Rng>(rng: &mut R, s: SExponent, depth: usize, slack: bool) -> Result<Self> {
        let den = rng.gen_range(1..=8u64);
        let root = ratio(rng.gen_range(1..=den) as i64, den);
        let mut values = Vec::with_capacity((1 << (depth + 1)) - 1);
        values.push(root);
        for i in 0..(1usize << depth) - 1 {
            let mut budget = s.q() * &values[i];
            if slack {
                let kept = rng.gen_range(2..=4i64);
                budget *= ratio(kept, 4);
            }
            let share = ratio(rng.gen_range(0..=8i64), 8);
            let left = &budget * share;
            let right = budget - &left;
            values.push(left);
            values.push(right);
        }
        let kind = if slack { Kind::Supergale } else { Kind::Gale };
        TableGale::new(s, kind, depth, values)
    }
}

impl GaleRule for TableGale {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        self.kind
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        if w.len() > self.depth {
            return Err(self.out_of_range(w));
        }
        Ok(self.values[slot(w)].clone())
    }

    fn max_len(&self) -> Option<usize> {
        Some(self.depth)
    }

    fn label(&self) -> String {
        format!("table(q={}, {}, depth={})", self.s, self.kind, self.depth)
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::gale::checks::validate;

    #[test]
    fn random_tables_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for slack in [false, true] {
            for _ in 0..10 {
                let t = TableGale::random(&mut rng, "3/2".parse().unwrap(), 6, slack).unwrap();
                assert!(validate(&t, 5).valid());
                assert!(t.eval(&BitWord::empty()).unwrap() > RBig::ZERO);
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = TableGale::random(&mut ChaCha8Rng::seed_from_u64(3), SExponent::martingale(), 4, true).unwrap();
        let b = TableGale::random(&mut ChaCha8Rng::seed_from_u64(3), SExponent::martingale(), 4, true).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn bounds_enforced() {
        let t = TableGale::tabulate(&crate::zoo::TrivialGale::new(SExponent::martingale()), 3).unwrap();
        assert!(t.eval(&BitWord::repeat(true, 4)).is_err());
        assert!(TableGale::new(SExponent::martingale(), Kind::Gale, 2, vec![RBig::ONE; 3]).is_err());
    }
}

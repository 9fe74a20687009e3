//! Gale-to-gale transformations: sums, dilation, supergale conversion,
//! exactification of approximable supergales, and countable unions.

use std::fmt;
use std::sync::Arc;

use dashu_ratio::RBig;

use crate::bits::BitWord;
use crate::error::{invalid, GaleError, Result};
use crate::exact::{pow, pow2, SExponent};
use crate::gale::{Gale, GaleRule, Kind, Memo};
use crate::source::Source;
use crate::zoo::SingletonGale;

/// `Σ a_k d_k` over rules sharing `q` and kind.
#[derive(Debug)]
pub struct Combine {
    s: SExponent,
    kind: Kind,
    members: Vec<(Gale, RBig)>,
}

pub fn combine(gales: Vec<Gale>, coeffs: Vec<RBig>) -> Result<Combine> {
    let first = gales.first().ok_or_else(|| invalid("combine needs at least one rule"))?;
    if gales.len() != coeffs.len() {
        return Err(invalid(format!("{} rules but {} coefficients", gales.len(), coeffs.len())));
    }
    if coeffs.iter().any(|c| *c < RBig::ZERO) {
        return Err(invalid("combine coefficients must be nonnegative"));
    }
    let s = first.exponent().clone();
    let kind = first.kind();
    for g in &gales {
        if g.exponent() != &s {
            return Err(GaleError::Mismatch(format!("q = {} differs from q = {s}", g.exponent())));
        }
        if g.kind() != kind {
            return Err(GaleError::Mismatch(format!("{} mixed with {kind}", g.kind())));
        }
    }
    Ok(Combine { s, kind, members: gales.into_iter().zip(coeffs).collect() })
}

impl GaleRule for Combine {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        self.kind
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        let mut total = RBig::ZERO;
        for (g, c) in &self.members {
            if !c.is_zero() {
                total += c * g.eval(w)?;
            }
        }
        Ok(total)
    }

    fn max_len(&self) -> Option<usize> {
        self.members.iter().filter_map(|(g, _)| g.max_len()).min()
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self.members.iter().map(|(g, c)| format!("{c}·{}", g.label())).collect();
        format!("combine({})", parts.join(" + "))
    }
}

/// `w ↦ (q/2)^{|w|} d(w)` for a martingale `d`.
#[derive(Debug)]
pub struct Dilate {
    s: SExponent,
    factor: RBig,
    base: Gale,
}

pub fn dilate(base: Gale, s_new: SExponent) -> Result<Dilate> {
    if base.exponent().q() != &RBig::from(2u8) {
        return Err(GaleError::Mismatch(format!("dilation needs a martingale, got q = {}", base.exponent())));
    }
    let factor = s_new.half_q();
    Ok(Dilate { s: s_new, factor, base })
}

impl GaleRule for Dilate {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn kind(&self) -> Kind {
        self.base.kind()
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        Ok(pow(&self.factor, w.len()) * self.base.eval(w)?)
    }

    fn step_ratio(&self, w: &BitWord, bit: bool) -> Option<Result<RBig>> {
        self.base.step_ratio(w, bit).map(|r| r.map(|r| r * &self.factor))
    }

    fn max_len(&self) -> Option<usize> {
        self.base.max_len()
    }

    fn label(&self) -> String {
        format!("dilate(q={}, {})", self.s, self.base.label())
    }
}

/// The gale `d̃ ≥ d` obtained by returning every discarded amount to both
/// children equally.
#[derive(Debug)]
pub struct Conversion {
    base: Gale,
    memo: Memo,
}

pub fn supergale_to_gale(base: Gale) -> Conversion {
    Conversion { base, memo: Memo::new() }
}

impl Conversion {
    fn step(&self, parent: &BitWord, dt: &RBig, bit: bool) -> Result<RBig> {
        let mut w = parent.clone();
        w.push(bit);
        let own = self.base.eval(&w)?;
        w.pop();
        w.push(!bit);
        let other = self.base.eval(&w)?;
        w.pop();
        let v = (self.base.exponent().q() * dt + own - other) / RBig::from(2u8);
        if v < RBig::ZERO {
            return Err(GaleError::ContractViolation {
                word: parent.child(bit),
                detail: format!("converted value {v} is negative"),
            });
        }
        Ok(v)
    }
}

impl GaleRule for Conversion {
    fn exponent(&self) -> &SExponent {
        self.base.exponent()
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        if let Some(v) = self.memo.get(w) {
            return Ok(v);
        }
        let mut k = w.len();
        let mut value = loop {
            if k == 0 {
                break self.base.eval(&BitWord::empty())?;
            }
            k -= 1;
            if let Some(v) = self.memo.get(&w.prefix(k)) {
                break v;
            }
        };
        let mut prefix = w.prefix(k);
        while prefix.len() < w.len() {
            let bit = w.bit(prefix.len());
            value = self.step(&prefix, &value, bit)?;
            prefix.push(bit);
            self.memo.insert(prefix.clone(), value.clone());
        }
        Ok(value)
    }

    fn max_len(&self) -> Option<usize> {
        self.base.max_len()
    }

    fn label(&self) -> String {
        format!("conversion({})", self.base.label())
    }
}

/// Reports a rule under a weaker declared kind (a gale is a supergale).
#[derive(Debug)]
pub struct AsSupergale(pub Gale);

impl GaleRule for AsSupergale {
    fn exponent(&self) -> &SExponent {
        self.0.exponent()
    }

    fn kind(&self) -> Kind {
        Kind::Supergale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        self.0.eval(w)
    }

    fn step_ratio(&self, w: &BitWord, bit: bool) -> Option<Result<RBig>> {
        self.0.step_ratio(w, bit)
    }

    fn max_len(&self) -> Option<usize> {
        self.0.max_len()
    }

    fn label(&self) -> String {
        self.0.label()
    }
}

/// `(r, w) ↦ f̂(r, w)` with `|f̂(r, w) - f(w)| ≤ 2^{-r}`.
pub trait ApproxEvaluator: Send + Sync + fmt::Debug {
    fn exponent(&self) -> &SExponent;

    fn approx(&self, r: usize, w: &BitWord) -> Result<RBig>;

    fn label(&self) -> String;
}

/// An exact rule viewed as its own approximation.
#[derive(Debug)]
pub struct ExactApprox(pub Gale);

impl ApproxEvaluator for ExactApprox {
    fn exponent(&self) -> &SExponent {
        self.0.exponent()
    }

    fn approx(&self, _r: usize, w: &BitWord) -> Result<RBig> {
        self.0.eval(w)
    }

    fn label(&self) -> String {
        format!("exact({})", self.0.label())
    }
}

/// `d(w) ± 2^{-r}` with a sign drawn from a hash of `(seed, r, w)`, clamped
/// at zero so the error bound still holds.
#[derive(Debug)]
pub struct NoisyApprox {
    pub base: Gale,
    pub seed: u64,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl NoisyApprox {
    fn sign(&self, r: usize, w: &BitWord) -> bool {
        let mut h = splitmix(self.seed ^ (r as u64).rotate_left(17));
        h = splitmix(h ^ w.len() as u64);
        for chunk in w.bits().chunks(64) {
            let word = chunk.iter().fold(0u64, |a, &b| (a << 1) | b as u64);
            h = splitmix(h ^ word);
        }
        h & 1 == 1
    }
}

impl ApproxEvaluator for NoisyApprox {
    fn exponent(&self) -> &SExponent {
        self.base.exponent()
    }

    fn approx(&self, r: usize, w: &BitWord) -> Result<RBig> {
        let v = self.base.eval(w)?;
        let eps = pow2(-(r as i64));
        let noisy = if self.sign(r, w) { v + eps } else { v - eps };
        Ok(if noisy < RBig::ZERO { RBig::ZERO } else { noisy })
    }

    fn label(&self) -> String {
        format!("noisy({}, seed={})", self.base.label(), self.seed)
    }
}

/// Smallest `a` with `2^{1-a} ≤ 1 - 1/q`; requires `q > 1`.
pub fn exactify_offset(s: &SExponent) -> Result<usize> {
    if *s.q() <= RBig::ONE {
        return Err(GaleError::ExponentOutOfRange { q: s.to_string(), expected: "q > 1 (s > 0)" });
    }
    let target = RBig::ONE - RBig::ONE / s.q();
    let mut a = 1usize;
    while pow2(1 - a as i64) > target {
        a += 1;
    }
    Ok(a)
}

/// `d̃(w) = d̂(|w| + a, w) + 2^{-|w|}`, an exact supergale above `d`.
#[derive(Debug)]
pub struct Exactified {
    approx: Arc<dyn ApproxEvaluator>,
    a: usize,
}

pub fn exactify(approx: Arc<dyn ApproxEvaluator>) -> Result<Exactified> {
    let a = exactify_offset(approx.exponent())?;
    Ok(Exactified { approx, a })
}

impl Exactified {
    pub fn offset(&self) -> usize {
        self.a
    }
}

impl GaleRule for Exactified {
    fn exponent(&self) -> &SExponent {
        self.approx.exponent()
    }

    fn kind(&self) -> Kind {
        Kind::Supergale
    }

    fn eval(&self, w: &BitWord) -> Result<RBig> {
        Ok(self.approx.approx(w.len() + self.a, w)? + pow2(-(w.len() as i64)))
    }

    fn label(&self) -> String {
        format!("exactify(a={}, {})", self.a, self.approx.label())
    }
}

/// An indexed family `d_0, d_1, …` sharing one exponent.
pub trait IndexedFamily: Send + Sync + fmt::Debug {
    fn exponent(&self) -> &SExponent;

    fn member(&self, k: usize) -> Result<Gale>;

    fn label(&self) -> String;
}

/// The zero gale.
#[derive(Debug)]
pub struct ZeroGale(pub SExponent);

impl GaleRule for ZeroGale {
    fn exponent(&self) -> &SExponent {
        &self.0
    }

    fn kind(&self) -> Kind {
        Kind::Gale
    }

    fn eval(&self, _w: &BitWord) -> Result<RBig> {
        Ok(RBig::ZERO)
    }

    fn label(&self) -> String {
        "zero".to_string()
    }
}

/// Finitely many members, padded with zero gales.
#[derive(Debug)]
pub struct FiniteFamily {
    s: SExponent,
    members: Vec<Gale>,
}

impl FiniteFamily {
    pub fn new(members: Vec<Gale>) -> Result<Self> {
        let s = members.first().ok_or_else(|| invalid("family needs a member"))?.exponent().clone();
        Ok(FiniteFamily { s, members })
    }
}

impl IndexedFamily for FiniteFamily {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn member(&self, k: usize) -> Result<Gale> {
        Ok(match self.members.get(k) {
            Some(g) => g.clone(),
            None => Arc::new(ZeroGale(self.s.clone())),
        })
    }

    fn label(&self) -> String {
        format!("finite[{}]", self.members.len())
    }
}

/// Singleton gales on a countable list of sequences.
pub struct SingletonFamily {
    s: SExponent,
    source: Arc<dyn Fn(usize) -> Source + Send + Sync>,
    name: String,
}

impl SingletonFamily {
    pub fn new(
        s: SExponent,
        name: impl Into<String>,
        source: impl Fn(usize) -> Source + Send + Sync + 'static,
    ) -> Self {
        SingletonFamily { s, source: Arc::new(source), name: name.into() }
    }

    /// Members target `0^k 1 0^ω`.
    pub fn indicators(s: SExponent) -> Self {
        SingletonFamily::new(s, "indicators", |k| Arc::new(crate::source::Indicator::new(k)) as Source)
    }

    pub fn source(&self, k: usize) -> Source {
        (self.source)(k)
    }
}

impl fmt::Debug for SingletonFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SingletonFamily(q={}, {})", self.s, self.name)
    }
}

impl IndexedFamily for SingletonFamily {
    fn exponent(&self) -> &SExponent {
        &self.s
    }

    fn member(&self, k: usize) -> Result<Gale> {
        Ok(Arc::new(SingletonGale::new(self.s.clone(), (self.source)(k))))
    }

    fn label(&self) -> String {
        format!("singletons({})", self.name)
    }
}

/// `Σ_{k=0}^{r+2|w|+1} 2^{-k} d_k(w)`, within `2^{-r}` of `Σ_k 2^{-k} d_k(w)`.
///
/// Requires `q < 4` and `d_k(λ) ≤ 1` for every member consulted.
pub fn union_gale_eval(family: &dyn IndexedFamily, r: usize, w: &BitWord) -> Result<RBig> {
    let s = family.exponent();
    if *s.q() >= RBig::from(4u8) {
        return Err(GaleError::ExponentOutOfRange { q: s.to_string(), expected: "q < 4" });
    }
    let last = r + 2 * w.len() + 1;
    let mut total = RBig::ZERO;
    for k in 0..=last {
        let d = family.member(k)?;
        if d.exponent() != s {
            return Err(GaleError::Mismatch(format!("member {k} has q = {}", d.exponent())));
        }
        let root = d.eval(&BitWord::empty())?;
        if root > RBig::ONE {
            return Err(invalid(format!("member {k} has d(λ) = {root} > 1")));
        }
        total += d.eval(w)? * pow2(-(k as i64));
    }
    Ok(total)
}

/// The union gale as an approximation, ready for [`exactify`].
#[derive(Debug)]
pub struct UnionApprox(pub Arc<dyn IndexedFamily>);

impl ApproxEvaluator for UnionApprox {
    fn exponent(&self) -> &SExponent {
        self.0.exponent()
    }

    fn approx(&self, r: usize, w: &BitWord) -> Result<RBig> {
        union_gale_eval(self.0.as_ref(), r, w)
    }

    fn label(&self) -> String {
        format!("union({})", self.0.label())
    }
}

/// Exact gale succeeding on every member's success set: the union
/// approximation, exactified, then converted.
pub fn countable_union_gale(family: Arc<dyn IndexedFamily>) -> Result<Conversion> {
    let exact = exactify(Arc::new(UnionApprox(family)))?;
    Ok(supergale_to_gale(Arc::new(exact)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::gale::checks::validate;
    use crate::gale::table::TableGale;
    use crate::zoo::TrivialGale;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn combine_rules() {
        let d: Gale = Arc::new(TrivialGale::new("3/2".parse().unwrap()));
        let one = combine(vec![d.clone()], vec![RBig::ONE]).unwrap();
        let two = combine(vec![d.clone(), d.clone()], vec![RBig::ONE, RBig::ONE]).unwrap();
        for u in BitWord::all_up_to(4) {
            assert_eq!(one.eval(&u).unwrap(), d.eval(&u).unwrap());
            assert_eq!(two.eval(&u).unwrap(), RBig::from(2u8) * d.eval(&u).unwrap());
        }
        assert!(validate(&two, 8).valid());
        let other: Gale = Arc::new(TrivialGale::new(SExponent::martingale()));
        assert!(combine(vec![d, other], vec![RBig::ONE, RBig::ONE]).is_err());
        assert!(combine(vec![], vec![]).is_err());
    }

    #[test]
    fn dilation() {
        let m: Gale = Arc::new(TrivialGale::new(SExponent::martingale()));
        let d = dilate(m.clone(), "3/2".parse().unwrap()).unwrap();
        assert_eq!(d.eval(&w("01")).unwrap(), ratio(9, 16));
        let same = dilate(m, SExponent::martingale()).unwrap();
        assert_eq!(same.eval(&w("0110")).unwrap(), RBig::ONE);
        let not_m: Gale = Arc::new(TrivialGale::new("3/2".parse().unwrap()));
        assert!(dilate(not_m, SExponent::martingale()).is_err());
    }

    #[test]
    fn conversion_of_collapse() {
        let mut values = vec![RBig::ZERO; 15];
        values[0] = RBig::ONE;
        let t: Gale = Arc::new(TableGale::new(SExponent::martingale(), Kind::Supergale, 3, values).unwrap());
        let c = supergale_to_gale(t);
        for u in ["0", "1", "00", "01", "111"] {
            assert_eq!(c.eval(&w(u)).unwrap(), RBig::ONE, "{u}");
        }
    }

    #[test]
    fn offsets() {
        assert_eq!(exactify_offset(&SExponent::martingale()).unwrap(), 2);
        assert_eq!(exactify_offset(&"4/3".parse().unwrap()).unwrap(), 3);
        assert!(exactify_offset(&"1".parse().unwrap()).is_err());
    }

    #[test]
    fn noise_within_bound() {
        let base: Gale = Arc::new(TrivialGale::new("3/2".parse().unwrap()));
        let n = NoisyApprox { base: base.clone(), seed: 1 };
        let mut signs = [0; 2];
        for u in BitWord::all_up_to(5) {
            for r in 0..6 {
                let diff = n.approx(r, &u).unwrap() - base.eval(&u).unwrap();
                assert!(diff.clone() * diff.clone() <= pow2(-2 * r as i64));
                signs[(diff > RBig::ZERO) as usize] += 1;
            }
        }
        assert!(signs[0] > 0 && signs[1] > 0);
    }

    #[test]
    fn union_single_member() {
        let d: Gale = Arc::new(TrivialGale::new("3/2".parse().unwrap()));
        let fam = FiniteFamily::new(vec![d.clone()]).unwrap();
        assert_eq!(union_gale_eval(&fam, 3, &w("0101")).unwrap(), d.eval(&w("0101")).unwrap());
        let heavy: Gale = Arc::new(TrivialGale::new(SExponent::from_ratio(4, 1).unwrap()));
        assert!(union_gale_eval(&FiniteFamily::new(vec![heavy]).unwrap(), 1, &w("0")).is_err());
    }
}

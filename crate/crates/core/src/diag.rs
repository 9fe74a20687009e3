//! Constructors: deterministic proper extenders `w ↦ δ(w)` that keep a
//! given gale from winning while landing in a target class.
//!
//! Ties are broken toward the lexicographically first candidate (`0 < 1`).

use std::fmt;

use dashu_int::UBig;
use dashu_ratio::RBig;

use crate::bits::BitWord;
use crate::circuit::{gate_budget, max_size_below, Census, TruthTable, MAX_INPUTS};
use crate::dimension::{entropy, WALK_BITS};
use crate::error::{invalid, GaleError, Result};
use crate::exact::{format_decimal, format_rational, pow2};
use crate::gale::{Explorer, Gale, GaleRule, PathWalk};
use crate::interval::log2;
use crate::par::Exec;
use crate::trace::GaleValueTrace;
use crate::zoo::BlockAlphabet;

/// `extension` returns the nonempty suffix `u` with `δ(w) = wu` for the
/// walk's current word `w`.
pub trait Constructor: Send + Sync + fmt::Debug {
    /// The gale the constructor plays against.
    fn gale(&self) -> &dyn GaleRule;

    fn extension(&self, walk: &mut PathWalk<'_>) -> Result<BitWord>;

    fn label(&self) -> String;

    /// `δ(w)`
    fn extend(&self, w: &BitWord) -> Result<BitWord> {
        let mut walk = PathWalk::new(self.gale(), WALK_BITS)?;
        for b in w.iter() {
            walk.push(b)?;
        }
        let u = self.extension(&mut walk)?;
        Ok(w.concat(&u))
    }
}

/// Scaled values along each candidate, root first.
fn candidate_paths(e: &mut Explorer<'_>, candidates: &[BitWord]) -> Result<Vec<Vec<RBig>>> {
    candidates.iter().map(|u| e.path(u)).collect()
}

fn path_max(p: &[RBig]) -> &RBig {
    p.iter().max().expect("path includes the root")
}

/// `δ(w) = w·[d(w0) > d(w1)]`
#[derive(Debug)]
pub struct MinBranch {
    d: Gale,
}

impl MinBranch {
    /// Requires `q < 2`.
    pub fn new(d: Gale) -> Result<Self> {
        d.exponent().require_below_one()?;
        Ok(MinBranch { d })
    }
}

impl Constructor for MinBranch {
    fn gale(&self) -> &dyn GaleRule {
        self.d.as_ref()
    }

    fn extension(&self, walk: &mut PathWalk<'_>) -> Result<BitWord> {
        let mut e = walk.explore()?;
        let v0 = e.descend(false)?.clone();
        e.ascend();
        let v1 = e.descend(true)?.clone();
        Ok(BitWord::repeat(v0 > v1, 1))
    }

    fn label(&self) -> String {
        format!("min-branch[{}]", self.d.label())
    }
}

/// At block boundaries appends the first `u ∈ S` minimizing `d(wu)`;
/// elsewhere appends `0`.
#[derive(Debug)]
pub struct BlockConstructor {
    d: Gale,
    alphabet: BlockAlphabet,
}

impl BlockConstructor {
    pub fn new(d: Gale, alphabet: BlockAlphabet) -> Self {
        BlockConstructor { d, alphabet }
    }

    pub fn alphabet(&self) -> &BlockAlphabet {
        &self.alphabet
    }

    /// `q^l / |S|`, the per-block bound on `d(wu)/d(w)`.
    pub fn block_bound(&self) -> RBig {
        self.d.exponent().q_pow(self.alphabet.l()) / RBig::from(self.alphabet.size())
    }
}

impl Constructor for BlockConstructor {
    fn gale(&self) -> &dyn GaleRule {
        self.d.as_ref()
    }

    fn extension(&self, walk: &mut PathWalk<'_>) -> Result<BitWord> {
        if !walk.len().is_multiple_of(self.alphabet.l()) {
            return Ok(BitWord::repeat(false, 1));
        }
        let mut e = walk.explore()?;
        let ends = candidate_paths(&mut e, self.alphabet.words())?;
        let mut best = 0;
        for (i, p) in ends.iter().enumerate() {
            if p.last() < ends[best].last() {
                best = i;
            }
        }
        Ok(self.alphabet.words()[best].clone())
    }

    fn label(&self) -> String {
        format!("block[l={}, |S|={}, {}]", self.alphabet.l(), self.alphabet.size(), self.d.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanMode {
    /// Every sufficient condition on `(α, ε, c)` must be certified.
    Certified,
    /// Any `c ≥ 4`; block existence is checked at run time instead.
    Desk,
}

impl fmt::Display for PlanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlanMode::Certified => "certified",
            PlanMode::Desk => "desk",
        })
    }
}

/// Block schedule `m(n) = ⌊log(n + c)⌋`, `k(n) = ⌊α m(n)⌋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyPlan {
    pub alpha: RBig,
    pub epsilon: RBig,
    pub c: u64,
    pub mode: PlanMode,
}

/// One sufficient condition and whether it was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanCondition {
    pub name: &'static str,
    pub holds: bool,
}

impl FrequencyPlan {
    pub fn desk(alpha: RBig, c: u64) -> Self {
        FrequencyPlan { alpha, epsilon: RBig::ZERO, c, mode: PlanMode::Desk }
    }

    pub fn certified(alpha: RBig, epsilon: RBig, c: u64) -> Self {
        FrequencyPlan { alpha, epsilon, c, mode: PlanMode::Certified }
    }

    pub fn m(&self, n: usize) -> usize {
        let x = UBig::from(n as u64 + self.c);
        dashu_int::ops::BitTest::bit_len(&x) - 1
    }

    /// `α` is rational, so its approximations are exact at every precision.
    pub fn k(&self, n: usize) -> usize {
        let v = (&self.alpha * RBig::from(self.m(n))).floor();
        usize::try_from(&v).expect("k fits in usize")
    }

    /// Start positions `n_0 = 0, n_{i+1} = n_i + m(n_i)` up to `n`; the last
    /// entry is the first start `≥ n`.
    pub fn starts_until(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0];
        while *out.last().expect("nonempty") < n {
            let p = *out.last().expect("nonempty");
            out.push(p + self.m(p));
        }
        out
    }

    fn is_start(&self, n: usize) -> bool {
        let mut p = 0;
        while p < n {
            p += self.m(p);
        }
        p == n
    }

    /// Evaluates every sufficient condition against exponent `q`.
    pub fn conditions(&self, q: &RBig) -> Result<Vec<PlanCondition>> {
        let bits = 48;
        let (a, e) = (&self.alpha, &self.epsilon);
        let one = RBig::ONE;
        let mut out = Vec::new();
        let eps_ok = *e > RBig::ZERO && e <= a && *e <= &one - a;
        out.push(PlanCondition { name: "epsilon within alpha and 1-alpha", holds: eps_ok });

        let tight = pow2(-(bits as i64));
        let h = entropy(a, &tight)?;
        let s = log2(q, bits)?;
        let gap_lo = (h.lo() - s.hi()) / RBig::from(2u8);
        out.push(PlanCondition { name: "s below entropy", holds: gap_lo > RBig::ZERO });

        let mut continuity = gap_lo > RBig::ZERO && eps_ok;
        if continuity {
            let mut probes = vec![a - e, a + e];
            let half = RBig::from_parts(1.into(), 2u8.into());
            if (a - e) < half && half < a + e {
                probes.push(half);
            }
            for x in probes.iter().filter(|x| **x >= RBig::ZERO && **x <= one) {
                let hx = entropy(x, &tight)?;
                let dev = (hx.hi() - h.lo()).max(h.hi() - hx.lo());
                continuity &= dev < gap_lo;
            }
        }
        out.push(PlanCondition { name: "entropy moves less than half the gap within epsilon", holds: continuity });

        let c = UBig::from(self.c);
        let c_pow = if eps_ok {
            // c > 2^{1+2/ε} with ε = num/den, decided as c^num > 2^{num + 2 den}
            let num = usize::try_from(e.numerator()).map_err(|_| invalid("epsilon numerator too large"))?;
            let den = usize::try_from(e.denominator()).map_err(|_| invalid("epsilon denominator too large"))?;
            c.pow(num) > UBig::ONE << (num + 2 * den)
        } else {
            false
        };
        out.push(PlanCondition { name: "c exceeds 2^(1+2/epsilon)", holds: c_pow });

        let c_log = if eps_ok && self.c >= 1 {
            // c > 1 + log 1/ε  ⇔  num · 2^{c-1} > den
            let den = e.denominator();
            let shift = (self.c - 1) as usize;
            shift > dashu_int::ops::BitTest::bit_len(den)
                || UBig::try_from(e.numerator().clone()).expect("ε > 0") << shift > *den
        } else {
            false
        };
        out.push(PlanCondition { name: "c exceeds 1 + log(1/epsilon)", holds: c_log });

        let c_ll = if self.c > 2 && gap_lo > RBig::ZERO {
            let l = log2(&RBig::from(self.c), bits)?;
            let ll_lo = log2(&l.lo(), bits)?.lo();
            let ll_hi = log2(&l.hi(), bits)?.hi();
            ll_lo > RBig::ZERO && l.lo() * (h.lo() - s.hi()) > RBig::from(4u8) * ll_hi
        } else {
            false
        };
        out.push(PlanCondition { name: "log c / log log c exceeds 4/(H(alpha)-s)", holds: c_ll });
        Ok(out)
    }
}

/// Appends the lexicographically first `u ∈ {0,1}^{m(n)}` with exactly
/// `k(n)` ones along which the gale never rises above `d(w)`.
#[derive(Debug)]
pub struct FrequencyConstructor {
    d: Gale,
    plan: FrequencyPlan,
    conditions: Vec<PlanCondition>,
}

impl FrequencyConstructor {
    pub fn new(d: Gale, plan: FrequencyPlan) -> Result<Self> {
        if plan.alpha <= RBig::ZERO || plan.alpha >= RBig::ONE {
            return Err(invalid(format!("α = {} must lie in (0, 1)", plan.alpha)));
        }
        if plan.c < 4 {
            return Err(invalid(format!("c = {} must be at least 4", plan.c)));
        }
        let conditions = plan.conditions(d.exponent().q())?;
        if plan.mode == PlanMode::Certified {
            let failed: Vec<&str> = conditions.iter().filter(|c| !c.holds).map(|c| c.name).collect();
            if !failed.is_empty() {
                return Err(invalid(format!("plan is not certified: {}", failed.join("; "))));
            }
        }
        Ok(FrequencyConstructor { d, plan, conditions })
    }

    pub fn plan(&self) -> &FrequencyPlan {
        &self.plan
    }

    pub fn conditions(&self) -> &[PlanCondition] {
        &self.conditions
    }
}

fn first_flat_block(e: &mut Explorer<'_>, m: usize, k: usize, ones: usize, out: &mut BitWord) -> Result<bool> {
    let depth = e.depth();
    if depth == m {
        return Ok(ones == k);
    }
    let base = e.base().clone();
    for bit in [false, true] {
        let used = ones + usize::from(bit);
        if used > k || used + (m - depth - 1) < k {
            continue;
        }
        let flat = *e.descend(bit)? <= base;
        if flat {
            out.push(bit);
            if first_flat_block(e, m, k, used, out)? {
                return Ok(true);
            }
            out.pop();
        }
        e.ascend();
    }
    Ok(false)
}

fn binomial(m: usize, k: usize) -> UBig {
    (0..k).fold(UBig::ONE, |acc, i| acc * UBig::from(m - i) / UBig::from(i + 1))
}

impl Constructor for FrequencyConstructor {
    fn gale(&self) -> &dyn GaleRule {
        self.d.as_ref()
    }

    fn extension(&self, walk: &mut PathWalk<'_>) -> Result<BitWord> {
        let n = walk.len();
        if !self.plan.is_start(n) {
            return Err(invalid(format!("length {n} is not reachable by this constructor")));
        }
        let (m, k) = (self.plan.m(n), self.plan.k(n));
        let mut u = BitWord::empty();
        let found = {
            let mut e = walk.explore()?;
            first_flat_block(&mut e, m, k, 0, &mut u)?
        };
        if !found {
            let q_m = self.d.exponent().q_pow(m);
            return Err(GaleError::NoAdmissibleBlock {
                position: n,
                detail: format!(
                    "m={m}, k={k}: |B_n| = {} against 2^(s·m) = {} ≈ {}",
                    binomial(m, k),
                    format_rational(&q_m),
                    format_decimal(&q_m, 3)
                ),
            });
        }
        Ok(u)
    }

    fn label(&self) -> String {
        format!("frequency[α={}, c={}, {}, {}]", self.plan.alpha, self.plan.c, self.plan.mode, self.d.label())
    }
}

/// At `|w| = 2^n - 1` appends the first characteristic string of a set
/// decided with fewer than `α 2^n/n` gates that minimizes
/// `max_{v ⊑ u} d(wv)`; elsewhere appends `0`.
#[derive(Debug)]
pub struct CircuitConstructor {
    d: Gale,
    alpha: RBig,
    /// Admissible blocks per `n`, in lexicographic order.
    admissible: Vec<Vec<TruthTable>>,
}

/// Facts about one block boundary of a circuit-constructor run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryAudit {
    pub n: usize,
    pub position: usize,
    pub admissible: usize,
    /// Blocks `u ∈ {0,1}^{2^n}` with `max_{v ⊑ u} d(wv) > d(w)`.
    pub rising: u64,
    /// More admissible blocks than rising blocks.
    pub density: bool,
    pub chosen: BitWord,
    pub certified: bool,
    /// `max_{v ⊑ u} d(wv) ≤ d(w)` along the chosen block.
    pub non_increasing: bool,
}

impl CircuitConstructor {
    /// `n_max ≤ 3`; for `n = 0` every block is admissible.
    pub fn new(d: Gale, alpha: RBig, n_max: usize, exec: Exec) -> Result<Self> {
        if alpha <= RBig::ZERO || alpha > RBig::ONE {
            return Err(invalid(format!("α = {alpha} must lie in (0, 1]")));
        }
        if n_max > MAX_INPUTS {
            return Err(invalid(format!("circuit constructor supports n ≤ {MAX_INPUTS}, got {n_max}")));
        }
        let mut admissible = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let tables = match gate_budget(n, &alpha) {
                None => TruthTable::all(n),
                Some(b) => match max_size_below(&b) {
                    None => Vec::new(),
                    Some(t) => Census::build(n, t, exec)?.reached(t)?,
                },
            };
            admissible.push(tables);
        }
        Ok(CircuitConstructor { d, alpha, admissible })
    }

    pub fn n_max(&self) -> usize {
        self.admissible.len() - 1
    }

    pub fn admissible(&self, n: usize) -> &[TruthTable] {
        &self.admissible[n]
    }

    fn boundary(&self, len: usize) -> Option<usize> {
        (len + 1).is_power_of_two().then(|| (len + 1).trailing_zeros() as usize)
    }

    /// Chosen block and its scaled path maximum, relative to the root.
    fn choose(&self, e: &mut Explorer<'_>, n: usize, position: usize) -> Result<(TruthTable, bool)> {
        let tables = &self.admissible[n];
        if tables.is_empty() {
            return Err(GaleError::NoAdmissibleBlock {
                position,
                detail: format!("no set on {n} inputs is decided with fewer than {}·2^n/n gates", self.alpha),
            });
        }
        let words: Vec<BitWord> = tables.iter().map(|t| t.bits()).collect();
        let paths = candidate_paths(e, &words)?;
        let mut best = 0;
        for (i, p) in paths.iter().enumerate() {
            if path_max(p) < path_max(&paths[best]) {
                best = i;
            }
        }
        let flat = path_max(&paths[best]) <= e.base();
        Ok((tables[best], flat))
    }

    /// Audits every block boundary of `prefix` covered by the census.
    pub fn audit(&self, prefix: &BitWord) -> Result<Vec<BoundaryAudit>> {
        let mut out = Vec::new();
        let mut walk = PathWalk::new(self.d.as_ref(), WALK_BITS)?;
        let mut n = 0;
        while n <= self.n_max() && (1 << (n + 1)) - 1 <= prefix.len() {
            let position = (1 << n) - 1;
            while walk.len() < position {
                walk.push(prefix.bit(walk.len()))?;
            }
            let chosen = prefix.prefix((1 << (n + 1)) - 1).suffix_from(position);
            let (rising, flat) = {
                let mut e = walk.explore()?;
                let rising = count_rising(&mut e, 1 << n)?;
                let path = e.path(&chosen)?;
                (rising, path_max(&path) <= e.base())
            };
            let certified = self.admissible[n].iter().any(|t| t.bits() == chosen);
            let admissible = self.admissible[n].len();
            out.push(BoundaryAudit {
                n,
                position,
                admissible,
                rising,
                density: admissible as u64 > rising,
                chosen,
                certified,
                non_increasing: flat,
            });
            n += 1;
        }
        Ok(out)
    }
}

/// Leaves at depth `l` below the root whose path rises above the root value.
fn count_rising(e: &mut Explorer<'_>, l: usize) -> Result<u64> {
    fn go(e: &mut Explorer<'_>, l: usize, base: &RBig) -> Result<u64> {
        let depth = e.depth();
        if e.value() > base {
            return Ok(1u64 << (l - depth));
        }
        if depth == l {
            return Ok(0);
        }
        let mut total = 0;
        for bit in [false, true] {
            e.descend(bit)?;
            total += go(e, l, base)?;
            e.ascend();
        }
        Ok(total)
    }
    let base = e.base().clone();
    go(e, l, &base)
}

impl Constructor for CircuitConstructor {
    fn gale(&self) -> &dyn GaleRule {
        self.d.as_ref()
    }

    fn extension(&self, walk: &mut PathWalk<'_>) -> Result<BitWord> {
        let len = walk.len();
        let Some(n) = self.boundary(len) else {
            return Ok(BitWord::repeat(false, 1));
        };
        if n > self.n_max() {
            return Err(GaleError::OutOfRange(format!(
                "circuit constructor covers n ≤ {}, reached a boundary for n = {n}",
                self.n_max()
            )));
        }
        let mut e = walk.explore()?;
        let (table, _) = self.choose(&mut e, n, len)?;
        Ok(table.bits())
    }

    fn label(&self) -> String {
        format!("circuit[α={}, n≤{}, {}]", self.alpha, self.n_max(), self.d.label())
    }
}

/// A prefix of `R(δ)` and the lengths of the iterates that produced it.
#[derive(Clone, Debug)]
pub struct ConstructorRun {
    pub prefix: BitWord,
    /// `|δ^i(λ)|` for `i = 0, 1, …` until the depth is reached.
    pub iterates: Vec<usize>,
    pub trace: Option<GaleValueTrace>,
}

/// Iterates `δ` from `λ` until the word has at least `depth` bits.
pub fn run_constructor(
    delta: &dyn Constructor,
    depth: usize,
    observer: Option<&dyn GaleRule>,
) -> Result<ConstructorRun> {
    let mut walk = PathWalk::new(delta.gale(), WALK_BITS)?;
    let mut iterates = vec![0];
    while walk.len() < depth {
        let u = delta.extension(&mut walk)?;
        if u.is_empty() {
            return Err(invalid(format!("{} did not extend a word of length {}", delta.label(), walk.len())));
        }
        for b in u.iter() {
            walk.push(b)?;
        }
        iterates.push(walk.len());
    }
    let prefix = walk.word().prefix(depth);
    let trace = observer.map(|o| GaleValueTrace::along(o, &prefix)).transpose()?;
    Ok(ConstructorRun { prefix, iterates, trace })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exact::{ratio, SExponent};
    use crate::gale::Cursor;
    use crate::zoo::{BlockGale, FrequencyGale, TrivialGale};

    #[test]
    fn min_branch_against_trivial_is_all_zeros() {
        let d: Gale = Arc::new(TrivialGale::new("3/2".parse().unwrap()));
        let r = run_constructor(&MinBranch::new(d).unwrap(), 16, None).unwrap();
        assert_eq!(r.prefix, BitWord::repeat(false, 16));
        assert!(MinBranch::new(Arc::new(TrivialGale::new(SExponent::martingale()))).is_err());
    }

    #[test]
    fn min_branch_against_frequency_appends_ones() {
        let d: Gale = Arc::new(FrequencyGale::new("15/8".parse().unwrap(), ratio(1, 4)).unwrap());
        let r = run_constructor(&MinBranch::new(d.clone()).unwrap(), 12, None).unwrap();
        assert_eq!(r.prefix, BitWord::repeat(true, 12));
        let mut c = Cursor::new(d.as_ref()).unwrap();
        c.push_word(&r.prefix).unwrap();
        assert_eq!(c.value(), &crate::exact::pow(&ratio(15, 32), 12));
    }

    #[test]
    fn block_constructor_picks_first_minimizer() {
        let s = BlockAlphabet::parse(2, &["00", "11"]).unwrap();
        let d: Gale = Arc::new(BlockGale::new(SExponent::martingale(), s.clone()));
        let bc = BlockConstructor::new(d, s);
        let r = run_constructor(&bc, 12, None).unwrap();
        assert_eq!(r.prefix, BitWord::repeat(false, 12));
        assert_eq!(bc.block_bound(), RBig::from(2u8));
    }

    #[test]
    fn plan_schedule() {
        let p = FrequencyPlan::desk(ratio(1, 3), 64);
        assert_eq!((p.m(0), p.k(0)), (6, 2));
        assert_eq!((p.m(100), p.k(100)), (7, 2));
        assert_eq!((p.m(10_000), p.k(10_000)), (13, 4));
        assert_eq!(&p.starts_until(13)[..], &[0, 6, 12, 18]);
    }

    #[test]
    fn frequency_constructor_stays_flat() {
        let d: Gale = Arc::new(FrequencyGale::new("4/3".parse().unwrap(), ratio(1, 4)).unwrap());
        let fc = FrequencyConstructor::new(d.clone(), FrequencyPlan::desk(ratio(1, 2), 64)).unwrap();
        let r = run_constructor(&fc, 600, None).unwrap();
        let mut c = Cursor::new(d.as_ref()).unwrap();
        let root = c.value().clone();
        for b in r.prefix.iter() {
            c.push(b).unwrap();
            assert!(c.value() <= &root);
        }
        assert!(fc.extend(&BitWord::repeat(false, 3)).is_err());
    }

    #[test]
    fn frequency_constructor_reports_missing_block() {
        // every step multiplies by 5/4, so no block stays flat
        let rising: Gale = Arc::new(TrivialGale::new("5/2".parse().unwrap()));
        let fc = FrequencyConstructor::new(rising, FrequencyPlan::desk(ratio(1, 2), 4)).unwrap();
        match run_constructor(&fc, 10, None) {
            Err(GaleError::NoAdmissibleBlock { position: 0, detail }) => {
                assert!(detail.contains("|B_n| = 2"), "{detail}");
                assert!(detail.contains("25/4"), "{detail}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn certified_mode_checks_constants() {
        let d: Gale = Arc::new(TrivialGale::new("17/16".parse().unwrap()));
        let loose = FrequencyPlan::certified(ratio(1, 2), ratio(1, 4), 64);
        assert!(FrequencyConstructor::new(d.clone(), loose).is_err());
        let ok = FrequencyPlan::certified(ratio(1, 2), ratio(1, 4), 1 << 20);
        let fc = FrequencyConstructor::new(d, ok).unwrap();
        assert!(fc.conditions().iter().all(|c| c.holds), "{:?}", fc.conditions());
    }

    #[test]
    fn circuit_constructor_n1_is_unconstrained() {
        let d: Gale = Arc::new(TrivialGale::new("3/2".parse().unwrap()));
        let cc = CircuitConstructor::new(d, RBig::ONE, 2, Exec::Sequential).unwrap();
        assert_eq!(cc.admissible(1).len(), 4);
        // sizes 0 and 1: constants, inputs, their negations, x∧y and x∨y
        assert_eq!(cc.admissible(2).len(), 8);
        let r = run_constructor(&cc, 7, None).unwrap();
        assert_eq!(r.iterates, vec![0, 1, 3, 7]);
        let audits = cc.audit(&r.prefix).unwrap();
        assert_eq!(audits.len(), 3);
        assert!(audits.iter().all(|a| a.certified && a.non_increasing));
    }
}

//! Exact checks of the gale condition and its consequences.

use std::fmt;

use dashu_ratio::RBig;

use crate::bits::{BitWord, PrefixSet};
use crate::error::{invalid, Result};
use crate::exact::{pow, pow2, SExponent};
use crate::gale::{Cursor, GaleRule, Kind};
use crate::par::Exec;
use crate::source::SequenceSource;

/// Largest depth `validate` will enumerate.
pub const MAX_VALIDATE_DEPTH: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeViolation {
    Negative {
        value: RBig,
    },
    /// `q·d(w) ≠ d(w0) + d(w1)`
    NotFair {
        lhs: RBig,
        rhs: RBig,
    },
    /// `q·d(w) < d(w0) + d(w1)`
    Overdrawn {
        lhs: RBig,
        rhs: RBig,
    },
    Evaluation(String),
}

impl fmt::Display for NodeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeViolation::Negative { value } => write!(f, "negative value {value}"),
            NodeViolation::NotFair { lhs, rhs } => write!(f, "q·d(w) = {lhs} but d(w0)+d(w1) = {rhs}"),
            NodeViolation::Overdrawn { lhs, rhs } => write!(f, "q·d(w) = {lhs} < d(w0)+d(w1) = {rhs}"),
            NodeViolation::Evaluation(e) => write!(f, "evaluation failed: {e}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub kind: Kind,
    pub q: SExponent,
    pub depth: usize,
    pub nodes_checked: usize,
    pub violations: usize,
    /// The first violating node in length-then-lexicographic order.
    pub first_violation: Option<(BitWord, NodeViolation)>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violations == 0
    }
}

fn level_values(d: &dyn GaleRule, len: usize, exec: Exec) -> Vec<Result<RBig>> {
    exec.map_range(1 << len, |i| d.eval(&BitWord::from_index(i as u64, len)))
}

fn check_node(q: &RBig, kind: Kind, dw: &Result<RBig>, d0: &Result<RBig>, d1: &Result<RBig>) -> Option<NodeViolation> {
    let (dw, d0, d1) = match (dw, d0, d1) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Some(NodeViolation::Evaluation(e.to_string())),
    };
    for v in [dw, d0, d1] {
        if *v < RBig::ZERO {
            return Some(NodeViolation::Negative { value: v.clone() });
        }
    }
    let lhs = q * dw;
    let rhs = d0 + d1;
    match kind {
        Kind::Gale if lhs != rhs => Some(NodeViolation::NotFair { lhs, rhs }),
        Kind::Supergale if lhs < rhs => Some(NodeViolation::Overdrawn { lhs, rhs }),
        _ => None,
    }
}

/// Checks the declared condition exactly at every `w` with `|w| ≤ depth`.
pub fn validate(d: &dyn GaleRule, depth: usize) -> ValidationReport {
    validate_with(d, depth, d.kind(), Exec::default())
}

/// As [`validate`], against an explicitly chosen condition.
pub fn validate_with(d: &dyn GaleRule, depth: usize, kind: Kind, exec: Exec) -> ValidationReport {
    assert!(depth <= MAX_VALIDATE_DEPTH, "validation depth {depth} is too large to enumerate");
    let q = d.exponent().q().clone();
    let mut report = ValidationReport {
        kind,
        q: d.exponent().clone(),
        depth,
        nodes_checked: 0,
        violations: 0,
        first_violation: None,
    };
    let mut parents = level_values(d, 0, exec);
    for len in 0..=depth {
        let children = level_values(d, len + 1, exec);
        let verdicts = exec
            .map_range(parents.len(), |i| check_node(&q, kind, &parents[i], &children[2 * i], &children[2 * i + 1]));
        for (i, v) in verdicts.into_iter().enumerate() {
            report.nodes_checked += 1;
            if let Some(v) = v {
                report.violations += 1;
                if report.first_violation.is_none() {
                    report.first_violation = Some((BitWord::from_index(i as u64, len), v));
                }
            }
        }
        parents = children;
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KraftCheck {
    /// `Σ_{u∈B} q^{-|u|} d(wu)`
    pub sum: RBig,
    pub dw: RBig,
    pub holds: bool,
}

/// `Σ_{u∈B} q^{-|u|} d(wu) ≤ d(w)`, evaluated exactly.
pub fn kraft_sum(d: &dyn GaleRule, w: &BitWord, b: &PrefixSet) -> Result<KraftCheck> {
    let q = d.exponent().q();
    let mut sum = RBig::ZERO;
    for u in b.words() {
        sum += d.eval(&w.concat(u))? / pow(q, u.len());
    }
    let dw = d.eval(w)?;
    let holds = sum <= dw;
    Ok(KraftCheck { sum, dw, holds })
}

/// [`kraft_sum`] on raw words, rejecting sets that are not antichains.
pub fn kraft_sum_words(d: &dyn GaleRule, w: &BitWord, words: &[BitWord]) -> Result<KraftCheck> {
    kraft_sum(d, w, &PrefixSet::new(words.iter().cloned())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceederCount {
    pub count: u64,
    /// `2^l / α`
    pub bound: RBig,
    pub holds: bool,
    /// First `u` (lexicographically) with `d(wv) ≤ (q/2)^{|v|} d(w)` for all `v ⊑ u`.
    pub witness: Option<BitWord>,
}

/// Counts `u ∈ {0,1}^l` with `max_{v⊑u} (2/q)^{|v|} d(wv) > α·d(w)`.
pub fn count_exceeders(d: &dyn GaleRule, w: &BitWord, l: usize, alpha: &RBig) -> Result<ExceederCount> {
    let s = d.exponent();
    s.require_unit_range()?;
    if *alpha <= RBig::ZERO {
        return Err(invalid("α must be positive"));
    }
    if l > 40 {
        return Err(invalid(format!("refusing to count over 2^{l} strings")));
    }
    let inflate = RBig::from(2u8) / s.q();
    let mut cursor = Cursor::at(d, w.clone())?;
    let mut ex = cursor.explore();
    let base = ex.base().clone();
    let limit = alpha * &base;

    // (2/q)^{|v|} per depth
    let factors: Vec<RBig> = (0..=l).map(|k| pow(&inflate, k)).collect();

    fn count_rec(ex: &mut crate::gale::Explorer<'_>, l: usize, factors: &[RBig], limit: &RBig) -> Result<u64> {
        let k = ex.depth();
        if &(&factors[k] * ex.value()) > limit {
            return Ok(1u64 << (l - k));
        }
        if k == l {
            return Ok(0);
        }
        let mut total = 0;
        for bit in [false, true] {
            ex.descend(bit)?;
            total += count_rec(ex, l, factors, limit)?;
            ex.ascend();
        }
        Ok(total)
    }

    fn witness_rec(
        ex: &mut crate::gale::Explorer<'_>,
        l: usize,
        factors: &[RBig],
        base: &RBig,
        path: &mut BitWord,
    ) -> Result<bool> {
        let k = ex.depth();
        if &(&factors[k] * ex.value()) > base {
            return Ok(false);
        }
        if k == l {
            return Ok(true);
        }
        for bit in [false, true] {
            ex.descend(bit)?;
            path.push(bit);
            let found = witness_rec(ex, l, factors, base, path)?;
            ex.ascend();
            if found {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }

    let count = count_rec(&mut ex, l, &factors, &limit)?;
    let mut path = BitWord::empty();
    let witness = witness_rec(&mut ex, l, &factors, &base, &mut path)?.then_some(path);
    let bound = RBig::from(1u64 << l) / alpha;
    let holds = RBig::from(count) < bound;
    Ok(ExceederCount { count, bound, holds, witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlackCheck {
    pub lhs: RBig,
    /// `q^{|u|} d(w)`
    pub rhs: RBig,
    pub holds: bool,
}

/// `d(wu) ≤ q^{|u|} d(w)`
pub fn slack_bound_check(d: &dyn GaleRule, w: &BitWord, u: &BitWord) -> Result<SlackCheck> {
    let lhs = d.eval(&w.concat(u))?;
    let rhs = d.exponent().q_pow(u.len()) * d.eval(w)?;
    let holds = lhs <= rhs;
    Ok(SlackCheck { lhs, rhs, holds })
}

/// `Σ_{w∈A} q^{-|w|}` for a cover whose words all have length `≥ k`.
pub fn hausdorff_cover_sum(s: &SExponent, cover: &PrefixSet, k: usize) -> Result<RBig> {
    if let Some(short) = cover.words().iter().find(|w| w.len() < k) {
        return Err(invalid(format!("cover word {short} is shorter than k = {k}")));
    }
    Ok(cover.kraft_mass(s.q()))
}

/// The cover word lying on the source, if any.
pub fn cover_word_on(cover: &PrefixSet, source: &dyn SequenceSource) -> Option<BitWord> {
    cover.words().iter().find(|w| w.iter().enumerate().all(|(i, b)| source.bit(i) == Some(b))).cloned()
}

/// The cover extracted from a gale: minimal words where `d` first reaches
/// `2^r·a`, with `a = 1 + max_{|w|≤k} d(w)`.
#[derive(Clone, Debug)]
pub struct GaleCover {
    pub a: RBig,
    pub cover: PrefixSet,
    pub mass: RBig,
    /// Paths that never reached the level within the horizon.
    pub open_paths: u64,
}

pub fn cover_from_gale(d: &dyn GaleRule, k: usize, r: usize, horizon: usize) -> Result<GaleCover> {
    if horizon > 24 {
        return Err(invalid("cover horizon above 24 is not enumerable"));
    }
    let mut max = RBig::ZERO;
    for w in BitWord::all_up_to(k) {
        let v = d.eval(&w)?;
        if v > max {
            max = v;
        }
    }
    let a = RBig::ONE + max;
    let level = pow2(r as i64) * &a;
    let mut words = Vec::new();
    let mut open = 0u64;
    let mut frontier = vec![BitWord::empty()];
    for len in 0..=horizon {
        let mut next = Vec::new();
        for w in frontier {
            if d.eval(&w)? >= level {
                words.push(w);
            } else if len == horizon {
                open += 1;
            } else {
                next.push(w.child(false));
                next.push(w.child(true));
            }
        }
        frontier = next;
    }
    let cover = PrefixSet::new(words)?;
    let mass = cover.kraft_mass(d.exponent().q());
    Ok(GaleCover { a, cover, mass, open_paths: open })
}

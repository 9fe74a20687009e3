//! Seeded property sweeps over random supergale tables.

use std::sync::Arc;

use dashu_ratio::RBig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{BitWord, PrefixSet};
use crate::error::Result;
use crate::exact::{pow, ratio, SExponent};
use crate::gale::checks::{count_exceeders, kraft_sum, slack_bound_check, validate_with};
use crate::gale::table::TableGale;
use crate::gale::{Gale, GaleRule, Kind};
use crate::par::Exec;

/// Exponents drawn for the sweeps; all lie in `[1, 2]`.
pub fn suite_exponents() -> Vec<SExponent> {
    [(1, 1), (5, 4), (4, 3), (3, 2), (7, 4), (2, 1)]
        .iter()
        .map(|&(a, b)| SExponent::from_ratio(a, b).expect("positive"))
        .collect()
}

/// Values of `α` at which exceeders are counted.
pub fn suite_alphas() -> Vec<RBig> {
    vec![ratio(1, 2), RBig::ONE, RBig::from(2u8), RBig::from(4u8)]
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub tables: usize,
    pub depth: usize,
    pub seed: u64,
    /// Antichains enumerated explicitly below each node up to this depth.
    pub explicit_depth: usize,
    /// Random antichains sampled per table at the root.
    pub random_antichains: usize,
    /// `false` restricts tables to exact gales.
    pub slack: bool,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tables: 100,
            depth: 6,
            seed: 0,
            explicit_depth: 3,
            random_antichains: 64,
            slack: true,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checks: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn clean(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub tables: usize,
    pub validation: Tally,
    /// Maximal antichain sums, one per node.
    pub kraft_exhaustive: Tally,
    pub kraft_explicit: Tally,
    pub kraft_random: Tally,
    pub exceeders: Tally,
    pub witnesses: Tally,
    pub slack: Tally,
}

impl SuiteReport {
    pub fn clean(&self) -> bool {
        [
            &self.validation,
            &self.kraft_exhaustive,
            &self.kraft_explicit,
            &self.kraft_random,
            &self.exceeders,
            &self.witnesses,
            &self.slack,
        ]
        .iter()
        .all(|t| t.clean())
    }

    fn merge(&mut self, other: SuiteReport) {
        self.tables += other.tables;
        self.validation.merge(other.validation);
        self.kraft_exhaustive.merge(other.kraft_exhaustive);
        self.kraft_explicit.merge(other.kraft_explicit);
        self.kraft_random.merge(other.kraft_random);
        self.exceeders.merge(other.exceeders);
        self.witnesses.merge(other.witnesses);
        self.slack.merge(other.slack);
    }
}

/// Table `i` of a seeded sweep.
pub fn suite_table(seed: u64, i: usize, depth: usize, slack: bool) -> Result<TableGale> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64));
    let exps = suite_exponents();
    let s = exps[rng.gen_range(0..exps.len())].clone();
    TableGale::random(&mut rng, s, depth, slack)
}

/// All antichains inside `{0,1}^{≤depth}`, the empty one included.
pub fn all_antichains(depth: usize) -> Vec<Vec<BitWord>> {
    fn below(prefix: &BitWord, remaining: usize) -> Vec<Vec<BitWord>> {
        let mut out = vec![vec![], vec![prefix.clone()]];
        if remaining == 0 {
            return out;
        }
        let left = below(&prefix.child(false), remaining - 1);
        let right = below(&prefix.child(true), remaining - 1);
        for l in &left {
            for r in &right {
                if l.is_empty() && r.is_empty() {
                    continue;
                }
                out.push(l.iter().chain(r.iter()).cloned().collect());
            }
        }
        out
    }
    below(&BitWord::empty(), depth)
}

/// A random antichain inside `{0,1}^{≤depth}`.
pub fn random_antichain<R: Rng>(rng: &mut R, depth: usize) -> Vec<BitWord> {
    let mut out = Vec::new();
    let mut stack = vec![BitWord::empty()];
    while let Some(w) = stack.pop() {
        match rng.gen_range(0..4) {
            0 => {}
            1 => out.push(w),
            _ if w.len() < depth => {
                stack.push(w.child(true));
                stack.push(w.child(false));
            }
            _ => out.push(w),
        }
    }
    out
}

fn check_table(t: &TableGale, cfg: &SuiteConfig, table_index: usize) -> Result<SuiteReport> {
    let depth = t.depth();
    let q = t.exponent().q().clone();
    let name = |w: &BitWord| format!("table {table_index} ({}) at w={w}", t.label());
    let mut rep = SuiteReport { tables: 1, ..Default::default() };

    let v = validate_with(t, depth - 1, t.kind(), Exec::Sequential);
    rep.validation.record(v.valid(), || format!("table {table_index}: {:?}", v.first_violation));

    // best(w) = max over antichains B below w of Σ q^{-|u|} d(wu)
    let words: Vec<BitWord> = BitWord::all_up_to(depth).collect();
    let mut best = vec![RBig::ZERO; words.len()];
    for i in (0..words.len()).rev() {
        let dw = t.eval(&words[i])?;
        best[i] = if words[i].len() == depth {
            dw.clone()
        } else {
            let split = (&best[2 * i + 1] + &best[2 * i + 2]) / &q;
            if split > dw {
                split
            } else {
                dw.clone()
            }
        };
        rep.kraft_exhaustive.record(best[i] <= dw, || name(&words[i]));
    }

    let chains = all_antichains(cfg.explicit_depth.min(depth));
    for w in BitWord::all_up_to(depth - cfg.explicit_depth.min(depth)) {
        for b in &chains {
            let set = PrefixSet::new(b.iter().cloned())?;
            let k = kraft_sum(t, &w, &set)?;
            rep.kraft_explicit.record(k.holds, || format!("{} B={b:?}", name(&w)));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (table_index as u64).rotate_left(32));
    for _ in 0..cfg.random_antichains {
        let b = random_antichain(&mut rng, depth);
        let set = PrefixSet::new(b.iter().cloned())?;
        let k = kraft_sum(t, &BitWord::empty(), &set)?;
        rep.kraft_random.record(k.holds, || format!("{} B={b:?}", name(&BitWord::empty())));
    }

    let half = t.exponent().half_q();
    for w in BitWord::all_up_to(depth) {
        let dw = t.eval(&w)?;
        for l in 0..=depth - w.len() {
            for alpha in suite_alphas() {
                let c = count_exceeders(t, &w, l, &alpha)?;
                rep.exceeders.record(c.holds, || format!("{} l={l} α={alpha}: {} exceeders", name(&w), c.count));
                let ok = match &c.witness {
                    None => false,
                    Some(u) => {
                        u.len() == l
                            && u.prefixes()
                                .all(|v| t.eval(&w.concat(&v)).map(|x| x <= pow(&half, v.len()) * &dw).unwrap_or(false))
                    }
                };
                rep.witnesses.record(ok, || format!("{} l={l}: witness {:?}", name(&w), c.witness));
            }
        }
    }

    for w in BitWord::all_up_to(depth) {
        for u in BitWord::all_up_to(depth - w.len()) {
            let c = slack_bound_check(t, &w, &u)?;
            rep.slack.record(c.holds, || format!("{} u={u}", name(&w)));
        }
    }
    Ok(rep)
}

/// Runs every property over `cfg.tables` seeded tables.
pub fn run_property_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let per_table = cfg.exec.map_range(cfg.tables, |i| {
        let t = suite_table(cfg.seed, i, cfg.depth, cfg.slack)?;
        check_table(&t, cfg, i)
    });
    let mut total = SuiteReport::default();
    for r in per_table {
        total.merge(r?);
    }
    Ok(total)
}

/// The tables of a sweep as shared rules.
pub fn suite_tables(seed: u64, count: usize, depth: usize, slack: bool) -> Result<Vec<Gale>> {
    (0..count).map(|i| suite_table(seed, i, depth, slack).map(|t| Arc::new(t) as Gale)).collect()
}

/// Kind check for generated tables.
pub fn declared_kind(slack: bool) -> Kind {
    if slack {
        Kind::Supergale
    } else {
        Kind::Gale
    }
}

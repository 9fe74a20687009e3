mod common;

use std::sync::Arc;

use dashu_ratio::RBig;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galelab::circuit::Census;
use galelab::dimension::{
    entropy, estimate_dimension, success_probe, weighted_entropy, EstimateConfig, FrequencyFamily, ProbeConfig,
    Threshold,
};
use galelab::gale::checks::{count_exceeders, kraft_sum_words, slack_bound_check};
use galelab::gale::table::TableGale;
use galelab::gale::transform::{combine, exactify, supergale_to_gale, union_gale_eval, NoisyApprox, SingletonFamily};
use galelab::source::Periodic;
use galelab::zoo::{BlockAlphabet, BlockGale, FrequencyGale, SingletonGale};
use galelab::{BitWord, Exec, Gale, GaleRule, SExponent};

use common::{brute_exceeders, fair_at, indicator_union_reference, pow2, rat, super_at};

const DEPTH: usize = 6;

fn exponent_in_unit_range() -> impl Strategy<Value = SExponent> {
    prop::sample::select(vec!["1", "5/4", "4/3", "3/2", "7/4", "2"]).prop_map(|q| q.parse().unwrap())
}

fn table(seed: u64, s: SExponent, slack: bool) -> TableGale {
    TableGale::random(&mut ChaCha8Rng::seed_from_u64(seed), s, DEPTH, slack).unwrap()
}

fn word(max_len: usize) -> impl Strategy<Value = BitWord> {
    prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(BitWord::from_bits)
}

/// Random words below `depth`, dropping any that clash with one already kept.
fn antichain(seed: u64, depth: usize) -> Vec<BitWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<BitWord> = Vec::new();
    for _ in 0..rng.gen_range(0..12) {
        let len = rng.gen_range(0..=depth);
        let w = BitWord::from_bits((0..len).map(|_| rng.gen_bool(0.5)));
        if out.iter().all(|v| !v.is_prefix_of(&w) && !w.is_prefix_of(v)) {
            out.push(w);
        }
    }
    out
}

fn periodic(bits: Vec<bool>) -> Periodic {
    Periodic::new(BitWord::from_bits(bits)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn kraft_sum_never_exceeds_the_root(seed in any::<u64>(), s in exponent_in_unit_range(), w in word(2)) {
        let d = table(seed, s.clone(), true);
        let b = antichain(seed ^ 0x5a5a, DEPTH - w.len());
        let check = kraft_sum_words(&d, &w, &b).unwrap();
        let direct = b.iter().fold(RBig::ZERO, |acc, u| acc + d.eval(&w.concat(u)).unwrap() / s.q().pow(u.len()));
        prop_assert_eq!(&check.sum, &direct);
        prop_assert!(check.holds);
        prop_assert!(direct <= d.eval(&w).unwrap());
    }

    #[test]
    fn exceeders_match_enumeration(
        seed in any::<u64>(),
        s in exponent_in_unit_range(),
        w in word(2),
        l in 0usize..=4,
        alpha in prop::sample::select(vec!["1/2", "1", "2", "4"]),
    ) {
        let d = table(seed, s.clone(), true);
        prop_assume!(w.len() + l <= DEPTH);
        let alpha = rat(alpha);
        let got = count_exceeders(&d, &w, l, &alpha).unwrap();
        prop_assert_eq!(got.count, brute_exceeders(&d, &w, l, &alpha));
        prop_assert!(RBig::from(got.count) < pow2(l as i64) / &alpha);
        let u = got.witness.expect("a non-increasing path exists");
        prop_assert_eq!(u.len(), l);
        let dw = d.eval(&w).unwrap();
        for v in u.prefixes() {
            let scaled = (RBig::from(2u8) / s.q()).pow(v.len()) * d.eval(&w.concat(&v)).unwrap();
            prop_assert!(scaled <= dw);
        }
    }

    #[test]
    fn slack_bound_holds(seed in any::<u64>(), s in exponent_in_unit_range(), w in word(3), u in word(3)) {
        let d = table(seed, s.clone(), true);
        let c = slack_bound_check(&d, &w, &u).unwrap();
        prop_assert!(c.holds);
        prop_assert_eq!(c.rhs, s.q().pow(u.len()) * d.eval(&w).unwrap());
    }

    #[test]
    fn conversion_dominates_and_is_fair(seed in any::<u64>(), s in exponent_in_unit_range()) {
        let d: Gale = Arc::new(table(seed, s, true));
        let g = supergale_to_gale(d.clone());
        for w in BitWord::all_up_to(DEPTH - 1) {
            prop_assert!(fair_at(&g, &w), "{}", w);
            prop_assert!(g.eval(&w).unwrap() >= d.eval(&w).unwrap());
        }
    }

    #[test]
    fn gale_tables_convert_to_themselves(seed in any::<u64>(), s in exponent_in_unit_range()) {
        let d: Gale = Arc::new(table(seed, s, false));
        let g = supergale_to_gale(d.clone());
        for w in BitWord::all_up_to(DEPTH) {
            prop_assert_eq!(g.eval(&w).unwrap(), d.eval(&w).unwrap());
        }
    }

    #[test]
    fn exactify_separates_from_the_approximated_gale(
        seed in any::<u64>(),
        noise in any::<u64>(),
        s in prop::sample::select(vec!["5/4", "3/2", "2", "3"]),
    ) {
        let s: SExponent = s.parse().unwrap();
        let d: Gale = Arc::new(table(seed, s, false));
        let e = exactify(Arc::new(NoisyApprox { base: d.clone(), seed: noise })).unwrap();
        let a = e.offset() as i64;
        for w in BitWord::all_up_to(DEPTH - 1) {
            let n = w.len() as i64;
            let gap = e.eval(&w).unwrap() - d.eval(&w).unwrap();
            prop_assert!(gap >= pow2(-n) - pow2(-n - a) && gap <= pow2(-n) + pow2(-n - a));
            prop_assert!(super_at(&e, &w), "{}", w);
        }
    }

    #[test]
    fn union_truncation_is_within_tolerance(
        q in prop::sample::select(vec!["1", "5/4", "3/2", "2", "3", "7/2"]),
        w in word(10),
        r in 0usize..12,
    ) {
        let q = rat(q);
        let fam = SingletonFamily::indicators(SExponent::new(q.clone()).unwrap());
        let got = union_gale_eval(&fam, r, &w).unwrap();
        let full = indicator_union_reference(&q, &w);
        prop_assert!(got <= full);
        prop_assert!(&full - &got <= pow2(-(r as i64)));
    }

    #[test]
    fn sum_of_gales_crosses_no_later(
        x in prop::collection::vec(any::<bool>(), 1..6),
        y in prop::collection::vec(any::<bool>(), 1..6),
    ) {
        let s = SExponent::martingale();
        let (px, py) = (Arc::new(periodic(x)), Arc::new(periodic(y)));
        let dx: Gale = Arc::new(SingletonGale::new(s.clone(), px.clone()));
        let dy: Gale = Arc::new(SingletonGale::new(s.clone(), py.clone()));
        let sum = combine(vec![dx.clone(), dy.clone()], vec![RBig::ONE, RBig::ONE]).unwrap();
        let cfg = ProbeConfig { depth: 64, threshold: Threshold::Absolute, ..Default::default() };
        for (d, src) in [(&dx, &px), (&dy, &py)] {
            let alone = success_probe(d.as_ref(), src.as_ref(), &cfg).unwrap().first_crossing_depth.unwrap();
            let both = success_probe(&sum, src.as_ref(), &cfg).unwrap().first_crossing_depth.unwrap();
            prop_assert!(both <= alone);
        }
    }

    #[test]
    fn frequency_closed_form_matches_recursion(
        num in 1u64..=8,
        q in prop::sample::select(vec!["1", "5/4", "3/2", "2", "5/2"]),
        w in word(12),
    ) {
        let y = RBig::from(num) / RBig::from(16u8);
        let s: SExponent = q.parse().unwrap();
        let g = FrequencyGale::new(s.clone(), y.clone()).unwrap();
        let mut value = RBig::ONE;
        for b in w.iter() {
            value *= s.q() * if b { y.clone() } else { RBig::ONE - &y };
        }
        prop_assert_eq!(&g.closed_form(w.ones(), w.zeros()), &value);
        prop_assert_eq!(&g.eval(&w).unwrap(), &value);
        prop_assert!(fair_at(&g, &w));
    }

    #[test]
    fn block_weights_spread_over_the_alphabet(l in 1usize..=4, picks in prop::collection::vec(any::<u8>(), 1..8)) {
        let words: Vec<BitWord> = picks.iter().map(|p| BitWord::from_index(u64::from(*p) % (1 << l), l)).collect();
        let s = BlockAlphabet::new(l, words).unwrap();
        let total = s.words().iter().fold(RBig::ZERO, |a, u| a + s.rho(u));
        prop_assert_eq!(total, RBig::ONE);
        let g = BlockGale::new(SExponent::martingale(), s.clone());
        for u in BitWord::all_of_length(l) {
            let share = if s.contains(&u) { RBig::ONE / RBig::from(s.size()) } else { RBig::ZERO };
            prop_assert_eq!(s.rho(&u), share.clone());
            prop_assert_eq!(g.eval(&u).unwrap(), pow2(l as i64) * share);
        }
        for w in BitWord::all_up_to(2 * l - 1) {
            prop_assert!(fair_at(&g, &w));
        }
    }

    #[test]
    fn entropy_shape(num in 1u64..64) {
        let prec = pow2(-20);
        let x = RBig::from(num) / RBig::from(64u8);
        let h = entropy(&x, &prec).unwrap();
        let mirror = entropy(&(RBig::ONE - &x), &prec).unwrap();
        prop_assert!(h.lo() <= mirror.hi() && mirror.lo() <= h.hi());
        prop_assert!(h.lo() <= RBig::ONE);
        prop_assert!(h.hi() - h.lo() <= prec.clone());
        for ynum in [1u64, 7, 19, 32, 50, 63] {
            let y = RBig::from(ynum) / RBig::from(64u8);
            let cross = weighted_entropy(&x, &y, &prec).unwrap();
            prop_assert!(cross.hi() >= h.lo());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn census_layers_grow(n in 0usize..=2, t in 0usize..5) {
        let c = Census::build(n, 6, Exec::Sequential).unwrap();
        let now = c.reached(t).unwrap();
        let next = c.reached(t + 1).unwrap();
        prop_assert!(now.iter().all(|f| next.contains(f)));
        let sat = c.saturation().unwrap();
        prop_assert_eq!(c.novel_count(sat.max(t)).unwrap(), 1u64 << (1 << n));
    }

    #[test]
    fn frequency_estimates_are_monotone(num in 1u64..8, pattern in prop::collection::vec(any::<bool>(), 1..8)) {
        let fam = FrequencyFamily::new(RBig::from(num) / RBig::from(16u8)).unwrap();
        let cfg = EstimateConfig { depth: 1500, ..Default::default() };
        let est = estimate_dimension(&fam, &[Arc::new(periodic(pattern))], &cfg).unwrap();
        prop_assert!(est.require_monotone().is_ok());
        if let Some(u) = &est.upper {
            prop_assert!(est.lower <= *u);
        }
    }
}

mod common;

use dashu_ratio::RBig;
use galelab::circuit::{
    density_check, gate_budget, max_size_below, shannon_bound_check, Census, CircuitProgram, Gate, Op, TruthTable,
};
use galelab::zoo::CircuitGale;
use galelab::{BitWord, Exec, GaleRule, SExponent};

use common::{fair_at, min_circuit_sizes, rat, table_word};

fn census(n: usize, t: usize) -> Census {
    Census::build(n, t, Exec::default()).unwrap()
}

fn table(bits: &str) -> TruthTable {
    TruthTable::from_bits(&bits.parse().unwrap()).unwrap()
}

#[test]
fn one_input_counts() {
    let c = census(1, 3);
    assert_eq!(c.novel_count(0).unwrap(), 3);
    assert_eq!(c.novel_count(1).unwrap(), 4);
    assert_eq!(c.saturation(), Some(1));
}

#[test]
fn two_inputs_saturate() {
    let c = census(2, 8);
    let t = c.saturation().expect("n=2 saturates within 8 gates");
    for k in t..=8 {
        assert_eq!(c.novel_count(k).unwrap(), 16);
    }
    assert!(c.novel_count(t - 1).unwrap() < 16);
    let oracle = min_circuit_sizes(2, 8);
    assert_eq!(oracle.len(), 16);
    assert_eq!(*oracle.values().max().unwrap(), t);
}

#[test]
fn circuit_size_matches_enumeration() {
    for (n, t_max) in [(1, 3), (2, 6)] {
        let c = census(n, t_max);
        let oracle = min_circuit_sizes(n, t_max);
        for f in TruthTable::all(n) {
            let want = oracle.get(&f.bits().iter().collect::<Vec<_>>()).copied();
            assert_eq!(c.circuit_size(f), want, "n={n} {f}");
        }
    }
}

#[test]
fn three_input_sizes_match_enumeration_up_to_three_gates() {
    let c = census(3, 3);
    let oracle = min_circuit_sizes(3, 3);
    for (tab, size) in &oracle {
        assert_eq!(c.circuit_size(TruthTable::from_bits(&table_word(tab)).unwrap()), Some(*size));
    }
    assert_eq!(c.novel_count(3).unwrap(), oracle.len() as u64);
}

#[test]
fn wire_tables_have_size_zero() {
    let c = census(2, 6);
    assert_eq!(c.circuit_size(TruthTable::constant(2, false)), Some(0));
    assert_eq!(c.circuit_size(TruthTable::input(2, 1)), Some(0));
    assert_eq!(table("0011"), TruthTable::input(2, 1));
    assert_eq!(table("0101"), TruthTable::input(2, 2));
    let xor = c.circuit_size(table("0110")).unwrap();
    let oracle = min_circuit_sizes(2, 6);
    assert_eq!(Some(&xor), oracle.get(&vec![false, true, true, false]));
}

#[test]
fn representatives_evaluate_to_their_tables() {
    for n in 1..=3 {
        let c = census(n, if n == 3 { 4 } else { 6 });
        for f in TruthTable::all(n) {
            if let Some(size) = c.circuit_size(f) {
                let p = c.representative(f).unwrap();
                assert_eq!(p.size(), size);
                assert_eq!(p.eval().unwrap(), f);
            }
        }
    }
}

#[test]
fn programs_reject_forward_references() {
    let p = CircuitProgram { n: 1, free_constants: true, gates: vec![Gate { op: Op::And, a: 0, b: 3 }], output: 3 };
    assert!(p.eval().is_err());
    let ok = CircuitProgram { n: 1, free_constants: true, gates: vec![Gate { op: Op::Not, a: 0, b: 0 }], output: 3 };
    assert_eq!(ok.eval().unwrap(), table("10"));
}

#[test]
fn conditional_counts_partition() {
    let c = census(2, 5);
    for t in 0..=5 {
        assert_eq!(c.conditional_count(t, &BitWord::empty()).unwrap(), c.novel_count(t).unwrap());
        let full: u64 = (0..16).map(|i| c.conditional_count(t, &BitWord::from_index(i, 4)).unwrap()).sum();
        assert_eq!(full, c.novel_count(t).unwrap());
    }
    let zero = c.conditional_count(2, &"0".parse().unwrap()).unwrap();
    let one = c.conditional_count(2, &"1".parse().unwrap()).unwrap();
    assert_eq!(zero + one, c.novel_count(2).unwrap());
    assert!(c.conditional_count(2, &BitWord::repeat(false, 5)).is_err());
}

#[test]
fn census_rejects_four_inputs() {
    assert!(Census::build(4, 1, Exec::default()).is_err());
}

#[test]
fn counting_bound_examples() {
    let c1 = census(1, 2);
    let r = shannon_bound_check(&c1, 2).unwrap();
    assert!(r.pass);
    assert_eq!(r.count, 4);
    let c2 = census(2, 5);
    assert!(shannon_bound_check(&c2, 3).unwrap().pass);
    assert!(shannon_bound_check(&c2, 3).unwrap().count <= 16);
    let r5 = shannon_bound_check(&c2, 5).unwrap();
    assert!(r5.pass);
    assert!(r5.margin_log2.parse::<f64>().unwrap() > 30.0);
    assert!(shannon_bound_check(&c2, 2).is_err());
}

#[test]
fn gate_budgets() {
    assert_eq!(gate_budget(2, &rat("1/2")), Some(RBig::ONE));
    assert_eq!(max_size_below(&RBig::ONE), Some(0));
    assert_eq!(max_size_below(&rat("8/3")), Some(2));
    assert_eq!(max_size_below(&rat("1/2")), Some(0));
    assert_eq!(max_size_below(&RBig::ZERO), None);
    assert_eq!(gate_budget(0, &RBig::ONE), None);
}

#[test]
fn density_at_three_inputs() {
    let c = census(3, 3);
    let d = density_check(&c, &RBig::ONE, &rat("1/2")).unwrap();
    assert_eq!(d.max_size, Some(2));
    let oracle = min_circuit_sizes(3, 2);
    assert_eq!(d.count, oracle.len() as u64);
    assert_eq!(d.pass, d.count >= 16);
    // a tiny β only needs one table
    assert!(density_check(&c, &RBig::ONE, &rat("1/1000")).unwrap().pass);
    // budget 1 at n = 2 admits wire tables only
    let w = density_check(&census(2, 3), &rat("1/2"), &rat("1/4")).unwrap();
    assert_eq!((w.max_size, w.count), (Some(0), 4));
}

#[test]
fn circuit_gale_is_fair_through_two_input_segments() {
    // segments for n = 0, 1, 2 fill positions 0..7
    let g = CircuitGale::new(SExponent::new(rat("3/2")).unwrap(), vec![0, 1, 1], Exec::default()).unwrap();
    assert_eq!(g.eval(&BitWord::empty()).unwrap(), RBig::ONE);
    for len in 0..7 {
        for i in 0..1u64 << len {
            assert!(fair_at(&g, &BitWord::from_index(i, len)), "{}", BitWord::from_index(i, len));
        }
    }
}

#[test]
fn circuit_gale_block_factor() {
    let q = rat("3/2");
    let s = SExponent::new(q.clone()).unwrap();
    let g = CircuitGale::new(s, vec![0, 1, 1], Exec::default()).unwrap();
    let c2 = census(2, 1);
    let n22 = c2.novel_count(1).unwrap();
    // x1 at n = 1 then x1 ∧ x2 at n = 2
    let w: BitWord = "0".parse::<BitWord>().unwrap().concat(&"01".parse().unwrap());
    let u: BitWord = "0001".parse().unwrap();
    let before = g.eval(&w).unwrap();
    let after = g.eval(&w.concat(&u)).unwrap();
    assert_eq!(after, before * q.pow(4) / RBig::from(n22));
    assert!(g.eval(&w.concat(&"0110".parse().unwrap())).unwrap() == RBig::ZERO);
}

#[test]
fn circuit_gale_rejects_lengths_past_its_census() {
    let g = CircuitGale::new(SExponent::martingale(), vec![0, 1], Exec::default()).unwrap();
    assert!(g.eval(&BitWord::repeat(false, 3)).is_ok());
    assert!(g.eval(&BitWord::repeat(false, 4)).is_err());
}

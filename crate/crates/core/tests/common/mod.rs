//! Reference computations written directly from the definitions, sharing no
//! search code with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use galelab::{BitWord, GaleRule};
use rand::Rng;

pub fn rat(text: &str) -> RBig {
    galelab::exact::parse_rational(text).unwrap()
}

pub fn pow2(e: i64) -> RBig {
    let m = UBig::ONE << e.unsigned_abs() as usize;
    if e >= 0 {
        RBig::from(m)
    } else {
        RBig::from_parts(IBig::ONE, m)
    }
}

/// `q·d(w) = d(w0) + d(w1)` evaluated afresh.
pub fn fair_at(d: &dyn GaleRule, w: &BitWord) -> bool {
    let lhs = d.exponent().q() * d.eval(w).unwrap();
    lhs == d.eval(&w.child(false)).unwrap() + d.eval(&w.child(true)).unwrap()
}

/// `q·d(w) ≥ d(w0) + d(w1)` evaluated afresh.
pub fn super_at(d: &dyn GaleRule, w: &BitWord) -> bool {
    let lhs = d.exponent().q() * d.eval(w).unwrap();
    lhs >= d.eval(&w.child(false)).unwrap() + d.eval(&w.child(true)).unwrap()
}

/// `u ∈ {0,1}^l` with `max_{v ⊑ u} (2/q)^{|v|} d(wv) > α d(w)`, by listing
/// every `u` and every prefix.
pub fn brute_exceeders(d: &dyn GaleRule, w: &BitWord, l: usize, alpha: &RBig) -> u64 {
    let bar = alpha * d.eval(w).unwrap();
    let factor = RBig::from(2u8) / d.exponent().q();
    let mut count = 0;
    for i in 0..1u64 << l {
        let u = BitWord::from_index(i, l);
        let hit = (0..=l).any(|j| {
            let v = u.prefix(j);
            factor.pow(j) * d.eval(&w.concat(&v)).unwrap() > bar
        });
        count += u64::from(hit);
    }
    count
}

/// `Σ_{k≥0} 2^{-k} d_k(w)` for singleton gales on `0^k 1 0^ω`, in closed form.
pub fn indicator_union_reference(q: &RBig, w: &BitWord) -> RBig {
    let ones: Vec<usize> = (0..w.len()).filter(|&i| w.bit(i)).collect();
    match ones.as_slice() {
        // members k ≥ |w| all agree with 0^{|w|}
        [] => q.pow(w.len()) * pow2(1 - w.len() as i64),
        [p] => q.pow(w.len()) * pow2(-(*p as i64)),
        _ => RBig::ZERO,
    }
}

/// Truth table as output bits, row `i` assigning bit `n-1-j` of `i` to input `j`.
pub type Table = Vec<bool>;

fn input_table(n: usize, j: usize) -> Table {
    (0..1usize << n).map(|i| (i >> (n - 1 - j)) & 1 == 1).collect()
}

/// Smallest gate count of a straight-line program over NOT, AND2, OR2 with
/// free inputs and constants, by enumerating programs gate by gate.
///
/// A gate repeating an available wire is never part of a minimal program,
/// so each step only adds a wire with a new table.
pub fn min_circuit_sizes(n: usize, t_max: usize) -> BTreeMap<Table, usize> {
    let rows = 1usize << n;
    let mut wires: Vec<Table> = vec![vec![false; rows], vec![true; rows]];
    wires.extend((0..n).map(|j| input_table(n, j)));
    let mut best: BTreeMap<Table, usize> = BTreeMap::new();
    for w in &wires {
        best.insert(w.clone(), 0);
    }
    fn grow(wires: &mut Vec<Table>, gates: usize, t_max: usize, best: &mut BTreeMap<Table, usize>) {
        if gates == t_max {
            return;
        }
        let mut fresh: Vec<Table> = Vec::new();
        let k = wires.len();
        let mut offer = |t: Table, wires: &Vec<Table>| {
            if !wires.contains(&t) && !fresh.contains(&t) {
                fresh.push(t);
            }
        };
        for a in 0..k {
            offer(wires[a].iter().map(|x| !x).collect(), wires);
            for b in a..k {
                offer(wires[a].iter().zip(&wires[b]).map(|(x, y)| *x && *y).collect(), wires);
                offer(wires[a].iter().zip(&wires[b]).map(|(x, y)| *x || *y).collect(), wires);
            }
        }
        for t in fresh {
            let e = best.entry(t.clone()).or_insert(gates + 1);
            *e = (*e).min(gates + 1);
            wires.push(t);
            grow(wires, gates + 1, t_max, best);
            wires.pop();
        }
    }
    grow(&mut wires, 0, t_max, &mut best);
    best
}

pub fn table_word(t: &Table) -> BitWord {
    BitWord::from_bits(t.iter().copied())
}

/// A prefix set with `q`-mass at most `limit`, of words between `min_len`
/// and `min_len + 3` bits.
pub fn random_light_cover<R: Rng>(rng: &mut R, q: &RBig, limit: &RBig, min_len: usize) -> Vec<BitWord> {
    let mut words: Vec<BitWord> = Vec::new();
    let mut mass = RBig::ZERO;
    for _ in 0..rng.gen_range(1..=8) {
        let len = rng.gen_range(min_len..=min_len + 3);
        let w = BitWord::from_bits((0..len).map(|_| rng.gen_bool(0.5)));
        let clash = words.iter().any(|v| v.is_prefix_of(&w) || w.is_prefix_of(v));
        let next = &mass + RBig::ONE / q.pow(len);
        if !clash && &next <= limit {
            words.push(w);
            mass = next;
        }
    }
    words
}

/// `d(w)` for the gale that reaches `1` on each word of `cover`: the
/// `q`-weighted count of cover words below `w`, or `(q/2)^{|w|-|v|}` past a
/// cover word `v`.
pub fn cover_reference(q: &RBig, cover: &[BitWord], w: &BitWord) -> RBig {
    if let Some(v) = cover.iter().find(|v| v.is_prefix_of(w)) {
        return (q / RBig::from(2u8)).pow(w.len() - v.len());
    }
    cover
        .iter()
        .filter(|v| w.is_prefix_of(v))
        .map(|v| RBig::ONE / q.pow(v.len() - w.len()))
        .fold(RBig::ZERO, |a, b| a + b)
}

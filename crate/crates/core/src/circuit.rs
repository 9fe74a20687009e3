//! Census of small Boolean circuits over `{NOT, AND2, OR2}`.
//!
//! Inputs `x1..xn` (and, by default, the constants `0` and `1`) are free
//! wires of size 0. A truth table on `n ≤ 3` inputs is a word of `2^n` bits
//! whose bit `i` is the output on the input with binary value `i`, `x1` being
//! the most significant input bit.

use std::collections::HashMap;
use std::fmt;

use dashu_int::ops::UnsignedAbs;
use dashu_int::UBig;
use dashu_ratio::RBig;
use serde::{Deserialize, Serialize};

use crate::bits::BitWord;
use crate::error::{invalid, Result};
use crate::exact::{format_decimal, SExponent};
use crate::interval::log2;
use crate::par::Exec;

pub const MAX_INPUTS: usize = 3;

/// Refuse to hold more than this many distinct wire sets in one layer.
const MAX_LAYER_STATES: usize = 20_000_000;

/// A function `{0,1}^n → {0,1}`, stored as its `2^n`-bit word read as a
/// binary number with bit 0 of the word most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    n: u8,
    word: u8,
}

impl TruthTable {
    pub fn new(n: usize, word: u8) -> Result<Self> {
        if n > MAX_INPUTS {
            return Err(invalid(format!("truth tables support n ≤ {MAX_INPUTS}, got {n}")));
        }
        let width = 1usize << n;
        if width < 8 && (word as usize) >> width != 0 {
            return Err(invalid(format!("word {word:#x} has more than {width} bits")));
        }
        Ok(TruthTable { n: n as u8, word })
    }

    fn mask(n: usize) -> u8 {
        if n == 3 {
            0xff
        } else {
            ((1u16 << (1 << n)) - 1) as u8
        }
    }

    pub fn constant(n: usize, value: bool) -> Self {
        TruthTable { n: n as u8, word: if value { Self::mask(n) } else { 0 } }
    }

    /// The projection onto `x_j`, `1 ≤ j ≤ n`.
    pub fn input(n: usize, j: usize) -> Self {
        assert!((1..=n).contains(&j), "input index out of range");
        let width = 1usize << n;
        let mut word = 0u8;
        for i in 0..width {
            if (i >> (n - j)) & 1 == 1 {
                word |= 1 << (width - 1 - i);
            }
        }
        TruthTable { n: n as u8, word }
    }

    pub fn from_bits(bits: &BitWord) -> Result<Self> {
        let width = bits.len();
        if !width.is_power_of_two() || width > 8 {
            return Err(invalid(format!("a truth table has 1, 2, 4 or 8 bits, got {width}")));
        }
        TruthTable::new(width.trailing_zeros() as usize, bits.to_index() as u8)
    }

    /// All `2^{2^n}` tables in lexicographic order of their words.
    pub fn all(n: usize) -> Vec<TruthTable> {
        (0..=Self::mask(n) as u16).map(|w| TruthTable { n: n as u8, word: w as u8 }).collect()
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The word as a number, bit 0 most significant.
    pub fn word(&self) -> u8 {
        self.word
    }

    pub fn width(&self) -> usize {
        1 << self.n
    }

    /// Output on the input with binary value `i`.
    pub fn output(&self, i: usize) -> bool {
        (self.word >> (self.width() - 1 - i)) & 1 == 1
    }

    pub fn bits(&self) -> BitWord {
        BitWord::from_index(self.word as u64, self.width())
    }

    /// Whether the word begins with `u`.
    pub fn starts_with(&self, u: &BitWord) -> bool {
        u.len() <= self.width() && u.iter().enumerate().all(|(i, b)| self.output(i) == b)
    }

    /// Hex digits of the word, most significant first.
    pub fn to_hex(&self) -> String {
        let digits = self.width().div_ceil(4);
        format!("{:0width$x}", self.word, width = digits)
    }

    pub fn complement(self) -> Self {
        TruthTable { n: self.n, word: !self.word & Self::mask(self.n()) }
    }

    pub fn and(self, other: Self) -> Self {
        TruthTable { n: self.n, word: self.word & other.word }
    }

    pub fn or(self, other: Self) -> Self {
        TruthTable { n: self.n, word: self.word | other.word }
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self.bits())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    Not,
    And,
    Or,
}

/// One gate; operands index wires (inputs, constants, then earlier gates).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gate {
    pub op: Op,
    pub a: usize,
    pub b: usize,
}

/// A straight-line circuit. Wires `0..n` are `x1..xn`; with free constants,
/// wires `n` and `n+1` are `0` and `1`; gate `k` drives the next wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitProgram {
    pub n: usize,
    pub free_constants: bool,
    pub gates: Vec<Gate>,
    pub output: usize,
}

impl CircuitProgram {
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    fn base_wires(n: usize, free_constants: bool) -> Vec<TruthTable> {
        let mut wires: Vec<TruthTable> = (1..=n).map(|j| TruthTable::input(n, j)).collect();
        if free_constants {
            wires.push(TruthTable::constant(n, false));
            wires.push(TruthTable::constant(n, true));
        }
        wires
    }

    pub fn eval(&self) -> Result<TruthTable> {
        let mut wires = Self::base_wires(self.n, self.free_constants);
        for (k, g) in self.gates.iter().enumerate() {
            let limit = wires.len();
            if g.a >= limit || (g.op != Op::Not && g.b >= limit) {
                return Err(invalid(format!("gate {k} reads a wire that is not yet defined")));
            }
            let v = match g.op {
                Op::Not => wires[g.a].complement(),
                Op::And => wires[g.a].and(wires[g.b]),
                Op::Or => wires[g.a].or(wires[g.b]),
            };
            wires.push(v);
        }
        wires.get(self.output).copied().ok_or_else(|| invalid("output wire out of range"))
    }
}

type FnSet = [u64; 4];

fn set_has(s: &FnSet, f: u8) -> bool {
    (s[(f >> 6) as usize] >> (f & 63)) & 1 == 1
}

fn set_add(s: &mut FnSet, f: u8) {
    s[(f >> 6) as usize] |= 1 << (f & 63);
}

fn set_members(s: &FnSet) -> Vec<u8> {
    (0..=255u8).filter(|&f| set_has(s, f)).collect()
}

/// A gate expressed on function values rather than wire indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct SemanticGate {
    op: Op,
    a: u8,
    b: u8,
    out: u8,
}

#[derive(Clone, Debug)]
struct StateNode {
    set: FnSet,
    parent: usize,
    gate: Option<SemanticGate>,
}

/// Minimal circuit sizes of every truth table reachable within `t_max`
/// gates, with one representative circuit per table.
#[derive(Clone, Debug)]
pub struct Census {
    n: usize,
    t_max: usize,
    free_constants: bool,
    size: HashMap<u8, usize>,
    layers: Vec<Vec<StateNode>>,
}

impl Census {
    /// Builds the census with constants as free wires.
    pub fn build(n: usize, t_max: usize, exec: Exec) -> Result<Census> {
        Census::build_with(n, t_max, true, exec)
    }

    pub fn build_with(n: usize, t_max: usize, free_constants: bool, exec: Exec) -> Result<Census> {
        if n > MAX_INPUTS {
            return Err(invalid(format!("circuit census supports n ≤ {MAX_INPUTS}, got {n}")));
        }
        let mask = TruthTable::mask(n);
        let mut start: FnSet = [0; 4];
        for w in CircuitProgram::base_wires(n, free_constants) {
            set_add(&mut start, w.word);
        }
        let mut size = HashMap::new();
        for f in set_members(&start) {
            size.insert(f, 0);
        }
        let mut layers = vec![vec![StateNode { set: start, parent: 0, gate: None }]];
        for t in 1..=t_max {
            let prev = layers.last().expect("layer 0 exists");
            let mut next: Vec<(FnSet, usize, SemanticGate)> = exec
                .flat_map(&prev.iter().enumerate().collect::<Vec<_>>(), |&(pi, node)| {
                    successors(&node.set, mask).into_iter().map(|(s, g)| (s, pi, g)).collect()
                });
            next.sort_unstable_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
            next.dedup_by(|x, y| x.0 == y.0);
            if next.len() > MAX_LAYER_STATES {
                return Err(invalid(format!("census for n={n} exceeds {MAX_LAYER_STATES} wire sets at t={t}")));
            }
            for (_, _, g) in &next {
                size.entry(g.out).or_insert(t);
            }
            layers.push(next.into_iter().map(|(set, parent, g)| StateNode { set, parent, gate: Some(g) }).collect());
        }
        Ok(Census { n, t_max, free_constants, size, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn free_constants(&self) -> bool {
        self.free_constants
    }

    /// Number of distinct wire sets at each layer (census metadata).
    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    fn check_t(&self, t: usize) -> Result<()> {
        if t > self.t_max {
            return Err(invalid(format!("census built to t={}, asked for t={t}", self.t_max)));
        }
        Ok(())
    }

    /// Minimal size, if the table is reachable within `t_max` gates.
    pub fn circuit_size(&self, table: TruthTable) -> Option<usize> {
        assert_eq!(table.n(), self.n, "table arity differs from census");
        self.size.get(&table.word).copied()
    }

    /// Tables of size `≤ t`, in lexicographic order.
    pub fn reached(&self, t: usize) -> Result<Vec<TruthTable>> {
        self.check_t(t)?;
        Ok(TruthTable::all(self.n).into_iter().filter(|f| self.size.get(&f.word).is_some_and(|&s| s <= t)).collect())
    }

    /// `N(n, t)`: one novel circuit per table of size `≤ t`.
    pub fn novel_count(&self, t: usize) -> Result<u64> {
        Ok(self.reached(t)?.len() as u64)
    }

    /// `N(n, t, u)`: novel circuits of size `≤ t` whose tables begin with `u`.
    pub fn conditional_count(&self, t: usize, u: &BitWord) -> Result<u64> {
        if u.len() > 1 << self.n {
            return Err(invalid(format!("condition {u} is longer than 2^{} bits", self.n)));
        }
        Ok(self.reached(t)?.iter().filter(|f| f.starts_with(u)).count() as u64)
    }

    /// Smallest `t` with `N(n, t) = 2^{2^n}`, if reached.
    pub fn saturation(&self) -> Option<usize> {
        let total = 1usize << (1 << self.n);
        (self.size.len() == total).then(|| *self.size.values().max().expect("nonempty"))
    }

    /// A minimal circuit for the table, reconstructed from the census.
    pub fn representative(&self, table: TruthTable) -> Option<CircuitProgram> {
        let t = self.circuit_size(table)?;
        let base = CircuitProgram::base_wires(self.n, self.free_constants);
        if t == 0 {
            let output = base.iter().position(|w| *w == table).expect("size-0 table is a wire");
            return Some(CircuitProgram { n: self.n, free_constants: self.free_constants, gates: vec![], output });
        }
        let mut idx = self.layers[t].iter().position(|s| {
            set_has(&s.set, table.word) && {
                let parent = &self.layers[t - 1][s.parent];
                !set_has(&parent.set, table.word)
            }
        })?;
        let mut chain = Vec::with_capacity(t);
        for layer in (1..=t).rev() {
            let node = &self.layers[layer][idx];
            chain.push(node.gate.expect("non-root node has a gate"));
            idx = node.parent;
        }
        chain.reverse();
        let mut wire_of: HashMap<u8, usize> = HashMap::new();
        for (i, w) in base.iter().enumerate() {
            wire_of.entry(w.word).or_insert(i);
        }
        let mut gates = Vec::with_capacity(t);
        for g in chain {
            let a = wire_of[&g.a];
            let b = if g.op == Op::Not { a } else { wire_of[&g.b] };
            wire_of.insert(g.out, base.len() + gates.len());
            gates.push(Gate { op: g.op, a, b });
        }
        let output = wire_of[&table.word];
        Some(CircuitProgram { n: self.n, free_constants: self.free_constants, gates, output })
    }
}

fn successors(set: &FnSet, mask: u8) -> Vec<(FnSet, SemanticGate)> {
    let members = set_members(set);
    let mut out = Vec::new();
    let mut push = |op: Op, a: u8, b: u8, f: u8| {
        if !set_has(set, f) {
            let mut s = *set;
            set_add(&mut s, f);
            out.push((s, SemanticGate { op, a, b, out: f }));
        }
    };
    for (i, &a) in members.iter().enumerate() {
        push(Op::Not, a, a, !a & mask);
        for &b in &members[i + 1..] {
            push(Op::And, a, b, a & b);
            push(Op::Or, a, b, a | b);
        }
    }
    out
}

/// `Σ_{k=0}^{20} 1/k!`, a rational lower bound on `e`.
pub fn e_lower_bound() -> RBig {
    let mut term = RBig::ONE;
    let mut sum = RBig::ONE;
    for k in 1..=20u32 {
        term /= RBig::from(k);
        sum += &term;
    }
    sum
}

/// Outcome of comparing `N(n,t)` with `(48·e·t)^t`.
#[derive(Clone, Debug)]
pub struct ShannonCheck {
    pub n: usize,
    pub t: usize,
    pub count: u64,
    /// `(48·e_lo·t)^t` with `e_lo < e`; passing against it implies passing
    /// against the true bound.
    pub certified_bound: RBig,
    pub pass: bool,
    /// `log2(bound / count)`, display only.
    pub margin_log2: String,
}

/// Requires `t > n`.
pub fn shannon_bound_check(census: &Census, t: usize) -> Result<ShannonCheck> {
    if t <= census.n {
        return Err(invalid(format!("the counting bound needs t > n (t={t}, n={})", census.n)));
    }
    let count = census.novel_count(t)?;
    let bound = (RBig::from(48u32 * t as u32) * e_lower_bound()).pow(t);
    let pass = RBig::from(count) <= bound;
    let margin_log2 =
        if count == 0 { "inf".to_string() } else { log2(&(&bound / RBig::from(count)), 24)?.to_decimal(4) };
    Ok(ShannonCheck { n: census.n, t, count, certified_bound: bound, pass, margin_log2 })
}

/// `α·2^n/n` as an exact rational; `None` (no limit) when `n = 0`.
pub fn gate_budget(n: usize, alpha: &RBig) -> Option<RBig> {
    (n > 0).then(|| alpha * RBig::from(1u32 << n) / RBig::from(n))
}

/// Largest integer size strictly below the budget.
pub fn max_size_below(budget: &RBig) -> Option<usize> {
    let c = budget.ceil();
    if c <= 0.into() {
        return None;
    }
    let c: usize = (&(c - dashu_int::IBig::ONE)).try_into().ok()?;
    Some(c)
}

/// Density comparison of tables below the gate budget against `2^{β 2^n}`.
#[derive(Clone, Debug)]
pub struct DensityCheck {
    pub n: usize,
    pub alpha: RBig,
    pub beta: RBig,
    /// Sizes `< α 2^n/n` allowed; `None` when no size fits.
    pub max_size: Option<usize>,
    pub count: u64,
    pub pass: bool,
}

/// `count ≥ 2^{β 2^n}`, decided as `count^den ≥ 2^{num·2^n}`.
pub fn density_check(census: &Census, alpha: &RBig, beta: &RBig) -> Result<DensityCheck> {
    if !(RBig::ZERO < *beta && beta < alpha && *alpha <= RBig::ONE) {
        return Err(invalid("density check needs 0 < β < α ≤ 1"));
    }
    let n = census.n;
    let max_size = match gate_budget(n, alpha) {
        None => Some(census.t_max),
        Some(b) => max_size_below(&b),
    };
    let count = match max_size {
        None => 0,
        Some(t) => {
            if t > census.t_max && gate_budget(n, alpha).is_some() {
                return Err(invalid(format!("census must reach t={t} for this budget")));
            }
            census.novel_count(t.min(census.t_max))?
        }
    };
    let den: usize = (&beta.denominator().clone()).try_into().expect("small denominator");
    let num: usize = (&beta.numerator().unsigned_abs()).try_into().expect("small numerator");
    let pass = UBig::from(count).pow(den) >= UBig::ONE << (num << n);
    Ok(DensityCheck { n, alpha: alpha.clone(), beta: beta.clone(), max_size, count, pass })
}

/// `(2^{s 2^n}/N)` per census block; a display helper for reports.
pub fn block_multiplier(s: &SExponent, n: usize, count: u64) -> String {
    if count == 0 {
        return "undefined".to_string();
    }
    format_decimal(&(s.q_pow(1 << n) / RBig::from(count)), 6)
}

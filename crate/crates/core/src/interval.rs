//! Certified dyadic intervals and a certified binary logarithm.
//!
//! All bounds are integers at a fixed binary scale; every rounding step moves
//! lower bounds down and upper bounds up, so each result encloses the true
//! value. No floating point is involved.

use std::cmp::Ordering;
use std::fmt;

use dashu_int::ops::{BitTest, PowerOfTwo, UnsignedAbs};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::error::{invalid, Result};
use crate::exact::format_decimal;

/// Guard bits carried through the series evaluation.
const GUARD: usize = 40;

pub(crate) fn floor_div(a: &IBig, b: &IBig) -> IBig {
    debug_assert!(*b > IBig::ZERO);
    let q = a / b;
    if &q * b > *a {
        q - IBig::ONE
    } else {
        q
    }
}

pub(crate) fn ceil_div(a: &IBig, b: &IBig) -> IBig {
    debug_assert!(*b > IBig::ZERO);
    let q = a / b;
    if &q * b < *a {
        q + IBig::ONE
    } else {
        q
    }
}

fn pow2_int(bits: usize) -> IBig {
    IBig::ONE << bits
}

/// The closed interval `[lo, hi] · 2^-bits`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    lo: IBig,
    hi: IBig,
    bits: usize,
}

impl Dyadic {
    pub fn new(lo: IBig, hi: IBig, bits: usize) -> Self {
        assert!(lo <= hi, "inverted interval");
        Dyadic { lo, hi, bits }
    }

    pub fn exact_int(v: i64, bits: usize) -> Self {
        let x = IBig::from(v) << bits;
        Dyadic { lo: x.clone(), hi: x, bits }
    }

    pub fn zero(bits: usize) -> Self {
        Dyadic::exact_int(0, bits)
    }

    /// The tightest enclosure of `[lo, hi]` at the given scale.
    pub fn enclose(lo: &RBig, hi: &RBig, bits: usize) -> Self {
        let s = RBig::from(pow2_int(bits));
        Dyadic::new((lo * &s).floor(), (hi * &s).ceil(), bits)
    }

    pub fn point(x: &RBig, bits: usize) -> Self {
        Dyadic::enclose(x, x, bits)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn lo_raw(&self) -> &IBig {
        &self.lo
    }

    pub fn hi_raw(&self) -> &IBig {
        &self.hi
    }

    pub fn lo(&self) -> RBig {
        RBig::from_parts(self.lo.clone(), UBig::ONE << self.bits)
    }

    pub fn hi(&self) -> RBig {
        RBig::from_parts(self.hi.clone(), UBig::ONE << self.bits)
    }

    pub fn width(&self) -> RBig {
        RBig::from_parts(&self.hi - &self.lo, UBig::ONE << self.bits)
    }

    pub fn midpoint(&self) -> RBig {
        RBig::from_parts(&self.hi + &self.lo, UBig::ONE << (self.bits + 1))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &RBig) -> bool {
        &self.lo() <= x && x <= &self.hi()
    }

    /// Rescale to `bits`; widening is exact, narrowing rounds outward.
    pub fn with_bits(&self, bits: usize) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let k = bits - self.bits;
                Dyadic::new(&self.lo << k, &self.hi << k, bits)
            }
            Ordering::Less => {
                let d = pow2_int(self.bits - bits);
                Dyadic::new(floor_div(&self.lo, &d), ceil_div(&self.hi, &d), bits)
            }
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let bits = self.bits.max(other.bits);
        let (a, b) = (self.with_bits(bits), other.with_bits(bits));
        Dyadic::new(a.lo + b.lo, a.hi + b.hi, bits)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic::new(-&self.hi, -&self.lo, self.bits)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul_int(&self, k: u64) -> Dyadic {
        let k = IBig::from(k);
        Dyadic::new(&self.lo * &k, &self.hi * &k, self.bits)
    }

    /// Multiply by an exact rational `r ≥ 0`.
    pub fn mul_rational(&self, r: &RBig) -> Dyadic {
        assert!(*r >= RBig::ZERO, "negative factor");
        let num = r.numerator();
        let den = IBig::from(r.denominator().clone());
        Dyadic::new(floor_div(&(&self.lo * num), &den), ceil_div(&(&self.hi * num), &den), self.bits)
    }

    /// Divide by a positive integer.
    pub fn div_int(&self, n: u64) -> Dyadic {
        assert!(n > 0, "division by zero");
        let n = IBig::from(n);
        Dyadic::new(floor_div(&self.lo, &n), ceil_div(&self.hi, &n), self.bits)
    }

    /// The smallest interval holding both.
    pub fn hull(&self, other: &Dyadic) -> Dyadic {
        let bits = self.bits.max(other.bits);
        let (a, b) = (self.with_bits(bits), other.with_bits(bits));
        Dyadic::new(a.lo.min(b.lo), a.hi.max(b.hi), bits)
    }

    /// Componentwise maximum: encloses `max(x, y)` for `x ∈ self`, `y ∈ other`.
    pub fn max(&self, other: &Dyadic) -> Dyadic {
        let bits = self.bits.max(other.bits);
        let (a, b) = (self.with_bits(bits), other.with_bits(bits));
        Dyadic::new(a.lo.max(b.lo), a.hi.max(b.hi), bits)
    }

    /// `Some(true)` if every point is `≥ x`, `Some(false)` if every point is
    /// `< x`, `None` if the interval straddles `x`.
    pub fn certainly_ge(&self, x: &RBig) -> Option<bool> {
        if &self.lo() >= x {
            Some(true)
        } else if &self.hi() < x {
            Some(false)
        } else {
            None
        }
    }

    /// Midpoint as a decimal string, for display.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.midpoint(), digits)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_decimal(&self.lo(), 6), format_decimal(&self.hi(), 6))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic{self}")
    }
}

/// `log2` of a nonnegative quantity, with zero mapped to `-∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Log2Value {
    NegInfinity,
    Finite(Dyadic),
}

impl Log2Value {
    pub fn of(x: &RBig, bits: usize) -> Result<Self> {
        if x.is_zero() {
            Ok(Log2Value::NegInfinity)
        } else {
            log2(x, bits).map(Log2Value::Finite)
        }
    }

    pub fn finite(&self) -> Option<&Dyadic> {
        match self {
            Log2Value::Finite(d) => Some(d),
            Log2Value::NegInfinity => None,
        }
    }

    /// Fixed-width decimal, or `-inf`.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            Log2Value::NegInfinity => "-inf".to_string(),
            Log2Value::Finite(d) => d.to_decimal(digits),
        }
    }
}

/// Bounds on `ln(a / 2^e)` at scale `2^g`, via `ln y = 2·atanh((y-1)/(y+1))`.
///
/// Requires `2^e ≤ a ≤ 2^{e+1}`, so the series argument is at most `1/3`.
fn ln_scaled(a: &UBig, e: usize, g: usize) -> (IBig, IBig) {
    let base = IBig::ONE << e;
    let a = IBig::from(a.clone());
    if a == base {
        return (IBig::ZERO, IBig::ZERO);
    }
    let one = pow2_int(g);
    let num = (&a - &base) << g;
    let den = &a + &base;
    let t_lo = floor_div(&num, &den);
    let t_hi = ceil_div(&num, &den);
    let t2_lo = floor_div(&(&t_lo * &t_lo), &one);
    let t2_hi = ceil_div(&(&t_hi * &t_hi), &one);

    let (mut p_lo, mut p_hi) = (t_lo, t_hi);
    let (mut s_lo, mut s_hi) = (IBig::ZERO, IBig::ZERO);
    let mut k: u64 = 0;
    loop {
        let div = IBig::from(2 * k + 1);
        s_lo += floor_div(&p_lo, &div);
        s_hi += ceil_div(&p_hi, &div);
        p_lo = floor_div(&(&p_lo * &t2_lo), &one);
        p_hi = ceil_div(&(&p_hi * &t2_hi), &one);
        k += 1;
        if p_hi <= IBig::ONE {
            break;
        }
    }
    // remaining terms sum to at most p/(1 - t²) ≤ (9/8)·p ≤ 2 ulp
    s_hi += IBig::from(2u8);
    (s_lo << 1, s_hi << 1)
}

/// Bounds on `log2 n` at scale `2^g` for an integer `n ≥ 1`.
fn log2_uint_scaled(n: &UBig, g: usize, ln2: &(IBig, IBig)) -> (IBig, IBig) {
    let len = n.bit_len();
    let e = len - 1;
    if n.is_power_of_two() {
        let x = IBig::from(e) << g;
        return (x.clone(), x);
    }
    let keep = g + 64;
    if len > keep {
        let shift = len - keep;
        let top = n >> shift;
        let (lo, _) = log2_uint_scaled(&top, g, ln2);
        let (_, hi) = log2_uint_scaled(&(top + UBig::ONE), g, ln2);
        let s = IBig::from(shift) << g;
        return (lo + &s, hi + s);
    }
    let (ln_lo, ln_hi) = ln_scaled(n, e, g);
    let frac_lo = floor_div(&(ln_lo << g), &ln2.1);
    let frac_hi = ceil_div(&(ln_hi << g), &ln2.0);
    let whole = IBig::from(e) << g;
    (&whole + frac_lo, whole + frac_hi)
}

/// A certified enclosure of `log2 x` for rational `x > 0`, with bounds at
/// scale `2^-bits`. Exact when `x` is a power of two.
pub fn log2(x: &RBig, bits: usize) -> Result<Dyadic> {
    if *x <= RBig::ZERO {
        return Err(invalid("log2 of a nonpositive number"));
    }
    let g = bits + GUARD;
    let ln2 = ln_scaled(&UBig::from(2u8), 0, g);
    let num = x.numerator().unsigned_abs();
    let den = x.denominator();
    let (n_lo, n_hi) = log2_uint_scaled(&num, g, &ln2);
    let (d_lo, d_hi) = log2_uint_scaled(den, g, &ln2);
    Ok(Dyadic::new(n_lo - d_hi, n_hi - d_lo, g).with_bits(bits))
}

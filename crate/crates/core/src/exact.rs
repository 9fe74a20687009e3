//! Exact rationals and the exponent parameter.

use std::fmt;
use std::str::FromStr;

use dashu_int::ops::UnsignedAbs;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::error::{invalid, GaleError, Result};
use crate::interval::{log2, Dyadic};

/// `x^n` by repeated squaring.
pub fn pow(x: &RBig, n: usize) -> RBig {
    x.pow(n)
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> RBig {
    let m = UBig::ONE << e.unsigned_abs() as usize;
    if e >= 0 {
        RBig::from(m)
    } else {
        RBig::from_parts(IBig::ONE, m)
    }
}

/// `num/den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: u64) -> RBig {
    assert!(den != 0, "zero denominator");
    RBig::from_parts(IBig::from(num), UBig::from(den))
}

/// Accepts `a/b`, a plain integer, or a finite decimal such as `0.125`.
pub fn parse_rational(text: &str) -> Result<RBig> {
    let t = text.trim();
    if let Some((int, frac)) = t.split_once('.') {
        if t.contains('/') {
            return Err(invalid(format!("cannot parse rational {text:?}")));
        }
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num = UBig::from_str(&digits).map_err(|_| invalid(format!("cannot parse rational {text:?}")))?;
        let den = UBig::from(10u8).pow(frac.len());
        let v = RBig::from_parts(IBig::from(num), den);
        return Ok(if neg { -v } else { v });
    }
    if let Some((_, den)) = t.split_once('/') {
        if UBig::from_str(den.trim()).map_or(true, |d| d == UBig::ZERO) {
            return Err(invalid(format!("cannot parse rational {text:?}")));
        }
    }
    RBig::from_str(t).map_err(|_| invalid(format!("cannot parse rational {text:?}")))
}

/// Always `num/den`, including for integers.
pub fn format_rational(x: &RBig) -> String {
    format!("{}/{}", x.numerator(), x.denominator())
}

/// Decimal rendering with `digits` fractional digits, rounded toward zero.
/// Display only.
pub fn format_decimal(x: &RBig, digits: usize) -> String {
    let neg = x.numerator() < &IBig::ZERO;
    let scale = UBig::from(10u8).pow(digits);
    let scaled = (x.numerator().clone() * IBig::from(scale.clone())).unsigned_abs() / x.denominator();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

pub fn floor_int(x: &RBig) -> IBig {
    x.floor()
}

pub fn ceil_int(x: &RBig) -> IBig {
    x.ceil()
}

/// The exponent `s`, carried as the exact rational `q = 2^s`.
///
/// Every formula is phrased in `q`; `s` itself only ever appears as a
/// certified dyadic interval for reporting.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SExponent {
    q: RBig,
}

impl SExponent {
    pub fn new(q: RBig) -> Result<Self> {
        if q <= RBig::ZERO {
            return Err(GaleError::ExponentOutOfRange { q: format_rational(&q), expected: "q > 0" });
        }
        Ok(SExponent { q })
    }

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        SExponent::new(ratio(num as i64, den))
    }

    /// `s = 1`, the martingale case.
    pub fn martingale() -> Self {
        SExponent { q: RBig::from(2u8) }
    }

    pub fn q(&self) -> &RBig {
        &self.q
    }

    /// `2^{s-1} = q/2`
    pub fn half_q(&self) -> RBig {
        &self.q / RBig::from(2u8)
    }

    /// `q^n = 2^{sn}`
    pub fn q_pow(&self, n: usize) -> RBig {
        pow(&self.q, n)
    }

    /// `s = log2 q` to within `2^-bits`.
    pub fn s_interval(&self, bits: usize) -> Dyadic {
        log2(&self.q, bits).expect("q > 0")
    }

    /// `1 ≤ q ≤ 2`, i.e. `s ∈ [0, 1]`.
    pub fn require_unit_range(&self) -> Result<()> {
        if self.q < RBig::ONE || self.q > RBig::from(2u8) {
            return Err(GaleError::ExponentOutOfRange { q: self.to_string(), expected: "1 ≤ q ≤ 2" });
        }
        Ok(())
    }

    /// `q < 2`, i.e. `s < 1`.
    pub fn require_below_one(&self) -> Result<()> {
        if self.q >= RBig::from(2u8) {
            return Err(GaleError::ExponentOutOfRange { q: self.to_string(), expected: "q < 2" });
        }
        Ok(())
    }
}

impl fmt::Display for SExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.q))
    }
}

impl fmt::Debug for SExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={self}")
    }
}

impl FromStr for SExponent {
    type Err = GaleError;

    fn from_str(s: &str) -> Result<Self> {
        SExponent::new(parse_rational(s)?)
    }
}

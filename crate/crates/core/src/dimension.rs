//! Entropy, success probes and finite-horizon dimension estimates.
//!
//! Every asserted comparison goes through certified intervals or exact
//! rationals. The infinite limits of the theory are replaced by a finite
//! depth and a capital threshold, and each result carries both.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashu_ratio::RBig;

use crate::error::{invalid, GaleError, Result};
use crate::exact::{format_decimal, format_rational, pow2, ratio, SExponent};
use crate::gale::{exact_ge_pow2, Gale, GaleRule, PathWalk};
use crate::interval::{log2, Dyadic, Log2Value};
use crate::par::Exec;
use crate::source::{SequenceSource, Source};
use crate::trace::GaleValueTrace;
use crate::zoo::{BlockAlphabet, BlockGale, FrequencyGale, SingletonGale, TrivialGale};

pub const DEFAULT_THRESHOLD_LOG2: i64 = 20;
pub const DEFAULT_DEPTH: usize = 30_000;

/// Scale used for logged capital along walks.
pub const WALK_BITS: usize = 48;

/// Probes issued per round of the grid search.
const PROBES_PER_ROUND: usize = 8;

/// A certified enclosure whose width is at most `precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyValue {
    pub value: Dyadic,
    pub precision: RBig,
}

impl EntropyValue {
    pub fn lo(&self) -> RBig {
        self.value.lo()
    }

    pub fn hi(&self) -> RBig {
        self.value.hi()
    }

    pub fn contains(&self, x: &RBig) -> bool {
        self.value.contains(x)
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_exact()
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        self.value.to_decimal(digits)
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Encloses `x · log2(1/y)` for `x ≥ 0`, `y > 0`.
fn cross_term(x: &RBig, y: &RBig, bits: usize) -> Result<Dyadic> {
    if x.is_zero() {
        return Ok(Dyadic::zero(bits));
    }
    Ok(log2(y, bits)?.mul_rational(x).neg())
}

fn refine(precision: &RBig, f: impl Fn(usize) -> Result<Dyadic>) -> Result<EntropyValue> {
    if *precision <= RBig::ZERO {
        return Err(invalid("precision must be positive"));
    }
    let mut bits = 24;
    loop {
        let value = f(bits)?;
        if value.width() <= *precision {
            return Ok(EntropyValue { value, precision: precision.clone() });
        }
        if bits > 1 << 14 {
            return Err(invalid(format!("precision {precision} is out of reach")));
        }
        bits *= 2;
    }
}

fn unit(x: &RBig, name: &str) -> Result<()> {
    if *x < RBig::ZERO || *x > RBig::ONE {
        return Err(invalid(format!("{name} = {x} must lie in [0, 1]")));
    }
    Ok(())
}

/// `H(α) = α log 1/α + (1-α) log 1/(1-α)`, with `H(0) = H(1) = 0`.
pub fn entropy(alpha: &RBig, precision: &RBig) -> Result<EntropyValue> {
    unit(alpha, "α")?;
    let beta = RBig::ONE - alpha;
    refine(precision, |bits| {
        let a = if alpha.is_zero() { Dyadic::zero(bits) } else { cross_term(alpha, alpha, bits)? };
        let b = if beta.is_zero() { Dyadic::zero(bits) } else { cross_term(&beta, &beta, bits)? };
        Ok(a.add(&b))
    })
}

/// `h(x, y) = x log 1/y + (1-x) log 1/(1-y)` for `0 < y < 1`.
pub fn weighted_entropy(x: &RBig, y: &RBig, precision: &RBig) -> Result<EntropyValue> {
    unit(x, "x")?;
    if *y <= RBig::ZERO || *y >= RBig::ONE {
        return Err(invalid(format!("y = {y} must lie in (0, 1)")));
    }
    let (x1, y1) = (RBig::ONE - x, RBig::ONE - y);
    refine(precision, |bits| Ok(cross_term(x, y, bits)?.add(&cross_term(&x1, &y1, bits)?)))
}

/// Exact one-frequency of a prefix, sampled at powers of two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreqStats {
    pub n: usize,
    pub ones: usize,
    pub freq: RBig,
    /// `(k, freq of the length-k prefix)` for `k = 1, 2, 4, …` and `k = n`.
    pub profile: Vec<(usize, RBig)>,
}

pub fn freq_stats(source: &dyn SequenceSource, n: usize) -> Result<FreqStats> {
    if n == 0 {
        return Err(invalid("frequency of the empty prefix is undefined"));
    }
    let mut ones = 0usize;
    let mut profile = Vec::new();
    for i in 0..n {
        ones += usize::from(source.bit(i).ok_or(GaleError::SourceExhausted(i))?);
        let k = i + 1;
        if k.is_power_of_two() || k == n {
            profile.push((k, ratio(ones as i64, k as u64)));
        }
    }
    Ok(FreqStats { n, ones, freq: ratio(ones as i64, n as u64), profile })
}

/// `max_{n ∈ [depth/2, depth]} log2 d(S[0..n-1]) / n`, the finite stand-in
/// for the limsup exponent of increase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentOfIncrease {
    pub depth: usize,
    pub window: (usize, usize),
    /// `-inf` when the capital is zero throughout the window.
    pub estimate: Log2Value,
    pub argmax: Option<usize>,
}

pub fn exponent_of_increase(d: &dyn GaleRule, source: &dyn SequenceSource, depth: usize) -> Result<ExponentOfIncrease> {
    if depth == 0 {
        return Err(invalid("exponent of increase needs depth ≥ 1"));
    }
    let window = ((depth / 2).max(1), depth);
    let mut walk = PathWalk::new(d, WALK_BITS)?;
    let log_base = if walk.is_zero() { None } else { Some(log2(walk.base(), WALK_BITS)?) };
    let mut best: Option<(Dyadic, usize)> = None;
    for i in 0..depth {
        walk.push(source.bit(i).ok_or(GaleError::SourceExhausted(i))?)?;
        let n = i + 1;
        if n < window.0 {
            continue;
        }
        let (Some(rel), Some(base)) = (walk.log_relative(), &log_base) else { continue };
        let v = base.add(rel).div_int(n as u64);
        best = Some(match best {
            None => (v, n),
            Some((b, bn)) => {
                let arg = if v.midpoint() > b.midpoint() { n } else { bn };
                (b.max(&v), arg)
            }
        });
    }
    Ok(match best {
        None => ExponentOfIncrease { depth, window, estimate: Log2Value::NegInfinity, argmax: None },
        Some((v, n)) => ExponentOfIncrease { depth, window, estimate: Log2Value::Finite(v), argmax: Some(n) },
    })
}

/// What the capital is compared against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Threshold {
    /// `d(w) ≥ 2^t · d(λ)`
    #[default]
    Relative,
    /// `d(w) ≥ 2^t`
    Absolute,
}

#[derive(Clone, Debug)]
pub struct ProbeConfig {
    pub threshold_log2: RBig,
    pub depth: usize,
    pub threshold: Threshold,
    /// Stop at the first crossing; the maximum then covers only the walked prefix.
    pub stop_at_crossing: bool,
    pub with_trace: bool,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            threshold_log2: RBig::from(DEFAULT_THRESHOLD_LOG2),
            depth: DEFAULT_DEPTH,
            threshold: Threshold::Relative,
            stop_at_crossing: false,
            with_trace: false,
        }
    }
}

/// Finite evidence of success: the capital reached the threshold by `depth`.
#[derive(Clone, Debug)]
pub struct ProbeResult {
    pub succeeded: bool,
    pub first_crossing_depth: Option<usize>,
    /// Maximum of `log2 d` over the walked prefixes.
    pub max_log2_value: Log2Value,
    pub walked: usize,
    pub threshold_log2: RBig,
    pub depth: usize,
    pub threshold: Threshold,
    pub trace: Option<GaleValueTrace>,
}

pub fn success_probe(d: &dyn GaleRule, source: &dyn SequenceSource, cfg: &ProbeConfig) -> Result<ProbeResult> {
    if cfg.threshold_log2 <= RBig::ZERO || cfg.depth == 0 {
        return Err(invalid("probe threshold and depth must be positive"));
    }
    let t = &cfg.threshold_log2;
    let mut walk = PathWalk::new(d, WALK_BITS)?;
    let log_base = if walk.is_zero() { None } else { Some(log2(walk.base(), WALK_BITS)?) };
    let crossed = |walk: &PathWalk<'_>| -> bool {
        match cfg.threshold {
            Threshold::Relative => walk.relative_at_least(t),
            Threshold::Absolute => {
                let (Some(rel), Some(base)) = (walk.log_relative(), &log_base) else { return false };
                match base.add(rel).certainly_ge(t) {
                    Some(ans) => ans,
                    None => exact_ge_pow2(&(walk.exact_relative() * walk.base()), t),
                }
            }
        }
    };
    let mut max_rel: Option<Dyadic> = walk.log_relative().cloned();
    let mut first = None;
    for i in 0..cfg.depth {
        walk.push(source.bit(i).ok_or(GaleError::SourceExhausted(i))?)?;
        if let Some(r) = walk.log_relative() {
            max_rel = Some(match max_rel {
                None => r.clone(),
                Some(m) => m.max(r),
            });
        }
        if first.is_none() && crossed(&walk) {
            first = Some(i + 1);
            if cfg.stop_at_crossing {
                break;
            }
        }
    }
    let max_log2_value = match (max_rel, log_base) {
        (Some(m), Some(b)) => Log2Value::Finite(b.add(&m)),
        _ => Log2Value::NegInfinity,
    };
    let trace = if cfg.with_trace { Some(GaleValueTrace::along(d, walk.word())?) } else { None };
    Ok(ProbeResult {
        succeeded: first.is_some(),
        first_crossing_depth: first,
        max_log2_value,
        walked: walk.len(),
        threshold_log2: t.clone(),
        depth: cfg.depth,
        threshold: cfg.threshold,
        trace,
    })
}

/// A gale for each exponent, expected to succeed more easily as `s` grows.
pub trait GaleFamily: Send + Sync + fmt::Debug {
    fn at(&self, s: &SExponent) -> Result<Gale>;

    fn label(&self) -> String;
}

/// Frequency gales with a fixed bias `y ∈ (0, 1)`.
#[derive(Clone, Debug)]
pub struct FrequencyFamily {
    y: RBig,
}

impl FrequencyFamily {
    pub fn new(y: RBig) -> Result<Self> {
        if y <= RBig::ZERO || y >= RBig::ONE {
            return Err(invalid(format!("frequency family bias y = {y} must lie in (0, 1)")));
        }
        Ok(FrequencyFamily { y })
    }
}

impl GaleFamily for FrequencyFamily {
    fn at(&self, s: &SExponent) -> Result<Gale> {
        Ok(Arc::new(FrequencyGale::with_bias(s.clone(), self.y.clone())))
    }

    fn label(&self) -> String {
        format!("frequency(y={})", self.y)
    }
}

#[derive(Clone, Debug)]
pub struct BlockFamily {
    alphabet: BlockAlphabet,
}

impl BlockFamily {
    pub fn new(alphabet: BlockAlphabet) -> Self {
        BlockFamily { alphabet }
    }
}

impl GaleFamily for BlockFamily {
    fn at(&self, s: &SExponent) -> Result<Gale> {
        Ok(Arc::new(BlockGale::new(s.clone(), self.alphabet.clone())))
    }

    fn label(&self) -> String {
        format!("block(l={}, |S|={})", self.alphabet.l(), self.alphabet.size())
    }
}

/// Singleton gales on one target sequence.
#[derive(Clone, Debug)]
pub struct TargetFamily {
    target: Source,
}

impl TargetFamily {
    pub fn new(target: Source) -> Self {
        TargetFamily { target }
    }
}

impl GaleFamily for TargetFamily {
    fn at(&self, s: &SExponent) -> Result<Gale> {
        Ok(Arc::new(SingletonGale::new(s.clone(), self.target.clone())))
    }

    fn label(&self) -> String {
        format!("singleton({})", self.target.label())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialFamily;

impl GaleFamily for TrivialFamily {
    fn at(&self, s: &SExponent) -> Result<Gale> {
        Ok(Arc::new(TrivialGale::new(s.clone())))
    }

    fn label(&self) -> String {
        "trivial".to_string()
    }
}

/// Pointwise sum of the members at each exponent.
#[derive(Clone, Debug)]
pub struct SumFamily {
    members: Vec<Arc<dyn GaleFamily>>,
}

impl SumFamily {
    pub fn new(members: Vec<Arc<dyn GaleFamily>>) -> Result<Self> {
        if members.is_empty() {
            return Err(invalid("sum family needs at least one member"));
        }
        Ok(SumFamily { members })
    }
}

impl GaleFamily for SumFamily {
    fn at(&self, s: &SExponent) -> Result<Gale> {
        let gales = self.members.iter().map(|m| m.at(s)).collect::<Result<Vec<_>>>()?;
        let n = gales.len();
        Ok(Arc::new(crate::gale::transform::combine(gales, vec![RBig::ONE; n])?))
    }

    fn label(&self) -> String {
        let names: Vec<String> = self.members.iter().map(|m| m.label()).collect();
        format!("sum({})", names.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    /// Least grid exponent whose gale clears the probe on every source.
    #[default]
    ThresholdSearch,
    /// `1 - λ_d` for the family's martingale; a heuristic point estimate.
    ExponentOfIncrease,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ThresholdSearch => "threshold-search",
            Method::ExponentOfIncrease => "exponent-of-increase",
        })
    }
}

#[derive(Clone, Debug)]
pub struct EstimateConfig {
    pub depth: usize,
    pub threshold_log2: RBig,
    pub threshold: Threshold,
    pub precision: RBig,
    pub method: Method,
    pub exec: Exec,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        EstimateConfig {
            depth: DEFAULT_DEPTH,
            threshold_log2: RBig::from(DEFAULT_THRESHOLD_LOG2),
            threshold: Threshold::Relative,
            precision: ratio(1, 50),
            method: Method::ThresholdSearch,
            exec: Exec::default(),
        }
    }
}

/// Outcome at one grid point `q = k / 2^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridProbe {
    pub q: RBig,
    pub s: Dyadic,
    pub succeeded: bool,
    /// First crossing per source; `None` where the probe failed.
    pub crossings: Vec<Option<usize>>,
}

#[derive(Clone, Debug)]
pub struct DimensionEstimate {
    pub method: Method,
    /// A dyadic rational.
    pub lower: RBig,
    /// `None` when no grid exponent up to `s = 2` succeeds.
    pub upper: Option<RBig>,
    pub depth: usize,
    pub threshold_log2: RBig,
    /// Grid is `q = k / 2^m` for `2^m ≤ k ≤ 2^{m+2}`.
    pub grid_exponent: u32,
    /// Probed points in increasing `q`.
    pub probes: Vec<GridProbe>,
    /// Successes followed by failures at larger `q`.
    pub anomalies: Vec<String>,
}

impl DimensionEstimate {
    pub fn width(&self) -> Option<RBig> {
        self.upper.as_ref().map(|u| u - &self.lower)
    }

    pub fn contains(&self, x: &RBig) -> bool {
        &self.lower <= x && self.upper.as_ref().is_none_or(|u| x <= u)
    }

    /// Fails with the first anomaly, if any.
    pub fn require_monotone(&self) -> Result<&Self> {
        match self.anomalies.first() {
            None => Ok(self),
            Some(a) => Err(GaleError::GridAnomaly(a.clone())),
        }
    }

    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            format_decimal(&self.lower, digits),
            self.upper.as_ref().map_or("none".to_string(), |u| format_decimal(u, digits)),
        )
    }
}

/// Smallest `m` with `3·2^{-m-1} ≤ 15/16 · precision`; consecutive grid
/// exponents then differ by at most `2^{-m}/ln 2 < 3·2^{-m-1}`.
pub fn grid_exponent(precision: &RBig) -> Result<u32> {
    if *precision <= RBig::ZERO {
        return Err(invalid("precision must be positive"));
    }
    let target = precision * ratio(15, 16);
    (1..=40u32)
        .find(|&m| ratio(3, 1) * pow2(-(m as i64) - 1) <= target)
        .ok_or_else(|| invalid(format!("precision {precision} is finer than the grid supports")))
}

fn probe_point(family: &dyn GaleFamily, sources: &[Source], k: u64, m: u32, cfg: &EstimateConfig) -> Result<GridProbe> {
    let q = RBig::from_parts(k.into(), dashu_int::UBig::ONE << m as usize);
    let s = SExponent::new(q.clone())?;
    let d = family.at(&s)?;
    let pc = ProbeConfig {
        threshold_log2: cfg.threshold_log2.clone(),
        depth: cfg.depth,
        threshold: cfg.threshold,
        stop_at_crossing: true,
        with_trace: false,
    };
    let mut crossings = Vec::with_capacity(sources.len());
    for src in sources {
        let r = success_probe(d.as_ref(), src.as_ref(), &pc)?;
        crossings.push(r.first_crossing_depth);
        if !r.succeeded {
            break;
        }
    }
    let succeeded = crossings.len() == sources.len() && crossings.iter().all(Option::is_some);
    Ok(GridProbe { s: s.s_interval(WALK_BITS), q, succeeded, crossings })
}

/// Finite-horizon dimension of the set of `sources` as seen by `family`.
pub fn estimate_dimension(
    family: &dyn GaleFamily,
    sources: &[Source],
    cfg: &EstimateConfig,
) -> Result<DimensionEstimate> {
    if sources.is_empty() {
        return Err(invalid("estimate needs at least one source"));
    }
    match cfg.method {
        Method::ThresholdSearch => threshold_search(family, sources, cfg),
        Method::ExponentOfIncrease => increase_estimate(family, sources, cfg),
    }
}

fn threshold_search(family: &dyn GaleFamily, sources: &[Source], cfg: &EstimateConfig) -> Result<DimensionEstimate> {
    let m = grid_exponent(&cfg.precision)?;
    let (k_min, k_max) = (1u64 << m, 1u64 << (m + 2));
    let mut seen: BTreeMap<u64, GridProbe> = BTreeMap::new();
    let mut anomalies = Vec::new();
    let (mut lo, mut hi) = (k_min, k_max);
    while lo <= hi {
        let span = hi - lo + 1;
        let points: Vec<u64> = if span as usize <= PROBES_PER_ROUND {
            (lo..=hi).collect()
        } else {
            let p = PROBES_PER_ROUND as u64;
            (1..=p).map(|i| lo + i * span / (p + 1)).collect()
        };
        let results = cfg.exec.map(&points, |&k| probe_point(family, sources, k, m, cfg));
        for (k, r) in points.iter().zip(results) {
            seen.insert(*k, r?);
        }
        let succ = seen.iter().find(|(_, p)| p.succeeded).map(|(&k, _)| k);
        let fail = seen.iter().rev().filter(|(k, _)| succ.is_none_or(|s| **k < s)).find(|(_, p)| !p.succeeded);
        lo = fail.map_or(k_min, |(&k, _)| k + 1);
        hi = succ.map_or(k_max, |k| k - 1);
        if succ.is_none() && fail.is_some_and(|(&k, _)| k == k_max) {
            break;
        }
    }
    let succ = seen.iter().find(|(_, p)| p.succeeded).map(|(&k, _)| k);
    if let Some(s) = succ {
        for p in seen.range(s + 1..).map(|(_, p)| p).filter(|p| !p.succeeded) {
            anomalies.push(format!(
                "success at q={} but failure at q={}",
                format_rational(&seen[&s].q),
                format_rational(&p.q)
            ));
        }
    }
    let fail = seen.iter().rev().filter(|(k, _)| succ.is_none_or(|s| **k < s)).find(|(_, p)| !p.succeeded);
    let lower = fail.map_or(RBig::ZERO, |(_, p)| p.s.lo());
    let upper = succ.map(|k| seen[&k].s.hi());
    Ok(DimensionEstimate {
        method: Method::ThresholdSearch,
        lower,
        upper,
        depth: cfg.depth,
        threshold_log2: cfg.threshold_log2.clone(),
        grid_exponent: m,
        probes: seen.into_values().collect(),
        anomalies,
    })
}

fn increase_estimate(family: &dyn GaleFamily, sources: &[Source], cfg: &EstimateConfig) -> Result<DimensionEstimate> {
    let d = family.at(&SExponent::martingale())?;
    let per = cfg.exec.map(sources, |src| exponent_of_increase(d.as_ref(), src.as_ref(), cfg.depth));
    let mut point: Option<Dyadic> = None;
    for (src, e) in sources.iter().zip(per) {
        let e = e?;
        let lambda = e.estimate.finite().ok_or_else(|| {
            invalid(format!("{} vanishes on {}; the exponent of increase is -inf", d.label(), src.label()))
        })?;
        let dim = Dyadic::exact_int(1, lambda.bits()).sub(lambda);
        point = Some(match point {
            None => dim,
            Some(p) => p.max(&dim),
        });
    }
    let point = point.expect("at least one source");
    Ok(DimensionEstimate {
        method: Method::ExponentOfIncrease,
        lower: point.lo(),
        upper: Some(point.hi()),
        depth: cfg.depth,
        threshold_log2: cfg.threshold_log2.clone(),
        grid_exponent: 0,
        probes: Vec::new(),
        anomalies: Vec::new(),
    })
}

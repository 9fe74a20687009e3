use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use galelab::circuit::{shannon_bound_check, Census};
use galelab::describe::ExperimentSpec;
use galelab::diag::run_constructor;
use galelab::dimension::{estimate_dimension, DimensionEstimate};
use galelab::exact::{format_decimal, format_rational};
use galelab::gale::checks::{validate_with, MAX_VALIDATE_DEPTH};
use galelab::gale::suite::{run_property_suite, SuiteConfig, Tally};
use galelab::source::{Explicit, Source};
use galelab::trace::GaleValueTrace;
use galelab::{Exec, GaleError, GaleRule};

use crate::{CheckArgs, CircuitArgs, Common, Failure, Verdict};

const DEFAULT_VALIDATE_DEPTH: usize = 10;
const DEFAULT_TRACE_LEN: usize = 20;

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn load(c: &Common) -> Result<ExperimentSpec, Failure> {
    Ok(ExperimentSpec::from_file(&c.spec)?)
}

fn out_dir(c: &Common, spec: &ExperimentSpec) -> Option<PathBuf> {
    c.out.clone().or_else(|| spec.output.dir.as_ref().map(|d| spec.base_dir.join(d)))
}

/// Writes `csv` to `dir/name`, or to stdout without a directory; the report
/// goes to whichever stream the CSV does not use.
fn emit(dir: Option<&Path>, name: &str, csv: &[u8], report: &[String]) -> Result<(), Failure> {
    match dir {
        Some(d) => {
            fs::create_dir_all(d)?;
            let path = d.join(name);
            fs::write(&path, csv)?;
            let mut out = io::stdout().lock();
            for line in report {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "wrote {}", path.display())?;
        }
        None => {
            io::stdout().lock().write_all(csv)?;
            let mut err = io::stderr().lock();
            for line in report {
                writeln!(err, "{line}")?;
            }
        }
    }
    Ok(())
}

pub fn validate(c: &Common) -> Result<Verdict, Failure> {
    let spec = load(c)?;
    let ex = exec(c.sequential);
    let d = spec.build_gale(ex)?;
    let asked = c.depth.or(spec.probe.validate_depth).unwrap_or(DEFAULT_VALIDATE_DEPTH);
    if asked > MAX_VALIDATE_DEPTH {
        return Err(
            GaleError::InvalidParameter(format!("validation depth {asked} exceeds {MAX_VALIDATE_DEPTH}")).into()
        );
    }
    // children of the deepest node must be defined
    let depth = match d.max_len() {
        Some(0) => {
            return Err(GaleError::InvalidParameter("rule is defined only at λ".to_string()).into());
        }
        Some(m) => asked.min(m - 1),
        None => asked,
    };
    let report = validate_with(d.as_ref(), depth, d.kind(), ex);
    println!("gale: {}", d.label());
    println!("kind: {}", report.kind);
    println!("q: {}", report.q);
    if depth < asked {
        println!("depth: {depth} (rule defined up to length {})", depth + 1);
    } else {
        println!("depth: {depth}");
    }
    println!("nodes: {}", report.nodes_checked);
    match &report.first_violation {
        None => {
            println!("result: valid");
            Ok(Verdict::Ok)
        }
        Some((w, v)) => {
            let shown = if w.is_empty() { "λ".to_string() } else { w.to_string() };
            println!("result: {} violations", report.violations);
            println!("first violation: w = {shown}: {v}");
            Ok(Verdict::Violation)
        }
    }
}

pub fn trace(c: &Common) -> Result<Verdict, Failure> {
    let spec = load(c)?;
    let ex = exec(c.sequential);
    let len = c.depth.or(spec.probe.trace_len).unwrap_or(DEFAULT_TRACE_LEN);
    let (trace, origin) = match spec.build_constructor(ex)? {
        Some(delta) => {
            let own = spec.gale.as_ref().map(|g| g.build(&spec.base_dir, ex)).transpose()?;
            let observer: &dyn GaleRule = match &own {
                Some(g) => g.as_ref(),
                None => delta.gale(),
            };
            let run = run_constructor(delta.as_ref(), len, Some(observer))?;
            (run.trace.expect("observer given"), format!("constructor {}", delta.label()))
        }
        None => {
            let d = spec.build_gale(ex)?;
            let src = spec
                .build_source()?
                .ok_or_else(|| GaleError::Description("trace needs [source] or [constructor]".into()))?;
            (GaleValueTrace::along(d.as_ref(), &src.prefix(len)?)?, "source".to_string())
        }
    };
    let report = vec![format!("gale: {}", trace.label), format!("along: {origin}"), format!("rows: {}", trace.len())];
    emit(out_dir(c, &spec).as_deref(), "trace.csv", trace.to_csv_string().as_bytes(), &report)?;
    Ok(Verdict::Ok)
}

fn estimate_csv(est: &DimensionEstimate) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["q", "s_lo", "s_hi", "succeeded", "first_crossings"])?;
    for p in &est.probes {
        let crossings: Vec<String> =
            p.crossings.iter().map(|c| c.map_or("none".to_string(), |d| d.to_string())).collect();
        w.write_record([
            format_rational(&p.q),
            format_decimal(&p.s.lo(), 6),
            format_decimal(&p.s.hi(), 6),
            p.succeeded.to_string(),
            crossings.join(";"),
        ])?;
    }
    w.into_inner().map_err(|e| Failure::Io(e.to_string()))
}

pub fn estimate(c: &Common) -> Result<Verdict, Failure> {
    let spec = load(c)?;
    let ex = exec(c.sequential);
    let mut cfg = spec.probe.estimate_config(ex)?;
    if let Some(d) = c.depth {
        cfg.depth = d;
    }
    if let Some(t) = c.threshold_log2 {
        cfg.threshold_log2 = t.into();
    }
    if let Some(p) = &c.precision {
        cfg.precision = galelab::exact::parse_rational(p)?;
    }
    let (source, origin): (Source, String) = match (spec.build_source()?, spec.build_constructor(ex)?) {
        (Some(s), _) => (s, "source".to_string()),
        (None, Some(delta)) => {
            let run = run_constructor(delta.as_ref(), cfg.depth, None)?;
            (Arc::new(Explicit::new(run.prefix)), format!("constructor {}", delta.label()))
        }
        (None, None) => return Err(GaleError::Description("estimate needs [source] or [constructor]".into()).into()),
    };
    let family = spec.build_family(Some(&source))?;
    let est = estimate_dimension(family.as_ref(), &[source], &cfg)?;
    let (lo, hi) = est.to_decimal(6);
    let mut report = vec![
        format!("family: {}", family.label()),
        format!("on: {origin}"),
        format!("method: {}", est.method),
        format!("depth: {}", est.depth),
        format!("threshold_log2: {}", format_rational(&est.threshold_log2)),
        format!("grid: q = k/2^{}", est.grid_exponent),
        format!("bracket: [{lo}, {hi}]"),
        format!(
            "bracket_exact: [{}, {}]",
            format_rational(&est.lower),
            est.upper.as_ref().map_or("none".to_string(), format_rational)
        ),
    ];
    for a in &est.anomalies {
        report.push(format!("anomaly: {a}"));
    }
    emit(out_dir(c, &spec).as_deref(), "estimate.csv", &estimate_csv(&est)?, &report)?;
    Ok(if est.anomalies.is_empty() { Verdict::Ok } else { Verdict::Violation })
}

pub fn circuits(c: &CircuitArgs) -> Result<Verdict, Failure> {
    let census = Census::build(c.n, c.t_max, exec(c.sequential))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "N", "counting_bound", "margin_log2"])?;
    let mut all_pass = true;
    for t in 0..=c.t_max {
        let count = census.novel_count(t)?;
        let (verdict, margin) = if t > c.n {
            let b = shannon_bound_check(&census, t)?;
            all_pass &= b.pass;
            ((if b.pass { "pass" } else { "fail" }).to_string(), b.margin_log2)
        } else {
            ("n/a".to_string(), String::new())
        };
        w.write_record([t.to_string(), count.to_string(), verdict, margin])?;
    }
    let csv = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    let report = vec![
        format!("n: {}", c.n),
        format!("t_max: {}", c.t_max),
        format!("tables: {} of {}", census.novel_count(c.t_max)?, 1u64 << (1 << c.n)),
        format!("saturation: {}", census.saturation().map_or("not reached".to_string(), |t| format!("t = {t}"))),
        format!("counting bound: {}", if all_pass { "pass" } else { "fail" }),
    ];
    emit(c.out.as_deref(), &format!("census_n{}.csv", c.n), &csv, &report)?;
    Ok(if all_pass { Verdict::Ok } else { Verdict::Violation })
}

pub fn check(c: &CheckArgs) -> Result<Verdict, Failure> {
    let cfg =
        SuiteConfig { tables: c.tables, depth: c.depth, seed: c.seed, exec: exec(c.sequential), ..Default::default() };
    let r = run_property_suite(&cfg)?;
    println!("tables: {} at depth {} (seed {})", r.tables, c.depth, c.seed);
    let rows: [(&str, &Tally); 7] = [
        ("validation", &r.validation),
        ("kraft, maximal antichains", &r.kraft_exhaustive),
        ("kraft, explicit antichains", &r.kraft_explicit),
        ("kraft, random antichains", &r.kraft_random),
        ("exceeder counts", &r.exceeders),
        ("witness paths", &r.witnesses),
        ("slack bound", &r.slack),
    ];
    for (name, t) in rows {
        println!("{name}: {} checks, {} failures", t.checks, t.failures);
        if let Some(f) = &t.first_failure {
            println!("  first failure: {f}");
        }
    }
    println!("result: {}", if r.clean() { "clean" } else { "failures" });
    Ok(if r.clean() { Verdict::Ok } else { Verdict::Violation })
}

//! Versioned TOML experiment documents and the objects they build.
//!
//! Rationals are written as strings (`"3/2"`, `"0.25"`). Relative paths are
//! resolved against the document's directory.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use dashu_ratio::RBig;
use serde::{Deserialize, Serialize};

use crate::bits::PrefixSet;
use crate::diag::{BlockConstructor, CircuitConstructor, Constructor, FrequencyConstructor, FrequencyPlan, MinBranch};
use crate::dimension::{
    BlockFamily, EstimateConfig, FrequencyFamily, GaleFamily, Method, ProbeConfig, TargetFamily, TrivialFamily,
    DEFAULT_DEPTH, DEFAULT_THRESHOLD_LOG2,
};
use crate::error::{GaleError, Result};
use crate::exact::{parse_rational, SExponent};
use crate::gale::table::TableGale;
use crate::gale::{Gale, Kind};
use crate::par::Exec;
use crate::source::{Champernowne, Explicit, Indicator, Periodic, Source};
use crate::zoo::{
    BlockAlphabet, BlockGale, CircuitGale, CoverGale, CoverSumGale, FrequencyGale, SingletonGale, TrivialGale,
};

pub const EXPERIMENT_SCHEMA: &str = "galelab.experiment/1";

fn desc_err(msg: impl Into<String>) -> GaleError {
    GaleError::Description(msg.into())
}

fn exponent(q: &str) -> Result<SExponent> {
    q.parse()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GaleDesc {
    Trivial {
        q: String,
    },
    Singleton {
        q: String,
        target: SourceDesc,
    },
    /// Bias `y` is the betting weight on `1`.
    Frequency {
        q: String,
        y: String,
    },
    Block {
        q: String,
        l: usize,
        words: Vec<String>,
    },
    Cover {
        q: String,
        words: Vec<String>,
    },
    CoverSum {
        q: String,
        covers: Vec<Vec<String>>,
    },
    /// `budgets[n]` is the size limit for blocks on `n` inputs.
    Circuit {
        q: String,
        budgets: Vec<usize>,
    },
    /// `values` in length-then-lexicographic order.
    Table {
        q: String,
        promise: Kind,
        depth: usize,
        values: Vec<String>,
    },
}

impl GaleDesc {
    pub fn build(&self, base: &Path, exec: Exec) -> Result<Gale> {
        Ok(match self {
            GaleDesc::Trivial { q } => Arc::new(TrivialGale::new(exponent(q)?)),
            GaleDesc::Singleton { q, target } => Arc::new(SingletonGale::new(exponent(q)?, target.build(base)?)),
            GaleDesc::Frequency { q, y } => Arc::new(FrequencyGale::new(exponent(q)?, parse_rational(y)?)?),
            GaleDesc::Block { q, l, words } => Arc::new(BlockGale::new(exponent(q)?, BlockAlphabet::parse(*l, words)?)),
            GaleDesc::Cover { q, words } => Arc::new(CoverGale::new(exponent(q)?, PrefixSet::parse(words)?)),
            GaleDesc::CoverSum { q, covers } => {
                let covers = covers.iter().map(|c| PrefixSet::parse(c)).collect::<Result<Vec<_>>>()?;
                Arc::new(CoverSumGale::new(exponent(q)?, covers)?)
            }
            GaleDesc::Circuit { q, budgets } => Arc::new(CircuitGale::new(exponent(q)?, budgets.clone(), exec)?),
            GaleDesc::Table { q, promise, depth, values } => {
                let values = values.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>>>()?;
                Arc::new(TableGale::new(exponent(q)?, *promise, *depth, values)?)
            }
        })
    }

    pub fn q(&self) -> &str {
        match self {
            GaleDesc::Trivial { q }
            | GaleDesc::Singleton { q, .. }
            | GaleDesc::Frequency { q, .. }
            | GaleDesc::Block { q, .. }
            | GaleDesc::Cover { q, .. }
            | GaleDesc::CoverSum { q, .. }
            | GaleDesc::Circuit { q, .. }
            | GaleDesc::Table { q, .. } => q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceDesc {
    /// `pattern^ω`
    Periodic {
        pattern: String,
    },
    /// Finite; exactly one of `bits` and `path` (a file of `0`/`1` characters).
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bits: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        path: Option<PathBuf>,
    },
    Champernowne,
    /// `0^k 1 0^ω`
    Indicator {
        k: usize,
    },
}

impl SourceDesc {
    pub fn build(&self, base: &Path) -> Result<Source> {
        Ok(match self {
            SourceDesc::Periodic { pattern } => Arc::new(Periodic::new(pattern.parse()?)?),
            SourceDesc::Explicit { bits: Some(b), path: None } => Arc::new(Explicit::new(b.parse()?)),
            SourceDesc::Explicit { bits: None, path: Some(p) } => Arc::new(Explicit::from_file(&base.join(p))?),
            SourceDesc::Explicit { .. } => {
                return Err(desc_err("explicit source needs exactly one of `bits` and `path`"))
            }
            SourceDesc::Champernowne => Arc::new(Champernowne),
            SourceDesc::Indicator { k } => Arc::new(Indicator::new(*k)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructorDesc {
    MinBranch {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        against: Option<GaleDesc>,
    },
    Block {
        l: usize,
        words: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        against: Option<GaleDesc>,
    },
    /// `mode` is `desk` (default) or `certified`; certified mode needs `epsilon`.
    Frequency {
        alpha: String,
        c: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        epsilon: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mode: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        against: Option<GaleDesc>,
    },
    Circuit {
        alpha: String,
        n_max: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        against: Option<GaleDesc>,
    },
}

impl ConstructorDesc {
    fn against(&self) -> Option<&GaleDesc> {
        match self {
            ConstructorDesc::MinBranch { against }
            | ConstructorDesc::Block { against, .. }
            | ConstructorDesc::Frequency { against, .. }
            | ConstructorDesc::Circuit { against, .. } => against.as_ref(),
        }
    }

    /// Plays against `against` if given, otherwise against `default`.
    pub fn build(&self, default: Option<&GaleDesc>, base: &Path, exec: Exec) -> Result<Box<dyn Constructor>> {
        let d = self
            .against()
            .or(default)
            .ok_or_else(|| desc_err("constructor needs a gale to play against"))?
            .build(base, exec)?;
        Ok(match self {
            ConstructorDesc::MinBranch { .. } => Box::new(MinBranch::new(d)?),
            ConstructorDesc::Block { l, words, .. } => {
                Box::new(BlockConstructor::new(d, BlockAlphabet::parse(*l, words)?))
            }
            ConstructorDesc::Frequency { alpha, c, epsilon, mode, .. } => {
                let alpha = parse_rational(alpha)?;
                let plan = match mode.as_deref().unwrap_or("desk") {
                    "desk" => FrequencyPlan::desk(alpha, *c),
                    "certified" => {
                        let e = epsilon.as_deref().ok_or_else(|| desc_err("certified mode needs `epsilon`"))?;
                        FrequencyPlan::certified(alpha, parse_rational(e)?, *c)
                    }
                    other => return Err(desc_err(format!("unknown plan mode {other:?}"))),
                };
                Box::new(FrequencyConstructor::new(d, plan)?)
            }
            ConstructorDesc::Circuit { alpha, n_max, .. } => {
                Box::new(CircuitConstructor::new(d, parse_rational(alpha)?, *n_max, exec)?)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyDesc {
    Frequency {
        y: String,
    },
    Block {
        l: usize,
        words: Vec<String>,
    },
    /// Singleton gales on `target`, or on the experiment source if omitted.
    Singleton {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<SourceDesc>,
    },
    Trivial,
}

impl FamilyDesc {
    pub fn build(&self, source: Option<&Source>, base: &Path) -> Result<Arc<dyn GaleFamily>> {
        Ok(match self {
            FamilyDesc::Frequency { y } => Arc::new(FrequencyFamily::new(parse_rational(y)?)?),
            FamilyDesc::Block { l, words } => Arc::new(BlockFamily::new(BlockAlphabet::parse(*l, words)?)),
            FamilyDesc::Singleton { target } => {
                let t = match target {
                    Some(t) => t.build(base)?,
                    None => source.cloned().ok_or_else(|| desc_err("singleton family needs a target"))?,
                };
                Arc::new(TargetFamily::new(t))
            }
            FamilyDesc::Trivial => Arc::new(TrivialFamily),
        })
    }
}

/// Probe and estimator parameters; unset fields take library defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_log2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<String>,
    /// `threshold_search` or `exponent_of_increase`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Depth of exhaustive validation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validate_depth: Option<usize>,
    /// Rows in a trace.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_len: Option<usize>,
}

impl ProbeDesc {
    pub fn probe_config(&self) -> ProbeConfig {
        let mut cfg = ProbeConfig::default();
        if let Some(d) = self.depth {
            cfg.depth = d;
        }
        if let Some(t) = self.threshold_log2 {
            cfg.threshold_log2 = RBig::from(t);
        }
        cfg
    }

    pub fn estimate_config(&self, exec: Exec) -> Result<EstimateConfig> {
        let mut cfg = EstimateConfig { exec, ..EstimateConfig::default() };
        cfg.depth = self.depth.unwrap_or(DEFAULT_DEPTH);
        cfg.threshold_log2 = RBig::from(self.threshold_log2.unwrap_or(DEFAULT_THRESHOLD_LOG2));
        if let Some(p) = &self.precision {
            cfg.precision = parse_rational(p)?;
            if cfg.precision <= RBig::ZERO {
                return Err(desc_err("precision must be positive"));
            }
        }
        cfg.method = match self.method.as_deref() {
            None | Some("threshold_search") => Method::ThresholdSearch,
            Some("exponent_of_increase") => Method::ExponentOfIncrease,
            Some(other) => return Err(desc_err(format!("unknown method {other:?}"))),
        };
        Ok(cfg)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

/// One experiment: what to build, what to run it on, and where to write.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gale: Option<GaleDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructor: Option<ConstructorDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDesc>,
    #[serde(default)]
    pub probe: ProbeDesc,
    #[serde(default)]
    pub output: OutputDesc,
    /// Directory relative paths resolve against; not part of the document.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl ExperimentSpec {
    pub fn new() -> Self {
        ExperimentSpec {
            schema: EXPERIMENT_SCHEMA.to_string(),
            name: None,
            gale: None,
            source: None,
            constructor: None,
            family: None,
            probe: ProbeDesc::default(),
            output: OutputDesc::default(),
            base_dir: PathBuf::from("."),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = toml::from_str(text).map_err(|e| desc_err(e.to_string()))?;
        if spec.schema != EXPERIMENT_SCHEMA {
            return Err(desc_err(format!("unsupported schema {:?}, expected {EXPERIMENT_SCHEMA:?}", spec.schema)));
        }
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| desc_err(format!("{}: {e}", path.display())))?;
        let mut spec = ExperimentSpec::from_toml(&text)?;
        spec.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("descriptions serialize")
    }

    pub fn build_gale(&self, exec: Exec) -> Result<Gale> {
        self.gale.as_ref().ok_or_else(|| desc_err("missing [gale]"))?.build(&self.base_dir, exec)
    }

    pub fn build_source(&self) -> Result<Option<Source>> {
        self.source.as_ref().map(|s| s.build(&self.base_dir)).transpose()
    }

    pub fn build_constructor(&self, exec: Exec) -> Result<Option<Box<dyn Constructor>>> {
        self.constructor.as_ref().map(|c| c.build(self.gale.as_ref(), &self.base_dir, exec)).transpose()
    }

    pub fn build_family(&self, source: Option<&Source>) -> Result<Arc<dyn GaleFamily>> {
        self.family.as_ref().ok_or_else(|| desc_err("missing [family]"))?.build(source, &self.base_dir)
    }
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitWord;
    use crate::gale::checks::validate;

    const BLOCK: &str = r#"
schema = "galelab.experiment/1"

[gale]
kind = "block"
q = "2"
l = 2
words = ["00", "11"]

[source]
kind = "periodic"
pattern = "00"

[probe]
depth = 20
"#;

    #[test]
    fn parses_and_builds() {
        let spec = ExperimentSpec::from_toml(BLOCK).unwrap();
        let g = spec.build_gale(Exec::Sequential).unwrap();
        assert!(validate(g.as_ref(), 10).valid());
        let src = spec.build_source().unwrap().unwrap();
        assert_eq!(src.prefix(4).unwrap(), BitWord::repeat(false, 4));
        assert_eq!(spec.probe.probe_config().depth, 20);
    }

    #[test]
    fn round_trips() {
        let mut spec = ExperimentSpec::from_toml(BLOCK).unwrap();
        spec.constructor = Some(ConstructorDesc::Frequency {
            alpha: "1/3".into(),
            c: 64,
            epsilon: None,
            mode: None,
            against: Some(GaleDesc::Singleton { q: "3/2".into(), target: SourceDesc::Indicator { k: 3 } }),
        });
        spec.family = Some(FamilyDesc::Singleton { target: None });
        spec.name = Some("demo".into());
        let back = ExperimentSpec::from_toml(&spec.to_toml()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn rejects_bad_documents() {
        let wrong = BLOCK.replace("experiment/1", "experiment/9");
        assert!(matches!(ExperimentSpec::from_toml(&wrong), Err(GaleError::Description(_))));
        assert!(matches!(ExperimentSpec::from_toml("schema = 3"), Err(GaleError::Description(_))));
        let typo = BLOCK.replace("depth = 20", "dpeth = 20");
        assert!(ExperimentSpec::from_toml(&typo).is_err());
    }
}

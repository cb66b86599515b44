//! Run configuration and the versioned verification report.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::chiral_fock::{EpsilonConvention, FockConfig, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::scalarfield::{Field, FieldMode};

pub const SCHEMA: &str = "qzm-report/1";
pub const TOOL: &str = "qzm";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub k: u32,
    pub generic_q: bool,
    pub budget: usize,
    pub samples: usize,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Hook row for `check-w`.
    pub i: usize,
    pub epsilon: EpsilonConvention,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            command: String::new(),
            n: 2,
            k: 1,
            generic_q: false,
            budget: DEFAULT_BUDGET,
            samples: 25,
            seed: 1,
            cache_dir: None,
            format: Format::Text,
            out: None,
            i: 2,
            epsilon: EpsilonConvention::default(),
        }
    }
}

impl RunConfig {
    pub fn h(&self) -> u32 {
        self.n as u32 + self.k
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("n = {} < 2", self.n)));
        }
        if self.k < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(())
    }

    pub fn field_mode(&self) -> FieldMode {
        if self.generic_q {
            FieldMode::GenericQ
        } else {
            FieldMode::RootOfUnity
        }
    }

    pub fn field(&self) -> Result<Field> {
        crate::scalarfield::make_field(self.field_mode(), Some(self.h()))
    }

    pub fn fock_config(&self) -> FockConfig {
        FockConfig { budget: self.budget, convention: self.epsilon }
    }

    /// The echo stored in reports; output location and format are left out.
    fn echo(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "n": self.n,
            "k": self.k,
            "h": self.h(),
            "field": if self.generic_q { "generic" } else { "root-of-unity" },
            "budget": self.budget,
            "samples": self.samples,
            "seed": self.seed,
            "cache_dir": self.cache_dir.as_ref().map(|p| p.display().to_string()),
            "i": self.i,
        })
    }
}

/// Where the expected value of a check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    PaperClaim,
    DerivedOracle,
    Exploratory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
    Budget,
}

impl Outcome {
    pub fn of(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
            Outcome::Budget => "budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: Map<String, Value>,
    pub expectation: Expectation,
    pub result: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub wall_ms: u64,
}

impl CheckRecord {
    pub fn new(name: &str, expectation: Expectation) -> CheckRecord {
        CheckRecord {
            name: name.to_string(),
            params: Map::new(),
            expectation,
            result: Outcome::Skipped,
            detail: None,
            sizes: Vec::new(),
            certificate: None,
            wall_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> CheckRecord {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> CheckRecord {
        self.detail = Some(d.into());
        self
    }

    pub fn sizes(mut self, s: Vec<usize>) -> CheckRecord {
        self.sizes = s;
        self
    }

    pub fn certificate(mut self, c: impl Into<String>) -> CheckRecord {
        self.certificate = Some(c.into());
        self
    }

    pub fn result(mut self, r: Outcome) -> CheckRecord {
        self.result = r;
        self
    }

    /// Runs `f` and records its result and wall time. A budget overrun becomes a
    /// `budget` result; other errors propagate.
    pub fn run(mut self, f: impl FnOnce(&mut CheckRecord) -> Result<Outcome>) -> Result<CheckRecord> {
        let t0 = Instant::now();
        let r = f(&mut self);
        self.wall_ms = t0.elapsed().as_millis() as u64;
        match r {
            Ok(o) => self.result = o,
            Err(e @ Error::BudgetExceeded { .. }) => {
                self.result = Outcome::Budget;
                self.detail = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
        Ok(self)
    }

    fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                v => format!("{k}={v}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub budget: usize,
    pub paper_claim_failures: usize,
    pub exploratory_findings: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub epsilon: String,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: &RunConfig) -> Report {
        Report {
            schema: SCHEMA.to_string(),
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            epsilon: config.epsilon.tag().to_string(),
            config: config.echo(),
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
        self.summarize();
    }

    fn summarize(&mut self) {
        let mut s = Summary { total: self.checks.len(), ..Summary::default() };
        for c in &self.checks {
            match c.result {
                Outcome::Pass => s.pass += 1,
                Outcome::Fail => s.fail += 1,
                Outcome::Skipped => s.skipped += 1,
                Outcome::Budget => s.budget += 1,
            }
            if c.result == Outcome::Fail && c.expectation == Expectation::PaperClaim {
                s.paper_claim_failures += 1;
            }
            if c.expectation == Expectation::Exploratory && c.result != Outcome::Skipped {
                s.exploratory_findings += 1;
            }
        }
        self.summary = s;
    }

    pub fn check(&self, name: &str) -> impl Iterator<Item = &CheckRecord> {
        let name = name.to_string();
        self.checks.iter().filter(move |c| c.name == name)
    }

    /// Nonzero iff a paper-claim check failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.paper_claim_failures > 0)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map(|s| s + "\n").map_err(|e| Error::Decode(e.to_string()))
    }

    /// The json form with every `wall_ms` zeroed.
    pub fn to_json_untimed(&self) -> Result<String> {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.wall_ms = 0;
        }
        r.to_json()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let wr = |w: &mut csv::Writer<Vec<u8>>, row: &[String]| w.write_record(row).map_err(|e| Error::Decode(e.to_string()));
        let header = ["name", "params", "expectation", "result", "detail", "sizes", "certificate", "wall_ms"];
        wr(&mut w, &header.map(String::from))?;
        for c in &self.checks {
            let exp = serde_json::to_value(c.expectation).unwrap();
            wr(
                &mut w,
                &[
                    c.name.clone(),
                    c.params_text(),
                    exp.as_str().unwrap().to_string(),
                    c.result.label().to_string(),
                    c.detail.clone().unwrap_or_default(),
                    c.sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";"),
                    c.certificate.clone().unwrap_or_default(),
                    c.wall_ms.to_string(),
                ],
            )?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Decode(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Decode(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let cfg = &self.config;
        let _ = writeln!(
            s,
            "{} {}  {}  n={} k={} h={} field={} epsilon={} seed={}",
            self.tool, self.version, cfg["command"].as_str().unwrap_or(""), cfg["n"], cfg["k"], cfg["h"],
            cfg["field"].as_str().unwrap_or(""), self.epsilon, cfg["seed"]
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.expectation {
                Expectation::PaperClaim => "paper",
                Expectation::DerivedOracle => "oracle",
                Expectation::Exploratory => "explore",
            };
            let _ = write!(s, "{:<7} {:<7} {:<width$}  {}", c.result.label(), tag, c.name, c.params_text());
            if let Some(d) = &c.detail {
                let _ = write!(s, "  [{d}]");
            }
            let _ = writeln!(s);
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "{} checks: {} pass, {} fail ({} paper claims), {} skipped, {} budget, {} exploratory",
            m.total, m.pass, m.fail, m.paper_claim_failures, m.skipped, m.budget, m.exploratory_findings
        );
        s
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

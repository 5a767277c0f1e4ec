//! Verification harness for `kzdyn-core`: suite configuration, the suite
//! registry, object dumps and machine-readable reports.

mod dump;
mod suites;

use std::fmt;
use std::hash::Hash;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use dump::{dump_object, DumpKind, DumpParams, DUMP_KINDS};
pub use suites::SUITES;

/// Version of the report layout; bumped on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;

/// Suites whose algebra is fixed to `sl_2`, so `--nu` needs no `--n`.
const SL2_ONLY: [&str; 2] = ["main-theorem-sl2", "determinant-sl2"];

/// Environment variable naming the memo directory for reports.
pub const CACHE_ENV: &str = "KZDYN_CACHE";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kzdyn_core::Error),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("unknown dump kind: {0}")]
    UnknownKind(String),
    #[error("capability exceeded: {0}")]
    CapabilityExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// One tensor factor of the module under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorSpec {
    /// A Verma module with symbolic highest weight.
    Verma,
    /// The irreducible `sl_2`-module `L_p`.
    Lp(u32),
}

impl FromStr for FactorSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<FactorSpec> {
        let s = s.trim();
        if s == "verma" {
            return Ok(FactorSpec::Verma);
        }
        if let Some(p) = s.strip_prefix("lp:") {
            return p.parse().map(FactorSpec::Lp).map_err(|_| CliError::InvalidArgument(format!("factor {s}")));
        }
        Err(CliError::InvalidArgument(format!("factor {s}: expected verma or lp:P")))
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Verma => write!(f, "verma"),
            FactorSpec::Lp(p) => write!(f, "lp:{p}"),
        }
    }
}

/// Parses `verma,lp:2,…`.
pub fn parse_factors(s: &str) -> CliResult<Vec<FactorSpec>> {
    s.split(',').map(FactorSpec::from_str).collect()
}

/// Parses `m1,m2,…`.
pub fn parse_nu(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::InvalidArgument(format!("weight coordinate {x}"))))
        .collect()
}

/// Everything a suite run depends on. Unset fields select the suite's default grid.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub n: Option<usize>,
    pub nu: Option<Vec<i64>>,
    pub factors: Option<Vec<FactorSpec>>,
    pub depth: Option<usize>,
    pub tol: Option<f64>,
    pub max_ab: Option<i64>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> SuiteConfig {
        SuiteConfig { suite: suite.into(), ..SuiteConfig::default() }
    }

    /// Checks the configuration against what the suite can handle.
    pub fn validate(&self) -> CliResult<()> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(CliError::UnknownSuite(self.suite.clone()));
        }
        if let Some(n) = self.n {
            if n < 2 {
                return Err(CliError::InvalidArgument(format!("N = {n}")));
            }
        }
        if SL2_ONLY.contains(&self.suite.as_str()) && self.n.is_some_and(|n| n != 2) {
            return Err(CliError::CapabilityExceeded(format!("{} is defined for sl_2 only", self.suite)));
        }
        if let (Some(n), Some(nu)) = (self.n, &self.nu) {
            if nu.len() != n - 1 {
                return Err(CliError::InvalidArgument(format!("ν₀ has {} coordinates, sl_{n} needs {}", nu.len(), n - 1)));
            }
        }
        if self.nu.is_some() && self.n.is_none() && !SL2_ONLY.contains(&self.suite.as_str()) {
            return Err(CliError::InvalidArgument("--nu needs --n".into()));
        }
        if let Some(nu) = &self.nu {
            if nu.iter().any(|&x| x < 0) {
                return Err(CliError::InvalidArgument("ν₀ coordinates must be non-negative".into()));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::InvalidArgument(format!("tolerance {t}")));
            }
        }
        if let Some(fs) = &self.factors {
            if fs.is_empty() {
                return Err(CliError::InvalidArgument("empty factor list".into()));
            }
            if fs.iter().any(|f| matches!(f, FactorSpec::Lp(_))) && self.n.is_some_and(|n| n != 2) {
                return Err(CliError::CapabilityExceeded("lp:P factors exist for sl_2 only".into()));
            }
        }
        Ok(())
    }

    fn cache_key(&self) -> CliResult<String> {
        let json = serde_json::to_string(self)?;
        let digest = Sha256::digest(format!("{SCHEMA_VERSION}:{json}").as_bytes());
        Ok(digest.iter().take(12).map(|b| format!("{b:02x}")).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The identity holds, but only in a sense the suite cannot make exact
    /// (for example, certified at sample points).
    Flagged,
}

impl Verdict {
    /// Fail dominates flagged, flagged dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Flagged, _) | (_, Flagged) => Flagged,
            _ => Pass,
        }
    }

    pub fn of(pass: bool) -> Verdict {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Flagged => "flagged",
        };
        f.write_str(s)
    }
}

/// One checked instance inside a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub verdict: Verdict,
    pub detail: serde_json::Value,
}

impl Witness {
    pub fn new<T: Serialize>(name: impl Into<String>, verdict: Verdict, detail: &T) -> CliResult<Witness> {
        Ok(Witness { name: name.into(), verdict, detail: serde_json::to_value(detail)? })
    }
}

/// The result of one suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub version: String,
    pub suite: String,
    pub params: SuiteConfig,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub warnings: Vec<String>,
    pub elapsed_seconds: f64,
}

impl Report {
    pub fn count(&self, v: Verdict) -> usize {
        self.witnesses.iter().filter(|w| w.verdict == v).count()
    }

    /// The first witness with the given verdict.
    pub fn first(&self, v: Verdict) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.verdict == v)
    }

    pub fn to_json(&self) -> CliResult<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One line per verdict class plus the first failing witness.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} ({} pass, {} flagged, {} fail, {:.2}s)",
            self.suite,
            self.verdict,
            self.count(Verdict::Pass),
            self.count(Verdict::Flagged),
            self.count(Verdict::Fail),
            self.elapsed_seconds
        );
        if let Some(w) = self.first(Verdict::Fail) {
            s.push_str(&format!("\n  first failure: {}", w.name));
        }
        s
    }
}

/// Runs a suite, consulting the memo directory named by `KZDYN_CACHE` if set,
/// and writes the report to `cfg.out` if given.
pub fn run_suite(cfg: &SuiteConfig) -> CliResult<Report> {
    cfg.validate()?;
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    let cached_path = match &cache {
        Some(dir) => Some(dir.join(format!("{}-{}.json", cfg.suite, cfg.cache_key()?))),
        None => None,
    };
    let report = match cached_path.as_ref().and_then(|p| std::fs::read_to_string(p).ok()) {
        Some(text) => match serde_json::from_str::<Report>(&text) {
            Ok(r) if r.schema_version == SCHEMA_VERSION && serde_json::to_value(&r.params)? == serde_json::to_value(cfg)? => r,
            _ => compute(cfg)?,
        },
        None => compute(cfg)?,
    };
    if let Some(p) = &cached_path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(p, report.to_json()?)?;
    }
    if let Some(out) = &cfg.out {
        std::fs::write(out, report.to_json()?)?;
    }
    Ok(report)
}

fn compute(cfg: &SuiteConfig) -> CliResult<Report> {
    let start = Instant::now();
    let run = || suites::run(cfg);
    let (witnesses, warnings) = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::InvalidArgument(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let verdict = if witnesses.is_empty() {
        Verdict::Fail
    } else {
        witnesses.iter().fold(Verdict::Pass, |acc, w| acc.combine(w.verdict))
    };
    let mut warnings = warnings;
    if witnesses.is_empty() {
        warnings.push("no instances were checked".into());
    }
    for w in witnesses.iter().filter(|w| w.verdict == Verdict::Flagged) {
        warnings.push(format!("flagged: {}", w.name));
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION").into(),
        suite: cfg.suite.clone(),
        params: cfg.clone(),
        verdict,
        witnesses,
        warnings,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Process exit code for a set of reports: 0 iff every verdict is pass or flagged.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().all(|r| r.verdict != Verdict::Fail) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_lists_round_trip() {
        let fs = parse_factors("verma,lp:3").unwrap();
        assert_eq!(fs, vec![FactorSpec::Verma, FactorSpec::Lp(3)]);
        assert_eq!(fs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","), "verma,lp:3");
        assert!(parse_factors("lp:x").is_err());
        assert!(parse_nu("1,-2").unwrap() == vec![1, -2]);
    }

    #[test]
    fn fail_dominates_flagged_dominates_pass() {
        use Verdict::*;
        assert_eq!(Pass.combine(Flagged), Flagged);
        assert_eq!(Flagged.combine(Fail), Fail);
        assert_eq!(Pass.combine(Pass), Pass);
    }

    #[test]
    fn cache_key_ignores_output_options() {
        let a = SuiteConfig::new("fusion");
        let b = SuiteConfig { out: Some("x.json".into()), jobs: Some(4), ..a.clone() };
        let c = SuiteConfig { depth: Some(3), ..a.clone() };
        assert_eq!(a.cache_key().unwrap(), b.cache_key().unwrap());
        assert_ne!(a.cache_key().unwrap(), c.cache_key().unwrap());
    }

    #[test]
    fn validation_rejects_mismatched_weights() {
        let cfg = SuiteConfig { n: Some(3), nu: Some(vec![1]), ..SuiteConfig::new("additive-form") };
        assert!(cfg.validate().is_err());
        assert!(SuiteConfig::new("nope").validate().is_err());
        let cfg = SuiteConfig { n: Some(3), ..SuiteConfig::new("main-theorem-sl2") };
        assert!(matches!(cfg.validate(), Err(CliError::CapabilityExceeded(_))));
    }
}

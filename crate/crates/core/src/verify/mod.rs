//! Named numerical certificates with structured pass/fail reports.
//!
//! Each check fills `observed` and `thresholds` maps and decides `passed`
//! from them alone. Maps are ordered, so serialized reports are identical
//! across runs apart from `runtime_ms`.

mod checks;

pub use checks::{
    verify_growth, verify_involution, verify_t1p, verify_trivial_zeros, verify_x_asymptotic,
    InvolutionGrid, GROWTH_EPSILON,
};

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta::ZetaEvaluator;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub passed: bool,
    pub observed: BTreeMap<String, f64>,
    pub thresholds: BTreeMap<String, f64>,
    pub samples: u64,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub(crate) fn new(name: &str) -> Self {
        VerificationReport {
            check_name: name.to_string(),
            passed: false,
            observed: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            samples: 0,
            runtime_ms: 0,
        }
    }

    pub(crate) fn observe(&mut self, key: impl Into<String>, value: f64) {
        self.observed.insert(key.into(), value);
    }

    pub(crate) fn threshold(&mut self, key: impl Into<String>, value: f64) {
        self.thresholds.insert(key.into(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Asymptotic,
    Growth,
    Involution,
    T1p,
    Zeros,
}

impl Check {
    /// In report order.
    pub const ALL: [Check; 5] = [Check::Asymptotic, Check::Growth, Check::Involution, Check::T1p, Check::Zeros];

    pub fn name(self) -> &'static str {
        match self {
            Check::Asymptotic => "asymptotic",
            Check::Growth => "growth",
            Check::Involution => "involution",
            Check::T1p => "t1p",
            Check::Zeros => "zeros",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

/// Parameters of every check. `Default` gives the documented defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub t1p_grid: usize,
    pub asymptotic_t: Vec<f64>,
    pub asymptotic_sigma: Vec<f64>,
    pub growth_sigma: Vec<f64>,
    pub growth_angles: Vec<f64>,
    pub growth_radii: Vec<f64>,
    pub zero_orders: Vec<u32>,
    /// Genus used for the trivial-zero predictions instead of the
    /// evaluator's.
    pub genus_override: Option<u32>,
    pub involution: InvolutionGrid,
    /// When false, `runtime_ms` is reported as 0.
    pub record_timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            t1p_grid: 100_000,
            asymptotic_t: (0..7).map(|i| 1.0 + 0.5 * i as f64).collect(),
            asymptotic_sigma: vec![0.5, 3.0],
            growth_sigma: (3..=10).map(f64::from).collect(),
            growth_angles: vec![2.0 * PI / 3.0, 3.0 * PI / 4.0, 4.0 * PI / 3.0],
            growth_radii: vec![5.0, 10.0, 15.0],
            zero_orders: vec![1, 2, 3],
            genus_override: None,
            involution: InvolutionGrid::default(),
            record_timing: true,
        }
    }
}

/// Runs one check and stamps its runtime.
pub fn run_check(check: Check, z: &ZetaEvaluator, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let genus = z.genus();
    let mut report = match check {
        Check::T1p => verify_t1p(cfg.t1p_grid, z.execution()),
        Check::Asymptotic => verify_x_asymptotic(&cfg.asymptotic_t, &cfg.asymptotic_sigma, genus),
        Check::Growth => verify_growth(z, &cfg.growth_sigma, &cfg.growth_angles, &cfg.growth_radii),
        Check::Zeros => verify_trivial_zeros(z, &cfg.zero_orders, cfg.genus_override.unwrap_or(genus)),
        Check::Involution => verify_involution(&cfg.involution, genus, z.execution()),
    }
    .map_err(|e| Error::Check {
        name: check.name().to_string(),
        source: Box::new(e),
    })?;
    report.runtime_ms = if cfg.record_timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(report)
}

/// Every check, run in parallel and returned in name order. The first
/// failing configuration aborts the run.
pub fn run_all(z: &ZetaEvaluator, cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    run_checks(&Check::ALL, z, cfg)
}

pub fn run_checks(checks: &[Check], z: &ZetaEvaluator, cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    z.execution()
        .map(&checks, |&c| run_check(c, z, cfg))
        .into_iter()
        .collect()
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

//! Declarative, seeded Monte Carlo experiments.
//!
//! A JSON [`ExperimentConfig`] names one of the built-in experiments plus
//! its sizes, seed, and thresholds; [`run_trials`] executes the trials
//! concurrently (one private PRNG stream per trial) and [`aggregate`]
//! reduces the records into a byte-stable report carrying the theory
//! constants each metric is compared to and one pass flag per acceptance
//! check. Fully-resolved configs are embedded in every report so a run can
//! be audited and reproduced from its outputs alone.

mod experiments;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::ClassifierThresholds;

pub use experiments::EXPERIMENT_IDS;

/// Built-in experiment identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExperimentId {
    #[serde(rename = "E1_subcritical_planarity")]
    E1SubcriticalPlanarity,
    #[serde(rename = "E2_tree_components")]
    E2TreeComponents,
    #[serde(rename = "E3_balanced_genus")]
    E3BalancedGenus,
    #[serde(rename = "E4_unbalanced_projection")]
    E4UnbalancedProjection,
    #[serde(rename = "E5_johansson_gap")]
    E5JohanssonGap,
    #[serde(rename = "E6_face_bound")]
    E6FaceBound,
}

impl ExperimentId {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentId::E1SubcriticalPlanarity => "E1_subcritical_planarity",
            ExperimentId::E2TreeComponents => "E2_tree_components",
            ExperimentId::E3BalancedGenus => "E3_balanced_genus",
            ExperimentId::E4UnbalancedProjection => "E4_unbalanced_projection",
            ExperimentId::E5JohanssonGap => "E5_johansson_gap",
            ExperimentId::E6FaceBound => "E6_face_bound",
        }
    }
}

fn default_j_range() -> Vec<usize> {
    crate::genus::DEFAULT_J_RANGE.to_vec()
}

/// Declarative experiment description as read from JSON. Exactly one of
/// (n2, lambda) and exactly one of (d, p) must be given.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment_id: ExperimentId,
    pub n1: usize,
    #[serde(default)]
    pub n2: Option<usize>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub d: Option<f64>,
    #[serde(default)]
    pub p: Option<f64>,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub thresholds: ClassifierThresholds,
    #[serde(default = "default_j_range")]
    pub j_range: Vec<usize>,
    /// Per-check tolerance overrides, keyed by check name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Worker threads; defaults to the available cores.
    #[serde(default)]
    pub parallelism: Option<usize>,
}

/// Statistical conventions stamped into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    /// Fraction of trials that must satisfy a whp event.
    pub whp_fraction: f64,
    /// Confidence interval convention.
    pub ci: String,
    /// Sigma allowance for marginal frequency checks.
    pub marginal_sigma: f64,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            whp_fraction: 0.95,
            ci: "normal 95% (1.96 sd / sqrt(n))".into(),
            marginal_sigma: 4.0,
        }
    }
}

/// Config with every derived quantity made explicit.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub experiment_id: ExperimentId,
    pub n1: usize,
    pub n2: usize,
    pub lambda: f64,
    pub d: f64,
    pub p: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub thresholds: ClassifierThresholds,
    pub j_range: Vec<usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub parallelism: usize,
    pub conventions: Conventions,
}

impl ExperimentConfig {
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.n1 < 2 {
            return Err(Error::Config("n1 must be >= 2".into()));
        }
        let n2 = match (self.n2, self.lambda) {
            (Some(n2), None) => n2,
            (None, Some(lambda)) => {
                if !(lambda > 0.0 && lambda <= 1.0) {
                    return Err(Error::Config(format!(
                        "lambda must lie in (0, 1], got {lambda}"
                    )));
                }
                (self.n1 as f64 / lambda).round() as usize
            }
            _ => {
                return Err(Error::Config(
                    "exactly one of n2 and lambda must be given".into(),
                ))
            }
        };
        if n2 == 0 {
            return Err(Error::Config("n2 must be >= 1".into()));
        }
        let prod = (self.n1 as f64) * (n2 as f64);
        let p = match (self.d, self.p) {
            (Some(d), None) => {
                if d <= 0.0 {
                    return Err(Error::Config(format!("d must be positive, got {d}")));
                }
                d / prod.sqrt()
            }
            (None, Some(p)) => p,
            _ => return Err(Error::Config("exactly one of d and p must be given".into())),
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityRange(p));
        }
        if self.j_range.is_empty() || self.j_range.iter().any(|&j| j < 2) {
            return Err(Error::Config("j_range entries must be >= 2".into()));
        }
        let parallelism = self.parallelism.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
        Ok(ResolvedConfig {
            experiment_id: self.experiment_id,
            n1: self.n1,
            n2,
            lambda: self.n1 as f64 / n2 as f64,
            d: p * prod.sqrt(),
            p,
            trials: self.trials,
            master_seed: self.master_seed,
            thresholds: self.thresholds,
            j_range: self.j_range.clone(),
            tolerances: self.tolerances.clone(),
            parallelism: parallelism.max(1),
            conventions: Conventions::default(),
        })
    }
}

/// Metrics of one trial. Keys are experiment-specific; values are finite
/// f64 (booleans as 0/1).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub metrics: BTreeMap<String, f64>,
    pub error: Option<String>,
}

/// Mean / spread summary of one metric across trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricSummary {
    pub mean: f64,
    /// Sample standard deviation; absent for a single trial.
    pub sd: Option<f64>,
    /// 1.96 sd / sqrt(n); absent for a single trial.
    pub ci95_half: Option<f64>,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

/// A theory constant a metric is compared against, with the certified
/// truncation error of its evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoryReference {
    pub value: f64,
    pub tail_bound: f64,
}

/// One acceptance check outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub observed: f64,
    pub bound: f64,
    pub detail: String,
}

/// Aggregated experiment report.
#[derive(Debug, Clone, Serialize)]
pub struct AggregateReport {
    pub config: ResolvedConfig,
    pub metrics: BTreeMap<String, MetricSummary>,
    pub theory: BTreeMap<String, TheoryReference>,
    pub checks: Vec<CheckOutcome>,
    pub trial_errors: usize,
}

impl AggregateReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs every trial of the experiment; trial i draws from the stream
/// (master_seed, i). Individual trial failures are recorded, not fatal;
/// the run errors only when more than 1% of trials fail.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let resolved = cfg.resolve()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(resolved.parallelism)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let mut records: Vec<TrialRecord> = pool.install(|| {
        (0..resolved.trials)
            .into_par_iter()
            .map(|t| match experiments::run_one(&resolved, t) {
                Ok(metrics) => TrialRecord {
                    trial: t,
                    metrics,
                    error: None,
                },
                Err(e) => TrialRecord {
                    trial: t,
                    metrics: BTreeMap::new(),
                    error: Some(e.to_string()),
                },
            })
            .collect()
    });
    records.sort_by_key(|r| r.trial);
    let failed = records.iter().filter(|r| r.error.is_some()).count();
    if failed as f64 > 0.01 * resolved.trials as f64 {
        let first = records
            .iter()
            .find_map(|r| r.error.clone())
            .unwrap_or_default();
        return Err(Error::TooManyTrialErrors {
            failed,
            total: resolved.trials,
            first,
        });
    }
    Ok(records)
}

/// Order-independent reduction of trial records into the report.
pub fn aggregate(records: &[TrialRecord], cfg: &ExperimentConfig) -> Result<AggregateReport> {
    let resolved = cfg.resolve()?;
    if records.is_empty() {
        return Err(Error::EmptyInput("no trial records to aggregate"));
    }
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.trial);

    let mut per_metric: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for rec in sorted.iter().filter(|r| r.error.is_none()) {
        for (k, v) in &rec.metrics {
            per_metric.entry(k.clone()).or_default().push(*v);
        }
    }
    let metrics: BTreeMap<String, MetricSummary> = per_metric
        .into_iter()
        .map(|(k, values)| (k, summarize(&values)))
        .collect();
    let trial_errors = sorted.iter().filter(|r| r.error.is_some()).count();
    let (theory, checks) = experiments::evaluate(&resolved, &metrics)?;
    Ok(AggregateReport {
        config: resolved,
        metrics,
        theory,
        checks,
        trial_errors,
    })
}

fn summarize(values: &[f64]) -> MetricSummary {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let (sd, ci95_half) = if n >= 2 {
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
        let sd = var.sqrt();
        (Some(sd), Some(1.96 * sd / (n as f64).sqrt()))
    } else {
        (None, None)
    };
    MetricSummary {
        mean,
        sd,
        ci95_half,
        min: values.iter().cloned().fold(f64::INFINITY, f64::min),
        max: values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        count: n,
    }
}

/// Stable CSV encoding: `trial,error` then the union of metric keys in
/// sorted order, one row per trial.
pub fn trials_csv(records: &[TrialRecord]) -> String {
    let mut keys: Vec<&str> = Vec::new();
    {
        let mut seen = std::collections::BTreeSet::new();
        for r in records {
            for k in r.metrics.keys() {
                seen.insert(k.as_str());
            }
        }
        keys.extend(seen);
    }
    let mut out = String::new();
    out.push_str("trial,error");
    for k in &keys {
        let _ = write!(out, ",{k}");
    }
    out.push('\n');
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.trial);
    for r in sorted {
        let _ = write!(out, "{}", r.trial);
        match &r.error {
            Some(e) => {
                let _ = write!(out, ",{:?}", e);
            }
            None => out.push(','),
        }
        for k in &keys {
            match r.metrics.get(*k) {
                Some(v) => {
                    let _ = write!(out, ",{v}");
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

/// Writes report.json, trials.csv, and config.resolved.json into `dir`.
pub fn write_outputs(dir: &Path, report: &AggregateReport, records: &[TrialRecord]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut report_json = serde_json::to_string_pretty(report)?;
    report_json.push('\n');
    std::fs::write(dir.join("report.json"), report_json)?;
    std::fs::write(dir.join("trials.csv"), trials_csv(records))?;
    let mut cfg_json = serde_json::to_string_pretty(&report.config)?;
    cfg_json.push('\n');
    std::fs::write(dir.join("config.resolved.json"), cfg_json)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config(id: ExperimentId) -> ExperimentConfig {
        ExperimentConfig {
            experiment_id: id,
            n1: 40,
            n2: Some(40),
            lambda: None,
            d: Some(0.8),
            p: None,
            trials: 8,
            master_seed: 7,
            thresholds: ClassifierThresholds::default(),
            j_range: default_j_range(),
            tolerances: BTreeMap::new(),
            parallelism: Some(2),
        }
    }

    #[test]
    fn resolve_derives_p_and_lambda() {
        let cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        let r = cfg.resolve().unwrap();
        assert_eq!(r.n2, 40);
        assert!((r.p - 0.8 / 40.0).abs() < 1e-15);
        assert!((r.lambda - 1.0).abs() < 1e-15);
        assert!((r.d - 0.8).abs() < 1e-12);
    }

    #[test]
    fn resolve_rejects_ambiguous_inputs() {
        let mut cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        cfg.lambda = Some(1.0);
        assert!(cfg.resolve().is_err());
        let mut cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        cfg.p = Some(0.1);
        assert!(cfg.resolve().is_err());
        let mut cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        cfg.n2 = None;
        assert!(cfg.resolve().is_err());
    }

    #[test]
    fn lambda_derives_n2() {
        let mut cfg = quick_config(ExperimentId::E2TreeComponents);
        cfg.n2 = None;
        cfg.lambda = Some(0.5);
        let r = cfg.resolve().unwrap();
        assert_eq!(r.n2, 80);
        assert!((r.lambda - 0.5).abs() < 1e-15);
    }

    #[test]
    fn reports_are_reproducible_and_order_independent() {
        let cfg = quick_config(ExperimentId::E2TreeComponents);
        let r1 = run_trials(&cfg).unwrap();
        let r2 = run_trials(&cfg).unwrap();
        let a1 = aggregate(&r1, &cfg).unwrap();
        let a2 = aggregate(&r2, &cfg).unwrap();
        // theory references travel with their certified truncation bounds
        let nu_ref = a1.theory.get("nu_times_n1").unwrap();
        assert!(nu_ref.tail_bound >= 0.0 && nu_ref.tail_bound.is_finite());
        assert!(a1.theory.contains_key("expected_tree_components_exact"));
        assert_eq!(
            serde_json::to_string(&a1).unwrap(),
            serde_json::to_string(&a2).unwrap()
        );
        // permutation invariance
        let mut shuffled = r1.clone();
        shuffled.reverse();
        let a3 = aggregate(&shuffled, &cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&a1).unwrap(),
            serde_json::to_string(&a3).unwrap()
        );
        assert_eq!(trials_csv(&r1), trials_csv(&shuffled));
    }

    #[test]
    fn single_trial_has_no_ci() {
        let mut cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        cfg.trials = 1;
        let records = run_trials(&cfg).unwrap();
        let report = aggregate(&records, &cfg).unwrap();
        let m = report.metrics.get("edges").unwrap();
        assert_eq!(m.count, 1);
        assert!(m.sd.is_none());
        assert!(m.ci95_half.is_none());
        assert_eq!(m.mean, m.min);
    }

    #[test]
    fn identical_records_give_zero_sd() {
        let rec = |t| TrialRecord {
            trial: t,
            metrics: BTreeMap::from([("x".to_string(), 3.5)]),
            error: None,
        };
        let records = vec![rec(0), rec(1), rec(2)];
        let s = summarize(&[3.5, 3.5, 3.5]);
        assert_eq!(s.sd, Some(0.0));
        let cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        // aggregate accepts foreign metrics fine
        let rep = aggregate(&records, &cfg).unwrap();
        assert_eq!(rep.metrics.get("x").unwrap().sd, Some(0.0));
    }

    #[test]
    fn tolerance_overrides_replace_defaults() {
        // supercritical sizes fail the planarity fraction at the default
        // 0.95 but pass once the override drops the gate to zero
        let mut cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        cfg.d = Some(3.0);
        let records = run_trials(&cfg).unwrap();
        let strict = aggregate(&records, &cfg).unwrap();
        assert!(!strict.all_checks_pass());
        cfg.tolerances.insert("planar_fraction".into(), 0.0);
        cfg.tolerances.insert("zero_complex_fraction".into(), 0.0);
        let relaxed = aggregate(&records, &cfg).unwrap();
        assert!(relaxed.all_checks_pass());
    }

    #[test]
    fn empty_aggregate_is_an_error() {
        let cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        assert!(matches!(
            aggregate(&[], &cfg).unwrap_err(),
            Error::EmptyInput(_)
        ));
    }

    #[test]
    fn run_fails_when_most_trials_error() {
        // an edge index space past u64 makes every trial's sampler error
        let mut cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        cfg.n1 = 1 << 33;
        cfg.n2 = Some(1 << 33);
        let err = run_trials(&cfg).unwrap_err();
        assert!(matches!(err, Error::TooManyTrialErrors { .. }), "{err}");
    }

    #[test]
    fn csv_has_stable_columns() {
        let cfg = quick_config(ExperimentId::E1SubcriticalPlanarity);
        let records = run_trials(&cfg).unwrap();
        let csv = trials_csv(&records);
        let header = csv.lines().next().unwrap();
        assert!(header.starts_with("trial,error,"));
        assert_eq!(csv.lines().count(), records.len() + 1);
    }
}

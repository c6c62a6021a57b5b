//! Experiment harness: seeded randomized trials over the whole pipeline,
//! with machine-readable reports.
//!
//! One experiment fixes the parameter tuple, builds and verifies the outer
//! and inner matrices once, then runs independent (hidden set, flips) draws.
//! A master seed fans out per purpose: matrix construction and trial
//! generation draw from disjoint streams, so changing the trial count never
//! changes the matrices. Reports are JSON lines (one trial per line plus a
//! summary record) and are bit-identical across reruns unless wall-clock
//! timing is explicitly enabled.

use crate::decode::{self, BlockDisposition};
use crate::matrix::{
    build_t, kautz_singleton, random_disjunct, read_gtmat_file, sample_verify_disjunct,
    verify_disjunct, ComposedMatrix, ConstructOptions, DisjunctParams, MatrixError,
    VerificationKind, VerifyBudget,
};
use crate::model::{
    encode, inject_errors, random_complex_set, ComplexSet, ErrorBudget, ModelError, TestMode,
};
use crate::oracle::{self, OracleBudget};
use crate::rng;
use crate::sets::Item;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Decode(#[from] decode::DecodeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ExperimentError {
    /// Process exit code for the CLI: 2 config, 3 construction, 4
    /// verification, 5 budget, 6 data/io, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) => 2,
            ExperimentError::Construction(_) => 3,
            ExperimentError::Verification(_) => 4,
            ExperimentError::Budget(_) => 5,
            ExperimentError::Model(ModelError::Parse { .. }) => 6,
            ExperimentError::Io(_) => 6,
            _ => 1,
        }
    }
}

fn lift_matrix_error(e: MatrixError) -> ExperimentError {
    match e {
        MatrixError::BudgetExceeded { .. } => ExperimentError::Budget(e.to_string()),
        MatrixError::ConstructionFailed { .. } | MatrixError::Infeasible { .. } => {
            ExperimentError::Construction(e.to_string())
        }
        MatrixError::Parse { .. } | MatrixError::Io(_) => {
            ExperimentError::Verification(format!("matrix file unusable: {e}"))
        }
        other => ExperimentError::Config(other.to_string()),
    }
}

/// Where the measurement matrices come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatrixSource {
    /// Outer and inner both random, verified after construction.
    Random,
    /// Inner matrix from the code concatenation; outer still random (the
    /// concatenation only yields classical d-disjunct matrices).
    KautzSingleton,
    /// Both matrices from files, verified on load.
    Files { outer: PathBuf, inner: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerificationMode {
    Exhaustive,
    Sampled,
}

/// Constraints placed on the generated thresholds of each trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdPattern {
    /// No constraint beyond validity.
    Any,
    /// At least two complexes share a threshold.
    Shared,
    /// All thresholds pairwise distinct.
    Distinct,
    /// Every threshold equals its complex size (the classical reduction).
    Classical,
}

/// Full parameterization of one experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub s: usize,
    pub u_max: u32,
    pub z: usize,
    pub mode: TestMode,
    pub errors: usize,
    pub trials: usize,
    pub seed: u64,
    pub matrix_source: MatrixSource,
    pub verification: VerificationMode,
    pub threshold_pattern: ThresholdPattern,
    pub output_path: Option<PathBuf>,
    pub row_constant: f64,
    pub max_attempts: u32,
    pub verify_budget: u64,
    pub sample_trials: u64,
    pub record_timing: bool,
    pub oracle_budget: OracleBudget,
}

impl ExperimentConfig {
    /// Baseline configuration; callers override the fields they care about.
    pub fn new(n: usize, d: usize, r: usize, s: usize, z: usize, mode: TestMode) -> Self {
        ExperimentConfig {
            n,
            d,
            r,
            s,
            u_max: r as u32,
            z,
            mode,
            errors: 0,
            trials: 10,
            seed: 0,
            matrix_source: MatrixSource::Random,
            verification: VerificationMode::Exhaustive,
            threshold_pattern: ThresholdPattern::Any,
            output_path: None,
            row_constant: 3.0,
            max_attempts: 8,
            verify_budget: VerifyBudget::default().max_pair_checks as u64,
            sample_trials: 100_000,
            record_timing: false,
            oracle_budget: OracleBudget::default(),
        }
    }

    /// The outer matrix's included-column budget: the largest threshold any
    /// trial can use.
    fn outer_included(&self) -> usize {
        match (self.mode, self.threshold_pattern) {
            (TestMode::Ccmplx, _) => self.r,
            (TestMode::Gcmplx, ThresholdPattern::Classical) => self.r,
            (TestMode::Gcmplx, _) => (self.u_max as usize).min(self.r),
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let fail = |msg: String| Err(ExperimentError::Config(msg));
        if self.n < 2 {
            return fail(format!("violated: n >= 2 (n={})", self.n));
        }
        if self.d < 2 {
            return fail(format!(
                "violated: d >= 2 (d={}; the outer design needs an exclusion budget of d-1 >= 1)",
                self.d
            ));
        }
        if self.d >= self.n {
            return fail(format!("violated: d < n (d={}, n={})", self.d, self.n));
        }
        if self.s < 1 || self.s > self.d {
            return fail(format!("violated: 1 <= s <= d (s={}, d={})", self.s, self.d));
        }
        if self.r < 1 || self.r > self.d {
            return fail(format!("violated: 1 <= r <= d (r={}, d={})", self.r, self.d));
        }
        if self.u_max < 1 || self.u_max as usize > self.r {
            return fail(format!(
                "violated: 1 <= u_max <= r (u_max={}, r={})",
                self.u_max, self.r
            ));
        }
        if self.z < 1 {
            return fail("violated: z >= 1".into());
        }
        let need = self.d - 1 + self.outer_included();
        if self.n < need {
            return fail(format!(
                "violated: n >= d - 1 + included budget (n={}, need {need})",
                self.n
            ));
        }
        match self.threshold_pattern {
            ThresholdPattern::Shared => {
                if self.s < 2 || self.u_max < 2 || self.r < 2 {
                    return fail(format!(
                        "violated: shared thresholds need s >= 2, r >= 2, u_max >= 2 \
                         (s={}, r={}, u_max={})",
                        self.s, self.r, self.u_max
                    ));
                }
            }
            ThresholdPattern::Distinct
                if self.s > self.u_max as usize => {
                    return fail(format!(
                        "violated: distinct thresholds need s <= u_max (s={}, u_max={})",
                        self.s, self.u_max
                    ));
                }
            _ => {}
        }
        Ok(())
    }

    fn construct_options(&self) -> ConstructOptions {
        let budget = match self.verification {
            VerificationMode::Exhaustive => VerifyBudget {
                max_pair_checks: self.verify_budget as u128,
            },
            // force the sampled path
            VerificationMode::Sampled => VerifyBudget { max_pair_checks: 0 },
        };
        ConstructOptions {
            row_constant: self.row_constant,
            max_attempts: self.max_attempts,
            budget,
            sample_trials: self.sample_trials,
        }
    }
}

/// One trial's record: the planted truth, the recovery, and diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub planted: Vec<Vec<Item>>,
    pub thresholds: Vec<u32>,
    pub recovered: Vec<Vec<Item>>,
    pub exact_match: bool,
    pub flips: Vec<usize>,
    pub blocks_skipped: usize,
    pub blocks_sanitized_out: usize,
    pub blocks_accepted: usize,
    pub shared_threshold: bool,
    pub distinct_thresholds: bool,
    pub classical_thresholds: bool,
    pub generator_retries: u32,
    /// Deduplicated phase-1 pool equals the exact sub-complex family
    /// (generalized mode only).
    pub pool_matches_family: Option<bool>,
    /// Generalized decoder output equals the classical decoder's on the same
    /// outcome (classical-threshold trials only).
    pub reduction_match: Option<bool>,
    pub oracle_unique: Option<bool>,
    pub oracle_agrees: Option<bool>,
    pub oracle_contains_planted: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Aggregate {
    pub trials: usize,
    pub successes: usize,
    /// Fraction of exact recoveries; absent when no trials ran.
    pub success_rate: Option<f64>,
    pub vacuous: bool,
    pub n: usize,
    pub h: usize,
    pub k: usize,
    /// Total test count, always (2k + 1) * h.
    pub t_rows: usize,
    pub outer_params: DisjunctParams,
    pub inner_params: DisjunctParams,
    pub outer_verification: VerificationKind,
    pub inner_verification: VerificationKind,
    pub outer_attempts: u32,
    pub inner_attempts: u32,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub config: ExperimentConfig,
    pub aggregate: Aggregate,
    pub trials: Vec<TrialRecord>,
}

impl TrialReport {
    /// JSON lines: one object per trial, then one summary object.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            let mut line = serde_json::to_value(t).expect("trial serializes");
            line["type"] = "trial".into();
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let summary = serde_json::json!({
            "type": "summary",
            "config": self.config,
            "aggregate": self.aggregate,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    pub fn csv_header() -> &'static str {
        "n,d,r,s,u_max,z,mode,errors,trials,successes,success_rate,h,k,t_rows"
    }

    pub fn csv_row(&self) -> String {
        let mode = match self.config.mode {
            TestMode::Ccmplx => "ccmplx",
            TestMode::Gcmplx => "gcmplx",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.config.n,
            self.config.d,
            self.config.r,
            self.config.s,
            self.config.u_max,
            self.config.z,
            mode,
            self.config.errors,
            self.aggregate.trials,
            self.aggregate.successes,
            self.aggregate
                .success_rate
                .map_or(String::new(), |r| format!("{r}")),
            self.aggregate.h,
            self.aggregate.k,
            self.aggregate.t_rows
        )
    }
}

struct Matrices {
    composed: ComposedMatrix,
    outer_params: DisjunctParams,
    inner_params: DisjunctParams,
    outer_verification: VerificationKind,
    inner_verification: VerificationKind,
    outer_attempts: u32,
    inner_attempts: u32,
}

fn build_matrices(cfg: &ExperimentConfig) -> Result<Matrices, ExperimentError> {
    let opts = cfg.construct_options();
    let outer_params = DisjunctParams::new(cfg.d - 1, cfg.outer_included(), cfg.z)
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let inner_params =
        DisjunctParams::classical(cfg.d).map_err(|e| ExperimentError::Config(e.to_string()))?;

    let (outer, outer_verification, outer_attempts, inner, inner_verification, inner_attempts) =
        match &cfg.matrix_source {
            MatrixSource::Random | MatrixSource::KautzSingleton => {
                let g = random_disjunct(
                    cfg.n,
                    &outer_params,
                    rng::derive_seed(cfg.seed, rng::STREAM_OUTER, 0),
                    &opts,
                )
                .map_err(lift_matrix_error)?;
                let m = match cfg.matrix_source {
                    MatrixSource::KautzSingleton => {
                        kautz_singleton(cfg.n, cfg.d, &opts).map_err(lift_matrix_error)?
                    }
                    _ => random_disjunct(
                        cfg.n,
                        &inner_params,
                        rng::derive_seed(cfg.seed, rng::STREAM_INNER, 0),
                        &opts,
                    )
                    .map_err(lift_matrix_error)?,
                };
                (
                    g.matrix,
                    g.verification,
                    g.attempts,
                    m.matrix,
                    m.verification,
                    m.attempts,
                )
            }
            MatrixSource::Files { outer, inner } => {
                let (g, _) = read_gtmat_file(outer).map_err(lift_matrix_error)?;
                let (m, _) = read_gtmat_file(inner).map_err(lift_matrix_error)?;
                let vg = verify_loaded(&g, &outer_params, cfg, 0x47)?;
                let vm = verify_loaded(&m, &inner_params, cfg, 0x4d)?;
                (g, vg, 1, m, vm, 1)
            }
        };

    if cfg.verification == VerificationMode::Exhaustive {
        for (name, v) in [("outer", outer_verification), ("inner", inner_verification)] {
            if !v.is_exhaustive() {
                return Err(ExperimentError::Budget(format!(
                    "exhaustive verification requested but the {name} matrix could only be \
                     sampled; raise verify_budget"
                )));
            }
        }
    }

    let composed = build_t(&outer, &inner).map_err(|e| ExperimentError::Config(e.to_string()))?;
    Ok(Matrices {
        composed,
        outer_params,
        inner_params,
        outer_verification,
        inner_verification,
        outer_attempts,
        inner_attempts,
    })
}

fn verify_loaded(
    mat: &crate::matrix::BinaryMatrix,
    params: &DisjunctParams,
    cfg: &ExperimentConfig,
    salt: u64,
) -> Result<VerificationKind, ExperimentError> {
    match cfg.verification {
        VerificationMode::Exhaustive => {
            let budget = VerifyBudget {
                max_pair_checks: cfg.verify_budget as u128,
            };
            let out = verify_disjunct(mat, params, &budget).map_err(lift_matrix_error)?;
            match out.counterexample() {
                None => Ok(VerificationKind::Exhaustive),
                Some(c) => Err(ExperimentError::Verification(format!(
                    "loaded matrix is not ({}, {}; {}]-disjunct: S1={:?}, S2={:?} \
                     has {} witness rows",
                    params.d(),
                    params.r(),
                    params.z(),
                    c.excluded,
                    c.included,
                    c.witness_rows
                ))),
            }
        }
        VerificationMode::Sampled => {
            let seed = rng::derive_seed(cfg.seed, rng::STREAM_CONSTRUCT_VERIFY, salt);
            let out = sample_verify_disjunct(mat, params, cfg.sample_trials, seed)
                .map_err(lift_matrix_error)?;
            if out.passed {
                Ok(VerificationKind::Sampled {
                    trials: cfg.sample_trials,
                })
            } else {
                Err(ExperimentError::Verification(format!(
                    "loaded matrix refuted by sampling after {} trials",
                    out.trials_run
                )))
            }
        }
    }
}

const GENERATOR_RETRIES: u32 = 2000;

/// Draws a trial instance honoring the threshold pattern, rejecting
/// generalized-mode instances the scheme provably cannot identify.
fn draw_instance(
    cfg: &ExperimentConfig,
    trial_seed: u64,
) -> Result<(ComplexSet, u32), ExperimentError> {
    for retry in 0..GENERATOR_RETRIES {
        let seed = rng::derive_seed(trial_seed, 0x6765, retry as u64);
        let raw = random_complex_set(cfg.n, cfg.d, cfg.r, cfg.s, cfg.u_max, seed)?;
        let set = match (cfg.mode, cfg.threshold_pattern) {
            (TestMode::Ccmplx, _) | (_, ThresholdPattern::Classical) => {
                ComplexSet::classical(cfg.n, raw.complexes().to_vec())?
            }
            _ => raw,
        };
        let pattern_ok = match cfg.threshold_pattern {
            ThresholdPattern::Any | ThresholdPattern::Classical => true,
            ThresholdPattern::Shared => has_shared_threshold(&set),
            ThresholdPattern::Distinct => all_distinct_thresholds(&set),
        };
        if !pattern_ok {
            continue;
        }
        if cfg.mode == TestMode::Gcmplx && !set.gcmplx_identifiable() {
            continue;
        }
        return Ok((set, retry));
    }
    Err(ExperimentError::Config(format!(
        "no admissible trial instance after {GENERATOR_RETRIES} draws \
         (n={}, d={}, r={}, s={}, u_max={}, pattern {:?})",
        cfg.n, cfg.d, cfg.r, cfg.s, cfg.u_max, cfg.threshold_pattern
    )))
}

fn has_shared_threshold(set: &ComplexSet) -> bool {
    let th = set.thresholds();
    (0..th.len()).any(|a| (a + 1..th.len()).any(|b| th[a] == th[b]))
}

fn all_distinct_thresholds(set: &ComplexSet) -> bool {
    let th = set.thresholds();
    (0..th.len()).all(|a| (a + 1..th.len()).all(|b| th[a] != th[b]))
}

/// Planted complexes with thresholds, sorted by (cardinality, lex) of the
/// complex so records are comparable.
fn canonical_with_thresholds(set: &ComplexSet) -> (Vec<Vec<Item>>, Vec<u32>) {
    let mut pairs: Vec<(Vec<Item>, u32)> = set
        .complexes()
        .iter()
        .cloned()
        .zip(set.thresholds().iter().copied())
        .collect();
    pairs.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    pairs.into_iter().unzip()
}

fn oracle_probe(
    cfg: &ExperimentConfig,
    t: &ComposedMatrix,
    observed: &crate::model::OutcomeVector,
    planted: &[Vec<Item>],
    recovered: &[Vec<Item>],
) -> (Option<bool>, Option<bool>, Option<bool>) {
    if cfg.n > cfg.oracle_budget.max_n || cfg.d > cfg.oracle_budget.max_d {
        return (None, None, None);
    }
    let tol = (cfg.z - 1) / 2;
    let candidates = match cfg.mode {
        TestMode::Ccmplx => {
            oracle::oracle_recover_ccmplx(t, observed, cfg.d, cfg.r, cfg.s, tol, &cfg.oracle_budget)
        }
        TestMode::Gcmplx => oracle::oracle_recover_gcmplx(
            t,
            observed,
            cfg.d,
            cfg.r,
            cfg.s,
            cfg.u_max,
            tol,
            &cfg.oracle_budget,
        ),
    };
    let candidates = match candidates {
        Ok(c) => c,
        // over budget on this draw: skip rather than fail the experiment
        Err(_) => return (None, None, None),
    };
    let unique = oracle::unique_complexes(&candidates);
    let contains = candidates.iter().any(|c| c.canonical_complexes() == planted);
    match unique {
        Some(family) => (Some(true), Some(family == recovered), Some(contains)),
        None => (Some(false), None, Some(contains)),
    }
}

/// Runs one experiment: build, verify, trial loop, score, report.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<TrialReport, ExperimentError> {
    cfg.validate()?;
    let mats = build_matrices(cfg)?;
    let t = &mats.composed;
    let (h, k) = (t.block_count(), t.inner_rows());
    let t_rows = t.test_count();
    assert_eq!(t_rows, t.composed().rows());
    assert_eq!(t_rows, (2 * k + 1) * h);

    if cfg.errors > t_rows {
        return Err(ExperimentError::Config(format!(
            "violated: errors <= test count (errors={}, tests={t_rows})",
            cfg.errors
        )));
    }

    let cutoff = ((cfg.z - 1) / 2) as u32;
    let mut trials = Vec::with_capacity(cfg.trials);
    let mut successes = 0usize;

    for index in 0..cfg.trials {
        let started = Instant::now();
        let trial_seed = rng::derive_seed(cfg.seed, rng::STREAM_TRIAL_SET, index as u64);
        let (planted_set, generator_retries) = draw_instance(cfg, trial_seed)?;
        let clean = encode(t, &planted_set, cfg.mode)?;
        let budget = ErrorBudget::random(cfg.errors);
        let flip_seed = rng::derive_seed(cfg.seed, rng::STREAM_TRIAL_FLIPS, index as u64);
        let (observed, flips) = inject_errors(&clean, &budget, flip_seed)?;

        let result = match cfg.mode {
            TestMode::Ccmplx => decode::algorithm1(&observed, t, cfg.z)?,
            TestMode::Gcmplx => decode::algorithm2(&observed, t, cfg.z)?,
        };

        let (planted, thresholds) = canonical_with_thresholds(&planted_set);
        let recovered = result.complexes.clone();
        let exact_match = planted == recovered;
        if exact_match {
            successes += 1;
        }

        let (mut skipped, mut dropped, mut accepted) = (0usize, 0usize, 0usize);
        for b in &result.blocks {
            match b {
                BlockDisposition::Skipped => skipped += 1,
                BlockDisposition::SanitizedOut { .. } => dropped += 1,
                BlockDisposition::Accepted { .. } => accepted += 1,
            }
        }

        let pool_matches_family = match cfg.mode {
            TestMode::Gcmplx => {
                let pool: Vec<Vec<Item>> = result
                    .frequencies
                    .iter()
                    .filter(|f| f.count > cutoff)
                    .map(|f| f.items.clone())
                    .collect();
                Some(pool == oracle::oracle_min_subcomplexes(&planted_set))
            }
            TestMode::Ccmplx => None,
        };

        let reduction_match = if cfg.mode == TestMode::Gcmplx && planted_set.is_classical() {
            let classical = decode::algorithm1(&observed, t, cfg.z)?;
            Some(classical.complexes == recovered)
        } else {
            None
        };

        let (oracle_unique, oracle_agrees, oracle_contains_planted) =
            oracle_probe(cfg, t, &observed, &planted, &recovered);

        let wall_ms = cfg
            .record_timing
            .then(|| started.elapsed().as_secs_f64() * 1e3);

        trials.push(TrialRecord {
            index,
            shared_threshold: has_shared_threshold(&planted_set),
            distinct_thresholds: all_distinct_thresholds(&planted_set),
            classical_thresholds: planted_set.is_classical(),
            planted,
            thresholds,
            recovered,
            exact_match,
            flips,
            blocks_skipped: skipped,
            blocks_sanitized_out: dropped,
            blocks_accepted: accepted,
            generator_retries,
            pool_matches_family,
            reduction_match,
            oracle_unique,
            oracle_agrees,
            oracle_contains_planted,
            wall_ms,
        });
    }

    let aggregate = Aggregate {
        trials: cfg.trials,
        successes,
        success_rate: (cfg.trials > 0).then(|| successes as f64 / cfg.trials as f64),
        vacuous: cfg.trials == 0,
        n: cfg.n,
        h,
        k,
        t_rows,
        outer_params: mats.outer_params,
        inner_params: mats.inner_params,
        outer_verification: mats.outer_verification,
        inner_verification: mats.inner_verification,
        outer_attempts: mats.outer_attempts,
        inner_attempts: mats.inner_attempts,
        within_tolerance: cfg.errors <= (cfg.z - 1) / 2,
    };
    let report = TrialReport {
        config: cfg.clone(),
        aggregate,
        trials,
    };

    if let Some(path) = &cfg.output_path {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)?;
            }
        }
        fs::write(path, report.to_jsonl())?;
    }
    Ok(report)
}

#[derive(Debug)]
pub enum PointStatus {
    Completed(Box<TrialReport>),
    SkippedExisting,
    Failed(ExperimentError),
}

#[derive(Debug)]
pub struct SweepPoint {
    pub config: ExperimentConfig,
    pub status: PointStatus,
}

/// Runs every point of a grid. Points whose output file already exists are
/// skipped unless `force`; per-point failures are recorded without aborting
/// the rest of the grid.
pub fn sweep(points: &[ExperimentConfig], force: bool) -> Vec<SweepPoint> {
    points
        .iter()
        .map(|cfg| {
            let exists = cfg
                .output_path
                .as_ref()
                .map(|p| p.exists())
                .unwrap_or(false);
            let status = if exists && !force {
                PointStatus::SkippedExisting
            } else {
                match run_experiment(cfg) {
                    Ok(r) => PointStatus::Completed(Box::new(r)),
                    Err(e) => PointStatus::Failed(e),
                }
            };
            SweepPoint {
                config: cfg.clone(),
                status,
            }
        })
        .collect()
}

/// Aggregate CSV over completed points.
pub fn write_sweep_csv(points: &[SweepPoint], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{}", TrialReport::csv_header())?;
    for p in points {
        if let PointStatus::Completed(report) = &p.status {
            writeln!(out, "{}", report.csv_row())?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// key=value config files

/// Parses `key=value` lines ('#' comments allowed). Values keep commas; the
/// sweep expander splits them.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ExperimentError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            ExperimentError::Config(format!(
                "config line {} is not key=value: '{line}'",
                idx + 1
            ))
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn parse_field<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
    default: T,
) -> Result<T, ExperimentError> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| ExperimentError::Config(format!("bad value '{v}' for key '{key}'"))),
    }
}

const CONFIG_KEYS: &[&str] = &[
    "n",
    "d",
    "r",
    "s",
    "u-max",
    "z",
    "mode",
    "errors",
    "trials",
    "seed",
    "matrix-source",
    "g-file",
    "m-file",
    "verification",
    "threshold-pattern",
    "output",
    "row-constant",
    "max-attempts",
    "verify-budget",
    "sample-trials",
    "record-timing",
];

/// Builds a config from parsed keys, rejecting unknown keys and naming the
/// violated constraint on validation failure.
pub fn config_from_map(
    map: &BTreeMap<String, String>,
) -> Result<ExperimentConfig, ExperimentError> {
    for key in map.keys() {
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(ExperimentError::Config(format!(
                "unknown config key '{key}' (known: {})",
                CONFIG_KEYS.join(", ")
            )));
        }
    }
    let n = parse_field(map, "n", 0usize)?;
    let d = parse_field(map, "d", 0usize)?;
    let r = parse_field(map, "r", 1usize)?;
    let s = parse_field(map, "s", 1usize)?;
    let mode = match map.get("mode").map(String::as_str) {
        None | Some("ccmplx") => TestMode::Ccmplx,
        Some("gcmplx") => TestMode::Gcmplx,
        Some(other) => {
            return Err(ExperimentError::Config(format!(
                "bad mode '{other}' (ccmplx or gcmplx)"
            )))
        }
    };
    let z = parse_field(map, "z", 1usize)?;
    let mut cfg = ExperimentConfig::new(n, d, r, s, z, mode);
    cfg.u_max = parse_field(map, "u-max", r as u32)?;
    cfg.errors = parse_field(map, "errors", 0usize)?;
    cfg.trials = parse_field(map, "trials", 10usize)?;
    cfg.seed = parse_field(map, "seed", 0u64)?;
    cfg.matrix_source = match map.get("matrix-source").map(String::as_str) {
        None | Some("random") => MatrixSource::Random,
        Some("kautz-singleton") => MatrixSource::KautzSingleton,
        Some("file") => {
            let outer = map
                .get("g-file")
                .ok_or_else(|| ExperimentError::Config("matrix-source=file needs g-file".into()))?;
            let inner = map
                .get("m-file")
                .ok_or_else(|| ExperimentError::Config("matrix-source=file needs m-file".into()))?;
            MatrixSource::Files {
                outer: PathBuf::from(outer),
                inner: PathBuf::from(inner),
            }
        }
        Some(other) => {
            return Err(ExperimentError::Config(format!(
                "bad matrix-source '{other}' (random, kautz-singleton or file)"
            )))
        }
    };
    cfg.verification = match map.get("verification").map(String::as_str) {
        None | Some("exhaustive") => VerificationMode::Exhaustive,
        Some("sampled") => VerificationMode::Sampled,
        Some(other) => {
            return Err(ExperimentError::Config(format!(
                "bad verification '{other}' (exhaustive or sampled)"
            )))
        }
    };
    cfg.threshold_pattern = match map.get("threshold-pattern").map(String::as_str) {
        None | Some("any") => ThresholdPattern::Any,
        Some("shared") => ThresholdPattern::Shared,
        Some("distinct") => ThresholdPattern::Distinct,
        Some("classical") => ThresholdPattern::Classical,
        Some(other) => {
            return Err(ExperimentError::Config(format!(
                "bad threshold-pattern '{other}' (any, shared, distinct or classical)"
            )))
        }
    };
    cfg.output_path = map.get("output").map(PathBuf::from);
    cfg.row_constant = parse_field(map, "row-constant", cfg.row_constant)?;
    cfg.max_attempts = parse_field(map, "max-attempts", cfg.max_attempts)?;
    cfg.verify_budget = parse_field(map, "verify-budget", cfg.verify_budget)?;
    cfg.sample_trials = parse_field(map, "sample-trials", cfg.sample_trials)?;
    cfg.record_timing = parse_field(map, "record-timing", cfg.record_timing)?;
    cfg.validate()?;
    Ok(cfg)
}

/// Expands comma-separated values into the Cartesian grid of configs. Each
/// point's output file name gains the varying key=value pairs.
pub fn expand_sweep(
    map: &BTreeMap<String, String>,
) -> Result<Vec<ExperimentConfig>, ExperimentError> {
    let mut varying: Vec<(&String, Vec<String>)> = Vec::new();
    let mut base = map.clone();
    for (k, v) in map {
        if v.contains(',') && k != "output" && k != "g-file" && k != "m-file" {
            varying.push((k, v.split(',').map(|p| p.trim().to_string()).collect()));
        }
    }
    if varying.is_empty() {
        return Ok(vec![config_from_map(&base)?]);
    }
    let mut points = Vec::new();
    let mut idx = vec![0usize; varying.len()];
    loop {
        for (slot, (k, vals)) in idx.iter().zip(&varying) {
            base.insert((*k).clone(), vals[*slot].clone());
        }
        let mut cfg = config_from_map(&base)?;
        if let Some(path) = &cfg.output_path {
            let suffix: Vec<String> = idx
                .iter()
                .zip(&varying)
                .map(|(slot, (k, vals))| format!("{k}={}", vals[*slot]))
                .collect();
            cfg.output_path = Some(point_path(path, &suffix.join("_")));
        }
        points.push(cfg);

        let mut pos = 0;
        loop {
            if pos == idx.len() {
                break;
            }
            idx[pos] += 1;
            if idx[pos] < varying[pos].1.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == idx.len() {
            break;
        }
    }
    Ok(points)
}

fn point_path(base: &Path, suffix: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "report".to_string());
    let ext = base
        .extension()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "jsonl".to_string());
    base.with_file_name(format!("{stem}__{suffix}.{ext}"))
}

//! Acceptance suite: one pass/fail line per release criterion.
//!
//! The criteria pin exactness claims (conversion, recovery, pool identity,
//! reduction), the error-tolerance boundary, oracle agreement, and the
//! structural guarantees (test count shape, exhaustive certification of
//! every matrix used here). Tolerances are exact: a single failing trial
//! fails its criterion. Run with `cargo test --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use cmplxgt::bits::Bitset;
use cmplxgt::decode::convert2nacgt;
use cmplxgt::experiment::{
    run_experiment, sweep, ExperimentConfig, PointStatus, ThresholdPattern, TrialReport,
};
use cmplxgt::matrix::{
    build_a, build_t, kautz_singleton, verify_disjunct, BinaryMatrix, ConstructOptions,
    DisjunctParams, VerifyBudget,
};
use cmplxgt::model::TestMode;
use cmplxgt::oracle::OracleBudget;
use cmplxgt::sets;

struct Criterion {
    number: usize,
    name: &'static str,
    outcome: Result<String, String>,
}

fn run_all() -> Vec<Criterion> {
    let mut results = Vec::new();
    let mut certified: Vec<TrialReport> = Vec::new();

    results.push(Criterion {
        number: 1,
        name: "conversion exactness",
        outcome: criterion_conversion(),
    });
    results.push(Criterion {
        number: 2,
        name: "classical exact recovery",
        outcome: criterion_ccmplx(&mut certified),
    });
    results.push(Criterion {
        number: 3,
        name: "generalized exact recovery",
        outcome: criterion_gcmplx(&mut certified),
    });
    let reduction_reports = match criterion_reduction() {
        Ok((msg, reports)) => {
            certified.extend(reports.iter().cloned());
            (Ok(msg), reports)
        }
        Err(e) => (Err(e), Vec::new()),
    };
    results.push(Criterion {
        number: 4,
        name: "phase-1 pool identity",
        outcome: criterion_pool_identity(&certified),
    });
    results.push(Criterion {
        number: 5,
        name: "reduction identity",
        outcome: reduction_reports.0,
    });
    results.push(Criterion {
        number: 6,
        name: "error-tolerance boundary",
        outcome: criterion_boundary(&mut certified),
    });
    results.push(Criterion {
        number: 7,
        name: "oracle agreement",
        outcome: criterion_oracle(&mut certified),
    });
    results.push(Criterion {
        number: 8,
        name: "structural test count",
        outcome: criterion_test_count(&certified),
    });
    results.push(Criterion {
        number: 9,
        name: "disjunctness certification",
        outcome: criterion_certification(&certified),
    });
    results
}

#[test]
fn acceptance() {
    let results = run_all();
    let mut failures = Vec::new();
    for c in &results {
        match &c.outcome {
            Ok(detail) => println!("criterion {} ({}): PASS - {detail}", c.number, c.name),
            Err(detail) => {
                println!("criterion {} ({}): FAIL - {detail}", c.number, c.name);
                failures.push(c.number);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

// ---------------------------------------------------------------------------
// criterion 1: conversion exactness, exhaustively over n <= 10, |supp| <= 4

fn criterion_conversion() -> Result<String, String> {
    let mut checked = 0u64;
    for n in 2..=10usize {
        let mut mats: Vec<BinaryMatrix> = vec![BinaryMatrix::identity(n)];
        if n == 10 {
            let ks = kautz_singleton(10, 4, &ConstructOptions::default())
                .map_err(|e| format!("code-concatenation inner matrix failed: {e}"))?;
            assert!(ks.matrix.rows() <= 40);
            mats.push(ks.matrix);
        }
        for m in &mats {
            // the identity is d-disjunct for every d < n; certify at the
            // relevant strength
            let d = 4.min(n - 1);
            let params = DisjunctParams::classical(d).map_err(|e| e.to_string())?;
            let check = verify_disjunct(m, &params, &VerifyBudget::default())
                .map_err(|e| e.to_string())?;
            if !check.is_disjunct() {
                return Err(format!("inner matrix for n={n} failed {d}-disjunct check"));
            }
            let a = build_a(m);
            for u in 1..=4.min(n) {
                let mut pick: Vec<usize> = (0..u).collect();
                loop {
                    let x = Bitset::from_indices(n, &pick);
                    let mut z = Bitset::zeros(2 * m.rows());
                    for row in 0..a.rows() {
                        let hits = (0..n).filter(|&j| a.get(row, j) && x.get(j)).count();
                        if hits >= u {
                            z.set(row, true);
                        }
                    }
                    let converted = convert2nacgt(&z).map_err(|e| e.to_string())?;
                    for row in 0..m.rows() {
                        let or_bit = (0..n).any(|j| m.get(row, j) && x.get(j));
                        if converted.get(row) != or_bit {
                            return Err(format!(
                                "conversion mismatch at n={n}, support {pick:?}, row {row}"
                            ));
                        }
                    }
                    checked += 1;
                    if !sets::next_combination(&mut pick, n) {
                        break;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{checked} support vectors converted bit-exactly (n <= 10, |supp| <= 4)"
    ))
}

// ---------------------------------------------------------------------------
// criterion 2: classical recovery, 100% over >= 500 seeded trials

fn base_config(
    (n, d, r, s, z): (usize, usize, usize, usize, usize),
    mode: TestMode,
    trials: usize,
    seed: u64,
) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(n, d, r, s, z, mode);
    cfg.trials = trials;
    cfg.errors = (z - 1) / 2;
    cfg.seed = seed;
    // criteria 2-6 disable the oracle probe; criterion 7 re-enables it
    cfg.oracle_budget = OracleBudget {
        max_n: 0,
        max_d: 0,
        max_candidates: 0,
    };
    cfg
}

fn collect_failures(report: &TrialReport, label: &str, failures: &mut Vec<String>) {
    for t in &report.trials {
        if !t.exact_match {
            failures.push(format!(
                "{label} trial {}: planted {:?} recovered {:?} (flips {:?})",
                t.index, t.planted, t.recovered, t.flips
            ));
        }
    }
}

fn criterion_ccmplx(certified: &mut Vec<TrialReport>) -> Result<String, String> {
    let points = [
        (10, 3, 2, 2, 1),
        (12, 4, 2, 2, 3),
        (14, 4, 2, 3, 5),
        (16, 5, 2, 2, 3),
        (12, 6, 2, 2, 3),
        (20, 4, 2, 2, 5),
        (30, 3, 1, 2, 3),
        (11, 3, 3, 1, 5),
        (15, 5, 3, 3, 1),
    ];
    let mut total = 0usize;
    let mut failures = Vec::new();
    for (i, &pt) in points.iter().enumerate() {
        let cfg = base_config(pt, TestMode::Ccmplx, 60, 9100 + i as u64);
        let report =
            run_experiment(&cfg).map_err(|e| format!("point {pt:?} failed to run: {e}"))?;
        total += report.aggregate.trials;
        collect_failures(&report, &format!("{pt:?}"), &mut failures);
        certified.push(report);
    }
    if !failures.is_empty() {
        return Err(format!(
            "{} of {total} trials missed exact recovery; first: {}",
            failures.len(),
            failures[0]
        ));
    }
    if total < 500 {
        return Err(format!("only {total} trials ran, need >= 500"));
    }
    Ok(format!(
        "{total} trials across {} parameter points, all exact (e = floor((z-1)/2) flips each)",
        points.len()
    ))
}

// ---------------------------------------------------------------------------
// criterion 3: generalized recovery, shared- and distinct-threshold mixes

fn criterion_gcmplx(certified: &mut Vec<TrialReport>) -> Result<String, String> {
    let points: [(usize, usize, usize, usize, u32, usize, ThresholdPattern); 8] = [
        (12, 5, 3, 2, 2, 3, ThresholdPattern::Shared),
        (14, 6, 3, 3, 2, 3, ThresholdPattern::Shared),
        (10, 4, 2, 2, 2, 1, ThresholdPattern::Shared),
        (12, 5, 3, 2, 3, 3, ThresholdPattern::Distinct),
        (13, 5, 2, 2, 2, 5, ThresholdPattern::Distinct),
        (10, 4, 2, 2, 2, 1, ThresholdPattern::Distinct),
        (20, 5, 2, 2, 2, 3, ThresholdPattern::Any),
        (30, 4, 2, 2, 2, 3, ThresholdPattern::Any),
    ];
    let mut total = 0usize;
    let (mut shared, mut distinct) = (0usize, 0usize);
    let mut failures = Vec::new();
    for (i, &(n, d, r, s, u_max, z, pattern)) in points.iter().enumerate() {
        let mut cfg = base_config((n, d, r, s, z), TestMode::Gcmplx, 70, 9300 + i as u64);
        cfg.u_max = u_max;
        cfg.threshold_pattern = pattern;
        let report = run_experiment(&cfg)
            .map_err(|e| format!("point (n={n}, d={d}, r={r}, s={s}, z={z}) failed: {e}"))?;
        total += report.aggregate.trials;
        for t in &report.trials {
            if t.shared_threshold {
                shared += 1;
            }
            if t.distinct_thresholds {
                distinct += 1;
            }
        }
        collect_failures(&report, &format!("gcmplx point {i}"), &mut failures);
        certified.push(report);
    }
    if !failures.is_empty() {
        return Err(format!(
            "{} of {total} trials missed exact recovery; first: {}",
            failures.len(),
            failures[0]
        ));
    }
    if total < 500 || shared < 100 || distinct < 100 {
        return Err(format!(
            "coverage too thin: {total} trials, {shared} shared-threshold, {distinct} distinct"
        ));
    }
    Ok(format!(
        "{total} trials all exact ({shared} with a shared threshold, {distinct} all-distinct)"
    ))
}

// ---------------------------------------------------------------------------
// criterion 4: deduplicated phase-1 pool equals the exact sub-complex family

fn criterion_pool_identity(certified: &[TrialReport]) -> Result<String, String> {
    let mut error_free = 0usize;
    let mut with_errors = 0usize;
    for report in certified {
        if report.config.mode != TestMode::Gcmplx {
            continue;
        }
        for t in &report.trials {
            match t.pool_matches_family {
                Some(true) => {
                    if t.flips.is_empty() {
                        error_free += 1;
                    } else {
                        with_errors += 1;
                    }
                }
                Some(false) => {
                    return Err(format!(
                        "pool mismatch in an {} trial: planted {:?}",
                        if t.flips.is_empty() {
                            "error-free"
                        } else {
                            "error-injected"
                        },
                        t.planted
                    ));
                }
                None => {}
            }
        }
    }
    if error_free == 0 {
        return Err("no error-free generalized trials were recorded".into());
    }
    Ok(format!(
        "pool == sub-complex family in all {error_free} error-free trials \
         (and in {with_errors} tolerated-error trials)"
    ))
}

// ---------------------------------------------------------------------------
// criterion 5: with full thresholds the two decoders agree bit for bit

fn criterion_reduction() -> Result<(String, Vec<TrialReport>), String> {
    let points = [
        (12, 4, 2, 2, 3),
        (14, 5, 3, 2, 1),
        (10, 4, 2, 3, 5),
    ];
    let mut reports = Vec::new();
    let mut total = 0usize;
    for (i, &pt) in points.iter().enumerate() {
        let mut cfg = base_config(pt, TestMode::Gcmplx, 50, 9500 + i as u64);
        cfg.threshold_pattern = ThresholdPattern::Classical;
        let report =
            run_experiment(&cfg).map_err(|e| format!("reduction point {pt:?} failed: {e}"))?;
        for t in &report.trials {
            if !t.classical_thresholds {
                return Err(format!("trial {} drew non-classical thresholds", t.index));
            }
            match t.reduction_match {
                Some(true) => total += 1,
                Some(false) => {
                    return Err(format!(
                        "decoders disagreed on trial {}: planted {:?}",
                        t.index, t.planted
                    ));
                }
                None => return Err(format!("trial {} skipped the reduction check", t.index)),
            }
            if !t.exact_match {
                return Err(format!(
                    "reduction trial {} missed recovery: planted {:?} recovered {:?}",
                    t.index, t.planted, t.recovered
                ));
            }
        }
        reports.push(report);
    }
    Ok((
        format!("generalized == classical decoder on all {total} full-threshold trials"),
        reports,
    ))
}

// ---------------------------------------------------------------------------
// criterion 6: error-tolerance boundary at z = 5

fn criterion_boundary(certified: &mut Vec<TrialReport>) -> Result<String, String> {
    let mut points = Vec::new();
    for e in 0..=4usize {
        let mut cfg = base_config((12, 4, 2, 2, 5), TestMode::Ccmplx, 40, 9700);
        cfg.errors = e;
        points.push(cfg);
    }
    let outcomes = sweep(&points, false);
    let mut rates = Vec::new();
    for (e, point) in outcomes.iter().enumerate() {
        match &point.status {
            PointStatus::Completed(report) => {
                let rate = report.aggregate.success_rate.unwrap_or(0.0);
                rates.push((e, rate));
                certified.push((**report).clone());
            }
            other => return Err(format!("sweep point e={e} did not complete: {other:?}")),
        }
    }
    for &(e, rate) in &rates {
        if e <= 2 && rate < 1.0 {
            return Err(format!(
                "success rate {rate} at e={e} (must be 1.0 for e <= floor((z-1)/2) = 2)"
            ));
        }
    }
    let beyond: Vec<String> = rates
        .iter()
        .filter(|(e, _)| *e > 2)
        .map(|(e, r)| format!("e={e}: {r:.2}"))
        .collect();
    Ok(format!(
        "100% recovery for e <= 2; beyond tolerance (recorded, not asserted): {}",
        beyond.join(", ")
    ))
}

// ---------------------------------------------------------------------------
// criterion 7: decoder output equals the oracle's unique candidate

fn criterion_oracle(certified: &mut Vec<TrialReport>) -> Result<String, String> {
    let mut unique_checked = 0usize;
    let mut membership_checked = 0usize;
    for (mode, seed) in [(TestMode::Ccmplx, 9900u64), (TestMode::Gcmplx, 9901u64)] {
        let mut cfg = base_config((8, 3, 2, 2, 3), mode, 30, seed);
        cfg.u_max = 2;
        cfg.oracle_budget = OracleBudget::default();
        let report =
            run_experiment(&cfg).map_err(|e| format!("oracle point ({mode:?}) failed: {e}"))?;
        for t in &report.trials {
            match t.oracle_unique {
                Some(true) => {
                    if t.oracle_agrees != Some(true) {
                        return Err(format!(
                            "decoder disagreed with the unique oracle candidate on trial {} \
                             ({mode:?}): planted {:?} recovered {:?}",
                            t.index, t.planted, t.recovered
                        ));
                    }
                    unique_checked += 1;
                }
                Some(false) => {
                    // under-determined instance: membership is the contract
                    if t.oracle_contains_planted != Some(true) {
                        return Err(format!(
                            "planted set missing from oracle candidates on trial {} ({mode:?})",
                            t.index
                        ));
                    }
                    membership_checked += 1;
                }
                None => return Err(format!("oracle skipped trial {} ({mode:?})", t.index)),
            }
        }
        certified.push(report);
    }
    if unique_checked == 0 {
        return Err("no uniquely-determined oracle instances occurred".into());
    }
    Ok(format!(
        "{unique_checked} unique-candidate trials agreed exactly; \
         {membership_checked} under-determined trials passed membership"
    ))
}

// ---------------------------------------------------------------------------
// criterion 8: every composed design reports t = (2k+1) h

fn criterion_test_count(certified: &[TrialReport]) -> Result<String, String> {
    for report in certified {
        let a = &report.aggregate;
        if a.t_rows != (2 * a.k + 1) * a.h {
            return Err(format!(
                "report for n={} has t={} but (2k+1)h={}",
                a.n,
                a.t_rows,
                (2 * a.k + 1) * a.h
            ));
        }
    }
    // direct spot checks on raw compositions
    for (h, k, n) in [(1usize, 1usize, 2usize), (3, 4, 7), (5, 2, 9)] {
        let g = BinaryMatrix::from_fn(h, n, |i, j| (i + j) % 2 == 0);
        let m = BinaryMatrix::from_fn(k, n, |i, j| (i * j) % 3 == 0);
        let t = build_t(&g, &m).map_err(|e| e.to_string())?;
        if t.composed().rows() != (2 * k + 1) * h || t.test_count() != t.composed().rows() {
            return Err(format!("composition shape broken for h={h}, k={k}, n={n}"));
        }
    }
    Ok(format!(
        "t = (2k+1)h held in all {} experiment reports and 3 direct compositions",
        certified.len()
    ))
}

// ---------------------------------------------------------------------------
// criterion 9: all matrices behind criteria 2-7 were exhaustively certified

fn criterion_certification(certified: &[TrialReport]) -> Result<String, String> {
    if certified.is_empty() {
        return Err("no reports collected".into());
    }
    for report in certified {
        let a = &report.aggregate;
        if !a.outer_verification.is_exhaustive() || !a.inner_verification.is_exhaustive() {
            return Err(format!(
                "report for n={} used a non-exhaustive verification ({:?}/{:?})",
                a.n, a.outer_verification, a.inner_verification
            ));
        }
    }
    let retried = certified
        .iter()
        .filter(|r| r.aggregate.outer_attempts > 1 || r.aggregate.inner_attempts > 1)
        .count();
    Ok(format!(
        "all {} reports used exhaustively verified matrices ({retried} needed construction retries)",
        certified.len()
    ))
}

//! Brute-force reference recovery for certifying the decoders.
//!
//! The oracle enumerates every legal complex-set hypothesis within declared
//! bounds and keeps those whose error-free encoding lies within the flip
//! tolerance of the observed outcome. It shares the channel simulation with
//! the model layer but never touches the decoders, so agreement between a
//! unique oracle candidate and a decoder output is meaningful evidence.
//!
//! Enumeration is bounded: budgets abort with an error instead of running
//! unbounded, and a sound per-complex prune (a hypothesis containing complex
//! C is already inconsistent if C alone fires on more observed-negative
//! indicator bits than the tolerance allows) keeps the combination space at
//! desk scale.

use crate::matrix::ComposedMatrix;
use crate::model::{ComplexSet, OutcomeVector, TestMode};
use crate::sets::{self, Item};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid oracle query: {0}")]
    InvalidQuery(String),
}

/// Enumeration caps. The oracle exists to certify desk-scale instances;
/// anything bigger should be rejected, not attempted.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_d: usize,
    pub max_candidates: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 16,
            max_d: 6,
            max_candidates: 2_000_000,
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// All candidate complexes: subsets of the allowed items with size in
/// `1..=r_max`, ordered by (size, lexicographic).
fn enumerate_complexes(items: &[Item], r_max: usize) -> Vec<Vec<Item>> {
    let mut out = Vec::new();
    for size in 1..=r_max.min(items.len()) {
        out.extend(sets::k_subsets(items, size));
    }
    out
}

/// Exact sub-complex family of a hypothesis: every threshold-sized subset of
/// every complex, deduplicated, canonical order.
pub fn oracle_min_subcomplexes(d: &ComplexSet) -> Vec<Vec<Item>> {
    let mut family = Vec::new();
    for (c, &u) in d.complexes().iter().zip(d.thresholds()) {
        family.extend(sets::k_subsets(c, u as usize));
    }
    sets::canonical_family(family)
}

/// Counts mismatches between the candidate's error-free encoding and the
/// observed outcome, aborting early once `tol` is exceeded. Returns true iff
/// the candidate is consistent.
fn consistent_within(
    t: &ComposedMatrix,
    candidate: &ComplexSet,
    mode: TestMode,
    observed: &OutcomeVector,
    tol: usize,
) -> bool {
    let masks = candidate.complex_masks();
    let thresholds = candidate.thresholds().to_vec();
    let x = candidate.plain_mask();
    let words = x.words().len();
    let h = t.block_count();
    let k = t.inner_rows();

    let mut mismatches = 0usize;
    let mut restricted = vec![0u64; words];
    let mut probe = vec![0u64; words];
    for i in 0..h {
        let grow = t.outer().row_words(i);
        for (w, (g, xv)) in restricted.iter_mut().zip(grow.iter().zip(x.words())) {
            *w = g & xv;
        }
        if crate::model::test_mask(mode, &restricted, &masks, &thresholds) != observed.indicator(i)
        {
            mismatches += 1;
            if mismatches > tol {
                return false;
            }
        }
        for l in 0..k {
            for (p, (m, r)) in probe
                .iter_mut()
                .zip(t.inner().row_words(l).iter().zip(&restricted))
            {
                *p = m & r;
            }
            if crate::model::test_mask(mode, &probe, &masks, &thresholds)
                != observed.inner_bit(i, l)
            {
                mismatches += 1;
                if mismatches > tol {
                    return false;
                }
            }
            for (p, (m, r)) in probe
                .iter_mut()
                .zip(t.inner_complement().row_words(l).iter().zip(&restricted))
            {
                *p = m & r;
            }
            if crate::model::test_mask(mode, &probe, &masks, &thresholds)
                != observed.comp_bit(i, l)
            {
                mismatches += 1;
                if mismatches > tol {
                    return false;
                }
            }
        }
    }
    true
}

/// Sound single-complex prune: a hypothesis containing `c` (at threshold
/// `u`) fires wherever `c` alone does, so observed-negative indicators where
/// `c` fires are definite mismatches. More than `tol` of them rules `c` out
/// of every candidate.
fn complex_viable(
    t: &ComposedMatrix,
    c: &[Item],
    u: usize,
    observed: &OutcomeVector,
    tol: usize,
) -> bool {
    let n = t.items();
    let mask = crate::bits::Bitset::from_indices(n, &c.iter().map(|&j| j as usize).collect::<Vec<_>>());
    let mut definite = 0usize;
    for i in 0..t.block_count() {
        if observed.indicator(i) {
            continue;
        }
        let hits = crate::bits::and_popcount(t.outer().row_words(i), mask.words());
        if hits >= u {
            definite += 1;
            if definite > tol {
                return false;
            }
        }
    }
    true
}

struct Query<'a> {
    t: &'a ComposedMatrix,
    observed: &'a OutcomeVector,
    d_max: usize,
    r_max: usize,
    s_max: usize,
    tol: usize,
}

fn check_budget_and_shape(q: &Query, budget: &OracleBudget) -> Result<(), OracleError> {
    let n = q.t.items();
    if n > budget.max_n || q.d_max > budget.max_d {
        return Err(OracleError::BudgetExceeded(format!(
            "instance n={n}, d={} outside oracle budget n<={}, d<={}",
            q.d_max, budget.max_n, budget.max_d
        )));
    }
    if q.observed.blocks() != q.t.block_count() || q.observed.inner_len() != q.t.inner_rows() {
        return Err(OracleError::InvalidQuery(format!(
            "outcome is {} blocks x {} inner bits, design is {} x {}",
            q.observed.blocks(),
            q.observed.inner_len(),
            q.t.block_count(),
            q.t.inner_rows()
        )));
    }
    if q.s_max == 0 || q.r_max == 0 {
        return Err(OracleError::InvalidQuery("s_max and r_max must be >= 1".into()));
    }
    Ok(())
}

/// Enumerates all consistent hypotheses. `with_thresholds` selects the
/// generalized semantics (thresholds enumerated per complex); classical
/// hypotheses fix `u_a = |D_a|`.
fn recover(
    q: &Query,
    mode: TestMode,
    u_max: u32,
    budget: &OracleBudget,
) -> Result<Vec<ComplexSet>, OracleError> {
    check_budget_and_shape(q, budget)?;
    let n = q.t.items();
    let items: Vec<Item> = (0..n as Item).collect();

    // per-complex viability (threshold as generous as the mode allows)
    let all = enumerate_complexes(&items, q.r_max);
    let viable: Vec<Vec<Item>> = all
        .into_iter()
        .filter(|c| {
            let u_low = match mode {
                TestMode::Ccmplx => c.len(),
                TestMode::Gcmplx => (u_max as usize).min(c.len()).max(1),
            };
            // the weakest firing condition a hypothesis could assign to c
            // is its largest admissible threshold
            complex_viable(q.t, c, u_low, q.observed, q.tol)
        })
        .collect();

    let pool = viable.len() as u128;
    let mut estimate: u128 = 0;
    for s in 1..=q.s_max as u128 {
        let mut term = binomial(pool, s);
        if mode == TestMode::Gcmplx {
            term = term.saturating_mul((u_max as u128).saturating_pow(s as u32));
        }
        estimate = estimate.saturating_add(term);
    }
    if estimate > budget.max_candidates as u128 {
        return Err(OracleError::BudgetExceeded(format!(
            "{estimate} candidate hypotheses (pool {pool}) exceed cap {}",
            budget.max_candidates
        )));
    }

    let mut found = Vec::new();
    for s in 1..=q.s_max {
        if s > viable.len() {
            break;
        }
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let complexes: Vec<&Vec<Item>> = idx.iter().map(|&i| &viable[i]).collect();
            if admissible(&complexes, q.d_max) {
                match mode {
                    TestMode::Ccmplx => {
                        let cand = ComplexSet::classical(
                            n,
                            complexes.iter().map(|c| (*c).clone()).collect(),
                        )
                        .expect("enumerated hypotheses are valid");
                        if consistent_within(q.t, &cand, mode, q.observed, q.tol) {
                            found.push(cand);
                        }
                    }
                    TestMode::Gcmplx => {
                        // odometer over per-complex thresholds
                        let caps: Vec<u32> =
                            complexes.iter().map(|c| u_max.min(c.len() as u32)).collect();
                        let mut ths: Vec<u32> = vec![1; s];
                        loop {
                            let cand = ComplexSet::new(
                                n,
                                complexes.iter().map(|c| (*c).clone()).collect(),
                                ths.clone(),
                            )
                            .expect("enumerated hypotheses are valid");
                            if consistent_within(q.t, &cand, mode, q.observed, q.tol) {
                                found.push(cand);
                            }
                            let mut pos = 0;
                            loop {
                                if pos == s {
                                    break;
                                }
                                if ths[pos] < caps[pos] {
                                    ths[pos] += 1;
                                    break;
                                }
                                ths[pos] = 1;
                                pos += 1;
                            }
                            if pos == s {
                                break;
                            }
                        }
                    }
                }
            }
            if !sets::next_combination(&mut idx, viable.len()) {
                break;
            }
        }
    }
    Ok(found)
}

fn admissible(complexes: &[&Vec<Item>], d_max: usize) -> bool {
    let mut union: Vec<Item> = complexes.iter().flat_map(|c| c.iter().copied()).collect();
    union.sort_unstable();
    union.dedup();
    if union.len() > d_max {
        return false;
    }
    for a in 0..complexes.len() {
        for b in 0..complexes.len() {
            if a != b && sets::is_subset(complexes[a], complexes[b]) {
                return false;
            }
        }
    }
    true
}

/// All classical hypotheses consistent with the observed outcome, allowing
/// up to `tol` flipped bits.
#[allow(clippy::too_many_arguments)]
pub fn oracle_recover_ccmplx(
    t: &ComposedMatrix,
    observed: &OutcomeVector,
    d_max: usize,
    r_max: usize,
    s_max: usize,
    tol: usize,
    budget: &OracleBudget,
) -> Result<Vec<ComplexSet>, OracleError> {
    let q = Query {
        t,
        observed,
        d_max,
        r_max,
        s_max,
        tol,
    };
    recover(&q, TestMode::Ccmplx, 0, budget)
}

/// All generalized hypotheses (complexes plus thresholds up to `u_max`)
/// consistent with the observed outcome.
#[allow(clippy::too_many_arguments)]
pub fn oracle_recover_gcmplx(
    t: &ComposedMatrix,
    observed: &OutcomeVector,
    d_max: usize,
    r_max: usize,
    s_max: usize,
    u_max: u32,
    tol: usize,
    budget: &OracleBudget,
) -> Result<Vec<ComplexSet>, OracleError> {
    if u_max == 0 {
        return Err(OracleError::InvalidQuery("u_max must be >= 1".into()));
    }
    let q = Query {
        t,
        observed,
        d_max,
        r_max,
        s_max,
        tol,
    };
    recover(&q, TestMode::Gcmplx, u_max, budget)
}

/// The single complex family shared by every candidate, if there is one.
/// Candidates differing only in thresholds count as one family.
pub fn unique_complexes(candidates: &[ComplexSet]) -> Option<Vec<Vec<Item>>> {
    let families: BTreeSet<Vec<Vec<Item>>> = candidates
        .iter()
        .map(|c| c.canonical_complexes())
        .collect();
    if families.len() == 1 {
        families.into_iter().next()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_t, random_disjunct, ConstructOptions, DisjunctParams};
    use crate::model::{encode, inject_errors, ErrorBudget};

    fn design(n: usize, d: usize, r: usize, z: usize, seed: u64) -> ComposedMatrix {
        let outer = random_disjunct(
            n,
            &DisjunctParams::new(d - 1, r, z).unwrap(),
            seed,
            &ConstructOptions::default(),
        )
        .unwrap()
        .matrix;
        let inner = random_disjunct(
            n,
            &DisjunctParams::classical(d).unwrap(),
            seed ^ 0x77,
            &ConstructOptions::default(),
        )
        .unwrap()
        .matrix;
        build_t(&outer, &inner).unwrap()
    }

    #[test]
    fn min_subcomplexes_counts() {
        let d = ComplexSet::new(6, vec![vec![1, 2, 3]], vec![2]).unwrap();
        assert_eq!(
            oracle_min_subcomplexes(&d),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );

        // the worked example: C(2,2) + C(3,2) + C(4,3) = 8 distinct subsets
        let d = ComplexSet::new(
            11,
            vec![vec![1, 2], vec![2, 3, 4], vec![1, 3, 7, 8]],
            vec![2, 2, 3],
        )
        .unwrap();
        assert_eq!(oracle_min_subcomplexes(&d).len(), 8);

        // classical thresholds give back the complexes themselves
        let d = ComplexSet::classical(6, vec![vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(oracle_min_subcomplexes(&d), d.canonical_complexes());
    }

    #[test]
    fn unique_candidate_matches_planted() {
        let n = 8;
        let planted = ComplexSet::classical(n, vec![vec![1, 2], vec![3, 6]]).unwrap();
        let t = design(n, 4, 2, 1, 41);
        let y = encode(&t, &planted, TestMode::Ccmplx).unwrap();
        let cands =
            oracle_recover_ccmplx(&t, &y, 4, 2, 2, 0, &OracleBudget::default()).unwrap();
        let unique = unique_complexes(&cands).expect("identifiable instance");
        assert_eq!(unique, planted.canonical_complexes());
    }

    #[test]
    fn impossible_outcome_yields_no_candidates() {
        let n = 8;
        let t = design(n, 3, 2, 1, 13);
        // positive indicators with all-zero block bits cannot be produced by
        // any hypothesis: a genuinely positive block always fires some
        // complement-half bit
        let mut y = OutcomeVector::zeros(t.block_count(), t.inner_rows());
        for i in 0..y.blocks() {
            y.set_indicator(i, true);
        }
        let cands =
            oracle_recover_ccmplx(&t, &y, 3, 2, 2, 0, &OracleBudget::default()).unwrap();
        assert!(cands.is_empty());
    }

    #[test]
    fn planted_survives_tolerated_flips() {
        let n = 8;
        let planted = ComplexSet::classical(n, vec![vec![0, 5], vec![2, 7]]).unwrap();
        let t = design(n, 4, 2, 5, 47);
        let clean = encode(&t, &planted, TestMode::Ccmplx).unwrap();
        let (dirty, _) = inject_errors(&clean, &ErrorBudget::random(2), 99).unwrap();
        let cands =
            oracle_recover_ccmplx(&t, &dirty, 4, 2, 2, 2, &OracleBudget::default()).unwrap();
        let target = planted.canonical_complexes();
        assert!(cands.iter().any(|c| c.canonical_complexes() == target));
    }

    #[test]
    fn under_determined_design_returns_all_candidates() {
        // a one-row outer matrix that never pools items 2..5: a hypothesis
        // adding a complex among the untested items is indistinguishable
        // from the planted one, so the oracle must return both
        let n = 5;
        let g = crate::matrix::BinaryMatrix::from_fn(1, n, |_, j| j < 2);
        let m = crate::matrix::BinaryMatrix::identity(n);
        let t = build_t(&g, &m).unwrap();
        let planted = ComplexSet::classical(n, vec![vec![0, 1]]).unwrap();
        let y = encode(&t, &planted, TestMode::Ccmplx).unwrap();
        let cands = oracle_recover_ccmplx(&t, &y, 4, 2, 2, 0, &OracleBudget::default()).unwrap();
        assert!(cands.len() > 1, "blind spots must yield several candidates");
        assert!(unique_complexes(&cands).is_none());
        let target = planted.canonical_complexes();
        assert!(cands.iter().any(|c| c.canonical_complexes() == target));
    }

    #[test]
    fn gcmplx_reduces_to_ccmplx_for_full_thresholds() {
        let n = 8;
        let planted = ComplexSet::classical(n, vec![vec![1, 4], vec![2, 6]]).unwrap();
        let t = design(n, 4, 2, 1, 53);
        let y = encode(&t, &planted, TestMode::Ccmplx).unwrap();
        let cc = oracle_recover_ccmplx(&t, &y, 4, 2, 2, 0, &OracleBudget::default()).unwrap();
        let gc =
            oracle_recover_gcmplx(&t, &y, 4, 2, 2, 2, 0, &OracleBudget::default()).unwrap();
        // every classical candidate family appears among the generalized ones
        let cc_fams: BTreeSet<_> = cc.iter().map(|c| c.canonical_complexes()).collect();
        let gc_fams: BTreeSet<_> = gc.iter().map(|c| c.canonical_complexes()).collect();
        assert!(cc_fams.is_subset(&gc_fams));
    }

    #[test]
    fn budget_rejects_large_instances() {
        let t = design(8, 3, 2, 1, 7);
        let y = OutcomeVector::zeros(t.block_count(), t.inner_rows());
        let tiny = OracleBudget {
            max_n: 4,
            ..OracleBudget::default()
        };
        assert!(matches!(
            oracle_recover_ccmplx(&t, &y, 3, 2, 2, 0, &tiny),
            Err(OracleError::BudgetExceeded(_))
        ));
        // all-positive indicators defeat the single-complex prune, so the
        // full combination count hits the cap
        let mut busy = y.clone();
        for i in 0..busy.blocks() {
            busy.set_indicator(i, true);
        }
        let strict = OracleBudget {
            max_candidates: 1,
            ..OracleBudget::default()
        };
        assert!(matches!(
            oracle_recover_ccmplx(&t, &busy, 3, 2, 2, 3, &strict),
            Err(OracleError::BudgetExceeded(_))
        ));
    }
}

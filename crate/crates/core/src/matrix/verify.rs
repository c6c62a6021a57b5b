//! Disjunctness verification, exhaustive below a combinatorial budget and
//! Monte-Carlo above it.
//!
//! The exhaustive check enumerates every disjoint pair of column sets
//! `(S1, S2)` with `|S1| = d`, `|S2| = r` in lexicographic `(S1, S2)` order
//! and counts witness rows (all ones on `S2`, all zeros on `S1`). It proves
//! or refutes. The sampled check only refutes.

use super::{BinaryMatrix, DisjunctParams, MatrixError};
use crate::bits::Bitset;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use serde::{Deserialize, Serialize};

/// Cap on `C(n, d) * C(n - d, r)` pair checks for exhaustive verification.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VerifyBudget {
    pub max_pair_checks: u128,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            max_pair_checks: 10_000_000,
        }
    }
}

/// A violating pair: fewer than `z` witness rows separate `included` from
/// `excluded`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub excluded: Vec<usize>,
    pub included: Vec<usize>,
    pub witness_rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Disjunct,
    Violation(Counterexample),
}

impl VerifyOutcome {
    pub fn is_disjunct(&self) -> bool {
        matches!(self, VerifyOutcome::Disjunct)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            VerifyOutcome::Disjunct => None,
            VerifyOutcome::Violation(c) => Some(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOutcome {
    pub passed: bool,
    pub violation: Option<Counterexample>,
    pub trials_run: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of pair checks the exhaustive verifier would perform.
pub fn exhaustive_pair_count(n: usize, params: &DisjunctParams) -> u128 {
    binomial(n, params.d()).saturating_mul(binomial(n - params.d().min(n), params.r()))
}

use crate::sets::next_combination;

/// Counts rows that are ones on every column of `included` and zeros on every
/// column of `excluded`, stopping once `stop_at` is reached.
fn witness_count(
    columns: &[Bitset],
    excluded: &[usize],
    included: &[usize],
    stop_at: usize,
) -> usize {
    let words = columns[included[0]].words().len();
    let mut count = 0usize;
    for w in 0..words {
        let mut acc = u64::MAX;
        for &j in included {
            acc &= columns[j].words()[w];
            if acc == 0 {
                break;
            }
        }
        if acc == 0 {
            continue;
        }
        for &j in excluded {
            acc &= !columns[j].words()[w];
            if acc == 0 {
                break;
            }
        }
        count += acc.count_ones() as usize;
        if count >= stop_at {
            return count;
        }
    }
    count
}

/// Exhaustively decides whether `mat` is `(d, r; z]`-disjunct.
///
/// On refutation, returns the lexicographically first violating `(S1, S2)`
/// together with its witness count. Errors with `BudgetExceeded` when the
/// enumeration would exceed `budget`.
pub fn verify_disjunct(
    mat: &BinaryMatrix,
    params: &DisjunctParams,
    budget: &VerifyBudget,
) -> Result<VerifyOutcome, MatrixError> {
    params.check_against(mat)?;
    let required = exhaustive_pair_count(mat.cols(), params);
    if required > budget.max_pair_checks {
        return Err(MatrixError::BudgetExceeded {
            required,
            budget: budget.max_pair_checks,
        });
    }

    let n = mat.cols();
    let (d, r, z) = (params.d(), params.r(), params.z());
    let columns = mat.transpose_columns();

    let mut s1: Vec<usize> = (0..d).collect();
    loop {
        // columns not in S1, ascending; S2 ranges over their r-subsets
        let mut in_s1 = vec![false; n];
        for &j in &s1 {
            in_s1[j] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|&j| !in_s1[j]).collect();

        let mut pick: Vec<usize> = (0..r).collect();
        loop {
            let s2: Vec<usize> = pick.iter().map(|&i| rest[i]).collect();
            let count = witness_count(&columns, &s1, &s2, z);
            if count < z {
                return Ok(VerifyOutcome::Violation(Counterexample {
                    excluded: s1,
                    included: s2,
                    witness_rows: count,
                }));
            }
            if !next_combination(&mut pick, rest.len()) {
                break;
            }
        }
        if !next_combination(&mut s1, n) {
            break;
        }
    }
    Ok(VerifyOutcome::Disjunct)
}

/// Monte-Carlo refutation: samples `trials` random disjoint `(S1, S2)` pairs
/// and fails on the first one with fewer than `z` witnesses. Passing proves
/// nothing; failing is conclusive.
pub fn sample_verify_disjunct(
    mat: &BinaryMatrix,
    params: &DisjunctParams,
    trials: u64,
    seed: u64,
) -> Result<SampleOutcome, MatrixError> {
    params.check_against(mat)?;
    if trials == 0 {
        return Err(MatrixError::InvalidParams("trials must be >= 1".into()));
    }
    let n = mat.cols();
    let (d, r, z) = (params.d(), params.r(), params.z());
    let columns = mat.transpose_columns();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut perm: Vec<usize> = (0..n).collect();
    for t in 0..trials {
        for i in 0..d + r {
            let j = rng.gen_range(i..n);
            perm.swap(i, j);
        }
        let mut s1: Vec<usize> = perm[..d].to_vec();
        let mut s2: Vec<usize> = perm[d..d + r].to_vec();
        s1.sort_unstable();
        s2.sort_unstable();
        let count = witness_count(&columns, &s1, &s2, z);
        if count < z {
            return Ok(SampleOutcome {
                passed: false,
                violation: Some(Counterexample {
                    excluded: s1,
                    included: s2,
                    witness_rows: count,
                }),
                trials_run: t + 1,
            });
        }
    }
    Ok(SampleOutcome {
        passed: true,
        violation: None,
        trials_run: trials,
    })
}

//! Decoding: outcome conversion, the cover decoder, block sanitization, and
//! the two error-tolerant recovery algorithms.
//!
//! Both decoders walk the blocks of the composed design. A block whose
//! indicator bit is positive is converted to a classical OR-channel outcome,
//! cover-decoded against the inner matrix, and sanitized by comparing the
//! AND of the candidate's stacked-matrix columns with the observed block
//! bits. Candidates surviving sanitization are tallied; only sets appearing
//! strictly more than `floor((z - 1) / 2)` times survive, which is what
//! makes up to that many outcome flips harmless. The generalized decoder
//! additionally groups the surviving threshold-sized sub-complexes back into
//! whole complexes.

use crate::bits::{self, Bitset};
use crate::matrix::{BinaryMatrix, ComposedMatrix};
use crate::model::OutcomeVector;
use crate::sets::{self, Item};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("block bits must split evenly, got odd length {0}")]
    OddLength(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sub-complex pool is inconsistent: {0}")]
    InconsistentPool(String),
}

/// What happened to one block during decoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BlockDisposition {
    /// Indicator bit negative, block not examined.
    Skipped,
    /// Candidate failed the column-AND equality check (or decoded empty).
    SanitizedOut { candidate: Vec<Item> },
    /// Candidate entered the frequency tally.
    Accepted { candidate: Vec<Item> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequencyEntry {
    pub items: Vec<Item>,
    pub count: u32,
}

/// Decoder output: recovered complexes plus per-block diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct DecodeResult {
    /// Recovered complexes, sorted by (cardinality, lexicographic).
    pub complexes: Vec<Vec<Item>>,
    pub blocks: Vec<BlockDisposition>,
    /// Tally of sanitization survivors (raw counts, before the majority cut).
    pub frequencies: Vec<FrequencyEntry>,
    /// Final clusters of sub-complexes, one per recovered complex
    /// (generalized decoder only).
    pub phase2_clusters: Option<Vec<Vec<Vec<Item>>>>,
    /// Flip positions, attached by harnesses for diagnostics.
    pub flips: Option<Vec<usize>>,
}

impl DecodeResult {
    pub fn with_flips(mut self, flips: Vec<usize>) -> Self {
        self.flips = Some(flips);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decode results serialize")
    }
}

/// Converts one block's threshold-channel bits into the classical OR-channel
/// outcome of the inner matrix.
///
/// With `z = [y  ȳ]`: if `y_l = 1` the converted bit is 1; if `y_l = 0` and
/// `ȳ_l = 1` it is 0; if both are 0 it is 1. Equivalently `y_l ∨ ¬ȳ_l`.
pub fn convert2nacgt(z: &Bitset) -> Result<Bitset, DecodeError> {
    if !z.len().is_multiple_of(2) {
        return Err(DecodeError::OddLength(z.len()));
    }
    let k = z.len() / 2;
    let mut out = Bitset::zeros(k);
    for l in 0..k {
        if z.get(l) || !z.get(k + l) {
            out.set(l, true);
        }
    }
    Ok(out)
}

/// Cover decoder for OR-channel outcomes of a d-disjunct matrix: returns
/// every column whose support lies inside the outcome's support.
///
/// When `y = M ⊙ x` with `|supp(x)| <= d` and `M` d-disjunct this is exactly
/// `supp(x)`; on garbage input it returns a superset candidate that later
/// sanitization rejects.
pub fn decode_naive(m: &BinaryMatrix, y: &Bitset) -> Result<Vec<Item>, DecodeError> {
    if y.len() != m.rows() {
        return Err(DecodeError::ShapeMismatch(format!(
            "outcome has {} bits, matrix has {} rows",
            y.len(),
            m.rows()
        )));
    }
    // a column is excluded iff some negative row contains it
    let words = bits::words_for(m.cols());
    let mut excluded = vec![0u64; words];
    for l in 0..m.rows() {
        if !y.get(l) {
            for (acc, w) in excluded.iter_mut().zip(m.row_words(l)) {
                *acc |= w;
            }
        }
    }
    let mut out = Vec::new();
    for j in 0..m.cols() {
        if excluded[j / 64] >> (j % 64) & 1 == 0 {
            out.push(j as Item);
        }
    }
    Ok(out)
}

/// The column-AND equality check: keep the candidate iff the bitwise AND of
/// its stacked-matrix columns reproduces the observed block bits exactly.
/// An empty candidate is dropped by convention.
pub fn sanitize_block(
    candidate: &[Item],
    a: &BinaryMatrix,
    z: &Bitset,
) -> Result<bool, DecodeError> {
    if z.len() != a.rows() {
        return Err(DecodeError::ShapeMismatch(format!(
            "block has {} bits, stacked matrix has {} rows",
            z.len(),
            a.rows()
        )));
    }
    if candidate.is_empty() {
        return Ok(false);
    }
    for &j in candidate {
        if j as usize >= a.cols() {
            return Err(DecodeError::ShapeMismatch(format!(
                "candidate item {j} outside {} columns",
                a.cols()
            )));
        }
    }
    let mask = Bitset::from_indices(a.cols(), &candidate.iter().map(|&j| j as usize).collect::<Vec<_>>());
    for row in 0..a.rows() {
        let and_bit = bits::subset_of(mask.words(), a.row_words(row));
        if and_bit != z.get(row) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_shapes(y: &OutcomeVector, t: &ComposedMatrix, z: usize) -> Result<(), DecodeError> {
    if z == 0 {
        return Err(DecodeError::InvalidParameter("z must be >= 1".into()));
    }
    if y.blocks() != t.block_count() || y.inner_len() != t.inner_rows() {
        return Err(DecodeError::ShapeMismatch(format!(
            "outcome is {} blocks x {} inner bits, design is {} x {}",
            y.blocks(),
            y.inner_len(),
            t.block_count(),
            t.inner_rows()
        )));
    }
    Ok(())
}

type BlockScan = (Vec<BlockDisposition>, BTreeMap<Vec<Item>, u32>);

/// Per-block pipeline shared by both algorithms: convert, cover-decode,
/// sanitize, tally.
fn scan_blocks(y: &OutcomeVector, t: &ComposedMatrix) -> Result<BlockScan, DecodeError> {
    let stacked = t
        .inner()
        .vstack(t.inner_complement())
        .expect("inner halves share shape");
    let mut blocks = Vec::with_capacity(y.blocks());
    let mut tally: BTreeMap<Vec<Item>, u32> = BTreeMap::new();
    for i in 0..y.blocks() {
        if !y.indicator(i) {
            blocks.push(BlockDisposition::Skipped);
            continue;
        }
        let z_i = y.z_block(i);
        let converted = convert2nacgt(&z_i)?;
        let candidate = decode_naive(t.inner(), &converted)?;
        if sanitize_block(&candidate, &stacked, &z_i)? {
            *tally.entry(candidate.clone()).or_insert(0) += 1;
            blocks.push(BlockDisposition::Accepted { candidate });
        } else {
            blocks.push(BlockDisposition::SanitizedOut { candidate });
        }
    }
    Ok((blocks, tally))
}

fn majority_cutoff(z: usize) -> u32 {
    ((z - 1) / 2) as u32
}

fn tally_to_frequencies(tally: &BTreeMap<Vec<Item>, u32>) -> Vec<FrequencyEntry> {
    let mut keys: Vec<&Vec<Item>> = tally.keys().collect();
    keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    keys.into_iter()
        .map(|k| FrequencyEntry {
            items: k.clone(),
            count: tally[k],
        })
        .collect()
}

/// Classical decoder.
///
/// Returns every sanitization survivor whose frequency strictly exceeds
/// `floor((z - 1) / 2)`. With a verified outer matrix, a verified d-disjunct
/// inner matrix, and at most that many flips, the output is exactly the
/// hidden complex family.
pub fn algorithm1(
    y: &OutcomeVector,
    t: &ComposedMatrix,
    z: usize,
) -> Result<DecodeResult, DecodeError> {
    check_shapes(y, t, z)?;
    let (blocks, tally) = scan_blocks(y, t)?;
    let cutoff = majority_cutoff(z);
    let complexes = sets::canonical_family(
        tally
            .iter()
            .filter(|(_, &c)| c > cutoff)
            .map(|(k, _)| k.clone())
            .collect(),
    );
    Ok(DecodeResult {
        complexes,
        frequencies: tally_to_frequencies(&tally),
        blocks,
        phase2_clusters: None,
        flips: None,
    })
}

/// The deduplicated pool of threshold-sized sub-complexes surviving phase 1
/// of the generalized decoder.
#[derive(Debug, Clone, Serialize)]
pub struct SubComplexPool {
    /// Distinct survivors in canonical (cardinality, lexicographic) order.
    pub entries: Vec<Vec<Item>>,
    /// Raw multiset tallies before the majority cut and deduplication.
    pub frequencies: Vec<FrequencyEntry>,
    pub blocks: Vec<BlockDisposition>,
}

impl SubComplexPool {
    /// A pool with given entries and no block history, for driving phase 2
    /// directly.
    pub fn from_entries(entries: Vec<Vec<Item>>) -> Self {
        let entries = sets::canonical_family(entries.into_iter().map(sets::normalize).collect());
        let frequencies = entries
            .iter()
            .map(|e| FrequencyEntry {
                items: e.clone(),
                count: 1,
            })
            .collect();
        SubComplexPool {
            entries,
            frequencies,
            blocks: Vec::new(),
        }
    }
}

/// Phase 1 of the generalized decoder: per-block recovery, majority
/// filtering, deduplication.
///
/// Error-free and with verified matrices, the surviving entries are exactly
/// the threshold-sized subsets of the hidden complexes: each true subset is
/// isolated by at least `z` outer rows while any false candidate appears at
/// most once per flipped bit.
pub fn algorithm2_phase1(
    y: &OutcomeVector,
    t: &ComposedMatrix,
    z: usize,
) -> Result<SubComplexPool, DecodeError> {
    check_shapes(y, t, z)?;
    let (blocks, tally) = scan_blocks(y, t)?;
    let cutoff = majority_cutoff(z);
    let entries = sets::canonical_family(
        tally
            .iter()
            .filter(|(_, &c)| c > cutoff)
            .map(|(k, _)| k.clone())
            .collect(),
    );
    Ok(SubComplexPool {
        entries,
        frequencies: tally_to_frequencies(&tally),
        blocks,
    })
}

/// Phase 2 output: the clusters of sub-complexes and the complexes they
/// merge into.
#[derive(Debug, Clone, Serialize)]
pub struct Phase2Result {
    pub clusters: Vec<Vec<Vec<Item>>>,
    pub complexes: Vec<Vec<Item>>,
}

/// Phase 2 of the generalized decoder: regroup the pool into complexes.
///
/// The pool is partitioned by cardinality. Within a cardinality class two
/// members belong to the same complex exactly when they share an element and
/// the swap probe cannot tell them apart (every single-element exchange
/// lands back in the pool); complexes are the connected components of that
/// relation, each merged by plain union. Classes of singletons carry no
/// intersection evidence and merge whole, matching the plain-union step of
/// the underlying procedure (a class of singletons can only ever describe
/// one complex). Pairs whose union sits inside a complex finalized by an
/// earlier class are never probed.
///
/// A validation pass rejects pools where the relation is not transitive —
/// that is, where some component contains a pair the probe separates. Such
/// pools do not arise from phase 1 on identifiable instances, and reporting
/// the inconsistency beats silently merging unrelated complexes.
pub fn algorithm2_phase2(pool: &SubComplexPool) -> Result<Phase2Result, DecodeError> {
    let membership: BTreeSet<Vec<Item>> = pool.entries.iter().cloned().collect();
    let contains = |s: &[Item]| membership.contains(s);

    // classes by cardinality, ascending; entries are already canonical
    let mut classes: BTreeMap<usize, Vec<Vec<Item>>> = BTreeMap::new();
    for e in &pool.entries {
        classes.entry(e.len()).or_default().push(e.clone());
    }

    let mut clusters: Vec<Vec<Vec<Item>>> = Vec::new();
    let mut complexes: Vec<Vec<Item>> = Vec::new();
    let mut finalized: Vec<Vec<Item>> = Vec::new();

    for (card, members) in &classes {
        let component_ids: Vec<usize> = if *card == 1 {
            vec![0; members.len()]
        } else {
            let guard = |a: &[Item], b: &[Item]| {
                let u = sets::union(a, b);
                finalized.iter().any(|f| sets::is_subset(&u, f))
            };
            let mut dsu = Dsu::new(members.len());
            for j1 in 0..members.len() {
                for j2 in j1 + 1..members.len() {
                    let (a, b) = (&members[j1], &members[j2]);
                    if sets::intersection_size(a, b) == 0 {
                        continue;
                    }
                    if guard(a, b) || !sets::swap_separated(a, b, contains) {
                        dsu.union(j1, j2);
                    }
                }
            }
            // transitivity validation: a component must not contain a
            // separated pair
            for j1 in 0..members.len() {
                for j2 in j1 + 1..members.len() {
                    let (a, b) = (&members[j1], &members[j2]);
                    if dsu.find(j1) == dsu.find(j2)
                        && sets::intersection_size(a, b) > 0
                        && !guard(a, b)
                        && sets::swap_separated(a, b, contains)
                    {
                        return Err(DecodeError::InconsistentPool(format!(
                            "sets {a:?} and {b:?} are linked transitively but separated \
                             by the swap probe"
                        )));
                    }
                }
            }
            dsu.component_ids()
        };

        let groups = component_ids.iter().copied().max().map_or(0, |m| m + 1);
        for g in 0..groups {
            let cluster: Vec<Vec<Item>> = members
                .iter()
                .zip(&component_ids)
                .filter(|(_, &id)| id == g)
                .map(|(m, _)| m.clone())
                .collect();
            let merged = cluster
                .iter()
                .fold(Vec::new(), |acc, m| sets::union(&acc, m));
            finalized.push(merged.clone());
            complexes.push(merged);
            clusters.push(cluster);
        }
    }

    let complexes = sets::canonical_family(complexes);
    Ok(Phase2Result {
        clusters,
        complexes,
    })
}

/// Generalized decoder: phase 1 then phase 2.
pub fn algorithm2(
    y: &OutcomeVector,
    t: &ComposedMatrix,
    z: usize,
) -> Result<DecodeResult, DecodeError> {
    let pool = algorithm2_phase1(y, t, z)?;
    let phase2 = algorithm2_phase2(&pool)?;
    Ok(DecodeResult {
        complexes: phase2.complexes,
        blocks: pool.blocks,
        frequencies: pool.frequencies,
        phase2_clusters: Some(phase2.clusters),
        flips: None,
    })
}

/// Union-find with components numbered by first appearance.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index becomes the root, keeping numbering stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn component_ids(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            let root = self.find(i);
            if ids[root] == usize::MAX {
                ids[root] = next;
                next += 1;
            }
            ids[i] = ids[root];
        }
        ids
    }
}

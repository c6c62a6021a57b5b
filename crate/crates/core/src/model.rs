//! The hidden defective structure and the simulated test channel.
//!
//! A `ComplexSet` holds the positive complexes `D = {D_1, ..., D_s}` with a
//! per-complex threshold `u_a`. A test on an item subset is positive when the
//! subset contains a whole complex (classical mode) or at least `u_a` items
//! of some complex (generalized mode); with `u_a = |D_a|` for every `a` the
//! two modes agree bit for bit. Thresholds are stored even for classical
//! instances, so the reduction is a stored fact rather than a flag.

use crate::bits::{self, Bitset};
use crate::matrix::ComposedMatrix;
use crate::rng;
use crate::sets::{self, Item};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid complex set: {0}")]
    InvalidComplexSet(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid error budget: {0}")]
    InvalidErrorBudget(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Which channel semantics a test uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestMode {
    Ccmplx,
    Gcmplx,
}

/// The hidden set of positive complexes with per-complex thresholds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSet {
    n: usize,
    complexes: Vec<Vec<Item>>,
    thresholds: Vec<u32>,
}

impl ComplexSet {
    /// Validates and stores. Items are 0-based indices below `n`; every
    /// complex must be nonempty, no complex may contain another, and
    /// `0 < u_a <= |D_a|` must hold for every threshold.
    pub fn new(
        n: usize,
        complexes: Vec<Vec<Item>>,
        thresholds: Vec<u32>,
    ) -> Result<Self, ModelError> {
        if complexes.is_empty() {
            return Err(ModelError::InvalidComplexSet(
                "at least one complex required".into(),
            ));
        }
        if complexes.len() != thresholds.len() {
            return Err(ModelError::InvalidComplexSet(format!(
                "{} complexes but {} thresholds",
                complexes.len(),
                thresholds.len()
            )));
        }
        let complexes: Vec<Vec<Item>> = complexes.into_iter().map(sets::normalize).collect();
        for (a, c) in complexes.iter().enumerate() {
            if c.is_empty() {
                return Err(ModelError::InvalidComplexSet(format!(
                    "complex {a} is empty"
                )));
            }
            if let Some(&max) = c.last() {
                if max as usize >= n {
                    return Err(ModelError::InvalidComplexSet(format!(
                        "complex {a} contains item {max}, outside universe of size {n}"
                    )));
                }
            }
            let u = thresholds[a];
            if u == 0 || u as usize > c.len() {
                return Err(ModelError::InvalidComplexSet(format!(
                    "threshold {} of complex {a} outside 1..={}",
                    u,
                    c.len()
                )));
            }
        }
        for a in 0..complexes.len() {
            for b in 0..complexes.len() {
                if a != b && sets::is_subset(&complexes[a], &complexes[b]) {
                    return Err(ModelError::InvalidComplexSet(format!(
                        "complex {a} is contained in complex {b}"
                    )));
                }
            }
        }
        Ok(ComplexSet {
            n,
            complexes,
            thresholds,
        })
    }

    /// Classical instance: thresholds equal the complex sizes.
    pub fn classical(n: usize, complexes: Vec<Vec<Item>>) -> Result<Self, ModelError> {
        let thresholds = complexes.iter().map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            c.len() as u32
        }).collect();
        ComplexSet::new(n, complexes, thresholds)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of complexes, `s`.
    pub fn count(&self) -> usize {
        self.complexes.len()
    }

    pub fn complexes(&self) -> &[Vec<Item>] {
        &self.complexes
    }

    pub fn thresholds(&self) -> &[u32] {
        &self.thresholds
    }

    pub fn complex(&self, a: usize) -> &[Item] {
        &self.complexes[a]
    }

    pub fn threshold(&self, a: usize) -> u32 {
        self.thresholds[a]
    }

    /// The plain set `D' = D_1 ∪ ... ∪ D_s`.
    pub fn plain(&self) -> Vec<Item> {
        let mut all: Vec<Item> = self.complexes.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub(crate) fn plain_mask(&self) -> Bitset {
        let idx: Vec<usize> = self.plain().iter().map(|&i| i as usize).collect();
        Bitset::from_indices(self.n, &idx)
    }

    pub(crate) fn complex_masks(&self) -> Vec<Bitset> {
        self.complexes
            .iter()
            .map(|c| {
                let idx: Vec<usize> = c.iter().map(|&i| i as usize).collect();
                Bitset::from_indices(self.n, &idx)
            })
            .collect()
    }

    pub fn is_classical(&self) -> bool {
        self.complexes
            .iter()
            .zip(&self.thresholds)
            .all(|(c, &u)| u as usize == c.len())
    }

    /// Checks the declared size bounds: every `|D_a| <= r` and `|D'| <= d`.
    pub fn validate_bounds(&self, d: usize, r: usize) -> Result<(), ModelError> {
        for (a, c) in self.complexes.iter().enumerate() {
            if c.len() > r {
                return Err(ModelError::InvalidComplexSet(format!(
                    "complex {a} has {} items, bound r = {r}",
                    c.len()
                )));
            }
        }
        let total = self.plain().len();
        if total > d {
            return Err(ModelError::InvalidComplexSet(format!(
                "{total} defective items in total, bound d = {d}"
            )));
        }
        Ok(())
    }

    pub fn max_threshold(&self) -> u32 {
        *self.thresholds.iter().max().expect("nonempty")
    }

    /// Complexes ordered by (cardinality, lexicographic), for comparisons.
    pub fn canonical_complexes(&self) -> Vec<Vec<Item>> {
        sets::canonical_family(self.complexes.clone())
    }

    /// Whether the generalized instance can be recovered exactly from its
    /// test behavior.
    ///
    /// Three conditions, each falsifiable by explicit counterexample when
    /// dropped:
    /// 1. No threshold-sized subset of one complex already satisfies another
    ///    complex: `min(u_a, |D_a ∩ D_b|) < u_b` for all `a != b`. This is
    ///    the threshold generalization of the non-containment rule (to which
    ///    it reduces when `u_a = |D_a|`); without it a sub-complex of `D_a`
    ///    triggers `D_b` inside its own isolating tests and is never observed.
    /// 2. At most one complex has threshold 1: the test channel only ever
    ///    sees the union of threshold-1 complexes.
    /// 3. Same-threshold families must be separable by the swap probe in the
    ///    order the decoder applies it; otherwise distinct complexes present
    ///    identical sub-complex pools (e.g. {1,2},{1,3},{2,3} all at
    ///    threshold 2 behaves exactly like {1,2,3} at threshold 2).
    pub fn gcmplx_identifiable(&self) -> bool {
        let s = self.complexes.len();
        if self.thresholds.iter().filter(|&&u| u == 1).count() > 1 {
            return false;
        }
        for a in 0..s {
            for b in 0..s {
                if a == b {
                    continue;
                }
                let inter =
                    sets::intersection_size(&self.complexes[a], &self.complexes[b]) as u32;
                if self.thresholds[a].min(inter) >= self.thresholds[b] {
                    return false;
                }
            }
        }
        let families: Vec<Vec<Vec<Item>>> = (0..s)
            .map(|a| sets::k_subsets(&self.complexes[a], self.thresholds[a] as usize))
            .collect();
        let pool: BTreeSet<Vec<Item>> = families.iter().flatten().cloned().collect();
        let contains = |set: &[Item]| pool.contains(set);
        for a in 0..s {
            for b in a + 1..s {
                if self.thresholds[a] != self.thresholds[b] || self.thresholds[a] < 2 {
                    continue;
                }
                for x in &families[a] {
                    for y in &families[b] {
                        if sets::intersection_size(x, y) == 0 {
                            continue;
                        }
                        let (first, second) = if x < y { (x, y) } else { (y, x) };
                        if !sets::swap_separated(first, second, contains) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Classical test: positive iff the subset contains some whole complex.
pub fn test_ccmplx(subset: &[Item], d: &ComplexSet) -> bool {
    let s = sets::normalize(subset.to_vec());
    d.complexes.iter().any(|c| sets::is_subset(c, &s))
}

/// Generalized test: positive iff the subset holds at least `u_a` items of
/// some complex.
pub fn test_gcmplx(subset: &[Item], d: &ComplexSet) -> bool {
    let s = sets::normalize(subset.to_vec());
    d.complexes
        .iter()
        .zip(&d.thresholds)
        .any(|(c, &u)| sets::intersection_size(c, &s) >= u as usize)
}

#[inline]
pub(crate) fn test_mask(mode: TestMode, subject: &[u64], masks: &[Bitset], thresholds: &[u32]) -> bool {
    match mode {
        TestMode::Ccmplx => masks
            .iter()
            .any(|c| bits::subset_of(c.words(), subject)),
        TestMode::Gcmplx => masks
            .iter()
            .zip(thresholds)
            .any(|(c, &u)| bits::and_popcount(c.words(), subject) >= u as usize),
    }
}

/// Structured outcome vector `[y_1, z_1, ..., y_h, z_h]`: one indicator bit
/// per block followed by the 2k block bits (inner part, then complement
/// part), `(2k + 1) * h` bits in total.
#[derive(Clone, PartialEq, Eq)]
pub struct OutcomeVector {
    h: usize,
    k: usize,
    bits: Bitset,
}

impl OutcomeVector {
    pub fn zeros(h: usize, k: usize) -> Self {
        OutcomeVector {
            h,
            k,
            bits: Bitset::zeros((2 * k + 1) * h),
        }
    }

    pub fn blocks(&self) -> usize {
        self.h
    }

    pub fn inner_len(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    fn base(&self, block: usize) -> usize {
        assert!(block < self.h, "block {block} out of range {}", self.h);
        block * (2 * self.k + 1)
    }

    pub fn indicator(&self, block: usize) -> bool {
        self.bits.get(self.base(block))
    }

    pub fn set_indicator(&mut self, block: usize, v: bool) {
        let i = self.base(block);
        self.bits.set(i, v);
    }

    /// Bit `l` of the inner (uncapped) half of block `block`.
    pub fn inner_bit(&self, block: usize, l: usize) -> bool {
        assert!(l < self.k);
        self.bits.get(self.base(block) + 1 + l)
    }

    pub fn set_inner_bit(&mut self, block: usize, l: usize, v: bool) {
        assert!(l < self.k);
        let i = self.base(block) + 1 + l;
        self.bits.set(i, v);
    }

    /// Bit `l` of the complement half of block `block`.
    pub fn comp_bit(&self, block: usize, l: usize) -> bool {
        assert!(l < self.k);
        self.bits.get(self.base(block) + 1 + self.k + l)
    }

    pub fn set_comp_bit(&mut self, block: usize, l: usize, v: bool) {
        assert!(l < self.k);
        let i = self.base(block) + 1 + self.k + l;
        self.bits.set(i, v);
    }

    /// The 2k block bits `z_i = [y_i^T  ȳ_i^T]`.
    pub fn z_block(&self, block: usize) -> Bitset {
        let mut z = Bitset::zeros(2 * self.k);
        let base = self.base(block) + 1;
        for l in 0..2 * self.k {
            if self.bits.get(base + l) {
                z.set(l, true);
            }
        }
        z
    }

    pub fn get_flat(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn flip_flat(&mut self, i: usize) {
        self.bits.flip(i)
    }

    pub fn distance(&self, other: &OutcomeVector) -> usize {
        self.bits.distance(&other.bits)
    }
}

impl std::fmt::Debug for OutcomeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "OutcomeVector(h={}, k={}, positives={}/{})",
            self.h,
            self.k,
            self.bits.count_ones(),
            self.bits.len()
        )
    }
}

/// Simulates all tests of the composed design against a hidden complex set.
///
/// Block `i` sees only the restriction of the defective set to the support of
/// outer row `i`; every bit is the selected mode's test on the corresponding
/// row support intersected with that restriction.
pub fn encode(
    t: &ComposedMatrix,
    d: &ComplexSet,
    mode: TestMode,
) -> Result<OutcomeVector, ModelError> {
    if t.items() != d.n {
        return Err(ModelError::DimensionMismatch(format!(
            "design covers {} items, complex set declares {}",
            t.items(),
            d.n
        )));
    }
    let h = t.block_count();
    let k = t.inner_rows();
    let masks = d.complex_masks();
    let thresholds = d.thresholds.clone();
    let x = d.plain_mask();
    let words = x.words().len();

    let mut out = OutcomeVector::zeros(h, k);
    let mut restricted = vec![0u64; words];
    let mut probe = vec![0u64; words];
    for i in 0..h {
        let grow = t.outer().row_words(i);
        for (w, (g, xv)) in restricted.iter_mut().zip(grow.iter().zip(x.words())) {
            *w = g & xv;
        }
        out.set_indicator(i, test_mask(mode, &restricted, &masks, &thresholds));
        for l in 0..k {
            let mrow = t.inner().row_words(l);
            for (p, (m, r)) in probe.iter_mut().zip(mrow.iter().zip(&restricted)) {
                *p = m & r;
            }
            out.set_inner_bit(i, l, test_mask(mode, &probe, &masks, &thresholds));

            let crow = t.inner_complement().row_words(l);
            for (p, (m, r)) in probe.iter_mut().zip(crow.iter().zip(&restricted)) {
                *p = m & r;
            }
            out.set_comp_bit(i, l, test_mask(mode, &probe, &masks, &thresholds));
        }
    }
    Ok(out)
}

/// Where injected flips land.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Placement {
    /// Uniformly random distinct positions across the whole vector.
    Random,
    /// Explicit positions, for adversarial tests.
    Listed(Vec<usize>),
}

/// Outcome corruption budget.
///
/// The decoders tolerate up to `floor((z - 1) / 2)` flips; larger budgets are
/// allowed for stress runs and flagged by `within_tolerance`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBudget {
    e: usize,
    placement: Placement,
}

impl ErrorBudget {
    pub fn random(e: usize) -> Self {
        ErrorBudget {
            e,
            placement: Placement::Random,
        }
    }

    pub fn listed(positions: Vec<usize>) -> Self {
        ErrorBudget {
            e: positions.len(),
            placement: Placement::Listed(positions),
        }
    }

    pub fn flips(&self) -> usize {
        self.e
    }

    pub fn within_tolerance(&self, z: usize) -> bool {
        self.e <= (z.saturating_sub(1)) / 2
    }
}

/// Flips exactly `e` distinct bits and reports their positions (ascending).
pub fn inject_errors(
    y: &OutcomeVector,
    budget: &ErrorBudget,
    seed: u64,
) -> Result<(OutcomeVector, Vec<usize>), ModelError> {
    let len = y.len();
    if budget.e > len {
        return Err(ModelError::InvalidErrorBudget(format!(
            "{} flips requested, outcome vector has only {len} bits",
            budget.e
        )));
    }
    let mut positions: Vec<usize> = match &budget.placement {
        Placement::Listed(pos) => {
            let mut seen = BTreeSet::new();
            for &p in pos {
                if p >= len {
                    return Err(ModelError::InvalidErrorBudget(format!(
                        "flip position {p} out of range {len}"
                    )));
                }
                if !seen.insert(p) {
                    return Err(ModelError::InvalidErrorBudget(format!(
                        "duplicate flip position {p}"
                    )));
                }
            }
            pos.clone()
        }
        Placement::Random => {
            let mut g = rng::rng_from(seed, rng::STREAM_TRIAL_FLIPS, 0);
            if budget.e * 2 <= len {
                let mut chosen = BTreeSet::new();
                while chosen.len() < budget.e {
                    chosen.insert(g.gen_range(0..len));
                }
                chosen.into_iter().collect()
            } else {
                // dense budget: partial shuffle instead of rejection sampling
                let mut all: Vec<usize> = (0..len).collect();
                for i in 0..budget.e {
                    let j = g.gen_range(i..len);
                    all.swap(i, j);
                }
                all.truncate(budget.e);
                all
            }
        }
    };
    positions.sort_unstable();
    let mut corrupted = y.clone();
    for &p in &positions {
        corrupted.flip_flat(p);
    }
    Ok((corrupted, positions))
}

const GENERATOR_ATTEMPTS: usize = 10_000;

/// Draws a valid random complex set: `s` complexes of size at most `r` over a
/// d-item pool, no containments, thresholds in `1..=min(u_max, |D_a|)`.
/// Rejection-samples until the invariants hold.
pub fn random_complex_set(
    n: usize,
    d: usize,
    r: usize,
    s: usize,
    u_max: u32,
    seed: u64,
) -> Result<ComplexSet, ModelError> {
    if s == 0 || r == 0 || u_max == 0 {
        return Err(ModelError::InfeasibleParameters(
            "s, r and u_max must be at least 1".into(),
        ));
    }
    if s > d {
        return Err(ModelError::InfeasibleParameters(format!(
            "{s} complexes of at least one item each cannot fit a defective budget of {d}"
        )));
    }
    if r > d || d > n {
        return Err(ModelError::InfeasibleParameters(format!(
            "need r <= d <= n (got r={r}, d={d}, n={n})"
        )));
    }
    let mut g = rng::rng_from(seed, rng::STREAM_TRIAL_SET, 0);
    let mut universe: Vec<Item> = (0..n as Item).collect();
    for _ in 0..GENERATOR_ATTEMPTS {
        for i in 0..d {
            let j = g.gen_range(i..n);
            universe.swap(i, j);
        }
        let pool = &universe[..d];
        let mut complexes: Vec<Vec<Item>> = Vec::with_capacity(s);
        for _ in 0..s {
            let size = g.gen_range(1..=r.min(d));
            let mut pick: Vec<Item> = pool.to_vec();
            for i in 0..size {
                let j = g.gen_range(i..pick.len());
                pick.swap(i, j);
            }
            complexes.push(sets::normalize(pick[..size].to_vec()));
        }
        let antichain = (0..s).all(|a| {
            (0..s).all(|b| a == b || !sets::is_subset(&complexes[a], &complexes[b]))
        });
        if !antichain {
            continue;
        }
        let thresholds: Vec<u32> = complexes
            .iter()
            .map(|c| g.gen_range(1..=u_max.min(c.len() as u32)))
            .collect();
        let set = ComplexSet::new(n, complexes, thresholds)
            .expect("sampled set satisfies construction invariants");
        debug_assert!(set.validate_bounds(d, r).is_ok());
        return Ok(set);
    }
    Err(ModelError::InfeasibleParameters(format!(
        "no valid complex set found after {GENERATOR_ATTEMPTS} attempts \
         (n={n}, d={d}, r={r}, s={s}, u_max={u_max})"
    )))
}

pub fn write_gtset(d: &ComplexSet, out: &mut impl Write) -> Result<(), ModelError> {
    writeln!(out, "GTSET v1 {} {}", d.n, d.count())?;
    for (c, u) in d.complexes.iter().zip(&d.thresholds) {
        let items: Vec<String> = c.iter().map(|i| i.to_string()).collect();
        writeln!(out, "{u}: {}", items.join(" "))?;
    }
    Ok(())
}

pub fn write_gtset_file(d: &ComplexSet, path: &Path) -> Result<(), ModelError> {
    let mut buf = Vec::new();
    write_gtset(d, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_gtset(text: &str) -> Result<ComplexSet, ModelError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ModelError::Parse {
        line: 1,
        msg: "empty input, expected GTSET header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "GTSET" || fields[1] != "v1" {
        return Err(ModelError::Parse {
            line: 1,
            msg: format!("expected header 'GTSET v1 <n> <s>', got '{header}'"),
        });
    }
    let n: usize = fields[2].parse().map_err(|_| ModelError::Parse {
        line: 1,
        msg: format!("bad universe size '{}'", fields[2]),
    })?;
    let s: usize = fields[3].parse().map_err(|_| ModelError::Parse {
        line: 1,
        msg: format!("bad complex count '{}'", fields[3]),
    })?;

    let mut complexes = Vec::new();
    let mut thresholds = Vec::new();
    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (u_str, items_str) = line.split_once(':').ok_or(ModelError::Parse {
            line: lineno,
            msg: "expected '<threshold>: <items>'".into(),
        })?;
        let u: u32 = u_str.trim().parse().map_err(|_| ModelError::Parse {
            line: lineno,
            msg: format!("bad threshold '{}'", u_str.trim()),
        })?;
        let mut items = Vec::new();
        for tok in items_str.split_whitespace() {
            items.push(tok.parse::<Item>().map_err(|_| ModelError::Parse {
                line: lineno,
                msg: format!("bad item '{tok}'"),
            })?);
        }
        complexes.push(items);
        thresholds.push(u);
    }
    if complexes.len() != s {
        return Err(ModelError::Parse {
            line: text.lines().count(),
            msg: format!("found {} complexes, header declared {s}", complexes.len()),
        });
    }
    ComplexSet::new(n, complexes, thresholds)
}

pub fn read_gtset_file(path: &Path) -> Result<ComplexSet, ModelError> {
    read_gtset(&fs::read_to_string(path)?)
}

pub fn write_gtout(y: &OutcomeVector, out: &mut impl Write) -> Result<(), ModelError> {
    writeln!(out, "GTOUT v1 {} {}", y.blocks(), y.inner_len())?;
    let k = y.inner_len();
    let mut line = String::with_capacity(2 * k + 2);
    for i in 0..y.blocks() {
        line.clear();
        line.push(if y.indicator(i) { '1' } else { '0' });
        line.push('|');
        let z = y.z_block(i);
        for l in 0..2 * k {
            line.push(if z.get(l) { '1' } else { '0' });
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn write_gtout_file(y: &OutcomeVector, path: &Path) -> Result<(), ModelError> {
    let mut buf = Vec::new();
    write_gtout(y, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_gtout(text: &str) -> Result<OutcomeVector, ModelError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ModelError::Parse {
        line: 1,
        msg: "empty input, expected GTOUT header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "GTOUT" || fields[1] != "v1" {
        return Err(ModelError::Parse {
            line: 1,
            msg: format!("expected header 'GTOUT v1 <h> <k>', got '{header}'"),
        });
    }
    let h: usize = fields[2].parse().map_err(|_| ModelError::Parse {
        line: 1,
        msg: format!("bad block count '{}'", fields[2]),
    })?;
    let k: usize = fields[3].parse().map_err(|_| ModelError::Parse {
        line: 1,
        msg: format!("bad inner length '{}'", fields[3]),
    })?;

    let mut y = OutcomeVector::zeros(h, k);
    let mut block = 0usize;
    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if block >= h {
            return Err(ModelError::Parse {
                line: lineno,
                msg: format!("more than {h} blocks"),
            });
        }
        let (ind, rest) = line.split_once('|').ok_or(ModelError::Parse {
            line: lineno,
            msg: "expected '<indicator>|<block bits>'".into(),
        })?;
        match ind {
            "0" => {}
            "1" => y.set_indicator(block, true),
            other => {
                return Err(ModelError::Parse {
                    line: lineno,
                    msg: format!("invalid indicator '{other}'"),
                })
            }
        }
        if rest.len() != 2 * k {
            return Err(ModelError::Parse {
                line: lineno,
                msg: format!("block has {} bits, expected {}", rest.len(), 2 * k),
            });
        }
        for (l, ch) in rest.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => {
                    if l < k {
                        y.set_inner_bit(block, l, true);
                    } else {
                        y.set_comp_bit(block, l - k, true);
                    }
                }
                other => {
                    return Err(ModelError::Parse {
                        line: lineno,
                        msg: format!("invalid character '{other}' in block bits"),
                    })
                }
            }
        }
        block += 1;
    }
    if block != h {
        return Err(ModelError::Parse {
            line: text.lines().count(),
            msg: format!("found {block} blocks, header declared {h}"),
        });
    }
    Ok(y)
}

pub fn read_gtout_file(path: &Path) -> Result<OutcomeVector, ModelError> {
    read_gtout(&fs::read_to_string(path)?)
}

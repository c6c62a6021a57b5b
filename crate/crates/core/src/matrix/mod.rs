//! Measurement matrices: construction, verification, composition, and file I/O.
//!
//! All matrices are binary. A `(d, r; z]`-disjunct matrix is one where, for
//! any disjoint column sets `S1` (|S1| = d) and `S2` (|S2| = r), at least `z`
//! rows carry ones on every column of `S2` and zeros on every column of `S1`.
//! The `r = z = 1` case is the classical d-disjunct matrix that permits unique
//! recovery of any d-sparse boolean vector from OR-channel measurements.

mod construct;
mod io;
mod verify;

pub use construct::{
    kautz_singleton, random_disjunct, row_count_target, ConstructOptions, Constructed,
    VerificationKind,
};
pub use io::{read_gtmat, read_gtmat_file, write_gtmat, write_gtmat_file};
pub use verify::{
    exhaustive_pair_count, sample_verify_disjunct, verify_disjunct, Counterexample, SampleOutcome,
    VerifyBudget, VerifyOutcome,
};

use crate::bits::{self, Bitset};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(
        "verification budget exceeded: {required} column-subset checks > budget {budget} \
         (use sampled verification)"
    )]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("construction failed after {attempts} attempts (last row count {rows}); raise the row constant or attempt limit")]
    ConstructionFailed { attempts: u32, rows: usize },
    #[error("no feasible code parameters for n={n}, d={d} within q <= {q_limit}")]
    Infeasible { n: usize, d: usize, q_limit: u64 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Dense binary matrix, row-major, one bit per entry.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be at least 1x1");
        let words_per_row = bits::words_for(cols);
        BinaryMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0u64; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BinaryMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = BinaryMatrix::zeros(rows, cols);
        for w in m.bits.iter_mut() {
            *w = u64::MAX;
        }
        m.mask_tails();
        m
    }

    /// Builds a matrix from a per-entry predicate.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BinaryMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    fn mask_tails(&mut self) {
        let mask = bits::tail_mask(self.cols);
        for r in 0..self.rows {
            self.bits[r * self.words_per_row + self.words_per_row - 1] &= mask;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        self.bits[row * self.words_per_row + col / 64] >> (col % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        let w = &mut self.bits[row * self.words_per_row + col / 64];
        if value {
            *w |= 1 << (col % 64);
        } else {
            *w &= !(1 << (col % 64));
        }
    }

    /// Row `i` as packed words over the column axis.
    #[inline]
    pub(crate) fn row_words(&self, row: usize) -> &[u64] {
        let start = row * self.words_per_row;
        &self.bits[start..start + self.words_per_row]
    }

    pub fn row_support(&self, row: usize) -> Vec<usize> {
        Bitset::from_words(self.cols, self.row_words(row).to_vec()).ones()
    }

    pub fn col_support(&self, col: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, col)).collect()
    }

    /// Column `j` packed over the row axis. O(rows); verification transposes
    /// once up front instead of calling this in a loop.
    pub fn col_bits(&self, col: usize) -> Bitset {
        let mut b = Bitset::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, col) {
                b.set(i, true);
            }
        }
        b
    }

    /// All columns as packed row-axis bit vectors.
    pub(crate) fn transpose_columns(&self) -> Vec<Bitset> {
        let mut cols = vec![Bitset::zeros(self.rows); self.cols];
        for i in 0..self.rows {
            let rw = self.row_words(i);
            for (wi, &w) in rw.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let j = wi * 64 + w.trailing_zeros() as usize;
                    cols[j].set(i, true);
                    w &= w - 1;
                }
            }
        }
        cols
    }

    /// Entrywise complement.
    pub fn complement(&self) -> BinaryMatrix {
        let mut out = self.clone();
        for w in out.bits.iter_mut() {
            *w = !*w;
        }
        out.mask_tails();
        out
    }

    /// Vertical stack `[self; below]`.
    pub fn vstack(&self, below: &BinaryMatrix) -> Result<BinaryMatrix, MatrixError> {
        if self.cols != below.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot stack {}x{} on {}x{}",
                self.rows, self.cols, below.rows, below.cols
            )));
        }
        let mut out = BinaryMatrix::zeros(self.rows + below.rows, self.cols);
        out.bits[..self.bits.len()].copy_from_slice(&self.bits);
        out.bits[self.bits.len()..].copy_from_slice(&below.bits);
        Ok(out)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parameters qualifying a `(d, r; z]`-disjunct matrix.
///
/// `d` is the excluded-column budget, `r` the included-column budget, `z` the
/// witness-row budget. Degenerate `d = 0` or `r = 0` are rejected outright:
/// the definition presumes a nonempty included set, and an empty excluded set
/// makes every check vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjunctParams {
    d: usize,
    r: usize,
    z: usize,
}

impl DisjunctParams {
    pub fn new(d: usize, r: usize, z: usize) -> Result<Self, MatrixError> {
        if d == 0 || r == 0 || z == 0 {
            return Err(MatrixError::InvalidParams(format!(
                "disjunct parameters must satisfy d >= 1, r >= 1, z >= 1 (got d={d}, r={r}, z={z})"
            )));
        }
        Ok(DisjunctParams { d, r, z })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn z(&self) -> usize {
        self.z
    }

    /// Classical d-disjunct: `(d, 1; 1]`.
    pub fn classical(d: usize) -> Result<Self, MatrixError> {
        DisjunctParams::new(d, 1, 1)
    }

    pub(crate) fn check_against(&self, mat: &BinaryMatrix) -> Result<(), MatrixError> {
        if self.d + self.r > mat.cols() {
            return Err(MatrixError::InvalidParams(format!(
                "d + r = {} exceeds column count {}",
                self.d + self.r,
                mat.cols()
            )));
        }
        Ok(())
    }
}

/// The stacked measurement matrix `A = [M; complement(M)]`, 2k x n.
pub fn build_a(m: &BinaryMatrix) -> BinaryMatrix {
    m.vstack(&m.complement())
        .expect("complement preserves shape")
}

/// Composition of an h x n outer matrix with a k x n inner matrix into the
/// full (2k+1)h x n test design.
///
/// Block `i` holds the outer row `G[i,*]` followed by `M` and then
/// `complement(M)`, each with columns zeroed wherever `G[i,c] = 0`.
pub struct ComposedMatrix {
    g: BinaryMatrix,
    m: BinaryMatrix,
    m_comp: BinaryMatrix,
    t: BinaryMatrix,
}

impl ComposedMatrix {
    pub fn outer(&self) -> &BinaryMatrix {
        &self.g
    }

    pub fn inner(&self) -> &BinaryMatrix {
        &self.m
    }

    pub fn inner_complement(&self) -> &BinaryMatrix {
        &self.m_comp
    }

    pub fn composed(&self) -> &BinaryMatrix {
        &self.t
    }

    /// Number of outer rows (blocks).
    pub fn block_count(&self) -> usize {
        self.g.rows()
    }

    /// Number of inner rows.
    pub fn inner_rows(&self) -> usize {
        self.m.rows()
    }

    pub fn items(&self) -> usize {
        self.g.cols()
    }

    /// Total test count, always `(2k + 1) * h`.
    pub fn test_count(&self) -> usize {
        (2 * self.inner_rows() + 1) * self.block_count()
    }
}

/// Builds the composed matrix `T` from outer `G` and inner `M`.
pub fn build_t(g: &BinaryMatrix, m: &BinaryMatrix) -> Result<ComposedMatrix, MatrixError> {
    if g.cols() != m.cols() {
        return Err(MatrixError::DimensionMismatch(format!(
            "outer has {} columns, inner has {}",
            g.cols(),
            m.cols()
        )));
    }
    let h = g.rows();
    let k = m.rows();
    let n = g.cols();
    let m_comp = m.complement();
    let mut t = BinaryMatrix::zeros((2 * k + 1) * h, n);
    for i in 0..h {
        let gw = g.row_words(i);
        let base = i * (2 * k + 1);
        copy_masked(&mut t, base, gw, &BinaryMatrix::ones(1, n), 0);
        for l in 0..k {
            copy_masked(&mut t, base + 1 + l, gw, m, l);
            copy_masked(&mut t, base + 1 + k + l, gw, &m_comp, l);
        }
    }
    let composed = ComposedMatrix {
        g: g.clone(),
        m: m.clone(),
        m_comp,
        t,
    };
    debug_assert_eq!(composed.t.rows(), composed.test_count());
    Ok(composed)
}

fn copy_masked(t: &mut BinaryMatrix, dst_row: usize, mask: &[u64], src: &BinaryMatrix, src_row: usize) {
    let wpr = t.words_per_row;
    let src_words = src.row_words(src_row).to_vec();
    let dst = &mut t.bits[dst_row * wpr..(dst_row + 1) * wpr];
    for (w, (s, g)) in dst.iter_mut().zip(src_words.iter().zip(mask)) {
        *w = s & g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_involutive() {
        let i2 = BinaryMatrix::identity(2);
        let c = i2.complement();
        assert!(c.get(0, 1) && c.get(1, 0));
        assert!(!c.get(0, 0) && !c.get(1, 1));
        assert_eq!(c.complement(), i2);
    }

    #[test]
    fn complement_of_zeros_is_ones() {
        let z = BinaryMatrix::zeros(2, 3);
        assert_eq!(z.complement(), BinaryMatrix::ones(2, 3));
    }

    #[test]
    fn build_a_shapes_and_values() {
        let a = build_a(&BinaryMatrix::identity(2));
        assert_eq!((a.rows(), a.cols()), (4, 2));
        let expect = [[1, 0], [0, 1], [0, 1], [1, 0]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(a.get(i, j), v == 1);
            }
        }

        let ones = BinaryMatrix::ones(1, 3);
        let a = build_a(&ones);
        assert_eq!((a.rows(), a.cols()), (2, 3));
        assert!(a.get(0, 0) && a.get(0, 1) && a.get(0, 2));
        assert!(!a.get(1, 0) && !a.get(1, 1) && !a.get(1, 2));
    }

    #[test]
    fn build_t_all_ones_outer_row_passes_inner_through() {
        let m = BinaryMatrix::from_fn(2, 3, |i, j| (i + j) % 2 == 0);
        let g = BinaryMatrix::ones(1, 3);
        let t = build_t(&g, &m).unwrap();
        assert_eq!(t.composed().rows(), 5);
        // first row is the outer row itself
        assert!((0..3).all(|j| t.composed().get(0, j)));
        for l in 0..2 {
            for j in 0..3 {
                assert_eq!(t.composed().get(1 + l, j), m.get(l, j));
                assert_eq!(t.composed().get(3 + l, j), !m.get(l, j));
            }
        }
    }

    #[test]
    fn build_t_zero_outer_row_blanks_block() {
        let m = BinaryMatrix::ones(2, 3);
        let g = BinaryMatrix::zeros(1, 3);
        let t = build_t(&g, &m).unwrap();
        for i in 0..5 {
            for j in 0..3 {
                assert!(!t.composed().get(i, j));
            }
        }
    }

    #[test]
    fn build_t_hand_instance() {
        // h = 2, k = 2, n = 3; composed entries checked against the
        // per-entry formula for every row of every block.
        let g = BinaryMatrix::from_fn(2, 3, |i, j| [[1, 1, 0], [0, 1, 1]][i][j] == 1);
        let m = BinaryMatrix::from_fn(2, 3, |i, j| [[1, 0, 1], [0, 1, 1]][i][j] == 1);
        let t = build_t(&g, &m).unwrap();
        assert_eq!(t.composed().rows(), 10);
        assert_eq!(t.test_count(), 10);
        for i in 0..2 {
            let base = i * 5;
            for j in 0..3 {
                assert_eq!(t.composed().get(base, j), g.get(i, j));
                for l in 0..2 {
                    assert_eq!(t.composed().get(base + 1 + l, j), m.get(l, j) && g.get(i, j));
                    assert_eq!(
                        t.composed().get(base + 3 + l, j),
                        !m.get(l, j) && g.get(i, j)
                    );
                }
            }
        }
    }

    #[test]
    fn build_t_rejects_column_mismatch() {
        let g = BinaryMatrix::ones(1, 3);
        let m = BinaryMatrix::ones(2, 4);
        assert!(matches!(
            build_t(&g, &m),
            Err(MatrixError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn disjunct_params_reject_degenerates() {
        assert!(DisjunctParams::new(0, 1, 1).is_err());
        assert!(DisjunctParams::new(1, 0, 1).is_err());
        assert!(DisjunctParams::new(1, 1, 0).is_err());
        assert!(DisjunctParams::new(1, 1, 1).is_ok());
    }

    #[test]
    fn row_and_col_support_agree() {
        let m = BinaryMatrix::from_fn(3, 4, |i, j| (i * 4 + j) % 3 == 0);
        for i in 0..3 {
            for j in 0..4 {
                let in_row = m.row_support(i).contains(&j);
                let in_col = m.col_support(j).contains(&i);
                assert_eq!(in_row, in_col);
                assert_eq!(in_row, m.get(i, j));
            }
        }
    }
}

//! Property tests for the structural invariants of matrices, the channel,
//! and the conversion rule.

use cmplxgt::bits::Bitset;
use cmplxgt::decode::{convert2nacgt, decode_naive};
use cmplxgt::matrix::{
    build_a, build_t, verify_disjunct, BinaryMatrix, DisjunctParams, VerifyBudget,
};
use cmplxgt::model::{
    encode, inject_errors, test_ccmplx, test_gcmplx, ComplexSet, ErrorBudget, TestMode,
};
use cmplxgt::Item;
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(proptest::bool::ANY, rows * cols).prop_map(move |bits| {
            BinaryMatrix::from_fn(rows, cols, |i, j| bits[i * cols + j])
        })
    })
}

fn matrix_with_cols(max_rows: usize, cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    (1..=max_rows).prop_flat_map(move |rows| {
        proptest::collection::vec(proptest::bool::ANY, rows * cols)
            .prop_map(move |bits| BinaryMatrix::from_fn(rows, cols, |i, j| bits[i * cols + j]))
    })
}

/// A valid complex set over `n` items: nonempty antichain with thresholds.
fn complex_set(n: usize) -> impl Strategy<Value = ComplexSet> {
    let item = 0..n as Item;
    proptest::collection::vec(proptest::collection::btree_set(item, 1..=3), 1..=3).prop_filter_map(
        "antichain with thresholds",
        move |families| {
            let complexes: Vec<Vec<Item>> =
                families.into_iter().map(|s| s.into_iter().collect()).collect();
            let thresholds: Vec<u32> = complexes.iter().map(|c| c.len() as u32).collect();
            ComplexSet::new(n, complexes, thresholds).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_involution_and_cover(m in small_matrix(12, 20)) {
        let c = m.complement();
        prop_assert_eq!(c.complement(), m.clone());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                prop_assert!(m.get(i, j) || c.get(i, j));
                prop_assert!(!(m.get(i, j) && c.get(i, j)));
            }
        }
        let a = build_a(&m);
        prop_assert_eq!(a.rows(), 2 * m.rows());
    }

    #[test]
    fn composition_is_deterministic_and_shaped(
        g in matrix_with_cols(4, 10),
        m in matrix_with_cols(5, 10),
    ) {
        let t1 = build_t(&g, &m).unwrap();
        let t2 = build_t(&g, &m).unwrap();
        prop_assert_eq!(t1.composed(), t2.composed());
        prop_assert_eq!(t1.test_count(), (2 * m.rows() + 1) * g.rows());
        // column masking: block rows are the source rows ANDed with the outer row
        for i in 0..g.rows() {
            let base = i * (2 * m.rows() + 1);
            for l in 0..m.rows() {
                for c in 0..g.cols() {
                    prop_assert_eq!(
                        t1.composed().get(base + 1 + l, c),
                        m.get(l, c) && g.get(i, c)
                    );
                }
            }
        }
    }

    #[test]
    fn verify_monotone_in_z(m in small_matrix(14, 8), d in 1usize..3, r in 1usize..3) {
        prop_assume!(d + r <= m.cols());
        let budget = VerifyBudget::default();
        for z in [3usize, 2] {
            let hi = verify_disjunct(&m, &DisjunctParams::new(d, r, z).unwrap(), &budget).unwrap();
            if hi.is_disjunct() {
                let lo = verify_disjunct(&m, &DisjunctParams::new(d, r, z - 1).unwrap(), &budget)
                    .unwrap();
                prop_assert!(lo.is_disjunct(), "passing at z={z} must pass at z={}", z - 1);
            }
        }
    }

    #[test]
    fn removing_a_row_never_fixes_a_failure(m in small_matrix(6, 8), row in 0usize..6) {
        prop_assume!(m.rows() >= 2 && m.cols() >= 3 && row < m.rows());
        let params = DisjunctParams::new(2, 1, 1).unwrap();
        let budget = VerifyBudget::default();
        let before = verify_disjunct(&m, &params, &budget).unwrap();
        prop_assume!(!before.is_disjunct());
        let smaller = BinaryMatrix::from_fn(m.rows() - 1, m.cols(), |i, j| {
            m.get(if i < row { i } else { i + 1 }, j)
        });
        let after = verify_disjunct(&smaller, &params, &budget).unwrap();
        prop_assert!(!after.is_disjunct());
    }

    #[test]
    fn channel_is_monotone(d in complex_set(10), sub in proptest::collection::btree_set(0u32..10, 0..6), extra in 0u32..10) {
        let small: Vec<Item> = sub.iter().copied().collect();
        let mut big = small.clone();
        big.push(extra);
        prop_assert!(test_ccmplx(&small, &d) <= test_ccmplx(&big, &d));
        prop_assert!(test_gcmplx(&small, &d) <= test_gcmplx(&big, &d));
    }

    #[test]
    fn classical_thresholds_collapse_the_modes(
        d in complex_set(9),
        g in matrix_with_cols(4, 9),
        m in matrix_with_cols(4, 9),
    ) {
        let t = build_t(&g, &m).unwrap();
        let yc = encode(&t, &d, TestMode::Ccmplx).unwrap();
        let yg = encode(&t, &d, TestMode::Gcmplx).unwrap();
        prop_assert_eq!(yc, yg);
    }

    #[test]
    fn outcome_bits_depend_only_on_row_supports(
        d in complex_set(9),
        g in matrix_with_cols(3, 9),
        m in matrix_with_cols(3, 9),
    ) {
        let t = build_t(&g, &m).unwrap();
        let y = encode(&t, &d, TestMode::Gcmplx).unwrap();
        for row in 0..t.composed().rows() {
            let support: Vec<Item> = t
                .composed()
                .row_support(row)
                .into_iter()
                .map(|v| v as Item)
                .collect();
            prop_assert_eq!(y.get_flat(row), test_gcmplx(&support, &d));
        }
    }

    #[test]
    fn injected_errors_hit_exact_hamming_distance(
        h in 1usize..5,
        k in 1usize..6,
        e in 0usize..6,
        seed in any::<u64>(),
    ) {
        let y = cmplxgt::model::OutcomeVector::zeros(h, k);
        prop_assume!(e <= y.len());
        let (corrupt, flips) = inject_errors(&y, &ErrorBudget::random(e), seed).unwrap();
        prop_assert_eq!(corrupt.distance(&y), e);
        prop_assert_eq!(flips.len(), e);
    }

    #[test]
    fn conversion_matches_or_channel_for_exact_supports(
        m in matrix_with_cols(8, 9),
        support in proptest::collection::btree_set(0usize..9, 1..5),
    ) {
        let u = support.len();
        let x = Bitset::from_indices(9, &support.iter().copied().collect::<Vec<_>>());
        let a = build_a(&m);
        let mut z = Bitset::zeros(2 * m.rows());
        for row in 0..a.rows() {
            let hits: usize = (0..9).filter(|&j| a.get(row, j) && x.get(j)).count();
            if hits >= u {
                z.set(row, true);
            }
        }
        let converted = convert2nacgt(&z).unwrap();
        for row in 0..m.rows() {
            let or_bit = (0..9).any(|j| m.get(row, j) && x.get(j));
            prop_assert_eq!(converted.get(row), or_bit);
        }
    }

    #[test]
    fn cover_decoder_inverts_identity_measurements(
        support in proptest::collection::btree_set(0u32..12, 0..5),
    ) {
        let m = BinaryMatrix::identity(12);
        let mut y = Bitset::zeros(12);
        for &j in &support {
            y.set(j as usize, true);
        }
        let got = decode_naive(&m, &y).unwrap();
        prop_assert_eq!(got, support.into_iter().collect::<Vec<Item>>());
    }
}

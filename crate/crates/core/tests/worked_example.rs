//! End-to-end run of the running example: three overlapping complexes over
//! eleven items, decoded exactly by both algorithms with verified matrices.

use cmplxgt::decode::{algorithm1, algorithm2, algorithm2_phase1};
use cmplxgt::matrix::{
    build_t, random_disjunct, verify_disjunct, ConstructOptions, DisjunctParams, VerifyBudget,
};
use cmplxgt::model::{encode, inject_errors, ComplexSet, ErrorBudget, TestMode};
use cmplxgt::oracle::oracle_min_subcomplexes;

const N: usize = 11;

fn complexes() -> Vec<Vec<u32>> {
    vec![vec![1, 2], vec![2, 3, 4], vec![1, 3, 7, 8]]
}

fn design(included: usize, z: usize) -> cmplxgt::matrix::ComposedMatrix {
    // |D'| = 6 defectives; the outer matrix isolates every sub-complex
    // (ones on it, zeros on the other defectives) and the inner matrix is
    // 6-disjunct
    let opts = ConstructOptions::default();
    let outer_params = DisjunctParams::new(5, included, z).unwrap();
    let outer = random_disjunct(N, &outer_params, 71, &opts).unwrap();
    assert!(outer.verification.is_exhaustive());
    let inner = random_disjunct(N, &DisjunctParams::classical(6).unwrap(), 72, &opts).unwrap();
    assert!(inner.verification.is_exhaustive());
    // double-check both certificates independently
    assert!(verify_disjunct(&outer.matrix, &outer_params, &VerifyBudget::default())
        .unwrap()
        .is_disjunct());
    assert!(verify_disjunct(
        &inner.matrix,
        &DisjunctParams::classical(6).unwrap(),
        &VerifyBudget::default()
    )
    .unwrap()
    .is_disjunct());
    build_t(&outer.matrix, &inner.matrix).unwrap()
}

#[test]
fn classical_decoder_recovers_the_example() {
    let d = ComplexSet::classical(N, complexes()).unwrap();
    let t = design(4, 1);
    let y = encode(&t, &d, TestMode::Ccmplx).unwrap();
    let result = algorithm1(&y, &t, 1).unwrap();
    assert_eq!(
        result.complexes,
        vec![vec![1, 2], vec![2, 3, 4], vec![1, 3, 7, 8]]
    );
}

#[test]
fn generalized_decoder_recovers_the_example_with_partial_thresholds() {
    let d = ComplexSet::new(N, complexes(), vec![2, 2, 3]).unwrap();
    assert!(d.gcmplx_identifiable());
    let t = design(3, 1);
    let y = encode(&t, &d, TestMode::Gcmplx).unwrap();

    // phase 1 surfaces exactly the C(2,2) + C(3,2) + C(4,3) = 8 subsets
    let pool = algorithm2_phase1(&y, &t, 1).unwrap();
    let family = oracle_min_subcomplexes(&d);
    assert_eq!(pool.entries, family);
    assert_eq!(pool.entries.len(), 8);

    let result = algorithm2(&y, &t, 1).unwrap();
    assert_eq!(
        result.complexes,
        vec![vec![1, 2], vec![2, 3, 4], vec![1, 3, 7, 8]]
    );
}

#[test]
fn generalized_decoder_shrugs_off_two_flips_at_z5() {
    // reduced two-complex variant keeps the z = 5 outer matrix small
    let d = ComplexSet::new(N, vec![vec![1, 2], vec![2, 3, 4]], vec![2, 2]).unwrap();
    assert!(d.gcmplx_identifiable());
    let opts = ConstructOptions::default();
    let outer = random_disjunct(N, &DisjunctParams::new(3, 2, 5).unwrap(), 73, &opts).unwrap();
    let inner = random_disjunct(N, &DisjunctParams::classical(4).unwrap(), 74, &opts).unwrap();
    let t = build_t(&outer.matrix, &inner.matrix).unwrap();
    let clean = encode(&t, &d, TestMode::Gcmplx).unwrap();
    for seed in 0..100u64 {
        let (dirty, flips) = inject_errors(&clean, &ErrorBudget::random(2), seed).unwrap();
        let result = algorithm2(&dirty, &t, 5).unwrap();
        assert_eq!(
            result.complexes,
            vec![vec![1, 2], vec![2, 3, 4]],
            "flips {flips:?}"
        );
    }
}

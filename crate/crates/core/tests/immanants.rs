mod common;

use common::{heap_permutations, naive_immanant, p, relative_error, rng, FrobeniusTable};
use immanon::immanant::{
    all_normalized_immanants, class_sums, column_permuted_immanants, determinant, immanant, normalized_immanant,
    permanent,
};
use immanon::partition::{character, enumerate_partitions};
use immanon::{Complex64, ComplexMatrix, Partition, Permutation};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn every_character_matches_naive_sum() {
    let mut chars = FrobeniusTable::default();
    let mut r = rng(11);
    for n in 1..=6 {
        for _ in 0..3 {
            let m = ComplexMatrix::random_gaussian(n, &mut r);
            for lambda in enumerate_partitions(n).unwrap() {
                let got = immanant(&lambda, &m).unwrap();
                let want = naive_immanant(&lambda, &m, &mut chars);
                assert!(relative_error(got, want) < 1e-10, "n={n} λ={lambda}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn class_sum_route_matches_permanent_and_determinant() {
    let mut r = rng(12);
    for n in 2..=8 {
        let m = ComplexMatrix::random_gaussian(n, &mut r);
        let sums = class_sums(&m).unwrap();
        let perm = permanent(&m).unwrap();
        let det = determinant(&m);
        assert!(relative_error(sums.immanant(&Partition::trivial(n)).unwrap(), perm) < 1e-9);
        assert!(relative_error(sums.immanant(&Partition::alternating(n)).unwrap(), det) < 1e-9);
    }
}

#[test]
fn small_closed_values() {
    assert!((immanant(&p("1.1.1"), &ComplexMatrix::identity(3)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    assert!(immanant(&p("2.1"), &ComplexMatrix::ones(3)).unwrap().norm() < 1e-12);
    assert!((immanant(&p("3"), &ComplexMatrix::ones(3)).unwrap() - c(6.0, 0.0)).norm() < 1e-12);
    assert!((normalized_immanant(&p("2.1"), &ComplexMatrix::identity(3)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    for n in 1..=10 {
        let expect: f64 = (1..=n).map(|k| k as f64).product();
        assert!((permanent(&ComplexMatrix::ones(n)).unwrap().re - expect).abs() < 1e-9 * expect);
    }
    let m = ComplexMatrix::from_rows(vec![vec![c(1.0, 2.0), c(3.0, 0.0)], vec![c(0.0, -1.0), c(2.0, 1.0)]]).unwrap();
    let want = m[(0, 0)] * m[(1, 1)] + m[(0, 1)] * m[(1, 0)];
    assert!((permanent(&m).unwrap() - want).norm() < 1e-14);
}

#[test]
fn transition_matrix_immanant_of_mixed_species() {
    for x in [0.0, 0.25, 0.5, 0.9, 1.0] {
        let m = ComplexMatrix::from_fn(3, |j, k| c(if j == k { 1.0 } else { x }, 0.0));
        let v = normalized_immanant(&p("2.1"), &m).unwrap();
        assert!((v.re - (1.0 - x * x * x)).abs() < 1e-14);
    }
}

#[test]
fn repeated_columns_kill_determinant() {
    let mut r = rng(13);
    let m = ComplexMatrix::random_gaussian(5, &mut r);
    let dup = m.repeat_columns(&[2, 0, 1, 1, 1]).unwrap();
    assert!(determinant(&dup).norm() < 1e-12);
}

#[test]
fn column_permutations_follow_lexicographic_order() {
    let mut chars = FrobeniusTable::default();
    let mut r = rng(14);
    let m = ComplexMatrix::random_gaussian(4, &mut r);
    for lambda in enumerate_partitions(4).unwrap() {
        let values = column_permuted_immanants(&lambda, &m).unwrap();
        assert_eq!(values.len(), 24);
        for (rho, got) in Permutation::lexicographic(4).zip(&values) {
            let want = naive_immanant(&lambda, &m.permute_columns(&rho), &mut chars);
            assert!(relative_error(*got, want) < 1e-10);
        }
    }
}

#[test]
fn identity_normalizes_every_immanant_to_one() {
    for n in 1..=7 {
        for (_, v) in all_normalized_immanants(&ComplexMatrix::identity(n)).unwrap() {
            assert!((v - c(1.0, 0.0)).norm() < 1e-14);
        }
    }
}

#[test]
fn column_sum_of_characters_vanishes_off_trivial() {
    for n in 2..=6 {
        for lambda in enumerate_partitions(n).unwrap() {
            let total: i64 = heap_permutations(n)
                .iter()
                .map(|s| character(&lambda, &Partition::new(common::cycles_of(s)).unwrap()).unwrap())
                .sum();
            let expect = if lambda.is_trivial() {
                (1..=n as i64).product()
            } else {
                0
            };
            assert_eq!(total, expect);
            let m = immanant(&lambda, &ComplexMatrix::ones(n)).unwrap();
            assert!((m.re - expect as f64).abs() < 1e-9 && m.im.abs() < 1e-9);
        }
    }
}

#[test]
fn size_errors() {
    assert!(immanant(&p("2.1"), &ComplexMatrix::identity(4)).is_err());
    assert!(immanant(&Partition::new(vec![6, 5]).unwrap(), &ComplexMatrix::identity(11)).is_err());
}

fn matrix_strategy() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |v| ComplexMatrix::new(n, v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    })
}

fn swap_rows(m: &ComplexMatrix, a: usize, b: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.dim(), |j, k| {
        let r = if j == a {
            b
        } else if j == b {
            a
        } else {
            j
        };
        m[(r, k)]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homogeneous_of_degree_n(m in matrix_strategy(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let n = m.dim();
        let s = c(re, im);
        for lambda in enumerate_partitions(n).unwrap() {
            let scaled = immanant(&lambda, &m.scale(s)).unwrap();
            let expect = immanant(&lambda, &m).unwrap() * s.powu(n as u32);
            prop_assert!(relative_error(scaled, expect) < 1e-9);
        }
    }

    #[test]
    fn row_swap_keeps_permanent_and_flips_determinant(m in matrix_strategy(), a in 0usize..5, b in 0usize..5) {
        let n = m.dim();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let swapped = swap_rows(&m, a, b);
        prop_assert!(relative_error(permanent(&swapped).unwrap(), permanent(&m).unwrap()) < 1e-10);
        prop_assert!(relative_error(determinant(&swapped), -determinant(&m)) < 1e-10);
    }

    #[test]
    fn simultaneous_row_column_swap_preserves_every_immanant(m in matrix_strategy(), a in 0usize..5, b in 0usize..5) {
        let n = m.dim();
        let (a, b) = (a % n, b % n);
        let sigma = Permutation::transposition(n, a, b);
        let conj = swap_rows(&m, a, b).permute_columns(&sigma);
        for lambda in enumerate_partitions(n).unwrap() {
            prop_assert!(relative_error(immanant(&lambda, &conj).unwrap(), immanant(&lambda, &m).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn transpose_preserves_every_immanant(m in matrix_strategy()) {
        for lambda in enumerate_partitions(m.dim()).unwrap() {
            prop_assert!(relative_error(immanant(&lambda, &m.transpose()).unwrap(), immanant(&lambda, &m).unwrap()) < 1e-10);
        }
    }
}

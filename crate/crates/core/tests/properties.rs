use std::sync::Arc;

use bipermute::matrix::{pad_sequence, prefix_suffix_products, seq_product, Matrix, MatrixFamily};
use bipermute::permutability::{apply_perm_product, find_preserving_permutation, path_assignment, reconstruct_from_assignment, Permutation, SearchPolicy};
use bipermute::trunc_iso::classify_truncated;
use bipermute::{Rational, Scalar, Semiring};
use proptest::prelude::*;

/// Elements of T[1,3]: -inf, 0, or a point of [1,3] with denominator 4.
fn trunc13_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        1 => Just(Scalar::NegInf),
        1 => Just(Scalar::int(0)),
        6 => (4i64..=12).prop_map(|n| Scalar::rat(n, 4)),
    ]
}

fn tropical_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![1 => Just(Scalar::NegInf), 5 => (-20i64..=20).prop_map(Scalar::int)]
}

fn t13() -> Arc<Semiring> {
    Arc::new(Semiring::trunc(Rational::one(), Rational::from(3)).unwrap())
}

fn full_matrix(s: Arc<Semiring>, n: usize, elem: impl Strategy<Value = Scalar>) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(elem, n * n).prop_map(move |e| Matrix::new(s.clone(), MatrixFamily::Full, n, e).unwrap())
}

fn trunc_seq(n: usize, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Matrix>> {
    proptest::collection::vec(full_matrix(t13(), n, trunc13_scalar()), len)
}

fn perm_of(k: usize) -> impl Strategy<Value = Permutation> {
    Just((0..k).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn trunc_operations_are_lawful(a in trunc13_scalar(), b in trunc13_scalar(), c in trunc13_scalar()) {
        let s = t13();
        let sum = s.add(&a, &b).unwrap();
        prop_assert!(sum == a || sum == b);
        prop_assert_eq!(s.mul(&a, &b).unwrap(), s.mul(&b, &a).unwrap());
        prop_assert_eq!(s.mul(&s.mul(&a, &b).unwrap(), &c).unwrap(), s.mul(&a, &s.mul(&b, &c).unwrap()).unwrap());
        let left = s.mul(&a, &s.add(&b, &c).unwrap()).unwrap();
        let right = s.add(&s.mul(&a, &b).unwrap(), &s.mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(s.contains(&s.mul(&a, &b).unwrap()));
    }

    #[test]
    fn matrix_product_is_associative(
        a in full_matrix(Arc::new(Semiring::tropical()), 3, tropical_scalar()),
        b in full_matrix(Arc::new(Semiring::tropical()), 3, tropical_scalar()),
        c in full_matrix(Arc::new(Semiring::tropical()), 3, tropical_scalar()),
    ) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn trunc_matrices_are_closed(seq in trunc_seq(2, 2..=5)) {
        let p = seq_product(&seq).unwrap();
        prop_assert!(p.entries().iter().all(|x| p.semiring().contains(x)));
    }

    #[test]
    fn splicing_recovers_the_product(seq in trunc_seq(2, 1..=7), i in 0usize..7, j in 0usize..8) {
        let k = seq.len();
        let (i, j) = (i % k, i % k + 1 + j % (k - i % k));
        let ps = prefix_suffix_products(&seq).unwrap();
        let middle = seq_product(&seq[i..j]).unwrap();
        prop_assert_eq!(&ps.splice(i, &middle, j).unwrap(), ps.total());
        prop_assert_eq!(ps.total(), &seq_product(&seq).unwrap());
    }

    #[test]
    fn topleft_projection_is_multiplicative(
        a in proptest::collection::vec(tropical_scalar(), 6),
        b in proptest::collection::vec(tropical_scalar(), 6),
    ) {
        let s = Arc::new(Semiring::tropical());
        let ut = |v: &[Scalar]| {
            let rows = vec![
                vec![v[0].clone(), v[1].clone(), v[2].clone()],
                vec![Scalar::NegInf, v[3].clone(), v[4].clone()],
                vec![Scalar::NegInf, Scalar::NegInf, v[5].clone()],
            ];
            Matrix::from_rows(s.clone(), MatrixFamily::UpperTriangular, rows).unwrap()
        };
        let (a, b) = (ut(&a), ut(&b));
        let lhs = a.mul(&b).unwrap().project_topleft(2).unwrap();
        let rhs = a.project_topleft(2).unwrap().mul(&b.project_topleft(2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn padding_keeps_the_corner(
        (seq, sigma) in trunc_seq(2, 1..=5).prop_flat_map(|seq| { let k = seq.len(); (Just(seq), perm_of(k)) }),
        n in 3usize..=5,
    ) {
        let big = apply_perm_product(&pad_sequence(&seq, n).unwrap(), &sigma).unwrap();
        let small = apply_perm_product(&seq, &sigma).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert_eq!(big.get(i, j), small.get(i, j));
            }
        }
    }

    #[test]
    fn path_assignment_reconstructs(seq in trunc_seq(3, 1..=5), seed in any::<u64>()) {
        let k = seq.len();
        let mut images: Vec<usize> = (0..k).collect();
        images.rotate_left(seed as usize % k);
        let sigma = Permutation::new(images).unwrap();
        let pa = path_assignment(&seq, &sigma).unwrap();
        prop_assert_eq!(reconstruct_from_assignment(&seq, &pa).unwrap(), apply_perm_product(&seq, &sigma).unwrap());
    }

    #[test]
    fn inverse_composes_to_identity(sigma in (1usize..=9).prop_flat_map(perm_of)) {
        let inv = sigma.inverse();
        let composed: Vec<usize> = (0..sigma.images().len()).map(|i| inv.images()[sigma.images()[i]]).collect();
        prop_assert!(Permutation::new(composed).unwrap().is_identity());
    }

    #[test]
    fn adjacent_fast_path_agrees_with_direct_swap(seq in trunc_seq(2, 2..=12)) {
        let policy = SearchPolicy { try_all_transpositions: false, random_trials: 0, exhaustive_cap: 0, ..SearchPolicy::default() };
        let total = seq_product(&seq).unwrap();
        let direct = (0..seq.len() - 1).find(|&i| {
            let mut swapped = seq.clone();
            swapped.swap(i, i + 1);
            swapped[i] == swapped[i + 1] || seq_product(&swapped).unwrap() == total
        });
        let w = find_preserving_permutation(&seq, &policy).unwrap();
        prop_assert_eq!(w.perm().is_some(), direct.is_some());
        if let Some(p) = w.perm() {
            prop_assert_eq!(apply_perm_product(&seq, p).unwrap(), total);
        }
    }

    #[test]
    fn iso_maps_are_multiplicative(x in 1i64..=20, r in 11i64..=60, t in 0i64..=100, u in 0i64..=100) {
        let (x, y) = (Rational::new(x, 4), Rational::new(x * r, 40));
        let c = classify_truncated(&x, &y).unwrap();
        let (tgt_lo, tgt_hi) = c.canonical.bounds();
        let point = |t: i64| Scalar::Rat(&x + &((&y - &x) * Rational::new(t, 100)));
        let (a, b) = (point(t), point(u));
        let src = Semiring::trunc(x.clone(), y.clone()).unwrap();
        let tgt = Semiring::trunc(tgt_lo, tgt_hi).unwrap();
        let lhs = c.map.apply(&src.mul(&a, &b).unwrap()).unwrap();
        let rhs = tgt.mul(&c.map.apply(&a).unwrap(), &c.map.apply(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

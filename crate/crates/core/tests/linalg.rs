use killing_core::linalg::{
    bareiss_rank, exact_inverse, exact_rank, exact_rank_with, ldlt_inertia, rank_mod_p, signature, signature_with,
    IntSymMatrix, LinalgError, Signature,
};
use proptest::prelude::*;

fn sym(n: usize, v: &[i64]) -> IntSymMatrix {
    IntSymMatrix::from_fn(n, |i, j| v[i * n + j])
}

/// Rank-deficient symmetric matrix `B D B^T` with B of width `r`.
fn low_rank(n: usize, r: usize, b: &[i64], d: &[i64]) -> IntSymMatrix {
    IntSymMatrix::from_fn(n, |i, j| (0..r).map(|k| b[i * r + k] * d[k] * b[j * r + k]).sum())
}

#[test]
fn rejects_asymmetric_input() {
    assert!(matches!(IntSymMatrix::new(2, vec![1, 2, 3, 4]), Err(LinalgError::NotSymmetric { .. })));
    assert!(matches!(IntSymMatrix::new(2, vec![1, 2, 3]), Err(LinalgError::Shape { .. })));
}

#[test]
fn dump_round_trip() {
    let m = IntSymMatrix::from_fn(3, |i, j| (i as i64 + 1) * (j as i64 - 1));
    assert_eq!(IntSymMatrix::parse_dump(&m.dump()).unwrap(), m);
}

#[test]
fn a5_involution_block_inverse() {
    // One 3x3 block of the A5 involution class: 15 on the diagonal, 3 off it.
    let m = IntSymMatrix::from_fn(3, |i, j| if i == j { 15 } else { 3 });
    let inv = exact_inverse(&m, 64).unwrap();
    assert!(inv.mul_int(&m).is_identity());
    assert_eq!(inv.get(0, 0).to_string(), "1/14");
    assert_eq!(inv.get(0, 1).to_string(), "-1/84");
}

#[test]
fn singular_inverse_and_caps() {
    let m = IntSymMatrix::from_fn(2, |_, _| 2);
    assert_eq!(exact_inverse(&m, 64).unwrap_err(), LinalgError::SingularMatrix);
    assert!(matches!(exact_rank_with(&m, 1, 0), Err(LinalgError::CapExceeded { dim: 2, cap: 1 })));
}

#[test]
fn large_low_rank_certified() {
    // 120x120 matrix of rank 7, large enough to take the modular path.
    let n = 120;
    let r = 7;
    let b: Vec<i64> = (0..n * r).map(|i| ((i * 37 + 11) % 13) as i64 - 6).collect();
    let d: Vec<i64> = (0..r).map(|k| if k % 2 == 0 { 1 } else { -2 }).collect();
    let m = low_rank(n, r, &b, &d);
    assert_eq!(exact_rank(&m).unwrap(), r);
    let s = signature_with(&m, 4096, 3).unwrap();
    assert_eq!(s.dim(), n);
    assert_eq!(s.zero, n - r);
    assert_eq!((s.positive, s.negative), (4, 3));
}

proptest! {
    #[test]
    fn exact_rank_agrees_with_bareiss(n in 1usize..9, r in 1usize..5, seed in prop::collection::vec(-3i64..=3, 40 + 5)) {
        let r = r.min(n);
        let b = &seed[..n * r];
        let d: Vec<i64> = seed[40..40 + r].iter().map(|x| if *x == 0 { 1 } else { *x }).collect();
        let m = low_rank(n, r, b, &d);
        let want = bareiss_rank(&m);
        prop_assert_eq!(exact_rank(&m).unwrap(), want);
        prop_assert!(rank_mod_p(&m, 2_147_483_647) <= want);
        prop_assert_eq!(signature(&m).unwrap().zero, n - want);
    }

    #[test]
    fn inverse_is_exact(v in prop::collection::vec(-5i64..=5, 36)) {
        let m = sym(6, &v);
        match exact_inverse(&m, 64) {
            Ok(inv) => prop_assert!(inv.mul_int(&m).is_identity()),
            Err(e) => {
                prop_assert_eq!(e, LinalgError::SingularMatrix);
                prop_assert!(bareiss_rank(&m) < 6);
            }
        }
    }

    #[test]
    fn inertia_is_congruence_invariant(v in prop::collection::vec(-4i64..=4, 25), shift in 1i64..4) {
        let m = sym(5, &v);
        let s = ldlt_inertia(&m);
        prop_assert_eq!(signature(&m).unwrap(), s);
        // Adding a multiple of row/column 0 to row/column 1 is a congruence.
        let c = IntSymMatrix::from_fn(5, |i, j| {
            let e = |a: usize, b: usize| m.get(a, b);
            let row = |a: usize, b: usize| if a == 1 { e(1, b) + shift * e(0, b) } else { e(a, b) };
            if j == 1 { row(i, 1) + shift * row(i, 0) } else { row(i, j) }
        });
        prop_assert_eq!(ldlt_inertia(&c), s);
        prop_assert_eq!(s.dim(), 5);
    }

    #[test]
    fn signature_of_diagonal(d in prop::collection::vec(-3i64..=3, 1..10)) {
        let m = IntSymMatrix::from_fn(d.len(), |i, j| if i == j { d[i] } else { 0 });
        let want = Signature {
            positive: d.iter().filter(|x| **x > 0).count(),
            negative: d.iter().filter(|x| **x < 0).count(),
            zero: d.iter().filter(|x| **x == 0).count(),
        };
        prop_assert_eq!(signature(&m).unwrap(), want);
    }
}

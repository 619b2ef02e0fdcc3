mod support;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use concordance_core::ring::{betti_compare, rank_over, smith_normal_form};
use concordance_core::{FieldKind, IntMatrix};
use support::with_diagonal;

#[test]
fn ranks_agree_without_p_torsion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let p = [2u64, 3, 5, 7][case % 4];
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let k = rng.gen_range(0..=rows.min(cols));
        let diag: Vec<i64> = (0..k)
            .map(|_| loop {
                let v: i64 = rng.gen_range(1..=12);
                if v % p as i64 != 0 {
                    break v;
                }
            })
            .collect();
        let m = with_diagonal(&mut rng, rows, cols, &diag);
        let b = betti_compare(&m, p).unwrap();
        assert!(b.equal, "case {case}");
        assert_eq!(b.rank_z, rank_over(&m, FieldKind::Rationals).unwrap());
        assert_eq!(b.rank_fp, rank_over(&m, FieldKind::ModP(p)).unwrap());
    }
}

#[test]
fn p_torsion_is_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for p in [2u64, 3, 5] {
        for extra in 1..=3 {
            let m = with_diagonal(&mut rng, 4, 5, &[1, extra, p as i64 * extra]);
            let b = betti_compare(&m, p).unwrap();
            assert!(!b.equal);
            assert_eq!(b.rank_fp, rank_over(&m, FieldKind::ModP(p)).unwrap());
            assert_eq!(b.rank_z, 3);
        }
    }
}

#[test]
fn smith_form_transforms_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-6..=6)));
        let s = smith_normal_form(&m);
        let d = s.left.mul(&m).mul(&s.right);
        for i in 0..rows {
            for j in 0..cols {
                let expect = if i == j && i < s.diagonal.len() { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d[(i, j)], expect);
            }
        }
        for w in s.diagonal[..s.rank].windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert_eq!(s.right.mul(&s.right_inv), IntMatrix::identity(cols));
    }
}

mod support;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use concordance_core::rho::{rho_finite, rho_finite_with};
use concordance_core::seifert::library;
use concordance_core::{CoeffDomain, LaurentPoly, RootOfUnity, SeifertMatrix};
use support::{alexander_determinant_oracle, exact_signature, oracle_signature, random_seifert, upper_roots};

fn matrix(seed: u64) -> SeifertMatrix {
    random_seifert(&mut ChaCha8Rng::seed_from_u64(seed), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn alexander_symmetric_and_normalized(seed in any::<u64>()) {
        let k = matrix(seed);
        let d = k.alexander_poly();
        prop_assert!(d.is_symmetric());
        prop_assert!(d.augmentation().is_one());
    }

    #[test]
    fn signatures_add_and_mirror(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (matrix(s1), matrix(s2));
        let ab = a.connected_sum(&b);
        prop_assert_eq!(ab.signature(), a.signature() + b.signature());
        prop_assert_eq!(a.mirror().signature(), -a.signature());
        prop_assert_eq!(a.signature() % 2, 0);
        let (pa, pb, pab, pm) = (a.profile(), b.profile(), ab.profile(), a.mirror().profile());
        for (r, d) in upper_roots(12) {
            let w = RootOfUnity::new(d, r).unwrap();
            let (x, y, z, m) = (pa.value(w), pb.value(w), pab.value(w), pm.value(w));
            prop_assert_eq!(z.value, x.value + y.value);
            prop_assert_eq!(z.regular, x.regular && y.regular);
            prop_assert_eq!(m.value, -x.value);
            prop_assert!(x.value.unsigned_abs() as usize <= a.size());
            if x.regular {
                prop_assert_eq!(x.value % 2, 0);
            }
        }
    }

    #[test]
    fn lt_signature_matches_eigenvalue_oracle(seed in any::<u64>()) {
        let k = matrix(seed);
        let p = k.profile();
        for (r, d) in upper_roots(24) {
            let v = p.value(RootOfUnity::new(d, r).unwrap());
            if v.regular {
                prop_assert_eq!(v.value, oracle_signature(&k, r, d), "r={} d={}", r, d);
            }
        }
    }

    #[test]
    fn finite_sums_match_oracle_sums(seed in any::<u64>(), d in 2u64..=12) {
        let k = matrix(seed);
        let v = rho_finite_with(&k.profile(), d);
        if v.regular {
            let direct: i64 = (1..d).map(|r| oracle_signature(&k, r, d)).sum();
            prop_assert_eq!(v.exact, Some(BigRational::from_integer(direct.into())));
        }
        prop_assert_eq!(rho_finite(&k, 1).exact, Some(BigRational::from_integer(0.into())));
    }
}

#[test]
fn determinant_oracle_on_small_examples() {
    for k in [library::trefoil(), library::figure_eight(), library::torus_2(5), library::twist(3)] {
        let (low, _) = k.alexander_poly().exponent_range().unwrap();
        let expect = alexander_determinant_oracle(&k);
        let coeffs: Vec<BigInt> = expect.iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(k.alexander_poly(), LaurentPoly::from_coeffs("t", low, &coeffs, CoeffDomain::Integer));
    }
    for seed in 0..20 {
        let k = random_seifert(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        if k.is_unknot_matrix() {
            continue;
        }
        let expect = alexander_determinant_oracle(&k);
        let got: Vec<i64> = k.alexander_determinant().iter().map(|c| i64::try_from(c).unwrap()).collect();
        let trimmed = {
            let mut g = got.clone();
            while g.len() > 1 && *g.last().unwrap() == 0 {
                g.pop();
            }
            g
        };
        assert_eq!(trimmed, expect);
    }
}

#[test]
fn exact_and_float_oracles_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let k = random_seifert(&mut rng, 3);
        if k.is_unknot_matrix() {
            continue;
        }
        let a = k.matrix().to_i64_rows().unwrap();
        let p = k.profile();
        for (r, d) in upper_roots(9) {
            if p.value(RootOfUnity::new(d, r).unwrap()).regular {
                assert_eq!(exact_signature(&a, r, d), oracle_signature(&k, r, d));
            }
        }
    }
}

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use concordance_core::infection::FormalSum;
use concordance_core::ledger::LedgerContext;
use concordance_core::{certify, find_sequence, CandidateFamily, JSequence, Scenario, Verdict};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sequence() -> &'static JSequence {
    static SEQ: OnceLock<JSequence> = OnceLock::new();
    SEQ.get_or_init(|| find_sequence(&q(10), 2, &CandidateFamily::default_library(), 11, 3).unwrap())
}

fn combination(coeffs: &[i64], axes: usize) -> FormalSum {
    let members = (1..=coeffs.len()).map(|i| format!("K_{i}")).collect();
    FormalSum::from_coeffs(coeffs, members, axes, "seed".into()).unwrap()
}

/// Every order assignment, as `(scenario, total)`.
fn brute_force(ctx: &LedgerContext) -> Vec<(Scenario, BigInt)> {
    let m = ctx.axes;
    let blocks: usize = ctx.copies.iter().sum();
    let bits = m * (1 + blocks);
    let mut out = Vec::new();
    for mask in 0u64..(1 << bits) {
        let order = |k: usize| if mask >> k & 1 == 1 { ctx.prime } else { 1 };
        let v1: Vec<u64> = (0..m).map(order).collect();
        let mut next = m;
        let w: Vec<Vec<Vec<u64>>> = ctx
            .copies
            .iter()
            .map(|&b| {
                (0..b)
                    .map(|_| {
                        let v: Vec<u64> = (next..next + m).map(order).collect();
                        next += m;
                        v
                    })
                    .collect()
            })
            .collect();
        let s = Scenario { v1, w };
        let total = ctx.block_contributions(&s).unwrap().total;
        out.push((s, total));
    }
    out
}

const COMBINATIONS: [&[i64]; 7] = [&[1], &[2], &[3], &[1, 1], &[2, -1], &[1, -2], &[-1, 1]];

#[test]
fn compressed_table_matches_exhaustive_enumeration() {
    for m in 1..=4 {
        for coeffs in COMBINATIONS {
            let ctx = LedgerContext::new(&combination(coeffs, m), sequence()).unwrap();
            let mut dist: BTreeMap<BigInt, BigUint> = BTreeMap::new();
            for (s, t) in brute_force(&ctx) {
                if s.v1_nontrivial() {
                    *dist.entry(t).or_default() += 1u32;
                }
            }
            assert_eq!(dist, ctx.distribution(), "m={m} coeffs={coeffs:?}");
        }
    }
}

#[test]
fn adding_a_nontrivial_axis_never_raises_the_total() {
    for coeffs in COMBINATIONS {
        let ctx = LedgerContext::new(&combination(coeffs, 3), sequence()).unwrap();
        for (s, t) in brute_force(&ctx) {
            for l in 0..3 {
                if s.v1[l] == 1 {
                    let mut s2 = s.clone();
                    s2.v1[l] = ctx.prime;
                    assert!(ctx.block_contributions(&s2).unwrap().total <= t);
                }
            }
        }
    }
}

#[test]
fn leading_member_blocks_are_never_positive() {
    for coeffs in COMBINATIONS {
        let ctx = LedgerContext::new(&combination(coeffs, 2), sequence()).unwrap();
        for (s, _) in brute_force(&ctx) {
            let b = ctx.block_contributions(&s).unwrap();
            assert!(b.v1 <= BigInt::zero());
            assert!(b.w[ctx.leading].iter().all(|v| *v <= BigInt::zero()));
        }
    }
}

#[test]
fn verdict_does_not_depend_on_enumeration_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for coeffs in COMBINATIONS {
        let j = combination(coeffs, 3);
        let cert = certify(&j, sequence(), &q(10)).unwrap();
        let ctx = LedgerContext::new(&j, sequence()).unwrap();
        let sum = ctx.sums[ctx.leading].clone();
        let mut all = brute_force(&ctx);
        all.shuffle(&mut rng);
        let ok = all
            .iter()
            .filter(|(s, _)| s.v1_nontrivial())
            .fold(true, |acc, (_, t)| acc && *t <= -sum.clone() && BigRational::from_integer(t.clone()) < -q(10));
        assert_eq!(cert.verdict == Verdict::Valid, ok, "coeffs={coeffs:?}");
    }
}

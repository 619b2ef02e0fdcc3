//! Signature-defect certificates for a combination `Σ a_i K_i`: every
//! admissible assignment of axis orders is enumerated (compressed by total),
//! block contributions are composed, and each total is checked against the
//! universal bound `C`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::infection::FormalSum;
use crate::jsequence::{verify_sequence, JSequence, VerificationReport};
use crate::rho::{cheeger_gromov_bound, rho_finite};
use crate::ring::format_rational;
use crate::seifert::SeifertMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("axis order {order} is neither 1 nor {prime}")]
    InvalidOrder { order: u64, prime: u64 },
    #[error("signature sum {sum} does not exceed the constant {constant}")]
    SequenceBoundTooSmall { sum: String, constant: String },
    #[error("cannot normalize combination: {0}")]
    NormalizationFailure(String),
    #[error("seed has no crossing number")]
    MissingCrossingNumber,
}

/// Orders of the images of the axes: `v1[ℓ]` for the distinguished block and
/// `w[i][r][ℓ]` for copy `r` of member `i`. Orders are 1 or the leading prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub v1: Vec<u64>,
    pub w: Vec<Vec<Vec<u64>>>,
}

impl Scenario {
    pub fn v1_nontrivial(&self) -> bool {
        self.v1.iter().any(|&d| d != 1)
    }

    /// Every order 1.
    pub fn trivial(ctx: &LedgerContext) -> Scenario {
        Scenario { v1: vec![1; ctx.axes], w: ctx.copies.iter().map(|&b| vec![vec![1; ctx.axes]; b]).collect() }
    }
}

/// The combination after sign normalization, with the signature sums of
/// every member at the leading prime.
#[derive(Clone, Debug)]
pub struct LedgerContext {
    pub combination: FormalSum,
    pub leading: usize,
    pub prime: u64,
    pub axes: usize,
    /// Number of `W_i^r` blocks per member.
    pub copies: Vec<usize>,
    /// `ρ(J_i, p)`, zero for members with coefficient 0.
    pub sums: Vec<BigInt>,
    pub epsilon: Vec<i8>,
}

/// Sign-normalizes so the first nonzero coefficient is positive.
fn normalize(j: &FormalSum) -> Result<(FormalSum, usize), LedgerError> {
    let Some(leading) = j.coeffs.iter().position(|&a| a != 0) else {
        return Err(LedgerError::NormalizationFailure("all coefficients are zero".into()));
    };
    if j.members.len() != j.coeffs.len() {
        return Err(LedgerError::NormalizationFailure("member names and coefficients differ in length".into()));
    }
    let flip = if j.coeffs[leading] < 0 { -1 } else { 1 };
    let coeffs: Vec<i64> = j.coeffs.iter().map(|a| a * flip).collect();
    let n = FormalSum::from_coeffs(&coeffs, j.members.clone(), j.axes, j.seed.clone())
        .map_err(|e| LedgerError::NormalizationFailure(e.to_string()))?;
    Ok((n, leading))
}

impl LedgerContext {
    pub fn new(j: &FormalSum, seq: &JSequence) -> Result<Self, LedgerError> {
        let (combination, leading) = normalize(j)?;
        let last = combination.coeffs.iter().rposition(|&a| a != 0).expect("nonzero");
        if seq.items.len() <= last {
            return Err(LedgerError::DimensionMismatch(format!(
                "combination uses member {} but the sequence has {} terms",
                last + 1,
                seq.items.len()
            )));
        }
        if combination.axes == 0 {
            return Err(LedgerError::DimensionMismatch("no axes".into()));
        }
        let prime = seq.items[leading].prime;
        let copies: Vec<usize> = combination
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| if i == leading { (a - 1) as usize } else { a.unsigned_abs() as usize })
            .collect();
        let sums = combination
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if a == 0 {
                    BigInt::zero()
                } else {
                    rho_finite(&seq.items[i].matrix, prime).as_integer().expect("finite sums are integers")
                }
            })
            .collect();
        let epsilon = combination.epsilon.clone();
        Ok(LedgerContext { axes: combination.axes, combination, leading, prime, copies, sums, epsilon })
    }

    fn nontrivial(&self, orders: &[u64]) -> Result<u64, LedgerError> {
        if orders.len() != self.axes {
            return Err(LedgerError::DimensionMismatch(format!("{} orders for {} axes", orders.len(), self.axes)));
        }
        let mut k = 0;
        for &d in orders {
            if d == self.prime {
                k += 1;
            } else if d != 1 {
                return Err(LedgerError::InvalidOrder { order: d, prime: self.prime });
            }
        }
        Ok(k)
    }

    /// Value of one `W_i^r` block with `k` nontrivial axes.
    fn w_value(&self, i: usize, k: u64) -> BigInt {
        -BigInt::from(self.epsilon[i]) * BigInt::from(k) * &self.sums[i]
    }

    pub fn block_contributions(&self, s: &Scenario) -> Result<BlockContributions, LedgerError> {
        if s.w.len() != self.copies.len() {
            return Err(LedgerError::DimensionMismatch(format!(
                "{} member blocks for {} members",
                s.w.len(),
                self.copies.len()
            )));
        }
        let v1 = -BigInt::from(self.nontrivial(&s.v1)?) * &self.sums[self.leading];
        let mut w = Vec::with_capacity(s.w.len());
        for (i, blocks) in s.w.iter().enumerate() {
            if blocks.len() != self.copies[i] {
                return Err(LedgerError::DimensionMismatch(format!(
                    "member {} has {} copies, expected {}",
                    i + 1,
                    blocks.len(),
                    self.copies[i]
                )));
            }
            w.push(blocks.iter().map(|b| Ok(self.w_value(i, self.nontrivial(b)?))).collect::<Result<Vec<_>, _>>()?);
        }
        let total = w.iter().flatten().fold(v1.clone(), |a, b| a + b);
        Ok(BlockContributions { prime: self.prime, v: BigInt::zero(), e: BigInt::zero(), v1, w, total })
    }

    /// Totals over all admissible scenarios with multiplicities.
    pub fn distribution(&self) -> BTreeMap<BigInt, BigUint> {
        let m = self.axes as u64;
        let mut dist: BTreeMap<BigInt, BigUint> = BTreeMap::new();
        for k in 1..=m {
            let v = -BigInt::from(k) * &self.sums[self.leading];
            *dist.entry(v).or_default() += binomial(m, k);
        }
        for (i, &b) in self.copies.iter().enumerate() {
            let block: Vec<(BigInt, BigUint)> = (0..=m).map(|k| (self.w_value(i, k), binomial(m, k))).collect();
            for _ in 0..b {
                let mut next: BTreeMap<BigInt, BigUint> = BTreeMap::new();
                for (t, c) in &dist {
                    for (v, bc) in &block {
                        *next.entry(t + v).or_default() += c * bc;
                    }
                }
                dist = next;
            }
        }
        dist
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Contributions of the pieces of the cobordism: the seed-side pieces `V`
/// and `E` vanish, `V_1` and each `W_i^r` contribute signature sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockContributions {
    pub prime: u64,
    pub v: BigInt,
    pub e: BigInt,
    pub v1: BigInt,
    pub w: Vec<Vec<BigInt>>,
    pub total: BigInt,
}

pub fn block_contributions(j: &FormalSum, seq: &JSequence, s: &Scenario) -> Result<BlockContributions, LedgerError> {
    LedgerContext::new(j, seq)?.block_contributions(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioRow {
    pub total: String,
    pub multiplicity: String,
    pub passes: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Invalid,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub combination: FormalSum,
    pub leading_member: usize,
    pub prime: u64,
    pub leading_sum: String,
    pub constant: String,
    /// The seed's own ρ term is only known to lie in `[-C, C]`.
    pub seed_term: [String; 2],
    pub sequence_primes: Vec<u64>,
    pub sequence_expressions: Vec<String>,
    pub admissible_scenarios: String,
    pub rows: Vec<ScenarioRow>,
    pub witness: ScenarioRow,
    pub sequence_report: VerificationReport,
    pub failures: Vec<String>,
    pub verdict: Verdict,
}

/// Checks that every admissible total `T` satisfies `T <= -Σ` and `|T| > C`
/// where `Σ` is the leading member's signature sum.
pub fn certify(j: &FormalSum, seq: &JSequence, constant: &BigRational) -> Result<Certificate, LedgerError> {
    let ctx = LedgerContext::new(j, seq)?;
    let sum = &ctx.sums[ctx.leading];
    let sum_q = BigRational::from_integer(sum.clone());
    if sum_q <= *constant {
        return Err(LedgerError::SequenceBoundTooSmall { sum: sum.to_string(), constant: format_rational(constant) });
    }
    let passes = |t: &BigInt| {
        let tq = BigRational::from_integer(t.clone());
        *t <= -sum.clone() && tq.abs() > *constant
    };
    let dist = ctx.distribution();
    let rows: Vec<ScenarioRow> = dist
        .iter()
        .map(|(t, c)| ScenarioRow { total: t.to_string(), multiplicity: c.to_string(), passes: passes(t) })
        .collect();
    let trivial = ctx.block_contributions(&Scenario::trivial(&ctx))?.total;
    let witness = ScenarioRow { total: trivial.to_string(), multiplicity: "1".into(), passes: passes(&trivial) };
    let report = verify_sequence(seq);
    let mut failures: Vec<String> = report
        .failures()
        .map(|c| match c.against {
            Some(q) => format!("sequence term {}: {} (prime {q})", c.item + 1, c.condition),
            None => format!("sequence term {}: {}", c.item + 1, c.condition),
        })
        .collect();
    failures.extend(rows.iter().filter(|r| !r.passes).map(|r| format!("scenario total {} not below -C", r.total)));
    let per_block = BigUint::one() << ctx.axes;
    let blocks: usize = ctx.copies.iter().sum();
    let admissible = (&per_block - 1u32) * per_block.pow(blocks as u32);
    let c = format_rational(constant);
    Ok(Certificate {
        leading_member: ctx.leading + 1,
        prime: ctx.prime,
        leading_sum: sum.to_string(),
        seed_term: [format_rational(&-constant.clone()), c.clone()],
        constant: c,
        sequence_primes: seq.primes(),
        sequence_expressions: seq.items.iter().map(|i| i.expression.to_string()).collect(),
        admissible_scenarios: admissible.to_string(),
        rows,
        witness,
        sequence_report: report,
        verdict: if failures.is_empty() { Verdict::Valid } else { Verdict::Invalid },
        failures,
        combination: ctx.combination,
    })
}

/// `C_claimed >= 69713280 · c(K)`.
pub fn bound_check(seed: &SeifertMatrix, claimed: &BigRational) -> Result<bool, LedgerError> {
    let c = seed.crossing_number.ok_or(LedgerError::MissingCrossingNumber)?;
    Ok(*claimed >= BigRational::from_integer(cheeger_gromov_bound(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jsequence::{find_sequence, CandidateFamily};
    use crate::seifert::library;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn seq() -> JSequence {
        let fam = CandidateFamily::new(vec![("mirror-trefoil".into(), library::mirror_trefoil())], 8).unwrap();
        find_sequence(&q(10), 1, &fam, 7, 3).unwrap()
    }

    fn sum(coeffs: &[i64]) -> FormalSum {
        let members = (1..=coeffs.len()).map(|i| format!("K_{i}")).collect();
        FormalSum::from_coeffs(coeffs, members, 3, "K".into()).unwrap()
    }

    #[test]
    fn single_member_certificate() {
        let cert = certify(&sum(&[1]), &seq(), &q(10)).unwrap();
        assert_eq!(cert.verdict, Verdict::Valid);
        let totals: Vec<&str> = cert.rows.iter().map(|r| r.total.as_str()).collect();
        assert_eq!(totals, ["-48", "-32", "-16"]);
        let mult: Vec<&str> = cert.rows.iter().map(|r| r.multiplicity.as_str()).collect();
        assert_eq!(mult, ["1", "3", "3"]);
        assert_eq!(cert.witness.total, "0");
        assert!(!cert.witness.passes);
        assert_eq!(cert.admissible_scenarios, "7");
    }

    #[test]
    fn constant_too_large() {
        assert!(matches!(certify(&sum(&[1]), &seq(), &q(20)), Err(LedgerError::SequenceBoundTooSmall { .. })));
    }

    #[test]
    fn minimal_scenario() {
        let ctx = LedgerContext::new(&sum(&[2]), &seq()).unwrap();
        let s = Scenario { v1: vec![3, 1, 1], w: vec![vec![vec![1, 1, 1]]] };
        let b = ctx.block_contributions(&s).unwrap();
        assert_eq!(b.v1, BigInt::from(-16));
        assert_eq!(b.total, BigInt::from(-16));
        assert!(b.v.is_zero() && b.e.is_zero());
        let bad = Scenario { v1: vec![3, 1], w: vec![vec![vec![1, 1, 1]]] };
        assert!(matches!(ctx.block_contributions(&bad), Err(LedgerError::DimensionMismatch(_))));
        let bad = Scenario { v1: vec![5, 1, 1], w: vec![vec![vec![1, 1, 1]]] };
        assert!(matches!(ctx.block_contributions(&bad), Err(LedgerError::InvalidOrder { .. })));
    }

    #[test]
    fn negative_leading_coefficient_is_flipped() {
        let ctx = LedgerContext::new(&sum(&[-2]), &seq()).unwrap();
        assert_eq!(ctx.combination.coeffs, vec![2]);
        assert_eq!(ctx.copies, vec![1]);
    }

    #[test]
    fn bounds() {
        let s = library::trefoil().connected_sum(&library::mirror_trefoil());
        assert_eq!(s.crossing_number, Some(6));
        assert!(bound_check(&s, &q(418_279_680)).unwrap());
        assert!(!bound_check(&s, &q(1)).unwrap());
        assert!(bound_check(&SeifertMatrix::unknot(), &q(0)).unwrap());
        let anon = SeifertMatrix::from_i64_rows(&[vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(bound_check(&anon, &q(0)), Err(LedgerError::MissingCrossingNumber));
    }
}

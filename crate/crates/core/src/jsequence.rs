//! Search for knots `J_1, J_2, ...` and increasing odd primes `p_1 < p_2 < ...`
//! such that the `p_i`-signature sum of `J_i` exceeds a constant while the
//! sums of `J_i` at every earlier prime vanish, with an independent verifier.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::rho::{rho_finite, rho_finite_with};
use crate::ring::{format_rational, is_prime, parse_rational};
use crate::seifert::{library, KnotDoc, SeifertMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JSequenceError {
    #[error("no sequence within bounds; found {} of {wanted} terms", .partial.items.len())]
    SearchExhausted { partial: JSequence, wanted: usize },
    #[error("prime bound must be at least 3, got {0}")]
    InvalidPrimeBound(u64),
    #[error("invalid candidate family: {0}")]
    InvalidFamily(String),
    #[error("invalid sequence document: {0}")]
    Parse(String),
}

/// Generators for the search, with a cap on the number of connected
/// summands in a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFamily {
    pub generators: Vec<(String, SeifertMatrix)>,
    pub max_summands: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub generators: Vec<KnotDoc>,
    pub max_summands: usize,
}

impl CandidateFamily {
    pub fn new(generators: Vec<(String, SeifertMatrix)>, max_summands: usize) -> Result<Self, JSequenceError> {
        if generators.is_empty() {
            return Err(JSequenceError::InvalidFamily("no generators".into()));
        }
        if max_summands == 0 {
            return Err(JSequenceError::InvalidFamily("max_summands must be positive".into()));
        }
        Ok(CandidateFamily { generators, max_summands })
    }

    /// Twist and torus knots from the built-in library.
    pub fn default_library() -> Self {
        let generators = library::default_family()
            .into_iter()
            .map(|k| (k.name.clone().expect("library knots are named"), k))
            .collect();
        CandidateFamily { generators, max_summands: 16 }
    }

    pub fn from_doc(doc: &FamilyDoc) -> Result<Self, JSequenceError> {
        let mut gens = Vec::new();
        for (i, d) in doc.generators.iter().enumerate() {
            let k = SeifertMatrix::from_doc(d).map_err(|e| JSequenceError::InvalidFamily(e.to_string()))?;
            let name = d.name.clone().unwrap_or_else(|| format!("g{}", i + 1));
            gens.push((name, k));
        }
        Self::new(gens, doc.max_summands)
    }

    pub fn from_json(text: &str) -> Result<Self, JSequenceError> {
        let doc: FamilyDoc = serde_json::from_str(text).map_err(|e| JSequenceError::InvalidFamily(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

/// A formal integer combination of named knots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expression {
    pub terms: Vec<ExpressionTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpressionTerm {
    pub name: String,
    pub coeff: i64,
}

impl Expression {
    pub fn summands(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff.unsigned_abs()).sum()
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let mag = t.coeff.unsigned_abs();
            let body = if mag == 1 { t.name.clone() } else { format!("{mag}*{}", t.name) };
            match (i, t.coeff < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JItem {
    pub expression: Expression,
    pub matrix: SeifertMatrix,
    pub prime: u64,
}

/// The sequence and the constant it was built for. Bounding a height-two
/// grope is not decidable from Seifert data and is carried as an assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JSequence {
    pub items: Vec<JItem>,
    pub constant: BigRational,
    pub grope2_assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JItemDoc {
    pub expression: Expression,
    pub display: String,
    pub prime: u64,
    pub matrix: KnotDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JSequenceDoc {
    pub constant: String,
    pub grope2_assumed: bool,
    pub items: Vec<JItemDoc>,
}

impl JSequence {
    pub fn empty(constant: BigRational) -> Self {
        JSequence { items: Vec::new(), constant, grope2_assumed: true }
    }

    pub fn primes(&self) -> Vec<u64> {
        self.items.iter().map(|i| i.prime).collect()
    }

    pub fn to_doc(&self) -> JSequenceDoc {
        JSequenceDoc {
            constant: format_rational(&self.constant),
            grope2_assumed: self.grope2_assumed,
            items: self
                .items
                .iter()
                .map(|i| JItemDoc {
                    display: i.expression.to_string(),
                    expression: i.expression.clone(),
                    prime: i.prime,
                    matrix: i.matrix.to_doc(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &JSequenceDoc) -> Result<Self, JSequenceError> {
        let constant = parse_rational(&doc.constant).map_err(|e| JSequenceError::Parse(e.to_string()))?;
        let items = doc
            .items
            .iter()
            .map(|d| {
                Ok(JItem {
                    expression: d.expression.clone(),
                    matrix: SeifertMatrix::from_doc(&d.matrix).map_err(|e| JSequenceError::Parse(e.to_string()))?,
                    prime: d.prime,
                })
            })
            .collect::<Result<Vec<_>, JSequenceError>>()?;
        Ok(JSequence { items, constant, grope2_assumed: doc.grope2_assumed })
    }

    pub fn from_json(text: &str) -> Result<Self, JSequenceError> {
        let doc: JSequenceDoc = serde_json::from_str(text).map_err(|e| JSequenceError::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

/// Connected sum realizing `Σ c_g g`.
fn realize(family: &CandidateFamily, terms: &[(usize, i64)]) -> SeifertMatrix {
    let mut acc: Option<SeifertMatrix> = None;
    for &(g, c) in terms {
        let part = family.generators[g].1.multiple(c);
        acc = Some(match acc {
            None => part,
            Some(a) => a.connected_sum(&part),
        });
    }
    acc.unwrap_or_else(SeifertMatrix::unknot)
}

#[derive(Clone, Debug)]
struct Base {
    terms: Vec<(usize, i64)>,
    weight: u64,
}

/// `±a g` and `a g - b h` for `a, b ∈ 1..=3`, in a fixed order.
fn bases(n: usize) -> Vec<Base> {
    let mut out = Vec::new();
    for g in 0..n {
        for a in [1i64, -1, 2, -2, 3, -3] {
            out.push(Base { terms: vec![(g, a)], weight: a.unsigned_abs() });
        }
    }
    for g in 0..n {
        for h in 0..n {
            if g == h {
                continue;
            }
            for a in 1..=3i64 {
                for b in 1..=3i64 {
                    let mut terms = vec![(g, a), (h, -b)];
                    terms.sort();
                    out.push(Base { terms, weight: (a + b) as u64 });
                }
            }
        }
    }
    out
}

/// Signature sum and regularity of each generator at each prime.
struct SumTable {
    primes: Vec<u64>,
    sums: Vec<Vec<(i64, bool)>>,
    arf: Vec<u8>,
}

impl SumTable {
    fn new(family: &CandidateFamily, primes: Vec<u64>) -> Self {
        let sums = family
            .generators
            .par_iter()
            .map(|(_, k)| {
                if k.is_unknot_matrix() {
                    return vec![(0, true); primes.len()];
                }
                let profile = k.profile();
                primes
                    .iter()
                    .map(|&p| {
                        let v = rho_finite_with(&profile, p);
                        (v.as_integer().and_then(|x| i64::try_from(x).ok()).expect("small sum"), v.regular)
                    })
                    .collect()
            })
            .collect();
        let arf = family.generators.iter().map(|(_, k)| k.arf()).collect();
        SumTable { primes, sums, arf }
    }

    fn eval(&self, terms: &[(usize, i64)], pi: usize) -> (i64, bool) {
        terms.iter().fold((0, true), |(s, r), &(g, c)| {
            let (v, reg) = self.sums[g][pi];
            (s + c * v, r && reg)
        })
    }

    fn arf(&self, terms: &[(usize, i64)]) -> u8 {
        (terms.iter().map(|&(g, c)| c.unsigned_abs() * self.arf[g] as u64).sum::<u64>() % 2) as u8
    }
}

fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| p % 2 == 1 && is_prime(p)).collect()
}

/// Greedy search: for each term, primes ascending, then total summand count
/// ascending, over multiples `N·B` of the base combinations `B`.
///
/// `min_prime` is a lower bound (inclusive) for the first prime.
pub fn find_sequence(
    constant: &BigRational,
    count: usize,
    family: &CandidateFamily,
    prime_bound: u64,
    min_prime: u64,
) -> Result<JSequence, JSequenceError> {
    if prime_bound < 3 {
        return Err(JSequenceError::InvalidPrimeBound(prime_bound));
    }
    let table = SumTable::new(family, odd_primes(min_prime, prime_bound));
    let bases = bases(family.generators.len());
    let mut seq = JSequence::empty(constant.clone());
    let mut used: Vec<usize> = Vec::new();

    'items: while seq.items.len() < count {
        let start = used.last().map_or(0, |&i| i + 1);
        for pi in start..table.primes.len() {
            for s in 1..=family.max_summands as u64 {
                for b in bases.iter().filter(|b| s % b.weight == 0) {
                    let n = (s / b.weight) as i64;
                    let terms: Vec<(usize, i64)> = b.terms.iter().map(|&(g, c)| (g, c * n)).collect();
                    if used.iter().any(|&q| table.eval(&terms, q) != (0, true)) {
                        continue;
                    }
                    let (sum, regular) = table.eval(&terms, pi);
                    if !regular || BigRational::from_integer(sum.into()) <= *constant || table.arf(&terms) != 0 {
                        continue;
                    }
                    let expression = Expression {
                        terms: terms
                            .iter()
                            .map(|&(g, c)| ExpressionTerm { name: family.generators[g].0.clone(), coeff: c })
                            .collect(),
                    };
                    let matrix = realize(family, &terms).with_name(expression.to_string());
                    seq.items.push(JItem { expression, matrix, prime: table.primes[pi] });
                    used.push(pi);
                    continue 'items;
                }
            }
        }
        return Err(JSequenceError::SearchExhausted { partial: seq, wanted: count });
    }
    Ok(seq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    OddPrime,
    IncreasingPrimes,
    LargeSum,
    Regular,
    VanishingEarlier,
    ArfZero,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::OddPrime => "odd_prime",
            Condition::IncreasingPrimes => "increasing_primes",
            Condition::LargeSum => "large_sum",
            Condition::Regular => "regular",
            Condition::VanishingEarlier => "vanishing_earlier",
            Condition::ArfZero => "arf_zero",
        };
        f.write_str(s)
    }
}

/// One verified condition; `item` is 0-based, `against` names the earlier
/// prime for the vanishing condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub item: usize,
    pub condition: Condition,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub against: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub constant: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Recomputes every condition directly from the realized matrices.
pub fn verify_sequence(seq: &JSequence) -> VerificationReport {
    let per_item: Vec<Vec<Check>> = seq
        .items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            let mut checks = Vec::new();
            let k = &item.matrix;
            let profile = (!k.is_unknot_matrix()).then(|| k.profile());
            let at = |p: u64| match &profile {
                Some(pr) => rho_finite_with(pr, p),
                None => rho_finite(k, p),
            };
            let p = item.prime;
            checks.push(Check {
                item: i,
                condition: Condition::OddPrime,
                passed: p % 2 == 1 && is_prime(p),
                against: None,
                value: Some(p.to_string()),
            });
            if i > 0 {
                let prev = seq.items[i - 1].prime;
                checks.push(Check {
                    item: i,
                    condition: Condition::IncreasingPrimes,
                    passed: p > prev,
                    against: Some(prev),
                    value: Some(p.to_string()),
                });
            }
            let v = if p >= 1 { Some(at(p)) } else { None };
            let sum = v.as_ref().and_then(|v| v.exact.clone());
            checks.push(Check {
                item: i,
                condition: Condition::LargeSum,
                passed: sum.as_ref().is_some_and(|s| *s > seq.constant),
                against: None,
                value: sum.as_ref().map(format_rational),
            });
            checks.push(Check {
                item: i,
                condition: Condition::Regular,
                passed: v.as_ref().is_some_and(|v| v.regular),
                against: None,
                value: None,
            });
            for earlier in &seq.items[..i] {
                let e = at(earlier.prime.max(1));
                let ok = e.regular && e.exact.as_ref().is_some_and(Zero::is_zero);
                checks.push(Check {
                    item: i,
                    condition: Condition::VanishingEarlier,
                    passed: ok,
                    against: Some(earlier.prime),
                    value: e.exact.as_ref().map(format_rational),
                });
            }
            let arf = k.arf();
            checks.push(Check {
                item: i,
                condition: Condition::ArfZero,
                passed: arf == 0,
                against: None,
                value: Some(arf.to_string()),
            });
            checks
        })
        .collect();
    let checks: Vec<Check> = per_item.into_iter().flatten().collect();
    VerificationReport { valid: checks.iter().all(|c| c.passed), constant: format_rational(&seq.constant), checks }
}

/// Largest coefficient magnitude at the top of `Δ`, used as the lower
/// bound hook for the first prime.
pub fn top_coefficient(k: &SeifertMatrix) -> BigInt {
    k.alexander_poly().top_coefficient().and_then(|c| c.to_bigint()).map(|c| c.abs()).unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn single(name: &str, k: SeifertMatrix) -> CandidateFamily {
        CandidateFamily::new(vec![(name.into(), k)], 8).unwrap()
    }

    #[test]
    fn four_mirror_trefoils() {
        let fam = single("mirror-trefoil", library::mirror_trefoil());
        let seq = find_sequence(&c(10), 1, &fam, 7, 3).unwrap();
        assert_eq!(seq.items.len(), 1);
        let item = &seq.items[0];
        assert_eq!(item.prime, 3);
        assert_eq!(item.expression.to_string(), "4*mirror-trefoil");
        assert_eq!(item.matrix.size(), 8);
        assert_eq!(rho_finite(&item.matrix, 3).as_integer(), Some(16.into()));
        assert_eq!(item.matrix.arf(), 0);
        assert!(verify_sequence(&seq).valid);
    }

    #[test]
    fn unknot_family_exhausts() {
        let fam = single("unknot", SeifertMatrix::unknot());
        match find_sequence(&c(10), 1, &fam, 11, 3) {
            Err(JSequenceError::SearchExhausted { partial, .. }) => assert!(partial.items.is_empty()),
            other => panic!("{other:?}"),
        }
        assert_eq!(find_sequence(&c(1), 1, &fam, 2, 3), Err(JSequenceError::InvalidPrimeBound(2)));
    }

    #[test]
    fn tampering_is_caught() {
        let fam = single("mirror-trefoil", library::mirror_trefoil());
        let mut seq = find_sequence(&c(10), 1, &fam, 7, 3).unwrap();
        seq.items[0].prime = 2;
        let report = verify_sequence(&seq);
        assert!(!report.valid);
        assert!(report.failures().any(|f| f.condition == Condition::OddPrime));
        let mut seq = find_sequence(&c(10), 1, &fam, 7, 3).unwrap();
        seq.constant = c(16);
        assert!(report_fails(&seq, Condition::LargeSum));
    }

    fn report_fails(seq: &JSequence, cond: Condition) -> bool {
        verify_sequence(seq).failures().any(|f| f.condition == cond)
    }

    #[test]
    fn empty_sequence_is_valid() {
        assert!(verify_sequence(&JSequence::empty(c(5))).valid);
    }

    #[test]
    fn expression_display() {
        let e = Expression {
            terms: vec![ExpressionTerm { name: "a".into(), coeff: 1 }, ExpressionTerm { name: "b".into(), coeff: -2 }],
        };
        assert_eq!(e.to_string(), "a - 2*b");
        assert_eq!(e.summands(), 3);
    }

    #[test]
    fn doc_round_trip() {
        let fam = single("mirror-trefoil", library::mirror_trefoil());
        let seq = find_sequence(&c(10), 1, &fam, 7, 3).unwrap();
        let text = serde_json::to_string(&seq.to_doc()).unwrap();
        assert_eq!(JSequence::from_json(&text).unwrap(), seq);
    }
}

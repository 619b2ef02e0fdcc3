//! Symbolic satellite (infection) descriptions `K(η_1, ..., η_m; J)` and the
//! rules that carry the classical invariants of the seed over to them.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fox::{algebraic_depth_lower_bound, CommutatorExpr, FreeWord, Tuple};
use crate::jsequence::{top_coefficient, JSequence};
use crate::ring::LaurentPoly;
use crate::seifert::{KnotDoc, LtSignature, RootOfUnity, SeifertMatrix, SignatureProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InfectionError {
    #[error("Alexander polynomial of the seed has span {0}; need more than 2")]
    SeedDegreeTooSmall(i64),
    #[error("first prime {prime} does not exceed the top coefficient {top} of the seed's Alexander polynomial")]
    PrimeTooSmall { prime: u64, top: String },
    #[error("infection knot `{0}` has nonzero Arf invariant")]
    ArfNonzeroInfection(String),
    #[error("axis `{0}` has depth 0")]
    DepthZeroAxis(String),
    #[error("invalid axis: {0}")]
    InvalidAxis(String),
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("descriptions do not share seed and axes")]
    MixedFamilies,
    #[error("{coeffs} coefficients for {descs} descriptions")]
    LengthMismatch { coeffs: usize, descs: usize },
    #[error("all coefficients are zero")]
    AllZero,
    #[error("invalid configuration: {0}")]
    Parse(String),
}

/// An infection axis: a word in the free group of the Seifert surface
/// complement together with the derived depth it is claimed to reach in
/// the knot group. Geometric conditions are recorded as assumptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisSpec {
    pub label: String,
    pub word: FreeWord,
    pub derived_depth: usize,
    pub capped_grope_height_assumed: bool,
    pub unlink_assumed: bool,
}

impl AxisSpec {
    /// Checks that the word's free-group depth plus one reaches the claimed
    /// depth. `expr`, when given, supplies the exact commutator shape.
    pub fn new(
        label: impl Into<String>,
        word: FreeWord,
        derived_depth: usize,
        expr: Option<&CommutatorExpr>,
    ) -> Result<Self, InfectionError> {
        let label = label.into();
        let free_depth = match expr {
            Some(e) => {
                if e.to_word(word.rank()) != word {
                    return Err(InfectionError::InvalidAxis(format!("`{label}` does not match its commutator shape")));
                }
                e.depth()
            }
            None => algebraic_depth_lower_bound(&word),
        };
        if derived_depth > free_depth + 1 {
            return Err(InfectionError::InvalidAxis(format!(
                "`{label}` reaches free depth {free_depth}, too shallow for depth {derived_depth}"
            )));
        }
        Ok(AxisSpec { label, word, derived_depth, capped_grope_height_assumed: true, unlink_assumed: true })
    }

    /// One axis per word of a tuple, at depth `level + 1`.
    pub fn from_tuple(t: &Tuple, genus: usize) -> Vec<AxisSpec> {
        t.exprs
            .iter()
            .enumerate()
            .map(|(i, e)| {
                AxisSpec::new(format!("eta{}", i + 1), e.to_word(2 * genus), t.level + 1, Some(e))
                    .expect("tuple words have their level's depth")
            })
            .collect()
    }
}

/// `K(η_1, ..., η_m; J_1, ..., J_m)` with the seed `K` given by its
/// Seifert matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatelliteDesc {
    pub name: String,
    pub seed: SeifertMatrix,
    pub axes: Vec<AxisSpec>,
    pub infections: Vec<SeifertMatrix>,
    pub level: usize,
}

impl SatelliteDesc {
    /// Replaces the knot tied into one axis.
    pub fn reinfect(&self, axis: usize, j: SeifertMatrix) -> SatelliteDesc {
        let mut d = self.clone();
        d.infections[axis] = j;
        d
    }
}

/// One family member `K_i = K(η_1, ..., η_m; J_i)` per term of the sequence.
pub fn build_family(
    seed: &SeifertMatrix,
    axes: &[AxisSpec],
    seq: &JSequence,
) -> Result<Vec<SatelliteDesc>, InfectionError> {
    let span = seed.alexander_poly().span();
    if span <= 2 {
        return Err(InfectionError::SeedDegreeTooSmall(span));
    }
    if axes.is_empty() {
        return Err(InfectionError::Empty("axis list"));
    }
    let Some(first) = seq.items.first() else {
        return Err(InfectionError::Empty("J-sequence"));
    };
    let rank = seed.size();
    for a in axes {
        if a.word.rank() != rank {
            return Err(InfectionError::InvalidAxis(format!(
                "`{}` lives in rank {}, seed surface has rank {rank}",
                a.label,
                a.word.rank()
            )));
        }
    }
    let level = axes.iter().map(|a| a.derived_depth).min().unwrap_or(0);
    if level < 2 {
        return Err(InfectionError::InvalidAxis(format!("axes have depth {level}; need at least 2")));
    }
    let top = top_coefficient(seed);
    if top.to_u64().is_none_or(|t| first.prime <= t) {
        return Err(InfectionError::PrimeTooSmall { prime: first.prime, top: top.to_string() });
    }
    if let Some(bad) = seq.items.iter().find(|i| i.matrix.arf() != 0) {
        return Err(InfectionError::ArfNonzeroInfection(bad.expression.to_string()));
    }
    let seed_name = seed.name.clone().unwrap_or_else(|| "K".into());
    Ok(seq
        .items
        .iter()
        .enumerate()
        .map(|(i, item)| SatelliteDesc {
            name: format!("K_{}", i + 1),
            seed: seed.clone().with_name(seed_name.clone()),
            axes: axes.to_vec(),
            infections: vec![item.matrix.clone(); axes.len()],
            level,
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferRule {
    /// Axes in the commutator subgroup have zero winding number, so a
    /// Seifert surface for the seed survives in the satellite.
    SeifertForm,
    AlexanderPolynomial,
    Signature,
    Arf,
    LevineTristram,
}

/// Classical invariants of a satellite, read off the seed.
#[derive(Clone, Debug)]
pub struct DerivedInvariants {
    pub name: String,
    pub seifert: SeifertMatrix,
    pub alexander_poly: LaurentPoly,
    pub signature: i64,
    pub arf: u8,
    pub rules: Vec<TransferRule>,
    profile: SignatureProfile,
}

impl DerivedInvariants {
    pub fn lt_signature(&self, w: RootOfUnity) -> LtSignature {
        self.profile.value(w)
    }

    pub fn profile(&self) -> &SignatureProfile {
        &self.profile
    }
}

pub fn derived_invariants(desc: &SatelliteDesc) -> Result<DerivedInvariants, InfectionError> {
    if let Some(a) = desc.axes.iter().find(|a| a.derived_depth == 0) {
        return Err(InfectionError::DepthZeroAxis(a.label.clone()));
    }
    let s = &desc.seed;
    Ok(DerivedInvariants {
        name: desc.name.clone(),
        seifert: s.clone(),
        alexander_poly: s.alexander_poly(),
        signature: s.signature(),
        arf: s.arf(),
        rules: vec![
            TransferRule::SeifertForm,
            TransferRule::AlexanderPolynomial,
            TransferRule::Signature,
            TransferRule::Arf,
            TransferRule::LevineTristram,
        ],
        profile: s.profile(),
    })
}

/// `Σ a_i K_i` with the bookkeeping `b_1 = a_1 - 1`, `b_i = |a_i|` for
/// `i >= 2` and signs `ε_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalSum {
    pub coeffs: Vec<i64>,
    pub b: Vec<i64>,
    pub epsilon: Vec<i8>,
    pub members: Vec<String>,
    pub axes: usize,
    pub seed: String,
}

impl FormalSum {
    pub fn from_coeffs(
        coeffs: &[i64],
        members: Vec<String>,
        axes: usize,
        seed: String,
    ) -> Result<Self, InfectionError> {
        if coeffs.iter().all(|&a| a == 0) {
            return Err(InfectionError::AllZero);
        }
        let b = coeffs.iter().enumerate().map(|(i, &a)| if i == 0 { a - 1 } else { a.abs() }).collect();
        let epsilon = coeffs.iter().map(|&a| a.signum() as i8).collect();
        Ok(FormalSum { coeffs: coeffs.to_vec(), b, epsilon, members, axes, seed })
    }
}

impl std::fmt::Display for FormalSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (a, m) in self.coeffs.iter().zip(&self.members) {
            if *a == 0 {
                continue;
            }
            let mag = a.unsigned_abs();
            let body = if mag == 1 { m.clone() } else { format!("{mag}*{m}") };
            match (first, *a < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

pub fn linear_combination(coeffs: &[i64], descs: &[SatelliteDesc]) -> Result<FormalSum, InfectionError> {
    if coeffs.len() != descs.len() {
        return Err(InfectionError::LengthMismatch { coeffs: coeffs.len(), descs: descs.len() });
    }
    let Some(first) = descs.first() else {
        return Err(InfectionError::AllZero);
    };
    if descs.iter().any(|d| d.seed != first.seed || d.axes != first.axes) {
        return Err(InfectionError::MixedFamilies);
    }
    FormalSum::from_coeffs(
        coeffs,
        descs.iter().map(|d| d.name.clone()).collect(),
        first.axes.len(),
        first.seed.name.clone().unwrap_or_else(|| "K".into()),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisDoc {
    pub label: String,
    pub word: String,
    pub depth: usize,
}

/// Family configuration; `jsequence` is a path relative to the file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub seed: KnotDoc,
    pub axes: Vec<AxisDoc>,
    pub jsequence: String,
}

impl FamilyConfig {
    pub fn from_json(text: &str) -> Result<Self, InfectionError> {
        serde_json::from_str(text).map_err(|e| InfectionError::Parse(e.to_string()))
    }

    pub fn seed(&self) -> Result<SeifertMatrix, InfectionError> {
        SeifertMatrix::from_doc(&self.seed).map_err(|e| InfectionError::Parse(e.to_string()))
    }

    pub fn axes(&self) -> Result<Vec<AxisSpec>, InfectionError> {
        let rank = self.seed()?.size();
        self.axes
            .iter()
            .map(|a| {
                let w = FreeWord::parse(rank, &a.word).map_err(|e| InfectionError::Parse(e.to_string()))?;
                AxisSpec::new(a.label.clone(), w, a.depth, None)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::tuples_p;
    use crate::jsequence::{find_sequence, CandidateFamily};
    use crate::seifert::library;
    use num_rational::BigRational;

    fn seed() -> SeifertMatrix {
        library::trefoil().connected_sum(&library::mirror_trefoil())
    }

    fn axes() -> Vec<AxisSpec> {
        let p1 = tuples_p(1, 2, None).unwrap();
        AxisSpec::from_tuple(&p1.tuples[0], 2)
    }

    fn seq() -> JSequence {
        let fam = CandidateFamily::new(vec![("mirror-trefoil".into(), library::mirror_trefoil())], 8).unwrap();
        find_sequence(&BigRational::from_integer(10.into()), 1, &fam, 7, 3).unwrap()
    }

    #[test]
    fn family_over_slice_seed() {
        assert_eq!(seed().alexander_poly().span(), 4);
        let fam = build_family(&seed(), &axes(), &seq()).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].axes.len(), 3);
        assert_eq!(fam[0].level, 2);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            build_family(&library::trefoil(), &axes(), &seq()),
            Err(InfectionError::SeedDegreeTooSmall(2))
        ));
        let mut bad = seq();
        bad.items[0].matrix = library::trefoil();
        assert!(matches!(build_family(&seed(), &axes(), &bad), Err(InfectionError::ArfNonzeroInfection(_))));
        // top coefficient of Δ is (-2)^2 = 4
        let s = library::twist(2).connected_sum(&library::twist(2).mirror());
        assert!(matches!(build_family(&s, &axes(), &seq()), Err(InfectionError::PrimeTooSmall { prime: 3, .. })));
        let w = FreeWord::parse(4, "x1").unwrap();
        assert!(AxisSpec::new("a", w, 2, None).is_err());
    }

    #[test]
    fn transfer() {
        let fam = build_family(&seed(), &axes(), &seq()).unwrap();
        let d = derived_invariants(&fam[0]).unwrap();
        let s = seed();
        assert_eq!(d.alexander_poly, s.alexander_poly());
        assert_eq!(d.arf, s.arf());
        let w = RootOfUnity::new(3, 1).unwrap();
        assert_eq!(d.lt_signature(w), s.profile().value(w));
        let again = derived_invariants(&fam[0].reinfect(0, SeifertMatrix::unknot())).unwrap();
        assert_eq!(again.rules, d.rules);
        assert_eq!(again.alexander_poly, d.alexander_poly);
        let mut flat = fam[0].clone();
        flat.axes[0].derived_depth = 0;
        assert!(matches!(derived_invariants(&flat), Err(InfectionError::DepthZeroAxis(_))));
    }

    #[test]
    fn combinations() {
        let fam = build_family(&seed(), &axes(), &seq()).unwrap();
        let j = linear_combination(&[1], &fam).unwrap();
        assert_eq!(j.b, vec![0]);
        let two = vec![fam[0].clone(), fam[0].clone()];
        let j = linear_combination(&[3, -2], &two).unwrap();
        assert_eq!(j.b, vec![2, 2]);
        assert_eq!(j.epsilon[1], -1);
        assert_eq!(linear_combination(&[0, 0], &two), Err(InfectionError::AllZero));
    }
}

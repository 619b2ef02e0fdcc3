//! Finitely presented groups, the first two terms of a mixed-coefficient
//! commutator series, and the Alexander module over `R[t^±1]` for a field `R`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fox::{fox_derivative, FoxError, FreeWord, Letter};
use crate::ring::{
    rank_over, smith_normal_form, smith_normal_form_in, CoeffDomain, FieldKind, IntMatrix, LaurentPoly, Matrix,
    PolyRing, RingError, SmithForm, UniPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommutatorError {
    #[error("abelianization is {0}, not infinite cyclic")]
    NonCyclicAbelianization(String),
    #[error("word is not in the first term of the series")]
    NotInP1,
    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),
    #[error("invalid presentation: {0}")]
    Parse(String),
    #[error(transparent)]
    Fox(#[from] FoxError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A finite presentation. Relators are freely reduced words in the named
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
}

/// On-disk presentation: relators spelled with generator names, an inverse
/// written by capitalizing the name's first letter (`abaBAB`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

fn capitalize(name: &str) -> String {
    let mut c = name.chars();
    match c.next() {
        Some(f) => f.to_uppercase().collect::<String>() + c.as_str(),
        None => String::new(),
    }
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self, CommutatorError> {
        for g in &generators {
            if g.is_empty() || capitalize(g) == *g {
                return Err(CommutatorError::Parse(format!("generator name `{g}` must start with a lowercase letter")));
            }
        }
        if relators.iter().any(|r| r.rank() != generators.len()) {
            return Err(CommutatorError::Parse("relator rank differs from generator count".into()));
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn from_doc(doc: &PresentationDoc) -> Result<Self, CommutatorError> {
        let shell = GroupPresentation::new(doc.generators.clone(), Vec::new())?;
        let relators = doc.relators.iter().map(|r| shell.parse_word(r)).collect::<Result<Vec<_>, _>>()?;
        GroupPresentation::new(doc.generators.clone(), relators)
    }

    pub fn from_json(text: &str) -> Result<Self, CommutatorError> {
        let doc: PresentationDoc = serde_json::from_str(text).map_err(|e| CommutatorError::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Parses a word by greedy longest match against generator names and
    /// their capitalized inverses. `1` or the empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord, CommutatorError> {
        let text = text.trim();
        let rank = self.rank();
        if text.is_empty() || text == "1" {
            return Ok(FreeWord::identity(rank));
        }
        let mut tokens: Vec<(String, Letter)> = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            tokens.push((g.clone(), Letter { generator: i, inverse: false }));
            tokens.push((capitalize(g), Letter { generator: i, inverse: true }));
        }
        tokens.sort_by_key(|t| std::cmp::Reverse(t.0.len()));
        let mut letters = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let Some((tok, l)) = tokens.iter().find(|(t, _)| rest.starts_with(t.as_str())) else {
                return Err(CommutatorError::Parse(format!("cannot read `{rest}` in `{text}`")));
            };
            letters.push(*l);
            rest = &rest[tok.len()..];
        }
        Ok(FreeWord::from_letters(rank, letters))
    }

    pub fn format_word(&self, w: &FreeWord) -> String {
        if w.is_identity() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|l| {
                let g = &self.generators[l.generator];
                if l.inverse {
                    capitalize(g)
                } else {
                    g.clone()
                }
            })
            .collect()
    }

    /// Rows are relator exponent-sum vectors.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.rank();
        Matrix::from_fn(self.relators.len(), n, |i, j| BigInt::from(self.relators[i].exponent_sums()[j]))
    }

    /// Invariant factors of `H_1(G; Z)`: torsion orders followed by the free rank.
    pub fn abelianization(&self) -> (Vec<BigInt>, usize) {
        let m = self.relation_matrix();
        let snf = smith_normal_form(&m);
        let torsion: Vec<BigInt> = snf.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        (torsion, self.rank() - snf.rank)
    }

    fn describe_abelianization(&self) -> String {
        let (torsion, free) = self.abelianization();
        let mut parts: Vec<String> = Vec::new();
        if free > 0 {
            parts.push(if free == 1 { "Z".into() } else { format!("Z^{free}") });
        }
        parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// A surjection `G -> Z` given by generator images, when `H_1(G; Q)` is
    /// one-dimensional. The first nonzero image is positive.
    pub fn infinite_cyclic_quotient(&self) -> Result<Vec<i64>, CommutatorError> {
        let m = self.relation_matrix();
        let n = self.rank();
        let snf = smith_normal_form(&m);
        if n == 0 || snf.rank != n - 1 {
            return Err(CommutatorError::NonCyclicAbelianization(self.describe_abelianization()));
        }
        let mut phi: Vec<i64> =
            (0..n).map(|i| snf.right[(i, n - 1)].to_i64().expect("small generator image")).collect();
        if phi.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            phi.iter_mut().for_each(|x| *x = -*x);
        }
        Ok(phi)
    }
}

/// `w ∈ P^1 G`: the image of `w` in `H_1(G; R_0)` vanishes.
pub fn member_p1(g: &GroupPresentation, w: &FreeWord, r0: FieldKind) -> Result<bool, CommutatorError> {
    let m = g.relation_matrix();
    let v: Vec<BigInt> = w.exponent_sums().into_iter().map(BigInt::from).collect();
    let mut rows = m.to_rows();
    let base = rank_over(&m, r0)?;
    rows.push(v);
    let ext = Matrix::from_rows(rows)?;
    Ok(rank_over(&ext, r0)? == base)
}

/// `H_1` of the infinite cyclic cover with coefficients in `R[t^±1]`,
/// presented by the abelianized Fox Jacobian and diagonalized over `R[t]`.
///
/// Coordinates `0..rank` are cyclic summands `R[t^±1]/(d_k)`; the remaining
/// coordinates are free (one of them is the relative class of the base point).
#[derive(Clone, Debug)]
pub struct AlexanderModule {
    pub field: FieldKind,
    pub phi: Vec<i64>,
    pub jacobian: Matrix<LaurentPoly>,
    snf: SmithForm<UniPoly>,
    factors: Vec<UniPoly>,
}

/// An element in the diagonal coordinates of an [`AlexanderModule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub coords: Vec<UniPoly>,
}

/// `φ(s)` for an element of `ZF`, as a Laurent polynomial in `t`.
fn abelianize(s: &crate::fox::GroupRingWordSum, phi: &[i64], dom: CoeffDomain) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(&["t"], dom);
    for (w, c) in s.terms() {
        let e: i64 = w.exponent_sums().iter().zip(phi).map(|(a, b)| a * b).sum();
        acc = acc.add(&LaurentPoly::monomial(&["t"], vec![e], dom.from_bigint(c)));
    }
    acc
}

/// Multiplies a vector of Laurent polynomials by a power of `t` so all
/// entries are polynomials, then converts.
fn to_polynomial_row(row: &[LaurentPoly], dom: CoeffDomain) -> Vec<UniPoly> {
    let low = row.iter().filter_map(|p| p.exponent_range().map(|r| r.0)).min().unwrap_or(0);
    row.iter()
        .map(|p| {
            let (s, u) = p.to_unipoly();
            if u.is_zero() {
                UniPoly::zero(dom)
            } else {
                u.to_domain(dom).shift((s - low) as usize)
            }
        })
        .collect()
}

/// Alexander module of `G` over `R_1[t^±1]`; needs `H_1(G; Z) ≅ Z`.
pub fn alexander_module(g: &GroupPresentation, r1: FieldKind) -> Result<AlexanderModule, CommutatorError> {
    let (torsion, free) = g.abelianization();
    if free != 1 || !torsion.is_empty() {
        return Err(CommutatorError::NonCyclicAbelianization(g.describe_abelianization()));
    }
    module_for_quotient(g, &g.infinite_cyclic_quotient()?, r1)
}

fn module_for_quotient(g: &GroupPresentation, phi: &[i64], r1: FieldKind) -> Result<AlexanderModule, CommutatorError> {
    let field = r1.validate()?;
    let dom = field.domain();
    let n = g.rank();
    let mut rows = Vec::new();
    for r in g.relators() {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(abelianize(&fox_derivative(r, j)?, phi, dom));
        }
        rows.push(row);
    }
    let jacobian = if rows.is_empty() {
        Matrix::from_fn(0, n, |_, _| LaurentPoly::zero(&["t"], dom))
    } else {
        Matrix::from_rows(rows)?
    };
    let poly_rows: Vec<Vec<UniPoly>> = jacobian.to_rows().iter().map(|r| to_polynomial_row(r, dom)).collect();
    let pm = if poly_rows.is_empty() {
        Matrix::from_fn(0, n, |_, _| UniPoly::zero(dom))
    } else {
        Matrix::from_rows(poly_rows)?
    };
    let snf = smith_normal_form_in(&PolyRing { domain: dom }, &pm);
    let factors = snf.diagonal[..snf.rank].iter().map(|d| d.strip_x_power().monic()).collect();
    Ok(AlexanderModule { field, phi: phi.to_vec(), jacobian, snf, factors })
}

impl AlexanderModule {
    pub fn domain(&self) -> CoeffDomain {
        self.field.domain()
    }

    fn n(&self) -> usize {
        self.phi.len()
    }

    /// Invariant factors with `t`-powers removed, monic.
    pub fn invariant_factors(&self) -> &[UniPoly] {
        &self.factors
    }

    /// Product of the invariant factors: the order of the torsion submodule.
    pub fn order(&self) -> UniPoly {
        self.factors.iter().fold(UniPoly::one(self.domain()), |a, d| a.mul(d))
    }

    /// Free rank of the absolute module (the relative module has one more).
    pub fn free_rank(&self) -> usize {
        self.n() - self.snf.rank - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank() == 0 && self.factors.iter().all(|d| d.degree() == Some(0))
    }

    fn reduce(&self, coords: Vec<UniPoly>) -> ModuleElement {
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(k, y)| if k < self.factors.len() { y.rem(&self.factors[k]) } else { y })
            .collect();
        ModuleElement { coords }
    }

    /// Class of `w ∈ ker φ`, from its Fox derivatives.
    pub fn element_of_word(&self, w: &FreeWord) -> Result<ModuleElement, CommutatorError> {
        let dom = self.domain();
        let e: i64 = w.exponent_sums().iter().zip(&self.phi).map(|(a, b)| a * b).sum();
        if e != 0 {
            return Err(CommutatorError::NotInP1);
        }
        let mut v = Vec::with_capacity(self.n());
        for j in 1..=self.n() {
            v.push(abelianize(&fox_derivative(w, j)?, &self.phi, dom));
        }
        let v = to_polynomial_row(&v, dom);
        let coords = (0..self.n())
            .map(|k| (0..self.n()).fold(UniPoly::zero(dom), |acc, i| acc.add(&v[i].mul(&self.snf.right[(i, k)]))))
            .collect();
        Ok(self.reduce(coords))
    }

    /// The cyclic generators `e_k` with nonunit annihilator.
    pub fn torsion_generators(&self) -> Vec<ModuleElement> {
        let dom = self.domain();
        (0..self.factors.len())
            .filter(|&k| self.factors[k].degree().unwrap_or(0) > 0)
            .map(|k| {
                let coords =
                    (0..self.n()).map(|i| if i == k { UniPoly::one(dom) } else { UniPoly::zero(dom) }).collect();
                ModuleElement { coords }
            })
            .collect()
    }

    pub fn zero_element(&self) -> ModuleElement {
        ModuleElement { coords: vec![UniPoly::zero(self.domain()); self.n()] }
    }

    pub fn is_zero(&self, e: &ModuleElement) -> bool {
        self.reduce(e.coords.clone()).coords.iter().all(UniPoly::is_zero)
    }

    pub fn is_torsion(&self, e: &ModuleElement) -> bool {
        e.coords[self.factors.len()..].iter().all(UniPoly::is_zero)
    }

    /// Monic generator of the annihilator ideal, or `None` for non-torsion.
    pub fn annihilator(&self, e: &ModuleElement) -> Option<UniPoly> {
        if !self.is_torsion(e) {
            return None;
        }
        let mut acc = UniPoly::one(self.domain());
        for (k, d) in self.factors.iter().enumerate() {
            let y = e.coords[k].rem(d);
            let part = if y.is_zero() { UniPoly::one(self.domain()) } else { d.div_rem(&d.gcd(&y)).0 };
            let g = acc.gcd(&part);
            acc = acc.mul(&part).div_rem(&g).0.monic();
        }
        Some(acc)
    }

    /// `poly · e = 0`.
    pub fn annihilates(&self, e: &ModuleElement, poly: &LaurentPoly) -> bool {
        let dom = self.domain();
        let (_, p) = poly.to_domain(dom).to_unipoly();
        let scaled: Vec<UniPoly> = e.coords.iter().map(|y| y.mul(&p)).collect();
        self.is_zero(&ModuleElement { coords: scaled })
    }
}

/// `poly · elem = 0` in the module.
pub fn annihilation_check(m: &AlexanderModule, elem: &ModuleElement, poly: &LaurentPoly) -> bool {
    m.annihilates(elem, poly)
}

/// All variables at 1 give 1.
pub fn augmentation_one_check(poly: &LaurentPoly) -> bool {
    poly.augmentation().is_one()
}

/// `w ∈ P^2 G` for the coefficient pair `(R_0, R_1)`.
///
/// `R_0` must be the rationals: with `R_0 = Z/p` the quotient `G/P^1G` is
/// finite and the level-one group ring is not a Laurent polynomial ring.
pub fn member_p2(g: &GroupPresentation, w: &FreeWord, r0: FieldKind, r1: FieldKind) -> Result<bool, CommutatorError> {
    if r0 != FieldKind::Rationals {
        return Err(CommutatorError::UnsupportedCoefficients(format!("first coefficient ring must be Q, got {r0}")));
    }
    let phi = g.infinite_cyclic_quotient()?;
    if !member_p1(g, w, r0)? {
        return Err(CommutatorError::NotInP1);
    }
    let m = module_for_quotient(g, &phi, r1)?;
    let e = m.element_of_word(w)?;
    Ok(m.is_zero(&e))
}

/// Standard presentations used in tests and examples.
pub mod presentations {
    use super::*;

    pub fn trefoil() -> GroupPresentation {
        GroupPresentation::from_doc(&PresentationDoc {
            generators: vec!["a".into(), "b".into()],
            relators: vec!["abaBAB".into()],
        })
        .expect("valid")
    }

    /// Two-bridge presentation with a single relator.
    pub fn figure_eight() -> GroupPresentation {
        GroupPresentation::from_doc(&PresentationDoc {
            generators: vec!["x".into(), "y".into()],
            relators: vec!["yXyxYXyXYx".into()],
        })
        .expect("valid")
    }

    pub fn unknot() -> GroupPresentation {
        GroupPresentation::from_doc(&PresentationDoc { generators: vec!["a".into()], relators: vec![] }).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::presentations::*;
    use super::*;

    const Q: FieldKind = FieldKind::Rationals;

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(CoeffDomain::Rational, c)
    }

    #[test]
    fn parsing() {
        let g = trefoil();
        assert_eq!(g.format_word(&g.relators()[0]), "abaBAB");
        assert!(g.parse_word("abc").is_err());
        let h = GroupPresentation::from_doc(&PresentationDoc {
            generators: vec!["x1".into(), "x12".into()],
            relators: vec![],
        })
        .unwrap();
        assert_eq!(h.format_word(&h.parse_word("x12X1").unwrap()), "x12X1");
    }

    #[test]
    fn first_term() {
        let g = trefoil();
        assert!(member_p1(&g, &g.parse_word("aB").unwrap(), Q).unwrap());
        assert!(!member_p1(&g, &g.parse_word("a").unwrap(), Q).unwrap());
        assert!(member_p1(&g, &g.parse_word("abAB").unwrap(), Q).unwrap());
    }

    #[test]
    fn trefoil_module() {
        let g = trefoil();
        let m = alexander_module(&g, Q).unwrap();
        assert_eq!(m.order(), poly(&[1, -1, 1]));
        assert_eq!(m.free_rank(), 0);
        let gens = m.torsion_generators();
        assert_eq!(gens.len(), 1);
        let delta = LaurentPoly::from_coeffs("t", 0, &[1.into(), (-1).into(), 1.into()], CoeffDomain::Rational);
        assert!(annihilation_check(&m, &gens[0], &delta));
        let tm1 = LaurentPoly::from_coeffs("t", 0, &[(-1).into(), 1.into()], CoeffDomain::Rational);
        assert!(!annihilation_check(&m, &gens[0], &tm1));
        assert!(annihilation_check(&m, &m.zero_element(), &tm1));
        assert_eq!(m.annihilator(&gens[0]), Some(poly(&[1, -1, 1])));
    }

    #[test]
    fn second_term() {
        let g = trefoil();
        let ab = g.parse_word("aB").unwrap();
        assert!(!member_p2(&g, &ab, Q, Q).unwrap());
        let c = g.parse_word("abAB").unwrap();
        let d = g.parse_word("aBAb").unwrap();
        assert!(member_p2(&g, &c.commutator(&d), Q, Q).unwrap());
        assert!(member_p2(&g, &FreeWord::identity(2), Q, Q).unwrap());
        assert_eq!(member_p2(&g, &g.parse_word("a").unwrap(), Q, Q), Err(CommutatorError::NotInP1));
        assert!(matches!(member_p2(&g, &ab, FieldKind::ModP(3), Q), Err(CommutatorError::UnsupportedCoefficients(_))));
    }

    #[test]
    fn other_groups() {
        let m = alexander_module(&figure_eight(), Q).unwrap();
        assert_eq!(m.order(), poly(&[1, -3, 1]));
        let m = alexander_module(&unknot(), Q).unwrap();
        assert!(m.is_trivial());
        let z2 = GroupPresentation::from_doc(&PresentationDoc {
            generators: vec!["a".into(), "b".into()],
            relators: vec!["aa".into()],
        })
        .unwrap();
        assert!(matches!(alexander_module(&z2, Q), Err(CommutatorError::NonCyclicAbelianization(_))));
    }

    #[test]
    fn augmentation() {
        let d = LaurentPoly::from_coeffs("t", 0, &[1.into(), (-1).into(), 1.into()], CoeffDomain::Integer);
        assert!(augmentation_one_check(&d));
        assert!(!augmentation_one_check(&LaurentPoly::from_coeffs(
            "t",
            0,
            &[(-1).into(), 1.into()],
            CoeffDomain::Integer
        )));
        assert!(augmentation_one_check(&LaurentPoly::one(&["t"], CoeffDomain::Integer)));
    }
}

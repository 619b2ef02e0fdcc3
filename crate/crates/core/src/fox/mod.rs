//! Fox free differential calculus in the right-divided convention
//! `∂_i(gh) = ∂_i g + (∂_i h) g^-1`, level-one projections, the tuple
//! collections `P_n`, and rank tests built on them.

pub mod tuples;
pub mod word;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ring::{
    fraction_rank, fraction_rank_seeded, Coefficient, FieldKind, LaurentPoly, Matrix, RingError, FAST_PATH_SEED,
};

pub use tuples::{count_p, tuples_p, CommutatorExpr, Tuple, TupleCollection, TupleIter};
pub use word::{FreeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error("generator index {index} outside 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid word: {0}")]
    Parse(String),
    #[error("tuple limit must be positive")]
    LimitZero,
    #[error("expected a tuple of {expected} words, got {got}")]
    WrongTupleSize { expected: usize, got: usize },
    #[error("independence at level {0} needs skew-field ranks and is not supported")]
    UnsupportedLevel(usize),
    #[error("the coefficient system sends every generator to 1")]
    TrivialSystem,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// An integer combination of free-group words, an element of `ZF`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupRingWordSum {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingWordSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(w: FreeWord, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c.into());
        s
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (w, c) in &other.terms {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn neg(&self) -> Self {
        GroupRingWordSum { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    /// Right multiplication by a group element.
    pub fn mul_word_right(&self, g: &FreeWord) -> Self {
        let mut s = Self::zero();
        for (w, c) in &self.terms {
            s.add_term(w.mul(g), c.clone());
        }
        s
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, c| a + c)
    }
}

impl fmt::Display for GroupRingWordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{w}")?;
            } else if w.is_identity() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

/// `∂_i w` for 1-based `i`. Expanding the product rule letter by letter gives
/// `Σ_k ∂_i(l_k) (l_1 ... l_{k-1})^-1` with `∂_i(x_i) = 1` and
/// `∂_i(x_i^-1) = -x_i`.
pub fn fox_derivative(w: &FreeWord, i: usize) -> Result<GroupRingWordSum, FoxError> {
    let rank = w.rank();
    if i == 0 || i > rank {
        return Err(FoxError::IndexOutOfRange { index: i, rank });
    }
    let xi = FreeWord::generator(rank, i)?;
    let mut out = GroupRingWordSum::zero();
    let mut prefix = FreeWord::identity(rank);
    for &l in w.letters() {
        if l.generator == i - 1 {
            let pinv = prefix.inverse();
            if l.inverse {
                out.add_term(xi.mul(&pinv), -BigInt::one());
            } else {
                out.add_term(pinv, BigInt::one());
            }
        }
        prefix = prefix.mul(&FreeWord::from_letters(rank, [l]));
    }
    Ok(out)
}

/// Variable names `t1, ..., tn` of the level-one group ring.
pub fn level1_vars(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("t{i}")).collect()
}

/// Image under `ZF -> R[F/F']`, a Laurent polynomial in `t1..t_rank`.
pub fn project_level1(s: &GroupRingWordSum, rank: usize, field: FieldKind) -> Result<LaurentPoly, FoxError> {
    let field = field.validate()?;
    let dom = field.domain();
    let vars = level1_vars(rank);
    let mut acc = LaurentPoly::zero_in(vars.clone(), dom);
    for (w, c) in s.terms() {
        let m =
            LaurentPoly::monomial_in(vars.clone(), w.exponent_sums(), Coefficient::Integer(c.clone()).to_domain(dom));
        acc = acc.add(&m);
    }
    Ok(acc)
}

/// Outcome of the level-one independence test for one tuple.
#[derive(Clone, Debug)]
pub struct Independence {
    pub independent: bool,
    pub rank: usize,
    /// Row `i`, column `j`: the projection of `∂_{j+1} w_{i+1}`.
    pub matrix: Matrix<LaurentPoly>,
}

/// Right linear independence of `(∂_1 w_i, ..., ∂_{2g-1} w_i)` over the
/// fraction field of `R[F/F^(level)]`; only level 1 is supported.
pub fn independence_test(
    words: &[FreeWord],
    genus: usize,
    field: FieldKind,
    level: usize,
) -> Result<Independence, FoxError> {
    independence_test_seeded(words, genus, field, level, FAST_PATH_SEED)
}

/// [`independence_test`] with the seed of the rank fast path made explicit.
pub fn independence_test_seeded(
    words: &[FreeWord],
    genus: usize,
    field: FieldKind,
    level: usize,
    seed: u64,
) -> Result<Independence, FoxError> {
    if level != 1 {
        return Err(FoxError::UnsupportedLevel(level));
    }
    let n = 2 * genus - 1;
    if words.len() != n {
        return Err(FoxError::WrongTupleSize { expected: n, got: words.len() });
    }
    let field = field.validate()?;
    let rank = 2 * genus;
    let mut rows = Vec::with_capacity(n);
    for w in words {
        let w = if w.rank() < rank { w.widen(rank) } else { w.clone() };
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(project_level1(&fox_derivative(&w, j)?, rank, field)?);
        }
        rows.push(row);
    }
    let matrix = Matrix::from_rows(rows)?;
    let rank = fraction_rank_seeded(&matrix, field, seed)?;
    Ok(Independence { independent: rank == n, rank, matrix })
}

/// Lower bound for the derived-series depth of a word from its algebra:
/// 1 when all exponent sums vanish, 2 when moreover every level-one Fox
/// derivative projects to zero.
pub fn algebraic_depth_lower_bound(w: &FreeWord) -> usize {
    if w.exponent_sums().iter().any(|&e| e != 0) {
        return 0;
    }
    let rank = w.rank();
    for i in 1..=rank {
        let d = fox_derivative(w, i).expect("index in range");
        if !project_level1(&d, rank, FieldKind::Rationals).expect("field").is_zero() {
            return 1;
        }
    }
    2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WedgeRank {
    pub computed: usize,
    pub expected: usize,
}

/// First-homology rank of a wedge of `m` circles with coefficients twisted by
/// `x_i -> t^{system[i]}` (exponent vectors in `Z^k`): the kernel rank of the
/// `1 x m` Fox Jacobian `[t^{e_i} - 1]` over the fraction field.
pub fn wedge_rank_check(m: usize, system: &[Vec<i64>], field: FieldKind) -> Result<WedgeRank, FoxError> {
    if system.len() != m {
        return Err(FoxError::WrongTupleSize { expected: m, got: system.len() });
    }
    let k = system.first().map_or(0, Vec::len);
    if k == 0 || system.iter().all(|e| e.iter().all(|&x| x == 0)) {
        return Err(FoxError::TrivialSystem);
    }
    if system.iter().any(|e| e.len() != k) {
        return Err(FoxError::Parse("coefficient system vectors differ in length".into()));
    }
    let field = field.validate()?;
    let dom = field.domain();
    let vars = level1_vars(k);
    let row: Vec<LaurentPoly> = system
        .iter()
        .map(|e| {
            LaurentPoly::monomial_in(vars.clone(), e.clone(), dom.one()).sub(&LaurentPoly::monomial_in(
                vars.clone(),
                vec![0; k],
                dom.one(),
            ))
        })
        .collect();
    let r = fraction_rank(&Matrix::from_rows(vec![row])?, field)?;
    Ok(WedgeRank { computed: m - r, expected: m - 1 })
}

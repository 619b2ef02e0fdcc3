//! The tuple collections `P_n` of iterated commutators in the free group of
//! rank `2g`.
//!
//! `P_0 = {{x_1, ..., x_2g}}`; `P_1` has one tuple per `i`, namely the
//! commutators `[x_i, x_j]` for `j != i`. Each tuple `(w_1, ..., w_{2g-1})` of
//! `P_k` (k >= 1) spawns the tuples whose `i`-th entry is either
//! `[w_i, w_i^{x_j}]` (`j != i`, `1 <= j <= 2g`) or `[w_i, w_k]`
//! (`k != i`, `1 <= k <= 2g-1`).

use std::fmt;

use num_bigint::BigUint;

use super::word::FreeWord;
use super::FoxError;

/// Syntax tree of an iterated commutator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorExpr {
    /// `x_i`, 1-based.
    Gen(usize),
    Comm(Box<CommutatorExpr>, Box<CommutatorExpr>),
    /// `w^{x_j} = x_j^-1 w x_j`
    Conj(Box<CommutatorExpr>, usize),
}

impl CommutatorExpr {
    pub fn comm(a: CommutatorExpr, b: CommutatorExpr) -> Self {
        CommutatorExpr::Comm(Box::new(a), Box::new(b))
    }

    pub fn conj(a: CommutatorExpr, j: usize) -> Self {
        CommutatorExpr::Conj(Box::new(a), j)
    }

    /// Syntactic derived-series depth: the word lies in `F^(depth)`.
    pub fn depth(&self) -> usize {
        match self {
            CommutatorExpr::Gen(_) => 0,
            CommutatorExpr::Comm(a, b) => 1 + a.depth().min(b.depth()),
            CommutatorExpr::Conj(a, _) => a.depth(),
        }
    }

    pub fn to_word(&self, rank: usize) -> FreeWord {
        match self {
            CommutatorExpr::Gen(i) => FreeWord::generator(rank, *i).expect("generator in range"),
            CommutatorExpr::Comm(a, b) => a.to_word(rank).commutator(&b.to_word(rank)),
            CommutatorExpr::Conj(a, j) => a.to_word(rank).conjugate_by_generator(*j),
        }
    }
}

impl fmt::Display for CommutatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorExpr::Gen(i) => write!(f, "x{i}"),
            CommutatorExpr::Comm(a, b) => write!(f, "[{a},{b}]"),
            CommutatorExpr::Conj(a, j) => match **a {
                CommutatorExpr::Gen(_) => write!(f, "{a}^x{j}"),
                _ => write!(f, "({a})^x{j}"),
            },
        }
    }
}

/// One member of `P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tuple {
    pub level: usize,
    pub exprs: Vec<CommutatorExpr>,
}

impl Tuple {
    pub fn words(&self, genus: usize) -> Vec<FreeWord> {
        self.exprs.iter().map(|e| e.to_word(2 * genus)).collect()
    }

    pub fn min_depth(&self) -> usize {
        self.exprs.iter().map(CommutatorExpr::depth).min().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct TupleCollection {
    pub level: usize,
    pub genus: usize,
    pub tuples: Vec<Tuple>,
    /// `|P_n|` from the closed formula.
    pub total: BigUint,
    pub truncated: bool,
}

/// `|P_0| = 1`, `|P_1| = 2g`, `|P_{k+1}| = |P_k| (4g-3)^{2g-1}`.
pub fn count_p(level: usize, genus: usize) -> BigUint {
    match level {
        0 => BigUint::from(1u32),
        _ => {
            let per = BigUint::from(4 * genus - 3).pow((2 * genus - 1) as u32);
            BigUint::from(2 * genus) * per.pow((level - 1) as u32)
        }
    }
}

fn level0(genus: usize) -> Tuple {
    Tuple { level: 0, exprs: (1..=2 * genus).map(CommutatorExpr::Gen).collect() }
}

fn level1(genus: usize, i: usize) -> Tuple {
    let exprs = (1..=2 * genus)
        .filter(|&j| j != i)
        .map(|j| CommutatorExpr::comm(CommutatorExpr::Gen(i), CommutatorExpr::Gen(j)))
        .collect();
    Tuple { level: 1, exprs }
}

/// Option `c` at 1-based position `pos` of a child of `parent`.
fn child_entry(parent: &Tuple, genus: usize, pos: usize, c: usize) -> CommutatorExpr {
    let wi = parent.exprs[pos - 1].clone();
    let conj: Vec<usize> = (1..=2 * genus).filter(|&j| j != pos).collect();
    if c < conj.len() {
        return CommutatorExpr::comm(wi.clone(), CommutatorExpr::conj(wi, conj[c]));
    }
    let others: Vec<usize> = (1..2 * genus).filter(|&k| k != pos).collect();
    let k = others[c - conj.len()];
    CommutatorExpr::comm(wi, parent.exprs[k - 1].clone())
}

/// Lazy enumeration of `P_n`: parents outermost, then the per-position choices
/// with position 1 most significant.
pub struct TupleIter {
    level: usize,
    genus: usize,
    state: IterState,
}

enum IterState {
    Base(usize),
    Nested { parent_iter: Box<TupleIter>, parent: Option<Tuple>, digits: Vec<usize> },
    Done,
}

impl TupleIter {
    pub fn new(level: usize, genus: usize) -> Self {
        assert!(genus >= 1);
        let state = if level <= 1 {
            IterState::Base(0)
        } else {
            let mut parent_iter = Box::new(TupleIter::new(level - 1, genus));
            let parent = parent_iter.next();
            IterState::Nested { parent_iter, parent, digits: vec![0; 2 * genus - 1] }
        };
        TupleIter { level, genus, state }
    }
}

impl Iterator for TupleIter {
    type Item = Tuple;

    fn next(&mut self) -> Option<Tuple> {
        let g = self.genus;
        match &mut self.state {
            IterState::Done => None,
            IterState::Base(i) => {
                let out = if self.level == 0 {
                    (*i == 0).then(|| level0(g))
                } else {
                    (*i < 2 * g).then(|| level1(g, *i + 1))
                };
                *i += 1;
                if out.is_none() {
                    self.state = IterState::Done;
                }
                out
            }
            IterState::Nested { parent_iter, parent, digits } => {
                let Some(p) = parent.as_ref() else {
                    self.state = IterState::Done;
                    return None;
                };
                let exprs = digits.iter().enumerate().map(|(k, &c)| child_entry(p, g, k + 1, c)).collect();
                let out = Tuple { level: self.level, exprs };
                let radix = 4 * g - 3;
                let mut k = digits.len();
                loop {
                    if k == 0 {
                        *parent = parent_iter.next();
                        digits.iter_mut().for_each(|d| *d = 0);
                        break;
                    }
                    k -= 1;
                    digits[k] += 1;
                    if digits[k] < radix {
                        break;
                    }
                    digits[k] = 0;
                }
                Some(out)
            }
        }
    }
}

/// `P_n` for the free group of rank `2g`, truncated to `limit` tuples.
pub fn tuples_p(level: usize, genus: usize, limit: Option<usize>) -> Result<TupleCollection, FoxError> {
    if limit == Some(0) {
        return Err(FoxError::LimitZero);
    }
    if genus == 0 {
        return Err(FoxError::IndexOutOfRange { index: 0, rank: 0 });
    }
    let total = count_p(level, genus);
    let iter = TupleIter::new(level, genus);
    let tuples: Vec<Tuple> = match limit {
        Some(l) => iter.take(l).collect(),
        None => iter.collect(),
    };
    let truncated = BigUint::from(tuples.len()) < total;
    Ok(TupleCollection { level, genus, tuples, total, truncated })
}

//! Ranks over prime fields, the rationals, and fraction fields of Laurent rings.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coeff::{CoeffDomain, Coefficient, FieldKind};
use super::laurent::LaurentPoly;
use super::matrix::{IntMatrix, Matrix};
use super::snf::smith_normal_form;
use super::RingError;

pub const FAST_PATH_SEED: u64 = 0x5eed_f00d;

/// Gaussian elimination rank of a matrix whose entries lie in a field.
fn field_rank(mut a: Matrix<Coefficient>) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        a.swap_rows(rank, p);
        let inv = a[(rank, c)].inv().expect("nonzero field element");
        for i in rank + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].mul(&inv);
            for j in c..cols {
                let v = a[(i, j)].sub(&f.mul(&a[(rank, j)]));
                a[(i, j)] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix over `Q` or `Z/p`.
pub fn rank_over(m: &IntMatrix, field: FieldKind) -> Result<usize, RingError> {
    let field = field.validate()?;
    let dom = field.domain();
    Ok(field_rank(m.map(|v| dom.from_bigint(v))))
}

/// Integer rank against mod-`p` rank of the same matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiComparison {
    pub rank_z: usize,
    pub rank_fp: usize,
    pub equal: bool,
}

/// Both ranks read off the Smith diagonal: the mod-`p` rank drops once for
/// each nonzero invariant factor divisible by `p`.
pub fn betti_compare(m: &IntMatrix, p: u64) -> Result<BettiComparison, RingError> {
    FieldKind::mod_p(p)?;
    let snf = smith_normal_form(m);
    let pp = BigInt::from(p);
    let nonzero: Vec<&BigInt> = snf.diagonal.iter().filter(|d| !d.is_zero()).collect();
    let rank_z = nonzero.len();
    let rank_fp = nonzero.iter().filter(|d| !(**d % &pp).is_zero()).count();
    Ok(BettiComparison { rank_z, rank_fp, equal: rank_z == rank_fp })
}

fn common_vars(m: &Matrix<LaurentPoly>) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    for e in m.entries() {
        for v in e.vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    vars
}

fn random_unit(rng: &mut ChaCha8Rng, dom: CoeffDomain) -> Coefficient {
    match dom {
        CoeffDomain::ModP(p) => {
            let r = rng.gen_range(1..p);
            dom.from_i64(r as i64)
        }
        _ => {
            let mut r: i64 = 0;
            while r == 0 {
                r = rng.gen_range(-97..=97);
            }
            dom.from_i64(r)
        }
    }
}

/// Rank over the fraction field of the Laurent ring generated by the entries'
/// variables, with coefficients in `field`.
///
/// A seeded evaluation at random units is tried first; it is trusted only when
/// it reports full rank, since specialization never raises rank. Otherwise the
/// rank comes from fraction-free elimination.
pub fn fraction_rank(m: &Matrix<LaurentPoly>, field: FieldKind) -> Result<usize, RingError> {
    fraction_rank_seeded(m, field, FAST_PATH_SEED)
}

/// [`fraction_rank`] with an explicit seed for the evaluation point. The
/// result does not depend on the seed.
pub fn fraction_rank_seeded(m: &Matrix<LaurentPoly>, field: FieldKind, seed: u64) -> Result<usize, RingError> {
    let field = field.validate()?;
    let dom = field.domain();
    let vars = common_vars(m);
    let a = m.map(|e| e.with_vars(&vars).to_domain(dom));
    let full = a.rows().min(a.cols());
    if full == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<Coefficient> = vars.iter().map(|_| random_unit(&mut rng, dom)).collect();
    let evaluated = a.map(|e| e.eval(&point).expect("units"));
    if field_rank(evaluated) == full {
        return Ok(full);
    }
    Ok(fraction_free_rank(a))
}

/// Exact rank by cross-multiplying elimination in the Laurent ring.
pub fn fraction_free_rank(mut a: Matrix<LaurentPoly>) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let candidates = (rank..rows).filter(|&i| !a[(i, c)].is_zero());
        let Some(p) = candidates.min_by_key(|&i| a[(i, c)].num_terms()) else { continue };
        a.swap_rows(rank, p);
        let pivot = a[(rank, c)].clone();
        for i in rank + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let v = a[(i, j)].mul(&pivot).sub(&a[(rank, j)].mul(&f));
                a[(i, j)] = v;
            }
        }
        rank += 1;
    }
    rank
}

//! Exact inertia of Hermitian matrices over `Q(i)` by congruence elimination.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::ring::Matrix;

pub type GaussRat = Complex<BigRational>;

/// Positive, negative and zero eigenvalue counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

fn conj(z: &GaussRat) -> GaussRat {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// Inertia of a Hermitian matrix. Each step either pivots on a nonzero
/// diagonal entry or, when the remaining diagonal vanishes, adds a multiple of
/// one row/column to another to create a positive diagonal entry.
pub fn inertia(h: &Matrix<GaussRat>) -> Inertia {
    assert!(h.is_square());
    let mut a = h.clone();
    let n = a.rows();
    let mut res = Inertia { positive: 0, negative: 0, zero: 0 };
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !a[(i, i)].re.is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let off =
                    (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                let Some((i, j)) = off else {
                    res.zero += n - k;
                    break;
                };
                // row_i += c row_j, col_i += conj(c) col_j with c = conj(h_ji)
                // turns h_ii into 2|h_ji|^2.
                let c = conj(&a[(j, i)]);
                for col in 0..n {
                    let v = &a[(i, col)] + &c * &a[(j, col)];
                    a[(i, col)] = v;
                }
                let cc = conj(&c);
                for row in 0..n {
                    let v = &a[(row, i)] + &cc * &a[(row, j)];
                    a[(row, i)] = v;
                }
                i
            }
        };
        if p != k {
            a.swap_rows(p, k);
            a.swap_cols(p, k);
        }
        let d = a[(k, k)].re.clone();
        if d.is_positive() {
            res.positive += 1;
        } else {
            res.negative += 1;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / Complex::new(d.clone(), BigRational::zero());
            for j in k + 1..n {
                let v = &a[(i, j)] - &f * &a[(k, j)];
                a[(i, j)] = v;
            }
            a[(i, k)] = Complex::zero();
        }
        for j in k + 1..n {
            a[(k, j)] = Complex::zero();
        }
        k += 1;
    }
    res
}

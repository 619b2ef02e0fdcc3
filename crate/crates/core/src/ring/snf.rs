//! Smith normal form over a Euclidean ring, with unimodular transforms.

use num_bigint::BigInt;

use super::euclid::{EuclideanRing, Integers};
use super::matrix::{IntMatrix, Matrix};

/// `left * m * right` is diagonal with `diagonal[0] | diagonal[1] | ...`.
/// `right_inv` is the inverse of `right`.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub diagonal: Vec<E>,
    pub left: Matrix<E>,
    pub right: Matrix<E>,
    pub right_inv: Matrix<E>,
    pub rank: usize,
}

fn identity<R: EuclideanRing>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

/// `row[dst] += k * row[src]`
fn row_axpy<R: EuclideanRing>(ring: &R, m: &mut Matrix<R::Elem>, dst: usize, src: usize, k: &R::Elem) {
    for j in 0..m.cols() {
        let v = ring.add(&m[(dst, j)], &ring.mul(k, &m[(src, j)]));
        m[(dst, j)] = v;
    }
}

/// `col[dst] += k * col[src]`
fn col_axpy<R: EuclideanRing>(ring: &R, m: &mut Matrix<R::Elem>, dst: usize, src: usize, k: &R::Elem) {
    for i in 0..m.rows() {
        let v = ring.add(&m[(i, dst)], &ring.mul(k, &m[(i, src)]));
        m[(i, dst)] = v;
    }
}

/// Smith normal form with minimal-size pivoting.
pub fn smith_normal_form_in<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> SmithForm<R::Elem> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = identity(ring, rows);
    let mut right = identity(ring, cols);
    let mut right_inv = identity(ring, cols);
    let steps = rows.min(cols);
    let mut rank = 0;

    'outer: for t in 0..steps {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if ring.is_zero(&a[(i, j)]) {
                        continue;
                    }
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => ring.size(&a[(i, j)]) < ring.size(&a[(pi, pj)]),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'outer };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);
            right_inv.swap_rows(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if ring.is_zero(&a[(i, t)]) {
                    continue;
                }
                let (q, r) = ring.div_rem(&a[(i, t)], &a[(t, t)]);
                let nq = ring.neg(&q);
                row_axpy(ring, &mut a, i, t, &nq);
                row_axpy(ring, &mut left, i, t, &nq);
                dirty |= !ring.is_zero(&r);
            }
            for j in t + 1..cols {
                if ring.is_zero(&a[(t, j)]) {
                    continue;
                }
                let (q, r) = ring.div_rem(&a[(t, j)], &a[(t, t)]);
                let nq = ring.neg(&q);
                col_axpy(ring, &mut a, j, t, &nq);
                col_axpy(ring, &mut right, j, t, &nq);
                row_axpy(ring, &mut right_inv, t, j, &q);
                dirty |= !ring.is_zero(&r);
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !ring.divides(&a[(t, t)], &a[(i, j)])));
            if let Some(i) = offender {
                let one = ring.one();
                row_axpy(ring, &mut a, t, i, &one);
                row_axpy(ring, &mut left, t, i, &one);
                continue;
            }
            break;
        }
        let (_, unit) = ring.normalize(&a[(t, t)]);
        for j in 0..cols {
            a[(t, j)] = ring.mul(&unit, &a[(t, j)]);
        }
        for j in 0..rows {
            left[(t, j)] = ring.mul(&unit, &left[(t, j)]);
        }
        rank = t + 1;
    }

    let diagonal = (0..steps).map(|k| a[(k, k)].clone()).collect();
    SmithForm { diagonal, left, right, right_inv, rank }
}

/// Integer Smith normal form; the diagonal entries are nonnegative.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm<BigInt> {
    smith_normal_form_in(&Integers, m)
}

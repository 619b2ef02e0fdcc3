//! Real-root isolation for rational polynomials by Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::ring::{CoeffDomain, UniPoly};

/// Open interval `(lo, hi)` holding exactly one simple root, or the degenerate
/// `[x, x]` once refinement hits the root exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

pub struct Sturm {
    chain: Vec<UniPoly>,
}

fn sign(v: &BigRational) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

impl Sturm {
    pub fn new(p: &UniPoly) -> Self {
        let p = p.to_domain(CoeffDomain::Rational);
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            chain.push(r);
        }
        chain.pop();
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = sign(&p.eval_rational(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// A non-root point strictly inside `(a, b)`, near the midpoint.
fn split_point(p: &UniPoly, a: &BigRational, b: &BigRational) -> BigRational {
    let mut den = 2i64;
    loop {
        for num in 1..den {
            let t = BigRational::new(num.into(), den.into());
            let x = a + (b - a) * t;
            if !p.eval_rational(&x).is_zero() {
                return x;
            }
        }
        den += 1;
    }
}

/// Isolates the real roots of a square-free polynomial inside `(a, b)`, where
/// neither endpoint is a root. Intervals come back in increasing order with
/// non-root endpoints.
pub fn isolate(p: &UniPoly, a: &BigRational, b: &BigRational) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let m = split_point(p, &lo, &hi);
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Halves an isolating interval of a simple root.
pub fn refine(p: &UniPoly, iv: &mut RootInterval) {
    if iv.is_exact() {
        return;
    }
    let mid = (&iv.lo + &iv.hi) / BigInt::from(2);
    let sm = sign(&p.eval_rational(&mid));
    if sm == 0 {
        iv.lo = mid.clone();
        iv.hi = mid;
        return;
    }
    if sm == sign(&p.eval_rational(&iv.lo)) {
        iv.lo = mid;
    } else {
        iv.hi = mid;
    }
}

/// Refines until the width is at most `w`.
pub fn refine_to(p: &UniPoly, iv: &mut RootInterval, w: &BigRational) {
    while !iv.is_exact() && &iv.width() > w {
        refine(p, iv);
    }
}

//! Certified rational interval enclosures for π, cosines of rational angles
//! and their inverses.
//!
//! Endpoints are rationals rounded outward to a dyadic grid, so every result
//! provably contains the true real value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Entirely above zero.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Entirely below zero.
    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Widens to the enclosing interval with endpoints in `2^-bits Z`.
    pub fn round_out(&self, bits: u32) -> Interval {
        let s = BigRational::from_integer(pow2(bits));
        let lo = (&self.lo * &s).floor() / &s;
        let hi = (&self.hi * &s).ceil() / &s;
        Interval { lo, hi }
    }

    /// Interval hull of the two.
    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }
}

/// `atan(1/n)` from its alternating series, with the tail bounded by the
/// first omitted term.
fn atan_inv(n: i64, bits: u32) -> Interval {
    let n2 = BigInt::from(n * n);
    let mut power = BigInt::from(n);
    let mut sum = Interval::point(BigRational::zero());
    let eps = BigRational::new(BigInt::one(), pow2(bits + 8));
    let mut k: i64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &power);
        if term < eps {
            let tail = Interval::new(-term.clone(), term);
            return sum.add(&tail).round_out(bits + 4);
        }
        let t = Interval::point(term).round_out(bits + 8);
        sum = if k % 2 == 0 { sum.add(&t) } else { sum.sub(&t) };
        power *= &n2;
        k += 1;
    }
}

/// Enclosure of π of width about `2^-bits`.
pub fn pi(bits: u32) -> Interval {
    let a = atan_inv(5, bits + 6).scale(&rat(16, 1));
    let b = atan_inv(239, bits + 6).scale(&rat(4, 1));
    a.sub(&b).round_out(bits + 2)
}

/// `cos` on a nonnegative interval no wider than needed, by Taylor series
/// with a Lagrange remainder bound.
fn cos_taylor(theta: &Interval, bits: u32) -> Interval {
    debug_assert!(!theta.lo.is_negative());
    let x2 = theta.mul(theta).round_out(bits + 8);
    let bound = theta.hi.clone();
    let eps = BigRational::new(BigInt::one(), pow2(bits + 8));
    let mut term = Interval::point(BigRational::one());
    let mut sum = term.clone();
    // |x|^(2k) / (2k)! for the remainder
    let mut mag = BigRational::one();
    let mut k: i64 = 1;
    loop {
        let denom = rat((2 * k - 1) * (2 * k), 1);
        term = term.mul(&x2).scale(&(BigRational::one() / &denom)).round_out(bits + 8);
        mag = &mag * &bound * &bound / &denom;
        sum = if k % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        if mag < eps && k > 1 {
            let next = &mag * &bound * &bound / rat((2 * k + 1) * (2 * k + 2), 1);
            return sum.add(&Interval::new(-next.clone(), next)).round_out(bits + 4);
        }
        k += 1;
    }
}

/// Enclosure of `cos(2πq)` of width roughly `2^-bits`.
pub fn cos_2pi(q: &BigRational, bits: u32) -> Interval {
    let mut q = q - q.floor();
    if q > rat(1, 2) {
        q = BigRational::one() - q;
    }
    if q.is_zero() {
        return Interval::point(BigRational::one());
    }
    if q == rat(1, 2) {
        return Interval::point(-BigRational::one());
    }
    if q == rat(1, 4) {
        return Interval::point(BigRational::zero());
    }
    let (q, flip) = if q > rat(1, 4) { (rat(1, 2) - q, true) } else { (q, false) };
    let theta = pi(bits + 6).scale(&(q * BigInt::from(2)));
    let c = cos_taylor(&theta, bits + 4);
    let c = Interval::new(c.lo.max(-BigRational::one()), c.hi.min(BigRational::one()));
    if flip {
        c.neg()
    } else {
        c
    }
}

/// Enclosure of `2cos(2πq)`.
pub fn two_cos_2pi(q: &BigRational, bits: u32) -> Interval {
    cos_2pi(q, bits + 1).scale(&rat(2, 1))
}

/// Enclosure of `arccos(x/2) / 2π` for `x` in the closed interval, which must
/// lie inside `(-2, 2)`. The result is in `(0, 1/2)`; its width shrinks with
/// `bits` and with the width of `x`.
pub fn angle_of_two_cos(x: &Interval, bits: u32) -> Interval {
    assert!(x.lo > rat(-2, 1) && x.hi < rat(2, 1), "argument outside (-2, 2)");
    // The angle is decreasing in x: the largest x gives the smallest angle.
    let lo = bisect_angle(&x.hi, bits, true);
    let hi = bisect_angle(&x.lo, bits, false);
    Interval::new(lo, hi)
}

/// Certified one-sided bound for the angle `a` in `[0, 1/2]` with
/// `2cos(2πa) = c`. Returns a lower bound when `lower` is set, else an upper.
fn bisect_angle(c: &BigRational, bits: u32, lower: bool) -> BigRational {
    let mut lo = BigRational::zero();
    let mut hi = rat(1, 2);
    for step in 0..bits {
        let mid = (&lo + &hi) / BigInt::from(2);
        let v = two_cos_2pi(&mid, step + 16);
        if v.lo > *c {
            lo = mid;
        } else if v.hi < *c {
            hi = mid;
        } else {
            break;
        }
    }
    if lower {
        lo
    } else {
        hi
    }
}

/// Smallest `k` with `2^-k <= w`; `w` must be positive.
pub fn bits_for_width(w: &BigRational) -> u32 {
    let mut k = 0u32;
    let mut s = BigRational::one();
    while &s > w {
        s /= BigInt::from(2);
        k += 1;
    }
    k
}

/// Rational strictly between `a < b` with a small denominator.
pub fn simple_between(a: &BigRational, b: &BigRational) -> BigRational {
    assert!(a < b);
    let mut den = BigInt::one();
    loop {
        let n = (a * &den).floor().to_integer() + 1;
        let cand = BigRational::new(n, den.clone());
        if &cand > a && &cand < b {
            return cand;
        }
        den *= 2;
    }
}

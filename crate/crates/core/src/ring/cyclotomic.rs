//! Cyclotomic polynomials and Euler's totient.

use super::coeff::CoeffDomain;
use super::unipoly::UniPoly;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn t_pow_minus_one(m: u64) -> UniPoly {
    let z = CoeffDomain::Integer;
    UniPoly::monomial(z.one(), m as usize).sub(&UniPoly::one(z))
}

/// The `n`-th cyclotomic polynomial over the integers, from the Möbius
/// product `prod_{m | n} (t^m - 1)^{mu(n/m)}`.
pub fn cyclotomic(n: u64) -> UniPoly {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|m| n.is_multiple_of(*m)).collect();
    let mut num = UniPoly::one(CoeffDomain::Integer);
    let mut den = UniPoly::one(CoeffDomain::Integer);
    for &m in &divisors {
        match mobius(n / m) {
            1 => num = num.mul(&t_pow_minus_one(m)),
            -1 => den = den.mul(&t_pow_minus_one(m)),
            _ => {}
        }
    }
    // den is monic up to sign; make it monic before exact division.
    if den.leading().is_some_and(|l| l.signum().is_lt()) {
        den = den.neg();
        num = num.neg();
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

//! Abelian ρ⁽²⁾-invariants of zero-surgery on a knot: the finite sum of
//! Levine–Tristram signatures over `d`-th roots of unity, the normalized
//! integral of the signature function, and the universal Cheeger–Gromov bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::interval::Interval;
use crate::seifert::{RootOfUnity, SeifertMatrix, SignatureProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoKind {
    FiniteSum,
    Integral,
}

/// A ρ value: exact when rational, and always enclosed by `interval`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoValue {
    pub kind: RhoKind,
    pub exact: Option<BigRational>,
    pub interval: Interval,
    /// False when some summand sat at a root of Δ.
    pub regular: bool,
}

impl RhoValue {
    fn exact(kind: RhoKind, v: BigRational, regular: bool) -> Self {
        RhoValue { kind, interval: Interval::point(v.clone()), exact: Some(v), regular }
    }

    /// The exact value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.exact.as_ref().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }
}

/// `Σ_{r=0}^{d-1} σ(e^{2πi r/d})` from a precomputed signature profile.
pub fn rho_finite_with(profile: &SignatureProfile, d: u64) -> RhoValue {
    assert!(d >= 1, "order must be positive");
    let terms: Vec<(i64, bool)> = (0..d)
        .into_par_iter()
        .map(|r| {
            let s = profile.value(RootOfUnity { d, r });
            (s.value, s.regular)
        })
        .collect();
    let sum: i64 = terms.iter().map(|t| t.0).sum();
    let regular = terms.iter().all(|t| t.1);
    RhoValue::exact(RhoKind::FiniteSum, BigRational::from_integer(sum.into()), regular)
}

/// `Σ_{r=0}^{d-1} σ(e^{2πi r/d})`, including the vanishing `r = 0` term.
pub fn rho_finite(k: &SeifertMatrix, d: u64) -> RhoValue {
    if d == 1 || k.is_unknot_matrix() {
        return RhoValue::exact(RhoKind::FiniteSum, BigRational::zero(), true);
    }
    rho_finite_with(&k.profile(), d)
}

/// `∫ σ(ω) dω` over the circle normalized to total measure 1.
///
/// By conjugation symmetry this is `2 Σ_k σ_k |arc_k|` over the upper half
/// circle. The value is exact when every jump is at a root of unity;
/// otherwise the enclosure is refined below `tolerance`.
pub fn rho_integral(k: &SeifertMatrix, tolerance: &BigRational) -> RhoValue {
    if k.is_unknot_matrix() {
        return RhoValue::exact(RhoKind::Integral, BigRational::zero(), true);
    }
    rho_integral_with(&k.profile(), tolerance)
}

pub fn rho_integral_with(profile: &SignatureProfile, tolerance: &BigRational) -> RhoValue {
    let values = profile.arc_values();
    let n = profile.roots().len();
    // Σ_k σ_k (a_{k+1} - a_k) with a_0 = 0, a_{n+1} = 1/2 rearranges to
    // σ_n/2 + Σ_{k=1..n} a_k (σ_{k-1} - σ_k).
    let half = BigRational::new(1.into(), 2.into());
    let base = BigRational::from_integer(values[n].into()) * &half;
    let weights: Vec<BigRational> =
        (1..=n).map(|k| BigRational::from_integer((values[k - 1] - values[k]).into())).collect();
    let two = BigRational::from_integer(2.into());

    if profile.all_roots_exact() {
        let mut total = base;
        for (k, w) in weights.iter().enumerate() {
            total += w * profile.root_angle(k, 0).lo;
        }
        return RhoValue::exact(RhoKind::Integral, total * two, true);
    }

    let weight_sum: BigRational = weights.iter().map(abs).fold(BigRational::one(), |a, b| a + b);
    let per_root = tolerance / (weight_sum * BigInt::from(4));
    let mut bits = crate::interval::bits_for_width(&per_root) + 2;
    loop {
        let mut acc = Interval::point(base.clone());
        for (k, w) in weights.iter().enumerate() {
            acc = acc.add(&profile.root_angle(k, bits).scale(w));
        }
        let acc = acc.scale(&two);
        if &acc.width() <= tolerance {
            return RhoValue { kind: RhoKind::Integral, exact: None, interval: acc, regular: true };
        }
        bits += 8;
    }
}

fn abs(q: &BigRational) -> BigRational {
    if q < &BigRational::zero() {
        -q.clone()
    } else {
        q.clone()
    }
}

/// The Cheeger–Gromov constant for zero-surgery on a knot with `c` crossings.
pub const CHEEGER_GROMOV_FACTOR: u64 = 69_713_280;

pub fn cheeger_gromov_bound(crossing_number: u64) -> BigInt {
    BigInt::from(CHEEGER_GROMOV_FACTOR) * BigInt::from(crossing_number)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::library;

    fn tol() -> BigRational {
        BigRational::new(1.into(), BigInt::from(1u64 << 30))
    }

    #[test]
    fn finite_sums() {
        let t = library::trefoil();
        assert_eq!(rho_finite(&t, 3).as_integer(), Some((-4).into()));
        assert!(rho_finite(&t, 3).regular);
        assert_eq!(rho_finite(&t, 1).as_integer(), Some(0.into()));
        assert!(!rho_finite(&t, 6).regular);
        let e = library::figure_eight();
        for d in 1..=12 {
            assert_eq!(rho_finite(&e, d).as_integer(), Some(0.into()));
        }
        assert_eq!(rho_finite(&library::mirror_trefoil(), 3).as_integer(), Some(4.into()));
    }

    #[test]
    fn integrals() {
        let t = library::trefoil();
        let v = rho_integral(&t, &tol());
        assert_eq!(v.exact, Some(BigRational::new((-4).into(), 3.into())));
        let s = t.connected_sum(&t.mirror());
        assert_eq!(rho_integral(&s, &tol()).exact, Some(BigRational::zero()));
        assert_eq!(rho_integral(&SeifertMatrix::unknot(), &tol()).exact, Some(BigRational::zero()));
    }

    #[test]
    fn integral_with_algebraic_jump() {
        // 5_2: σ = -2 beyond arccos(3/4)/2π, so ∫ = -2 (1 - 2a).
        let k = library::twist(-2);
        let v = rho_integral(&k, &tol());
        assert!(v.exact.is_none());
        let a = (0.75f64).acos() / (2.0 * std::f64::consts::PI);
        let expect = -2.0 * (1.0 - 2.0 * a);
        use num_traits::ToPrimitive;
        let (lo, hi) = (v.interval.lo.to_f64().unwrap(), v.interval.hi.to_f64().unwrap());
        assert!(lo - 1e-9 <= expect && expect <= hi + 1e-9);
        assert!(v.interval.width() <= tol());
    }

    #[test]
    fn cheeger_gromov() {
        assert_eq!(cheeger_gromov_bound(3), BigInt::from(209_139_840u64));
        assert_eq!(cheeger_gromov_bound(0), BigInt::zero());
        assert_eq!(cheeger_gromov_bound(10), BigInt::from(697_132_800u64));
    }
}

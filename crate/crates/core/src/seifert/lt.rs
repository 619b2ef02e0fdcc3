//! Levine–Tristram signatures `σ(ω) = sign((1-ω)A + (1-ω̄)A^T)` on the unit
//! circle.
//!
//! The signature is constant on the arcs cut out by the unit-circle roots of
//! Δ. Those roots are found as real roots of the trace polynomial `Q` with
//! `Δ(t) = Q(t + t^-1)`, and each arc is evaluated exactly at a point
//! `e^{iθ}` whose half-angle has rational tangent, where the Hermitian form is
//! a positive multiple of a matrix over `Q(i)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::hermitian::{inertia, GaussRat};
use super::roots::{isolate, refine, refine_to, RootInterval};
use super::SeifertMatrix;
use crate::interval::{angle_of_two_cos, two_cos_2pi, Interval};
use crate::ring::{cyclotomic, euler_phi, CoeffDomain, Matrix, UniPoly};

/// `ω = e^{2πi r/d}`, kept unreduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    pub d: u64,
    pub r: u64,
}

impl RootOfUnity {
    /// `None` unless `d >= 1` and `r < d`.
    pub fn new(d: u64, r: u64) -> Option<Self> {
        (d >= 1 && r < d).then_some(RootOfUnity { d, r })
    }

    /// The angle `r/d` as a fraction of a full turn.
    pub fn turn(&self) -> BigRational {
        BigRational::new(BigInt::from(self.r), BigInt::from(self.d))
    }

    /// Multiplicative order of ω.
    pub fn order(&self) -> u64 {
        self.d / self.r.gcd(&self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LtSignature {
    pub value: i64,
    pub regular: bool,
}

/// Where a unit-circle root of Δ sits, as a fraction of a turn in `(0, 1/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootAngle {
    /// `e^{2πi k/n}`, a root of unity.
    Exact(BigRational),
    /// Not a root of unity; located through its trace `t + t^-1`.
    Algebraic,
}

#[derive(Clone, Debug)]
pub struct CircleRoot {
    /// Isolating interval for `t + t^-1`.
    pub trace: RootInterval,
    pub angle: RootAngle,
}

/// The full signature function of one Seifert matrix: the roots of Δ on the
/// upper half circle in increasing angle and the value on each arc between
/// them (`arc_values.len() == roots.len() + 1`; the last arc contains -1).
#[derive(Clone, Debug)]
pub struct SignatureProfile {
    trace_poly: UniPoly,
    roots: Vec<CircleRoot>,
    arc_values: Vec<i64>,
    cyclotomic_orders: Vec<u64>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Trace polynomial: `Q(t + t^-1) = Δ(t)` for symmetric `Δ = Σ c_j t^j`.
pub fn trace_polynomial(delta_coeffs: &[(i64, BigInt)]) -> UniPoly {
    let dom = CoeffDomain::Rational;
    let x = UniPoly::x(dom);
    let top = delta_coeffs.iter().map(|(e, _)| *e).max().unwrap_or(0).max(0);
    // V_0 = 2, V_1 = x, V_{j+1} = x V_j - V_{j-1}
    let mut v = vec![UniPoly::constant(dom.from_i64(2)), x.clone()];
    for j in 1..top as usize {
        let next = x.mul(&v[j]).sub(&v[j - 1]);
        v.push(next);
    }
    let mut acc = UniPoly::zero(dom);
    for (e, c) in delta_coeffs {
        let c = dom.from_bigint(c);
        if *e == 0 {
            acc = acc.add(&UniPoly::constant(c));
        } else if *e > 0 {
            acc = acc.add(&v[*e as usize].scale(&c));
        }
    }
    acc
}

/// `(u - iv)A + (u + iv)A^T`, a positive multiple of the Levine–Tristram form
/// at the ω with `e^{iθ/2} ∝ v + iu`.
fn hermitian_at(a: &Matrix<BigInt>, u: &BigInt, v: &BigInt) -> Matrix<GaussRat> {
    let n = a.rows();
    let c = |re: &BigInt, im: &BigInt| {
        Complex::new(BigRational::from_integer(re.clone()), BigRational::from_integer(im.clone()))
    };
    Matrix::from_fn(n, n, |i, j| {
        let x = &a[(i, j)];
        let y = &a[(j, i)];
        c(&(u * x + u * y), &(v * y - v * x))
    })
}

/// `t + t^-1` at the sample point for half-angle ratio `k = u/v`.
fn trace_at_ratio(k: &BigRational) -> BigRational {
    let k2 = k * k;
    (BigRational::one() - &k2) * q(2) / (BigRational::one() + k2)
}

/// Rational `k >= 0` whose sample trace lies strictly inside `(lo, hi)`.
fn ratio_inside(lo: &BigRational, hi: &BigRational) -> BigRational {
    let mut a = BigRational::zero();
    let mut b = BigRational::one();
    while trace_at_ratio(&b) > *lo {
        b *= q(2);
    }
    loop {
        let m = (&a + &b) / q(2);
        let x = trace_at_ratio(&m);
        if x >= *hi {
            a = m;
        } else if x <= *lo {
            b = m;
        } else {
            return m;
        }
    }
}

/// Orders `n >= 3` whose cyclotomic polynomial divides `p`.
fn cyclotomic_orders(p: &UniPoly) -> Vec<u64> {
    let deg = p.degree().unwrap_or(0) as u64;
    if deg < 2 {
        return Vec::new();
    }
    let pz = p.to_domain(CoeffDomain::Rational);
    // phi(n) >= sqrt(n/2) bounds the search.
    let limit = 2 * deg * deg + 2;
    (3..=limit)
        .filter(|&n| euler_phi(n) <= deg)
        .filter(|&n| cyclotomic(n).to_domain(CoeffDomain::Rational).divides(&pz))
        .collect()
}

impl SignatureProfile {
    pub fn new(k: &SeifertMatrix) -> Self {
        let delta = k.alexander_poly();
        let coeffs: Vec<(i64, BigInt)> =
            delta.terms().map(|(e, c)| (e[0], c.to_bigint().expect("integer Δ"))).collect();
        let trace_poly = trace_polynomial(&coeffs);
        let sqf = if trace_poly.degree().unwrap_or(0) == 0 { trace_poly.clone() } else { trace_poly.squarefree() };
        let (_, p) = delta.to_unipoly();
        let cyclotomic_orders = cyclotomic_orders(&p);

        // Increasing x means decreasing angle, so reverse.
        let mut intervals = isolate(&sqf, &q(-2), &q(2));
        intervals.reverse();
        let mut roots: Vec<CircleRoot> =
            intervals.into_iter().map(|trace| CircleRoot { trace, angle: RootAngle::Algebraic }).collect();

        for &n in &cyclotomic_orders {
            for kk in 1..=(n / 2) {
                if kk.gcd(&n) != 1 || 2 * kk == n {
                    continue;
                }
                let turn = BigRational::new(BigInt::from(kk), BigInt::from(n));
                let idx = match_root(&sqf, &mut roots, &turn);
                roots[idx].angle = RootAngle::Exact(turn);
            }
        }

        // Separate neighbouring intervals so every arc has interior room.
        for i in 0..roots.len().saturating_sub(1) {
            while roots[i + 1].trace.hi >= roots[i].trace.lo {
                let (a, b) = roots.split_at_mut(i + 1);
                refine(&sqf, &mut a[i].trace);
                refine(&sqf, &mut b[0].trace);
            }
        }

        if let Some(first) = roots.first_mut() {
            while first.trace.hi >= q(2) {
                refine(&sqf, &mut first.trace);
            }
        }

        let a = k.matrix();
        let mut arc_values = Vec::with_capacity(roots.len() + 1);
        for i in 0..=roots.len() {
            let (u, v) = if i == roots.len() {
                (BigInt::one(), BigInt::zero())
            } else {
                let hi = if i == 0 { q(2) } else { roots[i - 1].trace.lo.clone() };
                let lo = roots[i].trace.hi.clone();
                let ratio = ratio_inside(&lo, &hi);
                (ratio.numer().clone(), ratio.denom().clone())
            };
            arc_values.push(inertia(&hermitian_at(a, &u, &v)).signature());
        }
        SignatureProfile { trace_poly: sqf, roots, arc_values, cyclotomic_orders }
    }

    pub fn roots(&self) -> &[CircleRoot] {
        &self.roots
    }

    pub fn arc_values(&self) -> &[i64] {
        &self.arc_values
    }

    /// Orders of the roots of unity at which Δ vanishes.
    pub fn cyclotomic_orders(&self) -> &[u64] {
        &self.cyclotomic_orders
    }

    /// True when all circle roots are roots of unity.
    pub fn all_roots_exact(&self) -> bool {
        self.roots.iter().all(|r| matches!(r.angle, RootAngle::Exact(_)))
    }

    /// Enclosure of root `i`'s angle as a fraction of a turn.
    pub fn root_angle(&self, i: usize, bits: u32) -> Interval {
        match &self.roots[i].angle {
            RootAngle::Exact(t) => Interval::point(t.clone()),
            RootAngle::Algebraic => {
                let mut iv = self.roots[i].trace.clone();
                let w = BigRational::new(BigInt::one(), BigInt::one() << (bits + 2));
                refine_to(&self.trace_poly, &mut iv, &w);
                angle_of_two_cos(&Interval::new(iv.lo, iv.hi), bits + 2)
            }
        }
    }

    /// Compares the angle `turn` in `(0, 1/2]` with root `i`.
    fn compare(&self, turn: &BigRational, i: usize) -> Ordering {
        match &self.roots[i].angle {
            RootAngle::Exact(t) => turn.cmp(t),
            RootAngle::Algebraic => {
                let mut iv = self.roots[i].trace.clone();
                let mut bits = 32u32;
                loop {
                    let c = two_cos_2pi(turn, bits);
                    if c.lo > iv.hi {
                        return Ordering::Less;
                    }
                    if c.hi < iv.lo {
                        return Ordering::Greater;
                    }
                    let w = BigRational::new(BigInt::one(), BigInt::one() << bits);
                    refine_to(&self.trace_poly, &mut iv, &w);
                    bits *= 2;
                }
            }
        }
    }

    /// σ at `e^{2πi·turn}` for rational `turn`.
    pub fn value_at_turn(&self, turn: &BigRational) -> LtSignature {
        let mut t = turn - turn.floor();
        if t > BigRational::new(1.into(), 2.into()) {
            t = BigRational::one() - t;
        }
        if t.is_zero() {
            return LtSignature { value: 0, regular: true };
        }
        let order = t.denom().to_u64().expect("order fits in u64");
        let regular = !self.cyclotomic_orders.contains(&order);
        let mut below = 0;
        for i in 0..self.roots.len() {
            match self.compare(&t, i) {
                Ordering::Greater => below = i + 1,
                Ordering::Equal => {
                    debug_assert!(!regular);
                    let v = (self.arc_values[i] + self.arc_values[i + 1]) / 2;
                    return LtSignature { value: v, regular: false };
                }
                Ordering::Less => break,
            }
        }
        debug_assert!(regular);
        LtSignature { value: self.arc_values[below], regular }
    }

    pub fn value(&self, w: RootOfUnity) -> LtSignature {
        self.value_at_turn(&w.turn())
    }
}

/// Index of the root whose trace is `2cos(2π turn)`; refines the intervals
/// until exactly one overlaps the enclosure.
fn match_root(p: &UniPoly, roots: &mut [CircleRoot], turn: &BigRational) -> usize {
    let mut bits = 32u32;
    loop {
        let c = two_cos_2pi(turn, bits);
        let hits: Vec<usize> =
            (0..roots.len()).filter(|&i| roots[i].trace.lo <= c.hi && c.lo <= roots[i].trace.hi).collect();
        if hits.len() == 1 {
            return hits[0];
        }
        assert!(!hits.is_empty(), "cyclotomic root missing from isolation");
        let w = BigRational::new(BigInt::one(), BigInt::one() << bits);
        for &i in &hits {
            refine_to(p, &mut roots[i].trace, &w);
        }
        bits *= 2;
    }
}

/// σ(ω) with a regularity flag; see [`SignatureProfile`] for bulk use.
pub fn lt_signature(k: &SeifertMatrix, w: RootOfUnity) -> LtSignature {
    if w.r == 0 || k.is_unknot_matrix() {
        return LtSignature { value: 0, regular: true };
    }
    k.profile().value(w)
}

//! Dense univariate polynomials over a [`CoeffDomain`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::{CoeffDomain, Coefficient};
use super::euclid::EuclideanRing;

/// Dense polynomial, coefficients in ascending degree. The coefficient vector
/// never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    domain: CoeffDomain,
    coeffs: Vec<Coefficient>,
}

impl UniPoly {
    pub fn zero(domain: CoeffDomain) -> Self {
        UniPoly { domain, coeffs: Vec::new() }
    }

    pub fn one(domain: CoeffDomain) -> Self {
        Self::constant(domain.one())
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::from_coeffs(c.domain(), vec![c])
    }

    /// `x`
    pub fn x(domain: CoeffDomain) -> Self {
        Self::monomial(domain.one(), 1)
    }

    pub fn monomial(c: Coefficient, deg: usize) -> Self {
        let domain = c.domain();
        let mut coeffs = vec![domain.zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(domain, coeffs)
    }

    pub fn from_coeffs(domain: CoeffDomain, coeffs: Vec<Coefficient>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c.to_domain(domain)).collect();
        let mut p = UniPoly { domain, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(domain: CoeffDomain, coeffs: &[i64]) -> Self {
        Self::from_coeffs(domain, coeffs.iter().map(|&c| domain.from_i64(c)).collect())
    }

    pub fn from_bigints(domain: CoeffDomain, coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(domain, coeffs.iter().map(|c| domain.from_bigint(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Coefficient {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Coefficient> {
        self.coeffs.last()
    }

    /// Multiplicity of `x` as a factor (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn to_domain(&self, domain: CoeffDomain) -> Self {
        Self::from_coeffs(domain, self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let domain = self.domain.join(other.domain);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::from_coeffs(domain, coeffs)
    }

    pub fn neg(&self) -> Self {
        UniPoly { domain: self.domain, coeffs: self.coeffs.iter().map(Coefficient::neg).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let domain = self.domain.join(other.domain);
        if self.is_zero() || other.is_zero() {
            return Self::zero(domain);
        }
        let mut out = vec![domain.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(domain, out)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let domain = self.domain.join(c.domain());
        Self::from_coeffs(domain, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.domain.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { domain: self.domain, coeffs }
    }

    /// Removes the largest power of `x` dividing `self`.
    pub fn strip_x_power(&self) -> Self {
        let v = self.valuation();
        UniPoly { domain: self.domain, coeffs: self.coeffs[v..].to_vec() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.domain);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Coefficient) -> Coefficient {
        let mut acc = self.domain.join(x.domain()).zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::from_integer(0.into());
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_rational().expect("rational coefficients");
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&self.domain.from_i64(i as i64))).collect();
        Self::from_coeffs(self.domain, coeffs)
    }

    /// Euclidean division over a field. For integer polynomials the divisor
    /// must be monic (or the quotient must stay integral).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let domain = self.domain.join(divisor.domain);
        let mut rem = self.to_domain(domain).coeffs;
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().to_domain(domain);
        let lead_inv = lead.inv();
        if rem.len() <= dd {
            return (Self::zero(domain), Self::from_coeffs(domain, rem));
        }
        let mut quot = vec![domain.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = match &lead_inv {
                Some(inv) => top.mul(inv),
                None => exact_int_div(&top, &lead),
            };
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&q.mul(dc));
            }
            quot[k] = q;
        }
        (Self::from_coeffs(domain, quot), Self::from_coeffs(domain, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Scales a nonzero field polynomial to leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is a unit")),
        }
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part over a field of characteristic zero.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

fn exact_int_div(a: &Coefficient, b: &Coefficient) -> Coefficient {
    match (a, b) {
        (Coefficient::Integer(x), Coefficient::Integer(y)) => {
            assert!((x % y) == BigInt::from(0), "inexact integer polynomial division");
            Coefficient::Integer(x / y)
        }
        _ => a.div(b),
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomials over a field, as a Euclidean ring (norm = degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub domain: CoeffDomain,
}

impl EuclideanRing for PolyRing {
    type Elem = UniPoly;
    type Size = usize;

    fn zero(&self) -> UniPoly {
        UniPoly::zero(self.domain)
    }
    fn one(&self) -> UniPoly {
        UniPoly::one(self.domain)
    }
    fn is_zero(&self, a: &UniPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.add(b)
    }
    fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.sub(b)
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.mul(b)
    }
    fn div_rem(&self, a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
        a.div_rem(b)
    }
    fn size(&self, a: &UniPoly) -> usize {
        a.degree().unwrap_or(0)
    }
    fn normalize(&self, a: &UniPoly) -> (UniPoly, UniPoly) {
        match a.leading() {
            None => (a.clone(), self.one()),
            Some(l) => {
                let u = UniPoly::constant(l.inv().expect("field coefficient"));
                (a.mul(&u), u)
            }
        }
    }
    fn is_unit(&self, a: &UniPoly) -> bool {
        a.degree() == Some(0)
    }
}

//! Multivariate Laurent polynomials with exact coefficients.
//!
//! These carry Alexander polynomials and the level-one (abelian) group rings,
//! where multiplication is commutative.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::coeff::{CoeffDomain, Coefficient};
use super::unipoly::UniPoly;
use super::RingError;

/// Terms are keyed by exponent vectors in lexicographic order, so equal
/// polynomials have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vec<String>,
    domain: CoeffDomain,
    terms: BTreeMap<Vec<i64>, Coefficient>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str], domain: CoeffDomain) -> Self {
        LaurentPoly { vars: vars.iter().map(|s| s.to_string()).collect(), domain, terms: BTreeMap::new() }
    }

    pub fn zero_in(vars: Vec<String>, domain: CoeffDomain) -> Self {
        LaurentPoly { vars, domain, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Coefficient) -> Self {
        let mut p = Self::zero(vars, c.domain());
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &[&str], domain: CoeffDomain) -> Self {
        Self::constant(vars, domain.one())
    }

    /// `c * prod(vars[i]^exps[i])`
    pub fn monomial(vars: &[&str], exps: Vec<i64>, c: Coefficient) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut p = Self::zero(vars, c.domain());
        p.add_term(exps, c);
        p
    }

    pub fn monomial_in(vars: Vec<String>, exps: Vec<i64>, c: Coefficient) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut p = Self::zero_in(vars, c.domain());
        p.add_term(exps, c);
        p
    }

    /// The single variable `name` as a one-variable polynomial.
    pub fn var(name: &str, domain: CoeffDomain) -> Self {
        Self::monomial(&[name], vec![1], domain.one())
    }

    /// One-variable polynomial `sum c_i t^(low + i)`.
    pub fn from_coeffs(var: &str, low: i64, coeffs: &[BigInt], domain: CoeffDomain) -> Self {
        let mut p = Self::zero(&[var], domain);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![low + i as i64], domain.from_bigint(c));
        }
        p
    }

    pub fn from_unipoly(var: &str, shift: i64, poly: &UniPoly) -> Self {
        let mut p = Self::zero(&[var], poly.domain());
        for (i, c) in poly.coeffs().iter().enumerate() {
            p.add_term(vec![shift + i as i64], c.clone());
        }
        p
    }

    fn add_term(&mut self, exps: Vec<i64>, c: Coefficient) {
        let c = c.to_domain(self.domain);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// Nonzero single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, exps: &[i64]) -> Coefficient {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn to_domain(&self, domain: CoeffDomain) -> Self {
        let mut p = Self::zero_in(self.vars.clone(), domain);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.to_domain(domain));
        }
        p
    }

    /// Re-expresses `self` over `vars`, which must contain all of its variables.
    pub fn with_vars(&self, vars: &[String]) -> Self {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing from target list"))
            .collect();
        let mut p = Self::zero_in(vars.to_vec(), self.domain);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (k, &x) in e.iter().enumerate() {
                ne[idx[k]] = x;
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let domain = self.domain.join(other.domain);
        if self.vars == other.vars {
            return (self.to_domain(domain), other.to_domain(domain));
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (self.with_vars(&vars).to_domain(domain), other.with_vars(&vars).to_domain(domain))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.unify(other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = c.neg();
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        let mut p = Self::zero_in(a.vars.clone(), a.domain);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                p.add_term(e, ca.mul(cb));
            }
        }
        p
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut p = Self::zero_in(self.vars.clone(), self.domain.join(c.domain()));
        for (e, a) in &self.terms {
            p.add_term(e.clone(), a.mul(c));
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::zero_in(self.vars.clone(), self.domain);
        acc.add_term(vec![0; self.vars.len()], self.domain.one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates every variable; values must be units (nonzero).
    pub fn eval(&self, values: &[Coefficient]) -> Result<Coefficient, RingError> {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        if let Some(k) = values.iter().position(Coefficient::is_zero) {
            return Err(RingError::InvalidUnit(self.vars[k].clone()));
        }
        let dom = values.iter().fold(self.domain, |d, v| d.join(v.domain()));
        let mut acc = dom.zero();
        for (e, c) in &self.terms {
            let mut term = c.to_domain(dom);
            for (k, &x) in e.iter().enumerate() {
                term = term.mul(&values[k].to_domain(dom).pow(x).expect("unit"));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluates all variables at 1 (the augmentation).
    pub fn augmentation(&self) -> Coefficient {
        self.terms.values().fold(self.domain.zero(), |acc, c| acc.add(c))
    }

    /// Substitutes the constant `value` for one variable, keeping the others.
    pub fn substitute(&self, var: &str, value: &Coefficient) -> Result<Self, RingError> {
        if value.is_zero() {
            return Err(RingError::InvalidUnit(var.to_string()));
        }
        let Some(k) = self.vars.iter().position(|v| v == var) else {
            return Ok(self.clone());
        };
        let dom = self.domain.join(value.domain());
        let mut p = Self::zero_in(self.vars.clone(), dom);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let f = value.to_domain(dom).pow(ne[k]).expect("unit");
            ne[k] = 0;
            p.add_term(ne, c.mul(&f));
        }
        Ok(p)
    }

    /// `t -> t^{-1}` in one variable.
    pub fn invert_var(&self, var: &str) -> Self {
        let Some(k) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let mut p = Self::zero_in(self.vars.clone(), self.domain);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[k] = -ne[k];
            p.add_term(ne, c.clone());
        }
        p
    }

    /// `x_i -> x_i^{-1}` for every variable.
    pub fn conjugate(&self) -> Self {
        let mut p = Self::zero_in(self.vars.clone(), self.domain);
        for (e, c) in &self.terms {
            p.add_term(e.iter().map(|x| -x).collect(), c.clone());
        }
        p
    }

    /// Monomial substitution `x_i -> prod_j y_j^{images[i][j]}` into new variables.
    pub fn map_monomials(&self, images: &[Vec<i64>], new_vars: &[String]) -> Self {
        assert_eq!(images.len(), self.vars.len());
        let mut p = Self::zero_in(new_vars.to_vec(), self.domain);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_vars.len()];
            for (i, &x) in e.iter().enumerate() {
                for (j, &y) in images[i].iter().enumerate() {
                    ne[j] += x * y;
                }
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    fn single_var_index(&self) -> usize {
        assert_eq!(self.vars.len(), 1, "operation needs a one-variable polynomial");
        0
    }

    /// Lowest and highest exponent of a one-variable polynomial.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        let k = self.single_var_index();
        let lo = self.terms.keys().map(|e| e[k]).min()?;
        let hi = self.terms.keys().map(|e| e[k]).max()?;
        Some((lo, hi))
    }

    /// Span degree (top exponent minus bottom exponent), 0 for zero.
    pub fn span(&self) -> i64 {
        self.exponent_range().map_or(0, |(lo, hi)| hi - lo)
    }

    pub fn top_coefficient(&self) -> Option<Coefficient> {
        let (_, hi) = self.exponent_range()?;
        Some(self.coeff(&[hi]))
    }

    pub fn bottom_coefficient(&self) -> Option<Coefficient> {
        let (lo, _) = self.exponent_range()?;
        Some(self.coeff(&[lo]))
    }

    /// Writes a one-variable polynomial as `t^shift * poly` with `poly(0) != 0`.
    pub fn to_unipoly(&self) -> (i64, UniPoly) {
        match self.exponent_range() {
            None => (0, UniPoly::zero(self.domain)),
            Some((lo, hi)) => {
                let coeffs = (lo..=hi).map(|e| self.coeff(&[e])).collect();
                (lo, UniPoly::from_coeffs(self.domain, coeffs))
            }
        }
    }

    /// `p(t^{-1}) == p(t)` in one variable.
    pub fn is_symmetric(&self) -> bool {
        let k = self.single_var_index();
        self.invert_var(&self.vars[k].clone()) == *self
    }
}

fn fmt_monomial(vars: &[String], e: &[i64]) -> String {
    let mut parts = Vec::new();
    for (v, &x) in vars.iter().zip(e) {
        match x {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{x}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
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
            let mono = fmt_monomial(&self.vars, e);
            match (mono.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

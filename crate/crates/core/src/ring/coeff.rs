//! Exact scalar coefficients: arbitrary-precision integers, reduced rationals
//! and residues modulo a prime.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RingError;

/// The ring a [`Coefficient`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffDomain {
    Integer,
    Rational,
    ModP(u64),
}

/// A coefficient field, the target of rank and localization computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    ModP(u64),
}

impl FieldKind {
    /// Validated constructor for `Z/p`.
    pub fn mod_p(p: u64) -> Result<Self, RingError> {
        if is_prime(p) {
            Ok(FieldKind::ModP(p))
        } else {
            Err(RingError::InvalidPrime(p))
        }
    }

    pub fn validate(self) -> Result<Self, RingError> {
        match self {
            FieldKind::Rationals => Ok(self),
            FieldKind::ModP(p) => FieldKind::mod_p(p),
        }
    }

    pub fn domain(self) -> CoeffDomain {
        match self {
            FieldKind::Rationals => CoeffDomain::Rational,
            FieldKind::ModP(p) => CoeffDomain::ModP(p),
        }
    }

    /// Parses `q` / `Q` / `rationals` or `zp:7` / `mod7` / `z7`.
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rationals" || t == "rational" {
            return Ok(FieldKind::Rationals);
        }
        let digits = t
            .strip_prefix("zp:")
            .or_else(|| t.strip_prefix("mod_p:"))
            .or_else(|| t.strip_prefix("mod"))
            .or_else(|| t.strip_prefix("z"));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => FieldKind::mod_p(p),
            None => Err(RingError::Parse(format!("unknown coefficient field `{s}`"))),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::ModP(p) => write!(f, "Z/{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3u64;
    while q.saturating_mul(q) <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

/// An exact scalar.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed by
/// `BigRational`); residues always lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Integer(BigInt),
    Rational(BigRational),
    ModP { residue: u64, p: u64 },
}

impl CoeffDomain {
    pub fn zero(self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Coefficient {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(self, v: &BigInt) -> Coefficient {
        match self {
            CoeffDomain::Integer => Coefficient::Integer(v.clone()),
            CoeffDomain::Rational => Coefficient::Rational(BigRational::from_integer(v.clone())),
            CoeffDomain::ModP(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Coefficient::ModP { residue: r.to_u64().unwrap_or(0), p }
            }
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoeffDomain::Integer)
    }

    /// The domain both operands can be coerced into. Integers widen to the
    /// other side; two different primes do not mix.
    pub fn join(self, other: CoeffDomain) -> CoeffDomain {
        match (self, other) {
            (a, b) if a == b => a,
            (CoeffDomain::Integer, b) => b,
            (a, CoeffDomain::Integer) => a,
            (CoeffDomain::Rational, CoeffDomain::ModP(p)) | (CoeffDomain::ModP(p), CoeffDomain::Rational) => {
                CoeffDomain::ModP(p)
            }
            (a, b) => panic!("incompatible coefficient domains {a:?} and {b:?}"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % p) as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

impl Coefficient {
    pub fn domain(&self) -> CoeffDomain {
        match self {
            Coefficient::Integer(_) => CoeffDomain::Integer,
            Coefficient::Rational(_) => CoeffDomain::Rational,
            Coefficient::ModP { p, .. } => CoeffDomain::ModP(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Integer(v) => v.is_zero(),
            Coefficient::Rational(v) => v.is_zero(),
            Coefficient::ModP { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Integer(v) => v.is_one(),
            Coefficient::Rational(v) => v.is_one(),
            Coefficient::ModP { residue, .. } => *residue == 1,
        }
    }

    /// Coerces into `target`. Rationals reduce mod p only when the
    /// denominator is invertible.
    pub fn to_domain(&self, target: CoeffDomain) -> Coefficient {
        match (self, target) {
            (c, t) if c.domain() == t => c.clone(),
            (Coefficient::Integer(v), t) => t.from_bigint(v),
            (Coefficient::Rational(v), CoeffDomain::ModP(p)) => {
                let n = CoeffDomain::ModP(p).from_bigint(v.numer());
                let d = CoeffDomain::ModP(p).from_bigint(v.denom());
                n.mul(&d.inv().expect("denominator divisible by p"))
            }
            (Coefficient::Rational(v), CoeffDomain::Integer) if v.is_integer() => Coefficient::Integer(v.to_integer()),
            (c, t) => panic!("cannot coerce {c:?} into {t:?}"),
        }
    }

    fn coerce_pair(&self, other: &Coefficient) -> (Coefficient, Coefficient) {
        let d = self.domain().join(other.domain());
        (self.to_domain(d), other.to_domain(d))
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Integer(a), Coefficient::Integer(b)) => Coefficient::Integer(a + b),
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (Coefficient::ModP { residue: a, p }, Coefficient::ModP { residue: b, p: q }) => {
                assert_eq!(p, q, "mixing residues modulo different primes");
                Coefficient::ModP { residue: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => {
                let (a, b) = self.coerce_pair(other);
                a.add(&b)
            }
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Integer(a) => Coefficient::Integer(-a),
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::ModP { residue, p } => {
                Coefficient::ModP { residue: if *residue == 0 { 0 } else { p - residue }, p: *p }
            }
        }
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Integer(a), Coefficient::Integer(b)) => Coefficient::Integer(a * b),
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (Coefficient::ModP { residue: a, p }, Coefficient::ModP { residue: b, p: q }) => {
                assert_eq!(p, q, "mixing residues modulo different primes");
                Coefficient::ModP { residue: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => {
                let (a, b) = self.coerce_pair(other);
                a.mul(&b)
            }
        }
    }

    /// Multiplicative inverse, `None` for zero and for non-unit integers.
    pub fn inv(&self) -> Option<Coefficient> {
        if self.is_zero() {
            return None;
        }
        match self {
            Coefficient::Integer(a) => {
                if a.abs().is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Coefficient::Rational(a) => Some(Coefficient::Rational(a.recip())),
            Coefficient::ModP { residue, p } => {
                Some(Coefficient::ModP { residue: pow_mod(*residue, p - 2, *p), p: *p })
            }
        }
    }

    /// Field division. Panics on division by zero.
    pub fn div(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Integer(a), Coefficient::Integer(b)) => {
                Coefficient::Rational(BigRational::new(a.clone(), b.clone()))
            }
            _ => {
                let (a, b) = self.coerce_pair(other);
                a.mul(&b.inv().expect("division by zero coefficient"))
            }
        }
    }

    pub fn pow(&self, exp: i64) -> Option<Coefficient> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.domain().one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Sign of an integer or rational; residues report `Greater` when nonzero.
    pub fn signum(&self) -> Ordering {
        match self {
            Coefficient::Integer(a) => a.cmp(&BigInt::zero()),
            Coefficient::Rational(a) => a.cmp(&BigRational::zero()),
            Coefficient::ModP { residue, .. } => residue.cmp(&0),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Coefficient::Integer(a) => Some(BigRational::from_integer(a.clone())),
            Coefficient::Rational(a) => Some(a.clone()),
            Coefficient::ModP { .. } => None,
        }
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Coefficient::Integer(a) => Some(a.clone()),
            Coefficient::Rational(a) if a.is_integer() => Some(a.to_integer()),
            _ => None,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Integer(a) => write!(f, "{a}"),
            Coefficient::Rational(a) => write!(f, "{a}"),
            Coefficient::ModP { residue, .. } => write!(f, "{residue}"),
        }
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n`, `n/d` or a finite decimal such as `2.5`.
pub fn parse_rational(s: &str) -> Result<BigRational, RingError> {
    let s = s.trim();
    let bad = || RingError::Parse(format!("not a rational number: `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((i, frac)) = s.split_once('.') {
        let negative = i.trim_start().starts_with('-');
        let ip: BigInt = if i.is_empty() || i == "-" { BigInt::zero() } else { i.parse().map_err(|_| bad())? };
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let fp: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().map_err(|_| bad())? };
        let mag = ip.abs() * &scale + fp;
        let num = if negative { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

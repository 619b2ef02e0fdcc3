//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use concordance_core::fox::{FreeWord, Letter};
use concordance_core::{IntMatrix, SeifertMatrix};

/// A Seifert matrix of genus at most `max_genus`: the standard symplectic
/// part plus a random symmetric matrix, conjugated by a few elementary
/// unimodular moves.
pub fn random_seifert(rng: &mut impl Rng, max_genus: usize) -> SeifertMatrix {
    let g = rng.gen_range(0..=max_genus);
    let n = 2 * g;
    let mut a = vec![vec![0i64; n]; n];
    for k in 0..g {
        a[2 * k][2 * k + 1] = 1;
    }
    for i in 0..n {
        for j in i..n {
            let s = rng.gen_range(-2..=2);
            a[i][j] += s;
            if i != j {
                a[j][i] += s;
            }
        }
    }
    if n >= 2 {
        for _ in 0..rng.gen_range(0..3) {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = if rng.gen_bool(0.5) { 1 } else { -1 };
            for row in a.iter_mut() {
                row[j] += c * row[i];
            }
            for col in 0..n {
                a[j][col] += c * a[i][col];
            }
        }
    }
    SeifertMatrix::from_i64_rows(&a).expect("construction keeps det(A - A^T) = 1")
}

pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> =
        (0..len).map(|_| Letter { generator: rng.gen_range(0..rank), inverse: rng.gen_bool(0.5) }).collect();
    FreeWord::from_letters(rank, letters)
}

fn entries(k: &SeifertMatrix) -> Vec<Vec<i64>> {
    k.matrix().to_i64_rows().expect("small entries")
}

/// `(1 - ω) A + (1 - ω̄) A^T` at `ω = e^{2πi r/d}` in floating point.
fn hermitian_f64(a: &[Vec<i64>], r: u64, d: u64) -> DMatrix<Complex<f64>> {
    let n = a.len();
    let th = 2.0 * PI * r as f64 / d as f64;
    let w = Complex::new(th.cos(), th.sin());
    let one = Complex::new(1.0, 0.0);
    DMatrix::from_fn(n, n, |i, j| (one - w) * a[i][j] as f64 + (one - w.conj()) * a[j][i] as f64)
}

/// Levine–Tristram signature at `e^{2πi r/d}` from floating-point
/// eigenvalues, accepted only when every eigenvalue clears a backward-error
/// bound; otherwise from the exact characteristic polynomial.
pub fn oracle_signature(k: &SeifertMatrix, r: u64, d: u64) -> i64 {
    let a = entries(k);
    if a.is_empty() {
        return 0;
    }
    let h = hermitian_f64(&a, r, d);
    let tol = 1e-9 * h.norm().max(1.0);
    let ev = h.symmetric_eigenvalues();
    if ev.iter().all(|l| l.abs() > tol) {
        return ev.iter().map(|&l| if l > 0.0 { 1 } else { -1 }).sum();
    }
    exact_signature(&a, r, d)
}

/// `Φ_d` from `x^d - 1 = Π_{e | d} Φ_e`, coefficients low to high.
pub fn cyclotomic_oracle(d: u64) -> Vec<BigInt> {
    fn go(d: u64, memo: &mut BTreeMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&d) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = BigInt::from(-1);
        num[d as usize] = BigInt::from(1);
        for e in 1..d {
            if d % e == 0 {
                let f = go(e, memo);
                num = exact_div(&num, &f);
            }
        }
        memo.insert(d, num.clone());
        num
    }
    go(d, &mut BTreeMap::new())
}

/// Division by a monic polynomial that must leave no remainder.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact division");
    q
}

/// `Z[ζ_d]` as `Z[x]/Φ_d`.
struct Cyc {
    d: u64,
    phi: Vec<BigInt>,
    deg: usize,
}

type Elem = Vec<BigInt>;

impl Cyc {
    fn new(d: u64) -> Self {
        let phi = cyclotomic_oracle(d);
        let deg = phi.len() - 1;
        Cyc { d, phi, deg }
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Elem {
        for k in (self.deg..v.len()).rev() {
            let c = v[k].clone();
            if c.is_zero() {
                continue;
            }
            for i in 0..=self.deg {
                v[k - self.deg + i] -= &c * &self.phi[i];
            }
        }
        v.resize(self.deg, BigInt::zero());
        v
    }

    fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.deg]
    }

    fn monomial(&self, k: u64, c: i64) -> Elem {
        let mut v = vec![BigInt::zero(); (k % self.d) as usize + 1];
        v[(k % self.d) as usize] = BigInt::from(c);
        self.reduce(v)
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = vec![BigInt::zero(); 2 * self.deg];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Real part of the element at `ζ = e^{2πi/d}`.
    fn real_value(&self, a: &Elem) -> f64 {
        a.iter().enumerate().map(|(k, c)| c.to_f64().unwrap() * (2.0 * PI * k as f64 / self.d as f64).cos()).sum()
    }
}

/// Characteristic polynomial `det(λI - M)`, highest degree first, by the
/// division-free Berkowitz recursion.
fn berkowitz(ring: &Cyc, m: &[Vec<Elem>]) -> Vec<Elem> {
    let n = m.len();
    let one = ring.monomial(0, 1);
    let mut v = vec![one.clone(), ring.neg(&m[0][0])];
    for r in 1..n {
        // column of the Toeplitz matrix: 1, -a_rr, -R C, -R M C, ...
        let mut t = vec![one.clone(), ring.neg(&m[r][r])];
        let mut col: Vec<Elem> = (0..r).map(|i| m[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&m[r][j], &col[j])));
            t.push(ring.neg(&rc));
            col = (0..r)
                .map(|i| (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&m[i][j], &col[j]))))
                .collect();
        }
        let next: Vec<Elem> = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&t[i - j], &v[j]))))
            .collect();
        v = next;
    }
    v
}

fn variations(signs: impl Iterator<Item = i8>) -> i64 {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Signature from Descartes' rule on the real-rooted characteristic
/// polynomial computed exactly in `Z[ζ_d]`.
pub fn exact_signature(a: &[Vec<i64>], r: u64, d: u64) -> i64 {
    let ring = Cyc::new(d);
    let n = a.len();
    let m: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s = ring.monomial(0, a[i][j] + a[j][i]);
                    let x = ring.monomial(r, -a[i][j]);
                    let y = ring.monomial(d - r % d, -a[j][i]);
                    ring.add(&ring.add(&s, &x), &y)
                })
                .collect()
        })
        .collect();
    let chi = berkowitz(&ring, &m);
    let signs: Vec<i8> = chi
        .iter()
        .map(|c| {
            if c.iter().all(Zero::is_zero) {
                return 0;
            }
            let v = ring.real_value(c);
            let scale: f64 = c.iter().map(|x| x.to_f64().unwrap().abs()).sum::<f64>().max(1.0);
            assert!(v.abs() > 1e-9 * scale, "oracle cannot resolve a coefficient sign");
            if v > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    assert!(signs[n] != 0, "oracle evaluated at a singular point");
    let pos = variations(signs.iter().copied());
    let neg = variations(signs.iter().enumerate().map(|(k, &s)| if (n - k) % 2 == 1 { -s } else { s }));
    pos - neg
}

/// `det(A - tA^T)` by Laplace expansion over integer polynomials, low degree
/// first. Only for small sizes.
pub fn alexander_determinant_oracle(k: &SeifertMatrix) -> Vec<i64> {
    let a = entries(k);
    let n = a.len();
    let m: Vec<Vec<Vec<i64>>> = (0..n).map(|i| (0..n).map(|j| vec![a[i][j], -a[j][i]]).collect()).collect();
    let cols: Vec<usize> = (0..n).collect();
    let mut p = laplace(&m, 0, &cols);
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn laplace(m: &[Vec<Vec<i64>>], row: usize, cols: &[usize]) -> Vec<i64> {
    if cols.is_empty() {
        return vec![1];
    }
    let mut acc = vec![0i64];
    for (idx, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(m, row + 1, &rest);
        let term = poly_mul(&m[row][c], &minor);
        let sign = if idx % 2 == 0 { 1 } else { -1 };
        acc = poly_add(&acc, &term.iter().map(|x| sign * x).collect::<Vec<_>>());
    }
    acc
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect()
}

/// Pairs `(r, d)` with `gcd(r, d) = 1` and `0 < r < d/2`, for `d <= max_d`.
pub fn upper_roots(max_d: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        for r in 1..=d / 2 {
            if num_integer::gcd(r, d) == 1 {
                out.push((r, d));
            }
        }
    }
    out
}

/// Product of `count` random elementary matrices.
pub fn unimodular(rng: &mut impl Rng, n: usize, count: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..count {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = BigInt::from(rng.gen_range(-2..=2));
        for col in 0..n {
            let v = &u[(j, col)] + &c * &u[(i, col)];
            u[(j, col)] = v;
        }
    }
    u
}

/// `L D R` with the given diagonal.
pub fn with_diagonal(rng: &mut impl Rng, rows: usize, cols: usize, diag: &[i64]) -> IntMatrix {
    let mut d = IntMatrix::zeros(rows, cols);
    for (k, &v) in diag.iter().enumerate() {
        d[(k, k)] = BigInt::from(v);
    }
    unimodular(rng, rows, 6).mul(&d).mul(&unimodular(rng, cols, 6))
}

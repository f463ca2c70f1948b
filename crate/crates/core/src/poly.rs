//! Univariate polynomials over ℚ(i): fraction-free determinants of
//! polynomial matrices, square-free factorization and exact extraction of
//! Gaussian-rational roots.

use crate::scalar::{self, Scalar};
use num::{BigInt, BigRational, Complex, Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    c: Vec<Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("s"))
    }
}

impl Poly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(scalar::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn constant(a: Scalar) -> Self {
        Self::new(vec![a])
    }

    pub fn one() -> Self {
        Self::constant(scalar::one())
    }

    /// `s - r`.
    pub fn linear(r: &Scalar) -> Self {
        Self::new(vec![-r.clone(), scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(scalar::zero)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.c.get(k).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = scalar::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if scalar::is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, a: &Scalar) -> Self {
        Self::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a * &scalar::int(k as i64)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let inv = scalar::inv(&d.lead()).expect("nonzero lead");
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv;
            if !scalar::is_zero(&t) {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&t * b);
                }
            }
            q[k] = t;
        }
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&scalar::inv(&self.lead()).expect("nonzero lead"))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Text form with exact coefficients, e.g. `(1)*s^2 + (-1/2+i)*s`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !scalar::is_zero(a))
            .map(|(k, a)| match k {
                0 => format!("({})", scalar::format(a)),
                1 => format!("({})*{var}", scalar::format(a)),
                _ => format!("({})*{var}^{k}", scalar::format(a)),
            })
            .collect();
        terms.join(" + ")
    }
}

/// Determinant of a square matrix of polynomials by Bareiss elimination.
pub fn det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.scale(&scalar::int(-1))
    } else {
        d
    }
}

/// Yun's square-free decomposition: `(factor, multiplicity)` with monic,
/// pairwise coprime, square-free factors whose product (with multiplicities)
/// is `f` up to its leading coefficient.
pub fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    if f.degree() <= 0 {
        return vec![];
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a);
        let nc = d.exact_div(&a);
        d = nc.sub(&nb.derivative());
        if a.degree() > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Roots found exactly and the factors left unresolved.
#[derive(Clone, Debug, Default)]
pub struct RootReport {
    /// Distinct roots with multiplicity, sorted by (re, im).
    pub roots: Vec<(Scalar, usize)>,
    /// Monic factors without Gaussian-rational roots (or beyond the search
    /// limits), with multiplicity.
    pub unresolved: Vec<(Poly, usize)>,
}

/// All roots of `f` in ℚ(i).
pub fn gaussian_rational_roots(f: &Poly) -> RootReport {
    let mut rep = RootReport::default();
    for (g, mult) in square_free(f) {
        let mut rest = g;
        for r in roots_of_square_free(&rest) {
            rest = rest.exact_div(&Poly::linear(&r));
            rep.roots.push((r, mult));
        }
        if rest.degree() > 0 {
            rep.unresolved.push((rest, mult));
        }
    }
    rep.roots.sort_by(|a, b| cmp_scalar(&a.0, &b.0));
    rep
}

pub fn cmp_scalar(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

fn roots_of_square_free(f: &Poly) -> Vec<Scalar> {
    let mut roots = Vec::new();
    let mut f = f.clone();
    if f.degree() >= 1 && scalar::is_zero(&f.coeff(0)) {
        roots.push(scalar::zero());
        f = f.exact_div(&Poly::linear(&scalar::zero()));
    }
    match f.degree() {
        d if d <= 0 => {}
        1 => roots.push(-(&f.coeff(0) * &scalar::inv(&f.coeff(1)).expect("degree 1"))),
        2 => roots.extend(quadratic_roots(&f)),
        _ => {
            let Some(cands) = divisor_candidates(&f) else {
                return roots;
            };
            for r in cands {
                if scalar::is_zero(&f.eval(&r)) && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Square root in ℚ(i), if one exists.
pub fn gaussian_sqrt(z: &Scalar) -> Option<Scalar> {
    if scalar::is_zero(z) {
        return Some(scalar::zero());
    }
    let modulus = rational_sqrt(&(&z.re * &z.re + &z.im * &z.im))?;
    let two = BigRational::from_integer(2.into());
    let x = rational_sqrt(&((&modulus + &z.re) / &two))?;
    let y = if x.is_zero() {
        rational_sqrt(&((&modulus - &z.re) / &two))?
    } else {
        &z.im / (&two * &x)
    };
    let s = Scalar::new(x, y);
    (&s * &s == *z).then_some(s)
}

fn quadratic_roots(f: &Poly) -> Vec<Scalar> {
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let disc = &(&b * &b) - &(&(&a * &c) * &scalar::int(4));
    let Some(s) = gaussian_sqrt(&disc) else {
        return vec![];
    };
    let den = scalar::inv(&(&a * &scalar::int(2))).expect("degree 2");
    let r1 = &(&(-b.clone()) + &s) * &den;
    let r2 = &(&(-b) - &s) * &den;
    if r1 == r2 {
        vec![r1]
    } else {
        vec![r1, r2]
    }
}

type GInt = Complex<BigInt>;

const TRIAL_LIMIT: u64 = 200_000;
const MAX_CANDIDATES: usize = 50_000;

/// Candidates `u·p/q` with `p | f(0)`, `q | lead(f)` in ℤ[i], after clearing
/// denominators. `None` when a coefficient cannot be factored within limits.
fn divisor_candidates(f: &Poly) -> Option<Vec<Scalar>> {
    let mut l = BigInt::one();
    for a in f.coeffs() {
        l = l.lcm(a.re.denom()).lcm(a.im.denom());
    }
    let to_gint = |a: &Scalar| -> GInt {
        let lr = BigRational::from_integer(l.clone());
        let re = &a.re * &lr;
        let im = &a.im * &lr;
        Complex::new(re.to_integer(), im.to_integer())
    };
    let a0 = to_gint(&f.coeff(0));
    let an = to_gint(&f.lead());
    let ps = gaussian_divisors(&a0)?;
    let qs = gaussian_divisors(&an)?;
    if ps.len() * qs.len() * 4 > MAX_CANDIDATES {
        return None;
    }
    let units = [scalar::one(), scalar::i(), scalar::int(-1), -scalar::i()];
    let mut out = Vec::new();
    for p in &ps {
        for q in &qs {
            let base = &gint_scalar(p) * &scalar::inv(&gint_scalar(q)).ok()?;
            for u in &units {
                let r = &base * u;
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort_by(cmp_scalar);
    Some(out)
}

fn gint_scalar(z: &GInt) -> Scalar {
    Scalar::new(BigRational::from_integer(z.re.clone()), BigRational::from_integer(z.im.clone()))
}

fn gnorm(z: &GInt) -> BigInt {
    &z.re * &z.re + &z.im * &z.im
}

/// `z / d` if exact.
fn gdiv_exact(z: &GInt, d: &GInt) -> Option<GInt> {
    let n = gnorm(d);
    let t = z * d.conj();
    if t.re.is_multiple_of(&n) && t.im.is_multiple_of(&n) {
        Some(Complex::new(&t.re / &n, &t.im / &n))
    } else {
        None
    }
}

/// Gaussian prime factorization `(π, e)` of a nonzero Gaussian integer, up
/// to a unit, via factoring its norm.
pub fn gaussian_factor(z: &GInt) -> Option<Vec<(GInt, u32)>> {
    if z.is_zero() {
        return None;
    }
    let mut norm = gnorm(z).to_u128()?;
    let mut rational_primes: Vec<u128> = Vec::new();
    let mut p: u128 = 2;
    while p * p <= norm {
        if norm % p == 0 {
            rational_primes.push(p);
            while norm % p == 0 {
                norm /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
        if p > TRIAL_LIMIT as u128 && p * p <= norm {
            return None;
        }
    }
    if norm > 1 {
        rational_primes.push(norm);
    }
    let mut rest = z.clone();
    let mut out = Vec::new();
    for p in rational_primes {
        let gps: Vec<GInt> = if p == 2 {
            vec![Complex::new(BigInt::one(), BigInt::one())]
        } else if p % 4 == 3 {
            vec![Complex::new(BigInt::from(p), BigInt::zero())]
        } else {
            let (a, b) = two_squares(p)?;
            vec![
                Complex::new(BigInt::from(a), BigInt::from(b)),
                Complex::new(BigInt::from(a), -BigInt::from(b)),
            ]
        };
        for g in gps {
            let mut e = 0;
            while let Some(q) = gdiv_exact(&rest, &g) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
        }
    }
    (gnorm(&rest) == BigInt::one()).then_some(out)
}

fn two_squares(p: u128) -> Option<(u128, u128)> {
    let mut a: u128 = 1;
    while a * a < p {
        let r = p - a * a;
        let b = (r as f64).sqrt() as u128;
        for bb in b.saturating_sub(1)..=b + 1 {
            if bb * bb == r {
                return Some((a, bb));
            }
        }
        a += 1;
        if a > 10_000_000 {
            return None;
        }
    }
    None
}

/// Divisors up to units.
fn gaussian_divisors(z: &GInt) -> Option<Vec<GInt>> {
    let fac = gaussian_factor(z)?;
    let mut divs: Vec<GInt> = vec![Complex::new(BigInt::one(), BigInt::zero())];
    for (g, e) in fac {
        let mut next = Vec::new();
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x = &x * &g;
            }
        }
        divs = next;
        if divs.len() > MAX_CANDIDATES {
            return None;
        }
    }
    Some(divs)
}

//! Gaussian rationals: exact complex scalars with rational real and
//! imaginary parts.
//!
//! The scalar type is `num::Complex<BigRational>`; this module adds the
//! constructors, predicates and the string format `a/b+c/d*i` used in files.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, Complex, One, Signed, Zero};
use rand::Rng;
use std::str::FromStr;

pub type Scalar = Complex<BigRational>;

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// The imaginary unit.
pub fn i() -> Scalar {
    Scalar::new(BigRational::zero(), BigRational::one())
}

pub fn int(n: i64) -> Scalar {
    Scalar::new(BigRational::from_integer(n.into()), BigRational::zero())
}

/// `re + im*i` with integer parts.
pub fn gauss(re: i64, im: i64) -> Scalar {
    Scalar::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(
        BigRational::new(num.into(), den.into()),
        BigRational::zero(),
    )
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn from_rational(r: BigRational) -> Scalar {
    Scalar::new(r, BigRational::zero())
}

pub fn is_zero(z: &Scalar) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

pub fn is_real(z: &Scalar) -> bool {
    z.im.is_zero()
}

/// Exact inverse; errors on zero.
pub fn inv(z: &Scalar) -> Result<Scalar> {
    if is_zero(z) {
        return Err(Error::Singular("division by zero scalar".into()));
    }
    let n = z.norm_sqr();
    Ok(Scalar::new(&z.re / &n, -(&z.im / &n)))
}

/// `z^k` for a non-negative integer exponent.
pub fn pow(z: &Scalar, k: u32) -> Scalar {
    let mut acc = one();
    for _ in 0..k {
        acc = &acc * z;
    }
    acc
}

/// `i^k` for any integer k.
pub fn i_pow(k: i64) -> Scalar {
    match k.rem_euclid(4) {
        0 => one(),
        1 => i(),
        2 => int(-1),
        _ => -i(),
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical exact string: `a/b`, `c/d*i`, `a/b+c/d*i` or `a/b-c/d*i`.
pub fn format(z: &Scalar) -> String {
    if z.im.is_zero() {
        return fmt_rational(&z.re);
    }
    if z.re.is_zero() {
        return format!("{}*i", fmt_rational(&z.im));
    }
    if z.im.is_negative() {
        format!("{}-{}*i", fmt_rational(&z.re), fmt_rational(&-z.im.clone()))
    } else {
        format!("{}+{}*i", fmt_rational(&z.re), fmt_rational(&z.im))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let r = if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        BigRational::new(n, d)
    } else {
        BigRational::from_integer(
            BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?,
        )
    };
    Ok(r)
}

/// Parses the canonical format and a few relaxed spellings
/// (`i`, `-i`, `2i`, `1+i`, spaces).
pub fn parse(s: &str) -> Result<Scalar> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(from_rational(parse_rational(&t)?));
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (parse_rational(&body[..k])?, &body[k..]),
        None => (BigRational::zero(), body),
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other)?,
    };
    Ok(Scalar::new(re, im))
}

/// Random Gaussian rational with small numerators and denominators.
pub fn random_small<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Scalar {
    let part = |rng: &mut R| {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=max_den);
        BigRational::new(n.into(), d.into())
    };
    let re = part(rng);
    let im = part(rng);
    Scalar::new(re, im)
}

/// Random Gaussian integer with components in `[-bound, bound]`.
pub fn random_gauss<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    gauss(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

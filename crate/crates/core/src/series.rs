//! Truncated Laurent series in `s = σ - σ₀` with exact coefficients.
//!
//! A series is either an exact Laurent polynomial (every coefficient known,
//! `order() == None`) or truncated at `order`: coefficients are known for
//! exponents up to and including `order`, nothing is known beyond.

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use std::fmt;

/// Stand-in for an infinite exponent bound. Large enough that sums of two
/// finite exponents never reach it, small enough that sums of two copies do
/// not overflow.
pub(crate) const INF: i64 = i64::MAX / 4;

pub(crate) fn is_inf(x: i64) -> bool {
    x >= INF / 2
}

pub(crate) fn bound_of(order: Option<i64>) -> i64 {
    order.unwrap_or(INF)
}

pub(crate) fn order_of(bound: i64) -> Option<i64> {
    (!is_inf(bound)).then_some(bound)
}

pub(crate) fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    center: Scalar,
    valuation: i64,
    coeffs: Vec<Scalar>,
    order: Option<i64>,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl LaurentSeries {
    /// Builds a series with coefficients starting at exponent `valuation`.
    /// With `order = Some(o)` entries beyond `o` are discarded and missing
    /// ones up to `o` are taken as zero.
    pub fn new(center: Scalar, valuation: i64, coeffs: Vec<Scalar>, order: Option<i64>) -> Self {
        let mut s = LaurentSeries { center, valuation, coeffs, order };
        s.normalize();
        s
    }

    pub fn polynomial(center: Scalar, valuation: i64, coeffs: Vec<Scalar>) -> Self {
        Self::new(center, valuation, coeffs, None)
    }

    pub fn truncated(center: Scalar, valuation: i64, coeffs: Vec<Scalar>, order: i64) -> Self {
        Self::new(center, valuation, coeffs, Some(order))
    }

    /// The exact zero series.
    pub fn zero(center: Scalar) -> Self {
        Self::new(center, 0, vec![], None)
    }

    /// Zero up to (and including) exponent `order`.
    pub fn zero_to(center: Scalar, order: i64) -> Self {
        Self::new(center, order + 1, vec![], Some(order))
    }

    /// `c·s^k`, exact.
    pub fn monomial(center: Scalar, c: Scalar, k: i64) -> Self {
        Self::new(center, k, vec![c], None)
    }

    pub fn constant(center: Scalar, c: Scalar) -> Self {
        Self::monomial(center, c, 0)
    }

    fn normalize(&mut self) {
        if let Some(o) = self.order {
            let keep = (o - self.valuation + 1).max(0) as usize;
            self.coeffs.truncate(keep);
            if self.coeffs.len() < keep {
                self.coeffs.resize(keep, scalar::zero());
            }
        } else {
            while self.coeffs.last().is_some_and(scalar::is_zero) {
                self.coeffs.pop();
            }
        }
        let lead = self.coeffs.iter().take_while(|c| scalar::is_zero(c)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.valuation = match self.order {
                Some(o) => o + 1,
                None => 0,
            };
        }
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    /// Lowest exponent with a nonzero coefficient; `order + 1` for a series
    /// that is zero up to its order, and 0 for the exact zero series.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest exponent with a known coefficient; `None` for exact series.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_polynomial(&self) -> bool {
        self.order.is_none()
    }

    /// Zero up to its order (or exactly zero).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient list from the valuation upward.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Highest stored exponent.
    pub fn top(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64 - 1
    }

    fn val_bound(&self) -> i64 {
        if self.is_zero() && self.order.is_none() {
            INF
        } else {
            self.valuation
        }
    }

    fn bound(&self) -> i64 {
        bound_of(self.order)
    }

    /// Coefficient of `s^k`.
    pub fn coeff(&self, k: i64) -> Result<Scalar> {
        if k > self.bound() {
            return Err(Error::Truncation(format!(
                "coefficient {k} requested beyond order {}",
                self.bound()
            )));
        }
        Ok(self.coeff_or_zero(k))
    }

    fn coeff_or_zero(&self, k: i64) -> Scalar {
        if k < self.valuation {
            return scalar::zero();
        }
        self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_else(scalar::zero)
    }

    fn check_center(&self, other: &Self) -> Result<()> {
        if self.center != other.center {
            return Err(Error::CenterMismatch(
                scalar::format(&self.center),
                scalar::format(&other.center),
            ));
        }
        Ok(())
    }

    fn linear(&self, other: &Self, sign: i64) -> Result<Self> {
        self.check_center(other)?;
        let order = min_order(self.order, other.order);
        let lo = self.valuation.min(other.valuation);
        let hi = match order {
            Some(o) => o,
            None => self.top().max(other.top()),
        };
        let coeffs = (lo..=hi)
            .map(|k| {
                let b = other.coeff_or_zero(k);
                let a = self.coeff_or_zero(k);
                if sign > 0 {
                    a + b
                } else {
                    a - b
                }
            })
            .collect();
        Ok(Self::new(self.center.clone(), lo, coeffs, order))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.linear(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.linear(other, -1)
    }

    /// Product; the order is `min(a.order + b.valuation, b.order + a.valuation)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let (av, bv) = (self.val_bound(), other.val_bound());
        let bound = (self.bound() + bv).min(other.bound() + av);
        let order = order_of(bound);
        if is_inf(av) || is_inf(bv) {
            return Ok(match order {
                None => Self::zero(self.center.clone()),
                Some(o) => Self::zero_to(self.center.clone(), o),
            });
        }
        let lo = av + bv;
        let hi = match order {
            Some(o) => o,
            None => self.top() + other.top(),
        };
        if hi < lo {
            return Ok(Self::new(self.center.clone(), lo, vec![], order));
        }
        let mut coeffs = vec![scalar::zero(); (hi - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if scalar::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                coeffs[k] += a * b;
            }
        }
        Ok(Self::new(self.center.clone(), lo, coeffs, order))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if scalar::is_zero(c) {
            return match self.order {
                None => Self::zero(self.center.clone()),
                Some(o) => Self::zero_to(self.center.clone(), o),
            };
        }
        Self::new(
            self.center.clone(),
            self.valuation,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.order,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&scalar::int(-1))
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(
            self.center.clone(),
            self.valuation + k,
            self.coeffs.clone(),
            self.order.map(|o| o + k),
        )
    }

    /// Forgets coefficients beyond `order`.
    pub fn truncate(&self, order: i64) -> Self {
        let o = self.order.map_or(order, |x| x.min(order));
        Self::new(self.center.clone(), self.valuation, self.coeffs.clone(), Some(o))
    }

    /// Multiplicative inverse by the geometric-series recursion
    /// `b₀ = 1/a_v`, `b_k = -b₀ Σ_{j=1..k} a_{v+j} b_{k-j}`.
    ///
    /// An exact input that is not a monomial has an infinite inverse and must
    /// be truncated first.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular("inverse of a series that is zero to its order".into()));
        }
        let v = self.valuation;
        let lead_inv = scalar::inv(&self.coeffs[0])?;
        let Some(o) = self.order else {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(self.center.clone(), lead_inv, -v));
            }
            return Err(Error::Truncation(
                "exact non-monomial series has an infinite inverse; truncate first".into(),
            ));
        };
        let n = (o - v + 1) as usize;
        let mut b: Vec<Scalar> = Vec::with_capacity(n);
        b.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = scalar::zero();
            for j in 1..=k {
                let a = self.coeff_or_zero(v + j as i64);
                if !scalar::is_zero(&a) {
                    acc += &a * &b[k - j];
                }
            }
            b.push(-(&acc * &lead_inv));
        }
        Ok(Self::new(self.center.clone(), -v, b, Some(o - 2 * v)))
    }

    /// Negative-exponent part. It is exact whenever the coefficient at
    /// exponent -1 is known.
    pub fn singular_part(&self) -> Self {
        let order = if self.bound() >= -1 { None } else { self.order };
        let hi = self.top().min(-1);
        let coeffs = if hi < self.valuation {
            vec![]
        } else {
            self.coeffs[..(hi - self.valuation + 1) as usize].to_vec()
        };
        Self::new(self.center.clone(), self.valuation, coeffs, order)
    }

    /// `σ ↦ a(σ + θ)`, a germ at `center - θ` with the same local
    /// coefficients. Only exact series may be moved by a nonzero `θ`.
    pub fn translate(&self, theta: &Scalar) -> Result<Self> {
        if scalar::is_zero(theta) {
            return Ok(self.clone());
        }
        if !self.is_polynomial() {
            return Err(Error::TruncatedTranslation);
        }
        Ok(Self { center: &self.center - theta, ..self.clone() })
    }

    /// Re-expansion of the same polynomial function around another point.
    pub fn recenter(&self, new_center: &Scalar) -> Result<Self> {
        if !self.is_polynomial() {
            return Err(Error::Invalid("only exact polynomials can be re-expanded".into()));
        }
        if self.valuation < 0 && !self.is_zero() {
            return Err(Error::Invalid("a series with a pole cannot be re-expanded".into()));
        }
        let shifted = taylor_shift(
            &(0..=self.top().max(0)).map(|k| self.coeff_or_zero(k)).collect::<Vec<_>>(),
            &(new_center - &self.center),
        );
        Ok(Self::polynomial(new_center.clone(), 0, shifted))
    }

    /// `σ ↦ conj(a(conj σ))`: conjugated center and coefficients.
    pub fn conj_flip(&self) -> Self {
        Self {
            center: self.center.conj(),
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
            order: self.order,
        }
    }

    /// Term-by-term derivative in σ.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * &scalar::int(self.valuation + j as i64))
            .collect();
        Self::new(self.center.clone(), self.valuation - 1, coeffs, self.order.map(|o| o - 1))
    }

    /// Equality of all coefficients up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.center != other.center {
            return false;
        }
        let hi = bound_of(min_order(self.order, other.order));
        let hi = if is_inf(hi) { self.top().max(other.top()) } else { hi };
        let lo = self.valuation.min(other.valuation);
        (lo..=hi).all(|k| self.coeff_or_zero(k) == other.coeff_or_zero(k))
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if scalar::is_zero(c) {
                continue;
            }
            let k = self.valuation + j as i64;
            let c = scalar::format(c);
            parts.push(match k {
                0 => format!("({c})"),
                1 => format!("({c})*s"),
                _ => format!("({c})*s^{k}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if let Some(o) = self.order {
            parts.push(format!("O(s^{})", o + 1));
        }
        format!("{} @ {}", parts.join(" + "), scalar::format(&self.center))
    }
}

/// Coefficients of `p(s + d)` given those of `p(s)` (ascending).
pub fn taylor_shift(p: &[Scalar], d: &Scalar) -> Vec<Scalar> {
    // Horner in the shifted variable
    let mut out: Vec<Scalar> = Vec::new();
    for c in p.iter().rev() {
        // out <- out * (s + d) + c
        let mut next = vec![scalar::zero(); out.len() + 1];
        for (k, a) in out.iter().enumerate() {
            next[k + 1] += a;
            next[k] += a * d;
        }
        next[0] += c;
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, int, ratio};
    use proptest::prelude::*;

    fn z() -> Scalar {
        scalar::zero()
    }

    fn poly(c: &[i64]) -> LaurentSeries {
        LaurentSeries::polynomial(z(), 0, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn product_examples() {
        let a = LaurentSeries::polynomial(z(), -1, vec![int(1), int(1)]);
        let s = LaurentSeries::monomial(z(), int(1), 1);
        assert_eq!(a.mul(&s).unwrap(), poly(&[1, 1]));

        let p = LaurentSeries::truncated(z(), 0, vec![int(1), int(1)], 3);
        let m = LaurentSeries::truncated(z(), 0, vec![int(1), int(-1)], 3);
        let prod = p.mul(&m).unwrap();
        assert_eq!(prod, LaurentSeries::truncated(z(), 0, vec![int(1), int(0), int(-1)], 3));
        assert_eq!(prod.order(), Some(3));
        assert_eq!(a.add(&LaurentSeries::zero(z())).unwrap(), a);
    }

    #[test]
    fn mul_order_rule() {
        let a = LaurentSeries::truncated(z(), 1, vec![int(1)], 4);
        let b = LaurentSeries::truncated(z(), -2, vec![int(3)], 2);
        assert_eq!(a.mul(&b).unwrap().order(), Some((4 - 2).min(2 + 1)));
    }

    #[test]
    fn inverse_examples() {
        let a = LaurentSeries::truncated(z(), 0, vec![int(1), int(-1)], 3);
        assert_eq!(a.invert().unwrap(), LaurentSeries::truncated(z(), 0, vec![int(1); 4], 3));
        let s = LaurentSeries::monomial(z(), int(1), 1);
        assert_eq!(s.invert().unwrap(), LaurentSeries::monomial(z(), int(1), -1));
        let b = LaurentSeries::truncated(z(), 0, vec![int(2), int(1)], 1);
        let inv = b.invert().unwrap();
        assert_eq!(inv, LaurentSeries::truncated(z(), 0, vec![ratio(1, 2), ratio(-1, 4)], 1));
        // oracle: multiply back
        let back = b.mul(&inv).unwrap();
        assert_eq!(back, LaurentSeries::truncated(z(), 0, vec![int(1)], 1));
        assert!(LaurentSeries::zero_to(z(), 3).invert().is_err());
        assert!(poly(&[1, 1]).invert().is_err());
    }

    #[test]
    fn singular_part_examples() {
        let a = LaurentSeries::polynomial(z(), -2, vec![int(1), int(0), int(3), int(1)]);
        assert_eq!(a.singular_part(), LaurentSeries::monomial(z(), int(1), -2));
        assert!(poly(&[1, 2]).singular_part().is_zero());
        let b = LaurentSeries::polynomial(z(), -1, vec![int(1), int(0), int(1)]);
        assert_eq!(b.singular_part().singular_part(), b.singular_part());
    }

    #[test]
    fn translation_examples() {
        let a = poly(&[0, 1]);
        assert_eq!(a.translate(&z()).unwrap(), a);
        let s0 = gauss(2, 1);
        let t = a.translate(&s0).unwrap();
        assert_eq!(t.center(), &-s0.clone());
        // as a function t(σ) = σ + σ0: at σ = -σ0 + s it is s
        assert_eq!(t.recenter(&z()).unwrap(), LaurentSeries::polynomial(z(), 0, vec![s0.clone(), int(1)]));
        let inv = LaurentSeries::monomial(z(), int(1), -1);
        assert_eq!(inv.translate(&z()).unwrap(), inv);
        let tr = LaurentSeries::truncated(z(), 0, vec![int(1)], 2);
        assert_eq!(tr.translate(&int(1)), Err(Error::TruncatedTranslation));
        assert_eq!(t.translate(&-s0).unwrap(), a);
    }

    #[test]
    fn conj_flip_examples() {
        let a = LaurentSeries::monomial(z(), scalar::i(), 1);
        assert_eq!(a.conj_flip(), LaurentSeries::monomial(z(), -scalar::i(), 1));
        let r = poly(&[1, 2, 3]);
        assert_eq!(r.conj_flip(), r);
        let c = LaurentSeries::monomial(gauss(1, 1), gauss(1, 2), -1);
        assert_eq!(c.conj_flip().conj_flip(), c);
        assert_eq!(c.conj_flip().center(), &gauss(1, -1));
    }

    #[test]
    fn recenter_is_taylor_shift() {
        // (σ - 1)^2 expanded at 0 is 1 - 2σ + σ^2
        let p = LaurentSeries::polynomial(int(1), 0, vec![int(0), int(0), int(1)]);
        assert_eq!(p.recenter(&z()).unwrap(), poly(&[1, -2, 1]));
    }

    fn arb_series() -> impl Strategy<Value = LaurentSeries> {
        (-3i64..2, proptest::collection::vec((-5i64..5, -5i64..5), 1..6), 0i64..6)
            .prop_map(|(v, cs, extra)| {
                let coeffs: Vec<Scalar> = cs.into_iter().map(|(a, b)| gauss(a, b)).collect();
                let o = v + extra;
                LaurentSeries::truncated(z(), v, coeffs, o)
            })
    }

    proptest! {
        #[test]
        fn double_inverse(a in arb_series()) {
            prop_assume!(!a.is_zero());
            let b = a.invert().unwrap().invert().unwrap();
            prop_assert!(b.agrees_with(&a));
        }

        #[test]
        fn product_with_inverse_is_one(a in arb_series()) {
            prop_assume!(!a.is_zero());
            let p = a.mul(&a.invert().unwrap()).unwrap();
            prop_assert!(p.agrees_with(&LaurentSeries::constant(z(), int(1))));
        }

        #[test]
        fn singular_part_is_additive(a in arb_series(), b in arb_series()) {
            let lhs = a.add(&b).unwrap().singular_part();
            let rhs = a.singular_part().add(&b.singular_part()).unwrap();
            prop_assert!(lhs.agrees_with(&rhs));
            let rest = a.sub(&a.singular_part()).unwrap();
            prop_assert!(rest.is_zero() || rest.valuation() >= 0);
        }

        #[test]
        fn singular_part_of_holomorphic_multiple(a in arb_series(), h in arb_series()) {
            prop_assume!(h.valuation() >= 0);
            let p = a.mul(&h).unwrap();
            let s = p.singular_part();
            prop_assert!(s.is_zero() || s.valuation() >= a.valuation());
        }

        #[test]
        fn conj_flip_commutes_with_arithmetic(a in arb_series(), b in arb_series()) {
            let lhs = a.mul(&b).unwrap().conj_flip();
            let rhs = a.conj_flip().mul(&b.conj_flip()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = a.add(&b).unwrap().conj_flip();
            let rhs = a.conj_flip().add(&b.conj_flip()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn translate_commutes_with_arithmetic(
            p in proptest::collection::vec(-4i64..4, 1..5),
            q in proptest::collection::vec(-4i64..4, 1..5),
            re in -3i64..3, im in -3i64..3,
        ) {
            let a = poly(&p);
            let b = poly(&q);
            let th = gauss(re, im);
            let lhs = a.mul(&b).unwrap().translate(&th).unwrap();
            let rhs = a.translate(&th).unwrap().mul(&b.translate(&th).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let back = a.translate(&th).unwrap().translate(&-th.clone()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}

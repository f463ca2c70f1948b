//! Log-polynomial sections `Σ_k c_k x^{iσ₀} log^k x`, their Mellin singular
//! parts, the shift isomorphisms `Θ`, the reflection `σ ↦ σ★` and the
//! pairing of singular data over the critical strip.

use crate::error::{Error, Result};
use crate::germ_cohom::PrincipalPart;
use crate::holo_complex::IndicialInput;
use crate::linalg::Mat;
use crate::matrix_series::MapFamily;
use crate::residue_pairing::{germ_pairing, residue_bracket};
use crate::scalar::{self, Scalar};
use num::{BigInt, BigRational, One, Zero};

/// `Σ_k c_k x^{iσ₀} log^k x` with vector coefficients `c_k ∈ ℂ^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSection {
    pub sigma0: Scalar,
    pub dim: usize,
    pub coeffs: Vec<Vec<Scalar>>,
}

impl LogSection {
    pub fn new(sigma0: Scalar, dim: usize, coeffs: Vec<Vec<Scalar>>) -> Result<Self> {
        if coeffs.iter().any(|c| c.len() != dim) {
            return Err(Error::Dimension("log section coefficient length".into()));
        }
        Ok(LogSection { sigma0, dim, coeffs })
    }

    pub fn zero(sigma0: Scalar, dim: usize) -> Self {
        LogSection { sigma0, dim, coeffs: vec![] }
    }

    /// `c · x^{iσ₀} log^k x`.
    pub fn monomial(sigma0: Scalar, k: usize, c: Vec<Scalar>) -> Self {
        let dim = c.len();
        let mut coeffs = vec![vec![scalar::zero(); dim]; k + 1];
        coeffs[k] = c;
        LogSection { sigma0, dim, coeffs }
    }

    /// Highest power of `log x` with a nonzero coefficient.
    pub fn log_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.iter().any(|x| !scalar::is_zero(x)))
    }

    pub fn is_zero(&self) -> bool {
        self.log_degree().is_none()
    }

    fn coeff(&self, k: usize) -> Vec<Scalar> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| vec![scalar::zero(); self.dim])
    }

    /// `x^{-1}(B + (D + θ)L)` with `D = −i x∂_x`; the result lives at `σ₀ + i`.
    fn model(&self, b: &Mat, l: &Mat, theta: &Scalar) -> Result<LogSection> {
        if b.cols() != self.dim || l.shape() != b.shape() {
            return Err(Error::Dimension("model operator does not act on this section".into()));
        }
        let s = &self.sigma0 + theta;
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|k| {
                let ck = self.coeff(k);
                let next = self.coeff(k + 1);
                let inner: Vec<Scalar> = ck
                    .iter()
                    .zip(&next)
                    .map(|(a, c)| &s * a - &scalar::i() * &(&scalar::int(k as i64 + 1) * c))
                    .collect();
                let bc = b.mul_vec(&ck);
                l.mul_vec(&inner).iter().zip(&bc).map(|(x, y)| x + y).collect()
            })
            .collect();
        LogSection::new(&self.sigma0 + &scalar::i(), b.rows(), coeffs)
    }

    /// `A^{(0)}_q u` for the model operator with indicial family `bP_q + σΛ_q`.
    pub fn apply_model(&self, ind: &IndicialInput, q: usize) -> Result<LogSection> {
        self.model(&ind.bp[q], &ind.lambda[q], &scalar::zero())
    }

    /// `A^{★(0)}_q v` for a section of `E^{q+1}`, with indicial family
    /// `bP_q^★ + (σ − i(2γ−1))Λ_q^★`.
    pub fn apply_adjoint_model(&self, ind: &IndicialInput, q: usize) -> Result<LogSection> {
        let shift = -(&scalar::i() * &two_gamma_minus_one(&ind.gamma));
        self.model(&ind.bp[q].adjoint(), &ind.lambda[q].adjoint(), &shift)
    }
}

fn two_gamma_minus_one(gamma: &BigRational) -> Scalar {
    scalar::from_rational(gamma * BigRational::from_integer(BigInt::from(2)) - BigRational::one())
}

/// `(−1)^k k! i^{k+1}`, the Mellin weight of `x^{iσ₀} log^k x`.
pub fn mellin_weight(k: usize) -> Scalar {
    let mut f = BigInt::one();
    for j in 2..=k {
        f *= j;
    }
    if k % 2 == 1 {
        f = -f;
    }
    &scalar::from_rational(BigRational::from_integer(f)) * &scalar::i_pow(k as i64 + 1)
}

/// Singular part at `σ₀` of the Mellin transform of `ω u`.
pub fn mellin_singular(u: &LogSection) -> PrincipalPart {
    let parts = (0..u.coeffs.len())
        .map(|k| {
            let w = mellin_weight(k);
            u.coeffs[k].iter().map(|c| c * &w).collect()
        })
        .collect();
    PrincipalPart::new(u.sigma0.clone(), u.dim, parts).expect("same length")
}

/// Inverse of [`mellin_singular`].
pub fn mellin_inverse(p: &PrincipalPart) -> LogSection {
    let coeffs = p
        .parts()
        .iter()
        .enumerate()
        .map(|(k, part)| {
            let w = scalar::inv(&mellin_weight(k)).expect("weights are nonzero");
            part.iter().map(|c| c * &w).collect()
        })
        .collect();
    LogSection { sigma0: p.center().clone(), dim: p.dim(), coeffs }
}

/// `(τ_θ u)(σ) = u(σ + θ)`: the same coefficients at center `σ₀ − θ`.
pub fn translate_part(u: &PrincipalPart, theta: &Scalar) -> PrincipalPart {
    PrincipalPart::new(u.center() - theta, u.dim(), u.parts().to_vec()).expect("same data")
}

/// `Θ^q_{q'} u = τ_{i(q'−q)} 𝔰ℳu` for `u` at `σ₀ + i(q'−q)`; the result is at `σ₀`.
pub fn theta_iso(u: &LogSection, q: i64, qp: i64) -> PrincipalPart {
    translate_part(&mellin_singular(u), &(&scalar::int(qp - q) * &scalar::i()))
}

/// `σ★ = conj(σ − i(2γ−1))`, the reflection across `Im σ = γ − ½`.
pub fn sigma_star(sigma: &Scalar, gamma: &BigRational) -> Scalar {
    (sigma - &(&scalar::i() * &two_gamma_minus_one(gamma))).conj()
}

fn same_part(a: &PrincipalPart, b: &PrincipalPart) -> Result<bool> {
    if a.center() != b.center() || a.dim() != b.dim() {
        return Ok(false);
    }
    let d = a.depth().max(b.depth());
    Ok(a.coords(d)? == b.coords(d)?)
}

/// `𝒜_q(σ + shift)` expanded at `center`.
fn indicial_at(ind: &IndicialInput, q: usize, shift: &Scalar, center: &Scalar) -> MapFamily {
    ind.family(q, &(shift + center)).with_center(center.clone())
}

/// Checks `Θ^q_{q'+1} A^{(0)}_{q'} u = 𝔰 𝒜_{q'}(· + i(q'−q)) Θ^q_{q'} u` for
/// `u ∈ 𝒮_{σ₀+i(q'−q)}(E^{q'})`.
pub fn theta_diagram_commutes(ind: &IndicialInput, q: i64, qp: usize, u: &LogSection) -> Result<bool> {
    let lhs = theta_iso(&u.apply_model(ind, qp)?, q, qp as i64 + 1);
    let tu = theta_iso(u, q, qp as i64);
    let shift = &scalar::int(qp as i64 - q) * &scalar::i();
    let rhs = tu.apply(&indicial_at(ind, qp, &shift, tu.center()))?;
    same_part(&lhs, &rhs)
}

/// Singular exponents inside the strip `γ − 1 < Im σ < γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripConfig {
    pub gamma: BigRational,
    pub points: Vec<Scalar>,
}

impl StripConfig {
    pub fn new(gamma: BigRational, points: Vec<Scalar>) -> Result<Self> {
        let cfg = StripConfig { gamma, points };
        if let Some(p) = cfg.points.iter().find(|p| !cfg.contains(p)) {
            return Err(Error::Invalid(format!("{} is not inside the strip", scalar::format(p))));
        }
        Ok(cfg)
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        let lo = &self.gamma - BigRational::one();
        s.im > lo && s.im < self.gamma
    }

    pub fn partner(&self, s: &Scalar) -> Scalar {
        sigma_star(s, &self.gamma)
    }
}

/// Contributions of every pair of singular data to the adjoint pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripPairing {
    pub total: Scalar,
    /// `(u index, v index)` entry: the residue of that pair.
    pub contributions: Mat,
    /// Total contribution of each configured point.
    pub per_point: Vec<(Scalar, Scalar)>,
}

/// `i · Res_{σ₁} ⟨𝒜_q(σ) û(σ), v̂(σ★)⟩` where `σ₁★` is the point of `v`.
/// `𝒜_q û` must be entire, which holds for closed `u`.
fn pair_contribution(ind: &IndicialInput, q: usize, u: &LogSection, v: &LogSection) -> Result<Scalar> {
    let s1 = sigma_star(&v.sigma0, &ind.gamma);
    let uh = mellin_singular(u);
    let au = indicial_at(ind, q, &scalar::zero(), &u.sigma0).mul(&uh.to_family())?;
    if au.valuation() < 0 && !au.is_zero() {
        return Err(Error::Invalid("section is not closed".into()));
    }
    let au = au.recenter(&s1)?;
    let vh = mellin_singular(v);
    let vf = PrincipalPart::new(s1.conj(), v.dim, vh.parts().to_vec())?.to_family();
    Ok(&scalar::i() * &residue_bracket(&au, &vf, &Mat::identity(v.dim))?)
}

/// Adjoint pairing of `Σ ω u_i` and `Σ ω v_j` for closed sections at
/// configured points (`u`) and at their reflections (`v`). Pairs that are
/// not related by reflection must contribute exactly zero.
pub fn strip_pairing(ind: &IndicialInput, cfg: &StripConfig, u: &[LogSection], v: &[LogSection]) -> Result<StripPairing> {
    let q = usize::try_from(ind.anchor).map_err(|_| Error::Invalid("negative degree".into()))?;
    if q >= ind.length() {
        return Err(Error::Invalid(format!("degree {q} has no outgoing indicial map")));
    }
    let partners: Vec<Scalar> = cfg.points.iter().map(|p| cfg.partner(p)).collect();
    for x in u {
        if !cfg.points.contains(&x.sigma0) {
            return Err(Error::Invalid(format!("{} is not a configured point", scalar::format(&x.sigma0))));
        }
        if !x.apply_model(ind, q)?.is_zero() {
            return Err(Error::Invalid(format!("section at {} is not closed", scalar::format(&x.sigma0))));
        }
    }
    for y in v {
        if !partners.contains(&y.sigma0) {
            return Err(Error::Invalid(format!("{} is not a reflected point", scalar::format(&y.sigma0))));
        }
        if !y.apply_adjoint_model(ind, q)?.is_zero() {
            return Err(Error::Invalid(format!("dual section at {} is not closed", scalar::format(&y.sigma0))));
        }
    }
    let mut contributions = Mat::zeros(u.len(), v.len());
    for (a, x) in u.iter().enumerate() {
        for (b, y) in v.iter().enumerate() {
            let c = pair_contribution(ind, q, x, y)?;
            let matched = cfg.partner(&x.sigma0) == y.sigma0;
            if !matched && !scalar::is_zero(&c) {
                return Err(Error::Inconsistency(format!(
                    "pairing between {} and {} is nonzero",
                    scalar::format(&x.sigma0),
                    scalar::format(&y.sigma0)
                )));
            }
            if matched {
                let aligned = aligned_pairing(ind, q, x, y)?;
                if aligned != c {
                    return Err(Error::Inconsistency("pairing changed under alignment".into()));
                }
            }
            contributions[(a, b)] = c;
        }
    }
    let per_point = cfg
        .points
        .iter()
        .map(|p| {
            let mut s = scalar::zero();
            for (a, x) in u.iter().enumerate() {
                if &x.sigma0 == p {
                    for b in 0..v.len() {
                        s += &contributions[(a, b)];
                    }
                }
            }
            (p.clone(), s)
        })
        .collect();
    let mut total = scalar::zero();
    for a in 0..u.len() {
        for b in 0..v.len() {
            total += &contributions[(a, b)];
        }
    }
    Ok(StripPairing { total, contributions, per_point })
}

/// The same pair computed in the straight complex `𝒫_q(σ) = 𝒜_q(σ + i(γ−½))`
/// at `σ₁ = σ₀ − i(γ−½)`.
fn aligned_pairing(ind: &IndicialInput, q: usize, u: &LogSection, v: &LogSection) -> Result<Scalar> {
    let shift = ind.alignment(q);
    let s1 = &u.sigma0 - &shift;
    let p = indicial_at(ind, q, &shift, &s1);
    let tu = translate_part(&mellin_singular(u), &shift);
    let tv = translate_part(&mellin_singular(v), &shift);
    if tv.center() != &s1.conj() {
        return Err(Error::CenterMismatch(scalar::format(&s1.conj()), scalar::format(tv.center())));
    }
    germ_pairing(&p, &Mat::identity(v.dim), &tu, &tv)
}

/// A two-point configuration for `m = 1`, `Λ = I`, `bP = −diag(a, b)`: the
/// model complex `E⁰ → E¹` is singular exactly at `σ = a` and `σ = b`.
pub fn diagonal_strip_model(a: &Scalar, b: &Scalar, gamma: BigRational) -> IndicialInput {
    let bp = Mat::from_rows(vec![vec![-a.clone(), scalar::zero()], vec![scalar::zero(), -b.clone()]]);
    IndicialInput { bp: vec![bp], lambda: vec![Mat::identity(2)], gamma, anchor: 0 }
}

/// True when `Im σ = γ − ½`.
pub fn on_midline(s: &Scalar, gamma: &BigRational) -> bool {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    (&s.im - gamma + half).is_zero()
}

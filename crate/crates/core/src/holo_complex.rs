//! Holomorphic families of finite complexes `F_0 → F_1 → … → F_m`, their
//! Laplacians and adjoints, indicial-family builders and a generator of
//! gauge-conjugated model complexes with known local cohomology.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::matrix_series::{check_gram, MapFamily};
use crate::scalar::{self, Scalar};
use crate::series::min_order;
use num::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFamily {
    center: Scalar,
    dims: Vec<usize>,
    maps: Vec<MapFamily>,
    gram: Vec<Mat>,
}

/// First failure of `P_{q+1} P_q = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: usize,
    pub exponent: i64,
    pub row: usize,
    pub col: usize,
}

impl ComplexFamily {
    /// Complex with identity inner products. `maps[q]` is `n_{q+1} × n_q`.
    pub fn new(center: Scalar, dims: Vec<usize>, maps: Vec<MapFamily>) -> Result<Self> {
        let gram = dims.iter().map(|&n| Mat::identity(n)).collect();
        Self::with_gram(center, dims, maps, gram)
    }

    pub fn with_gram(center: Scalar, dims: Vec<usize>, maps: Vec<MapFamily>, gram: Vec<Mat>) -> Result<Self> {
        if dims.len() != maps.len() + 1 {
            return Err(Error::Dimension(format!("{} spaces for {} maps", dims.len(), maps.len())));
        }
        if gram.len() != dims.len() {
            return Err(Error::Dimension("one Gram matrix per space".into()));
        }
        for (q, p) in maps.iter().enumerate() {
            if p.shape() != (dims[q + 1], dims[q]) {
                return Err(Error::Dimension(format!(
                    "map {q} is {}x{}, expected {}x{}",
                    p.rows(),
                    p.cols(),
                    dims[q + 1],
                    dims[q]
                )));
            }
            if p.center() != &center {
                return Err(Error::CenterMismatch(scalar::format(&center), scalar::format(p.center())));
            }
            if !p.is_holomorphic() {
                return Err(Error::Invalid(format!("map {q} has a pole at the center")));
            }
        }
        for (q, g) in gram.iter().enumerate() {
            if g.shape() != (dims[q], dims[q]) {
                return Err(Error::Dimension(format!("Gram matrix {q}")));
            }
            check_gram(g)?;
        }
        Ok(ComplexFamily { center, dims, maps, gram })
    }

    /// Number of maps `m`.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim F_q`, zero outside `0..=m`.
    pub fn dim(&self, q: i64) -> usize {
        if q < 0 {
            return 0;
        }
        self.dims.get(q as usize).copied().unwrap_or(0)
    }

    pub fn maps(&self) -> &[MapFamily] {
        &self.maps
    }

    /// `P_q`, with zero maps at the two ends.
    pub fn map(&self, q: i64) -> MapFamily {
        if q >= 0 && (q as usize) < self.maps.len() {
            return self.maps[q as usize].clone();
        }
        MapFamily::zero(self.dim(q + 1), self.dim(q), self.center.clone())
    }

    /// Inner product on `F_q` (empty outside the complex).
    pub fn gram(&self, q: i64) -> Mat {
        if q < 0 {
            return Mat::identity(0);
        }
        self.gram.get(q as usize).cloned().unwrap_or_else(|| Mat::identity(0))
    }

    pub fn grams(&self) -> &[Mat] {
        &self.gram
    }

    pub fn order(&self) -> Option<i64> {
        self.maps.iter().fold(None, |acc, p| min_order(acc, p.order()))
    }

    pub fn is_polynomial(&self) -> bool {
        self.maps.iter().all(MapFamily::is_polynomial)
    }

    /// `P_q(σ₀)`.
    pub fn constant_map(&self, q: i64) -> Mat {
        self.map(q).at_center()
    }

    fn rebuild(&self, center: Scalar, maps: Vec<MapFamily>) -> Result<Self> {
        Self::with_gram(center, self.dims.clone(), maps, self.gram.clone())
    }

    pub fn truncate(&self, order: i64) -> Self {
        let maps = self.maps.iter().map(|p| p.truncate(order)).collect();
        self.rebuild(self.center.clone(), maps).expect("same data")
    }

    /// First exponent and entry where some `P_{q+1} P_q` is nonzero.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for q in 0..self.maps.len().saturating_sub(1) {
            let c = self.maps[q + 1].mul(&self.maps[q]).expect("shapes checked");
            if let Some((exponent, row, col)) = c.first_nonzero() {
                return Err(Violation { degree: q, exponent, row, col });
            }
        }
        Ok(())
    }

    /// `P_q^★` as a family at the center, i.e. `σ ↦ P_q^★(σ − 2i Im σ₀)`.
    pub fn adjoint_map_at_center(&self, q: i64) -> Result<MapFamily> {
        let adj = self.map(q).adjoint(&self.gram(q), &self.gram(q + 1))?;
        let theta = Scalar::new(BigRational::from_integer(0.into()), -(&self.center.im + &self.center.im));
        adj.translate(&theta)
    }

    /// `□_q = P_q^★ P_q + P_{q-1} P_{q-1}^★` with the adjoints shifted to the center.
    pub fn laplacian(&self, q: i64) -> Result<MapFamily> {
        let up = self.adjoint_map_at_center(q)?.mul(&self.map(q))?;
        let down = self.map(q - 1).mul(&self.adjoint_map_at_center(q - 1)?)?;
        up.add(&down)
    }

    /// The adjoint complex at the conjugate center, re-indexed so arrows go
    /// up again: degree `j` of the result is `F_{m-j}` and its map `j` is
    /// `P_{m-1-j}^★`.
    pub fn adjoint(&self) -> Result<Self> {
        let m = self.maps.len();
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let gram: Vec<Mat> = self.gram.iter().rev().cloned().collect();
        let maps = (0..m)
            .map(|j| {
                let q = m - 1 - j;
                self.maps[q].adjoint(&self.gram[q], &self.gram[q + 1])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_gram(self.center.conj(), dims, maps, gram)
    }

    /// Degree in the adjoint complex corresponding to `F_q`.
    pub fn adjoint_degree(&self, q: i64) -> i64 {
        self.maps.len() as i64 - q
    }

    /// `σ ↦ P(σ + θ)` for every map; the center moves to `σ₀ − θ`.
    pub fn translate(&self, theta: &Scalar) -> Result<Self> {
        let maps = self.maps.iter().map(|p| p.translate(theta)).collect::<Result<Vec<_>>>()?;
        self.rebuild(&self.center - theta, maps)
    }

    /// Moves the expansion point to 0 keeping every coefficient, i.e.
    /// `σ ↦ P(σ + σ₀)`. Unlike [`Self::translate`] this also accepts
    /// truncated germs, whose coefficients are already relative to the center.
    pub fn at_origin(&self) -> Self {
        let z = scalar::zero();
        let maps = self.maps.iter().map(|p| p.with_center(z.clone())).collect();
        self.rebuild(z, maps).expect("same data")
    }

    /// The same polynomial complex expanded around another point.
    pub fn recenter(&self, new_center: &Scalar) -> Result<Self> {
        let maps = self.maps.iter().map(|p| p.recenter(new_center)).collect::<Result<Vec<_>>>()?;
        self.rebuild(new_center.clone(), maps)
    }
}

/// Data of an indicial family `𝒜_q(σ) = bP_q + σ Λ_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialInput {
    pub bp: Vec<Mat>,
    pub lambda: Vec<Mat>,
    pub gamma: BigRational,
    pub anchor: i64,
}

/// Outcome of the structural checks on an [`IndicialInput`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialCheck {
    /// Whether `Λ` is exact at every inner degree.
    pub lambda_exact: bool,
}

impl IndicialInput {
    pub fn length(&self) -> usize {
        self.bp.len()
    }

    pub fn dims(&self) -> Result<Vec<usize>> {
        if self.bp.is_empty() || self.bp.len() != self.lambda.len() {
            return Err(Error::Dimension("bP and Λ lists must be nonempty and equally long".into()));
        }
        let mut dims = vec![self.bp[0].cols()];
        for (q, (b, l)) in self.bp.iter().zip(&self.lambda).enumerate() {
            if b.shape() != l.shape() || b.cols() != dims[q] {
                return Err(Error::Dimension(format!("indicial degree {q}")));
            }
            dims.push(b.rows());
        }
        Ok(dims)
    }

    /// `𝒜_q(σ + shift)` as an exact degree-one family at center 0.
    pub fn family(&self, q: usize, shift: &Scalar) -> MapFamily {
        let c0 = self.bp[q].add(&self.lambda[q].scale(shift));
        MapFamily::polynomial_shaped(c0.rows(), c0.cols(), scalar::zero(), vec![c0, self.lambda[q].clone()])
            .expect("consistent")
    }

    /// `𝒜★_q(σ) = bP_q^★ + (σ − i(2γ−1)) Λ_q^★`, standard inner products.
    pub fn adjoint_family(&self, q: usize, shift: &Scalar) -> MapFamily {
        let s = shift - &(&scalar::i() * &scalar::from_rational(&self.gamma * BigRational::from_integer(2.into()) - BigRational::from_integer(1.into())));
        let b = self.bp[q].adjoint();
        let l = self.lambda[q].adjoint();
        let c0 = b.add(&l.scale(&s));
        MapFamily::polynomial_shaped(c0.rows(), c0.cols(), scalar::zero(), vec![c0, l]).expect("consistent")
    }

    /// Checks `𝒜_{q+1}(σ+i) 𝒜_q(σ) = 0` coefficientwise and reports
    /// exactness of the `Λ` sequence.
    pub fn check(&self) -> Result<IndicialCheck> {
        let dims = self.dims()?;
        for q in 0..self.length().saturating_sub(1) {
            let c = self.family(q + 1, &scalar::i()).mul(&self.family(q, &scalar::zero()))?;
            if let Some((e, r, col)) = c.first_nonzero() {
                return Err(Error::Invalid(format!(
                    "indicial identity fails at degree {q}, sigma exponent {e}, entry ({r},{col})"
                )));
            }
        }
        let mut exact = true;
        for q in 1..self.length() {
            let rank_in = self.lambda[q - 1].rank();
            let rank_out = self.lambda[q].rank();
            if dims[q] - rank_out != rank_in {
                exact = false;
            }
        }
        Ok(IndicialCheck { lambda_exact: exact })
    }

    /// Shift `i(q'−q) + i(γ−½)` aligning degree `q'`.
    pub fn alignment(&self, qp: usize) -> Scalar {
        let half = BigRational::new(1.into(), 2.into());
        let re = BigRational::from_integer((qp as i64 - self.anchor).into()) + &self.gamma - half;
        &scalar::i() * &scalar::from_rational(re)
    }

    /// The straight complex `𝒫_{q'}(σ) = 𝒜_{q'}(σ + i(q'−q) + i(γ−½))` at center 0.
    pub fn build(&self) -> Result<ComplexFamily> {
        self.check()?;
        let dims = self.dims()?;
        let maps = (0..self.length()).map(|qp| self.family(qp, &self.alignment(qp))).collect();
        let c = ComplexFamily::new(scalar::zero(), dims, maps)?;
        if let Err(v) = c.validate() {
            return Err(Error::Inconsistency(format!("aligned indicial complex fails at {v:?}")));
        }
        Ok(c)
    }
}

/// Requested structure for [`generate_gauge_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeProfile {
    pub dims: Vec<usize>,
    /// `(degree, exponent)` of each block `ℂ →^{s^k} ℂ` from `F_q` to `F_{q+1}`.
    pub blocks: Vec<(usize, u32)>,
    /// Degree bound of the gauge entries; `None` for the trivial gauge.
    pub gauge_degree: Option<usize>,
    pub center: Scalar,
}

/// Direct sum of elementary blocks, padded with identity blocks and
/// conjugated by random polynomial gauges. Returns the complex and the
/// expected local cohomology dimension in each degree.
pub fn generate_gauge_complex(seed: u64, profile: &GaugeProfile) -> Result<(ComplexFamily, Vec<usize>)> {
    let dims = &profile.dims;
    if dims.is_empty() {
        return Err(Error::Invalid("profile needs at least one space".into()));
    }
    let m = dims.len() - 1;
    let mut src = vec![0usize; m + 1];
    let mut tgt = vec![0usize; m + 1];
    for &(q, k) in &profile.blocks {
        if q >= m || k == 0 {
            return Err(Error::Invalid(format!("block ({q},{k}) does not fit the profile")));
        }
        src[q] += 1;
        tgt[q + 1] += 1;
    }
    // identity blocks i_q from F_q to F_{q+1}
    let mut ident = vec![0usize; m + 1];
    for q in 0..=m {
        let used = src[q] + tgt[q] + if q > 0 { ident[q - 1] } else { 0 };
        if used > dims[q] {
            return Err(Error::Invalid(format!("profile infeasible: degree {q} needs {used} > {}", dims[q])));
        }
        ident[q] = dims[q] - used;
    }
    if ident[m] != 0 {
        return Err(Error::Invalid(format!("profile infeasible: {} dimensions left in the top degree", ident[m])));
    }
    // layout of F_q: [block sources, block targets, identity sources, identity targets]
    let mut truth = vec![0usize; m + 1];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = profile.center.clone();
    let mut maps = Vec::new();
    for q in 0..m {
        let mut deg_hi = 0usize;
        for &(bq, k) in &profile.blocks {
            if bq == q {
                deg_hi = deg_hi.max(k as usize);
            }
        }
        let mut coeffs = vec![Mat::zeros(dims[q + 1], dims[q]); deg_hi + 1];
        let mut s = 0;
        for &(bq, k) in &profile.blocks {
            if bq != q {
                continue;
            }
            // target slot: block targets in F_{q+1} come after its own sources
            coeffs[k as usize][(src[q + 1] + s, s)] = scalar::one();
            truth[q] += k as usize;
            s += 1;
        }
        let src_off = src[q] + tgt[q];
        let tgt_off = src[q + 1] + tgt[q + 1] + ident[q + 1];
        for j in 0..ident[q] {
            coeffs[0][(tgt_off + j, src_off + j)] = scalar::one();
        }
        maps.push(MapFamily::polynomial_shaped(dims[q + 1], dims[q], center.clone(), coeffs)?);
    }
    let gauges: Vec<(MapFamily, MapFamily)> = match profile.gauge_degree {
        None => dims.iter().map(|&n| (MapFamily::identity(n, center.clone()), MapFamily::identity(n, center.clone()))).collect(),
        Some(g) => dims.iter().map(|&n| random_gauge(&mut rng, n, g, &center)).collect(),
    };
    let maps = maps
        .iter()
        .enumerate()
        .map(|(q, p)| gauges[q + 1].0.mul(p)?.mul(&gauges[q].1))
        .collect::<Result<Vec<_>>>()?;
    let c = ComplexFamily::new(center, dims.clone(), maps)?;
    Ok((c, truth))
}

/// `(U, U⁻¹)` with `U = Π·(I + N)·R`: `Π` a permutation, `N` supported below
/// a split point (so `N² = 0`), `R` constant upper unitriangular.
fn random_gauge(rng: &mut ChaCha8Rng, n: usize, degree: usize, center: &Scalar) -> (MapFamily, MapFamily) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pm = Mat::from_fn(n, n, |r, c| if perm[c] == r { scalar::one() } else { scalar::zero() });
    let split = if n > 1 { rng.gen_range(1..n) } else { 0 };
    let mut nc = vec![Mat::zeros(n, n); degree + 1];
    for r in split..n {
        for c in 0..split {
            for m in nc.iter_mut() {
                if rng.gen_bool(0.5) {
                    m[(r, c)] = scalar::random_gauss(rng, 1);
                }
            }
        }
    }
    let nil = MapFamily::polynomial_shaped(n, n, center.clone(), nc).expect("shape");
    let id = MapFamily::identity(n, center.clone());
    let mut rm = Mat::identity(n);
    for r in 0..n {
        for c in r + 1..n {
            if rng.gen_bool(0.5) {
                rm[(r, c)] = scalar::random_gauss(rng, 1);
            }
        }
    }
    let rinv = rm.inverse().expect("unitriangular");
    let u = id.add(&nil).expect("shape").left_mul(&pm).right_mul(&rm);
    let uinv = id.sub(&nil).expect("shape").left_mul(&rinv).right_mul(&pm.transpose());
    (u, uinv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, int};

    fn z() -> Scalar {
        scalar::zero()
    }

    pub(crate) fn e1() -> ComplexFamily {
        let p = MapFamily::polynomial(z(), vec![Mat::from_i64(&[&[0]]), Mat::from_i64(&[&[1]])]).unwrap();
        ComplexFamily::new(z(), vec![1, 1], vec![p]).unwrap()
    }

    fn jordan() -> ComplexFamily {
        let p = MapFamily::polynomial(z(), vec![Mat::from_i64(&[&[0, 1], &[0, 0]]), Mat::identity(2)]).unwrap();
        ComplexFamily::new(z(), vec![2, 2], vec![p]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(e1().validate().is_ok());
        let p0 = MapFamily::polynomial(z(), vec![Mat::zeros(1, 1), Mat::identity(1)]).unwrap();
        let p1 = MapFamily::constant(z(), Mat::identity(1));
        let bad = ComplexFamily::new(z(), vec![1, 1, 1], vec![p0, p1]).unwrap();
        assert_eq!(bad.validate(), Err(Violation { degree: 0, exponent: 1, row: 0, col: 0 }));
    }

    #[test]
    fn laplacians() {
        let l = e1().laplacian(0).unwrap();
        assert_eq!(l.coeff_or_zero(2), Mat::identity(1));
        assert_eq!(l.degree(), 2);
        assert!(l.coeff_or_zero(0).is_zero() && l.coeff_or_zero(1).is_zero());
        let l = jordan().laplacian(0).unwrap();
        // [[σ², σ],[σ, σ²+1]]
        assert_eq!(l.coeff_or_zero(0), Mat::from_i64(&[&[0, 0], &[0, 1]]));
        assert_eq!(l.coeff_or_zero(1), Mat::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(l.coeff_or_zero(2), Mat::identity(2));
        let zero = ComplexFamily::new(z(), vec![2, 1], vec![MapFamily::zero(1, 2, z())]).unwrap();
        assert!(zero.laplacian(0).unwrap().is_zero());
    }

    #[test]
    fn laplacian_intertwines_on_the_center_line() {
        for seed in 0..4 {
            let profile = GaugeProfile {
                dims: vec![2, 3, 1],
                blocks: vec![(0, 1), (1, 2)],
                gauge_degree: Some(1),
                center: gauss(1, 1),
            };
            let (c, _) = generate_gauge_complex(seed, &profile).unwrap();
            for q in 0..2 {
                let lhs = c.laplacian(q + 1).unwrap().mul(&c.map(q)).unwrap();
                let rhs = c.map(q).mul(&c.laplacian(q).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn adjoint_complexes() {
        let j = jordan();
        let a = j.adjoint().unwrap();
        assert_eq!(a.map(0).coeff_or_zero(0), Mat::from_i64(&[&[0, 0], &[1, 0]]));
        assert_eq!(a.adjoint().unwrap(), j);
        let e = e1();
        assert_eq!(e.adjoint().unwrap(), e);
        let (c, _) = generate_gauge_complex(
            5,
            &GaugeProfile { dims: vec![1, 3, 3, 1], blocks: vec![(0, 1), (1, 1), (2, 2)], gauge_degree: Some(2), center: gauss(0, 1) },
        )
        .unwrap();
        let a = c.adjoint().unwrap();
        assert!(a.validate().is_ok());
        assert_eq!(a.center(), &gauss(0, -1));
        assert_eq!(a.adjoint().unwrap(), c);
    }

    #[test]
    fn indicial_builders() {
        let half = BigRational::new(1.into(), 2.into());
        let inp = IndicialInput {
            bp: vec![Mat::zeros(1, 1)],
            lambda: vec![Mat::identity(1)],
            gamma: half.clone(),
            anchor: 0,
        };
        assert_eq!(inp.build().unwrap(), e1());
        let inp = IndicialInput { bp: vec![Mat::identity(1)], ..inp };
        let c = inp.build().unwrap();
        assert_eq!(c.map(0).at_center(), Mat::identity(1));
        // constant complex ℂ → ℂ² → ℂ with Λ = 0
        let b0 = Mat::from_i64(&[&[1], &[0]]);
        let b1 = Mat::from_i64(&[&[0, 1]]);
        let inp = IndicialInput {
            bp: vec![b0.clone(), b1.clone()],
            lambda: vec![Mat::zeros(2, 1), Mat::zeros(1, 2)],
            gamma: BigRational::from_integer(3.into()),
            anchor: 1,
        };
        let c = inp.build().unwrap();
        assert!(c.map(0).is_polynomial() && c.map(0).degree() == 0);
        assert_eq!(c.map(1).at_center(), b1);
        assert!(!inp.check().unwrap().lambda_exact);
    }

    #[test]
    fn indicial_identity_is_enforced() {
        // de Rham-like model on ℂ → ℂ² → ℂ: Λ exact, bP chosen to satisfy the shifted identity
        let l0 = Mat::from_i64(&[&[1], &[0]]);
        let l1 = Mat::from_i64(&[&[0, 1]]);
        let good = IndicialInput {
            bp: vec![Mat::from_i64(&[&[0], &[1]]), Mat::from_rows(vec![vec![int(-1), -scalar::i()]])],
            lambda: vec![l0.clone(), l1.clone()],
            gamma: BigRational::from_integer(0.into()),
            anchor: 0,
        };
        assert!(good.check().unwrap().lambda_exact);
        assert!(good.build().unwrap().validate().is_ok());
        let bad = IndicialInput { bp: vec![Mat::from_i64(&[&[0], &[1]]), Mat::from_i64(&[&[1, 0]])], ..good };
        assert!(bad.build().is_err());
    }

    #[test]
    fn generator_ground_truth_and_validity() {
        let p = GaugeProfile { dims: vec![1, 1], blocks: vec![(0, 1)], gauge_degree: None, center: z() };
        let (c, truth) = generate_gauge_complex(0, &p).unwrap();
        assert_eq!(c, e1());
        assert_eq!(truth, vec![1, 0]);
        let p = GaugeProfile { dims: vec![3, 3], blocks: vec![], gauge_degree: Some(2), center: z() };
        assert_eq!(generate_gauge_complex(1, &p).unwrap().1, vec![0, 0]);
        let p = GaugeProfile { dims: vec![3, 3], blocks: vec![(0, 1), (0, 2)], gauge_degree: Some(2), center: z() };
        let (c, truth) = generate_gauge_complex(2, &p).unwrap();
        assert_eq!(truth, vec![3, 0]);
        assert!(c.validate().is_ok());
        let p = GaugeProfile { dims: vec![2, 1], blocks: vec![], gauge_degree: None, center: z() };
        assert!(generate_gauge_complex(0, &p).is_err());
        for seed in 0..10 {
            let p = GaugeProfile {
                dims: vec![2, 4, 4, 2],
                blocks: vec![(0, 1), (1, 3), (2, 2)],
                gauge_degree: Some(2),
                center: z(),
            };
            let (c, _) = generate_gauge_complex(seed, &p).unwrap();
            assert!(c.validate().is_ok());
            assert!(c.is_polynomial());
        }
    }

    #[test]
    fn translation_round_trip() {
        let e = ComplexFamily::new(
            scalar::i(),
            vec![1, 1],
            vec![MapFamily::polynomial(scalar::i(), vec![Mat::zeros(1, 1), Mat::identity(1)]).unwrap()],
        )
        .unwrap();
        let t = e.translate(&scalar::i()).unwrap();
        assert_eq!(t.center(), &z());
        let j = jordan();
        let theta = gauss(2, -1);
        assert_eq!(j.translate(&theta).unwrap().translate(&-theta.clone()).unwrap(), j);
        assert_eq!(j.translate(&z()).unwrap(), j);
        assert!(j.truncate(3).translate(&theta).is_err());
    }
}

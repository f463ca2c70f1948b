//! Cohomology of the singular-part complexes `𝔰P_q` at the center.
//!
//! Principal parts of pole order at most `N` are stored as stacked
//! coordinates `[u₋₁; u₋₂; …; u₋N]`, on which `𝔰P` acts by a block
//! lower-triangular Toeplitz matrix.

use crate::error::{Error, Result};
use crate::holo_complex::ComplexFamily;
use crate::linalg::Mat;
use crate::matrix_series::MapFamily;
use crate::poly::{self, Poly};
use crate::scalar::{self, Scalar};
use rayon::prelude::*;

/// `Σ_ℓ u₋ℓ (σ−σ₀)^{-ℓ}` with vector coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPart {
    center: Scalar,
    dim: usize,
    parts: Vec<Vec<Scalar>>,
}

impl PrincipalPart {
    /// `parts[ℓ-1]` is the coefficient of `(σ−σ₀)^{-ℓ}`.
    pub fn new(center: Scalar, dim: usize, parts: Vec<Vec<Scalar>>) -> Result<Self> {
        if parts.iter().any(|p| p.len() != dim) {
            return Err(Error::Dimension("principal part coefficient length".into()));
        }
        Ok(PrincipalPart { center, dim, parts })
    }

    pub fn zero(center: Scalar, dim: usize, depth: usize) -> Self {
        PrincipalPart { center, dim, parts: vec![vec![scalar::zero(); dim]; depth] }
    }

    pub fn from_coords(center: Scalar, dim: usize, coords: &[Scalar]) -> Self {
        let parts = if dim == 0 {
            vec![]
        } else {
            coords.chunks(dim).map(|c| c.to_vec()).collect()
        };
        PrincipalPart { center, dim, parts }
    }

    /// `c·(σ−σ₀)^{-ℓ}·e_i`.
    pub fn monomial(center: Scalar, dim: usize, ell: usize, i: usize, c: Scalar) -> Self {
        let mut u = Self::zero(center, dim, ell);
        u.parts[ell - 1][i] = c;
        u
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored coefficients.
    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    /// Largest `ℓ` with `u₋ℓ ≠ 0` (0 for the zero part).
    pub fn pole_order(&self) -> usize {
        self.parts
            .iter()
            .rposition(|p| p.iter().any(|x| !scalar::is_zero(x)))
            .map_or(0, |k| k + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.pole_order() == 0
    }

    /// `u₋ℓ` (zero beyond the stored depth).
    pub fn part(&self, ell: usize) -> Vec<Scalar> {
        self.parts.get(ell - 1).cloned().unwrap_or_else(|| vec![scalar::zero(); self.dim])
    }

    pub fn parts(&self) -> &[Vec<Scalar>] {
        &self.parts
    }

    /// Stacked coordinates at the given depth.
    pub fn coords(&self, depth: usize) -> Result<Vec<Scalar>> {
        if self.pole_order() > depth {
            return Err(Error::Truncation(format!(
                "pole order {} exceeds depth {depth}",
                self.pole_order()
            )));
        }
        Ok((1..=depth).flat_map(|l| self.part(l)).collect())
    }

    pub fn with_depth(&self, depth: usize) -> Result<Self> {
        Ok(Self::from_coords(self.center.clone(), self.dim, &self.coords(depth)?))
    }

    fn zip(&self, o: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        if self.center != o.center {
            return Err(Error::CenterMismatch(scalar::format(&self.center), scalar::format(&o.center)));
        }
        if self.dim != o.dim {
            return Err(Error::Dimension("principal parts of different spaces".into()));
        }
        let d = self.depth().max(o.depth());
        let parts = (1..=d)
            .map(|l| self.part(l).iter().zip(o.part(l).iter()).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(PrincipalPart { center: self.center.clone(), dim: self.dim, parts })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let parts = self.parts.iter().map(|p| p.iter().map(|x| x * c).collect()).collect();
        PrincipalPart { center: self.center.clone(), dim: self.dim, parts }
    }

    /// As an exact `dim × 1` Laurent family.
    pub fn to_family(&self) -> MapFamily {
        let d = self.depth();
        let coeffs = (0..d).map(|j| Mat::column_vector(&self.part(d - j))).collect();
        MapFamily::new(self.dim, 1, self.center.clone(), -(d as i64), coeffs, None).expect("column")
    }

    /// Singular part of a `dim × 1` family; its coefficient at exponent -1
    /// must be known.
    pub fn singular_part_of(f: &MapFamily) -> Result<Self> {
        if f.cols() != 1 {
            return Err(Error::Dimension("singular part of a non-vector family".into()));
        }
        let depth = (-f.valuation()).max(0) as usize;
        let parts = (1..=depth)
            .map(|l| f.coeff(-(l as i64)).map(|m| m.column(0)))
            .collect::<Result<Vec<_>>>()?;
        if depth == 0 {
            f.coeff(-1)?;
        }
        Self::new(f.center().clone(), f.rows(), parts)
    }

    /// `𝔰(P u)` by series multiplication.
    pub fn apply(&self, p: &MapFamily) -> Result<Self> {
        Self::singular_part_of(&p.mul(&self.to_family())?)
    }
}

/// Matrix of `𝔰P` from depth `n_in` to depth `n_out`:
/// `(𝔰Pu)₋ₘ = Σ_{k=0}^{n_in−m} P_k u₋₍ₘ₊ₖ₎` for `1 ≤ m ≤ n_out`.
pub fn germ_map_matrix(p: &MapFamily, n_in: usize, n_out: usize) -> Result<Mat> {
    if !p.is_holomorphic() {
        return Err(Error::Invalid("germ map of a family with a pole".into()));
    }
    let (r, c) = p.shape();
    let mut m = Mat::zeros(r * n_out, c * n_in);
    if n_in == 0 || r == 0 || c == 0 {
        return Ok(m);
    }
    let coeffs = (0..n_in as i64).map(|k| p.coeff(k)).collect::<Result<Vec<_>>>()?;
    for row in 1..=n_out {
        for col in row..=n_in {
            let k = col - row;
            if !coeffs[k].is_zero() {
                m.set_block((row - 1) * r, (col - 1) * c, &coeffs[k]);
            }
        }
    }
    Ok(m)
}

/// Cohomology classes in one degree: representatives of pole order at most
/// `depth`, taken modulo coboundaries of inputs of depth `depth + witness_depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomBasis {
    pub degree: i64,
    pub center: Scalar,
    pub space_dim: usize,
    pub depth: usize,
    pub witness_depth: usize,
    pub reps: Vec<PrincipalPart>,
    /// Basis of the coboundaries, as columns at depth `depth + witness_depth`.
    pub image: Mat,
}

impl CohomBasis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn window(&self) -> usize {
        self.depth + self.witness_depth
    }

    fn rep_matrix(&self) -> Mat {
        let w = self.window();
        let cols: Vec<Vec<Scalar>> = self.reps.iter().map(|r| r.coords(w).expect("rep within window")).collect();
        Mat::from_columns(self.space_dim * w, &cols)
    }

    /// Whether `u` is a coboundary within the window.
    pub fn is_exact(&self, u: &PrincipalPart) -> Result<bool> {
        let v = u.coords(self.window())?;
        Ok(self.image.spans(&Mat::column_vector(&v)))
    }

    /// Coordinates of the class of a closed `u` in the representative basis.
    pub fn coordinates(&self, u: &PrincipalPart) -> Result<Vec<Scalar>> {
        let v = u.coords(self.window())?;
        let a = Mat::hstack(&[&self.rep_matrix(), &self.image]);
        let x = a
            .solve(&v)
            .ok_or_else(|| Error::Invalid("element is not closed within the cohomology window".into()))?;
        Ok(x[..self.dim()].to_vec())
    }

    /// A random coboundary from the window, expressed at full window depth.
    pub fn random_coboundary<R: rand::Rng>(&self, rng: &mut R) -> PrincipalPart {
        let coeffs: Vec<Scalar> = (0..self.image.cols()).map(|_| scalar::random_small(rng, 3, 2)).collect();
        let v = self.image.mul_vec(&coeffs);
        PrincipalPart::from_coords(self.center.clone(), self.space_dim, &v)
    }
}

/// Closed principal parts of depth `depth` modulo `𝔰P_{q−1}` applied to
/// inputs of depth `depth + witness_depth`. Representatives are the kernel
/// vectors that are pivots after the coboundaries, so the choice is
/// deterministic.
pub fn cohomology_window(c: &ComplexFamily, q: i64, depth: usize, witness_depth: usize) -> Result<CohomBasis> {
    let n = c.dim(q);
    let w = depth + witness_depth;
    let a = germ_map_matrix(&c.map(q), depth, depth)?;
    let b = germ_map_matrix(&c.map(q - 1), w, w)?;
    let k = a.kernel();
    let mut kp = Mat::zeros(n * w, k.cols());
    kp.set_block(0, 0, &k);
    let image = b.column_basis();
    let piv = Mat::hstack(&[&image, &kp]).independent_columns();
    let reps = piv
        .into_iter()
        .filter(|&p| p >= image.cols())
        .map(|p| PrincipalPart::from_coords(c.center().clone(), n, &k.column(p - image.cols())))
        .collect();
    Ok(CohomBasis { degree: q, center: c.center().clone(), space_dim: n, depth, witness_depth, reps, image })
}

/// Cohomology at depth `n`, coboundaries taken from depth `2n`.
pub fn cohomology_at(c: &ComplexFamily, q: i64, n: usize) -> Result<CohomBasis> {
    cohomology_window(c, q, n, n)
}

/// Pole order of `□_q⁻¹` at the center: the largest local Smith exponent of `□_q`.
pub fn green_pole_order(c: &ComplexFamily, q: i64) -> Result<i64> {
    if c.dim(q) == 0 {
        return Ok(0);
    }
    let lap = c.laplacian(q)?;
    let sf = lap.local_smith_form().map_err(|e| match e {
        Error::Truncation(m) if lap.is_polynomial() => {
            Error::Singular(format!("Laplacian in degree {q} is singular near the center ({m})"))
        }
        other => other,
    })?;
    if sf.exponents.len() < c.dim(q) {
        return Err(Error::Singular(format!("Laplacian in degree {q} is singular near the center")));
    }
    Ok(sf.max_exponent())
}

/// Certified window `(N, M) = (L_q, L_{q−1})`, with `N ≥ 1`.
pub fn certified_window(c: &ComplexFamily, q: i64) -> Result<(usize, usize)> {
    let lq = green_pole_order(c, q)?;
    let lm = green_pole_order(c, q - 1)?;
    Ok((lq.max(1) as usize, lm as usize))
}

/// Cohomology at the certified window, checked against the window one step deeper.
pub fn stabilized_cohomology(c: &ComplexFamily, q: i64) -> Result<CohomBasis> {
    let (n, m) = certified_window(c, q)?;
    let basis = cohomology_window(c, q, n, m)?;
    let deeper = cohomology_window(c, q, n + 1, m + 1)?;
    if basis.dim() != deeper.dim() {
        return Err(Error::Inconsistency(format!(
            "degree {q}: dimension {} at depth ({n},{m}) but {} at ({},{})",
            basis.dim(),
            deeper.dim(),
            n + 1,
            m + 1
        )));
    }
    Ok(basis)
}

/// A cohomologous representative and the coboundary witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    /// `𝔰(𝒢_q P_q^★ P_q u)`.
    pub rep: PrincipalPart,
    /// `w` with `u − rep = 𝔰P_{q−1} w`.
    pub witness: PrincipalPart,
}

/// Replaces a closed `u` by `𝔰(𝒢_q P_q^★ P_q u)`, which has pole order at
/// most the Green pole order, and returns the coboundary witness
/// `𝔰(𝒢_{q−1} P_{q−1}^★ u)`.
pub fn representative_normalize(c: &ComplexFamily, q: i64, u: &PrincipalPart) -> Result<Normalized> {
    let d = u.pole_order().max(1) as i64;
    let uf = u.to_family();
    let pu = c.map(q).mul(&uf)?;
    if PrincipalPart::singular_part_of(&pu)?.pole_order() != 0 {
        return Err(Error::Invalid(format!("input is not closed in degree {q}")));
    }
    let rep = if c.dim(q) == 0 {
        u.clone()
    } else {
        let l = green_pole_order(c, q)?;
        let g = c.laplacian(q)?.inverse_via_smith(2 * l + d + 1)?;
        let x = c.adjoint_map_at_center(q)?.mul(&pu)?;
        PrincipalPart::singular_part_of(&g.mul(&x)?)?
    };
    let witness = if c.dim(q - 1) == 0 {
        PrincipalPart::zero(c.center().clone(), 0, 0)
    } else {
        let l = green_pole_order(c, q - 1)?;
        let g = c.laplacian(q - 1)?.inverse_via_smith(2 * l + d + 1)?;
        let x = c.adjoint_map_at_center(q - 1)?.mul(&uf)?;
        PrincipalPart::singular_part_of(&g.mul(&x)?)?
    };
    let back = witness.apply(&c.map(q - 1))?;
    let diff = u.sub(&rep)?;
    let depth = diff.depth().max(back.depth());
    if diff.coords(depth.max(diff.pole_order()))? != back.coords(depth.max(diff.pole_order()))? {
        return Err(Error::Inconsistency(format!("normalization witness fails in degree {q}")));
    }
    Ok(Normalized { rep, witness })
}

/// Outcome of a boundary-spectrum scan in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub degree: i64,
    /// `det □_q` in `s = σ − center`, when computed.
    pub determinant: Option<Poly>,
    pub candidates: Vec<Scalar>,
    /// Points with nonzero cohomology and its dimension.
    pub spectrum: Vec<(Scalar, usize)>,
    /// Candidates where the cohomology was computed and found to vanish.
    pub certified_zero: Vec<Scalar>,
    /// Factors of the determinant whose roots are not in ℚ(i).
    pub unresolved: Vec<(Poly, usize)>,
}

/// Points where the local cohomology in degree `q` is nonzero. Any such
/// point is a root of `det □_q`, since there `□_q` factors through the
/// non-exact constant complex.
pub fn spectrum_scan(c: &ComplexFamily, q: i64, candidates: Option<Vec<Scalar>>) -> Result<SpectrumReport> {
    let (determinant, mut cands, unresolved) = match candidates {
        Some(list) => (None, list, vec![]),
        None => {
            if !c.is_polynomial() {
                return Err(Error::Invalid("spectrum scan of a truncated family needs candidates".into()));
            }
            let det = Poly::new(c.laplacian(q)?.det_polynomial()?);
            if det.is_zero() {
                return Err(Error::Singular(format!("det of the Laplacian in degree {q} vanishes identically")));
            }
            let roots = poly::gaussian_rational_roots(&det);
            let pts = roots.roots.iter().map(|(r, _)| c.center() + r).collect();
            (Some(det), pts, roots.unresolved)
        }
    };
    cands.sort_by(poly::cmp_scalar);
    cands.dedup();
    let dims = cands
        .par_iter()
        .map(|p| {
            let local = if p == c.center() { c.clone() } else { c.recenter(p)? };
            Ok(stabilized_cohomology(&local, q)?.dim())
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut spectrum = Vec::new();
    let mut certified_zero = Vec::new();
    for (p, d) in cands.iter().zip(dims) {
        if d > 0 {
            spectrum.push((p.clone(), d));
        } else {
            certified_zero.push(p.clone());
        }
    }
    Ok(SpectrumReport { degree: q, determinant, candidates: cands, spectrum, certified_zero, unresolved })
}

/// Matrices of the maps induced on cohomology by a degree-one map `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMaps {
    pub bases: Vec<CohomBasis>,
    /// `maps[q]` is `dim H^{q+1} × dim H^q`.
    pub maps: Vec<Mat>,
    /// `𝐓_{q+1} 𝐓_q = 0` for every `q`, when a witness was supplied.
    pub squares_to_zero: Option<bool>,
}

fn family_or_zero(list: &[MapFamily], q: i64, rows: usize, cols: usize, center: &Scalar) -> MapFamily {
    if q >= 0 && (q as usize) < list.len() {
        list[q as usize].clone()
    } else {
        MapFamily::zero(rows, cols, center.clone())
    }
}

/// Maps `𝐓_q : ℋ^q → ℋ^{q+1}` induced by `T_q : F_q → F_{q+1}` with
/// `P_{q+1}T_q + T_{q+1}P_q = 0`. With `S_q : F_q → F_{q+1}` satisfying
/// `T_{q+1}T_q = −(P_{q+1}S_q + S_{q+1}P_q)` the composites are checked to vanish.
pub fn induced_degree1_map(
    c: &ComplexFamily,
    t: &[MapFamily],
    s: Option<&[MapFamily]>,
    window: Option<(usize, usize)>,
) -> Result<InducedMaps> {
    let m = c.length() as i64;
    let center = c.center();
    let tq = |q: i64| family_or_zero(t, q, c.dim(q + 1), c.dim(q), center);
    for (q, x) in t.iter().enumerate() {
        if x.shape() != (c.dim(q as i64 + 1), c.dim(q as i64)) || !x.is_holomorphic() {
            return Err(Error::Dimension(format!("degree-one map {q} has the wrong shape")));
        }
    }
    for q in -1..m {
        let lhs = c.map(q + 1).mul(&tq(q))?.add(&tq(q + 1).mul(&c.map(q))?)?;
        if let Some((e, r, col)) = lhs.first_nonzero() {
            return Err(Error::Invalid(format!(
                "P T + T P is nonzero in degree {q} at exponent {e}, entry ({r},{col})"
            )));
        }
    }
    if let Some(s) = s {
        let sq = |q: i64| family_or_zero(s, q, c.dim(q + 1), c.dim(q), center);
        for q in 0..m {
            let tt = tq(q + 1).mul(&tq(q))?;
            let ps = c.map(q + 1).mul(&sq(q))?.add(&sq(q + 1).mul(&c.map(q))?)?;
            if let Some((e, r, col)) = tt.add(&ps)?.first_nonzero() {
                return Err(Error::Invalid(format!(
                    "witness identity fails in degree {q} at exponent {e}, entry ({r},{col})"
                )));
            }
        }
    }
    let (n, w) = match window {
        Some(x) => x,
        None => {
            let mut lmax = 1;
            for q in 0..=m {
                lmax = lmax.max(green_pole_order(c, q)?);
            }
            (lmax as usize, lmax as usize)
        }
    };
    let bases = (0..=m).map(|q| cohomology_window(c, q, n, w)).collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::new();
    for q in 0..m {
        let (src, dst) = (&bases[q as usize], &bases[q as usize + 1]);
        let tm = germ_map_matrix(&tq(q), n + w, n + w)?;
        let pm = germ_map_matrix(&c.map(q + 1), n + w, n + w)?;
        let mut cols = Vec::new();
        for r in &src.reps {
            let v = tm.mul_vec(&r.coords(n + w)?);
            if pm.mul_vec(&v).iter().any(|x| !scalar::is_zero(x)) {
                return Err(Error::Inconsistency(format!("T maps a closed class to a non-closed one in degree {q}")));
            }
            cols.push(dst.coordinates(&PrincipalPart::from_coords(center.clone(), c.dim(q + 1), &v))?);
        }
        for b in src.image.columns() {
            let v = tm.mul_vec(&b);
            let img = PrincipalPart::from_coords(center.clone(), c.dim(q + 1), &v);
            if !dst.is_exact(&img)? {
                return Err(Error::Inconsistency(format!("T maps a coboundary to a non-exact class in degree {q}")));
            }
        }
        maps.push(Mat::from_columns(dst.dim(), &cols));
    }
    let squares_to_zero = s.map(|_| maps.windows(2).all(|p| p[1].mul(&p[0]).is_zero()));
    if squares_to_zero == Some(false) {
        return Err(Error::Inconsistency("induced maps do not square to zero".into()));
    }
    Ok(InducedMaps { bases, maps, squares_to_zero })
}

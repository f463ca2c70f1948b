//! Reduction of a complex to its harmonic spaces at the center.
//!
//! `F_q = N_q ⊕ R★_q ⊕ R_q` with `N_q = ker P_q(σ₀) ∩ ker P★_{q−1}(σ₀)`,
//! `R★_q = rg P★_q(σ₀)`, `R_q = rg P_{q−1}(σ₀)`. In these coordinates every
//! block of `P_q` except `P32 : R★_q → R_{q+1}` vanishes at the center, and
//! the Schur complement `P̃_q = P11 − P12 P32⁻¹ P31` is a complex on the
//! `N_q` that vanishes at the center. Dividing by `σ` and repeating gives
//! the recursive certificate.

use crate::error::{Error, Result};
use crate::germ_cohom::{representative_normalize, stabilized_cohomology, CohomBasis, PrincipalPart};
use crate::holo_complex::ComplexFamily;
use crate::linalg::Mat;
use crate::matrix_series::MapFamily;
use crate::residue_pairing::{certify_nondegenerate, cohomology_pairing_matrix, germ_pairing, Verdict};
use crate::scalar::{self, Scalar};

/// Hodge decomposition of one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeBlock {
    pub n: Mat,
    pub rstar: Mat,
    pub r: Mat,
    /// `[N | R★ | R]`, invertible.
    pub basis: Mat,
    pub basis_inv: Mat,
    pub proj_n: Mat,
    pub proj_rstar: Mat,
    pub proj_r: Mat,
}

impl HodgeBlock {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.n.cols(), self.rstar.cols(), self.r.cols())
    }

    /// Inner product induced on `N_q` by the basis.
    pub fn harmonic_gram(&self, g: &Mat) -> Mat {
        self.n.adjoint().mul(g).mul(&self.n)
    }

    fn offsets(&self) -> [usize; 4] {
        let (a, b, c) = self.dims();
        [0, a, a + b, a + b + c]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeData {
    pub center: Scalar,
    pub blocks: Vec<HodgeBlock>,
}

impl HodgeData {
    pub fn harmonic_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dims().0).collect()
    }
}

fn inconsistent(msg: String) -> Error {
    Error::Inconsistency(msg)
}

pub fn hodge_decompose(c: &ComplexFamily) -> Result<HodgeData> {
    let m = c.length() as i64;
    let mut blocks = Vec::new();
    for q in 0..=m {
        let nq = c.dim(q);
        let g = c.gram(q);
        let a = c.constant_map(q);
        let b = c.constant_map(q - 1);
        let astar = g.inverse()?.mul(&a.adjoint()).mul(&c.gram(q + 1));
        let bstar = c.gram(q - 1).inverse()?.mul(&b.adjoint()).mul(&g);
        let n = Mat::vstack(&[&a, &bstar]).kernel();
        let rstar = astar.column_basis();
        let r = b.column_basis();
        let basis = Mat::hstack(&[&n, &rstar, &r]);
        if basis.cols() != nq {
            return Err(inconsistent(format!("degree {q}: Hodge pieces have total dimension {} ≠ {nq}", basis.cols())));
        }
        let basis_inv = basis.inverse().map_err(|_| inconsistent(format!("degree {q}: Hodge pieces are dependent")))?;
        for (x, y) in [(&n, &rstar), (&n, &r), (&rstar, &r)] {
            if !x.adjoint().mul(&g).mul(y).is_zero() {
                return Err(inconsistent(format!("degree {q}: Hodge pieces are not orthogonal")));
            }
        }
        let (da, db) = (n.cols(), rstar.cols());
        let proj = |lo: usize, hi: usize| basis.submatrix(0..nq, lo..hi).mul(&basis_inv.submatrix(lo..hi, 0..nq));
        let (proj_n, proj_rstar, proj_r) = (proj(0, da), proj(da, da + db), proj(da + db, nq));
        blocks.push(HodgeBlock { n, rstar, r, basis, basis_inv, proj_n, proj_rstar, proj_r });
    }
    Ok(HodgeData { center: c.center().clone(), blocks })
}

/// Homotopy data of the Schur reduction, all maps in the original coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionData {
    pub hodge: HodgeData,
    /// Working order used for `P32⁻¹`; `None` when everything stayed exact.
    pub order: Option<i64>,
    /// The reduced complex on the `N_q`, with the induced inner products.
    pub ptilde: ComplexFamily,
    /// `Φ_q : F_q → N_q`.
    pub phi: Vec<MapFamily>,
    /// `Ψ_q : N_q → F_q`.
    pub psi: Vec<MapFamily>,
    /// `Q_q : F_q → F_{q−1}` for `q = 0..=m+1`.
    pub homotopy: Vec<MapFamily>,
}

impl ReductionData {
    pub fn phi(&self, q: i64) -> &MapFamily {
        &self.phi[q as usize]
    }

    pub fn psi(&self, q: i64) -> &MapFamily {
        &self.psi[q as usize]
    }

    /// `Ψ★_q : F_q → N_q` for the original and induced inner products.
    pub fn psi_adjoint(&self, c: &ComplexFamily, q: i64) -> Result<MapFamily> {
        self.psi(q).adjoint(&self.ptilde.gram(q), &c.gram(q))
    }
}

/// Working order for reducing an exact complex far enough to certify it:
/// three times the largest Green pole order, plus slack for the windows.
pub fn order_budget(c: &ComplexFamily) -> Result<i64> {
    let mut l = 0;
    for q in 0..=c.length() as i64 {
        l = l.max(crate::germ_cohom::green_pole_order(c, q)?);
    }
    Ok(3 * l + 6)
}

/// Schur reduction at the complex's own order, or at [`order_budget`] for
/// exact input.
pub fn schur_reduce(c: &ComplexFamily) -> Result<ReductionData> {
    let t = match c.order() {
        Some(o) => o,
        None => order_budget(c)?,
    };
    schur_reduce_to(c, t)
}

/// Schur reduction with `P32⁻¹` expanded to `order` where it is not exact.
/// Every homotopy identity is verified before returning.
pub fn schur_reduce_to(c: &ComplexFamily, order: i64) -> Result<ReductionData> {
    let hodge = hodge_decompose(c)?;
    let m = c.length();
    let z = c.center().clone();
    let hb = &hodge.blocks;
    let zero = |r: usize, k: usize| MapFamily::zero(r, k, z.clone());
    let ident = |r: usize| MapFamily::identity(r, z.clone());

    // blocks of X_q = B_{q+1}⁻¹ P_q B_q and Y_q = X_{q,32}⁻¹
    let mut xs: Vec<[[MapFamily; 3]; 3]> = Vec::new();
    let mut ys: Vec<MapFamily> = Vec::new();
    for q in 0..m {
        let x = c.maps()[q].left_mul(&hb[q + 1].basis_inv).right_mul(&hb[q].basis);
        let (ro, co) = (hb[q + 1].offsets(), hb[q].offsets());
        let blk = |i: usize, j: usize| x.block(ro[i]..ro[i + 1], co[j]..co[j + 1]);
        let grid = [[blk(0, 0), blk(0, 1), blk(0, 2)], [blk(1, 0), blk(1, 1), blk(1, 2)], [blk(2, 0), blk(2, 1), blk(2, 2)]];
        for (i, j) in (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&ij| ij != (2, 1)) {
            if !grid[i][j].at_center().is_zero() {
                return Err(inconsistent(format!("map {q}: block ({},{}) does not vanish at the center", i + 1, j + 1)));
            }
        }
        let x32 = &grid[2][1];
        let y = if x32.is_polynomial() && x32.degree() <= 0 {
            x32.local_inverse()
        } else {
            x32.local_inverse_to(order)
        }
        .map_err(|e| inconsistent(format!("map {q}: P32 is not invertible at the center ({e})")))?;
        ys.push(y);
        xs.push(grid);
    }

    let mut maps = Vec::new();
    for q in 0..m {
        let x = &xs[q];
        maps.push(x[0][0].sub(&x[0][1].mul(&ys[q])?.mul(&x[2][0])?)?);
    }
    let dims: Vec<usize> = hb.iter().map(|b| b.dims().0).collect();
    let grams: Vec<Mat> = (0..=m).map(|q| hb[q].harmonic_gram(&c.gram(q as i64))).collect();
    let ptilde = ComplexFamily::with_gram(z.clone(), dims, maps, grams)?;

    let mut phi = Vec::new();
    let mut psi = Vec::new();
    for q in 0..=m {
        let (a, b, cc) = hb[q].dims();
        let phi_b = if q > 0 {
            let corr = xs[q - 1][0][1].mul(&ys[q - 1])?.neg();
            MapFamily::from_blocks(&[a], &[a, b, cc], &[vec![ident(a), zero(a, b), corr]])?
        } else {
            MapFamily::from_blocks(&[a], &[a, b, cc], &[vec![ident(a), zero(a, b), zero(a, cc)]])?
        };
        phi.push(phi_b.right_mul(&hb[q].basis_inv));
        let psi_b = if q < m {
            let corr = ys[q].mul(&xs[q][2][0])?.neg();
            MapFamily::from_blocks(&[a, b, cc], &[a], &[vec![ident(a)], vec![corr], vec![zero(cc, a)]])?
        } else {
            MapFamily::from_blocks(&[a, b, cc], &[a], &[vec![ident(a)], vec![zero(b, a)], vec![zero(cc, a)]])?
        };
        psi.push(psi_b.left_mul(&hb[q].basis));
    }
    let mut homotopy = vec![zero(0, c.dim(0))];
    for q in 1..=m {
        let (a0, b0, c0) = hb[q - 1].dims();
        let (a1, b1, c1) = hb[q].dims();
        let qb = MapFamily::from_blocks(
            &[a0, b0, c0],
            &[a1, b1, c1],
            &[
                vec![zero(a0, a1), zero(a0, b1), zero(a0, c1)],
                vec![zero(b0, a1), zero(b0, b1), ys[q - 1].clone()],
                vec![zero(c0, a1), zero(c0, b1), zero(c0, c1)],
            ],
        )?;
        homotopy.push(qb.left_mul(&hb[q - 1].basis).right_mul(&hb[q].basis_inv));
    }
    homotopy.push(zero(c.dim(m as i64), 0));

    let exact = ptilde.is_polynomial() && phi.iter().chain(&psi).chain(&homotopy).all(MapFamily::is_polynomial);
    let red = ReductionData { hodge, order: (!exact).then_some(order), ptilde, phi, psi, homotopy };
    verify_reduction(c, &red)?;
    Ok(red)
}

/// Checks `ΦΨ = I`, `ΨΦ = I − (QP + PQ)`, `P̃∘P̃ = 0`, `P̃(σ₀) = 0` and
/// that `Φ`, `Ψ` are chain maps, each up to the provable order.
pub fn verify_reduction(c: &ComplexFamily, red: &ReductionData) -> Result<()> {
    let m = c.length() as i64;
    let z = c.center().clone();
    let fail = |what: &str, q: i64| Err(inconsistent(format!("reduction identity {what} fails in degree {q}")));
    let hq = |q: i64| &red.homotopy[q as usize];
    for q in 0..=m {
        let n = c.dim(q);
        let a = red.ptilde.dim(q);
        if !red.phi(q).mul(red.psi(q))?.agrees_with(&MapFamily::identity(a, z.clone())) {
            return fail("ΦΨ = I", q);
        }
        let qp = hq(q + 1).mul(&c.map(q))?.add(&c.map(q - 1).mul(hq(q))?)?;
        let rhs = MapFamily::identity(n, z.clone()).sub(&qp)?;
        if !red.psi(q).mul(red.phi(q))?.agrees_with(&rhs) {
            return fail("ΨΦ = I − (QP + PQ)", q);
        }
        if q < m {
            let pt = red.ptilde.map(q);
            if !pt.at_center().is_zero() {
                return fail("P̃(σ₀) = 0", q);
            }
            if !pt.mul(red.phi(q))?.agrees_with(&red.phi(q + 1).mul(&c.map(q))?) {
                return fail("P̃Φ = ΦP", q);
            }
            if !c.map(q).mul(red.psi(q))?.agrees_with(&red.psi(q + 1).mul(&pt)?) {
                return fail("PΨ = ΨP̃", q);
            }
        }
        if q + 1 < m {
            let sq = red.ptilde.map(q + 1).mul(&red.ptilde.map(q))?;
            if !sq.agrees_with(&MapFamily::zero(sq.rows(), sq.cols(), z.clone())) {
                return fail("P̃∘P̃ = 0", q);
            }
        }
    }
    Ok(())
}

fn require_closed(p: &MapFamily, u: &PrincipalPart, what: &str) -> Result<()> {
    if !u.apply(p)?.is_zero() {
        return Err(Error::Invalid(format!("{what} is not closed")));
    }
    Ok(())
}

/// `⟨Φu, Ψ★v⟩` for the reduced complex; fails unless it equals `⟨u, v⟩`.
pub fn pairing_transport(
    c: &ComplexFamily,
    red: &ReductionData,
    q: i64,
    u: &PrincipalPart,
    v: &PrincipalPart,
) -> Result<Scalar> {
    let p = c.map(q);
    require_closed(&p, u, "class")?;
    require_closed(&p.adjoint(&c.gram(q), &c.gram(q + 1))?, v, "dual class")?;
    let direct = germ_pairing(&p, &c.gram(q + 1), u, v)?;
    let tu = u.apply(red.phi(q))?;
    let tv = v.apply(&red.psi_adjoint(c, q + 1)?)?;
    let reduced = germ_pairing(&red.ptilde.map(q), &red.ptilde.gram(q + 1), &tu, &tv)?;
    if reduced != direct {
        return Err(inconsistent(format!(
            "degree {q}: transported pairing {} differs from {}",
            scalar::format(&reduced),
            scalar::format(&direct)
        )));
    }
    Ok(reduced)
}

/// `P̂_q = P_q / (σ − σ₀)` for a complex vanishing at its center; one order is lost.
pub fn sigma_divide(c: &ComplexFamily) -> Result<ComplexFamily> {
    let mut maps = Vec::new();
    for (q, p) in c.maps().iter().enumerate() {
        if p.order().is_some_and(|o| o < 1) {
            return Err(Error::Truncation(format!("order exhausted dividing map {q}")));
        }
        if !p.at_center().is_zero() {
            return Err(Error::Invalid(format!("map {q} does not vanish at the center")));
        }
        maps.push(p.shift(-1));
    }
    ComplexFamily::with_gram(c.center().clone(), c.dims().to_vec(), maps, c.grams().to_vec())
}

/// `ς u = 𝔰((σ − σ₀) u)`: drops the deepest coefficient.
pub fn sigma_shift(u: &PrincipalPart) -> PrincipalPart {
    let parts = u.parts().iter().skip(1).cloned().collect();
    PrincipalPart::new(u.center().clone(), u.dim(), parts).expect("same space")
}

/// `𝔧 : ℋ(P̂) → ℋ(P)` keeps representatives; checks `u` is `P̂`-closed.
pub fn j_map(hat: &ComplexFamily, q: i64, u: &PrincipalPart) -> Result<PrincipalPart> {
    require_closed(&hat.map(q), u, "class of the divided complex")?;
    Ok(u.clone())
}

/// Coordinates of the class of a closed `u` in `basis`, normalizing first
/// when its pole order is beyond the basis depth.
pub fn class_coordinates(c: &ComplexFamily, q: i64, basis: &CohomBasis, u: &PrincipalPart) -> Result<Vec<Scalar>> {
    if u.pole_order() > basis.depth {
        let n = representative_normalize(c, q, u)?;
        return basis.coordinates(&n.rep);
    }
    basis.coordinates(u)
}

/// Matrix of `ς` on a cohomology basis (columns are images).
pub fn sigma_shift_matrix(c: &ComplexFamily, q: i64, basis: &CohomBasis) -> Result<Mat> {
    let cols = basis
        .reps
        .iter()
        .map(|u| class_coordinates(c, q, basis, &sigma_shift(u)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_columns(basis.dim(), &cols))
}

/// Outcome of checking the σ-division laws on one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaLaws {
    pub dim: usize,
    pub divided_dim: usize,
    pub nilpotency: usize,
    pub js_pairs: usize,
}

/// For `P = σP̂`: `ς` nilpotent, `rg 𝔧 = rg ς` injectively, and
/// `⟨𝔧u, v⟩_P = ⟨u, ςv⟩_{P̂}` on basis pairs.
pub fn check_sigma_laws(p: &ComplexFamily, hat: &ComplexFamily, q: i64) -> Result<SigmaLaws> {
    let h = stabilized_cohomology(p, q)?;
    let hh = stabilized_cohomology(hat, q)?;
    let s = sigma_shift_matrix(p, q, &h)?;
    let mut power = Mat::identity(h.dim());
    let mut nilpotency = 0;
    while !power.is_zero() {
        if nilpotency > h.depth + 1 {
            return Err(inconsistent(format!("degree {q}: ς is not nilpotent")));
        }
        power = power.mul(&s);
        nilpotency += 1;
    }
    let jcols = hh
        .reps
        .iter()
        .map(|u| class_coordinates(p, q, &h, &j_map(hat, q, u)?))
        .collect::<Result<Vec<_>>>()?;
    let j = Mat::from_columns(h.dim(), &jcols);
    if j.rank() != hh.dim() || !j.spans(&s) || !s.spans(&j) {
        return Err(inconsistent(format!("degree {q}: range of 𝔧 differs from range of ς")));
    }
    let adj = p.adjoint()?;
    let hv = stabilized_cohomology(&adj, adj.adjoint_degree(q + 1))?;
    let (pq, pq_hat, g) = (p.map(q), hat.map(q), p.gram(q + 1));
    for u in &hh.reps {
        for v in &hv.reps {
            let lhs = germ_pairing(&pq, &g, u, v)?;
            let rhs = germ_pairing(&pq_hat, &g, u, &sigma_shift(v))?;
            if lhs != rhs {
                return Err(inconsistent(format!("degree {q}: ⟨𝔧u, v⟩ ≠ ⟨u, 𝔧⁻¹ςv⟩")));
            }
        }
    }
    Ok(SigmaLaws { dim: h.dim(), divided_dim: hh.dim(), nilpotency, js_pairs: hh.dim() * hv.dim() })
}

/// One level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRecord {
    pub harmonic_dims: Vec<usize>,
    /// `Σ_{j≤q} (−1)^{q−j} dim N_j`, the drop in `dim ℋ^q` caused by this level.
    pub contribution: usize,
    pub order: Option<i64>,
    pub cohomology_dim: usize,
    pub transported_pairs: usize,
    pub js_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub degree: i64,
    pub center: Scalar,
    pub budget: i64,
    pub levels: Vec<LevelRecord>,
    /// `Σ` of level contributions.
    pub dim: usize,
    /// Dimension from the Toeplitz windows at the original center.
    pub direct_dim: usize,
    pub adjoint_dim: usize,
    /// `rank ς^j` for `j = 0, 1, …` down to 0.
    pub filtration: Vec<usize>,
    /// `P̃_q` of the first level.
    pub reduced_map: MapFamily,
    pub pairing: Mat,
    pub verdict: Verdict,
    /// For class `i`, coefficients `c` of `Σ c_j v_j` pairing to `δ_{ik}` with class `k`.
    pub dual_partners: Vec<Vec<Scalar>>,
}

impl Certificate {
    pub fn pass(&self) -> bool {
        self.verdict.pass
    }
}

/// Runs the reduction recursion in degree `q` and cross-checks it against
/// the direct route. Mismatches are [`Error::Inconsistency`]; a degenerate
/// pairing is reported in the verdict with a null class.
pub fn recursive_certify(c: &ComplexFamily, q: i64) -> Result<Certificate> {
    if q < 0 || q > c.length() as i64 {
        return Err(Error::Invalid(format!("degree {q} out of range")));
    }
    let c0 = c.at_origin();
    let budget = match c.order() {
        Some(o) => o,
        None => order_budget(&c0)?,
    };
    let direct = cohomology_pairing_matrix(c, q, None::<&mut rand_chacha::ChaCha8Rng>)?;
    let direct0 = cohomology_pairing_matrix(&c0, q, None::<&mut rand_chacha::ChaCha8Rng>)?;
    if direct0.entries != direct.entries {
        return Err(inconsistent(format!("degree {q}: pairing changed under translation to 0")));
    }

    let mut levels: Vec<LevelRecord> = Vec::new();
    let mut level_c = c0.clone();
    let mut reduced_map = None;
    loop {
        if levels.len() as i64 > budget {
            return Err(Error::Truncation("order budget exhausted".into()));
        }
        let t = level_c.order().unwrap_or(budget - levels.len() as i64);
        let red = schur_reduce_to(&level_c, t)?;
        reduced_map.get_or_insert_with(|| red.ptilde.map(q));
        let harmonic_dims = red.hodge.harmonic_dims();
        let alt: i64 = (0..=q as usize).map(|j| if (q as usize - j) % 2 == 0 { 1 } else { -1 } * harmonic_dims[j] as i64).sum();
        if alt < 0 {
            return Err(inconsistent(format!("level {}: negative contribution {alt}", levels.len())));
        }
        let h = stabilized_cohomology(&level_c, q)?;
        let adj = level_c.adjoint()?;
        let hv = stabilized_cohomology(&adj, adj.adjoint_degree(q + 1))?;
        for u in &h.reps {
            for v in &hv.reps {
                pairing_transport(&level_c, &red, q, u, v)?;
            }
        }
        let mut rec = LevelRecord {
            harmonic_dims: harmonic_dims.clone(),
            contribution: alt as usize,
            order: level_c.order(),
            cohomology_dim: h.dim(),
            transported_pairs: h.dim() * hv.dim(),
            js_pairs: 0,
        };
        if harmonic_dims[q as usize] == 0 {
            levels.push(rec);
            break;
        }
        let next = sigma_divide(&red.ptilde)?;
        rec.js_pairs = check_sigma_laws(&red.ptilde, &next, q)?.js_pairs;
        levels.push(rec);
        level_c = next;
    }

    let dim: usize = levels.iter().map(|l| l.contribution).sum();
    for (k, l) in levels.iter().enumerate() {
        let tail: usize = levels[k..].iter().map(|l| l.contribution).sum();
        if l.cohomology_dim != tail {
            return Err(inconsistent(format!("level {k}: dimension {} but contributions give {tail}", l.cohomology_dim)));
        }
    }
    let direct_dim = direct.left.dim();
    let adjoint_dim = direct.right.dim();
    if dim != direct_dim || dim != adjoint_dim {
        return Err(inconsistent(format!(
            "degree {q}: recursive dimension {dim}, direct {direct_dim}, adjoint {adjoint_dim}"
        )));
    }

    let s = sigma_shift_matrix(&c0, q, &direct0.left)?;
    let mut filtration = Vec::new();
    let mut power = Mat::identity(dim);
    loop {
        let r = power.rank();
        filtration.push(r);
        if r == 0 || filtration.len() > levels.len() + 1 {
            break;
        }
        power = power.mul(&s);
    }
    for (j, &r) in filtration.iter().enumerate() {
        let tail: usize = levels.iter().skip(j).map(|l| l.contribution).sum();
        if r != tail {
            return Err(inconsistent(format!("rank of ς^{j} is {r}, levels give {tail}")));
        }
    }

    let verdict = certify_nondegenerate(&direct.entries);
    let mut dual_partners = Vec::new();
    if verdict.pass && dim > 0 {
        let inv = direct.entries.inverse()?;
        let (p, g) = (c.map(q), c.gram(q + 1));
        for i in 0..dim {
            let coeffs: Vec<Scalar> = inv.column(i).iter().map(|x| x.conj()).collect();
            let mut w = PrincipalPart::zero(c.center().conj(), c.dim(q + 1), 0);
            for (cj, v) in coeffs.iter().zip(&direct.right.reps) {
                w = w.add(&v.scale(cj))?;
            }
            for (k, u) in direct.left.reps.iter().enumerate() {
                let want = if k == i { scalar::one() } else { scalar::zero() };
                if germ_pairing(&p, &g, u, &w)? != want {
                    return Err(inconsistent(format!("dual partner of class {i} fails on class {k}")));
                }
            }
            dual_partners.push(coeffs);
        }
    }

    Ok(Certificate {
        degree: q,
        center: c.center().clone(),
        budget,
        levels,
        dim,
        direct_dim,
        adjoint_dim,
        filtration,
        reduced_map: reduced_map.expect("at least one level"),
        pairing: direct.entries,
        verdict,
        dual_partners,
    })
}

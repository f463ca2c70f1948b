//! Residue pairing between singular parts of a complex at `σ₀` and of its
//! adjoint at `conj σ₀`, its matrix on cohomology bases, and the
//! nondegeneracy verdict.
//!
//! `⟨u, v⟩ = i · Res_{σ₀} ⟨P_q(σ) u(σ), v(σ̄)⟩`, conjugate-linear in `v`.

use crate::error::{Error, Result};
use crate::germ_cohom::{stabilized_cohomology, CohomBasis, PrincipalPart};
use crate::holo_complex::ComplexFamily;
use crate::linalg::Mat;
use crate::matrix_series::MapFamily;
use crate::scalar::{self, Scalar};
use crate::series::bound_of;
use rand::Rng;

/// Coefficient of `(σ−σ₀)^{-1}` in `⟨a(σ), b(σ̄)⟩_G` for a column family `a`
/// at `σ₀` and a column family `b` at `conj σ₀`.
pub fn residue_bracket(a: &MapFamily, b: &MapFamily, gram: &Mat) -> Result<Scalar> {
    if a.cols() != 1 || b.cols() != 1 || a.rows() != b.rows() || gram.rows() != a.rows() {
        return Err(Error::Dimension("residue bracket of mismatched vectors".into()));
    }
    if b.center() != &a.center().conj() {
        return Err(Error::CenterMismatch(scalar::format(&a.center().conj()), scalar::format(b.center())));
    }
    if a.is_zero() && a.is_polynomial() || b.is_zero() && b.is_polynomial() {
        return Ok(scalar::zero());
    }
    // a_k pairs with b_j where k + j = -1
    let (alo, blo) = (a.valuation(), b.valuation());
    if bound_of(a.order()) < -1 - blo || bound_of(b.order()) < -1 - alo {
        return Err(Error::Truncation("residue needs more coefficients".into()));
    }
    let mut acc = scalar::zero();
    for k in alo..=(-1 - blo) {
        let ak = a.coeff_or_zero(k).column(0);
        let bj = b.coeff_or_zero(-1 - k).column(0);
        acc += crate::linalg::dot_gram(gram, &ak, &bj);
    }
    Ok(acc)
}

/// `i · Res ⟨P u, v(σ̄)⟩_G` with `G` the inner product on the target of `P`.
pub fn germ_pairing(p: &MapFamily, gram: &Mat, u: &PrincipalPart, v: &PrincipalPart) -> Result<Scalar> {
    if u.dim() != p.cols() || v.dim() != p.rows() {
        return Err(Error::Dimension("pairing of incompatible principal parts".into()));
    }
    if u.center() != p.center() {
        return Err(Error::CenterMismatch(scalar::format(p.center()), scalar::format(u.center())));
    }
    let w = p.mul(&u.to_family())?;
    Ok(&scalar::i() * &residue_bracket(&w, &v.to_family(), gram)?)
}

/// Pairing matrix between `ℋ^q(𝒫)` and `ℋ^{q+1}(𝒫^★)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub degree: i64,
    pub entries: Mat,
    pub left: CohomBasis,
    pub right: CohomBasis,
}

/// Bases and pairing matrix in degree `q`. With `checked`, every entry is
/// recomputed after adding random coboundaries to both representatives.
pub fn cohomology_pairing_matrix<R: Rng>(
    c: &ComplexFamily,
    q: i64,
    checked: Option<&mut R>,
) -> Result<PairingMatrix> {
    let adj = c.adjoint()?;
    let left = stabilized_cohomology(c, q)?;
    let right = stabilized_cohomology(&adj, c.adjoint_degree(q + 1))?;
    pairing_on_bases(c, q, left, right, checked)
}

/// Pairing matrix for given bases of `ℋ^q(𝒫)` and `ℋ^{q+1}(𝒫^★)`.
pub fn pairing_on_bases<R: Rng>(
    c: &ComplexFamily,
    q: i64,
    left: CohomBasis,
    right: CohomBasis,
    checked: Option<&mut R>,
) -> Result<PairingMatrix> {
    if left.space_dim != c.dim(q) || right.space_dim != c.dim(q + 1) {
        return Err(Error::Dimension("bases do not belong to this complex".into()));
    }
    let p = c.map(q);
    let g = c.gram(q + 1);
    let mut entries = Mat::zeros(left.dim(), right.dim());
    for (i, u) in left.reps.iter().enumerate() {
        for (j, v) in right.reps.iter().enumerate() {
            entries[(i, j)] = germ_pairing(&p, &g, u, v)?;
        }
    }
    if let Some(rng) = checked {
        for (i, u) in left.reps.iter().enumerate() {
            let u2 = u.add(&left.random_coboundary(rng))?;
            for (j, v) in right.reps.iter().enumerate() {
                let v2 = v.add(&right.random_coboundary(rng))?;
                if germ_pairing(&p, &g, &u2, &v2)? != entries[(i, j)] {
                    return Err(Error::Inconsistency(format!(
                        "pairing entry ({i},{j}) in degree {q} depends on the representative"
                    )));
                }
            }
        }
    }
    Ok(PairingMatrix { degree: q, entries, left, right })
}

/// Nondegeneracy verdict for a pairing matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub determinant: Option<Scalar>,
    /// Coefficients of a class pairing to zero with every dual class.
    pub null_class: Option<Vec<Scalar>>,
    /// Coefficients of a dual class pairing to zero with every class.
    pub null_dual: Option<Vec<Scalar>>,
}

pub fn certify_nondegenerate(m: &Mat) -> Verdict {
    let square = m.rows() == m.cols();
    let determinant = square.then(|| m.det());
    let pass = determinant.as_ref().is_some_and(|d| !scalar::is_zero(d));
    if pass {
        return Verdict { pass, determinant, null_class: None, null_dual: None };
    }
    // Σ_i u_i M_ij = 0 for all j; the pairing is conjugate-linear in the dual slot
    let first = |k: Mat| (k.cols() > 0).then(|| k.column(0));
    let null_class = first(m.transpose().kernel());
    let null_dual = first(m.kernel()).map(|x| x.iter().map(|c| c.conj()).collect());
    Verdict { pass, determinant, null_class, null_dual }
}

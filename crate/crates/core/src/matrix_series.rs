//! Matrix-valued Laurent series: products, adjoints, local inverses and the
//! local Smith form at the expansion point.
//!
//! A [`MapFamily`] stores one coefficient matrix per exponent, all sharing a
//! center and a truncation order (or none, for exact matrix polynomials).

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{self, Scalar};
use crate::series::{bound_of, is_inf, min_order, order_of, taylor_shift, LaurentSeries, INF};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct MapFamily {
    rows: usize,
    cols: usize,
    center: Scalar,
    low: i64,
    coeffs: Vec<Mat>,
    order: Option<i64>,
}

impl fmt::Debug for MapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MapFamily {}x{} @ {} ", self.rows, self.cols, scalar::format(&self.center))?;
        for (j, c) in self.coeffs.iter().enumerate() {
            write!(f, "s^{}:{:?} ", self.low + j as i64, c)?;
        }
        match self.order {
            Some(o) => write!(f, "O(s^{})", o + 1),
            None => write!(f, "exact"),
        }
    }
}

impl MapFamily {
    /// Coefficient matrices for exponents `low, low+1, ...`.
    pub fn new(
        rows: usize,
        cols: usize,
        center: Scalar,
        low: i64,
        coeffs: Vec<Mat>,
        order: Option<i64>,
    ) -> Result<Self> {
        if let Some(m) = coeffs.iter().find(|m| m.shape() != (rows, cols)) {
            return Err(Error::Dimension(format!(
                "coefficient {}x{} in a {}x{} family",
                m.rows(),
                m.cols(),
                rows,
                cols
            )));
        }
        let mut f = MapFamily { rows, cols, center, low, coeffs, order };
        f.normalize();
        Ok(f)
    }

    /// Exact matrix polynomial `Σ_k coeffs[k] s^k`.
    pub fn polynomial(center: Scalar, coeffs: Vec<Mat>) -> Result<Self> {
        let (r, c) = coeffs.first().map_or((0, 0), |m| m.shape());
        Self::new(r, c, center, 0, coeffs, None)
    }

    pub fn polynomial_shaped(rows: usize, cols: usize, center: Scalar, coeffs: Vec<Mat>) -> Result<Self> {
        Self::new(rows, cols, center, 0, coeffs, None)
    }

    pub fn constant(center: Scalar, m: Mat) -> Self {
        let (r, c) = m.shape();
        Self::new(r, c, center, 0, vec![m], None).expect("shape is consistent")
    }

    pub fn identity(n: usize, center: Scalar) -> Self {
        Self::constant(center, Mat::identity(n))
    }

    pub fn zero(rows: usize, cols: usize, center: Scalar) -> Self {
        Self::new(rows, cols, center, 0, vec![], None).expect("empty")
    }

    /// Grid of series sharing a center; the order is the smallest entry order.
    pub fn from_entries(rows: usize, cols: usize, entries: &[Vec<LaurentSeries>]) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("entry grid shape".into()));
        }
        let all: Vec<&LaurentSeries> = entries.iter().flatten().collect();
        let Some(first) = all.first() else {
            return Ok(Self::zero(rows, cols, scalar::zero()));
        };
        let center = first.center().clone();
        if let Some(bad) = all.iter().find(|e| e.center() != &center) {
            return Err(Error::CenterMismatch(scalar::format(&center), scalar::format(bad.center())));
        }
        let order = all.iter().fold(None, |acc, e| min_order(acc, e.order()));
        let nonzero: Vec<&&LaurentSeries> = all.iter().filter(|e| !e.is_zero()).collect();
        let low = nonzero.iter().map(|e| e.valuation()).min().unwrap_or(0);
        let high = match order {
            Some(o) => o,
            None => nonzero.iter().map(|e| e.top()).max().unwrap_or(-1),
        };
        let mut coeffs = Vec::new();
        for k in low..=high {
            let mut m = Mat::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m[(r, c)] = entries[r][c].coeff(k).unwrap_or_else(|_| scalar::zero());
                }
            }
            coeffs.push(m);
        }
        Self::new(rows, cols, center, low, coeffs, order)
    }

    fn normalize(&mut self) {
        if let Some(o) = self.order {
            let keep = (o - self.low + 1).max(0) as usize;
            self.coeffs.truncate(keep);
            while self.coeffs.len() < keep {
                self.coeffs.push(Mat::zeros(self.rows, self.cols));
            }
        } else {
            while self.coeffs.last().is_some_and(Mat::is_zero) {
                self.coeffs.pop();
            }
        }
        let lead = self.coeffs.iter().take_while(|m| m.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = match self.order {
                Some(o) => o + 1,
                None => 0,
            };
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_polynomial(&self) -> bool {
        self.order.is_none()
    }

    /// Lowest exponent with a nonzero coefficient (`order + 1` if none).
    pub fn valuation(&self) -> i64 {
        self.low
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    /// Highest stored exponent.
    pub fn top(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Polynomial degree of an exact holomorphic family (`-1` for zero).
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            -1
        } else {
            self.top()
        }
    }

    fn val_bound(&self) -> i64 {
        if self.is_zero() && self.order.is_none() {
            INF
        } else {
            self.low
        }
    }

    fn bound(&self) -> i64 {
        bound_of(self.order)
    }

    pub fn coeff(&self, k: i64) -> Result<Mat> {
        if k > self.bound() {
            return Err(Error::Truncation(format!(
                "coefficient {k} requested beyond order {}",
                self.bound()
            )));
        }
        Ok(self.coeff_or_zero(k))
    }

    pub fn coeff_or_zero(&self, k: i64) -> Mat {
        if k < self.low {
            return Mat::zeros(self.rows, self.cols);
        }
        self.coeffs
            .get((k - self.low) as usize)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.rows, self.cols))
    }

    fn coeff_ref(&self, k: i64) -> Option<&Mat> {
        if k < self.low {
            return None;
        }
        self.coeffs.get((k - self.low) as usize)
    }

    /// Value at the center (the constant coefficient).
    pub fn at_center(&self) -> Mat {
        self.coeff_or_zero(0)
    }

    pub fn entry(&self, r: usize, c: usize) -> LaurentSeries {
        LaurentSeries::new(
            self.center.clone(),
            self.low,
            self.coeffs.iter().map(|m| m[(r, c)].clone()).collect(),
            self.order,
        )
    }

    pub fn entries(&self) -> Vec<Vec<LaurentSeries>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.entry(r, c)).collect()).collect()
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
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        let order = min_order(self.order, other.order);
        let lo = self.low.min(other.low);
        let hi = match order {
            Some(o) => o,
            None => self.top().max(other.top()),
        };
        let coeffs = (lo..=hi)
            .map(|k| {
                let a = self.coeff_or_zero(k);
                let b = other.coeff_or_zero(k);
                if sign > 0 {
                    a.add(&b)
                } else {
                    a.sub(&b)
                }
            })
            .collect();
        Self::new(self.rows, self.cols, self.center.clone(), lo, coeffs, order)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.linear(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.linear(other, -1)
    }

    /// Product with the tightest provable order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "product of {:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let (av, bv) = (self.val_bound(), other.val_bound());
        let order = order_of((self.bound() + bv).min(other.bound() + av));
        if is_inf(av) || is_inf(bv) {
            return Self::new(self.rows, other.cols, self.center.clone(), 0, vec![], order);
        }
        let lo = av + bv;
        let hi = match order {
            Some(o) => o,
            None => self.top() + other.top(),
        };
        let mut coeffs = Vec::new();
        for k in lo..=hi {
            let mut acc = Mat::zeros(self.rows, other.cols);
            for (i, a) in self.coeffs.iter().enumerate() {
                let j = k - self.low - i as i64;
                if let Some(b) = other.coeff_ref(j) {
                    if !a.is_zero() {
                        acc.add_assign(&a.mul(b));
                    }
                }
            }
            coeffs.push(acc);
        }
        Self::new(self.rows, other.cols, self.center.clone(), lo, coeffs, order)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let coeffs = self.coeffs.iter().map(|m| m.scale(c)).collect();
        Self::new(self.rows, self.cols, self.center.clone(), self.low, coeffs, self.order)
            .expect("same shape")
    }

    pub fn neg(&self) -> Self {
        self.scale(&scalar::int(-1))
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(
            self.rows,
            self.cols,
            self.center.clone(),
            self.low + k,
            self.coeffs.clone(),
            self.order.map(|o| o + k),
        )
        .expect("same shape")
    }

    pub fn truncate(&self, order: i64) -> Self {
        let o = self.order.map_or(order, |x| x.min(order));
        Self::new(self.rows, self.cols, self.center.clone(), self.low, self.coeffs.clone(), Some(o))
            .expect("same shape")
    }

    pub fn with_center(&self, center: Scalar) -> Self {
        Self { center, ..self.clone() }
    }

    /// `C · self` for a constant matrix `C`.
    pub fn left_mul(&self, c: &Mat) -> Self {
        let coeffs = self.coeffs.iter().map(|m| c.mul(m)).collect();
        Self::new(c.rows(), self.cols, self.center.clone(), self.low, coeffs, self.order)
            .expect("consistent")
    }

    /// `self · C` for a constant matrix `C`.
    pub fn right_mul(&self, c: &Mat) -> Self {
        let coeffs = self.coeffs.iter().map(|m| m.mul(c)).collect();
        Self::new(self.rows, c.cols(), self.center.clone(), self.low, coeffs, self.order)
            .expect("consistent")
    }

    /// Sub-block of every coefficient.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r, c) = (rows.len(), cols.len());
        let coeffs = self.coeffs.iter().map(|m| m.submatrix(rows.clone(), cols.clone())).collect();
        Self::new(r, c, self.center.clone(), self.low, coeffs, self.order).expect("consistent")
    }

    /// Assembles a family from a grid of blocks sharing center and order rules.
    pub fn from_blocks(row_dims: &[usize], col_dims: &[usize], blocks: &[Vec<MapFamily>]) -> Result<Self> {
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let all: Vec<&MapFamily> = blocks.iter().flatten().collect();
        let center = all.first().map_or_else(scalar::zero, |b| b.center.clone());
        let order = all.iter().fold(None, |acc, b| min_order(acc, b.order));
        let nonzero: Vec<&&MapFamily> = all.iter().filter(|b| !b.is_zero()).collect();
        let low = nonzero.iter().map(|b| b.low).min().unwrap_or(0);
        let high = match order {
            Some(o) => o,
            None => nonzero.iter().map(|b| b.top()).max().unwrap_or(-1),
        };
        let mut coeffs = Vec::new();
        for k in low..=high {
            let mut m = Mat::zeros(rows, cols);
            let mut r0 = 0;
            for (bi, &rd) in row_dims.iter().enumerate() {
                let mut c0 = 0;
                for (bj, &cd) in col_dims.iter().enumerate() {
                    let b = &blocks[bi][bj];
                    if b.shape() != (rd, cd) {
                        return Err(Error::Dimension("block shape".into()));
                    }
                    if b.center != center {
                        return Err(Error::CenterMismatch(scalar::format(&center), scalar::format(&b.center)));
                    }
                    m.set_block(r0, c0, &b.coeff_or_zero(k));
                    c0 += cd;
                }
                r0 += rd;
            }
            coeffs.push(m);
        }
        Self::new(rows, cols, center, low, coeffs, order)
    }

    /// `σ ↦ A(σ + θ)` at center `center - θ`; exact families only when θ ≠ 0.
    pub fn translate(&self, theta: &Scalar) -> Result<Self> {
        if scalar::is_zero(theta) {
            return Ok(self.clone());
        }
        if !self.is_polynomial() {
            return Err(Error::TruncatedTranslation);
        }
        Ok(self.with_center(&self.center - theta))
    }

    /// The same matrix polynomial expanded around another point.
    pub fn recenter(&self, new_center: &Scalar) -> Result<Self> {
        if !self.is_polynomial() {
            return Err(Error::Invalid("only exact polynomials can be re-expanded".into()));
        }
        if !self.is_holomorphic() {
            return Err(Error::Invalid("a family with a pole cannot be re-expanded".into()));
        }
        let d = new_center - &self.center;
        let deg = self.degree().max(0) as usize;
        let mut out = vec![Mat::zeros(self.rows, self.cols); deg + 1];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let p: Vec<Scalar> = (0..=deg as i64).map(|k| self.coeff_or_zero(k)[(r, c)].clone()).collect();
                for (k, x) in taylor_shift(&p, &d).into_iter().enumerate() {
                    out[k][(r, c)] = x;
                }
            }
        }
        Self::new(self.rows, self.cols, new_center.clone(), 0, out, None)
    }

    /// `σ ↦ G_dom⁻¹ A(conj σ)^* G_cod` at the conjugate center.
    pub fn adjoint(&self, gram_dom: &Mat, gram_cod: &Mat) -> Result<Self> {
        if gram_dom.shape() != (self.cols, self.cols) || gram_cod.shape() != (self.rows, self.rows) {
            return Err(Error::Dimension("Gram matrix does not match the family".into()));
        }
        let gi = gram_dom.inverse()?;
        let coeffs = self.coeffs.iter().map(|m| gi.mul(&m.adjoint()).mul(gram_cod)).collect();
        Self::new(self.cols, self.rows, self.center.conj(), self.low, coeffs, self.order)
    }

    /// Adjoint with identity inner products.
    pub fn adjoint_standard(&self) -> Self {
        let coeffs = self.coeffs.iter().map(Mat::adjoint).collect();
        Self::new(self.cols, self.rows, self.center.conj(), self.low, coeffs, self.order)
            .expect("consistent")
    }

    /// Term-by-term σ-derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, m)| m.scale(&scalar::int(self.low + j as i64)))
            .collect();
        Self::new(self.rows, self.cols, self.center.clone(), self.low - 1, coeffs, self.order.map(|o| o - 1))
            .expect("same shape")
    }

    /// Whether all coefficients agree up to the smaller order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.center != other.center || self.shape() != other.shape() {
            return false;
        }
        let hi = bound_of(min_order(self.order, other.order));
        let hi = if is_inf(hi) { self.top().max(other.top()) } else { hi };
        let lo = self.low.min(other.low);
        (lo..=hi).all(|k| self.coeff_or_zero(k) == other.coeff_or_zero(k))
    }

    /// First `(exponent, row, col)` with a nonzero coefficient, if any.
    pub fn first_nonzero(&self) -> Option<(i64, usize, usize)> {
        let m = self.coeffs.first()?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !scalar::is_zero(&m[(r, c)]) {
                    return Some((self.low, r, c));
                }
            }
        }
        None
    }

    /// Inverse near the center by constant-term inversion and the Neumann
    /// recursion `X_k = -A₀⁻¹ Σ_{j=1..k} A_j X_{k-j}`. Exact inputs that are
    /// not constant must be truncated first (see [`Self::local_inverse_to`]).
    pub fn local_inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension("local inverse of a non-square family".into()));
        }
        if !self.is_holomorphic() {
            return Err(Error::Invalid("local inverse needs a holomorphic family".into()));
        }
        let a0 = self.coeff(0)?;
        let a0i = a0.inverse().map_err(|_| {
            Error::Singular("constant term is singular; use the local Smith form".into())
        })?;
        let Some(order) = self.order else {
            if self.degree() <= 0 {
                return Ok(Self::constant(self.center.clone(), a0i));
            }
            return Err(Error::Truncation("exact family has an infinite inverse; truncate first".into()));
        };
        let mut xs: Vec<Mat> = vec![a0i.clone()];
        for k in 1..=order.max(0) {
            let mut acc = Mat::zeros(self.rows, self.cols);
            for j in 1..=k {
                if let Some(a) = self.coeff_ref(j) {
                    if !a.is_zero() {
                        acc.add_assign(&a.mul(&xs[(k - j) as usize]));
                    }
                }
            }
            xs.push(a0i.mul(&acc).neg());
        }
        Self::new(self.rows, self.cols, self.center.clone(), 0, xs, Some(order))
    }

    pub fn local_inverse_to(&self, order: i64) -> Result<Self> {
        self.truncate(order).local_inverse()
    }

    /// Local Smith form `A = U · diag(s^{e₁}, …) · V` over power series at the
    /// center, by valuation pivoting. Exact inputs are truncated at a working
    /// order that is raised until every pivot is visible.
    pub fn local_smith_form(&self) -> Result<SmithForm> {
        if !self.is_holomorphic() {
            return Err(Error::Invalid("Smith form needs a holomorphic family".into()));
        }
        if let Some(o) = self.order {
            return smith_at(self, o);
        }
        let k = self.rows.min(self.cols) as i64;
        let cap = k * self.degree().max(0) + 1;
        let mut work = 8.min(cap).max(1);
        loop {
            match smith_at(&self.truncate(work), work) {
                Err(Error::Truncation(_)) if work < cap => work = (2 * work).min(cap),
                other => return other,
            }
        }
    }

    /// Smith form with the input truncated at `order` (at least the
    /// family's own order), so that `U` and `V` are known that far.
    pub fn local_smith_form_at(&self, order: i64) -> Result<SmithForm> {
        if !self.is_holomorphic() {
            return Err(Error::Invalid("Smith form needs a holomorphic family".into()));
        }
        let o = self.order.map_or(order, |x| x.min(order));
        smith_at(&self.truncate(o), o)
    }

    /// `A⁻¹ = V⁻¹ diag(s^{-e}) U⁻¹` to order `order - max e` from a Smith
    /// form at `order`. Square families only.
    pub fn inverse_via_smith(&self, order: i64) -> Result<MapFamily> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square family".into()));
        }
        let sf = self.local_smith_form_at(order)?;
        if sf.exponents.len() != self.rows {
            return Err(Error::Singular("family is singular near the center".into()));
        }
        let n = self.rows;
        let lo = -sf.max_exponent();
        let mut coeffs = vec![Mat::zeros(n, n); (-lo) as usize + 1];
        for (k, &e) in sf.exponents.iter().enumerate() {
            coeffs[(sf.max_exponent() - e) as usize][(k, k)] = scalar::one();
        }
        let dinv = MapFamily::new(n, n, self.center.clone(), lo, coeffs, None)?;
        sf.v.local_inverse()?.mul(&dinv)?.mul(&sf.u.local_inverse()?)
    }

    /// Evaluation-free exact determinant of an exact square matrix polynomial,
    /// as ascending coefficients in `s`.
    pub fn det_polynomial(&self) -> Result<Vec<Scalar>> {
        if !self.is_polynomial() || !self.is_holomorphic() || self.rows != self.cols {
            return Err(Error::Invalid("determinant needs an exact square holomorphic family".into()));
        }
        let n = self.rows;
        let grid: Vec<Vec<crate::poly::Poly>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        crate::poly::Poly::new(
                            (0..=self.degree().max(0)).map(|k| self.coeff_or_zero(k)[(r, c)].clone()).collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        Ok(crate::poly::det(grid).coeffs().to_vec())
    }
}

/// Output of [`MapFamily::local_smith_form`].
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: MapFamily,
    pub exponents: Vec<i64>,
    pub v: MapFamily,
}

impl SmithForm {
    /// `diag(s^{e})` of the right shape.
    pub fn diagonal(&self) -> MapFamily {
        let (m, n) = (self.u.cols(), self.v.rows());
        let hi = self.exponents.iter().copied().max().unwrap_or(0).max(0);
        let mut coeffs = vec![Mat::zeros(m, n); hi as usize + 1];
        for (k, &e) in self.exponents.iter().enumerate() {
            coeffs[e as usize][(k, k)] = scalar::one();
        }
        MapFamily::new(m, n, self.u.center().clone(), 0, coeffs, None).expect("consistent")
    }

    /// `U · D · V`.
    pub fn reassemble(&self) -> Result<MapFamily> {
        self.u.mul(&self.diagonal())?.mul(&self.v)
    }

    /// Largest exponent (0 when there are none).
    pub fn max_exponent(&self) -> i64 {
        self.exponents.iter().copied().max().unwrap_or(0)
    }
}

fn smith_at(a: &MapFamily, order: i64) -> Result<SmithForm> {
    let (m, n) = a.shape();
    let center = a.center().clone();
    let zero = || LaurentSeries::zero(center.clone());
    let one = || LaurentSeries::constant(center.clone(), scalar::one());
    let mut g = a.entries();
    let mut u: Vec<Vec<LaurentSeries>> =
        (0..m).map(|r| (0..m).map(|c| if r == c { one() } else { zero() }).collect()).collect();
    let mut v: Vec<Vec<LaurentSeries>> =
        (0..n).map(|r| (0..n).map(|c| if r == c { one() } else { zero() }).collect()).collect();
    let mut exps = Vec::new();
    for k in 0..m.min(n) {
        let mut best: Option<(i64, usize, usize)> = None;
        for (r, row) in g.iter().enumerate().skip(k) {
            for (c, e) in row.iter().enumerate().skip(k) {
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bv, _, _)| e.valuation() < bv) {
                    best = Some((e.valuation(), r, c));
                }
            }
        }
        let Some((e, pr, pc)) = best else {
            return Err(Error::Truncation(format!(
                "pivot {k} not visible up to order {order}"
            )));
        };
        g.swap(k, pr);
        for row in u.iter_mut() {
            row.swap(k, pr);
        }
        for row in g.iter_mut() {
            row.swap(k, pc);
        }
        v.swap(k, pc);
        let unit = g[k][k].shift(-e);
        let unit_inv = unit.invert()?;
        for i in k + 1..m {
            if g[i][k].is_zero() {
                continue;
            }
            let f = g[i][k].shift(-e).mul(&unit_inv)?;
            for j in k..n {
                let d = f.mul(&g[k][j])?;
                g[i][j] = g[i][j].sub(&d)?;
            }
            for row in u.iter_mut() {
                let d = row[i].mul(&f)?;
                row[k] = row[k].add(&d)?;
            }
        }
        for j in k + 1..n {
            if g[k][j].is_zero() {
                continue;
            }
            let f = g[k][j].shift(-e).mul(&unit_inv)?;
            for row in g.iter_mut().skip(k) {
                let d = row[k].mul(&f)?;
                row[j] = row[j].sub(&d)?;
            }
            let (head, tail) = v.split_at_mut(j);
            for (x, y) in head[k].iter_mut().zip(tail[0].iter()) {
                *x = x.add(&f.mul(y)?)?;
            }
        }
        for x in v[k].iter_mut() {
            *x = x.mul(&unit)?;
        }
        g[k][k] = LaurentSeries::monomial(center.clone(), scalar::one(), e);
        exps.push(e);
    }
    if let Some(e) = exps.iter().find(|&&e| e > order) {
        return Err(Error::Truncation(format!("exponent {e} beyond order {order}")));
    }
    let u = MapFamily::from_entries(m, m, &u)?.truncate(order);
    let v = MapFamily::from_entries(n, n, &v)?.truncate(order);
    Ok(SmithForm { u, exponents: exps, v })
}

/// Hermitian positive definite check for inner-product matrices.
pub fn check_gram(g: &Mat) -> Result<()> {
    if !g.is_square() || g.adjoint() != *g {
        return Err(Error::Invalid("Gram matrix is not Hermitian".into()));
    }
    for k in 1..=g.rows() {
        let d = g.submatrix(0..k, 0..k).det();
        if !num::Zero::is_zero(&d.im) || d.re <= num::BigRational::from_integer(0.into()) {
            return Err(Error::Invalid("Gram matrix is not positive definite".into()));
        }
    }
    Ok(())
}

//! Dense matrices over the Gaussian rationals with exact elimination.

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use rand::Rng;
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", scalar::format(&self[(r, c)]))?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of reduced row-echelon elimination.
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Integer entries, mostly for tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| scalar::int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[Scalar]) -> Mat {
        Mat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn random<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Mat {
        Mat::from_fn(rows, cols, |_, _| scalar::random_gauss(rng, bound))
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(scalar::is_zero)
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| -z).collect() }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!(self.shape(), o.shape(), "add shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!(self.shape(), o.shape(), "sub shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add_assign(&mut self, o: &Mat) {
        assert_eq!(self.shape(), o.shape(), "add shape");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            *a += b;
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "mul shape {:?} x {:?}", self.shape(), o.shape());
        let mut out = Mat::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if scalar::is_zero(a) {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !scalar::is_zero(b) {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "mul_vec shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = scalar::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !scalar::is_zero(a) && !scalar::is_zero(x) {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let (r0, c0) = (rows.start, cols.start);
        Mat::from_fn(rows.len(), cols.len(), |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    pub fn hstack(parts: &[&Mat]) -> Mat {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack rows");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Mat]) -> Mat {
        let cols = parts.first().map_or(0, |m| m.cols);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack cols");
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    /// Block-diagonal matrix.
    pub fn block_diag(parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Gauss-Jordan elimination with the first nonzero entry as pivot.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !scalar::is_zero(&m[(r, col)])) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = scalar::inv(&m[(row, col)]).expect("nonzero pivot");
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || scalar::is_zero(&m[(r, col)]) {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if scalar::is_zero(&m[(row, c)]) {
                        continue;
                    }
                    let v = &m[(row, c)] * &f;
                    m[(r, c)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one column per free variable, in increasing
    /// order of the free variable. Each basis vector is supported on
    /// coordinates up to its free variable.
    pub fn kernel(&self) -> Mat {
        let Rref { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                k[(p, j)] = -reduced[(r, f)].clone();
            }
        }
        k
    }

    /// Indices of a maximal set of linearly independent columns, chosen
    /// greedily from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// Basis of the column space taken from the original columns.
    pub fn column_basis(&self) -> Mat {
        self.select_columns(&self.independent_columns())
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let sol = self.solve_mat(&Mat::column_vector(b))?;
        Some(sol.column(0))
    }

    /// Some `X` with `self * X = B`, or `None` when inconsistent.
    pub fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "solve shape");
        let aug = Mat::hstack(&[self, b]);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x[(p, c)] = reduced[(r, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        self.solve_mat(&Mat::identity(self.rows))
            .filter(|_| self.rank() == self.rows)
            .ok_or_else(|| Error::Singular("matrix is singular".into()))
    }

    /// Exact determinant by elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "det of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !scalar::is_zero(&m[(r, col)])) else {
                return scalar::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det *= &piv;
            let inv = scalar::inv(&piv).expect("nonzero pivot");
            for r in col + 1..n {
                if scalar::is_zero(&m[(r, col)]) {
                    continue;
                }
                let f = &m[(r, col)] * &inv;
                for c in col..n {
                    let v = &m[(col, c)] * &f;
                    m[(r, c)] -= v;
                }
            }
        }
        det
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn spans(&self, other: &Mat) -> bool {
        if other.cols == 0 {
            return true;
        }
        Mat::hstack(&[self, other]).rank() == self.rank()
    }
}

/// Columns of `candidates` completing the column space of `base` to that of
/// `base | candidates`, chosen greedily from the left.
pub fn complement_columns(base: &Mat, candidates: &Mat) -> Vec<usize> {
    let nb = base.cols();
    Mat::hstack(&[base, candidates])
        .independent_columns()
        .into_iter()
        .filter(|&p| p >= nb)
        .map(|p| p - nb)
        .collect()
}

pub fn dot_gram(gram: &Mat, a: &[Scalar], b: &[Scalar]) -> Scalar {
    // <a, b> = b^* G a, conjugate-linear in b
    let ga = gram.mul_vec(a);
    let mut acc = scalar::zero();
    for (x, y) in ga.iter().zip(b) {
        acc += x * y.conj();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_and_rank() {
        let a = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = Mat::from_rows(vec![vec![gauss(1, 1), int(2)], vec![int(0), gauss(0, 1)]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        let b = vec![int(1), int(1)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let sing = Mat::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(sing.inverse().is_err());
        assert!(sing.solve(&[int(1), int(0)]).is_none());
    }

    #[test]
    fn determinant_matches_product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = Mat::random(&mut rng, 3, 3, 3);
            let b = Mat::random(&mut rng, 3, 3, 3);
            assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
        }
    }

    #[test]
    fn kernel_vectors_are_supported_left_of_their_free_variable() {
        let a = Mat::from_i64(&[&[0, 1, 1, 0], &[0, 0, 0, 1]]);
        let k = a.kernel();
        // free variables 0 and 2
        assert_eq!(k.column(0), vec![int(1), int(0), int(0), int(0)]);
        assert_eq!(k.column(1), vec![int(0), int(-1), int(1), int(0)]);
    }

    #[test]
    fn complement_selection() {
        let base = Mat::from_i64(&[&[1], &[0], &[0]]);
        let cand = Mat::from_i64(&[&[2, 0, 1], &[0, 1, 0], &[0, 0, 0]]);
        assert_eq!(complement_columns(&base, &cand), vec![1]);
    }
}

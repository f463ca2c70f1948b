//! Ideal boundary conditions for a finite complex of constant maps
//! `𝔞_q : E^q → E^{q+1}`: membership, cohomology of the restricted complex,
//! and the chart equations of the variety of admissible subspace tuples.
//!
//! A tuple `(D^0, …, D^m)` is admissible when `𝔞_q D^q ⊆ D^{q+1}`. Near a
//! base tuple with adapted bases, `D^q` is the column span of
//! `B_q [I; x^{(q)}]`, and admissibility is a system of polynomial equations
//! of degree at most two in the chart coordinates.
//!
//! # Text format for polynomial systems
//!
//! ```text
//! variables 2
//! x0_2_1
//! x1_2_1
//! equations 1
//! equation 1
//! -1 x0_2_1 x1_2_1
//! ```
//!
//! Each term line is an exact coefficient followed by its factors, written
//! `name` or `name^e`. Lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{self, Scalar};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A finite complex `E^0 → … → E^m` of constant maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IbcComplex {
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl IbcComplex {
    pub fn new(dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::Dimension(format!("{} spaces need {} maps", dims.len(), dims.len().saturating_sub(1))));
        }
        for (q, a) in maps.iter().enumerate() {
            if a.shape() != (dims[q + 1], dims[q]) {
                return Err(Error::Dimension(format!(
                    "map {q} is {}x{}, expected {}x{}",
                    a.rows(),
                    a.cols(),
                    dims[q + 1],
                    dims[q]
                )));
            }
        }
        for q in 1..maps.len() {
            if !maps[q].mul(&maps[q - 1]).is_zero() {
                return Err(Error::Invalid(format!("maps {} and {q} do not compose to zero", q - 1)));
            }
        }
        Ok(IbcComplex { dims, maps })
    }

    /// Top degree `m`.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, q: usize) -> usize {
        self.dims[q]
    }

    pub fn map(&self, q: usize) -> &Mat {
        &self.maps[q]
    }

    /// The nilpotent operator on `⊕ E^q` carrying `E^q` to `E^{q+1}` by `𝔞_q`.
    pub fn fold(&self) -> Mat {
        let offs = self.offsets();
        let n = *offs.last().unwrap();
        let mut out = Mat::zeros(n, n);
        for (q, a) in self.maps.iter().enumerate() {
            out.set_block(offs[q + 1], offs[q], a);
        }
        out
    }

    /// Direct sum of one subspace per degree, as a subspace of `⊕ E^q`.
    pub fn fold_subspaces(&self, subspaces: &[Mat]) -> Result<Mat> {
        self.check_tuple(subspaces)?;
        let refs: Vec<&Mat> = subspaces.iter().collect();
        Ok(Mat::block_diag(&refs))
    }

    fn offsets(&self) -> Vec<usize> {
        let mut offs = vec![0];
        for d in &self.dims {
            offs.push(offs.last().unwrap() + d);
        }
        offs
    }

    fn check_tuple(&self, subspaces: &[Mat]) -> Result<()> {
        if subspaces.len() != self.dims.len() {
            return Err(Error::Dimension(format!("expected {} subspaces, got {}", self.dims.len(), subspaces.len())));
        }
        for (q, d) in subspaces.iter().enumerate() {
            if d.rows() != self.dims[q] {
                return Err(Error::Dimension(format!("subspace {q} lives in dimension {}, expected {}", d.rows(), self.dims[q])));
            }
        }
        Ok(())
    }
}

/// A complex together with candidate subspaces `D^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IbcProblem {
    pub complex: IbcComplex,
    candidates: Vec<Mat>,
}

impl IbcProblem {
    /// `candidates` holds a basis of each `D^q`; when the top one is omitted
    /// it is taken to be all of `E^m`.
    pub fn new(complex: IbcComplex, mut candidates: Vec<Mat>) -> Result<Self> {
        if candidates.len() == complex.len() {
            candidates.push(Mat::identity(complex.dim(complex.len())));
        }
        complex.check_tuple(&candidates)?;
        for (q, d) in candidates.iter().enumerate() {
            if d.rank() != d.cols() {
                return Err(Error::Invalid(format!("candidate basis {q} is not of full column rank")));
            }
        }
        Ok(IbcProblem { complex, candidates })
    }

    /// Every `D^q` is the whole space.
    pub fn absolute(complex: IbcComplex) -> Self {
        let candidates = complex.dims.iter().map(|&n| Mat::identity(n)).collect();
        IbcProblem { complex, candidates }
    }

    /// `D^q = 0` below the top degree.
    pub fn relative(complex: IbcComplex) -> Self {
        let m = complex.len();
        let candidates = complex
            .dims
            .iter()
            .enumerate()
            .map(|(q, &n)| if q == m { Mat::identity(n) } else { Mat::zeros(n, 0) })
            .collect();
        IbcProblem { complex, candidates }
    }

    pub fn candidate(&self, q: usize) -> &Mat {
        &self.candidates[q]
    }

    pub fn candidates(&self) -> &[Mat] {
        &self.candidates
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IbcFailure {
    pub degree: usize,
    /// A vector of `D^q` whose image leaves `D^{q+1}`.
    pub witness: Vec<Scalar>,
    pub image: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IbcVerdict {
    pub pass: bool,
    pub failures: Vec<IbcFailure>,
}

pub fn check_ibc(p: &IbcProblem) -> IbcVerdict {
    let c = &p.complex;
    let mut failures = Vec::new();
    for q in 0..c.len() {
        let d = &p.candidates[q];
        let next = &p.candidates[q + 1];
        let img = c.map(q).mul(d);
        if next.spans(&img) {
            continue;
        }
        let j = (0..d.cols())
            .find(|&j| !next.spans(&Mat::column_vector(&img.column(j))))
            .expect("some basis image leaves the span");
        failures.push(IbcFailure { degree: q, witness: d.column(j), image: img.column(j) });
    }
    IbcVerdict { pass: failures.is_empty(), failures }
}

/// Whether `a X ⊆ X` for the column span `X` of `x`.
pub fn is_invariant(a: &Mat, x: &Mat) -> bool {
    x.spans(&a.mul(x))
}

/// Cohomology dimensions of `(D^q, 𝔞_q|_{D^q})`.
pub fn quotient_cohomology(p: &IbcProblem) -> Result<Vec<usize>> {
    if !check_ibc(p).pass {
        return Err(Error::Invalid("not an ideal boundary condition".into()));
    }
    let c = &p.complex;
    let ranks: Vec<usize> = (0..c.len()).map(|q| c.map(q).mul(&p.candidates[q]).rank()).collect();
    Ok((0..=c.len())
        .map(|q| {
            let out = if q < c.len() { ranks[q] } else { 0 };
            let inc = if q > 0 { ranks[q - 1] } else { 0 };
            p.candidates[q].cols() - out - inc
        })
        .collect())
}

/// Sparse polynomial with exact coefficients; a monomial is a sorted list of
/// `(variable, exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Vec<(usize, u32)>, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(&[], c);
        p
    }

    /// Adds `c · Π x_v`, with repeated variables multiplying.
    pub fn add_term(&mut self, vars: &[usize], c: Scalar) {
        if scalar::is_zero(&c) {
            return;
        }
        let mut mono: BTreeMap<usize, u32> = BTreeMap::new();
        for &v in vars {
            *mono.entry(v).or_default() += 1;
        }
        self.add_monomial(mono.into_iter().collect(), c);
    }

    fn add_monomial(&mut self, mono: Vec<(usize, u32)>, c: Scalar) {
        let e = self.terms.entry(mono).or_insert_with(scalar::zero);
        *e += c;
        if scalar::is_zero(e) {
            self.terms.retain(|_, v| !scalar::is_zero(v));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|(_, e)| e).sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[(usize, u32)], &Scalar)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = scalar::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in mono {
                t *= scalar::pow(&point[v], e);
            }
            acc += t;
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub variables: Vec<String>,
    pub equations: Vec<Polynomial>,
}

impl PolySystem {
    pub fn eval(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        if point.len() != self.variables.len() {
            return Err(Error::Dimension(format!("point has {} coordinates, system has {} variables", point.len(), self.variables.len())));
        }
        Ok(self.equations.iter().map(|e| e.eval(point)).collect())
    }

    pub fn vanishes_at(&self, point: &[Scalar]) -> Result<bool> {
        Ok(self.eval(point)?.iter().all(scalar::is_zero))
    }

    pub fn max_degree(&self) -> u32 {
        self.equations.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "variables {}", self.variables.len()).unwrap();
        for v in &self.variables {
            writeln!(s, "{v}").unwrap();
        }
        writeln!(s, "equations {}", self.equations.len()).unwrap();
        for e in &self.equations {
            writeln!(s, "equation {}", e.terms.len()).unwrap();
            for (mono, c) in &e.terms {
                s.push_str(&scalar::format(c));
                for &(v, k) in mono {
                    s.push(' ');
                    s.push_str(&self.variables[v]);
                    if k > 1 {
                        write!(s, "^{k}").unwrap();
                    }
                }
                s.push('\n');
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut next = |what: &str| lines.next().ok_or_else(|| Error::Parse(format!("missing {what}")));
        let header = |line: &str, key: &str| -> Result<usize> {
            line.strip_prefix(key)
                .and_then(|r| r.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("expected '{key} <count>', got '{line}'")))
        };
        let nv = header(next("variable header")?, "variables")?;
        let mut variables = Vec::with_capacity(nv);
        for _ in 0..nv {
            variables.push(next("variable name")?.to_string());
        }
        let index: BTreeMap<&str, usize> = variables.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
        let ne = header(next("equation header")?, "equations")?;
        let mut equations = Vec::with_capacity(ne);
        for _ in 0..ne {
            let nt = header(next("equation")?, "equation")?;
            let mut poly = Polynomial::zero();
            for _ in 0..nt {
                let mut parts = next("term")?.split_whitespace();
                let c = scalar::parse(parts.next().ok_or_else(|| Error::Parse("empty term".into()))?)?;
                let mut vars = Vec::new();
                for f in parts {
                    let (name, e) = match f.split_once('^') {
                        Some((n, e)) => (n, e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in '{f}'")))?),
                        None => (f, 1),
                    };
                    let v = *index.get(name).ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                    vars.extend(std::iter::repeat(v).take(e));
                }
                poly.add_term(&vars, c);
            }
            equations.push(poly);
        }
        Ok(PolySystem { variables, equations })
    }
}

/// Adapted bases `B_q` of every `E^q` with chart dimensions `d_q`: the base
/// tuple is spanned by the first `d_q` columns of each `B_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartBase {
    bases: Vec<Mat>,
    inverses: Vec<Mat>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl ChartBase {
    pub fn new(bases: Vec<Mat>, dims: Vec<usize>) -> Result<Self> {
        if bases.len() != dims.len() {
            return Err(Error::Dimension("one chart dimension per basis".into()));
        }
        let mut inverses = Vec::with_capacity(bases.len());
        for (q, b) in bases.iter().enumerate() {
            if !b.is_square() || dims[q] > b.rows() {
                return Err(Error::Invalid(format!("basis {q} is not an adapted basis")));
            }
            inverses.push(b.inverse().map_err(|_| Error::Invalid(format!("basis {q} is not an adapted basis")))?);
        }
        let mut offsets = vec![0];
        for (b, &d) in bases.iter().zip(&dims) {
            offsets.push(offsets.last().unwrap() + (b.rows() - d) * d);
        }
        Ok(ChartBase { bases, inverses, dims, offsets })
    }

    /// Completes each base subspace with standard basis vectors.
    pub fn adapted(subspaces: &[Mat]) -> Result<Self> {
        let mut bases = Vec::new();
        let mut dims = Vec::new();
        for (q, x) in subspaces.iter().enumerate() {
            if x.rank() != x.cols() {
                return Err(Error::Invalid(format!("base subspace {q} is not of full column rank")));
            }
            let id = Mat::identity(x.rows());
            let extra = crate::linalg::complement_columns(x, &id);
            bases.push(Mat::hstack(&[x, &id.select_columns(&extra)]));
            dims.push(x.cols());
        }
        Self::new(bases, dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn basis(&self, q: usize) -> &Mat {
        &self.bases[q]
    }

    pub fn num_vars(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Index of `x^{(q)}_{k,j}` for `k ≥ d_q`, `j < d_q`.
    pub fn var(&self, q: usize, k: usize, j: usize) -> usize {
        self.offsets[q] + (k - self.dims[q]) * self.dims[q] + j
    }

    pub fn variable_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.num_vars());
        for (q, b) in self.bases.iter().enumerate() {
            for k in self.dims[q]..b.rows() {
                for j in 0..self.dims[q] {
                    names.push(format!("x{q}_{}_{}", k + 1, j + 1));
                }
            }
        }
        names
    }

    /// Bases `B_q [I; x^{(q)}]` of the subspaces at a chart point.
    pub fn subspaces(&self, point: &[Scalar]) -> Result<Vec<Mat>> {
        if point.len() != self.num_vars() {
            return Err(Error::Dimension(format!("chart point needs {} coordinates", self.num_vars())));
        }
        Ok(self
            .bases
            .iter()
            .enumerate()
            .map(|(q, b)| {
                let d = self.dims[q];
                let local = Mat::from_fn(b.rows(), d, |k, j| {
                    if k < d {
                        if k == j { scalar::one() } else { scalar::zero() }
                    } else {
                        point[self.var(q, k, j)].clone()
                    }
                });
                b.mul(&local)
            })
            .collect())
    }

    /// Chart coordinates of a subspace tuple, or `None` outside the chart.
    pub fn coordinates(&self, subspaces: &[Mat]) -> Result<Option<Vec<Scalar>>> {
        if subspaces.len() != self.bases.len() {
            return Err(Error::Dimension("one subspace per degree".into()));
        }
        let mut point = vec![scalar::zero(); self.num_vars()];
        for (q, x) in subspaces.iter().enumerate() {
            let d = self.dims[q];
            if x.rows() != self.bases[q].rows() || x.cols() != d || x.rank() != d {
                return Err(Error::Dimension(format!("subspace {q} does not match the chart dimension")));
            }
            let local = self.inverses[q].mul(x);
            let Ok(top) = local.submatrix(0..d, 0..d).inverse() else {
                return Ok(None);
            };
            let normal = local.mul(&top);
            for k in d..x.rows() {
                for j in 0..d {
                    point[self.var(q, k, j)] = normal[(k, j)].clone();
                }
            }
        }
        Ok(Some(point))
    }
}

// ⟨f^μ − Σ_ν y^μ_ν f^ν, 𝔞(e_j + Σ_k x^k_j e_k)⟩ for μ ≥ dy, j < dx, in adapted
// coordinates `a`; identically zero equations are dropped.
fn pair_equations(
    a: &Mat,
    dx: usize,
    dy: usize,
    x: impl Fn(usize, usize) -> usize,
    y: impl Fn(usize, usize) -> usize,
) -> Vec<Polynomial> {
    let mut eqs = Vec::new();
    for mu in dy..a.rows() {
        for j in 0..dx {
            let mut p = Polynomial::constant(a[(mu, j)].clone());
            for k in dx..a.cols() {
                p.add_term(&[x(k, j)], a[(mu, k)].clone());
            }
            for nu in 0..dy {
                p.add_term(&[y(mu, nu)], -a[(nu, j)].clone());
                for k in dx..a.cols() {
                    p.add_term(&[y(mu, nu), x(k, j)], -a[(nu, k)].clone());
                }
            }
            if !p.is_zero() {
                eqs.push(p);
            }
        }
    }
    eqs
}

/// Equations in the chart coordinates whose zero set is the set of
/// admissible tuples in the chart.
pub fn chart_equations(c: &IbcComplex, base: &ChartBase) -> Result<PolySystem> {
    let sizes: Vec<usize> = base.bases.iter().map(Mat::rows).collect();
    if sizes != c.dims {
        return Err(Error::Dimension("chart bases do not match the complex".into()));
    }
    let mut equations = Vec::new();
    for q in 0..c.len() {
        let a = base.inverses[q + 1].mul(c.map(q)).mul(&base.bases[q]);
        equations.extend(pair_equations(
            &a,
            base.dims[q],
            base.dims[q + 1],
            |k, j| base.var(q, k, j),
            |mu, nu| base.var(q + 1, mu, nu),
        ));
    }
    Ok(PolySystem { variables: base.variable_names(), equations })
}

/// Chart equations for subspaces `X` of a single space with `a X ⊆ X`,
/// around the span of the first `d` columns of `basis`.
pub fn invariant_chart_equations(a: &Mat, basis: &Mat, d: usize) -> Result<(ChartBase, PolySystem)> {
    if !a.is_square() || a.rows() != basis.rows() {
        return Err(Error::Dimension("operator and basis sizes differ".into()));
    }
    let base = ChartBase::new(vec![basis.clone()], vec![d])?;
    let local = base.inverses[0].mul(a).mul(basis);
    let var = |k, j| base.var(0, k, j);
    let equations = pair_equations(&local, d, d, var, var);
    let variables = base.variable_names();
    Ok((base, PolySystem { variables, equations }))
}

/// Random admissible tuple of the given dimensions, built degree by degree;
/// `None` when the image of `D^q` does not fit in dimension `d_{q+1}`.
pub fn random_ibc_tuple<R: Rng>(c: &IbcComplex, dims: &[usize], rng: &mut R) -> Option<Vec<Mat>> {
    let mut out: Vec<Mat> = Vec::with_capacity(dims.len());
    for q in 0..=c.len() {
        let n = c.dim(q);
        let forced = if q == 0 { Mat::zeros(n, 0) } else { c.map(q - 1).mul(&out[q - 1]).column_basis() };
        if forced.cols() > dims[q] || dims[q] > n {
            return None;
        }
        let mut d = forced;
        while d.cols() < dims[q] {
            let v = Mat::random(rng, n, 1, 2);
            if !d.spans(&v) {
                d = Mat::hstack(&[&d, &v]);
            }
        }
        out.push(d);
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartReport {
    pub samples: usize,
    /// Samples that are admissible tuples.
    pub admissible: usize,
    /// Samples on which the system and the membership test agree.
    pub agreed: usize,
}

/// Compares the zero set of `system` with `check_ibc` on `count` chart
/// points: coordinates of random admissible tuples, sparse random points and
/// single-coordinate perturbations of admissible points.
pub fn sample_chart_agreement<R: Rng>(
    c: &IbcComplex,
    base: &ChartBase,
    system: &PolySystem,
    count: usize,
    rng: &mut R,
) -> Result<ChartReport> {
    let mut report = ChartReport { samples: 0, admissible: 0, agreed: 0 };
    let nv = base.num_vars();
    let mut last_on: Option<Vec<Scalar>> = None;
    let mut tries = 0;
    while report.samples < count {
        tries += 1;
        let kind = report.samples % 3;
        let point = match kind {
            0 if tries < 50 * count => {
                let Some(tuple) = random_ibc_tuple(c, base.dims(), rng) else { continue };
                let Some(pt) = base.coordinates(&tuple)? else { continue };
                last_on = Some(pt.clone());
                pt
            }
            2 if nv > 0 && last_on.is_some() => {
                let mut pt = last_on.clone().unwrap();
                let k = rng.gen_range(0..nv);
                pt[k] += scalar::random_gauss(rng, 2);
                pt
            }
            _ => (0..nv)
                .map(|_| if rng.gen_bool(0.5) { scalar::zero() } else { scalar::random_gauss(rng, 2) })
                .collect(),
        };
        let tuple = base.subspaces(&point)?;
        let is_ibc = check_ibc(&IbcProblem::new(c.clone(), tuple)?).pass;
        let on = system.vanishes_at(&point)?;
        report.samples += 1;
        report.admissible += is_ibc as usize;
        report.agreed += (is_ibc == on) as usize;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nilpotent2() -> IbcComplex {
        IbcComplex::new(vec![2, 2], vec![Mat::from_i64(&[&[0, 1], &[0, 0]])]).unwrap()
    }

    // E^0 → E^1 → E^2 with 𝔞_1 𝔞_0 = 0
    fn three_term(rng: &mut ChaCha8Rng) -> IbcComplex {
        let a0 = Mat::random(rng, 3, 2, 2);
        let k = a0.transpose().kernel().transpose();
        let a1 = Mat::random(rng, 2, 1, 2).mul(&k.submatrix(0..1, 0..3));
        IbcComplex::new(vec![2, 3, 2], vec![a0, a1]).unwrap()
    }

    fn zero_complex() -> IbcComplex {
        IbcComplex::new(vec![2, 2, 1], vec![Mat::zeros(2, 2), Mat::zeros(1, 2)]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(IbcComplex::new(vec![1, 1], vec![Mat::zeros(2, 1)]), Err(Error::Dimension(_))));
        let a = Mat::identity(1);
        assert!(matches!(IbcComplex::new(vec![1, 1, 1], vec![a.clone(), a]), Err(Error::Invalid(_))));
        let c = nilpotent2();
        assert!(IbcProblem::new(c.clone(), vec![Mat::from_i64(&[&[1, 2], &[2, 4]])]).is_err());
        assert!(IbcProblem::new(c, vec![Mat::zeros(3, 0)]).is_err());
    }

    #[test]
    fn membership_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in [nilpotent2(), three_term(&mut rng), zero_complex()] {
            assert!(check_ibc(&IbcProblem::absolute(c.clone())).pass);
            assert!(check_ibc(&IbcProblem::relative(c)).pass);
        }
        let z = zero_complex();
        for _ in 0..10 {
            let mut d = Vec::new();
            for &n in z.dims() {
                let k = rng.gen_range(0..=n);
                d.push(Mat::random(&mut rng, n, k, 2).column_basis());
            }
            assert!(check_ibc(&IbcProblem::new(z.clone(), d).unwrap()).pass);
        }
        let one = IbcComplex::new(vec![1, 1], vec![Mat::identity(1)]).unwrap();
        let p = IbcProblem::new(one, vec![Mat::identity(1), Mat::zeros(1, 0)]).unwrap();
        let v = check_ibc(&p);
        assert!(!v.pass);
        assert_eq!(v.failures, vec![IbcFailure { degree: 0, witness: vec![int(1)], image: vec![int(1)] }]);
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_cohomology(&IbcProblem::absolute(zero_complex())).unwrap(), vec![2, 2, 1]);
        // 0 → C → C^2 → C → 0 exact
        let exact = IbcComplex::new(
            vec![1, 2, 1],
            vec![Mat::from_i64(&[&[1], &[0]]), Mat::from_i64(&[&[0, 1]])],
        )
        .unwrap();
        assert_eq!(quotient_cohomology(&IbcProblem::absolute(exact.clone())).unwrap(), vec![0, 0, 0]);
        assert_eq!(quotient_cohomology(&IbcProblem::relative(exact.clone())).unwrap(), vec![0, 0, 1]);
        // D^1 = span e1 keeps the first map and kills the second
        let p = IbcProblem::new(exact.clone(), vec![Mat::identity(1), Mat::from_i64(&[&[1], &[0]])]).unwrap();
        assert_eq!(quotient_cohomology(&p).unwrap(), vec![0, 0, 1]);
        let bad = IbcProblem::new(exact, vec![Mat::identity(1), Mat::from_i64(&[&[0], &[1]])]).unwrap();
        assert!(matches!(quotient_cohomology(&bad), Err(Error::Invalid(_))));
    }

    #[test]
    fn two_by_two_chart() {
        let c = nilpotent2();
        let e1 = Mat::from_i64(&[&[1], &[0]]);
        let base = ChartBase::adapted(&[e1.clone(), e1]).unwrap();
        let sys = chart_equations(&c, &base).unwrap();
        assert_eq!(sys.variables, vec!["x0_2_1", "x1_2_1"]);
        let mut expect = Polynomial::zero();
        expect.add_term(&[0, 1], int(-1));
        assert_eq!(sys.equations, vec![expect]);
        assert_eq!(sys.max_degree(), 2);
        assert_eq!(PolySystem::from_text(&sys.to_text()).unwrap(), sys);
        assert_eq!(sys.to_text(), "variables 2\nx0_2_1\nx1_2_1\nequations 1\nequation 1\n-1 x0_2_1 x1_2_1\n");
    }

    #[test]
    fn zero_map_gives_empty_system() {
        let c = zero_complex();
        let base = ChartBase::adapted(&[Mat::from_i64(&[&[1], &[1]]), Mat::from_i64(&[&[0], &[1]]), Mat::zeros(1, 0)]).unwrap();
        let sys = chart_equations(&c, &base).unwrap();
        assert!(sys.equations.is_empty());
        assert_eq!(sys.variables.len(), 2);
    }

    #[test]
    fn adapted_bases_are_checked() {
        assert!(ChartBase::new(vec![Mat::from_i64(&[&[1, 1], &[1, 1]])], vec![1]).is_err());
        assert!(ChartBase::new(vec![Mat::identity(2)], vec![3]).is_err());
        assert!(ChartBase::adapted(&[Mat::from_i64(&[&[1, 2], &[2, 4]])]).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let base = ChartBase::new(vec![Mat::random(&mut rng, 4, 4, 3)], vec![2]).unwrap();
        let pt: Vec<Scalar> = (0..base.num_vars()).map(|_| scalar::random_gauss(&mut rng, 3)).collect();
        let x = base.subspaces(&pt).unwrap();
        let scrambled = vec![x[0].mul(&Mat::from_i64(&[&[1, 1], &[0, 2]]))];
        assert_eq!(base.coordinates(&scrambled).unwrap(), Some(pt));
        let outside = vec![base.basis(0).select_columns(&[2, 3])];
        assert_eq!(base.coordinates(&outside).unwrap(), None);
    }

    #[test]
    fn sampled_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = three_term(&mut rng);
        let tuple = random_ibc_tuple(&c, &[1, 2, 1], &mut rng).unwrap();
        let base = ChartBase::adapted(&tuple).unwrap();
        let sys = chart_equations(&c, &base).unwrap();
        assert!(sys.max_degree() <= 2);
        let r = sample_chart_agreement(&c, &base, &sys, 60, &mut rng).unwrap();
        assert_eq!(r.agreed, r.samples);
        assert!(r.admissible >= 20 && r.admissible < r.samples);
    }

    #[test]
    fn folded_invariance_matches_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = three_term(&mut rng);
        let a = c.fold();
        assert!(a.mul(&a).is_zero());
        for t in 0..30 {
            let d = if t % 2 == 0 {
                random_ibc_tuple(&c, &[1, 2, 1], &mut rng).unwrap()
            } else {
                c.dims().iter().map(|&n| Mat::random(&mut rng, n, 1, 2).column_basis()).collect()
            };
            let direct = check_ibc(&IbcProblem::new(c.clone(), d.clone()).unwrap()).pass;
            assert_eq!(direct, is_invariant(&a, &c.fold_subspaces(&d).unwrap()));
        }
    }

    #[test]
    fn invariant_chart_on_jordan_block() {
        let a = Mat::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let (base, sys) = invariant_chart_equations(&a, &Mat::identity(3), 1).unwrap();
        // lines through (1, x, y): invariant iff x = y = 0
        for (x, y, inv) in [(0, 0, true), (1, 0, false), (0, 1, false), (2, -1, false)] {
            let pt = vec![int(x), int(y)];
            let sub = base.subspaces(&pt).unwrap();
            assert_eq!(is_invariant(&a, &sub[0]), inv);
            assert_eq!(sys.vanishes_at(&pt).unwrap(), inv);
        }
    }

    #[test]
    fn text_parse_errors() {
        assert!(PolySystem::from_text("variables 1\nx\nequations 1\nequation 1\n1 y\n").is_err());
        assert!(PolySystem::from_text("variables 2\nx\n").is_err());
        let s = PolySystem::from_text("# c\nvariables 1\nx\nequations 1\nequation 2\n1/2 x^2\n-i\n").unwrap();
        assert_eq!(s.equations[0].degree(), 2);
        assert_eq!(s.eval(&[int(2)]).unwrap(), vec![&int(2) - &scalar::i()]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn absolute_and_relative_always_pass(seed in 0u64..1000, n0 in 1usize..4, n1 in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a0 = Mat::random(&mut rng, n1, n0, 2);
            let k = a0.transpose().kernel();
            // rows of a1 annihilate the image of a0
            let a1 = if k.cols() > 0 { k.select_columns(&[0]).transpose() } else { Mat::zeros(1, n1) };
            let c = IbcComplex::new(vec![n0, n1, 1], vec![a0, a1]).unwrap();
            prop_assert!(check_ibc(&IbcProblem::absolute(c.clone())).pass);
            prop_assert!(check_ibc(&IbcProblem::relative(c)).pass);
        }

        #[test]
        fn chart_points_agree(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = three_term(&mut rng);
            let Some(tuple) = random_ibc_tuple(&c, &[1, 2, 2], &mut rng) else { return Ok(()) };
            let base = ChartBase::adapted(&tuple).unwrap();
            let sys = chart_equations(&c, &base).unwrap();
            let r = sample_chart_agreement(&c, &base, &sys, 12, &mut rng).unwrap();
            prop_assert_eq!(r.agreed, r.samples);
        }
    }
}

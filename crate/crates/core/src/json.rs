//! Problem files and JSON reports. Scalars are exact strings such as
//! `"3/2-1/4*i"`; matrices are lists of rows.

use crate::error::{Error, Result};
use crate::germ_cohom::{CohomBasis, PrincipalPart, SpectrumReport};
use crate::holo_complex::{generate_gauge_complex, ComplexFamily, GaugeProfile, IndicialInput};
use crate::ibc_variety::{ChartReport, IbcComplex, IbcVerdict, PolySystem};
use crate::linalg::Mat;
use crate::matrix_series::MapFamily;
use crate::mellin_bridge::{LogSection, StripConfig, StripPairing};
use crate::reduction::Certificate;
use crate::residue_pairing::Verdict;
use crate::scalar::{self, Scalar};
use crate::series::LaurentSeries;
use num::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const FORMAT_VERSION: u32 = 1;

pub type MatrixDto = Vec<Vec<String>>;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indicial: Option<IndicialDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strip: Option<StripDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ibc: Option<IbcDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorDto>,
    #[serde(default)]
    pub options: Options,
}

/// `maps[q][k]` is the coefficient of `(σ − center)^k` in `P_q`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDto {
    pub center: String,
    /// Last exponent known; `null` for exact polynomial maps.
    #[serde(default)]
    pub order: Option<i64>,
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<MatrixDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<MatrixDto>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndicialDto {
    pub bp: Vec<MatrixDto>,
    pub lambda: Vec<MatrixDto>,
    pub gamma: String,
    #[serde(default)]
    pub anchor: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogSectionDto {
    pub sigma0: String,
    /// `coeffs[k]` multiplies `log^k x`.
    pub coeffs: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripDto {
    pub indicial: IndicialDto,
    pub points: Vec<String>,
    pub u: Vec<LogSectionDto>,
    pub v: Vec<LogSectionDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IbcDto {
    pub dims: Vec<usize>,
    pub maps: Vec<MatrixDto>,
    /// Bases of `D^q`; the top one may be omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<MatrixDto>>,
    /// Bases of the base tuple of a chart, one per degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<Vec<MatrixDto>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDto {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub blocks: Vec<(usize, u32)>,
    #[serde(default)]
    pub gauge_degree: Option<usize>,
    #[serde(default = "zero_string")]
    pub center: String,
}

fn zero_string() -> String {
    "0".into()
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub checked: Option<bool>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub candidates: Option<Vec<String>>,
    #[serde(default)]
    pub degree: Option<i64>,
    #[serde(default)]
    pub samples: Option<usize>,
}

pub enum Payload {
    Complex(ComplexFamily),
    Indicial(IndicialInput),
    Strip { indicial: IndicialInput, config: StripConfig, u: Vec<LogSection>, v: Vec<LogSection> },
    Ibc { complex: IbcComplex, candidates: Option<Vec<Mat>>, chart: Option<Vec<Mat>> },
    Generator { complex: ComplexFamily, expected: Vec<usize> },
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {}", f.version)));
        }
        Ok(f)
    }

    pub fn payload(&self) -> Result<Payload> {
        let given = [self.complex.is_some(), self.indicial.is_some(), self.strip.is_some(), self.ibc.is_some(), self.generator.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(Error::Parse("exactly one of complex, indicial, strip, ibc, generator is required".into()));
        }
        if let Some(c) = &self.complex {
            return Ok(Payload::Complex(c.build()?));
        }
        if let Some(i) = &self.indicial {
            return Ok(Payload::Indicial(i.build()?));
        }
        if let Some(s) = &self.strip {
            let indicial = s.indicial.build()?;
            let points = s.points.iter().map(|p| scalar::parse(p)).collect::<Result<Vec<_>>>()?;
            let config = StripConfig::new(indicial.gamma.clone(), points)?;
            let u = s.u.iter().map(LogSectionDto::build).collect::<Result<Vec<_>>>()?;
            let v = s.v.iter().map(LogSectionDto::build).collect::<Result<Vec<_>>>()?;
            return Ok(Payload::Strip { indicial, config, u, v });
        }
        if let Some(b) = &self.ibc {
            let complex = b.build()?;
            let candidates = b.candidates.as_ref().map(|l| parse_list(l, &b.dims)).transpose()?;
            let chart = b.chart.as_ref().map(|l| parse_list(l, &b.dims)).transpose()?;
            return Ok(Payload::Ibc { complex, candidates, chart });
        }
        let g = self.generator.as_ref().expect("one payload");
        let (complex, expected) = generate_gauge_complex(g.seed, &g.profile()?)?;
        Ok(Payload::Generator { complex, expected })
    }

    pub fn candidates(&self) -> Result<Option<Vec<Scalar>>> {
        self.options.candidates.as_ref().map(|l| l.iter().map(|s| scalar::parse(s)).collect()).transpose()
    }
}

fn parse_list(list: &[MatrixDto], dims: &[usize]) -> Result<Vec<Mat>> {
    list.iter()
        .enumerate()
        .map(|(q, m)| {
            let rows = *dims.get(q).ok_or_else(|| Error::Dimension(format!("no space for matrix {q}")))?;
            let cols = m.first().map_or(0, Vec::len);
            parse_matrix(m, rows, cols)
        })
        .collect()
}

pub fn parse_matrix(m: &MatrixDto, rows: usize, cols: usize) -> Result<Mat> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("expected a {rows}x{cols} matrix")));
    }
    let mut out = Mat::zeros(rows, cols);
    for (i, r) in m.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            out[(i, j)] = scalar::parse(s)?;
        }
    }
    Ok(out)
}

/// Matrix whose shape is read off the rows; `[]` is `0×0`.
pub fn parse_matrix_any(m: &MatrixDto) -> Result<Mat> {
    parse_matrix(m, m.len(), m.first().map_or(0, Vec::len))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let z = scalar::parse(s)?;
    if !scalar::is_real(&z) {
        return Err(Error::Parse(format!("{s} is not real")));
    }
    Ok(z.re)
}

impl ComplexDto {
    pub fn build(&self) -> Result<ComplexFamily> {
        let center = scalar::parse(&self.center)?;
        if self.maps.len() + 1 != self.dims.len() {
            return Err(Error::Dimension(format!("{} spaces for {} maps", self.dims.len(), self.maps.len())));
        }
        let mut maps = Vec::new();
        for (q, coeffs) in self.maps.iter().enumerate() {
            let (r, c) = (self.dims[q + 1], self.dims[q]);
            let mats = coeffs.iter().map(|m| parse_matrix(m, r, c)).collect::<Result<Vec<_>>>()?;
            if let Some(o) = self.order {
                if mats.len() as i64 > o + 1 {
                    return Err(Error::Parse(format!("map {q} lists coefficients beyond order {o}")));
                }
            }
            maps.push(MapFamily::new(r, c, center.clone(), 0, mats, self.order)?);
        }
        match &self.gram {
            None => ComplexFamily::new(center, self.dims.clone(), maps),
            Some(g) => {
                let grams = g
                    .iter()
                    .zip(&self.dims)
                    .map(|(m, &n)| parse_matrix(m, n, n))
                    .collect::<Result<Vec<_>>>()?;
                ComplexFamily::with_gram(center, self.dims.clone(), maps, grams)
            }
        }
    }

    /// Representation of a complex with maps expanded from exponent 0.
    pub fn from_complex(c: &ComplexFamily) -> Self {
        let maps = c
            .maps()
            .iter()
            .map(|p| (0..=p.top().max(0)).map(|k| matrix(&p.coeff_or_zero(k))).collect())
            .collect();
        let identity = c.grams().iter().all(|g| *g == Mat::identity(g.rows()));
        ComplexDto {
            center: scalar::format(c.center()),
            order: c.order(),
            dims: c.dims().to_vec(),
            maps,
            gram: (!identity).then(|| c.grams().iter().map(matrix).collect()),
        }
    }
}

impl IndicialDto {
    pub fn build(&self) -> Result<IndicialInput> {
        let bp = self.bp.iter().map(parse_matrix_any).collect::<Result<Vec<_>>>()?;
        let lambda = self.lambda.iter().map(parse_matrix_any).collect::<Result<Vec<_>>>()?;
        let ind = IndicialInput { bp, lambda, gamma: parse_rational(&self.gamma)?, anchor: self.anchor };
        ind.dims()?;
        Ok(ind)
    }
}

impl LogSectionDto {
    pub fn build(&self) -> Result<LogSection> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.iter().map(|s| scalar::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let dim = coeffs.first().map_or(0, Vec::len);
        LogSection::new(scalar::parse(&self.sigma0)?, dim, coeffs)
    }
}

impl IbcDto {
    pub fn build(&self) -> Result<IbcComplex> {
        if self.maps.len() + 1 != self.dims.len() {
            return Err(Error::Dimension(format!("{} spaces for {} maps", self.dims.len(), self.maps.len())));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(q, m)| parse_matrix(m, self.dims[q + 1], self.dims[q]))
            .collect::<Result<Vec<_>>>()?;
        IbcComplex::new(self.dims.clone(), maps)
    }
}

impl GeneratorDto {
    pub fn profile(&self) -> Result<GaugeProfile> {
        Ok(GaugeProfile {
            dims: self.dims.clone(),
            blocks: self.blocks.clone(),
            gauge_degree: self.gauge_degree,
            center: scalar::parse(&self.center)?,
        })
    }
}

pub fn s(z: &Scalar) -> Value {
    Value::String(scalar::format(z))
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(s).collect())
}

pub fn matrix(m: &Mat) -> MatrixDto {
    (0..m.rows()).map(|i| m.row(i).iter().map(scalar::format).collect()).collect()
}

pub fn series(f: &LaurentSeries) -> Value {
    json!({
        "center": s(f.center()),
        "valuation": f.valuation(),
        "order": f.order(),
        "coeffs": vector(f.coeffs()),
    })
}

pub fn family(f: &MapFamily) -> Value {
    let low = f.valuation().min(0);
    let top = f.top().max(low);
    json!({
        "center": s(f.center()),
        "rows": f.rows(),
        "cols": f.cols(),
        "low": low,
        "order": f.order(),
        "coeffs": (low..=top).map(|k| matrix(&f.coeff_or_zero(k))).collect::<Vec<_>>(),
    })
}

pub fn principal_part(u: &PrincipalPart) -> Value {
    json!({
        "center": s(u.center()),
        "parts": u.parts().iter().map(|p| vector(p)).collect::<Vec<_>>(),
    })
}

pub fn cohom_basis(b: &CohomBasis) -> Value {
    json!({
        "degree": b.degree,
        "center": s(&b.center),
        "dim": b.dim(),
        "depth": b.depth,
        "witness_depth": b.witness_depth,
        "representatives": b.reps.iter().map(principal_part).collect::<Vec<_>>(),
    })
}

pub fn verdict(v: &Verdict) -> Value {
    json!({
        "pass": v.pass,
        "determinant": v.determinant.as_ref().map(s),
        "null_class": v.null_class.as_deref().map(vector),
        "null_dual": v.null_dual.as_deref().map(vector),
    })
}

pub fn spectrum(r: &SpectrumReport) -> Value {
    json!({
        "degree": r.degree,
        "determinant": r.determinant.as_ref().map(|p| vector(p.coeffs())),
        "candidates": vector(&r.candidates),
        "certified_zero": vector(&r.certified_zero),
        "unresolved": r.unresolved.iter().map(|(p, m)| json!({"factor": vector(p.coeffs()), "multiplicity": m})).collect::<Vec<_>>(),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "degree": c.degree,
        "center": s(&c.center),
        "pass": c.pass(),
        "budget": c.budget,
        "dim": c.dim,
        "direct_dim": c.direct_dim,
        "adjoint_dim": c.adjoint_dim,
        "filtration": c.filtration,
        "levels": c.levels.iter().map(|l| json!({
            "harmonic_dims": l.harmonic_dims,
            "contribution": l.contribution,
            "order": l.order,
            "cohomology_dim": l.cohomology_dim,
            "transported_pairs": l.transported_pairs,
            "js_pairs": l.js_pairs,
        })).collect::<Vec<_>>(),
        "reduced_map": family(&c.reduced_map),
        "pairing": matrix(&c.pairing),
        "verdict": verdict(&c.verdict),
        "dual_partners": c.dual_partners.iter().map(|p| vector(p)).collect::<Vec<_>>(),
    })
}

pub fn strip(p: &StripPairing) -> Value {
    json!({
        "total": s(&p.total),
        "contributions": matrix(&p.contributions),
        "per_point": p.per_point.iter().map(|(pt, c)| json!({"point": s(pt), "contribution": s(c)})).collect::<Vec<_>>(),
    })
}

pub fn ibc_verdict(v: &IbcVerdict) -> Value {
    json!({
        "pass": v.pass,
        "failures": v.failures.iter().map(|f| json!({
            "degree": f.degree,
            "witness": vector(&f.witness),
            "image": vector(&f.image),
        })).collect::<Vec<_>>(),
    })
}

pub fn chart(sys: &PolySystem, report: Option<&ChartReport>) -> Value {
    json!({
        "variables": sys.variables,
        "equations": sys.equations.len(),
        "max_degree": sys.max_degree(),
        "text": sys.to_text(),
        "samples": report.map(|r| json!({"samples": r.samples, "admissible": r.admissible, "agreed": r.agreed})),
    })
}

use crate::{Common, Status};
use germcoh_core::germ_cohom::{cohomology_window, spectrum_scan, stabilized_cohomology};
use germcoh_core::ibc_variety::{
    chart_equations, check_ibc, quotient_cohomology, sample_chart_agreement, ChartBase, IbcProblem,
};
use germcoh_core::json::{self as js, Payload, ProblemFile};
use germcoh_core::mellin_bridge::strip_pairing;
use germcoh_core::reduction::recursive_certify;
use germcoh_core::residue_pairing::{certify_nondegenerate, cohomology_pairing_matrix, pairing_on_bases, PairingMatrix};
use germcoh_core::{scalar, ComplexFamily, Error, Result, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

pub fn error_report(e: &Error) -> (Value, Status) {
    let status = if e.is_certification_failure() { Status::Certification } else { Status::Input };
    eprintln!("germcoh: {e}");
    (json!({"ok": false, "error": e.to_string()}), status)
}

fn status_of(pass: bool) -> Status {
    if pass {
        Status::Ok
    } else {
        Status::Certification
    }
}

pub fn validate(p: &ProblemFile) -> Result<(Value, Status)> {
    let report = match p.payload()? {
        Payload::Complex(c) => complex_validity(&c, None),
        Payload::Generator { complex, expected } => complex_validity(&complex, Some(expected)),
        Payload::Indicial(ind) | Payload::Strip { indicial: ind, .. } => match ind.check() {
            Ok(chk) => json!({"kind": "indicial", "valid": true, "lambda_exact": chk.lambda_exact}),
            Err(Error::Invalid(msg)) => json!({"kind": "indicial", "valid": false, "message": msg}),
            Err(e) => return Err(e),
        },
        Payload::Ibc { complex, candidates, .. } => {
            if let Some(d) = candidates {
                IbcProblem::new(complex, d)?;
            }
            json!({"kind": "ibc", "valid": true})
        }
    };
    let status = if report["valid"] == json!(true) { Status::Ok } else { Status::Input };
    Ok((report, status))
}

fn complex_validity(c: &ComplexFamily, expected: Option<Vec<usize>>) -> Value {
    let mut out = json!({"kind": "complex", "dims": c.dims(), "valid": true});
    if let Err(v) = c.validate() {
        out["valid"] = json!(false);
        out["violation"] = json!({"degree": v.degree, "exponent": v.exponent, "row": v.row, "col": v.col});
    }
    if let Some(e) = expected {
        out["expected_dims"] = json!(e);
    }
    out
}

/// The complex of a payload, with generator ground truth when known.
fn complex_of(p: &ProblemFile) -> Result<(ComplexFamily, Option<Vec<usize>>)> {
    let (c, expected) = match p.payload()? {
        Payload::Complex(c) => (c, None),
        Payload::Generator { complex, expected } => (complex, Some(expected)),
        Payload::Indicial(ind) => (ind.build()?, None),
        _ => return Err(Error::Invalid("this command needs a complex, generator or indicial payload".into())),
    };
    if let Err(v) = c.validate() {
        return Err(Error::Invalid(format!(
            "not a complex: degree {}, exponent {}, entry ({},{})",
            v.degree, v.exponent, v.row, v.col
        )));
    }
    Ok((c, expected))
}

fn degrees(c: &ComplexFamily, p: &ProblemFile, o: &Common) -> Result<Vec<i64>> {
    let m = c.length() as i64;
    match o.degree.or(p.options.degree) {
        Some(q) if q < 0 || q > m => Err(Error::Invalid(format!("degree {q} out of range 0..={m}"))),
        Some(q) => Ok(vec![q]),
        None => Ok((0..=m).collect()),
    }
}

fn seed(p: &ProblemFile, o: &Common) -> u64 {
    o.seed.or(p.options.seed).unwrap_or(0)
}

fn checked(p: &ProblemFile, o: &Common) -> bool {
    !o.fast && p.options.checked.unwrap_or(true)
}

fn pairing_at(local: &ComplexFamily, q: i64, depth: Option<usize>, rng: Option<&mut ChaCha8Rng>) -> Result<PairingMatrix> {
    match depth {
        None => cohomology_pairing_matrix(local, q, rng),
        Some(d) => {
            let adj = local.adjoint()?;
            let left = cohomology_window(local, q, d, d)?;
            let right = cohomology_window(&adj, local.adjoint_degree(q + 1), d, d)?;
            pairing_on_bases(local, q, left, right, rng)
        }
    }
}

pub fn analyze(p: &ProblemFile, o: &Common) -> Result<(Value, Status)> {
    let (c, expected) = complex_of(p)?;
    let cands: Option<Vec<Scalar>> = match &o.candidates {
        Some(l) => Some(l.iter().map(|s| scalar::parse(s)).collect::<Result<_>>()?),
        None => p.candidates()?,
    };
    let depth = o.depth.or(p.options.depth);
    let (seed, checked) = (seed(p, o), checked(p, o));
    let mut pass = true;
    let mut out = Vec::new();
    for q in degrees(&c, p, o)? {
        let scan = spectrum_scan(&c, q, cands.clone())?;
        let points = scan
            .spectrum
            .par_iter()
            .enumerate()
            .map(|(k, (pt, dim))| {
                let local = if pt == c.center() { c.clone() } else { c.recenter(pt)? };
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((q as u64) << 32) ^ k as u64);
                let m = pairing_at(&local, q, depth, checked.then_some(&mut rng))?;
                let v = certify_nondegenerate(&m.entries);
                Ok(json!({
                    "point": js::s(pt),
                    "dim": dim,
                    "pairing": js::matrix(&m.entries),
                    "verdict": js::verdict(&v),
                    "classes": js::cohom_basis(&m.left),
                    "dual_classes": js::cohom_basis(&m.right),
                }))
            })
            .collect::<Result<Vec<Value>>>()?;
        pass &= points.iter().all(|v| v["verdict"]["pass"] == json!(true));
        let mut entry = json!({"degree": q, "scan": js::spectrum(&scan), "points": points});
        if let Some(e) = &expected {
            let here = stabilized_cohomology(&c, q)?.dim();
            let want = e[q as usize];
            entry["expected_dim_at_center"] = json!(want);
            entry["dim_at_center"] = json!(here);
            pass &= here == want;
        }
        out.push(entry);
    }
    Ok((json!({"command": "analyze", "center": js::s(c.center()), "pass": pass, "degrees": out}), status_of(pass)))
}

pub fn reduce(p: &ProblemFile, o: &Common) -> Result<(Value, Status)> {
    let (c, _) = complex_of(p)?;
    let (seed, checked) = (seed(p, o), checked(p, o));
    let mut pass = true;
    let mut certs = Vec::new();
    for q in degrees(&c, p, o)? {
        let cert = recursive_certify(&c, q)?;
        if checked {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ q as u64);
            let m = cohomology_pairing_matrix(&c, q, Some(&mut rng))?;
            if m.entries != cert.pairing {
                return Err(Error::Inconsistency(format!("degree {q}: checked pairing differs from the certificate")));
            }
        }
        pass &= cert.pass();
        certs.push(js::certificate(&cert));
    }
    Ok((json!({"command": "reduce", "pass": pass, "certificates": certs}), status_of(pass)))
}

pub fn strip(p: &ProblemFile) -> Result<(Value, Status)> {
    let Payload::Strip { indicial, config, u, v } = p.payload()? else {
        return Err(Error::Invalid("strip needs a strip payload".into()));
    };
    indicial.check()?;
    let r = strip_pairing(&indicial, &config, &u, &v)?;
    let partners: Vec<Value> = config.points.iter().map(|x| json!({"point": js::s(x), "partner": js::s(&config.partner(x))})).collect();
    Ok((json!({"command": "strip", "pass": true, "points": partners, "pairing": js::strip(&r)}), Status::Ok))
}

pub fn ibc(p: &ProblemFile, o: &Common) -> Result<(Value, Status)> {
    let Payload::Ibc { complex, candidates, chart } = p.payload()? else {
        return Err(Error::Invalid("ibc needs an ibc payload".into()));
    };
    let mut out = json!({
        "command": "ibc",
        "absolute": quotient_cohomology(&IbcProblem::absolute(complex.clone()))?,
        "relative": quotient_cohomology(&IbcProblem::relative(complex.clone()))?,
    });
    let mut pass = true;
    if let Some(d) = candidates {
        let prob = IbcProblem::new(complex.clone(), d)?;
        let v = check_ibc(&prob);
        out["membership"] = js::ibc_verdict(&v);
        if v.pass {
            out["cohomology"] = json!(quotient_cohomology(&prob)?);
        }
    }
    if let Some(base) = chart {
        let base = ChartBase::adapted(&base)?;
        let sys = chart_equations(&complex, &base)?;
        let n = o.samples.or(p.options.samples).unwrap_or(100);
        let mut rng = ChaCha8Rng::seed_from_u64(seed(p, o));
        let r = sample_chart_agreement(&complex, &base, &sys, n, &mut rng)?;
        pass = r.agreed == r.samples;
        out["chart"] = js::chart(&sys, Some(&r));
    }
    out["pass"] = json!(pass);
    Ok((out, status_of(pass)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(error_report(&Error::Inconsistency("x".into())).1, Status::Certification);
        assert_eq!(error_report(&Error::Parse("x".into())).1, Status::Input);
        assert_eq!(status_of(false), Status::Certification);
    }
}

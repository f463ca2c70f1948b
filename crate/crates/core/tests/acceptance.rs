//! Acceptance criteria 1-11. Runs as a plain binary and prints one line per
//! criterion; any failure makes the process exit nonzero.

use germcoh_core::germ_cohom::{induced_degree1_map, stabilized_cohomology, PrincipalPart};
use germcoh_core::holo_complex::{generate_gauge_complex, GaugeProfile};
use germcoh_core::ibc_variety::{
    chart_equations, check_ibc, is_invariant, invariant_chart_equations, quotient_cohomology, random_ibc_tuple,
    sample_chart_agreement, ChartBase, IbcComplex, IbcProblem,
};
use germcoh_core::mellin_bridge::{
    diagonal_strip_model, mellin_inverse, mellin_singular, mellin_weight, on_midline, sigma_star, strip_pairing,
    theta_diagram_commutes, LogSection, StripConfig,
};
use germcoh_core::reduction::{
    check_sigma_laws, pairing_transport, recursive_certify, schur_reduce, sigma_divide, verify_reduction,
};
use germcoh_core::residue_pairing::{certify_nondegenerate, cohomology_pairing_matrix, germ_pairing};
use germcoh_core::scalar::{self, gauss, int, ratio};
use germcoh_core::{ComplexFamily, IndicialInput, MapFamily, Mat, Scalar};
use num::{BigRational, Complex, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

struct Entry {
    complex: ComplexFamily,
    expected: Vec<usize>,
    label: String,
}

fn corpus() -> Vec<Entry> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut out = Vec::new();
    while out.len() < 56 {
        let m = rng.gen_range(1..=4usize);
        let nblocks = rng.gen_range(1..=3usize);
        let blocks: Vec<(usize, u32)> = (0..nblocks).map(|_| (rng.gen_range(0..m), rng.gen_range(1..=3u32))).collect();
        let mut dims = vec![0usize; m + 1];
        for &(q, _) in &blocks {
            dims[q] += 1;
            dims[q + 1] += 1;
        }
        for _ in 0..rng.gen_range(0..=2) {
            let q = rng.gen_range(0..m);
            dims[q] += 1;
            dims[q + 1] += 1;
        }
        if dims.iter().any(|&d| d > 6) {
            continue;
        }
        let profile = GaugeProfile {
            dims: dims.clone(),
            blocks: blocks.clone(),
            gauge_degree: Some(rng.gen_range(0..=2)),
            center: gauss(rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
        };
        let seed = rng.gen();
        let (complex, expected) = generate_gauge_complex(seed, &profile).expect("corpus profile is feasible");
        out.push(Entry { complex, expected, label: format!("seed {seed} dims {dims:?} blocks {blocks:?}") });
    }
    out
}

fn degrees(c: &ComplexFamily) -> std::ops::RangeInclusive<i64> {
    0..=c.length() as i64
}

fn c1_duality(corpus: &[Entry]) -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for e in corpus {
        let c = &e.complex;
        ensure(c.length() <= 4 && c.dims().iter().all(|&d| d <= 6), || format!("{} outside the corpus bounds", e.label))?;
        for q in degrees(c) {
            let m = ok(cohomology_pairing_matrix(c, q, None::<&mut ChaCha8Rng>), &e.label)?;
            ensure(m.left.dim() == m.right.dim(), || format!("{} q={q}: dims {} vs {}", e.label, m.left.dim(), m.right.dim()))?;
            let v = certify_nondegenerate(&m.entries);
            ensure(v.pass, || format!("{} q={q}: degenerate pairing", e.label))?;
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(corpus.len() >= 50, || format!("corpus has {} complexes", corpus.len()))?;
    ensure(secs < 120.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} complexes, {checked} degrees, {secs:.1}s", corpus.len()))
}

fn c2_ground_truth(corpus: &[Entry]) -> Check {
    let mut n = 0;
    for e in corpus {
        for q in degrees(&e.complex) {
            let d = ok(stabilized_cohomology(&e.complex, q), &e.label)?.dim();
            ensure(d == e.expected[q as usize], || format!("{} q={q}: {d} vs truth {}", e.label, e.expected[q as usize]))?;
            n += 1;
        }
    }
    Ok(format!("{n} degree dimensions equal the generator truth"))
}

fn jordan() -> ComplexFamily {
    let z = scalar::zero();
    let p = MapFamily::polynomial(z.clone(), vec![Mat::from_i64(&[&[0, 1], &[0, 0]]), Mat::identity(2)]).unwrap();
    ComplexFamily::new(z, vec![2, 2], vec![p]).unwrap()
}

fn c3_three_routes(corpus: &[Entry]) -> Check {
    let mut smith_cases = 0;
    let mut n = 0;
    for e in corpus {
        let c = &e.complex;
        for q in degrees(c) {
            let direct = ok(stabilized_cohomology(c, q), &e.label)?.dim();
            let cert = ok(recursive_certify(c, q), &e.label)?;
            ensure(cert.dim == direct, || format!("{} q={q}: recursive {} vs direct {direct}", e.label, cert.dim))?;
            if c.length() == 1 && c.dim(0) == c.dim(1) {
                let oracle = if q == 0 {
                    ok(c.map(0).local_smith_form(), &e.label)?.exponents.iter().map(|&k| k as usize).sum()
                } else {
                    0
                };
                ensure(oracle == direct, || format!("{} q={q}: Smith {oracle} vs direct {direct}", e.label))?;
                smith_cases += 1;
            }
            n += 1;
        }
    }
    let j = jordan();
    let cert = ok(recursive_certify(&j, 0), "jordan")?;
    let smith: i64 = ok(j.map(0).local_smith_form(), "jordan")?.exponents.iter().sum();
    let minus_s2 = MapFamily::polynomial(scalar::zero(), vec![Mat::zeros(1, 1), Mat::zeros(1, 1), Mat::from_i64(&[&[-1]])]).unwrap();
    ensure(cert.dim == 2 && smith == 2 && stabilized_cohomology(&j, 0).unwrap().dim() == 2, || "jordan dims".into())?;
    ensure(cert.reduced_map == minus_s2, || format!("jordan reduced map {:?}", cert.reduced_map))?;
    ensure(smith_cases > 0, || "no two-term cases in the corpus".into())?;
    Ok(format!("{n} degrees agree, {smith_cases} against the Smith oracle, Jordan dim 2 with map -s^2"))
}

fn random_part<R: Rng>(rng: &mut R, center: Scalar, dim: usize) -> PrincipalPart {
    let depth = rng.gen_range(1..=3);
    let coords: Vec<Scalar> = (0..dim * depth).map(|_| scalar::random_small(rng, 3, 3)).collect();
    PrincipalPart::from_coords(center, dim, &coords)
}

fn c4_pairing(corpus: &[Entry]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut pairs, mut perturbed) = (0, 0);
    for e in corpus {
        let c = &e.complex;
        let adj = ok(c.adjoint(), &e.label)?;
        for q in 0..c.length() as i64 {
            let (p, ps) = (c.map(q), adj.map(adj.adjoint_degree(q + 1)));
            for _ in 0..3 {
                let u = random_part(&mut rng, c.center().clone(), c.dim(q));
                let v = random_part(&mut rng, c.center().conj(), c.dim(q + 1));
                let uv = ok(germ_pairing(&p, &c.gram(q + 1), &u, &v), &e.label)?;
                let vu = ok(germ_pairing(&ps, &c.gram(q), &v, &u), &e.label)?;
                ensure(vu == -uv.conj(), || format!("{} q={q}: antisymmetry fails", e.label))?;
                pairs += 1;
            }
        }
        for q in degrees(c) {
            let m = ok(cohomology_pairing_matrix(c, q, Some(&mut rng)), &e.label)?;
            perturbed += m.entries.rows() * m.entries.cols();
        }
    }
    ensure(pairs >= 200, || format!("only {pairs} germ pairs"))?;
    Ok(format!("{pairs} antisymmetric germ pairs, {perturbed} class entries stable under coboundaries"))
}

fn c5_homotopy(corpus: &[Entry]) -> Check {
    let mut transported = 0;
    for e in corpus {
        let c = &e.complex;
        let red = ok(schur_reduce(c), &e.label)?;
        ok(verify_reduction(c, &red), &e.label)?;
        let adj = ok(c.adjoint(), &e.label)?;
        for q in degrees(c) {
            let h = ok(stabilized_cohomology(c, q), &e.label)?;
            let hv = ok(stabilized_cohomology(&adj, adj.adjoint_degree(q + 1)), &e.label)?;
            for u in &h.reps {
                for v in &hv.reps {
                    ok(pairing_transport(c, &red, q, u, v), &e.label)?;
                    transported += 1;
                }
            }
        }
    }
    Ok(format!("{} complexes satisfy the homotopy identities, {transported} class pairs transported", corpus.len()))
}

fn c6_sigma_division(corpus: &[Entry]) -> Check {
    let (mut cases, mut js) = (0, 0);
    for e in corpus {
        let red = ok(schur_reduce(&e.complex.at_origin()), &e.label)?;
        let hat = ok(sigma_divide(&red.ptilde), &e.label)?;
        for q in degrees(&red.ptilde) {
            let laws = ok(check_sigma_laws(&red.ptilde, &hat, q), &format!("{} q={q}", e.label))?;
            js += laws.js_pairs;
            cases += 1;
        }
    }
    Ok(format!("{cases} reduced degrees: range, nilpotency and {js} pairing identities"))
}

// ∫₀^∞ e^{−at} (−t)^k dt by composite Simpson on [0, 80]
fn quad(a: Complex<f64>, k: usize) -> Complex<f64> {
    let (n, top) = (200_000usize, 80.0f64);
    let h = top / n as f64;
    let f = |t: f64| (-a * t).exp() * (-t).powi(k as i32);
    let mut s = f(0.0) + f(top);
    for j in 1..n {
        s += f(j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * (h / 3.0)
}

fn c7_mellin() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut trips = 0;
    for _ in 0..100 {
        let n = rng.gen_range(0..=6);
        let dim = rng.gen_range(1..=3);
        let s0 = scalar::random_small(&mut rng, 4, 3);
        let coeffs = (0..n).map(|_| (0..dim).map(|_| scalar::random_small(&mut rng, 5, 4)).collect()).collect();
        let u = LogSection::new(s0, dim, coeffs).unwrap();
        ensure(mellin_inverse(&mellin_singular(&u)) == u, || "inverse after forward".into())?;
        let p = mellin_singular(&u);
        ensure(mellin_singular(&mellin_inverse(&p)) == p, || "forward after inverse".into())?;
        trips += 1;
    }
    for a in [Complex::new(1.3, 0.4), Complex::new(0.7, -0.9), Complex::new(2.0, 0.0)] {
        let d = Complex::new(0.0, 1.0) * a;
        for k in 0..=4 {
            let w = mellin_weight(k);
            let exact = Complex::new(w.re.to_f64().unwrap(), w.im.to_f64().unwrap()) * d.powi(-(k as i32 + 1));
            let numeric = quad(a, k);
            ensure((exact - numeric).norm() < 1e-6 * (1.0 + exact.norm()), || format!("k={k}: {exact} vs {numeric}"))?;
        }
    }
    // 𝒜_0 = [1; σ], 𝒜_1(τ) = [τ − i, −1]
    let two_step = IndicialInput {
        bp: vec![Mat::from_i64(&[&[1], &[0]]), Mat::from_rows(vec![vec![-scalar::i(), int(-1)]])],
        lambda: vec![Mat::from_i64(&[&[0], &[1]]), Mat::from_i64(&[&[1, 0]])],
        gamma: BigRational::new(1.into(), 2.into()),
        anchor: 0,
    };
    ok(two_step.check(), "indicial model")?;
    let models = [two_step, diagonal_strip_model(&gauss(1, 0), &ratio(1, 2), BigRational::new(3.into(), 4.into()))];
    let mut diagrams = 0;
    for ind in &models {
        let dims = ind.dims().unwrap();
        for qp in 0..ind.length() {
            for q in 0..=2i64 {
                for _ in 0..5 {
                    let s = scalar::random_small(&mut rng, 3, 3);
                    let coeffs = (0..3).map(|_| (0..dims[qp]).map(|_| scalar::random_small(&mut rng, 3, 3)).collect()).collect();
                    let u = LogSection::new(s, dims[qp], coeffs).unwrap();
                    ensure(ok(theta_diagram_commutes(ind, q, qp, &u), "theta")?, || format!("theta diagram q={q} q'={qp}"))?;
                    diagrams += 1;
                }
            }
        }
    }
    Ok(format!("{trips} round trips, k=0..4 weights match quadrature, {diagrams} commuting diagrams"))
}

fn strip_point<R: Rng>(rng: &mut R, gamma: &BigRational) -> Scalar {
    let den = rng.gen_range(2..=7i64);
    let num = rng.gen_range(1..den);
    let im = gamma - BigRational::from_integer(1.into()) + BigRational::new(num.into(), den.into());
    Scalar::new(BigRational::new(rng.gen_range(-9..=9i64).into(), rng.gen_range(1..=4i64).into()), im)
}

fn c8_strip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut configs = 0;
    while configs < 24 {
        let gamma = BigRational::new(rng.gen_range(-3..=6i64).into(), rng.gen_range(1..=3i64).into());
        let (a, b) = (strip_point(&mut rng, &gamma), strip_point(&mut rng, &gamma));
        if a == b {
            continue;
        }
        let ind = diagonal_strip_model(&a, &b, gamma.clone());
        let cfg = ok(StripConfig::new(gamma.clone(), vec![a.clone(), b.clone()]), "strip config")?;
        let (ca, cb) = (scalar::random_gauss(&mut rng, 3), scalar::random_gauss(&mut rng, 3));
        let ua = LogSection::monomial(a.clone(), 0, vec![ca, int(0)]);
        let ub = LogSection::monomial(b.clone(), 0, vec![int(0), cb]);
        let va = LogSection::monomial(cfg.partner(&a), 0, vec![int(1), int(0)]);
        let vb = LogSection::monomial(cfg.partner(&b), 0, vec![int(0), int(1)]);
        let r = ok(strip_pairing(&ind, &cfg, &[ua, ub], &[va, vb]), "strip pairing")?;
        let c = &r.contributions;
        ensure(scalar::is_zero(&c[(0, 1)]) && scalar::is_zero(&c[(1, 0)]), || format!("cross terms at {a:?}, {b:?}"))?;
        ensure(r.total == &c[(0, 0)] + &c[(1, 1)], || "total is not the sum of matched terms".into())?;
        configs += 1;
    }
    let mut stars = 0;
    for _ in 0..150 {
        let gamma = BigRational::new(rng.gen_range(-8..=8i64).into(), rng.gen_range(1..=5i64).into());
        let s = if rng.gen_bool(0.2) {
            Scalar::new(BigRational::from_integer(rng.gen_range(-5..=5i64).into()), &gamma - BigRational::new(1.into(), 2.into()))
        } else {
            scalar::random_small(&mut rng, 6, 5)
        };
        let t = sigma_star(&s, &gamma);
        let fixed_line = s.im == &gamma - BigRational::new(1.into(), 2.into());
        ensure(sigma_star(&t, &gamma) == s, || "not an involution".into())?;
        ensure((t == s) == fixed_line && on_midline(&s, &gamma) == fixed_line, || "fixed line".into())?;
        let cfg = StripConfig { gamma: gamma.clone(), points: vec![] };
        ensure(cfg.contains(&s) == cfg.contains(&t), || "strip not preserved".into())?;
        stars += 1;
    }
    Ok(format!("{configs} two-point configurations without cross terms, {stars} reflection checks"))
}

fn constant_exact(c: &ComplexFamily, q: i64) -> bool {
    let out = c.constant_map(q);
    let inc = c.constant_map(q - 1);
    c.dim(q) - out.rank() == inc.rank()
}

fn c9_vanishing(corpus: &[Entry]) -> Check {
    let (mut complexes, mut cases) = (0, 0);
    for e in corpus {
        let mut any = false;
        for q in degrees(&e.complex) {
            if constant_exact(&e.complex, q) {
                let d = ok(stabilized_cohomology(&e.complex, q), &e.label)?.dim();
                ensure(d == 0, || format!("{} q={q}: exact constant part but dimension {d}", e.label))?;
                cases += 1;
                any = true;
            }
        }
        complexes += any as usize;
    }
    ensure(complexes >= 20, || format!("only {complexes} complexes with an exact constant degree"))?;
    Ok(format!("{complexes} complexes, {cases} degrees with exact constant part have no cohomology"))
}

fn three_term<R: Rng>(rng: &mut R) -> IbcComplex {
    let a0 = Mat::random(rng, 3, 2, 2);
    let k = a0.transpose().kernel();
    let a1 = Mat::random(rng, 2, 1, 2).mul(&k.select_columns(&[0]).transpose());
    IbcComplex::new(vec![2, 3, 2], vec![a0, a1]).unwrap()
}

fn c10_ibc() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let nil = IbcComplex::new(vec![2, 2], vec![Mat::from_i64(&[&[0, 1], &[0, 0]])]).unwrap();
    let mut instances = vec![(nil, vec![1, 1])];
    for dims in [[1, 2, 1], [1, 1, 1], [2, 2, 1], [1, 2, 2]] {
        instances.push((three_term(&mut rng), dims.to_vec()));
    }
    let mut points = 0;
    for (k, (c, dims)) in instances.iter().enumerate() {
        ensure(check_ibc(&IbcProblem::absolute(c.clone())).pass && check_ibc(&IbcProblem::relative(c.clone())).pass, || {
            format!("instance {k}: absolute or relative fails")
        })?;
        let tuple = random_ibc_tuple(c, dims, &mut rng).ok_or_else(|| format!("instance {k}: no admissible tuple"))?;
        let base = ok(ChartBase::adapted(&tuple), "chart")?;
        let sys = ok(chart_equations(c, &base), "chart")?;
        ensure(sys.max_degree() <= 2, || "degree above two".into())?;
        let r = ok(sample_chart_agreement(c, &base, &sys, 120, &mut rng), "sampling")?;
        ensure(r.agreed == r.samples, || format!("instance {k}: {} of {} agree", r.agreed, r.samples))?;
        ensure(r.admissible > 0 && r.admissible < r.samples, || format!("instance {k}: one-sided sample"))?;
        points += r.samples;
    }
    // single nilpotent operator: chart of invariant lines
    let a = Mat::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let (base, sys) = ok(invariant_chart_equations(&a, &Mat::identity(3), 1), "invariant chart")?;
    for _ in 0..100 {
        let pt: Vec<Scalar> = (0..2).map(|_| if rng.gen_bool(0.4) { int(0) } else { scalar::random_gauss(&mut rng, 2) }).collect();
        let x = &base.subspaces(&pt).unwrap()[0];
        ensure(is_invariant(&a, x) == sys.vanishes_at(&pt).unwrap(), || "invariant chart disagrees".into())?;
        points += 1;
    }
    // hand-computed quotient cohomology
    let zero = IbcComplex::new(vec![2, 2, 1], vec![Mat::zeros(2, 2), Mat::zeros(1, 2)]).unwrap();
    let exact = IbcComplex::new(vec![1, 2, 1], vec![Mat::from_i64(&[&[1], &[0]]), Mat::from_i64(&[&[0, 1]])]).unwrap();
    let partial = IbcProblem::new(exact.clone(), vec![Mat::identity(1), Mat::from_i64(&[&[1], &[0]])]).unwrap();
    let hand = [
        (quotient_cohomology(&IbcProblem::absolute(zero)), vec![2, 2, 1]),
        (quotient_cohomology(&IbcProblem::absolute(exact.clone())), vec![0, 0, 0]),
        (quotient_cohomology(&IbcProblem::relative(exact)), vec![0, 0, 1]),
        (quotient_cohomology(&partial), vec![0, 0, 1]),
    ];
    for (k, (got, want)) in hand.into_iter().enumerate() {
        let got = ok(got, "quotient cohomology")?;
        ensure(got == want, || format!("example {k}: {got:?} vs {want:?}"))?;
    }
    Ok(format!("{} chart instances, {points} sampled points agree, 4 quotient examples", instances.len() + 1))
}

fn poly(center: &Scalar, coeffs: Vec<Mat>) -> MapFamily {
    MapFamily::polynomial(center.clone(), coeffs).unwrap()
}

fn monomial(center: &Scalar, rows: usize, cols: usize, r: usize, c: usize, k: usize, coef: Scalar) -> MapFamily {
    let mut coeffs = vec![Mat::zeros(rows, cols); k + 1];
    coeffs[k][(r, c)] = coef;
    MapFamily::polynomial_shaped(rows, cols, center.clone(), coeffs).unwrap()
}

fn random_family<R: Rng>(rng: &mut R, center: &Scalar, rows: usize, cols: usize, degree: usize) -> MapFamily {
    poly(center, (0..=degree).map(|_| Mat::random(rng, rows, cols, 2)).collect())
}

/// `I + N` with `N` strictly lower triangular, and its polynomial inverse.
fn unipotent<R: Rng>(rng: &mut R, center: &Scalar, n: usize) -> (MapFamily, MapFamily) {
    let coeffs: Vec<Mat> = (0..=2)
        .map(|_| Mat::from_fn(n, n, |i, j| if i > j { scalar::random_gauss(rng, 2) } else { int(0) }))
        .collect();
    let nil = MapFamily::polynomial_shaped(n, n, center.clone(), coeffs).unwrap();
    let id = MapFamily::identity(n, center.clone());
    let mut inv = id.clone();
    let mut power = id.clone();
    for _ in 1..n {
        power = power.mul(&nil.neg()).unwrap();
        inv = inv.add(&power).unwrap();
    }
    (id.add(&nil).unwrap(), inv)
}

fn c11_secondary() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut instances = 0;
    for _ in 0..12 {
        let center = gauss(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let (k, l) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
        let p = k.saturating_sub(l);
        let pp = p + l - k;
        let g = scalar::random_gauss(&mut rng, 2);
        let g = if scalar::is_zero(&g) { int(1) } else { g };
        // F0 = ⟨a⟩, F1 = ⟨b, c⟩, F2 = ⟨d⟩ with a →σ^k b, c →σ^l d; T: a → c, b → d
        let dims = [1usize, 2, 1];
        let pmap = [monomial(&center, 2, 1, 0, 0, k, int(1)), monomial(&center, 1, 2, 0, 1, l, int(1))];
        let t = [monomial(&center, 2, 1, 1, 0, p, g.clone()), monomial(&center, 1, 2, 0, 0, pp, -g.clone())];
        let h: Vec<MapFamily> = dims.iter().map(|&n| random_family(&mut rng, &center, n, n, 1)).collect();
        let mut t2 = Vec::new();
        let mut s = Vec::new();
        for q in 0..2 {
            let d = pmap[q].mul(&h[q]).unwrap().sub(&h[q + 1].mul(&pmap[q]).unwrap()).unwrap();
            t2.push(t[q].add(&d).unwrap());
            let e = h[q + 1].mul(&t[q]).unwrap().sub(&t[q].mul(&h[q]).unwrap()).unwrap();
            let x = h[q + 1].mul(&pmap[q]).unwrap().mul(&h[q]).unwrap().sub(&h[q + 1].mul(&h[q + 1]).unwrap().mul(&pmap[q]).unwrap()).unwrap();
            s.push(e.add(&x).unwrap().neg());
        }
        let gauges: Vec<(MapFamily, MapFamily)> = dims.iter().map(|&n| unipotent(&mut rng, &center, n)).collect();
        let conj = |q: usize, f: &MapFamily| gauges[q + 1].0.mul(f).unwrap().mul(&gauges[q].1).unwrap();
        let maps: Vec<MapFamily> = (0..2).map(|q| conj(q, &pmap[q])).collect();
        let tg: Vec<MapFamily> = (0..2).map(|q| conj(q, &t2[q])).collect();
        let sg: Vec<MapFamily> = (0..2).map(|q| conj(q, &s[q])).collect();
        let c = ok(ComplexFamily::new(center.clone(), dims.to_vec(), maps), "three-term complex")?;
        ensure(c.validate().is_ok(), || "not a complex".into())?;
        let r = ok(induced_degree1_map(&c, &tg, Some(&sg), None), &format!("k={k} l={l}"))?;
        ensure(r.squares_to_zero == Some(true), || "TT is not zero".into())?;
        ensure(r.bases[0].dim() == k && r.bases[1].dim() == l, || "unexpected cohomology".into())?;
        ensure(r.maps[0].rank() == k.min(l), || format!("induced map has rank {}", r.maps[0].rank()))?;
        instances += 1;
    }
    Ok(format!("{instances} three-term instances: well defined, rank as predicted, TT = 0"))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("duality and nondegeneracy", Box::new(|| c1_duality(&corpus))),
        ("ground-truth dimensions", Box::new(|| c2_ground_truth(&corpus))),
        ("three-route agreement", Box::new(|| c3_three_routes(&corpus))),
        ("pairing descent and antisymmetry", Box::new(|| c4_pairing(&corpus))),
        ("homotopy identities and transport", Box::new(|| c5_homotopy(&corpus))),
        ("sigma-division laws", Box::new(|| c6_sigma_division(&corpus))),
        ("Mellin bridge", Box::new(c7_mellin)),
        ("strip selection rule", Box::new(c8_strip)),
        ("vanishing criterion", Box::new(|| c9_vanishing(&corpus))),
        ("IBC variety", Box::new(c10_ibc)),
        ("secondary cohomology", Box::new(c11_secondary)),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::collections::BTreeMap;
use std::time::Instant;

use flagcy_core::sampling::{sample_points, SamplePoint};
use flagcy_core::{CalabiParams, Complex64, Error, FlagManifold, ParabolicData, RootSystem};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::report::{
    sampling_info, CaseInfo, CheckRecord, InfoReport, SampleReport, SampleRow, VerificationReport,
};
use crate::Failure;

const GROWTH_RANGE: (f64, f64) = (1e3, 1e6);
const GROWTH_INTERVALS: usize = 24;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn no_csv(cmd: &str) -> Failure {
    Failure::Usage(format!(
        "{cmd} has no csv output; use --format text or json"
    ))
}

fn build(cfg: &RunConfig) -> Result<FlagManifold, Failure> {
    FlagManifold::new(cfg.lie_type, &cfg.theta, cfg.weights.as_deref()).map_err(Failure::from)
}

fn weight_map(x: &FlagManifold) -> BTreeMap<usize, f64> {
    x.potential().weights().into_iter().collect()
}

fn fmt_weight(w: f64) -> String {
    if w.fract() == 0.0 && w.abs() < 1e15 {
        format!("{}", w as i64)
    } else {
        format!("{w}")
    }
}

pub fn info(cfg: &RunConfig) -> Result<String, Failure> {
    let pd = ParabolicData::new(&RootSystem::new(cfg.lie_type), &cfg.theta)?;
    let report = InfoReport {
        case: CaseInfo::new(&pd),
        radical_roots: pd
            .radical_roots()
            .iter()
            .map(|r| r.coeffs().to_vec())
            .collect(),
    };
    match cfg.format.unwrap_or(Format::Text) {
        Format::Json => Ok(json(&report)),
        Format::Csv => Err(no_csv("info")),
        Format::Text => {
            let c = &report.case;
            let mut out = String::new();
            out.push_str(&format!("type: {}\n", c.lie_type));
            out.push_str(&format!("theta: {:?}\n", c.theta));
            out.push_str(&format!("complement: {:?}\n", c.complement));
            out.push_str(&format!("dim: {}\n", c.dim));
            out.push_str(&format!("picard_rank: {}\n", c.picard_rank));
            out.push_str(&format!("delta_p: {}\n", pd.delta_p()));
            for (node, k) in &c.koszul_coefficients {
                out.push_str(&format!("koszul: c{node} = {k}\n"));
            }
            out.push_str(&format!("anticanonical: {}\n", c.anticanonical));
            let roots: Vec<String> = pd.radical_roots().iter().map(|r| r.to_string()).collect();
            out.push_str(&format!(
                "radical_roots ({}): {}\n",
                roots.len(),
                roots.join(", ")
            ));
            Ok(out)
        }
    }
}

#[derive(Debug, Serialize)]
struct NormEntry {
    node: usize,
    degree: usize,
    weight: f64,
    norm: String,
}

#[derive(Debug, Serialize)]
struct SymbolicReport {
    case: CaseInfo,
    norms: Vec<NormEntry>,
    potential: String,
}

#[derive(Debug, Serialize)]
struct TotalAtPoint {
    xi: [f64; 2],
    constant: f64,
    u: f64,
    det_total: f64,
    min_eigenvalue: f64,
}

#[derive(Debug, Serialize)]
struct PointReport {
    case: CaseInfo,
    weights: BTreeMap<usize, f64>,
    z: Vec<[f64; 2]>,
    phi: f64,
    g: Vec<Vec<[f64; 2]>>,
    g_eigenvalues: Vec<f64>,
    a: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total: Option<TotalAtPoint>,
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let t = s.trim();
    t.parse::<Complex64>()
        .map_err(|_| Failure::Usage(format!("cannot parse complex number `{t}`")))
}

fn parse_point(spec: &str, dim: usize) -> Result<Vec<Complex64>, Failure> {
    let values = spec
        .split(',')
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    match values.len() {
        1 => Ok(vec![values[0]; dim]),
        n if n == dim => Ok(values),
        n => Err(Failure::Usage(format!(
            "--at has {n} coordinates, the chart has {dim}"
        ))),
    }
}

pub fn potential(
    cfg: &RunConfig,
    symbolic: bool,
    at: Option<&str>,
    xi: Option<&str>,
) -> Result<String, Failure> {
    let x = build(cfg)?;
    let case = CaseInfo::new(x.parabolic());
    let format = cfg.format.unwrap_or(Format::Text);
    if format == Format::Csv {
        return Err(no_csv("potential"));
    }
    match (symbolic, at) {
        (true, _) | (false, None) => {
            let norms: Vec<NormEntry> = x
                .potential()
                .weights()
                .into_iter()
                .zip(x.potential().orbits())
                .map(|((node, weight), ov)| NormEntry {
                    node,
                    degree: ov.degree(),
                    weight,
                    norm: ov.symbolic_norm(),
                })
                .collect();
            let potential = norms
                .iter()
                .map(|e| format!("({}/2π) log N{}", fmt_weight(e.weight), e.node))
                .collect::<Vec<_>>()
                .join(" + ");
            let report = SymbolicReport {
                case,
                norms,
                potential: format!("φ = {potential}"),
            };
            if format == Format::Json {
                return Ok(json(&report));
            }
            let mut out = String::new();
            for e in &report.norms {
                out.push_str(&format!("N{} = {}\n", e.node, e.norm));
            }
            out.push_str(&report.potential);
            out.push('\n');
            Ok(out)
        }
        (false, Some(spec)) => {
            let z = parse_point(spec, x.dim())?;
            let sample = x.potential().base_metric(&z)?;
            let n = x.dim();
            let total = match xi {
                Some(s) => {
                    let xi = parse_complex(s)?;
                    let cm = x.calabi(cfg.constant)?;
                    let t = cm.total_metric(&z, xi)?;
                    Some(TotalAtPoint {
                        xi: pair(xi),
                        constant: cfg.constant,
                        u: t.u,
                        det_total: t.det,
                        min_eigenvalue: t.g.min_eigenvalue(),
                    })
                }
                None => None,
            };
            let report = PointReport {
                case,
                weights: weight_map(&x),
                z: z.iter().copied().map(pair).collect(),
                phi: sample.phi,
                g: (0..n)
                    .map(|i| (0..n).map(|j| pair(sample.g.get(i, j))).collect())
                    .collect(),
                g_eigenvalues: sample.g.eigenvalues(),
                a: sample.a.iter().copied().map(pair).collect(),
                total,
            };
            if format == Format::Json {
                return Ok(json(&report));
            }
            let mut out = format!("phi = {}\n", report.phi);
            for (i, row) in report.g.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|c| fmt_complex(*c)).collect();
                out.push_str(&format!("g[{}] = [{}]\n", i + 1, cells.join(", ")));
            }
            let eig: Vec<String> = report.g_eigenvalues.iter().map(f64::to_string).collect();
            out.push_str(&format!("g eigenvalues = [{}]\n", eig.join(", ")));
            let a: Vec<String> = report.a.iter().map(|c| fmt_complex(*c)).collect();
            out.push_str(&format!("a = [{}]\n", a.join(", ")));
            if let Some(t) = &report.total {
                out.push_str(&format!("u = {}\n", t.u));
                out.push_str(&format!("det G = {}\n", t.det_total));
                out.push_str(&format!("min eigenvalue G = {}\n", t.min_eigenvalue));
            }
            Ok(out)
        }
    }
}

fn fmt_complex(c: [f64; 2]) -> String {
    if c[1] == 0.0 {
        format!("{}", c[0])
    } else if c[1] < 0.0 {
        format!("{}-{}i", c[0], -c[1])
    } else {
        format!("{}+{}i", c[0], c[1])
    }
}

/// Maximum that lets a NaN through.
fn max_nan(acc: f64, x: f64) -> f64 {
    if acc.is_nan() || x.is_nan() {
        f64::NAN
    } else {
        acc.max(x)
    }
}

struct PointDefects {
    einstein: f64,
    ma: f64,
    ricci_total: f64,
    kahlerness: f64,
    positivity: f64,
}

fn point_defects(
    x: &FlagManifold,
    cfg: &RunConfig,
    p: &SamplePoint,
) -> Result<PointDefects, Error> {
    let ps = x.potential();
    let cm = x.calabi(cfg.constant)?;
    Ok(PointDefects {
        einstein: ps.einstein_defect(&p.z, cfg.fd.base)?,
        ma: ps.ma_defect(&p.z)?,
        ricci_total: cm.ricci_total(&p.z, p.xi, cfg.fd.base, cfg.fd.fiber)?,
        kahlerness: cm.kahlerness_defect(&p.z, p.xi, cfg.fd.kahler)?,
        positivity: -cm.positivity(&p.z, p.xi)?,
    })
}

fn run_checks(
    x: &FlagManifold,
    cfg: &RunConfig,
    points: &[SamplePoint],
) -> Result<Vec<CheckRecord>, Error> {
    let per_point: Vec<Result<PointDefects, Error>> = points
        .par_iter()
        .map(|p| point_defects(x, cfg, p))
        .collect();
    let per_point = per_point.into_iter().collect::<Result<Vec<_>, _>>()?;
    let worst = |f: fn(&PointDefects) -> f64| per_point.iter().map(f).fold(0.0, max_nan);
    let worst_positivity = per_point
        .iter()
        .map(|d| d.positivity)
        .fold(f64::NEG_INFINITY, max_nan);

    let cm = x.calabi(cfg.constant)?;
    let pairs: Vec<(Vec<Complex64>, Complex64)> =
        points.iter().map(|p| (p.z.clone(), p.xi)).collect();
    let det = cm.det_constancy(&pairs)?;

    let n = x.dim();
    let params = CalabiParams::new(cfg.constant, n)?;
    let expected = 1.0 / (2.0 * (n as f64 + 1.0));
    let fitted = params.growth_exponent(GROWTH_RANGE.0, GROWTH_RANGE.1, GROWTH_INTERVALS);

    let count = points.len();
    let t = &cfg.tol;
    Ok(vec![
        CheckRecord::new("einstein", count, worst(|d| d.einstein), t.einstein),
        CheckRecord::new("ma", count, worst(|d| d.ma), t.ma),
        CheckRecord::new(
            "ricci_total",
            count,
            worst(|d| d.ricci_total),
            t.ricci_total,
        ),
        CheckRecord::new("kahlerness", count, worst(|d| d.kahlerness), t.kahlerness),
        CheckRecord::new(
            "positivity",
            count,
            if count == 0 { 0.0 } else { worst_positivity },
            t.positivity,
        ),
        CheckRecord::new("det_constancy", count, det, t.det_constancy),
        CheckRecord::new(
            "vertical_growth",
            GROWTH_INTERVALS + 1,
            ((fitted - expected) / expected).abs(),
            t.vertical_growth,
        ),
    ])
}

pub fn verify(cfg: &RunConfig, timing: bool) -> Result<(String, bool, bool), Failure> {
    let start = Instant::now();
    let x = build(cfg)?;
    let points = sample_points(cfg.seed, cfg.samples, x.dim());
    let (checks, error) = match run_checks(&x, cfg, &points) {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let pass = error.is_none() && checks.iter().all(|c| c.pass);
    let report = VerificationReport {
        case: CaseInfo::new(x.parabolic()),
        weights: weight_map(&x),
        koszul_weights: x.potential().is_koszul(),
        constant: cfg.constant,
        sampling: sampling_info(cfg),
        fd_steps: cfg.fd,
        tolerances: cfg.tol,
        checks,
        pass,
        error,
        wall_time_s: timing.then(|| start.elapsed().as_secs_f64()),
    };
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json(&report),
        Format::Csv => report.to_csv().map_err(|e| Failure::Io(e.to_string()))?,
        Format::Text => report.to_text(),
    };
    Ok((text, pass, report.error.is_some()))
}

pub fn sample(cfg: &RunConfig) -> Result<String, Failure> {
    let x = build(cfg)?;
    let cm = x.calabi(cfg.constant)?;
    let points = sample_points(cfg.seed, cfg.samples, x.dim());
    let rows: Vec<Result<SampleRow, Error>> = points
        .par_iter()
        .map(|p| {
            let base = x.potential().base_metric(&p.z)?;
            let total = cm.total_metric(&p.z, p.xi)?;
            Ok(SampleRow {
                index: p.index,
                z: p.z.iter().copied().map(pair).collect(),
                xi: pair(p.xi),
                phi: base.phi,
                g_eigenvalues: base.g.eigenvalues(),
                det_total: total.det,
                u: total.u,
            })
        })
        .collect();
    let report = SampleReport {
        case: CaseInfo::new(x.parabolic()),
        constant: cfg.constant,
        sampling: sampling_info(cfg),
        rows: rows.into_iter().collect::<Result<_, _>>()?,
    };
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => Ok(json(&report)),
        Format::Csv => report.to_csv().map_err(|e| Failure::Io(e.to_string())),
        Format::Text => Err(Failure::Usage("sample writes csv or json".into())),
    }
}

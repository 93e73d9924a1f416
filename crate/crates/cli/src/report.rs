//! Serializable report types.

use std::collections::BTreeMap;

use flagcy_core::ParabolicData;
use serde::Serialize;

use crate::config::{FdSteps, RunConfig, Tolerances};

#[derive(Debug, Clone, Serialize)]
pub struct CaseInfo {
    pub lie_type: String,
    pub theta: Vec<usize>,
    pub complement: Vec<usize>,
    pub dim: usize,
    pub picard_rank: usize,
    pub delta_p: Vec<i64>,
    pub koszul_coefficients: BTreeMap<usize, i64>,
    /// `-K = L_α^{c_α} ⊗ …`
    pub anticanonical: String,
}

impl CaseInfo {
    pub fn new(pd: &ParabolicData) -> Self {
        let koszul = pd.koszul_coefficients().clone();
        let anticanonical = koszul
            .iter()
            .map(|(node, c)| format!("L{node}^{c}"))
            .collect::<Vec<_>>()
            .join(" ⊗ ");
        Self {
            lie_type: pd.lie_type().to_string(),
            theta: pd.theta().iter().copied().collect(),
            complement: pd.complement().to_vec(),
            dim: pd.complex_dimension(),
            picard_rank: pd.picard_rank(),
            delta_p: pd.delta_p().coeffs().to_vec(),
            koszul_coefficients: koszul,
            anticanonical: format!("-K = {anticanonical}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InfoReport {
    #[serde(flatten)]
    pub case: CaseInfo,
    pub radical_roots: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SamplingInfo {
    pub sampler: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub z_radius: f64,
    pub xi_radius: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub points: usize,
    pub max_defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Passes when `max_defect < tolerance` or there are no points; a NaN defect fails.
    pub fn new(name: &'static str, points: usize, max_defect: f64, tolerance: f64) -> Self {
        Self {
            name,
            points,
            max_defect,
            tolerance,
            pass: points == 0 || max_defect < tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub case: CaseInfo,
    pub weights: BTreeMap<usize, f64>,
    pub koszul_weights: bool,
    pub constant: f64,
    pub sampling: SamplingInfo,
    pub fd_steps: FdSteps,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl VerificationReport {
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "points", "max_defect", "tolerance", "pass"])?;
        for c in &self.checks {
            w.write_record([
                c.name.to_string(),
                c.points.to_string(),
                c.max_defect.to_string(),
                c.tolerance.to_string(),
                c.pass.to_string(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} theta={:?} dim={} seed={} samples={}\n",
            self.case.lie_type,
            self.case.theta,
            self.case.dim,
            self.sampling.seed,
            self.sampling.samples
        );
        for c in &self.checks {
            out.push_str(&format!(
                "{:<16} {} max_defect={:e} tol={:e}\n",
                c.name,
                if c.pass { "PASS" } else { "FAIL" },
                c.max_defect,
                c.tolerance
            ));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        out.push_str(if self.pass {
            "overall: PASS\n"
        } else {
            "overall: FAIL\n"
        });
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleRow {
    pub index: u64,
    pub z: Vec<[f64; 2]>,
    pub xi: [f64; 2],
    pub phi: f64,
    pub g_eigenvalues: Vec<f64>,
    pub det_total: f64,
    pub u: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub case: CaseInfo,
    pub constant: f64,
    pub sampling: SamplingInfo,
    pub rows: Vec<SampleRow>,
}

impl SampleReport {
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let n = self.case.dim;
        let mut header = vec!["index".to_string()];
        for i in 1..=n {
            header.push(format!("z{i}_re"));
            header.push(format!("z{i}_im"));
        }
        header.extend(["xi_re", "xi_im", "phi"].map(String::from));
        header.extend((1..=n).map(|i| format!("g_eig{i}")));
        header.extend(["det_total", "u"].map(String::from));
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.index.to_string()];
            for z in &r.z {
                rec.push(z[0].to_string());
                rec.push(z[1].to_string());
            }
            rec.push(r.xi[0].to_string());
            rec.push(r.xi[1].to_string());
            rec.push(r.phi.to_string());
            rec.extend(r.g_eigenvalues.iter().map(f64::to_string));
            rec.push(r.det_total.to_string());
            rec.push(r.u.to_string());
            w.write_record(&rec)?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
    }
}

pub fn sampling_info(cfg: &RunConfig) -> SamplingInfo {
    SamplingInfo {
        sampler: flagcy_core::sampling::SAMPLER_ID,
        seed: cfg.seed,
        samples: cfg.samples,
        z_radius: flagcy_core::sampling::DEFAULT_Z_RADIUS,
        xi_radius: flagcy_core::sampling::DEFAULT_XI_RADIUS,
    }
}

//! Quasi-potential `φ = Σ_α (c_α / 2π) log N_α` on the big cell, the Kähler
//! metric `g_{ij̄} = ∂_i ∂_j̄ φ` and the connection form `a_i = 2π ∂_i φ`.
//!
//! With `v` the orbit vector of a node, `N = ‖v‖²`,
//! `A_{ij} = ⟨∂_i v, ∂_j v⟩` and `b_i = ⟨∂_i v, v⟩`,
//!
//! ```text
//! ∂_i ∂_j̄ log N = A_{ij} / N − b_i b̄_j / N²
//! ```
//!
//! so `g` is evaluated exactly from polynomial gradients.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fd;
use crate::matrep::BigCellChart;
use crate::repfun::{orbit_vector, OrbitVector};
use crate::rootsys::ParabolicData;
use crate::symalg::{CompiledPoly, HermitianMatrix};

/// Default finite-difference step for the Einstein check.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

#[derive(Debug, Clone)]
struct PotentialTerm {
    node: usize,
    weight: f64,
    orbit: OrbitVector,
    values: Vec<CompiledPoly>,
    /// `grads[c][i] = ∂_i` of component `c`.
    grads: Vec<Vec<CompiledPoly>>,
}

impl PotentialTerm {
    fn new(node: usize, weight: f64, orbit: OrbitVector) -> Self {
        let m = orbit.nvars();
        let live: Vec<_> = orbit
            .components()
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(_, p)| p)
            .collect();
        let values = live.iter().map(|p| p.compile()).collect();
        let grads = live
            .iter()
            .map(|p| (0..m).map(|i| p.diff(i).compile()).collect())
            .collect();
        Self {
            node,
            weight,
            orbit,
            values,
            grads,
        }
    }

    fn norm_sq(&self, z: &[Complex64]) -> f64 {
        self.values.iter().map(|p| p.eval(z).norm_sqr()).sum()
    }
}

/// A Kähler metric on the big cell in closed form.
#[derive(Debug, Clone)]
pub struct PotentialSpec {
    chart: BigCellChart,
    terms: Vec<PotentialTerm>,
    log_det_origin: f64,
}

/// `g`, `a` and `φ` at one point.
#[derive(Debug, Clone)]
pub struct MetricSample {
    pub z: Vec<Complex64>,
    pub g: HermitianMatrix,
    pub a: Vec<Complex64>,
    pub phi: f64,
}

impl PotentialSpec {
    /// Weights are given in the order of the parabolic complement; `None`
    /// selects the Koszul coefficients.
    pub fn new(chart: &BigCellChart, weights: Option<&[f64]>) -> Result<Self> {
        let pd = chart.parabolic();
        let nodes = pd.complement().to_vec();
        let weights: Vec<f64> = match weights {
            Some(w) => {
                if w.len() != nodes.len() {
                    return Err(Error::WeightCount {
                        expected: nodes.len(),
                        got: w.len(),
                    });
                }
                if let Some(&bad) = w.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
                    return Err(Error::NonPositiveWeight(bad));
                }
                w.to_vec()
            }
            None => nodes
                .iter()
                .map(|n| pd.koszul_coefficients()[n] as f64)
                .collect(),
        };
        let terms = nodes
            .iter()
            .zip(&weights)
            .map(|(&node, &w)| Ok(PotentialTerm::new(node, w, orbit_vector(chart, node)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut spec = Self {
            chart: chart.clone(),
            terms,
            log_det_origin: 0.0,
        };
        let origin = vec![Complex64::new(0.0, 0.0); spec.dim()];
        spec.log_det_origin = spec.log_det_g(&origin)?;
        Ok(spec)
    }

    pub fn chart(&self) -> &BigCellChart {
        &self.chart
    }

    pub fn parabolic(&self) -> &ParabolicData {
        self.chart.parabolic()
    }

    /// Complex dimension `n` of the flag manifold.
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// `(node, weight)` pairs.
    pub fn weights(&self) -> Vec<(usize, f64)> {
        self.terms.iter().map(|t| (t.node, t.weight)).collect()
    }

    pub fn orbits(&self) -> impl Iterator<Item = &OrbitVector> {
        self.terms.iter().map(|t| &t.orbit)
    }

    /// True when every weight equals its Koszul coefficient.
    pub fn is_koszul(&self) -> bool {
        let k = self.parabolic().koszul_coefficients();
        self.terms.iter().all(|t| t.weight == k[&t.node] as f64)
    }

    fn check_dim(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: z.len(),
            });
        }
        Ok(())
    }

    pub fn potential_value(&self, z: &[Complex64]) -> Result<f64> {
        self.check_dim(z)?;
        Ok(self.phi_unchecked(z))
    }

    fn phi_unchecked(&self, z: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight / (2.0 * PI) * t.norm_sq(z).ln())
            .sum()
    }

    pub fn base_metric(&self, z: &[Complex64]) -> Result<MetricSample> {
        self.check_dim(z)?;
        let m = self.dim();
        let mut g = DMatrix::<Complex64>::zeros(m, m);
        let mut a = vec![Complex64::new(0.0, 0.0); m];
        let mut phi = 0.0;
        for t in &self.terms {
            let v: Vec<Complex64> = t.values.iter().map(|p| p.eval(z)).collect();
            let dv: Vec<Vec<Complex64>> = t
                .grads
                .iter()
                .map(|row| row.iter().map(|p| p.eval(z)).collect())
                .collect();
            let n: f64 = v.iter().map(|x| x.norm_sqr()).sum();
            let b: Vec<Complex64> = (0..m)
                .map(|i| v.iter().zip(&dv).map(|(vc, d)| d[i] * vc.conj()).sum())
                .collect();
            let scale = t.weight / (2.0 * PI);
            for i in 0..m {
                for j in 0..m {
                    let aij: Complex64 = dv.iter().map(|d| d[i] * d[j].conj()).sum();
                    g[(i, j)] += (aij / n - b[i] * b[j].conj() / (n * n)) * scale;
                }
                a[i] += b[i] * (t.weight / n);
            }
            phi += scale * n.ln();
        }
        Ok(MetricSample {
            z: z.to_vec(),
            g: HermitianMatrix::new(g)?,
            a,
            phi,
        })
    }

    pub fn log_det_g(&self, z: &[Complex64]) -> Result<f64> {
        self.base_metric(z)?.g.log_det()
    }

    /// `‖−∂∂̄ log det g − 2π g‖_∞` with the Ricci form taken by central
    /// differences of the analytic `log det g`.
    pub fn einstein_defect(&self, z: &[Complex64], step: f64) -> Result<f64> {
        let sample = self.base_metric(z)?;
        sample.g.log_det()?;
        let mut failure = None;
        let hess = fd::complex_hessian(
            |w| match self.log_det_g(w) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            z,
            &vec![step; self.dim()],
        );
        if let Some(e) = failure {
            return Err(e);
        }
        let g = sample.g.matrix();
        Ok(hess
            .iter()
            .zip(g.iter())
            .map(|(h, gij)| (-h - gij * (2.0 * PI)).norm())
            .fold(0.0, f64::max))
    }

    /// `|log det g(z) + 2πφ(z) − log det g(0)|`.
    pub fn ma_defect(&self, z: &[Complex64]) -> Result<f64> {
        let sample = self.base_metric(z)?;
        let ld = sample.g.log_det()?;
        Ok((ld + 2.0 * PI * sample.phi - self.log_det_origin).abs())
    }

    /// `log det g(0)`.
    pub fn log_det_origin(&self) -> f64 {
        self.log_det_origin
    }
}

//! The Calabi metric on the total space of the canonical bundle.
//!
//! With `h = e^{2πφ}`, `u = h|ξ|²` and `f(u) = (2πu + C)^{1/(n+1)}`, the
//! metric in the coordinates `(z, ξ)` is
//!
//! ```text
//! G_{ij̄} = f g_{ij̄} + κ h |ξ|² a_i ā_j     G_{iξ̄} = κ h ξ a_i
//! G_{ξj̄} = κ h ξ̄ ā_j                       G_{ξξ̄} = κ h
//! ```
//!
//! where `κ = f'/2π` and `a_i = 2π ∂_i φ`. A Schur complement gives
//! `det G = h det g / (n + 1)`.
//!
//! [`Variant::Naive`] drops the fibre weight (`h = 1`, `u = |ξ|²`); it is
//! neither closed nor Ricci-flat and serves as a negative control.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fd;
use crate::kahler::PotentialSpec;
use crate::symalg::HermitianMatrix;

/// Default step in the base directions for the Ricci check.
pub const DEFAULT_BASE_STEP: f64 = 1e-3;
/// Default fibre step, scaled by `1 + |ξ|`.
pub const DEFAULT_FIBER_STEP: f64 = 1e-2;
/// Default step for the closedness check.
pub const DEFAULT_KAHLER_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalabiParams {
    constant: f64,
    n: usize,
}

impl CalabiParams {
    pub fn new(constant: f64, n: usize) -> Result<Self> {
        if !(constant > 0.0 && constant.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "constant must be positive, got {constant}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        Ok(Self { constant, n })
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Einstein constant of the base.
    pub fn t(&self) -> f64 {
        2.0 * PI
    }

    /// `√(1/(n+1)) ∫₀^{√s} (2πr² + C)^{−n/(2(n+1))} dr`, the length of the
    /// radial fibre segment reaching `u = s`.
    pub fn vertical_length(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        let n = self.n as f64;
        let p = n / (2.0 * (n + 1.0));
        let c = self.constant;
        let integrand = |r: f64| (2.0 * PI * r * r + c).powf(-p);
        let top = s.sqrt();
        let mut total = 0.0;
        let head = top.min(1.0);
        for k in 0..4 {
            let a = head * k as f64 / 4.0;
            total += gauss_legendre(integrand, a, a + head / 4.0);
        }
        let mut a = head;
        while a < top {
            let b = (2.0 * a).min(top);
            total += gauss_legendre(integrand, a, b);
            a = b;
        }
        total / (n + 1.0).sqrt()
    }

    /// Growth exponent of `vertical_length` in `s`, fitted by least squares
    /// to the logarithms of its increments on a geometric grid over
    /// `[s_lo, s_hi]`. Increments remove the additive constant that biases a
    /// direct log-log fit.
    pub fn growth_exponent(&self, s_lo: f64, s_hi: f64, intervals: usize) -> f64 {
        let intervals = intervals.max(2);
        let ratio = (s_hi / s_lo).powf(1.0 / intervals as f64);
        let grid: Vec<f64> = (0..=intervals)
            .map(|k| s_lo * ratio.powi(k as i32))
            .collect();
        let lengths: Vec<f64> = grid.iter().map(|&s| self.vertical_length(s)).collect();
        let pts: Vec<(f64, f64)> = (0..intervals)
            .map(|k| (grid[k].ln(), (lengths[k + 1] - lengths[k]).ln()))
            .collect();
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    }
}

const GL_ORDER: usize = 20;

/// Gauss–Legendre nodes and weights on `[−1, 1]` (Golub–Welsch).
fn gl_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let jacobi = DMatrix::from_fn(GL_ORDER, GL_ORDER, |i, j| {
            if i + 1 == j || j + 1 == i {
                let k = i.max(j) as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(jacobi);
        let mut pairs: Vec<(f64, f64)> = (0..GL_ORDER)
            .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs.into_iter().unzip()
    })
}

fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (nodes, weights) = gl_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    nodes
        .iter()
        .zip(weights)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Values of the profile `f`, its derivative and `κ = f'/2π` at `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub f: f64,
    pub f_prime: f64,
    pub kappa: f64,
}

impl Profile {
    pub fn at(u: f64, params: &CalabiParams) -> Self {
        let n = params.n as f64;
        let base = 2.0 * PI * u + params.constant;
        let f = base.powf(1.0 / (n + 1.0));
        let f_prime = 2.0 * PI / (n + 1.0) * base.powf(-n / (n + 1.0));
        Self {
            f,
            f_prime,
            kappa: f_prime / (2.0 * PI),
        }
    }
}

pub fn profile(u: f64, params: &CalabiParams) -> Profile {
    Profile::at(u, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Fibre coordinate measured by the Hermitian norm `e^{2πφ}|ξ|²`.
    Global,
    /// `u = |ξ|²` with an unweighted vertical block.
    Naive,
}

#[derive(Debug, Clone)]
pub struct TotalMetricSample {
    pub z: Vec<Complex64>,
    pub xi: Complex64,
    pub u: f64,
    pub g: HermitianMatrix,
    pub det: f64,
}

#[derive(Debug, Clone)]
pub struct CalabiMetric<'a> {
    potential: &'a PotentialSpec,
    params: CalabiParams,
    variant: Variant,
}

impl<'a> CalabiMetric<'a> {
    pub fn new(potential: &'a PotentialSpec, constant: f64) -> Result<Self> {
        Self::with_variant(potential, constant, Variant::Global)
    }

    pub fn with_variant(
        potential: &'a PotentialSpec,
        constant: f64,
        variant: Variant,
    ) -> Result<Self> {
        Ok(Self {
            potential,
            params: CalabiParams::new(constant, potential.dim())?,
            variant,
        })
    }

    pub fn params(&self) -> &CalabiParams {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn fibre_weight(&self, phi: f64) -> f64 {
        match self.variant {
            Variant::Global => (2.0 * PI * phi).exp(),
            Variant::Naive => 1.0,
        }
    }

    pub fn u_value(&self, z: &[Complex64], xi: Complex64) -> Result<f64> {
        let phi = self.potential.potential_value(z)?;
        Ok(self.fibre_weight(phi) * xi.norm_sqr())
    }

    fn assemble(&self, z: &[Complex64], xi: Complex64) -> Result<(DMatrix<Complex64>, f64)> {
        let base = self.potential.base_metric(z)?;
        let h = self.fibre_weight(base.phi);
        let u = h * xi.norm_sqr();
        let prof = Profile::at(u, &self.params);
        let n = self.params.n;
        let kh = prof.kappa * h;
        let a = &base.a;
        let g = base.g.matrix();
        let mut big = DMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                big[(i, j)] = g[(i, j)] * prof.f + a[i] * a[j].conj() * (kh * xi.norm_sqr());
            }
            big[(i, n)] = a[i] * xi * kh;
            big[(n, i)] = a[i].conj() * xi.conj() * kh;
        }
        big[(n, n)] = Complex64::from(kh);
        Ok((big, u))
    }

    pub fn total_metric(&self, z: &[Complex64], xi: Complex64) -> Result<TotalMetricSample> {
        let (big, u) = self.assemble(z, xi)?;
        let g = HermitianMatrix::new(big)?;
        let det = g.det();
        Ok(TotalMetricSample {
            z: z.to_vec(),
            xi,
            u,
            g,
            det,
        })
    }

    pub fn log_det_total(&self, z: &[Complex64], xi: Complex64) -> Result<f64> {
        self.total_metric(z, xi)?.g.log_det()
    }

    /// `‖∂∂̄ log det G‖_∞` over all `n + 1` complex directions.
    pub fn ricci_total(
        &self,
        z: &[Complex64],
        xi: Complex64,
        base_step: f64,
        fiber_step: f64,
    ) -> Result<f64> {
        let n = self.params.n;
        let mut w = z.to_vec();
        w.push(xi);
        let mut steps = vec![base_step; n];
        steps.push(fiber_step * (1.0 + xi.norm()));
        self.log_det_total(z, xi)?;
        let mut failure = None;
        let hess = fd::complex_hessian(
            |p| match self.log_det_total(&p[..n], p[n]) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            &w,
            &steps,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(hess.iter().map(|c| c.norm()).fold(0.0, f64::max))
    }

    /// `max |log det G(z, ξ) − log det G(0, 0)|` over the sample set.
    pub fn det_constancy(&self, samples: &[(Vec<Complex64>, Complex64)]) -> Result<f64> {
        let origin = vec![Complex64::new(0.0, 0.0); self.params.n];
        let reference = self.log_det_total(&origin, Complex64::new(0.0, 0.0))?;
        samples.iter().try_fold(0.0f64, |acc, (z, xi)| {
            Ok(acc.max((self.log_det_total(z, *xi)? - reference).abs()))
        })
    }

    /// `max |∂_γ G_{αβ̄} − ∂_α G_{γβ̄}|` by finite differences.
    pub fn kahlerness_defect(&self, z: &[Complex64], xi: Complex64, step: f64) -> Result<f64> {
        let n = self.params.n;
        let mut w = z.to_vec();
        w.push(xi);
        self.assemble(z, xi)?;
        let eval = |p: &[Complex64]| {
            self.assemble(&p[..n], p[n])
                .map(|(m, _)| m)
                .unwrap_or_else(|_| {
                    DMatrix::from_element(n + 1, n + 1, Complex64::new(f64::NAN, 0.0))
                })
        };
        let derivs: Vec<DMatrix<Complex64>> =
            (0..=n).map(|k| fd::wirtinger(eval, &w, k, step)).collect();
        let mut worst: f64 = 0.0;
        for gamma in 0..=n {
            for alpha in 0..=n {
                for beta in 0..=n {
                    let d = derivs[gamma][(alpha, beta)] - derivs[alpha][(gamma, beta)];
                    worst = worst.max(d.norm());
                }
            }
        }
        Ok(worst)
    }

    /// Smallest eigenvalue of `G`.
    pub fn positivity(&self, z: &[Complex64], xi: Complex64) -> Result<f64> {
        Ok(self.total_metric(z, xi)?.g.min_eigenvalue())
    }
}

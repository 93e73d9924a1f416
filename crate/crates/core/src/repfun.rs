//! Orbit vectors `n(z)·(e_1 ∧ … ∧ e_k)` of fundamental highest-weight
//! vectors, expressed through the `k × k` minors of the first `k` columns.
//!
//! Norms are taken in the ambient wedge space `⋀^k C^N` with the standard
//! orthonormal basis `e_{i_1} ∧ … ∧ e_{i_k}`.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrep::BigCellChart;
use crate::rootsys::{Family, LieType};
use crate::symalg::{Poly, PolyMatrix};

/// Nodes whose fundamental representation sits inside a wedge power of the
/// defining representation. Spin nodes of `B` and `D` are excluded.
pub fn supported_nodes(ty: LieType) -> BTreeSet<usize> {
    let l = ty.rank();
    match ty.family() {
        Family::A | Family::C => (1..=l).collect(),
        Family::B => (1..l).collect(),
        Family::D => (1..l - 1).collect(),
        _ => BTreeSet::new(),
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitVector {
    node: usize,
    degree: usize,
    nvars: usize,
    components: Vec<(Vec<usize>, Poly)>,
}

impl OrbitVector {
    /// Minors of the first `k` columns of `n`, one per row set.
    pub fn from_matrix(n: &PolyMatrix, k: usize) -> Result<Self> {
        if k == 0 || k > n.cols() || k > n.rows() {
            return Err(Error::IndexOutOfRange(format!("wedge degree {k}")));
        }
        let cols: Vec<usize> = (0..k).collect();
        let components = combinations(n.rows(), k)
            .into_iter()
            .map(|rows| {
                let p = n.minor(&rows, &cols)?;
                Ok((rows, p))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            node: k,
            degree: k,
            nvars: n.nvars(),
            components,
        })
    }

    pub fn node(&self) -> usize {
        self.node
    }

    /// Wedge degree `k`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `(row set, minor)` pairs with 0-based row indices, in lexicographic order.
    pub fn components(&self) -> &[(Vec<usize>, Poly)] {
        &self.components
    }

    /// `C(N, k)`.
    pub fn ambient_dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, rows: &[usize]) -> Option<&Poly> {
        self.components
            .iter()
            .find(|(r, _)| r == rows)
            .map(|(_, p)| p)
    }

    /// `N(z) = Σ_I |Δ_I(z)|²`.
    pub fn norm_sq(&self, z: &[Complex64]) -> Result<f64> {
        let mut total = 0.0;
        for (_, p) in &self.components {
            if !p.is_zero() {
                total += p.eval(z)?.norm_sqr();
            }
        }
        Ok(total)
    }

    /// Canonical string `1 + |z1|² + … + |z1z4 − z2z3|²`; repeated squares
    /// are collected with an integer multiplicity.
    pub fn symbolic_norm(&self) -> String {
        let mut polys: Vec<Poly> = self
            .components
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(_, p)| p.sign_normalized())
            .collect();
        polys.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.cmp(b))
                .then_with(|| a.to_string().cmp(&b.to_string()))
        });
        let mut grouped: Vec<(Poly, usize)> = Vec::new();
        for p in polys {
            match grouped.last_mut() {
                Some((q, count)) if *q == p => *count += 1,
                _ => grouped.push((p, 1)),
            }
        }
        grouped
            .iter()
            .map(|(p, count)| {
                let body = if p.is_one() {
                    "1".to_string()
                } else {
                    format!("|{p}|²")
                };
                if *count > 1 {
                    format!("{count}{body}")
                } else {
                    body
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Orbit vector of the fundamental weight at `node` (1-based) on the chart.
pub fn orbit_vector(chart: &BigCellChart, node: usize) -> Result<OrbitVector> {
    let pd = chart.parabolic();
    let ty = pd.lie_type();
    if node == 0 || node > ty.rank() {
        return Err(Error::InvalidNode {
            index: node,
            rank: ty.rank(),
        });
    }
    if pd.theta().contains(&node) {
        return Err(Error::NodeInTheta(node));
    }
    if !supported_nodes(ty).contains(&node) {
        return Err(Error::NotMinorRepresentable(node));
    }
    let mut ov = OrbitVector::from_matrix(chart.n_matrix(), node)?;
    ov.node = node;
    Ok(ov)
}

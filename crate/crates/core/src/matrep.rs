//! Defining matrix realizations of the classical algebras and the opposite
//! big-cell chart `z ↦ n(z) = exp(Z(z))`.
//!
//! Basis conventions (`N` = dimension of the defining representation):
//!
//! * `A_l`: `e_1..e_{l+1}` with weights `ε_1..ε_{l+1}`.
//! * `C_l`, `D_l`: `e_1..e_l` with weights `ε_i`, then `e_{l+1}..e_{2l}` with
//!   weights `−ε_i`. The invariant form is `[[0, I], [−I, 0]]` for `C` and
//!   `[[0, I], [I, 0]]` for `D`.
//! * `B_l`: as `D_l`, followed by a zero-weight vector `e_{2l+1}`; the form
//!   is `[[0, I, 0], [I, 0, 0], [0, 0, 1]]`.
//!
//! Negative root vectors (for `i < j`):
//!
//! | root            | `C`                        | `B`, `D`                   |
//! |-----------------|----------------------------|----------------------------|
//! | `−(ε_i − ε_j)`  | `E_{j,i} − E_{l+i,l+j}`    | `E_{j,i} − E_{l+i,l+j}`    |
//! | `−(ε_i + ε_j)`  | `E_{l+j,i} + E_{l+i,j}`    | `E_{l+j,i} − E_{l+i,j}`    |
//! | `−2ε_i`         | `E_{l+i,i}`                |                            |
//! | `−ε_i` (`B`)    |                            | `E_{0,i} − E_{l+i,0}`      |
//!
//! Positive root vectors are the transposes. These choices reproduce the
//! displayed `Z` patterns for `sp(4)` and `so(8)` entry for entry.
//!
//! Chart coordinates follow the column-major position of the first nonzero
//! entry of each negative root vector. For type `A` this is the usual
//! column-by-column labelling of the strictly lower triangle.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootsys::{Family, LieType, ParabolicData, Root, RootSystem};
use crate::symalg::{rat, Poly, PolyMatrix};

/// A root together with its integer matrix realization.
#[derive(Debug, Clone, PartialEq)]
pub struct RootVector {
    pub root: Root,
    pub matrix: DMatrix<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRealization {
    lie_type: LieType,
    dim: usize,
    cartan_basis: Vec<DMatrix<i64>>,
    root_vectors: Vec<RootVector>,
    structure_form: Option<DMatrix<i64>>,
}

fn unit(n: usize, i: usize, j: usize) -> DMatrix<i64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1;
    m
}

impl MatrixRealization {
    pub fn new(ty: LieType) -> Result<Self> {
        let l = ty.rank();
        let rs = RootSystem::new(ty);
        // (ε-weight, negative root vector) pairs; ε-weights are those of the
        // positive root.
        let mut neg: Vec<(Vec<i64>, DMatrix<i64>)> = Vec::new();
        let eps = |len: usize, entries: &[(usize, i64)]| {
            let mut v = vec![0i64; len];
            for &(i, c) in entries {
                v[i] += c;
            }
            v
        };
        let (dim, structure_form, coroots): (usize, Option<DMatrix<i64>>, Vec<Vec<i64>>) = match ty
            .family()
        {
            Family::A => {
                let n = l + 1;
                for i in 0..n {
                    for j in i + 1..n {
                        neg.push((eps(n, &[(i, 1), (j, -1)]), unit(n, j, i)));
                    }
                }
                let coroots = (0..l).map(|i| eps(n, &[(i, 1), (i + 1, -1)])).collect();
                (n, None, coroots)
            }
            Family::B | Family::C | Family::D => {
                let fam = ty.family();
                let n = if fam == Family::B { 2 * l + 1 } else { 2 * l };
                let sign: i64 = if fam == Family::C { 1 } else { -1 };
                for i in 0..l {
                    for j in i + 1..l {
                        neg.push((
                            eps(l, &[(i, 1), (j, -1)]),
                            unit(n, j, i) - unit(n, l + i, l + j),
                        ));
                        neg.push((
                            eps(l, &[(i, 1), (j, 1)]),
                            unit(n, l + j, i) + unit(n, l + i, j) * sign,
                        ));
                    }
                    match fam {
                        Family::C => neg.push((eps(l, &[(i, 2)]), unit(n, l + i, i))),
                        Family::B => {
                            let zero = 2 * l;
                            neg.push((eps(l, &[(i, 1)]), unit(n, zero, i) - unit(n, l + i, zero)));
                        }
                        _ => {}
                    }
                }
                let mut form = DMatrix::zeros(n, n);
                for i in 0..l {
                    form[(i, l + i)] = 1;
                    form[(l + i, i)] = if fam == Family::C { -1 } else { 1 };
                }
                if fam == Family::B {
                    form[(2 * l, 2 * l)] = 1;
                }
                let mut coroots: Vec<Vec<i64>> =
                    (0..l - 1).map(|i| eps(l, &[(i, 1), (i + 1, -1)])).collect();
                coroots.push(match fam {
                    Family::B => eps(l, &[(l - 1, 2)]),
                    Family::C => eps(l, &[(l - 1, 1)]),
                    _ => eps(l, &[(l - 2, 1), (l - 1, 1)]),
                });
                (n, Some(form), coroots)
            }
            _ => return Err(Error::RealizationUnsupported(ty.to_string())),
        };

        // ε-weight of each basis vector
        let basis_weight = |k: usize| -> Vec<i64> {
            match ty.family() {
                Family::A => eps(dim, &[(k, 1)]),
                _ if k < l => eps(l, &[(k, 1)]),
                _ if k < 2 * l => eps(l, &[(k - l, -1)]),
                _ => vec![0; l],
            }
        };
        let cartan_basis = coroots
            .iter()
            .map(|w| {
                DMatrix::from_fn(dim, dim, |i, j| {
                    if i == j {
                        basis_weight(i).iter().zip(w).map(|(a, b)| a * b).sum()
                    } else {
                        0
                    }
                })
            })
            .collect();

        let mut root_vectors = Vec::with_capacity(2 * neg.len());
        for (w, y) in neg {
            let beta = Root(epsilon_to_simple(ty, &w));
            debug_assert!(rs.is_positive_root(&beta), "{beta} is not a root of {ty}");
            root_vectors.push(RootVector {
                root: beta.neg(),
                matrix: y.clone(),
            });
            root_vectors.push(RootVector {
                root: beta,
                matrix: y.transpose(),
            });
        }
        root_vectors.sort_by(|a, b| b.root.cmp(&a.root));

        Ok(Self {
            lie_type: ty,
            dim,
            cartan_basis,
            root_vectors,
            structure_form,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    /// Dimension `N` of the defining representation.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Diagonal coroots `h_i = α_i^∨`, indexed by node - 1.
    pub fn cartan_basis(&self) -> &[DMatrix<i64>] {
        &self.cartan_basis
    }

    pub fn root_vectors(&self) -> &[RootVector] {
        &self.root_vectors
    }

    pub fn root_vector(&self, beta: &Root) -> Option<&DMatrix<i64>> {
        self.root_vectors
            .iter()
            .find(|rv| &rv.root == beta)
            .map(|rv| &rv.matrix)
    }

    /// Invariant bilinear form; `None` for type `A`.
    pub fn structure_form(&self) -> Option<&DMatrix<i64>> {
        self.structure_form.as_ref()
    }
}

/// Simple-root coefficients of a weight written in ε-coordinates.
fn epsilon_to_simple(ty: LieType, w: &[i64]) -> Vec<i64> {
    let l = ty.rank();
    let partial: Vec<i64> = w
        .iter()
        .scan(0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect();
    match ty.family() {
        Family::A => partial[..l].to_vec(),
        Family::B => partial[..l].to_vec(),
        Family::C => {
            let mut m = partial[..l].to_vec();
            m[l - 1] /= 2;
            m
        }
        Family::D => {
            let mut m = partial[..l].to_vec();
            m[l - 1] = partial[l - 1] / 2;
            m[l - 2] = (partial[l - 2] - w[l - 1]) / 2;
            m
        }
        _ => unreachable!("exceptional types have no realization"),
    }
}

/// `exp(Z)` for nilpotent `Z` as the finite sum `Σ_{k<d} Z^k / k!`,
/// together with the nilpotency degree `d` (smallest `d` with `Z^d = 0`).
pub fn exp_nilpotent_with_degree(z: &PolyMatrix) -> Result<(PolyMatrix, usize)> {
    let n = z.rows();
    if z.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.cols(),
        });
    }
    let mut sum = PolyMatrix::identity(n, z.nvars());
    let mut power = PolyMatrix::identity(n, z.nvars());
    for k in 1..=n.max(1) {
        power = &power * z;
        if power.is_zero() {
            return Ok((sum, k));
        }
        sum = &sum + &power.scale(&rat(1, factorial(k)));
    }
    Err(Error::NotNilpotent(n))
}

/// `exp(Z)` for nilpotent `Z`.
pub fn exp_nilpotent(z: &PolyMatrix) -> Result<PolyMatrix> {
    exp_nilpotent_with_degree(z).map(|(m, _)| m)
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// The opposite big cell `R_u(P)^- x_0 ⊂ X_P` in exponential coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BigCellChart {
    parabolic: ParabolicData,
    realization: MatrixRealization,
    coords: Vec<Root>,
    z: PolyMatrix,
    n: PolyMatrix,
    nilpotency_degree: usize,
}

impl BigCellChart {
    pub fn new(pd: &ParabolicData, real: &MatrixRealization) -> Result<Self> {
        if pd.lie_type() != real.lie_type() {
            return Err(Error::TypeMismatch(
                pd.lie_type().to_string(),
                real.lie_type().to_string(),
            ));
        }
        let dim = real.dim();
        let mut coords: Vec<(usize, usize, Root)> = pd
            .radical_roots()
            .iter()
            .map(|beta| {
                let neg = beta.neg();
                let y = real
                    .root_vector(&neg)
                    .expect("every root has a root vector");
                let (row, col) = (0..dim)
                    .flat_map(|c| (0..dim).map(move |r| (r, c)))
                    .find(|&(r, c)| !y[(r, c)].is_zero())
                    .expect("root vectors are nonzero");
                (col, row, neg)
            })
            .collect();
        coords.sort();
        let coords: Vec<Root> = coords.into_iter().map(|(_, _, r)| r).collect();
        let m = coords.len();
        let mut z = PolyMatrix::zero(dim, dim, m);
        for (k, root) in coords.iter().enumerate() {
            let y = real.root_vector(root).expect("root vector present");
            let zk = Poly::var(m, k);
            let term = PolyMatrix::from_fn(dim, dim, m, |i, j| zk.scale(&rat(y[(i, j)], 1)));
            z = &z + &term;
        }
        let (n, nilpotency_degree) = exp_nilpotent_with_degree(&z)?;
        Ok(Self {
            parabolic: pd.clone(),
            realization: real.clone(),
            coords,
            z,
            n,
            nilpotency_degree,
        })
    }

    pub fn parabolic(&self) -> &ParabolicData {
        &self.parabolic
    }

    pub fn realization(&self) -> &MatrixRealization {
        &self.realization
    }

    /// Negative radical roots; `z_{k+1}` multiplies the root vector of `coords()[k]`.
    pub fn coords(&self) -> &[Root] {
        &self.coords
    }

    /// Complex dimension of the chart.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `Z(z) = Σ z_k Y_{β_k}`.
    pub fn z_matrix(&self) -> &PolyMatrix {
        &self.z
    }

    /// `n(z) = exp(Z(z))`.
    pub fn n_matrix(&self) -> &PolyMatrix {
        &self.n
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency_degree
    }

    /// Node indices of the parabolic complement.
    pub fn complement(&self) -> BTreeSet<usize> {
        self.parabolic.complement().iter().copied().collect()
    }
}

//! Root systems of complex simple Lie algebras and the combinatorics of
//! parabolic subalgebras.
//!
//! Roots are integer coefficient vectors over the simple roots. All pairings
//! go through the Cartan matrix `C_ij = <α_i, α_j^∨>`, so the Killing form is
//! never built. Simple roots are numbered from 1.
//!
//! Numbering of the Dynkin diagrams:
//!
//! * `A_l`, `B_l`, `C_l`: the chain `1 - 2 - ... - l`; for `B`/`C` the double
//!   bond sits between `l-1` and `l`, with `α_l` short for `B` and long for `C`.
//! * `D_l`: the chain `1 - ... - (l-1)` with `α_l` attached to `α_{l-2}`.
//! * `E6`: chain `1 - 2 - 3 - 4 - 5`, `α6` attached to `α3`.
//! * `E7`: chain `1 - ... - 6`, `α7` attached to `α3`.
//! * `E8`: chain `1 - ... - 7`, `α8` attached to `α5`.
//! * `F4`: `1 - 2 => 3 - 4` (`α1`, `α2` long); `G2`: `α1` short, `α2` long.
//!
//! With these conventions the Cayley plane is `E6` with `Θ = Σ \ {α5}` and the
//! Freudenthal variety is `E7` with `Θ = Σ \ {α6}`. Koszul coefficients of the
//! exceptional types depend on this numbering.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

/// Cartan type of a complex simple Lie algebra, e.g. `A3` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Closed-form number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
            Family::E => match l {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        LieType::new(family, rank)
    }
}

/// A root written as `Σ m_i α_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index - 1] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&m| m >= 0) && self.0.iter().any(|&m| m > 0)
    }

    /// Simple-root indices (1-based) with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|m| -m).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &m) in self.0.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let sign = if m < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = m.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Cartan matrix with `C_ij = 2κ(α_i, α_j)/κ(α_j, α_j)`.
pub fn cartan_matrix(ty: LieType) -> Vec<Vec<i64>> {
    let l = ty.rank();
    let mut c = vec![vec![0i64; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut bond = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i - 1][j - 1] = cij;
        c[j - 1][i - 1] = cji;
    };
    match ty.family() {
        Family::A => (1..l).for_each(|i| bond(i, i + 1, -1, -1)),
        Family::B => {
            (1..l - 1).for_each(|i| bond(i, i + 1, -1, -1));
            bond(l - 1, l, -2, -1);
        }
        Family::C => {
            (1..l - 1).for_each(|i| bond(i, i + 1, -1, -1));
            bond(l - 1, l, -1, -2);
        }
        Family::D => {
            (1..l - 1).for_each(|i| bond(i, i + 1, -1, -1));
            bond(l - 2, l, -1, -1);
        }
        Family::E => {
            let (chain, extra, at) = match l {
                6 => (5, 6, 3),
                7 => (6, 7, 3),
                _ => (7, 8, 5),
            };
            (1..chain).for_each(|i| bond(i, i + 1, -1, -1));
            bond(at, extra, -1, -1);
        }
        Family::F => {
            bond(1, 2, -1, -1);
            bond(2, 3, -2, -1);
            bond(3, 4, -1, -1);
        }
        Family::G => bond(1, 2, -1, -3),
    }
    c
}

/// Root system with its positive roots graded by height, then ordered
/// lexicographically descending within each height.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
}

impl RootSystem {
    pub fn new(ty: LieType) -> Self {
        let cartan = cartan_matrix(ty);
        let l = ty.rank();
        let mut known: HashSet<Root> = HashSet::new();
        let mut layer: Vec<Root> = (1..=l).map(|i| Root::simple(l, i)).collect();
        let mut all = Vec::new();
        while !layer.is_empty() {
            layer.sort_by(|a, b| b.cmp(a));
            known.extend(layer.iter().cloned());
            let mut next = BTreeSet::new();
            for beta in &layer {
                for j in 1..=l {
                    let alpha = Root::simple(l, j);
                    if *beta == alpha {
                        continue;
                    }
                    // length of the α_j-string below β
                    let mut p = 0;
                    let mut below = beta.clone();
                    loop {
                        below.0[j - 1] -= 1;
                        if known.contains(&below) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - pair(&cartan, beta, j);
                    if q > 0 {
                        next.insert(beta.add(&alpha));
                    }
                }
            }
            all.append(&mut layer);
            layer = next.into_iter().collect();
        }
        Self {
            lie_type: ty,
            cartan,
            positive_roots: all,
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// `<β, α_j^∨> = Σ_i m_i C_ij` for a 1-based node `j`.
    pub fn pairing(&self, beta: &Root, j: usize) -> i64 {
        pair(&self.cartan, beta, j)
    }

    pub fn is_positive_root(&self, beta: &Root) -> bool {
        self.positive_roots.contains(beta)
    }

    pub fn is_root(&self, beta: &Root) -> bool {
        self.is_positive_root(beta) || self.is_positive_root(&beta.neg())
    }
}

fn pair(cartan: &[Vec<i64>], beta: &Root, j: usize) -> i64 {
    beta.0
        .iter()
        .zip(cartan)
        .map(|(m, row)| m * row[j - 1])
        .sum()
}

/// Data attached to the parabolic subalgebra `p_Θ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParabolicData {
    #[serde(skip)]
    root_system: RootSystem,
    theta: BTreeSet<usize>,
    complement: Vec<usize>,
    radical_roots: Vec<Root>,
    delta_p: Root,
    koszul: BTreeMap<usize, i64>,
    dim: usize,
}

impl ParabolicData {
    pub fn new(rs: &RootSystem, theta: &BTreeSet<usize>) -> Result<Self> {
        let l = rs.rank();
        if let Some(&bad) = theta.iter().find(|&&i| i == 0 || i > l) {
            return Err(Error::InvalidNode {
                index: bad,
                rank: l,
            });
        }
        if theta.len() == l {
            return Err(Error::PointManifold);
        }
        let complement: Vec<usize> = (1..=l).filter(|i| !theta.contains(i)).collect();
        let radical_roots: Vec<Root> = rs
            .positive_roots()
            .iter()
            .filter(|r| !r.support().is_subset(theta))
            .cloned()
            .collect();
        let delta_p = radical_roots
            .iter()
            .fold(Root(vec![0; l]), |acc, r| acc.add(r));
        let koszul = complement
            .iter()
            .map(|&a| (a, rs.pairing(&delta_p, a)))
            .collect();
        Ok(Self {
            root_system: rs.clone(),
            theta: theta.clone(),
            complement,
            dim: radical_roots.len(),
            radical_roots,
            delta_p,
            koszul,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn lie_type(&self) -> LieType {
        self.root_system.lie_type()
    }

    pub fn theta(&self) -> &BTreeSet<usize> {
        &self.theta
    }

    /// `Σ \ Θ` in increasing order.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// `Π⁺ \ <Θ>⁺` in the canonical root order.
    pub fn radical_roots(&self) -> &[Root] {
        &self.radical_roots
    }

    pub fn delta_p(&self) -> &Root {
        &self.delta_p
    }

    /// `c_α = <δ_P, h_α^∨>` for each `α ∈ Σ \ Θ`.
    pub fn koszul_coefficients(&self) -> &BTreeMap<usize, i64> {
        &self.koszul
    }

    pub fn complex_dimension(&self) -> usize {
        self.dim
    }

    pub fn picard_rank(&self) -> usize {
        self.complement.len()
    }

    /// Positive roots of the Levi factor, `<Θ>⁺`.
    pub fn levi_roots(&self) -> Vec<Root> {
        self.root_system
            .positive_roots()
            .iter()
            .filter(|r| r.support().is_subset(&self.theta))
            .cloned()
            .collect()
    }
}

/// Parse a Θ specification: `none`, `all`, `all-but-i[,j..]` or a comma list.
pub fn parse_theta(spec: &str, rank: usize) -> Result<BTreeSet<usize>> {
    let spec = spec.trim();
    let nodes = |s: &str| -> Result<BTreeSet<usize>> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                let i: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidNode { index: 0, rank })?;
                if i == 0 || i > rank {
                    Err(Error::InvalidNode { index: i, rank })
                } else {
                    Ok(i)
                }
            })
            .collect()
    };
    match spec {
        "" | "none" => Ok(BTreeSet::new()),
        "all" => Ok((1..=rank).collect()),
        _ => {
            if let Some(rest) = spec.strip_prefix("all-but-") {
                let drop = nodes(rest)?;
                Ok((1..=rank).filter(|i| !drop.contains(i)).collect())
            } else {
                nodes(spec)
            }
        }
    }
}

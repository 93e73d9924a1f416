//! One-stop construction of a flag manifold `G/P_Θ` with its chart and
//! Kähler–Einstein potential.

use std::collections::BTreeSet;

use crate::calabi::CalabiMetric;
use crate::error::Result;
use crate::kahler::PotentialSpec;
use crate::matrep::{BigCellChart, MatrixRealization};
use crate::rootsys::{parse_theta, LieType, ParabolicData, RootSystem};

#[derive(Debug, Clone)]
pub struct FlagManifold {
    potential: PotentialSpec,
}

impl FlagManifold {
    /// `weights` follow the order of the parabolic complement; `None` gives
    /// the Kähler–Einstein (Koszul) weights.
    pub fn new(ty: LieType, theta: &BTreeSet<usize>, weights: Option<&[f64]>) -> Result<Self> {
        let pd = ParabolicData::new(&RootSystem::new(ty), theta)?;
        let chart = BigCellChart::new(&pd, &MatrixRealization::new(ty)?)?;
        Ok(Self {
            potential: PotentialSpec::new(&chart, weights)?,
        })
    }

    /// Parses `"A3"` and a theta spec such as `"1,3"`, `"none"` or `"all-but-2"`.
    pub fn parse(ty: &str, theta: &str) -> Result<Self> {
        let ty: LieType = ty.parse()?;
        Self::new(ty, &parse_theta(theta, ty.rank())?, None)
    }

    pub fn parabolic(&self) -> &ParabolicData {
        self.potential.parabolic()
    }

    pub fn chart(&self) -> &BigCellChart {
        self.potential.chart()
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    pub fn dim(&self) -> usize {
        self.potential.dim()
    }

    pub fn calabi(&self, constant: f64) -> Result<CalabiMetric<'_>> {
        CalabiMetric::new(&self.potential, constant)
    }
}

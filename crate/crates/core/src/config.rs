//! Space definition files (TOML, or JSON when the path ends in `.json`).
//!
//! ```toml
//! torus = [[1, "1/2"]]          # flat Cartan coordinates over iH_{a_i}
//!
//! [[factors]]
//! type = "A"
//! rank = 2
//!
//! [metric]                        # optional; standard metric when absent
//! blocks = { sprime = [[2]], lambdas = [1] }
//! # or: matrix = [[...], ...]     operator matrix over the m basis
//! # or: mu = [1, 2]               normal metric of a scaled Killing form
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::chevalley::{CompactAlgebra, SemisimpleAlgebra};
use crate::error::{Error, Result};
use crate::gometric::{block_metric, normal_from_mu, MetricEndo};
use crate::homspace::SpaceGS;
use crate::linalg::{Matrix, Vector};
use crate::rational::{RawRational, Q};
use crate::rootsys::{RootSystem, RootType};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlocksSpec {
    #[serde(default)]
    pub sprime: Vec<Vec<RawRational>>,
    pub lambdas: Vec<RawRational>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    pub blocks: Option<BlocksSpec>,
    pub matrix: Option<Vec<Vec<RawRational>>>,
    pub mu: Option<Vec<RawRational>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub factors: Vec<FactorSpec>,
    #[serde(default)]
    pub torus: Vec<Vec<RawRational>>,
    pub metric: Option<MetricSpec>,
}

fn vector(raw: &[RawRational]) -> Result<Vector> {
    raw.iter().map(RawRational::to_q).collect()
}

fn matrix(raw: &[Vec<RawRational>]) -> Result<Matrix> {
    let rows: Vec<Vector> = raw.iter().map(|r| vector(r)).collect::<Result<_>>()?;
    if let Some(bad) = rows.iter().find(|r| r.len() != rows.len()) {
        return Err(Error::DimensionMismatch { expected: rows.len(), got: bad.len() });
    }
    Ok(Matrix { rows: rows.len(), cols: rows.len(), data: rows })
}

impl SpaceConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn algebra(&self) -> Result<SemisimpleAlgebra> {
        if self.factors.is_empty() {
            return Err(Error::Parse("at least one factor is required".into()));
        }
        let fs = self
            .factors
            .iter()
            .map(|f| CompactAlgebra::build(&RootSystem::build(RootType::parse(&f.type_label)?, f.rank)?))
            .collect::<Result<_>>()?;
        SemisimpleAlgebra::direct_sum(fs)
    }

    pub fn space(&self) -> Result<SpaceGS> {
        let torus = self.torus.iter().map(|v| vector(v)).collect::<Result<_>>()?;
        SpaceGS::build(self.algebra()?, torus)
    }

    /// The configured metric on `space`, validated.
    pub fn metric(&self, space: &SpaceGS) -> Result<MetricEndo> {
        let Some(m) = &self.metric else { return Ok(MetricEndo::standard(space)) };
        let given = [m.blocks.is_some(), m.matrix.is_some(), m.mu.is_some()].iter().filter(|&&b| b).count();
        if given != 1 {
            return Err(Error::Parse("[metric] needs exactly one of blocks, matrix, mu".into()));
        }
        if let Some(b) = &m.blocks {
            let lambdas: Vec<Q> = vector(&b.lambdas)?;
            return block_metric(space, &matrix(&b.sprime)?, &lambdas);
        }
        if let Some(rows) = &m.matrix {
            return MetricEndo::new(space, matrix(rows)?);
        }
        let mu = vector(m.mu.as_ref().expect("one variant present"))?;
        normal_from_mu(space, &mu)
    }
}

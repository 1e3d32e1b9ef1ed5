//! Painted Dynkin diagrams: the split of the roots into isotropy roots
//! `R_K` (no painted support) and complementary roots `R_M`, the center `t`
//! of the isotropy algebra and its Cartan complement `t'`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::rational::{fmt_q, Q};
use crate::rootsys::RootSystem;

/// A root system with a nonempty set of painted simple roots (0-based).
#[derive(Debug, Clone)]
pub struct PaintedDiagram<'a> {
    pub rs: &'a RootSystem,
    pub painted: Vec<usize>,
}

impl<'a> PaintedDiagram<'a> {
    pub fn new(rs: &'a RootSystem, painted: &[usize]) -> Result<Self> {
        let mut p = painted.to_vec();
        p.sort_unstable();
        p.dedup();
        if p.is_empty() {
            return Err(Error::InvalidPainting("no painted node".into()));
        }
        if let Some(&bad) = p.iter().find(|&&i| i >= rs.rank) {
            return Err(Error::InvalidPainting(format!("node {} out of range 1..={}", bad + 1, rs.rank)));
        }
        Ok(Self { rs, painted: p })
    }

    /// Builds from 1-based node numbers.
    pub fn from_one_based(rs: &'a RootSystem, nodes: &[usize]) -> Result<Self> {
        if nodes.contains(&0) {
            return Err(Error::InvalidPainting("nodes are numbered from 1".into()));
        }
        Self::new(rs, &nodes.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    pub fn unpainted(&self) -> Vec<usize> {
        (0..self.rs.rank).filter(|i| !self.painted.contains(i)).collect()
    }

    /// Sum of the painted coefficients of a root.
    pub fn painted_height(&self, root: usize) -> i64 {
        let c = self.rs.coeffs(root);
        self.painted.iter().map(|&i| c[i]).sum()
    }

    pub fn in_k(&self, root: usize) -> bool {
        let c = self.rs.coeffs(root);
        self.painted.iter().all(|&i| c[i] == 0)
    }

    pub fn partition(&self) -> FlagPartition {
        let n = self.rs.num_positive();
        let (rk, rm): (Vec<usize>, Vec<usize>) = (0..n).partition(|&r| self.in_k(r));
        let grading = if self.painted.len() == 1 {
            let max = rm.iter().map(|&r| self.painted_height(r)).max().unwrap_or(0);
            (max == 2).then(|| {
                let (m1, m2) = rm.iter().partition(|&&r| self.painted_height(r) == 1);
                (m1, m2)
            })
        } else {
            None
        };
        FlagPartition { rk_plus: rk, rm_plus: rm, grading }
    }

    /// Center `t` and complement `t'` of the isotropy algebra inside the
    /// Cartan, in coordinates over `iH_{a_1}, ..., iH_{a_l}`.
    ///
    /// The center basis is dual to the painted roots: `a_m(xi^(m)) = 1` and
    /// every other simple root vanishes on it.
    pub fn isotropy_split(&self) -> IsotropySplit {
        let l = self.rs.rank;
        // Killing Gram matrix of the simple roots; a_i(Y) = (G y)_i
        let gram = Matrix::from_rows((0..l).map(|i| (0..l).map(|j| self.rs.inner_k(i, j)).collect()).collect());
        let inv = gram.inverse().expect("Gram matrix of a base is invertible");
        let center: Vec<Vector> = self.painted.iter().map(|&m| inv.col(m)).collect();
        let t_prime: Vec<Vector> = self.unpainted().into_iter().map(|i| linalg::unit(l, i)).collect();
        let dim_k = l + 2 * self.partition().rk_plus.len();
        IsotropySplit { center, t_prime, dim_k, gram }
    }

    pub fn report(&self) -> FlagReport {
        let part = self.partition();
        let split = self.isotropy_split();
        let coeffs = |v: &[usize]| v.iter().map(|&r| self.rs.coeffs(r)).collect::<Vec<_>>();
        FlagReport {
            type_label: self.rs.type_label.label().to_string(),
            rank: self.rs.rank,
            painted: self.painted.iter().map(|i| i + 1).collect(),
            rk_plus: coeffs(&part.rk_plus),
            rm_plus: coeffs(&part.rm_plus),
            rm1: part.grading.as_ref().map(|(a, _)| coeffs(a)),
            rm2: part.grading.as_ref().map(|(_, b)| coeffs(b)),
            center: split.center.iter().map(|v| v.iter().map(fmt_q).collect()).collect(),
            t_prime: split.t_prime.iter().map(|v| v.iter().map(fmt_q).collect()).collect(),
            dim_t: split.center.len(),
            dim_t_prime: split.t_prime.len(),
            dim_k: split.dim_k,
        }
    }
}

/// Positive roots split by a painting; ids refer to the root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPartition {
    pub rk_plus: Vec<usize>,
    pub rm_plus: Vec<usize>,
    /// `(R_M^1, R_M^2)` when one node is painted and its coefficient reaches 2.
    pub grading: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Debug, Clone)]
pub struct IsotropySplit {
    pub center: Vec<Vector>,
    pub t_prime: Vec<Vector>,
    pub dim_k: usize,
    gram: Matrix,
}

impl IsotropySplit {
    /// Negative Killing form on Cartan coordinates.
    pub fn form(&self, x: &[Q], y: &[Q]) -> Q {
        linalg::dot(&self.gram.apply(x), y)
    }

    /// Values `a_i(Y)` of the simple roots on Cartan coordinates `y`.
    pub fn simple_values(&self, y: &[Q]) -> Vector {
        self.gram.apply(y)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.center.iter().all(|c| self.t_prime.iter().all(|t| self.form(c, t).is_zero()))
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FlagReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub painted: Vec<usize>,
    pub rk_plus: Vec<Vec<i64>>,
    pub rm_plus: Vec<Vec<i64>>,
    pub rm1: Option<Vec<Vec<i64>>>,
    pub rm2: Option<Vec<Vec<i64>>>,
    pub center: Vec<Vec<String>>,
    pub t_prime: Vec<Vec<String>>,
    pub dim_t: usize,
    pub dim_t_prime: usize,
    pub dim_k: usize,
}

/// `true` when `coeffs` is an integer combination of the given simple
/// roots only (used as an oracle for `R_K`).
pub fn supported_on(coeffs: &[i64], nodes: &[usize]) -> bool {
    coeffs.iter().enumerate().all(|(i, &c)| c == 0 || nodes.contains(&i))
}

//! Irreducible root systems of types A, B, C, D and G2.
//!
//! Roots are identified by a dense id: `0..n` are the positive roots in
//! canonical order (height, then coefficient vectors in descending
//! lexicographic order, so ids `0..rank` are the simple roots), and
//! `n + k` is the negative of positive root `k`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{fmt_q, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    G,
}

impl RootType {
    pub fn label(self) -> char {
        match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::G => 'G',
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "G" => Ok(RootType::G),
            other => Err(Error::UnknownType(other.to_string())),
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            RootType::A => 1,
            RootType::B | RootType::C | RootType::G => 2,
            RootType::D => 3,
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            RootType::G => rank == 2,
            t => rank >= t.min_rank(),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A root with its simple-root coefficients and ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub ambient: Vec<Q>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub type_label: RootType,
    pub rank: usize,
    simple_ambient: Vec<Vec<Q>>,
    positive: Vec<Root>,
    /// Euclidean products of simple roots.
    pub gram: Matrix,
    /// `cartan[i][j] = <alpha_i, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`.
    pub cartan: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    norms: Vec<Q>,
}

fn e(n: usize, i: usize) -> Vec<Q> {
    linalg::unit(n, i)
}

fn simple_roots_ambient(t: RootType, l: usize) -> Vec<Vec<Q>> {
    match t {
        RootType::A => (0..l).map(|i| linalg::sub(&e(l + 1, i), &e(l + 1, i + 1))).collect(),
        RootType::B | RootType::C | RootType::D => {
            let mut v: Vec<Vec<Q>> = (0..l - 1).map(|i| linalg::sub(&e(l, i), &e(l, i + 1))).collect();
            v.push(match t {
                RootType::B => e(l, l - 1),
                RootType::C => linalg::scale(&q(2), &e(l, l - 1)),
                _ => linalg::add(&e(l, l - 2), &e(l, l - 1)),
            });
            v
        }
        RootType::G => vec![vec![q(1), q(-1), q(0)], vec![q(-2), q(1), q(1)]],
    }
}

impl RootSystem {
    pub fn build(t: RootType, rank: usize) -> Result<Self> {
        if !t.valid_rank(rank) {
            return Err(Error::InvalidRank { type_label: t.label(), rank });
        }
        let simple_ambient = simple_roots_ambient(t, rank);
        let gram = Matrix::from_rows(
            (0..rank)
                .map(|i| (0..rank).map(|j| linalg::dot(&simple_ambient[i], &simple_ambient[j])).collect())
                .collect(),
        );
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = q(2) * gram.get(i, j) / gram.get(j, j);
                        crate::rational::to_i64(&v).expect("Cartan integers are integral")
                    })
                    .collect()
            })
            .collect();

        let positive_coeffs = generate_positive(&cartan, rank);
        let mut positive: Vec<Root> = positive_coeffs
            .into_iter()
            .map(|c| {
                let mut amb = linalg::zeros(simple_ambient[0].len());
                for (i, &ci) in c.iter().enumerate() {
                    linalg::axpy(&mut amb, &q(ci), &simple_ambient[i]);
                }
                Root { coeffs: c, ambient: amb }
            })
            .collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));

        let n = positive.len();
        let mut index = HashMap::with_capacity(2 * n);
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.coeffs.clone(), k);
            index.insert(r.coeffs.iter().map(|c| -c).collect(), n + k);
        }
        let mut rs = Self { type_label: t, rank, simple_ambient, positive, gram, cartan, index, norms: Vec::new() };
        rs.norms = (0..n).map(|k| rs.inner(k, k)).collect();
        Ok(rs)
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_ambient(&self) -> &[Vec<Q>] {
        &self.simple_ambient
    }

    pub fn is_positive(&self, id: usize) -> bool {
        id < self.num_positive()
    }

    pub fn neg(&self, id: usize) -> usize {
        let n = self.num_positive();
        if id < n {
            id + n
        } else {
            id - n
        }
    }

    /// Positive root id of `+-alpha`.
    pub fn abs(&self, id: usize) -> usize {
        id % self.num_positive()
    }

    pub fn coeffs(&self, id: usize) -> Vec<i64> {
        let n = self.num_positive();
        if id < n {
            self.positive[id].coeffs.clone()
        } else {
            self.positive[id - n].coeffs.iter().map(|c| -c).collect()
        }
    }

    pub fn ambient(&self, id: usize) -> Vec<Q> {
        let n = self.num_positive();
        if id < n {
            self.positive[id].ambient.clone()
        } else {
            self.positive[id - n].ambient.iter().map(|c| -c).collect()
        }
    }

    pub fn find(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        self.index.contains_key(coeffs)
    }

    /// Root id of `a + k b`, if that is a root.
    pub fn combine(&self, a: usize, k: i64, b: usize) -> Option<usize> {
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let c: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + k * y).collect();
        self.find(&c)
    }

    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.combine(a, 1, b)
    }

    pub fn height(&self, id: usize) -> i64 {
        self.coeffs(id).iter().sum()
    }

    /// Euclidean product `(alpha, beta)` of the ambient model.
    pub fn inner(&self, a: usize, b: usize) -> Q {
        self.inner_coeffs(&self.coeffs(a), &self.coeffs(b))
    }

    pub fn inner_coeffs(&self, a: &[i64], b: &[i64]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    acc += q(a[i] * b[j]) * self.gram.get(i, j);
                }
            }
        }
        acc
    }

    pub fn norm(&self, id: usize) -> Q {
        self.norms[self.abs(id)].clone()
    }

    /// Cartan integer `<alpha, beta> = 2 (alpha, beta) / (beta, beta)`.
    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        let v = q(2) * self.inner(a, b) / self.norm(b);
        crate::rational::to_i64(&v).expect("Cartan integers are integral")
    }

    /// `(r, q)`: the `beta`-string through `alpha` is `alpha - r beta, ..., alpha + q beta`.
    pub fn root_string(&self, a: usize, b: usize) -> Result<(i64, i64)> {
        if a == b || a == self.neg(b) {
            return Err(Error::ProportionalRoots);
        }
        let mut r = 0;
        while self.combine(a, -(r + 1), b).is_some() {
            r += 1;
        }
        let mut qq = 0;
        while self.combine(a, qq + 1, b).is_some() {
            qq += 1;
        }
        Ok((r, qq))
    }

    /// Simple roots (as indices) whose successive partial sums are all roots
    /// and which add up to the positive root `id`.
    pub fn decompose_to_simple_chain(&self, id: usize) -> Result<Vec<usize>> {
        if !self.is_positive(id) {
            return Err(Error::InternalInvariantViolation(format!("root {id} is not positive")));
        }
        let target = self.coeffs(id);
        let mut chain = Vec::new();
        if self.chain_search(&target, &mut chain) {
            chain.reverse();
            Ok(chain)
        } else {
            Err(Error::InternalInvariantViolation(format!("no simple chain for {target:?}")))
        }
    }

    // Peels simple roots off the top, backtracking if a branch dead-ends.
    fn chain_search(&self, c: &[i64], chain: &mut Vec<usize>) -> bool {
        if c.iter().sum::<i64>() == 1 {
            chain.push(c.iter().position(|&x| x == 1).unwrap());
            return true;
        }
        for i in 0..self.rank {
            if c[i] == 0 {
                continue;
            }
            let mut rest = c.to_vec();
            rest[i] -= 1;
            if self.is_root(&rest) {
                chain.push(i);
                if self.chain_search(&rest, chain) {
                    return true;
                }
                chain.pop();
            }
        }
        false
    }

    /// Reflection `s_b(a) = a - <a, b> b`.
    pub fn reflect(&self, a: usize, b: usize) -> Option<usize> {
        self.combine(a, -self.pairing(a, b), b)
    }

    /// Ratio of the Killing product to the Euclidean one. With `h_1` the
    /// first simple coroot, `B_K(h_1, h_1) = sum_g <g, a_1>^2` and
    /// `(a_1, a_1)_K = 4 / B_K(h_1, h_1)`.
    pub fn killing_scale(&self) -> Q {
        let bh: i64 = (0..self.num_roots()).map(|g| self.pairing(g, 0).pow(2)).sum();
        q(4) / q(bh) / self.norm(0)
    }

    /// Killing product of two roots.
    pub fn inner_k(&self, a: usize, b: usize) -> Q {
        self.inner(a, b) * self.killing_scale()
    }

    /// Highest root (the unique positive root of maximal height).
    pub fn highest_root(&self) -> usize {
        self.num_positive() - 1
    }

    pub fn to_report(&self) -> RootSystemReport {
        RootSystemReport {
            type_label: self.type_label.label().to_string(),
            rank: self.rank,
            num_positive: self.num_positive(),
            simple_roots: self.simple_ambient.iter().map(|v| v.iter().map(fmt_q).collect()).collect(),
            positive_roots: self.positive.iter().map(|r| r.coeffs.clone()).collect(),
            cartan: self.cartan.clone(),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        let mut seen = vec![false; self.rank];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.rank {
                if !seen[j] && !self.gram.get(i, j).is_zero() {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Formats a root as `a1+2a3`-style text.
    pub fn label(&self, id: usize) -> String {
        let c = self.coeffs(id);
        let neg = c.iter().any(|x| x.is_negative());
        let mut parts = Vec::new();
        for (i, &x) in c.iter().enumerate() {
            let x = x.abs();
            if x == 1 {
                parts.push(format!("a{}", i + 1));
            } else if x > 1 {
                parts.push(format!("{x}a{}", i + 1));
            }
        }
        let s = parts.join("+");
        if neg {
            format!("-({s})")
        } else {
            s
        }
    }
}

/// Positive roots by the string algorithm on coefficient vectors: for a root
/// `b` and a simple root `a_i`, `b + a_i` is a root iff `r - <b, a_i> > 0`
/// where `r` is how far the `a_i`-string extends below `b`.
fn generate_positive(cartan: &[Vec<i64>], l: usize) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    let mut known: std::collections::HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for i in 0..l {
                // <b, a_i> = sum_j c_j <a_j, a_i>
                let pairing: i64 = (0..l).map(|j| b[j] * cartan[j][i]).sum();
                let mut r = 0;
                loop {
                    let mut d = b.clone();
                    d[i] -= r + 1;
                    if d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0) && known.contains(&d) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                if r - pairing > 0 {
                    let mut up = b.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystemReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub num_positive: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
}

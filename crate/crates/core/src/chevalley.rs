//! Compact real forms from Chevalley bases.
//!
//! The complex algebra is only an intermediate: basis `h_i` (simple
//! coroots) and `E_a` for every root, with `[E_a, E_-a]` the coroot of `a`
//! and `[E_a, E_b] = N(a, b) E_{a+b}`. The exposed real basis is
//! `u_i = iH_{a_i}` (Killing-dual of `a_i`), then `A_a = E_a - E_-a` and
//! `B_a = i(E_a + E_-a)` for each positive root, interleaved per root.
//! In this normalization `[A_a, B_a] = (4 / (a, a)) iH_a`, with `(., .)`
//! the Killing product.

use std::collections::HashMap;

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::rational::{fmt_q, q, Q};
use crate::rootsys::RootSystem;

type C = Complex<Q>;

/// Sparse vector: `(basis index, coefficient)` pairs, sorted, no zeros.
pub type Sparse = Vec<(usize, Q)>;

/// Integer structure constants `N(a, b)` on all root pairs whose sum is a root.
#[derive(Debug, Clone)]
pub struct ChevalleyConstants {
    table: HashMap<(usize, usize), i64>,
    /// Extraspecial pairs `(a, b)`, one per non-simple positive root.
    pub extraspecial: Vec<(usize, usize)>,
}

impl ChevalleyConstants {
    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.table.get(&(a, b)).copied()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

struct Builder<'a> {
    rs: &'a RootSystem,
    special: HashMap<(usize, usize), i64>,
}

impl Builder<'_> {
    // Reduces any pair with a root sum to a special pair by the antisymmetry,
    // negation and cyclic rules.
    fn n(&self, a: usize, b: usize) -> i64 {
        let rs = self.rs;
        let (pa, pb) = (rs.is_positive(a), rs.is_positive(b));
        match (pa, pb) {
            (true, true) => {
                if a < b {
                    self.special[&(a, b)]
                } else {
                    -self.special[&(b, a)]
                }
            }
            (false, false) => -self.n(rs.neg(a), rs.neg(b)),
            _ => {
                // a + b + t = 0, and N(a,b)/(t,t) = N(b,t)/(a,a) = N(t,a)/(b,b)
                let t = rs.neg(rs.sum(a, b).expect("caller guarantees a root sum"));
                let (na, nb, nt) = (rs.norm(a), rs.norm(b), rs.norm(t));
                let v = if rs.is_positive(b) == rs.is_positive(t) {
                    q(self.n(b, t)) * nt / na
                } else {
                    q(self.n(t, a)) * nt / nb
                };
                crate::rational::to_i64(&v).expect("structure constants are integers")
            }
        }
    }
}

pub fn chevalley_constants(rs: &RootSystem) -> Result<ChevalleyConstants> {
    let n = rs.num_positive();
    let mut b = Builder { rs, special: HashMap::new() };
    let mut extraspecial = Vec::new();
    // positive roots are already in height order
    for xi in rs.rank..n {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |c| (a, c))).filter(|&(a, c)| rs.sum(a, c) == Some(xi)).collect();
        let Some(&(alpha, beta)) = pairs.first() else {
            return Err(Error::InternalInvariantViolation(format!("no special pair for root {xi}")));
        };
        let (r, _) = rs.root_string(beta, alpha)?;
        b.special.insert((alpha, beta), r + 1);
        extraspecial.push((alpha, beta));
        let n_ab = q(r + 1);
        let xx = rs.norm(xi);
        for &(g, d) in &pairs[1..] {
            let mut acc = Q::zero();
            let (mg, md) = (rs.neg(g), rs.neg(d));
            if let Some(bg) = rs.sum(beta, mg) {
                acc += q(b.n(beta, mg) * b.n(alpha, md)) / rs.norm(bg);
            }
            if let Some(ag) = rs.sum(alpha, mg) {
                acc += q(b.n(mg, alpha) * b.n(beta, md)) / rs.norm(ag);
            }
            let v = xx.clone() / &n_ab * acc;
            let v = crate::rational::to_i64(&v)
                .ok_or_else(|| Error::ConsistencyFailure(format!("non-integral N for pair ({g},{d})")))?;
            b.special.insert((g, d), v);
        }
    }
    let mut table = HashMap::new();
    for a in 0..2 * n {
        for c in 0..2 * n {
            if rs.sum(a, c).is_some() {
                let v = b.n(a, c);
                let (r, _) = rs.root_string(c, a)?;
                if v.abs() != r + 1 {
                    return Err(Error::ConsistencyFailure(format!(
                        "|N({}, {})| = {} but the root string gives {}",
                        rs.label(a),
                        rs.label(c),
                        v.abs(),
                        r + 1
                    )));
                }
                table.insert((a, c), v);
            }
        }
    }
    Ok(ChevalleyConstants { table, extraspecial })
}

/// Label of a real basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisLabel {
    Cartan(usize),
    A(usize),
    B(usize),
}

/// A compact simple Lie algebra with exact structure constants.
#[derive(Debug, Clone)]
pub struct CompactAlgebra {
    pub rs: RootSystem,
    pub constants: ChevalleyConstants,
    /// Killing product is `kill_scale` times the Euclidean one.
    pub kill_scale: Q,
    table: Vec<Vec<Sparse>>,
    /// Negative of the Killing form on the real basis.
    pub killing: Matrix,
    killing_rows: Vec<Sparse>,
}

// Complex intermediate: index i < l is h_i, l + id is E_id.
struct Complexified<'a> {
    rs: &'a RootSystem,
    nc: &'a ChevalleyConstants,
    kappa: Vec<Q>,
}

impl Complexified<'_> {
    fn dim(&self) -> usize {
        self.rs.rank + self.rs.num_roots()
    }

    fn bracket_basis(&self, u: usize, v: usize, coef: &C, out: &mut [C]) {
        let l = self.rs.rank;
        match (u < l, v < l) {
            (true, true) => {}
            (true, false) => {
                let g = v - l;
                let c = self.rs.pairing(g, u);
                out[v] += coef * C::from(q(c));
            }
            (false, true) => {
                let g = u - l;
                let c = self.rs.pairing(g, v);
                out[u] -= coef * C::from(q(c));
            }
            (false, false) => {
                let (a, b) = (u - l, v - l);
                if b == self.rs.neg(a) {
                    // coroot of a in terms of simple coroots
                    let ca = self.rs.coeffs(a);
                    let na = self.rs.norm(a);
                    for i in 0..l {
                        if ca[i] != 0 {
                            let w = q(ca[i]) * self.rs.norm(i) / &na;
                            out[i] += coef * C::from(w);
                        }
                    }
                } else if let Some(s) = self.rs.sum(a, b) {
                    let nab = self.nc.get(a, b).expect("table covers every root sum");
                    out[l + s] += coef * C::from(q(nab));
                }
            }
        }
    }

    fn bracket(&self, x: &[(usize, C)], y: &[(usize, C)]) -> Vec<C> {
        let mut out = vec![C::zero(); self.dim()];
        for (u, cu) in x {
            for (v, cv) in y {
                self.bracket_basis(*u, *v, &(cu * cv), &mut out);
            }
        }
        out
    }

    fn lift(&self, label: BasisLabel) -> Vec<(usize, C)> {
        let l = self.rs.rank;
        let n = self.rs.num_positive();
        let i = C::i();
        match label {
            BasisLabel::Cartan(k) => vec![(k, C::new(Q::zero(), self.kappa[k].clone()))],
            BasisLabel::A(a) => vec![(l + a, C::one()), (l + a + n, -C::one())],
            BasisLabel::B(a) => vec![(l + a, i.clone()), (l + a + n, i)],
        }
    }

    fn descend(&self, z: &[C]) -> Result<Sparse> {
        let l = self.rs.rank;
        let n = self.rs.num_positive();
        let mut out = Vec::new();
        for k in 0..l {
            if !z[k].re.is_zero() {
                return Err(Error::ConsistencyFailure("bracket left the compact form (Cartan)".into()));
            }
            if !z[k].im.is_zero() {
                out.push((k, z[k].im.clone() / &self.kappa[k]));
            }
        }
        for a in 0..n {
            let zp = &z[l + a];
            let zm = &z[l + a + n];
            if *zm != -zp.conj() {
                return Err(Error::ConsistencyFailure("bracket left the compact form (root part)".into()));
            }
            if !zp.re.is_zero() {
                out.push((l + 2 * a, zp.re.clone()));
            }
            if !zp.im.is_zero() {
                out.push((l + 2 * a + 1, zp.im.clone()));
            }
        }
        Ok(out)
    }
}

impl CompactAlgebra {
    pub fn build(rs: &RootSystem) -> Result<Self> {
        let alg = Self::build_unchecked(rs)?;
        alg.jacobi_sweep()?;
        Ok(alg)
    }

    /// Builds without the Jacobi sweep (structure constants are still
    /// checked against root strings).
    pub fn build_unchecked(rs: &RootSystem) -> Result<Self> {
        let nc = chevalley_constants(rs)?;
        let l = rs.rank;
        let kill_scale = rs.killing_scale();
        let kappa: Vec<Q> = (0..l).map(|i| rs.norm(i) * &kill_scale / q(2)).collect();
        let cx = Complexified { rs, nc: &nc, kappa };

        let dim = l + rs.num_roots();
        let labels: Vec<BasisLabel> = (0..dim).map(|u| label_of(l, u)).collect();
        let lifted: Vec<_> = labels.iter().map(|&lb| cx.lift(lb)).collect();
        let rows: Vec<Result<Vec<Sparse>>> = (0..dim)
            .into_par_iter()
            .map(|u| (0..dim).map(|v| cx.descend(&cx.bracket(&lifted[u], &lifted[v]))).collect())
            .collect();
        let table = rows.into_iter().collect::<Result<Vec<_>>>()?;

        let mut alg = Self {
            rs: rs.clone(),
            constants: nc.clone(),
            kill_scale,
            table,
            killing: Matrix::zeros(dim, dim),
            killing_rows: Vec::new(),
        };
        alg.killing = alg.trace_form();
        alg.killing_rows = alg
            .killing
            .data
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
            .collect();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.rs.rank + self.rs.num_roots()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn label(&self, u: usize) -> BasisLabel {
        label_of(self.rs.rank, u)
    }

    pub fn a_index(&self, root: usize) -> usize {
        self.rs.rank + 2 * root
    }

    pub fn b_index(&self, root: usize) -> usize {
        self.rs.rank + 2 * root + 1
    }

    /// Killing product `(a, b)` of two roots.
    pub fn inner_k(&self, a: usize, b: usize) -> Q {
        self.rs.inner(a, b) * &self.kill_scale
    }

    /// `alpha(Y)` for `Y = sum y_i iH_{a_i}`.
    pub fn root_value(&self, root: usize, y: &[Q]) -> Q {
        (0..self.rank()).filter(|&i| !y[i].is_zero()).map(|i| &y[i] * self.inner_k(root, i)).sum()
    }

    pub fn bracket_basis(&self, u: usize, v: usize) -> &Sparse {
        &self.table[u][v]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vector> {
        check_dim(self.dim(), x)?;
        check_dim(self.dim(), y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Q], y: &[Q]) -> Vector {
        let mut out = linalg::zeros(self.dim());
        for (u, xu) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (v, yv) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let t = &self.table[u][v];
                if t.is_empty() {
                    continue;
                }
                let c = xu * yv;
                for (w, cw) in t {
                    out[*w] += &c * cw;
                }
            }
        }
        out
    }

    /// Negative Killing form `B(x, y)`.
    pub fn killing_form(&self, x: &[Q], y: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (u, xu) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (v, b) in &self.killing_rows[u] {
                if !y[*v].is_zero() {
                    acc += xu * b * &y[*v];
                }
            }
        }
        acc
    }

    fn trace_form(&self) -> Matrix {
        let dim = self.dim();
        // ad_u as dense matrix: ad[u][w][z] = c_{uz}^w
        let ad: Vec<Vec<Vec<Q>>> = (0..dim)
            .map(|u| {
                let mut m = vec![linalg::zeros(dim); dim];
                for z in 0..dim {
                    for (w, c) in &self.table[u][z] {
                        m[*w][z] = c.clone();
                    }
                }
                m
            })
            .collect();
        let rows: Vec<Vector> = (0..dim)
            .into_par_iter()
            .map(|u| {
                (0..dim)
                    .map(|v| {
                        let mut tr = Q::zero();
                        for z in 0..dim {
                            for (w, c) in &self.table[u][z] {
                                let d = &ad[v][z][*w];
                                if !d.is_zero() {
                                    tr += c * d;
                                }
                            }
                        }
                        -tr
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    fn bracket_sparse_basis(&self, x: &Sparse, w: usize) -> Vector {
        let mut out = linalg::zeros(self.dim());
        for (u, c) in x {
            for (z, cz) in &self.table[*u][w] {
                out[*z] += c * cz;
            }
        }
        out
    }

    /// Checks the Jacobi identity on every basis triple `u < v < w`.
    pub fn jacobi_sweep(&self) -> Result<usize> {
        let dim = self.dim();
        let bad = (0..dim).into_par_iter().find_map_any(|u| {
            for v in u + 1..dim {
                let uv = &self.table[u][v];
                for w in v + 1..dim {
                    let mut s = self.bracket_sparse_basis(uv, w);
                    let vw = self.bracket_sparse_basis(&self.table[v][w], u);
                    let wu = self.bracket_sparse_basis(&self.table[w][u], v);
                    for k in 0..dim {
                        s[k] += &vw[k] + &wu[k];
                    }
                    if !linalg::is_zero_vec(&s) {
                        return Some((u, v, w));
                    }
                }
            }
            None
        });
        match bad {
            Some((u, v, w)) => Err(Error::ConsistencyFailure(format!("Jacobi identity fails on basis triple ({u}, {v}, {w})"))),
            None => Ok(dim * (dim - 1) * (dim - 2) / 6),
        }
    }

    /// Checks `B([x, y], z) + B(y, [x, z]) = 0` on all basis triples.
    pub fn ad_invariance_sweep(&self) -> Result<usize> {
        let dim = self.dim();
        let bad = (0..dim).into_par_iter().find_map_any(|x| {
            for y in 0..dim {
                for z in y..dim {
                    let mut acc = Q::zero();
                    for (w, c) in &self.table[x][y] {
                        acc += c * self.killing.get(*w, z);
                    }
                    for (w, c) in &self.table[x][z] {
                        acc += c * self.killing.get(y, *w);
                    }
                    if !acc.is_zero() {
                        return Some((x, y, z));
                    }
                }
            }
            None
        });
        match bad {
            Some(t) => Err(Error::ConsistencyFailure(format!("Killing form not ad-invariant on {t:?}"))),
            None => Ok(dim * dim * (dim + 1) / 2),
        }
    }

    pub fn to_report(&self) -> StructureReport {
        let dim = self.dim();
        let mut brackets = Vec::new();
        for u in 0..dim {
            for v in u + 1..dim {
                let t = &self.table[u][v];
                if !t.is_empty() {
                    brackets.push(BracketEntry {
                        u,
                        v,
                        result: t.iter().map(|(w, c)| (*w, fmt_q(c))).collect(),
                    });
                }
            }
        }
        StructureReport {
            labels: (0..dim).map(|u| self.label(u)).collect(),
            brackets,
            killing: self.killing.data.iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
        }
    }
}

fn label_of(l: usize, u: usize) -> BasisLabel {
    if u < l {
        BasisLabel::Cartan(u)
    } else if (u - l).is_multiple_of(2) {
        BasisLabel::A((u - l) / 2)
    } else {
        BasisLabel::B((u - l) / 2)
    }
}

fn check_dim(expected: usize, x: &[Q]) -> Result<()> {
    if x.len() != expected {
        return Err(Error::DimensionMismatch { expected, got: x.len() });
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketEntry {
    pub u: usize,
    pub v: usize,
    pub result: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub labels: Vec<BasisLabel>,
    pub brackets: Vec<BracketEntry>,
    pub killing: Vec<Vec<String>>,
}

/// Direct sum of compact simple algebras, with block-diagonal bracket and
/// Killing form.
#[derive(Debug, Clone)]
pub struct SemisimpleAlgebra {
    pub factors: Vec<CompactAlgebra>,
    pub offsets: Vec<usize>,
    dim: usize,
    cartan_offsets: Vec<usize>,
}

impl SemisimpleAlgebra {
    pub fn direct_sum(factors: Vec<CompactAlgebra>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidTorus("a semisimple algebra needs at least one factor".into()));
        }
        let mut offsets = Vec::new();
        let mut cartan_offsets = Vec::new();
        let (mut off, mut coff) = (0, 0);
        for f in &factors {
            offsets.push(off);
            cartan_offsets.push(coff);
            off += f.dim();
            coff += f.rank();
        }
        Ok(Self { factors, offsets, dim: off, cartan_offsets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Total rank, i.e. dimension of the Cartan subalgebra.
    pub fn rank(&self) -> usize {
        self.factors.iter().map(CompactAlgebra::rank).sum()
    }

    pub fn cartan_offset(&self, j: usize) -> usize {
        self.cartan_offsets[j]
    }

    pub fn range(&self, j: usize) -> std::ops::Range<usize> {
        self.offsets[j]..self.offsets[j] + self.factors[j].dim()
    }

    /// Algebra index of `iH_{a_i}` in factor `j`.
    pub fn cartan_index(&self, j: usize, i: usize) -> usize {
        self.offsets[j] + i
    }

    pub fn a_index(&self, j: usize, root: usize) -> usize {
        self.offsets[j] + self.factors[j].a_index(root)
    }

    pub fn b_index(&self, j: usize, root: usize) -> usize {
        self.offsets[j] + self.factors[j].b_index(root)
    }

    /// Embeds flat Cartan coordinates (factor blocks concatenated) into `g`.
    pub fn cartan_vector(&self, coords: &[Q]) -> Vector {
        let mut v = linalg::zeros(self.dim);
        for j in 0..self.num_factors() {
            for i in 0..self.factors[j].rank() {
                v[self.cartan_index(j, i)] = coords[self.cartan_offsets[j] + i].clone();
            }
        }
        v
    }

    /// Flat Cartan coordinates of a vector (ignores root components).
    pub fn cartan_coords(&self, x: &[Q]) -> Vector {
        (0..self.num_factors())
            .flat_map(|j| (0..self.factors[j].rank()).map(move |i| (j, i)))
            .map(|(j, i)| x[self.cartan_index(j, i)].clone())
            .collect()
    }

    /// The block of `x` living in factor `j`, as a factor-local vector.
    pub fn block(&self, j: usize, x: &[Q]) -> Vector {
        x[self.range(j)].to_vec()
    }

    /// `pi_j(x)` as a vector in `g`.
    pub fn project(&self, j: usize, x: &[Q]) -> Result<Vector> {
        if j >= self.num_factors() {
            return Err(Error::BadFactorIndex { index: j, count: self.num_factors() });
        }
        check_dim(self.dim, x)?;
        let mut out = linalg::zeros(self.dim);
        for k in self.range(j) {
            out[k] = x[k].clone();
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vector> {
        check_dim(self.dim, x)?;
        check_dim(self.dim, y)?;
        Ok(self.br(x, y))
    }

    /// Bracket without the shape check.
    pub fn br(&self, x: &[Q], y: &[Q]) -> Vector {
        let mut out = Vec::with_capacity(self.dim);
        for (j, f) in self.factors.iter().enumerate() {
            let r = self.range(j);
            let (xj, yj) = (&x[r.clone()], &y[r]);
            if linalg::is_zero_vec(xj) || linalg::is_zero_vec(yj) {
                out.extend(linalg::zeros(f.dim()));
            } else {
                out.extend(f.bracket_unchecked(xj, yj));
            }
        }
        out
    }

    pub fn killing_form(&self, x: &[Q], y: &[Q]) -> Q {
        self.factors
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let r = self.range(j);
                f.killing_form(&x[r.clone()], &y[r])
            })
            .sum()
    }

    /// `sum_j mu_j B|_{g_j}`.
    pub fn scaled_killing(&self, mu: &[Q], x: &[Q], y: &[Q]) -> Q {
        self.factors
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let r = self.range(j);
                &mu[j] * f.killing_form(&x[r.clone()], &y[r])
            })
            .sum()
    }

    /// Full Killing matrix (block diagonal).
    pub fn killing_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (j, f) in self.factors.iter().enumerate() {
            let o = self.offsets[j];
            for u in 0..f.dim() {
                for v in 0..f.dim() {
                    m.set(o + u, o + v, f.killing.get(u, v).clone());
                }
            }
        }
        m
    }

    /// Which factor a basis index belongs to.
    pub fn factor_of(&self, k: usize) -> usize {
        (0..self.num_factors()).rev().find(|&j| self.offsets[j] <= k).unwrap()
    }

    /// Basis vector `e_k` of `g`.
    pub fn basis(&self, k: usize) -> Vector {
        linalg::unit(self.dim, k)
    }

    /// Value of `alpha` (root of factor `j`) on the Cartan part of `x`.
    pub fn root_value(&self, j: usize, root: usize, x: &[Q]) -> Q {
        let f = &self.factors[j];
        let y: Vec<Q> = (0..f.rank()).map(|i| x[self.cartan_index(j, i)].clone()).collect();
        f.root_value(root, &y)
    }

    /// `ad_x` as a matrix on `g` (column `k` is `[x, e_k]`).
    pub fn ad_matrix(&self, x: &[Q]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|k| self.br(x, &self.basis(k))).collect();
        Matrix::from_cols(&cols, self.dim)
    }
}

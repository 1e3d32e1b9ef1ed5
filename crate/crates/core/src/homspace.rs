//! Homogeneous spaces `G/S` with `S` a torus inside a fixed maximal torus.
//!
//! The tangent space `m` (the Killing complement of `s`) is split as
//! `s' + p_1 + ... + p_k + q_1 + ... + q_k`:
//!
//! * `f = t_1 + ... + t_k` collects the centers of the isotropy factors,
//!   and `s'` is the complement of `s` in `f`;
//! * `p_j` is `t'_j` plus the root planes of roots of `g_j` vanishing on `s`;
//! * `q_j` is the sum of the remaining root planes of `g_j`.
//!
//! The basis of `m` is Killing-orthogonal, so coordinates of `x` in `m` are
//! `B(x, e_a) / B(e_a, e_a)`.

use std::ops::Range;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::SemisimpleAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::rational::{fmt_q, q, Q};

/// Choice of the order used to break ties among roots vanishing on `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tiebreak {
    /// Root height: recovers the standard positive system whenever `s` is dominant.
    Height,
    /// Value on the vector with `a_i(tau) = base^i`.
    Powers(i64),
}

/// Adapted positive system of one simple factor.
#[derive(Debug, Clone)]
pub struct Adaptation {
    pub tiebreak: Tiebreak,
    /// Root ids of the factor's root system that are positive in the new order.
    pub positive: Vec<usize>,
    /// New simple roots, as root ids.
    pub simple: Vec<usize>,
    /// Simple roots vanishing on `s`.
    pub pi_k: Vec<usize>,
    /// Simple roots not vanishing on `s` (the painted nodes).
    pub pi_m: Vec<usize>,
}

fn root_key(alg: &SemisimpleAlgebra, j: usize, s: &[Vector], tb: Tiebreak, r: usize) -> Vec<Q> {
    let rs = &alg.factors[j].rs;
    let mut key: Vec<Q> = s.iter().map(|x| alg.root_value(j, r, x)).collect();
    let c = rs.coeffs(r);
    key.push(match tb {
        Tiebreak::Height => q(c.iter().sum()),
        Tiebreak::Powers(base) => {
            let mut acc = Q::zero();
            let mut w = q(1);
            for ci in c {
                acc += q(ci) * &w;
                w *= q(base);
            }
            acc
        }
    });
    key
}

fn lex_positive(key: &[Q]) -> Option<bool> {
    key.iter().find(|x| !x.is_zero()).map(|x| x.is_positive())
}

fn adapt_factor(alg: &SemisimpleAlgebra, j: usize, s: &[Vector], tb: Tiebreak) -> Result<Adaptation> {
    let rs = &alg.factors[j].rs;
    let fail = |msg: String| Error::AdaptationFailure(format!("factor {}: {msg}", j + 1));
    let mut positive = Vec::new();
    for r in 0..rs.num_roots() {
        match lex_positive(&root_key(alg, j, s, tb, r)) {
            Some(true) => positive.push(r),
            Some(false) => {}
            None => return Err(fail(format!("tiebreaker vanishes on root {}", rs.label(r)))),
        }
    }
    let is_pos: std::collections::HashSet<usize> = positive.iter().copied().collect();
    let simple: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&r| !positive.iter().any(|&b| rs.combine(r, -1, b).is_some_and(|d| is_pos.contains(&d))))
        .collect();
    if simple.len() != rs.rank {
        return Err(fail(format!("found {} simple roots, expected {}", simple.len(), rs.rank)));
    }
    let vanishes = |r: usize| s.iter().all(|x| alg.root_value(j, r, x).is_zero());
    let (pi_k, pi_m): (Vec<usize>, Vec<usize>) = simple.iter().partition(|&&r| vanishes(r));

    // every root vanishing on s must be a same-signed integer combination of pi_k
    let basis: Vec<Vector> = pi_k.iter().map(|&r| rs.coeffs(r).into_iter().map(q).collect()).collect();
    for r in 0..rs.num_positive() {
        if !vanishes(r) {
            continue;
        }
        let target: Vector = rs.coeffs(r).into_iter().map(q).collect();
        let Some(c) = linalg::coords_in_span(&basis, &target) else {
            return Err(fail(format!("root {} not in the span of the vanishing simple roots", rs.label(r))));
        };
        let integral = c.iter().all(|x| x.is_integer());
        let same_sign = c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive());
        if !integral || !same_sign {
            return Err(fail(format!("root {} has mixed coordinates over the vanishing simple roots", rs.label(r))));
        }
    }
    Ok(Adaptation { tiebreak: tb, positive, simple, pi_k, pi_m })
}

/// Adapts each factor's positive system to `s` (given as vectors in `g`).
/// Falls back to the powers-of-a-base tiebreaker if the height one fails.
pub fn adapt_base(alg: &SemisimpleAlgebra, s: &[Vector]) -> Result<Vec<Adaptation>> {
    (0..alg.num_factors())
        .map(|j| adapt_factor(alg, j, s, Tiebreak::Height).or_else(|_| adapt_factor(alg, j, s, Tiebreak::Powers(1000))))
        .collect()
}

/// Which summand of `m` a basis vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Piece {
    SPrime,
    P(usize),
    Q(usize),
}

#[derive(Debug, Clone)]
pub struct FactorPieces {
    pub adaptation: Adaptation,
    /// Positive roots (original order) vanishing on `s`.
    pub rk_plus: Vec<usize>,
    pub rm_plus: Vec<usize>,
    /// Center of `k_j`, as vectors in `g`.
    pub t: Vec<Vector>,
    /// Killing-orthogonal basis of `t'_j`, as vectors in `g`.
    pub t_prime: Vec<Vector>,
}

#[derive(Debug, Clone)]
pub struct SpaceGS {
    pub alg: SemisimpleAlgebra,
    /// Flat Cartan coordinates of the torus basis.
    pub torus: Vec<Vector>,
    pub s_basis: Vec<Vector>,
    pub factors: Vec<FactorPieces>,
    pub f_basis: Vec<Vector>,
    pub m_basis: Vec<Vector>,
    /// Diagonal of the Killing Gram matrix of `m_basis`.
    pub m_gram: Vec<Q>,
    pub m_labels: Vec<String>,
    pub m_pieces: Vec<Piece>,
    pub sprime: Range<usize>,
    pub p: Vec<Range<usize>>,
    pub q: Vec<Range<usize>>,
    /// `ad_xi` restricted to `m`, in `m` coordinates, one per torus basis vector.
    pub ad_s: Vec<Matrix>,
}

fn cartan_kernel(alg: &SemisimpleAlgebra, j: usize, roots: &[usize]) -> Vec<Vector> {
    let f = &alg.factors[j];
    let l = f.rank();
    if roots.is_empty() {
        return (0..l).map(|i| linalg::unit(l, i)).collect();
    }
    let rows = roots.iter().map(|&r| (0..l).map(|i| f.inner_k(r, i)).collect()).collect();
    Matrix::from_rows(rows).kernel()
}

impl SpaceGS {
    /// Builds `G/S` from torus basis vectors in flat Cartan coordinates.
    pub fn build(alg: SemisimpleAlgebra, torus: Vec<Vector>) -> Result<Self> {
        let rank = alg.rank();
        for (k, v) in torus.iter().enumerate() {
            if v.len() != rank {
                return Err(Error::InvalidTorus(format!(
                    "torus vector {} has {} coordinates, the Cartan has dimension {rank}",
                    k + 1,
                    v.len()
                )));
            }
        }
        if linalg::rank_of(&torus) != torus.len() {
            return Err(Error::InvalidTorus("torus basis vectors are linearly dependent".into()));
        }
        let s_basis: Vec<Vector> = torus.iter().map(|c| alg.cartan_vector(c)).collect();
        let adaptations = adapt_base(&alg, &s_basis)?;
        let dim = alg.dim();
        let form = |x: &[Q], y: &[Q]| alg.killing_form(x, y);

        let mut factors = Vec::new();
        for (j, ad) in adaptations.into_iter().enumerate() {
            let rs = &alg.factors[j].rs;
            let vanishes = |r: usize| s_basis.iter().all(|x| alg.root_value(j, r, x).is_zero());
            let (rk_plus, rm_plus): (Vec<usize>, Vec<usize>) = (0..rs.num_positive()).partition(|&r| vanishes(r));
            let embed = |y: &[Q]| {
                let mut v = linalg::zeros(dim);
                for (i, c) in y.iter().enumerate() {
                    v[alg.cartan_index(j, i)] = c.clone();
                }
                v
            };
            let t: Vec<Vector> = cartan_kernel(&alg, j, &ad.pi_k).iter().map(|y| embed(y)).collect();
            let tp: Vec<Vector> =
                ad.pi_k.iter().map(|&r| embed(&rs.coeffs(r).into_iter().map(q).collect::<Vec<_>>())).collect();
            let t_prime = linalg::gram_schmidt(&tp, form);
            factors.push(FactorPieces { adaptation: ad, rk_plus, rm_plus, t, t_prime });
        }

        let f_basis: Vec<Vector> = factors.iter().flat_map(|f| f.t.iter().cloned()).collect();
        for (k, s) in s_basis.iter().enumerate() {
            if linalg::coords_in_span(&f_basis, s).is_none() {
                return Err(Error::InternalInvariantViolation(format!("torus vector {} is not in f", k + 1)));
            }
        }
        // s' = { x in f : B(x, s) = 0 }
        let rows: Vec<Vector> = s_basis.iter().map(|s| f_basis.iter().map(|f| form(f, s)).collect()).collect();
        let combos = if rows.is_empty() {
            (0..f_basis.len()).map(|i| linalg::unit(f_basis.len(), i)).collect()
        } else {
            Matrix::from_rows(rows).kernel()
        };
        let sp_raw: Vec<Vector> = combos
            .iter()
            .map(|c| {
                let mut v = linalg::zeros(dim);
                for (a, fa) in c.iter().zip(&f_basis) {
                    linalg::axpy(&mut v, a, fa);
                }
                v
            })
            .collect();
        let sprime_vecs = linalg::gram_schmidt(&sp_raw, form);

        let mut m_basis = Vec::new();
        let mut m_labels = Vec::new();
        let mut m_pieces = Vec::new();
        for (i, v) in sprime_vecs.into_iter().enumerate() {
            m_basis.push(v);
            m_labels.push(format!("s'[{i}]"));
            m_pieces.push(Piece::SPrime);
        }
        let sprime = 0..m_basis.len();
        let mut p = Vec::new();
        for (j, fp) in factors.iter().enumerate() {
            let start = m_basis.len();
            for (i, v) in fp.t_prime.iter().enumerate() {
                m_basis.push(v.clone());
                m_labels.push(format!("t'_{}[{i}]", j + 1));
                m_pieces.push(Piece::P(j));
            }
            for &r in &fp.rk_plus {
                push_root_plane(&alg, j, r, Piece::P(j), &mut m_basis, &mut m_labels, &mut m_pieces);
            }
            p.push(start..m_basis.len());
        }
        let mut qr = Vec::new();
        for (j, fp) in factors.iter().enumerate() {
            let start = m_basis.len();
            for &r in &fp.rm_plus {
                push_root_plane(&alg, j, r, Piece::Q(j), &mut m_basis, &mut m_labels, &mut m_pieces);
            }
            qr.push(start..m_basis.len());
        }

        let n = m_basis.len();
        if n != dim - s_basis.len() {
            return Err(Error::InternalInvariantViolation(format!(
                "dim m = {n}, expected {} - {}",
                dim,
                s_basis.len()
            )));
        }
        let m_gram: Vec<Q> = m_basis.iter().map(|v| form(v, v)).collect();
        let bad_pair = (0..n).into_par_iter().find_map_any(|a| {
            (a + 1..n)
                .find(|&b| !form(&m_basis[a], &m_basis[b]).is_zero())
                .map(|b| (a, b))
                .or_else(|| s_basis.iter().any(|s| !form(&m_basis[a], s).is_zero()).then_some((a, a)))
        });
        if let Some((a, b)) = bad_pair {
            return Err(Error::InternalInvariantViolation(format!(
                "pieces not Killing-orthogonal at {} / {}",
                m_labels[a], m_labels[b]
            )));
        }

        let mut space = Self {
            alg,
            torus,
            s_basis,
            factors,
            f_basis,
            m_basis,
            m_gram,
            m_labels,
            m_pieces,
            sprime,
            p,
            q: qr,
            ad_s: Vec::new(),
        };
        space.ad_s = space.s_basis.iter().map(|z| space.restricted_ad(z)).collect::<Result<Vec<_>>>()?;
        space.check_centralizer()?;
        space.check_k_preserves_q()?;
        Ok(space)
    }

    pub fn dim_m(&self) -> usize {
        self.m_basis.len()
    }

    pub fn dim_s(&self) -> usize {
        self.s_basis.len()
    }

    pub fn num_factors(&self) -> usize {
        self.alg.num_factors()
    }

    /// Coordinates over the `m` basis of the Killing projection of `x` to `m`.
    pub fn to_m(&self, x: &[Q]) -> Vector {
        self.m_basis.iter().zip(&self.m_gram).map(|(e, g)| self.alg.killing_form(x, e) / g).collect()
    }

    pub fn from_m(&self, c: &[Q]) -> Vector {
        let mut v = linalg::zeros(self.alg.dim());
        for (a, e) in c.iter().zip(&self.m_basis) {
            linalg::axpy(&mut v, a, e);
        }
        v
    }

    /// Whether `x` lies in `m` (is Killing-orthogonal to `s`).
    pub fn in_m(&self, x: &[Q]) -> bool {
        self.s_basis.iter().all(|s| self.alg.killing_form(x, s).is_zero())
    }

    /// Coordinates of `x` over the torus basis, if `x` lies in `s`.
    pub fn to_s(&self, x: &[Q]) -> Option<Vector> {
        linalg::coords_in_span(&self.s_basis, x)
    }

    pub fn from_s(&self, c: &[Q]) -> Vector {
        let mut v = linalg::zeros(self.alg.dim());
        for (a, e) in c.iter().zip(&self.s_basis) {
            linalg::axpy(&mut v, a, e);
        }
        v
    }

    fn restricted_ad(&self, z: &[Q]) -> Result<Matrix> {
        let n = self.dim_m();
        let mut m = Matrix::zeros(n, n);
        for b in 0..n {
            let y = self.alg.br(z, &self.m_basis[b]);
            let c = self.to_m(&y);
            if self.from_m(&c) != y {
                return Err(Error::InternalInvariantViolation(format!("[s, {}] leaves m", self.m_labels[b])));
            }
            for a in 0..n {
                m.set(a, b, c[a].clone());
            }
        }
        Ok(m)
    }

    /// Basis of the isotropy algebra `k_j` of factor `j` (as vectors in `g`):
    /// the Cartan of `g_j` plus root planes of roots vanishing on `s`.
    pub fn k_factor_basis(&self, j: usize) -> Vec<Vector> {
        let dim = self.alg.dim();
        let f = &self.alg.factors[j];
        let mut out: Vec<Vector> = (0..f.rank()).map(|i| linalg::unit(dim, self.alg.cartan_index(j, i))).collect();
        for &r in &self.factors[j].rk_plus {
            out.push(linalg::unit(dim, self.alg.a_index(j, r)));
            out.push(linalg::unit(dim, self.alg.b_index(j, r)));
        }
        out
    }

    /// Basis of `k = C_g(s)`.
    pub fn k_basis(&self) -> Vec<Vector> {
        (0..self.num_factors()).flat_map(|j| self.k_factor_basis(j)).collect()
    }

    /// Killing-orthogonal basis of `q_j` as vectors in `g`.
    pub fn q_basis(&self, j: usize) -> Vec<Vector> {
        self.m_basis[self.q[j].clone()].to_vec()
    }

    /// Basis of `p = s' + p_1 + ... + p_k` as vectors in `g`, with the
    /// corresponding `m` indices.
    pub fn p_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self.sprime.clone().collect();
        for r in &self.p {
            idx.extend(r.clone());
        }
        idx
    }

    /// `pi_j(x)`.
    pub fn project(&self, j: usize, x: &[Q]) -> Result<Vector> {
        self.alg.project(j, x)
    }

    /// Splits `m` coordinates into the `s'`, `p_j` and `q_j` parts.
    pub fn components(&self, j: usize, c: &[Q]) -> Result<(Vector, Vector, Vector)> {
        if j >= self.num_factors() {
            return Err(Error::BadFactorIndex { index: j, count: self.num_factors() });
        }
        if c.len() != self.dim_m() {
            return Err(Error::DimensionMismatch { expected: self.dim_m(), got: c.len() });
        }
        Ok((c[self.sprime.clone()].to_vec(), c[self.p[j].clone()].to_vec(), c[self.q[j].clone()].to_vec()))
    }

    // The kernel of ad_s on g has the dimension of k, and k commutes with s.
    fn check_centralizer(&self) -> Result<()> {
        let k = self.k_basis();
        for (i, y) in k.iter().enumerate() {
            for z in &self.s_basis {
                if !linalg::is_zero_vec(&self.alg.br(y, z)) {
                    return Err(Error::InternalInvariantViolation(format!("k basis vector {i} does not centralize s")));
                }
            }
        }
        let dim = self.alg.dim();
        let mut rows = Vec::new();
        for z in &self.s_basis {
            rows.extend(self.alg.ad_matrix(z).data);
        }
        let kernel_dim = if rows.is_empty() { dim } else { dim - Matrix::from_rows(rows).rank() };
        if kernel_dim != k.len() {
            return Err(Error::InternalInvariantViolation(format!(
                "centralizer of s has dimension {kernel_dim}, root count predicts {}",
                k.len()
            )));
        }
        Ok(())
    }

    fn check_k_preserves_q(&self) -> Result<()> {
        for j in 0..self.num_factors() {
            let q_idx: Vec<usize> = self.factors[j]
                .rm_plus
                .iter()
                .flat_map(|&r| [self.alg.a_index(j, r), self.alg.b_index(j, r)])
                .collect();
            for y in self.k_factor_basis(j) {
                for &w in &q_idx {
                    let z = self.alg.br(&y, &linalg::unit(self.alg.dim(), w));
                    if let Some((bad, _)) = z.iter().enumerate().find(|(i, c)| !c.is_zero() && !q_idx.contains(i)) {
                        return Err(Error::InternalInvariantViolation(format!(
                            "[k_{}, q_{}] has a component on basis index {bad}",
                            j + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn report(&self) -> SpaceReport {
        SpaceReport {
            factors: self
                .alg
                .factors
                .iter()
                .zip(&self.factors)
                .enumerate()
                .map(|(j, (f, fp))| FactorReport {
                    type_label: f.rs.type_label.label().to_string(),
                    rank: f.rank(),
                    pi_k: fp.adaptation.pi_k.iter().map(|&r| f.rs.coeffs(r)).collect(),
                    pi_m: fp.adaptation.pi_m.iter().map(|&r| f.rs.coeffs(r)).collect(),
                    rk_plus: fp.rk_plus.iter().map(|&r| f.rs.coeffs(r)).collect(),
                    dim_t: fp.t.len(),
                    dim_t_prime: fp.t_prime.len(),
                    dim_p: self.p[j].len(),
                    dim_q: self.q[j].len(),
                })
                .collect(),
            dim_g: self.alg.dim(),
            dim_s: self.dim_s(),
            dim_m: self.dim_m(),
            dim_f: self.f_basis.len(),
            dim_sprime: self.sprime.len(),
            torus: self.torus.iter().map(|v| v.iter().map(fmt_q).collect()).collect(),
            m_labels: self.m_labels.clone(),
        }
    }
}

fn push_root_plane(
    alg: &SemisimpleAlgebra,
    j: usize,
    r: usize,
    piece: Piece,
    basis: &mut Vec<Vector>,
    labels: &mut Vec<String>,
    pieces: &mut Vec<Piece>,
) {
    let name = alg.factors[j].rs.label(r);
    for (k, tag) in [(alg.a_index(j, r), "A"), (alg.b_index(j, r), "B")] {
        basis.push(linalg::unit(alg.dim(), k));
        labels.push(format!("{tag}_{}({name})", j + 1));
        pieces.push(piece);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub pi_k: Vec<Vec<i64>>,
    pub pi_m: Vec<Vec<i64>>,
    pub rk_plus: Vec<Vec<i64>>,
    pub dim_t: usize,
    pub dim_t_prime: usize,
    pub dim_p: usize,
    pub dim_q: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpaceReport {
    pub factors: Vec<FactorReport>,
    pub dim_g: usize,
    pub dim_s: usize,
    pub dim_m: usize,
    pub dim_f: usize,
    pub dim_sprime: usize,
    pub torus: Vec<Vec<String>>,
    pub m_labels: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::CompactAlgebra;
    use crate::rootsys::{RootSystem, RootType};

    pub(crate) fn algebra(spec: &[(RootType, usize)]) -> SemisimpleAlgebra {
        let fs = spec.iter().map(|&(t, l)| CompactAlgebra::build(&RootSystem::build(t, l).unwrap()).unwrap()).collect();
        SemisimpleAlgebra::direct_sum(fs).unwrap()
    }

    #[test]
    fn trivial_torus_is_lie_group() {
        let g = algebra(&[(RootType::A, 2)]);
        let sp = SpaceGS::build(g, vec![]).unwrap();
        assert_eq!(sp.dim_m(), 8);
        assert_eq!(sp.factors[0].adaptation.pi_k.len(), 2);
        assert_eq!(sp.q[0].len(), 0);
        assert_eq!(sp.sprime.len(), 0);
    }

    #[test]
    fn full_cartan_gives_full_flag() {
        let g = algebra(&[(RootType::A, 1)]);
        let sp = SpaceGS::build(g, vec![vec![q(1)]]).unwrap();
        assert_eq!((sp.dim_m(), sp.p[0].len(), sp.q[0].len(), sp.sprime.len()), (2, 0, 2, 0));
        assert!(sp.factors[0].adaptation.pi_k.is_empty());
    }

    #[test]
    fn diagonal_torus_in_a1_a1() {
        let g = algebra(&[(RootType::A, 1), (RootType::A, 1)]);
        let sp = SpaceGS::build(g, vec![vec![q(1), q(1)]]).unwrap();
        assert_eq!(sp.dim_m(), 5);
        assert_eq!(sp.sprime.len(), 1);
        assert_eq!((sp.p[0].len(), sp.p[1].len()), (0, 0));
        assert_eq!(sp.q[0].len() + sp.q[1].len(), 4);
    }

    #[test]
    fn b3_center_torus() {
        let g = algebra(&[(RootType::B, 3)]);
        let sp = SpaceGS::build(g, vec![vec![q(1), q(2), q(3)]]).unwrap();
        assert_eq!(sp.dim_m(), 20);
        assert_eq!((sp.sprime.len(), sp.p[0].len(), sp.q[0].len()), (0, 8, 12));
        let ad = &sp.factors[0].adaptation;
        assert_eq!(ad.pi_k, vec![0, 1]);
        assert_eq!(sp.factors[0].rk_plus, vec![0, 1, 3]);
    }

    #[test]
    fn non_dominant_torus_adapts() {
        // a1 - a2 direction in A2 with s vanishing on a non-simple root
        let g = algebra(&[(RootType::A, 2)]);
        let sp = SpaceGS::build(g, vec![vec![q(1), q(-1)]]).unwrap();
        let ad = &sp.factors[0].adaptation;
        assert_eq!(ad.pi_k.len(), 1);
        assert_eq!(sp.alg.factors[0].rs.coeffs(ad.pi_k[0]).iter().map(|c| c.abs()).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(sp.factors[0].rk_plus, vec![2]);
    }

    #[test]
    fn rejects_bad_tori() {
        let g = algebra(&[(RootType::A, 2)]);
        assert!(matches!(SpaceGS::build(g.clone(), vec![vec![q(1)]]), Err(Error::InvalidTorus(_))));
        assert!(matches!(
            SpaceGS::build(g, vec![vec![q(1), q(0)], vec![q(2), q(0)]]),
            Err(Error::InvalidTorus(_))
        ));
    }

    #[test]
    fn projections_are_homomorphisms() {
        let g = algebra(&[(RootType::A, 1), (RootType::A, 1)]);
        let sp = SpaceGS::build(g, vec![vec![q(1), q(1)]]).unwrap();
        let x: Vector = [1, -2, 3, 0, 5, -1].iter().map(|&v| q(v)).collect();
        let y: Vector = [2, 1, 0, -3, 1, 4].iter().map(|&v| q(v)).collect();
        for j in 0..2 {
            let lhs = sp.project(j, &sp.alg.br(&x, &y)).unwrap();
            let rhs = sp.alg.br(&sp.project(j, &x).unwrap(), &sp.project(j, &y).unwrap());
            assert_eq!(lhs, rhs);
            for s in &sp.s_basis {
                let ps = sp.project(j, s).unwrap();
                assert!(linalg::coords_in_span(&sp.factors[j].t, &ps).is_some());
            }
        }
        assert!(matches!(sp.project(2, &x), Err(Error::BadFactorIndex { .. })));
    }
}

//! Metric endomorphisms on `m` and the geodesic orbit, natural reductivity
//! and normality deciders.
//!
//! A metric is stored as the matrix of its endomorphism `A` over the basis
//! of `m` held by [`SpaceGS`]: column `b` holds the coordinates of `A e_b`.
//! That basis is Killing-orthogonal but not normalized, so `A` is
//! `B`-symmetric when `G M` is symmetric, with `G` the diagonal Gram matrix.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::SemisimpleAlgebra;
use crate::error::{Error, Result};
use crate::homspace::SpaceGS;
use crate::linalg::{self, IncrementalSolver, Matrix, Vector};
use crate::rational::{fmt_q, fmt_rows, fmt_vec, q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricEndo {
    pub m: Matrix,
}

impl MetricEndo {
    /// Wraps an operator matrix after checking symmetry, positivity and
    /// equivariance under the torus.
    pub fn new(space: &SpaceGS, m: Matrix) -> Result<Self> {
        validate(space, &m)?;
        Ok(Self { m })
    }

    /// The standard metric `A = Id`.
    pub fn standard(space: &SpaceGS) -> Self {
        Self { m: Matrix::identity(space.dim_m()) }
    }

    /// `A e_b` as a vector in `g`.
    pub fn image(&self, space: &SpaceGS, b: usize) -> Vector {
        space.from_m(&self.m.col(b))
    }

    /// `A x` for `x` given in `m` coordinates, returned as a vector in `g`.
    pub fn apply(&self, space: &SpaceGS, x: &[Q]) -> Vector {
        space.from_m(&self.m.apply(x))
    }
}

fn validate(space: &SpaceGS, m: &Matrix) -> Result<()> {
    let n = space.dim_m();
    if m.rows != n || m.cols != n {
        return Err(Error::DimensionMismatch { expected: n, got: if m.rows != n { m.rows } else { m.cols } });
    }
    let g = &space.m_gram;
    let gm = Matrix::from_rows((0..n).map(|a| (0..n).map(|b| &g[a] * m.get(a, b)).collect()).collect());
    for a in 0..n {
        for b in a + 1..n {
            if gm.get(a, b) != gm.get(b, a) {
                return Err(Error::InvariantViolation(format!(
                    "metric is not B-symmetric at ({}, {})",
                    space.m_labels[a], space.m_labels[b]
                )));
            }
        }
    }
    if !gm.is_positive_definite() {
        return Err(Error::NotPositiveDefinite("metric endomorphism".into()));
    }
    for (k, d) in space.ad_s.iter().enumerate() {
        let diff = m.mul(d).sub(&d.mul(m));
        if let Some((a, b)) = first_nonzero(&diff) {
            return Err(Error::InvariantViolation(format!(
                "metric does not commute with ad of torus vector {} at ({}, {})",
                k + 1,
                space.m_labels[a],
                space.m_labels[b]
            )));
        }
    }
    Ok(())
}

fn first_nonzero(m: &Matrix) -> Option<(usize, usize)> {
    (0..m.rows).find_map(|a| (0..m.cols).find(|&b| !m.get(a, b).is_zero()).map(|b| (a, b)))
}

/// `diag(A|s', lambda_1 Id on p_1 + q_1, ..., lambda_k Id on p_k + q_k)`.
pub fn block_metric(space: &SpaceGS, lambda_sprime: &Matrix, lambdas: &[Q]) -> Result<MetricEndo> {
    let ds = space.sprime.len();
    if lambda_sprime.rows != ds || lambda_sprime.cols != ds {
        return Err(Error::DimensionMismatch { expected: ds, got: lambda_sprime.rows });
    }
    if lambdas.len() != space.num_factors() {
        return Err(Error::DimensionMismatch { expected: space.num_factors(), got: lambdas.len() });
    }
    if let Some(j) = lambdas.iter().position(|l| !l.is_positive()) {
        return Err(Error::NotPositiveDefinite(format!("lambda_{} = {} is not positive", j + 1, fmt_q(&lambdas[j]))));
    }
    let n = space.dim_m();
    let mut m = Matrix::zeros(n, n);
    for a in 0..ds {
        for b in 0..ds {
            m.set(space.sprime.start + a, space.sprime.start + b, lambda_sprime.get(a, b).clone());
        }
    }
    for (j, l) in lambdas.iter().enumerate() {
        for b in space.p[j].clone().chain(space.q[j].clone()) {
            m.set(b, b, l.clone());
        }
    }
    MetricEndo::new(space, m)
}

/// Certificate-bearing answer of the linear geodesic graph decider.
#[derive(Debug, Clone)]
pub enum GoVerdict {
    /// `xi` is a `dim s x dim m` matrix: column `b` holds the torus
    /// coordinates of `xi(e_b)`.
    Go { xi: Matrix, nullity: usize },
    NotGo { residue: String, witness: Option<Vector> },
}

impl GoVerdict {
    pub fn is_go(&self) -> bool {
        matches!(self, GoVerdict::Go { .. })
    }

    pub fn report(&self) -> GoReport {
        match self {
            GoVerdict::Go { xi, nullity } => GoReport {
                verdict: "GO".into(),
                xi: Some(fmt_rows(&xi.data)),
                nullity: Some(*nullity),
                residue: None,
                witness: None,
            },
            GoVerdict::NotGo { residue, witness } => GoReport {
                verdict: "NOT_GO".into(),
                xi: None,
                nullity: None,
                residue: Some(residue.clone()),
                witness: witness.as_ref().map(|w| fmt_vec(w)),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GoReport {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nullity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

// coefficients, right-hand side, pair (i, j) and component of g
type TaggedRow = (Vector, Q, usize, usize, usize);

/// Decides whether a linear `ad_s`-equivariant map `xi: m -> s` with
/// `[xi(X) + X, AX] = 0` for all `X` exists, through the polarized system
/// `[xi(e_i) + e_i, A e_j] + [xi(e_j) + e_j, A e_i] = 0` over basis pairs.
pub fn is_go_linear(space: &SpaceGS, a: &MetricEndo) -> GoVerdict {
    is_go_linear_seeded(space, a, 0, 200)
}

/// [`is_go_linear`] with the seed and random sample count of the witness
/// search on `NOT_GO` made explicit.
pub fn is_go_linear_seeded(space: &SpaceGS, a: &MetricEndo, seed: u64, samples: usize) -> GoVerdict {
    let n = space.dim_m();
    let d = space.dim_s();
    let alg = &space.alg;
    let nvars = d * n;
    let var = |k: usize, i: usize| k * n + i;
    let ae: Vec<Vector> = (0..n).map(|b| a.image(space, b)).collect();
    let p: Vec<Vec<Vector>> = space.s_basis.iter().map(|s| ae.iter().map(|y| alg.br(s, y)).collect()).collect();

    let mut solver = IncrementalSolver::new(nvars);
    // xi([z, e_i]) = [z, xi(e_i)] = 0 since s is abelian
    for dz in &space.ad_s {
        for i in 0..n {
            for k in 0..d {
                let mut row = linalg::zeros(nvars);
                for b in 0..n {
                    if !dz.get(b, i).is_zero() {
                        row[var(k, b)] = dz.get(b, i).clone();
                    }
                }
                if !linalg::is_zero_vec(&row) {
                    solver.add(&row, &Q::zero(), usize::MAX).expect("homogeneous equations are consistent");
                }
            }
        }
    }

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let chunk = 64;
    for block in pairs.chunks(chunk) {
        let eqs: Vec<Vec<TaggedRow>> = block
            .par_iter()
            .map(|&(i, j)| {
                let ei = &space.m_basis[i];
                let ej = &space.m_basis[j];
                let rhs = linalg::add(&alg.br(ei, &ae[j]), &alg.br(ej, &ae[i]));
                let mut out = Vec::new();
                for w in 0..alg.dim() {
                    let mut row = linalg::zeros(nvars);
                    for k in 0..d {
                        if !p[k][j][w].is_zero() {
                            row[var(k, i)] += &p[k][j][w];
                        }
                        if !p[k][i][w].is_zero() {
                            row[var(k, j)] += &p[k][i][w];
                        }
                    }
                    if linalg::is_zero_vec(&row) && rhs[w].is_zero() {
                        continue;
                    }
                    out.push((row, -rhs[w].clone(), i, j, w));
                }
                out
            })
            .collect();
        for (row, rhs, i, j, w) in eqs.into_iter().flatten() {
            if let Err(bad) = solver.add(&row, &rhs, 0) {
                let residue = format!(
                    "polarized equation ({}, {}) component {} leaves residue {}",
                    space.m_labels[i],
                    space.m_labels[j],
                    w,
                    fmt_q(&bad.residue)
                );
                let witness = find_witness(space, a, i, j, seed, samples);
                return GoVerdict::NotGo { residue, witness };
            }
        }
    }
    let x = solver.particular_solution();
    let xi = Matrix::from_rows((0..d).map(|k| x[k * n..(k + 1) * n].to_vec()).collect());
    GoVerdict::Go { xi, nullity: solver.nullity() }
}

/// True when no `xi` in `s` solves `[xi + X, AX] = 0` for this `X`.
pub fn is_witness(space: &SpaceGS, a: &MetricEndo, x: &[Q]) -> bool {
    !solvable_in(&space.alg, &space.s_basis, &space.from_m(x), &a.apply(space, x))
}

// Is there xi in span(iso) with [xi, ax] = [ax, x]?
fn solvable_in(alg: &SemisimpleAlgebra, iso: &[Vector], x: &[Q], ax: &[Q]) -> bool {
    let rhs = alg.br(ax, x);
    if iso.is_empty() {
        return linalg::is_zero_vec(&rhs);
    }
    let cols: Vec<Vector> = iso.iter().map(|z| alg.br(z, ax)).collect();
    Matrix::from_cols(&cols, alg.dim()).solve(&rhs).is_some()
}

fn find_witness(space: &SpaceGS, a: &MetricEndo, i: usize, j: usize, seed: u64, random: usize) -> Option<Vector> {
    let n = space.dim_m();
    let combo = |terms: &[(usize, i64)]| {
        let mut v = linalg::zeros(n);
        for &(k, c) in terms {
            v[k] += q(c);
        }
        v
    };
    let mut cands = vec![combo(&[(i, 1), (j, 1)]), combo(&[(i, 1), (j, -1)]), combo(&[(i, 1), (j, 2)]), combo(&[(i, 1)]), combo(&[(j, 1)])];
    for u in 0..n {
        cands.push(combo(&[(u, 1)]));
        for v in u + 1..n {
            cands.push(combo(&[(u, 1), (v, 1)]));
            cands.push(combo(&[(u, 1), (v, -1)]));
            cands.push(combo(&[(u, 1), (v, 2)]));
        }
    }
    cands.extend(random_vectors(n, random, seed));
    let found = cands.par_iter().position_first(|x| !linalg::is_zero_vec(x) && is_witness(space, a, x));
    found.map(|k| cands[k].clone())
}

fn random_vectors(n: usize, count: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect()).collect()
}

/// Outcome of [`necform_check`].
#[derive(Debug, Clone, Serialize)]
pub struct NecFormReport {
    pub holds: bool,
    /// Scalar of `A` on each `p_j + q_j`, when it is one.
    pub lambdas: Vec<Option<String>>,
    pub offending: Option<String>,
    #[serde(skip)]
    pub lambda_values: Vec<Option<Q>>,
}

fn scalar_on(m: &Matrix, idx: &[usize]) -> std::result::Result<Option<Q>, usize> {
    let Some(&first) = idx.first() else { return Ok(None) };
    let lam = m.get(first, first).clone();
    for &b in idx {
        for a in 0..m.rows {
            let expect = if a == b { lam.clone() } else { Q::zero() };
            if *m.get(a, b) != expect {
                return Err(b);
            }
        }
    }
    Ok(Some(lam))
}

/// Checks that `A` preserves `s'` and is a scalar on every `p_j + q_j`.
pub fn necform_check(space: &SpaceGS, a: &MetricEndo) -> NecFormReport {
    let mut offending = None;
    for b in space.sprime.clone() {
        if (0..space.dim_m()).any(|r| !space.sprime.contains(&r) && !a.m.get(r, b).is_zero()) {
            offending = Some(format!("{} is not mapped into s'", space.m_labels[b]));
            break;
        }
    }
    let mut lambda_values = Vec::new();
    for j in 0..space.num_factors() {
        let idx: Vec<usize> = space.p[j].clone().chain(space.q[j].clone()).collect();
        match scalar_on(&a.m, &idx) {
            Ok(l) => lambda_values.push(l),
            Err(b) => {
                lambda_values.push(None);
                if offending.is_none() {
                    offending = Some(format!("A is not a scalar on p_{0} + q_{0}: offending basis vector {1}", j + 1, space.m_labels[b]));
                }
            }
        }
    }
    NecFormReport {
        holds: offending.is_none(),
        lambdas: lambda_values.iter().map(|l| l.as_ref().map(fmt_q)).collect(),
        offending,
        lambda_values,
    }
}

/// `xi(X) = sum_j (1/lambda_j) pi_j((A - lambda_j) X_s')` as a `dim s x dim m` matrix.
pub fn geodesic_graph_formula(space: &SpaceGS, a: &MetricEndo) -> Result<Matrix> {
    let nf = necform_check(space, a);
    if !nf.holds {
        return Err(Error::InvariantViolation(format!(
            "metric is not in the necessary form: {}",
            nf.offending.unwrap_or_default()
        )));
    }
    let lambdas: Vec<Q> = nf.lambda_values.into_iter().map(|l| l.expect("every p_j + q_j is nonempty")).collect();
    let (d, n) = (space.dim_s(), space.dim_m());
    let mut xi = Matrix::zeros(d, n);
    for b in space.sprime.clone() {
        let ae = a.image(space, b);
        let e = &space.m_basis[b];
        let mut v = linalg::zeros(space.alg.dim());
        for (j, l) in lambdas.iter().enumerate() {
            let diff = linalg::sub(&space.project(j, &ae)?, &linalg::scale(l, &space.project(j, e)?));
            linalg::axpy(&mut v, &l.recip(), &diff);
        }
        let c = space
            .to_s(&v)
            .ok_or_else(|| Error::FormulaEscape(format!("image of {} is not in s", space.m_labels[b])))?;
        for k in 0..d {
            xi.set(k, b, c[k].clone());
        }
    }
    Ok(xi)
}

/// Checks the polarized identity `[xi(e_i)+e_i, Ae_j] + [xi(e_j)+e_j, Ae_i] = 0`.
pub fn polarized_identity_holds(space: &SpaceGS, a: &MetricEndo, xi: &Matrix) -> bool {
    let n = space.dim_m();
    let alg = &space.alg;
    let lift: Vec<Vector> = (0..n).map(|b| linalg::add(&space.from_s(&xi.col(b)), &space.m_basis[b])).collect();
    let ae: Vec<Vector> = (0..n).map(|b| a.image(space, b)).collect();
    (0..n).into_par_iter().all(|i| {
        (i..n).all(|j| linalg::is_zero_vec(&linalg::add(&alg.br(&lift[i], &ae[j]), &alg.br(&lift[j], &ae[i]))))
    })
}

/// Metric induced on `m` by `Q = sum_j mu_j B|g_j` through the
/// `Q`-orthogonal complement of `s`.
pub fn normal_from_mu(space: &SpaceGS, mu: &[Q]) -> Result<MetricEndo> {
    if mu.len() != space.num_factors() {
        return Err(Error::DimensionMismatch { expected: space.num_factors(), got: mu.len() });
    }
    if let Some(j) = mu.iter().position(|x| !x.is_positive()) {
        return Err(Error::NotPositive(format!("mu_{} = {}", j + 1, fmt_q(&mu[j]))));
    }
    let alg = &space.alg;
    let qf = |x: &[Q], y: &[Q]| alg.scaled_killing(mu, x, y);
    let d = space.dim_s();
    let n = space.dim_m();
    let qs = Matrix::from_rows(
        (0..d).map(|k| (0..d).map(|l| qf(&space.s_basis[k], &space.s_basis[l])).collect()).collect(),
    );
    // projection of e_b onto the Q-complement of s along s
    let proj: Vec<Vector> = (0..n)
        .map(|b| {
            let e = &space.m_basis[b];
            if d == 0 {
                return Ok(e.clone());
            }
            let rhs: Vector = space.s_basis.iter().map(|s| qf(e, s)).collect();
            let c = qs.solve(&rhs).ok_or_else(|| Error::InternalInvariantViolation("Q is degenerate on s".into()))?;
            Ok(linalg::sub(e, &space.from_s(&c)))
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vector> = (0..n)
        .into_par_iter()
        .map(|a| (0..n).map(|b| qf(&proj[a], &proj[b]) / &space.m_gram[a]).collect())
        .collect();
    MetricEndo::new(space, Matrix::from_rows(rows))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalVerdict {
    Normal { mu: Vec<Q> },
    NotNormal { discrepancy: String },
}

impl NormalVerdict {
    pub fn is_normal(&self) -> bool {
        matches!(self, NormalVerdict::Normal { .. })
    }

    pub fn report(&self) -> NormalReport {
        match self {
            NormalVerdict::Normal { mu } => NormalReport { verdict: "NORMAL".into(), mu: Some(fmt_vec(mu)), discrepancy: None },
            NormalVerdict::NotNormal { discrepancy } => {
                NormalReport { verdict: "NOT_NORMAL".into(), mu: None, discrepancy: Some(discrepancy.clone()) }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalReport {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
}

/// Reads candidate `mu_j` off `A|q_j` (or `A|p_j` when `q_j = 0`) and
/// compares `A` with the metric those scalars induce.
pub fn check_normal(space: &SpaceGS, a: &MetricEndo) -> NormalVerdict {
    let mut mu = Vec::new();
    for j in 0..space.num_factors() {
        let idx: Vec<usize> = if space.q[j].is_empty() { space.p[j].clone().collect() } else { space.q[j].clone().collect() };
        match scalar_on(&a.m, &idx) {
            Ok(Some(l)) => mu.push(l),
            Ok(None) => {
                return NormalVerdict::NotNormal { discrepancy: format!("factor {} contributes nothing to m", j + 1) }
            }
            Err(b) => {
                return NormalVerdict::NotNormal {
                    discrepancy: format!("A is not a scalar on factor {}: offending basis vector {}", j + 1, space.m_labels[b]),
                }
            }
        }
    }
    let candidate = match normal_from_mu(space, &mu) {
        Ok(c) => c,
        Err(e) => return NormalVerdict::NotNormal { discrepancy: e.to_string() },
    };
    match first_nonzero(&a.m.sub(&candidate.m)) {
        None => NormalVerdict::Normal { mu },
        Some((r, c)) => NormalVerdict::NotNormal {
            discrepancy: format!(
                "entry ({}, {}) is {} but the normal metric of mu = [{}] has {}",
                space.m_labels[r],
                space.m_labels[c],
                fmt_q(a.m.get(r, c)),
                fmt_vec(&mu).join(", "),
                fmt_q(candidate.m.get(r, c))
            ),
        },
    }
}

/// Polarized bi-invariance test `[X, AY] + [Y, AX] = 0` for an operator `a`
/// (column convention) on the span of `basis`. Returns the first failing
/// basis pair.
pub fn bi_invariance_check(alg: &SemisimpleAlgebra, basis: &[Vector], a: &Matrix) -> Option<(usize, usize)> {
    let n = basis.len();
    let img: Vec<Vector> = (0..n)
        .map(|b| {
            let mut v = linalg::zeros(alg.dim());
            for c in 0..n {
                linalg::axpy(&mut v, a.get(c, b), &basis[c]);
            }
            v
        })
        .collect();
    let first = (0..n).into_par_iter().find_first(|&i| {
        (i..n).any(|j| !linalg::is_zero_vec(&linalg::add(&alg.br(&basis[i], &img[j]), &alg.br(&basis[j], &img[i]))))
    })?;
    let j = (first..n)
        .find(|&j| !linalg::is_zero_vec(&linalg::add(&alg.br(&basis[first], &img[j]), &alg.br(&basis[j], &img[first]))))?;
    Some((first, j))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampledVerdict {
    Consistent { samples: usize },
    NotGo { witness: Vector },
}

/// Per-vector g.o. test with an arbitrary (possibly non-abelian) isotropy
/// algebra: solves `[xi, AX] = [AX, X]` for `xi` in `span(isotropy)` on the
/// basis vectors, sums of two basis vectors and `samples` seeded random
/// vectors with entries in `-2..=2`. Falsifies only; never proves.
pub fn is_go_sampled(
    alg: &SemisimpleAlgebra,
    isotropy: &[Vector],
    tangent: &[Vector],
    a: &Matrix,
    samples: usize,
    seed: u64,
) -> SampledVerdict {
    let n = tangent.len();
    let mut xs: Vec<Vector> = (0..n).map(|i| linalg::unit(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = linalg::unit(n, i);
            v[j] = Q::one();
            xs.push(v);
        }
    }
    xs.extend(random_vectors(n, samples, seed));
    let to_g = |c: &[Q]| {
        let mut v = linalg::zeros(alg.dim());
        for (x, e) in c.iter().zip(tangent) {
            linalg::axpy(&mut v, x, e);
        }
        v
    };
    let bad = xs.par_iter().position_first(|x| !solvable_in(alg, isotropy, &to_g(x), &to_g(&a.apply(x))));
    match bad {
        Some(k) => SampledVerdict::NotGo { witness: xs[k].clone() },
        None => SampledVerdict::Consistent { samples: xs.len() },
    }
}

/// Restriction of `A` to the span of the given `m` indices, assuming that
/// span is `A`-invariant.
pub fn restrict(a: &MetricEndo, idx: &[usize]) -> Matrix {
    Matrix::from_rows(idx.iter().map(|&r| idx.iter().map(|&c| a.m.get(r, c).clone()).collect()).collect())
}

//! Brute-force verifiers for the combinatorial root lemmas used by the
//! deciders, swept over every painted diagram up to a rank bound.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{CompactAlgebra, SemisimpleAlgebra};
use crate::error::{Error, Result};
use crate::flagstruct::PaintedDiagram;
use crate::linalg::Matrix;
use crate::rootsys::{RootSystem, RootType};

#[derive(Debug, Clone, Default, Serialize)]
pub struct HumReport {
    pub system: String,
    pub pairs: usize,
    /// Pairs where neither sum nor difference is a root.
    pub case_i: usize,
    /// Pairs with a root sum but no root difference.
    pub case_ii: usize,
    /// Pairs with negative product.
    pub case_iii: usize,
    /// Distinct simple pairs.
    pub case_iv: usize,
    pub violations: Vec<String>,
}

/// Exhaustive check of the four root-pair facts: no sum and no difference
/// forces orthogonality; a sum without a difference forces a negative
/// product; a negative product forces a root sum; distinct simple roots
/// have non-positive product.
pub fn verify_hum(rs: &RootSystem) -> HumReport {
    let mut rep = HumReport { system: system_name(rs), ..Default::default() };
    let nr = rs.num_roots();
    for a in 0..nr {
        for b in 0..nr {
            if a == b || a == rs.neg(b) {
                continue;
            }
            rep.pairs += 1;
            let sum = rs.sum(a, b).is_some();
            let diff = rs.combine(a, -1, b).is_some();
            let ip = rs.inner(a, b);
            let name = || format!("({}, {})", rs.label(a), rs.label(b));
            if !sum && !diff {
                rep.case_i += 1;
                if !ip.is_zero() {
                    rep.violations.push(format!("{}: no sum or difference but product {}", name(), ip));
                }
            }
            if sum && !diff {
                rep.case_ii += 1;
                if !ip.is_negative() {
                    rep.violations.push(format!("{}: sum without difference but product {}", name(), ip));
                }
            }
            if ip.is_negative() {
                rep.case_iii += 1;
                if !sum {
                    rep.violations.push(format!("{}: negative product but no root sum", name()));
                }
            }
            if a < rs.rank && b < rs.rank {
                rep.case_iv += 1;
                if ip.is_positive() {
                    rep.violations.push(format!("{}: simple roots with positive product", name()));
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, Serialize)]
pub struct SumWitness {
    pub alpha: Vec<i64>,
    pub beta: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SumReport {
    pub system: String,
    pub painted: Vec<usize>,
    pub witnesses: Vec<SumWitness>,
    pub violations: Vec<String>,
}

/// For every isotropy root `alpha` finds a complementary root `beta` with
/// `alpha + beta` complementary as well.
pub fn verify_sum_exists(rs: &RootSystem, painted: &[usize]) -> Result<SumReport> {
    let pd = PaintedDiagram::new(rs, painted)?;
    if pd.unpainted().is_empty() {
        return Err(Error::VacuousInput("every node is painted, so there are no isotropy roots".into()));
    }
    let part = pd.partition();
    let mut witnesses = Vec::new();
    let mut violations = Vec::new();
    for &a in &part.rk_plus {
        let beta = (0..rs.num_roots())
            .find(|&b| !pd.in_k(b) && rs.sum(a, b).is_some_and(|s| !pd.in_k(s)));
        if beta.is_none() {
            violations.push(format!("no witness for {}", rs.label(a)));
        }
        witnesses.push(SumWitness { alpha: rs.coeffs(a), beta: beta.map(|b| rs.coeffs(b)) });
    }
    Ok(SumReport { system: system_name(rs), painted: pd.painted.iter().map(|i| i + 1).collect(), witnesses, violations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum F1Family {
    /// `B_l` with the last node painted.
    B,
    /// `C_l` with the first node painted.
    C,
}

#[derive(Debug, Clone, Serialize)]
pub struct F1Report {
    pub system: String,
    pub painted: usize,
    /// `(beta_1, beta_2)` with `beta_2 - beta_1` a root.
    pub bracket_witness: Option<(Vec<i64>, Vec<i64>)>,
    pub dim_q2: usize,
    pub ad_rank_on_q2: usize,
    pub violations: Vec<String>,
}

pub fn verify_f1(family: F1Family, l: usize) -> Result<F1Report> {
    let (t, node) = match family {
        F1Family::B => (RootType::B, l.saturating_sub(1)),
        F1Family::C => (RootType::C, 0),
    };
    let rs = RootSystem::build(t, l)?;
    let pd = PaintedDiagram::new(&rs, &[node])?;
    let (m1, m2) = pd.partition().grading.ok_or(Error::GradingUndefined)?;
    let mut violations = Vec::new();
    let bracket_witness = m1
        .iter()
        .flat_map(|&b1| m2.iter().map(move |&b2| (b1, b2)))
        .find(|&(b1, b2)| rs.combine(b2, -1, b1).is_some())
        .map(|(b1, b2)| (rs.coeffs(b1), rs.coeffs(b2)));
    if bracket_witness.is_none() {
        violations.push("no pair in the two modules differs by a root".into());
    }

    let split = pd.isotropy_split();
    let xi = &split.center[0];
    let alg = CompactAlgebra::build(&rs)?;
    for &r in &m2 {
        if alg.root_value(r, xi).is_zero() {
            violations.push(format!("center vanishes on {}", rs.label(r)));
        }
    }
    let g = SemisimpleAlgebra::direct_sum(vec![alg])?;
    let xv = g.cartan_vector(xi);
    let idx: Vec<usize> = m2.iter().flat_map(|&r| [g.a_index(0, r), g.b_index(0, r)]).collect();
    let ad = g.ad_matrix(&xv);
    let restricted = Matrix::from_rows(idx.iter().map(|&r| idx.iter().map(|&c| ad.get(r, c).clone()).collect()).collect());
    let rank = restricted.rank();
    if rank != idx.len() {
        violations.push(format!("ad of the center has a kernel of dimension {} on the second module", idx.len() - rank));
    }
    Ok(F1Report {
        system: system_name(&rs),
        painted: node + 1,
        bracket_witness,
        dim_q2: idx.len(),
        ad_rank_on_q2: rank,
        violations,
    })
}

fn abs_vec(v: Vec<i64>) -> Vec<i64> {
    if v.iter().all(|&x| x <= 0) {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

fn lin(a: &[i64], k: i64, b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

/// With `g1 = a0 + |b|` and `g2 = |a0 - |b||`, checks that no other
/// positive isotropy root `a0'` has `|a0' +- |b||` equal to `g1` or `g2`.
pub fn verify_claim_root(rs: &RootSystem, painted: usize, alpha0: usize, beta: usize) -> Result<bool> {
    let pd = PaintedDiagram::new(rs, &[painted])?;
    let part = pd.partition();
    if part.grading.is_none() {
        return Err(Error::GradingUndefined);
    }
    if !part.rk_plus.contains(&alpha0) || pd.in_k(beta) || rs.sum(alpha0, beta).is_none_or(|s| pd.in_k(s)) {
        return Err(Error::InvalidPainting("alpha0 must be an isotropy root and beta, alpha0 + beta complementary".into()));
    }
    let a0 = rs.coeffs(alpha0);
    let b = abs_vec(rs.coeffs(beta));
    let g1 = lin(&a0, 1, &b);
    let g2 = abs_vec(lin(&a0, -1, &b));
    Ok(part.rk_plus.iter().filter(|&&r| r != alpha0).all(|&r| {
        let c = rs.coeffs(r);
        [1, -1].iter().all(|&s| {
            let v = abs_vec(lin(&c, s, &b));
            v != g1 && v != g2
        })
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub system: String,
    pub painted: usize,
    pub pairs: usize,
    pub violations: Vec<String>,
}

/// Runs the claim over every admissible `(alpha0, beta)` of a single-node painting.
pub fn verify_claim_root_all(rs: &RootSystem, painted: usize) -> Result<ClaimReport> {
    let pd = PaintedDiagram::new(rs, &[painted])?;
    let part = pd.partition();
    let mut pairs = 0;
    let mut violations = Vec::new();
    for &a0 in &part.rk_plus {
        for b in 0..rs.num_roots() {
            if pd.in_k(b) || rs.sum(a0, b).is_none_or(|s| pd.in_k(s)) {
                continue;
            }
            pairs += 1;
            if !verify_claim_root(rs, painted, a0, b)? {
                violations.push(format!("alpha0 = {}, beta = {}", rs.label(a0), rs.label(b)));
            }
        }
    }
    Ok(ClaimReport { system: system_name(rs), painted: painted + 1, pairs, violations })
}

fn system_name(rs: &RootSystem) -> String {
    format!("{}{}", rs.type_label.label(), rs.rank)
}

/// All irreducible systems of the supported types with rank at most `rank_max`.
pub fn systems_up_to(rank_max: usize) -> Vec<(RootType, usize)> {
    let mut out = Vec::new();
    for t in [RootType::A, RootType::B, RootType::C, RootType::D] {
        for l in t.min_rank()..=rank_max {
            out.push((t, l));
        }
    }
    if rank_max >= 2 {
        out.push((RootType::G, 2));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCount {
    pub checked: usize,
    pub vacuous: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rank_max: usize,
    pub systems: Vec<String>,
    pub hum: LemmaCount,
    pub sum_exists: LemmaCount,
    pub f1: LemmaCount,
    pub claim_root: LemmaCount,
    pub total_violations: usize,
}

fn count(results: Vec<(usize, usize, Vec<String>)>) -> LemmaCount {
    let mut c = LemmaCount { checked: 0, vacuous: 0, violations: Vec::new() };
    for (checked, vacuous, v) in results {
        c.checked += checked;
        c.vacuous += vacuous;
        c.violations.extend(v);
    }
    c
}

fn subsets(l: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << l)).map(|mask| (0..l).filter(|i| mask & (1 << i) != 0).collect()).collect()
}

/// Runs every verifier over all systems of rank at most `rank_max`, all
/// nonempty paintings, and the `B_l` / `C_l` families with `2 <= l <= rank_max`.
pub fn sweep(rank_max: usize) -> Result<SweepReport> {
    let systems: Vec<RootSystem> = systems_up_to(rank_max)
        .into_iter()
        .map(|(t, l)| RootSystem::build(t, l))
        .collect::<Result<_>>()?;

    let hum = count(
        systems
            .par_iter()
            .map(|rs| {
                let r = verify_hum(rs);
                let v = r.violations.iter().map(|x| format!("{}: {x}", r.system)).collect();
                (r.pairs, 0, v)
            })
            .collect(),
    );

    let jobs: Vec<(usize, Vec<usize>)> =
        systems.iter().enumerate().flat_map(|(k, rs)| subsets(rs.rank).into_iter().map(move |p| (k, p))).collect();
    let sum_exists = count(
        jobs.par_iter()
            .map(|(k, p)| match verify_sum_exists(&systems[*k], p) {
                Ok(r) => {
                    let v = r.violations.iter().map(|x| format!("{} {:?}: {x}", r.system, r.painted)).collect();
                    Ok((r.witnesses.len(), 0, v))
                }
                Err(Error::VacuousInput(_)) => Ok((0, 1, Vec::new())),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?,
    );

    let fam: Vec<(F1Family, usize)> =
        (2..=rank_max).flat_map(|l| [(F1Family::B, l), (F1Family::C, l)]).collect();
    let f1 = count(
        fam.par_iter()
            .map(|&(f, l)| {
                let r = verify_f1(f, l)?;
                let v = r.violations.iter().map(|x| format!("{}: {x}", r.system)).collect();
                Ok((1, 0, v))
            })
            .collect::<Result<Vec<_>>>()?,
    );

    let claims: Vec<(usize, usize)> = systems
        .iter()
        .enumerate()
        .flat_map(|(k, rs)| (0..rs.rank).map(move |i| (k, i)))
        .filter(|&(k, i)| PaintedDiagram::new(&systems[k], &[i]).is_ok_and(|pd| pd.partition().grading.is_some()))
        .collect();
    let claim_root = count(
        claims
            .par_iter()
            .map(|&(k, i)| {
                let r = verify_claim_root_all(&systems[k], i)?;
                let v = r.violations.iter().map(|x| format!("{} [{}]: {x}", r.system, r.painted)).collect();
                Ok((r.pairs, 0, v))
            })
            .collect::<Result<Vec<_>>>()?,
    );

    let total_violations =
        hum.violations.len() + sum_exists.violations.len() + f1.violations.len() + claim_root.violations.len();
    Ok(SweepReport {
        rank_max,
        systems: systems.iter().map(system_name).collect(),
        hum,
        sum_exists,
        f1,
        claim_root,
        total_violations,
    })
}

/// Recomputes a witness: `alpha + beta` is a root outside the isotropy roots.
pub fn recheck_sum_witness(rs: &RootSystem, painted: &[usize], w: &SumWitness) -> bool {
    let Ok(pd) = PaintedDiagram::new(rs, painted) else { return false };
    let Some(beta) = w.beta.as_ref().and_then(|b| rs.find(b)) else { return false };
    let Some(alpha) = rs.find(&w.alpha) else { return false };
    pd.in_k(alpha) && !pd.in_k(beta) && rs.sum(alpha, beta).is_some_and(|s| !pd.in_k(s))
}

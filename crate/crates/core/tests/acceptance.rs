//! Acceptance criteria 1-9. Runs as a plain binary so that every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use golab::chevalley::{CompactAlgebra, SemisimpleAlgebra};
use golab::flagstruct::PaintedDiagram;
use golab::gometric::{
    bi_invariance_check, block_metric, check_normal, geodesic_graph_formula, is_go_linear, is_go_sampled,
    necform_check, normal_from_mu, restrict, GoVerdict, MetricEndo, NormalVerdict, SampledVerdict,
};
use golab::homspace::SpaceGS;
use golab::lemmalab::{self, verify_claim_root_all};
use golab::linalg::{self, Matrix, Vector};
use golab::rational::{q, qf, Q};
use golab::rootsys::{RootSystem, RootType};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn algebra(spec: &[(RootType, usize)]) -> SemisimpleAlgebra {
    let fs = spec.iter().map(|&(t, l)| CompactAlgebra::build(&RootSystem::build(t, l).unwrap()).unwrap()).collect();
    SemisimpleAlgebra::direct_sum(fs).unwrap()
}

fn space(spec: &[(RootType, usize)], torus: &[&[i64]]) -> SpaceGS {
    let t = torus.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    SpaceGS::build(algebra(spec), t).unwrap()
}

/// The root of factor `j` whose plane contains `m` basis vector `b`, if any.
fn root_of(sp: &SpaceGS, j: usize, b: usize) -> Option<usize> {
    let rs = &sp.alg.factors[j].rs;
    (0..rs.num_positive()).find(|&r| {
        let e = &sp.m_basis[b];
        !e[sp.alg.a_index(j, r)].is_zero() || !e[sp.alg.b_index(j, r)].is_zero()
    })
}

/// Diagonal metric with the given scale on each listed index and 1 elsewhere.
fn diag_metric(sp: &SpaceGS, scales: &[(usize, Q)]) -> MetricEndo {
    let mut m = Matrix::identity(sp.dim_m());
    for (b, c) in scales {
        m.set(*b, *b, c.clone());
    }
    MetricEndo::new(sp, m).unwrap()
}

fn plane_indices(sp: &SpaceGS, j: usize, r: usize) -> Vec<usize> {
    (0..sp.dim_m()).filter(|&b| sp.m_pieces[b] != golab::homspace::Piece::SPrime && root_of(sp, j, b) == Some(r)).collect()
}

fn xi_vector(sp: &SpaceGS, xi: &Matrix, b: usize) -> Vector {
    let mut v = linalg::zeros(sp.alg.dim());
    for k in 0..sp.dim_s() {
        linalg::axpy(&mut v, xi.get(k, b), &sp.s_basis[k]);
    }
    v
}

// [xi(e_i) + e_i, A e_j] + [xi(e_j) + e_j, A e_i] = 0 on all basis pairs
fn polarized_ok(sp: &SpaceGS, a: &MetricEndo, xi: &Matrix) -> bool {
    let n = sp.dim_m();
    let ae: Vec<Vector> = (0..n).map(|b| a.image(sp, b)).collect();
    let lhs: Vec<Vector> = (0..n).map(|b| linalg::add(&xi_vector(sp, xi, b), &sp.m_basis[b])).collect();
    (0..n).into_par_iter().all(|i| {
        (i..n).all(|j| linalg::is_zero_vec(&linalg::add(&sp.alg.br(&lhs[i], &ae[j]), &sp.alg.br(&lhs[j], &ae[i]))))
    })
}

// No combination of [s_k, AX] equals [AX, X]: rank grows when appending it.
fn witness_rechecks(sp: &SpaceGS, a: &MetricEndo, x: &[Q]) -> bool {
    let xg = sp.from_m(x);
    let ax = a.apply(sp, x);
    let cols: Vec<Vector> = sp.s_basis.iter().map(|z| sp.alg.br(z, &ax)).collect();
    let mut with = cols.clone();
    with.push(sp.alg.br(&ax, &xg));
    linalg::rank_of(&with) > linalg::rank_of(&cols)
}

struct Case {
    name: String,
    space: SpaceGS,
    metrics: Vec<(String, MetricEndo)>,
}

fn metric_family(sp: &SpaceGS) -> Vec<(String, MetricEndo)> {
    let mut out = vec![("standard".to_string(), MetricEndo::standard(sp))];
    let nf = sp.num_factors();
    let mu: Vec<Q> = (0..nf).map(|j| qf(j as i64 + 2, 2)).collect();
    out.push(("normal mu".into(), normal_from_mu(sp, &mu).unwrap()));
    out.push(("scaled 5/2".into(), normal_from_mu(sp, &vec![qf(5, 2); nf]).unwrap()));
    if !sp.sprime.is_empty() {
        let ds = sp.sprime.len();
        let lam: Vec<Q> = (0..nf).map(|j| q(j as i64 + 1)).collect();
        out.push(("blocks s'=2".into(), block_metric(sp, &Matrix::scalar(ds, &q(2)), &lam).unwrap()));
        let nm = normal_from_mu(sp, &lam).unwrap();
        let mut bumped = nm.m.clone();
        let s0 = sp.sprime.start;
        bumped.set(s0, s0, bumped.get(s0, s0) + qf(1, 3));
        out.push(("normal with s' bumped".into(), MetricEndo::new(sp, bumped).unwrap()));
    }
    for j in 0..nf {
        for (piece, range) in [("q", sp.q[j].clone()), ("p", sp.p[j].clone())] {
            if let Some(r) = range.clone().find_map(|b| root_of(sp, j, b)) {
                let idx = plane_indices(sp, j, r);
                if idx.len() < range.len() {
                    let scales: Vec<(usize, Q)> = idx.iter().map(|&b| (b, q(2))).collect();
                    out.push((format!("{piece}_{} plane x2", j + 1), diag_metric(sp, &scales)));
                }
            }
        }
    }
    out
}

fn cases() -> Vec<Case> {
    use RootType::*;
    let specs: Vec<(&str, Vec<(RootType, usize)>, Vec<&[i64]>)> = vec![
        ("SU(2)/T", vec![(A, 1)], vec![&[1]]),
        ("SU(3)/T", vec![(A, 2)], vec![&[1, 0], &[0, 1]]),
        ("SU(3)/S(U(2)xU(1)) center", vec![(A, 2)], vec![&[1, 2]]),
        ("SU(4)/T^2", vec![(A, 3)], vec![&[1, 0, 0], &[0, 1, 2]]),
        ("SO(7)/center of U(3)", vec![(B, 3)], vec![&[1, 2, 3]]),
        ("Sp(3)/center of U(1)xSp(2)", vec![(C, 3)], vec![&[1, 1, 1]]),
        ("G2/T", vec![(G, 2)], vec![&[1, 0], &[0, 1]]),
        ("SO(8)/T^1 generic", vec![(D, 4)], vec![&[1, 3, 7, 15]]),
        ("SU(2)^2/diagonal T^1", vec![(A, 1), (A, 1)], vec![&[1, 1]]),
        ("SU(2)^3/diagonal T^1", vec![(A, 1), (A, 1), (A, 1)], vec![&[1, 2, 3]]),
        ("SU(3)xSU(2)/T^1", vec![(A, 2), (A, 1)], vec![&[1, 2, 1]]),
        ("SO(5)xSU(2)/T^2", vec![(B, 2), (A, 1)], vec![&[1, 0, 1], &[0, 1, 0]]),
    ];
    specs
        .into_par_iter()
        .map(|(name, spec, torus)| {
            let sp = space(&spec, &torus);
            let metrics = metric_family(&sp);
            Case { name: name.to_string(), space: sp, metrics }
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let systems = lemmalab::systems_up_to(5);
    let results: Vec<Result<(String, usize, usize), String>> = systems
        .par_iter()
        .map(|&(t, l)| {
            let rs = RootSystem::build(t, l).map_err(|e| e.to_string())?;
            let alg = CompactAlgebra::build_unchecked(&rs).map_err(|e| e.to_string())?;
            let jac = alg.jacobi_sweep().map_err(|e| format!("{}{l}: {e}", t.label()))?;
            let inv = alg.ad_invariance_sweep().map_err(|e| format!("{}{l}: {e}", t.label()))?;
            let d = alg.dim();
            ensure!(jac == d * (d - 1) * (d - 2) / 6, "{}{l}: {jac} Jacobi triples for dim {d}", t.label());
            Ok((format!("{}{l}", t.label()), jac, inv))
        })
        .collect();
    let mut triples = 0;
    for r in results {
        let (_, j, _) = r?;
        triples += j;
    }
    Ok(format!("{} algebras, {triples} Jacobi triples, ad-invariance exact", systems.len()))
}

fn criterion_2() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_golab"))
        .args(["flag", "describe", "B", "3", "--painted", "3"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "flag describe exited with {}", out.status);
    let golden = include_str!("golden/flag_b3_painted3.json");
    let got: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let want: serde_json::Value = serde_json::from_str(golden).map_err(|e| e.to_string())?;
    ensure!(got == want, "output differs from the golden file");
    let set = |key: &str| {
        let mut v: Vec<Vec<i64>> = serde_json::from_value(got[key].clone()).unwrap();
        v.sort();
        v
    };
    let sorted = |mut v: Vec<Vec<i64>>| {
        v.sort();
        v
    };
    ensure!(set("rk_plus") == sorted(vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), "R_K+ differs");
    ensure!(set("rm1") == sorted(vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]), "R_M^1 differs");
    ensure!(set("rm2") == sorted(vec![vec![0, 1, 2], vec![1, 1, 2], vec![1, 2, 2]]), "R_M^2 differs");
    Ok("B3 painted {3}: golden JSON and root lists match".into())
}

fn criterion_3() -> Outcome {
    let t0 = Instant::now();
    let rep = lemmalab::sweep(5).map_err(|e| e.to_string())?;
    ensure!(rep.total_violations == 0, "{} violations, first: {:?}", rep.total_violations, [
        &rep.hum.violations,
        &rep.sum_exists.violations,
        &rep.f1.violations,
        &rep.claim_root.violations
    ]
    .iter()
    .find_map(|v| v.first()));
    ensure!(rep.systems.len() == 17, "expected 17 systems, got {}", rep.systems.len());
    ensure!(rep.f1.checked == 8, "f1 checked {} families", rep.f1.checked);
    ensure!(rep.sum_exists.vacuous == 17, "vacuous paintings: {}", rep.sum_exists.vacuous);
    for (t, l, node) in [(RootType::B, 3, 2), (RootType::B, 4, 3), (RootType::C, 3, 0)] {
        let rs = RootSystem::build(t, l).unwrap();
        let c = verify_claim_root_all(&rs, node).map_err(|e| e.to_string())?;
        ensure!(c.pairs > 0 && c.violations.is_empty(), "claim fails on {}", c.system);
    }
    let secs = t0.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "sweep took {secs:.1}s");
    Ok(format!(
        "0 violations: {} root pairs, {} isotropy roots, {} families, {} claim pairs ({secs:.2}s)",
        rep.hum.checked, rep.sum_exists.checked, rep.f1.checked, rep.claim_root.checked
    ))
}

fn criterion_4(cases: &[Case]) -> Outcome {
    ensure!(cases.len() >= 10, "only {} spaces", cases.len());
    let mut go = 0;
    let mut not_go = 0;
    let mut witnesses = 0;
    for c in cases {
        for (mname, a) in &c.metrics {
            let v = is_go_linear(&c.space, a);
            let n = check_normal(&c.space, a);
            ensure!(v.is_go() == n.is_normal(), "{} / {mname}: GO = {} but NORMAL = {}", c.name, v.is_go(), n.is_normal());
            match &v {
                GoVerdict::Go { .. } => {
                    go += 1;
                    let nf = necform_check(&c.space, a);
                    ensure!(nf.holds, "{} / {mname}: GO but not in necessary form: {:?}", c.name, nf.offending);
                }
                GoVerdict::NotGo { witness, .. } => {
                    not_go += 1;
                    if let Some(x) = witness {
                        witnesses += 1;
                        ensure!(witness_rechecks(&c.space, a, x), "{} / {mname}: witness does not recheck", c.name);
                    }
                }
            }
        }
    }
    Ok(format!("{} spaces: {go} GO = NORMAL, {not_go} NOT_GO = NOT_NORMAL, {witnesses} witnesses rechecked", cases.len()))
}

fn root_plane_groups(sp: &SpaceGS) -> Vec<Vec<usize>> {
    let rs = &sp.alg.factors[0].rs;
    (0..rs.num_positive()).map(|r| plane_indices(sp, 0, r)).filter(|v| !v.is_empty()).collect()
}

fn criterion_5() -> Outcome {
    let grid = [qf(1, 2), q(1), q(2), q(3)];
    let mut tuples: Vec<[Q; 3]> = Vec::new();
    for a in &grid {
        for b in &grid {
            for c in &grid {
                if !(a == b && b == c) {
                    tuples.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }

    // su(3)/T: one lambda per root plane
    let su3 = space(&[(RootType::A, 2)], &[&[1, 0], &[0, 1]]);
    let planes = root_plane_groups(&su3);
    ensure!(planes.len() == 3, "su(3)/T has {} root planes", planes.len());
    // so(7)/t, t the center circle of u(3): lambdas on p, q^1, q^2
    let so7 = space(&[(RootType::B, 3)], &[&[1, 2, 3]]);
    let rs = &so7.alg.factors[0].rs;
    let level = |b: usize| root_of(&so7, 0, b).map(|r| rs.coeffs(r)[2]);
    let groups: Vec<Vec<usize>> = vec![
        so7.p_indices(),
        so7.q[0].clone().filter(|&b| level(b) == Some(1)).collect(),
        so7.q[0].clone().filter(|&b| level(b) == Some(2)).collect(),
    ];
    ensure!(groups.iter().map(Vec::len).collect::<Vec<_>>() == vec![8, 6, 6], "so(7) blocks have the wrong sizes");

    let mut tested = 0;
    for (name, sp, blocks) in [("su(3)/T", &su3, &planes), ("so(7)/t", &so7, &groups)] {
        let std = is_go_linear(sp, &MetricEndo::standard(sp));
        match std {
            GoVerdict::Go { ref xi, .. } => ensure!(xi.is_zero(), "{name}: standard metric has xi != 0"),
            _ => return Err(format!("{name}: standard metric is not GO")),
        }
        let bad: Vec<String> = tuples
            .par_iter()
            .filter_map(|t| {
                let scales: Vec<(usize, Q)> =
                    blocks.iter().zip(t.iter()).flat_map(|(idx, l)| idx.iter().map(move |&b| (b, l.clone()))).collect();
                let a = diag_metric(sp, &scales);
                is_go_linear(sp, &a).is_go().then(|| format!("{name} {:?}", t.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            })
            .collect();
        ensure!(bad.is_empty(), "GO for non-standard metrics: {:?}", bad);
        tested += tuples.len();
    }
    Ok(format!("{} tuples per space ({tested} total) NOT_GO; standard GO with xi = 0 on both", tuples.len()))
}

fn criterion_6() -> Outcome {
    let sp = space(&[(RootType::B, 3)], &[&[1, 2, 3]]);
    let rs = RootSystem::build(RootType::B, 3).unwrap();
    let pd = PaintedDiagram::new(&rs, &[2]).unwrap();
    let (m1, m2) = pd.partition().grading.ok_or("no grading on B3 painted 3")?;
    let iso = sp.k_factor_basis(0);
    ensure!(iso.len() == 9, "u(3) should be 9-dimensional, got {}", iso.len());
    let tangent = sp.q_basis(0);
    ensure!(tangent.len() == 12, "tangent space should be 12-dimensional");
    let is_level = |b: usize, set: &[usize]| root_of(&sp, 0, b).is_some_and(|r| set.contains(&r));
    let qidx: Vec<usize> = sp.q[0].clone().collect();
    let mut details = Vec::new();
    for lam in [qf(1, 2), q(2), q(3)] {
        let mut m = Matrix::identity(12);
        for (k, &b) in qidx.iter().enumerate() {
            if is_level(b, &m2) {
                m.set(k, k, lam.clone());
            } else {
                ensure!(is_level(b, &m1), "basis vector outside both modules");
            }
        }
        let v = is_go_sampled(&sp.alg, &iso, &tangent, &m, 200, 7);
        match v {
            SampledVerdict::Consistent { samples } => ensure!(samples >= 200, "only {samples} samples"),
            SampledVerdict::NotGo { witness } => return Err(format!("lambda = {lam}: sample {witness:?} infeasible with u(3)")),
        }
        // same metric on G/S with S the center circle, A = Id on p
        let scales: Vec<(usize, Q)> = qidx.iter().filter(|&&b| is_level(b, &m2)).map(|&b| (b, lam.clone())).collect();
        let a = diag_metric(&sp, &scales);
        ensure!(!is_go_linear(&sp, &a).is_go(), "lambda = {lam}: linear graph into the center exists");
        details.push(lam.to_string());
    }
    // control: scaling one plane of q^2 alone must be caught by the sampler
    let mut m = Matrix::identity(12);
    let one = qidx.iter().position(|&b| is_level(b, &m2)).ok_or("empty second module")?;
    for k in 0..12 {
        if root_of(&sp, 0, qidx[k]) == root_of(&sp, 0, qidx[one]) {
            m.set(k, k, q(2));
        }
    }
    ensure!(
        matches!(is_go_sampled(&sp.alg, &iso, &tangent, &m, 200, 7), SampledVerdict::NotGo { .. }),
        "sampler accepts a metric that is not u(3)-invariant"
    );
    Ok(format!(
        "lambda in {{{}}}: sampled feasible with u(3), no linear graph into the center; non-invariant control rejected",
        details.join(", ")
    ))
}

fn criterion_7(cases: &[Case]) -> Outcome {
    let mut checked = 0;
    for c in cases.iter().filter(|c| !c.space.sprime.is_empty()) {
        for (mname, a) in &c.metrics {
            if let GoVerdict::Go { xi, .. } = is_go_linear(&c.space, a) {
                let f = geodesic_graph_formula(&c.space, a).map_err(|e| format!("{} / {mname}: {e}", c.name))?;
                ensure!(f == xi, "{} / {mname}: formula differs from the solved graph", c.name);
                ensure!(polarized_ok(&c.space, a, &f), "{} / {mname}: polarized identity fails", c.name);
                checked += 1;
            }
        }
    }
    ensure!(checked > 0, "no GO verdict with s' != 0");
    Ok(format!("{checked} GO metrics with s' != 0: formula = solved graph, polarized identity exact"))
}

fn criterion_8(cases: &[Case]) -> Outcome {
    let mut checked = 0;
    for c in cases {
        let sp = &c.space;
        for (mname, a) in &c.metrics {
            if !is_go_linear(sp, a).is_go() {
                continue;
            }
            let pidx = sp.p_indices();
            let pbasis: Vec<Vector> = pidx.iter().map(|&b| sp.m_basis[b].clone()).collect();
            if let Some((i, j)) = bi_invariance_check(&sp.alg, &pbasis, &restrict(a, &pidx)) {
                return Err(format!("{} / {mname}: A|p not bi-invariant at ({i}, {j})", c.name));
            }
            for j in 0..sp.num_factors() {
                let qidx: Vec<usize> = sp.q[j].clone().collect();
                if qidx.is_empty() {
                    continue;
                }
                let v = is_go_sampled(&sp.alg, &sp.k_factor_basis(j), &sp.q_basis(j), &restrict(a, &qidx), 200, 11);
                ensure!(
                    matches!(v, SampledVerdict::Consistent { .. }),
                    "{} / {mname}: A|q_{} inconsistent with k_{}",
                    c.name,
                    j + 1,
                    j + 1
                );
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} GO metrics: A|p bi-invariant, every A|q_j consistent with k_j"))
}

fn criterion_9() -> Outcome {
    let sp = space(&[(RootType::A, 1), (RootType::A, 2), (RootType::B, 2)], &[&[1, 1, 2, 1, 1]]);
    ensure!(sp.num_factors() == 3, "three factors expected");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..10 {
        let mu: Vec<Q> = (0..3).map(|_| qf(rng.gen_range(1..=40), rng.gen_range(1..=12))).collect();
        let a = normal_from_mu(&sp, &mu).map_err(|e| e.to_string())?;
        let NormalVerdict::Normal { mu: back } = check_normal(&sp, &a) else {
            return Err(format!("sample {k}: normal metric of {mu:?} not recognized"));
        };
        let canon = |v: &[Q]| v.iter().map(|x| x / &v[0]).collect::<Vec<_>>();
        ensure!(canon(&back) == canon(&mu), "sample {k}: mu {mu:?} came back as {back:?}");
        ensure!(back == mu, "sample {k}: global scale lost");
    }
    Ok("10 random mu on su(2)+su(3)+so(5) round-trip exactly".into())
}

fn main() -> ExitCode {
    let t0 = Instant::now();
    let cases = panic::catch_unwind(cases);
    let cases = match cases {
        Ok(c) => c,
        Err(_) => {
            println!("acceptance: FAIL could not build the test spaces");
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<(u32, Box<dyn Fn() -> Outcome>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(|| criterion_4(&cases))),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| criterion_7(&cases))),
        (8, Box::new(|| criterion_8(&cases))),
        (9, Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let t = Instant::now();
        let res = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {n}: PASS [{secs:.1}s] {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL [{secs:.1}s] {msg}");
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed in {:.1}s", 9 - failed, t0.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and then
//! asserts it. Run with `--nocapture` to see the lines.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::*;
use flagcy_core::calabi::{DEFAULT_BASE_STEP, DEFAULT_FIBER_STEP};
use flagcy_core::rootsys::parse_theta;
use flagcy_core::sampling::sample_points;
use flagcy_core::{
    CalabiMetric, CalabiParams, Complex64, LieType, ParabolicData, Poly, PolyMatrix, Profile, Root,
    RootSystem, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: &str, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {title} | {detail}");
    assert!(pass, "criterion {id} failed: {detail}");
}

fn pd(ty: &str, theta: &str) -> ParabolicData {
    let ty: LieType = ty.parse().unwrap();
    let theta: BTreeSet<usize> = parse_theta(theta, ty.rank()).unwrap();
    ParabolicData::new(&RootSystem::new(ty), &theta).unwrap()
}

fn koszul(pd: &ParabolicData) -> Vec<i64> {
    pd.koszul_coefficients().values().copied().collect()
}

#[test]
fn criterion_01_integer_tables() {
    let start = Instant::now();
    let mut misses = Vec::new();
    let mut check = |label: &str, ok: bool| {
        if !ok {
            misses.push(label.to_string());
        }
    };
    check("A1/none", koszul(&pd("A1", "none")) == vec![2]);
    let w6 = pd("A2", "none");
    check("A2/none delta", w6.delta_p() == &Root(vec![2, 2]));
    check("A2/none koszul", koszul(&w6) == vec![2, 2]);
    check("A2/{2}", koszul(&pd("A2", "2")) == vec![3]);
    for n in 1..=8 {
        let ty = format!("A{n}");
        check(
            &format!("{ty}/all-but-1"),
            koszul(&pd(&ty, "all-but-1")) == vec![n as i64 + 1],
        );
    }
    let gr = pd("A3", "1,3");
    check("A3/{1,3} delta", gr.delta_p() == &Root(vec![2, 4, 2]));
    check("A3/{1,3} exponent", koszul(&gr) == vec![4]);
    let sp = pd("C2", "none");
    check("C2/none delta", sp.delta_p() == &Root(vec![4, 3]));
    check("C2/none koszul", koszul(&sp) == vec![2, 2]);
    let so = pd("D4", "3,4");
    check("D4/{3,4} delta", so.delta_p() == &Root(vec![6, 10, 5, 5]));
    check("D4/{3,4} koszul", koszul(&so) == vec![2, 4]);
    check(
        "E6/all-but-5 dim",
        pd("E6", "all-but-5").complex_dimension() == 16,
    );
    check(
        "E7/all-but-6 dim",
        pd("E7", "all-but-6").complex_dimension() == 27,
    );
    let elapsed = start.elapsed();
    let pass = misses.is_empty() && elapsed < Duration::from_secs(1);
    verdict(
        "1",
        "integer reproduction",
        pass,
        &format!("mismatches {misses:?}, {:.3}s", elapsed.as_secs_f64()),
    );
}

/// Matrix with entries `c·z_v`, where `v = 0` stands for the constant `c`.
fn expected_matrix(nvars: usize, rows: &[&[(i64, usize)]]) -> PolyMatrix {
    let n = rows.len();
    PolyMatrix::from_fn(n, n, nvars, |i, j| {
        let (coef, v) = rows[i][j];
        if v == 0 {
            Poly::from_int(nvars, coef)
        } else {
            poly(nvars, &[(coef, 1, &[v])])
        }
    })
}

#[test]
fn criterion_02_exact_exponentials() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;

    // sp(4), full flag
    let sp = flag("C2", "none");
    let n = sp.chart().n_matrix();
    let p1 = poly(4, &[(1, 1, &[2]), (-1, 6, &[1, 1, 4])]);
    let p2 = poly(4, &[(1, 1, &[3]), (1, 2, &[1, 4])]);
    let p3 = poly(4, &[(1, 1, &[3]), (-1, 2, &[1, 4])]);
    let mut expected = expected_matrix(
        4,
        &[
            &[(1, 0), (0, 0), (0, 0), (0, 0)],
            &[(1, 1), (1, 0), (0, 0), (0, 0)],
            &[(0, 0), (0, 0), (1, 0), (-1, 1)],
            &[(0, 0), (1, 4), (0, 0), (1, 0)],
        ],
    );
    expected.set(2, 0, p1);
    expected.set(3, 0, p2);
    expected.set(2, 1, p3);
    let sp_ok = n == &expected;
    ok &= sp_ok;
    lines.push(format!(
        "C2 exp(Z) {}",
        if sp_ok { "matches" } else { "differs" }
    ));

    // so(8), Θ = {α3, α4}
    let so = flag("D4", "3,4");
    let n = so.chart().n_matrix();
    let m = 10;
    let half = |a: usize, b: usize| (1, 2, vec![a, b]);
    let polys: Vec<((usize, usize), Vec<(i64, i64, Vec<usize>)>)> = vec![
        ((3, 1), vec![(1, 1, vec![2]), half(1, 7)]),
        ((4, 1), vec![(1, 1, vec![3]), half(1, 8)]),
        (
            (5, 1),
            vec![
                (-1, 1, vec![1, 4]),
                (-1, 1, vec![2, 5]),
                (-1, 1, vec![3, 6]),
                (1, 12, vec![1, 1, 7, 9]),
                (1, 12, vec![1, 1, 8, 10]),
            ],
        ),
        (
            (6, 1),
            vec![
                (1, 1, vec![4]),
                (-1, 2, vec![2, 9]),
                (-1, 2, vec![7, 5]),
                (-1, 2, vec![3, 10]),
                (-1, 2, vec![8, 6]),
                (-1, 3, vec![1, 7, 9]),
                (-1, 3, vec![1, 8, 10]),
            ],
        ),
        ((7, 1), vec![(1, 1, vec![5]), half(1, 9)]),
        ((8, 1), vec![(1, 1, vec![6]), half(1, 10)]),
        (
            (5, 2),
            vec![
                (-1, 1, vec![4]),
                (-1, 2, vec![2, 9]),
                (-1, 2, vec![7, 5]),
                (-1, 2, vec![3, 10]),
                (-1, 2, vec![8, 6]),
                (1, 3, vec![1, 7, 9]),
                (1, 3, vec![1, 8, 10]),
            ],
        ),
        ((6, 2), vec![(-1, 1, vec![7, 9]), (-1, 1, vec![8, 10])]),
        ((5, 3), vec![(-1, 1, vec![5]), (1, 1, vec![1, 9])]),
        ((5, 4), vec![(-1, 1, vec![6]), (1, 1, vec![1, 10])]),
        ((5, 7), vec![(-1, 1, vec![2]), (1, 1, vec![1, 7])]),
        ((5, 8), vec![(-1, 1, vec![3]), (1, 1, vec![1, 8])]),
    ];
    let mut expected = expected_matrix(
        m,
        &[
            &[
                (1, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
            ],
            &[
                (1, 1),
                (1, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
            ],
            &[
                (0, 0),
                (1, 7),
                (1, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
            ],
            &[
                (0, 0),
                (1, 8),
                (0, 0),
                (1, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
            ],
            &[
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (1, 0),
                (-1, 1),
                (0, 0),
                (0, 0),
            ],
            &[
                (0, 0),
                (0, 0),
                (-1, 9),
                (-1, 10),
                (0, 0),
                (1, 0),
                (-1, 7),
                (-1, 8),
            ],
            &[
                (0, 0),
                (1, 9),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (1, 0),
                (0, 0),
            ],
            &[
                (0, 0),
                (1, 10),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (0, 0),
                (1, 0),
            ],
        ],
    );
    let mut bad = Vec::new();
    for (k, ((r, c), terms)) in polys.iter().enumerate() {
        let terms: Vec<(i64, i64, &[usize])> = terms
            .iter()
            .map(|(a, b, v)| (*a, *b, v.as_slice()))
            .collect();
        let p = poly(m, &terms);
        if n.get(r - 1, c - 1) != &p {
            bad.push(format!("p{} (got {})", k + 1, n.get(r - 1, c - 1)));
        }
        expected.set(r - 1, c - 1, p);
    }
    let remaining_ok = (0..8).all(|i| {
        (0..8).all(|j| {
            polys.iter().any(|((r, c), _)| (r - 1, c - 1) == (i, j))
                || n.get(i, j) == expected.get(i, j)
        })
    });
    ok &= bad.is_empty() && remaining_ok;
    lines.push(format!(
        "D4 monomial entries {}; p1..p12 mismatches: {}",
        if remaining_ok { "match" } else { "differ" },
        if bad.is_empty() {
            "none".to_string()
        } else {
            bad.join(", ")
        }
    ));
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    lines.push(format!("{:.3}s", elapsed.as_secs_f64()));
    verdict("2", "exact symbolic reproduction", ok, &lines.join("; "));
}

#[test]
fn criterion_03_potential_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rand_z = |m: usize| -> Vec<Complex64> {
        (0..m)
            .map(|_| c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
            .collect()
    };
    let gr = flag("A3", "1,3");
    let gr_orbit = gr.potential().orbits().next().unwrap().clone();
    let mut worst_gr: f64 = 0.0;
    for _ in 0..100 {
        let z = rand_z(4);
        let closed = 1.0
            + z.iter().map(|w| w.norm_sqr()).sum::<f64>()
            + (z[0] * z[3] - z[1] * z[2]).norm_sqr();
        worst_gr = worst_gr.max(rel_err(gr_orbit.norm_sq(&z).unwrap(), closed));
    }
    let sp = flag("C2", "none");
    let sp_orbit = sp.potential().orbits().next().unwrap().clone();
    assert_eq!(sp_orbit.node(), 1);
    let mut worst_sp: f64 = 0.0;
    for _ in 0..100 {
        let z = rand_z(4);
        let p1 = z[1] - z[0] * z[0] * z[3] / 6.0;
        let p2 = z[2] + z[0] * z[3] / 2.0;
        let closed = 1.0 + z[0].norm_sqr() + p1.norm_sqr() + p2.norm_sqr();
        worst_sp = worst_sp.max(rel_err(sp_orbit.norm_sq(&z).unwrap(), closed));
    }
    verdict(
        "3",
        "potential closed forms",
        worst_gr <= 1e-12 && worst_sp <= 1e-12,
        &format!("Gr(2,4) max rel err {worst_gr:.2e}, Sp(4) node 1 max rel err {worst_sp:.2e}"),
    );
}

#[test]
fn criterion_04_einstein() {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for (label, ty, theta) in FIXTURES {
        let x = flag(ty, theta);
        let worst = sample_points(SEED, 25, x.dim())
            .iter()
            .map(|p| x.potential().einstein_defect(&p.z, 1e-3).unwrap())
            .fold(0.0, f64::max);
        ok &= worst <= 1e-4;
        details.push(format!("{label} {worst:.1e}"));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(120);
    details.push(format!("{:.1}s", elapsed.as_secs_f64()));
    verdict("4", "Einstein property", ok, &details.join(", "));
}

#[test]
fn criterion_05_monge_ampere() {
    let mut details = Vec::new();
    let mut ok = true;
    for (label, ty, theta) in FIXTURES {
        let x = flag(ty, theta);
        let worst = sample_points(SEED, 25, x.dim())
            .iter()
            .map(|p| x.potential().ma_defect(&p.z).unwrap())
            .fold(0.0, f64::max);
        ok &= worst <= 1e-8;
        details.push(format!("{label} {worst:.1e}"));
    }
    let cp1 = flag("A1", "none");
    let mut worst_const: f64 = 0.0;
    for p in sample_points(SEED, 25, 1) {
        let s = cp1.potential().base_metric(&p.z).unwrap();
        let value = s.g.det() * (2.0 * PI * s.phi).exp();
        worst_const = worst_const.max((value - 1.0 / PI).abs());
    }
    ok &= worst_const <= 1e-10;
    details.push(format!("CP1 |det g e^(2πφ) − 1/π| {worst_const:.1e}"));
    verdict("5", "Monge–Ampère constancy", ok, &details.join(", "));
}

#[test]
fn criterion_06_ricci_flat() {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for (label, ty, theta) in CALABI_FIXTURES {
        let x = flag(ty, theta);
        for constant in [1.0, 0.37] {
            let cm = x.calabi(constant).unwrap();
            let worst = sample_points(SEED, 25, x.dim())
                .iter()
                .map(|p| {
                    cm.ricci_total(&p.z, p.xi, DEFAULT_BASE_STEP, DEFAULT_FIBER_STEP)
                        .unwrap()
                })
                .fold(0.0, f64::max);
            ok &= worst <= 1e-4;
            details.push(format!("{label} C={constant} {worst:.1e}"));
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    details.push(format!("{:.1}s", elapsed.as_secs_f64()));
    verdict(
        "6",
        "Ricci-flatness of the Calabi metric",
        ok,
        &details.join(", "),
    );
}

#[test]
fn criterion_07_determinant_and_positivity() {
    let mut ok = true;
    let mut worst_const: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let mut worst_schur: f64 = 0.0;
    for (_, ty, theta) in CALABI_FIXTURES {
        let x = flag(ty, theta);
        let n = x.dim();
        for constant in [1.0, 0.37] {
            let cm = x.calabi(constant).unwrap();
            let pts = sample_points(SEED, 25, n);
            let pairs: Vec<_> = pts.iter().map(|p| (p.z.clone(), p.xi)).collect();
            worst_const = worst_const.max(cm.det_constancy(&pairs).unwrap());
            for p in &pts {
                min_eig = min_eig.min(cm.positivity(&p.z, p.xi).unwrap());
                let total = cm.total_metric(&p.z, p.xi).unwrap();
                let base = x.potential().base_metric(&p.z).unwrap();
                let expected = (2.0 * PI * base.phi).exp() * base.g.det() / (n as f64 + 1.0);
                worst_schur = worst_schur.max(rel_err(total.det, expected));
            }
        }
    }
    ok &= worst_const <= 1e-8 && min_eig > 0.0 && worst_schur <= 1e-10;
    verdict(
        "7",
        "determinant constancy and positivity",
        ok,
        &format!(
            "det constancy {worst_const:.1e}, min eigenvalue {min_eig:.3e}, Schur rel err {worst_schur:.1e}"
        ),
    );
}

#[test]
fn criterion_08_profile_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10usize);
        let constant = rng.gen_range(0.1..5.0);
        let u = 10f64.powf(rng.gen_range(-4.0..6.0));
        let params = CalabiParams::new(constant, n).unwrap();
        let pr = Profile::at(u, &params);
        let lhs = pr.f.powi(n as i32) * pr.f_prime;
        worst = worst.max((lhs - 2.0 * PI / (n as f64 + 1.0)).abs());
    }
    verdict(
        "8",
        "profile identity",
        worst <= 1e-12,
        &format!("max abs err {worst:.1e}"),
    );
}

#[test]
fn criterion_09_completeness_probe() {
    let mut details = Vec::new();
    let mut ok = true;
    for n in [1usize, 2, 4] {
        let params = CalabiParams::new(1.0, n).unwrap();
        let fitted = params.growth_exponent(1e3, 1e6, 24);
        let target = 1.0 / (2.0 * (n as f64 + 1.0));
        let err = rel_err(fitted, target);
        ok &= err <= 0.02;
        details.push(format!(
            "n={n} fitted {fitted:.5} target {target:.5} ({:.2}%)",
            100.0 * err
        ));
    }
    verdict("9", "vertical length growth", ok, &details.join(", "));
}

#[test]
fn criterion_10_negative_controls() {
    let mut details = Vec::new();
    let mut ok = true;
    for (label, ty, theta) in FIXTURES {
        let x = flag(ty, theta);
        let mut weights: Vec<f64> = x.potential().weights().iter().map(|w| w.1).collect();
        weights[0] += 1.0;
        let y = flag_weighted(ty, theta, &weights);
        let probe = &sample_points(SEED, 1, y.dim())[0];
        let defect = y.potential().einstein_defect(&probe.z, 1e-3).unwrap();
        ok &= defect > 1e-2;
        details.push(format!("{label} perturbed {defect:.2}"));
    }
    let cp1 = flag("A1", "none");
    let naive = CalabiMetric::with_variant(cp1.potential(), 1.0, Variant::Naive).unwrap();
    let ricci = naive
        .ricci_total(
            &[c(0.5, 0.0)],
            c(0.5, 0.0),
            DEFAULT_BASE_STEP,
            DEFAULT_FIBER_STEP,
        )
        .unwrap();
    ok &= ricci > 1e-2;
    details.push(format!("naive CP1 ricci {ricci:.2}"));
    verdict("10", "negative controls", ok, &details.join(", "));
}

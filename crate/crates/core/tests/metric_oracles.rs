mod common;

use std::f64::consts::PI;

use common::*;
use flagcy_core::calabi::{DEFAULT_BASE_STEP, DEFAULT_FIBER_STEP, DEFAULT_KAHLER_STEP};
use flagcy_core::fd::complex_hessian;
use flagcy_core::repfun::{combinations, orbit_vector};
use flagcy_core::sampling::{sample_point, sample_points};
use flagcy_core::{Complex64, OrbitVector};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `‖n e_1 ∧ … ∧ n e_k‖²` by expanding the wedge product over all row tuples.
fn wedge_norm_brute(n: &DMatrix<Complex64>, k: usize) -> f64 {
    let size = n.nrows();
    let mut coeffs = std::collections::BTreeMap::<Vec<usize>, Complex64>::new();
    let mut tuple = vec![0usize; k];
    loop {
        let mut sorted = tuple.clone();
        let distinct = {
            sorted.sort();
            sorted.windows(2).all(|w| w[0] != w[1])
        };
        if distinct {
            let mut inversions = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if tuple[a] > tuple[b] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            let prod = (0..k).fold(Complex64::new(sign, 0.0), |acc, j| acc * n[(tuple[j], j)]);
            *coeffs.entry(sorted).or_default() += prod;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return coeffs.values().map(|c| c.norm_sqr()).sum();
            }
            tuple[pos] += 1;
            if tuple[pos] < size {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

fn random_unitary(size: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(size, size, |_, _| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    m.qr().q()
}

fn numeric_minor_norm(n: &DMatrix<Complex64>, k: usize) -> f64 {
    let cols: Vec<usize> = (0..k).collect();
    combinations(n.nrows(), k)
        .iter()
        .map(|rows| {
            let sub = DMatrix::from_fn(k, k, |i, j| n[(rows[i], cols[j])]);
            sub.determinant().norm_sqr()
        })
        .sum()
}

#[test]
fn orbit_norm_matches_wedge_expansion() {
    for ty in ["A2", "A3", "A4"] {
        let x = flag(ty, "none");
        let chart = x.chart();
        for k in 1..=chart.parabolic().lie_type().rank() {
            let ov = orbit_vector(chart, k).unwrap();
            for p in sample_points(SEED, 50, chart.dim()) {
                let n = chart.n_matrix().eval(&p.z).unwrap();
                let brute = wedge_norm_brute(&n, k);
                assert!(
                    rel_err(ov.norm_sq(&p.z).unwrap(), brute) < 1e-10,
                    "{ty} node {k}"
                );
            }
        }
    }
}

#[test]
fn orbit_norm_is_unitarily_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (ty, theta) in [("A3", "none"), ("A3", "1,3"), ("C2", "none"), ("D4", "3,4")] {
        let x = flag(ty, theta);
        let chart = x.chart();
        for ov in x.potential().orbits() {
            for p in sample_points(SEED, 10, chart.dim()) {
                let n = chart.n_matrix().eval(&p.z).unwrap();
                let q = random_unitary(n.nrows(), &mut rng);
                let rotated = numeric_minor_norm(&(q * &n), ov.degree());
                assert!(
                    rel_err(rotated, ov.norm_sq(&p.z).unwrap()) < 1e-10,
                    "{ty}/{theta}"
                );
            }
        }
    }
}

#[test]
fn matrix_entry_orbit_for_the_full_flag() {
    let z = |i: usize| poly(3, &[(1, 1, &[i])]);
    let mut n = flagcy_core::PolyMatrix::identity(3, 3);
    n.set(1, 0, z(1));
    n.set(2, 0, z(2));
    n.set(2, 1, z(3));
    let ov = OrbitVector::from_matrix(&n, 2).unwrap();
    let pt = [c(0.2, 0.9), c(-1.3, 0.1), c(0.4, -0.6)];
    let closed = 1.0 + pt[2].norm_sqr() + (pt[0] * pt[2] - pt[1]).norm_sqr();
    assert!(rel_err(ov.norm_sq(&pt).unwrap(), closed) < 1e-14);
}

#[test]
fn analytic_metric_matches_potential_hessian() {
    for (label, ty, theta) in FIXTURES {
        let x = flag(ty, theta);
        let ps = x.potential();
        for p in sample_points(SEED, 5, x.dim()) {
            let g = ps.base_metric(&p.z).unwrap().g;
            let fd = complex_hessian(
                |w| ps.potential_value(w).unwrap(),
                &p.z,
                &vec![1e-4; x.dim()],
            );
            let diff = (g.matrix() - fd)
                .iter()
                .map(|d| d.norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-6, "{label}: {diff:e}");
        }
    }
}

#[test]
fn metric_positive_on_the_unit_polydisk() {
    for (label, ty, theta) in FIXTURES {
        let x = flag(ty, theta);
        for k in 0..100 {
            let p = sample_point(SEED, k, x.dim(), 1.0, 1.0);
            let g = x.potential().base_metric(&p.z).unwrap().g;
            assert!(g.min_eigenvalue() > 0.0, "{label}");
        }
    }
}

#[test]
fn projective_space_metric_at_origin() {
    for n in 1..=4usize {
        let ty = format!("A{n}");
        let x = flag(&ty, "all-but-1");
        let g = x.potential().base_metric(&vec![c(0.0, 0.0); n]).unwrap().g;
        let expected = (n as f64 + 1.0) / (2.0 * PI);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { expected } else { 0.0 };
                assert!((g.get(i, j) - want).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn connection_vanishes_at_origin() {
    for (_, ty, theta) in FIXTURES {
        let x = flag(ty, theta);
        let s = x
            .potential()
            .base_metric(&vec![c(0.0, 0.0); x.dim()])
            .unwrap();
        assert!(s.a.iter().all(|a| a.norm() == 0.0));
        assert_eq!(s.phi, 0.0);
    }
}

#[test]
fn cp2_monge_ampere() {
    let x = flag("A2", "2");
    for p in sample_points(SEED + 1, 25, 2) {
        assert!(x.potential().ma_defect(&p.z).unwrap() < 1e-8);
    }
    assert_eq!(x.potential().ma_defect(&[c(0.0, 0.0); 2]).unwrap(), 0.0);
}

#[test]
fn calabi_origin_is_diagonal() {
    for (label, ty, theta) in FIXTURES {
        let x = flag(ty, theta);
        let n = x.dim();
        let origin = vec![c(0.0, 0.0); n];
        let g0 = x.potential().base_metric(&origin).unwrap().g;
        for constant in [1.0, 0.37] {
            let cm = x.calabi(constant).unwrap();
            let big = cm.total_metric(&origin, c(0.0, 0.0)).unwrap().g;
            let vertical = 1.0 / ((n as f64 + 1.0) * constant.powf(n as f64 / (n as f64 + 1.0)));
            let f0 = constant.powf(1.0 / (n as f64 + 1.0));
            for i in 0..=n {
                for j in 0..=n {
                    let want = if i < n && j < n {
                        g0.get(i, j) * f0
                    } else if i == j {
                        c(vertical, 0.0)
                    } else {
                        c(0.0, 0.0)
                    };
                    assert!(
                        (big.get(i, j) - want).norm() < 1e-14,
                        "{label} C={constant}"
                    );
                }
            }
        }
    }
}

#[test]
fn calabi_positive_on_fibre_grid() {
    for (label, ty, theta) in FIXTURES {
        let x = flag(ty, theta);
        let cm = x.calabi(1.0).unwrap();
        for p in sample_points(SEED, 10, x.dim()) {
            for radius in [0.0, 0.5, 5.0, 10.0] {
                let xi = Complex64::from_polar(radius, p.xi.arg());
                assert!(
                    cm.positivity(&p.z, xi).unwrap() > 0.0,
                    "{label} |ξ|={radius}"
                );
            }
        }
    }
}

#[test]
fn calabi_closed_on_fixtures() {
    for (label, ty, theta) in CALABI_FIXTURES {
        let x = flag(ty, theta);
        for constant in [1.0, 0.37] {
            let cm = x.calabi(constant).unwrap();
            for p in sample_points(SEED, 10, x.dim()) {
                let d = cm
                    .kahlerness_defect(&p.z, p.xi, DEFAULT_KAHLER_STEP)
                    .unwrap();
                assert!(d < 1e-5, "{label} C={constant}: {d:e}");
            }
        }
    }
}

#[test]
fn calabi_ricci_flat_on_remaining_fixtures() {
    for (label, ty, theta) in [
        ("CP3", "A3", "2,3"),
        ("Sp(4)/B", "C2", "none"),
        ("SO(8)/P", "D4", "3,4"),
    ] {
        let x = flag(ty, theta);
        let cm = x.calabi(0.37).unwrap();
        for p in sample_points(SEED, 5, x.dim()) {
            let r = cm
                .ricci_total(&p.z, p.xi, DEFAULT_BASE_STEP, DEFAULT_FIBER_STEP)
                .unwrap();
            assert!(r < 1e-4, "{label}: {r:e}");
        }
    }
}

#[test]
fn determinant_independent_of_fibre_at_origin() {
    let x = flag("A3", "1,3");
    let cm = x.calabi(0.37).unwrap();
    let origin = vec![c(0.0, 0.0); 4];
    let samples: Vec<_> = [0.0, 0.3, 1.0, 4.0, 25.0]
        .iter()
        .map(|&r| (origin.clone(), c(r, -0.5 * r)))
        .collect();
    assert!(cm.det_constancy(&samples).unwrap() < 1e-13);
}

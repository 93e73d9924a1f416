#![allow(dead_code)]

use flagcy_core::rootsys::parse_theta;
use flagcy_core::symalg::rat;
use flagcy_core::{Complex64, FlagManifold, LieType, Poly};

/// Worked examples: (label, type, theta).
pub const FIXTURES: &[(&str, &str, &str)] = &[
    ("CP1", "A1", "none"),
    ("CP2", "A2", "2"),
    ("CP3", "A3", "2,3"),
    ("Gr(2,4)", "A3", "1,3"),
    ("W6", "A2", "none"),
    ("Sp(4)/B", "C2", "none"),
    ("SO(8)/P", "D4", "3,4"),
];

pub const CALABI_FIXTURES: &[(&str, &str, &str)] = &[
    ("CP1", "A1", "none"),
    ("CP2", "A2", "2"),
    ("Gr(2,4)", "A3", "1,3"),
    ("W6", "A2", "none"),
];

pub const SEED: u64 = 20_240_601;

pub fn flag(ty: &str, theta: &str) -> FlagManifold {
    FlagManifold::parse(ty, theta).unwrap()
}

pub fn flag_weighted(ty: &str, theta: &str, weights: &[f64]) -> FlagManifold {
    let ty: LieType = ty.parse().unwrap();
    FlagManifold::new(ty, &parse_theta(theta, ty.rank()).unwrap(), Some(weights)).unwrap()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Σ (num/den) Π z_v` with 1-based variable indices.
pub fn poly(nvars: usize, terms: &[(i64, i64, &[usize])]) -> Poly {
    terms
        .iter()
        .fold(Poly::zero(nvars), |acc, (num, den, vars)| {
            let mono = vars
                .iter()
                .fold(Poly::one(nvars), |m, &v| &m * &Poly::var(nvars, v - 1));
            &acc + &mono.scale(&rat(*num, *den))
        })
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

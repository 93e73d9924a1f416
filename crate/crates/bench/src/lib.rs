//! Benchmark cases shared by the criterion targets.

use flagcy_core::FlagManifold;

/// `(label, type, theta)` for the benchmarked flag manifolds.
pub const CASES: &[(&str, &str, &str)] = &[
    ("CP2", "A2", "2"),
    ("Gr24", "A3", "1,3"),
    ("Sp4", "C2", "none"),
    ("SO8", "D4", "3,4"),
];

pub fn manifold(ty: &str, theta: &str) -> FlagManifold {
    FlagManifold::parse(ty, theta).expect("benchmark case is valid")
}

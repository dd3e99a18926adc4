//! Benchmark fixtures shared by the criterion targets.

use taurep::{ConstructionParams, DirichletCharacter};

/// The parameter sets timed by the benches: `(label, χ, ℓ, k, e)`.
pub fn fixtures() -> Vec<(&'static str, ConstructionParams)> {
    let chi = |s: &str| s.parse::<DirichletCharacter>().expect("valid label");
    vec![
        ("D7_a2_chi7", ConstructionParams::new(chi("7.6"), 3, 7, 1)),
        ("D7_a2_phi", ConstructionParams::new(chi("7.3"), 3, 7, 1)),
        ("D13_b", ConstructionParams::new(chi("13.4"), 4, 6, 1)),
        ("D29_c", ConstructionParams::new(chi("29.28"), 4, 4, 2)),
    ]
}

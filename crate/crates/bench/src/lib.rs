//! Fixed inputs shared by the benchmarks.

use qdeficit::families;
use qdeficit::DensityMatrix;

/// A handful of states covering the cheap and expensive ends of the search.
pub fn fixture_states() -> Vec<(&'static str, DensityMatrix)> {
    vec![
        ("rho_a_0.05", families::rho_a(0.05).expect("valid parameter")),
        ("rho_p_0.3", families::rho_p(0.3).expect("valid parameter")),
        ("isotropic_0.5", families::isotropic(0.5).expect("valid parameter")),
        (
            "sigma_at_root",
            families::sigma_at(1.101_222_695_442_399, 2.0).expect("valid parameter"),
        ),
    ]
}

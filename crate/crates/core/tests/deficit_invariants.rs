mod common;

use std::f64::consts::PI;

use common::{state, unitary};
use proptest::prelude::*;
use qdeficit::families::rho_a;
use qdeficit::info::relative_entropy;
use qdeficit::optimizer::{dephase, dephased_entropy};
use qdeficit::{deficit_zero_way, BasisPair, OptimizerConfig};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dephasing_never_lowers_entropy(
        rho in state(),
        ta in 0.0..PI, pa in 0.0..2.0 * PI, tb in 0.0..PI, pb in 0.0..2.0 * PI,
    ) {
        let basis = BasisPair::new(ta, pa, tb, pb);
        prop_assert!(dephased_entropy(&rho, &basis) >= rho.entropy() - 1e-12);
    }

    #[test]
    fn bound_chain(rho in state()) {
        let d = deficit_zero_way(&rho, &OptimizerConfig::default()).unwrap();
        prop_assert!(d.delta0 >= (d.i_m - 1.0).max(0.0) - 1e-6);
        prop_assert!(d.delta0 <= d.i_m + 1e-6);
        prop_assert!((d.delta0 + d.delta_cl0 - d.i_m).abs() <= 1e-12);
        prop_assert!((d.il0 - (2.0 - rho.entropy() - d.delta0)).abs() <= 1e-12);
    }

    #[test]
    fn local_unitary_invariance(rho in state(), ua in unitary(), ub in unitary()) {
        let cfg = OptimizerConfig::default();
        let d1 = deficit_zero_way(&rho, &cfg).unwrap().delta0;
        let d2 = deficit_zero_way(&rho.conjugate_local(&ua, &ub), &cfg).unwrap().delta0;
        prop_assert!((d1 - d2).abs() <= 2e-6, "{d1} vs {d2}");
    }

    #[test]
    fn swap_symmetry(rho in state()) {
        let cfg = OptimizerConfig::default();
        let d1 = deficit_zero_way(&rho, &cfg).unwrap().delta0;
        let d2 = deficit_zero_way(&rho.swapped(), &cfg).unwrap().delta0;
        prop_assert!((d1 - d2).abs() <= 2e-6);
    }

    #[test]
    fn relative_entropy_to_optimal_dephasing(rho in state()) {
        let d = deficit_zero_way(&rho, &OptimizerConfig::default()).unwrap();
        let classical = dephase(&rho, &d.best_basis);
        prop_assert!((relative_entropy(&rho, &classical) - d.delta0).abs() <= 1e-8);
    }

    #[test]
    fn complementary_rho_a(a in 0.0f64..1.0) {
        let cfg = OptimizerConfig::default();
        let d1 = deficit_zero_way(&rho_a(a).unwrap(), &cfg).unwrap().delta0;
        let d2 = deficit_zero_way(&rho_a(1.0 - a).unwrap(), &cfg).unwrap().delta0;
        prop_assert!((d1 - d2).abs() <= 2e-6);
    }

    #[test]
    fn best_basis_is_canonical(rho in state()) {
        let d = deficit_zero_way(&rho, &OptimizerConfig::default()).unwrap();
        let b = d.best_basis;
        prop_assert_eq!(b, b.canonical());
        prop_assert!((dephased_entropy(&rho, &b) - d.min_entropy).abs() <= 1e-12);
    }
}

#[test]
fn deterministic_across_calls() {
    let rho = rho_a(0.3).unwrap();
    let cfg = OptimizerConfig::default();
    let a = deficit_zero_way(&rho, &cfg).unwrap();
    let b = deficit_zero_way(&rho, &cfg).unwrap();
    assert_eq!(a.delta0.to_bits(), b.delta0.to_bits());
    assert_eq!(a.best_basis, b.best_basis);
}

#![allow(dead_code)]

use proptest::prelude::*;
use qdeficit::families::{random_density_matrix, random_qubit_unitary};
use qdeficit::{DensityMatrix, QubitUnitary};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn state() -> impl Strategy<Value = DensityMatrix> {
    any::<u64>().prop_map(|s| random_density_matrix(&mut ChaCha8Rng::seed_from_u64(s)))
}

pub fn unitary() -> impl Strategy<Value = QubitUnitary> {
    any::<u64>().prop_map(|s| random_qubit_unitary(&mut ChaCha8Rng::seed_from_u64(s)))
}

pub fn sorted_close(a: &[f64; 4], b: &[f64; 4], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

use super::{bloch_vector, outcome_entropy, BasisPair};
use crate::qmat::DensityMatrix;

/// Dephased entropy from the Pauli expansion of a state.
///
/// With `r_A`, `r_B` the local Bloch vectors and `T` the correlation
/// matrix, measuring along `±n_A`, `±n_B` gives
/// `p(s,t) = (1 + s n_A·r_A + t n_B·r_B + s t n_A·T n_B) / 4`.
#[derive(Clone, Copy, Debug)]
pub struct DephasingObjective {
    r_a: [f64; 3],
    r_b: [f64; 3],
    t: [[f64; 3]; 3],
}

impl DephasingObjective {
    pub fn new(rho: &DensityMatrix) -> Self {
        let r = rho.pauli_correlations();
        Self {
            r_a: [r[1][0], r[2][0], r[3][0]],
            r_b: [r[0][1], r[0][2], r[0][3]],
            t: std::array::from_fn(|i| std::array::from_fn(|j| r[i + 1][j + 1])),
        }
    }

    pub fn probabilities(&self, na: &[f64; 3], nb: &[f64; 3]) -> [f64; 4] {
        let x = dot(na, &self.r_a);
        let y = dot(nb, &self.r_b);
        let z = dot(&self.transpose_apply(na), nb);
        outcome_probabilities(x, y, z)
    }

    pub fn entropy(&self, basis: &BasisPair) -> f64 {
        let (na, nb) = basis.directions();
        outcome_entropy(self.probabilities(&na, &nb))
    }

    pub(crate) fn entropy_at(&self, x: &[f64; 4]) -> f64 {
        let na = bloch_vector(x[0], x[1]);
        let nb = bloch_vector(x[2], x[3]);
        outcome_entropy(self.probabilities(&na, &nb))
    }

    /// Entropies for every pair of grid directions, row-major in (A, B).
    pub fn grid_scores(&self, grid: &[(f64, f64)]) -> Vec<f64> {
        let dirs: Vec<[f64; 3]> = grid.iter().map(|&(t, p)| bloch_vector(t, p)).collect();
        let ys: Vec<f64> = dirs.iter().map(|nb| dot(nb, &self.r_b)).collect();
        let mut out = Vec::with_capacity(dirs.len() * dirs.len());
        for na in &dirs {
            let x = dot(na, &self.r_a);
            let u = self.transpose_apply(na);
            for (nb, &y) in dirs.iter().zip(&ys) {
                let z = dot(&u, nb);
                out.push(outcome_entropy(outcome_probabilities(x, y, z)));
            }
        }
        out
    }

    /// Product of the marginal eigenbases (computational basis for a
    /// maximally mixed marginal).
    pub fn local_eigenbasis(&self) -> BasisPair {
        let angles = |r: &[f64; 3]| {
            let len = dot(r, r).sqrt();
            if len < 1e-12 {
                (0.0, 0.0)
            } else {
                (r[0].hypot(r[1]).atan2(r[2]), r[1].atan2(r[0]))
            }
        };
        let (ta, pa) = angles(&self.r_a);
        let (tb, pb) = angles(&self.r_b);
        BasisPair::new(ta, pa, tb, pb).canonical()
    }

    /// `Tᵀ n`, so that `n_A·T n_B = (Tᵀ n_A)·n_B`.
    fn transpose_apply(&self, n: &[f64; 3]) -> [f64; 3] {
        std::array::from_fn(|j| (0..3).map(|i| n[i] * self.t[i][j]).sum())
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn outcome_probabilities(x: f64, y: f64, z: f64) -> [f64; 4] {
    [
        0.25 * (1.0 + x + y + z),
        0.25 * (1.0 + x - y - z),
        0.25 * (1.0 - x + y - z),
        0.25 * (1.0 - x - y + z),
    ]
}

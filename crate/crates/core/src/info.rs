//! Entropies and correlation measures, all in bits.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::qmat::{hermitian_eigensystem, CMatrix, DensityMatrix, Subsystem};

/// Eigenvalues below this count as zero before taking logarithms.
pub const EIGENVALUE_FLOOR: f64 = 1e-14;
const ENTRY_TOL: f64 = 1e-12;
const SUM_TOL: f64 = 1e-10;
/// Eigenvalues of the second argument of [`relative_entropy`] below this
/// span its kernel.
pub const KERNEL_TOL: f64 = 1e-12;
const SUPPORT_WEIGHT_TOL: f64 = 1e-10;

/// Four-outcome distribution, e.g. the diagonal of a dephased two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbDist([f64; 4]);

impl ProbDist {
    /// Clamps entries that are negative or above one by at most `1e-12` and
    /// renormalizes when the sum is within `1e-10` of one.
    pub fn new(p: [f64; 4]) -> Result<Self> {
        Ok(Self(clamp_distribution(p)?))
    }

    pub fn uniform() -> Self {
        Self([0.25; 4])
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.0
    }

    pub fn entropy(&self) -> f64 {
        entropy_unchecked(&self.0)
    }

    /// `p00 p11 − p01 p10`; zero iff the distribution factorizes.
    pub fn correlation(&self) -> f64 {
        let [p00, p01, p10, p11] = self.0;
        p00 * p11 - p01 * p10
    }

    /// Outcome marginals `(P(A=0), P(B=0))`.
    pub fn marginals(&self) -> (f64, f64) {
        let [p00, p01, p10, _] = self.0;
        (p00 + p01, p00 + p10)
    }
}

fn clamp_distribution<const N: usize>(mut p: [f64; N]) -> Result<[f64; N]> {
    for &x in &p {
        if !x.is_finite() || !(-ENTRY_TOL..=1.0 + ENTRY_TOL).contains(&x) {
            return Err(Error::Distribution(format!("entry {x} outside [0, 1]")));
        }
    }
    p.iter_mut().for_each(|x| *x = x.clamp(0.0, 1.0));
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::Distribution(format!("entries sum to {sum}")));
    }
    p.iter_mut().for_each(|x| *x /= sum);
    Ok(p)
}

fn entropy_term(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// `-Σ p log2 p` with no validation; nonpositive entries contribute nothing.
pub(crate) fn entropy_unchecked(p: &[f64]) -> f64 {
    p.iter().copied().map(entropy_term).sum()
}

/// Shannon entropy of a distribution of any length.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &x in p {
        if !x.is_finite() || x < -ENTRY_TOL {
            return Err(Error::Distribution(format!("entry {x} is negative")));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::Distribution(format!("entries sum to {sum}")));
    }
    Ok(entropy_unchecked(p))
}

/// `H(x) = -x log2 x - (1-x) log2 (1-x)`
pub fn binary_entropy(x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    Ok(entropy_term(x) + entropy_term(1.0 - x))
}

pub(crate) fn spectrum_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .map(|&l| if l < EIGENVALUE_FLOOR { 0.0 } else { entropy_term(l) })
        .sum()
}

/// Von Neumann entropy of a Hermitian matrix of either size.
pub fn von_neumann_entropy<const N: usize>(m: &CMatrix<N>) -> Result<f64> {
    Ok(spectrum_entropy(&hermitian_eigensystem(m)?.values))
}

impl DensityMatrix {
    pub fn entropy(&self) -> f64 {
        spectrum_entropy(&self.eigenvalues())
    }

    pub fn marginal_entropy(&self, keep: Subsystem) -> f64 {
        von_neumann_entropy(&self.partial_trace(keep)).expect("marginal of a density matrix")
    }
}

/// Entropies and information quantities of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfoSummary {
    /// `S(ρ_AB)`
    pub s_total: f64,
    pub s_a: f64,
    pub s_b: f64,
    /// Information content `2 − S(ρ_AB)`.
    pub i_content: f64,
    /// Local information `2 − S_A − S_B`.
    pub i_lo: f64,
    /// Mutual information `S_A + S_B − S_AB`.
    pub i_m: f64,
}

pub fn info_summary(rho: &DensityMatrix) -> InfoSummary {
    let s_total = rho.entropy();
    let s_a = rho.marginal_entropy(Subsystem::A);
    let s_b = rho.marginal_entropy(Subsystem::B);
    InfoSummary {
        s_total,
        s_a,
        s_b,
        i_content: 2.0 - s_total,
        i_lo: 2.0 - s_a - s_b,
        i_m: s_a + s_b - s_total,
    }
}

pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    info_summary(rho).i_m
}

/// `S(ρ‖σ)` in bits, or `f64::INFINITY` when `ρ` has weight on the kernel of `σ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let es = sigma.eigensystem();
    let mut cross = 0.0;
    for k in 0..4 {
        let weight = rho.matrix().expectation(&es.vector(k)).re;
        if es.values[k] < KERNEL_TOL {
            if weight > SUPPORT_WEIGHT_TOL {
                return f64::INFINITY;
            }
        } else {
            cross += weight * es.values[k].log2();
        }
    }
    // tr ρ log ρ − tr ρ log σ
    (-rho.entropy() - cross).max(0.0)
}

/// Smallest eigenvalue of the partial transpose on B; nonnegative iff the
/// state is separable.
pub fn negativity_min_eig(rho: &DensityMatrix) -> f64 {
    hermitian_eigensystem(&rho.partial_transpose(Subsystem::B))
        .expect("partial transpose of a density matrix is Hermitian")
        .values[0]
}

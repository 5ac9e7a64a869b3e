//! Zero-way deficit by global minimization of the dephased-state entropy.
//!
//! A complete local dephasing is fixed by one Bloch direction per qubit, so
//! the search runs over four angles `(θ_A, φ_A, θ_B, φ_B)`. A coarse grid over
//! the upper hemisphere of each Bloch sphere seeds Nelder–Mead refinements,
//! together with the product of the local eigenbases.

mod config;
mod objective;
pub mod simplex;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

pub use config::OptimizerConfig;
pub use objective::DephasingObjective;

use crate::info::{entropy_unchecked, info_summary, ProbDist};
use crate::qmat::{bloch_basis, tensor_product, DensityMatrix, Mat4, QubitUnitary};
use crate::Result;

/// Reported deficits in `[-CLAMP_TOL, 0)` are rounded up to zero.
pub const CLAMP_TOL: f64 = 1e-8;
const POLE_TOL: f64 = 1e-12;
const RESTARTS: usize = 3;

/// Product measurement basis given by a Bloch direction on each qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisPair {
    pub theta_a: f64,
    pub phi_a: f64,
    pub theta_b: f64,
    pub phi_b: f64,
}

impl BasisPair {
    pub fn new(theta_a: f64, phi_a: f64, theta_b: f64, phi_b: f64) -> Self {
        Self {
            theta_a,
            phi_a,
            theta_b,
            phi_b,
        }
    }

    pub fn computational() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Eigenbasis of σ_x on both sides, i.e. the Hadamard basis.
    pub fn hadamard() -> Self {
        Self::new(FRAC_PI_2, 0.0, FRAC_PI_2, 0.0)
    }

    pub fn from_array(x: [f64; 4]) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.theta_a, self.phi_a, self.theta_b, self.phi_b]
    }

    /// Bloch vectors of the first basis vector on each side.
    pub fn directions(&self) -> ([f64; 3], [f64; 3]) {
        (
            bloch_vector(self.theta_a, self.phi_a),
            bloch_vector(self.theta_b, self.phi_b),
        )
    }

    pub fn unitaries(&self) -> (QubitUnitary, QubitUnitary) {
        (
            bloch_basis(self.theta_a, self.phi_a),
            bloch_basis(self.theta_b, self.phi_b),
        )
    }

    /// Representative with `θ ∈ [0, π/2]` on each side, `φ ∈ [0, π)` on the
    /// equator and `φ = 0` at the pole. Flipping a Bloch direction only
    /// relabels outcomes, so the dephased entropy is unchanged.
    pub fn canonical(&self) -> Self {
        let side = |theta: f64, phi: f64| {
            if is_canonical(theta, phi) {
                (theta, phi)
            } else {
                canonical_angles(bloch_vector(theta, phi))
            }
        };
        let (ta, pa) = side(self.theta_a, self.phi_a);
        let (tb, pb) = side(self.theta_b, self.phi_b);
        Self::new(ta, pa, tb, pb)
    }

    /// Largest angle between corresponding projector axes of `self` and
    /// `other`, in radians, ignoring the sign of each axis.
    pub fn projector_distance(&self, other: &Self) -> f64 {
        let (a1, b1) = self.directions();
        let (a2, b2) = other.directions();
        axis_angle(a1, a2).max(axis_angle(b1, b2))
    }
}

pub(crate) fn bloch_vector(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

fn is_canonical(theta: f64, phi: f64) -> bool {
    if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
        return false;
    }
    let (st, ct) = theta.sin_cos();
    if st < POLE_TOL {
        phi == 0.0 && ct > 0.0
    } else if ct.abs() <= POLE_TOL {
        phi < PI - POLE_TOL
    } else {
        ct > 0.0
    }
}

fn canonical_angles(mut n: [f64; 3]) -> (f64, f64) {
    let flip = |n: [f64; 3]| [-n[0], -n[1], -n[2]];
    if n[2] < -POLE_TOL {
        n = flip(n);
    } else if n[2].abs() <= POLE_TOL {
        let phi = n[1].atan2(n[0]);
        if !(0.0..PI - POLE_TOL).contains(&phi) {
            n = flip(n);
        }
    }
    let rho = n[0].hypot(n[1]);
    let theta = rho.atan2(n[2]);
    let phi = if rho < POLE_TOL {
        0.0
    } else {
        n[1].atan2(n[0]).rem_euclid(TAU)
    };
    (theta, if phi >= TAU { 0.0 } else { phi })
}

fn axis_angle(u: [f64; 3], v: [f64; 3]) -> f64 {
    let dot: f64 = (0..3).map(|k| u[k] * v[k]).sum();
    dot.abs().min(1.0).acos()
}

/// Result of [`deficit_zero_way`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeficitResult {
    /// Δ∅ = min S(ρ') − S(ρ)
    pub delta0: f64,
    /// Δ∅_cl = I_M − Δ∅
    pub delta_cl0: f64,
    /// I_l∅ = I(ρ) − Δ∅
    pub il0: f64,
    pub best_basis: BasisPair,
    pub dephased: ProbDist,
    /// Objective evaluations spent, grid included.
    pub evaluations: usize,
    /// Minimum dephased entropy found.
    pub min_entropy: f64,
    /// S(ρ)
    pub entropy: f64,
    pub i_m: f64,
    /// False if the winning refinement ran out of iterations.
    pub converged: bool,
}

/// Diagonal of `(U_A⊗U_B) ρ (U_A⊗U_B)†` for the given basis.
pub fn dephased_distribution(rho: &DensityMatrix, basis: &BasisPair) -> ProbDist {
    let (ua, ub) = basis.unitaries();
    let diag = rho.conjugate_local(&ua, &ub).matrix().diagonal_real();
    ProbDist::new(diag).expect("diagonal of a density matrix is a distribution")
}

/// Entropy after complete dephasing in `basis`, computed by explicit conjugation.
pub fn dephased_entropy(rho: &DensityMatrix, basis: &BasisPair) -> f64 {
    dephased_distribution(rho, basis).entropy()
}

/// The dephased state itself, expressed in the computational basis.
pub fn dephase(rho: &DensityMatrix, basis: &BasisPair) -> DensityMatrix {
    let (ua, ub) = basis.unitaries();
    let u = tensor_product(ua.matrix(), ub.matrix());
    let diag = dephased_distribution(rho, basis).probabilities();
    let rotated_back: Mat4 = Mat4::from_diagonal(diag).conjugate_by(&u.adjoint());
    DensityMatrix::normalized(rotated_back).expect("dephased state is a density matrix")
}

#[derive(Clone, Copy, Debug)]
pub struct Minimum {
    pub min_entropy: f64,
    pub argmin: BasisPair,
    pub evaluations: usize,
    pub converged: bool,
}

/// Global minimum of the dephased entropy over product bases.
pub fn minimize_dephased_entropy(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<Minimum> {
    cfg.validate()?;
    let objective = DephasingObjective::new(rho);
    let grid = hemisphere_grid(cfg.coarse_grid_points_per_axis);

    let scores = objective.grid_scores(&grid);
    let mut evaluations = scores.len();
    let mut order: Vec<usize> = (0..scores.len()).collect();
    let keep = cfg.refine_starts.min(order.len());
    let by_score = |&i: &usize, &j: &usize| scores[i].total_cmp(&scores[j]).then(i.cmp(&j));
    if keep < order.len() {
        order.select_nth_unstable_by(keep, by_score);
        order.truncate(keep);
    }
    order.sort_by(by_score);

    let mut starts: Vec<[f64; 4]> = order
        .iter()
        .map(|&idx| {
            let (ia, ib) = (idx / grid.len(), idx % grid.len());
            [grid[ia].0, grid[ia].1, grid[ib].0, grid[ib].1]
        })
        .collect();
    starts.push(objective.local_eigenbasis().to_array());

    let step = grid_step(cfg.coarse_grid_points_per_axis);
    let mut candidates: Vec<(f64, BasisPair, bool)> = Vec::with_capacity(starts.len());
    for x0 in starts {
        let (f, x, evals, converged) = refine(&objective, x0, step, cfg);
        evaluations += evals;
        candidates.push((f, BasisPair::from_array(x).canonical(), converged));
    }

    let best = candidates
        .iter()
        .map(|c| c.0)
        .fold(f64::INFINITY, f64::min);
    let (min_entropy, argmin, converged) = candidates
        .into_iter()
        .filter(|c| c.0 <= best + cfg.tolerance)
        .min_by(|x, y| {
            let (a, b) = (x.1.to_array(), y.1.to_array());
            a.iter()
                .zip(&b)
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("at least one refinement");

    Ok(Minimum {
        min_entropy,
        argmin,
        evaluations,
        converged,
    })
}

fn refine(
    objective: &DephasingObjective,
    x0: [f64; 4],
    step: [f64; 4],
    cfg: &OptimizerConfig,
) -> (f64, [f64; 4], usize, bool) {
    let f = |x: &[f64; 4]| objective.entropy_at(x);
    let mut out = simplex::nelder_mead(f, x0, step, cfg.tolerance, cfg.max_iterations);
    let mut evaluations = out.evaluations;
    let mut scale = 0.25;
    // restart from the best vertex with a smaller simplex until it stops paying off
    for _ in 0..RESTARTS {
        if !out.converged {
            break;
        }
        let s = step.map(|v| v * scale);
        let next = simplex::nelder_mead(f, out.x, s, cfg.tolerance, cfg.max_iterations);
        evaluations += next.evaluations;
        let gain = out.f - next.f;
        if next.f <= out.f {
            out = next;
        }
        if gain < cfg.tolerance {
            break;
        }
        scale *= 0.25;
    }
    (out.f, out.x, evaluations, out.converged)
}

/// Polar angles `θ_k = k·(π/2)/(n−1)` and azimuths `φ_l = 2πl/n`, dropping
/// duplicate poles and antipodal equator points.
pub fn hemisphere_grid(points_per_axis: usize) -> Vec<(f64, f64)> {
    let n = points_per_axis.max(1);
    let mut out = vec![(0.0, 0.0)];
    if n == 1 {
        return out;
    }
    for k in 1..n {
        let theta = FRAC_PI_2 * (k as f64 / (n - 1) as f64);
        for l in 0..n {
            let phi = TAU * l as f64 / n as f64;
            if k == n - 1 && phi >= PI - POLE_TOL {
                continue;
            }
            out.push((theta, phi));
        }
    }
    out
}

fn grid_step(points_per_axis: usize) -> [f64; 4] {
    let n = points_per_axis.max(2) as f64;
    let dtheta = FRAC_PI_2 / (n - 1.0);
    let dphi = TAU / n;
    [0.5 * dtheta, 0.5 * dphi, 0.5 * dtheta, 0.5 * dphi]
}

/// Δ∅(ρ) together with Δ∅_cl, I_l∅ and the optimal basis.
pub fn deficit_zero_way(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<DeficitResult> {
    let m = minimize_dephased_entropy(rho, cfg)?;
    let info = info_summary(rho);
    let dephased = dephased_distribution(rho, &m.argmin);
    let min_entropy = m.min_entropy.min(dephased.entropy());
    let mut delta0 = min_entropy - info.s_total;
    if (-CLAMP_TOL..0.0).contains(&delta0) {
        delta0 = 0.0;
    }
    if !m.converged {
        log::warn!("deficit optimizer hit the iteration budget; reporting best point found");
    }
    Ok(DeficitResult {
        delta0,
        delta_cl0: info.i_m - delta0,
        il0: info.i_content - delta0,
        best_basis: m.argmin,
        dephased,
        evaluations: m.evaluations,
        min_entropy,
        entropy: info.s_total,
        i_m: info.i_m,
        converged: m.converged,
    })
}

/// True iff Δ∅(ρ) ≤ `tol`.
pub fn is_classically_correlated(
    rho: &DensityMatrix,
    tol: f64,
    cfg: &OptimizerConfig,
) -> Result<bool> {
    Ok(deficit_zero_way(rho, cfg)?.delta0 <= tol)
}

/// Shannon entropy of a four-outcome vector after clamping rounding noise.
pub(crate) fn outcome_entropy(p: [f64; 4]) -> f64 {
    entropy_unchecked(&p.map(|x| x.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::relative_entropy;
    use crate::qmat::{Complex64, Mat4};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn psi_plus() -> DensityMatrix {
        DensityMatrix::pure(&[c(0.0), c(1.0), c(1.0), c(0.0)]).unwrap()
    }

    #[test]
    fn diagonal_state_in_computational_basis() {
        let rho = DensityMatrix::new(Mat4::from_diagonal([0.1, 0.2, 0.3, 0.4])).unwrap();
        let h = dephased_entropy(&rho, &BasisPair::computational());
        assert!((h - rho.entropy()).abs() < 1e-12);
    }

    #[test]
    fn psi_plus_computational_basis() {
        let p = dephased_distribution(&psi_plus(), &BasisPair::computational());
        let want = [0.0, 0.5, 0.5, 0.0];
        for k in 0..4 {
            assert!((p.probabilities()[k] - want[k]).abs() < 1e-15);
        }
        assert!((p.entropy() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_everywhere_two_bits() {
        let rho = DensityMatrix::maximally_mixed();
        for basis in [BasisPair::computational(), BasisPair::new(0.3, 1.0, 2.0, 5.0)] {
            assert!((dephased_entropy(&rho, &basis) - 2.0).abs() < 1e-14);
        }
        let r = deficit_zero_way(&rho, &OptimizerConfig::default()).unwrap();
        assert_eq!(r.delta0, 0.0);
        assert!((r.min_entropy - 2.0).abs() < 1e-12);
    }

    #[test]
    fn psi_plus_deficit_is_one() {
        let r = deficit_zero_way(&psi_plus(), &OptimizerConfig::default()).unwrap();
        assert!((r.delta0 - 1.0).abs() < 1e-9);
        assert!((r.i_m - 2.0).abs() < 1e-9);
        assert!((r.delta_cl0 - 1.0).abs() < 1e-9);
        assert!((r.il0 - 1.0).abs() < 1e-9);
        assert!(r.converged);
        assert!(!is_classically_correlated(&psi_plus(), 1e-6, &OptimizerConfig::default()).unwrap());
    }

    #[test]
    fn canonical_representatives() {
        let b = BasisPair::new(PI, 1.3, FRAC_PI_2, PI).canonical();
        assert!(b.theta_a.abs() < 1e-12 && b.phi_a == 0.0);
        assert!((b.theta_b - FRAC_PI_2).abs() < 1e-12 && b.phi_b.abs() < 1e-12);

        let lower = BasisPair::new(2.5, 0.4, 0.7, -0.5).canonical();
        assert!((lower.theta_a - (PI - 2.5)).abs() < 1e-12);
        assert!((lower.phi_a - (0.4 + PI)).abs() < 1e-12);
        assert!((lower.phi_b - (TAU - 0.5)).abs() < 1e-12);
        assert!(BasisPair::new(2.5, 0.4, 0.7, -0.5).projector_distance(&lower) < 1e-12);
    }

    #[test]
    fn canonical_keeps_entropy() {
        let rho = DensityMatrix::mixture(&[
            (0.7, psi_plus()),
            (0.3, DensityMatrix::new(Mat4::from_diagonal([0.1, 0.2, 0.3, 0.4])).unwrap()),
        ])
        .unwrap();
        for x in [[2.8, 0.3, 1.1, 4.0], [-0.4, 7.0, 3.0, -2.0], [FRAC_PI_2, 4.5, PI, 0.0]] {
            let b = BasisPair::from_array(x);
            let diff = dephased_entropy(&rho, &b) - dephased_entropy(&rho, &b.canonical());
            assert!(diff.abs() < 1e-13);
        }
    }

    #[test]
    fn grid_drops_duplicates() {
        let g = hemisphere_grid(16);
        assert_eq!(g.len(), 1 + 14 * 16 + 8);
        assert_eq!(hemisphere_grid(1), vec![(0.0, 0.0)]);
        assert!(g.contains(&(FRAC_PI_2, 0.0)));
    }

    #[test]
    fn relative_entropy_to_dephased_state() {
        let rho = DensityMatrix::mixture(&[
            (0.55, psi_plus()),
            (0.45, DensityMatrix::new(Mat4::from_diagonal([0.4, 0.1, 0.2, 0.3])).unwrap()),
        ])
        .unwrap();
        for basis in [
            BasisPair::computational(),
            BasisPair::hadamard(),
            BasisPair::new(0.7, 2.0, 1.3, 0.4),
        ] {
            let d = dephase(&rho, &basis);
            let lhs = relative_entropy(&rho, &d);
            let rhs = d.entropy() - rho.entropy();
            assert!((lhs - rhs).abs() < 1e-10, "{lhs} vs {rhs}");
            assert!((d.entropy() - dephased_entropy(&rho, &basis)).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_invalid_config() {
        let cfg = OptimizerConfig {
            tolerance: 0.0,
            ..Default::default()
        };
        assert!(deficit_zero_way(&psi_plus(), &cfg).is_err());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let rho = DensityMatrix::mixture(&[
            (0.6, psi_plus()),
            (0.4, DensityMatrix::new(Mat4::from_diagonal([0.4, 0.1, 0.2, 0.3])).unwrap()),
        ])
        .unwrap();
        let cfg = OptimizerConfig {
            max_iterations: 1,
            coarse_grid_points_per_axis: 3,
            tolerance: 1e-15,
            ..Default::default()
        };
        let r = deficit_zero_way(&rho, &cfg).unwrap();
        assert!(!r.converged);
        assert!(r.delta0 >= 0.0);
    }
}

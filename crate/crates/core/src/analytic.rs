//! Closed-form expressions for the `ρ_a` family and the `σ_{a,t}` analysis.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Result};
use crate::families::sigma_at;
use crate::info::{binary_entropy, ProbDist};
use crate::optimizer::BasisPair;
use crate::qmat::{tensor_product, Mat2, QubitUnitary, Subsystem};

const ARTANH_GUARD: f64 = 1.0 - 1e-15;
const ROOT_TOL: f64 = 1e-12;
const DEGENERATE_TOL: f64 = 1e-12;

/// `artanh` with the argument clamped away from ±1.
pub fn artanh(x: f64) -> f64 {
    x.clamp(-ARTANH_GUARD, ARTANH_GUARD).atanh()
}

fn at_peak(x: f64) -> bool {
    x.sin().abs() >= ARTANH_GUARD
}

/// `α` with `sin α = 1 − 2a` and `cos α = 2√(a(1−a))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaParam {
    pub alpha: f64,
    pub a: f64,
}

impl AlphaParam {
    pub fn from_a(a: f64) -> Result<Self> {
        check_unit_interval("a", a)?;
        Ok(Self {
            alpha: (1.0 - 2.0 * a).asin(),
            a,
        })
    }

    pub fn from_alpha(alpha: f64) -> Self {
        Self {
            alpha,
            a: 0.5 * (1.0 - alpha.sin()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SCPair {
    pub s: f64,
    pub c: f64,
}

/// `s` and `c` for `ρ_a` measured with the angle chart `(γ, δ)` on each side.
pub fn sc_values(a: f64, gamma_a: f64, gamma_b: f64, delta_a: f64, delta_b: f64) -> Result<SCPair> {
    check_unit_interval("a", a)?;
    Ok(SCPair {
        s: 2.0 * (a * (1.0 - a)).sqrt() * gamma_a.sin() * gamma_b.sin() * delta_a.cos() * delta_b.cos(),
        c: (1.0 - 2.0 * a) * gamma_a.cos(),
    })
}

/// The Bloch-chart basis pair with the same projectors as angles `(γ, δ)`.
pub fn basis_from_angles(gamma_a: f64, gamma_b: f64, delta_a: f64, delta_b: f64) -> BasisPair {
    BasisPair::new(gamma_a, PI - delta_a, gamma_b, PI - delta_b)
}

/// Outcome distribution `((1+s−c)/4, (1−s−c)/4, (1−s+c)/4, (1+s+c)/4)`.
pub fn dephased_distribution(sc: SCPair) -> Result<ProbDist> {
    let SCPair { s, c } = sc;
    ProbDist::new([
        (1.0 + s - c) / 4.0,
        (1.0 - s - c) / 4.0,
        (1.0 - s + c) / 4.0,
        (1.0 + s + c) / 4.0,
    ])
}

/// `H((1 + sin x)/2)`
pub fn h_s(x: f64) -> f64 {
    let p = (0.5 * (1.0 + x.sin())).clamp(0.0, 1.0);
    binary_entropy(p).expect("clamped to [0, 1]")
}

/// `H((1 + cos x)/2)`
pub fn h_c(x: f64) -> f64 {
    let p = (0.5 * (1.0 + x.cos())).clamp(0.0, 1.0);
    binary_entropy(p).expect("clamped to [0, 1]")
}

/// `dH_s/dx = −cos x · artanh(sin x) / ln 2`, which tends to 0 at the peaks.
pub fn dh_s(x: f64) -> f64 {
    if at_peak(x) {
        0.0
    } else {
        -x.cos() * x.sin().atanh() / LN_2
    }
}

/// A second derivative that may sit on a logarithmic pole.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Curvature {
    Finite(f64),
    Pole,
}

impl Curvature {
    pub fn value(self) -> Option<f64> {
        match self {
            Curvature::Finite(v) => Some(v),
            Curvature::Pole => None,
        }
    }

    /// `+∞` at a pole.
    pub fn to_f64(self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }
}

/// `d²H_s/dx² = (sin x · artanh(sin x) − 1) / ln 2`
pub fn d2h_s(x: f64) -> Curvature {
    if at_peak(x) {
        Curvature::Pole
    } else {
        let s = x.sin();
        Curvature::Finite((s * s.atanh() - 1.0) / LN_2)
    }
}

/// `S_α(γ) = 1 + ½H_s(γ + α) + ½H_s(γ − α)`
pub fn s_alpha(alpha: AlphaParam, gamma_a: f64) -> f64 {
    let a = alpha.alpha;
    1.0 + 0.5 * h_s(gamma_a + a) + 0.5 * h_s(gamma_a - a)
}

pub fn ds_alpha(alpha: AlphaParam, gamma_a: f64) -> f64 {
    let a = alpha.alpha;
    0.5 * (dh_s(gamma_a + a) + dh_s(gamma_a - a))
}

pub fn d2s_alpha(alpha: AlphaParam, gamma_a: f64) -> Curvature {
    let a = alpha.alpha;
    match (d2h_s(gamma_a + a), d2h_s(gamma_a - a)) {
        (Curvature::Finite(x), Curvature::Finite(y)) => Curvature::Finite(0.5 * (x + y)),
        _ => Curvature::Pole,
    }
}

/// Minimum of `S_α` over `γ_A`, as `(argmin in [0, π/2], value)`.
pub fn minimize_s_alpha(alpha: AlphaParam) -> (f64, f64) {
    const N: usize = 2000;
    let h = FRAC_PI_2 / N as f64;
    let best = (0..=N)
        .map(|k| k as f64 * h)
        .min_by(|x, y| s_alpha(alpha, *x).total_cmp(&s_alpha(alpha, *y)))
        .expect("nonempty grid");
    let (mut lo, mut hi) = ((best - h).max(0.0), (best + h).min(FRAC_PI_2));
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    while hi - lo > 1e-12 {
        let x1 = hi - inv_phi * (hi - lo);
        let x2 = lo + inv_phi * (hi - lo);
        if s_alpha(alpha, x1) <= s_alpha(alpha, x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let mid = 0.5 * (lo + hi);
    [mid, best, 0.0]
        .into_iter()
        .map(|g| (g, s_alpha(alpha, g)))
        .min_by(|x, y| x.1.total_cmp(&y.1).then(x.0.total_cmp(&y.0)))
        .expect("nonempty candidates")
}

/// `(1 − 2a) · artanh(1 − 2a) − 1`
pub fn a0_equation(a: f64) -> f64 {
    let x = 1.0 - 2.0 * a;
    x * artanh(x) - 1.0
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of [`a0_equation`] in `(0, ½)`; the other root is `1 − a₀`.
pub fn find_a0() -> f64 {
    bisect(a0_equation, 0.0, 0.5, ROOT_TOL)
}

pub const QUARTIC: [f64; 5] = [4.0, 40.0, 87.0, 160.0, -341.0];

/// `4a⁴ + 40a³ + 87a² + 160a − 341`
pub fn quartic(a: f64) -> f64 {
    QUARTIC.iter().fold(0.0, |acc, k| acc * a + k)
}

/// Real roots of [`quartic`], ascending.
pub fn quartic_roots() -> Vec<f64> {
    scan_roots(quartic, -20.0, 20.0, 0.01)
}

/// Bisection-refined sign changes of `f` on a uniform grid.
pub fn scan_roots<F: Fn(f64) -> f64>(f: F, from: f64, to: f64, step: f64) -> Vec<f64> {
    let n = ((to - from) / step).round() as usize;
    let xs: Vec<f64> = (0..=n).map(|k| from + (to - from) * k as f64 / n as f64).collect();
    let mut roots = Vec::new();
    for w in xs.windows(2) {
        let (fl, fr) = (f(w[0]), f(w[1]));
        if fl == 0.0 {
            roots.push(w[0]);
        } else if fl * fr < 0.0 {
            roots.push(bisect(&f, w[0], w[1], ROOT_TOL));
        }
    }
    if f(to) == 0.0 {
        roots.push(to);
    }
    roots
}

/// The nested-radical expression for the positive quartic root together with
/// its auxiliary quantities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormRoot {
    pub z: f64,
    pub w: f64,
    pub value: f64,
}

pub fn closed_form_sigma_root() -> ClosedFormRoot {
    let z = 75.0 * 527_523f64.sqrt() / 16.0 - 131_787.0 / 64.0;
    let z13 = z.cbrt();
    let w = 16.0 * z13 * z13 + 168.0 * z13 - 3111.0;
    let z16 = z13.sqrt();
    let inner = 7200.0 * z.sqrt() - w.sqrt() * (w - 504.0 * z13);
    let value = inner.sqrt() / (8.0 * w.powf(0.25) * z16) - w.sqrt() / (8.0 * z16) - 2.5;
    ClosedFormRoot { z, w, value }
}

/// Correlation `p00·p11 − p01·p10` of `σ_{a,t}` read in the product of its
/// marginal eigenbases.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalResidual {
    pub value: f64,
    /// A marginal was proportional to the identity, so the computational
    /// basis stood in for its eigenbasis.
    pub degenerate_marginal: bool,
}

fn eigenbasis_unitary(m: &Mat2) -> Result<(QubitUnitary, bool)> {
    let es = crate::qmat::hermitian_eigensystem(m)?;
    if es.values[1] - es.values[0] <= DEGENERATE_TOL {
        return Ok((QubitUnitary::identity(), true));
    }
    Ok((QubitUnitary::new(es.vectors.adjoint())?, false))
}

pub fn sigma_product_diagonal_residual(a: f64, t: f64) -> Result<DiagonalResidual> {
    let rho = sigma_at(a, t)?;
    let (ua, da) = eigenbasis_unitary(&rho.partial_trace(Subsystem::A))?;
    let (ub, db) = eigenbasis_unitary(&rho.partial_trace(Subsystem::B))?;
    let u = tensor_product(ua.matrix(), ub.matrix());
    let p = ProbDist::new(rho.matrix().conjugate_by(&u).diagonal_real())?;
    Ok(DiagonalResidual {
        value: p.correlation(),
        degenerate_marginal: da || db,
    })
}

pub const A_T_WINDOW: (f64, f64) = (0.5, 3.0);
const A_T_STEP: f64 = 0.01;
const A_T_ACCEPT: f64 = 1e-8;

/// `a_t` with a product diagonal for `σ_{a,t}`, searched in the default
/// window.
pub fn find_a_t(t: f64) -> Result<Option<f64>> {
    find_a_t_in(t, A_T_WINDOW.0, A_T_WINDOW.1)
}

/// Smallest bracketed root in `[from, to]` whose residual is within `1e-8`.
/// Sign changes caused by eigenvalue reordering are rejected by that check.
pub fn find_a_t_in(t: f64, from: f64, to: f64) -> Result<Option<f64>> {
    // surface construction errors before scanning
    sigma_at(from, t)?;
    let f = |a: f64| {
        sigma_product_diagonal_residual(a, t)
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
    };
    for root in scan_roots(f, from, to, A_T_STEP) {
        if f(root).abs() <= A_T_ACCEPT {
            return Ok(Some(root));
        }
    }
    Ok(None)
}

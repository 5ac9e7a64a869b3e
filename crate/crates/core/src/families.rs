//! Named two-qubit state families and random sampling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::info::ProbDist;
use crate::qmat::{bloch_basis, tensor_vec, Complex64, DensityMatrix, Mat2, Mat4, QubitUnitary};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn ket(amplitudes: [f64; 4]) -> [Complex64; 4] {
    amplitudes.map(c)
}

/// `√a|00> + √(1−a)|11>`
fn phi(a: f64) -> [Complex64; 4] {
    ket([a.sqrt(), 0.0, 0.0, (1.0 - a).sqrt()])
}

/// `√a|01> + √(1−a)|10>`
fn psi(a: f64) -> [Complex64; 4] {
    ket([0.0, a.sqrt(), (1.0 - a).sqrt(), 0.0])
}

/// `ρ_a = ½(|φ_a><φ_a| + |ψ_a><ψ_a|)`, separable for every `a ∈ [0, 1]`.
pub fn rho_a(a: f64) -> Result<DensityMatrix> {
    rho_abp(a, a, 0.5)
}

/// `p|00><00| + (1−p)|11><11|`
pub fn sigma_p(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    DensityMatrix::new(Mat4::from_diagonal([p, 0.0, 0.0, 1.0 - p]))
}

/// `p|φ+><φ+| + (1−p)|ψ+><ψ+|`
pub fn rho_p(p: f64) -> Result<DensityMatrix> {
    rho_abp(0.5, 0.5, p)
}

/// `p|φ_a><φ_a| + (1−p)|ψ_b><ψ_b|`
pub fn rho_abp(a: f64, b: f64, p: f64) -> Result<DensityMatrix> {
    check_unit_interval("a", a)?;
    check_unit_interval("b", b)?;
    check_unit_interval("p", p)?;
    let m = Mat4::outer(&phi(a)).scale(p) + Mat4::outer(&psi(b)).scale(1.0 - p);
    DensityMatrix::new(m)
}

/// `p² a(1−a) − (1−p)² b(1−b)`; zero exactly when `ρ_{a,b,p}` dephased in its
/// local eigenbases has a product diagonal.
pub fn product_diagonal_condition(a: f64, b: f64, p: f64) -> f64 {
    p * p * a * (1.0 - a) - (1.0 - p) * (1.0 - p) * b * (1.0 - b)
}

/// The mixing weight `p` that puts `(a, b, p)` on the product-diagonal surface.
/// `None` when both `a` and `b` are pure (then every `p` works).
pub fn product_diagonal_weight(a: f64, b: f64) -> Option<f64> {
    let ra = (a * (1.0 - a)).max(0.0).sqrt();
    let rb = (b * (1.0 - b)).max(0.0).sqrt();
    if ra + rb == 0.0 {
        None
    } else {
        Some(rb / (ra + rb))
    }
}

/// Equal mixture of the normalized projectors onto `|00> + 2|11>` and
/// `|00> + a|01> − t|10> − t|11>`.
pub fn sigma_at(a: f64, t: f64) -> Result<DensityMatrix> {
    if !a.is_finite() {
        return Err(Error::Parameter {
            name: "a".into(),
            value: a,
            domain: "finite reals",
        });
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Parameter {
            name: "t".into(),
            value: t,
            domain: "t > 0",
        });
    }
    let u = DensityMatrix::pure(&ket([1.0, 0.0, 0.0, 2.0]))?;
    let v = DensityMatrix::pure(&ket([1.0, a, -t, -t]))?;
    DensityMatrix::mixture(&[(0.5, u), (0.5, v)])
}

/// `p|φ+><φ+| + (1−p) I/4`
pub fn isotropic(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let bell = DensityMatrix::pure(&ket([1.0, 0.0, 0.0, 1.0]))?;
    DensityMatrix::mixture(&[(p, bell), (1.0 - p, DensityMatrix::maximally_mixed())])
}

/// `Σ p_ij |a_i><a_i| ⊗ |b_j><b_j|` where `|a_i>`, `|b_j>` are the bases that
/// `ua` and `ub` measure. `pij` is ordered `(p00, p01, p10, p11)`.
pub fn classically_correlated(
    pij: [f64; 4],
    ua: &QubitUnitary,
    ub: &QubitUnitary,
) -> Result<DensityMatrix> {
    let p = ProbDist::new(pij)?.probabilities();
    let va = ua.measured_vectors();
    let vb = ub.measured_vectors();
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m = m + Mat4::outer(&tensor_vec(&va[i], &vb[j])).scale(p[2 * i + j]);
        }
    }
    DensityMatrix::normalized(m)
}

/// Mixture of `|00>, |01>, |1>|+>, |1>|−>` with the given weights.
///
/// Distinct weights give a state with nonzero deficit; repeated weights are
/// accepted but logged.
pub fn onewaydistin_mixture(probs: [f64; 4]) -> Result<DensityMatrix> {
    let p = ProbDist::new(probs)?.probabilities();
    if !pairwise_distinct(&p) {
        log::warn!("onewaydistin weights {p:?} are not pairwise distinct");
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let vectors = [
        ket([1.0, 0.0, 0.0, 0.0]),
        ket([0.0, 1.0, 0.0, 0.0]),
        ket([0.0, 0.0, s, s]),
        ket([0.0, 0.0, s, -s]),
    ];
    let m = vectors
        .iter()
        .zip(p)
        .fold(Mat4::zeros(), |acc, (v, w)| acc + Mat4::outer(v).scale(w));
    DensityMatrix::new(m)
}

pub fn pairwise_distinct(p: &[f64]) -> bool {
    p.iter()
        .enumerate()
        .all(|(i, x)| p[i + 1..].iter().all(|y| (x - y).abs() > 1e-12))
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Hilbert–Schmidt random state `G G† / tr(G G†)` with `G` complex Gaussian.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let mut g = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            g[(i, j)] = complex_normal(rng);
        }
    }
    DensityMatrix::normalized(g * g.adjoint()).expect("G G† is positive with probability one")
}

/// Haar-random single-qubit unitary.
pub fn random_qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> QubitUnitary {
    let (a, b) = loop {
        let a = complex_normal(rng);
        let b = complex_normal(rng);
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n > 1e-12 {
            break (a / n, b / n);
        }
    };
    QubitUnitary::new(Mat2::from_rows([[a, -b.conj()], [b, a.conj()]]))
        .expect("unit quaternion gives a unitary")
}

/// Uniform point on the probability simplex.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    let e: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    let total: f64 = e.iter().sum();
    e.map(|x| x / total)
}

/// `ρ_{a,b,p}` with `a, b, p` uniform on `[0, 1]`.
pub fn random_rho_abp<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64, f64, DensityMatrix) {
    let (a, b, p) = (rng.random(), rng.random(), rng.random());
    let rho = rho_abp(a, b, p).expect("uniform parameters are in range");
    (a, b, p, rho)
}

/// The state families that can be named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RhoA,
    SigmaP,
    RhoP,
    RhoAbp,
    SigmaAt,
    Isotropic,
    Cc,
    Onewaydistin,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::RhoA,
        Family::SigmaP,
        Family::RhoP,
        Family::RhoAbp,
        Family::SigmaAt,
        Family::Isotropic,
        Family::Cc,
        Family::Onewaydistin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RhoA => "rho_a",
            Family::SigmaP => "sigma_p",
            Family::RhoP => "rho_p",
            Family::RhoAbp => "rho_abp",
            Family::SigmaAt => "sigma_at",
            Family::Isotropic => "isotropic",
            Family::Cc => "cc",
            Family::Onewaydistin => "onewaydistin",
        }
    }

    /// Parameters that must be given.
    pub fn required(self) -> &'static [&'static str] {
        match self {
            Family::RhoA => &["a"],
            Family::SigmaP | Family::RhoP | Family::Isotropic => &["p"],
            Family::RhoAbp => &["a", "b", "p"],
            Family::SigmaAt => &["a", "t"],
            Family::Cc => &["p00", "p01", "p10", "p11"],
            Family::Onewaydistin => &["p1", "p2", "p3", "p4"],
        }
    }

    /// Parameters that default to zero when omitted: the Bloch angles of the
    /// local bases for `cc`.
    pub fn optional(self) -> &'static [&'static str] {
        match self {
            Family::Cc => &["ta", "pa", "tb", "pb"],
            _ => &[],
        }
    }

    pub fn accepts(self, param: &str) -> bool {
        self.required().contains(&param) || self.optional().contains(&param)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: format!(
                    "unknown family; expected one of {}",
                    Family::ALL.map(Family::name).join(", ")
                ),
            })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family plus named parameters, written `family:k=v,k=v`, e.g.
/// `sigma_at:a=1.10122,t=2`. Parameters may be left out in scan templates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<String, f64>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            params: BTreeMap::new(),
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Result<Self> {
        if !self.family.accepts(name) {
            return Err(self.parse_error(format!("family {} has no parameter `{name}`", self.family)));
        }
        self.params.insert(name.to_string(), value);
        Ok(self)
    }

    fn parse_error(&self, reason: String) -> Error {
        Error::Parse {
            input: self.to_string(),
            reason,
        }
    }

    fn get(&self, name: &str) -> Result<f64> {
        match self.param(name) {
            Some(v) => Ok(v),
            None if self.family.optional().contains(&name) => Ok(0.0),
            None => Err(self.parse_error(format!("missing parameter `{name}`"))),
        }
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        let g = |n: &str| self.get(n);
        match self.family {
            Family::RhoA => rho_a(g("a")?),
            Family::SigmaP => sigma_p(g("p")?),
            Family::RhoP => rho_p(g("p")?),
            Family::RhoAbp => rho_abp(g("a")?, g("b")?, g("p")?),
            Family::SigmaAt => sigma_at(g("a")?, g("t")?),
            Family::Isotropic => isotropic(g("p")?),
            Family::Cc => classically_correlated(
                [g("p00")?, g("p01")?, g("p10")?, g("p11")?],
                &bloch_basis(g("ta")?, g("pa")?),
                &bloch_basis(g("tb")?, g("pb")?),
            ),
            Family::Onewaydistin => {
                onewaydistin_mixture([g("p1")?, g("p2")?, g("p3")?, g("p4")?])
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut spec = FamilySpec::new(name.trim().parse()?);
        for item in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let err = |reason: String| Error::Parse {
                input: s.to_string(),
                reason,
            };
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{item}`")))?;
            let value: f64 = v
                .trim()
                .parse()
                .map_err(|e| err(format!("parameter `{}`: {e}", k.trim())))?;
            if spec.params.contains_key(k.trim()) {
                return Err(err(format!("parameter `{}` given twice", k.trim())));
            }
            let family = spec.family;
            spec = spec.with_param(k.trim(), value).map_err(|_| {
                err(format!("family {family} has no parameter `{}`", k.trim()))
            })?;
        }
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        let mut sep = ':';
        for (k, v) in &self.params {
            write!(f, "{sep}{k}={v}")?;
            sep = ',';
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::{info_summary, negativity_min_eig, binary_entropy};
    use crate::qmat::Subsystem;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: &Mat4, b: &Mat4, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn rho_a_marginals_and_entropy() {
        for a in [0.0, 0.05, 0.3, 0.5, 0.9, 1.0] {
            let rho = rho_a(a).unwrap();
            assert!(rho.partial_trace(Subsystem::A).max_abs_diff(&Mat2::from_diagonal([a, 1.0 - a])) < 1e-12);
            assert!(rho.partial_trace(Subsystem::B).max_abs_diff(&Mat2::from_diagonal([0.5, 0.5])) < 1e-12);
            assert!((rho.entropy() - 1.0).abs() < 1e-10);
        }
        assert!(rho_a(1.2).is_err());
        assert!(rho_a(-0.01).is_err());
    }

    #[test]
    fn rho_a_at_zero_is_classical_mixture() {
        let rho = rho_a(0.0).unwrap();
        assert!(close(rho.matrix(), &Mat4::from_diagonal([0.0, 0.0, 0.5, 0.5]), 1e-15));
        assert!(info_summary(&rho).i_m.abs() < 1e-12);
    }

    #[test]
    fn rho_a_is_ppt_on_a_grid() {
        for k in 0..=100 {
            let rho = rho_a(k as f64 / 100.0).unwrap();
            assert!(negativity_min_eig(&rho) >= -1e-10);
        }
    }

    #[test]
    fn rho_a_half_is_equal_bell_mixture() {
        let bells = DensityMatrix::mixture(&[
            (0.5, DensityMatrix::pure(&ket([1.0, 0.0, 0.0, 1.0])).unwrap()),
            (0.5, DensityMatrix::pure(&ket([0.0, 1.0, 1.0, 0.0])).unwrap()),
        ])
        .unwrap();
        assert!(close(rho_a(0.5).unwrap().matrix(), bells.matrix(), 1e-15));
    }

    #[test]
    fn sigma_p_and_rho_p_mutual_information() {
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let h = binary_entropy(p).unwrap();
            assert!((info_summary(&sigma_p(p).unwrap()).i_m - h).abs() < 1e-10);
            assert!((info_summary(&rho_p(p).unwrap()).i_m - (2.0 - h)).abs() < 1e-10);
        }
        assert!(sigma_p(1.1).is_err());
        assert!(rho_p(-0.5).is_err());
    }

    #[test]
    fn rho_abp_specializations() {
        for a in [0.1, 0.37, 0.8] {
            assert!(close(rho_abp(a, a, 0.5).unwrap().matrix(), rho_a(a).unwrap().matrix(), 1e-14));
        }
        for p in [0.0, 0.2, 0.75] {
            let direct = DensityMatrix::mixture(&[
                (p, DensityMatrix::pure(&ket([1.0, 0.0, 0.0, 1.0])).unwrap()),
                (1.0 - p, DensityMatrix::pure(&ket([0.0, 1.0, 1.0, 0.0])).unwrap()),
            ])
            .unwrap();
            assert!(close(rho_abp(0.5, 0.5, p).unwrap().matrix(), direct.matrix(), 1e-14));
        }
        assert!(rho_abp(0.5, 1.5, 0.5).is_err());
    }

    #[test]
    fn product_diagonal_condition_cases() {
        for a in [0.0, 0.2, 0.5, 0.9] {
            assert_eq!(product_diagonal_condition(a, a, 0.5), 0.0);
        }
        // (½, ½, p): p²/4 − (1−p)²/4
        let p: f64 = 0.3;
        assert!((product_diagonal_condition(0.5, 0.5, p) - (p * p - (1.0 - p).powi(2)) / 4.0).abs() < 1e-15);
        assert!(product_diagonal_condition(0.5, 0.5, p).abs() > 0.0);
    }

    #[test]
    fn condition_surface_gives_product_diagonal_and_ppt() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (a, b): (f64, f64) = (rng.random(), rng.random());
            let p = product_diagonal_weight(a, b).unwrap();
            assert!(product_diagonal_condition(a, b, p).abs() < 1e-14);
            let rho = rho_abp(a, b, p).unwrap();
            assert!(negativity_min_eig(&rho) >= -1e-8);
            // marginals are diagonal, so the computational basis is a local eigenbasis
            let diag = ProbDist::new(rho.matrix().diagonal_real()).unwrap();
            assert!(diag.correlation().abs() < 1e-8);
        }
        assert_eq!(product_diagonal_weight(0.0, 1.0), None);
    }

    #[test]
    fn sigma_at_normalization() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = rng.random_range(-10.0..10.0);
            let t = rng.random_range(0.01..5.0);
            let rho = sigma_at(a, t).unwrap();
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        }
        assert!(sigma_at(1.0, 0.0).is_err());
        assert!(sigma_at(f64::NAN, 2.0).is_err());
    }

    #[test]
    fn sigma_at_entrywise() {
        let (a, t) = (1.3, 2.0);
        let u = [1.0, 0.0, 0.0, 2.0];
        let v = [1.0, a, -t, -t];
        let nu: f64 = u.iter().map(|x| x * x).sum();
        let nv: f64 = v.iter().map(|x| x * x).sum();
        let rho = sigma_at(a, t).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = 0.5 * (u[i] * u[j] / nu + v[i] * v[j] / nv);
                assert!((rho.matrix()[(i, j)].re - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn sigma_at_orthogonal_vectors_give_one_bit() {
        // <u|v> = 1 − 2t vanishes at t = ½ whatever a is
        for a in [-2.0, 0.0, 0.7, 3.0] {
            assert!((sigma_at(a, 0.5).unwrap().entropy() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn isotropic_endpoints() {
        assert!(close(isotropic(0.0).unwrap().matrix(), DensityMatrix::maximally_mixed().matrix(), 1e-15));
        let s = info_summary(&isotropic(1.0).unwrap());
        assert!((s.i_m - 2.0).abs() < 1e-10);
        assert!(isotropic(2.0).is_err());
    }

    #[test]
    fn classically_correlated_examples() {
        let id = QubitUnitary::identity();
        let uniform = classically_correlated([0.25; 4], &id, &id).unwrap();
        assert!(close(uniform.matrix(), DensityMatrix::maximally_mixed().matrix(), 1e-15));
        let corr = classically_correlated([0.5, 0.0, 0.0, 0.5], &id, &id).unwrap();
        assert!(close(corr.matrix(), sigma_p(0.5).unwrap().matrix(), 1e-15));
        assert!(classically_correlated([0.5, 0.6, 0.0, 0.0], &id, &id).is_err());
    }

    #[test]
    fn classically_correlated_is_diagonal_in_its_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = random_distribution(&mut rng);
        let ua = random_qubit_unitary(&mut rng);
        let ub = random_qubit_unitary(&mut rng);
        let rho = classically_correlated(p, &ua, &ub).unwrap();
        let rotated = rho.conjugate_local(&ua, &ub);
        assert!(close(rotated.matrix(), &Mat4::from_diagonal(p), 1e-14));
    }

    #[test]
    fn onewaydistin_examples() {
        let rho = onewaydistin_mixture([0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-14);
        assert!(rho.eigenvalues()[0] > -1e-12);
        let uniform = onewaydistin_mixture([0.25; 4]).unwrap();
        assert!(close(uniform.matrix(), DensityMatrix::maximally_mixed().matrix(), 1e-15));
        assert!(onewaydistin_mixture([0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(pairwise_distinct(&[0.1, 0.2, 0.3, 0.4]));
        assert!(!pairwise_distinct(&[0.1, 0.2, 0.2, 0.5]));
    }

    #[test]
    fn random_states_are_valid_and_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut mean = 0.0;
        for _ in 0..1000 {
            let rho = random_density_matrix(&mut rng);
            assert!(DensityMatrix::new(*rho.matrix()).is_ok());
            mean += rho.entropy() / 1000.0;
        }
        assert!(mean > 0.0 && mean < 2.0);
        let a = random_density_matrix(&mut ChaCha8Rng::seed_from_u64(5));
        let b = random_density_matrix(&mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }

    #[test]
    fn random_distribution_on_simplex() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let p = random_distribution(&mut rng);
            assert!(p.iter().all(|&x| x >= 0.0));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn family_strings() {
        let s: FamilySpec = "rho_a:a=0.05".parse().unwrap();
        assert_eq!(s.family, Family::RhoA);
        assert_eq!(s.param("a"), Some(0.05));
        assert!(close(s.build().unwrap().matrix(), rho_a(0.05).unwrap().matrix(), 0.0));

        let s: FamilySpec = "sigma_at:a=1.10122,t=2".parse().unwrap();
        assert_eq!((s.param("a"), s.param("t")), (Some(1.10122), Some(2.0)));
        let s: FamilySpec = " isotropic : p = 0.3 ".parse().unwrap();
        assert_eq!(s.param("p"), Some(0.3));
        assert_eq!(s.to_string(), "isotropic:p=0.3");

        let template: FamilySpec = "rho_abp:a=0.2,b=0.4".parse().unwrap();
        assert!(template.build().is_err());
        assert!(template.with_param("p", 0.5).unwrap().build().is_ok());

        let cc: FamilySpec = "cc:p00=0.5,p11=0.5,p01=0,p10=0".parse().unwrap();
        assert!(close(cc.build().unwrap().matrix(), sigma_p(0.5).unwrap().matrix(), 1e-15));

        for bad in ["rho_q:a=1", "rho_a:b=0.1", "rho_a:a", "rho_a:a=x", "rho_a:a=0.1,a=0.2", "rho_a:a=2"] {
            let parsed = bad.parse::<FamilySpec>().and_then(|s| s.build());
            assert!(parsed.is_err(), "{bad} should fail");
        }
    }
}

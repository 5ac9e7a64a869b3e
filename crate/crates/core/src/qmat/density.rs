use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    hermitian_eigensystem, partial_trace, partial_transpose, swap_qubits, tensor_product,
    Complex64, Eigensystem, Mat2, Mat4, QubitUnitary, Subsystem,
};
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as "nonnegative".
pub const PSD_TOL: f64 = 1e-10;

/// Two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    pub fn new(m: Mat4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let herr = m.hermiticity_error();
        if herr > HERMITIAN_TOL {
            return Err(Error::NotHermitian(herr));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Trace(tr.re));
        }
        let min = hermitian_eigensystem(&m)?.values[0];
        if min < -PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self(m))
    }

    /// Takes the Hermitian part of `m`, rescales it to unit trace, then validates.
    pub fn normalized(m: Mat4) -> Result<Self> {
        let h = hermitize(&m);
        let tr = h.trace().re;
        if !(tr.is_finite() && tr > 0.0) {
            return Err(Error::Trace(tr));
        }
        Self::new(h.scale(1.0 / tr))
    }

    /// `|ψ><ψ| / <ψ|ψ>`
    pub fn pure(psi: &[Complex64; 4]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 == 0.0 || !norm2.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self(hermitize(&Mat4::outer(psi).scale(1.0 / norm2))))
    }

    /// Convex combination `Σ w_k ρ_k`; weights must form a distribution.
    pub fn mixture(terms: &[(f64, DensityMatrix)]) -> Result<Self> {
        let total: f64 = terms.iter().map(|(w, _)| w).sum();
        if terms.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > 1e-10 {
            return Err(Error::Distribution(format!(
                "mixture weights must be nonnegative and sum to 1 (sum {total})"
            )));
        }
        let m = terms
            .iter()
            .fold(Mat4::zeros(), |acc, (w, rho)| acc + rho.0.scale(*w));
        Self::new(hermitize(&m))
    }

    pub fn maximally_mixed() -> Self {
        Self(Mat4::from_diagonal([0.25; 4]))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn eigensystem(&self) -> Eigensystem<4> {
        hermitian_eigensystem(&self.0).expect("validated density matrix is Hermitian")
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        self.eigensystem().values
    }

    pub fn partial_trace(&self, keep: Subsystem) -> Mat2 {
        partial_trace(&self.0, keep)
    }

    pub fn partial_transpose(&self, on: Subsystem) -> Mat4 {
        partial_transpose(&self.0, on)
    }

    /// `(U_A ⊗ U_B) ρ (U_A ⊗ U_B)†`
    pub fn conjugate_local(&self, ua: &QubitUnitary, ub: &QubitUnitary) -> Self {
        let u = tensor_product(ua.matrix(), ub.matrix());
        Self(hermitize(&self.0.conjugate_by(&u)))
    }

    /// Exchanges the roles of A and B.
    pub fn swapped(&self) -> Self {
        Self(swap_qubits(&self.0))
    }

    /// Pauli correlation table `R[μ][ν] = tr(ρ σ_μ ⊗ σ_ν)` with `σ_0 = I`.
    pub fn pauli_correlations(&self) -> [[f64; 4]; 4] {
        let paulis = pauli_matrices();
        std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                (self.0 * tensor_product(&paulis[mu], &paulis[nu]))
                    .trace()
                    .re
            })
        })
    }

    pub fn to_json_value(&self) -> MatrixJson {
        MatrixJson::from_matrix(&self.0)
    }

    pub fn from_json_value(j: &MatrixJson) -> Result<Self> {
        if j.dim != 4 {
            return Err(Error::Dimension {
                expected: 4,
                rows: j.dim,
                cols: j.dim,
            });
        }
        Self::new(Mat4::try_from_nested(&j.re, &j.im)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json_value())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

impl AsRef<Mat4> for DensityMatrix {
    fn as_ref(&self) -> &Mat4 {
        &self.0
    }
}

/// On-disk form `{"dim": 4, "re": [[..]], "im": [[..]]}`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix<const N: usize>(m: &super::CMatrix<N>) -> Self {
        Self {
            dim: N,
            re: m.rows().iter().map(|r| r.iter().map(|z| z.re).collect()).collect(),
            im: m.rows().iter().map(|r| r.iter().map(|z| z.im).collect()).collect(),
        }
    }
}

pub(crate) fn hermitize(m: &Mat4) -> Mat4 {
    (*m + m.adjoint()).scale(0.5)
}

pub(crate) fn pauli_matrices() -> [Mat2; 4] {
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(0.0, 0.0);
    [
        Mat2::identity(),
        Mat2::from_real([[0.0, 1.0], [1.0, 0.0]]),
        Mat2::from_rows([[o, -i], [i, o]]),
        Mat2::from_real([[1.0, 0.0], [0.0, -1.0]]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{bloch_basis, unitary_from_angles, UnitaryAngles};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn psi_plus() -> DensityMatrix {
        DensityMatrix::pure(&[c(0.0), c(1.0), c(1.0), c(0.0)]).unwrap()
    }

    fn phi_minus() -> DensityMatrix {
        DensityMatrix::pure(&[c(1.0), c(0.0), c(0.0), c(-1.0)]).unwrap()
    }

    fn sample_state() -> DensityMatrix {
        let psi = [
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.5),
            Complex64::new(0.7, 0.0),
            Complex64::new(0.1, -0.3),
        ];
        DensityMatrix::mixture(&[
            (0.6, DensityMatrix::pure(&psi).unwrap()),
            (0.4, DensityMatrix::maximally_mixed()),
        ])
        .unwrap()
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        assert!(matches!(
            DensityMatrix::new(Mat4::from_diagonal([0.5, 0.5, 0.5, 0.5])),
            Err(Error::Trace(_))
        ));
        assert!(matches!(
            DensityMatrix::new(Mat4::from_diagonal([1.2, -0.2, 0.0, 0.0])),
            Err(Error::NotPositive(_))
        ));
        let mut m = Mat4::from_diagonal([0.25; 4]);
        m[(0, 1)] = c(0.1);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
        assert!(matches!(DensityMatrix::pure(&[c(0.0); 4]), Err(Error::ZeroNorm)));
    }

    #[test]
    fn identity_conjugation() {
        let rho = sample_state();
        let out = rho.conjugate_local(&QubitUnitary::identity(), &QubitUnitary::identity());
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn hadamard_pair_maps_psi_plus_to_phi_minus() {
        let h = QubitUnitary::hadamard();
        let out = psi_plus().conjugate_local(&h, &h);
        assert!(out.matrix().max_abs_diff(phi_minus().matrix()) < 1e-15);
    }

    #[test]
    fn conjugation_preserves_spectrum() {
        let rho = sample_state();
        let ua = unitary_from_angles(UnitaryAngles { beta: 0.3, gamma: 1.2, delta: -0.7 });
        let ub = bloch_basis(2.2, 4.0);
        let before = rho.eigenvalues();
        let after = rho.conjugate_local(&ua, &ub).eigenvalues();
        for k in 0..4 {
            assert!((before[k] - after[k]).abs() < 1e-10);
        }
        assert!((rho.conjugate_local(&ua, &ub).matrix().trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn local_conjugation_rotates_marginal() {
        let rho = sample_state();
        let ua = unitary_from_angles(UnitaryAngles { beta: 1.0, gamma: 0.4, delta: 2.0 });
        let lhs = rho
            .conjugate_local(&ua, &QubitUnitary::identity())
            .partial_trace(Subsystem::A);
        let rhs = rho.partial_trace(Subsystem::A).conjugate_by(ua.matrix());
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn phi_plus_partial_transpose_is_negative() {
        let phi = DensityMatrix::pure(&[c(1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        let pt = phi.partial_transpose(Subsystem::B);
        let es = hermitian_eigensystem(&pt).unwrap();
        assert!((es.values[0] + 0.5).abs() < 1e-14);
        assert!((pt.trace().re - 1.0).abs() < 1e-15);
        assert!(pt.hermiticity_error() < 1e-15);
    }

    #[test]
    fn pauli_table_of_maximally_mixed() {
        let r = DensityMatrix::maximally_mixed().pauli_correlations();
        for (mu, row) in r.iter().enumerate() {
            for (nu, &x) in row.iter().enumerate() {
                let want = if mu == 0 && nu == 0 { 1.0 } else { 0.0 };
                assert!((x - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let rho = sample_state();
        let back = DensityMatrix::from_json(&rho.to_json().unwrap()).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-15);

        let not_psd = r#"{"dim":4,"re":[[1.5,0,0,0],[0,-0.5,0,0],[0,0,0,0],[0,0,0,0]],
                          "im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
        assert!(matches!(DensityMatrix::from_json(not_psd), Err(Error::NotPositive(_))));
        let wrong_dim = r#"{"dim":2,"re":[[1,0],[0,0]],"im":[[0,0],[0,0]]}"#;
        assert!(matches!(DensityMatrix::from_json(wrong_dim), Err(Error::Dimension { .. })));
        assert!(matches!(DensityMatrix::from_json("{"), Err(Error::Json(_))));
    }
}

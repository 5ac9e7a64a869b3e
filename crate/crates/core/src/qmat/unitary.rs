use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::{Complex64, Mat2};
use crate::error::{Error, Result};

const UNITARY_TOL: f64 = 1e-12;

/// A 2x2 unitary acting on one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitUnitary(Mat2);

impl QubitUnitary {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let err = (m.adjoint() * m).max_abs_diff(&Mat2::identity());
        if err > UNITARY_TOL {
            return Err(Error::NotUnitary(err));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub fn hadamard() -> Self {
        Self(Mat2::from_real([[1.0, 1.0], [1.0, -1.0]]).scale(FRAC_1_SQRT_2))
    }

    pub fn pauli_x() -> Self {
        Self(Mat2::from_real([[0.0, 1.0], [1.0, 0.0]]))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    /// The measured basis vectors `|b_i>` such that `(U ρ U†)_ii = <b_i|ρ|b_i>`,
    /// i.e. the complex conjugates of the rows of `U`.
    pub fn measured_vectors(&self) -> [[Complex64; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)].conj()))
    }

    /// Bloch vector of the first measured basis vector.
    pub fn bloch_direction(&self) -> [f64; 3] {
        let [b0, _] = self.measured_vectors();
        let coh = b0[0].conj() * b0[1];
        [
            2.0 * coh.re,
            2.0 * coh.im,
            b0[0].norm_sqr() - b0[1].norm_sqr(),
        ]
    }
}

impl From<QubitUnitary> for Mat2 {
    fn from(u: QubitUnitary) -> Mat2 {
        u.0
    }
}

/// Euler-style angles of a single-qubit unitary with the global phase dropped.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitaryAngles {
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

///  e^{-i(β+δ)/2} cos(γ/2)   -e^{-i(β-δ)/2} sin(γ/2)
///  e^{ i(β-δ)/2} sin(γ/2)    e^{ i(β+δ)/2} cos(γ/2)
pub fn unitary_from_angles(angles: UnitaryAngles) -> QubitUnitary {
    let UnitaryAngles { beta, gamma, delta } = angles;
    let (sg, cg) = (0.5 * gamma).sin_cos();
    let e = |phase: f64| Complex64::from_polar(1.0, phase);
    QubitUnitary(Mat2::from_rows([
        [
            e(-0.5 * beta - 0.5 * delta) * cg,
            -e(-0.5 * beta + 0.5 * delta) * sg,
        ],
        [
            e(0.5 * beta - 0.5 * delta) * sg,
            e(0.5 * beta + 0.5 * delta) * cg,
        ],
    ]))
}

/// Unitary whose conjugation followed by reading the diagonal measures in
/// the basis `{(cos θ/2, e^{iφ} sin θ/2), (-e^{-iφ} sin θ/2, cos θ/2)}`.
pub fn bloch_basis(theta: f64, phi: f64) -> QubitUnitary {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    QubitUnitary(Mat2::from_rows([
        [Complex64::new(c, 0.0), e.conj() * s],
        [-e * s, Complex64::new(c, 0.0)],
    ]))
}

//! Dense complex matrices for one and two qubits.
//!
//! Two-qubit operators use the basis order `|00>, |01>, |10>, |11>` with
//! subsystem A as the left (most significant) qubit.

mod density;
mod eigen;
mod unitary;

use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub use num_complex::Complex64;

pub use density::{DensityMatrix, MatrixJson};
pub use eigen::{hermitian_eigensystem, Eigensystem, JACOBI_OFF_DIAGONAL_TOL};
pub use unitary::{bloch_basis, unitary_from_angles, QubitUnitary, UnitaryAngles};

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<const N: usize> {
    data: [[Complex64; N]; N],
}

/// Single-qubit operator.
pub type Mat2 = CMatrix<2>;
/// Two-qubit operator.
pub type Mat4 = CMatrix<4>;

/// Which half of a two-qubit system an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl<const N: usize> CMatrix<N> {
    pub fn zeros() -> Self {
        Self {
            data: [[ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.data[i][i] = ONE;
        }
        m
    }

    pub fn from_rows(data: [[Complex64; N]; N]) -> Self {
        Self { data }
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.data[i][j] = Complex64::new(x, 0.0);
            }
        }
        m
    }

    pub fn from_diagonal(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, &x) in diag.iter().enumerate() {
            m.data[i][i] = Complex64::new(x, 0.0);
        }
        m
    }

    /// `|v><v|` for an unnormalized vector `v`.
    pub fn outer(v: &[Complex64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> &[[Complex64; N]; N] {
        &self.data
    }

    pub fn dim(&self) -> usize {
        N
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = self.data[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = self.data[j][i];
            }
        }
        m
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut m = *self;
        m.data.iter_mut().flatten().for_each(|z| *z *= k);
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.data[i][i]).sum()
    }

    pub fn diagonal_real(&self) -> [f64; N] {
        std::array::from_fn(|i| self.data[i][i].re)
    }

    /// `U M U†`
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    /// `<v|M|v>`
    pub fn expectation(&self, v: &[Complex64; N]) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..N {
            let mut row = ZERO;
            for j in 0..N {
                row += self.data[i][j] * v[j];
            }
            acc += v[i].conj() * row;
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .flatten()
            .zip(other.data.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M - M†|` over entries.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> [Complex64; N] {
        std::array::from_fn(|i| self.data[i][j])
    }

    /// Builds a matrix from nested row vectors, checking the shape.
    pub fn try_from_nested(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let shape_err = |rows: usize, cols: usize| Error::Dimension {
            expected: N,
            rows,
            cols,
        };
        if re.len() != N || im.len() != N {
            return Err(shape_err(re.len(), re.first().map_or(0, Vec::len)));
        }
        let mut m = Self::zeros();
        for i in 0..N {
            if re[i].len() != N || im[i].len() != N {
                return Err(shape_err(N, re[i].len()));
            }
            for j in 0..N {
                m.data[i][j] = Complex64::new(re[i][j], im[i][j]);
            }
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }
}

impl<const N: usize> Default for CMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i][j]
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.data[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.data[i][j] += a * rhs.data[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] += rhs.data[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] -= rhs.data[i][j];
            }
        }
        self
    }
}

/// Kronecker product `a ⊗ b`, with `a` acting on the left qubit.
pub fn tensor_product(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    m
}

/// Kronecker product of two single-qubit vectors.
pub fn tensor_vec(a: &[Complex64; 2], b: &[Complex64; 2]) -> [Complex64; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// Reduced operator on `keep`, tracing out the other qubit.
pub fn partial_trace(m: &Mat4, keep: Subsystem) -> Mat2 {
    let mut r = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            r[(i, j)] = match keep {
                Subsystem::A => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
                Subsystem::B => m[(i, j)] + m[(2 + i, 2 + j)],
            };
        }
    }
    r
}

/// Transposes the indices belonging to `on`.
pub fn partial_transpose(m: &Mat4, on: Subsystem) -> Mat4 {
    let mut r = Mat4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    // m[(a b), (c d)] with a,c on A and b,d on B
                    let (ra, rb, ca, cb) = match on {
                        Subsystem::A => (c, b, a, d),
                        Subsystem::B => (a, d, c, b),
                    };
                    r[(2 * ra + rb, 2 * ca + cb)] = m[(2 * a + b, 2 * c + d)];
                }
            }
        }
    }
    r
}

/// Swaps the two qubits.
pub fn swap_qubits(m: &Mat4) -> Mat4 {
    const PERM: [usize; 4] = [0, 2, 1, 3];
    let mut r = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            r[(PERM[i], PERM[j])] = m[(i, j)];
        }
    }
    r
}

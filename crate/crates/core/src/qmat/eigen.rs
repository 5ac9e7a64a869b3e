use super::{CMatrix, Complex64, ZERO};
use crate::error::{Error, Result};

/// Sweeps stop once the off-diagonal Frobenius norm falls below this
/// (scaled by `max(1, ‖M‖_F)`).
pub const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-13;
const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct Eigensystem<const N: usize> {
    pub values: [f64; N],
    pub vectors: CMatrix<N>,
}

impl<const N: usize> Eigensystem<N> {
    pub fn vector(&self, k: usize) -> [Complex64; N] {
        self.vectors.column(k)
    }

    /// `V Λ V†`
    pub fn reconstruct(&self) -> CMatrix<N> {
        let lambda = CMatrix::from_diagonal(self.values);
        self.vectors * lambda * self.vectors.adjoint()
    }
}

pub fn hermitian_eigensystem<const N: usize>(m: &CMatrix<N>) -> Result<Eigensystem<N>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let herr = m.hermiticity_error();
    if herr > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herr));
    }
    let (values, vectors) = if N == 2 {
        closed_form_2x2(m)
    } else {
        jacobi(m)
    };
    Ok(sorted(values, vectors))
}

fn sorted<const N: usize>(values: [f64; N], vectors: CMatrix<N>) -> Eigensystem<N> {
    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut out = CMatrix::<N>::zeros();
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..N {
            out[(row, dst)] = vectors[(row, src)];
        }
    }
    Eigensystem {
        values: std::array::from_fn(|i| values[order[i]]),
        vectors: out,
    }
}

fn closed_form_2x2<const N: usize>(m: &CMatrix<N>) -> ([f64; N], CMatrix<N>) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    // average the two off-diagonal entries to absorb small Hermiticity errors
    let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(b.norm());
    let mut values = [0.0; N];
    values[0] = mean - radius;
    values[1] = mean + radius;

    let mut vectors = CMatrix::<N>::identity();
    if b.norm() == 0.0 {
        values[0] = a;
        values[1] = d;
        return (values, vectors);
    }
    // eigenvector for mean + radius: (b, radius - half_gap) or (radius + half_gap, b*)
    let upper = if half_gap >= 0.0 {
        [Complex64::new(radius + half_gap, 0.0), b.conj()]
    } else {
        [b, Complex64::new(radius - half_gap, 0.0)]
    };
    let norm = (upper[0].norm_sqr() + upper[1].norm_sqr()).sqrt();
    let u = [upper[0] / norm, upper[1] / norm];
    // orthogonal partner for mean - radius
    let l = [-u[1].conj(), u[0].conj()];
    vectors[(0, 0)] = l[0];
    vectors[(1, 0)] = l[1];
    vectors[(0, 1)] = u[0];
    vectors[(1, 1)] = u[1];
    (values, vectors)
}

fn off_diagonal_norm<const N: usize>(a: &CMatrix<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi. Each rotation first removes the phase of the
/// pivot, then applies the real symmetric Jacobi rotation.
fn jacobi<const N: usize>(m: &CMatrix<N>) -> ([f64; N], CMatrix<N>) {
    let mut a = *m;
    // symmetrize so the iteration works on an exactly Hermitian matrix
    for i in 0..N {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..N {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::<N>::identity();
    let threshold = JACOBI_OFF_DIAGONAL_TOL * a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;

                for k in 0..N {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                }
                for k in 0..N {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                for k in 0..N {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }
    (std::array::from_fn(|i| a[(i, i)].re), v)
}

//! Singular values of small dense matrices.
//!
//! The spectra needed here come from token matrices no larger than a few
//! dozen rows/columns, so the singular values are taken as square roots of
//! the eigenvalues of the smaller Gram matrix, computed with cyclic Jacobi
//! rotations.

use crate::error::{Error, Result};
use crate::numerics::Tensor;

/// Singular values of a rank-2 tensor, descending, length `min(rows, cols)`.
pub fn singular_values(m: &Tensor) -> Result<Vec<f64>> {
    let dims = m.dims();
    let (r, c) = match *dims {
        [r, c] => (r, c),
        _ => return Err(Error::Dim(format!("singular_values needs rank-2, got {dims:?}"))),
    };
    let k = r.min(c);
    let gram = if c <= r {
        gram_cols(m.data(), r, c) // c x c
    } else {
        gram_rows(m.data(), r, c) // r x r
    };
    let mut eig = jacobi_eigenvalues(gram, k);
    for e in &mut eig {
        *e = e.max(0.0).sqrt();
    }
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(eig)
}

/// mᵀm for row-major `r x c` data.
fn gram_cols(data: &[f64], r: usize, c: usize) -> Vec<f64> {
    let mut g = vec![0.0; c * c];
    for row in 0..r {
        let x = &data[row * c..(row + 1) * c];
        for i in 0..c {
            let xi = x[i];
            for j in i..c {
                g[i * c + j] += xi * x[j];
            }
        }
    }
    for i in 0..c {
        for j in 0..i {
            g[i * c + j] = g[j * c + i];
        }
    }
    g
}

/// m mᵀ for row-major `r x c` data.
fn gram_rows(data: &[f64], r: usize, c: usize) -> Vec<f64> {
    let mut g = vec![0.0; r * r];
    for i in 0..r {
        let xi = &data[i * c..(i + 1) * c];
        for j in i..r {
            let xj = &data[j * c..(j + 1) * c];
            let mut s = 0.0;
            for p in 0..c {
                s += xi[p] * xj[p];
            }
            g[i * r + j] = s;
            g[j * r + i] = s;
        }
    }
    g
}

/// Eigenvalues of a symmetric `n x n` matrix by cyclic Jacobi sweeps.
/// Converges when the off-diagonal Frobenius mass drops below 1e-12 of the
/// total, capped at 100 sweeps.
pub(crate) fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a[0]];
    }
    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let tol = 1e-12 * norm;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if (2.0 * off).sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= tol * 1e-4 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                // Stable tangent of the rotation angle.
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cos = 1.0 / (t * t + 1.0).sqrt();
                let sin = t * cos;
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = cos * aip - sin * aiq;
                    a[i * n + q] = sin * aip + cos * aiq;
                }
                for i in 0..n {
                    let api = a[p * n + i];
                    let aqi = a[q * n + i];
                    a[p * n + i] = cos * api - sin * aqi;
                    a[q * n + i] = sin * api + cos * aqi;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rng;

    fn tensor(r: usize, c: usize, data: Vec<f64>) -> Tensor {
        Tensor::new(vec![r, c], data).unwrap()
    }

    /// Classical Jacobi (largest off-diagonal pivot) as an independent oracle
    /// for the cyclic-sweep implementation.
    fn classical_jacobi(mut a: Vec<f64>, n: usize) -> Vec<f64> {
        for _ in 0..10_000 {
            let (mut p, mut q, mut best) = (0, 1, 0.0f64);
            for i in 0..n {
                for j in (i + 1)..n {
                    if a[i * n + j].abs() > best {
                        best = a[i * n + j].abs();
                        p = i;
                        q = j;
                    }
                }
            }
            if best < 1e-14 {
                break;
            }
            let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * a[p * n + q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for i in 0..n {
                let aip = a[i * n + p];
                let aiq = a[i * n + q];
                a[i * n + p] = c * aip - s * aiq;
                a[i * n + q] = s * aip + c * aiq;
            }
            for i in 0..n {
                let api = a[p * n + i];
                let aqi = a[q * n + i];
                a[p * n + i] = c * api - s * aqi;
                a[q * n + i] = s * api + c * aqi;
            }
        }
        (0..n).map(|i| a[i * n + i]).collect()
    }

    #[test]
    fn identity_spectrum() {
        let m = tensor(3, 3, vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        let sv = singular_values(&m).unwrap();
        for s in sv {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_spectrum() {
        let m = tensor(3, 3, vec![3.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0]);
        let sv = singular_values(&m).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 2.0).abs() < 1e-12);
        assert!(sv[2].abs() < 1e-12);
    }

    #[test]
    fn non_2d_is_dim_error() {
        let t = Tensor::new(vec![2, 2, 2], vec![0.0; 8]).unwrap();
        assert!(singular_values(&t).is_err());
    }

    #[test]
    fn matches_independent_gram_eigensolver() {
        let mut rng = Rng::new(42);
        let data: Vec<f64> = (0..24).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let m = tensor(4, 6, data.clone());
        let sv = singular_values(&m).unwrap();

        // Oracle: m mᵀ (4x4 side), classical Jacobi, sqrt of eigenvalues.
        let mut gram = vec![0.0; 16];
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for p in 0..6 {
                    s += data[i * 6 + p] * data[j * 6 + p];
                }
                gram[i * 4 + j] = s;
            }
        }
        let mut eig = classical_jacobi(gram, 4);
        eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (s, e) in sv.iter().zip(&eig) {
            let oracle = e.max(0.0).sqrt();
            assert!(
                (s - oracle).abs() <= 1e-9 * oracle.max(1.0),
                "got {s}, oracle {oracle}"
            );
        }
    }

    #[test]
    fn squared_values_match_gram_eigenvalues() {
        let mut rng = Rng::new(7);
        let data: Vec<f64> = (0..30).map(|_| rng.normal()).collect();
        let m = tensor(5, 6, data);
        let sv = singular_values(&m).unwrap();
        let gram = m.transpose().unwrap().matmul(&m).unwrap();
        let trace: f64 = (0..6).map(|i| gram.get2(i, i)).sum();
        let sumsq: f64 = sv.iter().map(|s| s * s).sum();
        assert!((trace - sumsq).abs() <= 1e-9 * trace.abs().max(1.0));
    }

    #[test]
    fn invariant_under_row_rotation() {
        // Apply a Givens rotation to a pair of rows; spectrum must not move.
        let mut rng = Rng::new(11);
        let mut data: Vec<f64> = (0..20).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let before = singular_values(&tensor(4, 5, data.clone())).unwrap();
        let (c, s) = (0.6, 0.8);
        for p in 0..5 {
            let a = data[p];
            let b = data[2 * 5 + p];
            data[p] = c * a - s * b;
            data[2 * 5 + p] = s * a + c * b;
        }
        let after = singular_values(&tensor(4, 5, data)).unwrap();
        for (x, y) in before.iter().zip(&after) {
            assert!((x - y).abs() < 1e-8);
        }
    }
}

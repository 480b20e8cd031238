//! Eigenvalues of Hermitian matrices by cyclic Jacobi rotations.

use super::DenseOperator;
use crate::scalar::Real;

/// Eigen-decomposition of a real symmetric matrix (row major, n×n).
/// Returns ascending eigenvalues and the matching eigenvectors as columns (row major).
pub fn symmetric_eigen<T: Real>(matrix: &[T], n: usize) -> (Vec<T>, Vec<T>) {
    assert_eq!(matrix.len(), n * n, "matrix must be n×n");
    let mut a = matrix.to_vec();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let scale = a.iter().map(|x| x.abs()).fold(T::zero(), T::max).max(T::min_positive_value());
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum();
        if off.sqrt() <= T::epsilon() * scale * T::of(1e-2) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (T::of(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![T::zero(); n * n];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors[k * n + new] = v[k * n + old];
        }
    }
    (values, vectors)
}

/// Ascending eigenvalues of a Hermitian operator. A complex Hermitian H = X + iY is
/// handled through the real symmetric embedding [[X, −Y], [Y, X]], whose spectrum is
/// that of H with every eigenvalue doubled.
pub fn hermitian_eigenvalues<T: Real>(op: &DenseOperator<T>) -> Vec<T> {
    let n = op.dim();
    let is_real = op.entries().iter().all(|z| z.im.abs() <= T::epsilon() * T::of(16.0) * (T::one() + z.re.abs()));
    if is_real {
        let m: Vec<T> = op.entries().iter().map(|z| z.re).collect();
        return symmetric_eigen(&m, n).0;
    }
    let m2 = 2 * n;
    let mut m = vec![T::zero(); m2 * m2];
    for r in 0..n {
        for c in 0..n {
            let z = op.get(r, c);
            m[r * m2 + c] = z.re;
            m[(r + n) * m2 + c + n] = z.re;
            m[r * m2 + c + n] = -z.im;
            m[(r + n) * m2 + c] = z.im;
        }
    }
    symmetric_eigen(&m, m2).0.into_iter().step_by(2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::Axis;

    #[test]
    fn pauli_y_spectrum() {
        let y = DenseOperator::<f64>::pauli(Axis::Y);
        let ev = hermitian_eigenvalues(&y);
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvectors_reconstruct_matrix() {
        let m = [2.0, 1.0, 0.5, 1.0, -1.0, 0.25, 0.5, 0.25, 3.0];
        let (vals, vecs) = symmetric_eigen(&m, 3);
        for r in 0..3 {
            for c in 0..3 {
                let rec: f64 = (0..3).map(|k| vecs[r * 3 + k] * vals[k] * vecs[c * 3 + k]).sum();
                assert!((rec - m[r * 3 + c]).abs() < 1e-13);
            }
        }
    }
}

use alloc::vec::Vec;

use crate::matrix::Matrix;

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, eigenvectors)` sorted by descending eigenvalue, with
/// eigenvectors as the rows of the returned matrix. Only the upper triangle of
/// `a` is read.
pub fn symmetric_eigen(a: &Matrix) -> (Vec<f64>, Matrix) {
    let n = a.rows();
    assert_eq!(n, a.cols(), "symmetric_eigen needs a square matrix");
    let mut m = Matrix::from_fn(n, n, |i, j| if i <= j { a.get(i, j) } else { a.get(j, i) });
    // v holds eigenvectors as columns while iterating
    let mut v = Matrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 });
    let scale: f64 = m.frobenius_sq();
    if scale > 0.0 {
        for _sweep in 0..64 {
            let mut off = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    off += m.get(p, q) * m.get(p, q);
                }
            }
            if off <= 1e-30 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = m.get(p, q);
                    if apq == 0.0 {
                        continue;
                    }
                    let app = m.get(p, p);
                    let aqq = m.get(q, q);
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = libm::copysign(1.0, theta) / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                    let c = 1.0 / libm::sqrt(t * t + 1.0);
                    let s = t * c;
                    for k in 0..n {
                        let mkp = m.get(k, p);
                        let mkq = m.get(k, q);
                        m.set(k, p, c * mkp - s * mkq);
                        m.set(k, q, s * mkp + c * mkq);
                    }
                    for k in 0..n {
                        let mpk = m.get(p, k);
                        let mqk = m.get(q, k);
                        m.set(p, k, c * mpk - s * mqk);
                        m.set(q, k, s * mpk + c * mqk);
                    }
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, c * vkp - s * vkq);
                        v.set(k, q, s * vkp + c * vkq);
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(j, j).total_cmp(&m.get(i, i)).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vectors = Matrix::from_fn(n, n, |r, k| v.get(k, order[r]));
    // sign convention: first entry with non-negligible magnitude is positive
    for r in 0..n {
        let row = vectors.row_mut(r);
        if let Some(first) = row.iter().copied().find(|x| libm::fabs(*x) > 1e-10) {
            if first < 0.0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    (values, vectors)
}

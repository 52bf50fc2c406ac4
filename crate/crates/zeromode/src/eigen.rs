//! Symmetric eigensolvers: cyclic Jacobi with eigenvectors for the small
//! potential matrices, and Householder + implicit QL (eigenvalues only) for
//! the large grid-kernel matrices where accumulating vectors would dominate
//! the cost.

use crate::matrix::Matrix;

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted ascending and the matching eigenvectors as the
/// columns of an orthogonal matrix. The input must be symmetric; callers
/// validate with [`Matrix::check_symmetric`] first.
pub fn jacobi_eigh(a: &Matrix) -> (Vec<f64>, Matrix) {
    assert!(a.is_square());
    let n = a.rows();
    let mut a = a.clone();
    let mut v = Matrix::identity(n);

    if n == 1 {
        return (vec![a[(0, 0)]], v);
    }

    const MAX_SWEEPS: usize = 100;
    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].abs();
            }
        }
        if off == 0.0 {
            break;
        }
        // Rutishauser threshold: skip tiny rotations during early sweeps.
        let thresh = if sweep < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = 100.0 * apq.abs();
                // Off-diagonal already negligible relative to the diagonal.
                if sweep > 3
                    && a[(p, p)].abs() + g == a[(p, p)].abs()
                    && a[(q, q)].abs() + g == a[(q, q)].abs()
                {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                if apq.abs() <= thresh {
                    continue;
                }

                let h = a[(q, q)] - a[(p, p)];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;

                a[(p, p)] -= h;
                a[(q, q)] += h;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;

                let rotate = |x: f64, y: f64| (x - s * (y + tau * x), y + s * (x - tau * y));
                for j in 0..n {
                    if j != p && j != q {
                        let (ajp, ajq) = rotate(a[(j, p)], a[(j, q)]);
                        a[(j, p)] = ajp;
                        a[(p, j)] = ajp;
                        a[(j, q)] = ajq;
                        a[(q, j)] = ajq;
                    }
                    let (vjp, vjq) = rotate(v[(j, p)], v[(j, q)]);
                    v[(j, p)] = vjp;
                    v[(j, q)] = vjq;
                }
            }
        }
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    sort_pairs(&mut eigenvalues, &mut v);
    (eigenvalues, v)
}

/// Sort eigenvalues ascending, permuting eigenvector columns to match.
fn sort_pairs(eigenvalues: &mut [f64], vectors: &mut Matrix) {
    let n = eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eigenvalues[i].partial_cmp(&eigenvalues[j]).unwrap());
    let old_vals = eigenvalues.to_vec();
    let old_vecs = vectors.clone();
    for (new_col, &old_col) in order.iter().enumerate() {
        eigenvalues[new_col] = old_vals[old_col];
        for r in 0..n {
            vectors[(r, new_col)] = old_vecs[(r, old_col)];
        }
    }
}

/// Eigenvalues (ascending) of a symmetric matrix via Householder reduction to
/// tridiagonal form followed by implicit QL with shifts. No eigenvectors are
/// accumulated, so this stays fast for the ~10^3-point kernel matrices.
pub fn symmetric_eigenvalues(a: &Matrix) -> Vec<f64> {
    assert!(a.is_square());
    let (mut d, mut e) = householder_tridiagonalize(a);
    tridiagonal_ql(&mut d, &mut e);
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    d
}

/// Reduce a symmetric matrix to tridiagonal form, returning the diagonal `d`
/// and subdiagonal `e` (with `e[0]` unused).
fn householder_tridiagonalize(m: &Matrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.rows();
    let mut a = m.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[(i, k)].abs();
            }
            if scale == 0.0 {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[(j, k)] * a[(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[(i, j)];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let delta = f * e[k] + g * a[(i, k)];
                        a[(j, k)] -= delta;
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }

    for i in 0..n {
        d[i] = a[(i, i)];
    }
    (d, e)
}

/// Implicit QL with shifts on a tridiagonal matrix, in place.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n <= 1 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    // Kernel matrices span hundreds of orders of magnitude; a purely relative
    // deflation test can stall on the denormal tail, so subdiagonals below
    // eps times the global scale are deflated outright.
    let scale = d
        .iter()
        .chain(e.iter())
        .fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let floor = f64::EPSILON * scale;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 60, "tridiagonal QL failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(eigenvalues: &[f64], v: &Matrix) -> Matrix {
        let lam = Matrix::diagonal(eigenvalues);
        v.mul(&lam).mul(&v.transpose())
    }

    #[test]
    fn two_by_two_known_spectrum() {
        let a = Matrix::from_fn(2, 2, |i, j| if i == j { 2.0 } else { 1.0 });
        let (vals, _) = jacobi_eigh(&a);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn identity_spectrum() {
        let (vals, v) = jacobi_eigh(&Matrix::identity(3));
        assert_eq!(vals, vec![1.0, 1.0, 1.0]);
        assert_eq!(v, Matrix::identity(3));
    }

    #[test]
    fn jacobi_reconstructs_random_matrix() {
        let mut rng = crate::rng::SplitMix64::new(7);
        for n in 2..=8 {
            let mut a = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let x = rng.uniform(-2.0, 2.0);
                    a[(i, j)] = x;
                    a[(j, i)] = x;
                }
            }
            let (vals, v) = jacobi_eigh(&a);
            let back = reconstruct(&vals, &v);
            let mut err = 0.0_f64;
            for i in 0..n {
                for j in 0..n {
                    err = err.max((back[(i, j)] - a[(i, j)]).abs());
                }
            }
            assert!(err < 1e-12 * a.max_abs().max(1.0), "n={n} err={err:.3e}");
            // orthogonality
            let vtv = v.transpose().mul(&v);
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((vtv[(i, j)] - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn ql_matches_jacobi_on_random_matrices() {
        let mut rng = crate::rng::SplitMix64::new(99);
        for n in [3usize, 5, 17, 40] {
            let mut a = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let x = rng.uniform(-1.0, 1.0);
                    a[(i, j)] = x;
                    a[(j, i)] = x;
                }
            }
            let jac = jacobi_eigh(&a).0;
            let ql = symmetric_eigenvalues(&a);
            for (x, y) in jac.iter().zip(ql.iter()) {
                assert!((x - y).abs() < 1e-10, "n={n}: {x} vs {y}");
            }
        }
    }
}

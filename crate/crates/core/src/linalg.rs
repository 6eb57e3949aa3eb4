//! Dense complex linear algebra helpers: SVD-thresholded rank and nullspace,
//! least squares, reduced row-echelon canonical forms, and a banded inverse
//! iteration for the smallest right singular vector.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

pub type C64 = Complex<f64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Singular values in descending order.
pub fn singular_values(a: &DMatrix<C64>) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Zero threshold for singular values: `rel_tol * max(sigma_max, 1)`.
///
/// The unit floor keeps rounding noise in an exactly-zero matrix (for example
/// the brackets of a basis-changed abelian algebra) from counting as rank.
pub fn cutoff(sigma_max: f64, rel_tol: f64) -> f64 {
    rel_tol * sigma_max.max(1.0)
}

/// Numerical rank: number of singular values above [`cutoff`].
pub fn rank(a: &DMatrix<C64>, rel_tol: f64) -> usize {
    let s = singular_values(a);
    let thr = cutoff(s.first().copied().unwrap_or(0.0), rel_tol);
    s.iter().filter(|&&x| x > thr && x > 0.0).count()
}

/// Right nullspace `{x : A x = 0}` as an orthonormal list of vectors.
pub fn nullspace(a: &DMatrix<C64>, rel_tol: f64) -> Vec<Vec<C64>> {
    let (m, n) = a.shape();
    if n == 0 {
        return Vec::new();
    }
    if m == 0 {
        return unit_vectors(n);
    }
    // Pad wide matrices with zero rows so the thin SVD returns a full V.
    let padded = if m < n {
        let mut p = DMatrix::from_element(n, n, ZERO);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let sigma = &svd.singular_values;
    let thr = cutoff(sigma.iter().copied().fold(0.0, f64::max), rel_tol);
    let mut out = Vec::new();
    for (i, &s) in sigma.iter().enumerate() {
        if s <= thr || s == 0.0 {
            out.push(v_t.row(i).iter().map(|z| z.conj()).collect());
        }
    }
    out
}

/// Orthonormal basis of the span of `rows` (vectors of length `n`).
pub fn row_space(rows: &[Vec<C64>], n: usize, rel_tol: f64) -> Vec<Vec<C64>> {
    if rows.is_empty() || n == 0 {
        return Vec::new();
    }
    let a = DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j]);
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let sigma = &svd.singular_values;
    let thr = cutoff(sigma.iter().copied().fold(0.0, f64::max), rel_tol);
    sigma
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > thr && s > 0.0)
        .map(|(i, _)| v_t.row(i).iter().copied().collect())
        .collect()
}

pub fn unit_vectors(n: usize) -> Vec<Vec<C64>> {
    (0..n)
        .map(|i| {
            let mut v = vec![ZERO; n];
            v[i] = ONE;
            v
        })
        .collect()
}

/// Minimum-norm least-squares solution of `A x ≈ b` via the pseudoinverse.
/// Returns the solution and the Euclidean residual `‖A x − b‖`.
pub fn lstsq(a: &DMatrix<C64>, b: &DVector<C64>, rel_tol: f64) -> (DVector<C64>, f64) {
    let n = a.ncols();
    if n == 0 || a.nrows() == 0 {
        return (DVector::from_element(n, ZERO), b.norm());
    }
    let svd = a.clone().svd(true, true);
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V^H");
    let sigma = &svd.singular_values;
    let thr = cutoff(sigma.iter().copied().fold(0.0, f64::max), rel_tol);
    let mut x = DVector::from_element(n, ZERO);
    for (i, &s) in sigma.iter().enumerate() {
        if s > thr && s > 0.0 {
            let coef = u.column(i).dotc(b) / s;
            for j in 0..n {
                x[j] += v_t[(i, j)].conj() * coef;
            }
        }
    }
    let residual = (a * &x - b).norm();
    (x, residual)
}

/// Reduced row-echelon form with partial pivoting. Pivot candidates below
/// `tol * max|entry|` are treated as zero. Zero rows are dropped.
///
/// Applying this to its own output reproduces it bit for bit: pivots are
/// exactly one and eliminations use exact zero multipliers.
pub fn rref(rows: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let mut m: Vec<Vec<C64>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let thr = tol * scale;
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let (best, best_abs) = (r..m.len())
            .map(|i| (i, m[i][col].norm()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_abs <= thr {
            for row in m.iter_mut().skip(r) {
                row[col] = ZERO;
            }
            continue;
        }
        m.swap(r, best);
        let p = m[r][col];
        if p != ONE {
            for z in m[r].iter_mut() {
                *z /= p;
            }
        }
        m[r][col] = ONE;
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col];
            if f != ZERO {
                for (z, pz) in row.iter_mut().zip(&pivot_row) {
                    *z -= f * pz;
                }
            }
            row[col] = ZERO;
        }
        r += 1;
    }
    m.truncate(r);
    m
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨u, v⟩ = Σ conj(u_i) v_i`.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Lower and upper bandwidths of `a` (largest `i − j` and `j − i` over
/// nonzero entries).
pub fn bandwidths(a: &DMatrix<C64>) -> (usize, usize) {
    let (mut lo, mut up) = (0usize, 0usize);
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            if a[(i, j)] != ZERO {
                if i > j {
                    lo = lo.max(i - j);
                } else {
                    up = up.max(j - i);
                }
            }
        }
    }
    (lo, up)
}

/// Smallest right singular vector of a (typically banded) matrix by inverse
/// iteration on the shifted normal matrix `AᴴA + μI`, factored in band form.
/// Returns the unit vector and `‖A v‖`.
pub fn smallest_right_singular_vector(a: &DMatrix<C64>) -> (DVector<C64>, f64) {
    let (m, n) = a.shape();
    assert!(n > 0, "matrix must have at least one column");
    let (lo, up) = bandwidths(a);
    let w = (lo + up).min(n - 1);

    // Upper band of G = AᴴA: g[p][d] = G[p][p + d].
    let mut g = vec![vec![ZERO; w + 1]; n];
    for p in 0..n {
        let r0 = p.saturating_sub(up);
        let r1 = (p + lo + 1).min(m);
        for (d, gd) in g[p].iter_mut().enumerate().take(w.min(n - 1 - p) + 1) {
            let q = p + d;
            let mut s = ZERO;
            for r in r0..r1 {
                s += a[(r, p)].conj() * a[(r, q)];
            }
            *gd = s;
        }
    }
    let gmax = g.iter().map(|row| row[0].re).fold(0.0, f64::max);
    let mu = (gmax * 1e-13).max(f64::MIN_POSITIVE);
    for row in g.iter_mut() {
        row[0] += mu;
    }

    // Banded LDLᴴ: l[i][d - 1] = L[i][i - d].
    let mut l = vec![vec![ZERO; w]; n];
    let mut dg = vec![0.0f64; n];
    let g_at = |i: usize, j: usize| -> C64 {
        // entry G[i][j] for |i − j| ≤ w
        if j >= i {
            g[i][j - i]
        } else {
            g[j][i - j].conj()
        }
    };
    for j in 0..n {
        let k0 = j.saturating_sub(w);
        let mut dj = g_at(j, j).re;
        for k in k0..j {
            dj -= l[j][j - k - 1].norm_sqr() * dg[k];
        }
        dg[j] = dj;
        for i in (j + 1)..=(j + w).min(n - 1) {
            let mut s = g_at(i, j);
            for k in i.saturating_sub(w)..j {
                s -= l[i][i - k - 1] * l[j][j - k - 1].conj() * dg[k];
            }
            l[i][i - j - 1] = s / dj;
        }
    }

    let solve = |b: &DVector<C64>| -> DVector<C64> {
        let mut y = b.clone();
        for i in 0..n {
            let mut s = y[i];
            for k in i.saturating_sub(w)..i {
                s -= l[i][i - k - 1] * y[k];
            }
            y[i] = s;
        }
        for i in 0..n {
            y[i] /= dg[i];
        }
        for k in (0..n).rev() {
            let mut s = y[k];
            for i in (k + 1)..=(k + w).min(n - 1) {
                s -= l[i][i - k - 1].conj() * y[i];
            }
            y[k] = s;
        }
        y
    };

    let mut x = DVector::from_fn(n, |i, _| C64::new(1.0 + 0.25 * (i % 7) as f64, 0.0));
    let nx = x.norm();
    x /= C64::new(nx, 0.0);
    for _ in 0..50 {
        let mut y = solve(&x);
        let ny = y.norm();
        y /= C64::new(ny, 0.0);
        // Remove the arbitrary phase before measuring the change.
        let ph = y.dotc(&x);
        if ph.norm() > 0.0 {
            y *= ph / ph.norm();
        }
        let delta = (&y - &x).norm();
        x = y;
        if delta < 1e-15 {
            break;
        }
    }
    let sigma = (a * &x).norm();
    (x, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        let u = [c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 1.0)];
        let v = [c(0.5, 0.0), c(1.0, -1.0)];
        let a = DMatrix::from_fn(3, 2, |i, j| u[i] * v[j]);
        assert_eq!(rank(&a, 1e-9), 1);
        let ns = nullspace(&a, 1e-9);
        assert_eq!(ns.len(), 1);
        let x = DVector::from_vec(ns[0].clone());
        assert!((&a * x).norm() < 1e-12);
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let a = DMatrix::from_row_slice(1, 3, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let ns = nullspace(&a, 1e-9);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let x = DVector::from_vec(v);
            assert!((&a * x).norm() < 1e-12);
        }
    }

    #[test]
    fn rref_is_bitwise_idempotent() {
        let rows = vec![
            vec![c(2.0, 1.0), c(0.3, 0.0), c(1.0, -1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.5), c(0.2, 0.0), c(4.0, 0.0)],
            vec![c(2.0, 1.0), c(1.3, 0.5), c(1.2, -1.0), c(4.0, 0.0)],
        ];
        let once = rref(&rows, 1e-9);
        assert_eq!(once.len(), 2);
        let twice = rref(&once, 1e-9);
        assert_eq!(once, twice);
    }

    #[test]
    fn lstsq_recovers_exact_combination() {
        let a = DMatrix::from_fn(6, 2, |i, j| c((i + j) as f64, (i * j) as f64 * 0.1));
        let x0 = DVector::from_vec(vec![c(1.0, -2.0), c(0.5, 0.25)]);
        let b = &a * &x0;
        let (x, res) = lstsq(&a, &b, 1e-12);
        assert!((x - x0).norm() < 1e-10);
        assert!(res < 1e-10);
    }

    #[test]
    fn banded_inverse_iteration_matches_dense_svd() {
        // Tridiagonal n x (n-2) matrix with a known near-null vector.
        let n = 12;
        let a = DMatrix::from_fn(n, n - 2, |i, j| {
            if i + 1 == j {
                c((j as f64).sqrt() * 0.9, 0.0)
            } else if i == j + 1 {
                c(0.0, 0.4 * (i as f64).sqrt())
            } else {
                ZERO
            }
        });
        let (x, sigma) = smallest_right_singular_vector(&a);
        let smin = *singular_values(&a).last().unwrap();
        assert!((sigma - smin).abs() < 1e-12, "{sigma} vs {smin}");
        assert!((x.norm() - 1.0).abs() < 1e-12);
    }
}

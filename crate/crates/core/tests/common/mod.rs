//! Independent oracles and helpers shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's SVD-based linear
//! algebra: ranks come from plain Gaussian elimination with full pivoting.

#![allow(dead_code)]

use nalgebra::DMatrix;
use pbalg::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit(n: usize, i: usize) -> Vec<C64> {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}

pub fn random_c64(r: &mut ChaCha8Rng) -> C64 {
    C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_vec(r: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| random_c64(r)).collect()
}

/// `I + R/2` with random complex `R`: invertible with moderate condition
/// number for the small sizes used here (checked by the caller's oracle).
pub fn random_basis_change(r: &mut ChaCha8Rng, n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO }) + DMatrix::from_fn(n, n, |_, _| random_c64(r) * 0.5)
}

/// Rank by Gaussian elimination with full pivoting; pivots at or below
/// `tol * max|entry|` count as zero.
pub fn gauss_rank(rows: &[Vec<C64>], tol: f64) -> usize {
    let mut m: Vec<Vec<C64>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    let mut cols: Vec<usize> = (0..ncols).collect();
    while rank < m.len() && rank < ncols {
        let (mut pr, mut pc, mut best) = (rank, rank, 0.0);
        for (i, row) in m.iter().enumerate().skip(rank) {
            for &c in &cols[rank..] {
                if row[c].norm() > best {
                    best = row[c].norm();
                    pr = i;
                    pc = c;
                }
            }
        }
        if best <= tol * scale {
            break;
        }
        m.swap(rank, pr);
        let ci = cols.iter().position(|&c| c == pc).unwrap();
        cols.swap(rank, ci);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[pc] / pivot_row[pc];
            if f != ZERO {
                for (x, v) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the center by brute force: `x` is central iff
/// `Σ_j c[i][j][k] x_j = 0` for all `i, k`.
pub fn center_dim_oracle(l: &pbalg::LieAlgebra) -> usize {
    let n = l.dim();
    let rows: Vec<Vec<C64>> = (0..n)
        .flat_map(|i| (0..n).map(move |k| (i, k)))
        .map(|(i, k)| (0..n).map(|j| l.constant(i, j, k)).collect())
        .collect();
    n - gauss_rank(&rows, 1e-12)
}

/// Pfaffian of a 4x4 antisymmetric matrix.
pub fn pfaffian4(w: &[[C64; 4]; 4]) -> C64 {
    w[0][1] * w[2][3] - w[0][2] * w[1][3] + w[0][3] * w[1][2]
}

/// For a five-dimensional algebra whose brackets all land on the last basis
/// vector `v`, the form `ω(v_i, v_j)` on the first four generators.
pub fn bracket_form(l: &pbalg::LieAlgebra) -> [[C64; 4]; 4] {
    let mut w = [[ZERO; 4]; 4];
    for (i, row) in w.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = l.constant(i, j, 4);
        }
    }
    w
}

/// Center dimension of such an algebra from the rank of `ω`: the rank of a
/// nonzero 4x4 antisymmetric form is 4 when the Pfaffian is nonzero, else 2.
pub fn center_dim_from_pfaffian(l: &pbalg::LieAlgebra) -> usize {
    let w = bracket_form(l);
    let rank = if pfaffian4(&w).norm() > 1e-12 {
        4
    } else if w.iter().flatten().any(|z| z.norm() > 1e-12) {
        2
    } else {
        0
    };
    1 + 4 - rank
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#![allow(dead_code)]

//! Explicit-matrix reference transforms. Everything here is built from dense
//! matrices, independent of the crate's convolution loops.

use nlwt_core::Matrix;

pub type Dense = Vec<Vec<f64>>;

pub fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![0.0; c]; r]
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for p in 0..k {
            let x = a[i][p];
            if x != 0.0 {
                for j in 0..m {
                    out[i][j] += x * b[p][j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Dense) -> Dense {
    let mut out = zeros(a[0].len(), a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = *v;
        }
    }
    out
}

/// `n x n` periodic analysis matrix for even `n`: lowpass rows on top,
/// highpass rows underneath.
pub fn analysis(n: usize, lo: &[f64]) -> Dense {
    assert!(n.is_multiple_of(2));
    let len = lo.len();
    let hi: Vec<f64> = (0..len)
        .map(|k| if k % 2 == 0 { lo[len - 1 - k] } else { -lo[len - 1 - k] })
        .collect();
    let mut a = zeros(n, n);
    for i in 0..n / 2 {
        for k in 0..len {
            a[i][(2 * i + k) % n] += lo[k];
            a[n / 2 + i][(2 * i + k) % n] += hi[k];
        }
    }
    a
}

/// `n' x n` replicate padding of an odd length by one sample (identity for even `n`).
pub fn padding(n: usize) -> Dense {
    let np = n + n % 2;
    let mut p = zeros(np, n);
    for i in 0..np {
        p[i][i.min(n - 1)] = 1.0;
    }
    p
}

/// One analysis level of a length-`n` axis, padding included.
pub fn level_operator(n: usize, lo: &[f64]) -> Dense {
    matmul(&analysis(n + n % 2, lo), &padding(n))
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ar, ac, br, bc) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Subbands of one oracle level: `(ll, lh, hl, hh)`.
pub struct OracleLevel {
    pub ll: Dense,
    pub lh: Dense,
    pub hl: Dense,
    pub hh: Dense,
}

/// One separable 2-D level computed as `vec(Y) = (C kron R) vec(X)` in
/// column-major order, with `R` acting on the row index and `C` on the
/// column index.
pub fn oracle_level(x: &Dense, lo: &[f64]) -> OracleLevel {
    let (r, c) = (x.len(), x[0].len());
    let rop = level_operator(r, lo);
    let rp = rop.len();
    if c == 1 {
        let y = matmul(&rop, x);
        return OracleLevel {
            ll: y[..rp / 2].to_vec(),
            lh: vec![vec![]; rp / 2],
            hl: y[rp / 2..].to_vec(),
            hh: vec![vec![]; rp / 2],
        };
    }
    let cop = level_operator(c, lo);
    let cp = cop.len();
    let big = kron(&cop, &rop);
    let vec_x: Vec<f64> = (0..c).flat_map(|j| (0..r).map(move |i| (i, j))).map(|(i, j)| x[i][j]).collect();
    let vec_y: Vec<f64> = big.iter().map(|row| row.iter().zip(&vec_x).map(|(a, b)| a * b).sum()).collect();
    let y = |i: usize, j: usize| vec_y[j * rp + i];
    let block = |r0: usize, c0: usize| -> Dense {
        (0..rp / 2).map(|i| (0..cp / 2).map(|j| y(r0 + i, c0 + j)).collect()).collect()
    };
    OracleLevel {
        ll: block(0, 0),
        lh: block(0, cp / 2),
        hl: block(rp / 2, 0),
        hh: block(rp / 2, cp / 2),
    }
}

pub fn to_dense(m: &Matrix) -> Dense {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

pub fn from_dense(d: &Dense) -> Matrix {
    let rows = d.len();
    let cols = d.first().map_or(0, |r| r.len());
    Matrix::from_fn(rows, cols, |r, c| d[r][c])
}

pub fn max_diff(a: &Dense, m: &Matrix) -> f64 {
    assert_eq!((a.len(), a.first().map_or(0, |r| r.len())), m.shape());
    let mut worst: f64 = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - m.get(i, j)).abs());
        }
    }
    worst
}

/// Deterministic pseudo-random matrix in [-1, 1).
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    Matrix::from_fn(rows, cols, |_, _| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    })
}

//! The `k x k` circulant matrix with ones at `(r, r)` and `(r, r+1 mod k)`.

use crate::error::{param, Result};
use num_complex::Complex;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CirculantSpec {
    pub k: usize,
    pub matrix: Vec<Vec<u8>>,
    /// `lambda_m = 1 + exp(2 pi i m / k)` for `m = 1, ..., k`, in that order.
    pub eigenvalues: Vec<Complex<f64>>,
}

impl CirculantSpec {
    /// `lambda_m` for `1 <= m <= k`.
    pub fn eigenvalue(&self, m: usize) -> Complex<f64> {
        self.eigenvalues[m - 1]
    }

    /// `C t`, i.e. `(t_1 + t_2, ..., t_k + t_1)`.
    pub fn apply(&self, t: &[f64]) -> Vec<f64> {
        let k = self.k;
        (0..k).map(|r| t[r] + t[(r + 1) % k]).collect()
    }

    /// Unit vector spanning the kernel for even `k`: `(-1, 1, -1, ..., 1) / sqrt(k)`.
    pub fn null_vector(&self) -> Option<Vec<f64>> {
        if self.k % 2 == 1 {
            return None;
        }
        let s = 1.0 / (self.k as f64).sqrt();
        Some(
            (0..self.k)
                .map(|r| if r % 2 == 0 { -s } else { s })
                .collect(),
        )
    }
}

pub fn circulant_build(k: usize) -> Result<CirculantSpec> {
    if k < 3 {
        return param(format!("circulant size must be at least 3, got {k}"));
    }
    let matrix = (0..k)
        .map(|r| {
            let mut row = vec![0u8; k];
            row[r] = 1;
            row[(r + 1) % k] = 1;
            row
        })
        .collect();
    let eigenvalues = (1..=k)
        .map(|m| Complex::new(1.0, 0.0) + Complex::from_polar(1.0, 2.0 * PI * m as f64 / k as f64))
        .collect();
    Ok(CirculantSpec {
        k,
        matrix,
        eigenvalues,
    })
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for p in 0..n {
        if a[p][p] == 0 {
            match (p + 1..n).find(|&r| a[r][p] != 0) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
            }
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    sign * a[n - 1][n - 1]
}

/// Exact determinant: 2 for odd `k`, 0 for even `k`.
pub fn circulant_det(k: usize) -> Result<i64> {
    let c = circulant_build(k)?;
    let a = c
        .matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    Ok(bareiss_det(a) as i64)
}

/// Product of all eigenvalues except the vanishing `lambda_{k/2}`; equals `k`.
pub fn circulant_reduced_det(k: usize) -> Result<f64> {
    if k % 2 == 1 || k < 4 {
        return param(format!(
            "reduced determinant needs an even size of at least 4, got {k}"
        ));
    }
    let c = circulant_build(k)?;
    let p = (1..=k)
        .filter(|&m| m != k / 2)
        .fold(Complex::new(1.0, 0.0), |acc, m| acc * c.eigenvalue(m));
    Ok(p.re)
}

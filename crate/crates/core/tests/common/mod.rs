//! Reference constructions that share no code with the library paths they
//! check: Kronecker-product Pauli sums and a Taylor-series matrix exponential.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type Mat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> Mat {
    Mat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn pauli_y() -> Mat {
    Mat::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn pauli_z() -> Mat {
    Mat::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

pub fn eye(dim: usize) -> Mat {
    Mat::identity(dim, dim)
}

/// `⊗_j ops[j]` with qubit 0 as the rightmost (least significant) factor.
pub fn kron_sites(n: usize, site_ops: &[(usize, Mat)]) -> Mat {
    let mut acc = eye(1);
    for q in (0..n).rev() {
        let factor = site_ops
            .iter()
            .find(|(s, _)| *s == q)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| eye(2));
        acc = acc.kronecker(&factor);
    }
    acc
}

/// Naive `-J Σ σᶻσᶻ - g Σ σˣ` for an open (or periodic) chain.
pub fn naive_tfim(n: usize, j: f64, g: f64, periodic: bool) -> Mat {
    let dim = 1 << n;
    let mut h = Mat::zeros(dim, dim);
    let mut bonds: Vec<(usize, usize)> = (0..n - 1).map(|a| (a, a + 1)).collect();
    if periodic {
        bonds.push((n - 1, 0));
    }
    for (a, b) in bonds {
        h -= kron_sites(n, &[(a, pauli_z()), (b, pauli_z())]) * c(j, 0.);
    }
    for s in 0..n {
        h -= kron_sites(n, &[(s, pauli_x())]) * c(g, 0.);
    }
    h
}

/// `exp(a)` by scaling and squaring with a truncated Taylor series.
pub fn expm(a: &Mat) -> Mat {
    let norm: f64 = a.iter().map(|z| z.norm()).sum::<f64>().max(1e-300);
    let squarings = (norm.log2().ceil().max(0.0) as i32) + 4;
    let scaled = a / c(2f64.powi(squarings), 0.);
    let dim = a.nrows();
    let mut term = eye(dim);
    let mut sum = eye(dim);
    for k in 1..=30 {
        term = &term * &scaled / c(k as f64, 0.);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `e^{-iHt}` via the Taylor route.
pub fn taylor_propagator(h: &Mat, t: f64) -> Mat {
    expm(&(h * c(0., -t)))
}

pub fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn spectral_norm(a: &Mat) -> f64 {
    a.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

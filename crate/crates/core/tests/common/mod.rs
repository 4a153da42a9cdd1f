//! Quadrature helpers shared by the integration suites: Gauss-Legendre
//! rules and knot-aligned panel integration of the uniform-sum density.

#![allow(dead_code)]

use qhook_core::dustpan::{density, WeightMultiset};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on
/// the recurrence; exact (to rounding) for polynomials of degree 2n - 1,
/// far above the piecewise degree m - 1 <= 7 used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..60 {
            let (p, dp) = legendre_with_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_deriv(n, x);
        nodes[k] = x;
        weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 1..n {
        let jf = j as f64;
        let p2 = ((2.0 * jf + 1.0) * x * p1 - jf * p0) / (jf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// All knot locations of the density: subset sums of the entries,
/// centered. The density is a polynomial between consecutive knots.
pub fn knots(t: &WeightMultiset) -> Vec<f64> {
    let entries: Vec<f64> = t.entries().iter().copied().filter(|&x| x > 0.0).collect();
    let half = entries.iter().sum::<f64>() / 2.0;
    let mut out = Vec::with_capacity(1 << entries.len());
    for mask in 0u32..(1 << entries.len()) {
        let s: f64 = entries
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, v)| v)
            .sum();
        out.push(s - half);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * half.max(1.0));
    out
}

/// Integrates x^power * density over the support, panel by panel between
/// knots, so the quadrature sees only smooth polynomials.
pub fn density_moment(t: &WeightMultiset, power: i32) -> f64 {
    let (nodes, weights) = gauss_legendre(16);
    let ks = knots(t);
    let mut total = 0.0;
    for w in ks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let rad = 0.5 * (b - a);
        let mut panel = 0.0;
        for (x, wt) in nodes.iter().zip(&weights) {
            let u = mid + rad * x;
            panel += wt * u.powi(power) * density(t, u).unwrap();
        }
        total += rad * panel;
    }
    total
}

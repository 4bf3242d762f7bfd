//! Finite-difference first derivatives on (possibly non-uniform) grids,
//! using Fornberg's recursive weight generation.

use alloc::vec;
use alloc::vec::Vec;

/// Widest stencil used by [`grid_derivative`]: nine points, eighth order on a
/// uniform grid when centred.
pub const DEFAULT_STENCIL: usize = 9;

/// Weights `c_j` with `f'(z) ≈ Σ_j c_j f(x_j)`.
pub fn first_derivative_weights(z: f64, xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    // c[j][k]: weight of x_j for the k-th derivative, k ∈ {0, 1}
    let mut c = vec![[0.0_f64; 2]; n];
    if n == 0 {
        return Vec::new();
    }
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    for i in 1..n {
        let mn = i.min(1);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|w| w[1]).collect()
}

/// Derivative of sampled values at every grid point, using the widest
/// stencil of at most `max_points` consecutive points, centred where the
/// grid allows and shifted inward at the ends. Entries are `None` when fewer
/// than two points exist or any stencil value is missing.
pub fn grid_derivative(xs: &[f64], ys: &[Option<f64>], max_points: usize) -> Vec<Option<f64>> {
    let n = xs.len();
    let width = max_points.min(n);
    (0..n)
        .map(|i| {
            if width < 2 {
                return None;
            }
            let start = i.saturating_sub(width / 2).min(n - width);
            let window = start..start + width;
            let values: Option<Vec<f64>> = ys[window.clone()].iter().copied().collect();
            let values = values?;
            let w = first_derivative_weights(xs[i], &xs[window]);
            Some(w.iter().zip(&values).map(|(w, v)| w * v).sum())
        })
        .collect()
}

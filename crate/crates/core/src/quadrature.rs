//! Quadrature on spheres `∂B_r` and balls `B_r` in two and three dimensions.
//!
//! Circles use the equally spaced trapezoidal rule; the 2-sphere uses a
//! Gauss–Legendre (polar cosine) × uniform (azimuth) product; balls add a
//! Gauss–Legendre radial factor with the `t^{N−1}` Jacobian folded into the
//! radial weights. All sums are compensated, so results are deterministic
//! and independent of the evaluation thread.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::geometry::{Dim, RVec, SpatialPoint};
use crate::{Error, Result, C64};

pub const DEFAULT_RADIAL_NODES: usize = 64;
pub const DEFAULT_CIRCLE_ORDER: usize = 256;
/// 64 polar × 128 azimuthal nodes.
pub const DEFAULT_SPHERE3_ORDER: usize = 127;

pub const DEFAULT_R_MIN: f64 = 0.05;
pub const DEFAULT_R_MAX: f64 = 0.95;
pub const DEFAULT_STEP: f64 = 0.0125;

/// Neumaier compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes (unit vectors) and positive weights on the unit sphere `∂B_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub dimension: Dim,
    pub nodes: Vec<RVec>,
    pub weights: Vec<f64>,
    /// Polynomials of total degree up to this value are integrated exactly.
    pub exact_degree: usize,
}

impl SphereRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn points(&self, r: f64) -> impl Iterator<Item = SpatialPoint> + '_ {
        self.nodes
            .iter()
            .map(move |n| SpatialPoint::from_array([n[0] * r, n[1] * r, n[2] * r], self.dimension))
    }
}

/// Builds a sphere rule.
///
/// * `N = 2`: `order` equally spaced nodes with weight `2π/order`, exact for
///   trigonometric polynomials of degree `≤ order − 1`.
/// * `N = 3`: `⌈(order+1)/2⌉` Gauss–Legendre nodes in `cos θ` times
///   `order + 1` uniform azimuths, exact for degree `≥ order`.
pub fn make_sphere_rule(dim: Dim, order: usize) -> Result<SphereRule> {
    if order < 2 {
        return Err(Error::config(format!(
            "sphere rule order must be at least 2, got {order}"
        )));
    }
    match dim {
        Dim::Two => {
            let w = 2.0 * PI / order as f64;
            let nodes = (0..order)
                .map(|j| {
                    let (s, c) = (2.0 * PI * j as f64 / order as f64).sin_cos();
                    [c, s, 0.0]
                })
                .collect();
            Ok(SphereRule {
                dimension: dim,
                nodes,
                weights: alloc::vec![w; order],
                exact_degree: order - 1,
            })
        }
        Dim::Three => {
            let n_polar = (order + 1).div_ceil(2);
            let n_azimuth = order + 1;
            let (zs, wz) = gauss_legendre(n_polar);
            let w_az = 2.0 * PI / n_azimuth as f64;
            let mut nodes = Vec::with_capacity(n_polar * n_azimuth);
            let mut weights = Vec::with_capacity(n_polar * n_azimuth);
            for (z, wzi) in zs.iter().zip(&wz) {
                let rho = (1.0 - z * z).max(0.0).sqrt();
                for j in 0..n_azimuth {
                    let (s, c) = (2.0 * PI * j as f64 / n_azimuth as f64).sin_cos();
                    nodes.push([rho * c, rho * s, *z]);
                    weights.push(wzi * w_az);
                }
            }
            Ok(SphereRule {
                dimension: dim,
                nodes,
                weights,
                exact_degree: (2 * n_polar - 1).min(n_azimuth - 1),
            })
        }
    }
}

/// Product rule on the unit ball; `radial_weights` already include the
/// `t^{N−1}` Jacobian.
#[derive(Debug, Clone, PartialEq)]
pub struct BallRule {
    pub radial_nodes: Vec<f64>,
    pub radial_weights: Vec<f64>,
    pub sphere_rule: SphereRule,
}

impl BallRule {
    pub fn dimension(&self) -> Dim {
        self.sphere_rule.dimension
    }

    /// Total degree of polynomials integrated exactly.
    pub fn exact_degree(&self) -> usize {
        let n = self.dimension().n();
        let radial = (2 * self.radial_nodes.len()).saturating_sub(n);
        radial.min(self.sphere_rule.exact_degree)
    }

    pub fn points(&self, r: f64) -> impl Iterator<Item = SpatialPoint> + '_ {
        self.radial_nodes
            .iter()
            .flat_map(move |t| self.sphere_rule.points(r * t))
    }
}

pub fn make_ball_rule(sphere_rule: SphereRule, radial_nodes: usize) -> Result<BallRule> {
    if radial_nodes < 1 {
        return Err(Error::config("ball rule needs at least one radial node"));
    }
    let (x, w) = gauss_legendre(radial_nodes);
    let n = sphere_rule.dimension.n() as i32;
    let (nodes, weights) = x
        .iter()
        .zip(&w)
        .map(|(xi, wi)| {
            let t = 0.5 * (xi + 1.0);
            (t, 0.5 * wi * t.powi(n - 1))
        })
        .unzip();
    Ok(BallRule {
        radial_nodes: nodes,
        radial_weights: weights,
        sphere_rule,
    })
}

/// Default rules: 256-node circle or 64×128 sphere, 64 radial nodes.
pub fn default_ball_rule(dim: Dim) -> BallRule {
    let order = match dim {
        Dim::Two => DEFAULT_CIRCLE_ORDER,
        Dim::Three => DEFAULT_SPHERE3_ORDER,
    };
    make_ball_rule(
        make_sphere_rule(dim, order).expect("default order is valid"),
        DEFAULT_RADIAL_NODES,
    )
    .expect("default radial count is valid")
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::config(format!("radius must lie in (0, 1], got {r}")))
    }
}

/// `∫_{∂B_r} f dS` for `K` real integrands at once. `f` receives the point
/// `x = r·ν` and the outward unit normal `ν`.
pub fn integrate_sphere_many<const K: usize>(
    mut f: impl FnMut(&SpatialPoint, &RVec) -> [f64; K],
    r: f64,
    rule: &SphereRule,
) -> Result<[f64; K]> {
    let mut acc = [CompensatedSum::default(); K];
    for (index, (node, w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let x = SpatialPoint::from_array([node[0] * r, node[1] * r, node[2] * r], rule.dimension);
        let vals = f(&x, node);
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index, point: x });
        }
        for (a, v) in acc.iter_mut().zip(vals) {
            a.add(w * v);
        }
    }
    let scale = r.powi(rule.dimension.n() as i32 - 1);
    Ok(acc.map(|a| a.value() * scale))
}

/// `∫_{B_r} f dV` for `K` real integrands at once, with `ρ = r·t`.
pub fn integrate_ball_many<const K: usize>(
    mut f: impl FnMut(&SpatialPoint) -> [f64; K],
    r: f64,
    rule: &BallRule,
) -> Result<[f64; K]> {
    let sphere = &rule.sphere_rule;
    let mut acc = [CompensatedSum::default(); K];
    for (i, (t, wr)) in rule
        .radial_nodes
        .iter()
        .zip(&rule.radial_weights)
        .enumerate()
    {
        let rho = r * t;
        for (j, (node, ws)) in sphere.nodes.iter().zip(&sphere.weights).enumerate() {
            let x = SpatialPoint::from_array(
                [node[0] * rho, node[1] * rho, node[2] * rho],
                sphere.dimension,
            );
            let vals = f(&x);
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    index: i * sphere.len() + j,
                    point: x,
                });
            }
            let w = wr * ws;
            for (a, v) in acc.iter_mut().zip(vals) {
                a.add(w * v);
            }
        }
    }
    let scale = r.powi(sphere.dimension.n() as i32);
    Ok(acc.map(|a| a.value() * scale))
}

/// `r^{N−1} Σ w_i f(r·node_i)`.
pub fn integrate_sphere(
    f: impl Fn(&SpatialPoint) -> C64,
    r: f64,
    rule: &SphereRule,
) -> Result<C64> {
    check_radius(r)?;
    let [re, im] = integrate_sphere_many(
        |x, _| {
            let v = f(x);
            [v.re, v.im]
        },
        r,
        rule,
    )?;
    Ok(C64::new(re, im))
}

pub fn integrate_ball(f: impl Fn(&SpatialPoint) -> C64, r: f64, rule: &BallRule) -> Result<C64> {
    check_radius(r)?;
    let [re, im] = integrate_ball_many(
        |x| {
            let v = f(x);
            [v.re, v.im]
        },
        r,
        rule,
    )?;
    Ok(C64::new(re, im))
}

/// Strictly increasing radii in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiiGrid {
    radii: Vec<f64>,
    spacing: f64,
}

impl RadiiGrid {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::config("radii grid is empty"));
        }
        if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::config(format!("grid radius {r} outside (0, 1)")));
        }
        if radii.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::config("grid radii must be strictly increasing"));
        }
        let spacing = radii
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        let spacing = if spacing.is_finite() { spacing } else { 0.0 };
        Ok(Self { radii, spacing })
    }

    /// `r_min, r_min + step, …` up to `r_max` (inclusive within rounding).
    pub fn uniform(r_min: f64, r_max: f64, step: f64) -> Result<Self> {
        if !(r_min > 0.0 && r_min < r_max && r_max < 1.0) {
            return Err(Error::config(format!(
                "grid bounds must satisfy 0 < r_min < r_max < 1, got r_min={r_min}, r_max={r_max}"
            )));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::config(format!(
                "grid step must be positive, got {step}"
            )));
        }
        let count = ((r_max - r_min) / step + 1e-9).floor() as usize + 1;
        let radii = (0..count).map(|i| r_min + step * i as f64).collect();
        let mut grid = Self::new(radii)?;
        grid.spacing = step;
        Ok(grid)
    }

    /// 0.05 to 0.95 in steps of 0.0125 (73 radii).
    pub fn default_grid() -> Self {
        Self::uniform(DEFAULT_R_MIN, DEFAULT_R_MAX, DEFAULT_STEP).expect("default grid is valid")
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn gauss_legendre_small_cases() {
        let (x, w) = gauss_legendre(3);
        assert!(close(x[2], (0.6_f64).sqrt(), 1e-15));
        assert!(close(w[1], 8.0 / 9.0, 1e-15));
        let (x, w) = gauss_legendre(64);
        assert!(close(w.iter().sum::<f64>(), 2.0, 1e-14));
        // ∫ x^126 = 2/127
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(126)).sum();
        assert!(close(s, 2.0 / 127.0, 1e-13));
    }

    #[test]
    fn sphere_rule_examples() {
        let c16 = make_sphere_rule(Dim::Two, 16).unwrap();
        assert!(close(
            integrate_sphere(|_| C64::new(1.0, 0.0), 1.0, &c16)
                .unwrap()
                .re,
            2.0 * PI,
            1e-15
        ));
        let s14 = make_sphere_rule(Dim::Three, 14).unwrap();
        assert!(s14.exact_degree >= 14);
        let v = integrate_sphere(|x| C64::new(x.coords()[0].powi(2), 0.0), 1.0, &s14).unwrap();
        assert!(close(v.re, 4.0 * PI / 3.0, 1e-14));
        let c64 = make_sphere_rule(Dim::Two, 64).unwrap();
        let v = integrate_sphere(|x| C64::new(x.coords()[0].powi(2), 0.0), 1.0, &c64).unwrap();
        assert!(close(v.re, PI, 1e-15));
    }

    #[test]
    fn integrate_sphere_examples() {
        let c = make_sphere_rule(Dim::Two, 32).unwrap();
        assert!(close(
            integrate_sphere(|_| C64::new(1.0, 0.0), 0.5, &c)
                .unwrap()
                .re,
            PI,
            1e-15
        ));
        let s = make_sphere_rule(Dim::Three, 8).unwrap();
        let v = integrate_sphere(|x| C64::new(x.norm_sq(), 0.0), 0.5, &s).unwrap();
        assert!(close(v.re, PI / 4.0, 1e-14));
        for rule in [&c, &s] {
            let v = integrate_sphere(|x| C64::new(x.coords()[0], 0.0), 0.7, rule).unwrap();
            assert!(v.norm() < 1e-15);
        }
    }

    #[test]
    fn integrate_ball_examples() {
        let b2 = make_ball_rule(make_sphere_rule(Dim::Two, 16).unwrap(), 8).unwrap();
        let b3 = make_ball_rule(make_sphere_rule(Dim::Three, 8).unwrap(), 8).unwrap();
        let one = |_: &SpatialPoint| C64::new(1.0, 0.0);
        assert!(close(integrate_ball(one, 1.0, &b2).unwrap().re, PI, 1e-14));
        assert!(close(
            integrate_ball(one, 1.0, &b3).unwrap().re,
            4.0 * PI / 3.0,
            1e-14
        ));
        let v = integrate_ball(|x| C64::new(x.norm_sq(), 0.0), 1.0, &b2).unwrap();
        assert!(close(v.re, PI / 2.0, 1e-14));
    }

    #[test]
    fn non_finite_integrand_names_node() {
        let c = make_sphere_rule(Dim::Two, 8).unwrap();
        let err = integrate_sphere(|x| C64::new(1.0 / x.coords()[1], 0.0), 1.0, &c).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 0, .. }), "{err:?}");
        assert!(integrate_sphere(|_| C64::new(1.0, 0.0), 0.0, &c).is_err());
    }

    #[test]
    fn radii_grid_validation() {
        let g = RadiiGrid::default_grid();
        assert_eq!(g.len(), 73);
        assert!((g.radii()[72] - 0.95).abs() < 1e-12);
        assert!(RadiiGrid::uniform(0.05, 1.2, 0.1).is_err());
        assert!(RadiiGrid::uniform(0.0, 0.5, 0.1).is_err());
        assert!(RadiiGrid::uniform(0.1, 0.5, 0.0).is_err());
        assert!(RadiiGrid::new(alloc::vec![0.2, 0.2]).is_err());
        assert!(RadiiGrid::new(alloc::vec![0.3, 0.2]).is_err());
        assert_eq!(RadiiGrid::new(alloc::vec![0.4]).unwrap().spacing(), 0.0);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut s = CompensatedSum::default();
        for v in [1.0, 1e100, 1.0, -1e100] {
            s.add(v);
        }
        assert_eq!(s.value(), 2.0);
    }
}

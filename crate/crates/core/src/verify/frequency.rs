use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use super::{IdentityReport, Verdict};
use crate::fields::ComplexField;
use crate::functionals::{volume_mass, FrequencyProfile};
use crate::quadrature::{BallRule, RadiiGrid};
use crate::{Error, Result};

/// Relative factor applied to `τ̂` in the monotonicity self-check.
pub const TAU_SAFETY: f64 = 1e-6;
/// Relative decrease tolerated between consecutive values of `e^{τr}ⅅ(r)`
/// (rounding in the quadrature of a constant frequency).
pub const MONOTONE_SLACK: f64 = 1e-10;

const MONOTONICITY_EQ: &str = "ⅅ'(r) ≥ -τⅅ(r) on {r : ⅅ(r) > 1}; e^{τr}ⅅ(r) nondecreasing";

/// Empirical frequency-decay constant.
#[derive(Debug, Clone, PartialEq)]
pub struct TauEstimate {
    pub label: alloc::string::String,
    /// `max(0, −ⅅ′_fd/ⅅ)` over interior grid points with `ⅅ > 1`.
    pub tau_hat: f64,
    /// Grid radii with `ⅅ > 1` (strict).
    pub beth_set: Vec<f64>,
    pub grid: RadiiGrid,
    /// No grid radius has `ⅅ > 1`; the decay bound is vacuous.
    pub vacuous: bool,
    /// `r ↦ e^{τ̂(1+TAU_SAFETY)r}ⅅ(r)` is nondecreasing across consecutive
    /// points of the set.
    pub monotone: bool,
}

impl TauEstimate {
    pub fn to_report(&self) -> IdentityReport {
        let ok = self.tau_hat.is_finite() && self.monotone;
        let mut report = IdentityReport::identity(
            &self.label,
            "frequency_monotonicity",
            MONOTONICITY_EQ,
            self.beth_set.last().copied().unwrap_or(f64::NAN),
            self.tau_hat,
            self.tau_hat,
            0.0,
        );
        report.residual = if ok { 0.0 } else { f64::INFINITY };
        report.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        if self.vacuous {
            report.verdict = Verdict::NotApplicable;
        }
        report
    }
}

pub fn frequency_monotonicity(profile: &FrequencyProfile) -> TauEstimate {
    let radii = profile.grid.radii();
    let n = radii.len();
    let in_beth: Vec<bool> = profile
        .freq_vals
        .iter()
        .map(|f| matches!(f, Some(v) if *v > 1.0))
        .collect();
    let beth_set: Vec<f64> = radii
        .iter()
        .zip(&in_beth)
        .filter(|(_, b)| **b)
        .map(|(r, _)| *r)
        .collect();
    let fd = profile.freq_prime_fd();
    let mut tau_hat = 0.0_f64;
    for i in 1..n.saturating_sub(1) {
        if let (true, Some(d), Some(f)) = (in_beth[i], fd[i], profile.freq_vals[i]) {
            tau_hat = tau_hat.max((-d / f).max(0.0));
        }
    }
    let tau = tau_hat * (1.0 + TAU_SAFETY);
    let weighted = |i: usize| (tau * radii[i]).exp() * profile.freq_vals[i].unwrap_or(f64::NAN);
    let monotone = (0..n.saturating_sub(1))
        .filter(|&i| in_beth[i] && in_beth[i + 1])
        .all(|i| weighted(i + 1) >= weighted(i) * (1.0 - MONOTONE_SLACK));
    TauEstimate {
        label: profile.label.clone(),
        tau_hat,
        vacuous: beth_set.is_empty(),
        beth_set,
        grid: profile.grid.clone(),
        monotone,
    }
}

/// Vanishing order estimated from the growth of `∫_{B_R}|ω|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VanishingOrder {
    /// `(s − N)/2` for the least-squares slope `s` of `log mass` vs `log R`.
    Finite { order: f64, slope: f64 },
    /// Some ball mass is below `1e-300`: the field vanishes faster than any
    /// power resolvable in double precision.
    NumericallyInfinite,
}

/// Mass at or below this is treated as numerically zero.
pub const MASS_FLOOR: f64 = 1e-300;

/// Radii `0.02, 0.04, …, 0.2` used for the vanishing-order fit.
pub fn default_vanishing_radii() -> RadiiGrid {
    RadiiGrid::new((1..=10).map(|i| 0.02 * i as f64).collect()).expect("radii are valid")
}

pub fn vanishing_order(
    omega: &dyn ComplexField,
    radii: &RadiiGrid,
    rule: &BallRule,
) -> Result<VanishingOrder> {
    let r = radii.radii();
    if r.len() < 4 {
        return Err(Error::config(format!(
            "vanishing order needs at least 4 radii, got {}",
            r.len()
        )));
    }
    if let Some(bad) = r.iter().find(|&&v| v >= 0.5) {
        return Err(Error::config(format!(
            "vanishing-order radii must lie in (0, 0.5), got {bad}"
        )));
    }
    let mut xs = Vec::with_capacity(r.len());
    let mut ys = Vec::with_capacity(r.len());
    for &radius in r {
        let m = volume_mass(omega, radius, rule)?;
        if !(m > MASS_FLOOR) {
            return Ok(VanishingOrder::NumericallyInfinite);
        }
        xs.push(radius.ln());
        ys.push(m.ln());
    }
    let count = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / count;
    let my = ys.iter().sum::<f64>() / count;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let n = omega.dim().n() as f64;
    Ok(VanishingOrder::Finite {
        order: (slope - n) / 2.0,
        slope,
    })
}

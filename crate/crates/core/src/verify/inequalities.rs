use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use super::{IdentityReport, TripleConstants};
use crate::fields::ManufacturedTriple;
use crate::functionals::{
    frequency, phi_of_r, volume_mass, FrequencyProfile, RadialSample, PHI_FLOOR,
};
use crate::quadrature::{BallRule, RadiiGrid};
use crate::{Error, Result};

/// `∫_{B_r}|ω|² ≤ r Φ(r)(1 + COMPARISON_SLACK)`.
pub const COMPARISON_SLACK: f64 = 1e-10;
pub const FLUX_BOUND_SLACK: f64 = 1e-10;
pub const DOUBLING_SLACK: f64 = 1e-8;
/// Added to `C = 2 max ⅅ` in the doubling bound.
pub const DOUBLING_C_MARGIN: f64 = 1e-6;

const COMPARISON_EQ: &str = "∫_{B_r}|ω|² dV ≤ r∫_{∂B_r}|ω|² dS for r < r₀";
const FLUX_EQ: &str = "∫_{∂B_r}|ν·ℋ_Aω|² dS / Ψ(r) ≤ ((1-q)/(1-2q))(2α + 2r²β/(1-q)), q = r²‖φ^R‖";
const DOUBLING_EQ: &str = "Φ(2γ) ≤ 2^{C+N-1} Φ(γ), C = 2 max ⅅ on [γ, 2γ]";
const DOUBLING_VOLUME_PRINTED_EQ: &str = "∫_{B_2γ}|ω|² ≤ 2^{C+N-1} ∫_{B_γ}|ω|²";
const DOUBLING_VOLUME_EQ: &str = "∫_{B_2γ}|ω|² ≤ 2^{C+N} ∫_{B_γ}|ω|², C = 2 max ⅅ on (0, 2γ]";

pub fn comparison_report(label: &str, sample: &RadialSample, r0: f64) -> IdentityReport {
    let r = sample.radius;
    let report = IdentityReport::inequality(
        label,
        "comparison",
        COMPARISON_EQ,
        r,
        sample.volume.mass,
        r * sample.phi(),
        COMPARISON_SLACK,
    );
    if r < r0 {
        report
    } else {
        report.not_applicable()
    }
}

/// Comparison inequality on every grid radius; radii `≥ r₀` are not
/// applicable.
pub fn comparison_check(
    triple: &ManufacturedTriple,
    grid: &RadiiGrid,
    rule: &BallRule,
) -> Result<Vec<IdentityReport>> {
    let constants = TripleConstants::estimate(triple, rule)?;
    let r0 = constants.comparison_radius(triple.dim().n());
    grid.radii()
        .iter()
        .map(|&r| {
            Ok(comparison_report(
                &triple.label,
                &RadialSample::evaluate(triple, r, rule)?,
                r0,
            ))
        })
        .collect()
}

/// Boundary-flux bound with the explicit constants `α`, `β`. Applicable only
/// where `ⅅ(r) > 1` and `r²‖φ^R‖_∞ < 1/2`.
pub fn flux_bound_report(
    label: &str,
    sample: &RadialSample,
    constants: &TripleConstants,
) -> Result<IdentityReport> {
    let r = sample.radius;
    let n = sample.dim.n() as f64;
    let q = r * r * constants.phi_re_sup;
    let beta = 0.5 * (constants.phi_sup + constants.xi_max);
    let alpha = (n + 2.0) / (2.0 * r) + beta;
    let rhs = (1.0 - q) / (1.0 - 2.0 * q) * (2.0 * alpha + 2.0 * r * r * beta / (1.0 - q));
    let psi = sample.psi();
    let freq = sample.frequency().ok();
    let applicable = matches!(freq, Some(f) if f > 1.0) && q < 0.5;
    if applicable && psi <= 0.0 {
        return Err(Error::Internal(format!(
            "frequency {} > 1 with non-positive Psi = {psi:e} at r = {r}",
            freq.unwrap_or(f64::NAN)
        )));
    }
    let lhs = if psi != 0.0 {
        sample.surface.flux / psi
    } else {
        f64::NAN
    };
    let report = IdentityReport::inequality(
        label,
        "boundary_flux_bound",
        FLUX_EQ,
        r,
        lhs,
        rhs,
        FLUX_BOUND_SLACK,
    );
    Ok(if applicable {
        report
    } else {
        report.not_applicable()
    })
}

pub fn boundary_flux_bound(
    triple: &ManufacturedTriple,
    r: f64,
    rule: &BallRule,
) -> Result<IdentityReport> {
    let constants = TripleConstants::estimate(triple, rule)?;
    flux_bound_report(
        &triple.label,
        &RadialSample::evaluate(triple, r, rule)?,
        &constants,
    )
}

/// Result of one doubling check.
#[derive(Debug, Clone, PartialEq)]
pub struct DoublingOutcome {
    pub gamma: f64,
    /// `max ⅅ` over grid radii in `[γ, 2γ]` and the endpoints.
    pub frequency_max: f64,
    /// `max(0, 2 max ⅅ)` before the safety margin.
    pub exponent: f64,
    /// `Φ(2γ) / Φ(γ)`.
    pub phi_ratio: f64,
    /// `∫_{B_2γ}|ω|² / ∫_{B_γ}|ω|²`.
    pub mass_ratio: f64,
    /// Surface form (asserted), volume form as printed (informational),
    /// volume form with the factor `2^{C+N}` (asserted).
    pub reports: Vec<IdentityReport>,
}

const GRID_EPS: f64 = 1e-12;

/// `(r, ⅅ(r))` for the grid radii in `(0, 2γ]` plus both endpoints, taking
/// grid values from `known` where available.
fn doubling_frequencies(
    triple: &ManufacturedTriple,
    gamma: f64,
    grid: &[f64],
    known: impl Fn(usize) -> Option<Result<f64>>,
    rule: &BallRule,
) -> Result<Vec<(f64, f64)>> {
    let hi = 2.0 * gamma;
    let mut out = Vec::new();
    for (i, &r) in grid
        .iter()
        .enumerate()
        .filter(|(_, r)| **r <= hi + GRID_EPS)
    {
        let f = match known(i) {
            Some(f) => f?,
            None => frequency(triple, r, rule)?,
        };
        out.push((r, f));
    }
    for end in [gamma, hi] {
        if !out.iter().any(|(r, _)| (r - end).abs() <= GRID_EPS) {
            out.push((end, frequency(triple, end, rule)?));
        }
    }
    Ok(out)
}

/// Doubling check reusing the frequencies of a profile built on the same
/// triple; only the endpoints `γ`, `2γ` are evaluated if they are off-grid.
pub fn doubling_from_profile(
    triple: &ManufacturedTriple,
    profile: &FrequencyProfile,
    gamma: f64,
    rule: &BallRule,
) -> Result<DoublingOutcome> {
    let radii = profile.grid.radii();
    let known = |i: usize| {
        Some(profile.freq_vals[i].ok_or(Error::VanishingBoundaryMass {
            radius: radii[i],
            phi: profile.phi_vals[i],
        }))
    };
    doubling_core(triple, gamma, radii, known, rule)
}

/// `Φ(2γ) ≤ 2^{C+N−1}Φ(γ)` with `C = 2 max ⅅ` on `[γ, 2γ]` clipped at zero
/// plus [`DOUBLING_C_MARGIN`], and the integrated volume forms.
pub fn doubling_check(
    triple: &ManufacturedTriple,
    gamma: f64,
    grid: &RadiiGrid,
    rule: &BallRule,
) -> Result<DoublingOutcome> {
    doubling_core(triple, gamma, grid.radii(), |_| None, rule)
}

fn doubling_core(
    triple: &ManufacturedTriple,
    gamma: f64,
    grid: &[f64],
    known: impl Fn(usize) -> Option<Result<f64>>,
    rule: &BallRule,
) -> Result<DoublingOutcome> {
    if !(gamma > 0.0 && 2.0 * gamma < 1.0) {
        return Err(Error::config(format!(
            "doubling radius must satisfy 0 < γ < 1/2, got {gamma}"
        )));
    }
    let sphere = &rule.sphere_rule;
    let phi_gamma = phi_of_r(triple, gamma, sphere)?;
    if phi_gamma <= PHI_FLOOR {
        return Err(Error::VanishingBoundaryMass {
            radius: gamma,
            phi: phi_gamma,
        });
    }
    let phi_double = phi_of_r(triple, 2.0 * gamma, sphere)?;
    let n = triple.dim().n() as f64;

    let freqs = doubling_frequencies(triple, gamma, grid, known, rule)?;
    let frequency_max = freqs
        .iter()
        .filter(|(r, _)| *r >= gamma - GRID_EPS)
        .fold(f64::NEG_INFINITY, |m, (_, f)| m.max(*f));
    let exponent = (2.0 * frequency_max).max(0.0);
    let c = exponent + DOUBLING_C_MARGIN;

    let lower_max = freqs.iter().fold(f64::NEG_INFINITY, |m, (_, f)| m.max(*f));
    let c_volume = (2.0 * lower_max).max(0.0) + DOUBLING_C_MARGIN;

    let mass_gamma = volume_mass(&*triple.omega, gamma, rule)?;
    let mass_double = volume_mass(&*triple.omega, 2.0 * gamma, rule)?;
    let label = &triple.label;
    let reports = alloc::vec![
        IdentityReport::inequality(
            label,
            "doubling_surface",
            DOUBLING_EQ,
            gamma,
            phi_double,
            2.0_f64.powf(c + n - 1.0) * phi_gamma,
            DOUBLING_SLACK,
        ),
        IdentityReport::inequality(
            label,
            "doubling_volume_printed",
            DOUBLING_VOLUME_PRINTED_EQ,
            gamma,
            mass_double,
            2.0_f64.powf(c + n - 1.0) * mass_gamma,
            DOUBLING_SLACK,
        )
        .informational(),
        IdentityReport::inequality(
            label,
            "doubling_volume",
            DOUBLING_VOLUME_EQ,
            gamma,
            mass_double,
            2.0_f64.powf(c_volume + n) * mass_gamma,
            DOUBLING_SLACK,
        ),
    ];
    Ok(DoublingOutcome {
        gamma,
        frequency_max,
        exponent,
        phi_ratio: phi_double / phi_gamma,
        mass_ratio: mass_double / mass_gamma,
        reports,
    })
}

use alloc::vec::Vec;

use super::{IdentityReport, Verdict};
use crate::fields::ManufacturedTriple;
use crate::functionals::{FrequencyProfile, RadialSample};
use crate::quadrature::BallRule;
use crate::Result;

const RELLICH_EQ: &str = "-Re ∫_{∂B_r} (∇|ω|² - iA|ω|²)·x/r dS = ∫_{B_r} (-2|ℋ_Aω|² + 2φ^R|ω|²) dV";
const PHI_PRIME_EQ: &str = "Φ'(r) = (N-1)Φ(r)/r + 2Ψ(r)";
const PSI_PRIME_EQ: &str =
    "Ψ'(r) = (N-2)Ψ/r + (N-2)/r∫φ^R|ω|² + 2/r Re∫Aω·conj(ℋ_Aω) + 2/r Re∫(x·∇ω)conj(φω) \
     + 2/r Re∫ω x(DA)ᵀconj(ℋ_Aω)ᵀ + 2∫_∂|ν·ℋ_Aω|² - 2Re∫_∂(Aω·ν)conj(ℋ_Aω·ν) - ∫_∂φ^R|ω|²";
const POHOZAEV_PAPER_EQ: &str = "-½∫_{∂B_r}|ν·ℋ_Aω|²(H·ν) = ½∫(∇·H)|ℋ_Aω|² - Im∫φω(H·conj ℋ_Aω) \
     - Re∫ℋ_Aω(DH)ᵀconj(ℋ_Aω)ᵀ - Re∫conj(ω)ℋ_Aω Ξ_A Hᵀ, H = x/r";
const POHOZAEV_CLASSICAL_EQ: &str = "-½∫_{∂B_r}|ν·ℋ_Aω|²(H·ν) + ½∫_{∂B_r}(|ℋ_Aω|² - |ν·ℋ_Aω|²)(H·ν) = (same interior side), H = x/r";

/// Rellich identity: boundary side against `−2Ψ(r)`.
pub fn rellich_report(label: &str, sample: &RadialSample, tolerance: f64) -> IdentityReport {
    IdentityReport::identity(
        label,
        "rellich",
        RELLICH_EQ,
        sample.radius,
        sample.surface.rellich,
        -2.0 * sample.psi(),
        tolerance,
    )
}

pub fn rellich_check(
    triple: &ManufacturedTriple,
    r: f64,
    rule: &BallRule,
    tolerance: f64,
) -> Result<IdentityReport> {
    Ok(rellich_report(
        &triple.label,
        &RadialSample::evaluate(triple, r, rule)?,
        tolerance,
    ))
}

/// Formula derivatives against grid finite differences, one record per
/// interior radius and equation. Radii with vanishing `Φ` or without a
/// finite-difference value are not applicable.
pub fn derivative_check(
    profile: &FrequencyProfile,
    tolerance_phi: f64,
    tolerance_psi: f64,
) -> Vec<IdentityReport> {
    let n = profile.len();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    for i in 1..n - 1 {
        let r = profile.grid.radii()[i];
        let flagged = profile.is_flagged(i);
        let rows = [
            (
                "phi_derivative",
                PHI_PRIME_EQ,
                profile.phi_prime_formula_vals[i],
                profile.phi_prime_fd_vals[i],
                tolerance_phi,
            ),
            (
                "psi_derivative",
                PSI_PRIME_EQ,
                profile.psi_prime_formula_vals[i],
                profile.psi_prime_fd_vals[i],
                tolerance_psi,
            ),
        ];
        for (name, eq, formula, fd, tol) in rows {
            let report = IdentityReport::identity(
                &profile.label,
                name,
                eq,
                r,
                formula,
                fd.unwrap_or(f64::NAN),
                tol,
            );
            out.push(if flagged || fd.is_none() {
                report.not_applicable()
            } else {
                report
            });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PohozaevForm {
    /// The boundary term exactly as printed: normal component only.
    Paper,
    /// Adds the tangential boundary term; the identity that actually holds.
    Classical,
}

impl PohozaevForm {
    pub fn as_str(self) -> &'static str {
        match self {
            PohozaevForm::Paper => "paper",
            PohozaevForm::Classical => "classical",
        }
    }
}

/// Pohozaev identity with multiplier `H = x/r`. The paper form is reported
/// but never asserted.
pub fn pohozaev_report(
    label: &str,
    sample: &RadialSample,
    form: PohozaevForm,
    tolerance: f64,
) -> IdentityReport {
    let rhs = sample.pohozaev_rhs();
    match form {
        PohozaevForm::Paper => IdentityReport::identity(
            label,
            "pohozaev_paper",
            POHOZAEV_PAPER_EQ,
            sample.radius,
            sample.pohozaev_lhs_paper(),
            rhs,
            tolerance,
        )
        .informational(),
        PohozaevForm::Classical => IdentityReport::identity(
            label,
            "pohozaev_classical",
            POHOZAEV_CLASSICAL_EQ,
            sample.radius,
            sample.pohozaev_lhs_classical(),
            rhs,
            tolerance,
        ),
    }
}

pub fn pohozaev_residual(
    triple: &ManufacturedTriple,
    r: f64,
    rule: &BallRule,
    form: PohozaevForm,
    tolerance: f64,
) -> Result<IdentityReport> {
    Ok(pohozaev_report(
        &triple.label,
        &RadialSample::evaluate(triple, r, rule)?,
        form,
        tolerance,
    ))
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

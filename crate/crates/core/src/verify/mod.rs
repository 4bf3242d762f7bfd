//! Checks of the identities and inequalities of the frequency-function
//! argument against manufactured triples, producing structured reports.
//!
//! Identity records use the relative residual `|lhs − rhs| / (1 + |lhs| +
//! |rhs|)`. Inequality records (`lhs ≤ rhs`) use the relative excess
//! `max(0, lhs − rhs) / |rhs|`, so that in both cases the verdict is `Pass`
//! exactly when `residual ≤ tolerance`.

mod frequency;
mod identities;
mod inequalities;

use alloc::string::String;

use crate::fields::{for_each_ball_sample, xi_frobenius_max, ManufacturedTriple};
use crate::geometry::SpatialPoint;
use crate::quadrature::BallRule;
use crate::Result;

pub use frequency::{
    default_vanishing_radii, frequency_monotonicity, vanishing_order, TauEstimate, VanishingOrder,
    MONOTONE_SLACK, TAU_SAFETY,
};
pub use identities::{
    derivative_check, pohozaev_report, pohozaev_residual, rellich_check, rellich_report,
    PohozaevForm,
};
pub use inequalities::{
    boundary_flux_bound, comparison_check, comparison_report, doubling_check,
    doubling_from_profile, flux_bound_report, DoublingOutcome, COMPARISON_SLACK, DOUBLING_C_MARGIN,
    DOUBLING_SLACK, FLUX_BOUND_SLACK,
};

/// Default tolerance for exact identities (Rellich, `Φ′`, Pohozaev).
pub const IDENTITY_TOLERANCE: f64 = 1e-8;
/// Default tolerance for the `Ψ′` identity against finite differences.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Identity,
    Inequality,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub triple: String,
    pub identity: &'static str,
    /// Human-readable statement of the checked relation.
    pub equation: &'static str,
    pub radius: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// `false` for records that are reported but never gate a run.
    pub asserted: bool,
    pub kind: CheckKind,
}

pub fn relative_residual(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / (1.0 + lhs.abs() + rhs.abs())
}

/// Relative amount by which `lhs ≤ rhs` is violated.
pub fn relative_excess(lhs: f64, rhs: f64) -> f64 {
    if lhs <= rhs {
        0.0
    } else if rhs != 0.0 {
        (lhs - rhs) / rhs.abs()
    } else {
        f64::INFINITY
    }
}

impl IdentityReport {
    #[allow(clippy::too_many_arguments)]
    fn build(
        triple: &str,
        identity: &'static str,
        equation: &'static str,
        radius: f64,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        kind: CheckKind,
    ) -> Self {
        let residual = match kind {
            CheckKind::Identity => relative_residual(lhs, rhs),
            CheckKind::Inequality => relative_excess(lhs, rhs),
        };
        let verdict = if residual <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            triple: triple.into(),
            identity,
            equation,
            radius,
            lhs,
            rhs,
            residual,
            tolerance,
            verdict,
            asserted: true,
            kind,
        }
    }

    pub fn identity(
        triple: &str,
        identity: &'static str,
        equation: &'static str,
        radius: f64,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        Self::build(
            triple,
            identity,
            equation,
            radius,
            lhs,
            rhs,
            tolerance,
            CheckKind::Identity,
        )
    }

    pub fn inequality(
        triple: &str,
        identity: &'static str,
        equation: &'static str,
        radius: f64,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        Self::build(
            triple,
            identity,
            equation,
            radius,
            lhs,
            rhs,
            tolerance,
            CheckKind::Inequality,
        )
    }

    pub fn not_applicable(mut self) -> Self {
        self.verdict = Verdict::NotApplicable;
        self
    }

    pub fn informational(mut self) -> Self {
        self.asserted = false;
        self
    }

    /// Asserted and failed.
    pub fn is_failure(&self) -> bool {
        self.asserted && self.verdict == Verdict::Fail
    }

    /// Ordering key `(triple, identity, radius)`.
    pub fn sort_key(&self) -> (&str, &str, u64) {
        (&self.triple, self.identity, order_bits(self.radius))
    }
}

fn order_bits(x: f64) -> u64 {
    // total order on finite non-negative radii; NaN sorts last
    if x.is_nan() {
        u64::MAX
    } else {
        x.to_bits()
    }
}

/// Sup-norm constants of a triple over `B_1` used by the inequality checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleConstants {
    /// `‖φ‖_∞`.
    pub phi_sup: f64,
    /// `‖φ^R‖_∞`.
    pub phi_re_sup: f64,
    /// `max ‖Ξ_A‖_F`.
    pub xi_max: f64,
}

/// Tensor samples used for `max ‖Ξ_A‖_F` in addition to the quadrature nodes.
pub const XI_SAMPLES: usize = 20_000;

impl TripleConstants {
    /// Stored sup norms widened by the ball-rule nodes of `B_1`; `max‖Ξ_A‖_F`
    /// over the same nodes plus a tensor sample.
    pub fn estimate(triple: &ManufacturedTriple, rule: &BallRule) -> Result<Self> {
        let nodes: alloc::vec::Vec<SpatialPoint> = rule.points(1.0).collect();
        let (phi_sup, phi_re_sup) = triple.potential_phi.sup_norms_with(&nodes);
        let mut xi_max = xi_frobenius_max(&*triple.potential_a, &nodes)?;
        let mut tensor_err = None;
        for_each_ball_sample(triple.dim(), XI_SAMPLES, |x| {
            match xi_frobenius_max(&*triple.potential_a, core::iter::once(x)) {
                Ok(v) => xi_max = xi_max.max(v),
                Err(e) => tensor_err = Some(e),
            }
        });
        if let Some(e) = tensor_err {
            return Err(e);
        }
        Ok(Self {
            phi_sup,
            phi_re_sup,
            xi_max,
        })
    }

    /// `r₀ = 1/2` if `‖φ^R‖_∞ = 0`, else `min(1/2, √((N−1)/‖φ^R‖_∞))`.
    pub fn comparison_radius(&self, n: usize) -> f64 {
        use num_traits::Float;
        if self.phi_re_sup == 0.0 {
            0.5
        } else {
            0.5_f64.min(((n as f64 - 1.0) / self.phi_re_sup).sqrt())
        }
    }
}

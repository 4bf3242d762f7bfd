//! Radial quantities of a manufactured triple:
//!
//! * `Φ(r) = ∫_{∂B_r} |ω|² dS`
//! * `Ψ(r) = ∫_{B_r} (|ℋ_Aω|² − φ^R|ω|²) dV`
//! * the frequency `r Ψ(r) / Φ(r)`,
//!
//! the closed-form derivative identities for `Φ′` and `Ψ′`, and every
//! auxiliary surface or volume integral used by the checks in
//! [`crate::verify`]. One surface pass and one volume pass per radius
//! produce all of them at once ([`RadialSample`]).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::fd::{grid_derivative, DEFAULT_STENCIL};
use crate::fields::{xi_from_jacobian, ComplexField, ManufacturedTriple};
use crate::geometry::{cnorm_sq, dot, Dim, I};
use crate::quadrature::{
    integrate_ball_many, integrate_sphere_many, BallRule, RadiiGrid, SphereRule,
};
use crate::{Error, Result, C64};

/// `Φ(r)` at or below this value counts as vanishing boundary mass.
pub const PHI_FLOOR: f64 = 1e-300;

fn check_open_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::config(format!("radius must lie in (0, 1), got {r}")))
    }
}

/// Surface integrals over `∂B_r`, with `ν = x/r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceIntegrals {
    /// `Φ(r) = ∫ |ω|²`.
    pub mass: f64,
    /// `∫ |ν·ℋ_Aω|²`.
    pub flux: f64,
    /// `−Re ∫ (∇|ω|² − iA|ω|²)·ν`.
    pub rellich: f64,
    /// `Re ∫ (Aω·ν) conj(ℋ_Aω·ν)`.
    pub normal_cross: f64,
    /// `∫ φ^R |ω|²`.
    pub phi_mass: f64,
    /// `∫ |ℋ_Aω|²`.
    pub energy: f64,
}

impl SurfaceIntegrals {
    pub fn evaluate(triple: &ManufacturedTriple, r: f64, rule: &SphereRule) -> Result<Self> {
        check_open_radius(r)?;
        let [mass, flux, rellich, normal_cross, phi_mass, energy] = integrate_sphere_many(
            |x, nu| {
                let s = triple.local(x);
                let w = s.field.value;
                let w_sq = w.norm_sqr();
                let v_nu = s.mag_grad[0] * nu[0] + s.mag_grad[1] * nu[1] + s.mag_grad[2] * nu[2];
                let mut rellich = C64::new(0.0, 0.0);
                for k in 0..3 {
                    let grad_mod_sq = 2.0 * (w.conj() * s.field.gradient[k]).re;
                    rellich += (grad_mod_sq - I * s.potential.value[k] * w_sq) * nu[k];
                }
                let a_nu = dot(&s.potential.value, nu);
                [
                    w_sq,
                    v_nu.norm_sqr(),
                    -rellich.re,
                    (a_nu * w * v_nu.conj()).re,
                    s.phi.re * w_sq,
                    cnorm_sq(&s.mag_grad),
                ]
            },
            r,
            rule,
        )?;
        if mass < -1e-14 {
            return Err(Error::Internal(format!(
                "negative boundary mass {mass:e} at r = {r}"
            )));
        }
        Ok(Self {
            mass: mass.max(0.0),
            flux,
            rellich,
            normal_cross,
            phi_mass,
            energy,
        })
    }
}

/// Volume integrals over `B_r`. `V = ℋ_Aω`, `J_jk = ∇_j a_k`,
/// `ξ_jk = J_jk − J_kj`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeIntegrals {
    /// `∫ |ω|²`.
    pub mass: f64,
    /// `∫ |V|²`.
    pub energy: f64,
    /// `∫ φ^R |ω|²`.
    pub phi_mass: f64,
    /// `Re ∫ Aω·conj(V)`.
    pub potential_term: f64,
    /// `Re ∫ (x·∇ω) conj(φω)`.
    pub phi_term: f64,
    /// `Re ∫ Σ_jk x_j J_jk ω conj(V_k)`.
    pub jacobian_term: f64,
    /// `Im ∫ φω (x·conj(V))`.
    pub phi_im_term: f64,
    /// `Re ∫ conj(ω) Σ_jk V_j ξ_jk x_k`.
    pub curl_term: f64,
}

impl VolumeIntegrals {
    pub fn evaluate(triple: &ManufacturedTriple, r: f64, rule: &BallRule) -> Result<Self> {
        check_open_radius(r)?;
        let [mass, energy, phi_mass, potential_term, phi_term, jacobian_term, phi_im_term, curl_term] =
            integrate_ball_many(
                |x| {
                    let s = triple.local(x);
                    let w = s.field.value;
                    let v = &s.mag_grad;
                    let c = x.as_array();
                    let w_sq = w.norm_sqr();
                    let phi_w = s.phi * w;
                    let jac = &s.potential.jacobian;
                    let xi = xi_from_jacobian(jac);
                    let mut a_v = C64::new(0.0, 0.0);
                    let mut x_grad = C64::new(0.0, 0.0);
                    let mut x_conj_v = C64::new(0.0, 0.0);
                    let mut jac_term = C64::new(0.0, 0.0);
                    let mut curl = C64::new(0.0, 0.0);
                    for k in 0..3 {
                        a_v += s.potential.value[k] * v[k].conj();
                        x_grad += c[k] * s.field.gradient[k];
                        x_conj_v += c[k] * v[k].conj();
                        let xj_jac: f64 = (0..3).map(|j| c[j] * jac[j][k]).sum();
                        jac_term += xj_jac * v[k].conj();
                        let xi_x: f64 = (0..3).map(|j| xi[k][j] * c[j]).sum();
                        curl += v[k] * xi_x;
                    }
                    [
                        w_sq,
                        cnorm_sq(v),
                        s.phi.re * w_sq,
                        (w * a_v).re,
                        (x_grad * phi_w.conj()).re,
                        (w * jac_term).re,
                        (phi_w * x_conj_v).im,
                        (w.conj() * curl).re,
                    ]
                },
                r,
                rule,
            )?;
        Ok(Self {
            mass,
            energy,
            phi_mass,
            potential_term,
            phi_term,
            jacobian_term,
            phi_im_term,
            curl_term,
        })
    }
}

/// All radial quantities of one triple at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample {
    pub radius: f64,
    pub dim: Dim,
    pub surface: SurfaceIntegrals,
    pub volume: VolumeIntegrals,
}

impl RadialSample {
    pub fn evaluate(triple: &ManufacturedTriple, r: f64, rule: &BallRule) -> Result<Self> {
        Ok(Self {
            radius: r,
            dim: triple.dim(),
            surface: SurfaceIntegrals::evaluate(triple, r, &rule.sphere_rule)?,
            volume: VolumeIntegrals::evaluate(triple, r, rule)?,
        })
    }

    pub fn phi(&self) -> f64 {
        self.surface.mass
    }

    pub fn psi(&self) -> f64 {
        self.volume.energy - self.volume.phi_mass
    }

    pub fn has_boundary_mass(&self) -> bool {
        self.phi() > PHI_FLOOR
    }

    pub fn frequency(&self) -> Result<f64> {
        if !self.has_boundary_mass() {
            return Err(Error::VanishingBoundaryMass {
                radius: self.radius,
                phi: self.phi(),
            });
        }
        Ok(self.radius * self.psi() / self.phi())
    }

    /// `(N−1)Φ/r + 2Ψ`.
    pub fn phi_prime_formula(&self) -> f64 {
        (self.dim.n() as f64 - 1.0) * self.phi() / self.radius + 2.0 * self.psi()
    }

    /// The eight-term expression for `Ψ′(r)`.
    pub fn psi_prime_formula(&self) -> f64 {
        let r = self.radius;
        let n2 = self.dim.n() as f64 - 2.0;
        let v = &self.volume;
        let s = &self.surface;
        n2 * self.psi() / r
            + n2 / r * v.phi_mass
            + 2.0 / r * v.potential_term
            + 2.0 / r * v.phi_term
            + 2.0 / r * v.jacobian_term
            + 2.0 * s.flux
            - 2.0 * s.normal_cross
            - s.phi_mass
    }

    /// `Ψ′(r) = ∫_{∂B_r} (|ℋ_Aω|² − φ^R|ω|²) dS` evaluated directly.
    pub fn psi_prime_direct(&self) -> f64 {
        self.surface.energy - self.surface.phi_mass
    }

    /// Pohozaev boundary side as printed with `H = x/r`:
    /// `−½ ∫_{∂B_r} |ν·ℋ_Aω|² (H·ν) dS`.
    pub fn pohozaev_lhs_paper(&self) -> f64 {
        -0.5 * self.surface.flux
    }

    /// Boundary side including the tangential term
    /// `½ ∫_{∂B_r} (|ℋ_Aω|² − |ν·ℋ_Aω|²)(H·ν) dS`.
    pub fn pohozaev_lhs_classical(&self) -> f64 {
        self.pohozaev_lhs_paper() + 0.5 * (self.surface.energy - self.surface.flux)
    }

    /// Interior side with `H = x/r` (`∇·H = N/r`, `DH = I/r`):
    /// `½∫(∇·H)|V|² − Im∫φω(H·conj V) − Re∫V(DH)ᵀconj(V)ᵀ − Re∫conj(ω) V Ξ Hᵀ`.
    pub fn pohozaev_rhs(&self) -> f64 {
        let r = self.radius;
        let v = &self.volume;
        let n = self.dim.n() as f64;
        0.5 * n / r * v.energy - v.phi_im_term / r - v.energy / r - v.curl_term / r
    }
}

/// `Φ(r)`.
pub fn phi_of_r(triple: &ManufacturedTriple, r: f64, rule: &SphereRule) -> Result<f64> {
    Ok(SurfaceIntegrals::evaluate(triple, r, rule)?.mass)
}

/// `Ψ(r)`; may be negative.
pub fn psi_of_r(triple: &ManufacturedTriple, r: f64, rule: &BallRule) -> Result<f64> {
    let v = VolumeIntegrals::evaluate(triple, r, rule)?;
    Ok(v.energy - v.phi_mass)
}

/// `r Ψ(r) / Φ(r)`, failing with [`Error::VanishingBoundaryMass`] where
/// `Φ(r)` vanishes.
pub fn frequency(triple: &ManufacturedTriple, r: f64, rule: &BallRule) -> Result<f64> {
    let phi = phi_of_r(triple, r, &rule.sphere_rule)?;
    if phi <= PHI_FLOOR {
        return Err(Error::VanishingBoundaryMass { radius: r, phi });
    }
    Ok(r * psi_of_r(triple, r, rule)? / phi)
}

pub fn phi_prime_formula(triple: &ManufacturedTriple, r: f64, rule: &BallRule) -> Result<f64> {
    Ok(RadialSample::evaluate(triple, r, rule)?.phi_prime_formula())
}

pub fn psi_prime_formula(triple: &ManufacturedTriple, r: f64, rule: &BallRule) -> Result<f64> {
    Ok(RadialSample::evaluate(triple, r, rule)?.psi_prime_formula())
}

/// `∫_{B_r} |ω|² dV`.
pub fn volume_mass(omega: &dyn ComplexField, r: f64, rule: &BallRule) -> Result<f64> {
    check_open_radius(r)?;
    let [m] = integrate_ball_many(|x| [omega.value(x).norm_sqr()], r, rule)?;
    Ok(m)
}

/// `∫_{∂B_r} |ν·(i∇ω + Aω)|² dS`.
pub fn boundary_flux(triple: &ManufacturedTriple, r: f64, rule: &SphereRule) -> Result<f64> {
    Ok(SurfaceIntegrals::evaluate(triple, r, rule)?.flux)
}

/// Sampled radial quantities on a grid, with formula and finite-difference
/// derivatives side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyProfile {
    pub label: String,
    pub dim: Dim,
    pub grid: RadiiGrid,
    pub phi_vals: Vec<f64>,
    pub psi_vals: Vec<f64>,
    /// `None` where `Φ` vanishes.
    pub freq_vals: Vec<Option<f64>>,
    pub phi_prime_formula_vals: Vec<f64>,
    pub psi_prime_formula_vals: Vec<f64>,
    pub phi_prime_fd_vals: Vec<Option<f64>>,
    pub psi_prime_fd_vals: Vec<Option<f64>>,
    pub volume_mass_vals: Vec<f64>,
    pub boundary_flux_vals: Vec<f64>,
}

impl FrequencyProfile {
    /// Assembles a profile from per-radius samples given in grid order.
    pub fn from_samples(
        label: impl Into<String>,
        grid: RadiiGrid,
        samples: &[RadialSample],
    ) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::Internal(format!(
                "{} samples for a grid of {} radii",
                samples.len(),
                grid.len()
            )));
        }
        let dim = samples.first().map_or(Dim::Two, |s| s.dim);
        let phi_vals: Vec<f64> = samples.iter().map(RadialSample::phi).collect();
        let psi_vals: Vec<f64> = samples.iter().map(RadialSample::psi).collect();
        let some = |v: &[f64]| v.iter().copied().map(Some).collect::<Vec<_>>();
        let phi_prime_fd_vals = grid_derivative(grid.radii(), &some(&phi_vals), DEFAULT_STENCIL);
        let psi_prime_fd_vals = grid_derivative(grid.radii(), &some(&psi_vals), DEFAULT_STENCIL);
        Ok(Self {
            label: label.into(),
            dim,
            freq_vals: samples.iter().map(|s| s.frequency().ok()).collect(),
            phi_prime_formula_vals: samples
                .iter()
                .map(RadialSample::phi_prime_formula)
                .collect(),
            psi_prime_formula_vals: samples
                .iter()
                .map(RadialSample::psi_prime_formula)
                .collect(),
            volume_mass_vals: samples.iter().map(|s| s.volume.mass).collect(),
            boundary_flux_vals: samples.iter().map(|s| s.surface.flux).collect(),
            phi_vals,
            psi_vals,
            phi_prime_fd_vals,
            psi_prime_fd_vals,
            grid,
        })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Whether the radius at `index` has vanishing boundary mass.
    pub fn is_flagged(&self, index: usize) -> bool {
        self.freq_vals[index].is_none()
    }

    /// Finite-difference derivative of the frequency on the grid.
    pub fn freq_prime_fd(&self) -> Vec<Option<f64>> {
        grid_derivative(self.grid.radii(), &self.freq_vals, DEFAULT_STENCIL)
    }
}

/// Evaluates every radius of `grid` in order.
pub fn build_profile(
    triple: &ManufacturedTriple,
    grid: &RadiiGrid,
    rule: &BallRule,
) -> Result<FrequencyProfile> {
    let samples = grid
        .radii()
        .iter()
        .map(|&r| RadialSample::evaluate(triple, r, rule))
        .collect::<Result<Vec<_>>>()?;
    FrequencyProfile::from_samples(triple.label.clone(), grid.clone(), &samples)
}

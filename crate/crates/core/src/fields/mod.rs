//! Complex scalar fields, real vector potentials and scalar potentials with
//! analytic derivatives, together with the magnetic operators built from
//! them and a catalog of exact manufactured solutions.
//!
//! Sign conventions: the magnetic gradient is `ℋ_A ω = i∇ω + Aω` and the
//! magnetic Schrödinger operator expands as
//! `ℋ_A²ω = −Δω + iA·∇ω + i∇·(Aω) + (A·A)ω`.

mod catalog;
mod gauge;
mod potentials;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::geometry::{
    cdot_real, check_dims, dot, frobenius, trace, CVec, Dim, RMat, RVec, SpatialPoint, I, ZERO_CVEC,
};
use crate::{Error, Result, C64};

pub use catalog::{
    catalog, ConstantField, FlatField, GaussianField, HolomorphicPower, ParamValue, Params,
    ScaledField,
};
pub use gauge::{
    gauge_transform, GaugeJet, GaugedField, GaugedPotential, PolynomialGauge, SinusoidalGauge,
};
pub use potentials::{
    for_each_ball_sample, ConstantPotential, DerivedPhi, RadialQuadraticPhi, RotationalPotential,
    ZeroPotential, DEFAULT_PHI_FLOOR, MIN_SUP_SAMPLES,
};

/// Value, gradient and Laplacian of a complex field at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJet {
    pub value: C64,
    pub gradient: CVec,
    pub laplacian: C64,
}

/// A complex scalar field `ω: ℝ^N → ℂ` with analytic first derivatives and
/// Laplacian.
pub trait ComplexField: Send + Sync {
    fn dim(&self) -> Dim;

    fn jet(&self, x: &SpatialPoint) -> FieldJet;

    fn value(&self, x: &SpatialPoint) -> C64 {
        self.jet(x).value
    }

    fn gradient(&self, x: &SpatialPoint) -> CVec {
        self.jet(x).gradient
    }

    fn laplacian(&self, x: &SpatialPoint) -> C64 {
        self.jet(x).laplacian
    }
}

/// Value and Jacobian of a real vector potential; `jacobian[i][j] = ∇_i a_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialJet {
    pub value: RVec,
    pub jacobian: RMat,
}

impl PotentialJet {
    pub fn divergence(&self) -> f64 {
        trace(&self.jacobian)
    }
}

/// A real, continuously differentiable vector potential `A: ℝ^N → ℝ^N`.
pub trait VectorPotential: Send + Sync {
    fn dim(&self) -> Dim;

    fn jet(&self, x: &SpatialPoint) -> PotentialJet;

    fn value(&self, x: &SpatialPoint) -> RVec {
        self.jet(x).value
    }

    fn jacobian(&self, x: &SpatialPoint) -> RMat {
        self.jet(x).jacobian
    }

    fn divergence(&self, x: &SpatialPoint) -> f64 {
        self.jet(x).divergence()
    }
}

/// A complex scalar function, used for the potential `φ`.
pub trait ScalarField: Send + Sync {
    fn dim(&self) -> Dim;

    fn value(&self, x: &SpatialPoint) -> C64;
}

/// A real gauge function `χ` with gradient and Hessian.
pub trait GaugeFunction: Send + Sync {
    fn jet(&self, x: &SpatialPoint) -> GaugeJet;

    /// Short tag appended to the label of a transformed triple.
    fn label(&self) -> String {
        String::from("chi")
    }
}

/// The potential `φ` together with conservative sup-norm bounds over `B_1`.
#[derive(Clone)]
pub struct ScalarPotential {
    source: Arc<dyn ScalarField>,
    sup_norm: f64,
    sup_norm_real_part: f64,
}

impl ScalarPotential {
    /// Wraps `source`, computing `‖φ‖_∞` and `‖φ^R‖_∞` on a dense tensor
    /// sample of the closed unit ball.
    pub fn sampled(source: Arc<dyn ScalarField>) -> Self {
        let mut sup = 0.0_f64;
        let mut sup_re = 0.0_f64;
        potentials::for_each_ball_sample(source.dim(), MIN_SUP_SAMPLES, |x| {
            let v = source.value(x);
            sup = sup.max(v.norm());
            sup_re = sup_re.max(v.re.abs());
        });
        Self {
            source,
            sup_norm: sup,
            sup_norm_real_part: sup_re,
        }
    }

    pub(crate) fn from_parts(
        source: Arc<dyn ScalarField>,
        sup_norm: f64,
        sup_norm_real_part: f64,
    ) -> Self {
        Self {
            source,
            sup_norm,
            sup_norm_real_part,
        }
    }

    pub fn value(&self, x: &SpatialPoint) -> C64 {
        self.source.value(x)
    }

    pub fn dim(&self) -> Dim {
        self.source.dim()
    }

    /// `‖φ‖_{L^∞(B_1)}` as sampled.
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// `‖φ^R‖_{L^∞(B_1)}` as sampled.
    pub fn sup_norm_real_part(&self) -> f64 {
        self.sup_norm_real_part
    }

    /// Sup norms widened by the values at `points` (typically the quadrature
    /// nodes in use).
    pub fn sup_norms_with<'a>(
        &self,
        points: impl IntoIterator<Item = &'a SpatialPoint>,
    ) -> (f64, f64) {
        points
            .into_iter()
            .fold((self.sup_norm, self.sup_norm_real_part), |(s, r), x| {
                let v = self.source.value(x);
                (s.max(v.norm()), r.max(v.re.abs()))
            })
    }
}

impl core::fmt::Debug for ScalarPotential {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ScalarPotential")
            .field("dim", &self.dim())
            .field("sup_norm", &self.sup_norm)
            .field("sup_norm_real_part", &self.sup_norm_real_part)
            .finish()
    }
}

/// An exact solution bundle `(ω, A, φ)` with `ℋ_A²ω = φω`.
#[derive(Clone)]
pub struct ManufacturedTriple {
    pub omega: Arc<dyn ComplexField>,
    pub potential_a: Arc<dyn VectorPotential>,
    pub potential_phi: ScalarPotential,
    pub label: String,
}

impl core::fmt::Debug for ManufacturedTriple {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ManufacturedTriple")
            .field("label", &self.label)
            .field("dim", &self.dim())
            .field("potential_phi", &self.potential_phi)
            .finish()
    }
}

impl ManufacturedTriple {
    pub fn new(
        label: impl Into<String>,
        omega: Arc<dyn ComplexField>,
        potential_a: Arc<dyn VectorPotential>,
        potential_phi: ScalarPotential,
    ) -> Result<Self> {
        check_dims(omega.dim(), potential_a.dim())?;
        check_dims(omega.dim(), potential_phi.dim())?;
        Ok(Self {
            omega,
            potential_a,
            potential_phi,
            label: label.into(),
        })
    }

    pub fn dim(&self) -> Dim {
        self.omega.dim()
    }

    /// Full local state at `x`: jets of `ω` and `A`, `ℋ_Aω` and `φ`.
    pub fn local(&self, x: &SpatialPoint) -> LocalState {
        let field = self.omega.jet(x);
        let pot = self.potential_a.jet(x);
        let mag_grad = magnetic_gradient(&field, &pot);
        LocalState {
            field,
            potential: pot,
            mag_grad,
            phi: self.potential_phi.value(x),
        }
    }

    /// Relative residual `|ℋ_A²ω − φω| / (1 + |φω|)` at `x`.
    pub fn residual_at(&self, x: &SpatialPoint) -> f64 {
        let field = self.omega.jet(x);
        let pot = self.potential_a.jet(x);
        let phi_omega = self.potential_phi.value(x) * field.value;
        (magnetic_laplacian(&field, &pot) - phi_omega).norm() / (1.0 + phi_omega.norm())
    }
}

/// Everything the radial functionals need at one point.
#[derive(Debug, Clone, Copy)]
pub struct LocalState {
    pub field: FieldJet,
    pub potential: PotentialJet,
    /// `ℋ_Aω = i∇ω + Aω`.
    pub mag_grad: CVec,
    pub phi: C64,
}

pub(crate) fn magnetic_gradient(field: &FieldJet, pot: &PotentialJet) -> CVec {
    let mut out = ZERO_CVEC;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = I * field.gradient[k] + field.value * pot.value[k];
    }
    out
}

pub(crate) fn magnetic_laplacian(field: &FieldJet, pot: &PotentialJet) -> C64 {
    let a_dot_grad = cdot_real(&field.gradient, &pot.value);
    let a_sq = dot(&pot.value, &pot.value);
    // i∇·(Aω) = i(∇·A)ω + iA·∇ω
    -field.laplacian
        + I * a_dot_grad
        + I * (pot.divergence() * field.value + a_dot_grad)
        + a_sq * field.value
}

fn check_triplet(
    omega: &dyn ComplexField,
    a: &dyn VectorPotential,
    x: &SpatialPoint,
) -> Result<()> {
    check_dims(omega.dim(), a.dim())?;
    check_dims(omega.dim(), x.dim())
}

/// `ℋ_Aω(x) = i∇ω(x) + A(x)ω(x)`, componentwise.
pub fn mag_gradient(
    omega: &dyn ComplexField,
    a: &dyn VectorPotential,
    x: &SpatialPoint,
) -> Result<Vec<C64>> {
    check_triplet(omega, a, x)?;
    let g = magnetic_gradient(&omega.jet(x), &a.jet(x));
    Ok(g[..x.dim().n()].to_vec())
}

/// `ℋ_A²ω(x) = −Δω + iA·∇ω + i∇·(Aω) + (A·A)ω`.
pub fn mag_laplacian(
    omega: &dyn ComplexField,
    a: &dyn VectorPotential,
    x: &SpatialPoint,
) -> Result<C64> {
    check_triplet(omega, a, x)?;
    Ok(magnetic_laplacian(&omega.jet(x), &a.jet(x)))
}

/// Antisymmetric matrix with entries `ξ_jk = ∇_j a_k − ∇_k a_j`.
pub fn xi_matrix(a: &dyn VectorPotential, x: &SpatialPoint) -> Result<RMat> {
    check_dims(a.dim(), x.dim())?;
    Ok(xi_from_jacobian(&a.jacobian(x)))
}

pub fn xi_from_jacobian(jac: &RMat) -> RMat {
    let mut xi = [[0.0; 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            xi[j][k] = jac[j][k] - jac[k][j];
        }
    }
    xi
}

/// Maximum Frobenius norm of `Ξ_A` over `samples`.
pub fn xi_frobenius_max<'a>(
    a: &dyn VectorPotential,
    samples: impl IntoIterator<Item = &'a SpatialPoint>,
) -> Result<f64> {
    let mut max: Option<f64> = None;
    for x in samples {
        let n = frobenius(&xi_matrix(a, x)?);
        max = Some(max.map_or(n, |m| m.max(n)));
    }
    max.ok_or_else(|| Error::config("xi_frobenius_max needs at least one sample point"))
}

/// Manufactures `φ = ℋ_A²ω / ω`, rejecting fields with `|ω| < floor`
/// anywhere on a dense sample of the closed unit ball.
pub fn derive_phi(
    omega: Arc<dyn ComplexField>,
    a: Arc<dyn VectorPotential>,
    floor: f64,
) -> Result<ScalarPotential> {
    check_dims(omega.dim(), a.dim())?;
    if !(floor > 0.0) {
        return Err(Error::config("derive_phi floor must be positive"));
    }
    let dim = omega.dim();
    let derived = DerivedPhi::new(omega, a);
    let mut sup = 0.0_f64;
    let mut sup_re = 0.0_f64;
    let mut violation: Option<(f64, SpatialPoint)> = None;
    potentials::for_each_ball_sample(dim, MIN_SUP_SAMPLES, |x| {
        if violation.is_some() {
            return;
        }
        let field = derived.omega().jet(x);
        let modulus = field.value.norm();
        if !(modulus >= floor) {
            violation = Some((modulus, *x));
            return;
        }
        let v = magnetic_laplacian(&field, &derived.potential().jet(x)) / field.value;
        sup = sup.max(v.norm());
        sup_re = sup_re.max(v.re.abs());
    });
    if let Some((modulus, point)) = violation {
        return Err(Error::SingularTriple {
            modulus,
            floor,
            point,
        });
    }
    Ok(ScalarPotential::from_parts(Arc::new(derived), sup, sup_re))
}

//! Gauge transforms `ω ↦ e^{iχ}ω`, `A ↦ A + ∇χ`, under which
//! `ℋ_{A+∇χ}(e^{iχ}ω) = e^{iχ}ℋ_Aω`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use num_traits::Float;

use super::{
    ComplexField, FieldJet, GaugeFunction, ManufacturedTriple, PotentialJet, VectorPotential,
};
use crate::geometry::{cdot_real, dot, trace, Dim, RMat, RVec, SpatialPoint, I};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeJet {
    pub value: f64,
    pub gradient: RVec,
    /// `hessian[i][j] = ∂_i ∂_j χ`.
    pub hessian: RMat,
}

/// `χ(x) = c·x + ½ xᵀQx` with symmetric `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialGauge {
    pub linear: RVec,
    pub quadratic: RMat,
}

impl PolynomialGauge {
    /// `χ(x) = s·x₁x₂`.
    pub fn bilinear(s: f64) -> Self {
        let mut q = [[0.0; 3]; 3];
        q[0][1] = s;
        q[1][0] = s;
        Self {
            linear: [0.0; 3],
            quadratic: q,
        }
    }

    /// `χ(x) = c·x`.
    pub fn linear(c: RVec) -> Self {
        Self {
            linear: c,
            quadratic: [[0.0; 3]; 3],
        }
    }
}

impl GaugeFunction for PolynomialGauge {
    fn label(&self) -> String {
        let linear = self.linear.iter().any(|&c| c != 0.0);
        let q = &self.quadratic;
        let bilinear_only = q[0][1] == q[1][0]
            && (0..3)
                .all(|i| (0..3).all(|j| (i, j) == (0, 1) || (i, j) == (1, 0) || q[i][j] == 0.0));
        match (linear, bilinear_only) {
            (_, false) => String::from("chi=poly"),
            (false, true) => format!("chi=x1x2(s={})", q[0][1]),
            (true, true) if q[0][1] == 0.0 => format!("chi=c.x(c={})", fmt_vec(&self.linear)),
            (true, true) => format!("chi=c.x+x1x2(c={},s={})", fmt_vec(&self.linear), q[0][1]),
        }
    }

    fn jet(&self, x: &SpatialPoint) -> GaugeJet {
        let c = x.as_array();
        let mut qx = [0.0; 3];
        for (i, slot) in qx.iter_mut().enumerate() {
            *slot = dot(&self.quadratic[i], c);
        }
        GaugeJet {
            value: dot(&self.linear, c) + 0.5 * dot(c, &qx),
            gradient: [
                self.linear[0] + qx[0],
                self.linear[1] + qx[1],
                self.linear[2] + qx[2],
            ],
            hessian: self.quadratic,
        }
    }
}

/// `χ(x) = amplitude · sin(k·x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidalGauge {
    pub amplitude: f64,
    pub wave: RVec,
}

impl GaugeFunction for SinusoidalGauge {
    fn label(&self) -> String {
        format!("chi=sin(a={},k={})", self.amplitude, fmt_vec(&self.wave))
    }

    fn jet(&self, x: &SpatialPoint) -> GaugeJet {
        let phase = dot(&self.wave, x.as_array());
        let (s, c) = phase.sin_cos();
        let k = self.wave;
        let mut hessian = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                hessian[i][j] = -self.amplitude * s * k[i] * k[j];
            }
        }
        GaugeJet {
            value: self.amplitude * s,
            gradient: [
                self.amplitude * c * k[0],
                self.amplitude * c * k[1],
                self.amplitude * c * k[2],
            ],
            hessian,
        }
    }
}

/// `χ` as a function of the first `N` coordinates only: derivatives along
/// absent axes are dropped.
fn restricted_jet(chi: &dyn GaugeFunction, x: &SpatialPoint) -> GaugeJet {
    let mut g = chi.jet(x);
    for k in x.dim().n()..3 {
        g.gradient[k] = 0.0;
        for j in 0..3 {
            g.hessian[k][j] = 0.0;
            g.hessian[j][k] = 0.0;
        }
    }
    g
}

fn fmt_vec(v: &RVec) -> String {
    format!("[{},{},{}]", v[0], v[1], v[2])
}

/// `e^{iχ}ω`.
#[derive(Clone)]
pub struct GaugedField {
    pub inner: Arc<dyn ComplexField>,
    pub chi: Arc<dyn GaugeFunction>,
}

impl ComplexField for GaugedField {
    fn dim(&self) -> Dim {
        self.inner.dim()
    }

    fn jet(&self, x: &SpatialPoint) -> FieldJet {
        let w = self.inner.jet(x);
        let g = restricted_jet(&*self.chi, x);
        let phase = C64::from_polar(1.0, g.value);
        let mut gradient = w.gradient;
        for (k, slot) in gradient.iter_mut().enumerate() {
            *slot = phase * (w.gradient[k] + I * w.value * g.gradient[k]);
        }
        let grad_chi_sq = dot(&g.gradient, &g.gradient);
        let laplacian = phase
            * (w.laplacian
                + 2.0 * I * cdot_real(&w.gradient, &g.gradient)
                + I * w.value * trace(&g.hessian)
                - w.value * grad_chi_sq);
        FieldJet {
            value: phase * w.value,
            gradient,
            laplacian,
        }
    }
}

/// `A + ∇χ`.
#[derive(Clone)]
pub struct GaugedPotential {
    pub inner: Arc<dyn VectorPotential>,
    pub chi: Arc<dyn GaugeFunction>,
}

impl VectorPotential for GaugedPotential {
    fn dim(&self) -> Dim {
        self.inner.dim()
    }

    fn jet(&self, x: &SpatialPoint) -> PotentialJet {
        let a = self.inner.jet(x);
        let g = restricted_jet(&*self.chi, x);
        let n = self.dim().n();
        let mut value = a.value;
        let mut jacobian = a.jacobian;
        for i in 0..n {
            value[i] += g.gradient[i];
            for j in 0..n {
                jacobian[i][j] += g.hessian[i][j];
            }
        }
        PotentialJet { value, jacobian }
    }
}

/// Returns `(e^{iχ}ω, A + ∇χ, φ)`; `φ` and its sup norms are unchanged.
pub fn gauge_transform(
    triple: &ManufacturedTriple,
    chi: Arc<dyn GaugeFunction>,
) -> ManufacturedTriple {
    let chi_label = chi.label();
    ManufacturedTriple {
        omega: Arc::new(GaugedField {
            inner: triple.omega.clone(),
            chi: chi.clone(),
        }),
        potential_a: Arc::new(GaugedPotential {
            inner: triple.potential_a.clone(),
            chi,
        }),
        potential_phi: triple.potential_phi.clone(),
        label: format!("{}+{}", triple.label, chi_label),
    }
}

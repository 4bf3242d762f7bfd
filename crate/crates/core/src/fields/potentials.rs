use alloc::sync::Arc;

use num_traits::Float;

use super::{magnetic_laplacian, ComplexField, PotentialJet, ScalarField, VectorPotential};
use crate::geometry::{Dim, RVec, SpatialPoint, ZERO_MAT};
use crate::C64;

/// Default lower bound on `|ω|` accepted by [`super::derive_phi`].
pub const DEFAULT_PHI_FLOOR: f64 = 1e-6;

/// Minimum number of tensor-grid points inside `B_1` used for sup norms.
pub const MIN_SUP_SAMPLES: usize = 1_000_000;

/// Calls `f` on every point of the smallest odd tensor grid over `[-1, 1]^N`
/// that places at least `min_count` points in the closed unit ball. The
/// origin is always a grid point.
pub fn for_each_ball_sample(dim: Dim, min_count: usize, mut f: impl FnMut(&SpatialPoint)) {
    let n_axis = ball_grid_points_per_axis(dim, min_count);
    let h = 2.0 / (n_axis - 1) as f64;
    let coord = |i: usize| -1.0 + h * i as f64;
    let inside = |r2: f64| r2 <= 1.0 + 1e-12;
    match dim {
        Dim::Two => {
            for i in 0..n_axis {
                for j in 0..n_axis {
                    let x = SpatialPoint::xy(coord(i), coord(j));
                    if inside(x.norm_sq()) {
                        f(&x);
                    }
                }
            }
        }
        Dim::Three => {
            for i in 0..n_axis {
                for j in 0..n_axis {
                    for k in 0..n_axis {
                        let x = SpatialPoint::xyz(coord(i), coord(j), coord(k));
                        if inside(x.norm_sq()) {
                            f(&x);
                        }
                    }
                }
            }
        }
    }
}

fn ball_grid_points_per_axis(dim: Dim, min_count: usize) -> usize {
    let n = dim.n() as i32;
    let fraction = dim.unit_ball_volume() / 2.0_f64.powi(n);
    let mut n_axis = ((min_count as f64 / fraction).powf(1.0 / n as f64)).ceil() as usize;
    n_axis = n_axis.max(3) | 1;
    while count_inside(dim, n_axis) < min_count {
        n_axis += 2;
    }
    n_axis
}

fn count_inside(dim: Dim, n_axis: usize) -> usize {
    let h = 2.0 / (n_axis - 1) as f64;
    let sq = |i: usize| {
        let c = -1.0 + h * i as f64;
        c * c
    };
    let mut count = 0;
    match dim {
        Dim::Two => {
            for i in 0..n_axis {
                for j in 0..n_axis {
                    if sq(i) + sq(j) <= 1.0 + 1e-12 {
                        count += 1;
                    }
                }
            }
        }
        Dim::Three => {
            for i in 0..n_axis {
                for j in 0..n_axis {
                    for k in 0..n_axis {
                        if sq(i) + sq(j) + sq(k) <= 1.0 + 1e-12 {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy)]
pub struct ZeroPotential {
    pub dim: Dim,
}

impl VectorPotential for ZeroPotential {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn jet(&self, _x: &SpatialPoint) -> PotentialJet {
        PotentialJet {
            value: [0.0; 3],
            jacobian: ZERO_MAT,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantPotential {
    pub dim: Dim,
    pub value: RVec,
}

impl VectorPotential for ConstantPotential {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn jet(&self, _x: &SpatialPoint) -> PotentialJet {
        PotentialJet {
            value: self.value,
            jacobian: ZERO_MAT,
        }
    }
}

/// `A = b·(−x₂, x₁[, 0])`, a uniform magnetic field of strength `2b`
/// normal to the `x₁x₂` plane.
#[derive(Debug, Clone, Copy)]
pub struct RotationalPotential {
    pub dim: Dim,
    pub strength: f64,
}

impl VectorPotential for RotationalPotential {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn jet(&self, x: &SpatialPoint) -> PotentialJet {
        let c = x.as_array();
        let b = self.strength;
        let mut jacobian = ZERO_MAT;
        jacobian[0][1] = b;
        jacobian[1][0] = -b;
        PotentialJet {
            value: [-b * c[1], b * c[0], 0.0],
            jacobian,
        }
    }
}

/// Real radial potential `φ(x) = c₀ + c₂|x|²`.
#[derive(Debug, Clone, Copy)]
pub struct RadialQuadraticPhi {
    pub dim: Dim,
    pub constant: f64,
    pub quadratic: f64,
}

impl ScalarField for RadialQuadraticPhi {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn value(&self, x: &SpatialPoint) -> C64 {
        C64::new(self.constant + self.quadratic * x.norm_sq(), 0.0)
    }
}

/// `φ = ℋ_A²ω / ω`, evaluated pointwise from the analytic jets.
#[derive(Clone)]
pub struct DerivedPhi {
    omega: Arc<dyn ComplexField>,
    potential: Arc<dyn VectorPotential>,
}

impl DerivedPhi {
    pub fn new(omega: Arc<dyn ComplexField>, potential: Arc<dyn VectorPotential>) -> Self {
        Self { omega, potential }
    }

    pub(crate) fn omega(&self) -> &dyn ComplexField {
        &*self.omega
    }

    pub(crate) fn potential(&self) -> &dyn VectorPotential {
        &*self.potential
    }
}

impl ScalarField for DerivedPhi {
    fn dim(&self) -> Dim {
        self.omega.dim()
    }

    fn value(&self, x: &SpatialPoint) -> C64 {
        let field = self.omega.jet(x);
        magnetic_laplacian(&field, &self.potential.jet(x)) / field.value
    }
}

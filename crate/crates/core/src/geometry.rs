//! Points, dimensions and the small fixed-size vector algebra used by the
//! field jets. Vectors are stored in `[_; 3]` arrays; components past the
//! active dimension are kept at zero.

use core::fmt;

use num_traits::Float;

use crate::{Error, Result, C64};

pub type RVec = [f64; 3];
pub type CVec = [C64; 3];
/// Row-major real matrix; only the leading `N×N` block is meaningful.
pub type RMat = [[f64; 3]; 3];

pub const ZERO_C: C64 = C64::new(0.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);
pub const ZERO_CVEC: CVec = [ZERO_C; 3];
pub const ZERO_MAT: RMat = [[0.0; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub const fn n(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    pub fn from_usize(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            other => Err(Error::config(alloc::format!(
                "unsupported dimension {other}; expected 2 or 3"
            ))),
        }
    }

    /// Surface area of the unit sphere `∂B_1`.
    pub fn unit_sphere_area(self) -> f64 {
        match self {
            Dim::Two => 2.0 * core::f64::consts::PI,
            Dim::Three => 4.0 * core::f64::consts::PI,
        }
    }

    /// Volume of the unit ball `B_1`.
    pub fn unit_ball_volume(self) -> f64 {
        self.unit_sphere_area() / self.n() as f64
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())
    }
}

/// A point of `ℝ^N`, `N ∈ {2, 3}`, in dimensionless Cartesian coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialPoint {
    coords: RVec,
    dim: Dim,
}

impl SpatialPoint {
    pub fn new(coords: &[f64]) -> Result<Self> {
        let dim = Dim::from_usize(coords.len())?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::config("point coordinates must be finite"));
        }
        let mut c = [0.0; 3];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Self { coords: c, dim })
    }

    pub const fn xy(x: f64, y: f64) -> Self {
        Self {
            coords: [x, y, 0.0],
            dim: Dim::Two,
        }
    }

    pub const fn xyz(x: f64, y: f64, z: f64) -> Self {
        Self {
            coords: [x, y, z],
            dim: Dim::Three,
        }
    }

    pub fn origin(dim: Dim) -> Self {
        Self {
            coords: [0.0; 3],
            dim,
        }
    }

    /// Builds a point from a padded array; components past `dim` are zeroed.
    pub fn from_array(mut coords: RVec, dim: Dim) -> Self {
        for c in coords.iter_mut().skip(dim.n()) {
            *c = 0.0;
        }
        Self { coords, dim }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim.n()]
    }

    pub fn as_array(&self) -> &RVec {
        &self.coords
    }

    pub fn norm_sq(&self) -> f64 {
        dot(&self.coords, &self.coords)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::from_array(scale(&self.coords, s), self.dim)
    }
}

impl fmt::Display for SpatialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_dims(expected: Dim, found: Dim) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: expected.n(),
            found: found.n(),
        })
    }
}

#[inline]
pub fn dot(a: &RVec, b: &RVec) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn scale(a: &RVec, s: f64) -> RVec {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// `Σ_k u_k · v_k` for a complex vector and a real vector.
#[inline]
pub fn cdot_real(u: &CVec, v: &RVec) -> C64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// `Σ_k |u_k|²`.
#[inline]
pub fn cnorm_sq(u: &CVec) -> f64 {
    u[0].norm_sqr() + u[1].norm_sqr() + u[2].norm_sqr()
}

#[inline]
pub fn trace(m: &RMat) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn frobenius(m: &RMat) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
}

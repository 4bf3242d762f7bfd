//! Exact manufactured solutions addressable by name.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Float;

use super::potentials::{
    ConstantPotential, RadialQuadraticPhi, RotationalPotential, ZeroPotential,
};
use super::{
    derive_phi, ComplexField, FieldJet, ManufacturedTriple, ScalarPotential, DEFAULT_PHI_FLOOR,
};
use crate::geometry::{Dim, SpatialPoint, I, ZERO_CVEC};
use crate::{Error, Result, C64};

/// A catalog parameter value.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Number(f64),
    List(Vec<f64>),
}

/// Named catalog parameters. The key `dim` selects the dimension where the
/// entry allows a choice.
pub type Params = BTreeMap<String, ParamValue>;

pub const CATALOG_NAMES: [&str; 4] = [
    "gaussian",
    "harmonic2d",
    "constant_field",
    "rotational_gauss",
];

/// `ω = e^{−|x|²}`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianField {
    pub dim: Dim,
}

impl ComplexField for GaussianField {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn jet(&self, x: &SpatialPoint) -> FieldJet {
        let r2 = x.norm_sq();
        let e = (-r2).exp();
        let c = x.as_array();
        let n = self.dim.n() as f64;
        FieldJet {
            value: C64::new(e, 0.0),
            gradient: [
                C64::new(-2.0 * c[0] * e, 0.0),
                C64::new(-2.0 * c[1] * e, 0.0),
                C64::new(-2.0 * c[2] * e, 0.0),
            ],
            laplacian: C64::new((4.0 * r2 - 2.0 * n) * e, 0.0),
        }
    }
}

/// `ω = (x₁ + i x₂)^k` in the plane, a homogeneous harmonic of degree `k`.
#[derive(Debug, Clone, Copy)]
pub struct HolomorphicPower {
    pub degree: u32,
}

impl ComplexField for HolomorphicPower {
    fn dim(&self) -> Dim {
        Dim::Two
    }

    fn jet(&self, x: &SpatialPoint) -> FieldJet {
        let z = C64::new(x.as_array()[0], x.as_array()[1]);
        let k = self.degree;
        let (value, dz) = if k == 0 {
            (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
        } else {
            let lower = z.powu(k - 1);
            (lower * z, lower * k as f64)
        };
        FieldJet {
            value,
            gradient: [dz, I * dz, C64::new(0.0, 0.0)],
            laplacian: C64::new(0.0, 0.0),
        }
    }
}

/// `ω ≡ c`.
#[derive(Debug, Clone, Copy)]
pub struct ConstantField {
    pub dim: Dim,
    pub value: C64,
}

impl ComplexField for ConstantField {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn jet(&self, _x: &SpatialPoint) -> FieldJet {
        FieldJet {
            value: self.value,
            gradient: ZERO_CVEC,
            laplacian: C64::new(0.0, 0.0),
        }
    }
}

/// `ω = e^{−1/|x|²}` (extended by `0` at the origin): smooth, flat at the
/// origin, vanishing there to infinite order.
#[derive(Debug, Clone, Copy)]
pub struct FlatField {
    pub dim: Dim,
}

impl ComplexField for FlatField {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn jet(&self, x: &SpatialPoint) -> FieldJet {
        let s = x.norm_sq();
        // e^{-1/s} underflows long before s reaches 1e-3
        if s < 1e-3 {
            return FieldJet {
                value: C64::new(0.0, 0.0),
                gradient: ZERO_CVEC,
                laplacian: C64::new(0.0, 0.0),
            };
        }
        let g = (-1.0 / s).exp();
        let g1 = g / (s * s);
        let g2 = g * (1.0 / (s * s * s * s) - 2.0 / (s * s * s));
        let c = x.as_array();
        let n = self.dim.n() as f64;
        FieldJet {
            value: C64::new(g, 0.0),
            gradient: [
                C64::new(2.0 * c[0] * g1, 0.0),
                C64::new(2.0 * c[1] * g1, 0.0),
                C64::new(2.0 * c[2] * g1, 0.0),
            ],
            laplacian: C64::new(2.0 * n * g1 + 4.0 * s * g2, 0.0),
        }
    }
}

/// `c · ω` for a complex constant `c`.
#[derive(Clone)]
pub struct ScaledField {
    pub factor: C64,
    pub inner: Arc<dyn ComplexField>,
}

impl ComplexField for ScaledField {
    fn dim(&self) -> Dim {
        self.inner.dim()
    }

    fn jet(&self, x: &SpatialPoint) -> FieldJet {
        let j = self.inner.jet(x);
        FieldJet {
            value: self.factor * j.value,
            gradient: [
                self.factor * j.gradient[0],
                self.factor * j.gradient[1],
                self.factor * j.gradient[2],
            ],
            laplacian: self.factor * j.laplacian,
        }
    }
}

fn number(params: &Params, key: &str) -> Result<Option<f64>> {
    match params.get(key) {
        None => Ok(None),
        Some(ParamValue::Number(v)) if v.is_finite() => Ok(Some(*v)),
        Some(_) => Err(Error::config(format!(
            "parameter `{key}` must be a finite number"
        ))),
    }
}

fn dimension(params: &Params, default: Option<Dim>) -> Result<Dim> {
    match number(params, "dim")? {
        Some(d) if d.fract() == 0.0 && d > 0.0 => Dim::from_usize(d as usize),
        Some(d) => Err(Error::config(format!(
            "parameter `dim` must be 2 or 3, got {d}"
        ))),
        None => default.ok_or_else(|| Error::config("missing parameter `dim`")),
    }
}

fn reject_unknown(name: &str, params: &Params, allowed: &[&str]) -> Result<()> {
    match params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::config(format!(
            "unknown parameter `{k}` for catalog entry `{name}`"
        ))),
        None => Ok(()),
    }
}

/// Builds the named manufactured triple.
///
/// | name | params | `(ω, A, φ)` |
/// |------|--------|-------------|
/// | `gaussian` | `dim` (default 2) | `(e^{−|x|²}, 0, 2N − 4|x|²)` |
/// | `harmonic2d` | `k ≥ 1` integer | `((x₁+ix₂)^k, 0, 0)` |
/// | `constant_field` | `a` list (its length fixes `N`) | `(1, a, |a|²)` |
/// | `rotational_gauss` | `b` (default 1), `dim` | `(e^{−|x|²}, b(−x₂, x₁), derived)` |
pub fn catalog(name: &str, params: &Params) -> Result<ManufacturedTriple> {
    match name {
        "gaussian" => {
            reject_unknown(name, params, &["dim"])?;
            let dim = dimension(params, Some(Dim::Two))?;
            let n = dim.n() as f64;
            let phi = RadialQuadraticPhi {
                dim,
                constant: 2.0 * n,
                quadratic: -4.0,
            };
            ManufacturedTriple::new(
                format!("gaussian(N={dim})"),
                Arc::new(GaussianField { dim }),
                Arc::new(ZeroPotential { dim }),
                ScalarPotential::sampled(Arc::new(phi)),
            )
        }
        "harmonic2d" => {
            reject_unknown(name, params, &["k", "dim"])?;
            if dimension(params, Some(Dim::Two))? != Dim::Two {
                return Err(Error::config("harmonic2d is defined only for N = 2"));
            }
            let k = number(params, "k")?
                .ok_or_else(|| Error::config("harmonic2d requires parameter `k`"))?;
            if k < 1.0 || k.fract() != 0.0 || k > 64.0 {
                return Err(Error::config(format!(
                    "harmonic2d parameter `k` must be an integer in 1..=64, got {k}"
                )));
            }
            let k = k as u32;
            let dim = Dim::Two;
            let phi = RadialQuadraticPhi {
                dim,
                constant: 0.0,
                quadratic: 0.0,
            };
            ManufacturedTriple::new(
                format!("harmonic2d(k={k})"),
                Arc::new(HolomorphicPower { degree: k }),
                Arc::new(ZeroPotential { dim }),
                ScalarPotential::sampled(Arc::new(phi)),
            )
        }
        "constant_field" => {
            reject_unknown(name, params, &["a", "dim"])?;
            let a = match params.get("a") {
                Some(ParamValue::List(v)) if v.iter().all(|c| c.is_finite()) => v.clone(),
                Some(_) => {
                    return Err(Error::config(
                        "parameter `a` must be a list of finite numbers",
                    ))
                }
                None => return Err(Error::config("constant_field requires parameter `a`")),
            };
            let dim = Dim::from_usize(a.len())?;
            if dimension(params, Some(dim))? != dim {
                return Err(Error::config(
                    "constant_field: length of `a` disagrees with `dim`",
                ));
            }
            let mut value = [0.0; 3];
            value[..a.len()].copy_from_slice(&a);
            let a_sq: f64 = a.iter().map(|c| c * c).sum();
            let phi = RadialQuadraticPhi {
                dim,
                constant: a_sq,
                quadratic: 0.0,
            };
            ManufacturedTriple::new(
                format!("constant_field(a={})", list_label(&a)),
                Arc::new(ConstantField {
                    dim,
                    value: C64::new(1.0, 0.0),
                }),
                Arc::new(ConstantPotential { dim, value }),
                ScalarPotential::sampled(Arc::new(phi)),
            )
        }
        "rotational_gauss" => {
            reject_unknown(name, params, &["b", "dim"])?;
            let dim = dimension(params, Some(Dim::Two))?;
            let b = number(params, "b")?.unwrap_or(1.0);
            let omega: Arc<dyn ComplexField> = Arc::new(GaussianField { dim });
            let a = Arc::new(RotationalPotential { dim, strength: b });
            let phi = derive_phi(omega.clone(), a.clone(), DEFAULT_PHI_FLOOR)?;
            ManufacturedTriple::new(format!("rotational_gauss(b={b},N={dim})"), omega, a, phi)
        }
        other => Err(Error::config(format!(
            "unknown catalog entry `{other}`; expected one of {}",
            CATALOG_NAMES.join(", ")
        ))),
    }
}

fn list_label(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

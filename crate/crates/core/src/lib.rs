//! Numerical laboratory for strong unique continuation of the magnetic
//! Schrödinger operator `(i∇ + A)²ω = φω`.
//!
//! The crate evaluates the radial quantities behind the frequency-function
//! argument (boundary mass `Φ(r)`, energy `Ψ(r)`, the frequency
//! `r Ψ(r) / Φ(r)`), their closed-form derivative identities, the
//! Rellich/Pohozaev identities, the comparison and doubling inequalities and
//! the vanishing-order estimate, and checks all of them against exact
//! manufactured solutions.
//!
//! The crate is `no_std` (with `alloc`). File formats, configuration and the
//! command-line driver live in the `maglab` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
// `num_traits::Float` supplies float math on no_std targets; it is shadowed
// by inherent methods whenever those are available.
#![allow(unused_imports)]
// Negated comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod error;
pub mod fd;
pub mod fields;
pub mod functionals;
pub mod geometry;
pub mod quadrature;
pub mod verify;

pub use error::{Error, Result};
pub use fields::{
    catalog, derive_phi, gauge_transform, mag_gradient, mag_laplacian, xi_frobenius_max, xi_matrix,
    ComplexField, GaugeFunction, ManufacturedTriple, ParamValue, Params, ScalarPotential,
    VectorPotential,
};
pub use functionals::{build_profile, FrequencyProfile, RadialSample};
pub use geometry::{Dim, SpatialPoint};
pub use quadrature::{make_ball_rule, make_sphere_rule, BallRule, RadiiGrid, SphereRule};
pub use verify::{IdentityReport, TauEstimate, Verdict};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

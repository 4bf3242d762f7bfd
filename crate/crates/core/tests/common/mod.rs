#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use maglab_core::fields::{ConstantField, PolynomialGauge, RadialQuadraticPhi, ZeroPotential};
use maglab_core::{
    catalog, gauge_transform, Dim, ManufacturedTriple, ParamValue, Params, ScalarPotential,
    SpatialPoint, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn params(entries: &[(&str, ParamValue)]) -> Params {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

pub fn num(v: f64) -> ParamValue {
    ParamValue::Number(v)
}

pub fn harmonic(k: u32) -> ManufacturedTriple {
    catalog("harmonic2d", &params(&[("k", num(k as f64))])).unwrap()
}

pub fn gaussian(dim: usize) -> ManufacturedTriple {
    catalog("gaussian", &params(&[("dim", num(dim as f64))])).unwrap()
}

/// Every catalog entry in the configurations the tests exercise.
pub fn catalog_triples() -> &'static [ManufacturedTriple] {
    static TRIPLES: OnceLock<Vec<ManufacturedTriple>> = OnceLock::new();
    TRIPLES.get_or_init(|| {
        let mut out = vec![gaussian(2), gaussian(3)];
        out.extend((1..=5).map(harmonic));
        out.push(
            catalog(
                "constant_field",
                &params(&[("a", ParamValue::List(vec![0.5, -1.0]))]),
            )
            .unwrap(),
        );
        out.push(
            catalog(
                "constant_field",
                &params(&[("a", ParamValue::List(vec![0.3, 0.2, -0.4]))]),
            )
            .unwrap(),
        );
        out.push(catalog("rotational_gauss", &params(&[("b", num(1.0))])).unwrap());
        out.push(
            catalog(
                "rotational_gauss",
                &params(&[("b", num(0.8)), ("dim", num(3.0))]),
            )
            .unwrap(),
        );
        out
    })
}

pub fn catalog_2d() -> impl Iterator<Item = &'static ManufacturedTriple> {
    catalog_triples().iter().filter(|t| t.dim() == Dim::Two)
}

/// Catalog triples plus their images under `χ = x₁x₂` and `χ = c·x`.
pub fn gauged_triples() -> &'static [ManufacturedTriple] {
    static TRIPLES: OnceLock<Vec<ManufacturedTriple>> = OnceLock::new();
    TRIPLES.get_or_init(|| {
        let mut out = Vec::new();
        for t in catalog_triples() {
            out.push(gauge_transform(t, Arc::new(PolynomialGauge::bilinear(1.0))));
            out.push(gauge_transform(
                t,
                Arc::new(PolynomialGauge::linear([0.7, -1.3, 0.4])),
            ));
        }
        out
    })
}

/// `ω ≡ c`, `A ≡ 0`, `φ ≡ 0`.
pub fn constant_triple(dim: Dim, c: f64) -> ManufacturedTriple {
    let phi = RadialQuadraticPhi {
        dim,
        constant: 0.0,
        quadratic: 0.0,
    };
    ManufacturedTriple::new(
        format!("const({c})"),
        Arc::new(ConstantField {
            dim,
            value: C64::new(c, 0.0),
        }),
        Arc::new(ZeroPotential { dim }),
        ScalarPotential::sampled(Arc::new(phi)),
    )
    .unwrap()
}

pub fn zero_triple(dim: Dim) -> ManufacturedTriple {
    constant_triple(dim, 0.0)
}

/// Uniformly distributed points of the closed unit ball (rejection sampling).
pub fn random_ball_points(dim: Dim, count: usize, seed: u64) -> Vec<SpatialPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c: Vec<f64> = (0..dim.n()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if c.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
            out.push(SpatialPoint::new(&c).unwrap());
        }
    }
    out
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Default ball rule in 2D; a lighter product rule in 3D (the test fields
/// are resolved to rounding by either).
pub fn rule_for(dim: Dim) -> &'static maglab_core::BallRule {
    static TWO: OnceLock<maglab_core::BallRule> = OnceLock::new();
    static THREE: OnceLock<maglab_core::BallRule> = OnceLock::new();
    match dim {
        Dim::Two => TWO.get_or_init(|| maglab_core::quadrature::default_ball_rule(dim)),
        Dim::Three => THREE.get_or_init(|| {
            maglab_core::make_ball_rule(maglab_core::make_sphere_rule(dim, 47).unwrap(), 40)
                .unwrap()
        }),
    }
}

/// Profile of `t` on the default grid (step 0.025 in 3D), built once per
/// test binary.
pub fn cached_profile(t: &ManufacturedTriple) -> Arc<maglab_core::FrequencyProfile> {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<maglab_core::FrequencyProfile>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&t.label) {
        return p.clone();
    }
    let grid = match t.dim() {
        Dim::Two => maglab_core::RadiiGrid::default_grid(),
        Dim::Three => maglab_core::RadiiGrid::uniform(0.05, 0.95, 0.025).unwrap(),
    };
    let p = Arc::new(maglab_core::build_profile(t, &grid, rule_for(t.dim())).unwrap());
    cache.lock().unwrap().insert(t.label.clone(), p.clone());
    p
}

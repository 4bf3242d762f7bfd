//! Run configuration: a JSON document with every field but `triples`
//! optional.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "triples": [{"name": "harmonic2d", "params": {"k": 2}}, {"name": "gaussian"}],
//!   "grid": {"r_min": 0.05, "r_max": 0.95, "step": 0.0125},
//!   "quadrature": {"sphere_order": 256, "radial_nodes": 64},
//!   "tolerances": {"identity": 1e-8, "derivative": 1e-6},
//!   "gammas": [0.1, 0.2, 0.3, 0.4],
//!   "vanish_radii": [0.02, 0.04, 0.06, 0.08, 0.1],
//!   "commands": ["verify"],
//!   "output": {"report": "report.ndjson", "csv_dir": "profiles"}
//! }
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use maglab_core::quadrature::{
    DEFAULT_CIRCLE_ORDER, DEFAULT_RADIAL_NODES, DEFAULT_R_MAX, DEFAULT_R_MIN,
    DEFAULT_SPHERE3_ORDER, DEFAULT_STEP,
};
use maglab_core::verify::{DERIVATIVE_TOLERANCE, IDENTITY_TOLERANCE};
use maglab_core::{
    catalog, make_ball_rule, make_sphere_rule, BallRule, Dim, ManufacturedTriple, ParamValue,
    RadiiGrid,
};
use serde::Deserialize;

use crate::{CliError, Command};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    pub triples: Vec<TripleSpec>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_gammas")]
    pub gammas: Vec<f64>,
    #[serde(default = "default_vanish_radii")]
    pub vanish_radii: Vec<f64>,
    /// Commands run when none is given on the command line.
    #[serde(default = "default_commands")]
    pub commands: Vec<Command>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpec {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamJson>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ParamJson {
    Number(f64),
    List(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub step: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            r_min: DEFAULT_R_MIN,
            r_max: DEFAULT_R_MAX,
            step: DEFAULT_STEP,
        }
    }
}

/// `sphere_order` defaults to 256 circle nodes in 2D and a degree-127
/// (64×128) product rule in 3D.
#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureConfig {
    pub sphere_order: Option<usize>,
    pub radial_nodes: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub identity: f64,
    pub derivative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: IDENTITY_TOLERANCE,
            derivative: DERIVATIVE_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub report: PathBuf,
    pub csv_dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            report: PathBuf::from("report.ndjson"),
            csv_dir: PathBuf::from("profiles"),
        }
    }
}

fn default_dimension() -> usize {
    2
}

fn default_gammas() -> Vec<f64> {
    vec![0.1, 0.2, 0.3, 0.4]
}

fn default_vanish_radii() -> Vec<f64> {
    maglab_core::verify::default_vanishing_radii()
        .radii()
        .to_vec()
}

fn default_commands() -> Vec<Command> {
    vec![Command::Verify]
}

fn invalid(key: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Config {
        key: key.into(),
        message: message.into(),
    }
}

impl RunConfig {
    /// Parses and validates; errors name the offending key.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let key = if path == "." || path == "?" {
                String::from("<root>")
            } else {
                path
            };
            invalid(key, e.inner().to_string())
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn dim(&self) -> Dim {
        Dim::from_usize(self.dimension).expect("validated")
    }

    fn validate(&self) -> Result<(), CliError> {
        if Dim::from_usize(self.dimension).is_err() {
            return Err(invalid(
                "dimension",
                format!("must be 2 or 3, got {}", self.dimension),
            ));
        }
        if self.triples.is_empty() {
            return Err(invalid("triples", "at least one triple is required"));
        }
        let g = &self.grid;
        if !(g.r_min > 0.0 && g.r_min < 1.0) {
            return Err(invalid(
                "grid.r_min",
                format!("must lie in (0, 1), got {}", g.r_min),
            ));
        }
        if !(g.r_max > g.r_min && g.r_max < 1.0) {
            return Err(invalid(
                "grid.r_max",
                format!(
                    "must satisfy r_min < r_max < 1, got r_max = {} with r_min = {}",
                    g.r_max, g.r_min
                ),
            ));
        }
        if !(g.step > 0.0 && g.step.is_finite()) {
            return Err(invalid(
                "grid.step",
                format!("must be positive, got {}", g.step),
            ));
        }
        if let Some(order) = self.quadrature.sphere_order {
            if order < 2 {
                return Err(invalid(
                    "quadrature.sphere_order",
                    format!("must be at least 2, got {order}"),
                ));
            }
        }
        if self.quadrature.radial_nodes == Some(0) {
            return Err(invalid("quadrature.radial_nodes", "must be at least 1"));
        }
        for (key, v) in [
            ("tolerances.identity", self.tolerances.identity),
            ("tolerances.derivative", self.tolerances.derivative),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(key, format!("must be positive, got {v}")));
            }
        }
        for (i, &gamma) in self.gammas.iter().enumerate() {
            if !(gamma > 0.0 && 2.0 * gamma < 1.0) {
                return Err(invalid(
                    format!("gammas[{i}]"),
                    format!("must satisfy 0 < γ < 1/2, got {gamma}"),
                ));
            }
        }
        RadiiGrid::new(self.vanish_radii.clone())
            .map_err(|e| invalid("vanish_radii", e.to_string()))?;
        if self.vanish_radii.len() < 4 || self.vanish_radii.iter().any(|&r| r >= 0.5) {
            return Err(invalid(
                "vanish_radii",
                "needs at least 4 radii, all in (0, 0.5)",
            ));
        }
        Ok(())
    }

    pub fn radii_grid(&self) -> Result<RadiiGrid, CliError> {
        RadiiGrid::uniform(self.grid.r_min, self.grid.r_max, self.grid.step)
            .map_err(|e| invalid("grid", e.to_string()))
    }

    pub fn vanish_grid(&self) -> RadiiGrid {
        RadiiGrid::new(self.vanish_radii.clone()).expect("validated")
    }

    pub fn ball_rule(&self) -> Result<BallRule, CliError> {
        let dim = self.dim();
        let order = self.quadrature.sphere_order.unwrap_or(match dim {
            Dim::Two => DEFAULT_CIRCLE_ORDER,
            Dim::Three => DEFAULT_SPHERE3_ORDER,
        });
        let sphere = make_sphere_rule(dim, order)
            .map_err(|e| invalid("quadrature.sphere_order", e.to_string()))?;
        make_ball_rule(
            sphere,
            self.quadrature.radial_nodes.unwrap_or(DEFAULT_RADIAL_NODES),
        )
        .map_err(|e| invalid("quadrature.radial_nodes", e.to_string()))
    }

    /// Builds the catalog triples. `dimension` is passed to every entry that
    /// does not set `dim` itself, so a mismatch is reported, not ignored.
    pub fn build_triples(&self) -> Result<Vec<ManufacturedTriple>, CliError> {
        self.triples
            .iter()
            .enumerate()
            .map(|(i, spec)| {
                let mut params: maglab_core::Params = spec
                    .params
                    .iter()
                    .map(|(k, v)| {
                        let v = match v {
                            ParamJson::Number(x) => ParamValue::Number(*x),
                            ParamJson::List(xs) => ParamValue::List(xs.clone()),
                        };
                        (k.clone(), v)
                    })
                    .collect();
                params
                    .entry(String::from("dim"))
                    .or_insert(ParamValue::Number(self.dimension as f64));
                let triple = catalog(&spec.name, &params)
                    .map_err(|e| invalid(format!("triples[{i}]"), e.to_string()))?;
                if triple.dim() != self.dim() {
                    return Err(invalid(
                        format!("triples[{i}].params.dim"),
                        format!(
                            "triple has N = {} but the run has dimension {}",
                            triple.dim(),
                            self.dimension
                        ),
                    ));
                }
                Ok(triple)
            })
            .collect()
    }
}

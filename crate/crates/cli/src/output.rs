//! NDJSON report and CSV profile writers. Both are byte-deterministic for a
//! given configuration.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use maglab_core::{FrequencyProfile, IdentityReport};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{CliError, Command};

pub const CSV_HEADER: &str =
    "r,phi,psi,freq,phi_prime_formula,phi_prime_fd,psi_prime_formula,psi_prime_fd,volume_mass,boundary_flux";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Header {
    #[serde(rename = "type")]
    kind: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    /// `sha256:` followed by the hex digest of the raw configuration bytes.
    pub config_digest: String,
    pub commands: Vec<&'static str>,
}

impl Header {
    pub fn new(config_bytes: &[u8], commands: &[Command]) -> Self {
        let digest = Sha256::digest(config_bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Self {
            kind: "header",
            tool: "maglab",
            version: env!("CARGO_PKG_VERSION"),
            config_digest: format!("sha256:{hex}"),
            commands: commands.iter().map(|c| c.as_str()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Record {
    Check(IdentityReport),
    Vanishing {
        triple: String,
        /// `None` when the field vanishes to numerically infinite order.
        order: Option<f64>,
        slope: Option<f64>,
        radii: Vec<f64>,
    },
    Profile {
        triple: String,
        file: String,
        rows: usize,
    },
}

#[derive(Serialize)]
struct CheckLine<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    triple: &'a str,
    identity: &'a str,
    equation: &'a str,
    radius: f64,
    lhs: f64,
    rhs: f64,
    residual: f64,
    tolerance: f64,
    verdict: &'static str,
    asserted: bool,
}

#[derive(Serialize)]
struct VanishingLine<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    triple: &'a str,
    identity: &'static str,
    order: Option<f64>,
    slope: Option<f64>,
    numerically_infinite: bool,
    radii: &'a [f64],
}

#[derive(Serialize)]
struct ProfileLine<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    triple: &'a str,
    file: &'a str,
    rows: usize,
}

impl Record {
    /// `(triple, identity, radius)`; records without a radius sort last.
    pub fn sort_key(&self) -> (&str, &str, u64) {
        match self {
            Record::Check(r) => r.sort_key(),
            Record::Vanishing { triple, .. } => (triple, "vanishing_order", u64::MAX),
            Record::Profile { triple, .. } => (triple, "profile", u64::MAX),
        }
    }

    pub fn failure_line(&self) -> Option<String> {
        match self {
            Record::Check(r) if r.is_failure() => Some(format!(
                "{} {} r={} lhs={:e} rhs={:e} residual={:e} > {:e}",
                r.triple, r.identity, r.radius, r.lhs, r.rhs, r.residual, r.tolerance
            )),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        let line = match self {
            Record::Check(r) => serde_json::to_string(&CheckLine {
                kind: "check",
                triple: &r.triple,
                identity: r.identity,
                equation: r.equation,
                radius: r.radius,
                lhs: r.lhs,
                rhs: r.rhs,
                residual: r.residual,
                tolerance: r.tolerance,
                verdict: r.verdict.as_str(),
                asserted: r.asserted,
            }),
            Record::Vanishing {
                triple,
                order,
                slope,
                radii,
            } => serde_json::to_string(&VanishingLine {
                kind: "vanishing_order",
                triple,
                identity: "vanishing_order",
                order: *order,
                slope: *slope,
                numerically_infinite: order.is_none(),
                radii,
            }),
            Record::Profile { triple, file, rows } => serde_json::to_string(&ProfileLine {
                kind: "profile",
                triple,
                file,
                rows: *rows,
            }),
        };
        line.expect("plain records serialize")
    }
}

fn write_err<'a>(key: &'static str, path: &'a Path) -> impl Fn(std::io::Error) -> CliError + 'a {
    move |source| CliError::Write {
        key,
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_report(path: &Path, header: &Header, records: &[Record]) -> Result<(), CliError> {
    let err = write_err("output.report", path);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(&err)?;
    }
    let mut w = BufWriter::new(fs::File::create(path).map_err(&err)?);
    writeln!(
        w,
        "{}",
        serde_json::to_string(header).expect("header serializes")
    )
    .map_err(&err)?;
    for r in records {
        writeln!(w, "{}", r.to_json()).map_err(&err)?;
    }
    w.flush().map_err(&err)
}

/// File stem for a triple label: ASCII alphanumerics, `.` and `-` are kept,
/// runs of anything else become one `_`.
pub fn sanitize(label: &str) -> String {
    let mut out = String::new();
    for c in label.chars() {
        if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
            out.push(c);
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    let trimmed = out.trim_matches('_');
    if trimmed.is_empty() {
        String::from("triple")
    } else {
        trimmed.to_string()
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| String::from("NaN"), num)
}

/// CSV text of one profile; flagged or missing entries are written as `NaN`.
pub fn profile_csv(p: &FrequencyProfile) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (i, &r) in p.grid.radii().iter().enumerate() {
        let row = [
            num(r),
            num(p.phi_vals[i]),
            num(p.psi_vals[i]),
            opt(p.freq_vals[i]),
            num(p.phi_prime_formula_vals[i]),
            opt(p.phi_prime_fd_vals[i]),
            num(p.psi_prime_formula_vals[i]),
            opt(p.psi_prime_fd_vals[i]),
            num(p.volume_mass_vals[i]),
            num(p.boundary_flux_vals[i]),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes one CSV per profile; repeated labels get a `-2`, `-3`, ... suffix.
pub fn write_profiles(dir: &Path, profiles: &[FrequencyProfile]) -> Result<Vec<PathBuf>, CliError> {
    let err = write_err("output.csv_dir", dir);
    fs::create_dir_all(dir).map_err(&err)?;
    let mut used: Vec<String> = Vec::new();
    let mut paths = Vec::new();
    for p in profiles {
        let stem = sanitize(&p.label);
        let mut name = stem.clone();
        let mut k = 1;
        while used.contains(&name) {
            k += 1;
            name = format!("{stem}-{k}");
        }
        used.push(name.clone());
        let path = dir.join(format!("{name}.csv"));
        fs::write(&path, profile_csv(p)).map_err(write_err("output.csv_dir", &path))?;
        paths.push(path);
    }
    Ok(paths)
}

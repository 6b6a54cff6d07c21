//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use osc_core::numerics::QuadratureSpec;
use osc_core::operators::PhaseConvention;
use osc_core::GroupKind;
use serde::Serialize;

use crate::CliError;

/// Upper bound on every quantum-number range.
pub const CAP: u32 = 12;
const MAX_POINTS: u32 = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[value(name = "kimnoz")]
    KimNoz,
    Fkr,
}

impl Convention {
    pub fn phases(self) -> PhaseConvention {
        match self {
            Convention::KimNoz => PhaseConvention::KimNoz,
            Convention::Fkr => PhaseConvention::Fkr,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::KimNoz => "kimnoz",
            Convention::Fkr => "fkr",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub group: GroupKind,
    pub s: f64,
    pub nmax: u32,
    pub lmax: u32,
    pub mmax: u32,
    /// Restricts to one level `N - s` where a command works level by level.
    pub mode: Option<u32>,
    pub n: u32,
    pub l: u32,
    pub m: Option<i32>,
    pub j: u32,
    pub points: u32,
    pub rho_max: f64,
    pub convention: Option<Convention>,
    pub tol: f64,
    pub perturb: f64,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub quadrature: QuadratureSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            group: GroupKind::O2,
            s: 0.0,
            nmax: 2,
            lmax: 2,
            mmax: 2,
            mode: None,
            n: 0,
            l: 0,
            m: None,
            j: 1,
            points: 9,
            rho_max: 4.0,
            convention: None,
            tol: 1e-7,
            perturb: 0.0,
            format: Format::Json,
            out: None,
            quadrature: QuadratureSpec::default(),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value '{value}' for {key}")))
}

fn parse_enum<T: clap::ValueEnum>(key: &str, value: &str) -> Result<T, CliError> {
    T::from_str(value, true).map_err(|_| CliError::Config(format!("invalid value '{value}' for {key}")))
}

impl RunConfig {
    /// Sets one option by name; `-` and `_` are interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim().replace('-', "_");
        let v = value.trim();
        let q = &mut self.quadrature;
        match key.as_str() {
            "group" => self.group = v.parse().map_err(|e: osc_core::Error| CliError::Config(e.to_string()))?,
            "s" => self.s = parse(&key, v)?,
            "nmax" => self.nmax = parse(&key, v)?,
            "lmax" => self.lmax = parse(&key, v)?,
            "mmax" => self.mmax = parse(&key, v)?,
            "mode" => self.mode = Some(parse(&key, v)?),
            "n" => self.n = parse(&key, v)?,
            "l" => self.l = parse(&key, v)?,
            "m" => self.m = Some(parse(&key, v)?),
            "j" => self.j = parse(&key, v)?,
            "points" => self.points = parse(&key, v)?,
            "rho_max" => self.rho_max = parse(&key, v)?,
            "convention" => self.convention = Some(parse_enum(&key, v)?),
            "tol" => self.tol = parse(&key, v)?,
            "perturb" => self.perturb = parse(&key, v)?,
            "format" => self.format = parse_enum(&key, v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            "radial_nodes" => q.radial_nodes = parse(&key, v)?,
            "azimuthal_nodes" => q.azimuthal_nodes = parse(&key, v)?,
            "polar_nodes" => q.polar_nodes = parse(&key, v)?,
            "beta_cutoff" => q.beta_cutoff = parse(&key, v)?,
            "theta_exclusion" => q.theta_exclusion = parse(&key, v)?,
            "regulator" => q.regulator = Some(parse(&key, v)?),
            _ => return Err(CliError::Config(format!("unknown option '{key}'"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file. Blank lines and `#` comments are skipped.
    pub fn load(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("{}:{}: expected key = value", path.display(), i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        for (name, v) in [("nmax", self.nmax), ("lmax", self.lmax), ("mmax", self.mmax), ("n", self.n), ("l", self.l), ("j", self.j)] {
            if v > CAP {
                return bad(format!("{name} = {v} exceeds the cap {CAP}"));
            }
        }
        if let Some(n) = self.mode.filter(|&n| n > CAP) {
            return bad(format!("mode = {n} exceeds the cap {CAP}"));
        }
        if let Some(m) = self.m.filter(|m| m.unsigned_abs() > CAP) {
            return bad(format!("m = {m} exceeds the cap {CAP}"));
        }
        let s_ok = match self.group {
            GroupKind::O2 => (0.0..1.0).contains(&self.s),
            _ => self.s == 0.0 || self.s == 0.5,
        };
        if !s_ok {
            return bad(format!("s = {} is not an offset of {}", self.s, self.group));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if !self.perturb.is_finite() {
            return bad("perturb must be finite".into());
        }
        if self.points == 0 || self.points > MAX_POINTS {
            return bad(format!("points must lie in 1..={MAX_POINTS}"));
        }
        if !(self.rho_max > 0.0 && self.rho_max.is_finite()) {
            return bad(format!("rho_max must be positive, got {}", self.rho_max));
        }
        self.quadrature.validate().map_err(|e| CliError::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_override() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "# sweep\ngroup = o3\nnmax=3\n\nradial-nodes = 24 # lean\n").unwrap();
        let mut c = RunConfig::default();
        c.load(&path).unwrap();
        c.set("nmax", "1").unwrap();
        assert_eq!((c.group, c.nmax, c.quadrature.radial_nodes), (GroupKind::O3, 1, 24));
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let mut c = RunConfig::default();
        assert!(c.set("colour", "red").is_err());
        assert!(c.set("nmax", "-1").is_err());
        c.nmax = 13;
        assert!(c.validate().is_err());
        let c = RunConfig {
            group: GroupKind::O3,
            s: 0.25,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
    }
}

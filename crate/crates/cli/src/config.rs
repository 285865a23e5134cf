//! Run configuration, validated before any computation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use cartan_forge::forms::{ChartBox, Polynomial};
use cartan_forge::lie::Signature;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid configuration in {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Lie,
    Forms,
    Cartan,
    Lagrangian,
}

pub const ALL_SUITES: [Suite; 4] = [Suite::Lie, Suite::Forms, Suite::Cartan, Suite::Lagrangian];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinKind {
    #[default]
    Lorentz,
    Gl,
}

fn default_degree() -> u32 {
    2
}
fn default_frame_scale() -> f64 {
    0.4
}
fn default_spin_scale() -> f64 {
    0.8
}
fn default_axis() -> usize {
    1
}

/// How the frame e and spin connection ω of the run are produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSource {
    /// e = I, ω = 0.
    Flat {},
    /// Random polynomial e near I and ω of the requested kind; `frame_degree` 0 gives a constant frame.
    Random {
        seed: Option<u64>,
        #[serde(default = "default_degree")]
        degree: u32,
        frame_degree: Option<u32>,
        #[serde(default)]
        spin: SpinKind,
        #[serde(default = "default_frame_scale")]
        frame_scale: f64,
        #[serde(default = "default_spin_scale")]
        spin_scale: f64,
    },
    /// A constant boost frame of the given rapidity along `axis`, ω = 0.
    Boost {
        rapidity: f64,
        #[serde(default = "default_axis")]
        axis: usize,
    },
    /// Explicit polynomial entries: e is [μ][i] (m² entries), ω is [i][j][σ] (m³ entries).
    Polynomial { frame: Vec<Polynomial>, spin: Vec<Polynomial> },
}

impl Default for FieldSource {
    fn default() -> Self {
        FieldSource::Flat {}
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeKind {
    #[default]
    Identity,
    /// x ↦ (a(x), ξ(x)) with a Lorentz, built by a Cayley transform.
    Lorentz,
    /// x ↦ (I + δa(x), ξ(x)) with generic δa.
    Affine,
}

fn default_gauge_scale() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeConfig {
    #[serde(default)]
    pub kind: GaugeKind,
    pub seed: Option<u64>,
    #[serde(default = "default_degree")]
    pub degree: u32,
    #[serde(default = "default_gauge_scale")]
    pub scale: f64,
    /// Multiply the generator by a bump so that g is the identity on the boundary.
    #[serde(default)]
    pub cutoff: bool,
}

impl Default for GaugeConfig {
    fn default() -> Self {
        GaugeConfig { kind: GaugeKind::Identity, seed: None, degree: 2, scale: 0.5, cutoff: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtlasFixture {
    #[default]
    TwoChart,
    CorruptedTwoChart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algebra {
    /// Generic 𝔞(3)-valued forms.
    #[default]
    Affine,
    /// Forms valued in the Lorentz algebra plus translations.
    Lorentz,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransgressionConfig {
    #[serde(default)]
    pub algebra: Algebra,
    #[serde(default = "default_forms")]
    pub forms: usize,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_degree")]
    pub degree: u32,
}

fn default_forms() -> usize {
    5
}
fn default_points() -> usize {
    10
}

impl Default for TransgressionConfig {
    fn default() -> Self {
        TransgressionConfig { algebra: Algebra::Affine, forms: 5, points: 10, degree: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "t_identity")]
    pub identity: f64,
    #[serde(default = "t_form")]
    pub form: f64,
    #[serde(default = "t_form")]
    pub action: f64,
    #[serde(default = "t_variation")]
    pub variation_relative: f64,
    #[serde(default = "t_form")]
    pub constraint: f64,
}

fn t_identity() -> f64 {
    1e-10
}
fn t_form() -> f64 {
    1e-8
}
fn t_variation() -> f64 {
    1e-6
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { identity: 1e-10, form: 1e-8, action: 1e-8, variation_relative: 1e-6, constraint: 1e-8 }
    }
}

impl Tolerances {
    pub fn scaled(&self, f: f64) -> Tolerances {
        Tolerances {
            identity: self.identity * f,
            form: self.form * f,
            action: self.action * f,
            variation_relative: self.variation_relative * f,
            constraint: self.constraint * f,
        }
    }
}

fn default_resolution() -> usize {
    6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub signature: Signature,
    pub chart: Option<ChartBox>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub fields: FieldSource,
    /// Omitted means every suite; an empty list is rejected.
    pub suites: Option<Vec<Suite>>,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Gauss–Legendre nodes per axis.
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    #[serde(default)]
    pub gauge: GaugeConfig,
    #[serde(default)]
    pub atlas: AtlasFixture,
    #[serde(default)]
    pub transgression: TransgressionConfig,
    /// Serialized Cartan data read by `extend` and `reduce` instead of generating it.
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    /// Number of sample points whose Lagrangian densities are tabulated in the report.
    #[serde(default)]
    pub integrand_samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config is valid")
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).map_err(|source| ConfigError::Parse { path: path.into(), source })?;
        if let (Some(input), Some(dir)) = (&cfg.input, path.parent()) {
            if input.is_relative() {
                cfg.input = Some(dir.join(input));
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let m = self.signature.dim();
        if m != 3 {
            return Err(ConfigError::Invalid(format!("signature must have m = 3, found m = {m}")));
        }
        if let Some(c) = &self.chart {
            if c.dim() != m {
                return Err(ConfigError::Invalid(format!("chart has dimension {} but m = {m}", c.dim())));
            }
            c.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        if matches!(&self.suites, Some(s) if s.is_empty()) {
            return Err(ConfigError::Invalid("suite selection is empty".into()));
        }
        if !(1..=12).contains(&self.resolution) {
            return Err(ConfigError::Invalid(format!("resolution {} outside 1..=12", self.resolution)));
        }
        let tol = &self.tolerances;
        for (name, v) in [
            ("identity", tol.identity),
            ("form", tol.form),
            ("action", tol.action),
            ("variation_relative", tol.variation_relative),
            ("constraint", tol.constraint),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::Invalid(format!("tolerance `{name}` must be positive, found {v}")));
            }
        }
        match &self.fields {
            FieldSource::Boost { rapidity, axis } => {
                if !rapidity.is_finite() || *axis == 0 || *axis >= m {
                    return Err(ConfigError::Invalid(format!(
                        "boost needs a finite rapidity and a spatial axis in 1..{m}"
                    )));
                }
            }
            FieldSource::Polynomial { frame, spin } => {
                if frame.len() != m * m || spin.len() != m * m * m {
                    return Err(ConfigError::Invalid(format!(
                        "polynomial fields need {} frame and {} spin entries, found {} and {}",
                        m * m,
                        m * m * m,
                        frame.len(),
                        spin.len()
                    )));
                }
            }
            FieldSource::Random { degree, frame_degree, frame_scale, spin_scale, .. } => {
                if *degree > 6 || frame_degree.is_some_and(|d| d > 6) {
                    return Err(ConfigError::Invalid("polynomial degree above 6".into()));
                }
                if !(frame_scale.is_finite() && spin_scale.is_finite() && *frame_scale >= 0.0 && *spin_scale >= 0.0) {
                    return Err(ConfigError::Invalid("field scales must be finite and non-negative".into()));
                }
            }
            FieldSource::Flat {} => {}
        }
        let t = &self.transgression;
        if t.forms == 0 || t.points == 0 {
            return Err(ConfigError::Invalid("transgression check needs at least one form and one point".into()));
        }
        Ok(())
    }

    pub fn chart(&self) -> ChartBox {
        self.chart.clone().unwrap_or_else(|| ChartBox::unit(self.signature.dim()))
    }

    pub fn suites(&self) -> Vec<Suite> {
        let mut s = self.suites.clone().unwrap_or_else(|| ALL_SUITES.to_vec());
        s.sort();
        s.dedup();
        s
    }

    /// The command-line seed wins over the configured one.
    pub fn seed(&self, cli: Option<u64>) -> u64 {
        cli.or(self.seed).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_defaults() {
        let c = RunConfig::default();
        c.validate().unwrap();
        assert_eq!(c.fields, FieldSource::Flat {});
        assert_eq!(c.suites(), ALL_SUITES.to_vec());
        assert_eq!(c.seed(None), 0);
        assert_eq!(c.seed(Some(4)), 4);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"sweets": 1}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"fields": {"generator": "flat", "x": 1}}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"fields": {"generator": "spiral"}}"#).is_err());
    }

    #[test]
    fn generators_parse() {
        let c: RunConfig =
            serde_json::from_str(r#"{"fields": {"generator": "random", "seed": 3, "degree": 1, "spin": "gl"}}"#).unwrap();
        assert!(matches!(c.fields, FieldSource::Random { seed: Some(3), degree: 1, spin: SpinKind::Gl, .. }));
        let c: RunConfig = serde_json::from_str(r#"{"fields": {"generator": "boost", "rapidity": 0.3}}"#).unwrap();
        c.validate().unwrap();
    }

    #[test]
    fn validation_failures() {
        let bad = [
            r#"{"suites": []}"#,
            r#"{"signature": {"m": 2, "eta": [-1, 1]}}"#,
            r#"{"tolerances": {"identity": -1}}"#,
            r#"{"fields": {"generator": "boost", "rapidity": 0.1, "axis": 0}}"#,
            r#"{"resolution": 0}"#,
        ];
        for b in bad {
            let parsed = serde_json::from_str::<RunConfig>(b);
            assert!(parsed.map(|c| c.validate().is_err()).unwrap_or(true), "{b}");
        }
    }
}

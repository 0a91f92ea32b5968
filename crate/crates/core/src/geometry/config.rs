//! TOML domain files.
//!
//! ```toml
//! confmod_config = 1
//! interval_outer = [-1.0, 2.0]
//! interval_inner = [0.0, 1.0]
//!
//! [outer.upper]
//! kind = "samples"
//! points = [[-1.0, 1.0], [-0.9, 2.0], [1.9, 2.0], [2.0, 1.0]]
//!
//! [outer.lower]
//! kind = "builtin"
//! name = "polynomial"
//! params = { coeffs = [1.0] }
//! ```
//!
//! Builtins are sampled over the declared interval of their component.
//! Optional `[grid]`, `[cg]` and `[truncation]` tables carry solver settings.

use serde::Deserialize;

use super::{validate_domain, BoundaryFunction, ChannelDomain, DomainCandidate, Profile, DEFAULT_RESOLUTION};

pub const SCHEMA_VERSION: i64 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    pub confmod_config: i64,
    pub outer: ComponentSpec,
    pub inner: ComponentSpec,
    pub interval_outer: Option<[f64; 2]>,
    pub interval_inner: Option<[f64; 2]>,
    pub grid: Option<GridTable>,
    pub cg: Option<CgTable>,
    pub truncation: Option<TruncationTable>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub upper: FunctionSpec,
    pub lower: FunctionSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Samples {
        points: Vec<[f64; 2]>,
    },
    Builtin {
        name: String,
        #[serde(default)]
        params: toml::Table,
        resolution: Option<usize>,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridTable {
    pub h0: Option<f64>,
    pub levels: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CgTable {
    pub tol: Option<f64>,
    pub max_iters: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationTable {
    pub box_factor: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unsupported confmod_config = {0} (expected {SCHEMA_VERSION})")]
    Version(i64),
    #[error("{0}")]
    Invalid(String),
}

impl DomainFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let file: DomainFile = toml::from_str(text)?;
        if file.confmod_config != SCHEMA_VERSION {
            return Err(ConfigError::Version(file.confmod_config));
        }
        Ok(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    /// Build the boundary functions and run the class checks.
    pub fn domain(&self) -> Result<ChannelDomain, ConfigError> {
        let build = |spec: &FunctionSpec, iv: Option<[f64; 2]>, what: &str| {
            build_function(spec, iv).map_err(|e| ConfigError::Invalid(format!("{what}: {e}")))
        };
        let cand = DomainCandidate {
            outer_upper: build(&self.outer.upper, self.interval_outer, "outer.upper")?,
            outer_lower: build(&self.outer.lower, self.interval_outer, "outer.lower")?,
            inner_upper: build(&self.inner.upper, self.interval_inner, "inner.upper")?,
            inner_lower: build(&self.inner.lower, self.interval_inner, "inner.lower")?,
            interval_outer: self.interval_outer,
            interval_inner: self.interval_inner,
        };
        validate_domain(cand)
            .map_err(|errs| ConfigError::Invalid(errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")))
    }
}

fn build_function(spec: &FunctionSpec, interval: Option<[f64; 2]>) -> Result<BoundaryFunction, String> {
    match spec {
        FunctionSpec::Samples { points } => BoundaryFunction::from_samples(points.clone()).map_err(|e| e.to_string()),
        FunctionSpec::Builtin { name, params, resolution } => {
            let [lo, hi] = interval.ok_or("builtin functions need the component interval")?;
            let mut table = params.clone();
            table.insert("name".into(), toml::Value::String(name.clone()));
            let profile: Profile = toml::Value::Table(table).try_into().map_err(|e: toml::de::Error| e.to_string())?;
            BoundaryFunction::builtin(profile, lo, hi, resolution.unwrap_or(DEFAULT_RESOLUTION))
                .map_err(|e| e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAME: &str = r#"
confmod_config = 1
interval_outer = [-1.0, 2.0]
interval_inner = [0.0, 1.0]

[outer.upper]
kind = "samples"
points = [[-1.0, 1.0], [-0.9, 2.0], [1.9, 2.0], [2.0, 1.0]]

[outer.lower]
kind = "builtin"
name = "polynomial"
params = { coeffs = [1.0] }

[inner.upper]
kind = "builtin"
name = "polynomial"
params = { coeffs = [0.0] }

[inner.lower]
kind = "builtin"
name = "semicircle_arc"
params = { center = [0.5, 0.0], radius = 0.5, upper = false }
"#;

    #[test]
    fn parses_and_validates() {
        let dom = DomainFile::parse(FRAME).unwrap().domain().unwrap();
        assert_eq!((dom.a(), dom.b(), dom.c(), dom.d()), (-1.0, 2.0, 0.0, 1.0));
    }

    #[test]
    fn unknown_keys_are_errors() {
        let text = FRAME.replace("interval_inner", "colour = 3\ninterval_inner");
        assert!(matches!(DomainFile::parse(&text), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn schema_version_is_checked() {
        let text = FRAME.replace("confmod_config = 1", "confmod_config = 2");
        assert!(matches!(DomainFile::parse(&text), Err(ConfigError::Version(2))));
    }

    #[test]
    fn class_violations_surface_as_invalid() {
        let text = FRAME.replace("coeffs = [0.0]", "coeffs = [1.0]");
        let err = DomainFile::parse(&text).unwrap().domain().unwrap_err();
        assert!(err.to_string().contains("ordering"), "{err}");
    }
}

//! Run configuration: TOML parsing, presets, key overrides, and validation.
//!
//! A config document may name a preset; explicit fields override whatever the
//! preset provides. The resolved [`RunConfig`] is fully validated before a
//! run starts.

use std::path::PathBuf;

use serde::Deserialize;
use thiserror::Error;

use crate::reaction::ReactionModel;
use crate::stencil::{Scheme, SchemeSpec};

pub const DEFAULT_CFL: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("unknown preset `{0}` (see `list-presets`)")]
    UnknownPreset(String),
    #[error("missing required field `{0}`")]
    Missing(&'static str),
    #[error("invalid `{path}`: {message}")]
    Invalid { path: String, message: String },
    #[error("bad override `{0}`: expected key.path=value")]
    BadOverride(String),
}

fn invalid(path: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Partially specified configuration as written in a TOML document or a
/// preset. Unknown keys are rejected with the offending key in the message.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub preset: Option<String>,
    pub model: Option<RawModel>,
    pub domain: Option<RawDomain>,
    pub n_cells: Option<usize>,
    pub scheme: Option<RawScheme>,
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
    pub snapshots: Option<Vec<f64>>,
    pub out_dir: Option<String>,
    pub track_front: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModel {
    pub kind: Option<String>,
    pub d: Option<f64>,
    pub rho: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDomain {
    pub a: Option<f64>,
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScheme {
    pub kind: Option<String>,
    pub epsilon: Option<f64>,
}

impl RawConfig {
    /// Overlay `self` on top of `base`: explicit fields win, preset fields
    /// fill the gaps (per leaf for the nested tables).
    fn over(self, base: RawConfig) -> RawConfig {
        RawConfig {
            preset: self.preset.or(base.preset),
            model: merge_opt(self.model, base.model, |user, b| RawModel {
                kind: user.kind.or(b.kind),
                d: user.d.or(b.d),
                rho: user.rho.or(b.rho),
                alpha: user.alpha.or(b.alpha),
                beta: user.beta.or(b.beta),
            }),
            domain: merge_opt(self.domain, base.domain, |user, b| RawDomain {
                a: user.a.or(b.a),
                b: user.b.or(b.b),
            }),
            n_cells: self.n_cells.or(base.n_cells),
            scheme: merge_opt(self.scheme, base.scheme, |user, b| RawScheme {
                kind: user.kind.or(b.kind),
                epsilon: user.epsilon.or(b.epsilon),
            }),
            cfl: self.cfl.or(base.cfl),
            t_final: self.t_final.or(base.t_final),
            snapshots: self.snapshots.or(base.snapshots),
            out_dir: self.out_dir.or(base.out_dir),
            track_front: self.track_front.or(base.track_front),
        }
    }
}

fn merge_opt<T>(user: Option<T>, base: Option<T>, merge: impl Fn(T, T) -> T) -> Option<T> {
    match (user, base) {
        (Some(u), Some(b)) => Some(merge(u, b)),
        (u, b) => u.or(b),
    }
}

/// Fully resolved and validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub model: ReactionModel,
    pub a: f64,
    pub b: f64,
    pub n_cells: usize,
    pub scheme: SchemeSpec,
    pub cfl: f64,
    pub t_final: f64,
    pub snapshots: Vec<f64>,
    pub out_dir: Option<PathBuf>,
    pub track_front: bool,
}

/// Parse a TOML document into a resolved config.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with_overrides(text, &[])
}

/// Parse a TOML document, apply `key.path=value` overrides, resolve the
/// preset, and validate.
pub fn parse_config_with_overrides(
    text: &str,
    overrides: &[String],
) -> Result<RunConfig, ConfigError> {
    let mut raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    for entry in overrides {
        apply_override(&mut raw, entry)?;
    }
    resolve(raw)
}

/// Resolve a raw config against its preset and validate every field.
pub fn resolve(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    let merged = match &raw.preset {
        Some(name) => {
            let base = crate::presets::find(name)
                .ok_or_else(|| ConfigError::UnknownPreset(name.clone()))?;
            raw.over(base)
        }
        None => raw,
    };

    let model_raw = merged.model.ok_or(ConfigError::Missing("model"))?;
    let kind = model_raw.kind.ok_or(ConfigError::Missing("model.kind"))?;
    let d = model_raw.d.unwrap_or(1.0);
    let rho = model_raw.rho.ok_or(ConfigError::Missing("model.rho"))?;
    let model = match kind.as_str() {
        "fisher" => ReactionModel::fisher(d, rho),
        "zeldovich" => ReactionModel::zeldovich(d, rho),
        "nws" => {
            let alpha = model_raw.alpha.ok_or(ConfigError::Missing("model.alpha"))?;
            ReactionModel::nws(d, rho, alpha)
        }
        "bistable" => {
            let beta = model_raw.beta.ok_or(ConfigError::Missing("model.beta"))?;
            ReactionModel::bistable(d, rho, beta)
        }
        "lotka-volterra" => ReactionModel::lotka_volterra(d, rho),
        other => {
            return Err(invalid(
                "model.kind",
                format!("unknown model `{other}` (fisher, zeldovich, nws, bistable, lotka-volterra)"),
            ))
        }
    }
    .map_err(|message| invalid("model", message))?;

    let domain = merged.domain.ok_or(ConfigError::Missing("domain"))?;
    let a = domain.a.ok_or(ConfigError::Missing("domain.a"))?;
    let b = domain.b.ok_or(ConfigError::Missing("domain.b"))?;
    let n_cells = merged.n_cells.ok_or(ConfigError::Missing("n_cells"))?;
    crate::grid::Grid::new(a, b, n_cells)
        .map_err(|e| invalid("domain/n_cells", e.to_string()))?;

    let scheme_raw = merged.scheme.unwrap_or_default();
    let scheme_kind = match &scheme_raw.kind {
        None => Scheme::Cweno,
        Some(name) => Scheme::parse(name).ok_or_else(|| {
            invalid(
                "scheme.kind",
                format!("unknown scheme `{name}` (fd6, weno-lsz, mweno, cweno)"),
            )
        })?,
    };
    let scheme = match scheme_raw.epsilon {
        None => SchemeSpec::new(scheme_kind),
        Some(eps) => SchemeSpec::with_epsilon(scheme_kind, eps),
    };
    if !scheme.is_valid() {
        return Err(invalid("scheme.epsilon", "must be positive"));
    }

    let cfl = merged.cfl.unwrap_or(DEFAULT_CFL);
    if !(cfl > 0.0) {
        return Err(invalid("cfl", "must be positive"));
    }
    let t_final = merged.t_final.ok_or(ConfigError::Missing("t_final"))?;
    if !(t_final >= 0.0) {
        return Err(invalid("t_final", "must be non-negative"));
    }
    let snapshots = merged.snapshots.unwrap_or_default();
    for &t in &snapshots {
        if !(0.0..=t_final).contains(&t) {
            return Err(invalid(
                "snapshots",
                format!("snapshot time {t} outside [0, {t_final}]"),
            ));
        }
    }

    Ok(RunConfig {
        preset: merged.preset,
        model,
        a,
        b,
        n_cells,
        scheme,
        cfl,
        t_final,
        snapshots,
        out_dir: merged.out_dir.map(PathBuf::from),
        track_front: merged.track_front.unwrap_or(true),
    })
}

fn apply_override(raw: &mut RawConfig, entry: &str) -> Result<(), ConfigError> {
    let (key, value) = entry
        .split_once('=')
        .ok_or_else(|| ConfigError::BadOverride(entry.to_string()))?;
    let key = key.trim();
    let value = value.trim();
    let bad = || ConfigError::BadOverride(entry.to_string());

    fn num(value: &str, entry: &str) -> Result<f64, ConfigError> {
        value
            .parse::<f64>()
            .map_err(|_| ConfigError::BadOverride(entry.to_string()))
    }

    match key {
        "preset" => raw.preset = Some(value.to_string()),
        "n_cells" => raw.n_cells = Some(value.parse().map_err(|_| bad())?),
        "cfl" => raw.cfl = Some(num(value, entry)?),
        "t_final" => raw.t_final = Some(num(value, entry)?),
        "out_dir" => raw.out_dir = Some(value.to_string()),
        "track_front" => raw.track_front = Some(value.parse().map_err(|_| bad())?),
        "model.kind" => raw.model.get_or_insert_with(Default::default).kind = Some(value.into()),
        "model.d" => raw.model.get_or_insert_with(Default::default).d = Some(num(value, entry)?),
        "model.rho" => {
            raw.model.get_or_insert_with(Default::default).rho = Some(num(value, entry)?)
        }
        "model.alpha" => {
            raw.model.get_or_insert_with(Default::default).alpha = Some(num(value, entry)?)
        }
        "model.beta" => {
            raw.model.get_or_insert_with(Default::default).beta = Some(num(value, entry)?)
        }
        "domain.a" => raw.domain.get_or_insert_with(Default::default).a = Some(num(value, entry)?),
        "domain.b" => raw.domain.get_or_insert_with(Default::default).b = Some(num(value, entry)?),
        "scheme.kind" => {
            raw.scheme.get_or_insert_with(Default::default).kind = Some(value.into())
        }
        "scheme.epsilon" => {
            raw.scheme.get_or_insert_with(Default::default).epsilon = Some(num(value, entry)?)
        }
        _ => return Err(bad()),
    }
    Ok(())
}

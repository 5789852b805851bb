use std::path::{Path, PathBuf};

use mobius_walk::walk::{InitialState, WalkParams};
use serde::{Deserialize, Serialize};

use crate::args::{CommonArgs, Format, Method};
use crate::error::{CliError, Result};

/// `--config` file contents. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub nodes: Option<usize>,
    pub alpha: Option<f64>,
    pub init: Option<InitSpec>,
    pub steps: Option<u64>,
    pub epsilon: Option<f64>,
    pub method: Option<Method>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
}

/// `"s,r,j"` or `[s, r, j]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum InitSpec {
    Text(String),
    Triple([usize; 3]),
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
            path: path.to_owned(),
            reason: e.to_string(),
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config {
            path: path.to_owned(),
            reason: e.to_string(),
        })
    }
}

/// Fully resolved run settings: flags over config file over defaults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub nodes: usize,
    pub alpha: f64,
    pub init: [usize; 3],
    pub steps: Option<u64>,
    pub epsilon: f64,
    pub method: Method,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
    #[serde(skip)]
    pub threads: Option<usize>,
    pub seed: u64,
}

pub const DEFAULT_NODES: usize = 24;
pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_SEED: u64 = 2024;

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let init = match (&args.init, &file.init) {
            (Some(text), _) => parse_init(text)?,
            (None, Some(InitSpec::Text(text))) => parse_init(text)?,
            (None, Some(InitSpec::Triple(t))) => *t,
            (None, None) => [0, 0, 0],
        };
        let cfg = RunConfig {
            nodes: args.nodes.or(file.nodes).unwrap_or(DEFAULT_NODES),
            alpha: args.alpha.or(file.alpha).unwrap_or(0.0),
            init,
            steps: args.steps.or(file.steps),
            epsilon: args.epsilon.or(file.epsilon).unwrap_or(DEFAULT_EPSILON),
            method: args.method.or(file.method).unwrap_or(Method::General),
            out: args.out.clone().or(file.out),
            format: args.format.or(file.format).unwrap_or(Format::Csv),
            threads: args.threads.or(file.threads),
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.nodes < 2 {
            return Err(CliError::invalid("nodes", format!("need at least 2 nodes, got {}", self.nodes)));
        }
        if !self.alpha.is_finite() {
            return Err(CliError::invalid("alpha", "must be finite"));
        }
        let [s, r, j] = self.init;
        if s > 1 || r > 1 || j >= self.nodes {
            return Err(CliError::invalid(
                "init",
                format!("|{s},{r},{j}⟩ is not a basis state for {} nodes", self.nodes),
            ));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(CliError::invalid("epsilon", "must be positive and finite"));
        }
        if self.threads == Some(0) {
            return Err(CliError::invalid("threads", "must be at least 1"));
        }
        Ok(())
    }

    pub fn steps_or(&self, default: u64) -> u64 {
        self.steps.unwrap_or(default)
    }

    pub fn initial_state(&self) -> InitialState {
        let [s, r, j] = self.init;
        InitialState::Localized { s, r, j }
    }

    pub fn params(&self) -> Result<WalkParams> {
        Ok(WalkParams::hadamard(self.nodes, self.alpha)?.with_initial(self.initial_state())?)
    }
}

pub fn parse_init(text: &str) -> Result<[usize; 3]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::invalid("init", format!("expected s,r,j, got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut out = [0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

//! Run configuration: case presets, flat key-value overrides, and the
//! resolved-config echo that makes every run reproducible.
//!
//! Resolution order: case preset (from `--case` or the file's `case` key),
//! then every key in the config file, then command-line flags. The fully
//! resolved config is echoed next to the results as `resolved_config.toml`;
//! feeding that file back through `--config` reproduces the run bit for bit.

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::airframe::AircraftParams;
use crate::arena::{CaseId, CaseSpec, Tactic};
use crate::engagement::{EngagementParams, GameParams};
use crate::smcts::{PlayoutPolicy, SearchConfig, SelectionPolicy};

/// Fully resolved run configuration.
///
/// Angles are degrees here and in the config file; the engine works in
/// radians. Both aircraft share `dt`, `n_s`, and `g`; when a seat runs the
/// tree search, both seats share the same search settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConfig {
    /// Case label: I, II, III, or IV. Selects the preset the other keys
    /// override.
    pub case: String,
    pub seed: u64,
    /// Number of Monte Carlo trials; must be even (trials run in mirrored
    /// pairs).
    pub trials: u32,
    /// Worker threads: 0 = all cores, 1 = sequential.
    pub parallel: u32,
    pub plot: bool,
    /// Output directory.
    pub out: String,
    /// Tactic of each seat: `mg` or `smcts`.
    pub tactic1: String,
    pub tactic2: String,
    pub v1: f64,
    pub zeta_dot1_deg: f64,
    pub zeta_max1_deg: f64,
    pub v2: f64,
    pub zeta_dot2_deg: f64,
    pub zeta_max2_deg: f64,
    /// Inner integration step, seconds.
    pub dt: f64,
    /// Inner integration steps per 1-second maneuver.
    pub n_s: u32,
    pub g: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub d_nom: f64,
    pub r_d: f64,
    pub bearing_max_deg: f64,
    pub aspect_max_deg: f64,
    /// Terminal-reward weight in the shaped reward.
    pub w: f64,
    /// Playout discount factor.
    pub gamma: f64,
    /// Game horizon, decision steps.
    pub t_game: u32,
    /// Playout horizon, decision steps.
    pub t_sim: u32,
    /// Half side length of the square initial positions are drawn from.
    pub init_half_extent: f64,
    /// Tree-size budget, nodes including the root.
    pub m_tree: u32,
    /// Selection policy: `ucb1` or `thompson`.
    pub selection: String,
    pub c_ucb1: f64,
    pub thompson_c1: f64,
    pub thompson_c2: f64,
    /// Playout policy: `random`, `greedy`, `epsilon-greedy`, or
    /// `matrix-game`.
    pub playout: String,
    pub epsilon: f64,
    /// Selection/playout passes run after the tree-size budget is reached.
    pub extra_iterations: u32,
    pub shuffle_expansion: bool,
}

/// Command-line flag overrides, applied after the config file.
#[derive(Debug, Clone, Default)]
pub struct FlagOverrides {
    pub seed: Option<u64>,
    pub trials: Option<u32>,
    pub out: Option<String>,
    pub parallel: Option<u32>,
    pub plot: Option<bool>,
    pub extra_iterations: Option<u32>,
}

impl ResolvedConfig {
    /// Baseline configuration of one of the four studied matchups.
    pub fn preset(id: CaseId) -> Self {
        let (tactic1, zeta_dot1_deg, zeta_dot2_deg) = match id {
            CaseId::I => ("mg", 45.0, 45.0),
            CaseId::II => ("smcts", 45.0, 45.0),
            CaseId::III => ("smcts", 45.0, 22.5),
            CaseId::IV => ("smcts", 22.5, 45.0),
        };
        Self {
            case: id.to_string(),
            seed: 42,
            trials: 100,
            parallel: 0,
            plot: true,
            out: "out".to_string(),
            tactic1: tactic1.to_string(),
            tactic2: "mg".to_string(),
            v1: 2.5,
            zeta_dot1_deg,
            zeta_max1_deg: 23.0,
            v2: 2.5,
            zeta_dot2_deg,
            zeta_max2_deg: 23.0,
            dt: 0.05,
            n_s: 20,
            g: 9.81,
            d_min: 0.1,
            d_max: 3.0,
            d_nom: 2.0,
            r_d: 18.0,
            bearing_max_deg: 30.0,
            aspect_max_deg: 60.0,
            w: 0.5,
            gamma: 0.8,
            t_game: 70,
            t_sim: 10,
            init_half_extent: 6.0,
            m_tree: 9,
            selection: "ucb1".to_string(),
            c_ucb1: 0.2,
            thompson_c1: 1.0,
            thompson_c2: 1.0,
            playout: "matrix-game".to_string(),
            epsilon: 0.1,
            extra_iterations: 40,
            shuffle_expansion: false,
        }
    }

    /// Overlay every key of a parsed config file onto this config. The
    /// `case` key is consumed by [`resolve`] before the preset is built, so
    /// it is skipped here.
    fn apply_table(&mut self, table: &toml::Table) -> Result<(), CliError> {
        for (key, value) in table {
            match key.as_str() {
                "case" => {}
                "seed" => self.seed = uint(value, key)?,
                "trials" => self.trials = uint32(value, key)?,
                "parallel" => self.parallel = uint32(value, key)?,
                "plot" => self.plot = boolean(value, key)?,
                "out" => self.out = string(value, key)?,
                "tactic1" => self.tactic1 = string(value, key)?,
                "tactic2" => self.tactic2 = string(value, key)?,
                "v1" => self.v1 = float(value, key)?,
                "zeta_dot1_deg" => self.zeta_dot1_deg = float(value, key)?,
                "zeta_max1_deg" => self.zeta_max1_deg = float(value, key)?,
                "v2" => self.v2 = float(value, key)?,
                "zeta_dot2_deg" => self.zeta_dot2_deg = float(value, key)?,
                "zeta_max2_deg" => self.zeta_max2_deg = float(value, key)?,
                "dt" => self.dt = float(value, key)?,
                "n_s" => self.n_s = uint32(value, key)?,
                "g" => self.g = float(value, key)?,
                "d_min" => self.d_min = float(value, key)?,
                "d_max" => self.d_max = float(value, key)?,
                "d_nom" => self.d_nom = float(value, key)?,
                "r_d" => self.r_d = float(value, key)?,
                "bearing_max_deg" => self.bearing_max_deg = float(value, key)?,
                "aspect_max_deg" => self.aspect_max_deg = float(value, key)?,
                "w" => self.w = float(value, key)?,
                "gamma" => self.gamma = float(value, key)?,
                "t_game" => self.t_game = uint32(value, key)?,
                "t_sim" => self.t_sim = uint32(value, key)?,
                "init_half_extent" => self.init_half_extent = float(value, key)?,
                "m_tree" => self.m_tree = uint32(value, key)?,
                "selection" => self.selection = string(value, key)?,
                "c_ucb1" => self.c_ucb1 = float(value, key)?,
                "thompson_c1" => self.thompson_c1 = float(value, key)?,
                "thompson_c2" => self.thompson_c2 = float(value, key)?,
                "playout" => self.playout = string(value, key)?,
                "epsilon" => self.epsilon = float(value, key)?,
                "extra_iterations" => self.extra_iterations = uint32(value, key)?,
                "shuffle_expansion" => self.shuffle_expansion = boolean(value, key)?,
                other => {
                    return Err(CliError::MalformedConfig(format!("unknown key `{other}`")));
                }
            }
        }
        Ok(())
    }

    /// Search settings shared by any seat whose tactic is `smcts`.
    pub fn search_config(&self) -> Result<SearchConfig, CliError> {
        let selection = match self.selection.as_str() {
            "ucb1" => SelectionPolicy::Ucb1 { c: self.c_ucb1 },
            "thompson" => SelectionPolicy::Thompson {
                c1: self.thompson_c1,
                c2: self.thompson_c2,
            },
            other => {
                return Err(CliError::MalformedConfig(format!(
                    "unknown selection `{other}` (expected `ucb1` or `thompson`)"
                )));
            }
        };
        let playout = match self.playout.as_str() {
            "random" => PlayoutPolicy::Random,
            "greedy" => PlayoutPolicy::Greedy,
            "epsilon-greedy" => PlayoutPolicy::EpsilonGreedy { epsilon: self.epsilon },
            "matrix-game" => PlayoutPolicy::MatrixGame,
            other => {
                return Err(CliError::MalformedConfig(format!(
                    "unknown playout `{other}` (expected `random`, `greedy`, \
                     `epsilon-greedy`, or `matrix-game`)"
                )));
            }
        };
        let cfg = SearchConfig {
            m_tree: self.m_tree as usize,
            t_sim: self.t_sim,
            selection,
            playout,
            extra_iterations: self.extra_iterations,
            shuffle_expansion: self.shuffle_expansion,
        };
        cfg.validate().map_err(|e| CliError::MalformedConfig(e.to_string()))?;
        Ok(cfg)
    }

    /// Build the fully validated matchup this config describes.
    pub fn to_case_spec(&self) -> Result<CaseSpec, CliError> {
        let id: CaseId = self
            .case
            .parse()
            .map_err(|_| CliError::UnknownCase(self.case.clone()))?;
        let p1 = AircraftParams::new(
            self.v1,
            self.zeta_dot1_deg.to_radians(),
            self.zeta_max1_deg.to_radians(),
            self.dt,
            self.n_s,
            self.g,
        )
        .map_err(|e| CliError::MalformedConfig(format!("aircraft 1: {e}")))?;
        let p2 = AircraftParams::new(
            self.v2,
            self.zeta_dot2_deg.to_radians(),
            self.zeta_max2_deg.to_radians(),
            self.dt,
            self.n_s,
            self.g,
        )
        .map_err(|e| CliError::MalformedConfig(format!("aircraft 2: {e}")))?;
        let eng = EngagementParams::new(
            self.d_min,
            self.d_max,
            self.d_nom,
            self.r_d,
            self.bearing_max_deg.to_radians(),
            self.aspect_max_deg.to_radians(),
            self.w,
            self.gamma,
        )
        .map_err(|e| CliError::MalformedConfig(format!("engagement: {e}")))?;
        let search = self.search_config()?;
        Ok(CaseSpec {
            id,
            tactic1: parse_tactic(&self.tactic1, search)?,
            tactic2: parse_tactic(&self.tactic2, search)?,
            gp: GameParams { p1, p2, eng },
            t_game: self.t_game,
            init_half_extent: self.init_half_extent,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("resolved config serializes to TOML")
    }
}

fn parse_tactic(name: &str, search: SearchConfig) -> Result<Tactic, CliError> {
    match name {
        "mg" => Ok(Tactic::Mg),
        "smcts" => Ok(Tactic::Smcts(search)),
        other => Err(CliError::MalformedConfig(format!(
            "unknown tactic `{other}` (expected `mg` or `smcts`)"
        ))),
    }
}

fn float(value: &toml::Value, key: &str) -> Result<f64, CliError> {
    match value {
        toml::Value::Float(x) => Ok(*x),
        toml::Value::Integer(i) => Ok(*i as f64),
        _ => Err(CliError::MalformedConfig(format!("key `{key}` expects a number"))),
    }
}

fn uint(value: &toml::Value, key: &str) -> Result<u64, CliError> {
    match value {
        toml::Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        _ => Err(CliError::MalformedConfig(format!(
            "key `{key}` expects a nonnegative integer"
        ))),
    }
}

fn uint32(value: &toml::Value, key: &str) -> Result<u32, CliError> {
    u32::try_from(uint(value, key)?)
        .map_err(|_| CliError::MalformedConfig(format!("key `{key}` is out of range")))
}

fn boolean(value: &toml::Value, key: &str) -> Result<bool, CliError> {
    match value {
        toml::Value::Boolean(b) => Ok(*b),
        _ => Err(CliError::MalformedConfig(format!("key `{key}` expects true or false"))),
    }
}

fn string(value: &toml::Value, key: &str) -> Result<String, CliError> {
    match value {
        toml::Value::String(s) => Ok(s.clone()),
        _ => Err(CliError::MalformedConfig(format!("key `{key}` expects a string"))),
    }
}

/// Resolve a run configuration from an optional case flag, optional config
/// file text, and flag overrides.
pub fn resolve(
    case_flag: Option<&str>,
    config_text: Option<&str>,
    flags: &FlagOverrides,
) -> Result<ResolvedConfig, CliError> {
    let table: toml::Table = match config_text {
        Some(text) => toml::from_str(text)
            .map_err(|e| CliError::MalformedConfig(format!("TOML parse error: {e}")))?,
        None => toml::Table::new(),
    };
    let case_str = match case_flag {
        Some(c) => c.to_string(),
        None => match table.get("case") {
            Some(v) => string(v, "case")?,
            None => "I".to_string(),
        },
    };
    let id: CaseId = case_str
        .parse()
        .map_err(|_| CliError::UnknownCase(case_str.clone()))?;
    let mut cfg = ResolvedConfig::preset(id);
    cfg.apply_table(&table)?;
    if let Some(seed) = flags.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = flags.trials {
        cfg.trials = trials;
    }
    if let Some(out) = &flags.out {
        cfg.out = out.clone();
    }
    if let Some(parallel) = flags.parallel {
        cfg.parallel = parallel;
    }
    if let Some(plot) = flags.plot {
        cfg.plot = plot;
    }
    if let Some(extra) = flags.extra_iterations {
        cfg.extra_iterations = extra;
    }
    if cfg.trials == 0 || cfg.trials % 2 != 0 {
        return Err(CliError::MalformedConfig(format!(
            "trials must be a positive even number, got {}",
            cfg.trials
        )));
    }
    Ok(cfg)
}

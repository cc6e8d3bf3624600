//! Full-game simulation between two configured tactics and the Monte Carlo
//! evaluation protocol with symmetrized initial conditions.
//!
//! A game advances in 1-s decision steps: both tactics pick a maneuver from
//! the same pre-move state (neither sees the other's choice), the joint
//! transition applies, and the terminal check runs once per step. Monte Carlo
//! studies draw random initial states, play each together with its
//! aircraft-swapped twin, and tally win/draw counts. Every trial owns two rng
//! streams (one per player) derived from the master seed, which makes results
//! independent of tactic query order and of whether trials run in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::airframe::{AircraftParams, AircraftState, Maneuver};
use crate::engagement::{
    check_terminal, transition, EngagementParams, GameParams, GameState, JointManeuver, Outcome,
    Player,
};
use crate::matrix_game::mg_tactic;
use crate::smcts::{search, PlayoutPolicy, SearchConfig, SearchError, SelectionPolicy};

/// A per-player maneuvering policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Tactic {
    /// One-step matrix game: sample the maximin mix of the immediate payoffs.
    Mg,
    /// Tree search; the playout policy in the config distinguishes the
    /// variants (MatrixGame playout is the strongest studied setup).
    Smcts(SearchConfig),
}

impl Tactic {
    pub fn validate(&self) -> Result<(), SearchError> {
        match self {
            Tactic::Mg => Ok(()),
            Tactic::Smcts(cfg) => cfg.validate(),
        }
    }

    /// Select a maneuver from `state` for `player`.
    pub fn choose<R: Rng + ?Sized>(
        &self,
        state: &GameState,
        player: Player,
        gp: &GameParams,
        rng: &mut R,
    ) -> Result<Maneuver, SearchError> {
        match self {
            Tactic::Mg => Ok(mg_tactic(state, player, gp, rng)),
            Tactic::Smcts(cfg) => search(state, player, cfg, gp, rng),
        }
    }
}

/// One complete game: initial state, every joint move, every state visited.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u32,
    /// Joint maneuver applied at each decision step.
    pub moves: Vec<JointManeuver>,
    /// `states[0]` is the initial state; `states[i]` follows `moves[i-1]`.
    pub states: Vec<GameState>,
    pub outcome: Outcome,
    /// Decision steps played; equals `moves.len()`.
    pub steps: u32,
    /// Wall-clock seconds per decision step (maneuver duration).
    pub step_seconds: f64,
}

impl TrialRecord {
    pub fn initial(&self) -> &GameState {
        &self.states[0]
    }

    /// Timestamp of `states[i]`.
    pub fn time_of(&self, i: usize) -> f64 {
        i as f64 * self.step_seconds
    }
}

/// Aggregate outcome counts and probabilities of a Monte Carlo study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCSummary {
    pub m_s: u32,
    pub m_w1: u32,
    pub m_w2: u32,
    pub m_d: u32,
    pub p_w1: f64,
    pub p_w2: f64,
    pub p_d: f64,
}

impl MCSummary {
    pub fn from_outcomes<I: IntoIterator<Item = Outcome>>(outcomes: I) -> Self {
        let (mut m_w1, mut m_w2, mut m_d, mut m_s) = (0u32, 0u32, 0u32, 0u32);
        for outcome in outcomes {
            m_s += 1;
            match outcome {
                Outcome::Win1 => m_w1 += 1,
                Outcome::Win2 => m_w2 += 1,
                Outcome::Draw => m_d += 1,
                Outcome::Ongoing => unreachable!("trials always finish"),
            }
        }
        let denom = m_s.max(1) as f64;
        Self {
            m_s,
            m_w1,
            m_w2,
            m_d,
            p_w1: m_w1 as f64 / denom,
            p_w2: m_w2 as f64 / denom,
            p_d: m_d as f64 / denom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseId {
    I,
    II,
    III,
    IV,
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IV => "IV",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for CaseId {
    type Err = ArenaError;

    fn from_str(s: &str) -> Result<Self, ArenaError> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(CaseId::I),
            "II" | "2" => Ok(CaseId::II),
            "III" | "3" => Ok(CaseId::III),
            "IV" | "4" => Ok(CaseId::IV),
            _ => Err(ArenaError::UnknownCase(s.to_string())),
        }
    }
}

/// A fully specified matchup: tactics, aircraft, engagement geometry,
/// horizon, and the initial-state sampling extent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub id: CaseId,
    pub tactic1: Tactic,
    pub tactic2: Tactic,
    pub gp: GameParams,
    /// Game horizon in decision steps.
    pub t_game: u32,
    /// Half side length of the square initial positions are drawn from.
    pub init_half_extent: f64,
}

/// Baseline aircraft: 2.5 m/s, 45 deg/s bank ramp, 23 deg bank limit,
/// twenty 50 ms integration steps per 1 s maneuver.
pub fn baseline_aircraft() -> AircraftParams {
    AircraftParams::new(2.5, 45f64.to_radians(), 23f64.to_radians(), 0.05, 20, 9.81)
        .expect("baseline aircraft parameters are valid")
}

/// Baseline engagement geometry and reward shaping.
pub fn baseline_engagement() -> EngagementParams {
    EngagementParams::new(
        0.1,
        3.0,
        2.0,
        18.0,
        30f64.to_radians(),
        60f64.to_radians(),
        0.5,
        0.8,
    )
    .expect("baseline engagement parameters are valid")
}

/// The studied tree-search setup: 9-node budget, matrix-game playouts over a
/// 10-step horizon, with refinement passes so the tiny tree's statistics
/// actually separate the moves.
pub fn baseline_smcts() -> SearchConfig {
    SearchConfig {
        m_tree: 9,
        t_sim: 10,
        selection: SelectionPolicy::Ucb1 { c: 0.2 },
        playout: PlayoutPolicy::MatrixGame,
        extra_iterations: 40,
        shuffle_expansion: false,
    }
}

impl CaseSpec {
    /// Built-in matchups. A halved bank ramp (22.5 deg/s) makes an aircraft
    /// roughly half as agile in transients; cases III and IV hand that
    /// handicap to one side.
    pub fn preset(id: CaseId) -> Self {
        let baseline = baseline_aircraft();
        let sluggish =
            AircraftParams::new(2.5, 22.5f64.to_radians(), 23f64.to_radians(), 0.05, 20, 9.81)
                .expect("sluggish aircraft parameters are valid");
        let eng = baseline_engagement();
        let (tactic1, tactic2, p1, p2) = match id {
            CaseId::I => (Tactic::Mg, Tactic::Mg, baseline, baseline),
            CaseId::II => (Tactic::Smcts(baseline_smcts()), Tactic::Mg, baseline, baseline),
            CaseId::III => (Tactic::Smcts(baseline_smcts()), Tactic::Mg, baseline, sluggish),
            CaseId::IV => (Tactic::Smcts(baseline_smcts()), Tactic::Mg, sluggish, baseline),
        };
        Self {
            id,
            tactic1,
            tactic2,
            gp: GameParams { p1, p2, eng },
            t_game: 70,
            init_half_extent: 6.0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ArenaError {
    #[error("game started from a terminal state")]
    TerminalStart,
    #[error("trial count must be even (trials come in symmetrized pairs), got {0}")]
    OddTrialCount(u32),
    #[error("could not sample a non-terminal initial state in 1000 attempts")]
    SamplingExhausted,
    #[error("unknown case '{0}' (expected I, II, III or IV)")]
    UnknownCase(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Play one game from `x0`. Both tactics are queried from the same pre-move
/// state with their own rng, so neither choice can depend on the other.
pub fn play_game<R1: Rng + ?Sized, R2: Rng + ?Sized>(
    trial: u32,
    x0: &GameState,
    tactic1: &Tactic,
    tactic2: &Tactic,
    horizon: u32,
    gp: &GameParams,
    rng1: &mut R1,
    rng2: &mut R2,
) -> Result<TrialRecord, ArenaError> {
    tactic1.validate()?;
    tactic2.validate()?;
    if check_terminal(x0, &gp.eng).is_terminal() {
        return Err(ArenaError::TerminalStart);
    }
    let mut state = *x0;
    let mut states = vec![state];
    let mut moves = Vec::new();
    let mut outcome = Outcome::Ongoing;
    for _ in 0..horizon {
        let m1 = tactic1.choose(&state, Player::One, gp, rng1)?;
        let m2 = tactic2.choose(&state, Player::Two, gp, rng2)?;
        let joint = JointManeuver { m1, m2 };
        state = transition(&state, joint, &gp.p1, &gp.p2);
        moves.push(joint);
        states.push(state);
        outcome = check_terminal(&state, &gp.eng);
        if outcome.is_terminal() {
            break;
        }
    }
    // horizon exhausted without reaching a win region
    if outcome == Outcome::Ongoing {
        outcome = Outcome::Draw;
    }
    let steps = moves.len() as u32;
    Ok(TrialRecord {
        trial,
        moves,
        states,
        outcome,
        steps,
        step_seconds: gp.p1.maneuver_duration(),
    })
}

/// Draw a random non-terminal initial state: positions uniform in the
/// centered square of half side `half_extent`, headings uniform, wings
/// level, separation beyond the capture band.
pub fn sample_initial_state<R: Rng + ?Sized>(
    rng: &mut R,
    gp: &GameParams,
    half_extent: f64,
) -> Result<GameState, ArenaError> {
    for _ in 0..1000 {
        let ac1 = AircraftState::new(
            rng.random_range(-half_extent..half_extent),
            rng.random_range(-half_extent..half_extent),
            gp.p1.v,
            rng.random_range(0.0..std::f64::consts::TAU),
            0.0,
        );
        let ac2 = AircraftState::new(
            rng.random_range(-half_extent..half_extent),
            rng.random_range(-half_extent..half_extent),
            gp.p2.v,
            rng.random_range(0.0..std::f64::consts::TAU),
            0.0,
        );
        let state = GameState::new(ac1, ac2);
        let separation = ((ac2.x - ac1.x).powi(2) + (ac2.y - ac1.y).powi(2)).sqrt();
        if separation > gp.eng.d_max && check_terminal(&state, &gp.eng) == Outcome::Ongoing {
            return Ok(state);
        }
    }
    Err(ArenaError::SamplingExhausted)
}

/// The aircraft-swapped twin of an initial condition.
pub fn symmetrize(x0: &GameState) -> GameState {
    GameState { ac1: x0.ac2, ac2: x0.ac1, k: 0 }
}

fn player_rng(master_seed: u64, trial: u32, player: Player) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    // stream 0 is reserved for initial-state sampling
    rng.set_stream(1 + 2 * trial as u64 + player.index() as u64);
    rng
}

/// Run a full Monte Carlo study: `m_s / 2` random initial conditions, each
/// played both ways (trial `2i` as drawn, trial `2i+1` with the aircraft
/// swapped). Parallel execution reproduces the sequential results exactly
/// because every trial derives its own rng streams from the master seed.
pub fn run_mc_study(
    case: &CaseSpec,
    m_s: u32,
    master_seed: u64,
    parallel: bool,
) -> Result<(MCSummary, Vec<TrialRecord>), ArenaError> {
    if m_s % 2 != 0 {
        return Err(ArenaError::OddTrialCount(m_s));
    }
    case.tactic1.validate()?;
    case.tactic2.validate()?;

    let mut init_rng = ChaCha12Rng::seed_from_u64(master_seed);
    init_rng.set_stream(0);
    let base_states: Vec<GameState> = (0..m_s / 2)
        .map(|_| sample_initial_state(&mut init_rng, &case.gp, case.init_half_extent))
        .collect::<Result<_, _>>()?;

    let run_trial = |trial: u32| -> Result<TrialRecord, ArenaError> {
        let base = &base_states[(trial / 2) as usize];
        let x0 = if trial % 2 == 0 { *base } else { symmetrize(base) };
        let mut rng1 = player_rng(master_seed, trial, Player::One);
        let mut rng2 = player_rng(master_seed, trial, Player::Two);
        play_game(
            trial,
            &x0,
            &case.tactic1,
            &case.tactic2,
            case.t_game,
            &case.gp,
            &mut rng1,
            &mut rng2,
        )
    };

    let records: Vec<TrialRecord> = if parallel {
        (0..m_s).into_par_iter().map(run_trial).collect::<Result<_, _>>()?
    } else {
        (0..m_s).map(run_trial).collect::<Result<_, _>>()?
    };

    let summary = MCSummary::from_outcomes(records.iter().map(|r| r.outcome));
    Ok((summary, records))
}

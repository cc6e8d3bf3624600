//! The zero-sum game over joint aircraft states: relative geometry, terminal
//! sets, terminal and shaped rewards, and the joint transition function.
//!
//! A player wins by reaching its terminal set: positioned behind the opponent
//! within a distance band, pointing at it (small bearing) while the opponent
//! flies away (small aspect). With the default angular limits the two win
//! regions are disjoint, which follows from the identity
//! `bearing_1 + aspect_2 = pi`: if player 1 satisfies `bearing_1 <
//! bearing_max`, then `aspect_2 = pi - bearing_1 > pi - bearing_max >
//! aspect_max` whenever `bearing_max + aspect_max < pi`, so player 2's aspect
//! condition fails at the same state (and symmetrically).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::airframe::{step_maneuver, AircraftParams, AircraftState, Maneuver};

/// Positions closer than this are treated as degenerate geometry.
pub const DEGENERATE_DISTANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

/// Joint state of both aircraft plus the decision-step counter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameState {
    pub ac1: AircraftState,
    pub ac2: AircraftState,
    /// Decision-step index since the start of the game.
    pub k: u32,
}

impl GameState {
    pub fn new(ac1: AircraftState, ac2: AircraftState) -> Self {
        Self { ac1, ac2, k: 0 }
    }

    pub fn aircraft(&self, player: Player) -> &AircraftState {
        match player {
            Player::One => &self.ac1,
            Player::Two => &self.ac2,
        }
    }
}

/// A pair of simultaneous maneuvers, one per player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JointManeuver {
    pub m1: Maneuver,
    pub m2: Maneuver,
}

impl JointManeuver {
    /// All nine joint maneuvers in player-1-major order:
    /// (L,L), (L,S), (L,R), (S,L), ... This is the canonical expansion and
    /// payoff enumeration order.
    pub fn all() -> [JointManeuver; 9] {
        let mut out = [JointManeuver { m1: Maneuver::Left, m2: Maneuver::Left }; 9];
        for (i, m1) in Maneuver::ALL.iter().enumerate() {
            for (j, m2) in Maneuver::ALL.iter().enumerate() {
                out[i * 3 + j] = JointManeuver { m1: *m1, m2: *m2 };
            }
        }
        out
    }

    pub fn index(self) -> usize {
        self.m1.index() * 3 + self.m2.index()
    }

    pub fn of(self, player: Player) -> Maneuver {
        match player {
            Player::One => self.m1,
            Player::Two => self.m2,
        }
    }
}

/// Relative configuration of one player with respect to the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeGeometry {
    /// Angle between own velocity and the line of sight to the opponent,
    /// radians in [0, pi]. Zero means pointing straight at the opponent.
    pub bearing: f64,
    /// Angle between the line of sight and the opponent's velocity, radians
    /// in [0, pi]. Zero means the opponent flies directly away.
    pub aspect: f64,
    /// Separation, meters.
    pub distance: f64,
}

/// Terminal-set and reward-shaping parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngagementParams {
    pub d_min: f64,
    pub d_max: f64,
    /// Preferred separation for the shaping term, meters.
    pub d_nom: f64,
    /// Shaping distance scale, meters.
    pub r_d: f64,
    /// Bearing limit of the win cone, radians.
    pub bearing_max: f64,
    /// Aspect limit of the win cone, radians.
    pub aspect_max: f64,
    /// Weight of the terminal reward inside the shaped reward, in (0, 1).
    pub w: f64,
    /// Playout discount factor, in (0, 1].
    pub gamma: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum EngagementError {
    #[error("invalid engagement parameter: {0}")]
    InvalidParam(&'static str),
    #[error("degenerate geometry: aircraft positions coincide")]
    DegenerateGeometry,
}

impl EngagementParams {
    pub fn new(
        d_min: f64,
        d_max: f64,
        d_nom: f64,
        r_d: f64,
        bearing_max: f64,
        aspect_max: f64,
        w: f64,
        gamma: f64,
    ) -> Result<Self, EngagementError> {
        if !(d_min > 0.0 && d_min < d_max) {
            return Err(EngagementError::InvalidParam("require 0 < d_min < d_max"));
        }
        if !(r_d > 0.0) {
            return Err(EngagementError::InvalidParam("require r_d > 0"));
        }
        if !(d_nom > 0.0) {
            return Err(EngagementError::InvalidParam("require d_nom > 0"));
        }
        let pi = std::f64::consts::PI;
        if !(bearing_max > 0.0 && bearing_max < pi) || !(aspect_max > 0.0 && aspect_max < pi) {
            return Err(EngagementError::InvalidParam(
                "require bearing_max, aspect_max in (0, pi)",
            ));
        }
        if !(w > 0.0 && w < 1.0) {
            return Err(EngagementError::InvalidParam("require 0 < w < 1"));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(EngagementError::InvalidParam("require 0 < gamma <= 1"));
        }
        if bearing_max + aspect_max >= pi {
            // Both win cones can then hold at once; check_terminal resolves
            // that corner to Draw.
            log::warn!(
                "bearing_max + aspect_max >= pi: win regions overlap; \
                 simultaneous capture resolves to Draw"
            );
        }
        Ok(Self { d_min, d_max, d_nom, r_d, bearing_max, aspect_max, w, gamma })
    }
}

/// Final or running status of the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Win1,
    Win2,
    Draw,
    Ongoing,
}

impl Outcome {
    pub fn is_terminal(self) -> bool {
        !matches!(self, Outcome::Ongoing)
    }
}

/// Everything needed to evaluate and advance a game: per-aircraft dynamics
/// parameters plus the engagement's reward geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub p1: AircraftParams,
    pub p2: AircraftParams,
    pub eng: EngagementParams,
}

impl GameParams {
    pub fn aircraft(&self, player: Player) -> &AircraftParams {
        match player {
            Player::One => &self.p1,
            Player::Two => &self.p2,
        }
    }
}

fn clamped_acos(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

/// Bearing, aspect and distance of `player` relative to the opponent.
///
/// Errors on coincident positions; the reward functions below absorb that
/// corner instead, so search hot loops never see it.
pub fn relative_geometry(
    state: &GameState,
    player: Player,
) -> Result<RelativeGeometry, EngagementError> {
    let own = state.aircraft(player);
    let other = state.aircraft(player.opponent());
    let los = (other.x - own.x, other.y - own.y);
    let distance = (los.0 * los.0 + los.1 * los.1).sqrt();
    if distance < DEGENERATE_DISTANCE {
        return Err(EngagementError::DegenerateGeometry);
    }
    let (vx_own, vy_own) = own.velocity();
    let (vx_other, vy_other) = other.velocity();
    // speeds are positive by invariant, so the norms never vanish
    let bearing = clamped_acos((los.0 * vx_own + los.1 * vy_own) / (distance * own.v));
    let aspect = clamped_acos((los.0 * vx_other + los.1 * vy_other) / (distance * other.v));
    Ok(RelativeGeometry { bearing, aspect, distance })
}

fn win_condition(geom: &RelativeGeometry, eng: &EngagementParams) -> bool {
    geom.distance > eng.d_min
        && geom.distance < eng.d_max
        && geom.bearing < eng.bearing_max
        && geom.aspect < eng.aspect_max
}

/// Strict terminal check: errors on degenerate geometry.
pub fn check_terminal_strict(
    state: &GameState,
    eng: &EngagementParams,
) -> Result<Outcome, EngagementError> {
    let g1 = relative_geometry(state, Player::One)?;
    let g2 = relative_geometry(state, Player::Two)?;
    let win1 = win_condition(&g1, eng);
    let win2 = win_condition(&g2, eng);
    Ok(match (win1, win2) {
        (true, false) => Outcome::Win1,
        (false, true) => Outcome::Win2,
        // unreachable when bearing_max + aspect_max < pi
        (true, true) => Outcome::Draw,
        (false, false) => Outcome::Ongoing,
    })
}

/// Terminal check used in hot loops: coincident positions count as Ongoing.
pub fn check_terminal(state: &GameState, eng: &EngagementParams) -> Outcome {
    match check_terminal_strict(state, eng) {
        Ok(outcome) => outcome,
        Err(_) => Outcome::Ongoing,
    }
}

/// Zero-sum terminal reward pair for an outcome.
pub fn terminal_reward(outcome: Outcome) -> (f64, f64) {
    match outcome {
        Outcome::Win1 => (1.0, -1.0),
        Outcome::Win2 => (-1.0, 1.0),
        Outcome::Draw | Outcome::Ongoing => (0.0, 0.0),
    }
}

fn shaping_from_geometry(geom: &RelativeGeometry, eng: &EngagementParams) -> f64 {
    let pi = std::f64::consts::PI;
    // the bracket simplifies to aspect/pi + bearing/pi - 1; kept in the
    // long form so the terms mirror their definitions
    let bracket = 1.0 - (1.0 - geom.aspect / pi) - (1.0 - geom.bearing / pi);
    let falloff = (-(geom.distance - eng.d_nom).abs() / eng.r_d).exp();
    0.5 - 0.5 * bracket * falloff
}

/// Strict dense shaping term in [0, 1]; 1 at ideal pursuit geometry
/// (zero bearing, zero aspect, nominal distance), 0 at the mirror image.
pub fn shaping_term_strict(
    state: &GameState,
    player: Player,
    eng: &EngagementParams,
) -> Result<f64, EngagementError> {
    let geom = relative_geometry(state, player)?;
    Ok(shaping_from_geometry(&geom, eng))
}

/// Shaping term used in hot loops: coincident positions score a neutral 0.5.
pub fn shaping_term(state: &GameState, player: Player, eng: &EngagementParams) -> f64 {
    shaping_term_strict(state, player, eng).unwrap_or(0.5)
}

/// Shaped reward `w * terminal + (1 - w) * shaping`, in [-w, 1]. The
/// terminal component is evaluated at this same state.
pub fn shaped_reward(state: &GameState, player: Player, eng: &EngagementParams) -> f64 {
    let outcome = check_terminal(state, eng);
    let (r1, r2) = terminal_reward(outcome);
    let terminal = match player {
        Player::One => r1,
        Player::Two => r2,
    };
    eng.w * terminal + (1.0 - eng.w) * shaping_term(state, player, eng)
}

/// Outcome and both players' shaped rewards from a single geometry
/// evaluation per seat. Equivalent to calling [`check_terminal`] plus
/// [`shaped_reward`] for each player, at a third of the geometry work,
/// which matters in playout and payoff-matrix hot loops.
pub fn evaluate_state(state: &GameState, eng: &EngagementParams) -> (Outcome, f64, f64) {
    let (outcome, s1, s2) = match (
        relative_geometry(state, Player::One),
        relative_geometry(state, Player::Two),
    ) {
        (Ok(g1), Ok(g2)) => {
            let outcome = match (win_condition(&g1, eng), win_condition(&g2, eng)) {
                (true, false) => Outcome::Win1,
                (false, true) => Outcome::Win2,
                (true, true) => Outcome::Draw,
                (false, false) => Outcome::Ongoing,
            };
            (outcome, shaping_from_geometry(&g1, eng), shaping_from_geometry(&g2, eng))
        }
        // coincident positions: ongoing with neutral shaping, the hot-loop rule
        _ => (Outcome::Ongoing, 0.5, 0.5),
    };
    let (r1, r2) = terminal_reward(outcome);
    (
        outcome,
        eng.w * r1 + (1.0 - eng.w) * s1,
        eng.w * r2 + (1.0 - eng.w) * s2,
    )
}

/// Strict variant of [`shaped_reward`].
pub fn shaped_reward_strict(
    state: &GameState,
    player: Player,
    eng: &EngagementParams,
) -> Result<f64, EngagementError> {
    let outcome = check_terminal_strict(state, eng)?;
    let (r1, r2) = terminal_reward(outcome);
    let terminal = match player {
        Player::One => r1,
        Player::Two => r2,
    };
    Ok(eng.w * terminal + (1.0 - eng.w) * shaping_term_strict(state, player, eng)?)
}

/// Apply both maneuvers simultaneously: each aircraft advances under its own
/// parameters from the same pre-move state; the step counter increments.
pub fn transition(
    state: &GameState,
    joint: JointManeuver,
    p1: &AircraftParams,
    p2: &AircraftParams,
) -> GameState {
    GameState {
        ac1: step_maneuver(&state.ac1, joint.m1, p1),
        ac2: step_maneuver(&state.ac2, joint.m2, p2),
        k: state.k + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    pub(crate) fn table1_engagement() -> EngagementParams {
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
        .unwrap()
    }

    fn table1_aircraft() -> AircraftParams {
        AircraftParams::new(2.5, 45f64.to_radians(), 23f64.to_radians(), 0.05, 20, 9.81).unwrap()
    }

    fn state_at(x1: f64, y1: f64, th1: f64, x2: f64, y2: f64, th2: f64) -> GameState {
        GameState::new(
            AircraftState::new(x1, y1, 2.5, th1, 0.0),
            AircraftState::new(x2, y2, 2.5, th2, 0.0),
        )
    }

    #[test]
    fn geometry_head_on() {
        let s = state_at(0.0, 0.0, 0.0, 2.0, 0.0, PI);
        let g = relative_geometry(&s, Player::One).unwrap();
        assert_abs_diff_eq!(g.bearing, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.aspect, PI, epsilon = 1e-12);
        assert_abs_diff_eq!(g.distance, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn geometry_tail_chase() {
        let s = state_at(0.0, 0.0, 0.0, 2.0, 0.0, 0.0);
        let g = relative_geometry(&s, Player::One).unwrap();
        assert_abs_diff_eq!(g.bearing, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.aspect, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.distance, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn geometry_perpendicular() {
        let s = state_at(0.0, 0.0, FRAC_PI_2, 3.0, 0.0, FRAC_PI_2);
        let g = relative_geometry(&s, Player::One).unwrap();
        assert_abs_diff_eq!(g.bearing, FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(g.aspect, FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(g.distance, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn fused_evaluation_equals_per_seat_calls() {
        use rand::{Rng, SeedableRng};
        let eng = table1_engagement();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(33);
        for _ in 0..2000 {
            let s = state_at(
                rng.random_range(-6.0..6.0),
                rng.random_range(-6.0..6.0),
                rng.random_range(0.0..std::f64::consts::TAU),
                rng.random_range(-6.0..6.0),
                rng.random_range(-6.0..6.0),
                rng.random_range(0.0..std::f64::consts::TAU),
            );
            let (outcome, u1, u2) = evaluate_state(&s, &eng);
            assert_eq!(outcome, check_terminal(&s, &eng));
            // bit-identical, not merely close: the fused path must be a pure
            // refactoring of the per-seat calls
            assert_eq!(u1, shaped_reward(&s, Player::One, &eng));
            assert_eq!(u2, shaped_reward(&s, Player::Two, &eng));
        }
        // coincident positions: ongoing with neutral shaping on both seats
        let degenerate = state_at(1.0, 1.0, 0.0, 1.0, 1.0, PI);
        let (outcome, u1, u2) = evaluate_state(&degenerate, &eng);
        assert_eq!(outcome, Outcome::Ongoing);
        assert_eq!(u1, shaped_reward(&degenerate, Player::One, &eng));
        assert_eq!(u2, shaped_reward(&degenerate, Player::Two, &eng));
    }

    #[test]
    fn geometry_degenerate_errors() {
        let s = state_at(1.0, 1.0, 0.0, 1.0, 1.0, PI);
        assert_eq!(
            relative_geometry(&s, Player::One),
            Err(EngagementError::DegenerateGeometry)
        );
        // tolerant paths absorb it
        assert_eq!(check_terminal(&s, &table1_engagement()), Outcome::Ongoing);
        assert_eq!(shaping_term(&s, Player::One, &table1_engagement()), 0.5);
    }

    #[test]
    fn terminal_win1_in_cone() {
        let eng = table1_engagement();
        // bearing 5 deg, aspect 10 deg, distance 1 m
        let s = state_at(0.0, 0.0, 5f64.to_radians(), 1.0, 0.0, 10f64.to_radians());
        assert_eq!(check_terminal(&s, &eng), Outcome::Win1);
    }

    #[test]
    fn terminal_outside_distance_band() {
        let eng = table1_engagement();
        let s = state_at(0.0, 0.0, 0.0, 5.0, 0.0, 0.0);
        assert_eq!(check_terminal(&s, &eng), Outcome::Ongoing);
    }

    #[test]
    fn terminal_rewards_are_zero_sum() {
        assert_eq!(terminal_reward(Outcome::Win1), (1.0, -1.0));
        assert_eq!(terminal_reward(Outcome::Win2), (-1.0, 1.0));
        assert_eq!(terminal_reward(Outcome::Ongoing), (0.0, 0.0));
        assert_eq!(terminal_reward(Outcome::Draw), (0.0, 0.0));
    }

    #[test]
    fn shaping_term_extremes() {
        let eng = table1_engagement();
        // ideal pursuit: bearing 0, aspect 0, d = d_nom
        let ideal = state_at(0.0, 0.0, 0.0, 2.0, 0.0, 0.0);
        assert_abs_diff_eq!(shaping_term(&ideal, Player::One, &eng), 1.0, epsilon = 1e-12);
        // worst case for player 1 is ideal pursuit by player 2
        assert_abs_diff_eq!(shaping_term(&ideal, Player::Two, &eng), 0.0, epsilon = 1e-12);
        // neutral perpendicular geometry
        let neutral = state_at(0.0, 0.0, FRAC_PI_2, 1.3, 0.0, FRAC_PI_2);
        assert_abs_diff_eq!(shaping_term(&neutral, Player::One, &eng), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn shaped_reward_examples() {
        let eng = table1_engagement();
        // Win1 with shaping 1.0: 0.5 * 1 + 0.5 * 1
        let win = state_at(0.0, 0.0, 0.0, 2.0, 0.0, 0.0);
        assert_eq!(check_terminal(&win, &eng), Outcome::Win1);
        assert_abs_diff_eq!(shaped_reward(&win, Player::One, &eng), 1.0, epsilon = 1e-12);
        // same state seen by the loser: 0.5 * (-1) + 0.5 * 0
        assert_abs_diff_eq!(shaped_reward(&win, Player::Two, &eng), -0.5, epsilon = 1e-12);
        // ongoing neutral state: 0.5 * 0 + 0.5 * 0.5
        let neutral = state_at(0.0, 0.0, FRAC_PI_2, 1.3, 0.0, FRAC_PI_2);
        assert_abs_diff_eq!(shaped_reward(&neutral, Player::One, &eng), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn transition_closes_head_on_distance() {
        let p = table1_aircraft();
        let s = state_at(0.0, 0.0, 0.0, 7.0, 0.0, PI);
        let joint = JointManeuver { m1: Maneuver::Straight, m2: Maneuver::Straight };
        let s1 = transition(&s, joint, &p, &p);
        let g = relative_geometry(&s1, Player::One).unwrap();
        assert_abs_diff_eq!(g.distance, 2.0, epsilon = 1e-12);
        assert_eq!(s1.k, 1);
        // input untouched
        assert_eq!(s.k, 0);
        assert_eq!(s.ac1.x, 0.0);
    }

    #[test]
    fn joint_maneuver_enumeration_order() {
        let all = JointManeuver::all();
        assert_eq!(all[0], JointManeuver { m1: Maneuver::Left, m2: Maneuver::Left });
        assert_eq!(all[1], JointManeuver { m1: Maneuver::Left, m2: Maneuver::Straight });
        assert_eq!(all[8], JointManeuver { m1: Maneuver::Right, m2: Maneuver::Right });
        for (i, jm) in all.iter().enumerate() {
            assert_eq!(jm.index(), i);
        }
    }
}

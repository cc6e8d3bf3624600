//! Two-aircraft tactical maneuvering: point-mass turn dynamics, a zero-sum
//! engagement game over joint maneuvers, matrix-game and Monte Carlo tree
//! search tactics, and a headless match runner with Monte Carlo studies.

pub mod airframe;
pub mod arena;
pub mod cli;
pub mod engagement;
pub mod matrix_game;
pub mod smcts;

pub use airframe::{step_maneuver, turn_rate, AircraftParams, AircraftState, Maneuver};
pub use engagement::{
    check_terminal, relative_geometry, shaped_reward, shaping_term, terminal_reward, transition,
    EngagementParams, GameParams, GameState, JointManeuver, Outcome, Player,
};

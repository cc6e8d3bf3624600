//! Discrete-time 2D aircraft kinematics under a finite set of basic maneuvers.
//!
//! An aircraft flies at constant speed; the only control is the bank angle,
//! which a maneuver ramps left or right at a fixed rate up to a saturation
//! limit. Heading follows the coordinated-turn relation `theta_dot = (g/v)
//! tan(zeta)`. One maneuver integrates `n_s` forward-Euler steps of `dt`
//! seconds each, so a maneuver lasts `n_s * dt` seconds of simulated time.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the three basic maneuvers available to an aircraft each decision step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Maneuver {
    Left,
    Straight,
    Right,
}

impl Maneuver {
    /// All maneuvers in canonical order. This order fixes action indices
    /// everywhere: payoff-matrix rows/columns, expansion order, tie-breaks.
    pub const ALL: [Maneuver; 3] = [Maneuver::Left, Maneuver::Straight, Maneuver::Right];

    pub fn index(self) -> usize {
        match self {
            Maneuver::Left => 0,
            Maneuver::Straight => 1,
            Maneuver::Right => 2,
        }
    }

    pub fn from_index(i: usize) -> Maneuver {
        Maneuver::ALL[i]
    }

    /// Single-letter form used in trajectory CSV files.
    pub fn letter(self) -> char {
        match self {
            Maneuver::Left => 'L',
            Maneuver::Straight => 'S',
            Maneuver::Right => 'R',
        }
    }

    pub fn from_letter(c: char) -> Option<Maneuver> {
        match c {
            'L' => Some(Maneuver::Left),
            'S' => Some(Maneuver::Straight),
            'R' => Some(Maneuver::Right),
            _ => None,
        }
    }

    /// The maneuver obtained by reflecting the plane about any axis
    /// (left turns become right turns).
    pub fn mirrored(self) -> Maneuver {
        match self {
            Maneuver::Left => Maneuver::Right,
            Maneuver::Straight => Maneuver::Straight,
            Maneuver::Right => Maneuver::Left,
        }
    }
}

/// Planar kinematic state of one aircraft.
///
/// `theta` is stored unwrapped: integration never normalizes it, so long
/// turning sequences accumulate heading monotonically. Anything that compares
/// angles must use a wrapped difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AircraftState {
    /// Position east, meters.
    pub x: f64,
    /// Position north, meters.
    pub y: f64,
    /// Speed, meters/second. Constant under the dynamics.
    pub v: f64,
    /// Heading angle, radians, unwrapped.
    pub theta: f64,
    /// Bank angle, radians.
    pub zeta: f64,
}

impl AircraftState {
    pub fn new(x: f64, y: f64, v: f64, theta: f64, zeta: f64) -> Self {
        Self { x, y, v, theta, zeta }
    }

    /// Velocity vector implied by speed and heading.
    pub fn velocity(&self) -> (f64, f64) {
        (self.v * self.theta.cos(), self.v * self.theta.sin())
    }
}

/// Fixed parameters dictating an aircraft's maneuverability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AircraftParams {
    /// Commanded speed, meters/second.
    pub v: f64,
    /// Bank rate, radians/second.
    pub zeta_dot: f64,
    /// Bank limit, radians. Must stay below pi/2 so tan is finite.
    pub zeta_max: f64,
    /// Inner integration step, seconds.
    pub dt: f64,
    /// Inner integration steps per maneuver.
    pub n_s: u32,
    /// Gravitational acceleration, meters/second^2.
    pub g: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("{0} must be strictly positive")]
    NonPositive(&'static str),
    #[error("zeta_max must be below pi/2, got {0}")]
    BankLimitTooLarge(f64),
    #[error("n_s must be at least 1")]
    ZeroInnerSteps,
}

impl AircraftParams {
    /// Validating constructor. Operations assume a validated parameter set
    /// and do not re-check in the integration loop.
    pub fn new(
        v: f64,
        zeta_dot: f64,
        zeta_max: f64,
        dt: f64,
        n_s: u32,
        g: f64,
    ) -> Result<Self, ParamsError> {
        for (name, value) in [
            ("v", v),
            ("zeta_dot", zeta_dot),
            ("zeta_max", zeta_max),
            ("dt", dt),
            ("g", g),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(ParamsError::NonPositive(name));
            }
        }
        if zeta_max >= std::f64::consts::FRAC_PI_2 {
            return Err(ParamsError::BankLimitTooLarge(zeta_max));
        }
        if n_s == 0 {
            return Err(ParamsError::ZeroInnerSteps);
        }
        Ok(Self { v, zeta_dot, zeta_max, dt, n_s, g })
    }

    /// Wall-clock duration of one maneuver, seconds.
    pub fn maneuver_duration(&self) -> f64 {
        f64::from(self.n_s) * self.dt
    }

    /// Initial state at a given pose with this aircraft's commanded speed
    /// and wings level.
    pub fn state_at(&self, x: f64, y: f64, theta: f64) -> AircraftState {
        AircraftState::new(x, y, self.v, theta, 0.0)
    }
}

/// Instantaneous heading rate `(g/v) tan(zeta)`, radians/second.
pub fn turn_rate(state: &AircraftState, params: &AircraftParams) -> f64 {
    params.g / state.v * state.zeta.tan()
}

/// Advance one aircraft through a full maneuver: `n_s` Euler steps, each
/// updating bank (ramped and clamped), then heading from the new bank, then
/// position from the new heading.
pub fn step_maneuver(
    state: &AircraftState,
    maneuver: Maneuver,
    params: &AircraftParams,
) -> AircraftState {
    let mut s = *state;
    // speed is constant through the maneuver, and the bank holds its value
    // once clamped (or always, when flying straight), so the heading-rate
    // factors are memoized; same inputs give the same tan, bit for bit
    let g_over_v = params.g / s.v;
    let mut tan_zeta = s.zeta.tan();
    let mut tan_at = s.zeta;
    for _ in 0..params.n_s {
        match maneuver {
            Maneuver::Left => {
                s.zeta = (s.zeta - params.zeta_dot * params.dt).max(-params.zeta_max);
            }
            Maneuver::Right => {
                s.zeta = (s.zeta + params.zeta_dot * params.dt).min(params.zeta_max);
            }
            Maneuver::Straight => {}
        }
        if s.zeta != tan_at {
            tan_zeta = s.zeta.tan();
            tan_at = s.zeta;
        }
        s.theta += g_over_v * tan_zeta * params.dt;
        s.x += s.v * s.theta.cos() * params.dt;
        s.y += s.v * s.theta.sin() * params.dt;
    }
    s
}

/// Wrap an angle difference into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = a % two_pi;
    if r <= -std::f64::consts::PI {
        r += two_pi;
    } else if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

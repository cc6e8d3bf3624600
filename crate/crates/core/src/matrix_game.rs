//! One-step matrix game over the nine joint maneuvers and its maximin
//! solution.
//!
//! Each decision step defines a 3x3 zero-sum game: entry (j, k) is the shaped
//! reward the acting player collects when it flies maneuver j and the
//! opponent flies k, both applied to the current state. The maximin mixed
//! strategy is found with a small dense simplex on the standard packing
//! transform: for a matrix P shifted elementwise positive, solve
//! `max 1'q  s.t.  P q <= 1, q >= 0`; the optimum z gives the shifted game
//! value 1/z, and the dual multipliers of the rows, normalized, are the
//! maximizer's mixed strategy. Bland's rule keeps the pivoting finite on
//! degenerate tableaus.

use rand::Rng;
use thiserror::Error;

use crate::airframe::{step_maneuver, Maneuver};
use crate::engagement::{evaluate_state, GameParams, GameState, JointManeuver, Player};

/// Payoff matrix for one player: rows are own maneuvers, columns the
/// opponent's, both in `Maneuver::ALL` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffMatrix(pub [[f64; 3]; 3]);

impl PayoffMatrix {
    pub fn get(&self, own: Maneuver, opp: Maneuver) -> f64 {
        self.0[own.index()][opp.index()]
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum StrategyError {
    #[error("mixed strategy has a non-finite probability")]
    NonFinite,
    #[error("mixed strategy probabilities must be nonnegative with positive sum")]
    NotADistribution,
}

/// Probability distribution over the three maneuvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedStrategy([f64; 3]);

impl MixedStrategy {
    /// Normalizes the weights into a distribution. Small negative roundoff
    /// is clamped to zero.
    pub fn new(weights: [f64; 3]) -> Result<Self, StrategyError> {
        if weights.iter().any(|p| !p.is_finite()) {
            return Err(StrategyError::NonFinite);
        }
        if weights.iter().any(|&p| p < -1e-9) {
            return Err(StrategyError::NotADistribution);
        }
        let clamped = weights.map(|p| p.max(0.0));
        let total: f64 = clamped.iter().sum();
        if total <= 0.0 {
            return Err(StrategyError::NotADistribution);
        }
        Ok(Self(clamped.map(|p| p / total)))
    }

    pub fn uniform() -> Self {
        Self([1.0 / 3.0; 3])
    }

    pub fn probs(&self) -> &[f64; 3] {
        &self.0
    }

    /// Draw a maneuver: one uniform variate, walk the CDF.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Maneuver {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for m in Maneuver::ALL {
            acc += self.0[m.index()];
            if u < acc {
                return m;
            }
        }
        // roundoff left u >= sum; the last maneuver takes the remainder
        Maneuver::Right
    }
}

/// All nine joint successors, indexed `[j][k]` by player 1's maneuver j and
/// player 2's maneuver k. Each aircraft's three single-moves are integrated
/// once and shared across the grid, since the motions are independent.
fn joint_successors(state: &GameState, gp: &GameParams) -> [[GameState; 3]; 3] {
    let a1 = Maneuver::ALL.map(|m| step_maneuver(&state.ac1, m, &gp.p1));
    let a2 = Maneuver::ALL.map(|m| step_maneuver(&state.ac2, m, &gp.p2));
    let mut grid = [[*state; 3]; 3];
    for (j, row) in grid.iter_mut().enumerate() {
        for (k, next) in row.iter_mut().enumerate() {
            *next = GameState {
                ac1: a1[j],
                ac2: a2[k],
                k: state.k + 1,
            };
        }
    }
    grid
}

/// Both players' seat-major payoff matrices over a successor grid, from one
/// reward evaluation per successor. Rows are the seat's own maneuvers,
/// columns the opponent's.
fn payoff_pair(grid: &[[GameState; 3]; 3], gp: &GameParams) -> (PayoffMatrix, PayoffMatrix) {
    let mut p1 = [[0.0; 3]; 3];
    let mut p2 = [[0.0; 3]; 3];
    for (j, row) in grid.iter().enumerate() {
        for (k, next) in row.iter().enumerate() {
            let (_, u1, u2) = evaluate_state(next, &gp.eng);
            p1[j][k] = u1;
            p2[k][j] = u2;
        }
    }
    (PayoffMatrix(p1), PayoffMatrix(p2))
}

/// Shaped one-step payoffs for `player`: entry (j, k) evaluates the joint
/// transition where `player` flies maneuver j and the opponent flies k.
pub fn build_payoff(state: &GameState, player: Player, gp: &GameParams) -> PayoffMatrix {
    let (p1, p2) = payoff_pair(&joint_successors(state, gp), gp);
    match player {
        Player::One => p1,
        Player::Two => p2,
    }
}

const EPS: f64 = 1e-12;

/// Primal simplex for `max 1'q s.t. a q <= 1, q >= 0` with `a` elementwise
/// positive. Returns the row duals and the optimal objective value.
fn packing_duals(a: &[[f64; 3]; 3]) -> ([f64; 3], f64) {
    // Tableau rows hold the constraints with slack columns 3..6 and the RHS
    // in column 6; `cost` holds reduced costs plus the objective in its RHS.
    let mut t = [[0.0f64; 7]; 3];
    let mut basis = [3usize, 4, 5];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[i][j];
        }
        t[i][3 + i] = 1.0;
        t[i][6] = 1.0;
    }
    let mut cost = [0.0f64; 7];
    for c in cost.iter_mut().take(3) {
        *c = -1.0;
    }

    // Bland's rule bounds the pivot count by the number of bases; 64 is far
    // beyond C(6,3).
    for _ in 0..64 {
        let Some(enter) = (0..6).find(|&j| cost[j] < -EPS) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..3 {
            if t[i][enter] > EPS {
                let ratio = t[i][6] / t[i][enter];
                let better = match leave {
                    None => true,
                    Some(l) => {
                        ratio + EPS < best || (ratio < best + EPS && basis[i] < basis[l])
                    }
                };
                if better {
                    best = best.min(ratio);
                    leave = Some(i);
                }
            }
        }
        // a > 0 makes the feasible region bounded, so a leaving row exists
        let leave = leave.expect("positive packing LP cannot be unbounded");

        let pivot = t[leave][enter];
        for x in t[leave].iter_mut() {
            *x /= pivot;
        }
        for i in 0..3 {
            if i != leave && t[i][enter] != 0.0 {
                let f = t[i][enter];
                for j in 0..7 {
                    t[i][j] -= f * t[leave][j];
                }
            }
        }
        if cost[enter] != 0.0 {
            let f = cost[enter];
            for j in 0..7 {
                cost[j] -= f * t[leave][j];
            }
        }
        basis[leave] = enter;
    }

    ([cost[3], cost[4], cost[5]], cost[6])
}

/// Maximin mixed strategy and game value for the row player.
///
/// A constant matrix leaves every strategy equivalent; the uniform mix is
/// returned so the tactic stays unpredictable there.
pub fn solve_maxmin(payoff: &PayoffMatrix) -> (MixedStrategy, f64) {
    let p = &payoff.0;
    let lo = p.iter().flatten().cloned().fold(f64::INFINITY, f64::min);
    let hi = p.iter().flatten().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 1e-12 {
        return (MixedStrategy::uniform(), p[0][0]);
    }

    // Shift entries into [1, 1 + range] so the packing transform applies.
    let shift = 1.0 - lo;
    let mut shifted = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            shifted[i][j] = p[i][j] + shift;
        }
    }
    let (duals, z) = packing_duals(&shifted);
    let value = 1.0 / z - shift;
    let strategy = MixedStrategy::new(duals)
        .expect("simplex duals of a positive packing LP form a distribution");
    (strategy, value)
}

/// The matrix-game tactic: solve the one-step game from this state and
/// sample own maneuver from the maximin mix.
pub fn mg_tactic<R: Rng + ?Sized>(
    state: &GameState,
    player: Player,
    gp: &GameParams,
    rng: &mut R,
) -> Maneuver {
    let (strategy, _) = solve_maxmin(&build_payoff(state, player, gp));
    strategy.sample(rng)
}

/// Both players' matrix-game moves from one state, sharing the successor
/// grid between the two payoff matrices. Draw order is player 1 then player
/// 2 on the same stream, matching two sequential `mg_tactic` calls.
pub fn mg_joint_tactic<R: Rng + ?Sized>(
    state: &GameState,
    gp: &GameParams,
    rng: &mut R,
) -> JointManeuver {
    let (p1, p2) = payoff_pair(&joint_successors(state, gp), gp);
    let (mix1, _) = solve_maxmin(&p1);
    let (mix2, _) = solve_maxmin(&p2);
    JointManeuver {
        m1: mix1.sample(rng),
        m2: mix2.sample(rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airframe::{AircraftParams, AircraftState};
    use crate::engagement::EngagementParams;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn table1_game() -> GameParams {
        let p = AircraftParams::new(2.5, 45f64.to_radians(), 23f64.to_radians(), 0.05, 20, 9.81)
            .unwrap();
        let eng = EngagementParams::new(
            0.1,
            3.0,
            2.0,
            18.0,
            30f64.to_radians(),
            60f64.to_radians(),
            0.5,
            0.8,
        )
        .unwrap();
        GameParams { p1: p, p2: p, eng }
    }

    #[test]
    fn payoffs_of_the_two_seats_are_constant_sum() {
        // Shaping terms of the two players sum to 1 (line-of-sight angle
        // identity) and terminal rewards cancel, so the two seats' payoff
        // matrices satisfy P1[j][k] + P2[k][j] = 1 - w.
        let gp = table1_game();
        let s = GameState::new(
            AircraftState::new(0.0, 0.0, 2.5, 0.3, 0.1),
            AircraftState::new(2.4, 1.1, 2.5, -1.2, -0.2),
        );
        let p1 = build_payoff(&s, Player::One, &gp);
        let p2 = build_payoff(&s, Player::Two, &gp);
        for j in 0..3 {
            for k in 0..3 {
                assert_abs_diff_eq!(p1.0[j][k] + p2.0[k][j], 1.0 - gp.eng.w, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn sampling_matches_probabilities() {
        let strategy = MixedStrategy::new([0.5, 0.3, 0.2]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let mut counts = [0u32; 3];
        for _ in 0..30_000 {
            counts[strategy.sample(&mut rng).index()] += 1;
        }
        assert_abs_diff_eq!(counts[0] as f64 / 30_000.0, 0.5, epsilon = 0.01);
        assert_abs_diff_eq!(counts[1] as f64 / 30_000.0, 0.3, epsilon = 0.01);
        assert_abs_diff_eq!(counts[2] as f64 / 30_000.0, 0.2, epsilon = 0.01);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let strategy = MixedStrategy::new([0.4, 0.4, 0.2]).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            (0..16).map(|_| strategy.sample(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(99), draw(99));
    }

    #[test]
    fn strategy_validation() {
        assert!(MixedStrategy::new([f64::NAN, 0.5, 0.5]).is_err());
        assert!(MixedStrategy::new([-0.5, 1.0, 0.5]).is_err());
        assert!(MixedStrategy::new([0.0, 0.0, 0.0]).is_err());
        // weights normalize
        let s = MixedStrategy::new([2.0, 1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(s.probs()[0], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_pure_strategy_samples_it() {
        let strategy = MixedStrategy::new([0.0, 1.0, 0.0]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..32 {
            assert_eq!(strategy.sample(&mut rng), Maneuver::Straight);
        }
    }

    #[test]
    fn mg_tactic_is_deterministic_per_seed() {
        let gp = table1_game();
        let s = GameState::new(
            AircraftState::new(0.0, 0.0, 2.5, 0.0, 0.0),
            AircraftState::new(4.0, 2.0, 2.5, 2.0, 0.0),
        );
        let run = |seed| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            (0..8)
                .map(|_| mg_tactic(&s, Player::One, &gp, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(run(5), run(5));
    }
}

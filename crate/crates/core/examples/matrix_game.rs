//! Build the one-step payoff matrix at a state and solve it: the maximin
//! mixed strategy is what the matrix-game tactic samples every second.

use dogfight::airframe::{AircraftState, Maneuver};
use dogfight::arena::{baseline_aircraft, baseline_engagement};
use dogfight::engagement::{GameParams, GameState, Player};
use dogfight::matrix_game::{build_payoff, solve_maxmin};

fn main() {
    let gp = GameParams {
        p1: baseline_aircraft(),
        p2: baseline_aircraft(),
        eng: baseline_engagement(),
    };
    // aircraft 2 crosses ahead of aircraft 1 from the left
    let x = GameState {
        ac1: AircraftState::new(0.0, 0.0, 2.5, 0.0, 0.0),
        ac2: AircraftState::new(2.0, 1.0, 2.5, -0.8, 0.0),
        k: 0,
    };

    for player in Player::BOTH {
        let payoff = build_payoff(&x, player, &gp);
        let (strategy, value) = solve_maxmin(&payoff);
        println!("player {:?} one-step payoffs (rows: own L/S/R, cols: opponent L/S/R):", player);
        for own in Maneuver::ALL {
            print!("   ");
            for opp in Maneuver::ALL {
                print!(" {:7.4}", payoff.get(own, opp));
            }
            println!();
        }
        let p = strategy.probs();
        println!("  maximin mix: L {:.3}  S {:.3}  R {:.3}", p[0], p[1], p[2]);
        println!("  game value (guaranteed expected payoff): {value:.4}\n");
    }

    println!("the two seats' values sum to 1 - w = 0.5: the game is constant-sum,");
    println!("so one seat's guarantee is exactly what the other cannot prevent.");
}

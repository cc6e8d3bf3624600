//! Relative geometry and rewards for a handful of telling positions: who is
//! behind whom, what the shaped reward says about it, and when the pursuit
//! actually ends.

use dogfight::airframe::AircraftState;
use dogfight::arena::baseline_engagement;
use dogfight::engagement::{
    check_terminal, relative_geometry, shaped_reward, GameState, Player,
};

fn state(x1: f64, y1: f64, th1: f64, x2: f64, y2: f64, th2: f64) -> GameState {
    GameState {
        ac1: AircraftState::new(x1, y1, 2.5, th1, 0.0),
        ac2: AircraftState::new(x2, y2, 2.5, th2, 0.0),
        k: 0,
    }
}

fn main() {
    let eng = baseline_engagement();
    let scenarios = [
        ("1 tailing 2 at 2 m", state(0.0, 0.0, 0.0, 2.0, 0.0, 0.0)),
        ("2 tailing 1 at 2 m", state(0.0, 0.0, 0.0, -2.0, 0.0, 0.0)),
        ("head-on at 2 m", state(0.0, 0.0, 0.0, 2.0, 0.0, std::f64::consts::PI)),
        ("side-by-side", state(0.0, 0.0, 0.0, 0.0, 2.0, 0.0)),
        ("tailing but too close", state(0.0, 0.0, 0.0, 0.05, 0.0, 0.0)),
        ("tailing but too far", state(0.0, 0.0, 0.0, 4.0, 0.0, 0.0)),
    ];

    println!(
        "win cone: {:.0}..{:.0} m behind the target, bearing < {:.0} deg, aspect < {:.0} deg\n",
        eng.d_min,
        eng.d_max,
        eng.bearing_max.to_degrees(),
        eng.aspect_max.to_degrees()
    );
    println!("{:<24} {:>8} {:>8} {:>6} {:>8} {:>8}  outcome", "scenario", "bearing", "aspect", "dist", "reward1", "reward2");
    for (name, x) in &scenarios {
        let g = relative_geometry(x, Player::One).unwrap();
        let r1 = shaped_reward(x, Player::One, &eng);
        let r2 = shaped_reward(x, Player::Two, &eng);
        let outcome = check_terminal(x, &eng);
        println!(
            "{name:<24} {:>7.1}  {:>7.1}  {:>5.2} {r1:>8.3} {r2:>8.3}  {outcome:?}",
            g.bearing.to_degrees(),
            g.aspect.to_degrees(),
            g.distance,
        );
    }

    println!("\nshaped rewards of the two seats always sum to 1 - w = 0.5 on ongoing states;");
    println!("whoever sits deeper in the opponent's rear hemisphere holds the larger share.");
}

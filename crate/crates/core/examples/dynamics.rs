//! Fly each maneuver for a few seconds and print the resulting poses, plus
//! the turn geometry implied by the bank limit.

use dogfight::airframe::{step_maneuver, turn_rate, AircraftParams, AircraftState, Maneuver};

fn main() {
    let params = AircraftParams::new(
        2.5,                   // speed, m/s
        45f64.to_radians(),    // bank rate
        23f64.to_radians(),    // bank limit
        0.05,                  // inner step, s
        20,                    // inner steps per maneuver
        9.81,
    )
    .unwrap();

    println!("airframe: v = {} m/s, bank limit = 23 deg, 1 s per maneuver\n", params.v);

    for maneuver in Maneuver::ALL {
        let mut state = AircraftState::new(0.0, 0.0, params.v, 0.0, 0.0);
        println!("{maneuver:?} for 5 s:");
        println!("  t     x       y       heading  bank");
        for t in 1..=5 {
            state = step_maneuver(&state, maneuver, &params);
            println!(
                "  {t}  {:7.3} {:7.3}  {:7.1} deg {:5.1} deg",
                state.x,
                state.y,
                state.theta.to_degrees(),
                state.zeta.to_degrees()
            );
        }
        println!();
    }

    let banked = AircraftState::new(0.0, 0.0, params.v, 0.0, params.zeta_max);
    let omega = turn_rate(&banked, &params);
    println!("at the bank limit: heading rate = {:.3} rad/s", omega);
    println!("continuous turn radius v^2/(g tan zeta) = {:.4} m", params.v / omega);
    println!("full circle takes {:.1} s", std::f64::consts::TAU / omega);
}

//! Play one full game, tree search against the matrix-game tactic, and
//! print the engagement as it unfolds.

use dogfight::arena::{
    baseline_aircraft, baseline_engagement, baseline_smcts, play_game, sample_initial_state,
    Tactic,
};
use dogfight::engagement::{relative_geometry, GameParams, Player};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let gp = GameParams {
        p1: baseline_aircraft(),
        p2: baseline_aircraft(),
        eng: baseline_engagement(),
    };
    let tactic1 = Tactic::Smcts(baseline_smcts());
    let tactic2 = Tactic::Mg;

    let mut init_rng = ChaCha12Rng::seed_from_u64(7);
    let x0 = sample_initial_state(&mut init_rng, &gp, 6.0).unwrap();
    let mut rng1 = ChaCha12Rng::seed_from_u64(71);
    let mut rng2 = ChaCha12Rng::seed_from_u64(72);

    let record = play_game(0, &x0, &tactic1, &tactic2, 70, &gp, &mut rng1, &mut rng2).unwrap();

    println!("search (player 1) vs matrix game (player 2)\n");
    println!("  t   moves   distance  bearing1  aspect1");
    for (i, state) in record.states.iter().enumerate() {
        let moves = match i.checked_sub(1) {
            Some(j) => format!("{}+{}", record.moves[j].m1.letter(), record.moves[j].m2.letter()),
            None => "-".to_string(),
        };
        let g = relative_geometry(state, Player::One).unwrap();
        println!(
            " {:>3}  {:<6} {:>8.2} {:>8.1}  {:>8.1}",
            record.time_of(i),
            moves,
            g.distance,
            g.bearing.to_degrees(),
            g.aspect.to_degrees()
        );
    }
    println!("\noutcome: {:?} after {} decision steps", record.outcome, record.steps);
}

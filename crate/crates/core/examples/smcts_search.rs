//! Grow a search tree from one state and inspect what it learned: marginal
//! visit counts and mean returns per maneuver, and the recommended move.

use dogfight::airframe::AircraftState;
use dogfight::arena::{baseline_aircraft, baseline_engagement, baseline_smcts};
use dogfight::engagement::{GameParams, GameState, Player};
use dogfight::smcts::SearchTree;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let gp = GameParams {
        p1: baseline_aircraft(),
        p2: baseline_aircraft(),
        eng: baseline_engagement(),
    };
    // opponent ahead-right, crossing left to right
    let root = GameState {
        ac1: AircraftState::new(0.0, 0.0, 2.5, 0.0, 0.0),
        ac2: AircraftState::new(3.0, -2.0, 2.5, 1.2, 0.0),
        k: 0,
    };

    let cfg = baseline_smcts();
    println!(
        "search budget: {} nodes + {} refinement passes, playout {:?} over {} steps\n",
        cfg.m_tree, cfg.extra_iterations, cfg.playout, cfg.t_sim
    );

    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    let tree = SearchTree::grow(&root, &cfg, &gp, &mut rng).unwrap();
    println!("tree holds {} nodes, root visited {} times", tree.size(), tree.root_visits());

    for player in Player::BOTH {
        let stats = tree.root_stats(player);
        println!("\nplayer {player:?} marginals at the root:");
        println!("  maneuver  visits  mean return");
        for (j, name) in ["Left", "Straight", "Right"].iter().enumerate() {
            match stats.q[j] {
                Some(q) => println!("  {name:<9} {:>5}  {q:>11.4}", stats.n[j]),
                None => println!("  {name:<9} {:>5}  {:>11}", stats.n[j], "unvisited"),
            }
        }
    }

    let recommended = tree.recommend(Player::One, &mut rng);
    println!("\nrecommendation for player One: {recommended:?}");
    println!("(most-visited maneuver, not highest mean: visits are the robust signal)");
}

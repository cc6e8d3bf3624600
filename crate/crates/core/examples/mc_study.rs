//! A small Monte Carlo study: repeated games from randomized symmetric
//! starts, reduced to win/draw frequencies. The `dogfight` binary runs the
//! full-size studies and writes plots; this is the library view of the same
//! machinery.

use dogfight::arena::{run_mc_study, CaseId, CaseSpec, Tactic};
use dogfight::smcts::SearchConfig;

fn main() {
    // Case II matchup (search vs matrix game), trimmed for a quick run:
    // a lighter refinement budget and fewer trials than the full study
    let mut spec = CaseSpec::preset(CaseId::II);
    if let Tactic::Smcts(cfg) = &mut spec.tactic1 {
        *cfg = SearchConfig { extra_iterations: 10, ..*cfg };
    }

    let trials = 20;
    let seed = 42;
    let (summary, records) = run_mc_study(&spec, trials, seed, true).unwrap();

    println!("case {} with {trials} trials, seed {seed}:\n", spec.id);
    println!("  p_w1 = {:.2}  ({} wins for the searcher)", summary.p_w1, summary.m_w1);
    println!("  p_w2 = {:.2}  ({} wins for the matrix-game seat)", summary.p_w2, summary.m_w2);
    println!("  p_d  = {:.2}  ({} draws)", summary.p_d, summary.m_d);

    let avg_steps: f64 =
        records.iter().map(|r| f64::from(r.steps)).sum::<f64>() / records.len() as f64;
    println!("\naverage game length: {avg_steps:.1} s of a possible {} s", spec.t_game);
    println!("trials come in mirrored pairs: trial 2i+1 restarts trial 2i with seats swapped,");
    println!("so initial-position luck cancels out of the win-rate comparison.");
}

//! Study-level statistical properties of the Monte Carlo arena.

use dogfight::arena::{run_mc_study, CaseId, CaseSpec, Tactic};
use dogfight::smcts::{PlayoutPolicy, SearchConfig, SelectionPolicy};

/// A deliberately cheap tree-search tactic for statistical tests.
fn light_smcts() -> Tactic {
    Tactic::Smcts(SearchConfig {
        m_tree: 9,
        t_sim: 10,
        selection: SelectionPolicy::Ucb1 { c: 0.2 },
        playout: PlayoutPolicy::Random,
        extra_iterations: 10,
        shuffle_expansion: false,
    })
}

#[test]
fn identical_players_have_similar_win_rates() {
    let case = CaseSpec::preset(CaseId::I);
    let (summary, records) = run_mc_study(&case, 100, 424242, false).unwrap();
    assert_eq!(summary.m_s, 100);
    assert_eq!(records.len(), 100);
    assert_eq!(summary.m_w1 + summary.m_w2 + summary.m_d, 100);
    assert!((summary.p_w1 + summary.p_w2 + summary.p_d - 1.0).abs() < 1e-12);
    assert!(
        (summary.p_w1 - summary.p_w2).abs() <= 0.15,
        "same tactic, same aircraft, but p_w1={} p_w2={}",
        summary.p_w1,
        summary.p_w2
    );
}

#[test]
fn swapping_seats_swaps_win_rates_within_noise() {
    let mut case = CaseSpec::preset(CaseId::I);
    case.tactic1 = light_smcts();
    case.tactic2 = Tactic::Mg;
    let (fwd, _) = run_mc_study(&case, 100, 777, false).unwrap();

    let mut swapped = case;
    std::mem::swap(&mut swapped.tactic1, &mut swapped.tactic2);
    let (rev, _) = run_mc_study(&swapped, 100, 777, false).unwrap();

    assert!(
        (fwd.p_w1 - rev.p_w2).abs() <= 0.1,
        "seat swap broke symmetry: fwd p_w1={} rev p_w2={}",
        fwd.p_w1,
        rev.p_w2
    );
    assert!(
        (fwd.p_w2 - rev.p_w1).abs() <= 0.1,
        "seat swap broke symmetry: fwd p_w2={} rev p_w1={}",
        fwd.p_w2,
        rev.p_w1
    );
}

#[test]
fn parallel_study_reproduces_sequential_results() {
    let mut case = CaseSpec::preset(CaseId::I);
    case.tactic1 = light_smcts();
    let (serial_summary, serial_records) = run_mc_study(&case, 24, 99, false).unwrap();
    let (parallel_summary, parallel_records) = run_mc_study(&case, 24, 99, true).unwrap();
    assert_eq!(serial_summary, parallel_summary);
    assert_eq!(serial_records, parallel_records);
}

#[test]
fn symmetrized_pairs_share_the_initial_geometry() {
    let case = CaseSpec::preset(CaseId::I);
    let (_, records) = run_mc_study(&case, 20, 5150, false).unwrap();
    for pair in records.chunks(2) {
        let a = pair[0].initial();
        let b = pair[1].initial();
        assert_eq!(a.ac1, b.ac2, "trial {} twin is not aircraft-swapped", pair[0].trial);
        assert_eq!(a.ac2, b.ac1);
    }
}

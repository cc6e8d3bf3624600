//! Simultaneous-move Monte Carlo tree search over joint maneuvers.
//!
//! Both players pick their moves independently at every node: each keeps a
//! marginal bandit over its own three maneuvers, aggregated from the joint
//! children, and the two argmax picks compose into the joint edge to follow.
//! Playouts run a configurable joint policy for a bounded horizon and return
//! a discounted sum of shaped rewards per player; backpropagation adds the
//! raw pair to every node on the path (average backup: means are formed on
//! read).
//!
//! The budget caps the tree size, not the iteration count: growth stops at
//! `m_tree` nodes, after which `extra_iterations` selection/playout passes
//! keep refining the statistics without expanding. Raw returns live in
//! `[-w·S, S]` for `S = sum of gamma^k over the horizon`; bandit indices see
//! them affinely rescaled to `[0, 1]` (`RewardScale`), which the UCB1
//! exploitation term and the Thompson beta shapes both assume.

use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::airframe::{step_maneuver, Maneuver};
use crate::engagement::{
    check_terminal, evaluate_state, shaped_reward, transition, GameParams, GameState,
    JointManeuver, Player,
};
use crate::matrix_game::{mg_joint_tactic, mg_tactic};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SelectionPolicy {
    /// Deterministic upper-confidence index `q + c·sqrt(ln n_i / n_ij)`.
    Ucb1 { c: f64 },
    /// Stochastic index: one draw from `beta(c1 + q·n_ij, c2 + (1-q)·n_ij)`.
    Thompson { c1: f64, c2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PlayoutPolicy {
    /// Uniform joint moves.
    Random,
    /// Each player maximizes its own one-step shaped reward with the
    /// opponent frozen in place.
    Greedy,
    /// Random move with probability epsilon, greedy otherwise, per player
    /// per step.
    EpsilonGreedy { epsilon: f64 },
    /// Both players sample their maximin mix of the one-step matrix game.
    MatrixGame,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum number of tree nodes, root included.
    pub m_tree: usize,
    /// Playout horizon in decision steps.
    pub t_sim: u32,
    pub selection: SelectionPolicy,
    pub playout: PlayoutPolicy,
    /// Selection/playout passes run after the tree-size budget is reached.
    pub extra_iterations: u32,
    /// Shuffle each node's expansion order with the search rng instead of
    /// using the fixed enumeration order.
    pub shuffle_expansion: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            m_tree: 9,
            t_sim: 10,
            selection: SelectionPolicy::Ucb1 { c: 0.2 },
            playout: PlayoutPolicy::Random,
            extra_iterations: 0,
            shuffle_expansion: false,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.m_tree < 1 {
            return Err(SearchError::InvalidConfig("m_tree must be at least 1"));
        }
        if self.t_sim < 1 {
            return Err(SearchError::InvalidConfig("t_sim must be at least 1"));
        }
        match self.selection {
            SelectionPolicy::Ucb1 { c } => {
                if !(c >= 0.0) {
                    return Err(SearchError::InvalidConfig("UCB1 c must be >= 0"));
                }
            }
            SelectionPolicy::Thompson { c1, c2 } => {
                if !(c1 > 0.0 && c2 > 0.0) {
                    return Err(SearchError::InvalidConfig("Thompson c1, c2 must be > 0"));
                }
            }
        }
        if let PlayoutPolicy::EpsilonGreedy { epsilon } = self.playout {
            if !(0.0..=1.0).contains(&epsilon) {
                return Err(SearchError::InvalidConfig("epsilon must lie in [0, 1]"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("search on terminal state")]
    TerminalRoot,
    #[error("invalid search config: {0}")]
    InvalidConfig(&'static str),
}

/// Affine map from the analytic playout-return range onto [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardScale {
    pub lo: f64,
    pub hi: f64,
}

impl RewardScale {
    /// Bounds of the discounted playout return: every summand lies in
    /// [-w, 1], so the K-step sum lies in [-w·S, S] with S the geometric
    /// series over the horizon.
    pub fn for_horizon(t_sim: u32, w: f64, gamma: f64) -> Self {
        let s = if (gamma - 1.0).abs() < 1e-15 {
            t_sim as f64
        } else {
            (1.0 - gamma.powi(t_sim as i32)) / (1.0 - gamma)
        };
        Self { lo: -w * s, hi: s }
    }

    pub fn normalize(&self, r: f64) -> f64 {
        ((r - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0)
    }
}

/// Marginal bandit statistics of one player at one node, indexed in
/// `Maneuver::ALL` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeStats {
    /// Marginal visit counts n_ij: summed child visits over the joints where
    /// this player flies maneuver j.
    pub n: [u64; 3],
    /// Mean raw return per maneuver; None where the marginal is unvisited.
    pub q: [Option<f64>; 3],
    /// Total marginal visits n_i.
    pub total: u64,
}

/// UCB1 index on a normalized mean. Unvisited arms get infinite priority.
pub fn ucb1_index(q: f64, n_ij: u64, n_i: u64, c: f64) -> f64 {
    if n_ij == 0 {
        return f64::INFINITY;
    }
    q + c * ((n_i as f64).ln() / n_ij as f64).sqrt()
}

/// One Thompson draw from `beta(c1 + q·n_ij, c2 + (1-q)·n_ij)`; with no
/// evidence (n_ij = 0) this is the prior beta(c1, c2).
pub fn thompson_index<R: Rng + ?Sized>(
    q: f64,
    n_ij: u64,
    c1: f64,
    c2: f64,
    rng: &mut R,
) -> f64 {
    let n = n_ij as f64;
    let beta = Beta::new(c1 + q * n, c2 + (1.0 - q) * n)
        .expect("validated config keeps beta shapes positive");
    beta.sample(rng)
}

/// One playout move for `player` under the given policy.
pub fn playout_move<R: Rng + ?Sized>(
    state: &GameState,
    player: Player,
    policy: PlayoutPolicy,
    gp: &GameParams,
    rng: &mut R,
) -> Maneuver {
    match policy {
        PlayoutPolicy::Random => Maneuver::ALL[rng.random_range(0..3)],
        PlayoutPolicy::Greedy => greedy_move(state, player, gp),
        PlayoutPolicy::EpsilonGreedy { epsilon } => {
            if rng.random::<f64>() < epsilon {
                Maneuver::ALL[rng.random_range(0..3)]
            } else {
                greedy_move(state, player, gp)
            }
        }
        PlayoutPolicy::MatrixGame => mg_tactic(state, player, gp, rng),
    }
}

/// Own maneuver maximizing the one-step shaped reward with the opponent's
/// state frozen. Ties break toward the lowest maneuver index.
fn greedy_move(state: &GameState, player: Player, gp: &GameParams) -> Maneuver {
    let own_params = gp.aircraft(player);
    let mut best = Maneuver::Left;
    let mut best_value = f64::NEG_INFINITY;
    for m in Maneuver::ALL {
        let moved = step_maneuver(state.aircraft(player), m, own_params);
        let candidate = match player {
            Player::One => GameState { ac1: moved, ..*state },
            Player::Two => GameState { ac2: moved, ..*state },
        };
        let value = shaped_reward(&candidate, player, &gp.eng);
        if value > best_value {
            best_value = value;
            best = m;
        }
    }
    best
}

/// Truncated discounted playout from `leaf`: evaluates the shaped reward of
/// every visited state starting with the leaf itself, over exactly `t_sim`
/// discount steps. A terminal state stops the rollout and absorbs: its shaped
/// reward keeps paying for every remaining step of the horizon, so winning
/// early is worth more than any ongoing shaping stream (and losing early
/// costs more).
pub fn simulate<R: Rng + ?Sized>(
    leaf: &GameState,
    cfg: &SearchConfig,
    gp: &GameParams,
    rng: &mut R,
) -> (f64, f64) {
    let gamma = gp.eng.gamma;
    let mut x = *leaf;
    let mut r = [0.0, 0.0];
    let mut disc = 1.0;
    for k in 0..cfg.t_sim {
        let (outcome, u1, u2) = evaluate_state(&x, &gp.eng);
        if outcome.is_terminal() {
            // discounted weight of steps k..t_sim-1 in closed form
            let remaining = (cfg.t_sim - k) as i32;
            let weight = if (gamma - 1.0).abs() < 1e-15 {
                disc * remaining as f64
            } else {
                disc * (1.0 - gamma.powi(remaining)) / (1.0 - gamma)
            };
            r[0] += weight * u1;
            r[1] += weight * u2;
            break;
        }
        r[0] += disc * u1;
        r[1] += disc * u2;
        if k + 1 == cfg.t_sim {
            break;
        }
        // The matrix-game rollout solves both seats from one successor grid;
        // draw order (player 1, then 2) matches the per-player path exactly.
        let joint = if cfg.playout == PlayoutPolicy::MatrixGame {
            mg_joint_tactic(&x, gp, rng)
        } else {
            let m1 = playout_move(&x, Player::One, cfg.playout, gp, rng);
            let m2 = playout_move(&x, Player::Two, cfg.playout, gp, rng);
            JointManeuver { m1, m2 }
        };
        x = transition(&x, joint, &gp.p1, &gp.p2);
        disc *= gamma;
    }
    (r[0], r[1])
}

struct Node {
    state: GameState,
    terminal: bool,
    parent: Option<usize>,
    children: [Option<usize>; 9],
    /// Joint indices in expansion order; `next_untried` is the cursor.
    untried: Vec<usize>,
    next_untried: usize,
    n: u64,
    /// Cumulative raw playout returns per player.
    q: [f64; 2],
}

impl Node {
    fn new<R: Rng + ?Sized>(
        state: GameState,
        parent: Option<usize>,
        gp: &GameParams,
        cfg: &SearchConfig,
        rng: &mut R,
    ) -> Self {
        let terminal = check_terminal(&state, &gp.eng).is_terminal();
        let untried = if terminal {
            Vec::new()
        } else {
            let mut order: Vec<usize> = (0..9).collect();
            if cfg.shuffle_expansion {
                use rand::seq::SliceRandom;
                order.shuffle(rng);
            }
            order
        };
        Self {
            state,
            terminal,
            parent,
            children: [None; 9],
            untried,
            next_untried: 0,
            n: 0,
            q: [0.0, 0.0],
        }
    }

    fn fully_expanded(&self) -> bool {
        self.next_untried == self.untried.len()
    }
}

/// A grown search tree; query it for statistics or the recommended move.
pub struct SearchTree {
    nodes: Vec<Node>,
    cfg: SearchConfig,
    gp: GameParams,
    scale: RewardScale,
}

impl SearchTree {
    /// Run the full search from `root`: `m_tree - 1` growth iterations, then
    /// `extra_iterations` refinement passes.
    pub fn grow<R: Rng + ?Sized>(
        root: &GameState,
        cfg: &SearchConfig,
        gp: &GameParams,
        rng: &mut R,
    ) -> Result<Self, SearchError> {
        cfg.validate()?;
        if check_terminal(root, &gp.eng).is_terminal() {
            return Err(SearchError::TerminalRoot);
        }
        let scale = RewardScale::for_horizon(cfg.t_sim, gp.eng.w, gp.eng.gamma);
        let mut tree = Self {
            nodes: vec![Node::new(*root, None, gp, cfg, rng)],
            cfg: *cfg,
            gp: *gp,
            scale,
        };
        for _ in 1..cfg.m_tree {
            tree.iterate(true, rng);
        }
        for _ in 0..cfg.extra_iterations {
            tree.iterate(false, rng);
        }
        Ok(tree)
    }

    /// One select/(expand)/simulate/backup pass. In growth mode the first
    /// not-fully-expanded node expands one child; in refinement mode the
    /// descent simply stops where the selected joint has no child yet.
    fn iterate<R: Rng + ?Sized>(&mut self, grow: bool, rng: &mut R) {
        let mut idx = 0;
        loop {
            if self.nodes[idx].terminal {
                break;
            }
            if self.nodes[idx].fully_expanded() {
                let joint = self.select_joint(idx, rng);
                idx = self.nodes[idx].children[joint]
                    .expect("fully expanded node has all children");
            } else if grow {
                idx = self.expand(idx, rng);
                break;
            } else {
                // Refinement pass at a partially expanded node: restrict the
                // decoupled argmax to joints whose child exists, otherwise a
                // deterministic index can re-select the same missing joint
                // forever and starve the statistics.
                match self.select_existing_joint(idx, rng) {
                    Some(child) => idx = child,
                    None => break,
                }
            }
        }
        let leaf_state = self.nodes[idx].state;
        let (r1, r2) = simulate(&leaf_state, &self.cfg, &self.gp, rng);
        self.backup(idx, r1, r2);
    }

    /// Create the child for the node's next untried joint maneuver.
    fn expand<R: Rng + ?Sized>(&mut self, idx: usize, rng: &mut R) -> usize {
        let cursor = self.nodes[idx].next_untried;
        debug_assert!(cursor < self.nodes[idx].untried.len(), "expand on exhausted node");
        let joint = self.nodes[idx].untried[cursor];
        self.nodes[idx].next_untried += 1;
        let next = transition(
            &self.nodes[idx].state,
            JointManeuver::all()[joint],
            &self.gp.p1,
            &self.gp.p2,
        );
        let child = Node::new(next, Some(idx), &self.gp, &self.cfg, rng);
        self.nodes.push(child);
        let child_idx = self.nodes.len() - 1;
        self.nodes[idx].children[joint] = Some(child_idx);
        child_idx
    }

    /// Decoupled selection: each player independently argmaxes its bandit
    /// index over its marginals; the picks compose into a joint index.
    fn select_joint<R: Rng + ?Sized>(&self, idx: usize, rng: &mut R) -> usize {
        let a1 = self.select_marginal(idx, Player::One, rng);
        let a2 = self.select_marginal(idx, Player::Two, rng);
        a1 * 3 + a2
    }

    fn select_marginal<R: Rng + ?Sized>(&self, idx: usize, player: Player, rng: &mut R) -> usize {
        self.select_marginal_among(idx, player, [true; 3], rng)
    }

    fn select_marginal_among<R: Rng + ?Sized>(
        &self,
        idx: usize,
        player: Player,
        allowed: [bool; 3],
        rng: &mut R,
    ) -> usize {
        let stats = self.marginal_stats(idx, player);
        let mut best = usize::MAX;
        let mut best_score = f64::NEG_INFINITY;
        for j in 0..3 {
            if !allowed[j] {
                continue;
            }
            let q = self.scale.normalize(stats.q[j].unwrap_or(0.0));
            let score = match self.cfg.selection {
                SelectionPolicy::Ucb1 { c } => ucb1_index(q, stats.n[j], stats.total, c),
                SelectionPolicy::Thompson { c1, c2 } => {
                    thompson_index(q, stats.n[j], c1, c2, rng)
                }
            };
            if best == usize::MAX || score > best_score {
                best_score = score;
                best = j;
            }
        }
        best
    }

    /// Refinement-pass descent through a partially expanded node: player 1
    /// argmaxes over its arms that have at least one existing child, player 2
    /// over the existing columns of that row. Returns None when the node has
    /// no children at all (playout from the node itself).
    fn select_existing_joint<R: Rng + ?Sized>(&self, idx: usize, rng: &mut R) -> Option<usize> {
        let children = &self.nodes[idx].children;
        let mut rows = [false; 3];
        for (joint, child) in children.iter().enumerate() {
            if child.is_some() {
                rows[joint / 3] = true;
            }
        }
        if rows == [false; 3] {
            return None;
        }
        let a1 = self.select_marginal_among(idx, Player::One, rows, rng);
        let cols = [0, 1, 2].map(|k| children[a1 * 3 + k].is_some());
        let a2 = self.select_marginal_among(idx, Player::Two, cols, rng);
        children[a1 * 3 + a2]
    }

    fn backup(&mut self, leaf: usize, r1: f64, r2: f64) {
        let mut cursor = Some(leaf);
        while let Some(idx) = cursor {
            let node = &mut self.nodes[idx];
            node.n += 1;
            node.q[0] += r1;
            node.q[1] += r2;
            cursor = node.parent;
        }
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn root_visits(&self) -> u64 {
        self.nodes[0].n
    }

    /// Marginal statistics of `player` at the root.
    pub fn root_stats(&self, player: Player) -> NodeStats {
        self.marginal_stats(0, player)
    }

    fn marginal_stats(&self, idx: usize, player: Player) -> NodeStats {
        let mut n = [0u64; 3];
        let mut sum = [0.0f64; 3];
        for (joint, child) in self.nodes[idx].children.iter().enumerate() {
            if let Some(c) = child {
                let a = match player {
                    Player::One => joint / 3,
                    Player::Two => joint % 3,
                };
                n[a] += self.nodes[*c].n;
                sum[a] += self.nodes[*c].q[player.index()];
            }
        }
        let q = [0, 1, 2].map(|j| (n[j] > 0).then(|| sum[j] / n[j] as f64));
        NodeStats { n, q, total: n.iter().sum() }
    }

    /// Final move selection: the searcher's marginal with the highest visit
    /// count (robust child over marginals); ties break toward the lowest
    /// index; a statless tree falls back to a uniform random move.
    pub fn recommend<R: Rng + ?Sized>(&self, searcher: Player, rng: &mut R) -> Maneuver {
        let stats = self.root_stats(searcher);
        if stats.total == 0 {
            return Maneuver::ALL[rng.random_range(0..3)];
        }
        let mut best = 0;
        for j in 1..3 {
            if stats.n[j] > stats.n[best] {
                best = j;
            }
        }
        Maneuver::ALL[best]
    }
}

/// Full tree-search tactic: grow a tree from `root` and return the
/// searcher's recommended maneuver.
pub fn search<R: Rng + ?Sized>(
    root: &GameState,
    searcher: Player,
    cfg: &SearchConfig,
    gp: &GameParams,
    rng: &mut R,
) -> Result<Maneuver, SearchError> {
    let tree = SearchTree::grow(root, cfg, gp, rng)?;
    Ok(tree.recommend(searcher, rng))
}

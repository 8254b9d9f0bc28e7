use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use super::{Budget, SearchOutcome, Tracker, Walker};
use crate::env::{Action, EnvConfig};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MctsConfig {
    /// Full-episode simulations before each real move.
    pub simulations: u32,
    /// Weight of the Dirichlet noise added to the uniform prior.
    pub dirichlet_scale: f64,
    pub dirichlet_alpha: f64,
    /// Only shapes the reported visit policy; real moves are greedy.
    pub temperature: f64,
    pub c_puct: f64,
}

impl Default for MctsConfig {
    fn default() -> Self {
        MctsConfig { simulations: 100, dirichlet_scale: 0.03, dirichlet_alpha: 0.25, temperature: 1.5, c_puct: 1.0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MctsStats {
    /// Simulations run before each real move that was actually played.
    pub simulations_per_move: Vec<u32>,
    /// Root visit counts added by those simulations, per real move.
    pub root_visits_per_move: Vec<u32>,
    /// Extremes over every back-propagated value.
    pub min_value: f64,
    pub max_value: f64,
    /// Returns that fell outside `[r_min, 0]` and had to be clamped.
    pub clamped: u64,
    /// Temperature-shaped visit distribution at the root of each real move.
    pub policies: Vec<Vec<f64>>,
}

/// Maps a return in `[r_min, 0]` to `[-1, 1]`, reading `r_min` as a magnitude.
pub fn normalize_return(r: f64, r_min: f64) -> f64 {
    2.0 * r / r_min.abs() + 1.0
}

#[derive(Clone, Debug)]
struct Edge {
    action: Action,
    prior: f64,
    visits: u32,
    value: f64,
    child: Option<usize>,
}

#[derive(Clone, Debug, Default)]
struct Node {
    visits: u32,
    edges: Vec<Edge>,
    expanded: bool,
}

struct Search {
    cfg: MctsConfig,
    nodes: Vec<Node>,
    rng: ChaCha8Rng,
    r_min: f64,
    stats: MctsStats,
}

impl Search {
    /// Uniform prior plus scaled Dirichlet noise, renormalized.
    fn noisy_prior(&mut self, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![1.0];
        }
        let gamma = Gamma::new(self.cfg.dirichlet_alpha, 1.0).expect("positive alpha");
        let g: Vec<f64> = (0..n).map(|_| gamma.sample(&mut self.rng)).collect();
        let total: f64 = g.iter().sum();
        let scale = self.cfg.dirichlet_scale;
        g.iter()
            .map(|x| {
                let noise = if total > 0.0 { x / total } else { 1.0 / n as f64 };
                (1.0 / n as f64 + scale * noise) / (1.0 + scale)
            })
            .collect()
    }

    fn expand(&mut self, node: usize, w: &Walker) {
        let legal = w.env.legal_actions().to_vec();
        let prior = self.noisy_prior(legal.len());
        let n = &mut self.nodes[node];
        n.edges = legal
            .into_iter()
            .zip(prior)
            .map(|(action, prior)| Edge { action, prior, visits: 0, value: 0.0, child: None })
            .collect();
        n.expanded = true;
    }

    fn select(&self, node: usize) -> usize {
        let n = &self.nodes[node];
        let sqrt_n = (n.visits as f64).sqrt();
        let score = |e: &Edge| {
            let q = e.value / (1.0 + e.visits as f64);
            q + self.cfg.c_puct * e.prior * sqrt_n / (1.0 + e.visits as f64)
        };
        let mut best = 0;
        for (k, e) in n.edges.iter().enumerate().skip(1) {
            if score(e) > score(&n.edges[best]) {
                best = k;
            }
        }
        best
    }

    fn rollout_action(&mut self, w: &Walker) -> Action {
        let legal = w.env.legal_actions();
        let prior = self.noisy_prior(legal.len());
        let mut u = self.rng.random::<f64>();
        for (a, p) in legal.iter().zip(&prior) {
            if u < *p {
                return *a;
            }
            u -= p;
        }
        *legal.last().expect("running states have legal actions")
    }

    /// One full-episode simulation from `root`. Returns false when the budget
    /// ran out before the episode finished; nothing is backed up then.
    fn simulate(&mut self, tracker: &mut Tracker, root: usize, real: &Walker) -> Result<bool> {
        let mut w = real.clone();
        let mut node = root;
        let mut path: Vec<(usize, usize)> = vec![];
        while !w.env.is_done() {
            if !self.nodes[node].expanded {
                self.expand(node, &w);
                break;
            }
            if tracker.exhausted() {
                return Ok(false);
            }
            let e = self.select(node);
            tracker.step(&mut w, self.nodes[node].edges[e].action)?;
            path.push((node, e));
            node = match self.nodes[node].edges[e].child {
                Some(c) => c,
                None => {
                    self.nodes.push(Node::default());
                    let c = self.nodes.len() - 1;
                    self.nodes[node].edges[e].child = Some(c);
                    c
                }
            };
        }
        while !w.env.is_done() {
            if tracker.exhausted() {
                return Ok(false);
            }
            let a = self.rollout_action(&w);
            tracker.step(&mut w, a)?;
        }
        let raw = normalize_return(w.env.state().final_value.expect("finished"), self.r_min);
        let value = raw.clamp(-1.0, 1.0);
        if value != raw {
            self.stats.clamped += 1;
        }
        self.stats.min_value = self.stats.min_value.min(value);
        self.stats.max_value = self.stats.max_value.max(value);
        self.nodes[node].visits += 1;
        for (n, e) in path {
            self.nodes[n].visits += 1;
            let edge = &mut self.nodes[n].edges[e];
            edge.visits += 1;
            edge.value += value;
        }
        Ok(true)
    }

    fn policy(&self, node: usize) -> Vec<f64> {
        let t = self.cfg.temperature;
        let w: Vec<f64> = self.nodes[node].edges.iter().map(|e| (e.visits as f64).powf(1.0 / t)).collect();
        let total: f64 = w.iter().sum();
        w.iter().map(|x| if total > 0.0 { x / total } else { 0.0 }).collect()
    }
}

pub fn run_mcts(config: Arc<EnvConfig>, budget: Budget, cfg: MctsConfig) -> Result<SearchOutcome> {
    run_mcts_with_stats(config, budget, cfg).map(|(o, _)| o)
}

/// Episodes of greedy real moves, each preceded by `cfg.simulations`
/// simulations. The tree lives for one real episode.
pub fn run_mcts_with_stats(config: Arc<EnvConfig>, budget: Budget, cfg: MctsConfig) -> Result<(SearchOutcome, MctsStats)> {
    let r_min = config.penalty();
    let mut tracker = Tracker::new(config, budget)?;
    let mut s = Search {
        cfg,
        nodes: vec![],
        rng: ChaCha8Rng::seed_from_u64(budget.seed),
        r_min,
        stats: MctsStats { min_value: f64::INFINITY, max_value: f64::NEG_INFINITY, ..Default::default() },
    };
    'episodes: while !tracker.exhausted() {
        let mut real = tracker.reset()?;
        s.nodes = vec![Node::default()];
        let mut root = 0;
        while !real.env.is_done() {
            let before = s.nodes[root].visits;
            for _ in 0..cfg.simulations {
                if !s.simulate(&mut tracker, root, &real)? {
                    break 'episodes;
                }
            }
            if !s.nodes[root].expanded {
                s.expand(root, &real);
            }
            if tracker.exhausted() {
                break 'episodes;
            }
            s.stats.simulations_per_move.push(cfg.simulations);
            s.stats.root_visits_per_move.push(s.nodes[root].visits - before);
            s.stats.policies.push(s.policy(root));
            let edges = &s.nodes[root].edges;
            let mut best = 0;
            for (k, e) in edges.iter().enumerate() {
                if e.visits > edges[best].visits {
                    best = k;
                }
            }
            tracker.step(&mut real, edges[best].action)?;
            root = match s.nodes[root].edges[best].child {
                Some(c) => c,
                None => {
                    s.nodes.push(Node::default());
                    let c = s.nodes.len() - 1;
                    s.nodes[root].edges[best].child = Some(c);
                    c
                }
            };
        }
    }
    Ok((tracker.finish(), s.stats))
}

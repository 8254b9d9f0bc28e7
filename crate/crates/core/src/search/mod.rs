//! Search strategies over the game, sharing one interaction budget and
//! best-pattern bookkeeping.

mod evo;
mod mcts;
mod random;
mod tree;

pub use evo::{run_evo, run_evo_with_stats, EvoConfig, EvoStats, EVO_SIGMAS};
pub use mcts::{normalize_return, run_mcts, run_mcts_with_stats, MctsConfig, MctsStats};
pub use random::run_random;
pub use tree::{run_bfts, run_dfts, TreeConfig};

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::env::{Action, Env, EnvConfig, StepOutcome};
use crate::error::{Error, Result};
use crate::pattern::{Board, Cell, CreaseGraph, Mode};

pub const DEFAULT_BUDGET: u64 = 500_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of `Env::step` calls.
    pub interactions: u64,
    pub seed: u64,
}

impl Budget {
    pub fn new(interactions: u64, seed: u64) -> Self {
        Budget { interactions, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestPattern {
    pub value: f64,
    pub actions: Vec<Action>,
    pub graph: CreaseGraph,
    pub angle: Option<f64>,
    /// Interactions spent when this pattern was first completed.
    pub found_at: u64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: BestPattern,
    pub interactions: u64,
    pub episodes: u64,
    pub wall: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Random,
    Dfts,
    Bfts,
    Mcts,
    Evo,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Random, Method::Dfts, Method::Bfts, Method::Mcts, Method::Evo];

    pub fn label(self) -> &'static str {
        match self {
            Method::Random => "rdm",
            Method::Dfts => "dfts",
            Method::Bfts => "bfts",
            Method::Mcts => "mcts",
            Method::Evo => "evo",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.label() == s.to_ascii_lowercase() || (s.eq_ignore_ascii_case("random") && *m == Method::Random))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown method {s}")))
    }
}

/// Runs `method` with its default settings.
pub fn run(method: Method, config: Arc<EnvConfig>, budget: Budget) -> Result<SearchOutcome> {
    match method {
        Method::Random => run_random(config, budget),
        Method::Dfts => run_dfts(config, budget, TreeConfig::default()),
        Method::Bfts => run_bfts(config, budget, TreeConfig::default()),
        Method::Mcts => run_mcts(config, budget, MctsConfig::default()),
        Method::Evo => run_evo(config, budget, EvoConfig::default()),
    }
}

/// An environment together with the actions that led to it.
#[derive(Clone, Debug)]
pub(crate) struct Walker {
    pub env: Env,
    pub actions: Vec<Action>,
}

impl Walker {
    pub fn value(&self) -> f64 {
        self.env.reward_sum()
    }
}

/// Budget accounting and incumbent tracking shared by every method.
pub(crate) struct Tracker {
    pub config: Arc<EnvConfig>,
    limit: u64,
    used: u64,
    episodes: u64,
    best: BestPattern,
    start: Instant,
}

impl Tracker {
    /// The incumbent starts as the seed pattern itself when it can be
    /// terminated right away; that evaluation is not charged to the budget.
    pub fn new(config: Arc<EnvConfig>, budget: Budget) -> Result<Self> {
        let (env, _) = Env::reset(config.clone())?;
        let mut best = BestPattern {
            value: f64::NEG_INFINITY,
            actions: vec![],
            graph: env.state().graph.clone(),
            angle: None,
            found_at: 0,
        };
        if env.legal_actions().contains(&Action::Terminate) {
            let mut probe = env;
            probe.step(Action::Terminate)?;
            best.value = probe.state().final_value.expect("terminated");
            best.actions = vec![Action::Terminate];
            best.angle = probe.state().best_angle;
        }
        Ok(Tracker { config, limit: budget.interactions, used: 0, episodes: 0, best, start: Instant::now() })
    }

    pub fn reset(&self) -> Result<Walker> {
        let (env, _) = Env::reset(self.config.clone())?;
        Ok(Walker { env, actions: vec![] })
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn best_value(&self) -> f64 {
        self.best.value
    }

    /// One charged interaction. Completed episodes are offered to the incumbent.
    pub fn step(&mut self, w: &mut Walker, action: Action) -> Result<StepOutcome> {
        debug_assert!(!self.exhausted());
        let out = w.env.step(action)?;
        self.used += 1;
        w.actions.push(action);
        if out.done {
            self.episodes += 1;
            let value = w.env.state().final_value.expect("finished episodes carry a value");
            if value > self.best.value {
                self.best = BestPattern {
                    value,
                    actions: w.actions.clone(),
                    graph: w.env.state().graph.clone(),
                    angle: w.env.state().best_angle,
                    found_at: self.used,
                };
            }
        }
        Ok(out)
    }

    pub fn finish(self) -> SearchOutcome {
        SearchOutcome { best: self.best, interactions: self.used, episodes: self.episodes, wall: self.start.elapsed() }
    }
}

/// Genome layout: `[0, 2d)` vertex selection as `(cell k, M-) -> 2k`,
/// `(cell k, M+) -> 2k + 1`; `[2d, 3d)` endpoints; `[3d, 4d)` sources;
/// `4d` is terminate, which lies outside the genome. `k` is the row-major
/// rank of the cell within the playable area.
#[derive(Clone, Debug)]
pub struct ActionIndexer {
    cells: Vec<Cell>,
    rank: HashMap<Cell, usize>,
}

impl ActionIndexer {
    pub fn new(board: &Board) -> Self {
        let cells = board.playable_area();
        let rank = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        ActionIndexer { cells, rank }
    }

    /// Playable area size `d`.
    pub fn playable(&self) -> usize {
        self.cells.len()
    }

    pub fn genome_len(&self) -> usize {
        4 * self.cells.len()
    }

    pub fn index(&self, action: &Action) -> Result<usize> {
        let d = self.cells.len();
        let k = |c: &Cell| self.rank.get(c).copied().ok_or(Error::OutOfBounds(c.i, c.j));
        Ok(match action {
            Action::SelectVertex { cell, mode } => 2 * k(cell)? + (*mode == Mode::Plus) as usize,
            Action::PlaceEndpoint { cell } => 2 * d + k(cell)?,
            Action::Source { cell } => 3 * d + k(cell)?,
            Action::Terminate => 4 * d,
        })
    }

    pub fn action(&self, index: usize) -> Result<Action> {
        let d = self.cells.len();
        let cell = |k: usize| self.cells[k];
        Ok(match index {
            i if i < 2 * d => {
                Action::SelectVertex { cell: cell(i / 2), mode: if i % 2 == 1 { Mode::Plus } else { Mode::Minus } }
            }
            i if i < 3 * d => Action::PlaceEndpoint { cell: cell(i - 2 * d) },
            i if i < 4 * d => Action::Source { cell: cell(i - 3 * d) },
            i if i == 4 * d => Action::Terminate,
            i => return Err(Error::InvalidConfig(format!("action index {i} beyond {}", 4 * d))),
        })
    }
}

pub fn action_index(action: &Action, board: &Board) -> Result<usize> {
    ActionIndexer::new(board).index(action)
}

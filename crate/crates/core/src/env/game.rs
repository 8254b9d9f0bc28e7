use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::config::{EnvConfig, SeedSpec};
use super::legal;
use super::Action;
use crate::error::{Error, Result};
use crate::kinematics::{reachable_prefix, FoldPlan, FoldedState};
use crate::objectives::FoldView;
use crate::pattern::{seed_from_graph, seed_single_crease, seed_square, Cell, CreaseKind, Reflection, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    SeedChoice,
    SelectVertex,
    /// Placing outgoing creases of `vertex`.
    PlaceEdge { vertex: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndReason {
    Terminated,
    NoLegalActions,
    StepCap,
    Unfoldable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Running,
    Done(EndReason),
}

/// Tracked driving angles with their alive flags and latest potentials.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleSet {
    pub angles: Vec<f64>,
    pub alive: Vec<bool>,
    pub potential: Vec<f64>,
}

impl AngleSet {
    fn new(angles: Vec<f64>) -> Self {
        let n = angles.len();
        AngleSet { angles, alive: vec![true; n], potential: vec![0.0; n] }
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn alive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.angles.len()).filter(|&i| self.alive[i])
    }
}

/// Folds of the last fully extended pattern, one per tracked angle.
#[derive(Clone, Debug)]
pub(crate) struct FoldCache {
    pub plan: FoldPlan,
    pub states: Vec<Option<FoldedState>>,
}

#[derive(Clone, Debug)]
pub struct GameState {
    pub graph: crate::pattern::CreaseGraph,
    pub phase: Phase,
    pub angles: AngleSet,
    /// Sum of all rewards emitted so far, including the reset reward.
    pub reward_sum: f64,
    pub steps: usize,
    pub status: Status,
    /// Objective value once the episode is over.
    pub final_value: Option<f64>,
    pub best_angle: Option<f64>,
    pub(crate) snapshot: Option<crate::pattern::CreaseGraph>,
    pub(crate) folds: Option<Arc<FoldCache>>,
    pub(crate) legal: Arc<Vec<Action>>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepOutcome {
    pub reward: f64,
    pub done: bool,
}

#[derive(Clone, Debug)]
pub struct Env {
    pub(crate) config: Arc<EnvConfig>,
    pub(crate) group: Arc<Vec<Reflection>>,
    pub(crate) playable: Arc<Vec<Cell>>,
    pub(crate) state: GameState,
}

impl Env {
    /// Fresh episode and the reset reward (the initial potential).
    pub fn reset(config: Arc<EnvConfig>) -> Result<(Env, f64)> {
        config.validate()?;
        let board = &config.board;
        let (graph, phase) = match &config.seed {
            SeedSpec::Square { half_size: Some(h) } => (seed_square(board, *h, board.center())?, Phase::SelectVertex),
            SeedSpec::Square { half_size: None } => (Default::default(), Phase::SeedChoice),
            SeedSpec::SingleCrease { p1, p2 } => (seed_single_crease(board, *p1, *p2)?, Phase::SelectVertex),
            SeedSpec::Graph(g) => (seed_from_graph(board, g.clone())?, Phase::SelectVertex),
        };
        if phase == Phase::SelectVertex {
            graph.validate(board)?;
        }
        let mut env = Env {
            group: Arc::new(board.group()),
            playable: Arc::new(board.playable_area()),
            state: GameState {
                graph,
                phase,
                angles: AngleSet::new(config.angles()),
                reward_sum: 0.0,
                steps: 0,
                status: Status::Running,
                final_value: None,
                best_angle: None,
                snapshot: None,
                folds: None,
                legal: Arc::new(vec![]),
            },
            config,
        };
        let mut r0 = 0.0;
        if phase == Phase::SelectVertex {
            r0 = env.refold().ok_or_else(|| Error::InvalidConfig("seed pattern does not fold".into()))?;
            env.state.reward_sum = r0;
        }
        env.state.legal = Arc::new(legal::compute(&env));
        Ok((env, r0))
    }

    pub fn config(&self) -> &EnvConfig {
        &self.config
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn is_done(&self) -> bool {
        self.state.status != Status::Running
    }

    pub fn legal_actions(&self) -> &[Action] {
        &self.state.legal
    }

    pub fn reward_sum(&self) -> f64 {
        self.state.reward_sum
    }

    /// Folded state of the current pattern at each alive angle.
    pub fn folds(&self) -> Vec<(f64, FoldView<'_>)> {
        let Some(cache) = self.state.folds.as_deref() else { return vec![] };
        self.state
            .angles
            .alive_indices()
            .filter_map(|i| {
                let s = cache.states[i].as_ref()?;
                Some((self.state.angles.angles[i], FoldView { graph: &self.state.graph, plan: &cache.plan, state: s }))
            })
            .collect()
    }

    pub(crate) fn orbit_vertices(&self, v: usize) -> Vec<usize> {
        let g = &self.state.graph;
        let c = g.vertices[v].cell;
        let mut out: Vec<usize> =
            self.group.iter().filter_map(|&r| g.vertex_at(self.config.board.apply(r, c))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Re-folds the pattern at every alive angle, killing angles the motion
    /// cannot reach. Returns the best potential change, or `None` when no
    /// angle survives.
    fn refold(&mut self) -> Option<f64> {
        let plan = FoldPlan::new(&self.state.graph, &self.config.board).ok()?;
        let angles = &mut self.state.angles;
        let alive: Vec<usize> = angles.alive_indices().collect();
        let values: Vec<f64> = alive.iter().map(|&i| angles.angles[i]).collect();
        let reach = reachable_prefix(&plan, &values, self.config.sweep_steps);
        let mut states = vec![None; angles.angles.len()];
        let mut best = f64::NEG_INFINITY;
        for (pos, &i) in alive.iter().enumerate() {
            let state = if pos < reach { plan.fold(values[pos]).ok() } else { None };
            let Some(state) = state else {
                angles.alive[i] = false;
                continue;
            };
            let phi = self.config.objective.potential(&FoldView { graph: &self.state.graph, plan: &plan, state: &state });
            best = best.max(phi - angles.potential[i]);
            angles.potential[i] = phi;
            states[i] = Some(state);
        }
        if angles.alive_count() == 0 {
            return None;
        }
        self.state.folds = Some(Arc::new(FoldCache { plan, states }));
        Some(best)
    }

    /// Best terminal value over alive angles; ties keep the smaller angle.
    fn terminal_value(&self) -> (f64, Option<f64>) {
        let objective = &self.config.objective;
        let mut folds: Vec<(f64, f64, FoldView)> =
            self.folds().into_iter().map(|(rho, view)| (objective.terminal_bound(&view), rho, view)).collect();
        // most promising first so the bound prunes the rest
        folds.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.total_cmp(&b.1)));
        let mut best: Option<(f64, f64)> = None;
        for (bound, rho, view) in folds {
            if let Some((value, angle)) = best {
                if bound < value || (bound == value && rho > angle) {
                    continue;
                }
            }
            let f = objective.terminal(&view);
            let better = match best {
                None => true,
                Some((value, angle)) => f > value || (f == value && rho < angle),
            };
            if better {
                best = Some((f, rho));
            }
        }
        match best {
            Some((value, angle)) => (value, Some(angle)),
            None => (self.config.penalty(), None),
        }
    }

    /// Ends the episode, rolling back an unfinished extension, and returns
    /// the reward that makes the episode return equal the final value.
    fn finish(&mut self, reason: EndReason) -> f64 {
        if let Some(g) = self.state.snapshot.take() {
            self.state.graph = g;
            self.state.phase = Phase::SelectVertex;
        }
        let (value, angle) = match reason {
            EndReason::Unfoldable => (self.config.penalty(), None),
            _ => self.terminal_value(),
        };
        let r = value - self.state.reward_sum;
        self.state.reward_sum += r;
        self.state.final_value = Some(value);
        self.state.best_angle = angle;
        self.state.status = Status::Done(reason);
        self.state.legal = Arc::new(vec![]);
        r
    }

    /// Completes a graph change: refold, or roll back and end.
    fn settle(&mut self) -> (f64, bool) {
        match self.refold() {
            Some(r) => {
                self.state.snapshot = None;
                self.state.reward_sum += r;
                (r, false)
            }
            None => (self.finish(EndReason::Unfoldable), true),
        }
    }

    pub fn step(&mut self, action: Action) -> Result<StepOutcome> {
        if self.is_done() {
            return Err(Error::IllegalAction("episode is over".into()));
        }
        if !self.state.legal.contains(&action) {
            return Err(Error::IllegalAction(format!("{action:?} in phase {:?}", self.state.phase)));
        }
        self.state.steps += 1;
        let board = &self.config.board;
        let (mut reward, mut done) = (0.0, false);
        match (self.state.phase, action) {
            (Phase::SeedChoice, Action::PlaceEndpoint { cell }) => {
                let center = board.center();
                self.state.graph = seed_square(board, center.i - cell.i, center)?;
                self.state.phase = Phase::SelectVertex;
                (reward, done) = self.settle();
            }
            (Phase::SelectVertex, Action::SelectVertex { cell, mode }) => {
                let v = self.state.graph.vertex_at(cell).ok_or_else(|| Error::IllegalAction("no vertex".into()))?;
                self.state.snapshot = Some(self.state.graph.clone());
                for u in self.orbit_vertices(v) {
                    self.state.graph.vertices[u].mode = Some(mode);
                }
                self.state.phase = Phase::PlaceEdge { vertex: v };
            }
            (Phase::SelectVertex, Action::Source { cell }) => {
                self.state.snapshot = Some(self.state.graph.clone());
                for c in board.reflect_action(cell) {
                    self.state.graph.add_vertex(c, VertexKind::Source)?;
                }
                (reward, done) = self.settle();
            }
            (Phase::SelectVertex, Action::Terminate) => {
                reward = self.finish(EndReason::Terminated);
                done = true;
            }
            (Phase::PlaceEdge { vertex }, Action::PlaceEndpoint { cell }) => {
                let pairs = legal::endpoint_plan(self, vertex, cell)
                    .ok_or_else(|| Error::IllegalAction(format!("endpoint {cell:?}")))?;
                let g = &mut self.state.graph;
                for (a, b) in pairs {
                    let from = g.vertex_at(a).expect("orbit vertex exists");
                    let to = match g.vertex_at(b) {
                        Some(w) => w,
                        None => g.add_vertex(b, VertexKind::Interior)?,
                    };
                    g.add_crease(from, to, CreaseKind::Folded)?;
                }
                if g.out_degree(vertex) == 3 {
                    for u in self.orbit_vertices(vertex) {
                        self.state.graph.vertices[u].extended = true;
                    }
                    self.state.phase = Phase::SelectVertex;
                    (reward, done) = self.settle();
                }
            }
            _ => return Err(Error::IllegalAction(format!("{action:?}"))),
        }
        if !done {
            if self.state.steps >= self.config.step_cap {
                reward += self.finish(EndReason::StepCap);
                done = true;
            } else {
                let legal = legal::compute(self);
                if legal.is_empty() {
                    reward += self.finish(EndReason::NoLegalActions);
                    done = true;
                } else {
                    self.state.legal = Arc::new(legal);
                }
            }
        }
        Ok(StepOutcome { reward, done })
    }
}

impl Env {
    pub fn observation(&self) -> super::Observation {
        super::encode_observation(&self.state, &self.config.board)
    }
}

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kinematics::{reachable_prefix, FoldPlan, DEFAULT_MOTION_STEPS};
use crate::objectives::Objective;
use crate::pattern::{Board, Cell, CreaseGraph};

pub const DEFAULT_ANGLE_COUNT: usize = 10;
pub const DEFAULT_STEP_CAP: usize = 512;

#[derive(Clone, Debug)]
pub enum SeedSpec {
    /// Four sources on a square around the board center; `None` lets the
    /// agent pick the size with its first action.
    Square { half_size: Option<i32> },
    SingleCrease { p1: Cell, p2: Cell },
    Graph(CreaseGraph),
}

#[derive(Clone, Debug)]
pub struct EnvConfig {
    pub board: Board,
    pub seed: SeedSpec,
    pub objective: Arc<dyn Objective>,
    pub rho_max: f64,
    pub angle_count: usize,
    /// Track this single driving angle instead of the evenly spaced set.
    pub fixed_rho: Option<f64>,
    pub sweep_steps: usize,
    pub allow_sources: bool,
    /// Return of an episode that ends unfoldable; defaults to minus the board diagonal.
    pub r_min: Option<f64>,
    pub step_cap: usize,
}

impl EnvConfig {
    pub fn new(board: Board, seed: SeedSpec, objective: Arc<dyn Objective>) -> Self {
        EnvConfig {
            board,
            seed,
            objective,
            rho_max: PI,
            angle_count: DEFAULT_ANGLE_COUNT,
            fixed_rho: None,
            sweep_steps: DEFAULT_MOTION_STEPS,
            allow_sources: false,
            r_min: None,
            step_cap: DEFAULT_STEP_CAP,
        }
    }

    pub fn penalty(&self) -> f64 {
        self.r_min.unwrap_or(-self.board.diagonal())
    }

    /// Tracked driving angles, ascending.
    pub fn angles(&self) -> Vec<f64> {
        match self.fixed_rho {
            Some(r) => vec![r],
            None => (1..=self.angle_count).map(|k| self.rho_max * k as f64 / self.angle_count as f64).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho_max > 0.0 && self.rho_max <= PI) {
            return Err(Error::InvalidConfig(format!("rho_max {} outside (0, pi]", self.rho_max)));
        }
        if self.angle_count == 0 || self.sweep_steps == 0 || self.step_cap == 0 {
            return Err(Error::InvalidConfig("angle count, sweep steps and step cap must be positive".into()));
        }
        if let Some(r) = self.fixed_rho {
            if !(r > 0.0 && r < PI + 1e-12) {
                return Err(Error::InvalidConfig(format!("fixed driving angle {r} outside (0, pi]")));
            }
        }
        if self.penalty() >= 0.0 {
            return Err(Error::InvalidConfig("r_min must be negative".into()));
        }
        Ok(())
    }
}

/// Largest of `count` evenly spaced angles up to `rho_max` that `graph` reaches
/// without collision.
pub fn max_admissible_angle(board: &Board, graph: &CreaseGraph, rho_max: f64, count: usize) -> Result<f64> {
    let plan = FoldPlan::new(graph, board)?;
    let angles: Vec<f64> = (1..=count).map(|k| rho_max * k as f64 / count as f64).collect();
    let n = reachable_prefix(&plan, &angles, DEFAULT_MOTION_STEPS);
    if n == 0 {
        return Err(Error::InvalidConfig("seed pattern does not fold".into()));
    }
    Ok(angles[n - 1])
}

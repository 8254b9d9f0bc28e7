//! Branch-and-bound tree searches. Both rely on every shaped reward being
//! non-positive, so a node whose reward trace already sums below the best
//! return cannot lead to anything better and is cut.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Budget, SearchOutcome, Tracker, Walker};
use crate::env::{Action, EnvConfig};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeConfig {
    /// Children sampled per node; `None` expands every legal action.
    pub branch_cap: Option<usize>,
    /// The budget is split evenly over this many fresh searches. The best
    /// return carries over between them.
    pub restarts: usize,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig { branch_cap: Some(10), restarts: 10 }
    }
}

impl TreeConfig {
    pub fn exhaustive() -> Self {
        TreeConfig { branch_cap: None, restarts: 1 }
    }
}

fn require_bounded(config: &EnvConfig) -> Result<()> {
    if !config.objective.non_positive_rewards() {
        return Err(Error::UnsupportedObjective(format!(
            "{} does not guarantee non-positive rewards, which pruning needs",
            config.objective.name()
        )));
    }
    Ok(())
}

fn sample_children(w: &Walker, cap: Option<usize>, rng: &mut ChaCha8Rng) -> Vec<Action> {
    let mut acts = w.env.legal_actions().to_vec();
    acts.shuffle(rng);
    if let Some(cap) = cap {
        acts.truncate(cap);
    }
    acts
}

/// Runs `search` once per restart until the budget is spent. A search that
/// returns `true` explored its whole tree, which ends an uncapped run early.
fn with_restarts(
    config: Arc<EnvConfig>,
    budget: Budget,
    tree: TreeConfig,
    mut search: impl FnMut(&mut Tracker, u64, &mut ChaCha8Rng) -> Result<bool>,
) -> Result<SearchOutcome> {
    require_bounded(&config)?;
    let mut tracker = Tracker::new(config, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let share = budget.interactions.div_ceil(tree.restarts.max(1) as u64).max(1);
    while !tracker.exhausted() {
        let limit = (tracker.used() + share).min(budget.interactions);
        let complete = search(&mut tracker, limit, &mut rng)?;
        if complete && tree.branch_cap.is_none() {
            break;
        }
    }
    Ok(tracker.finish())
}

/// Depth-first: descend along random children, backing up at leaves, at
/// pruned nodes and once a node has tried its quota of children.
pub fn run_dfts(config: Arc<EnvConfig>, budget: Budget, tree: TreeConfig) -> Result<SearchOutcome> {
    with_restarts(config, budget, tree, |tracker, limit, rng| {
        let root = tracker.reset()?;
        let untried = sample_children(&root, tree.branch_cap, rng);
        let mut stack = vec![(root, untried)];
        while let Some((node, untried)) = stack.last_mut() {
            if tracker.used() >= limit {
                return Ok(false);
            }
            let Some(a) = untried.pop() else {
                stack.pop();
                continue;
            };
            let mut child = node.clone();
            tracker.step(&mut child, a)?;
            if child.env.is_done() || child.value() < tracker.best_value() {
                continue;
            }
            let untried = sample_children(&child, tree.branch_cap, rng);
            stack.push((child, untried));
        }
        Ok(true)
    })
}

/// Breadth-first descent: evaluate every sampled child of a node, then visit
/// them from the highest reward trace down.
pub fn run_bfts(config: Arc<EnvConfig>, budget: Budget, tree: TreeConfig) -> Result<SearchOutcome> {
    with_restarts(config, budget, tree, |tracker, limit, rng| {
        let expand = |tracker: &mut Tracker, w: &Walker, rng: &mut ChaCha8Rng| -> Result<Option<VecDeque<Walker>>> {
            let mut children = vec![];
            for a in sample_children(w, tree.branch_cap, rng) {
                if tracker.used() >= limit {
                    return Ok(None);
                }
                let mut child = w.clone();
                tracker.step(&mut child, a)?;
                if !child.env.is_done() {
                    children.push(child);
                }
            }
            children.sort_by(|a, b| b.value().total_cmp(&a.value()));
            Ok(Some(children.into()))
        };
        let root = tracker.reset()?;
        let Some(first) = expand(tracker, &root, rng)? else { return Ok(false) };
        let mut stack = vec![first];
        while let Some(children) = stack.last_mut() {
            let Some(next) = children.pop_front() else {
                stack.pop();
                continue;
            };
            if next.value() < tracker.best_value() {
                continue;
            }
            match expand(tracker, &next, rng)? {
                Some(c) => stack.push(c),
                None => return Ok(false),
            }
        }
        Ok(true)
    })
}

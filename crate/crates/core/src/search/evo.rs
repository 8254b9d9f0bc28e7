use std::collections::HashSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{ActionIndexer, Budget, SearchOutcome, Tracker};
use crate::env::{Action, EnvConfig};
use crate::error::Result;

pub const EVO_SIGMAS: [f64; 3] = [0.1, 0.5, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvoConfig {
    pub population: usize,
    /// Share of the population kept as parents, and also the share refilled
    /// with newcomers.
    pub parent_fraction: f64,
    /// Parent mutation, first offspring and second offspring noise.
    pub sigmas: [f64; 3],
}

impl Default for EvoConfig {
    fn default() -> Self {
        EvoConfig { population: 128, parent_fraction: 0.25, sigmas: EVO_SIGMAS }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvoStats {
    pub genome_len: usize,
    pub parents: usize,
    /// Population size at the start of every generation.
    pub population_sizes: Vec<usize>,
    /// Best fitness of each fully evaluated generation.
    pub generation_best: Vec<f64>,
}

/// Terminate sits outside the genome and is always valued zero.
const TERMINATE_VALUE: f64 = 0.0;

fn gaussian(rng: &mut ChaCha8Rng, n: usize, sigma: f64) -> Vec<f64> {
    (0..n).map(|_| sigma * Distribution::<f64>::sample(&StandardNormal, rng)).collect()
}

fn perturbed(q: &[f64], rng: &mut ChaCha8Rng, sigma: f64) -> Vec<f64> {
    q.iter().zip(gaussian(rng, q.len(), sigma)).map(|(a, b)| a + b).collect()
}

/// Greedy choice among the legal actions; ties go to the lowest index.
fn choose(q: &[f64], legal: &[Action], indexer: &ActionIndexer) -> Result<Action> {
    let mut best: Option<(f64, usize, Action)> = None;
    for &a in legal {
        let k = indexer.index(&a)?;
        let v = if a == Action::Terminate { TERMINATE_VALUE } else { q[k] };
        if best.is_none_or(|(bv, bk, _)| v > bv || (v == bv && k < bk)) {
            best = Some((v, k, a));
        }
    }
    Ok(best.expect("running states have legal actions").2)
}

pub fn run_evo(config: Arc<EnvConfig>, budget: Budget, cfg: EvoConfig) -> Result<SearchOutcome> {
    run_evo_with_stats(config, budget, cfg).map(|(o, _)| o)
}

/// Generational loop: evaluate, rank, keep the top share as parents, mutate
/// them, add two noisier copies of each, and refill with newcomers. Stops when
/// the budget is spent; an agent cut off mid-episode is not scored.
pub fn run_evo_with_stats(config: Arc<EnvConfig>, budget: Budget, cfg: EvoConfig) -> Result<(SearchOutcome, EvoStats)> {
    let indexer = ActionIndexer::new(&config.board);
    let m = indexer.genome_len();
    let parents = ((cfg.population as f64 * cfg.parent_fraction).round() as usize).max(1);
    let mut tracker = Tracker::new(config, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut stats = EvoStats { genome_len: m, parents, ..Default::default() };
    let mut population: Vec<Vec<f64>> = (0..cfg.population).map(|_| gaussian(&mut rng, m, 1.0)).collect();
    'generations: loop {
        stats.population_sizes.push(population.len());
        let mut seen: HashSet<Vec<Action>> = HashSet::new();
        let mut fitness = Vec::with_capacity(population.len());
        for q in &population {
            let mut w = tracker.reset()?;
            while !w.env.is_done() {
                if tracker.exhausted() {
                    break 'generations;
                }
                let a = choose(q, w.env.legal_actions(), &indexer)?;
                tracker.step(&mut w, a)?;
            }
            let value = w.env.state().final_value.expect("finished");
            fitness.push(if seen.insert(w.actions) { value } else { f64::NEG_INFINITY });
        }
        stats.generation_best.push(fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        let mut order: Vec<usize> = (0..population.len()).collect();
        // stable, so equal fitness keeps the lower agent index first
        order.sort_by(|&a, &b| fitness[b].total_cmp(&fitness[a]));
        let [s1, s2, s3] = cfg.sigmas;
        let mutated: Vec<Vec<f64>> = order[..parents].iter().map(|&k| perturbed(&population[k], &mut rng, s1)).collect();
        let mut next = mutated.clone();
        for q in &mutated {
            next.push(perturbed(q, &mut rng, s2));
            next.push(perturbed(q, &mut rng, s3));
        }
        while next.len() < cfg.population {
            next.push(gaussian(&mut rng, m, 1.0));
        }
        next.truncate(cfg.population);
        population = next;
    }
    Ok((tracker.finish(), stats))
}

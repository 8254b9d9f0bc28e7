use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Budget, SearchOutcome, Tracker};
use crate::env::EnvConfig;
use crate::error::Result;

/// Uniform random play over legal actions until the budget runs out. An
/// episode cut short by the budget is discarded.
pub fn run_random(config: Arc<EnvConfig>, budget: Budget) -> Result<SearchOutcome> {
    let mut tracker = Tracker::new(config, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    while !tracker.exhausted() {
        let mut w = tracker.reset()?;
        while !w.env.is_done() && !tracker.exhausted() {
            let legal = w.env.legal_actions();
            let a = legal[rng.random_range(0..legal.len())];
            tracker.step(&mut w, a)?;
        }
    }
    Ok(tracker.finish())
}

use std::sync::Arc;

use rand::Rng;
use rigid_origami::env::{encode_observation, replay_trace, Action, EndReason, Env, EnvConfig, Phase, Status};
use rigid_origami::pattern::{CreaseGraph, CreaseKind};

#[derive(Debug)]
pub struct Episode {
    pub actions: Vec<Action>,
    pub rewards: Vec<f64>,
    pub reason: EndReason,
    pub final_value: f64,
    pub env: Env,
}

/// Structural checks that must hold for a partially extended graph.
fn check_partial(env: &Env, g: &CreaseGraph) {
    assert!(g.first_crossing().is_none(), "creases cross");
    assert!(g.topological_order().is_some(), "cycle");
    for v in 0..g.vertices.len() {
        assert!(g.out_degree(v) <= 3, "out-degree above 3 at {v}");
    }
    if let Some(cl) = env.config().board.max_crease_length {
        for c in g.creases.iter().filter(|c| c.kind == CreaseKind::Folded) {
            assert!(c.planar_length <= cl + 1e-9, "crease of length {} above {cl}", c.planar_length);
        }
    }
}

/// Plays one uniformly random episode, asserting every environment invariant
/// along the way.
pub fn random_episode(config: Arc<EnvConfig>, rng: &mut impl Rng) -> Episode {
    let shape = config.objective.non_positive_rewards();
    let board = config.board.clone();
    let (mut env, r0) = Env::reset(config).unwrap();
    let mut actions = vec![];
    let mut rewards = vec![r0];
    let mut stable = env.state().graph.clone();
    while !env.is_done() {
        let legal = env.legal_actions().to_vec();
        assert!(!legal.is_empty(), "running state without legal actions");
        let a = legal[rng.random_range(0..legal.len())];
        let alive_before = env.state().angles.alive.clone();
        let out = env.step(a).unwrap();
        actions.push(a);
        rewards.push(out.reward);
        assert_eq!(out.done, env.is_done());
        if shape {
            assert!(out.reward <= 1e-12, "positive shaped reward {}", out.reward);
        }
        for (before, after) in alive_before.iter().zip(&env.state().angles.alive) {
            assert!(*before || !*after, "dead angle revived");
        }
        let g = &env.state().graph;
        check_partial(&env, g);
        if env.state().phase == Phase::SelectVertex {
            g.validate(&board).unwrap();
            if !env.is_done() {
                stable = g.clone();
            }
        }
    }
    let Status::Done(reason) = env.state().status else { unreachable!() };
    let final_value = env.state().final_value.unwrap();
    let total: f64 = rewards.iter().sum();
    assert!((total - final_value).abs() <= 1e-9, "sum {total} vs final {final_value}");
    assert!((env.reward_sum() - total).abs() <= 1e-9);
    if reason == EndReason::Unfoldable {
        assert_eq!(final_value, env.config().penalty());
        assert_eq!(env.state().graph, stable, "rollback did not restore the last foldable graph");
    }
    Episode { actions, rewards, reason, final_value, env }
}

/// Replays an episode and demands bit-identical rewards, flags and final observation.
pub fn check_replay(config: Arc<EnvConfig>, ep: &Episode) {
    let (env, trace) = replay_trace(config, &ep.actions).unwrap();
    assert_eq!(trace.len(), ep.rewards.len());
    for (rec, r) in trace.iter().zip(&ep.rewards) {
        assert_eq!(rec.reward.to_bits(), r.to_bits());
    }
    assert!(trace.last().unwrap().done);
    assert_eq!(env.state().graph, ep.env.state().graph);
    assert_eq!(env.state().final_value.map(f64::to_bits), Some(ep.final_value.to_bits()));
    let board = &env.config().board;
    assert_eq!(encode_observation(env.state(), board), encode_observation(ep.env.state(), board));
}

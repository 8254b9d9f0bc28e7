//! Line-delimited episode traces.
//!
//! Each line is one JSON object: `{"step":0,"action":null,"reward":-0.3,"alive":10,"done":false}`.
//! Step 0 is the reset; `action` is the serialized [`Action`] for later steps.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Action, EnvConfig};
use super::game::Env;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub action: Option<Action>,
    pub reward: f64,
    pub alive: usize,
    pub done: bool,
}

impl TraceRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("trace records serialize")
    }
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(format!("trace: {e}"))))
        .collect()
}

/// Replays `actions` from reset, returning the trace it produces.
pub fn replay_trace(config: Arc<EnvConfig>, actions: &[Action]) -> Result<(Env, Vec<TraceRecord>)> {
    let (mut env, r0) = Env::reset(config)?;
    let mut out = vec![TraceRecord { step: 0, action: None, reward: r0, alive: env.state().angles.alive_count(), done: false }];
    for (n, &a) in actions.iter().enumerate() {
        let s = env.step(a)?;
        out.push(TraceRecord { step: n + 1, action: Some(a), reward: s.reward, alive: env.state().angles.alive_count(), done: s.done });
    }
    Ok((env, out))
}

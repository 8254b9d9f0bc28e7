//! The origami game: phases, masking, rewards and rollback.

mod config;
mod game;
mod legal;
mod observe;
mod trace;

pub use config::{max_admissible_angle, EnvConfig, SeedSpec, DEFAULT_ANGLE_COUNT, DEFAULT_STEP_CAP};
pub use game::{AngleSet, EndReason, Env, GameState, Phase, Status, StepOutcome};
pub use observe::{encode_observation, Observation};
pub use trace::{parse_trace, replay_trace, TraceRecord};

use serde::{Deserialize, Serialize};

use crate::pattern::{Cell, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Action {
    /// Pick the vertex on `cell` for extension with rigid body mode `mode`.
    SelectVertex { cell: Cell, mode: Mode },
    /// Next outgoing crease endpoint, or the corner of an agent-sized seed square.
    PlaceEndpoint { cell: Cell },
    /// New source vertex.
    Source { cell: Cell },
    Terminate,
}

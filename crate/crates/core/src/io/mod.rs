//! Experiment runner, configuration and exporters.

mod config;
mod experiment;
mod fold;
mod obj;
mod results;
mod svg;

pub use config::{ExperimentConfig, SeedPattern, DEFAULT_FRAMES, PRESETS};
pub use experiment::{export_best, run_experiment, run_experiment_with, ExperimentReport, RESULTS_FILE};
pub use fold::{assignments, export_fold, import_fold, Assignment, FoldFile, FOLD_CREATOR, FOLD_SPEC};
pub use obj::{export_obj_sequence, first_frame_planar, frame_angles, render_obj, sequence_rigidity};
pub use results::{append_rows, read_rows, summarize, MeanStd, ResultRow};
pub use svg::{export_svg, render_svg};

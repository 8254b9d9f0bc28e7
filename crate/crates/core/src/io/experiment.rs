//! Runs every (method, seed) cell of an experiment and writes its artifacts.
//!
//! Layout of the output directory:
//! `config.txt` (the resolved settings), `results.csv` (one row per cell,
//! appended in cell order), and for the best pattern over all cells
//! `best.fold`, `best.svg`, `best.trace` (the line-delimited episode trace) and
//! `frames/frame_*.obj`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::sync::Arc;

use super::config::ExperimentConfig;
use super::fold::export_fold;
use super::obj::export_obj_sequence;
use super::results::{append_rows, ResultRow};
use super::svg::export_svg;
use crate::env::{replay_trace, EnvConfig};
use crate::error::Result;
use crate::kinematics::FoldPlan;
use crate::search::{run, BestPattern, Budget, Method, SearchOutcome};

pub const RESULTS_FILE: &str = "results.csv";

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub rows: Vec<ResultRow>,
    /// Best pattern over every cell, with the cell that found it.
    pub best: Option<(Method, u64, BestPattern)>,
    pub artifacts: Vec<PathBuf>,
}

fn row(cfg: &ExperimentConfig, method: Method, seed: u64, out: &SearchOutcome) -> ResultRow {
    ResultRow {
        target: cfg.target.clone(),
        method: method.label().into(),
        seed,
        budget: cfg.budget,
        best_return: out.best.value,
        interactions_to_best: out.best.found_at,
        interactions: out.interactions,
        episodes: out.episodes,
        wall_seconds: out.wall.as_secs_f64(),
    }
}

/// Single-threaded [`run_experiment_with`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    run_experiment_with(cfg, 1)
}

/// Spreads the cells over `jobs` worker threads. Rows reach `results.csv` in
/// cell order as soon as every earlier cell is done, so an error still leaves
/// the finished prefix on disk.
pub fn run_experiment_with(cfg: &ExperimentConfig, jobs: usize) -> Result<ExperimentReport> {
    std::fs::create_dir_all(&cfg.out)?;
    std::fs::write(cfg.out.join("config.txt"), cfg.to_kv())?;
    let env = cfg.env_config()?;
    let cells: Vec<(Method, u64)> = cfg.methods.iter().flat_map(|&m| cfg.seeds.iter().map(move |&s| (m, s))).collect();
    let results_path = cfg.out.join(RESULTS_FILE);
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Result<SearchOutcome>)>();
    let mut rows = Vec::with_capacity(cells.len());
    let mut best: Option<(Method, u64, BestPattern)> = None;
    let outcome: Result<()> = std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, cells.len().max(1)) {
            let tx = tx.clone();
            let (env, cells, next) = (env.clone(), &cells, &next);
            let budget = cfg.budget;
            scope.spawn(move || loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(&(method, seed)) = cells.get(k) else { break };
                if tx.send((k, run(method, env.clone(), Budget::new(budget, seed)))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending: BTreeMap<usize, SearchOutcome> = BTreeMap::new();
        for (k, res) in rx {
            let out = match res {
                Ok(o) => o,
                Err(e) => {
                    // stop handing out work; finished cells are already on disk
                    next.store(cells.len(), Ordering::SeqCst);
                    return Err(e);
                }
            };
            pending.insert(k, out);
            while let Some(out) = pending.remove(&rows.len()) {
                let (method, seed) = cells[rows.len()];
                let r = row(cfg, method, seed, &out);
                append_rows(&results_path, std::slice::from_ref(&r))?;
                rows.push(r);
                if best.as_ref().is_none_or(|(_, _, b)| out.best.value > b.value) {
                    best = Some((method, seed, out.best));
                }
            }
        }
        Ok(())
    });
    outcome?;
    let artifacts = match &best {
        Some((_, _, b)) => export_best(&env, b, cfg.frames, &cfg.out)?,
        None => vec![],
    };
    Ok(ExperimentReport { rows, best, artifacts })
}

/// FOLD, SVG, trace and OBJ frames of one pattern. The pattern is folded at
/// its best driving angle; without one only the flat drawing is written.
pub fn export_best(env: &Arc<EnvConfig>, best: &BestPattern, frames: usize, dir: &Path) -> Result<Vec<PathBuf>> {
    let board = &env.board;
    let state = match best.angle {
        Some(rho) => Some(FoldPlan::new(&best.graph, board)?.fold(rho)?),
        None => None,
    };
    let mut out = vec![dir.join("best.fold"), dir.join("best.svg"), dir.join("best.trace")];
    export_fold(&best.graph, board, state.as_ref(), &out[0])?;
    export_svg(&best.graph, board, state.as_ref(), &out[1])?;
    let (_, trace) = replay_trace(env.clone(), &best.actions)?;
    let lines: String = trace.iter().map(|r| r.to_line() + "\n").collect();
    std::fs::write(&out[2], lines)?;
    if let Some(rho) = best.angle {
        out.extend(export_obj_sequence(&best.graph, board, rho, frames, &dir.join("frames"))?);
    }
    Ok(out)
}

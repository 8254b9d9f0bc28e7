use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rigid_origami::io::{read_rows, run_experiment_with, summarize, ExperimentConfig, PRESETS};

#[derive(Parser)]
#[command(name = "rori", version, about = "Rigid-origami crease pattern search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a preset or config file, with flag overrides.
    Run(RunArgs),
    /// Print a preset as a config file.
    Preset { name: String },
    /// Mean and standard deviation per target and method of a results file.
    Summary { results: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// Config file in `key = value` form.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Preset (pyramid, cube, bowl, face, bucket, shelf, table, chair) or target name.
    #[arg(long)]
    target: Option<String>,
    /// Target mesh (OBJ) for `face` or custom targets.
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Comma separated: rdm, dfts, bfts, mcts, evo.
    #[arg(long)]
    method: Option<String>,
    /// Board size as WxH.
    #[arg(long)]
    board: Option<String>,
    /// Mirror axes: none, x, y, xy or a comma separated mix.
    #[arg(long)]
    symmetry: Option<String>,
    /// square:N, square:agent, crease:i1,j1,i2,j2 or chair.
    #[arg(long)]
    seed_pattern: Option<String>,
    /// Environment interactions per run.
    #[arg(long)]
    budget: Option<String>,
    /// `0,1,2` or `0..10`.
    #[arg(long)]
    seeds: Option<String>,
    /// Maximum crease length, or `inf`.
    #[arg(long)]
    cl_max: Option<String>,
    /// Largest driving angle in radians, or `pi`, `pi/2`.
    #[arg(long)]
    rho_max: Option<String>,
    /// Number of evenly spaced driving angles.
    #[arg(long)]
    angles: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Track only the largest angle the seed admits.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    fixed_rho: Option<String>,
    /// Allow the source action.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    allow_sources: Option<String>,
    /// Surface samples for shape targets.
    #[arg(long)]
    samples: Option<String>,
    /// OBJ frames for the best fold.
    #[arg(long)]
    frames: Option<String>,
    /// Worker threads over (method, seed) cells.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl RunArgs {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match (&self.config, &self.target) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                ExperimentConfig::parse(&text)?
            }
            (None, Some(t)) if PRESETS.contains(&t.as_str()) => ExperimentConfig::preset(t)?,
            (None, Some(t)) => ExperimentConfig::parse(&format!("target = {t}\n"))?,
            (None, None) => anyhow::bail!("give --config or --target"),
        };
        let mesh = self.mesh.as_ref().map(|p| p.display().to_string());
        let out = self.out.as_ref().map(|p| p.display().to_string());
        let overrides = [
            ("target", &self.target),
            ("mesh", &mesh),
            ("method", &self.method),
            ("board", &self.board),
            ("symmetry", &self.symmetry),
            ("seed_pattern", &self.seed_pattern),
            ("budget", &self.budget),
            ("seeds", &self.seeds),
            ("cl_max", &self.cl_max),
            ("rho_max", &self.rho_max),
            ("angles", &self.angles),
            ("out", &out),
            ("fixed_rho", &self.fixed_rho),
            ("allow_sources", &self.allow_sources),
            ("samples", &self.samples),
            ("frames", &self.frames),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, v).with_context(|| format!("--{}", key.replace('_', "-")))?;
            }
        }
        Ok(cfg)
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => {
            let cfg = args.resolve()?;
            eprintln!(
                "{}: {} x {} seeds, budget {}, output {}",
                cfg.target,
                cfg.methods.iter().map(|m| m.label()).collect::<Vec<_>>().join(","),
                cfg.seeds.len(),
                cfg.budget,
                cfg.out.display()
            );
            let report = run_experiment_with(&cfg, args.jobs)?;
            for r in &report.rows {
                println!(
                    "{}\t{}\tseed {}\tbest {:.6}\tat {}\t{:.1}s",
                    r.target, r.method, r.seed, r.best_return, r.interactions_to_best, r.wall_seconds
                );
            }
            if let Some((m, seed, best)) = &report.best {
                println!("best {:.6} ({} seed {seed}), artifacts in {}", best.value, m.label(), cfg.out.display());
            }
        }
        Command::Preset { name } => print!("{}", ExperimentConfig::preset(&name)?.to_kv()),
        Command::Summary { results } => {
            let rows = read_rows(&results)?;
            println!("target\tmethod\tn\tbest_mean\tbest_std\tto_best_mean\tto_best_std");
            for ((target, method), (best, when)) in summarize(&rows) {
                println!(
                    "{target}\t{method}\t{}\t{:.4}\t{:.4}\t{:.0}\t{:.0}",
                    best.n, best.mean, best.std, when.mean, when.std
                );
            }
        }
    }
    Ok(())
}

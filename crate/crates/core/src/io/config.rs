//! Experiment configuration: presets, a flat `key = value` file format, and
//! the translation into an environment.
//!
//! ```text
//! # pyramid, desk scale
//! target = pyramid
//! board = 9x9
//! symmetry = x,y
//! seed_pattern = square:2
//! cl_max = inf
//! method = rdm,dfts
//! budget = 100000
//! seeds = 0..3
//! out = runs/pyramid
//! ```
//!
//! Keys may use `-` or `_`. Unknown keys are rejected.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use crate::env::{max_admissible_angle, EnvConfig, SeedSpec, DEFAULT_ANGLE_COUNT};
use crate::error::{Error, Result};
use crate::objectives::{
    build_bowl, build_cube, build_pyramid, load_target_mesh, Bucket, Chair, Objective, ShapeObjective, Shelf, Table,
    DEFAULT_SAMPLE_COUNT, DEFAULT_SAMPLE_SEED,
};
use crate::pattern::{chair_seed, seed_single_crease, Board, Cell, Symmetry};
use crate::search::{Method, DEFAULT_BUDGET};

pub const PRESETS: [&str; 8] = ["pyramid", "cube", "bowl", "face", "bucket", "shelf", "table", "chair"];
pub const DEFAULT_FRAMES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedPattern {
    /// Square around the board center; `None` lets the agent choose its size.
    Square(Option<i32>),
    Crease(Cell, Cell),
    /// The fixed chair seed, which also fixes the board.
    Chair,
}

impl fmt::Display for SeedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedPattern::Square(Some(h)) => write!(f, "square:{h}"),
            SeedPattern::Square(None) => write!(f, "square:agent"),
            SeedPattern::Crease(a, b) => write!(f, "crease:{},{},{},{}", a.i, a.j, b.i, b.j),
            SeedPattern::Chair => write!(f, "chair"),
        }
    }
}

impl FromStr for SeedPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("seed pattern `{s}`"));
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        match kind.trim() {
            "square" => match arg.trim() {
                "agent" | "" => Ok(SeedPattern::Square(None)),
                h => Ok(SeedPattern::Square(Some(h.parse().map_err(|_| bad())?))),
            },
            "crease" => {
                let v: Vec<i32> = arg.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
                match v[..] {
                    [a, b, c, d] => Ok(SeedPattern::Crease(Cell::new(a, b), Cell::new(c, d))),
                    _ => Err(bad()),
                }
            }
            "chair" => Ok(SeedPattern::Chair),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Preset target or objective name.
    pub target: String,
    /// Target mesh for `face`, or for any other name not among the presets.
    pub mesh: Option<PathBuf>,
    pub board: (i32, i32),
    pub symmetry: Symmetry,
    pub seed_pattern: SeedPattern,
    pub cl_max: Option<f64>,
    pub rho_max: f64,
    pub angles: usize,
    /// Track only the largest driving angle the seed admits.
    pub fixed_rho: bool,
    pub allow_sources: bool,
    pub methods: Vec<Method>,
    pub budget: u64,
    pub seeds: Vec<u64>,
    pub out: PathBuf,
    /// Target and fold surface samples for shape objectives.
    pub samples: usize,
    /// OBJ frames exported for the best fold.
    pub frames: usize,
}

impl ExperimentConfig {
    pub fn preset(name: &str) -> Result<ExperimentConfig> {
        let base = ExperimentConfig {
            target: name.into(),
            mesh: None,
            board: (9, 9),
            symmetry: Symmetry::XY,
            seed_pattern: SeedPattern::Square(None),
            cl_max: None,
            rho_max: PI,
            angles: DEFAULT_ANGLE_COUNT,
            fixed_rho: false,
            allow_sources: false,
            methods: vec![Method::Random],
            budget: DEFAULT_BUDGET,
            seeds: (0..10).collect(),
            out: PathBuf::from("runs").join(name),
            samples: DEFAULT_SAMPLE_COUNT,
            frames: DEFAULT_FRAMES,
        };
        let abstract_board = |symmetry| ExperimentConfig { board: (13, 13), symmetry, methods: vec![Method::Evo], ..base.clone() };
        Ok(match name {
            "pyramid" => ExperimentConfig { seed_pattern: SeedPattern::Square(Some(2)), ..base },
            "cube" => ExperimentConfig { seed_pattern: SeedPattern::Square(Some(1)), cl_max: Some(2.0), ..base },
            "bowl" => ExperimentConfig { board: (25, 25), symmetry: Symmetry::XY_DIAG, cl_max: Some(2.9), ..base },
            "face" => ExperimentConfig {
                board: (25, 25),
                symmetry: Symmetry::Y,
                seed_pattern: SeedPattern::Crease(Cell::new(10, 12), Cell::new(14, 12)),
                cl_max: Some(2.9),
                methods: vec![Method::Evo],
                ..base
            },
            "bucket" | "table" => abstract_board(Symmetry::XY_DIAG),
            "shelf" => abstract_board(Symmetry::XY),
            "chair" => ExperimentConfig { seed_pattern: SeedPattern::Chair, fixed_rho: true, ..abstract_board(Symmetry::Y) },
            other => return Err(Error::InvalidConfig(format!("unknown preset `{other}`"))),
        })
    }

    /// Starts from the preset named by the file's `target` (when it names one)
    /// and applies every other key on top.
    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        let pairs = parse_pairs(text)?;
        let target = pairs
            .iter()
            .find(|(k, _)| k == "target")
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Parse("config has no `target`".into()))?;
        let mut cfg = if PRESETS.contains(&target.as_str()) {
            ExperimentConfig::preset(&target)?
        } else {
            ExperimentConfig { target: target.clone(), ..ExperimentConfig::preset("pyramid")? }
        };
        for (k, v) in &pairs {
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let bad = |what: &str| Error::Parse(format!("{key}: {what} `{v}`"));
        match key.trim().replace('-', "_").as_str() {
            "target" => self.target = v.to_string(),
            "mesh" => self.mesh = Some(PathBuf::from(v)),
            "board" => {
                let (w, h) = v.split_once(['x', 'X']).ok_or_else(|| bad("expected WxH, got"))?;
                self.board = (w.trim().parse().map_err(|_| bad("bad width in"))?, h.trim().parse().map_err(|_| bad("bad height in"))?);
            }
            "symmetry" => self.symmetry = Symmetry::parse(v)?,
            "seed_pattern" => self.seed_pattern = v.parse()?,
            "cl_max" => {
                self.cl_max = match v {
                    "inf" | "none" | "∞" => None,
                    x => Some(x.parse().map_err(|_| bad("bad length"))?),
                }
            }
            "rho_max" => self.rho_max = parse_angle(v).ok_or_else(|| bad("bad angle"))?,
            "angles" => self.angles = v.parse().map_err(|_| bad("bad count"))?,
            "fixed_rho" => self.fixed_rho = parse_bool(v).ok_or_else(|| bad("expected true/false, got"))?,
            "allow_sources" => self.allow_sources = parse_bool(v).ok_or_else(|| bad("expected true/false, got"))?,
            "method" | "methods" => {
                self.methods = v.split(',').map(|m| m.trim().parse()).collect::<Result<_>>()?;
            }
            "budget" => self.budget = v.replace('_', "").parse().map_err(|_| bad("bad budget"))?,
            "seeds" => self.seeds = parse_seeds(v).ok_or_else(|| bad("expected `0,1,2` or `0..10`, got"))?,
            "out" => self.out = PathBuf::from(v),
            "samples" => self.samples = v.parse().map_err(|_| bad("bad count"))?,
            "frames" => self.frames = v.parse().map_err(|_| bad("bad count"))?,
            other => return Err(Error::Parse(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// The same settings in the file format; `parse(to_kv())` is the identity.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| s.push_str(&format!("{k} = {v}\n"));
        put("target", self.target.clone());
        if let Some(m) = &self.mesh {
            put("mesh", m.display().to_string());
        }
        put("board", format!("{}x{}", self.board.0, self.board.1));
        put("symmetry", self.symmetry.label());
        put("seed_pattern", self.seed_pattern.to_string());
        put("cl_max", self.cl_max.map_or("inf".into(), |c| c.to_string()));
        put("rho_max", self.rho_max.to_string());
        put("angles", self.angles.to_string());
        put("fixed_rho", self.fixed_rho.to_string());
        put("allow_sources", self.allow_sources.to_string());
        put("method", self.methods.iter().map(|m| m.label()).collect::<Vec<_>>().join(","));
        put("budget", self.budget.to_string());
        put("seeds", self.seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        put("out", self.out.display().to_string());
        put("samples", self.samples.to_string());
        put("frames", self.frames.to_string());
        s
    }

    pub fn objective(&self) -> Result<Arc<dyn Objective>> {
        let shape = |t| -> Arc<dyn Objective> {
            let mut o = ShapeObjective::new(t);
            o.sample_count = self.samples;
            Arc::new(o)
        };
        let seed = DEFAULT_SAMPLE_SEED;
        Ok(match self.target.as_str() {
            "pyramid" => shape(build_pyramid(self.samples, seed)?),
            "cube" => shape(build_cube(self.samples, seed)?),
            "bowl" => shape(build_bowl(self.samples, seed)?),
            "bucket" => Arc::new(Bucket),
            "shelf" => Arc::new(Shelf::default()),
            "table" => Arc::new(Table::default()),
            "chair" => Arc::new(Chair::default()),
            other => {
                let path = self
                    .mesh
                    .as_ref()
                    .ok_or_else(|| Error::InvalidConfig(format!("target `{other}` needs a mesh file")))?;
                shape(load_target_mesh(path, self.samples, seed)?)
            }
        })
    }

    pub fn env_config(&self) -> Result<Arc<EnvConfig>> {
        if self.seeds.is_empty() || self.methods.is_empty() {
            return Err(Error::InvalidConfig("no seeds or no methods".into()));
        }
        let (board, seed) = match self.seed_pattern {
            SeedPattern::Chair => {
                let (board, g) = chair_seed()?;
                (board, SeedSpec::Graph(g))
            }
            pattern => {
                let board = Board::new(self.board.0, self.board.1, self.symmetry, self.cl_max)?;
                let seed = match pattern {
                    SeedPattern::Square(h) => SeedSpec::Square { half_size: h },
                    SeedPattern::Crease(a, b) => {
                        seed_single_crease(&board, a, b)?;
                        SeedSpec::SingleCrease { p1: a, p2: b }
                    }
                    SeedPattern::Chair => unreachable!(),
                };
                (board, seed)
            }
        };
        let mut cfg = EnvConfig::new(board, seed, self.objective()?);
        cfg.rho_max = self.rho_max;
        cfg.angle_count = self.angles;
        cfg.allow_sources = self.allow_sources;
        if self.fixed_rho {
            let SeedSpec::Graph(g) = &cfg.seed else {
                return Err(Error::InvalidConfig("a fixed driving angle needs a fixed seed graph".into()));
            };
            cfg.fixed_rho = Some(max_admissible_angle(&cfg.board, g, self.rho_max, self.angles)?);
        }
        cfg.validate()?;
        Ok(Arc::new(cfg))
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = vec![];
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", n + 1)))?;
        out.push((k.trim().replace('-', "_"), v.trim().to_string()));
    }
    Ok(out)
}

fn parse_bool(v: &str) -> Option<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Some(true),
        "false" | "no" | "0" | "off" => Some(false),
        _ => None,
    }
}

/// Radians, or `pi`, `pi/2` style fractions of pi.
fn parse_angle(v: &str) -> Option<f64> {
    let v = v.trim();
    if let Some(rest) = v.strip_prefix("pi") {
        let rest = rest.trim();
        return match rest.strip_prefix('/') {
            Some(d) => d.trim().parse::<f64>().ok().map(|d| PI / d),
            None if rest.is_empty() => Some(PI),
            None => None,
        };
    }
    v.parse().ok()
}

fn parse_seeds(v: &str) -> Option<Vec<u64>> {
    if let Some((a, b)) = v.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        return Some((a..b).collect());
    }
    v.split(',').map(|s| s.trim().parse().ok()).collect()
}

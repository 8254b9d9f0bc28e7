//! Per-run result rows in CSV.
//!
//! Columns, in order: `target, method, seed, budget, best_return,
//! interactions_to_best, interactions, episodes, wall_seconds`. Rows are
//! appended; the header is written only when the file is new or empty.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub target: String,
    pub method: String,
    pub seed: u64,
    pub budget: u64,
    pub best_return: f64,
    pub interactions_to_best: u64,
    pub interactions: u64,
    pub episodes: u64,
    pub wall_seconds: f64,
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn append_rows(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let fresh = std::fs::metadata(path).map_or(true, |m| m.len() == 0);
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(path: &Path) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().map(|row| row.map_err(csv_err)).collect()
}

/// Mean and population standard deviation of one statistic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

impl MeanStd {
    pub fn of(xs: &[f64]) -> MeanStd {
        let n = xs.len();
        if n == 0 {
            return MeanStd { mean: f64::NAN, std: f64::NAN, n };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        MeanStd { mean, std: var.sqrt(), n }
    }
}

/// Best return and interactions-to-best per (target, method), as mean ± std over seeds.
pub fn summarize(rows: &[ResultRow]) -> BTreeMap<(String, String), (MeanStd, MeanStd)> {
    let mut groups: BTreeMap<(String, String), Vec<&ResultRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.target.clone(), r.method.clone())).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(k, rs)| {
            let best: Vec<f64> = rs.iter().map(|r| r.best_return).collect();
            let when: Vec<f64> = rs.iter().map(|r| r.interactions_to_best as f64).collect();
            (k, (MeanStd::of(&best), MeanStd::of(&when)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(method: &str, seed: u64, best: f64) -> ResultRow {
        ResultRow {
            target: "pyramid".into(),
            method: method.into(),
            seed,
            budget: 100,
            best_return: best,
            interactions_to_best: 10 * seed,
            interactions: 100,
            episodes: 7,
            wall_seconds: 0.5,
        }
    }

    #[test]
    fn append_and_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("results.csv");
        append_rows(&path, &[row("rdm", 0, -1.0)]).unwrap();
        append_rows(&path, &[row("rdm", 1, -0.5), row("dfts", 0, -0.25)]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().next().unwrap(), "target,method,seed,budget,best_return,interactions_to_best,interactions,episodes,wall_seconds");
        assert_eq!(text.lines().count(), 4);
        let rows = read_rows(&path).unwrap();
        assert_eq!(rows[1], row("rdm", 1, -0.5));
    }

    #[test]
    fn population_std() {
        let s = summarize(&[row("rdm", 0, -1.0), row("rdm", 1, -0.5)]);
        let (best, when) = s[&("pyramid".to_string(), "rdm".to_string())];
        assert_eq!((best.mean, best.std, best.n), (-0.75, 0.25, 2));
        assert_eq!((when.mean, when.std), (5.0, 5.0));
    }
}

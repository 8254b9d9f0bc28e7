mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigid_origami::env::{parse_trace, EnvConfig, SeedSpec};
use rigid_origami::io::{
    export_fold, export_obj_sequence, first_frame_planar, import_fold, read_rows, run_experiment, run_experiment_with,
    sequence_rigidity, ExperimentConfig, FoldFile, ResultRow, SeedPattern, PRESETS,
};
use rigid_origami::kinematics::FoldPlan;
use rigid_origami::objectives::{build_pyramid, ShapeObjective, Table};
use rigid_origami::pattern::{Board, Cell, CreaseGraph, Symmetry};
use rigid_origami::search::Method;

/// Finished random episodes on two boards, with their best driving angle.
fn corpus(n: usize) -> Vec<(Board, CreaseGraph, Option<f64>)> {
    let table = {
        let board = Board::new(13, 13, Symmetry::XY_DIAG, None).unwrap();
        Arc::new(EnvConfig::new(board, SeedSpec::Square { half_size: None }, Arc::new(Table::default())))
    };
    let pyramid = {
        let board = Board::new(9, 9, Symmetry::XY, None).unwrap();
        let obj = ShapeObjective::new(build_pyramid(256, 1).unwrap());
        Arc::new(EnvConfig::new(board, SeedSpec::Square { half_size: Some(2) }, Arc::new(obj)))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = vec![];
    for k in 0..n {
        let cfg = if k % 2 == 0 { table.clone() } else { pyramid.clone() };
        let ep = common::fuzz::random_episode(cfg.clone(), &mut rng);
        let s = ep.env.state();
        out.push((cfg.board.clone(), s.graph.clone(), s.best_angle));
    }
    out
}

#[test]
fn fold_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (k, (board, graph, angle)) in corpus(40).into_iter().enumerate() {
        let state = angle.map(|r| FoldPlan::new(&graph, &board).unwrap().fold(r).unwrap());
        let a = dir.path().join(format!("{k}a.fold"));
        let b = dir.path().join(format!("{k}b.fold"));
        export_fold(&graph, &board, state.as_ref(), &a).unwrap();
        let (file, board2, graph2) = import_fold(&a).unwrap();
        assert_eq!(board2, board);
        assert_eq!(graph2, graph);
        let state2 = file.rho0.map(|r| FoldPlan::new(&graph2, &board2).unwrap().fold(r).unwrap());
        export_fold(&graph2, &board2, state2.as_ref(), &b).unwrap();
        assert!(std::fs::read_to_string(&a).unwrap() == std::fs::read_to_string(&b).unwrap(), "pattern {k}");
        let text = std::fs::read_to_string(&a).unwrap();
        assert_eq!(FoldFile::from_json(&text).unwrap().to_json(), text);
    }
}

#[test]
fn fold_document_uses_standard_fields() {
    let board = Board::new(9, 9, Symmetry::XY, None).unwrap();
    let graph = rigid_origami::pattern::seed_square(&board, 2, board.center()).unwrap();
    let state = FoldPlan::new(&graph, &board).unwrap().fold(PI / 2.0).unwrap();
    let f = FoldFile::from_pattern(&graph, &board, Some(&state)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
    assert_eq!(v["file_spec"], 1.1);
    assert_eq!(v["vertices_coords"].as_array().unwrap().len(), 4);
    assert_eq!(v["edges_vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["faces_vertices"].as_array().unwrap().len(), 1);
    for a in v["edges_foldAngle"].as_array().unwrap() {
        assert!((a.as_f64().unwrap() - 90.0).abs() < 1e-9);
    }
}

#[test]
fn obj_frames_are_rigid() {
    let dir = tempfile::tempdir().unwrap();
    let mut checked = 0;
    for (k, (board, graph, angle)) in corpus(30).into_iter().enumerate() {
        let Some(rho) = angle else { continue };
        let paths = export_obj_sequence(&graph, &board, rho, 5, &dir.path().join(k.to_string())).unwrap();
        assert_eq!(paths.len(), 5);
        assert!(first_frame_planar(&paths).unwrap());
        let worst = sequence_rigidity(&paths).unwrap();
        assert!(worst <= 1e-9, "pattern {k}: edge length drift {worst}");
        checked += 1;
    }
    assert!(checked >= 10);
}

fn small(method: Method, out: &std::path::Path) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::preset("pyramid").unwrap();
    cfg.methods = vec![method];
    cfg.seeds = vec![0, 1, 2];
    cfg.budget = 100;
    cfg.samples = 512;
    cfg.out = out.to_path_buf();
    cfg
}

fn without_wall(rows: &[ResultRow]) -> Vec<ResultRow> {
    rows.iter().cloned().map(|r| ResultRow { wall_seconds: 0.0, ..r }).collect()
}

#[test]
fn experiment_writes_rows_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(Method::Random, &dir.path().join("a"));
    let report = run_experiment(&cfg).unwrap();
    assert_eq!(report.rows.len(), 3);
    assert_eq!(read_rows(&cfg.out.join("results.csv")).unwrap(), report.rows);
    for p in &report.artifacts {
        assert!(p.exists(), "{}", p.display());
    }
    let (_, _, best) = report.best.as_ref().unwrap();
    assert!(report.rows.iter().all(|r| r.best_return <= best.value));
    let trace = parse_trace(&std::fs::read_to_string(cfg.out.join("best.trace")).unwrap()).unwrap();
    assert_eq!(trace.len(), best.actions.len() + 1);
    assert!(trace.last().unwrap().done);
    let saved = ExperimentConfig::parse(&std::fs::read_to_string(cfg.out.join("config.txt")).unwrap()).unwrap();
    assert_eq!(saved, cfg);

    // same seeds, same rows; worker count does not matter
    let again = run_experiment_with(&small(Method::Random, &dir.path().join("b")), 3).unwrap();
    assert_eq!(without_wall(&again.rows), without_wall(&report.rows));
}

#[test]
fn every_method_runs_from_a_config() {
    let dir = tempfile::tempdir().unwrap();
    for m in Method::ALL {
        let mut cfg = small(m, &dir.path().join(m.label()));
        cfg.seeds = vec![4];
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.rows[0].method, m.label());
        assert!(r.rows[0].interactions <= 100);
    }
}

#[test]
fn presets_carry_their_settings() {
    let p = |n| ExperimentConfig::preset(n).unwrap();
    let shape = [
        ("pyramid", (9, 9), "x,y", None),
        ("cube", (9, 9), "x,y", Some(2.0)),
        ("bowl", (25, 25), "x,y,xy", Some(2.9)),
        ("face", (25, 25), "y", Some(2.9)),
    ];
    for (name, board, sym, cl) in shape {
        let c = p(name);
        assert_eq!((c.board, c.symmetry.label(), c.cl_max), (board, sym.to_string(), cl), "{name}");
        assert!(!c.fixed_rho);
    }
    assert_eq!(p("pyramid").seed_pattern, SeedPattern::Square(Some(2)));
    assert_eq!(p("cube").seed_pattern, SeedPattern::Square(Some(1)));
    assert_eq!(p("bowl").seed_pattern, SeedPattern::Square(None));
    assert_eq!(p("face").seed_pattern, SeedPattern::Crease(Cell::new(10, 12), Cell::new(14, 12)));
    for name in ["bucket", "shelf", "table", "chair"] {
        let c = p(name);
        assert_eq!((c.board, c.budget, c.allow_sources), ((13, 13), 500_000, false), "{name}");
    }
    assert_eq!(p("bucket").symmetry, Symmetry::XY_DIAG);
    assert_eq!(p("table").symmetry, Symmetry::XY_DIAG);
    assert_eq!(p("shelf").symmetry, Symmetry::XY);
    assert_eq!(p("chair").symmetry, Symmetry::Y);
    assert!(p("chair").fixed_rho);
    assert_eq!(PRESETS.len(), 8);
}

#[test]
fn presets_build_environments() {
    for name in PRESETS {
        let mut c = ExperimentConfig::preset(name).unwrap();
        c.samples = 64;
        if name == "face" {
            assert!(c.env_config().is_err(), "face needs a user mesh");
            continue;
        }
        let env = c.env_config().unwrap();
        assert_eq!(env.board.width, c.board.0);
        if name == "chair" {
            let rho = env.fixed_rho.expect("chair tracks one angle");
            assert_eq!(env.angles(), vec![rho]);
            assert!(rho > 0.0 && rho <= PI);
        }
    }
}

#[test]
fn face_preset_takes_a_user_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("face.obj");
    std::fs::write(&mesh, "v -3 -3 0\nv 3 -3 0\nv 3 3 1\nv -3 3 1\nf 1 2 3 4\n").unwrap();
    let mut c = ExperimentConfig::preset("face").unwrap();
    c.mesh = Some(mesh);
    c.samples = 64;
    let env = c.env_config().unwrap();
    assert_eq!(env.board.symmetry, Symmetry::Y);
    assert!(matches!(env.seed, SeedSpec::SingleCrease { .. }));
}

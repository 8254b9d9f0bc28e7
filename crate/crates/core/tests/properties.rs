mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigid_origami::env::EnvConfig;
use rigid_origami::geom::{
    directed_hausdorff, hausdorff, seg_seg_intersect_2d, tri_tri_intersect, Point3, PointSet, Provenance, Triangle3,
    DEFAULT_SHARED_TOLERANCE,
};
use rigid_origami::io::{ExperimentConfig, FoldFile};
use rigid_origami::kinematics::{closure_residual, solve_vertex, FoldPlan, StarCrease};
use rigid_origami::pattern::{Board, Mode, Symmetry};
use rigid_origami::search::{normalize_return, ActionIndexer};

fn env(name: &str) -> Arc<EnvConfig> {
    let mut c = ExperimentConfig::preset(name).unwrap();
    c.samples = 256;
    c.env_config().unwrap()
}

fn point() -> impl Strategy<Value = Point3> {
    (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn cloud() -> impl Strategy<Value = PointSet> {
    prop::collection::vec(point(), 1..40).prop_map(|p| PointSet::new(p, Provenance::SurfaceSample))
}

fn lattice() -> impl Strategy<Value = [i64; 2]> {
    (0..8i64, 0..8i64).prop_map(|(x, y)| [x, y])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn segment_test_ignores_order(p1 in lattice(), p2 in lattice(), q1 in lattice(), q2 in lattice()) {
        prop_assume!(p1 != p2 && q1 != q2);
        let a = seg_seg_intersect_2d(p1, p2, q1, q2).unwrap();
        prop_assert_eq!(a, seg_seg_intersect_2d(q1, q2, p1, p2).unwrap());
        prop_assert_eq!(a, seg_seg_intersect_2d(p2, p1, q2, q1).unwrap());
    }

    #[test]
    fn triangle_test_is_symmetric(v in prop::array::uniform6(point())) {
        let t1 = Triangle3::new(v[0], v[1], v[2]);
        let t2 = Triangle3::new(v[3], v[4], v[5]);
        prop_assume!(t1.area() > 1e-3 && t2.area() > 1e-3);
        prop_assert_eq!(
            tri_tri_intersect(&t1, &t2, DEFAULT_SHARED_TOLERANCE).unwrap(),
            tri_tri_intersect(&t2, &t1, DEFAULT_SHARED_TOLERANCE).unwrap()
        );
    }

    #[test]
    fn hausdorff_is_a_metric_on_samples(x in cloud(), y in cloud(), z in cloud()) {
        let xy = hausdorff(&x, &y).unwrap();
        prop_assert_eq!(xy, hausdorff(&y, &x).unwrap());
        prop_assert_eq!(hausdorff(&x, &x).unwrap(), 0.0);
        prop_assert!(directed_hausdorff(&x, &y).unwrap() <= xy);
        prop_assert!(hausdorff(&x, &z).unwrap() <= xy + hausdorff(&y, &z).unwrap() + 1e-12);
        let mut both = x.clone();
        both.points.extend(&y.points);
        prop_assert_eq!(directed_hausdorff(&x, &both).unwrap(), 0.0);
    }

    #[test]
    fn solved_vertices_close(
        dirs in prop::collection::btree_set(0..72u32, 4..8),
        known in prop::collection::vec(-1.5..1.5f64, 5),
        pick in any::<prop::sample::Index>(),
        plus in any::<bool>(),
    ) {
        let dirs: Vec<f64> = dirs.into_iter().map(|d| f64::from(d) * std::f64::consts::TAU / 72.0).collect();
        let n = dirs.len();
        let first = pick.index(n);
        let out = [first, (first + 1) % n, (first + 2) % n];
        let mut star: Vec<StarCrease> =
            dirs.iter().enumerate().map(|(k, &a)| StarCrease { angle: a, rho: (!out.contains(&k)).then(|| known[k % 5]) }).collect();
        let mode = if plus { Mode::Plus } else { Mode::Minus };
        if let Ok(sol) = solve_vertex(&star, mode) {
            let mut it = sol.into_iter();
            for c in star.iter_mut().filter(|c| c.rho.is_none()) {
                c.rho = it.next();
            }
            prop_assert!(closure_residual(&star) <= 1e-9);
        }
    }

    #[test]
    fn action_index_round_trips(w in 3..16i32, h in 3..16i32, sym in 0..4usize) {
        let sym = [Symmetry::NONE, Symmetry::Y, Symmetry::XY, Symmetry::XY_DIAG][sym];
        prop_assume!(sym != Symmetry::XY_DIAG || w == h);
        let board = Board::new(w, h, sym, None).unwrap();
        let ix = ActionIndexer::new(&board);
        prop_assert_eq!(ix.genome_len(), 4 * ix.playable());
        for k in 0..=ix.genome_len() {
            prop_assert_eq!(ix.index(&ix.action(k).unwrap()).unwrap(), k);
        }
    }

    #[test]
    fn normalized_returns_stay_in_range(r_min in -50.0..-0.1f64, t in 0.0..=1.0f64) {
        let v = normalize_return(r_min * t, r_min);
        prop_assert!((-1.0..=1.0).contains(&v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn episodes_keep_invariants_and_replay(seed in any::<u64>(), which in 0..4usize) {
        let cfg = env(["pyramid", "cube", "table", "chair"][which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ep = common::fuzz::random_episode(cfg.clone(), &mut rng);
        common::fuzz::check_replay(cfg, &ep);
    }

    #[test]
    fn finished_patterns_fold_rigidly_and_round_trip(seed in any::<u64>(), which in 0..3usize) {
        let cfg = env(["pyramid", "bucket", "shelf"][which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ep = common::fuzz::random_episode(cfg.clone(), &mut rng);
        let st = ep.env.state();
        let plan = FoldPlan::new(&st.graph, &cfg.board).unwrap();
        for (rho, alive) in cfg.angles().into_iter().zip(&st.angles.alive) {
            if !*alive {
                continue;
            }
            let s = plan.fold(rho).unwrap();
            for c in &st.graph.creases {
                prop_assert!(((s.positions[c.from] - s.positions[c.to]).norm() - c.planar_length).abs() <= 1e-9);
            }
        }
        let state = st.best_angle.map(|r| plan.fold(r).unwrap());
        let text = FoldFile::from_pattern(&st.graph, &cfg.board, state.as_ref()).unwrap().to_json();
        let back = FoldFile::from_json(&text).unwrap();
        prop_assert_eq!(back.graph().unwrap(), st.graph.clone());
        prop_assert_eq!(back.to_json(), text);
    }
}

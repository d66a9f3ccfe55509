mod common;

use common::*;
use conedd::engine::{audit_prefilter, Engine, InnerRay, RunConfig};
use conedd::{brute_force_filtered, brute_force_rays, run, Triangulation};
use proptest::prelude::*;

#[test]
fn gieseking_unfiltered_matches_oracle() {
    let p = gieseking();
    let expected = coords(&brute_force_rays(&p).unwrap());
    assert_eq!(expected.len(), 2);
    for cfg in all_configs() {
        let (rays, _) = run(
            &p,
            RunConfig {
                filtering: false,
                ..cfg
            },
        )
        .unwrap();
        assert_eq!(coords(&rays), expected, "{cfg:?}");
    }
}

#[test]
fn s2xs1_matches_oracle() {
    let p = triangulation("s2xs1.tri").standard_matching_equations();
    let expected = coords(&brute_force_filtered(&p).unwrap());
    for cfg in all_configs() {
        let (rays, _) = run(&p, cfg).unwrap();
        assert_eq!(coords(&rays), expected, "{cfg:?}");
        assert!(rays
            .iter()
            .all(|r| p.admissible(&r.coords) && p.is_extreme(&r.coords)));
    }
}

#[test]
fn random_problems_under_every_config() {
    for seed in 100..130 {
        let p = random_problem(seed);
        let expected = coords(&brute_force_filtered(&p).unwrap());
        for cfg in all_configs() {
            let (rays, _) = run(&p, cfg).unwrap();
            assert_eq!(coords(&rays), expected, "seed {seed}, {cfg:?}");
        }
    }
}

#[test]
fn twisted_loop_fixtures_match_generator() {
    for n in [9, 12, 15, 18] {
        let t = triangulation(&format!("twisted_loop_{n}.tri"));
        assert_eq!(t, Triangulation::layered_loop(n, true).unwrap());
        assert_eq!(t.skeleton().vertices, 1);
        let p = t.standard_matching_equations();
        assert_eq!(
            (p.dim(), p.equations().len(), p.groups().len()),
            (7 * n, 6 * n, n)
        );
    }
}

#[test]
fn small_twisted_loops_follow_fibonacci() {
    // F(n-1) + 2 F(n-2) + 1 with F(0) = F(1) = 1.
    for (n, expected) in [(3, 5), (4, 8), (5, 12), (6, 19), (7, 30)] {
        let p = Triangulation::layered_loop(n, true)
            .unwrap()
            .standard_matching_equations();
        let (rays, _) = run(&p, RunConfig::default()).unwrap();
        assert_eq!(rays.len(), expected, "n = {n}");
    }
}

#[test]
#[ignore = "about two minutes in release mode"]
fn twisted_loop_18() {
    let p = triangulation("twisted_loop_18.tri").standard_matching_equations();
    let (rays, _) = run(&p, RunConfig::default()).unwrap();
    assert_eq!(rays.len(), 5779);
}

#[test]
fn stage_sizes_bounded_by_pairs() {
    let p = triangulation("twisted_loop_9.tri").standard_matching_equations();
    let (_, s) = run(&p, RunConfig::default()).unwrap();
    assert_eq!(s.stage_sizes.len(), p.equations().len() + 1);
    for i in 0..s.pairs.len() {
        assert!(s.stage_sizes[i + 1] as u64 <= s.stage_sizes[i] as u64 + s.adjacent_pairs[i]);
        assert!(s.adjacent_pairs[i] <= s.prefiltered_pairs[i]);
        assert!(s.prefiltered_pairs[i] <= s.compatible_pairs[i]);
        assert!(s.compatible_pairs[i] <= s.pairs[i]);
    }
    assert!(s
        .sep_trace
        .windows(2)
        .all(|w| w[1] == w[0] || w[1] == w[0] + 1));
}

#[test]
fn filtered_vertices_stay_admissible_at_every_stage() {
    let p = triangulation("twisted_loop_9.tri").standard_matching_equations();
    let groups = conedd::zeroset::GroupMasks::new(p.groups());
    let mut e = Engine::<InnerRay>::new(&p, RunConfig::default());
    while e.step_next().unwrap() {
        assert!(e.zero_sets().iter().all(|z| z.group_satisfied(&groups)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_equals_oracle(seed in any::<u64>(), k in 0usize..60) {
        let p = random_problem(seed);
        let cfg = all_configs()[k];
        let (rays, _) = run(&p, cfg).unwrap();
        prop_assert_eq!(coords(&rays), coords(&brute_force_filtered(&p).unwrap()));
        let (all, _) = run(&p, RunConfig { filtering: false, ..cfg }).unwrap();
        prop_assert_eq!(coords(&all), coords(&brute_force_rays(&p).unwrap()));
    }

    #[test]
    fn prefilters_never_reject_adjacent_pairs(seed in any::<u64>(), k in 0usize..5) {
        let p = random_problem(seed);
        let s = audit_prefilter(&p, RunConfig { ordering: orderings()[k], ..RunConfig::default() }).unwrap();
        prop_assert_eq!(s.audit_basic_violations, 0);
        prop_assert_eq!(s.audit_extended_violations, 0);
    }

    #[test]
    fn output_is_sorted_normalized_and_extreme(seed in any::<u64>()) {
        let p = random_problem(seed);
        let (rays, _) = run(&p, RunConfig::default()).unwrap();
        prop_assert!(rays.windows(2).all(|w| w[0].coords < w[1].coords));
        for r in &rays {
            prop_assert!(p.admissible(&r.coords));
            prop_assert!(p.is_extreme(&r.coords));
            prop_assert!(num_traits::One::is_one(&conedd::linalg::content(&r.coords)));
        }
    }
}

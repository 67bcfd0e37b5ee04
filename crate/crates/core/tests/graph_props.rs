use proptest::prelude::*;

use localcut::algorithms::{
    distributed_flip_step, is_maximal_cut, is_stable, median_cut, oriented_median_plus_flips,
    random_cut, sequential_flip_to_maximal, FlipOrder,
};
use localcut::bounds::{f_d, median_floor, two_flip_floor, two_flip_y};
use localcut::congest::programs::run_median;
use localcut::generators::{
    make_double_circulant, make_random_labelling, make_random_orientation, make_random_regular,
    make_random_sparse_labelling,
};
use localcut::io::{parse_graph_file, write_graph_file, GraphFile};
use localcut::oracle::{max_cut_exact, max_dicut_exact};
use localcut::{cut_size, dicut_size, is_bipartite, Labelling, Rational64, RegularGraph};

/// Odd degree and an even vertex count large enough for it.
fn odd_regular() -> impl Strategy<Value = RegularGraph> {
    (prop_oneof![Just(3usize), Just(5)], 0usize..8, any::<u64>()).prop_map(|(d, k, seed)| {
        let n = d + 1 + (d + 1) % 2 + 2 * k;
        make_random_regular(n, d, seed).unwrap()
    })
}

fn any_regular() -> impl Strategy<Value = RegularGraph> {
    (1usize..7, 0usize..8, any::<u64>()).prop_map(|(d, k, seed)| {
        let n = d + 1 + 2 * k + (d + 1 + 2 * k) % 2 * (d % 2);
        make_random_regular(n, d, seed).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn out_degrees_sum_to_m(g in any_regular(), seed: u64) {
        let o = make_random_orientation(&g, seed);
        let total: usize = (0..g.n()).map(|v| o.out_degree(v)).sum();
        prop_assert_eq!(total, g.m());
        prop_assert!((0..g.n()).all(|v| o.out_degree(v) + o.in_degree(v) == g.degree()));
    }

    #[test]
    fn dicut_and_mirror_partition_the_cut(g in any_regular(), seed: u64, cseed: u64) {
        let o = make_random_orientation(&g, seed);
        let c = random_cut(g.n(), cseed);
        let both = dicut_size(&o, &c).unwrap() + dicut_size(&o, &c.mirror()).unwrap();
        prop_assert_eq!(both, cut_size(&g, &c).unwrap());
    }

    #[test]
    fn bipartite_witness_cuts_every_edge(g in any_regular()) {
        if let Some(w) = is_bipartite(&g) {
            prop_assert_eq!(cut_size(&g, &w).unwrap(), g.m());
        }
    }

    #[test]
    fn max_dicut_at_most_max_cut(g in any_regular(), seed: u64) {
        prop_assume!(g.n() <= 16);
        let o = make_random_orientation(&g, seed);
        let (dicut, _) = max_dicut_exact(&o).unwrap();
        let (cut, _) = max_cut_exact(&g).unwrap();
        prop_assert!(dicut <= cut);
        prop_assert!(2 * dicut >= cut);
    }

    #[test]
    fn flips_only_grow_the_stable_set_and_dicut(g in odd_regular(), seed: u64, k in 0usize..6) {
        let o = make_random_orientation(&g, seed);
        let run = oriented_median_plus_flips(&o, k).unwrap();
        for w in run.cuts.windows(2) {
            for v in 0..g.n() {
                if is_stable(&g, &w[0], v) {
                    prop_assert!(is_stable(&g, &w[1], v));
                }
            }
            for &(a, b) in o.arcs() {
                let inside = |c: &localcut::Cut| c.side(a).is_left() && !c.side(b).is_left();
                if inside(&w[0]) {
                    prop_assert!(inside(&w[1]));
                }
            }
        }
        prop_assert!(run.sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn median_meets_floor(g in odd_regular(), seed: u64) {
        let lab = make_random_labelling(g.n(), seed);
        let size = cut_size(&g, &median_cut(&g, &lab).unwrap()).unwrap();
        prop_assert!(Rational64::from_integer(size as i64) >= median_floor(g.n(), g.degree()).unwrap());
    }

    #[test]
    fn median_matches_simulation(g in odd_regular(), seed: u64) {
        let lab = make_random_sparse_labelling(g.n(), Labelling::default_bound(g.n()), seed).unwrap();
        let (sim, trace) = run_median(&g, &lab).unwrap();
        prop_assert_eq!(sim, median_cut(&g, &lab).unwrap());
        prop_assert_eq!(trace.rounds_used, 1);
    }

    #[test]
    fn median_side_is_local(g in odd_regular(), seed: u64, pick in any::<prop::sample::Index>()) {
        let lab = make_random_labelling(g.n(), seed);
        let v = pick.index(g.n());
        let near = |u: usize| u == v || g.is_adjacent(u, v);
        let far: Vec<usize> = (0..g.n()).filter(|&u| !near(u)).collect();
        prop_assume!(far.len() >= 2);
        let changed = lab.swapped(far[0], far[far.len() - 1]);
        let before = median_cut(&g, &lab).unwrap();
        let after = median_cut(&g, &changed).unwrap();
        prop_assert_eq!(before.side(v), after.side(v));
        prop_assert_eq!(before, median_cut(&g, &lab).unwrap());
    }

    #[test]
    fn sequential_flip_reaches_maximal_cut(g in odd_regular(), seed: u64) {
        let start = random_cut(g.n(), seed);
        let res = sequential_flip_to_maximal(&g, &start, FlipOrder::Seeded(seed)).unwrap();
        prop_assert!(is_maximal_cut(&g, &res.cut));
        prop_assert!(cut_size(&g, &res.cut).unwrap() >= cut_size(&g, &start).unwrap());
        prop_assert!(2 * cut_size(&g, &res.cut).unwrap() >= g.m());
    }

    #[test]
    fn graph_file_round_trip(g in any_regular(), seed: u64, directed: bool) {
        let file = if directed {
            GraphFile::directed(make_random_orientation(&g, seed))
        } else {
            GraphFile::undirected(g.clone())
        }
        .with_labelling(make_random_labelling(g.n(), seed));
        prop_assert_eq!(parse_graph_file(&write_graph_file(&file)).unwrap(), file);
    }

    #[test]
    fn f_d_grows_in_both_arguments(d in prop_oneof![Just(3usize), Just(5), Just(7)], a in 0i64..=20, b in 0i64..=20) {
        let x = |k: i64| Rational64::new(k, 20);
        let here = f_d(d, x(a), x(b)).unwrap();
        if a < 20 {
            prop_assert!(f_d(d, x(a + 1), x(b)).unwrap() >= here);
        }
        if b < 20 {
            prop_assert!(f_d(d, x(a), x(b + 1)).unwrap() >= here);
        }
    }

    #[test]
    fn two_flip_floor_minimises_f_d(d in prop_oneof![Just(3usize), Just(5), Just(7), Just(9)], a in 0i64..=40, b in 0i64..=40) {
        let (alpha, beta) = (Rational64::new(a, 40), Rational64::new(b, 40));
        prop_assume!(alpha + beta >= two_flip_y(d));
        prop_assert!(f_d(d, alpha, beta).unwrap() >= two_flip_floor(d).unwrap());
    }
}

#[test]
fn distributed_flip_oscillates_on_double_circulants() {
    for (n, d) in [(6, 3), (10, 5), (12, 7)] {
        let g = make_double_circulant(n, d).unwrap();
        let mut c = localcut::Cut::from_left_set(2 * n, 0..n);
        let size = cut_size(&g, &c).unwrap();
        for _ in 0..10 {
            c = distributed_flip_step(&g, &c);
            assert_eq!(cut_size(&g, &c).unwrap(), size);
        }
    }
}

#[test]
fn sparse_labelling_respects_bound() {
    let lab = make_random_sparse_labelling(50, 60, 1).unwrap();
    assert_eq!(lab.len(), 50);
    assert!(lab.ids().iter().all(|&id| (1..=60).contains(&id)));
    let mut ids = lab.ids().to_vec();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), 50);
    assert!(make_random_sparse_labelling(50, 40, 1).is_err());
    assert_eq!(make_random_sparse_labelling(50, 60, 1).unwrap(), lab);
}

use proptest::prelude::*;

use flipturn::engine::{apply_flipturn, default_max_steps, run_sequence, NaiveState, Trace, TreeState};
use flipturn::generators::{random_general, random_orthogonal, subset_sum_reduction};
use flipturn::polygon::{find_pockets, Polygon, Regime};
use flipturn::predictor::{final_position, final_shape, strip_invariant_check, up_region_height};
use flipturn::strategies::ArbitraryPolicy;

fn regime() -> impl Strategy<Value = Regime> {
    prop_oneof![Just(Regime::Standard), Just(Regime::Extended), Just(Regime::Modified)]
}

fn polygon() -> impl Strategy<Value = Polygon> {
    prop_oneof![
        (3usize..14, any::<u64>(), any::<bool>()).prop_map(|(h, s, g)| random_orthogonal(2 * h, s, g).unwrap()),
        (4usize..20, any::<u64>()).prop_map(|(n, s)| random_general(n, s, 20).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn a_flipturn_keeps_edges_and_grows_area(p in polygon(), r in regime(), pick in any::<usize>()) {
        let ps = find_pockets(&p, r);
        prop_assume!(!ps.is_empty());
        let k = &ps[pick % ps.len()];
        let (q, rec) = apply_flipturn(&p, k).unwrap();
        prop_assert!(q.area2() > p.area2());
        prop_assert_eq!(q.direction_lengths(), p.direction_lengths());
        prop_assert!(q.is_simple());
        prop_assert_eq!(rec.vertex_count_after, q.n());
        prop_assert_eq!(final_shape(&q), final_shape(&p));
        prop_assert_eq!(final_position(&q).unwrap(), final_position(&p).unwrap());
        prop_assert!(strip_invariant_check(&p, k, &q));
    }

    #[test]
    fn prediction_is_idempotent(p in polygon()) {
        let q = final_position(&p).unwrap();
        prop_assert!(q.is_convex());
        prop_assert_eq!(final_position(&q).unwrap(), q.clone());
        prop_assert_eq!(up_region_height(&q).unwrap(), flipturn::geom::Rational::ZERO);
    }

    #[test]
    fn tree_engine_replays_naive(p in polygon(), r in regime(), seed in any::<u64>()) {
        let max = default_max_steps(&p);
        let a = run_sequence(&mut NaiveState::new(p.clone()), &mut ArbitraryPolicy::new(seed), r, max).unwrap();
        let b = run_sequence(&mut TreeState::new(&p), &mut ArbitraryPolicy::new(seed), r, max).unwrap();
        prop_assert!(a.convex);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.final_polygon, final_position(&p).unwrap());
    }

    #[test]
    fn trace_json_round_trips(p in polygon(), r in regime(), seed in any::<u64>()) {
        let t = run_sequence(&mut NaiveState::new(p.clone()), &mut ArbitraryPolicy::new(seed), r, default_max_steps(&p)).unwrap();
        let back: Trace = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(&back, &t);
        let replayed = t.replay().unwrap();
        prop_assert_eq!(replayed.last().unwrap(), &t.final_polygon);
    }

    #[test]
    fn polygon_json_round_trips(p in polygon()) {
        let back: Polygon = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn reduction_is_a_simple_orthogonal_polygon(a in prop::collection::vec(1u64..9, 1..6), t in 1u64..20) {
        let p = subset_sum_reduction(&a, t).unwrap();
        prop_assert!(p.is_orthogonal());
        prop_assert!(p.is_simple());
        prop_assert_eq!(p.n() % 2, 0);
    }
}

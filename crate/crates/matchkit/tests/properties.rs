//! Property-based invariants over randomly generated instances.

use proptest::prelude::*;

use matchkit::generate::gen_random_instance;
use matchkit::instance::{
    parse_instance, parse_solution, serialize_instance, serialize_solution, ProblemKind,
    Solution,
};
use matchkit::pm::{enumerate_perfect_matchings, min_weight_pm, min_weight_pm_forced, ForcedSet};

fn kinds() -> impl Strategy<Value = ProblemKind> {
    prop_oneof![
        Just(ProblemKind::Ewpm),
        Just(ProblemKind::Bcpm),
        Just(ProblemKind::Ecs),
        Just(ProblemKind::Soc),
        Just(ProblemKind::Spm),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_serialize_identity(
        n in 1usize..9,
        p in 0.0f64..1.0,
        hi in 0i64..9,
        kind in kinds(),
        seed in any::<u64>(),
    ) {
        let inst = gen_random_instance(n, p, (-hi.min(2), hi), kind, seed).unwrap();
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn matching_solution_round_trip(
        n in 2usize..9,
        p in 0.3f64..1.0,
        seed in any::<u64>(),
    ) {
        let inst = gen_random_instance(n, p, (0, 8), ProblemKind::Ewpm, seed).unwrap();
        if let Some(r) = min_weight_pm(&inst.graph, &inst.weights) {
            let sol = Solution::yes_matching(&inst.graph, &r.matching, r.weight);
            let back = parse_solution(&serialize_solution(&sol)).unwrap();
            prop_assert_eq!(&back, &sol);
            prop_assert_eq!(back.matching(&inst.graph).unwrap(), r.matching);
        }
    }

    #[test]
    fn forcing_never_improves_the_minimum(
        n in 2usize..9,
        p in 0.3f64..1.0,
        seed in any::<u64>(),
    ) {
        let inst = gen_random_instance(n, p, (-4, 8), ProblemKind::Ewpm, seed).unwrap();
        let Some(base) = min_weight_pm(&inst.graph, &inst.weights) else { return Ok(()) };
        for e in 0..inst.graph.edge_count() {
            let f = ForcedSet::new(&inst.graph, vec![e]).unwrap();
            if let Some(forced) = min_weight_pm_forced(&inst.graph, &inst.weights, &f) {
                prop_assert!(forced.weight >= base.weight);
            }
        }
    }

    #[test]
    fn every_enumerated_matching_is_perfect(
        n in 2usize..9,
        p in 0.2f64..1.0,
        seed in any::<u64>(),
    ) {
        let inst = gen_random_instance(n, p, (0, 4), ProblemKind::Ewpm, seed).unwrap();
        for m in enumerate_perfect_matchings(&inst.graph) {
            prop_assert!(m.is_perfect(&inst.graph));
        }
    }
}

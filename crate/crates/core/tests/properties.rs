use proptest::prelude::*;
use scfg_linear::grammar::{
    count_derivations_oracle, pair_membership_oracle, parse_grammar, SentencePair,
};
use scfg_linear::multigraph::{
    arrangement_value, brute_force_cutwidth, cutwidth_exact, extended_modified_width_profile,
    extended_width_profile, strategy_to_arrangement, width_profile, CutwidthVariant,
    LinearArrangement, Multigraph, PermutationMultigraph,
};
use scfg_linear::parser::{count_derivations, parse, ParseOptions, RuleStrategies};
use scfg_linear::reduction::{
    build_gadget, canonical_arrangement, Bisection, CubicGraph, GadgetArrangement,
};
use scfg_linear::strategy::{
    brute_force_optimize, decoding_exponents, evaluate, internal_boundaries, optimize,
    LinearStrategy, Objective, Permutation, DEFAULT_SIZE_LIMIT,
};

fn perm(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (2..=max).prop_flat_map(|r| Just((1..=r).collect::<Vec<_>>()).prop_shuffle())
}

fn perm_and_strategy(max: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (2..=max).prop_flat_map(|r| {
        let base: Vec<usize> = (1..=r).collect();
        (Just(base.clone()).prop_shuffle(), Just(base).prop_shuffle())
    })
}

fn small_multigraph() -> impl Strategy<Value = Multigraph> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1u32..=2), 0..12).prop_map(move |es| {
            let mut g = Multigraph::new(n);
            for (u, v, m) in es {
                if u != v {
                    g.add_edge(u, v, m).unwrap();
                }
            }
            g
        })
    })
}

const EXAMPLE: &str = "\
S -> A[1] B[2] ; S -> B[2] A[1]
A -> a A[1] b ; A -> b A[1] a
A -> a b ; A -> b a
B -> c B[1] d ; B -> d B[1] c
B -> c d ; B -> d c
";

fn word(max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'd']), 0..=max)
        .prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn multigraph_degrees_and_round_trip(p in perm(10)) {
        let p = Permutation::new(p).unwrap();
        let g = PermutationMultigraph::from_permutation(&p).unwrap();
        prop_assert!(g.degree_plus_endpoints().iter().all(|&d| d == 4));
        prop_assert_eq!(g.permutation(), p);
    }

    #[test]
    fn internal_boundaries_equal_gap_widths((p, s) in perm_and_strategy(9)) {
        let p = Permutation::new(p).unwrap();
        let s = LinearStrategy::new(s).unwrap();
        let g = PermutationMultigraph::from_permutation(&p).unwrap();
        let wd = width_profile(g.graph(), &strategy_to_arrangement(&s)).unwrap();
        for k in 1..=p.len() {
            prop_assert_eq!(internal_boundaries(&p, &s, k).unwrap(), wd[k - 1]);
        }
    }

    #[test]
    fn fan_out_and_time_identities((p, s) in perm_and_strategy(12)) {
        let p = Permutation::new(p).unwrap();
        let s = LinearStrategy::new(s).unwrap();
        let rep = evaluate(&p, &s).unwrap();
        let g = PermutationMultigraph::from_permutation(&p).unwrap();
        let a = strategy_to_arrangement(&s);
        let ewd = extended_width_profile(g.graph(), &a).unwrap();
        let emwd = extended_modified_width_profile(g.graph(), &a).unwrap();
        for k in 0..p.len() {
            prop_assert_eq!(2 * rep.fo[k], ewd[k]);
            prop_assert_eq!(rep.t[k], emwd[k] + 4);
        }
        prop_assert_eq!(rep.t[0], 4);
        prop_assert_eq!(*rep.fo.last().unwrap(), 2);
    }

    #[test]
    fn optimum_bounds_every_strategy((p, s) in perm_and_strategy(8)) {
        let p = Permutation::new(p).unwrap();
        let s = LinearStrategy::new(s).unwrap();
        let rep = evaluate(&p, &s).unwrap();
        let space = optimize(&p, Objective::Space, DEFAULT_SIZE_LIMIT).unwrap();
        let time = optimize(&p, Objective::Time, DEFAULT_SIZE_LIMIT).unwrap();
        prop_assert!(space.value <= rep.max_fo);
        prop_assert!(time.value <= rep.max_t);
        prop_assert_eq!(evaluate(&p, &space.strategy).unwrap().max_fo, space.value);
        prop_assert_eq!(evaluate(&p, &time.strategy).unwrap().max_t, time.value);
    }

    #[test]
    fn optimizer_matches_brute_force(p in perm(6)) {
        let p = Permutation::new(p).unwrap();
        for obj in [Objective::Space, Objective::Time] {
            let a = optimize(&p, obj, DEFAULT_SIZE_LIMIT).unwrap();
            let b = brute_force_optimize(&p, obj).unwrap();
            prop_assert_eq!(a.value, b.value);
            prop_assert_eq!(a.strategy, b.strategy);
        }
    }

    #[test]
    fn decoding_coincides_at_bigram((p, s) in perm_and_strategy(10)) {
        let p = Permutation::new(p).unwrap();
        let s = LinearStrategy::new(s).unwrap();
        let dec = decoding_exponents(&p, &s, 2).unwrap();
        prop_assert_eq!(dec.time_exponents(), evaluate(&p, &s).unwrap().t);
        let tri = decoding_exponents(&p, &s, 3).unwrap();
        for (a, b) in tri.steps.iter().zip(&dec.steps) {
            prop_assert!(a.time_exponent >= b.time_exponent);
        }
    }

    #[test]
    fn cutwidth_dp_matches_brute_force(g in small_multigraph()) {
        for v in [CutwidthVariant::Cw, CutwidthVariant::Mcw] {
            let dp = scfg_linear::multigraph::cutwidth_exact_with_limit(&g, v, 20).unwrap();
            let bf = brute_force_cutwidth(&g, v).unwrap();
            prop_assert_eq!(dp.value, bf.value);
            prop_assert_eq!(arrangement_value(&g, &dp.witness, v).unwrap(), dp.value);
        }
    }

    #[test]
    fn cutwidth_is_a_lower_bound(g in small_multigraph(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (x >> 33) as usize % (i + 1));
        }
        let a = LinearArrangement::from_order(order).unwrap();
        let cw = cutwidth_exact(&g).unwrap().value;
        prop_assert!(cw <= arrangement_value(&g, &a, CutwidthVariant::Cw).unwrap());
    }

    #[test]
    fn recognizer_agrees_with_oracle(w1 in word(6), w2 in word(6)) {
        let g = parse_grammar(EXAMPLE).unwrap();
        let s = RuleStrategies::left_to_right(&g);
        let p = SentencePair::from_chars(&w1, &w2);
        let out = parse(&g, &s, &p, ParseOptions { count: true, keep_states: false }).unwrap();
        prop_assert_eq!(out.accepted, pair_membership_oracle(&g, &p).unwrap());
        prop_assert_eq!(out.derivations.unwrap(), count_derivations_oracle(&g, &p).unwrap());
        prop_assert_eq!(out.stats.arity_violations, 0);
    }

    #[test]
    fn chart_is_independent_of_rule_order(order in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), n in 1usize..=3) {
        let g = parse_grammar(EXAMPLE).unwrap();
        let h = g.reordered(&order);
        let w1 = format!("{}{}{}", "a".repeat(n), "b".repeat(n), "cd");
        let w2 = format!("dc{}{}", "b".repeat(n), "a".repeat(n));
        let p = SentencePair::from_chars(&w1, &w2);
        let run = |g: &scfg_linear::grammar::Scfg| parse(g, &RuleStrategies::left_to_right(g), &p, ParseOptions::default()).unwrap();
        let (a, b) = (run(&g), run(&h));
        prop_assert!(a.accepted && b.accepted);
        prop_assert_eq!(a.items, b.items);
        prop_assert_eq!(
            count_derivations(&g, &RuleStrategies::left_to_right(&g), &p).unwrap(),
            count_derivations(&h, &RuleStrategies::left_to_right(&h), &p).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn canonical_arrangement_is_a_bijection(v1 in prop::sample::subsequence((0..8).collect::<Vec<usize>>(), 4)) {
        let g = CubicGraph::cube_q3();
        let inst = build_gadget(&g, 4, 1).unwrap();
        let b = Bisection::new(8, v1).unwrap();
        let arr = canonical_arrangement(&inst, &b).unwrap();
        let n = inst.vertex_count();
        let mut seen = vec![false; n as usize];
        for p in 0..n {
            let v = arr.vertex_at(p);
            prop_assert_eq!(arr.position(v), p);
            prop_assert!(!seen[v as usize]);
            seen[v as usize] = true;
        }
    }
}

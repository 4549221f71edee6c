use proptest::prelude::*;

use quota_alloc::format::{
    parse_instance, parse_matching, parse_roommates, parse_x3c, serialize_instance,
    serialize_matching, serialize_roommates, serialize_x3c,
};
use quota_alloc::gadgets::Problem;
use quota_alloc::generators::{
    gen_condorcet, gen_perpo_x3c, gen_pop_from_roommates, gen_pop_x3c, gen_popv_x3c, gen_random,
    normalize_x3c, random_weights, solve_x3c, CondorcetVariant, Roommates, X3c,
};
use quota_alloc::instance::{dominates, popularity_margin, rank_sum};
use quota_alloc::open_set::{max_weight_fpt, solve_fpt, solve_open_sweep};
use quota_alloc::oracle::{
    enumerate_feasible_matchings, oracle_exists, oracle_max_weight, oracle_verify, ExistsMode,
    Guard,
};
use quota_alloc::weighted::{kernel_size_bound, kernelize, reduce_perpo, VerifyMode};

fn instance() -> impl Strategy<Value = quota_alloc::Instance> {
    (any::<u64>(), 1usize..=5, 1usize..=4, 1u32..=3)
        .prop_map(|(seed, n, m, q)| gen_random(seed, n, m, q, 0..=m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn instances_round_trip(inst in instance()) {
        let text = serialize_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst.clone());
        for m in enumerate_feasible_matchings(&inst, Guard::default()).unwrap().iter().take(20) {
            prop_assert_eq!(&parse_matching(&inst, &serialize_matching(&inst, m)).unwrap(), m);
        }
    }

    #[test]
    fn margins_are_antisymmetric_and_extend_dominance(inst in instance()) {
        let all = enumerate_feasible_matchings(&inst, Guard::default()).unwrap();
        for a in all.iter().take(12) {
            for b in all.iter().take(12) {
                let ab = popularity_margin(&inst, a, b).unwrap();
                prop_assert_eq!(ab, -popularity_margin(&inst, b, a).unwrap());
                if dominates(&inst, a, b).unwrap() {
                    prop_assert!(ab >= 1);
                    prop_assert!(!dominates(&inst, b, a).unwrap());
                }
            }
            prop_assert_eq!(popularity_margin(&inst, a, a).unwrap(), 0);
        }
    }

    #[test]
    fn fpt_matches_the_oracle(inst in instance(), seed in any::<u64>()) {
        let guard = Guard::default();
        let winst = random_weights(seed, &inst, 7);
        prop_assert_eq!(max_weight_fpt(&winst).unwrap().0, oracle_max_weight(&winst, guard).unwrap().0);
        let perpo = solve_fpt(&inst, Problem::Perpo, None).unwrap();
        prop_assert_eq!(perpo.is_some(), oracle_exists(&inst, ExistsMode::PerfectPareto, guard).unwrap().is_some());
        let all = enumerate_feasible_matchings(&inst, guard).unwrap();
        let m = &all[(seed as usize) % all.len()];
        for (p, mode) in [(Problem::Popv, VerifyMode::Popular), (Problem::Pov, VerifyMode::Pareto)] {
            let want = oracle_verify(&inst, m, mode, guard).unwrap().is_some();
            prop_assert_eq!(solve_fpt(&inst, p, Some(m)).unwrap().is_some(), want);
            prop_assert_eq!(solve_open_sweep(&inst, p, Some(m), 16).unwrap().is_some(), want);
        }
    }

    #[test]
    fn perpo_weights_give_maximum_pareto_matchings(inst in instance()) {
        let guard = Guard::default();
        let (_, m) = oracle_max_weight(&reduce_perpo(&inst), guard).unwrap();
        prop_assert!(oracle_verify(&inst, &m, VerifyMode::Pareto, guard).unwrap().is_none());
        let best = enumerate_feasible_matchings(&inst, guard).unwrap().iter().map(|x| x.matched_count()).max().unwrap();
        prop_assert_eq!(m.matched_count(), best);
    }

    #[test]
    fn kernel_keeps_the_optimum(seed in any::<u64>(), n in 1usize..=3, m in 4usize..=30, w in 0i64..=2) {
        let inst = gen_random(seed, n, m, 2, 1..=4).unwrap();
        let winst = random_weights(seed, &inst, w);
        let k = kernelize(&winst).unwrap();
        let guard = Guard { max_applicants: n, max_projects: m };
        prop_assert!(k.base().m() as u128 <= kernel_size_bound(n, winst.max_weight()));
        prop_assert_eq!(oracle_max_weight(&k, guard).unwrap().0, oracle_max_weight(&winst, guard).unwrap().0);
    }

    #[test]
    fn roommates_round_trip(seed in any::<u64>(), v in 0usize..=6) {
        let inst = gen_random(seed, v, v, 1, 0..=v).unwrap();
        let mut prefs: Vec<Vec<usize>> = vec![Vec::new(); v];
        for a in 0..v {
            for &b in inst.prefs(a) {
                if a != b && !prefs[a].contains(&b) {
                    prefs[a].push(b);
                    prefs[b].push(a);
                }
            }
        }
        let r = Roommates::new(prefs).unwrap();
        prop_assert_eq!(parse_roommates(&serialize_roommates(&r)).unwrap(), r.clone());
        let house = gen_pop_from_roommates(&r);
        prop_assert_eq!(parse_instance(&serialize_instance(&house)).unwrap(), house);
    }
}

#[test]
fn generators_round_trip() {
    for variant in [CondorcetVariant::Unit, CondorcetVariant::Lq3] {
        let inst = gen_condorcet(variant);
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }
    let x = normalize_x3c(&X3c::new(6, vec![[0, 1, 2], [3, 4, 5], [1, 2, 3]]).unwrap()).unwrap();
    assert_eq!(parse_x3c(&serialize_x3c(&x)).unwrap(), x);
    let (popv, m) = gen_popv_x3c(&x).unwrap();
    assert_eq!(parse_instance(&serialize_instance(&popv)).unwrap(), popv);
    assert_eq!(
        parse_matching(&popv, &serialize_matching(&popv, &m)).unwrap(),
        m
    );
    for inst in [gen_perpo_x3c(&x).unwrap(), gen_pop_x3c(&x).unwrap()] {
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }
}

#[test]
fn normalization_keeps_cover_existence() {
    let cases = [
        X3c::new(3, vec![]).unwrap(),
        X3c::new(3, vec![[0, 1, 2]]).unwrap(),
        X3c::new(6, vec![[0, 1, 2], [3, 4, 5]]).unwrap(),
        X3c::new(6, vec![[0, 1, 2], [1, 2, 3], [2, 4, 5]]).unwrap(),
        X3c::new(9, vec![[0, 1, 2], [3, 4, 5], [6, 7, 8], [0, 3, 6]]).unwrap(),
    ];
    for x in cases {
        let norm = normalize_x3c(&x).unwrap();
        assert!(norm.occurrences().iter().all(|&o| o == 3));
        assert_eq!((norm.elements / 3) % 2, 1);
        assert_eq!(
            solve_x3c(&x).unwrap().is_some(),
            solve_x3c(&norm).unwrap().is_some(),
            "{:?}",
            x.sets
        );
    }
}

#[test]
fn perfect_pareto_witness_has_minimum_rank_sum() {
    let inst = gen_condorcet(CondorcetVariant::Unit);
    let m = oracle_exists(&inst, ExistsMode::PerfectPareto, Guard::default())
        .unwrap()
        .unwrap();
    assert!(m.is_perfect());
    assert_eq!(rank_sum(&inst, &m), 6);
}

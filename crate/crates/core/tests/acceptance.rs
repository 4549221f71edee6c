use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use quota_alloc::gadgets::{add_last_resorts, build_gadget, neighboring_cases, solve_lq2, Problem};
use quota_alloc::generators::{
    gen_condorcet, gen_perpo_x3c, gen_pop_from_roommates, gen_pop_x3c, gen_popv_x3c, gen_random,
    gen_random_with, house_to_roommates, pad_odd, random_weights, roommates_to_house, solve_x3c,
    CondorcetVariant, RandomParams, Roommates, X3c,
};
use quota_alloc::instance::{dominates, is_feasible, popularity_margin};
use quota_alloc::open_set::{
    dominating_with_open_set, max_weight_fpt, max_weight_fpt_counted, max_weight_with_open_set,
    quota_projects, OpenSet,
};
use quota_alloc::oracle::{
    enumerate_feasible_matchings, oracle_exists, oracle_max_weight, oracle_verify, ExistsMode,
    Guard,
};
use quota_alloc::weighted::{
    kernel_size_bound, kernelize, reduce_verify, VerifyMode, WeightedInstance,
};
use quota_alloc::{Instance, Matching};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: quota_alloc::Error) -> String {
    e.to_string()
}

/// Random instance with `n <= max_n`, `m <= max_m` drawn from `seed`.
fn random_instance(
    seed: u64,
    max_n: usize,
    max_m: usize,
    lower_max: u32,
    upper_max: u32,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    gen_random_with(
        seed,
        &RandomParams {
            n,
            m,
            lower_max,
            upper_max,
            list_len: 0..=m,
        },
    )
    .unwrap()
}

/// Up to `k` feasible matchings spread over the enumeration order.
fn sample(all: &[Matching], k: usize) -> Vec<Matching> {
    if all.len() <= k {
        return all.to_vec();
    }
    (0..k)
        .map(|i| all[i * (all.len() - 1) / (k - 1)].clone())
        .collect()
}

fn criterion_1() -> Outcome {
    let guard = Guard::default();
    for variant in [CondorcetVariant::Unit, CondorcetVariant::Lq3] {
        let inst = gen_condorcet(variant);
        let found = oracle_exists(&inst, ExistsMode::Popular, guard).map_err(err)?;
        ensure(found.is_none(), || {
            format!("{variant:?} admits a popular matching")
        })?;
    }
    let unit = gen_condorcet(CondorcetVariant::Unit);
    for a in 0..unit.n() {
        let smaller = unit.without_applicant(a).map_err(err)?;
        let m = oracle_exists(&smaller, ExistsMode::Popular, guard)
            .map_err(err)?
            .ok_or_else(|| format!("removing applicant {a} leaves no popular matching"))?;
        for other in enumerate_feasible_matchings(&smaller, guard).map_err(err)? {
            let margin = popularity_margin(&smaller, &other, &m).map_err(err)?;
            ensure(margin <= 0, || "returned matching is not popular".into())?;
        }
    }
    Ok("both variants have no popular matching; every one-applicant deletion has one".into())
}

fn criterion_2() -> Outcome {
    let guard = Guard::default();
    let mut checked = 0usize;
    for seed in 0..1000u64 {
        let inst = random_instance(seed, 6, 4, 3, 3);
        for m in enumerate_feasible_matchings(&inst, guard).map_err(err)? {
            for mode in [VerifyMode::Popular, VerifyMode::Pareto] {
                let red = reduce_verify(&inst, &m, mode).map_err(err)?;
                let (best, _) = oracle_max_weight(&red.winst, guard).map_err(err)?;
                let witness = oracle_verify(&inst, &m, mode, guard).map_err(err)?;
                ensure((best > red.threshold) == witness.is_some(), || {
                    format!(
                        "seed {seed}, {mode:?}: weight {best} vs threshold {}",
                        red.threshold
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "1000 instances, {checked} (matching, mode) pairs agree"
    ))
}

fn criterion_3() -> Outcome {
    let guard = Guard::default();
    let (mut yes, mut no) = (0usize, 0usize);
    for seed in 0..1000u64 {
        let inst = random_instance(seed, 6, 4, 2, 3);
        let got = solve_lq2(&inst, Problem::Perpo, None).map_err(err)?;
        let want = oracle_exists(&inst, ExistsMode::PerfectPareto, guard).map_err(err)?;
        ensure(got.is_some() == want.is_some(), || {
            format!("seed {seed}: perpo disagrees")
        })?;
        if let Some(w) = &got {
            ensure(
                is_feasible(&inst, w).map_err(err)? && w.is_perfect(),
                || format!("seed {seed}: perpo witness not perfect"),
            )?;
            ensure(
                oracle_verify(&inst, w, VerifyMode::Pareto, guard)
                    .map_err(err)?
                    .is_none(),
                || format!("seed {seed}: perpo witness is dominated"),
            )?;
        }
        let all = enumerate_feasible_matchings(&inst, guard).map_err(err)?;
        for m in sample(&all, 6) {
            for (problem, mode) in [
                (Problem::Popv, VerifyMode::Popular),
                (Problem::Pov, VerifyMode::Pareto),
            ] {
                let got = solve_lq2(&inst, problem, Some(&m)).map_err(err)?;
                let want = oracle_verify(&inst, &m, mode, guard).map_err(err)?;
                ensure(got.is_some() == want.is_some(), || {
                    format!("seed {seed}: {problem:?} disagrees")
                })?;
                if let Some(w) = got {
                    ensure(is_feasible(&inst, &w).map_err(err)?, || {
                        format!("seed {seed}: infeasible witness")
                    })?;
                    let ok = match problem {
                        Problem::Popv => popularity_margin(&inst, &w, &m).map_err(err)? > 0,
                        _ => dominates(&inst, &w, &m).map_err(err)?,
                    };
                    ensure(ok, || {
                        format!("seed {seed}: {problem:?} witness fails the predicate")
                    })?;
                    yes += 1;
                } else {
                    no += 1;
                }
            }
        }
    }
    Ok(format!(
        "1000 instances; verify answers: {yes} yes, {no} no"
    ))
}

/// All perfect matchings of a graph as sorted edge lists.
fn perfect_matchings(vertices: usize, edges: &[(usize, usize, i64)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); vertices];
    for &(u, v, _) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    fn go(
        adj: &[Vec<usize>],
        used: &mut [bool],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(u) = used.iter().position(|&x| !x) else {
            out.push(cur.clone());
            return;
        };
        used[u] = true;
        for &v in &adj[u] {
            if !used[v] {
                used[v] = true;
                cur.push((u.min(v), u.max(v)));
                go(adj, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
        used[u] = false;
    }
    let mut out = Vec::new();
    go(&adj, &mut vec![false; vertices], &mut Vec::new(), &mut out);
    out
}

fn criterion_4() -> Outcome {
    let guard = Guard::unlimited();
    let (mut instances, mut cases, mut matchings) = (0usize, 0usize, 0usize);
    for seed in 0..400u64 {
        let inst = random_instance(seed, 4, 3, 2, 3);
        let winst = random_weights(seed, &inst, 4);
        let ext = add_last_resorts(&winst);
        let base = ext.base();
        let all = enumerate_feasible_matchings(base, guard).map_err(err)?;
        let perfect: Vec<Matching> = all.iter().filter(|m| m.is_perfect()).cloned().collect();
        instances += 1;
        for m in sample(&perfect, 3) {
            for case in neighboring_cases(base, &m) {
                let mut expected: BTreeMap<Vec<Option<usize>>, i64> = BTreeMap::new();
                for cand in &perfect {
                    let loads = cand.loads(base.m());
                    if (0..base.m()).all(|p| case[p].contains(loads[p])) {
                        expected.insert(cand.assignment().to_vec(), ext.weight_of(cand));
                    }
                }
                let gadget = build_gadget(&ext, &case).map_err(err)?;
                let mut projected: BTreeMap<Vec<Option<usize>>, i64> = BTreeMap::new();
                for pm in perfect_matchings(gadget.graph.vertex_count(), gadget.graph.edges()) {
                    let w: i64 = pm
                        .iter()
                        .map(|&(u, v)| gadget.graph.weight(u, v).unwrap())
                        .sum();
                    let proj = gadget.project(base.n(), &pm);
                    ensure(ext.weight_of(&proj) == w, || {
                        format!("seed {seed}: weight changes under projection")
                    })?;
                    projected.insert(proj.assignment().to_vec(), w);
                }
                let weights = |m: &BTreeMap<Vec<Option<usize>>, i64>| {
                    let mut v: Vec<i64> = m.values().copied().collect();
                    v.sort_unstable();
                    v
                };
                ensure(projected.len() == expected.len(), || {
                    format!(
                        "seed {seed}: {} projected vs {} neighboring",
                        projected.len(),
                        expected.len()
                    )
                })?;
                ensure(weights(&projected) == weights(&expected), || {
                    format!("seed {seed}: weight multisets differ")
                })?;
                ensure(projected == expected, || {
                    format!("seed {seed}: matching sets differ")
                })?;
                cases += 1;
                matchings += expected.len();
            }
        }
    }
    Ok(format!(
        "{instances} instances, {cases} degree cases, {matchings} matchings matched one to one"
    ))
}

/// Quotas 1/1, 3/3, 2/4, 2/2.
fn four_project_instance() -> (Instance, Matching) {
    let inst = Instance::from_names(
        &[("p1", 1, 1), ("p2", 3, 3), ("p3", 2, 4), ("p4", 2, 2)],
        &[
            ("a1", &["p2", "p1", "p3"]),
            ("a2", &["p2", "p4"]),
            ("a3", &["p3", "p2", "p4"]),
            ("a4", &["p3"]),
        ],
    )
    .unwrap();
    let m = Matching::from_names(&inst, &[("a1", "p1"), ("a2", "p4"), ("a3", "p4")]).unwrap();
    (inst, m)
}

fn check_open_sets(
    inst: &Instance,
    seed: u64,
    ms: &[Matching],
    guard: Guard,
) -> Result<usize, String> {
    let all = enumerate_feasible_matchings(inst, guard).map_err(err)?;
    let mask_of = |m: &Matching| {
        m.open_projects(inst.m())
            .iter()
            .fold(0u64, |acc, &p| acc | 1 << p)
    };
    let winst = random_weights(seed, inst, 5);
    let mut checks = 0;
    for mask in 0..1u64 << inst.m() {
        let open = OpenSet::from_mask(inst, mask);
        let group: Vec<&Matching> = all.iter().filter(|m| mask_of(m) == mask).collect();
        let want = group.iter().map(|m| winst.weight_of(m)).max();
        let got = max_weight_with_open_set(&winst, &open).map_err(err)?;
        ensure(got.as_ref().map(|g| g.0) == want, || {
            format!("seed {seed} mask {mask}: max weight differs")
        })?;
        if let Some((w, m)) = got {
            ensure(
                mask_of(&m) == mask
                    && winst.weight_of(&m) == w
                    && is_feasible(inst, &m).map_err(err)?,
                || format!("seed {seed} mask {mask}: bad max-weight witness"),
            )?;
        }
        for m in ms {
            let mut want = false;
            for c in &group {
                if dominates(inst, c, m).map_err(err)? {
                    want = true;
                    break;
                }
            }
            let got = dominating_with_open_set(inst, m, &open).map_err(err)?;
            ensure(got.is_some() == want, || {
                format!("seed {seed} mask {mask}: dominance answer differs")
            })?;
            if let Some(w) = got {
                ensure(
                    mask_of(&w) == mask && dominates(inst, &w, m).map_err(err)?,
                    || format!("seed {seed} mask {mask}: bad dominating witness"),
                )?;
            }
            checks += 1;
        }
        checks += 1;
    }
    Ok(checks)
}

fn criterion_5() -> Outcome {
    let guard = Guard::default();
    let (fig, fig_m) = four_project_instance();
    let mut checks = check_open_sets(&fig, 7, std::slice::from_ref(&fig_m), guard)?;
    let open = OpenSet::from_names(&fig, &["p1", "p2", "p3"]).map_err(err)?;
    ensure(
        dominating_with_open_set(&fig, &fig_m, &open)
            .map_err(err)?
            .is_none(),
        || "four-project instance: unexpected dominating matching with p1, p2, p3 open".into(),
    )?;
    for seed in 0..300u64 {
        let inst = random_instance(seed, 5, 4, 3, 3);
        let all = enumerate_feasible_matchings(&inst, guard).map_err(err)?;
        checks += check_open_sets(&inst, seed, &sample(&all, 4), guard)?;
    }
    Ok(format!(
        "four-project instance plus 300 random instances, {checks} open-set queries agree"
    ))
}

/// `k` projects with lower quota 2 and the rest with lower quota 1.
fn timing_instance(k: usize, n: usize, m: usize) -> WeightedInstance {
    let base = gen_random(1000 + k as u64, n, m, 3, 2..=3).unwrap();
    let projects: Vec<_> = base
        .projects()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let lower = if i < k { 2 } else { 1 };
            quota_alloc::Project::new(p.name.clone(), lower, 3)
        })
        .collect();
    let inst = Instance::new(
        base.applicants().to_vec(),
        projects,
        base.all_prefs().to_vec(),
    )
    .unwrap();
    random_weights(k as u64, &inst, 9)
}

fn min_time(reps: usize, mut f: impl FnMut()) -> Duration {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn criterion_6() -> Outcome {
    let guard = Guard::default();
    let mut seed = 0u64;
    let mut done = 0;
    while done < 1000 {
        seed += 1;
        let inst = random_instance(seed, 6, 4, 3, 3);
        if quota_projects(&inst).len() > 3 {
            continue;
        }
        let winst = random_weights(seed, &inst, 6);
        let (w, m) = max_weight_fpt(&winst).map_err(err)?;
        let (want, _) = oracle_max_weight(&winst, guard).map_err(err)?;
        ensure(w == want, || format!("seed {seed}: fpt {w}, oracle {want}"))?;
        ensure(
            is_feasible(&inst, &m).map_err(err)? && winst.weight_of(&m) == w,
            || format!("seed {seed}: bad fpt witness"),
        )?;
        done += 1;
    }

    let (n, m) = (10, 8);
    let mut per_solve = Vec::new();
    let mut counts = Vec::new();
    for k in 1..=6 {
        let winst = timing_instance(k, n, m);
        let count = max_weight_fpt_counted(&winst, 16).map_err(err)?.subproblems;
        ensure(count == 1 << k, || {
            format!("m_quota {k}: {count} subproblems")
        })?;
        let t = min_time(15, || {
            max_weight_fpt_counted(&winst, 16).unwrap();
        });
        per_solve.push(t.as_secs_f64() / count as f64);
        counts.push(count);
    }
    for w in counts.windows(2) {
        ensure(w[1] <= 2 * w[0], || {
            format!("subproblems grew from {} to {}", w[0], w[1])
        })?;
    }
    let lo = per_solve.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = per_solve.iter().cloned().fold(0.0, f64::max);
    ensure(hi <= 2.0 * lo, || {
        format!("time per subproblem ranges from {lo:.2e}s to {hi:.2e}s")
    })?;
    Ok(format!(
        "{done} instances exact; subproblems {counts:?}; time per subproblem within {:.2}x",
        hi / lo
    ))
}

fn criterion_7() -> Outcome {
    let mut reduced = 0;
    let mut seed = 0u64;
    for _ in 0..200 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(8..=48);
        let inst = gen_random(seed, n, m, 3, 1..=6).unwrap();
        let winst = random_weights(seed, &inst, rng.gen_range(0..=2));
        let guard = Guard {
            max_applicants: n,
            max_projects: m,
        };
        let kernel = kernelize(&winst).map_err(err)?;
        let bound = kernel_size_bound(n, winst.max_weight());
        ensure(kernel.base().m() as u128 <= bound, || {
            format!(
                "seed {seed}: {} projects left, bound {bound}",
                kernel.base().m()
            )
        })?;
        let (before, _) = oracle_max_weight(&winst, guard).map_err(err)?;
        let (after, _) = oracle_max_weight(&kernel, guard).map_err(err)?;
        ensure(before == after, || {
            format!("seed {seed}: weight {before} before, {after} after")
        })?;
        if kernel.base().m() < m {
            reduced += 1;
        }
    }
    ensure(reduced > 0, || {
        "no instance was large enough to be reduced".into()
    })?;
    Ok(format!(
        "200 instances, {reduced} actually reduced, weights preserved, bounds respected"
    ))
}

/// Every family of at most `max_sets` triples over `elements` with at most three occurrences per element.
fn x3c_family(elements: usize, max_sets: usize) -> Vec<X3c> {
    let mut triples = Vec::new();
    for a in 0..elements {
        for b in a + 1..elements {
            for c in b + 1..elements {
                triples.push([a, b, c]);
            }
        }
    }
    let mut out = Vec::new();
    fn go(
        triples: &[[usize; 3]],
        start: usize,
        cur: &mut Vec<[usize; 3]>,
        max: usize,
        elements: usize,
        out: &mut Vec<X3c>,
    ) {
        out.push(X3c::new(elements, cur.clone()).unwrap());
        if cur.len() == max {
            return;
        }
        for i in start..triples.len() {
            cur.push(triples[i]);
            if X3c::new(elements, cur.clone())
                .unwrap()
                .occurrences()
                .iter()
                .all(|&o| o <= 3)
            {
                go(triples, i + 1, cur, max, elements, out);
            }
            cur.pop();
        }
    }
    go(&triples, 0, &mut Vec::new(), max_sets, elements, &mut out);
    out
}

fn criterion_8() -> Outcome {
    let guard = Guard::unlimited();
    let mut family = x3c_family(3, 1);
    family.extend(x3c_family(6, 3));
    let (mut yes, mut no) = (0, 0);
    for raw in &family {
        let x = pad_odd(raw).map_err(err)?;
        let cover = solve_x3c(&x).map_err(err)?.is_some();
        let (popv, m) = gen_popv_x3c(&x).map_err(err)?;
        let unpopular = oracle_verify(&popv, &m, VerifyMode::Popular, guard)
            .map_err(err)?
            .is_some();
        let perpo = gen_perpo_x3c(&x).map_err(err)?;
        let has_perpo = oracle_exists(&perpo, ExistsMode::PerfectPareto, guard)
            .map_err(err)?
            .is_some();
        let pop = gen_pop_x3c(&x).map_err(err)?;
        let no_popular = oracle_exists(&pop, ExistsMode::Popular, guard)
            .map_err(err)?
            .is_none();
        ensure(
            cover == unpopular && cover == has_perpo && cover == no_popular,
            || {
                format!(
                "{:?}: cover {cover}, unpopular {unpopular}, perfect PO {has_perpo}, no popular {no_popular}",
                raw.sets
            )
            },
        )?;
        if cover {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!(
        "{} set systems ({yes} with a cover, {no} without), all four answers agree",
        family.len()
    ))
}

/// Every simple graph on `v` vertices with every assignment of preference orders.
fn roommates_family(v: usize) -> Vec<Roommates> {
    let pairs: Vec<(usize, usize)> = (0..v)
        .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0..1u32 << pairs.len() {
        let mut nbrs = vec![Vec::new(); v];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                nbrs[a].push(b);
                nbrs[b].push(a);
            }
        }
        let orders: Vec<Vec<Vec<usize>>> = nbrs.iter().map(|l| permutations(l)).collect();
        let mut idx = vec![0usize; v];
        loop {
            let prefs = (0..v).map(|x| orders[x][idx[x]].clone()).collect();
            out.push(Roommates::new(prefs).unwrap());
            let mut i = 0;
            while i < v {
                idx[i] += 1;
                if idx[i] < orders[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == v {
                break;
            }
        }
    }
    out
}

fn permutations(l: &[usize]) -> Vec<Vec<usize>> {
    if l.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..l.len() {
        let mut rest = l.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn roommate_matchings(r: &Roommates) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    fn go(
        r: &Roommates,
        i: usize,
        mate: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if i == r.edges().len() {
            out.push(mate.clone());
            return;
        }
        go(r, i + 1, mate, out);
        let (u, v) = r.edges()[i];
        if mate[u].is_none() && mate[v].is_none() {
            mate[u] = Some(v);
            mate[v] = Some(u);
            go(r, i + 1, mate, out);
            mate[u] = None;
            mate[v] = None;
        }
    }
    go(r, 0, &mut vec![None; r.vertices()], &mut out);
    out
}

fn roommate_margin(r: &Roommates, new: &[Option<usize>], old: &[Option<usize>]) -> i64 {
    let rank = |v: usize, x: Option<usize>| {
        x.map_or(r.prefs(v).len(), |u| {
            r.prefs(v).iter().position(|&w| w == u).unwrap()
        })
    };
    (0..r.vertices())
        .map(|v| {
            (rank(v, new[v]) < rank(v, old[v])) as i64 - (rank(v, new[v]) > rank(v, old[v])) as i64
        })
        .sum()
}

fn criterion_9() -> Outcome {
    let guard = Guard::default();
    let mut count = 0;
    let mut without = 0;
    for v in 0..=4 {
        for r in roommates_family(v) {
            let inst = gen_pop_from_roommates(&r);
            let rm = roommate_matchings(&r);
            let houses: Vec<Matching> = rm
                .iter()
                .map(|m| roommates_to_house(&r, m))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            let feasible = enumerate_feasible_matchings(&inst, guard).map_err(err)?;
            let images: BTreeSet<Vec<Option<usize>>> =
                houses.iter().map(|h| h.assignment().to_vec()).collect();
            let all: BTreeSet<Vec<Option<usize>>> =
                feasible.iter().map(|h| h.assignment().to_vec()).collect();
            ensure(images == all && images.len() == rm.len(), || {
                format!("{v} vertices: bijection fails")
            })?;
            for (h, m) in houses.iter().zip(&rm) {
                ensure(&house_to_roommates(&r, h) == m, || {
                    "inverse map fails".into()
                })?;
            }
            let mut popular_exists = false;
            for (i, a) in rm.iter().enumerate() {
                let mut popular = true;
                for (j, b) in rm.iter().enumerate() {
                    let margin = roommate_margin(&r, b, a);
                    ensure(
                        popularity_margin(&inst, &houses[j], &houses[i]).map_err(err)? == margin,
                        || "margins differ".into(),
                    )?;
                    popular &= margin <= 0;
                }
                popular_exists |= popular;
            }
            let found = oracle_exists(&inst, ExistsMode::Popular, guard).map_err(err)?;
            ensure(found.is_some() == popular_exists, || {
                "popular matching existence differs".into()
            })?;
            if let Some(h) = found {
                let m = house_to_roommates(&r, &h);
                ensure(rm.iter().all(|b| roommate_margin(&r, b, &m) <= 0), || {
                    "image is not popular".into()
                })?;
            }
            without += (!popular_exists) as usize;
            count += 1;
        }
    }
    let triangle = Roommates::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).map_err(err)?;
    let inst = gen_pop_from_roommates(&triangle);
    ensure(
        oracle_exists(&inst, ExistsMode::Popular, guard)
            .map_err(err)?
            .is_none(),
        || "cyclic triangle admits a popular matching".into(),
    )?;
    Ok(format!("{count} instances ({without} without a popular matching); margins preserved; triangle is a no-instance"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("condorcet instances", criterion_1),
        ("verification thresholds", criterion_2),
        ("lower quota at most 2 solver", criterion_3),
        ("gadget projections", criterion_4),
        ("fixed open set flows", criterion_5),
        ("quota project sweep", criterion_6),
        ("kernelization", criterion_7),
        ("exact cover reductions", criterion_8),
        ("roommates transformation", criterion_9),
    ];
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg} [{secs:.1}s]", i + 1)
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

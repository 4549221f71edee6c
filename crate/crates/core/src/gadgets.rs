//! Polynomial algorithms for instances whose lower quotas are at most 2.
//!
//! Every project is expanded into copy and stub vertices so that perfect
//! matchings of the expanded graph are exactly the quota-respecting
//! matchings in which each project takes one of a prescribed set of degrees.
//! Searching a handful of such degree prescriptions around a matching `M`
//! (the matchings of neighboring type) either finds a heavier matching or
//! proves `M` optimal.

use crate::blossom::{max_weight_perfect_matching, GeneralGraph};
use crate::error::{Error, Result};
use crate::instance::{ensure_feasible, rank_sum, Instance, Matching, Project};
use crate::weighted::{reduce_verify, VerifyMode, WeightedInstance};

/// The questions answered by [`solve_lq2`] and the flow-based solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Find a matching more popular than the given one.
    Popv,
    /// Find a matching dominating the given one.
    Pov,
    /// Find a perfect Pareto optimal matching.
    Perpo,
}

/// Degrees `{base, base + 2, ..., base + 2 * steps}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AllowedDegrees {
    pub base: usize,
    pub steps: usize,
}

impl AllowedDegrees {
    pub fn single(d: usize) -> Self {
        AllowedDegrees { base: d, steps: 0 }
    }

    pub fn max(&self) -> usize {
        self.base + 2 * self.steps
    }

    pub fn contains(&self, d: usize) -> bool {
        d >= self.base && d <= self.max() && (d - self.base).is_multiple_of(2)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let base = self.base;
        (0..=self.steps).map(move |i| base + 2 * i)
    }
}

/// Admissible degrees of project `p`: `{0} ∪ [ℓ_p, min(u_p, deg p)]`.
pub fn degree_list(inst: &Instance, p: usize) -> Vec<usize> {
    let Project { lower, upper, .. } = *inst.project(p);
    let top = (upper as usize).min(inst.neighbors(p).len());
    let mut out = vec![0];
    out.extend((lower as usize).max(1)..=top);
    out
}

/// Longest run of consecutive missing values between members of a sorted list.
pub fn gap(list: &[usize]) -> usize {
    list.windows(2).map(|w| w[1] - w[0] - 1).max().unwrap_or(0)
}

/// Splits a sorted degree list into maximal runs whose consecutive members
/// differ by exactly two with the value in between missing.
pub fn blocks(list: &[usize]) -> Vec<AllowedDegrees> {
    let mut out: Vec<AllowedDegrees> = Vec::new();
    for (i, &d) in list.iter().enumerate() {
        let joins = i > 0 && d == list[i - 1] + 2;
        match out.last_mut() {
            Some(b) if joins => b.steps += 1,
            _ => out.push(AllowedDegrees::single(d)),
        }
    }
    out
}

/// Role of an edge in a [`GadgetGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    /// Stands for the original edge between applicant and project.
    Incidence {
        applicant: usize,
        project: usize,
    },
    Internal,
}

/// An expanded graph with the meaning of each of its edges.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: GeneralGraph,
    /// Parallel to `graph.edges()`.
    pub backmap: Vec<EdgeRole>,
}

impl GadgetGraph {
    /// The matching of the quota instance encoded by a perfect matching.
    pub fn project(&self, n: usize, pairs: &[(usize, usize)]) -> Matching {
        let mut m = Matching::empty(n);
        for &(u, v) in pairs {
            let k = self
                .graph
                .edge_index(u, v)
                .expect("pair must be a gadget edge");
            if let EdgeRole::Incidence { applicant, project } = self.backmap[k] {
                m.set(applicant, Some(project));
            }
        }
        m
    }
}

/// Builds the gadget graph in which every applicant has degree one and
/// project `p` has a degree from `allowed[p]`.
///
/// Applicant `a` is vertex `a`. A project with `k` neighbours and allowed
/// degrees `{d, ..., d + 2r}` gets `k` copies (copy `i` joined to its `i`-th
/// neighbour by the original weight), `k - d` stubs joined to every copy at
/// weight 0, and `r` disjoint stub pairs. Projects whose only allowed degree
/// is 0 are left out.
pub fn build_gadget(winst: &WeightedInstance, allowed: &[AllowedDegrees]) -> Result<GadgetGraph> {
    let inst = winst.base();
    if allowed.len() != inst.m() {
        return Err(Error::Parameters(format!(
            "{} degree sets for {} projects",
            allowed.len(),
            inst.m()
        )));
    }
    let mut g = GeneralGraph::new(inst.n());
    let mut backmap = Vec::new();
    for (p, spec) in allowed.iter().enumerate() {
        let nbrs = inst.neighbors(p);
        let k = nbrs.len();
        if spec.max() > k {
            return Err(Error::Parameters(format!(
                "project `{}` has {k} neighbours but degree {} is allowed",
                inst.project(p).name,
                spec.max()
            )));
        }
        if *spec == AllowedDegrees::single(0) {
            continue;
        }
        let copies: Vec<usize> = nbrs
            .iter()
            .map(|&a| {
                let c = g.add_vertex();
                g.add_edge(a, c, winst.weight(a, p).unwrap()).unwrap();
                backmap.push(EdgeRole::Incidence {
                    applicant: a,
                    project: p,
                });
                c
            })
            .collect();
        let stubs: Vec<usize> = (0..k - spec.base).map(|_| g.add_vertex()).collect();
        for &c in &copies {
            for &s in &stubs {
                g.add_edge(c, s, 0).unwrap();
                backmap.push(EdgeRole::Internal);
            }
        }
        for j in 0..spec.steps {
            g.add_edge(stubs[2 * j], stubs[2 * j + 1], 0).unwrap();
            backmap.push(EdgeRole::Internal);
        }
    }
    Ok(GadgetGraph { graph: g, backmap })
}

/// Appends a private project with quotas 1/1 to the end of every list, at weight 0.
pub fn add_last_resorts(winst: &WeightedInstance) -> WeightedInstance {
    let inst = winst.base();
    let mut projects = inst.projects().to_vec();
    let mut prefs = inst.all_prefs().to_vec();
    let mut weights = winst.weights().to_vec();
    for a in 0..inst.n() {
        let mut name = format!("lr:{}", inst.applicant_name(a));
        while projects.iter().any(|p| p.name == name) {
            name.insert(0, '_');
        }
        prefs[a].push(projects.len());
        weights[a].push(0);
        projects.push(Project::new(name, 1, 1));
    }
    let base = Instance::new(inst.applicants().to_vec(), projects, prefs)
        .expect("last resorts keep the instance valid");
    WeightedInstance::new(base, weights).expect("last resorts keep weights valid")
}

fn check_lq2(inst: &Instance) -> Result<()> {
    let l = inst.lower_max();
    if l > 2 {
        return Err(Error::LowerQuotaTooLarge(l));
    }
    Ok(())
}

/// Degree prescriptions covering every matching of neighboring type to `m`.
///
/// The first entry keeps every project in the block of its current degree.
/// Then, per project, each block two steps away; then, per pair of projects,
/// each combination of directly adjacent blocks.
pub fn neighboring_cases(inst: &Instance, m: &Matching) -> Vec<Vec<AllowedDegrees>> {
    let loads = m.loads(inst.m());
    let mut base = Vec::with_capacity(inst.m());
    let mut adjacent = Vec::with_capacity(inst.m());
    let mut distance_two = Vec::with_capacity(inst.m());
    for p in 0..inst.m() {
        let bl = blocks(&degree_list(inst, p));
        let i = bl
            .iter()
            .position(|b| b.contains(loads[p]))
            .expect("feasible load lies in a block");
        let cur = bl[i];
        base.push(cur);
        let near = |t: &AllowedDegrees| t.max() + 1 == cur.base || cur.max() + 1 == t.base;
        let far = |t: &AllowedDegrees| cur.base == t.max() + 2 || t.base == cur.max() + 2;
        adjacent.push(bl.iter().copied().filter(near).collect::<Vec<_>>());
        distance_two.push(bl.iter().copied().filter(far).collect::<Vec<_>>());
    }

    let mut cases = vec![base.clone()];
    for p in 0..inst.m() {
        for &t in &distance_two[p] {
            let mut c = base.clone();
            c[p] = t;
            cases.push(c);
        }
    }
    for p in 0..inst.m() {
        for q in p + 1..inst.m() {
            for &tp in &adjacent[p] {
                for &tq in &adjacent[q] {
                    let mut c = base.clone();
                    c[p] = tp;
                    c[q] = tq;
                    cases.push(c);
                }
            }
        }
    }
    cases
}

/// A feasible matching strictly heavier than the perfect matching `m`, searched
/// among the matchings of neighboring type; `None` means `m` has maximum weight.
pub fn find_heavier_neighboring(
    winst: &WeightedInstance,
    m: &Matching,
) -> Result<Option<Matching>> {
    let inst = winst.base();
    check_lq2(inst)?;
    ensure_feasible(inst, m)?;
    if !m.is_perfect() {
        return Err(Error::NotPerfect);
    }
    let current = winst.weight_of(m);
    for case in neighboring_cases(inst, m) {
        let gadget = build_gadget(winst, &case)?;
        if let Some((w, pairs)) = max_weight_perfect_matching(&gadget.graph) {
            if w > current {
                let better = gadget.project(inst.n(), &pairs);
                debug_assert_eq!(winst.weight_of(&better), w);
                return Ok(Some(better));
            }
        }
    }
    Ok(None)
}

fn extend(m: &Matching, original_m: usize) -> Matching {
    Matching::from_assignment(
        m.assignment()
            .iter()
            .enumerate()
            .map(|(a, p)| Some(p.unwrap_or(original_m + a)))
            .collect(),
    )
}

fn strip(m: &Matching, original_m: usize) -> Matching {
    Matching::from_assignment(
        m.assignment()
            .iter()
            .map(|p| p.filter(|&p| p < original_m))
            .collect(),
    )
}

fn improve_to_max(ext: &WeightedInstance, mut cur: Matching) -> Result<Matching> {
    while let Some(better) = find_heavier_neighboring(ext, &cur)? {
        cur = better;
    }
    Ok(cur)
}

/// Maximum-weight feasible matching, by repeated improvement from the empty matching.
pub fn max_weight_lq2(winst: &WeightedInstance) -> Result<(i64, Matching)> {
    check_lq2(winst.base())?;
    let m = winst.base().m();
    let ext = add_last_resorts(winst);
    let best = strip(
        &improve_to_max(&ext, extend(&Matching::empty(winst.base().n()), m))?,
        m,
    );
    Ok((winst.weight_of(&best), best))
}

/// Answers [`Problem::Popv`] and [`Problem::Pov`] for `m`, or finds a perfect
/// Pareto optimal matching for [`Problem::Perpo`] (`m` ignored).
pub fn solve_lq2(inst: &Instance, mode: Problem, m: Option<&Matching>) -> Result<Option<Matching>> {
    check_lq2(inst)?;
    match mode {
        Problem::Popv => verify(inst, m.ok_or(Error::MissingMatching)?, VerifyMode::Popular),
        Problem::Pov => verify(inst, m.ok_or(Error::MissingMatching)?, VerifyMode::Pareto),
        Problem::Perpo => {
            let unit = WeightedInstance::uniform(inst.clone(), 1)?;
            let (_, mut cur) = max_weight_lq2(&unit)?;
            if !cur.is_perfect() {
                return Ok(None);
            }
            while let Some(better) = verify(inst, &cur, VerifyMode::Pareto)? {
                debug_assert!(rank_sum(inst, &better) < rank_sum(inst, &cur));
                cur = better;
            }
            Ok(Some(cur))
        }
    }
}

/// One improvement step from `m` on its own reduction, warm-started at `m`.
fn verify(inst: &Instance, m: &Matching, mode: VerifyMode) -> Result<Option<Matching>> {
    let red = reduce_verify(inst, m, mode)?;
    let ext = add_last_resorts(&red.winst);
    let start = extend(m, inst.m());
    debug_assert_eq!(ext.weight_of(&start), red.threshold);
    Ok(find_heavier_neighboring(&ext, &start)?.map(|b| strip(&b, inst.m())))
}


#[cfg(test)]
mod fuzz {
    use super::*;
    use crate::generators::{gen_random_with, random_weights, RandomParams};
    use crate::oracle::{oracle_max_weight, Guard};

    #[test]
    fn max_weight_matches_oracle_on_random_instances() {
        for seed in 0..1000u64 {
            let m = 1 + (seed / 6 % 4) as usize;
            let params = RandomParams {
                n: 1 + (seed % 6) as usize,
                m,
                lower_max: 2,
                upper_max: 3,
                list_len: 0..=m,
            };
            let inst = gen_random_with(seed, &params).unwrap();
            let w = random_weights(seed, &inst, 4);
            let (got, m) = max_weight_lq2(&w).unwrap();
            let (want, _) = oracle_max_weight(&w, Guard::default()).unwrap();
            assert_eq!(got, want, "seed {seed}");
            assert!(crate::instance::is_feasible(&inst, &m).unwrap());
        }
    }
}

//! Solvers that fix which projects are open and reduce the rest to flows, and
//! the sweep over open quota projects that makes them exact in general.

use crate::error::{Error, Result};
use crate::flow::{feasible_flow, max_cost_circulation, Capacity, FlowNetwork};
use crate::gadgets::Problem;
use crate::instance::{ensure_feasible, Instance, Matching};
use crate::weighted::{reduce_perpo, reduce_verify, VerifyMode, WeightedInstance};

/// Default cap on the number of projects with lower quota above 1 for [`max_weight_fpt`].
pub const MQUOTA_GUARD: usize = 16;

/// A set of projects prescribed to be open.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpenSet {
    members: Vec<bool>,
}

impl OpenSet {
    pub fn new(inst: &Instance, projects: &[usize]) -> Result<Self> {
        let mut members = vec![false; inst.m()];
        for &p in projects {
            if p >= inst.m() {
                return Err(Error::Parameters(format!(
                    "open set names unknown project #{p}"
                )));
            }
            members[p] = true;
        }
        Ok(OpenSet { members })
    }

    pub fn from_names(inst: &Instance, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| {
                inst.project_index(n).ok_or_else(|| {
                    Error::Parameters(format!("open set names unknown project `{n}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        OpenSet::new(inst, &idx)
    }

    /// The open set given by bit `i` of `mask` for project `i`.
    pub fn from_mask(inst: &Instance, mask: u64) -> Self {
        OpenSet {
            members: (0..inst.m())
                .map(|p| p < 64 && mask >> p & 1 == 1)
                .collect(),
        }
    }

    /// Projects opened by `m`.
    pub fn of_matching(inst: &Instance, m: &Matching) -> Self {
        OpenSet {
            members: m.loads(inst.m()).iter().map(|&l| l > 0).collect(),
        }
    }

    pub fn contains(&self, p: usize) -> bool {
        self.members[p]
    }

    pub fn projects(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&p| self.members[p])
            .collect()
    }
}

/// Projects with lower quota above 1, in instance order.
pub fn quota_projects(inst: &Instance) -> Vec<usize> {
    (0..inst.m())
        .filter(|&p| inst.project(p).lower > 1)
        .collect()
}

/// A matching dominating `m` that opens exactly `open`, or `None`.
///
/// For each applicant `a` in turn, a flow network lets `a` use only open
/// projects she strictly prefers to `M(a)`, lets every other applicant keep
/// her project (if open) or move to an open project she strictly prefers,
/// and lets applicants unmatched in `m` stay unmatched. Projects must carry
/// between their quotas.
pub fn dominating_with_open_set(
    inst: &Instance,
    m: &Matching,
    open: &OpenSet,
) -> Result<Option<Matching>> {
    ensure_feasible(inst, m)?;
    let n = inst.n();
    let better = |b: usize| -> Vec<usize> {
        let cur = inst.rank_unchecked(b, m.get(b));
        inst.prefs(b)
            .iter()
            .copied()
            .filter(|&p| open.contains(p) && inst.rank_unchecked(b, Some(p)) < cur)
            .collect()
    };
    for a in 0..n {
        if better(a).is_empty() {
            continue;
        }
        // Nodes: source, sink, applicants, projects, unmatched slot.
        let (s, t) = (0, 1);
        let app = |b: usize| 2 + b;
        let proj = |p: usize| 2 + n + p;
        let bottom = 2 + n + inst.m();
        let mut net = FlowNetwork::new(bottom + 1);
        let mut incidence = Vec::new();
        for b in 0..n {
            net.add_arc(s, app(b), 1, Capacity::Finite(1), 0)?;
            let mut targets = better(b);
            if b != a {
                match m.get(b) {
                    Some(p) if open.contains(p) => targets.push(p),
                    Some(_) => {}
                    None => {
                        net.add_arc(app(b), bottom, 0, Capacity::Finite(1), 0)?;
                    }
                }
            }
            for p in targets {
                let k = net.add_arc(app(b), proj(p), 0, Capacity::Finite(1), 0)?;
                incidence.push((k, b, p));
            }
        }
        for p in open.projects() {
            let q = inst.project(p);
            net.add_arc(
                proj(p),
                t,
                q.lower as i64,
                Capacity::Finite(q.upper as i64),
                0,
            )?;
        }
        net.add_arc(bottom, t, 0, Capacity::Unbounded, 0)?;
        if let Some(flow) = feasible_flow(&net, s, t)? {
            let mut out = Matching::empty(n);
            for (k, b, p) in incidence {
                if flow[k] > 0 {
                    out.set(b, Some(p));
                }
            }
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// Max-cost circulation where project `p` may take `demand[p]..=u_p`
/// applicants (`None`: project unavailable).
fn circulation_with_demands(
    winst: &WeightedInstance,
    demand: &[Option<u32>],
) -> Result<Option<(i64, Matching)>> {
    let inst = winst.base();
    let n = inst.n();
    let s = 0;
    let app = |a: usize| 1 + a;
    let proj = |p: usize| 1 + n + p;
    let bottom = 1 + n + inst.m();
    let mut net = FlowNetwork::new(bottom + 1);
    let mut incidence = Vec::new();
    for a in 0..n {
        net.add_arc(s, app(a), 1, Capacity::Finite(1), 0)?;
        net.add_arc(app(a), bottom, 0, Capacity::Finite(1), 0)?;
        for (&p, &w) in inst.prefs(a).iter().zip(&winst.weights()[a]) {
            if demand[p].is_some() {
                let k = net.add_arc(app(a), proj(p), 0, Capacity::Finite(1), w)?;
                incidence.push((k, a, p));
            }
        }
    }
    for (p, d) in demand.iter().enumerate() {
        if let Some(d) = d {
            net.add_arc(
                proj(p),
                s,
                *d as i64,
                Capacity::Finite(inst.project(p).upper as i64),
                0,
            )?;
        }
    }
    net.add_arc(bottom, s, 0, Capacity::Finite(n as i64), 0)?;
    Ok(max_cost_circulation(&net)?.map(|(flow, cost)| {
        let mut m = Matching::empty(n);
        for (k, a, p) in incidence {
            if flow[k] > 0 {
                m.set(a, Some(p));
            }
        }
        (cost, m)
    }))
}

/// Heaviest matching opening exactly `open`, or `None` if no matching does.
pub fn max_weight_with_open_set(
    winst: &WeightedInstance,
    open: &OpenSet,
) -> Result<Option<(i64, Matching)>> {
    let inst = winst.base();
    let demand: Vec<Option<u32>> = (0..inst.m())
        .map(|p| open.contains(p).then(|| inst.project(p).lower))
        .collect();
    circulation_with_demands(winst, &demand)
}

/// Result of the sweep in [`max_weight_fpt_counted`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptOutcome {
    pub weight: i64,
    pub matching: Matching,
    /// Circulation problems solved, `2^m_quota`.
    pub subproblems: usize,
}

/// Heaviest feasible matching, by one circulation per subset of the projects with lower quota above 1.
pub fn max_weight_fpt(winst: &WeightedInstance) -> Result<(i64, Matching)> {
    let out = max_weight_fpt_counted(winst, MQUOTA_GUARD)?;
    Ok((out.weight, out.matching))
}

/// Like [`max_weight_fpt`], with an explicit guard and the subproblem count.
///
/// Subset `Q` of the quota projects (bit `i` for the `i`-th, ascending masks)
/// forces `Q` open at their lower quotas and removes the other quota
/// projects; projects with lower quota 1 may take `0..=u` applicants.
/// Ties keep the first maximum found.
pub fn max_weight_fpt_counted(winst: &WeightedInstance, mquota_guard: usize) -> Result<FptOutcome> {
    let inst = winst.base();
    let quota = quota_projects(inst);
    if quota.len() > mquota_guard || quota.len() >= 63 {
        return Err(Error::GuardExceeded {
            what: "m_quota",
            value: quota.len(),
            limit: mquota_guard.min(62),
        });
    }
    let mut best: Option<(i64, Matching)> = None;
    let mut subproblems = 0;
    for mask in 0..1u64 << quota.len() {
        let mut demand: Vec<Option<u32>> = vec![Some(0); inst.m()];
        for (i, &p) in quota.iter().enumerate() {
            demand[p] = (mask >> i & 1 == 1).then(|| inst.project(p).lower);
        }
        subproblems += 1;
        if let Some((w, m)) = circulation_with_demands(winst, &demand)? {
            if best.as_ref().is_none_or(|(b, _)| w > *b) {
                best = Some((w, m));
            }
        }
    }
    let (weight, matching) = best.expect("forcing nothing open admits the empty matching");
    Ok(FptOutcome {
        weight,
        matching,
        subproblems,
    })
}

/// Same questions as [`crate::gadgets::solve_lq2`], for any lower quotas.
pub fn solve_fpt(inst: &Instance, mode: Problem, m: Option<&Matching>) -> Result<Option<Matching>> {
    solve_fpt_guarded(inst, mode, m, MQUOTA_GUARD)
}

pub fn solve_fpt_guarded(
    inst: &Instance,
    mode: Problem,
    m: Option<&Matching>,
    mquota_guard: usize,
) -> Result<Option<Matching>> {
    match mode {
        Problem::Popv | Problem::Pov => {
            let vm = if mode == Problem::Popv {
                VerifyMode::Popular
            } else {
                VerifyMode::Pareto
            };
            let red = reduce_verify(inst, m.ok_or(Error::MissingMatching)?, vm)?;
            let out = max_weight_fpt_counted(&red.winst, mquota_guard)?;
            Ok((out.weight > red.threshold).then_some(out.matching))
        }
        Problem::Perpo => {
            let out = max_weight_fpt_counted(&reduce_perpo(inst), mquota_guard)?;
            Ok(out.matching.is_perfect().then_some(out.matching))
        }
    }
}

/// Default cap on `m` for [`solve_open_sweep`], which tries all `2^m` open sets.
pub const OPEN_SWEEP_GUARD: usize = 16;

/// Answers the same questions by trying every open set with the fixed-open-set solvers.
pub fn solve_open_sweep(
    inst: &Instance,
    mode: Problem,
    m: Option<&Matching>,
    guard: usize,
) -> Result<Option<Matching>> {
    if inst.m() > guard || inst.m() >= 63 {
        return Err(Error::GuardExceeded {
            what: "open set sweep",
            value: inst.m(),
            limit: guard.min(62),
        });
    }
    let masks = 0..1u64 << inst.m();
    match mode {
        Problem::Pov => {
            let m = m.ok_or(Error::MissingMatching)?;
            for mask in masks {
                let open = OpenSet::from_mask(inst, mask);
                if let Some(found) = dominating_with_open_set(inst, m, &open)? {
                    return Ok(Some(found));
                }
            }
            Ok(None)
        }
        Problem::Popv => {
            let red = reduce_verify(inst, m.ok_or(Error::MissingMatching)?, VerifyMode::Popular)?;
            for mask in masks {
                let open = OpenSet::from_mask(inst, mask);
                if let Some((w, found)) = max_weight_with_open_set(&red.winst, &open)? {
                    if w > red.threshold {
                        return Ok(Some(found));
                    }
                }
            }
            Ok(None)
        }
        Problem::Perpo => {
            let winst = reduce_perpo(inst);
            let mut best: Option<(i64, Matching)> = None;
            for mask in masks {
                let open = OpenSet::from_mask(inst, mask);
                if let Some((w, found)) = max_weight_with_open_set(&winst, &open)? {
                    if best.as_ref().is_none_or(|(b, _)| w > *b) {
                        best = Some((w, found));
                    }
                }
            }
            Ok(best.map(|(_, m)| m).filter(Matching::is_perfect))
        }
    }
}

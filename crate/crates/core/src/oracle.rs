//! Exhaustive reference answers for small instances.
//!
//! Every feasible matching is visited exactly once in a fixed order: applicants
//! in instance order, each trying "unmatched" first and then her list best
//! first. Branches are cut only when a quota can no longer be met.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::instance::{dominates_unchecked, ensure_feasible, margin_unchecked, Instance, Matching};
use crate::weighted::{VerifyMode, WeightedInstance};

/// Size limits for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub max_applicants: usize,
    pub max_projects: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_applicants: 8,
            max_projects: 6,
        }
    }
}

impl Guard {
    pub fn unlimited() -> Self {
        Guard {
            max_applicants: usize::MAX,
            max_projects: usize::MAX,
        }
    }

    pub fn with_applicants(max_applicants: usize) -> Self {
        Guard {
            max_applicants,
            ..Guard::default()
        }
    }

    pub fn check(&self, inst: &Instance) -> Result<()> {
        if inst.n() > self.max_applicants {
            return Err(Error::GuardExceeded {
                what: "oracle applicant",
                value: inst.n(),
                limit: self.max_applicants,
            });
        }
        if inst.m() > self.max_projects {
            return Err(Error::GuardExceeded {
                what: "oracle project",
                value: inst.m(),
                limit: self.max_projects,
            });
        }
        Ok(())
    }
}

/// Which existence question to answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExistsMode {
    Popular,
    PerfectPareto,
}

struct Walker<'a, F> {
    inst: &'a Instance,
    /// `remaining[a][i]`: neighbours of `prefs(a)[i]` with index greater than `a`.
    remaining: Vec<Vec<usize>>,
    loads: Vec<usize>,
    current: Matching,
    visit: F,
}

impl<F: FnMut(&Matching) -> ControlFlow<()>> Walker<'_, F> {
    fn run(&mut self, a: usize) -> ControlFlow<()> {
        if a == self.inst.n() {
            return (self.visit)(&self.current);
        }
        if self.consistent(a) {
            self.run(a + 1)?;
        }
        for i in 0..self.inst.prefs(a).len() {
            let p = self.inst.prefs(a)[i];
            if self.loads[p] == self.inst.project(p).upper as usize {
                continue;
            }
            self.loads[p] += 1;
            self.current.set(a, Some(p));
            let ok = self.consistent(a);
            if ok {
                self.run(a + 1)?;
            }
            self.loads[p] -= 1;
            self.current.set(a, None);
        }
        ControlFlow::Continue(())
    }

    /// Whether every open project next to `a` can still reach its lower quota.
    fn consistent(&self, a: usize) -> bool {
        self.inst
            .prefs(a)
            .iter()
            .zip(&self.remaining[a])
            .all(|(&p, &rest)| {
                let load = self.loads[p];
                load == 0 || load + rest >= self.inst.project(p).lower as usize
            })
    }
}

/// Calls `visit` on every feasible matching in deterministic order until it breaks.
pub fn for_each_feasible_matching<F>(inst: &Instance, guard: Guard, visit: F) -> Result<()>
where
    F: FnMut(&Matching) -> ControlFlow<()>,
{
    guard.check(inst)?;
    let _ = walk(inst, visit);
    Ok(())
}

fn walk<F: FnMut(&Matching) -> ControlFlow<()>>(inst: &Instance, visit: F) -> ControlFlow<()> {
    let remaining = (0..inst.n())
        .map(|a| {
            inst.prefs(a)
                .iter()
                .map(|&p| inst.neighbors(p).iter().filter(|&&b| b > a).count())
                .collect()
        })
        .collect();
    let mut walker = Walker {
        inst,
        remaining,
        loads: vec![0; inst.m()],
        current: Matching::empty(inst.n()),
        visit,
    };
    walker.run(0)
}

/// All feasible matchings, the empty matching first.
pub fn enumerate_feasible_matchings(inst: &Instance, guard: Guard) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    for_each_feasible_matching(inst, guard, |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// First matching that is more popular than / dominates `m`, if any.
pub fn oracle_verify(
    inst: &Instance,
    m: &Matching,
    mode: VerifyMode,
    guard: Guard,
) -> Result<Option<Matching>> {
    ensure_feasible(inst, m)?;
    let mut found = None;
    for_each_feasible_matching(inst, guard, |cand| {
        if beats(inst, cand, m, mode) {
            found = Some(cand.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

fn beats(inst: &Instance, cand: &Matching, m: &Matching, mode: VerifyMode) -> bool {
    match mode {
        VerifyMode::Popular => margin_unchecked(inst, cand, m) >= 1,
        VerifyMode::Pareto => dominates_unchecked(inst, cand, m),
    }
}

/// A popular matching or a perfect Pareto optimal matching, if one exists.
pub fn oracle_exists(inst: &Instance, mode: ExistsMode, guard: Guard) -> Result<Option<Matching>> {
    guard.check(inst)?;
    match mode {
        ExistsMode::Popular => Ok(first_popular(inst)),
        ExistsMode::PerfectPareto => Ok(best_perfect(inst)),
    }
}

fn first_popular(inst: &Instance) -> Option<Matching> {
    let all = {
        let mut v = Vec::new();
        let _ = walk(inst, |m| {
            v.push(m.clone());
            ControlFlow::Continue(())
        });
        v
    };
    // Matchings that recently beat someone are tried first as challengers.
    let mut pool: Vec<usize> = Vec::new();
    'candidates: for m in &all {
        for k in 0..pool.len() {
            if margin_unchecked(inst, &all[pool[k]], m) >= 1 {
                let w = pool.remove(k);
                pool.insert(0, w);
                continue 'candidates;
            }
        }
        match all.iter().position(|c| margin_unchecked(inst, c, m) >= 1) {
            Some(w) => pool.insert(0, w),
            None => return Some(m.clone()),
        }
    }
    None
}

/// Among perfect feasible matchings, the first one with the smallest rank sum.
/// A dominating matching would have a strictly smaller rank sum and would be
/// perfect as well, so the result is Pareto optimal.
fn best_perfect(inst: &Instance) -> Option<Matching> {
    let mut best: Option<(u64, Matching)> = None;
    let _ = walk(inst, |m| {
        if m.is_perfect() {
            let s = crate::instance::rank_sum(inst, m);
            if best.as_ref().is_none_or(|(b, _)| s < *b) {
                best = Some((s, m.clone()));
            }
        }
        ControlFlow::Continue(())
    });
    best.map(|(_, m)| m)
}

/// Maximum total weight over all feasible matchings, with the first maximizer.
pub fn oracle_max_weight(winst: &WeightedInstance, guard: Guard) -> Result<(i64, Matching)> {
    Ok(oracle_max_weight_filtered(winst, guard, |_| true)?
        .expect("the empty matching is always feasible"))
}

/// Like [`oracle_max_weight`] but only over matchings accepted by `filter`;
/// `None` if no matching passes.
pub fn oracle_max_weight_filtered(
    winst: &WeightedInstance,
    guard: Guard,
    filter: impl FnMut(&Matching) -> bool,
) -> Result<Option<(i64, Matching)>> {
    let mut filter = filter;
    let mut best: Option<(i64, Matching)> = None;
    for_each_feasible_matching(winst.base(), guard, |m| {
        if filter(m) {
            let w = winst.weight_of(m);
            if best.as_ref().is_none_or(|(b, _)| w > *b) {
                best = Some((w, m.clone()));
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

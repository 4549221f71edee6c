//! Applicants, quota projects, matchings and the preference relations
//! built on top of them.
//!
//! Applicants and projects are addressed by their position (`usize`) in the
//! instance; names are only kept for I/O. An unmatched applicant is `None`
//! in a [`Matching`], never a pseudo-project.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// A project with its lower and upper quota.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Project {
    pub name: String,
    pub lower: u32,
    pub upper: u32,
}

impl Project {
    pub fn new(name: impl Into<String>, lower: u32, upper: u32) -> Self {
        Project {
            name: name.into(),
            lower,
            upper,
        }
    }

    /// Whether `load` assignees is a legal state (closed or within quota).
    #[inline]
    pub fn admits(&self, load: usize) -> bool {
        load == 0 || (self.lower as usize <= load && load <= self.upper as usize)
    }
}

/// A house allocation instance with lower and upper quotas.
///
/// Immutable once built; every constructor validates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    applicants: Vec<String>,
    projects: Vec<Project>,
    prefs: Vec<Vec<usize>>,
    /// `ranks[a * m + p]` is the 1-based position of `p` in `a`'s list, 0 if unacceptable.
    ranks: Vec<u32>,
    /// Applicants adjacent to each project, in applicant order.
    neighbors: Vec<Vec<usize>>,
}

impl Instance {
    pub fn new(
        applicants: Vec<String>,
        projects: Vec<Project>,
        prefs: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if prefs.len() != applicants.len() {
            return Err(Error::Parameters(format!(
                "{} applicants but {} preference lists",
                applicants.len(),
                prefs.len()
            )));
        }
        let mut seen = HashSet::new();
        for a in &applicants {
            if !seen.insert(a.as_str()) {
                return Err(Error::DuplicateApplicant(a.clone()));
            }
        }
        let mut seen = HashSet::new();
        for p in &projects {
            if !seen.insert(p.name.as_str()) {
                return Err(Error::DuplicateProject(p.name.clone()));
            }
            if p.lower < 1 {
                return Err(Error::ZeroLowerQuota(p.name.clone()));
            }
            if p.lower > p.upper {
                return Err(Error::QuotaOrder {
                    name: p.name.clone(),
                    lower: p.lower,
                    upper: p.upper,
                });
            }
        }
        let m = projects.len();
        let mut ranks = vec![0u32; applicants.len() * m];
        let mut neighbors = vec![Vec::new(); m];
        for (a, list) in prefs.iter().enumerate() {
            for (i, &p) in list.iter().enumerate() {
                if p >= m {
                    return Err(Error::UnknownProject {
                        applicant: applicants[a].clone(),
                        project: p,
                    });
                }
                if ranks[a * m + p] != 0 {
                    return Err(Error::DuplicatePreference {
                        applicant: applicants[a].clone(),
                        project: projects[p].name.clone(),
                    });
                }
                ranks[a * m + p] = i as u32 + 1;
                neighbors[p].push(a);
            }
        }
        Ok(Instance {
            applicants,
            projects,
            prefs,
            ranks,
            neighbors,
        })
    }

    /// Builds an instance from names: `projects` as `(name, lower, upper)`,
    /// `prefs` as `(applicant, [project names best first])`.
    pub fn from_names(projects: &[(&str, u32, u32)], prefs: &[(&str, &[&str])]) -> Result<Self> {
        let projects: Vec<Project> = projects
            .iter()
            .map(|&(n, l, u)| Project::new(n, l, u))
            .collect();
        let mut lists = Vec::with_capacity(prefs.len());
        for (a, list) in prefs {
            let mut idx = Vec::with_capacity(list.len());
            for name in list.iter() {
                let p = projects
                    .iter()
                    .position(|p| p.name == *name)
                    .ok_or_else(|| {
                        Error::Parameters(format!("applicant `{a}` lists unknown project `{name}`"))
                    })?;
                idx.push(p);
            }
            lists.push(idx);
        }
        let applicants = prefs.iter().map(|(a, _)| a.to_string()).collect();
        Instance::new(applicants, projects, lists)
    }

    pub fn n(&self) -> usize {
        self.applicants.len()
    }

    pub fn m(&self) -> usize {
        self.projects.len()
    }

    pub fn applicants(&self) -> &[String] {
        &self.applicants
    }

    pub fn applicant_name(&self, a: usize) -> &str {
        &self.applicants[a]
    }

    pub fn projects(&self) -> &[Project] {
        &self.projects
    }

    pub fn project(&self, p: usize) -> &Project {
        &self.projects[p]
    }

    /// Preference list of `a`, best first.
    pub fn prefs(&self, a: usize) -> &[usize] {
        &self.prefs[a]
    }

    pub fn all_prefs(&self) -> &[Vec<usize>] {
        &self.prefs
    }

    /// Applicants that find `p` acceptable, in applicant order.
    pub fn neighbors(&self, p: usize) -> &[usize] {
        &self.neighbors[p]
    }

    pub fn applicant_index(&self, name: &str) -> Option<usize> {
        self.applicants.iter().position(|a| a == name)
    }

    pub fn project_index(&self, name: &str) -> Option<usize> {
        self.projects.iter().position(|p| p.name == name)
    }

    pub fn is_acceptable(&self, a: usize, p: usize) -> bool {
        self.ranks[a * self.m() + p] != 0
    }

    /// 1-based rank without bounds or acceptability checks; unmatched is `|N_a| + 1`.
    #[inline]
    pub fn rank_unchecked(&self, a: usize, x: Option<usize>) -> u32 {
        match x {
            Some(p) => self.ranks[a * self.m() + p],
            None => self.prefs[a].len() as u32 + 1,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.prefs.iter().map(Vec::len).sum()
    }

    pub fn lower_max(&self) -> u32 {
        self.projects.iter().map(|p| p.lower).max().unwrap_or(0)
    }

    pub fn upper_max(&self) -> u32 {
        self.projects.iter().map(|p| p.upper).max().unwrap_or(0)
    }

    /// Maximum applicant degree.
    pub fn delta_applicants(&self) -> usize {
        self.prefs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Maximum project degree.
    pub fn delta_projects(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The instance with applicant `a` deleted.
    pub fn without_applicant(&self, a: usize) -> Result<Instance> {
        if a >= self.n() {
            return Err(Error::UnknownApplicant(a));
        }
        let mut applicants = self.applicants.clone();
        let mut prefs = self.prefs.clone();
        applicants.remove(a);
        prefs.remove(a);
        Instance::new(applicants, self.projects.clone(), prefs)
    }
}

/// Re-checks every instance invariant.
pub fn validate_instance(inst: &Instance) -> Result<()> {
    Instance::new(
        inst.applicants.clone(),
        inst.projects.clone(),
        inst.prefs.clone(),
    )
    .map(|_| ())
}

/// An assignment of applicants to projects; `None` means unmatched.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    assignment: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            assignment: vec![None; n],
        }
    }

    pub fn from_assignment(assignment: Vec<Option<usize>>) -> Self {
        Matching { assignment }
    }

    /// Builds a matching from `(applicant, project)` name pairs.
    pub fn from_names(inst: &Instance, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut m = Matching::empty(inst.n());
        for (a, p) in pairs {
            let ai = inst
                .applicant_index(a)
                .ok_or_else(|| Error::Parameters(format!("unknown applicant `{a}`")))?;
            let pi = inst
                .project_index(p)
                .ok_or_else(|| Error::Parameters(format!("unknown project `{p}`")))?;
            m.assignment[ai] = Some(pi);
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    #[inline]
    pub fn get(&self, a: usize) -> Option<usize> {
        self.assignment[a]
    }

    pub fn set(&mut self, a: usize, p: Option<usize>) {
        self.assignment[a] = p;
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    /// Matched `(applicant, project)` pairs in applicant order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(a, p)| p.map(|p| (a, p)))
    }

    /// `|M(p)|` for every project.
    pub fn loads(&self, m: usize) -> Vec<usize> {
        let mut loads = vec![0; m];
        for (_, p) in self.pairs() {
            loads[p] += 1;
        }
        loads
    }

    /// `|U(M)|`.
    pub fn unmatched_count(&self) -> usize {
        self.assignment.iter().filter(|p| p.is_none()).count()
    }

    pub fn matched_count(&self) -> usize {
        self.len() - self.unmatched_count()
    }

    pub fn is_perfect(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    /// Indices of projects with at least one assignee.
    pub fn open_projects(&self, m: usize) -> Vec<usize> {
        self.loads(m)
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(p, _)| p)
            .collect()
    }
}

fn check_shape(inst: &Instance, m: &Matching) -> Result<()> {
    if m.len() != inst.n() {
        return Err(Error::MatchingSize {
            expected: inst.n(),
            found: m.len(),
        });
    }
    for (a, p) in m.pairs() {
        if p >= inst.m() {
            return Err(Error::UnknownProject {
                applicant: inst.applicant_name(a).to_string(),
                project: p,
            });
        }
    }
    Ok(())
}

/// Whether every assignment is acceptable and every project is closed or within quota.
pub fn is_feasible(inst: &Instance, m: &Matching) -> Result<bool> {
    check_shape(inst, m)?;
    if m.pairs().any(|(a, p)| !inst.is_acceptable(a, p)) {
        return Ok(false);
    }
    Ok(m.loads(inst.m())
        .iter()
        .zip(inst.projects())
        .all(|(&load, proj)| proj.admits(load)))
}

/// Like [`is_feasible`] but turns `false` into [`Error::InfeasibleMatching`].
pub fn ensure_feasible(inst: &Instance, m: &Matching) -> Result<()> {
    if is_feasible(inst, m)? {
        Ok(())
    } else {
        Err(Error::InfeasibleMatching)
    }
}

/// 1-based position of `x` in `a`'s list; unmatched ranks `|N_a| + 1`. Smaller is better.
pub fn rank_of(inst: &Instance, a: usize, x: Option<usize>) -> Result<usize> {
    if a >= inst.n() {
        return Err(Error::UnknownApplicant(a));
    }
    if let Some(p) = x {
        if p >= inst.m() {
            return Err(Error::UnknownProject {
                applicant: inst.applicant_name(a).to_string(),
                project: p,
            });
        }
        if !inst.is_acceptable(a, p) {
            return Err(Error::Unacceptable {
                applicant: inst.applicant_name(a).to_string(),
                project: inst.project(p).name.clone(),
            });
        }
    }
    Ok(inst.rank_unchecked(a, x) as usize)
}

/// `#{a : a prefers M2} - #{a : a prefers M1}`; `M2` is more popular iff this is at least 1.
pub fn popularity_margin(inst: &Instance, m2: &Matching, m1: &Matching) -> Result<i64> {
    ensure_feasible(inst, m2)?;
    ensure_feasible(inst, m1)?;
    Ok(margin_unchecked(inst, m2, m1))
}

pub(crate) fn margin_unchecked(inst: &Instance, m2: &Matching, m1: &Matching) -> i64 {
    (0..inst.n())
        .map(|a| {
            let r2 = inst.rank_unchecked(a, m2.get(a));
            let r1 = inst.rank_unchecked(a, m1.get(a));
            (r1 > r2) as i64 - (r2 > r1) as i64
        })
        .sum()
}

/// Whether nobody is worse off in `m2` than in `m1` and somebody is better off.
pub fn dominates(inst: &Instance, m2: &Matching, m1: &Matching) -> Result<bool> {
    ensure_feasible(inst, m2)?;
    ensure_feasible(inst, m1)?;
    Ok(dominates_unchecked(inst, m2, m1))
}

pub(crate) fn dominates_unchecked(inst: &Instance, m2: &Matching, m1: &Matching) -> bool {
    let mut strict = false;
    for a in 0..inst.n() {
        let r2 = inst.rank_unchecked(a, m2.get(a));
        let r1 = inst.rank_unchecked(a, m1.get(a));
        if r2 > r1 {
            return false;
        }
        strict |= r2 < r1;
    }
    strict
}

/// Sum of ranks over all applicants (unmatched counted as `|N_a| + 1`).
pub fn rank_sum(inst: &Instance, m: &Matching) -> u64 {
    (0..inst.n())
        .map(|a| inst.rank_unchecked(a, m.get(a)) as u64)
        .sum()
}

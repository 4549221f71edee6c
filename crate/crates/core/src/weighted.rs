//! Edge-weighted instances, the weight functions that turn Pareto and
//! popularity questions into maximum-weight questions, and the
//! kernelization for small applicant counts.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::{ensure_feasible, Instance, Matching};

/// An instance whose acceptable edges carry nonnegative integer weights.
///
/// `weights[a][i]` is the weight of the edge from `a` to her `i`-th listed project.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    base: Instance,
    weights: Vec<Vec<i64>>,
}

impl WeightedInstance {
    pub fn new(base: Instance, weights: Vec<Vec<i64>>) -> Result<Self> {
        if weights.len() != base.n() {
            return Err(Error::Weights(format!(
                "{} weight rows for {} applicants",
                weights.len(),
                base.n()
            )));
        }
        for (a, row) in weights.iter().enumerate() {
            if row.len() != base.prefs(a).len() {
                return Err(Error::Weights(format!(
                    "applicant `{}` has {} edges but {} weights",
                    base.applicant_name(a),
                    base.prefs(a).len(),
                    row.len()
                )));
            }
            if let Some(w) = row.iter().find(|&&w| w < 0) {
                return Err(Error::Weights(format!(
                    "negative weight {w} on an edge of applicant `{}`",
                    base.applicant_name(a)
                )));
            }
        }
        Ok(WeightedInstance { base, weights })
    }

    /// Weights computed per edge by `f(applicant, position in list, project)`.
    pub fn from_fn(base: Instance, mut f: impl FnMut(usize, usize, usize) -> i64) -> Result<Self> {
        let weights = (0..base.n())
            .map(|a| {
                base.prefs(a)
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| f(a, i, p))
                    .collect()
            })
            .collect();
        WeightedInstance::new(base, weights)
    }

    pub fn uniform(base: Instance, w: i64) -> Result<Self> {
        WeightedInstance::from_fn(base, |_, _, _| w)
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn into_parts(self) -> (Instance, Vec<Vec<i64>>) {
        (self.base, self.weights)
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// Weight of edge `(a, p)`, `None` if `p` is not acceptable to `a`.
    pub fn weight(&self, a: usize, p: usize) -> Option<i64> {
        if !self.base.is_acceptable(a, p) {
            return None;
        }
        let r = self.base.rank_unchecked(a, Some(p)) as usize;
        Some(self.weights[a][r - 1])
    }

    /// Total weight of the matched edges. Panics on unacceptable pairs.
    pub fn weight_of(&self, m: &Matching) -> i64 {
        m.pairs()
            .map(|(a, p)| self.weight(a, p).expect("matched edge must be acceptable"))
            .sum()
    }

    /// `W`, the largest edge weight (0 without edges).
    pub fn max_weight(&self) -> i64 {
        self.weights.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Sum over applicants of their heaviest edge; no matching exceeds it.
    pub fn weight_upper_bound(&self) -> i64 {
        self.weights
            .iter()
            .map(|r| r.iter().copied().max().unwrap_or(0))
            .sum()
    }
}

/// Which verification question a reduction encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifyMode {
    /// Is there a more popular matching?
    Popular,
    /// Is there a dominating matching?
    Pareto,
}

/// A weighted instance together with the weight a matching has to exceed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdedReduction {
    pub winst: WeightedInstance,
    pub threshold: i64,
    pub source: VerifyMode,
}

impl ThresholdedReduction {
    pub fn exceeds(&self, m: &Matching) -> bool {
        self.winst.weight_of(m) > self.threshold
    }
}

/// Weights `(k - i) + m*n` for the `i`-th choice (1-based) of a list of length `k`.
///
/// Maximum-weight matchings of the result are maximum-cardinality Pareto optimal.
pub fn reduce_perpo(inst: &Instance) -> WeightedInstance {
    let mn = (inst.m() * inst.n()) as i64;
    WeightedInstance::from_fn(inst.clone(), |a, i, _| {
        let k = inst.prefs(a).len() as i64;
        (k - (i as i64 + 1)) + mn
    })
    .expect("perpo weights are nonnegative")
}

/// Builds the weighted instance whose heavier-than-threshold matchings are exactly
/// the matchings more popular than `m` ([`VerifyMode::Popular`]), or which all
/// dominate `m` ([`VerifyMode::Pareto`]).
pub fn reduce_verify(
    inst: &Instance,
    m: &Matching,
    mode: VerifyMode,
) -> Result<ThresholdedReduction> {
    ensure_feasible(inst, m)?;
    let n = inst.n() as i64;
    let (better, same, worse) = match mode {
        VerifyMode::Popular => (2, 1, 0),
        VerifyMode::Pareto => (n + 1, n, 0),
    };
    let winst = WeightedInstance::from_fn(inst.clone(), |a, _, p| match m.get(a) {
        None => 1,
        Some(cur) => {
            let rp = inst.rank_unchecked(a, Some(p));
            let rc = inst.rank_unchecked(a, Some(cur));
            match rp.cmp(&rc) {
                std::cmp::Ordering::Less => better,
                std::cmp::Ordering::Equal => same,
                std::cmp::Ordering::Greater => worse,
            }
        }
    })?;
    let matched = n - m.unmatched_count() as i64;
    let threshold = match mode {
        VerifyMode::Popular => matched,
        VerifyMode::Pareto => n * matched,
    };
    Ok(ThresholdedReduction {
        winst,
        threshold,
        source: mode,
    })
}

/// Largest applicant count [`kernelize`] accepts by default.
pub const KERNEL_SUBSET_GUARD: usize = 16;

/// Upper bound on the project count after [`kernelize`]:
/// `max(W * 2^n, n * (n * W * 2^(n-1) + 2^n - 1))`.
///
/// The second term counts one marker budget of `n` projects for each pair
/// of a nonempty applicant subset `A'` and a total weight `0..=W*|A'|`.
pub fn kernel_size_bound(n: usize, w: i64) -> u128 {
    let w = w.max(0) as u128;
    let n128 = n as u128;
    let full = 1u128 << n;
    let pairs = if n == 0 {
        0
    } else {
        n128 * w * (full / 2) + full - 1
    };
    (w * full).max(n128 * pairs)
}

/// Drops projects that cannot matter for the maximum matching weight.
///
/// Instances with `m <= W * 2^n` are returned unchanged. Otherwise, for every
/// nonempty applicant subset `A'` (by size, then bitmask) and every weight
/// `w'`, the first `n` projects in instance order that are adjacent to all of
/// `A'`, admit exactly `|A'|` assignees and give `A'` total weight `w'` are
/// kept; everything else is deleted.
pub fn kernelize(winst: &WeightedInstance) -> Result<WeightedInstance> {
    kernelize_guarded(winst, KERNEL_SUBSET_GUARD)
}

pub fn kernelize_guarded(
    winst: &WeightedInstance,
    max_applicants: usize,
) -> Result<WeightedInstance> {
    let inst = winst.base();
    let (n, m) = (inst.n(), inst.m());
    if n > max_applicants || n >= 64 {
        return Err(Error::GuardExceeded {
            what: "kernel subset",
            value: n,
            limit: max_applicants.min(63),
        });
    }
    let w_max = winst.max_weight();
    if (m as u128) <= (w_max.max(0) as u128) << n {
        return Ok(winst.clone());
    }

    let nbr_mask: Vec<u64> = (0..m)
        .map(|p| inst.neighbors(p).iter().fold(0u64, |acc, &a| acc | 1 << a))
        .collect();
    let mut masks: Vec<u64> = (1..1u64 << n).collect();
    masks.sort_by_key(|&s| (s.count_ones(), s));

    let mut keep = vec![false; m];
    for &s in &masks {
        let size = s.count_ones();
        let mut counts: HashMap<i64, usize> = HashMap::new();
        for p in 0..m {
            let proj = inst.project(p);
            if s & !nbr_mask[p] != 0 || size < proj.lower || size > proj.upper {
                continue;
            }
            let total: i64 = (0..n)
                .filter(|a| s >> a & 1 == 1)
                .map(|a| winst.weight(a, p).unwrap())
                .sum();
            let c = counts.entry(total).or_insert(0);
            if *c < n {
                *c += 1;
                keep[p] = true;
            }
        }
    }
    restrict_projects(winst, &keep)
}

/// The weighted instance with only the projects flagged in `keep`.
pub(crate) fn restrict_projects(
    winst: &WeightedInstance,
    keep: &[bool],
) -> Result<WeightedInstance> {
    let inst = winst.base();
    let mut new_index = vec![usize::MAX; inst.m()];
    let mut projects = Vec::new();
    for (p, proj) in inst.projects().iter().enumerate() {
        if keep[p] {
            new_index[p] = projects.len();
            projects.push(proj.clone());
        }
    }
    let mut prefs = Vec::with_capacity(inst.n());
    let mut weights = Vec::with_capacity(inst.n());
    for a in 0..inst.n() {
        let (ps, ws): (Vec<usize>, Vec<i64>) = inst
            .prefs(a)
            .iter()
            .zip(&winst.weights()[a])
            .filter(|(&p, _)| keep[p])
            .map(|(&p, &w)| (new_index[p], w))
            .unzip();
        prefs.push(ps);
        weights.push(ws);
    }
    let base = Instance::new(inst.applicants().to_vec(), projects, prefs)?;
    WeightedInstance::new(base, weights)
}

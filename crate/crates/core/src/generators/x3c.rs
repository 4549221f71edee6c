use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, Project};

/// Exact cover by 3-sets over elements `0..elements`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct X3c {
    pub elements: usize,
    pub sets: Vec<[usize; 3]>,
}

/// Largest set count [`solve_x3c`] accepts.
pub const X3C_SET_GUARD: usize = 256;

impl X3c {
    pub fn new(elements: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        let x = X3c { elements, sets };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.elements.is_multiple_of(3) {
            return Err(Error::X3c(format!(
                "{} elements is not a multiple of 3",
                self.elements
            )));
        }
        for s in &self.sets {
            if s.iter().any(|&e| e >= self.elements) {
                return Err(Error::X3c(format!("set {s:?} names an unknown element")));
            }
            if s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
                return Err(Error::X3c(format!("set {s:?} repeats an element")));
            }
        }
        Ok(())
    }

    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.elements];
        for s in &self.sets {
            for &e in s {
                occ[e] += 1;
            }
        }
        occ
    }

    /// Sets containing `e`, ascending.
    pub fn sets_of(&self, e: usize) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&j| self.sets[j].contains(&e))
            .collect()
    }

    fn check_at_most_three(&self) -> Result<()> {
        self.validate()?;
        if let Some(e) = self.occurrences().iter().position(|&o| o > 3) {
            return Err(Error::X3c(format!(
                "element {} occurs in more than three sets",
                e + 1
            )));
        }
        Ok(())
    }

    /// Requirement of the popularity constructions: at most three occurrences
    /// per element and an odd number `|X| / 3`.
    fn check_construction_input(&self) -> Result<()> {
        self.check_at_most_three()?;
        if (self.elements / 3).is_multiple_of(2) {
            return Err(Error::X3c(format!(
                "{} elements: |X| / 3 must be odd (see pad_odd / normalize_x3c)",
                self.elements
            )));
        }
        Ok(())
    }

    /// Whether `cover` lists disjoint sets covering every element.
    pub fn is_cover(&self, cover: &[usize]) -> bool {
        let mut hit = vec![false; self.elements];
        for &j in cover {
            let Some(s) = self.sets.get(j) else {
                return false;
            };
            for &e in s {
                if hit[e] {
                    return false;
                }
                hit[e] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}

/// Makes `|X| / 3` odd by adding three fresh elements and one set holding exactly them.
pub fn pad_odd(x: &X3c) -> Result<X3c> {
    x.validate()?;
    let mut out = x.clone();
    if (x.elements / 3).is_multiple_of(2) {
        let k = out.elements;
        out.elements += 3;
        out.sets.push([k, k + 1, k + 2]);
    }
    Ok(out)
}

/// Pads to exactly three occurrences per element and odd `|X| / 3`, keeping
/// cover existence. Fresh elements and sets are appended after the input ones.
///
/// Missing occurrences are filled three at a time by a nine-element block
/// `g1..g9` with hook sets `{x, g1, g2}`, `{x', g3, g4}`, `{x'', g5, g6}` and
/// inner sets `{g1,g2,g7} {g3,g4,g8} {g5,g6,g9} {g1,g3,g7} {g2,g5,g8}
/// {g4,g7,g9} {g6,g8,g9}`. A cover uses no hook set inside a block (the nine
/// block elements would need a hook count divisible by three, and three hooks
/// leave `g7, g8, g9` uncoverable), while the first three inner sets always
/// cover the block on their own.
pub fn normalize_x3c(x: &X3c) -> Result<X3c> {
    x.check_at_most_three()?;
    let mut out = x.clone();
    fill_to_three(&mut out);
    if (out.elements / 3).is_multiple_of(2) {
        out = pad_odd(&out)?;
        fill_to_three(&mut out);
    }
    Ok(out)
}

fn fill_to_three(x: &mut X3c) {
    let hooks: Vec<usize> = x
        .occurrences()
        .iter()
        .enumerate()
        .flat_map(|(e, &o)| std::iter::repeat_n(e, 3 - o))
        .collect();
    debug_assert_eq!(hooks.len() % 3, 0);
    for h in hooks.chunks(3) {
        let g0 = x.elements;
        let g = |i: usize| g0 + i - 1;
        x.elements += 9;
        x.sets.extend([
            [h[0], g(1), g(2)],
            [h[1], g(3), g(4)],
            [h[2], g(5), g(6)],
            [g(1), g(2), g(7)],
            [g(3), g(4), g(8)],
            [g(5), g(6), g(9)],
            [g(1), g(3), g(7)],
            [g(2), g(5), g(8)],
            [g(4), g(7), g(9)],
            [g(6), g(8), g(9)],
        ]);
    }
}

/// An exact cover as ascending set indices, by exhaustive search.
pub fn solve_x3c(x: &X3c) -> Result<Option<Vec<usize>>> {
    x.validate()?;
    if x.sets.len() > X3C_SET_GUARD {
        return Err(Error::GuardExceeded {
            what: "X3C set",
            value: x.sets.len(),
            limit: X3C_SET_GUARD,
        });
    }
    let by_element: Vec<Vec<usize>> = (0..x.elements).map(|e| x.sets_of(e)).collect();
    let mut covered = vec![false; x.elements];
    let mut chosen = Vec::new();
    if search(x, &by_element, &mut covered, &mut chosen) {
        chosen.sort_unstable();
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn search(
    x: &X3c,
    by_element: &[Vec<usize>],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(e) = covered.iter().position(|c| !c) else {
        return true;
    };
    for &j in &by_element[e] {
        let s = x.sets[j];
        if s.iter().any(|&f| covered[f]) {
            continue;
        }
        s.iter().for_each(|&f| covered[f] = true);
        chosen.push(j);
        if search(x, by_element, covered, chosen) {
            return true;
        }
        chosen.pop();
        s.iter().for_each(|&f| covered[f] = false);
    }
    false
}

/// Projects `d_i` and `e_i` plus applicants `y_i`, `z_i` shared by the popularity constructions.
struct Frame {
    k: usize,
    projects: Vec<Project>,
    applicants: Vec<String>,
    prefs: Vec<Vec<usize>>,
}

impl Frame {
    /// `set_blocks` projects come first, then `d_1..d_k`, then `e_1..e_k`.
    fn new(x: &X3c, set_projects: Vec<Project>) -> Frame {
        let k = x.elements;
        let mut projects = set_projects;
        projects.extend((1..=k).map(|i| Project::new(format!("d{i}"), 3, 3)));
        projects.extend((1..=k).map(|i| Project::new(format!("e{i}"), 2, 2)));
        Frame {
            k,
            projects,
            applicants: Vec::new(),
            prefs: Vec::new(),
        }
    }

    fn d(&self, i: usize) -> usize {
        self.projects.len() - 2 * self.k + i
    }

    fn e(&self, i: usize) -> usize {
        self.projects.len() - self.k + i
    }

    fn finish(mut self, b_lists: Vec<Vec<usize>>) -> Instance {
        let k = self.k;
        for (i, mut list) in b_lists.into_iter().enumerate() {
            list.push(self.d(i));
            self.applicants.push(format!("b{}", i + 1));
            self.prefs.push(list);
        }
        for i in 0..k {
            // 1-based odd i lists e_i first.
            let list = if i % 2 == 0 {
                vec![self.e(i), self.d(i)]
            } else {
                vec![self.d(i), self.e(i)]
            };
            self.applicants.push(format!("y{}", i + 1));
            self.prefs.push(list);
        }
        for i in 0..k {
            let prev = (i + k - 1) % k;
            self.applicants.push(format!("z{}", i + 1));
            self.prefs.push(vec![self.d(i), self.e(prev)]);
        }
        Instance::new(self.applicants, self.projects, self.prefs).expect("construction is valid")
    }
}

/// The matching assigning `b_i`, `y_i`, `z_i` to `d_i`.
fn diagonal(inst: &Instance, k: usize) -> Matching {
    let d0 = inst.m() - 2 * k;
    Matching::from_assignment((0..3 * k).map(|a| Some(d0 + a % k)).collect())
}

/// Instance and matching `M` such that `M` is unpopular iff `x` has an exact cover.
pub fn gen_popv_x3c(x: &X3c) -> Result<(Instance, Matching)> {
    x.check_construction_input()?;
    let sets = (0..x.sets.len())
        .map(|j| Project::new(format!("c{}", j + 1), 3, 3))
        .collect();
    let frame = Frame::new(x, sets);
    let b_lists = (0..x.elements).map(|e| x.sets_of(e)).collect();
    let inst = frame.finish(b_lists);
    let m = diagonal(&inst, x.elements);
    Ok((inst, m))
}

/// Instance with a perfect Pareto optimal matching iff `x` has an exact cover.
pub fn gen_perpo_x3c(x: &X3c) -> Result<Instance> {
    x.check_at_most_three()?;
    let projects = (0..x.sets.len())
        .map(|j| Project::new(format!("c{}", j + 1), 3, 3))
        .collect();
    let prefs = (0..x.elements).map(|e| x.sets_of(e)).collect();
    let applicants = (1..=x.elements).map(|i| format!("a{i}")).collect();
    Instance::new(applicants, projects, prefs)
}

/// Instance with a popular matching iff `x` has no exact cover.
///
/// Every set gets three projects `c`, `c'`, `c''`; an element at position
/// 0, 1 or 2 of a set (sorted) lists them as `c c' c''`, `c' c'' c` or
/// `c'' c c'` respectively.
pub fn gen_pop_x3c(x: &X3c) -> Result<Instance> {
    x.check_construction_input()?;
    let t = x.sets.len();
    let mut sets = Vec::with_capacity(3 * t);
    for suffix in ["", "'", "''"] {
        sets.extend((1..=t).map(|j| Project::new(format!("c{j}{suffix}"), 3, 3)));
    }
    let frame = Frame::new(x, sets);
    let b_lists = (0..x.elements)
        .map(|e| {
            let mut list = Vec::new();
            for j in x.sets_of(e) {
                let mut sorted = x.sets[j];
                sorted.sort_unstable();
                let pos = sorted.iter().position(|&f| f == e).unwrap();
                for r in 0..3 {
                    list.push(((pos + r) % 3) * t + j);
                }
            }
            list
        })
        .collect();
    Ok(frame.finish(b_lists))
}

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, Project};

/// A stable-roommates style instance: each vertex ranks its neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Roommates {
    prefs: Vec<Vec<usize>>,
    /// Edges `(u, v)` with `u < v`, lexicographic.
    edges: Vec<(usize, usize)>,
}

impl Roommates {
    /// `prefs[v]` lists the neighbours of `v`, best first.
    pub fn new(prefs: Vec<Vec<usize>>) -> Result<Self> {
        let n = prefs.len();
        for (v, list) in prefs.iter().enumerate() {
            for (i, &u) in list.iter().enumerate() {
                if u >= n || u == v {
                    return Err(Error::Roommates(format!(
                        "vertex {} lists invalid neighbour {}",
                        v + 1,
                        u + 1
                    )));
                }
                if list[..i].contains(&u) {
                    return Err(Error::Roommates(format!(
                        "vertex {} lists {} twice",
                        v + 1,
                        u + 1
                    )));
                }
                if !prefs[u].contains(&v) {
                    return Err(Error::Roommates(format!(
                        "vertex {} lists {} but not the other way round",
                        v + 1,
                        u + 1
                    )));
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = prefs
            .iter()
            .enumerate()
            .flat_map(|(v, l)| l.iter().filter(move |&&u| v < u).map(move |&u| (v, u)))
            .collect();
        edges.sort_unstable();
        Ok(Roommates { prefs, edges })
    }

    pub fn vertices(&self) -> usize {
        self.prefs.len()
    }

    pub fn prefs(&self, v: usize) -> &[usize] {
        &self.prefs[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn edge_index(&self, u: usize, v: usize) -> usize {
        self.edges
            .binary_search(&(u.min(v), u.max(v)))
            .expect("edge exists")
    }
}

/// One applicant per vertex and one project with quotas 2/2 per edge; each
/// applicant ranks edge projects in the order her vertex ranks the other end.
pub fn gen_pop_from_roommates(r: &Roommates) -> Instance {
    let applicants = (1..=r.vertices()).map(|v| format!("v{v}")).collect();
    let projects = r
        .edges()
        .iter()
        .map(|&(u, v)| Project::new(format!("e{}_{}", u + 1, v + 1), 2, 2))
        .collect();
    let prefs = (0..r.vertices())
        .map(|v| r.prefs(v).iter().map(|&u| r.edge_index(v, u)).collect())
        .collect();
    Instance::new(applicants, projects, prefs).expect("construction is valid")
}

/// Maps a roommates matching (`mate[v]`) to the corresponding house matching.
pub fn roommates_to_house(r: &Roommates, mate: &[Option<usize>]) -> Result<Matching> {
    let mut m = Matching::empty(r.vertices());
    for (v, &u) in mate.iter().enumerate() {
        if let Some(u) = u {
            if mate.get(u) != Some(&Some(v)) || !r.prefs(v).contains(&u) {
                return Err(Error::Roommates(format!(
                    "vertex {} has an inconsistent mate",
                    v + 1
                )));
            }
            m.set(v, Some(r.edge_index(v, u)));
        }
    }
    Ok(m)
}

/// Inverse of [`roommates_to_house`] on feasible matchings of the generated instance.
pub fn house_to_roommates(r: &Roommates, m: &Matching) -> Vec<Option<usize>> {
    (0..r.vertices())
        .map(|v| {
            m.get(v).map(|e| {
                let (a, b) = r.edges()[e];
                if a == v {
                    b
                } else {
                    a
                }
            })
        })
        .collect()
}
